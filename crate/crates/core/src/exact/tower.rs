//! Real numbers in square-root towers over ℚ.
//!
//! A [`TowerReal`] is either a rational or `p + q·√r` where `√r` is a
//! [`Generator`] and `p`, `q` only involve generators that sort strictly
//! below it. Generators are totally ordered (rational primes first, then
//! nested radicands by depth), so two values built in unrelated towers can
//! always be combined: the merged tower is the union of their generators.
//!
//! Square roots of rationals are always split over prime generators
//! (`√12 = 2·√3`, `√6 = √2·√3`), so the depth-one part of every tower is the
//! multiquadratic field with its canonical basis. Deeper generators are only
//! introduced by [`TowerReal::sqrt`] after the closed-form perfect-square test
//! fails.
//!
//! The sign test recurses through the levels and never consults a floating
//! point value, so it is exact even if a deep generator turns out to be
//! dependent on others.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::factor::{squarefree_split, DEFAULT_TRIAL_BOUND};
use super::interval::Interval;
use super::ExactError;

#[derive(Clone)]
pub struct TowerReal(Node);

#[derive(Clone)]
enum Node {
    Rat(Arc<BigRational>),
    Ext(Arc<Ext>),
}

struct Ext {
    gen: Generator,
    p: TowerReal,
    q: TowerReal,
}

/// A square root `√r` adjoined to the field of the generators below it.
#[derive(Clone)]
pub struct Generator(Arc<GenInner>);

struct GenInner {
    radicand: TowerReal,
    depth: u32,
    prime: Option<u64>,
}

impl Generator {
    fn prime(p: u64) -> Generator {
        Generator(Arc::new(GenInner {
            radicand: TowerReal::from_int(p as i64),
            depth: 1,
            prime: Some(p),
        }))
    }

    fn nested(radicand: TowerReal) -> Generator {
        let depth = 1 + radicand.depth();
        Generator(Arc::new(GenInner {
            radicand,
            depth,
            prime: None,
        }))
    }

    pub fn radicand(&self) -> &TowerReal {
        &self.0.radicand
    }

    pub fn depth(&self) -> u32 {
        self.0.depth
    }

    /// The rational prime under the root, for depth-one generators.
    pub fn prime_value(&self) -> Option<u64> {
        self.0.prime
    }

    fn cmp_gen(&self, other: &Generator) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.depth()
            .cmp(&other.depth())
            .then_with(|| match (self.0.prime, other.0.prime) {
                (Some(a), Some(b)) => a.cmp(&b),
                _ => self.radicand().structural_cmp(other.radicand()),
            })
    }
}

impl PartialEq for Generator {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_gen(other) == Ordering::Equal
    }
}

impl Eq for Generator {}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Generator {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_gen(other)
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sqrt({})", self.radicand())
    }
}

fn ext(gen: &Generator, p: TowerReal, q: TowerReal) -> TowerReal {
    if q.is_structurally_zero() {
        p
    } else {
        TowerReal(Node::Ext(Arc::new(Ext { gen: gen.clone(), p, q })))
    }
}

impl TowerReal {
    pub fn zero() -> Self {
        TowerReal::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        TowerReal::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        TowerReal::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_rational(q: BigRational) -> Self {
        TowerReal(Node::Rat(Arc::new(q)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        TowerReal::from_rational(BigRational::new(n.into(), d.into()))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Node::Rat(q) => Some(q),
            Node::Ext(_) => None,
        }
    }

    /// Top generator together with the components `(p, q)` of `p + q·√r`.
    pub fn split(&self) -> Option<(&Generator, &TowerReal, &TowerReal)> {
        match &self.0 {
            Node::Rat(_) => None,
            Node::Ext(e) => Some((&e.gen, &e.p, &e.q)),
        }
    }

    pub fn top(&self) -> Option<&Generator> {
        self.split().map(|(g, _, _)| g)
    }

    pub fn depth(&self) -> u32 {
        self.top().map_or(0, Generator::depth)
    }

    /// All generators this value depends on, ascending.
    pub fn generators(&self) -> Vec<Generator> {
        let mut out = Vec::new();
        self.collect_generators(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_generators(&self, out: &mut Vec<Generator>) {
        if let Some((g, p, q)) = self.split() {
            if !out.contains(g) {
                out.push(g.clone());
            }
            p.collect_generators(out);
            q.collect_generators(out);
        }
    }

    pub fn is_structurally_zero(&self) -> bool {
        matches!(&self.0, Node::Rat(q) if q.is_zero())
    }

    /// Total order on representations (not on values).
    pub fn structural_cmp(&self, other: &TowerReal) -> Ordering {
        match (&self.0, &other.0) {
            (Node::Rat(a), Node::Rat(b)) => a.cmp(b),
            (Node::Rat(_), Node::Ext(_)) => Ordering::Less,
            (Node::Ext(_), Node::Rat(_)) => Ordering::Greater,
            (Node::Ext(a), Node::Ext(b)) => a
                .gen
                .cmp(&b.gen)
                .then_with(|| a.p.structural_cmp(&b.p))
                .then_with(|| a.q.structural_cmp(&b.q)),
        }
    }

    fn map_rat(&self, f: &impl Fn(&BigRational) -> BigRational) -> TowerReal {
        match &self.0 {
            Node::Rat(q) => TowerReal::from_rational(f(q)),
            Node::Ext(e) => ext(&e.gen, e.p.map_rat(f), e.q.map_rat(f)),
        }
    }

    pub fn scale(&self, k: &BigRational) -> TowerReal {
        if k.is_zero() {
            return TowerReal::zero();
        }
        self.map_rat(&|q| q * k)
    }

    fn add_ref(&self, other: &TowerReal) -> TowerReal {
        match (&self.0, &other.0) {
            (Node::Rat(a), Node::Rat(b)) => TowerReal::from_rational(a.as_ref() + b.as_ref()),
            (Node::Ext(a), Node::Rat(_)) => ext(&a.gen, a.p.add_ref(other), a.q.clone()),
            (Node::Rat(_), Node::Ext(b)) => ext(&b.gen, self.add_ref(&b.p), b.q.clone()),
            (Node::Ext(a), Node::Ext(b)) => match a.gen.cmp(&b.gen) {
                Ordering::Greater => ext(&a.gen, a.p.add_ref(other), a.q.clone()),
                Ordering::Less => ext(&b.gen, self.add_ref(&b.p), b.q.clone()),
                Ordering::Equal => ext(&a.gen, a.p.add_ref(&b.p), a.q.add_ref(&b.q)),
            },
        }
    }

    fn neg_ref(&self) -> TowerReal {
        self.map_rat(&|q| -q)
    }

    fn mul_ref(&self, other: &TowerReal) -> TowerReal {
        match (&self.0, &other.0) {
            (Node::Rat(a), _) => other.scale(a),
            (_, Node::Rat(b)) => self.scale(b),
            (Node::Ext(a), Node::Ext(b)) => match a.gen.cmp(&b.gen) {
                Ordering::Greater => ext(&a.gen, a.p.mul_ref(other), a.q.mul_ref(other)),
                Ordering::Less => ext(&b.gen, self.mul_ref(&b.p), self.mul_ref(&b.q)),
                Ordering::Equal => {
                    let r = a.gen.radicand();
                    let p = a.p.mul_ref(&b.p).add_ref(&a.q.mul_ref(&b.q).mul_ref(r));
                    let q = a.p.mul_ref(&b.q).add_ref(&a.q.mul_ref(&b.p));
                    ext(&a.gen, p, q)
                }
            },
        }
    }

    pub fn square(&self) -> TowerReal {
        self.mul_ref(self)
    }

    /// Exact sign in {-1, 0, 1}.
    pub fn sign(&self) -> i8 {
        match &self.0 {
            Node::Rat(q) => {
                if q.is_positive() {
                    1
                } else if q.is_negative() {
                    -1
                } else {
                    0
                }
            }
            Node::Ext(e) => {
                let sp = e.p.sign();
                let sq = e.q.sign();
                if sq == 0 {
                    return sp;
                }
                if sp == 0 || sp == sq {
                    return sq;
                }
                // opposite signs: compare p² against q²·r
                let d = e.p.square().sub(&e.q.square().mul_ref(e.gen.radicand())).sign();
                match d {
                    1 => sp,
                    -1 => sq,
                    _ => 0,
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign() == 0
    }

    pub fn abs(&self) -> TowerReal {
        if self.sign() < 0 {
            self.neg_ref()
        } else {
            self.clone()
        }
    }

    pub fn cmp_value(&self, other: &TowerReal) -> Ordering {
        match (&self.0, &other.0) {
            (Node::Rat(a), Node::Rat(b)) => a.cmp(b),
            _ => self.sub(other).sign().cmp(&0),
        }
    }

    pub fn inv(&self) -> Result<TowerReal, ExactError> {
        match &self.0 {
            Node::Rat(q) => {
                if q.is_zero() {
                    Err(ExactError::DivisionByZero)
                } else {
                    Ok(TowerReal::from_rational(q.recip()))
                }
            }
            Node::Ext(e) => {
                let r = e.gen.radicand();
                let norm = e.p.square().sub(&e.q.square().mul_ref(r));
                if norm.sign() != 0 {
                    let k = norm.inv()?;
                    return Ok(ext(&e.gen, e.p.mul_ref(&k), e.q.neg_ref().mul_ref(&k)));
                }
                // √r = |p/q| lies below the generator; collapse and retry
                let s = e.p.mul_ref(&e.q.inv()?).abs();
                e.p.add_ref(&e.q.mul_ref(&s)).inv()
            }
        }
    }

    pub fn checked_div(&self, other: &TowerReal) -> Result<TowerReal, ExactError> {
        Ok(self.mul_ref(&other.inv()?))
    }

    pub fn sub(&self, other: &TowerReal) -> TowerReal {
        self.add_ref(&other.neg_ref())
    }

    /// Nonnegative square root, reusing the current tower when the argument
    /// is already a square there and adjoining a new level otherwise.
    pub fn sqrt(&self) -> Result<TowerReal, ExactError> {
        match self.sign() {
            -1 => return Err(ExactError::NegativeRadicand),
            0 => return Ok(TowerReal::zero()),
            _ => {}
        }
        if let Some(root) = self.try_sqrt_below(None)? {
            return Ok(root.abs());
        }
        let gen = Generator::nested(self.clone());
        Ok(ext(&gen, TowerReal::zero(), TowerReal::one()))
    }

    /// A square root using only generators strictly below `limit` (or any
    /// prime generators when `limit` is `None`).
    fn try_sqrt_below(&self, limit: Option<&Generator>) -> Result<Option<TowerReal>, ExactError> {
        if self.sign() < 0 {
            return Ok(None);
        }
        match &self.0 {
            Node::Rat(q) => {
                if q.is_zero() {
                    return Ok(Some(TowerReal::zero()));
                }
                let num: BigUint = q.numer().magnitude().clone();
                let den: BigUint = q.denom().magnitude().clone();
                let (root, primes) = squarefree_split(&(num * &den), DEFAULT_TRIAL_BOUND)?;
                if let Some(lim) = limit {
                    if primes.iter().any(|&p| Generator::prime(p) >= *lim) {
                        return Ok(None);
                    }
                }
                let coeff = BigRational::new(BigInt::from(root), q.denom().clone());
                let mut out = TowerReal::from_rational(coeff);
                for p in primes {
                    out = out.mul_ref(&ext(&Generator::prime(p), TowerReal::zero(), TowerReal::one()));
                }
                Ok(Some(out))
            }
            Node::Ext(e) => {
                let g = &e.gen;
                let r = g.radicand();
                let norm = e.p.square().sub(&e.q.square().mul_ref(r));
                let Some(n) = norm.try_sqrt_below(Some(g))? else {
                    return Ok(None);
                };
                let half = BigRational::new(1.into(), 2.into());
                for cand in [n.clone(), n.neg_ref()] {
                    let h = e.p.add_ref(&cand).scale(&half);
                    if h.sign() <= 0 {
                        continue;
                    }
                    if let Some(u) = h.try_sqrt_below(Some(g))? {
                        let v = e.q.mul_ref(&u.scale(&BigRational::from_integer(2.into())).inv()?);
                        return Ok(Some(ext(g, u, v)));
                    }
                }
                Ok(None)
            }
        }
    }

    /// Interval enclosure at the given precision.
    pub fn enclose(&self, prec: u32) -> Interval {
        match &self.0 {
            Node::Rat(q) => Interval::from_rational(q, prec),
            Node::Ext(e) => {
                let w = prec + 8;
                let root = e.gen.radicand().enclose(w).sqrt().expect("radicands are positive");
                e.p.enclose(w).add(&e.q.enclose(w).mul(&root)).at_prec(prec)
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Node::Rat(q) => {
                let i = Interval::from_rational(q, 64);
                i.mid_f64()
            }
            Node::Ext(_) => self.enclose(64).mid_f64(),
        }
    }

    /// Expansion into monomials: rational coefficient times a product of
    /// generators, each generator used at most once.
    pub fn monomials(&self) -> Vec<(Vec<Generator>, BigRational)> {
        let mut out = Vec::new();
        self.expand_into(&mut Vec::new(), &mut out);
        out
    }

    fn expand_into(&self, prefix: &mut Vec<Generator>, out: &mut Vec<(Vec<Generator>, BigRational)>) {
        match &self.0 {
            Node::Rat(q) => {
                if !q.is_zero() {
                    let mut gens = prefix.clone();
                    gens.sort();
                    out.push((gens, q.as_ref().clone()));
                }
            }
            Node::Ext(e) => {
                e.p.expand_into(prefix, out);
                prefix.push(e.gen.clone());
                e.q.expand_into(prefix, out);
                prefix.pop();
            }
        }
    }

    pub(crate) fn generator_root(g: &Generator) -> TowerReal {
        ext(g, TowerReal::zero(), TowerReal::one())
    }

    /// √p for a rational prime p.
    pub(crate) fn prime_root(p: u64) -> TowerReal {
        TowerReal::generator_root(&Generator::prime(p))
    }
}

impl PartialEq for TowerReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl Eq for TowerReal {}

impl PartialOrd for TowerReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TowerReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

impl From<i64> for TowerReal {
    fn from(n: i64) -> Self {
        TowerReal::from_int(n)
    }
}

impl From<BigRational> for TowerReal {
    fn from(q: BigRational) -> Self {
        TowerReal::from_rational(q)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&TowerReal> for &TowerReal {
            type Output = TowerReal;
            fn $method(self, rhs: &TowerReal) -> TowerReal {
                $body(self, rhs)
            }
        }
        impl $tr<TowerReal> for TowerReal {
            type Output = TowerReal;
            fn $method(self, rhs: TowerReal) -> TowerReal {
                $body(&self, &rhs)
            }
        }
        impl $tr<&TowerReal> for TowerReal {
            type Output = TowerReal;
            fn $method(self, rhs: &TowerReal) -> TowerReal {
                $body(&self, rhs)
            }
        }
        impl $tr<TowerReal> for &TowerReal {
            type Output = TowerReal;
            fn $method(self, rhs: TowerReal) -> TowerReal {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &TowerReal, b: &TowerReal| a.add_ref(b));
forward_binop!(Sub, sub, |a: &TowerReal, b: &TowerReal| TowerReal::sub(a, b));
forward_binop!(Mul, mul, |a: &TowerReal, b: &TowerReal| a.mul_ref(b));
// Panics on a zero divisor; use `checked_div` where zero is possible.
forward_binop!(Div, div, |a: &TowerReal, b: &TowerReal| a
    .checked_div(b)
    .expect("division by zero"));

impl Neg for TowerReal {
    type Output = TowerReal;
    fn neg(self) -> TowerReal {
        self.neg_ref()
    }
}

impl Neg for &TowerReal {
    type Output = TowerReal;
    fn neg(self) -> TowerReal {
        self.neg_ref()
    }
}

impl fmt::Display for TowerReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::literal::format_number(self))
    }
}

impl fmt::Debug for TowerReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (~{:.6})", self, self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt(n: i64) -> TowerReal {
        TowerReal::from_int(n).sqrt().unwrap()
    }

    #[test]
    fn sqrt2_squared_collapses() {
        let r = sqrt(2);
        let sq = &r * &r;
        assert!(sq.as_rational().is_some());
        assert_eq!(sq, TowerReal::from_int(2));
    }

    #[test]
    fn self_difference_is_zero() {
        let x = TowerReal::one() + sqrt(3);
        let d = &x - &x;
        assert!(d.is_structurally_zero());
        assert_eq!(d.sign(), 0);
    }

    #[test]
    fn sum_of_roots_squared() {
        let x = sqrt(2) + sqrt(3);
        let expected = TowerReal::from_int(5) + TowerReal::from_int(2) * sqrt(6);
        assert_eq!(x.square(), expected);
        // cross-check against the interval evaluator at 128 bits
        let i = x.square().enclose(128);
        let v = 5.0 + 2.0 * 6f64.sqrt();
        assert!(i.lo_f64() <= v + 1e-12 && v - 1e-12 <= i.hi_f64());
    }

    #[test]
    fn signs() {
        assert_eq!(TowerReal::zero().sign(), 0);
        assert_eq!((sqrt(2) - TowerReal::one()).sign(), 1);
        // 3√2 − 2√3 + √6 − 5 ≈ −3.0787
        let x = TowerReal::from_int(3) * sqrt(2) - TowerReal::from_int(2) * sqrt(3) + sqrt(6) - TowerReal::from_int(5);
        assert_eq!(x.sign(), -1);
        let i = x.enclose(256);
        assert_eq!(i.sign(), Some(-1));
    }

    #[test]
    fn sqrt_reuses_levels() {
        let four = sqrt(4);
        assert_eq!(four.as_rational(), Some(&BigRational::from_integer(2.into())));
        let two = sqrt(2);
        assert_eq!(two.generators().len(), 1);
        let x = TowerReal::from_int(3) + TowerReal::from_int(2) * sqrt(2);
        let r = x.sqrt().unwrap();
        assert_eq!(r, TowerReal::one() + sqrt(2));
        assert_eq!(r.depth(), 1);
    }

    #[test]
    fn nested_root() {
        let x = (sqrt(2) + TowerReal::from_int(2)).sqrt().unwrap();
        assert_eq!(x.depth(), 2);
        assert_eq!(x.square(), sqrt(2) + TowerReal::from_int(2));
        assert!((x.to_f64() - (2f64.sqrt() + 2.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn negative_radicand() {
        assert_eq!(TowerReal::from_int(-1).sqrt(), Err(ExactError::NegativeRadicand));
    }

    #[test]
    fn inverse_with_dependent_generator() {
        // √(2+√2)·√(2−√2) = √2, so the second root is dependent on the first
        let a = (TowerReal::from_int(2) + sqrt(2)).sqrt().unwrap();
        let b = (TowerReal::from_int(2) - sqrt(2)).sqrt().unwrap();
        assert_eq!(&a * &b, sqrt(2));
        let x = &b + &(sqrt(2) / &a);
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, TowerReal::one());
    }
}
