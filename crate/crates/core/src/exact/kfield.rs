//! The field generated over ℚ by the square roots of all naturals, in the
//! squarefree basis: an element is `Σ c_d·√d` over squarefree `d ≥ 1`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::factor::{coprime_base, squarefree_part};
use super::tower::TowerReal;
use super::ExactError;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct KElement {
    terms: BTreeMap<BigUint, BigRational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl KElement {
    pub fn zero() -> Self {
        KElement::default()
    }

    pub fn rational(q: BigRational) -> Self {
        let mut k = KElement::zero();
        k.push(BigUint::one(), q);
        k
    }

    pub fn from_int(n: i64) -> Self {
        KElement::rational(BigRational::from_integer(n.into()))
    }

    /// `c·√n` for any natural `n`; the square part of `n` is pulled out.
    pub fn sqrt_term(c: BigRational, n: u64) -> Result<Self, ExactError> {
        if n == 0 {
            return Ok(KElement::zero());
        }
        let (root, core) = squarefree_part(&BigUint::from(n))?;
        let mut k = KElement::zero();
        k.push(core, c * BigRational::from_integer(BigInt::from(root)));
        Ok(k)
    }

    pub fn sqrt_of(n: u64) -> Result<Self, ExactError> {
        KElement::sqrt_term(BigRational::one(), n)
    }

    fn push(&mut self, d: BigUint, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(d.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&d);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&BigUint::one()).cloned(),
            _ => None,
        }
    }

    pub fn neg(&self) -> KElement {
        KElement {
            terms: self.terms.iter().map(|(d, c)| (d.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &KElement) -> KElement {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.push(d.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &KElement) -> KElement {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &KElement) -> KElement {
        let mut out = KElement::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                // √a·√b = g·√((a/g)(b/g)) with g = gcd(a, b)
                let g = a.gcd(b);
                let d = (a / &g) * (b / &g);
                out.push(d, ca * cb * BigRational::from_integer(BigInt::from(g)));
            }
        }
        out
    }

    /// Flips the sign of every term whose radicand is divisible by `g`.
    fn conjugate(&self, g: &BigUint) -> KElement {
        KElement {
            terms: self
                .terms
                .iter()
                .map(|(d, c)| {
                    let c = if (d % g).is_zero() { -c } else { c.clone() };
                    (d.clone(), c)
                })
                .collect(),
        }
    }

    /// Division, rationalising the denominator with sign-flip conjugates over
    /// a pairwise coprime base of its radicands.
    pub fn div(&self, other: &KElement) -> Result<KElement, ExactError> {
        if other.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let keys: Vec<BigUint> = other.terms.keys().cloned().collect();
        let mut num = self.clone();
        let mut den = other.clone();
        for g in coprime_base(&keys) {
            let c = den.conjugate(&g);
            num = num.mul(&c);
            den = den.mul(&c);
        }
        let q = den.as_rational().expect("conjugation over a coprime base rationalises");
        Ok(KElement {
            terms: num.terms.into_iter().map(|(d, c)| (d, c / &q)).collect(),
        })
    }

    pub fn apply(op: KOp, x: &KElement, y: &KElement) -> Result<KElement, ExactError> {
        Ok(match op {
            KOp::Add => x.add(y),
            KOp::Sub => x.sub(y),
            KOp::Mul => x.mul(y),
            KOp::Div => x.div(y)?,
        })
    }

    pub fn to_tower(&self) -> Result<TowerReal, ExactError> {
        let mut acc = TowerReal::zero();
        for (d, c) in &self.terms {
            let mut t = TowerReal::from_rational(c.clone());
            if !d.is_one() {
                let (_, primes) = super::factor::squarefree_split(d, super::factor::DEFAULT_TRIAL_BOUND)?;
                for p in primes {
                    t = t * TowerReal::prime_root(p);
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Exact conversion from a tower value whose generators are all roots of
    /// rational primes; `None` for nested radicals.
    pub fn from_tower(x: &TowerReal) -> Option<KElement> {
        let mut out = KElement::zero();
        for (gens, c) in x.monomials() {
            let mut d = BigUint::one();
            for g in gens {
                d *= g.prime_value()?;
            }
            out.push(d, c);
        }
        Some(out)
    }
}

impl fmt::Display for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_tower() {
            Ok(t) => write!(f, "{t}"),
            Err(_) => write!(f, "{:?}", self.terms),
        }
    }
}

impl fmt::Debug for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K[{self}]")
    }
}
