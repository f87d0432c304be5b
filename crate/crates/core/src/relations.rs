//! Bounded-height relation detection among real quantities.
//!
//! A query asks for `q₁x₁ + … + q_Dx_D = 0` where each `qᵢ` is a combination
//! `Σ c_{i,d}·√d` over a basis of squarefree radicands with integer
//! `|c_{i,d}| ≤ H`. Small searches enumerate every primitive, sign-normalised
//! coefficient vector and certify each combination with intervals (or the
//! exact kernel). Searches too large to enumerate are certified with an
//! exact LLL reduction: if every Gram–Schmidt norm of the reduced basis
//! exceeds the norm any relation of height `H` would have, none exists.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{factor, ExactError, Interval, KElement, NumReal, TowerReal};
use crate::trispace::{angles_from_sides, numeric_angles, tower_num, Side, Tier, Triangle};

pub const DEFAULT_PRECISION_BITS: u32 = 256;
pub const MAX_PRECISION_BITS: u32 = 4096;
/// Largest number of coefficient vectors checked one by one.
pub const ENUMERATION_LIMIT: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("between 1 and 6 values are required")]
    ValueCount,
    #[error("height must be at least 1")]
    ZeroHeight,
    #[error("precision must be at least 64 bits")]
    LowPrecision,
    #[error("basis radicand {0} is not squarefree")]
    BadRadicand(u64),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone)]
pub enum Quantity {
    Exact(TowerReal),
    Numeric(NumReal),
}

impl Quantity {
    fn num(&self) -> NumReal {
        match self {
            Quantity::Exact(t) => tower_num(t),
            Quantity::Numeric(n) => n.clone(),
        }
    }
}

impl From<Side> for Quantity {
    fn from(s: Side) -> Self {
        match s {
            Side::Exact(t) => Quantity::Exact(t),
            Side::Numeric(n) => Quantity::Numeric(n),
        }
    }
}

#[derive(Clone)]
pub struct RelationQuery {
    pub values: Vec<Quantity>,
    pub height: u32,
    /// Squarefree radicands for coefficients; `[1]` gives integer relations.
    pub basis_radicands: Vec<u64>,
    pub precision_bits: u32,
    /// Indices of values whose coefficients may not all vanish.
    pub nonzero_mask: Option<Vec<usize>>,
}

impl RelationQuery {
    pub fn integer(values: Vec<Quantity>, height: u32) -> Self {
        RelationQuery {
            values,
            height,
            basis_radicands: vec![1],
            precision_bits: DEFAULT_PRECISION_BITS,
            nonzero_mask: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    FoundCertified,
    FoundCandidate,
    NoneUpToHeight,
    /// Some combination could not be separated from zero at the maximum
    /// precision, and nothing was found.
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::FoundCertified => "FoundCertified",
            Status::FoundCandidate => "FoundCandidate",
            Status::NoneUpToHeight => "NoneUpToHeight",
            Status::Inconclusive => "Inconclusive",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certification {
    Exact,
    IntervalOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub coefficients: Vec<KElement>,
    pub certification: Certification,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Method {
    /// Direct witness from exact field membership.
    Direct,
    Enumeration {
        vectors: u64,
    },
    Lattice {
        bits: u32,
        min_gs_norm2: BigRational,
        bound: BigInt,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub status: Status,
    pub witnesses: Vec<Witness>,
    pub height: u32,
    pub method: Method,
    /// Integer coefficient vectors left undecided at the maximum precision.
    pub undecided: Vec<Vec<i64>>,
}

impl RelationReport {
    pub fn has_witness(&self, coeffs: &[i64]) -> bool {
        let want: Vec<KElement> = coeffs.iter().map(|&c| KElement::from_int(c)).collect();
        self.witnesses.iter().any(|w| w.coefficients == want)
    }
}

struct Expanded {
    /// Value `i` times `√d` for each basis radicand, value-major.
    nums: Vec<NumReal>,
    exact: Option<Vec<TowerReal>>,
    basis: Vec<u64>,
    dims: usize,
}

fn expand(q: &RelationQuery) -> Result<Expanded, RelationError> {
    let mut basis = q.basis_radicands.clone();
    if !basis.contains(&1) {
        basis.insert(0, 1);
    }
    basis.sort_unstable();
    basis.dedup();
    for &d in &basis {
        let (root, _) = factor::squarefree_part(&BigUint::from(d))?;
        if d == 0 || !root.is_one() {
            return Err(RelationError::BadRadicand(d));
        }
    }
    let roots: Vec<TowerReal> = basis
        .iter()
        .map(|&d| TowerReal::from_int(d as i64).sqrt())
        .collect::<Result<_, _>>()?;
    let mut nums = Vec::new();
    let mut exact = Some(Vec::new());
    for v in &q.values {
        for r in &roots {
            nums.push(v.num().mul(&tower_num(r)));
            match (v, exact.as_mut()) {
                (Quantity::Exact(t), Some(e)) => e.push(t * r),
                _ => exact = None,
            }
        }
    }
    let dims = nums.len();
    Ok(Expanded {
        nums,
        exact,
        basis,
        dims,
    })
}

fn witness_of(c: &[i64], ex: &Expanded, certification: Certification) -> Witness {
    let k = ex.basis.len();
    let coefficients = c
        .chunks(k)
        .map(|chunk| {
            chunk.iter().zip(&ex.basis).fold(KElement::zero(), |acc, (&ci, &d)| {
                let term = KElement::sqrt_term(BigRational::from_integer(ci.into()), d).expect("squarefree basis");
                acc.add(&term)
            })
        })
        .collect();
    Witness {
        coefficients,
        certification,
    }
}

/// Scaled interval endpoints of every expanded value at one precision.
struct Table {
    lo: Vec<BigInt>,
    hi: Vec<BigInt>,
    prec: u32,
}

impl Table {
    fn new(ex: &Expanded, prec: u32) -> Table {
        let iv: Vec<Interval> = ex.nums.iter().map(|n| n.enclose(prec).at_prec(prec)).collect();
        Table {
            lo: iv.iter().map(|i| i.lo_scaled().clone()).collect(),
            hi: iv.iter().map(|i| i.hi_scaled().clone()).collect(),
            prec,
        }
    }

    fn combine(&self, c: &[i64]) -> Interval {
        let (mut lo, mut hi) = (BigInt::zero(), BigInt::zero());
        for (i, &ci) in c.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            let k = BigInt::from(ci);
            if ci > 0 {
                lo += &k * &self.lo[i];
                hi += &k * &self.hi[i];
            } else {
                lo += &k * &self.hi[i];
                hi += &k * &self.lo[i];
            }
        }
        Interval::new(lo, hi, self.prec)
    }
}

enum Verdict {
    Nonzero,
    Zero,
    Candidate,
    Undecided,
}

struct Checker<'a> {
    ex: &'a Expanded,
    tables: Vec<Table>,
    start: u32,
}

impl Checker<'_> {
    fn table(&mut self, level: usize) -> &Table {
        while self.tables.len() <= level {
            let prec = self.start << self.tables.len();
            self.tables.push(Table::new(self.ex, prec));
        }
        &self.tables[level]
    }

    fn check(&mut self, c: &[i64]) -> Verdict {
        if self.table(0).combine(c).sign().is_some() {
            return Verdict::Nonzero;
        }
        if let Some(exact) = &self.ex.exact {
            let sum = c
                .iter()
                .zip(exact)
                .filter(|(ci, _)| **ci != 0)
                .fold(TowerReal::zero(), |acc, (&ci, x)| acc + TowerReal::from_int(ci) * x);
            return if sum.is_zero() { Verdict::Zero } else { Verdict::Nonzero };
        }
        let mut level = 1;
        loop {
            if (self.start << level) > MAX_PRECISION_BITS {
                break;
            }
            if self.table(level).combine(c).sign().is_some() {
                return Verdict::Nonzero;
            }
            level += 1;
        }
        let last = self.tables.last().expect("at least one table").combine(c);
        // a refinable input shrinks far below the starting resolution
        if last.width_at_most_pow2(self.start) {
            Verdict::Candidate
        } else {
            Verdict::Undecided
        }
    }
}

fn masked_ok(c: &[i64], mask: &Option<Vec<usize>>, k: usize) -> bool {
    match mask {
        None => true,
        Some(idx) => idx.iter().any(|&i| c[i * k..(i + 1) * k].iter().any(|&x| x != 0)),
    }
}

fn primitive_normalised(c: &[i64]) -> bool {
    let Some(first) = c.iter().find(|&&x| x != 0) else {
        return false;
    };
    *first > 0 && c.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1
}

fn next_vector(c: &mut [i64], h: i64) -> bool {
    for x in c.iter_mut().rev() {
        if *x < h {
            *x += 1;
            return true;
        }
        *x = -h;
    }
    false
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Algorithm {
    /// Enumerate when at most [`ENUMERATION_LIMIT`] vectors, else lattice.
    #[default]
    Auto,
    Enumerate,
    Lattice,
}

pub fn find_relations(q: &RelationQuery) -> Result<RelationReport, RelationError> {
    find_relations_with(q, Algorithm::Auto)
}

pub fn find_relations_with(q: &RelationQuery, algorithm: Algorithm) -> Result<RelationReport, RelationError> {
    if q.values.is_empty() || q.values.len() > 6 {
        return Err(RelationError::ValueCount);
    }
    if q.height == 0 {
        return Err(RelationError::ZeroHeight);
    }
    if q.precision_bits < 64 {
        return Err(RelationError::LowPrecision);
    }
    let ex = expand(q)?;
    let h = q.height as i64;
    let count = (2 * h as u64 + 1).checked_pow(ex.dims as u32);
    let small = count.is_some_and(|n| n <= ENUMERATION_LIMIT);
    match algorithm {
        Algorithm::Enumerate => Ok(enumerate(q, &ex)),
        Algorithm::Lattice => Ok(lattice(q, &ex)),
        Algorithm::Auto if small => Ok(enumerate(q, &ex)),
        Algorithm::Auto => Ok(lattice(q, &ex)),
    }
}

fn enumerate(q: &RelationQuery, ex: &Expanded) -> RelationReport {
    let h = q.height as i64;
    let k = ex.basis.len();
    let mut checker = Checker {
        ex,
        tables: Vec::new(),
        start: q.precision_bits,
    };
    let mut witnesses = Vec::new();
    let mut undecided = Vec::new();
    let mut c = vec![-h; ex.dims];
    let mut vectors = 0u64;
    loop {
        if primitive_normalised(&c) && masked_ok(&c, &q.nonzero_mask, k) {
            vectors += 1;
            match checker.check(&c) {
                Verdict::Nonzero => {}
                Verdict::Zero => witnesses.push(witness_of(&c, ex, Certification::Exact)),
                Verdict::Candidate => witnesses.push(witness_of(&c, ex, Certification::IntervalOnly)),
                Verdict::Undecided => undecided.push(c.clone()),
            }
        }
        if !next_vector(&mut c, h) {
            break;
        }
    }
    finish(q, witnesses, undecided, Method::Enumeration { vectors })
}

fn finish(q: &RelationQuery, mut witnesses: Vec<Witness>, undecided: Vec<Vec<i64>>, method: Method) -> RelationReport {
    witnesses.sort_by(cmp_witness);
    let status = if witnesses.iter().any(|w| w.certification == Certification::Exact) {
        Status::FoundCertified
    } else if !witnesses.is_empty() {
        Status::FoundCandidate
    } else if !undecided.is_empty() {
        Status::Inconclusive
    } else {
        Status::NoneUpToHeight
    };
    RelationReport {
        status,
        witnesses,
        height: q.height,
        method,
        undecided,
    }
}

fn cmp_witness(a: &Witness, b: &Witness) -> Ordering {
    let key = |w: &Witness| -> Vec<f64> {
        w.coefficients
            .iter()
            .map(|k| k.to_tower().map(|t| t.to_f64()).unwrap_or(0.0))
            .collect()
    };
    let (ka, kb) = (key(a), key(b));
    ka.iter()
        .zip(&kb)
        .map(|(x, y)| x.partial_cmp(y).unwrap_or(Ordering::Equal))
        .find(|o| *o != Ordering::Equal)
        .unwrap_or_else(|| a.coefficients.cmp(&b.coefficients))
}

fn lattice(q: &RelationQuery, ex: &Expanded) -> RelationReport {
    let n = ex.dims;
    let h = BigInt::from(q.height);
    let mut prec = q.precision_bits;
    let mut last: Option<(BigRational, BigInt)> = None;
    while prec <= MAX_PRECISION_BITS {
        let table = Table::new(ex, prec);
        let mut basis: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let mut row = vec![BigInt::zero(); n + 1];
                row[i] = BigInt::one();
                row[n] = table.lo[i].clone();
                row
            })
            .collect();
        let err: BigInt = (0..n).map(|i| &table.hi[i] - &table.lo[i]).sum();
        // any relation c with |cᵢ| ≤ H maps to a lattice vector of squared
        // norm at most n·H² + (H·Σ errᵢ)²
        let bound = BigInt::from(n) * &h * &h + (&h * &err) * (&h * &err);
        let d = lll_reduce(&mut basis);
        let min_gs = (1..=n)
            .map(|i| BigRational::new(d[i].clone(), d[i - 1].clone()))
            .min()
            .expect("nonempty basis");
        if min_gs > BigRational::from_integer(bound.clone()) {
            return finish(
                q,
                Vec::new(),
                Vec::new(),
                Method::Lattice {
                    bits: prec,
                    min_gs_norm2: min_gs,
                    bound,
                },
            );
        }
        // short vectors with small coefficients may be genuine relations
        if let Some(exact) = &ex.exact {
            let mut witnesses = Vec::new();
            for row in &basis {
                let c: Option<Vec<i64>> = row[..n].iter().map(|x| i64::try_from(x.clone()).ok()).collect();
                let Some(mut c) = c else { continue };
                if c.iter().any(|x| x.abs() > q.height as i64) || !masked_ok(&c, &q.nonzero_mask, ex.basis.len()) {
                    continue;
                }
                if c.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
                    c.iter_mut().for_each(|x| *x = -*x);
                }
                let sum = c
                    .iter()
                    .zip(exact)
                    .fold(TowerReal::zero(), |acc, (&ci, x)| acc + TowerReal::from_int(ci) * x);
                if sum.is_zero() && primitive_normalised(&c) {
                    witnesses.push(witness_of(&c, ex, Certification::Exact));
                }
            }
            if !witnesses.is_empty() {
                witnesses.dedup();
                return finish(
                    q,
                    witnesses,
                    Vec::new(),
                    Method::Lattice {
                        bits: prec,
                        min_gs_norm2: min_gs,
                        bound,
                    },
                );
            }
        }
        last = Some((min_gs, bound));
        prec *= 2;
    }
    let (min_gs_norm2, bound) = last.expect("at least one round");
    RelationReport {
        status: Status::Inconclusive,
        witnesses: Vec::new(),
        height: q.height,
        method: Method::Lattice {
            bits: MAX_PRECISION_BITS,
            min_gs_norm2,
            bound,
        },
        undecided: Vec::new(),
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Integral LLL (δ = 3/4) on linearly independent rows. Returns the
/// Gram determinants `d₀ = 1, d₁, …, d_n`, so `‖b*ᵢ‖² = dᵢ / dᵢ₋₁`.
#[allow(clippy::needless_range_loop)]
pub fn lll_reduce(rows: &mut [Vec<BigInt>]) -> Vec<BigInt> {
    let n = rows.len();
    // 1-based bookkeeping as in the textbook formulation
    let mut b: Vec<Vec<BigInt>> = std::iter::once(Vec::new()).chain(rows.iter().cloned()).collect();
    let mut d = vec![BigInt::zero(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n + 1]; n + 1];
    d[0] = BigInt::one();
    if n == 0 {
        return d;
    }
    d[1] = dot(&b[1], &b[1]);
    let mut k = 2;
    let mut kmax = 1;

    #[allow(clippy::needless_range_loop)]
    fn red(k: usize, l: usize, b: &mut [Vec<BigInt>], d: &[BigInt], lam: &mut [Vec<BigInt>]) {
        if (&lam[k][l] * BigInt::from(2)).abs() > d[l] {
            let q = round_div(&lam[k][l], &d[l]);
            let bl = b[l].clone();
            for (x, y) in b[k].iter_mut().zip(&bl) {
                *x -= &q * y;
            }
            lam[k][l] = &lam[k][l] - &q * &d[l];
            for i in 1..l {
                let t = &q * &lam[l][i];
                lam[k][i] -= t;
            }
        }
    }

    while k <= n {
        if k > kmax {
            kmax = k;
            for j in 1..=k {
                let mut u = dot(&b[k], &b[j]);
                for i in 1..j {
                    u = (&d[i] * &u - &lam[k][i] * &lam[j][i]) / &d[i - 1];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    assert!(!u.is_zero(), "rows must be linearly independent");
                    d[k] = u;
                }
            }
        }
        red(k, k - 1, &mut b, &d, &mut lam);
        let lhs = BigInt::from(4) * &d[k] * &d[k - 2];
        let rhs = BigInt::from(3) * &d[k - 1] * &d[k - 1] - BigInt::from(4) * &lam[k][k - 1] * &lam[k][k - 1];
        if lhs < rhs {
            b.swap(k, k - 1);
            for j in 1..k - 1 {
                let t = lam[k][j].clone();
                lam[k][j] = lam[k - 1][j].clone();
                lam[k - 1][j] = t;
            }
            let l = lam[k][k - 1].clone();
            let big_b = (&d[k - 2] * &d[k] + &l * &l) / &d[k - 1];
            for i in k + 1..=kmax {
                let t = lam[i][k].clone();
                lam[i][k] = (&d[k] * &lam[i][k - 1] - &l * &t) / &d[k - 1];
                lam[i][k - 1] = (&big_b * &t + &l * &lam[i][k]) / &d[k];
            }
            d[k - 1] = big_b;
            k = (k - 1).max(2);
        } else {
            for l in (1..k - 1).rev() {
                red(k, l, &mut b, &d, &mut lam);
            }
            k += 1;
        }
    }
    for (r, nb) in rows.iter_mut().zip(b.into_iter().skip(1)) {
        *r = nb;
    }
    d
}

fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    // nearest integer to a/b for b > 0
    let two = BigInt::from(2);
    (a * &two + b).div_floor(&(b * &two))
}

/// Angle relations `q₁α + q₂β + q₃γ = 0` with integer coefficients.
pub fn angle_relation_report(t: &Triangle, height: u32, precision_bits: u32) -> Result<RelationReport, RelationError> {
    let angles = match t.tier() {
        Tier::Exact => angles_from_sides(t).map_err(|_| RelationError::ValueCount)?.angles,
        Tier::Numeric => numeric_angles(t),
    };
    let q = RelationQuery {
        values: angles.into_iter().map(Quantity::Numeric).collect(),
        height,
        basis_radicands: vec![1],
        precision_bits,
        nonzero_mask: None,
    };
    find_relations(&q)
}

/// Side relations `q₁a + q₂b + q₃ = 0` over the field generated by square
/// roots, with `(q₁, q₂) ≠ (0, 0)`.
pub fn side_relation_report(
    t: &Triangle,
    height: u32,
    basis_radicands: &[u64],
    precision_bits: u32,
) -> Result<RelationReport, RelationError> {
    let mut basis = basis_radicands.to_vec();
    if !basis.contains(&1) {
        basis.push(1);
    }
    if let Some([a, b, _]) = t.exact_sides() {
        let in_basis = |x: &TowerReal| {
            KElement::from_tower(x).filter(|k| k.terms().all(|(d, _)| basis.iter().any(|&r| BigUint::from(r) == *d)))
        };
        let mut witnesses = Vec::new();
        if let Some(ka) = in_basis(&a) {
            witnesses.push(Witness {
                coefficients: vec![KElement::from_int(1), KElement::zero(), ka.neg()],
                certification: Certification::Exact,
            });
        }
        if let Some(kb) = in_basis(&b) {
            witnesses.push(Witness {
                coefficients: vec![KElement::zero(), KElement::from_int(1), kb.neg()],
                certification: Certification::Exact,
            });
        }
        if !witnesses.is_empty() {
            witnesses.sort_by(cmp_witness);
            return Ok(RelationReport {
                status: Status::FoundCertified,
                witnesses,
                height,
                method: Method::Direct,
                undecided: Vec::new(),
            });
        }
    }
    let q = RelationQuery {
        values: vec![
            t.a().clone().into(),
            t.b().clone().into(),
            Quantity::Exact(TowerReal::one()),
        ],
        height,
        basis_radicands: basis,
        precision_bits,
        nonzero_mask: Some(vec![0, 1]),
    };
    find_relations(&q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_number;
    use crate::trispace::AnglePair;

    fn num(s: &str) -> TowerReal {
        parse_number(s).unwrap()
    }

    #[test]
    fn pi_sixths() {
        let v = [6, 3, 2].map(|d| Quantity::Numeric(AnglePair::pi_fraction(1, d)));
        let r = find_relations(&RelationQuery::integer(v.to_vec(), 2)).unwrap();
        assert_eq!(r.status, Status::FoundCandidate);
        assert!(r.has_witness(&[2, -1, 0]));
    }

    #[test]
    fn sqrt_two_irrational() {
        let q = RelationQuery {
            values: vec![Quantity::Exact(num("1")), Quantity::Exact(num("sqrt(2)"))],
            height: 10,
            basis_radicands: vec![1],
            precision_bits: 256,
            nonzero_mask: Some(vec![0, 1]),
        };
        let r = find_relations(&q).unwrap();
        assert_eq!(r.status, Status::NoneUpToHeight);
        // 21² vectors minus zero, halved by sign, minus non-primitive ones
        assert!(matches!(r.method, Method::Enumeration { vectors } if vectors < 441));
    }

    #[test]
    fn exact_relation_is_certified() {
        let q = RelationQuery::integer(
            vec![Quantity::Exact(num("sqrt(8)")), Quantity::Exact(num("sqrt(2)"))],
            3,
        );
        let r = find_relations(&q).unwrap();
        assert_eq!(r.status, Status::FoundCertified);
        assert!(r.has_witness(&[1, -2]));
    }

    #[test]
    fn equilateral_angles() {
        let t = Triangle::exact(num("1"), num("1")).unwrap();
        let r = angle_relation_report(&t, 1, 256).unwrap();
        assert_eq!(r.status, Status::FoundCandidate);
        assert!(r.has_witness(&[1, -1, 0]));
    }

    #[test]
    fn rational_sides_direct() {
        let t = Triangle::exact(num("7/8"), num("3/4")).unwrap();
        let r = side_relation_report(&t, 8, &[1, 2, 3, 5], 256).unwrap();
        assert_eq!(r.status, Status::FoundCertified);
        let minus_a = KElement::rational(BigRational::new((-7).into(), 8.into()));
        assert!(r
            .witnesses
            .iter()
            .any(|w| w.coefficients[0] == KElement::from_int(1) && w.coefficients[2] == minus_a));
    }

    #[test]
    fn scalene_angles_satisfy_triple_angle_relation() {
        // cos γ = 1/4 and cos β = 11/16, so cos 3γ = 4/64 − 3/4 = −cos β and 3γ = π + β
        let (cb, cg) = (TowerReal::ratio(11, 16), TowerReal::ratio(1, 4));
        let triple = TowerReal::from_int(4) * &cg * &cg * &cg - TowerReal::from_int(3) * &cg;
        assert_eq!(triple, -cb);

        let t = Triangle::exact(num("7/8"), num("3/4")).unwrap();
        let r = angle_relation_report(&t, 12, 512).unwrap();
        assert_eq!(r.status, Status::FoundCandidate);
        assert!(r.has_witness(&[1, 2, -2]));
        assert_eq!(
            angle_relation_report(&t, 1, 512).unwrap().status,
            Status::NoneUpToHeight
        );
    }

    #[test]
    fn lattice_agrees_with_enumeration() {
        for seed in 0..3 {
            let t = crate::trispace::sample_triangle(seed, crate::trispace::SampleMode::UniformM);
            let q = RelationQuery {
                values: vec![
                    t.a().clone().into(),
                    t.b().clone().into(),
                    Quantity::Exact(TowerReal::one()),
                ],
                height: 3,
                basis_radicands: vec![1, 2],
                precision_bits: 256,
                nonzero_mask: Some(vec![0, 1]),
            };
            let e = find_relations_with(&q, Algorithm::Enumerate).unwrap();
            let l = find_relations_with(&q, Algorithm::Lattice).unwrap();
            assert_eq!(e.status, Status::NoneUpToHeight);
            assert_eq!(l.status, Status::NoneUpToHeight);
        }
    }

    #[test]
    fn lll_reduces_known_basis() {
        let mut rows: Vec<Vec<BigInt>> = [[1, 1, 1], [-1, 0, 2], [3, 5, 6]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let d = lll_reduce(&mut rows);
        // determinant of the Gram matrix is invariant under reduction
        assert_eq!(d[3], BigInt::from(9));
        let norms: Vec<BigInt> = rows.iter().map(|r| dot(r, r)).collect();
        assert!(norms[0] <= BigInt::from(3));
    }

    #[test]
    fn lattice_finds_exact_relation() {
        // a = 1 + √2, b = √3: relation a − 1·1 − √2·1 = 0 lives in the basis
        let a = num("1 + sqrt(2) + sqrt(3)");
        let q = RelationQuery {
            values: vec![
                Quantity::Exact(a),
                Quantity::Exact(num("sqrt(5)")),
                Quantity::Exact(num("1")),
            ],
            height: 8,
            basis_radicands: vec![1, 2, 3, 5],
            precision_bits: 256,
            nonzero_mask: Some(vec![0, 1]),
        };
        let r = find_relations(&q).unwrap();
        assert_eq!(r.status, Status::FoundCertified);
        assert!(matches!(r.method, Method::Lattice { .. }));
    }
}
