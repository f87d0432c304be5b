//! Outward-rounded fixed-point interval arithmetic.
//!
//! An [`Interval`] at precision `p` is the closed range
//! `[lo / 2^p, hi / 2^p]` with integer endpoints. Every operation rounds its
//! lower endpoint down and its upper endpoint up, so the true value of any
//! expression evaluated with these operations is always enclosed.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

fn pow2(k: u32) -> BigInt {
    BigInt::one() << k
}

fn floor_shr(a: &BigInt, k: u32) -> BigInt {
    a.div_floor(&pow2(k))
}

fn ceil_shr(a: &BigInt, k: u32) -> BigInt {
    -((-a).div_floor(&pow2(k)))
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn ceil_sqrt(a: &BigInt) -> BigInt {
    let s = a.sqrt();
    if &s * &s == *a {
        s
    } else {
        s + 1
    }
}

impl Interval {
    pub fn new(lo: BigInt, hi: BigInt, prec: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi, prec }
    }

    pub fn zero(prec: u32) -> Self {
        Interval::new(BigInt::zero(), BigInt::zero(), prec)
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        let v = BigInt::from(n) << prec;
        Interval::new(v.clone(), v, prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let scaled = q.numer() << prec;
        let lo = scaled.div_floor(q.denom());
        let hi = ceil_div(&scaled, q.denom());
        Interval::new(lo, hi, prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn lo_scaled(&self) -> &BigInt {
        &self.lo
    }

    pub fn hi_scaled(&self) -> &BigInt {
        &self.hi
    }

    /// Re-expresses at a (possibly different) precision, rounding outward.
    pub fn at_prec(&self, prec: u32) -> Interval {
        match prec.cmp(&self.prec) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let k = prec - self.prec;
                Interval::new(&self.lo << k, &self.hi << k, prec)
            }
            Ordering::Less => {
                let k = self.prec - prec;
                Interval::new(floor_shr(&self.lo, k), ceil_shr(&self.hi, k), prec)
            }
        }
    }

    fn aligned(a: &Interval, b: &Interval) -> (Interval, Interval) {
        let p = a.prec.max(b.prec);
        (a.at_prec(p), b.at_prec(p))
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Sign of every point of the interval, if they all agree and are nonzero.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    /// Width as a scaled integer `hi - lo` at this precision.
    pub fn width_scaled(&self) -> BigInt {
        &self.hi - &self.lo
    }

    /// True when the width is at most `2^-bits`.
    pub fn width_at_most_pow2(&self, bits: u32) -> bool {
        (self.width_scaled() << bits) <= pow2(self.prec)
    }

    pub fn lo_f64(&self) -> f64 {
        scaled_to_f64(&self.lo, self.prec)
    }

    pub fn hi_f64(&self) -> f64 {
        scaled_to_f64(&self.hi, self.prec)
    }

    pub fn mid_f64(&self) -> f64 {
        scaled_to_f64(&((&self.lo + &self.hi) / 2), self.prec)
    }

    /// Largest absolute value of any point, as an upper bound interval endpoint.
    fn mag_scaled(&self) -> BigInt {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn neg(&self) -> Interval {
        Interval::new(-&self.hi, -&self.lo, self.prec)
    }

    pub fn add(&self, other: &Interval) -> Interval {
        let (a, b) = Interval::aligned(self, other);
        Interval::new(&a.lo + &b.lo, &a.hi + &b.hi, a.prec)
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let (a, b) = Interval::aligned(self, other);
        let products = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
        let min = products.iter().min().unwrap();
        let max = products.iter().max().unwrap();
        Interval::new(floor_shr(min, a.prec), ceil_shr(max, a.prec), a.prec)
    }

    pub fn mul_int(&self, k: &BigInt) -> Interval {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if a <= b {
            Interval::new(a, b, self.prec)
        } else {
            Interval::new(b, a, self.prec)
        }
    }

    /// Division by a nonzero integer.
    pub fn div_int(&self, k: &BigInt) -> Interval {
        assert!(!k.is_zero(), "interval division by integer zero");
        let (lo, hi) = if k.is_positive() {
            (self.lo.clone(), self.hi.clone())
        } else {
            (-&self.hi, -&self.lo)
        };
        let k = k.abs();
        Interval::new(lo.div_floor(&k), ceil_div(&hi, &k), self.prec)
    }

    /// `None` when the divisor contains zero.
    pub fn div(&self, other: &Interval) -> Option<Interval> {
        if other.contains_zero() {
            return None;
        }
        let (a, b) = Interval::aligned(self, other);
        let p = a.prec;
        let nums = [&a.lo << p, &a.hi << p];
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for n in &nums {
            for d in [&b.lo, &b.hi] {
                let f = n.div_floor(d);
                let c = ceil_div(n, d);
                lo = Some(match lo {
                    Some(x) if x <= f => x,
                    _ => f,
                });
                hi = Some(match hi {
                    Some(x) if x >= c => x,
                    _ => c,
                });
            }
        }
        Some(Interval::new(lo.unwrap(), hi.unwrap(), p))
    }

    /// `None` when the interval is entirely negative; a lower endpoint below
    /// zero is clamped.
    pub fn sqrt(&self) -> Option<Interval> {
        if self.hi.is_negative() {
            return None;
        }
        let p = self.prec;
        let lo = if self.lo.is_positive() {
            (&self.lo << p).sqrt()
        } else {
            BigInt::zero()
        };
        let hi = ceil_sqrt(&(&self.hi << p));
        Some(Interval::new(lo, hi, p))
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        let (a, b) = Interval::aligned(self, other);
        Interval::new(a.lo.min(b.lo), a.hi.max(b.hi), a.prec)
    }

    /// Symmetric error term `[-2^-bits, 2^-bits]`-style widening by a scaled amount.
    fn widen(&self, err_scaled: &BigInt) -> Interval {
        Interval::new(&self.lo - err_scaled, &self.hi + err_scaled, self.prec)
    }

    /// π enclosed via Machin's formula.
    pub fn pi(prec: u32) -> Interval {
        let w = prec + 16;
        let a = atan_small(&Interval::from_rational(&BigRational::new(1.into(), 5.into()), w));
        let b = atan_small(&Interval::from_rational(&BigRational::new(1.into(), 239.into()), w));
        a.mul_int(&16.into()).sub(&b.mul_int(&4.into()))
    }

    /// Arctangent; monotone, so evaluated at the two endpoints.
    pub fn atan(&self) -> Interval {
        let lo = atan_point(&self.lo, self.prec);
        let hi = atan_point(&self.hi, self.prec);
        Interval::new(lo.lo, hi.hi, lo.prec)
    }

    /// Angle of the vector `(c, s)` for `s > 0`, in `(0, π)`. `None` when `s`
    /// is not certified positive.
    pub fn atan2_upper(s: &Interval, c: &Interval) -> Option<Interval> {
        if s.sign() != Some(1) {
            return None;
        }
        let p = s.prec.max(c.prec);
        let half_pi = Interval::pi(p).div_int(&2.into());
        Some(half_pi.sub(&c.div(s)?.atan()))
    }

    /// Sine via the Taylor series; intended for `|x| < 8`.
    pub fn sin(&self) -> Interval {
        taylor_trig(self, true)
    }

    pub fn cos(&self) -> Interval {
        taylor_trig(self, false)
    }
}

fn scaled_to_f64(v: &BigInt, prec: u32) -> f64 {
    let bits = v.bits();
    if bits > 900 {
        let shift = (bits - 60) as u32;
        let top = (v >> shift).to_f64().unwrap_or(f64::NAN);
        return top * 2f64.powi(shift as i32 - prec as i32);
    }
    let f = v.to_f64().unwrap_or(f64::NAN);
    if prec > 1000 {
        f * 2f64.powi(-1000) * 2f64.powi(1000 - prec as i32)
    } else {
        f * 2f64.powi(-(prec as i32))
    }
}

/// Alternating series Σ (−1)^k y^(2k+1)/(2k+1) for |y| ≤ 1/4, plus the
/// truncation bound (first omitted term).
fn atan_small(y: &Interval) -> Interval {
    let p = y.prec;
    let y2 = y.mul(y);
    let mut pow = y.clone();
    let mut sum = Interval::zero(p);
    let mut k: i64 = 0;
    loop {
        let term = pow.div_int(&BigInt::from(2 * k + 1));
        if term.mag_scaled() <= BigInt::one() && k > 0 {
            // first omitted term bound, plus one ulp
            return sum.widen(&(term.mag_scaled() + 1));
        }
        sum = if k % 2 == 0 { sum.add(&term) } else { sum.sub(&term) };
        pow = pow.mul(&y2);
        k += 1;
    }
}

/// Rigorous enclosure of atan at the dyadic point `v / 2^prec`.
fn atan_point(v: &BigInt, prec: u32) -> Interval {
    let w = prec + 24;
    let x = Interval::new(v.clone(), v.clone(), prec).at_prec(w);
    let negative = v.is_negative();
    let x = if negative { x.neg() } else { x };
    let one = Interval::from_int(1, w);
    let big = x.lo > (BigInt::one() << w);
    let mut y = if big { one.div(&x).expect("x > 1") } else { x };
    // two halvings: atan(y) = 2 atan(y / (1 + sqrt(1 + y²)))
    for _ in 0..2 {
        let denom = one.add(&one.add(&y.mul(&y)).sqrt().expect("positive"));
        y = y.div(&denom).expect("positive denominator");
    }
    let mut r = atan_small(&y).mul_int(&4.into());
    if big {
        r = Interval::pi(w).div_int(&2.into()).sub(&r);
    }
    let r = if negative { r.neg() } else { r };
    r.at_prec(prec)
}

fn taylor_trig(x: &Interval, sine: bool) -> Interval {
    let p = x.prec + 16;
    let x = x.at_prec(p);
    assert!(
        x.mag_scaled() < (BigInt::from(8) << p),
        "trigonometric series used outside |x| < 8"
    );
    let x2 = x.mul(&x);
    let (mut term, mut k): (Interval, i64) = if sine {
        (x.clone(), 1)
    } else {
        (Interval::from_int(1, p), 0)
    };
    let mut sum = Interval::zero(p);
    let mut n = 0;
    loop {
        // term = x^k / k!
        if k > 16 && term.mag_scaled() <= BigInt::one() {
            return sum.widen(&(term.mag_scaled() + 1)).at_prec(p - 16);
        }
        sum = if n % 2 == 0 { sum.add(&term) } else { sum.sub(&term) };
        term = term.mul(&x2).div_int(&BigInt::from((k + 1) * (k + 2)));
        k += 2;
        n += 1;
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]@{}", self.lo_f64(), self.hi_f64(), self.prec)
    }
}

/// A real number known through enclosures at any requested precision.
#[derive(Clone)]
pub struct NumReal(Arc<dyn Fn(u32) -> Interval + Send + Sync>);

impl NumReal {
    pub fn new(f: impl Fn(u32) -> Interval + Send + Sync + 'static) -> Self {
        NumReal(Arc::new(f))
    }

    pub fn constant(q: BigRational) -> Self {
        NumReal::new(move |p| Interval::from_rational(&q, p))
    }

    pub fn from_int(n: i64) -> Self {
        NumReal::new(move |p| Interval::from_int(n, p))
    }

    pub fn pi() -> Self {
        NumReal::new(Interval::pi)
    }

    pub fn enclose(&self, prec: u32) -> Interval {
        (self.0)(prec)
    }

    /// Sign, refining from `start` bits up to `max` bits.
    pub fn sign_refined(&self, start: u32, max: u32) -> Option<i8> {
        let mut p = start;
        loop {
            if let Some(s) = self.enclose(p).sign() {
                return Some(s);
            }
            if p >= max {
                return None;
            }
            p = (p * 2).min(max);
        }
    }

    pub fn map(&self, f: impl Fn(Interval) -> Interval + Send + Sync + 'static) -> NumReal {
        let a = self.clone();
        NumReal::new(move |p| f(a.enclose(p + 16)))
    }

    pub fn zip(&self, other: &NumReal, f: impl Fn(Interval, Interval) -> Interval + Send + Sync + 'static) -> NumReal {
        let a = self.clone();
        let b = other.clone();
        NumReal::new(move |p| f(a.enclose(p + 16), b.enclose(p + 16)))
    }

    pub fn add(&self, o: &NumReal) -> NumReal {
        self.zip(o, |a, b| a.add(&b))
    }

    pub fn sub(&self, o: &NumReal) -> NumReal {
        self.zip(o, |a, b| a.sub(&b))
    }

    pub fn mul(&self, o: &NumReal) -> NumReal {
        self.zip(o, |a, b| a.mul(&b))
    }

    /// Division; the divisor must be provably nonzero at the requested
    /// precision, otherwise the result is the whole (huge) hull and
    /// certification downstream simply fails.
    pub fn div(&self, o: &NumReal) -> NumReal {
        self.zip(o, |a, b| {
            a.div(&b).unwrap_or_else(|| {
                let big = BigInt::one() << (a.prec() + 64);
                Interval::new(-big.clone(), big, a.prec())
            })
        })
    }

    pub fn to_f64(&self) -> f64 {
        self.enclose(64).mid_f64()
    }
}

impl fmt::Debug for NumReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumReal({:?})", self.enclose(64))
    }
}
