//! Triangles up to similarity, normalised to sides `(a, b, 1)`.
//!
//! Exact-tier triangles carry tower sides; numeric-tier ones carry refinable
//! enclosures (sampled or produced from angles).

use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exact::{ExactError, Interval, NumReal, TowerReal};
use crate::geom::Point;

/// Largest precision used when certifying a numeric inequality.
pub const MAX_CERTIFY_BITS: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangleError {
    #[error("triangle inequality fails")]
    Degenerate,
    #[error("angles outside the admissible region")]
    BadAngles,
    #[error("inequality undecided at {0} bits")]
    Undecided(u32),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone)]
pub enum Side {
    Exact(TowerReal),
    Numeric(NumReal),
}

impl Side {
    pub fn to_num(&self) -> NumReal {
        match self {
            Side::Exact(t) => tower_num(t),
            Side::Numeric(n) => n.clone(),
        }
    }
}

impl fmt::Debug for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Exact(t) => write!(f, "{t}"),
            Side::Numeric(n) => write!(f, "~{}", n.to_f64()),
        }
    }
}

pub fn tower_num(t: &TowerReal) -> NumReal {
    let t = t.clone();
    NumReal::new(move |p| t.enclose(p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tier {
    Exact,
    Numeric,
}

/// Sides `a = |BC|`, `b = |CA|`, `c = |AB| = 1`.
#[derive(Clone, Debug)]
pub struct Triangle {
    a: Side,
    b: Side,
}

impl Triangle {
    pub fn exact(a: TowerReal, b: TowerReal) -> Result<Self, TriangleError> {
        let one = TowerReal::one();
        let ok = (&a + &one - &b).sign() > 0 && (&b + &one - &a).sign() > 0 && (&a + &b - &one).sign() > 0;
        if !ok {
            return Err(TriangleError::Degenerate);
        }
        Ok(Triangle {
            a: Side::Exact(a),
            b: Side::Exact(b),
        })
    }

    /// Builds from three exact sides by rescaling the third to 1.
    pub fn from_sides(a: &TowerReal, b: &TowerReal, c: &TowerReal) -> Result<Self, TriangleError> {
        if c.sign() <= 0 {
            return Err(TriangleError::Degenerate);
        }
        Triangle::exact(a.checked_div(c)?, b.checked_div(c)?)
    }

    pub fn numeric(a: NumReal, b: NumReal) -> Result<Self, TriangleError> {
        let one = NumReal::from_int(1);
        for e in [a.add(&one).sub(&b), b.add(&one).sub(&a), a.add(&b).sub(&one)] {
            match e.sign_refined(64, MAX_CERTIFY_BITS) {
                Some(1) => {}
                Some(_) => return Err(TriangleError::Degenerate),
                None => return Err(TriangleError::Undecided(MAX_CERTIFY_BITS)),
            }
        }
        Ok(Triangle {
            a: Side::Numeric(a),
            b: Side::Numeric(b),
        })
    }

    pub fn tier(&self) -> Tier {
        match (&self.a, &self.b) {
            (Side::Exact(_), Side::Exact(_)) => Tier::Exact,
            _ => Tier::Numeric,
        }
    }

    pub fn a(&self) -> &Side {
        &self.a
    }

    pub fn b(&self) -> &Side {
        &self.b
    }

    /// `(a, b, 1)` for exact-tier triangles.
    pub fn exact_sides(&self) -> Option<[TowerReal; 3]> {
        match (&self.a, &self.b) {
            (Side::Exact(a), Side::Exact(b)) => Some([a.clone(), b.clone(), TowerReal::one()]),
            _ => None,
        }
    }

    pub fn numeric_sides(&self) -> [NumReal; 3] {
        [self.a.to_num(), self.b.to_num(), NumReal::from_int(1)]
    }

    /// Canonical placement `A = (0,0)`, `B = (1,0)`, `C` above the x-axis.
    pub fn canonical_vertices(&self) -> Result<[Point; 3], TriangleError> {
        let [a, b, _] = self.exact_sides().ok_or(TriangleError::Undecided(0))?;
        let (a2, b2) = (a.square(), b.square());
        let cx = (TowerReal::one() + &b2 - &a2) * TowerReal::ratio(1, 2);
        let cy = (&b2 - &cx.square()).sqrt()?;
        Ok([Point::ints(0, 0), Point::ints(1, 0), Point::new(cx, cy)])
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.a.to_num().to_f64(), self.b.to_num().to_f64())
    }
}

#[derive(Clone, Debug)]
pub struct AnglePair {
    pub alpha: NumReal,
    pub beta: NumReal,
}

impl AnglePair {
    pub fn new(alpha: NumReal, beta: NumReal) -> Result<Self, TriangleError> {
        let gamma = NumReal::pi().sub(&alpha).sub(&beta);
        for e in [&alpha, &beta, &gamma] {
            match e.sign_refined(64, MAX_CERTIFY_BITS) {
                Some(1) => {}
                Some(_) => return Err(TriangleError::BadAngles),
                None => return Err(TriangleError::Undecided(MAX_CERTIFY_BITS)),
            }
        }
        Ok(AnglePair { alpha, beta })
    }

    /// `π · n / d`.
    pub fn pi_fraction(n: i64, d: i64) -> NumReal {
        NumReal::pi().mul(&NumReal::constant(num_rational::BigRational::new(n.into(), d.into())))
    }

    pub fn gamma(&self) -> NumReal {
        NumReal::pi().sub(&self.alpha).sub(&self.beta)
    }
}

/// Law of sines: `a = sin α / sin γ`, `b = sin β / sin γ`.
pub fn sides_from_angles(p: &AnglePair) -> Result<Triangle, TriangleError> {
    let sin = |x: &NumReal| x.map(|i| i.sin());
    let sg = sin(&p.gamma());
    Triangle::numeric(sin(&p.alpha).div(&sg), sin(&p.beta).div(&sg))
}

/// Exact cosines and refinable angles at `A`, `B`, `C`.
#[derive(Clone, Debug)]
pub struct SideAngles {
    pub cosines: [TowerReal; 3],
    pub angles: [NumReal; 3],
}

pub fn angles_from_sides(t: &Triangle) -> Result<SideAngles, TriangleError> {
    let [a, b, _] = t.exact_sides().ok_or(TriangleError::Undecided(0))?;
    let (a2, b2) = (a.square(), b.square());
    let one = TowerReal::one();
    let cosines = [
        (&b2 + &one - &a2).checked_div(&(TowerReal::from_int(2) * &b))?,
        (&a2 + &one - &b2).checked_div(&(TowerReal::from_int(2) * &a))?,
        (&a2 + &b2 - &one).checked_div(&(TowerReal::from_int(2) * &a * &b))?,
    ];
    let angles = cosines.clone().map(|c| angle_from_cos(&tower_num(&c)));
    Ok(SideAngles { cosines, angles })
}

/// Refinable angles of any triangle, exact or numeric.
pub fn numeric_angles(t: &Triangle) -> [NumReal; 3] {
    let [a, b, c] = t.numeric_sides();
    let (a2, b2, c2) = (a.mul(&a), b.mul(&b), c.mul(&c));
    let two = NumReal::from_int(2);
    let cos = [
        b2.add(&c2).sub(&a2).div(&two.mul(&b).mul(&c)),
        a2.add(&c2).sub(&b2).div(&two.mul(&a).mul(&c)),
        a2.add(&b2).sub(&c2).div(&two.mul(&a).mul(&b)),
    ];
    cos.map(|c| angle_from_cos(&c))
}

/// `arccos` on `(-1, 1)` via `atan2(√(1 − c²), c)`. When the enclosure is
/// too coarse to certify `sin > 0` the whole `[0, π]` range is returned.
pub fn angle_from_cos(c: &NumReal) -> NumReal {
    c.map(|ci| {
        let one = Interval::from_int(1, ci.prec());
        let s = one.sub(&ci.mul(&ci)).sqrt();
        s.and_then(|s| Interval::atan2_upper(&s, &ci)).unwrap_or_else(|| {
            let pi = Interval::pi(ci.prec());
            Interval::zero(ci.prec()).hull(&pi)
        })
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleMode {
    /// Sides uniform on the part of M where `c = 1` is the longest side.
    UniformM,
    /// Angles uniform on N.
    UniformN,
}

/// Uniform real in `[0, 1]` whose binary digits come from a seeded stream,
/// so every precision sees a prefix of the same expansion.
pub fn random_bit_real(key: u64) -> NumReal {
    NumReal::new(move |p| {
        let mut rng = ChaCha8Rng::seed_from_u64(key);
        let words = p.div_ceil(32) as usize;
        let mut x = BigInt::from(0u32);
        for _ in 0..words {
            x = (x << 32u32) + BigInt::from(rng.next_u32());
        }
        x >>= words as u32 * 32 - p;
        let hi = &x + 1;
        Interval::new(x, hi, p)
    })
}

/// Rejection sampler; returns the triangle and the number of proposals used.
pub fn sample_with_attempts(seed: u64, mode: SampleMode) -> (Triangle, u32) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;
    loop {
        attempts += 1;
        let (u, v) = (random_bit_real(rng.gen()), random_bit_real(rng.gen()));
        let t = match mode {
            SampleMode::UniformM => {
                let excess = u.add(&v).sub(&NumReal::from_int(1));
                if excess.sign_refined(64, MAX_CERTIFY_BITS) != Some(1) {
                    continue;
                }
                Triangle::numeric(u, v)
            }
            SampleMode::UniformN => {
                let pi = NumReal::pi();
                match AnglePair::new(u.mul(&pi), v.mul(&pi)) {
                    Ok(p) => sides_from_angles(&p),
                    Err(_) => continue,
                }
            }
        };
        if let Ok(t) = t {
            return (t, attempts);
        }
    }
}

pub fn sample_triangle(seed: u64, mode: SampleMode) -> Triangle {
    sample_with_attempts(seed, mode).0
}
