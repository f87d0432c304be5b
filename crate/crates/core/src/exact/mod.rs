//! Exact arithmetic: rationals, the multiquadratic field and square-root
//! towers, plus interval enclosures and the number literal grammar.

mod error;
pub mod factor;
pub mod interval;
mod kfield;
mod literal;
mod tower;

pub use error::ExactError;
pub use interval::{Interval, NumReal};
pub use kfield::{KElement, KOp};
pub use literal::{format_number, parse_number};
pub use num_rational::BigRational as Rational;
pub use tower::{Generator, TowerReal};

/// Applies one of the four field operations to tower values.
pub fn tower_arith(op: KOp, x: &TowerReal, y: &TowerReal) -> Result<TowerReal, ExactError> {
    Ok(match op {
        KOp::Add => x + y,
        KOp::Sub => x - y,
        KOp::Mul => x * y,
        KOp::Div => x.checked_div(y)?,
    })
}
