//! Exact polynomial arithmetic over F2.
//!
//! Three layers:
//! - [`LaurentPoly`]: F2 coefficients over integer powers of the unit-cell
//!   translation variable `u`, bit-packed with an explicit lowest exponent.
//! - [`BivarPoly`]: polynomials in `y` whose coefficients are Laurent
//!   polynomials (characteristic and minimal polynomials of automata).
//! - [`RatFunc`] / [`YPoly`]: the fraction field F2(u) and polynomials over
//!   it, used internally where division is unavoidable.

mod bivar;
mod dense;
mod laurent;
mod ratfunc;

pub use bivar::BivarPoly;
pub use dense::Poly2;
pub use laurent::{LaurentPoly, ResidueContext};
pub use ratfunc::{RatFunc, YPoly};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("denominator {0} is not a power of u; result is not a Laurent polynomial")]
    NonMonomialDenominator(String),
    #[error("cannot parse polynomial from {0:?}")]
    Parse(String),
    #[error("residue modulus must be at least 1")]
    BadModulus,
}
