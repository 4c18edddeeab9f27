//! Exact arithmetic over the integers: Laurent polynomials in `q`, rational
//! functions in `q`, and polynomials in `q` and `u`.
//!
//! Nothing here ever rounds. Rational functions are normalized eagerly so
//! equality and zero tests are syntactic.

mod dense;
mod laurent;
mod polyqu;
mod ratfunc;

pub use laurent::{q_pochhammer, LaurentPolyQ};
pub use polyqu::{PolyQU, UPolyQ};
pub use ratfunc::RationalFunctionQ;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactAlgError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not a Laurent polynomial: {0}")]
    NonPolynomial(String),
}

/// Binary operation selector for [`rf_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rf_arith(
    a: &RationalFunctionQ,
    b: &RationalFunctionQ,
    op: ArithOp,
) -> Result<RationalFunctionQ, ExactAlgError> {
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => a.checked_div(b),
    }
}

pub fn adams_q(f: &RationalFunctionQ, d: u32) -> RationalFunctionQ {
    assert!(d >= 1, "Adams operation needs d >= 1");
    f.adams(d)
}

pub fn polynomial_check(f: &RationalFunctionQ) -> Result<LaurentPolyQ, ExactAlgError> {
    f.polynomial_check()
}
