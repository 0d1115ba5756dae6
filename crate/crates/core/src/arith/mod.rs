//! Exact rationals, monomials, monomial orders and sparse polynomials.

mod gcd;
mod monomial;
mod order;
mod poly;
mod var;

pub use gcd::{gcd_all, poly_gcd};
pub use monomial::Monomial;
pub use order::{mono_cmp, Inner, MonomialOrder};
pub use poly::{Poly, PolyDisplay};
pub use var::{DepId, Var, VarDisplay, VarTable};

pub use num_bigint::BigInt;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}
