//! Algebraic differential equations (ADEs) for D-algebraic functions.
//!
//! Given ADEs satisfied by some functions, the closure operations compute an
//! ADE satisfied by a rational expression in them, by their composition, by
//! a derivative, or by a functional inverse. A linear ODE whose coefficients
//! are D-finite can be turned into an ADE as well. The elimination route
//! prolongs a triangular system and eliminates with Groebner bases. The
//! ansatz route searches for ADEs of bounded degree by linear algebra.
//!
//! ```
//! use dalg::closure::{unary_dalg, ClosureConfig};
//! use dalg::frontend::{parse_ade, parse_rational_spec, render_text};
//! use dalg::VarTable;
//!
//! let mut t = VarTable::new("x");
//! let y = parse_ade("diff(y(x),x) = y(x)", &mut t)?;
//! let (name, r) = parse_rational_spec("z=1/y", &mut t)?;
//! let z = t.dep(&name)?;
//! let res = unary_dalg(&y, &r, z, &ClosureConfig::default())?;
//! assert_eq!(render_text(&res.ade, &t), "diff(z(x),x) + z(x) = 0");
//! # Ok::<(), dalg::Error>(())
//! ```

pub mod ansatz;
pub mod arith;
pub mod closure;
pub mod diffpoly;
pub mod error;
pub mod frontend;
pub mod groebner;

pub use arith::{Monomial, MonomialOrder, Poly, Rat, Var, VarTable};
pub use diffpoly::{Ade, RatFunc};
pub use error::{Error, Result};
