//! Text front end: parsing equations and specs, rendering results, and the
//! truncated-series oracle.

mod convert;
mod parse;
pub mod render;
pub mod series;

pub use convert::{expr_to_ratfunc, parse_ade, parse_poly, parse_rational_spec, read_equations};
pub use parse::{parse_equation, parse_expr, BinOp, EquationAst, Expr};
pub use render::{render, render_json, render_poly, render_text, Format};
pub use series::{verify_series, Series, SeriesWitness, Valuation};
