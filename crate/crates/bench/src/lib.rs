//! Shared inputs for the benchmarks in `benches/`.

use dalg::frontend::{parse_ade, parse_rational_spec};
use dalg::{Ade, RatFunc, VarTable};

pub const WEIERSTRASS: &str = "diff(y(x),x)^2=4*y(x)^3-g2*y(x)-g3";

/// Parsed equations, an output name and its defining expression.
pub struct Instance {
    pub table: VarTable,
    pub ades: Vec<Ade>,
    pub z: dalg::arith::DepId,
    pub r: RatFunc,
}

pub fn instance(equations: &[&str], spec: &str) -> Instance {
    let mut table = VarTable::new("x");
    let ades = equations
        .iter()
        .map(|e| parse_ade(e, &mut table).expect("fixture parses"))
        .collect();
    let (name, r) = parse_rational_spec(spec, &mut table).expect("fixture spec parses");
    let z = table.dep(&name).expect("fresh output name");
    Instance { table, ades, z, r }
}

/// Weierstrass with `z = y/(x+y)`.
pub fn weierstrass_ratio() -> Instance {
    instance(&[WEIERSTRASS], "z=y/(x+y)")
}

/// The two linear equations with `z = y1/y2`.
pub fn linear_ratio() -> Instance {
    instance(
        &[
            "x*diff(y1(x),x) - (t*x+1)*y1(x) = 0",
            "diff(y2(x),x) - y2(x) - 1 = 0",
        ],
        "z=y1/y2",
    )
}
