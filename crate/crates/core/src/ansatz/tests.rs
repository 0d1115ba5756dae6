use super::*;
use crate::arith::{rat, VarTable};
use crate::closure::build_system;
use crate::frontend::{
    parse_ade, parse_poly, parse_rational_spec, verify_series, Series, SeriesWitness, Valuation,
};

const WEIERSTRASS: &str = "diff(y(x),x)^2=4*y(x)^3-g2*y(x)-g3";
const RATIO: &str = "z^4*(4*x^3-g2*x+g3+1) + z^3*(-4*x^3+3*g2*x-4*g3-2) - 2*z^2*z'*x \
                   + z^2*(-3*g2*x+6*g3+1) + 2*x*z*z' + z*(g2*x-4*g3) + z'^2*x^2 + g3";

fn same_up_to_sign(a: &Poly, b: &Poly) -> bool {
    a.primitive() == b.primitive() || a.primitive() == (-b).primitive()
}

fn diff_degree(a: &Ade) -> u32 {
    a.poly.terms().map(|(m, _)| m.diff_degree()).max().unwrap_or(0)
}

fn mono(exps: &[u32]) -> DeltaMonomial {
    DeltaMonomial { exps: exps.to_vec() }
}

fn weierstrass_ratio() -> (VarTable, Ade, RatFunc, DepId) {
    let mut t = VarTable::new("x");
    let w = parse_ade(WEIERSTRASS, &mut t).unwrap();
    let (name, r) = parse_rational_spec("z=y/(x+y)", &mut t).unwrap();
    let z = t.dep(&name).unwrap();
    (t, w, r, z)
}

fn search(ades: &[Ade], r: &RatFunc, z: DepId, k: u32, cap: Option<u32>) -> Result<AnsatzResult> {
    ansatz_search(
        ades,
        r,
        z,
        &AnsatzConfig {
            degree: k,
            order_cap: cap,
        },
    )
}

#[test]
fn enumeration_order() {
    let e = enumerate_delta(2, 2);
    let want = [
        [1, 0, 0],
        [2, 0, 0],
        [0, 1, 0],
        [1, 1, 0],
        [0, 2, 0],
        [0, 0, 1],
        [1, 0, 1],
        [0, 1, 1],
        [0, 0, 2],
    ];
    assert_eq!(e, want.iter().map(|w| mono(w)).collect::<Vec<_>>());
    assert_eq!(enumerate_delta(1, 0), vec![mono(&[1])]);
    // C(k + r + 1, k) - 1 monomials
    assert_eq!(enumerate_delta(4, 2).len(), 34);
    assert_eq!(enumerate_delta(3, 3).len(), 34);
    assert_eq!(mono(&[1, 0, 2]).order(), Some(2));
    assert_eq!(mono(&[1, 0, 2]).degree(), 3);
}

#[test]
fn weierstrass_closure_values() {
    let mut t = VarTable::new("x");
    let w = parse_ade(WEIERSTRASS, &mut t).unwrap();
    let (_, r) = parse_rational_spec("z=y", &mut t).unwrap();
    let v = derivative_closure(&r, std::slice::from_ref(&w), 2).unwrap();
    assert_eq!(v.len(), 3);
    let p = |s: &str, t: &mut VarTable| parse_poly(s, t).unwrap();
    assert_eq!(v[0].as_poly().unwrap(), p("y", &mut t));
    assert_eq!(v[1].as_poly().unwrap(), p("y'", &mut t));
    let second = v[2].as_poly().unwrap();
    assert!(same_up_to_sign(&second, &p("12*y^2 - g2", &mut t)));
    assert_eq!(second.num_terms(), 2);
}

#[test]
fn linear_solver() {
    let mut t = VarTable::new("x");
    let x = RatFunc::from_poly(parse_poly("x", &mut t).unwrap());
    let c = |n: i64| RatFunc::from_poly(Poly::int(n));
    // x*a + b = 1, a - b = x
    let sys = LinearSystem {
        rows: vec![vec![x.clone(), c(1)], vec![c(1), c(-1)]],
        rhs: vec![c(1), x.clone()],
    };
    let sol = solve_linear_ratfunc(&sys).unwrap();
    let check = |row: &[RatFunc], b: &RatFunc| {
        let lhs = row[0].mul(&sol[0]).add(&row[1].mul(&sol[1]));
        assert!(lhs.sub(b).cancel().is_zero());
    };
    check(&sys.rows[0], &sys.rhs[0]);
    check(&sys.rows[1], &sys.rhs[1]);

    let bad = LinearSystem {
        rows: vec![vec![x.clone()], vec![x.clone()]],
        rhs: vec![c(1), c(2)],
    };
    assert!(solve_linear_ratfunc(&bad).is_none());

    // underdetermined: the free unknown is zero
    let under = LinearSystem {
        rows: vec![vec![c(1), c(1)]],
        rhs: vec![x.clone()],
    };
    let sol = solve_linear_ratfunc(&under).unwrap();
    assert!(sol[1].is_zero());
}

#[test]
fn linear_input_recovers_itself() {
    let mut t = VarTable::new("x");
    let e = parse_ade("y' - y", &mut t).unwrap();
    let (name, r) = parse_rational_spec("z=y", &mut t).unwrap();
    let z = t.dep(&name).unwrap();
    let res = search(std::slice::from_ref(&e), &r, z, 1, None).unwrap();
    assert!(same_up_to_sign(
        &res.ade.poly,
        &parse_poly("z' - z", &mut t).unwrap()
    ));
    let direct = assemble_and_solve(std::slice::from_ref(&e), &r, 1, 1, &mono(&[0, 1]), z)
        .unwrap()
        .unwrap();
    assert_eq!(direct.poly, res.ade.poly);
}

#[test]
fn inconsistent_lead_is_absent() {
    let mut t = VarTable::new("x");
    let e = parse_ade("y' - y", &mut t).unwrap();
    let (name, r) = parse_rational_spec("z=y", &mut t).unwrap();
    let z = t.dep(&name).unwrap();
    let got = assemble_and_solve(std::slice::from_ref(&e), &r, 2, 1, &mono(&[2, 0]), z).unwrap();
    assert!(got.is_none());
}

#[test]
fn not_found_names_bounds() {
    let (_, w, r, z) = weierstrass_ratio();
    match search(std::slice::from_ref(&w), &r, z, 1, Some(1)) {
        Err(Error::NotFound(msg)) => {
            assert!(msg.contains("degree at most 1") && msg.contains("order at most 1"))
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn rejects_bad_inputs() {
    let (_, w, r, z) = weierstrass_ratio();
    assert!(matches!(search(&[], &r, z, 2, None), Err(Error::Argument(_))));
    assert!(matches!(
        search(std::slice::from_ref(&w), &r, z, 0, None),
        Err(Error::Argument(_))
    ));
    assert!(matches!(
        search(std::slice::from_ref(&w), &r, w.dep, 2, None),
        Err(Error::Argument(_))
    ));
}

#[test]
fn weierstrass_degree_two() {
    let (_, w, r, z) = weierstrass_ratio();
    let res = search(std::slice::from_ref(&w), &r, z, 2, None).unwrap();
    assert_eq!(res.order_cap, 2);
    assert_eq!(res.lead, mono(&[1, 0, 1]));
    assert_eq!(res.ade.order, 2);
    assert_eq!(diff_degree(&res.ade), 2);
}

#[test]
fn weierstrass_degree_three() {
    let (_, w, r, z) = weierstrass_ratio();
    let res = search(std::slice::from_ref(&w), &r, z, 3, None).unwrap();
    assert_eq!(res.ade.order, 2);
    assert_eq!(res.lead, mono(&[0, 0, 1]));
    assert_eq!(diff_degree(&res.ade), 3);
}

#[test]
fn weierstrass_degree_four_is_the_closure_result() {
    let (mut t, w, r, z) = weierstrass_ratio();
    let res = search(std::slice::from_ref(&w), &r, z, 4, None).unwrap();
    assert_eq!(res.lead, mono(&[0, 2, 0]));
    assert!(same_up_to_sign(
        &res.ade.poly,
        &parse_poly(RATIO, &mut t).unwrap()
    ));
}

#[test]
fn agrees_with_triangular_system() {
    let (_, w, r, z) = weierstrass_ratio();
    let res = search(std::slice::from_ref(&w), &r, z, 2, None).unwrap();
    let r = r.cancel();
    let def = &(&Poly::var(Var::diff(z, 0)) * r.den()) - r.num();
    let sys = build_system(std::slice::from_ref(&w), std::slice::from_ref(&def), 2, z).unwrap();
    // reduce the ADE by the system, highest leaders first
    let mut p = res.ade.poly.clone();
    for q in sys.polys.iter().rev() {
        let lead = q.vars().into_iter().filter(|v| v.dep() == Some(z)).max();
        if let Some(v) = lead {
            p = p.prem(q, v).unwrap();
        }
    }
    for q in sys.polys.iter().rev() {
        let lead = q.vars().into_iter().filter(|v| v.dep() == Some(w.dep)).max();
        if let (Some(v), true) = (lead, q.vars().iter().all(|v| v.dep() != Some(z))) {
            p = p.prem(q, v).unwrap();
        }
    }
    assert!(p.is_zero(), "remainder has {} terms", p.num_terms());
}

#[test]
fn ratio_example_passes_series() {
    let mut t = VarTable::new("x");
    let a = parse_ade("x*diff(y1(x),x) - (t*x+1)*y1(x) = 0", &mut t).unwrap();
    let b = parse_ade("diff(y2(x),x) - y2(x) - 1 = 0", &mut t).unwrap();
    let (name, r) = parse_rational_spec("z=y1/y2", &mut t).unwrap();
    let z = t.dep(&name).unwrap();
    let res = search(&[a, b], &r, z, 2, Some(2)).unwrap();
    assert_eq!(res.ade.order, 2);
    // y1 = x*e^(t x) at t = 1/2, y2 = e^x - 1
    let len = 14;
    let y1 = Series::x(len).mul(&Series::exp(&rat(1, 2), len));
    let y2 = Series::exp(&rat(1, 1), len).sub(&Series::constant(rat(1, 1), len));
    let w = SeriesWitness {
        dep: z,
        series: y1.div(&y2).unwrap(),
        params: [("t".to_string(), rat(1, 2))].into_iter().collect(),
    };
    let n = w.series.len();
    assert_eq!(verify_series(&res.ade, &w, n, &t).unwrap(), Valuation::Infinite);
}
