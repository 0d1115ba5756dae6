use super::*;
use crate::arith::rat;
use crate::arith::VarTable;
use crate::frontend::{
    parse_ade, parse_poly, parse_rational_spec, verify_series, Series, SeriesWitness, Valuation,
};

const WEIERSTRASS: &str = "diff(y(x),x)^2=4*y(x)^3-g2*y(x)-g3";

fn cfg() -> ClosureConfig {
    ClosureConfig::default()
}

/// Equal up to a nonzero constant factor.
fn same_up_to_scale(a: &Poly, b: &Poly) -> bool {
    a.primitive() == b.primitive() || a.primitive() == (-b).primitive()
}

fn expect(result: &Ade, text: &str, t: &mut VarTable) {
    let want = parse_poly(text, t).unwrap();
    assert!(
        same_up_to_scale(&result.poly, &want),
        "got {}\nwant {}",
        result.poly.display(t),
        want.display(t)
    );
}

fn series_ok(ade: &Ade, s: Series, params: &[(&str, i64)], t: &VarTable) {
    let len = s.len();
    let w = SeriesWitness {
        dep: ade.dep,
        series: s,
        params: params.iter().map(|&(n, v)| (n.to_string(), rat(v, 1))).collect(),
    };
    assert_eq!(verify_series(ade, &w, len, t).unwrap(), Valuation::Infinite);
}

#[test]
fn system_sizes() {
    let mut t = VarTable::new("x");
    let w = parse_ade(WEIERSTRASS, &mut t).unwrap();
    let (_, r) = parse_rational_spec("z=y/(x+y)", &mut t).unwrap();
    let z = t.dep("z").unwrap();
    let r = r.cancel();
    let def = &(&Poly::var(Var::diff(z, 0)) * r.den()) - r.num();
    let sys = build_system(std::slice::from_ref(&w), std::slice::from_ref(&def), 1, z).unwrap();
    assert_eq!(sys.polys.len(), 4);
    assert!(sys.keep.contains(&Var::diff(z, 1)));
    assert!(sys.eliminate.contains(&Var::diff(w.dep, 2)));
    let sys0 = build_system(&[], std::slice::from_ref(&def), 0, z).unwrap();
    assert_eq!(sys0.polys, vec![def.clone()]);

    let mut t = VarTable::new("x");
    let a = parse_ade("x*diff(y1(x),x) - (t*x+1)*y1(x) = 0", &mut t).unwrap();
    let b = parse_ade("diff(y2(x),x) - y2(x) - 1 = 0", &mut t).unwrap();
    let z = t.dep("z").unwrap();
    let def = parse_poly("z(x)*y2(x) - y1(x)", &mut t).unwrap();
    let sys = build_system(&[a, b], &[def], 2, z).unwrap();
    assert_eq!(sys.polys.len(), 9);
}

#[test]
fn select_output_rules() {
    let mut t = VarTable::new("x");
    let z = t.dep("z").unwrap();
    let p = |s: &str, t: &mut VarTable| parse_poly(s, t).unwrap();
    let o2d3 = p("diff(z(x),x,x)*z(x)^2 + 1", &mut t);
    let o1d5 = p("diff(z(x),x)^5 + z(x)", &mut t);
    let o1d2 = p("diff(z(x),x)^2 + z(x)", &mut t);
    assert_eq!(
        select_output(&[o2d3.clone(), o1d5.clone()], z).unwrap().poly,
        o1d5
    );
    assert_eq!(
        select_output(&[o1d5.clone(), o1d2.clone()], z).unwrap().poly,
        o1d2
    );
    let scaled = p("-6*x*diff(z(x),x) + 4*x^2*z(x)", &mut t);
    let a = select_output(&[scaled], z).unwrap();
    expect(&a, "3*diff(z(x),x) - 2*x*z(x)", &mut t);
    assert!(matches!(select_output(&[], z), Err(Error::EliminationFailed(_))));
    let forward = select_output(&[o2d3.clone(), o1d5.clone(), o1d2.clone()], z).unwrap();
    let backward = select_output(&[o1d2, o1d5, o2d3], z).unwrap();
    assert_eq!(forward, backward);
}

#[test]
fn unary_weierstrass_ratio() {
    let mut t = VarTable::new("x");
    let w = parse_ade(WEIERSTRASS, &mut t).unwrap();
    let (name, r) = parse_rational_spec("z=y/(x+y)", &mut t).unwrap();
    let z = t.dep(&name).unwrap();
    let res = unary_dalg(&w, &r, z, &cfg()).unwrap();
    assert_eq!(res.ade.order, 1);
    expect(
        &res.ade,
        "z^4*(4*x^3-g2*x+g3+1) + z^3*(-4*x^3+3*g2*x-4*g3-2) - 2*z^2*z'*x + z^2*(-3*g2*x+6*g3+1) \
         + 2*x*z*z' + z*(g2*x-4*g3) + z'^2*x^2 + g3",
        &mut t,
    );
}

#[test]
fn unary_identity_and_reciprocal() {
    let mut t = VarTable::new("x");
    let w = parse_ade(WEIERSTRASS, &mut t).unwrap();
    let (name, r) = parse_rational_spec("z=y", &mut t).unwrap();
    let z = t.dep(&name).unwrap();
    let res = unary_dalg(&w, &r, z, &cfg()).unwrap();
    let back = res.ade.poly.map_vars(&|v| match v {
        Var::Diff { dep, order } if dep == z => Var::diff(w.dep, order),
        v => v,
    });
    assert_eq!(back, w.poly);

    let mut t = VarTable::new("x");
    let e = parse_ade("y' = y", &mut t).unwrap();
    let (name, r) = parse_rational_spec("z=1/y", &mut t).unwrap();
    let z = t.dep(&name).unwrap();
    let res = unary_dalg(&e, &r, z, &cfg()).unwrap();
    expect(&res.ade, "z' + z", &mut t);
    series_ok(&res.ade, Series::exp(&rat(-1, 1), 10), &[], &t);
}

#[test]
fn unary_free_of_function() {
    let mut t = VarTable::new("x");
    let e = parse_ade("y' = y", &mut t).unwrap();
    let (name, r) = parse_rational_spec("z=x^2/(x+1)", &mut t).unwrap();
    let z = t.dep(&name).unwrap();
    let res = unary_dalg(&e, &r, z, &cfg()).unwrap();
    assert_eq!(res.ade.order, 0);
    expect(&res.ade, "z*(x+1) - x^2", &mut t);
}

#[test]
fn arithmetic_ratio_example() {
    let mut t = VarTable::new("x");
    let a = parse_ade("x*diff(y1(x),x) - (t*x+1)*y1(x) = 0", &mut t).unwrap();
    let b = parse_ade("diff(y2(x),x) - y2(x) - 1 = 0", &mut t).unwrap();
    let (name, r) = parse_rational_spec("z=y1/y2", &mut t).unwrap();
    let z = t.dep(&name).unwrap();
    let res = arithmetic_dalg(&[a, b], &r, z, &cfg()).unwrap();
    assert_eq!(res.ade.order, 2);
    expect(
        &res.ade,
        "(-t^2*x+t*x-2*t+1)*z^2 + (2*t*x-x+2)*z'*z - 2*x*z'^2 + x*z''*z",
        &mut t,
    );
}

#[test]
fn arithmetic_product_and_sum() {
    let mut t = VarTable::new("x");
    let a = parse_ade("y1' = y1", &mut t).unwrap();
    let b = parse_ade("y2' = y2", &mut t).unwrap();
    let (name, r) = parse_rational_spec("z=y1*y2", &mut t).unwrap();
    let z = t.dep(&name).unwrap();
    let res = arithmetic_dalg(&[a.clone(), b], &r, z, &cfg()).unwrap();
    expect(&res.ade, "z' - 2*z", &mut t);
    series_ok(&res.ade, Series::exp(&rat(2, 1), 10), &[], &t);

    let c = parse_ade("y3' = -y3", &mut t).unwrap();
    let (name, r) = parse_rational_spec("w=y1+y3", &mut t).unwrap();
    let w = t.dep(&name).unwrap();
    let res = arithmetic_dalg(&[a, c], &r, w, &cfg()).unwrap();
    expect(&res.ade, "w'' - w", &mut t);
    let cosh2 = Series::exp(&rat(1, 1), 10).add(&Series::exp(&rat(-1, 1), 10));
    series_ok(&res.ade, cosh2, &[], &t);
}

#[test]
fn arithmetic_needs_two() {
    let mut t = VarTable::new("x");
    let a = parse_ade("y1' = y1", &mut t).unwrap();
    let (_, r) = parse_rational_spec("z=y1", &mut t).unwrap();
    assert!(matches!(
        arithmetic_dalg(&[a], &r, 5, &cfg()),
        Err(Error::Argument(_))
    ));
}

#[test]
fn compose_examples() {
    let mut t = VarTable::new("x");
    let w = parse_ade(WEIERSTRASS, &mut t).unwrap();
    let g = parse_ade("diff(y2(x),x) = 2", &mut t).unwrap();
    let z = t.dep("z").unwrap();
    let res = compose_dalg(&w, &g, z, &cfg()).unwrap();
    expect(&res.ade, "z'' - 24*z^2 + 2*g2", &mut t);

    let mut t = VarTable::new("x");
    let e = parse_ade("y' = y", &mut t).unwrap();
    let g = parse_ade("u' = 1", &mut t).unwrap();
    let z = t.dep("z").unwrap();
    let res = compose_dalg(&e, &g, z, &cfg()).unwrap();
    expect(&res.ade, "z' - z", &mut t);
    series_ok(&res.ade, Series::exp(&rat(1, 1), 10), &[], &t);
}

#[test]
fn derivative_examples() {
    let mut t = VarTable::new("x");
    let w = parse_ade(WEIERSTRASS, &mut t).unwrap();
    let z = t.dep("z").unwrap();
    let res = diff_dalg(&w, 1, z, &cfg()).unwrap();
    expect(
        &res.ade,
        "-1728*z^4 + 64*g2^3 - 192*g2*z'^2 - 3456*g3*z^2 + 128*z'^3 - 1728*g3^2",
        &mut t,
    );

    let mut t = VarTable::new("x");
    let e = parse_ade("y' = y", &mut t).unwrap();
    let z = t.dep("z").unwrap();
    let res = diff_dalg(&e, 1, z, &cfg()).unwrap();
    expect(&res.ade, "z' - z", &mut t);
    assert!(diff_dalg(&e, 0, z, &cfg()).is_err());
}

#[test]
fn second_derivative_of_weierstrass() {
    let mut t = VarTable::new("x");
    let w = parse_ade(WEIERSTRASS, &mut t).unwrap();
    let z = t.dep("z").unwrap();
    let res = diff_dalg(&w, 2, z, &cfg()).unwrap();
    assert_eq!((res.ade.order, res.ade.degree()), (1, 5));
    expect(
        &res.ade,
        "16*g2^5 + 64*g2^4*z + 16*g2^3*z^2 - 160*g2^2*z^3 - 64*g2*z^4 + 128*z^5 - 432*g2^2*g3^2 \
         - 1728*g2*g3^2*z - 72*g2*g3*z'^2 - 1728*g3^2*z^2 - 144*g3*z*z'^2 - 3*z'^4",
        &mut t,
    );
}

#[test]
fn inverse_examples() {
    let mut t = VarTable::new("x");
    let w = parse_ade(WEIERSTRASS, &mut t).unwrap();
    let z = t.dep("z").unwrap();
    let res = inv_dalg(&w, z).unwrap();
    expect(&res.ade, "1 + (-4*x^3 + g2*x + g3)*z'^2", &mut t);

    let mut t = VarTable::new("x");
    let e = parse_ade("y' = y", &mut t).unwrap();
    let z = t.dep("z").unwrap();
    expect(&inv_dalg(&e, z).unwrap().ade, "1 - x*z'", &mut t);

    let mut t = VarTable::new("x");
    let e = parse_ade("y' = 1", &mut t).unwrap();
    let z = t.dep("z").unwrap();
    expect(&inv_dalg(&e, z).unwrap().ade, "z' - 1", &mut t);

    let mut t = VarTable::new("x");
    let e = parse_ade("y'' = y", &mut t).unwrap();
    let z = t.dep("z").unwrap();
    let res = inv_dalg(&e, z).unwrap();
    assert_eq!(res.ade.order, 2);
    // y = e^x again: log has z'' = -1/x^2 and z' = 1/x
    expect(&res.ade, "z'' + x*z'^3", &mut t);
}

#[test]
fn ddfinite_examples() {
    let mut t = VarTable::new("x");
    let main = parse_poly("diff(y(x),x,x) + (a - 2*q*C(x))*y(x)", &mut t).unwrap();
    let c = parse_ade("diff(C(x),x,x) + 4*C(x)", &mut t).unwrap();
    let y = t.lookup_dep("y").unwrap();
    let res = ddfinite_to_dalg(&main, y, &[c], &cfg()).unwrap();
    expect(
        &res.ade,
        "4*a*y^3 + 4*y^2*y'' + y^2*y'''' - 2*y'''*y*y' - y''^2*y + 2*y'^2*y''",
        &mut t,
    );

    let mut t = VarTable::new("x");
    let main = parse_poly("y' - C(x)*y", &mut t).unwrap();
    let c = parse_ade("C' = 0", &mut t).unwrap();
    let y = t.lookup_dep("y").unwrap();
    let res = ddfinite_to_dalg(&main, y, &[c], &cfg()).unwrap();
    expect(&res.ade, "y''*y - y'^2", &mut t);

    let mut t = VarTable::new("x");
    let main = parse_poly("y' - C(x)", &mut t).unwrap();
    let c = parse_ade("C' = C", &mut t).unwrap();
    let y = t.lookup_dep("y").unwrap();
    let res = ddfinite_to_dalg(&main, y, &[c], &cfg()).unwrap();
    expect(&res.ade, "y'' - y'", &mut t);
}

#[test]
fn ddfinite_rejects_nonlinear_main() {
    let mut t = VarTable::new("x");
    let main = parse_poly("y'^2 - C(x)", &mut t).unwrap();
    let c = parse_ade("C' = C", &mut t).unwrap();
    let y = t.lookup_dep("y").unwrap();
    assert!(matches!(
        ddfinite_to_dalg(&main, y, &[c], &cfg()),
        Err(Error::Argument(_))
    ));
}

#[test]
fn resource_cap_aborts() {
    let mut t = VarTable::new("x");
    let w = parse_ade(WEIERSTRASS, &mut t).unwrap();
    let z = t.dep("z").unwrap();
    let tight = ClosureConfig {
        gb: GbConfig {
            max_degree: 3,
            ..GbConfig::default()
        },
        retries: 0,
    };
    assert!(matches!(diff_dalg(&w, 1, z, &tight), Err(Error::Resource(_))));
}
