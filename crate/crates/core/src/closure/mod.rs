//! Closure operations by elimination.
//!
//! Each operation relates a new indeterminate `z` to the given functions by
//! defining polynomials, prolongs them together with the input ADEs, and
//! eliminates every variable except the derivatives of `z`, `x` and the
//! parameters. The output is the lowest order, then lowest degree, generator
//! of the elimination ideal.
//!
//! An input ADE `P` of order `n` enters the system as `P` together with its
//! quasi-linear companion `S*y^(n+1) - T` (the separant relation with common
//! factors cancelled) and that companion's derivatives. Derivatives of `P`
//! itself would add the separant as a spurious factor of the ideal.

use std::collections::BTreeSet;

use crate::arith::{gcd_all, DepId, Inner, MonomialOrder, Poly, Var};
use crate::diffpoly::{
    implicit_higher_derivative, order_in, rational_substitute, total_derivative, Ade, RatFunc,
};
use crate::error::{Error, Result};
use crate::groebner::{buchberger_with, GbConfig};

/// Tuning knobs shared by every closure operation.
#[derive(Clone, Debug)]
pub struct ClosureConfig {
    pub gb: GbConfig,
    /// Extra prolongations tried when the elimination ideal has no
    /// generator in `z`.
    pub retries: u32,
}

impl Default for ClosureConfig {
    fn default() -> Self {
        ClosureConfig {
            gb: GbConfig::default(),
            retries: 3,
        }
    }
}

/// A prolonged system ready for elimination.
#[derive(Clone, Debug)]
pub struct TriangularSystem {
    pub polys: Vec<Poly>,
    /// Variables to eliminate, canonical order descending.
    pub eliminate: Vec<Var>,
    /// Derivatives of the output indeterminate, `x` and parameters.
    pub keep: Vec<Var>,
    pub prolongations: u32,
}

#[derive(Clone, Debug)]
pub struct ClosureResult {
    pub ade: Ade,
    /// Generators of the elimination ideal that involve `z`.
    pub generators: Vec<Poly>,
    pub prolongations: u32,
}

fn is_dep(v: Var, z: DepId) -> bool {
    v.dep() == Some(z)
}

/// `P`, then the quasi-linear companion and its first `len - 1` derivatives.
fn chain(ade: &Ade, len: u32) -> Result<Vec<Poly>> {
    let mut out = vec![ade.poly.clone()];
    if len > 0 {
        let mut q = ade.quasi_linear()?;
        for _ in 0..len {
            let next = total_derivative(&q);
            out.push(q);
            q = next;
        }
    }
    Ok(out)
}

fn prolong(p: &Poly, times: u32) -> Vec<Poly> {
    let mut out = Vec::with_capacity(times as usize + 1);
    let mut q = p.clone();
    for _ in 0..times {
        let next = total_derivative(&q);
        out.push(q);
        q = next;
    }
    out.push(q);
    out
}

fn system_from(polys: Vec<Poly>, z: DepId, s: u32) -> TriangularSystem {
    let vars: BTreeSet<Var> = polys.iter().flat_map(|p| p.vars()).collect();
    let (keep, eliminate): (Vec<Var>, Vec<Var>) = vars
        .into_iter()
        .rev()
        .partition(|&v| !v.is_diff() || is_dep(v, z));
    TriangularSystem {
        polys,
        eliminate,
        keep,
        prolongations: s,
    }
}

/// Defining polynomials and their first `s` derivatives, followed by each
/// ADE with `s` members of its quasi-linear chain.
pub fn build_system(ades: &[Ade], defining: &[Poly], s: u32, z: DepId) -> Result<TriangularSystem> {
    let mut polys = Vec::new();
    for d in defining {
        polys.extend(prolong(d, s));
    }
    for a in ades {
        polys.extend(chain(a, s)?);
    }
    Ok(system_from(polys, z, s))
}

/// Elimination order: the eliminated block under grevlex, then each
/// derivative of `z` as its own block from the highest order down, then
/// `x` and parameters under grevlex. The lowest-order relations therefore
/// appear among the generators.
fn closure_order(sys: &TriangularSystem) -> MonomialOrder {
    let mut blocks = vec![(sys.eliminate.clone(), Inner::GrevLex)];
    let mut rest = Vec::new();
    for &v in &sys.keep {
        if v.is_diff() {
            blocks.push((vec![v], Inner::Lex));
        } else {
            rest.push(v);
        }
    }
    blocks.push((rest, Inner::GrevLex));
    MonomialOrder::Product(blocks)
}

/// Keep-only generators of the elimination ideal that involve `z`.
pub fn eliminate_system(sys: &TriangularSystem, z: DepId, cfg: &GbConfig) -> Result<Vec<Poly>> {
    let basis = buchberger_with(&sys.polys, &closure_order(sys), cfg)?;
    if basis.is_unit() {
        return Err(Error::EliminationFailed(
            "the prolonged system is inconsistent".into(),
        ));
    }
    let elim: BTreeSet<Var> = sys.eliminate.iter().copied().collect();
    Ok(basis
        .generators
        .into_iter()
        .filter(|g| {
            let vs = g.vars();
            vs.iter().all(|v| !elim.contains(v)) && vs.iter().any(|&v| is_dep(v, z))
        })
        .collect())
}

/// Divides out the content over `Q[x, params]` and fixes the sign.
pub fn primitive_in(p: &Poly, z: DepId) -> Poly {
    let coeffs = p.coefficients_by(|v| is_dep(v, z));
    let g = gcd_all(coeffs.values());
    let q = if g.is_constant() {
        p.clone()
    } else {
        p.divide_exact(&g).expect("content divides")
    };
    q.primitive()
}

/// The generator of least order, then least total degree, then fewest
/// terms, ties broken by the canonical text.
pub fn select_output(generators: &[Poly], z: DepId) -> Result<Ade> {
    let key = |p: &Poly| {
        (
            order_in(p, z).unwrap_or(u32::MAX),
            p.total_degree(),
            p.num_terms(),
            format!("{p:?}"),
        )
    };
    let best = generators
        .iter()
        .filter(|p| order_in(p, z).is_some())
        .min_by_key(|p| key(p))
        .ok_or_else(|| Error::EliminationFailed("no generator involves the output".into()))?;
    Ade::from_poly(primitive_in(best, z), z)
}

fn check_bound(res: ClosureResult, bound: u32, what: &str) -> Result<ClosureResult> {
    if res.ade.order > bound {
        return Err(Error::EliminationFailed(format!(
            "{what}: output order {} exceeds the bound {bound}",
            res.ade.order
        )));
    }
    Ok(res)
}

/// Runs `make(extra)` for `extra = 0..=retries` until the elimination ideal
/// has a generator in `z`.
fn with_retries<F>(z: DepId, cfg: &ClosureConfig, mut make: F) -> Result<ClosureResult>
where
    F: FnMut(u32) -> Result<TriangularSystem>,
{
    for extra in 0..=cfg.retries {
        let sys = make(extra)?;
        let gens = eliminate_system(&sys, z, &cfg.gb)?;
        if gens.is_empty() {
            continue;
        }
        let ade = select_output(&gens, z)?;
        return Ok(ClosureResult {
            ade,
            generators: gens,
            prolongations: sys.prolongations,
        });
    }
    Err(Error::EliminationFailed(format!(
        "no relation for the output after {} extra prolongations",
        cfg.retries
    )))
}

fn check_output_dep(z: DepId, ades: &[&Ade]) -> Result<()> {
    if ades.iter().any(|a| a.dep == z) {
        return Err(Error::arg("output indeterminate clashes with an input"));
    }
    Ok(())
}

fn rational_closure(ades: &[&Ade], r: &RatFunc, z: DepId, cfg: &ClosureConfig) -> Result<ClosureResult> {
    check_output_dep(z, ades)?;
    let deps: BTreeSet<DepId> = ades.iter().map(|a| a.dep).collect();
    if deps.len() != ades.len() {
        return Err(Error::arg("dependent functions must be distinct"));
    }
    if let Some(v) = r
        .vars()
        .into_iter()
        .find(|v| v.dep().is_some_and(|d| !deps.contains(&d)))
    {
        return Err(Error::arg(format!(
            "expression uses {v:?}, which has no equation"
        )));
    }
    let r = r.cancel();
    let zp = Poly::var(Var::diff(z, 0));
    let defining = &(&zp * r.den()) - r.num();
    if !r.vars().iter().any(|v| v.is_diff()) {
        // z is an explicit function of x
        let ade = Ade::from_poly(primitive_in(&defining, z), z)?;
        return Ok(ClosureResult {
            generators: vec![ade.poly.clone()],
            ade,
            prolongations: 0,
        });
    }
    let s: u32 = ades.iter().map(|a| a.order).sum();
    let owned: Vec<Ade> = ades.iter().map(|&a| a.clone()).collect();
    let res = with_retries(z, cfg, |extra| {
        build_system(&owned, std::slice::from_ref(&defining), s + extra, z)
    })?;
    check_bound(res, s, "rational closure")
}

/// ADE for `z = R(x, y)` where `y` solves `ade`.
pub fn unary_dalg(ade: &Ade, r: &RatFunc, z: DepId, cfg: &ClosureConfig) -> Result<ClosureResult> {
    rational_closure(&[ade], r, z, cfg)
}

/// ADE for `z = R(x, y_1, ..., y_N)` where each `y_j` solves its ADE.
pub fn arithmetic_dalg(ades: &[Ade], r: &RatFunc, z: DepId, cfg: &ClosureConfig) -> Result<ClosureResult> {
    if ades.len() < 2 {
        return Err(Error::arg("arithmetic closure needs at least two equations"));
    }
    let refs: Vec<&Ade> = ades.iter().collect();
    rational_closure(&refs, r, z, cfg)
}

/// ADE for `z = f(g(x))` with `f` solving `outer` and `g` solving `inner`.
///
/// Auxiliaries `v_i` stand for `f^(i)(g(x))`; they satisfy the chain rule
/// `v_i' = v_(i+1) g'` and the outer equation's rewrite of `f^(n+1)`. The
/// outer equation itself is added only when it is linear in its leader.
pub fn compose_dalg(outer: &Ade, inner: &Ade, z: DepId, cfg: &ClosureConfig) -> Result<ClosureResult> {
    check_output_dep(z, &[inner])?;
    let (n, k) = (outer.order, inner.order);
    let u = Var::diff(inner.dep, 0);
    let du = Poly::var(Var::diff(inner.dep, 1));
    let base = outer.dep.max(inner.dep).max(z) + 1;
    let v = |i: u32| Var::diff(base + i, 0);
    let dv = |i: u32| Poly::var(Var::diff(base + i, 1));
    let to_inner = |p: &Poly| {
        p.substitute(&|w| match w {
            Var::Indep => Some(Poly::var(u)),
            Var::Diff { dep, order } if dep == outer.dep => Some(Poly::var(v(order))),
            _ => None,
        })
    };

    let mut defining = Vec::new();
    for i in 0..n {
        defining.push(&dv(i) - &(&Poly::var(v(i + 1)) * &du));
    }
    let top = implicit_higher_derivative(outer, 1)?;
    let (num, den) = (to_inner(top.num()), to_inner(top.den()));
    defining.push(&(&den * &dv(n)) - &(&num * &du));
    if outer.leader_degree == 1 {
        defining.push(to_inner(&outer.poly));
    }
    defining.push(&Poly::var(Var::diff(z, 0)) - &Poly::var(v(0)));

    let s = n + k;
    let res = with_retries(z, cfg, |extra| {
        let s = s + extra;
        let mut polys = Vec::new();
        for d in &defining {
            polys.extend(prolong(d, s));
        }
        polys.extend(chain(inner, s)?);
        Ok(system_from(polys, z, s))
    })?;
    let bound = if outer.leader_degree == 1 { s } else { s + 1 };
    check_bound(res, bound, "composition")
}

/// ADE for `z = y^(j)` where `y` solves `ade`.
pub fn diff_dalg(ade: &Ade, j: u32, z: DepId, cfg: &ClosureConfig) -> Result<ClosureResult> {
    if j == 0 {
        return Err(Error::arg("derivative order must be positive"));
    }
    check_output_dep(z, &[ade])?;
    let n = ade.order;
    let defining = &Poly::var(Var::diff(z, 0)) - &Poly::var(Var::diff(ade.dep, j));
    let res = with_retries(z, cfg, |extra| {
        let d = n + extra;
        let mut polys = prolong(&defining, d);
        polys.extend(chain(ade, j + extra)?);
        Ok(system_from(polys, z, d))
    })?;
    check_bound(res, n, "derivative")
}

/// ADE for the functional inverse `z` of a solution `y`, that is `y(z(x)) = x`.
///
/// Built explicitly: `y^(i)` evaluated at `z` becomes `D_i` with `D_1 = 1/z'`
/// and `D_(i+1) = D_i' / z'`.
pub fn inv_dalg(ade: &Ade, z: DepId) -> Result<ClosureResult> {
    check_output_dep(z, &[ade])?;
    let n = ade.order;
    if n == 0 || !(1..=n).any(|i| ade.poly.contains_var(Var::diff(ade.dep, i))) {
        return Err(Error::arg("inverse needs an equation involving a derivative"));
    }
    let zp = RatFunc::from_poly(Poly::var(Var::diff(z, 1)));
    let mut bind = std::collections::BTreeMap::new();
    bind.insert(Var::Indep, RatFunc::from_poly(Poly::var(Var::diff(z, 0))));
    bind.insert(Var::diff(ade.dep, 0), RatFunc::from_poly(Poly::var(Var::Indep)));
    let mut d = RatFunc::from_poly(Poly::one()).div(&zp)?;
    for i in 1..=n {
        bind.insert(Var::diff(ade.dep, i), d.clone());
        d = d.derivative().div(&zp)?.cancel();
    }
    let r = rational_substitute(&RatFunc::from_poly(ade.poly.clone()), &bind)?;
    let out = Ade::from_poly(primitive_in(r.num(), z), z)?;
    let res = ClosureResult {
        generators: vec![out.poly.clone()],
        ade: out,
        prolongations: 0,
    };
    if res.ade.order != n {
        return Err(Error::EliminationFailed(format!(
            "inverse: output order {} differs from {n}",
            res.ade.order
        )));
    }
    Ok(res)
}

/// ADE in `y` for a linear equation `main` whose coefficients involve
/// functions `C_l` given by their own ADEs. The `C_l` are eliminated.
pub fn ddfinite_to_dalg(main: &Poly, y: DepId, coeffs: &[Ade], cfg: &ClosureConfig) -> Result<ClosureResult> {
    let m = order_in(main, y).ok_or_else(|| Error::arg("main equation is free of its function"))?;
    for (mono, _) in main.terms() {
        let dy: u32 = mono
            .factors()
            .iter()
            .filter(|(v, _)| is_dep(*v, y))
            .map(|&(_, e)| e)
            .sum();
        if dy > 1 {
            return Err(Error::arg("main equation must be linear in its function"));
        }
    }
    let cdeps: BTreeSet<DepId> = coeffs.iter().map(|a| a.dep).collect();
    if cdeps.len() != coeffs.len() || cdeps.contains(&y) {
        return Err(Error::arg(
            "coefficient functions must be distinct from each other and the output",
        ));
    }
    if let Some(v) = main
        .vars()
        .into_iter()
        .find(|v| v.dep().is_some_and(|d| d != y && !cdeps.contains(&d)))
    {
        return Err(Error::arg(format!(
            "main equation uses {v:?}, which has no equation"
        )));
    }
    let s: u32 = coeffs.iter().map(|a| a.order).sum();
    let res = with_retries(y, cfg, |extra| {
        let s = s + extra;
        let mut polys = prolong(main, s);
        for a in coeffs {
            polys.extend(chain(a, s)?);
        }
        Ok(system_from(polys, y, s))
    })?;
    check_bound(res, m + s, "linear equation with D-finite coefficients")
}

#[cfg(test)]
mod tests;
