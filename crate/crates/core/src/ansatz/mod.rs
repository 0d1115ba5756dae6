//! Degree-bounded ADE search by linear algebra.
//!
//! The candidate ADE is `M_d + C_(d-1) M_(d-1) + ... + C_1 M_1 + C_0` where
//! `M_1, M_2, ...` enumerate monomials in `z, z', ..., z^(r)` of degree at
//! most `k`. Substituting the rewritten derivatives of `z` and reducing by
//! the input ADEs leaves a polynomial in the `y`-variables whose
//! coefficients must vanish. Unknowns live in `Q(x, params)`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::arith::{gcd_all, DepId, Monomial, Poly, Rat, Var};
use crate::closure::primitive_in;
use crate::diffpoly::{Ade, ImplicitDerivatives, RatFunc};
use crate::error::{Error, Result};

/// A monomial `prod (z^(i))^exps[i]` in the derivatives of the output.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeltaMonomial {
    pub exps: Vec<u32>,
}

impl DeltaMonomial {
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Highest derivative order present.
    pub fn order(&self) -> Option<u32> {
        self.exps.iter().rposition(|&e| e > 0).map(|i| i as u32)
    }

    pub fn to_monomial(&self, z: DepId) -> Monomial {
        Monomial::from_pairs(
            self.exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (Var::diff(z, i as u32), e)),
        )
    }

    /// Ranking key: exponent of the highest derivative first.
    fn key(&self) -> Vec<u32> {
        self.exps.iter().rev().copied().collect()
    }
}

/// Every non-constant monomial of degree at most `k` in `z..z^(r)`,
/// ascending in the orderly ranking that compares the exponent of `z^(r)`
/// first, then `z^(r-1)`, down to `z`. Monomials of lower order therefore
/// precede every monomial involving a higher derivative.
pub fn enumerate_delta(k: u32, r: u32) -> Vec<DeltaMonomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<DeltaMonomial>) {
        if i == cur.len() {
            if cur.iter().any(|&e| e > 0) {
                out.push(DeltaMonomial { exps: cur.clone() });
            }
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, k, &mut vec![0; r as usize + 1], &mut out);
    out.sort_by_key(DeltaMonomial::key);
    out
}

/// `z, z', ..., z^(r)` for `z = R`. Derivatives of each `y_j` above its
/// order are rewritten away.
pub fn derivative_closure(r: &RatFunc, ades: &[Ade], order: u32) -> Result<Vec<RatFunc>> {
    let mut rewriters = ades
        .iter()
        .map(ImplicitDerivatives::new)
        .collect::<Result<Vec<_>>>()?;
    let mut cur = r.cancel();
    for w in &mut rewriters {
        cur = w.substitute_top(&cur)?;
    }
    let mut out = vec![cur];
    for _ in 0..order {
        let mut next = out.last().expect("nonempty").derivative();
        for w in &mut rewriters {
            next = w.substitute_top(&next)?;
        }
        out.push(next.cancel());
    }
    Ok(out)
}

fn lcm(a: &Poly, b: &Poly) -> Poly {
    let g = a.gcd(b);
    (a * &b.divide_exact(&g).expect("gcd divides")).primitive()
}

/// Numerators of the candidate terms over one common denominator, reduced
/// modulo every input ADE with a uniform power of each initial. Entry 0 is
/// the constant term.
fn reduced_columns(values: &[RatFunc], monos: &[DeltaMonomial], ades: &[Ade]) -> Result<Vec<Poly>> {
    let terms: Vec<RatFunc> = monos
        .par_iter()
        .map(|m| {
            m.exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(RatFunc::from_poly(Poly::one()), |acc, (i, &e)| {
                    acc.mul(&values[i].pow(e))
                })
                .cancel()
        })
        .collect();
    let common = terms.iter().fold(Poly::one(), |acc, t| lcm(&acc, t.den()));
    let mut cols: Vec<Poly> = std::iter::once(common.clone())
        .chain(
            terms
                .par_iter()
                .map(|t| {
                    let f = common.divide_exact(t.den()).expect("lcm is a multiple");
                    t.num() * &f
                })
                .collect::<Vec<_>>(),
        )
        .collect();
    for a in ades {
        let leader = a.leader();
        let m = a.leader_degree;
        let reduced: Vec<(Poly, u32)> = cols
            .par_iter()
            .map(|c| {
                if c.degree_in(leader) < m {
                    Ok((c.clone(), 0))
                } else {
                    c.pseudo_divide(&a.poly, leader).map(|(_, r, p)| (r, p))
                }
            })
            .collect::<Result<_>>()?;
        let top = reduced.iter().map(|(_, p)| *p).max().unwrap_or(0);
        cols = reduced
            .into_par_iter()
            .map(|(r, p)| if p < top { &r * &a.initial.pow(top - p) } else { r })
            .collect();
    }
    Ok(cols)
}

/// Coefficients of `y`-monomials; entries in `Q[x, params]`.
fn column_vector(p: &Poly) -> BTreeMap<Monomial, Poly> {
    p.coefficients_by(|v| v.is_diff())
}

/// A linear system `A c = b` over `Q(x, params)`.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    pub rows: Vec<Vec<RatFunc>>,
    pub rhs: Vec<RatFunc>,
}

fn degree_key(p: &Poly) -> (u32, usize) {
    (p.total_degree(), p.num_terms())
}

fn remove_content(row: &mut [Poly]) {
    let nz: Vec<&Poly> = row.iter().filter(|p| !p.is_zero()).collect();
    if nz.is_empty() {
        return;
    }
    let g = gcd_all(nz);
    if g.is_constant() {
        return;
    }
    for p in row.iter_mut() {
        *p = p.divide_exact(&g).expect("gcd divides");
    }
}

/// Fraction-free Gauss-Jordan elimination. Pivots are the entries of least
/// total degree; free unknowns are set to zero. `None` when inconsistent.
pub fn solve_linear_ratfunc(sys: &LinearSystem) -> Option<Vec<RatFunc>> {
    let ncols = sys.rows.first().map_or(0, Vec::len);
    // clear row denominators; the last entry is the right-hand side
    let mut m: Vec<Vec<Poly>> = sys
        .rows
        .iter()
        .zip(&sys.rhs)
        .map(|(row, b)| {
            let den = row
                .iter()
                .chain([b])
                .fold(Poly::one(), |acc, e| lcm(&acc, e.den()));
            row.iter()
                .chain([b])
                .map(|e| e.num() * &den.divide_exact(e.den()).expect("lcm is a multiple"))
                .collect()
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pr) = (rank..m.len())
            .filter(|&i| !m[i][col].is_zero())
            .min_by_key(|&i| degree_key(&m[i][col]))
        else {
            continue;
        };
        m.swap(rank, pr);
        let prow = m[rank].clone();
        let pv = prow[col].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == rank || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (e, p) in row.iter_mut().zip(&prow) {
                *e = &(&pv * &*e) - &(&f * p);
            }
            remove_content(row);
        }
        pivots.push((rank, col));
        rank += 1;
    }
    if m[rank..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut sol = vec![RatFunc::from_poly(Poly::zero()); ncols];
    for (r, c) in pivots {
        sol[c] = RatFunc::new(m[r][ncols].clone(), m[r][c].clone())
            .expect("pivot is nonzero")
            .cancel();
    }
    Some(sol)
}

/// Options of [`ansatz_search`].
#[derive(Clone, Debug)]
pub struct AnsatzConfig {
    /// Degree bound `k`.
    pub degree: u32,
    /// Highest derivative of `z` allowed; defaults to `sum n_j + 1`.
    pub order_cap: Option<u32>,
}

impl Default for AnsatzConfig {
    fn default() -> Self {
        AnsatzConfig {
            degree: 2,
            order_cap: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AnsatzResult {
    pub ade: Ade,
    /// Leading monomial of the ansatz that succeeded.
    pub lead: DeltaMonomial,
    pub degree_bound: u32,
    pub order_cap: u32,
}

fn check_inputs(ades: &[Ade], r: &RatFunc, z: DepId) -> Result<()> {
    let deps: BTreeSet<DepId> = ades.iter().map(|a| a.dep).collect();
    if ades.is_empty() || deps.len() != ades.len() {
        return Err(Error::arg("need one equation per distinct function"));
    }
    if deps.contains(&z) {
        return Err(Error::arg("output indeterminate clashes with an input"));
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
    Ok(())
}

fn relation_to_ade(coeffs: &[Poly], monos: &[DeltaMonomial], z: DepId) -> Result<Ade> {
    let mut p = coeffs[0].clone();
    for (c, m) in coeffs[1..].iter().zip(monos) {
        if !c.is_zero() {
            p = &p + &c.mul_term(&Rat::from_integer(1.into()), &m.to_monomial(z));
        }
    }
    Ade::from_poly(primitive_in(&p, z), z)
}

/// Tries the ansatz whose leading monomial is `monos[lead]`, with unknown
/// coefficients on the earlier monomials and the constant. Builds the
/// explicit linear system and solves it.
pub fn assemble_and_solve(
    ades: &[Ade],
    r: &RatFunc,
    k: u32,
    order: u32,
    lead: &DeltaMonomial,
    z: DepId,
) -> Result<Option<Ade>> {
    check_inputs(ades, r, z)?;
    let all = enumerate_delta(k, order);
    let pos = all
        .iter()
        .position(|m| m == lead)
        .ok_or_else(|| Error::arg("leading monomial is not in the enumeration"))?;
    let monos = &all[..=pos];
    let values = derivative_closure(r, ades, order)?;
    let cols = reduced_columns(&values, monos, ades)?;
    let vecs: Vec<BTreeMap<Monomial, Poly>> = cols.iter().map(column_vector).collect();
    let keys: BTreeSet<&Monomial> = vecs.iter().flat_map(|v| v.keys()).collect();
    let zero = Poly::zero();
    let unknowns = pos + 1; // C_0 and the earlier monomials
    let mut sys = LinearSystem::default();
    for key in keys {
        let entry = |j: usize| RatFunc::from_poly(vecs[j].get(key).unwrap_or(&zero).clone());
        sys.rows.push((0..unknowns).map(entry).collect());
        sys.rhs.push(entry(unknowns).neg());
    }
    let Some(sol) = solve_linear_ratfunc(&sys) else {
        return Ok(None);
    };
    let den = sol.iter().fold(Poly::one(), |acc, s| lcm(&acc, s.den()));
    let mut coeffs: Vec<Poly> = sol
        .iter()
        .map(|s| s.num() * &den.divide_exact(s.den()).expect("lcm is a multiple"))
        .collect();
    coeffs.push(den);
    relation_to_ade(&coeffs, monos, z).map(Some)
}

/// Column elimination state. Each reduced vector keeps its pivot and the
/// combination of original columns it equals.
struct Echelon {
    rows: Vec<(Monomial, BTreeMap<Monomial, Poly>, Vec<Poly>)>,
}

impl Echelon {
    /// Reduces `v` (column `idx`) against the stored vectors. On dependence
    /// returns the combination `sum c_i col_i = 0`; otherwise stores it.
    fn push(&mut self, idx: usize, mut v: BTreeMap<Monomial, Poly>) -> Option<Vec<Poly>> {
        let mut comb = vec![Poly::zero(); idx + 1];
        comb[idx] = Poly::one();
        for (pivot, w, wc) in &self.rows {
            let Some(f) = v.get(pivot).cloned() else {
                continue;
            };
            let pv = &w[pivot];
            for e in v.values_mut() {
                *e = pv * &*e;
            }
            for (key, we) in w {
                let cur = v.remove(key).unwrap_or_else(Poly::zero);
                let next = &cur - &(&f * we);
                if !next.is_zero() {
                    v.insert(key.clone(), next);
                }
            }
            for c in comb.iter_mut() {
                *c = pv * &*c;
            }
            for (c, d) in comb.iter_mut().zip(wc) {
                *c = &*c - &(&f * d);
            }
            let g = gcd_all(v.values().chain(comb.iter()).filter(|p| !p.is_zero()));
            if !g.is_constant() && !g.is_zero() {
                for e in v.values_mut().chain(comb.iter_mut()) {
                    *e = e.divide_exact(&g).expect("gcd divides");
                }
            }
        }
        if v.is_empty() {
            return Some(comb);
        }
        let (pivot, _) = v
            .iter()
            .min_by_key(|(m, p)| (degree_key(p), (*m).clone()))
            .map(|(m, p)| (m.clone(), p.clone()))
            .expect("nonempty");
        self.rows.push((pivot, v, comb));
        None
    }
}

/// Searches leading monomials in [`enumerate_delta`] order and returns the
/// first ansatz with a solution.
pub fn ansatz_search(ades: &[Ade], r: &RatFunc, z: DepId, cfg: &AnsatzConfig) -> Result<AnsatzResult> {
    check_inputs(ades, r, z)?;
    if cfg.degree == 0 {
        return Err(Error::arg("degree bound must be positive"));
    }
    let cap = cfg
        .order_cap
        .unwrap_or_else(|| ades.iter().map(|a| a.order).sum::<u32>() + 1);
    let monos = enumerate_delta(cfg.degree, cap);
    let values = derivative_closure(r, ades, cap)?;
    let cols = reduced_columns(&values, &monos, ades)?;
    let vecs: Vec<BTreeMap<Monomial, Poly>> = cols.par_iter().map(column_vector).collect();
    let mut ech = Echelon { rows: Vec::new() };
    for (idx, v) in vecs.into_iter().enumerate() {
        if let Some(comb) = ech.push(idx, v) {
            if idx == 0 {
                // the common denominator cannot vanish
                return Err(Error::Degenerate("constant column reduced to zero".into()));
            }
            let ade = relation_to_ade(&comb, &monos[..idx], z)?;
            return Ok(AnsatzResult {
                ade,
                lead: monos[idx - 1].clone(),
                degree_bound: cfg.degree,
                order_cap: cap,
            });
        }
    }
    Err(Error::NotFound(format!(
        "no ADE of degree at most {} and order at most {cap}",
        cfg.degree
    )))
}

#[cfg(test)]
mod tests;
