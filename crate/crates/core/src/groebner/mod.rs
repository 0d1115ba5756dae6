//! Buchberger's algorithm over `Q` with Gebauer-Moller pair criteria, and
//! elimination with block orders.
//!
//! Polynomials are cleared to integer coefficients on entry and reduced
//! fraction-free; rationals only reappear at the boundary.

mod ring;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{MonomialOrder, Poly, Rat, Var};
use crate::error::{Error, Result};
use ring::{GPoly, Mono, Ring};

/// Resource limits and options for a Groebner computation.
#[derive(Clone, Debug)]
pub struct GbConfig {
    /// Largest total degree allowed for a basis element.
    pub max_degree: u32,
    /// Largest number of polynomials ever added to the basis.
    pub max_generators: usize,
    /// Record, for every basis element, its cofactors over the input.
    pub certificates: bool,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig {
            max_degree: 60,
            max_generators: 5000,
            certificates: false,
        }
    }
}

/// A (reduced) Groebner basis.
#[derive(Clone, Debug)]
pub struct IdealBasis {
    pub generators: Vec<Poly>,
    pub order: MonomialOrder,
    pub reduced: bool,
    /// `certificates[i][k]` is the cofactor of input `k` in `generators[i]`.
    pub certificates: Option<Vec<Vec<Poly>>>,
}

impl IdealBasis {
    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant()
    }

    fn ring(&self, extra: impl IntoIterator<Item = Var>) -> Ring {
        let vars: BTreeSet<Var> = self
            .generators
            .iter()
            .flat_map(|g| g.vars())
            .chain(extra)
            .collect();
        Ring::new(&self.order, vars)
    }
}

#[derive(Clone, Debug)]
struct Tracked {
    poly: GPoly,
    cof: Option<Vec<Poly>>,
}

fn mul_mono(g: &GPoly, t: &Mono) -> GPoly {
    GPoly {
        terms: g.terms.iter().map(|(m, c)| (m.mul(t), c.clone())).collect(),
    }
}

fn cof_combine(
    ring: &Ring,
    a: &BigInt,
    f: &mut Option<Vec<Poly>>,
    b: &BigInt,
    t: &Mono,
    g: &Option<Vec<Poly>>,
) {
    if let (Some(fc), Some(gc)) = (f.as_mut(), g.as_ref()) {
        let a = Rat::from_integer(a.clone());
        let tb = ring.monomial(t);
        let b = Rat::from_integer(b.clone());
        for (x, y) in fc.iter_mut().zip(gc.iter()) {
            *x = &x.scale(&a) - &y.mul_term(&b, &tb);
        }
    }
}

/// Full (head and tail) fraction-free reduction. Returns the remainder and
/// the integer multiplier `s` with `remainder = s*f - (ideal element)`, up to
/// the content division recorded in `scale`.
fn reduce_full(ring: &Ring, f: Tracked, basis: &[&Tracked], scale: &mut Rat) -> Tracked {
    let mut rest = f.poly;
    let mut cof = f.cof;
    let mut done: Vec<(Mono, BigInt)> = Vec::new();
    let mut steps = 0usize;
    while !rest.is_zero() {
        let lm = rest.lm().clone();
        let reducer = basis
            .iter()
            .filter(|g| g.poly.lm().divides(&lm))
            .min_by_key(|g| g.poly.terms.len());
        match reducer {
            None => {
                let head = rest.terms.remove(0);
                done.push(head);
            }
            Some(g) => {
                let t = lm.div(g.poly.lm());
                let gg = rest.lc().gcd(g.poly.lc());
                let a = g.poly.lc() / &gg;
                let b = rest.lc() / &gg;
                rest = ring.combine(&a, &rest, &b, &t, &g.poly);
                if !a.is_one() {
                    for (_, c) in &mut done {
                        *c = &*c * &a;
                    }
                    *scale *= Rat::from_integer(a.clone());
                }
                cof_combine(ring, &a, &mut cof, &b, &t, &g.cof);
                steps += 1;
                if steps.is_multiple_of(16) {
                    let mut c = rest.content();
                    for (_, d) in &done {
                        if c.is_one() {
                            break;
                        }
                        c = c.gcd(d);
                    }
                    if !c.is_one() && !c.is_zero() {
                        rest.div_scalar(&c);
                        for (_, d) in &mut done {
                            *d = &*d / &c;
                        }
                        *scale /= Rat::from_integer(c.clone());
                        if let Some(cs) = &mut cof {
                            let inv = Rat::new(BigInt::one(), c.clone());
                            for x in cs.iter_mut() {
                                *x = x.scale(&inv);
                            }
                        }
                    }
                }
            }
        }
    }
    Tracked {
        poly: GPoly { terms: done },
        cof,
    }
}

fn normalize_tracked(ring: &Ring, t: &mut Tracked) {
    let c = ring.normalize(&mut t.poly);
    if !c.is_one() {
        if let Some(cs) = &mut t.cof {
            let inv = Rat::new(BigInt::one(), c);
            for x in cs.iter_mut() {
                *x = x.scale(&inv);
            }
        }
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
}

struct Engine<'a> {
    ring: Ring,
    cfg: &'a GbConfig,
    polys: Vec<Tracked>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Engine<'_> {
    fn active_refs(&self) -> Vec<&Tracked> {
        self.polys
            .iter()
            .zip(self.active.iter())
            .filter(|(_, &a)| a)
            .map(|(p, _)| p)
            .collect()
    }

    /// Gebauer-Moller update after adding polynomial `h`.
    fn update(&mut self, h: usize) {
        let lh = self.polys[h].poly.lm().clone();
        let mut fresh: Vec<(usize, Mono, bool)> = (0..h)
            .filter(|&g| self.active[g])
            .map(|g| {
                let lg = self.polys[g].poly.lm();
                (g, lg.lcm(&lh), lg.coprime(&lh))
            })
            .collect();

        // Criterion M: drop pairs whose lcm is properly divisible by another.
        let keep: Vec<bool> = fresh
            .iter()
            .map(|(_, l, _)| !fresh.iter().any(|(_, l2, _)| l2.divides(l) && l2 != l))
            .collect();
        let mut it = keep.iter();
        fresh.retain(|_| *it.next().unwrap());

        // Criterion F and product criterion on groups with equal lcm.
        let mut survivors: Vec<Pair> = Vec::new();
        let mut seen: Vec<Mono> = Vec::new();
        for (idx, (g, l, _)) in fresh.iter().enumerate() {
            if seen.contains(l) {
                continue;
            }
            seen.push(l.clone());
            let group_coprime = fresh[idx..].iter().any(|(_, l2, c)| l2 == l && *c);
            if !group_coprime {
                survivors.push(Pair {
                    i: *g,
                    j: h,
                    lcm: l.clone(),
                });
            }
        }

        // Criterion B on old pairs.
        let polys = &self.polys;
        self.pairs.retain(|p| {
            if !lh.divides(&p.lcm) {
                return true;
            }
            let li = polys[p.i].poly.lm().lcm(&lh);
            let lj = polys[p.j].poly.lm().lcm(&lh);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(survivors);

        for g in 0..h {
            if self.active[g] && lh.divides(self.polys[g].poly.lm()) {
                self.active[g] = false;
            }
        }
    }

    fn add(&mut self, mut t: Tracked) -> Result<bool> {
        normalize_tracked(&self.ring, &mut t);
        let deg = t.poly.max_degree();
        if deg > self.cfg.max_degree {
            return Err(Error::Resource(format!(
                "intermediate polynomial of degree {deg} exceeds the cap {}",
                self.cfg.max_degree
            )));
        }
        if self.polys.len() >= self.cfg.max_generators {
            return Err(Error::Resource(format!(
                "basis grew beyond {} polynomials",
                self.cfg.max_generators
            )));
        }
        let unit = t.poly.lm().is_one();
        self.polys.push(t);
        self.active.push(true);
        let h = self.polys.len() - 1;
        if unit {
            return Ok(true);
        }
        self.update(h);
        Ok(false)
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let ring = &self.ring;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.lcm
                    .deg
                    .cmp(&b.lcm.deg)
                    .then_with(|| ring.cmp(&a.lcm, &b.lcm))
                    .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> Tracked {
        let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
        let ti = p.lcm.div(f.poly.lm());
        let tj = p.lcm.div(g.poly.lm());
        let gg = f.poly.lc().gcd(g.poly.lc());
        let a = g.poly.lc() / &gg;
        let b = f.poly.lc() / &gg;
        let fi = mul_mono(&f.poly, &ti);
        let poly = self.ring.combine(&a, &fi, &b, &tj, &g.poly);
        let cof = match (&f.cof, &g.cof) {
            (Some(fc), Some(_)) => {
                let tm = self.ring.monomial(&ti);
                let mut c = Some(fc.iter().map(|x| x.mul_term(&Rat::one(), &tm)).collect());
                cof_combine(&self.ring, &a, &mut c, &b, &tj, &g.cof);
                c
            }
            _ => None,
        };
        Tracked { poly, cof }
    }
}

/// Computes the reduced Groebner basis of `gens` under `order`.
pub fn buchberger(gens: &[Poly], order: &MonomialOrder) -> Result<IdealBasis> {
    buchberger_with(gens, order, &GbConfig::default())
}

pub fn buchberger_with(gens: &[Poly], order: &MonomialOrder, cfg: &GbConfig) -> Result<IdealBasis> {
    if gens.is_empty() {
        return Err(Error::arg("empty generator list"));
    }
    let vars: BTreeSet<Var> = gens.iter().flat_map(|g| g.vars()).collect();
    let ring = Ring::new(order, vars);
    let mut eng = Engine {
        ring,
        cfg,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    let n = gens.len();
    let mut unit = false;
    for (k, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let (gp, s) = eng.ring.encode(g);
        let cof = cfg.certificates.then(|| {
            (0..n)
                .map(|i| {
                    if i == k {
                        Poly::constant(s.clone())
                    } else {
                        Poly::zero()
                    }
                })
                .collect()
        });
        let mut scale = Rat::one();
        let t = {
            let basis = eng.active_refs();
            reduce_full(&eng.ring, Tracked { poly: gp, cof }, &basis, &mut scale)
        };
        if t.poly.is_zero() {
            continue;
        }
        if eng.add(t)? {
            unit = true;
            break;
        }
    }
    while !unit {
        let Some(p) = eng.next_pair() else { break };
        let s = eng.spoly(&p);
        let mut scale = Rat::one();
        let t = {
            let basis = eng.active_refs();
            reduce_full(&eng.ring, s, &basis, &mut scale)
        };
        if t.poly.is_zero() {
            continue;
        }
        if eng.add(t)? {
            unit = true;
        }
    }
    finish(eng, order, unit)
}

fn finish(eng: Engine<'_>, order: &MonomialOrder, unit: bool) -> Result<IdealBasis> {
    let ring = &eng.ring;
    let cert = eng.cfg.certificates;
    if unit {
        let mut t = eng.polys.last().expect("unit element present").clone();
        normalize_tracked(ring, &mut t);
        return Ok(IdealBasis {
            generators: vec![Poly::one()],
            order: order.clone(),
            reduced: true,
            certificates: t.cof.map(|c| vec![c]),
        });
    }
    let mut idx: Vec<usize> = (0..eng.polys.len()).filter(|&i| eng.active[i]).collect();
    idx.sort_by(|&a, &b| ring.cmp(eng.polys[a].poly.lm(), eng.polys[b].poly.lm()));
    let mut out: Vec<Tracked> = Vec::with_capacity(idx.len());
    for (k, &i) in idx.iter().enumerate() {
        let others: Vec<&Tracked> = idx
            .iter()
            .enumerate()
            .filter(|&(k2, _)| k2 != k)
            .map(|(_, &j)| &eng.polys[j])
            .collect();
        let head = eng.polys[i].poly.lm().clone();
        let mut scale = Rat::one();
        let mut t = reduce_tail(ring, eng.polys[i].clone(), &others, &head, &mut scale);
        normalize_tracked(ring, &mut t);
        out.push(t);
    }
    let generators = out.iter().map(|t| ring.to_poly(&t.poly)).collect();
    let certificates = cert.then(|| out.into_iter().map(|t| t.cof.unwrap_or_default()).collect());
    Ok(IdealBasis {
        generators,
        order: order.clone(),
        reduced: true,
        certificates,
    })
}

/// Reduces every term of `f` except its head `head` by `basis`.
fn reduce_tail(ring: &Ring, f: Tracked, basis: &[&Tracked], head: &Mono, scale: &mut Rat) -> Tracked {
    let mut rest = f.poly;
    let mut cof = f.cof;
    let mut done: Vec<(Mono, BigInt)> = Vec::new();
    while !rest.is_zero() {
        let lm = rest.lm().clone();
        let reducer = if &lm == head {
            None
        } else {
            basis
                .iter()
                .filter(|g| g.poly.lm().divides(&lm))
                .min_by_key(|g| g.poly.terms.len())
        };
        match reducer {
            None => done.push(rest.terms.remove(0)),
            Some(g) => {
                let t = lm.div(g.poly.lm());
                let gg = rest.lc().gcd(g.poly.lc());
                let a = g.poly.lc() / &gg;
                let b = rest.lc() / &gg;
                rest = ring.combine(&a, &rest, &b, &t, &g.poly);
                for (_, c) in &mut done {
                    *c = &*c * &a;
                }
                *scale *= Rat::from_integer(a.clone());
                cof_combine(ring, &a, &mut cof, &b, &t, &g.cof);
            }
        }
    }
    Tracked {
        poly: GPoly { terms: done },
        cof,
    }
}

/// Normal form of `f` modulo `basis`: no term of the result is divisible by
/// a leading monomial of the basis, and `f - result` lies in the ideal.
pub fn reduce(f: &Poly, basis: &IdealBasis) -> Poly {
    if basis.generators.is_empty() || f.is_zero() {
        return f.clone();
    }
    let ring = basis.ring(f.vars());
    let gs: Vec<Tracked> = basis
        .generators
        .iter()
        .map(|g| Tracked {
            poly: ring.encode(g).0,
            cof: None,
        })
        .collect();
    let refs: Vec<&Tracked> = gs.iter().collect();
    let (fp, s) = ring.encode(f);
    let mut scale = s;
    let r = reduce_full(&ring, Tracked { poly: fp, cof: None }, &refs, &mut scale);
    ring.to_poly(&r.poly).scale(&scale.recip())
}

/// True when every S-polynomial of `basis` reduces to zero.
pub fn is_groebner(basis: &IdealBasis) -> bool {
    let g = &basis.generators;
    let ring = basis.ring([]);
    let gs: Vec<Tracked> = g
        .iter()
        .map(|p| Tracked {
            poly: ring.encode(p).0,
            cof: None,
        })
        .collect();
    let refs: Vec<&Tracked> = gs.iter().collect();
    let eng = Engine {
        ring: ring.clone(),
        cfg: &GbConfig::default(),
        polys: gs.clone(),
        active: vec![true; gs.len()],
        pairs: Vec::new(),
    };
    for j in 0..gs.len() {
        for i in 0..j {
            let lcm = gs[i].poly.lm().lcm(gs[j].poly.lm());
            let s = eng.spoly(&Pair { i, j, lcm });
            let mut scale = Rat::one();
            if !reduce_full(&ring, s, &refs, &mut scale).poly.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Ideal membership test against a Groebner basis.
pub fn ideal_contains(basis: &IdealBasis, f: &Poly) -> bool {
    reduce(f, basis).is_zero()
}

/// Block elimination order `eliminate >> keep`, GrevLex inside each block.
pub fn elimination_order(eliminate: &[Var], keep: &[Var]) -> MonomialOrder {
    MonomialOrder::block(eliminate.to_vec(), keep.to_vec())
}

/// Generators of the reduced Groebner basis that only involve `keep`.
pub fn eliminate(gens: &[Poly], eliminate: &[Var], keep: &[Var]) -> Result<Vec<Poly>> {
    eliminate_with(gens, eliminate, keep, &GbConfig::default()).map(|(_, kept)| kept)
}

pub fn eliminate_with(
    gens: &[Poly],
    eliminate: &[Var],
    keep: &[Var],
    cfg: &GbConfig,
) -> Result<(IdealBasis, Vec<Poly>)> {
    if let Some(v) = eliminate.iter().find(|v| keep.contains(v)) {
        return Err(Error::arg(format!("variable {v:?} both eliminated and kept")));
    }
    for g in gens {
        if let Some(v) = g
            .vars()
            .into_iter()
            .find(|v| !eliminate.contains(v) && !keep.contains(v))
        {
            return Err(Error::arg(format!(
                "variable {v:?} is neither eliminated nor kept"
            )));
        }
    }
    let order = elimination_order(eliminate, keep);
    let basis = buchberger_with(gens, &order, cfg)?;
    let kept = basis
        .generators
        .iter()
        .filter(|g| g.vars().iter().all(|v| keep.contains(v)))
        .cloned()
        .collect();
    Ok((basis, kept))
}

#[cfg(test)]
mod tests;
