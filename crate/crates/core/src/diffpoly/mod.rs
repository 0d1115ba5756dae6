//! Differential polynomials: total derivation, normalized ADEs, implicit
//! higher derivatives and rational substitution.

mod ratfunc;

use std::collections::BTreeMap;

use crate::arith::{DepId, Monomial, Poly, Rat, Var};
use crate::error::{Error, Result};

pub use ratfunc::{rational_substitute, RatFunc};

/// The derivation `d/dx`: `x -> 1`, parameters are constants and
/// `y_j^(k) -> y_j^(k+1)`.
pub fn total_derivative(f: &Poly) -> Poly {
    let mut out = Poly::zero();
    for (m, c) in f.terms() {
        for &(v, e) in m.factors() {
            let dv = match v {
                Var::Indep => None,
                Var::Param(_) => continue,
                Var::Diff { dep, order } => Some(Var::diff(dep, order + 1)),
            };
            let (_, rest) = m.split_var(v);
            let mut pairs: Vec<(Var, u32)> = rest.factors().to_vec();
            if e > 1 {
                pairs.push((v, e - 1));
            }
            if let Some(w) = dv {
                pairs.push((w, 1));
            }
            let coeff = c * Rat::from_integer(e.into());
            out = &out + &Poly::term(coeff, Monomial::from_pairs(pairs));
        }
    }
    out
}

/// `n`-fold total derivative.
pub fn total_derivative_n(f: &Poly, n: u32) -> Poly {
    (0..n).fold(f.clone(), |acc, _| total_derivative(&acc))
}

/// Highest derivative order of `dep` occurring in `f`.
pub fn order_in(f: &Poly, dep: DepId) -> Option<u32> {
    f.vars()
        .into_iter()
        .filter_map(|v| match v {
            Var::Diff { dep: d, order } if d == dep => Some(order),
            _ => None,
        })
        .max()
}

/// A normalized algebraic differential equation `poly = 0` in the
/// indeterminate `dep`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ade {
    pub poly: Poly,
    pub dep: DepId,
    pub order: u32,
    /// Degree of the leader `y^(order)` in `poly`.
    pub leader_degree: u32,
    /// Coefficient of `leader^leader_degree`.
    pub initial: Poly,
    /// `d poly / d leader`.
    pub separant: Poly,
}

impl Ade {
    /// Wraps an already primitive polynomial; fails when it does not involve
    /// `dep`.
    pub fn from_poly(poly: Poly, dep: DepId) -> Result<Ade> {
        if poly.is_zero() {
            return Err(Error::arg("identically zero equation"));
        }
        let order = order_in(&poly, dep)
            .ok_or_else(|| Error::arg("equation does not involve its dependent function"))?;
        let leader = Var::diff(dep, order);
        let leader_degree = poly.degree_in(leader);
        let initial = poly.coeff_of(leader, leader_degree);
        let separant = poly.partial(leader);
        Ok(Ade {
            poly,
            dep,
            order,
            leader_degree,
            initial,
            separant,
        })
    }

    pub fn leader(&self) -> Var {
        Var::diff(self.dep, self.order)
    }

    pub fn degree(&self) -> u32 {
        self.poly.total_degree()
    }

    /// Largest derivative order of the dependent function with a rational
    /// rewrite for `y^(order + 1)`: the relation
    /// `den * y^(order+1) - num = 0` for the cancelled implicit derivative.
    pub fn quasi_linear(&self) -> Result<Poly> {
        let r = implicit_first(self)?;
        let top = Poly::var(Var::diff(self.dep, self.order + 1));
        Ok((&(r.den() * &top) - r.num()).primitive())
    }
}

/// Normalizes `lhs = rhs` into an [`Ade`] in `dep`: clears denominators,
/// moves everything to one side and takes the primitive part.
pub fn normalize_ade(lhs: &RatFunc, rhs: &RatFunc, dep: DepId) -> Result<Ade> {
    let diff = lhs.sub(rhs);
    let num = diff.num();
    if num.is_zero() {
        return Err(Error::arg("identically zero equation"));
    }
    if order_in(num, dep).is_none() {
        return Err(Error::arg("equation is free of its dependent function"));
    }
    Ade::from_poly(num.primitive(), dep)
}

fn implicit_first(ade: &Ade) -> Result<RatFunc> {
    if ade.separant.is_zero() {
        return Err(Error::Degenerate("separant vanishes identically".into()));
    }
    let next = Var::diff(ade.dep, ade.order + 1);
    let d = total_derivative(&ade.poly);
    // d = separant * next + rest
    let rest = &d - &(&ade.separant * &Poly::var(next));
    debug_assert!(!rest.contains_var(next));
    Ok(RatFunc::new(-&rest, ade.separant.clone())?.cancel())
}

/// Rewrites derivatives of one ADE above its order in terms of
/// `x, params, y, ..., y^(n)`, caching every order computed so far.
#[derive(Clone, Debug)]
pub struct ImplicitDerivatives {
    ade: Ade,
    /// `cache[t-1]` holds `y^(n+t)`.
    cache: Vec<RatFunc>,
}

impl ImplicitDerivatives {
    pub fn new(ade: &Ade) -> Result<Self> {
        let first = implicit_first(ade)?;
        Ok(ImplicitDerivatives {
            ade: ade.clone(),
            cache: vec![first],
        })
    }

    pub fn ade(&self) -> &Ade {
        &self.ade
    }

    /// `y^(n+t)` for `t >= 1`.
    pub fn get(&mut self, t: u32) -> Result<RatFunc> {
        if t == 0 {
            return Err(Error::arg("implicit derivative index must be positive"));
        }
        while self.cache.len() < t as usize {
            let prev = self.cache.last().expect("seeded");
            let d = prev.derivative();
            let next = self.substitute_top(&d)?;
            self.cache.push(next);
        }
        Ok(self.cache[t as usize - 1].clone())
    }

    /// Replaces every derivative of the dependent function above its order.
    pub fn substitute_top(&mut self, f: &RatFunc) -> Result<RatFunc> {
        let n = self.ade.order;
        let dep = self.ade.dep;
        let top = f
            .vars()
            .into_iter()
            .filter_map(|v| match v {
                Var::Diff { dep: d, order } if d == dep && order > n => Some(order),
                _ => None,
            })
            .max();
        let Some(top) = top else {
            return Ok(f.clone());
        };
        let mut bind = BTreeMap::new();
        for k in n + 1..=top {
            let r = self.get(k - n)?;
            bind.insert(Var::diff(dep, k), r);
        }
        Ok(rational_substitute(f, &bind)?.cancel())
    }
}

/// `y^(n+t)` as a rational function of `x`, parameters and `y..y^(n)`.
pub fn implicit_higher_derivative(ade: &Ade, t: u32) -> Result<RatFunc> {
    ImplicitDerivatives::new(ade)?.get(t)
}
