use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::order::{mono_cmp, MonomialOrder};
use super::var::{Var, VarTable};
use super::Rat;
use crate::error::{Error, Result};

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept in the canonical monomial order (see [`Monomial`]), which is
/// itself a monomial order, so the last entry is the leading term.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::term(c, Monomial::one())
    }

    pub fn int(c: i64) -> Self {
        Poly::constant(Rat::from_integer(BigInt::from(c)))
    }

    pub fn var(v: Var) -> Self {
        Poly::term(Rat::one(), Monomial::var(v))
    }

    pub fn term(c: Rat, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_value(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rat)> {
        self.terms.into_iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    /// Leading term under the canonical order.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_under(&self, order: &MonomialOrder) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().max_by(|a, b| mono_cmp(order, a.0, b.0))
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, c: &Rat, m: &Monomial) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficient of `v^d` as a polynomial free of `v`.
    pub fn coeff_of(&self, v: Var, d: u32) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_var(v);
            if e == d {
                out.terms.insert(rest, c.clone());
            }
        }
        out
    }

    /// Writes `self` as `sum_i c_i v^i` and returns the `c_i`.
    pub fn univariate(&self, v: Var) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_var(v);
            out[e as usize].terms.insert(rest, c.clone());
        }
        out
    }

    /// Groups terms by their projection onto the variables selected by
    /// `main`, returning the coefficient polynomial of each main monomial.
    pub fn coefficients_by<F: Fn(Var) -> bool>(&self, main: F) -> BTreeMap<Monomial, Poly> {
        let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (a, b): (Vec<_>, Vec<_>) = m.factors().iter().partition(|(v, _)| main(*v));
            out.entry(Monomial { factors: a })
                .or_default()
                .terms
                .insert(Monomial { factors: b }, c.clone());
        }
        out
    }

    pub fn partial(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_var(v);
            if e > 0 {
                let m2 = rest.mul(&Monomial::from_pairs([(v, e - 1)]));
                out.add_term(m2, c * Rat::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// Substitutes polynomials for variables simultaneously.
    pub fn substitute(&self, bind: &dyn Fn(Var) -> Option<Poly>) -> Poly {
        let mut cache: BTreeMap<(Var, u32), Poly> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut acc = Poly::constant(c.clone());
            for &(v, e) in m.factors() {
                match bind(v) {
                    Some(p) => {
                        let pe = cache.entry((v, e)).or_insert_with(|| p.pow(e));
                        acc = &acc * &*pe;
                    }
                    None => kept.push((v, e)),
                }
            }
            let km = Monomial::from_pairs(kept);
            out = out + acc.mul_term(&Rat::one(), &km);
        }
        out
    }

    pub fn map_vars(&self, f: &dyn Fn(Var) -> Var) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            (
                Monomial::from_pairs(m.factors().iter().map(|&(v, e)| (f(v), e))),
                c.clone(),
            )
        }))
    }

    /// `(content, primitive)` with `self = content * primitive`, the primitive
    /// part having coprime integer coefficients and a positive leading
    /// coefficient.
    pub fn content_primitive(&self) -> Result<(Rat, Poly)> {
        let Some((_, lead)) = self.leading() else {
            return Err(Error::arg("content of the zero polynomial"));
        };
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = Rat::new(num_gcd, den_lcm);
        if lead.is_negative() {
            content = -content;
        }
        let inv = content.recip();
        Ok((content, self.scale(&inv)))
    }

    /// Primitive part; zero maps to zero.
    pub fn primitive(&self) -> Poly {
        self.content_primitive().map(|(_, p)| p).unwrap_or_default()
    }

    /// Pseudo-division by `g` with respect to `v`:
    /// `lc_v(g)^power * self = quotient * g + remainder`.
    pub fn pseudo_divide(&self, g: &Poly, v: Var) -> Result<(Poly, Poly, u32)> {
        let m = g.degree_in(v);
        if m == 0 || g.is_zero() {
            return Err(Error::arg("pseudo-division by a polynomial free of the leader"));
        }
        let lc = g.coeff_of(v, m);
        let mut r = self.clone();
        let mut q = Poly::zero();
        let mut power = 0;
        loop {
            let d = r.degree_in(v);
            if r.is_zero() || d < m {
                break;
            }
            let lr = r.coeff_of(v, d);
            let shift = Poly::term(Rat::one(), Monomial::from_pairs([(v, d - m)]));
            let t = &lr * &shift;
            r = &(&lc * &r) - &(&t * g);
            q = &(&lc * &q) + &t;
            power += 1;
        }
        Ok((q, r, power))
    }

    /// Pseudo-remainder only.
    pub fn prem(&self, g: &Poly, v: Var) -> Result<Poly> {
        self.pseudo_divide(g, v).map(|(_, r, _)| r)
    }

    /// Exact quotient `self / g`, or `None` when `g` does not divide `self`.
    pub fn divide_exact(&self, g: &Poly) -> Option<Poly> {
        let (gm, gc) = g.leading()?;
        if let Some(c) = g.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let mut r = self.clone();
        let mut q = Poly::zero();
        while let Some((rm, rc)) = r.leading() {
            let t = gm.quotient_of(rm)?;
            let c = rc / gc;
            r = &r - &g.mul_term(&c, &t);
            q.add_term(t, c);
        }
        Some(q)
    }

    /// Greatest common divisor over `Q[vars]`, normalized primitive with a
    /// positive leading coefficient.
    pub fn gcd(&self, other: &Poly) -> Poly {
        super::gcd::poly_gcd(self, other)
    }

    pub fn display<'a>(&'a self, table: &'a VarTable) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, table }
    }
}

fn merge(a: &Poly, b: &Poly, negate: bool) -> Poly {
    let mut out = a.clone();
    for (m, c) in &b.terms {
        out.add_term(m.clone(), if negate { -c.clone() } else { c.clone() });
    }
    out
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        if self.terms.len() < rhs.terms.len() {
            merge(rhs, self, false)
        } else {
            merge(self, rhs, false)
        }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        merge(self, rhs, true)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl From<Var> for Poly {
    fn from(v: Var) -> Poly {
        Poly::var(v)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (v, e) in m.factors() {
                write!(f, "*{v:?}^{e}")?;
            }
        }
        Ok(())
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    table: &'a VarTable,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::frontend::render::render_poly(self.poly, self.table))
    }
}
