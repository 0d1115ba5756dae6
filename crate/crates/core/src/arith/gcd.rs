//! Multivariate gcd by recursive subresultant remainder sequences.
//!
//! Used for content over coefficient subrings and for cancelling common
//! factors of small rational functions; inputs in this crate stay small.

use std::collections::BTreeSet;

use super::monomial::Monomial;
use super::poly::Poly;
use super::var::Var;

fn normalize(p: &Poly) -> Poly {
    if p.is_zero() {
        Poly::zero()
    } else {
        p.primitive()
    }
}

/// gcd of a list, folded pairwise with early exit on 1.
pub fn gcd_all<'a, I: IntoIterator<Item = &'a Poly>>(it: I) -> Poly {
    let mut acc = Poly::zero();
    for p in it {
        acc = poly_gcd(&acc, p);
        if acc.is_constant() && !acc.is_zero() {
            return Poly::one();
        }
    }
    acc
}

fn content_in(p: &Poly, v: Var) -> Poly {
    let coeffs = p.univariate(v);
    let mut nz: Vec<&Poly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    nz.sort_by_key(|c| c.num_terms());
    gcd_all(nz)
}

fn primpart_in(p: &Poly, v: Var) -> Poly {
    let c = content_in(p, v);
    normalize(&p.divide_exact(&c).expect("content divides"))
}

pub fn poly_gcd(f: &Poly, g: &Poly) -> Poly {
    if f.is_zero() {
        return normalize(g);
    }
    if g.is_zero() {
        return normalize(f);
    }
    if f.is_constant() || g.is_constant() {
        return Poly::one();
    }
    if f.num_terms() == 1 || g.num_terms() == 1 {
        return monomial_gcd(f, g);
    }
    let (mf, f) = split_monomial_content(f);
    let (mg, g) = split_monomial_content(g);
    let m = Poly::term(super::Rat::from_integer(1.into()), mf.gcd(&mg));
    if f.is_constant() || g.is_constant() {
        return m;
    }
    let fv = f.vars();
    let gv = g.vars();
    // A variable present in only one argument contributes only through
    // that argument's content.
    if let Some(&v) = fv.symmetric_difference(&gv).max() {
        let rest = if fv.contains(&v) {
            poly_gcd(&content_in(&f, v), &g)
        } else {
            poly_gcd(&f, &content_in(&g, v))
        };
        return &m * &rest;
    }
    &m * &common_gcd(&f, &g, &fv)
}

/// Largest monomial dividing every term, and the cofactor.
fn split_monomial_content(p: &Poly) -> (Monomial, Poly) {
    let mut terms = p.terms();
    let (first, _) = terms.next().expect("nonzero");
    let mut m = first.clone();
    for (n, _) in terms {
        if m.is_one() {
            break;
        }
        m = m.gcd(n);
    }
    if m.is_one() {
        return (m, p.clone());
    }
    let q = Poly::from_terms(
        p.terms()
            .map(|(n, c)| (m.quotient_of(n).expect("divides"), c.clone())),
    );
    (m, q)
}

/// gcd of two polynomials in the same variables, none of them a monomial
/// factor of either.
fn common_gcd(f: &Poly, g: &Poly, vars: &BTreeSet<Var>) -> Poly {
    // the variable of least degree keeps remainder sequences short
    let v = *vars
        .iter()
        .min_by_key(|&&v| (f.degree_in(v).max(g.degree_in(v)), std::cmp::Reverse(v)))
        .expect("non-constant");
    let cf = content_in(f, v);
    let cg = content_in(g, v);
    let c = poly_gcd(&cf, &cg);
    let mut a = f.divide_exact(&cf).expect("content divides");
    let mut b = g.divide_exact(&cg).expect("content divides");
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    // cheap exit for the frequent case b | a
    if a.divide_exact(&b).is_some() {
        return normalize(&(&c * &b));
    }
    normalize(&(&c * &subresultant_gcd(a, b, v)))
}

/// Primitive part in `v` of the last nonzero subresultant of `a` and `b`,
/// both primitive in `v` with `deg a >= deg b > 0`.
fn subresultant_gcd(mut a: Poly, mut b: Poly, v: Var) -> Poly {
    let mut g = Poly::one();
    let mut h = Poly::one();
    loop {
        let da = a.degree_in(v);
        let db = b.degree_in(v);
        if db == 0 {
            return Poly::one();
        }
        let delta = da - db;
        let (_, mut r, power) = a.pseudo_divide(&b, v).expect("b involves v");
        if r.is_zero() {
            return primpart_in(&b, v);
        }
        let lcb = b.coeff_of(v, db);
        if power < delta + 1 {
            r = &r * &lcb.pow(delta + 1 - power);
        }
        if r.degree_in(v) == 0 {
            return Poly::one();
        }
        let divisor = &g * &h.pow(delta);
        a = b;
        b = r.divide_exact(&divisor).expect("subresultant division is exact");
        g = a.coeff_of(v, a.degree_in(v));
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g
                .pow(delta)
                .divide_exact(&h.pow(delta - 1))
                .expect("subresultant division is exact"),
        };
    }
}

fn monomial_gcd(f: &Poly, g: &Poly) -> Poly {
    let (mono, other) = if f.num_terms() == 1 { (f, g) } else { (g, f) };
    let (m, _) = mono.leading().expect("nonzero");
    let mut acc = m.clone();
    for (n, _) in other.terms() {
        acc = acc.gcd(n);
        if acc.is_one() {
            break;
        }
    }
    Poly::term(super::Rat::from_integer(1.into()), acc)
}
