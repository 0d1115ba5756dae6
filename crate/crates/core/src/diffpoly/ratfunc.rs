use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{Monomial, Poly, Rat, Var};
use crate::error::{Error, Result};

use super::total_derivative;

/// Quotient of two polynomials. The denominator is kept primitive with a
/// positive leading coefficient; common factors are only removed by
/// [`RatFunc::cancel`].
#[derive(Clone)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(RatFunc::from_poly(Poly::zero()));
        }
        let (c, den) = den.content_primitive()?;
        Ok(RatFunc {
            num: num.scale(&c.recip()),
            den,
        })
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn into_parts(self) -> (Poly, Poly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_poly(&self) -> Option<Poly> {
        self.den.constant_value().map(|c| self.num.scale(&c.recip()))
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    /// Removes the gcd of numerator and denominator.
    pub fn cancel(&self) -> RatFunc {
        if self.den.is_constant() || self.num.is_zero() {
            return self.clone();
        }
        let g = self.num.gcd(&self.den);
        if g.is_constant() {
            return self.clone();
        }
        let num = self.num.divide_exact(&g).expect("gcd divides numerator");
        let den = self.den.divide_exact(&g).expect("gcd divides denominator");
        RatFunc::new(num, den).expect("nonzero denominator")
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone()).expect("nonzero");
        }
        RatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den).expect("nonzero")
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero")
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        if o.is_zero() {
            return Err(Error::DivisionByZero(
                "division by a zero rational function".into(),
            ));
        }
        RatFunc::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc::new(self.num.pow(e), self.den.pow(e)).expect("nonzero")
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Total derivative `(N' D - N D') / D^2`.
    pub fn derivative(&self) -> RatFunc {
        if self.den.is_constant() {
            return RatFunc {
                num: total_derivative(&self.num),
                den: self.den.clone(),
            };
        }
        let dn = total_derivative(&self.num);
        let dd = total_derivative(&self.den);
        RatFunc::new(&(&dn * &self.den) - &(&self.num * &dd), self.den.pow(2)).expect("nonzero")
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> RatFunc {
        RatFunc::from_poly(p)
    }
}

/// Equality by cross-multiplication.
impl PartialEq for RatFunc {
    fn eq(&self, o: &RatFunc) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) / ({:?})", self.num, self.den)
    }
}

/// `p` with variables replaced by rational functions, as (numerator,
/// denominator) with denominator `prod den_v^(deg_v p)`.
fn substitute_poly(p: &Poly, bindings: &BTreeMap<Var, RatFunc>) -> (Poly, Poly) {
    let degs: Vec<(Var, u32)> = bindings
        .keys()
        .map(|&v| (v, p.degree_in(v)))
        .filter(|&(_, d)| d > 0)
        .collect();
    let mut cache: BTreeMap<(Var, u32, u32), Poly> = BTreeMap::new();
    let mut num = Poly::zero();
    for (m, c) in p.terms() {
        let mut acc = Poly::constant(c.clone());
        let mut kept = Vec::new();
        for &(v, e) in m.factors() {
            if !bindings.contains_key(&v) {
                kept.push((v, e));
            }
        }
        for &(v, d) in &degs {
            let e = m.exponent(v);
            let r = &bindings[&v];
            let piece = cache
                .entry((v, e, d))
                .or_insert_with(|| &r.num.pow(e) * &r.den.pow(d - e));
            acc = &acc * &*piece;
        }
        num = &num + &acc.mul_term(&Rat::from_integer(1.into()), &Monomial::from_pairs(kept));
    }
    let den = degs
        .iter()
        .fold(Poly::one(), |acc, &(v, d)| &acc * &bindings[&v].den.pow(d));
    (num, den)
}

/// Simultaneous substitution of rational functions for variables.
pub fn rational_substitute(f: &RatFunc, bindings: &BTreeMap<Var, RatFunc>) -> Result<RatFunc> {
    let (nn, nd) = substitute_poly(&f.num, bindings);
    let (dn, dd) = substitute_poly(&f.den, bindings);
    if dn.is_zero() {
        return Err(Error::DivisionByZero(
            "denominator vanishes after substitution".into(),
        ));
    }
    RatFunc::new(&nn * &dd, &dn * &nd)
}
