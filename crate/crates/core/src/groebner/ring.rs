//! Dense-exponent integer polynomials used inside Buchberger's algorithm.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{Inner, Monomial, MonomialOrder, Poly, Rat, Var};

#[derive(Clone, Debug)]
struct Block {
    start: usize,
    end: usize,
    inner: Inner,
}

/// Variable layout and monomial order of one Groebner computation.
#[derive(Clone, Debug)]
pub(crate) struct Ring {
    pub vars: Vec<Var>,
    blocks: Vec<Block>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Mono {
    pub exps: Box<[u16]>,
    pub deg: u32,
}

impl Mono {
    pub fn divides(&self, other: &Mono) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        let exps: Box<[u16]> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| *a.max(b))
            .collect();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Mono { exps, deg }
    }

    pub fn div(&self, other: &Mono) -> Mono {
        let exps: Box<[u16]> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a - b)
            .collect();
        Mono {
            exps,
            deg: self.deg - other.deg,
        }
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let exps: Box<[u16]> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a + b)
            .collect();
        Mono {
            exps,
            deg: self.deg + other.deg,
        }
    }

    pub fn coprime(&self, other: &Mono) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }
}

/// Polynomial with integer coefficients, terms sorted by decreasing monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct GPoly {
    pub terms: Vec<(Mono, BigInt)>,
}

impl GPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Mono {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.deg).max().unwrap_or(0)
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_scalar(&mut self, c: &BigInt) {
        for (_, a) in &mut self.terms {
            *a = &*a / c;
        }
    }
}

impl Ring {
    /// Builds the layout for `order`, appending any variable of `extra` that
    /// the order does not list as a trailing lex block.
    pub fn new(order: &MonomialOrder, extra: impl IntoIterator<Item = Var>) -> Ring {
        let mut vars = Vec::new();
        let mut blocks = Vec::new();
        let mut push = |vs: &[Var], inner: Inner, vars: &mut Vec<Var>| {
            let start = vars.len();
            for &v in vs {
                if !vars.contains(&v) {
                    vars.push(v);
                }
            }
            blocks.push(Block {
                start,
                end: vars.len(),
                inner,
            });
        };
        match order {
            MonomialOrder::Lex(vs) => push(vs, Inner::Lex, &mut vars),
            MonomialOrder::GrevLex(vs) => push(vs, Inner::GrevLex, &mut vars),
            MonomialOrder::Block {
                high,
                high_order,
                low,
                low_order,
            } => {
                push(high, *high_order, &mut vars);
                push(low, *low_order, &mut vars);
            }
            MonomialOrder::Product(bs) => {
                for (vs, inner) in bs {
                    push(vs, *inner, &mut vars);
                }
            }
        }
        let mut rest: Vec<Var> = extra.into_iter().filter(|v| !vars.contains(v)).collect();
        rest.sort_by(|a, b| b.cmp(a));
        rest.dedup();
        if !rest.is_empty() {
            push(&rest, Inner::Lex, &mut vars);
        }
        Ring { vars, blocks }
    }

    pub fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        for blk in &self.blocks {
            let (x, y) = (&a.exps[blk.start..blk.end], &b.exps[blk.start..blk.end]);
            let o = match blk.inner {
                Inner::Lex => x.cmp(y),
                Inner::GrevLex => {
                    let dx: u32 = x.iter().map(|&e| e as u32).sum();
                    let dy: u32 = y.iter().map(|&e| e as u32).sum();
                    dx.cmp(&dy).then_with(|| {
                        for (p, q) in x.iter().zip(y.iter()).rev() {
                            if p != q {
                                return q.cmp(p);
                            }
                        }
                        Ordering::Equal
                    })
                }
            };
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    }

    pub fn index(&self, v: Var) -> Option<usize> {
        self.vars.iter().position(|&w| w == v)
    }

    pub fn mono(&self, m: &Monomial) -> Mono {
        let mut exps = vec![0u16; self.vars.len()];
        for &(v, e) in m.factors() {
            let i = self.index(v).expect("variable registered in ring");
            exps[i] = e as u16;
        }
        Mono {
            exps: exps.into(),
            deg: m.degree(),
        }
    }

    pub fn monomial(&self, m: &Mono) -> Monomial {
        Monomial::from_pairs(
            m.exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (self.vars[i], e as u32)),
        )
    }

    /// Integer image of `p` and the rational factor `s` with `image = s * p`.
    pub fn encode(&self, p: &Poly) -> (GPoly, Rat) {
        let mut den = BigInt::one();
        for (_, c) in p.terms() {
            den = den.lcm(c.denom());
        }
        let mut terms: Vec<(Mono, BigInt)> = p
            .terms()
            .map(|(m, c)| (self.mono(m), (c * Rat::from_integer(den.clone())).to_integer()))
            .collect();
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        (GPoly { terms }, Rat::from_integer(den))
    }

    pub fn to_poly(&self, g: &GPoly) -> Poly {
        Poly::from_terms(
            g.terms
                .iter()
                .map(|(m, c)| (self.monomial(m), Rat::from_integer(c.clone()))),
        )
    }

    /// `a*f - b*t*g`, assuming the leading terms cancel.
    pub fn combine(&self, a: &BigInt, f: &GPoly, b: &BigInt, t: &Mono, g: &GPoly) -> GPoly {
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let mut fi = f.terms.iter().peekable();
        let mut gi = g.terms.iter().map(|(m, c)| (m.mul(t), c)).peekable();
        loop {
            let ord = match (fi.peek(), gi.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => self.cmp(&x.0, &y.0),
            };
            match ord {
                Ordering::Greater => {
                    let (m, c) = fi.next().unwrap();
                    out.push((m.clone(), a * c));
                }
                Ordering::Less => {
                    let (m, c) = gi.next().unwrap();
                    out.push((m, -(b * c)));
                }
                Ordering::Equal => {
                    let (m, c) = fi.next().unwrap();
                    let (_, d) = gi.next().unwrap();
                    let v = a * c - b * d;
                    if !v.is_zero() {
                        out.push((m.clone(), v));
                    }
                }
            }
        }
        GPoly { terms: out }
    }

    /// Primitive part with positive leading coefficient; returns the divisor
    /// applied (signed).
    pub fn normalize(&self, g: &mut GPoly) -> BigInt {
        if g.is_zero() {
            return BigInt::one();
        }
        let mut c = g.content();
        if g.lc().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            g.div_scalar(&c);
        }
        c
    }
}
