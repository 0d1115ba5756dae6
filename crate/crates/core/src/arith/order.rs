use std::cmp::Ordering;

use super::monomial::Monomial;
use super::var::Var;

/// Ordering of monomials within one block of variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Inner {
    Lex,
    GrevLex,
}

/// A monomial order. Variable lists give the ranking, largest first.
/// Variables missing from every list are compared last, by the canonical
/// [`Var`] ranking under lex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex(Vec<Var>),
    GrevLex(Vec<Var>),
    /// Elimination order: `high` dominates `low`.
    Block {
        high: Vec<Var>,
        high_order: Inner,
        low: Vec<Var>,
        low_order: Inner,
    },
    /// Any number of blocks, earlier blocks dominating later ones.
    Product(Vec<(Vec<Var>, Inner)>),
}

impl MonomialOrder {
    pub fn block(high: Vec<Var>, low: Vec<Var>) -> Self {
        MonomialOrder::Block {
            high,
            high_order: Inner::GrevLex,
            low,
            low_order: Inner::GrevLex,
        }
    }

    fn listed(&self, v: Var) -> bool {
        match self {
            MonomialOrder::Lex(vs) | MonomialOrder::GrevLex(vs) => vs.contains(&v),
            MonomialOrder::Block { high, low, .. } => high.contains(&v) || low.contains(&v),
            MonomialOrder::Product(blocks) => blocks.iter().any(|(vs, _)| vs.contains(&v)),
        }
    }
}

fn exps(m: &Monomial, vars: &[Var]) -> Vec<u32> {
    vars.iter().map(|&v| m.exponent(v)).collect()
}

fn cmp_block(inner: Inner, a: &[u32], b: &[u32]) -> Ordering {
    match inner {
        Inner::Lex => a.cmp(b),
        Inner::GrevLex => {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| {
                for (x, y) in a.iter().zip(b.iter()).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            })
        }
    }
}

fn cmp_unlisted(order: &MonomialOrder, a: &Monomial, b: &Monomial) -> Ordering {
    let mut vars: Vec<Var> = a.vars().chain(b.vars()).filter(|&v| !order.listed(v)).collect();
    vars.sort_by(|x, y| y.cmp(x));
    vars.dedup();
    exps(a, &vars).cmp(&exps(b, &vars))
}

/// Compares two monomials under `order`.
pub fn mono_cmp(order: &MonomialOrder, a: &Monomial, b: &Monomial) -> Ordering {
    let head = match order {
        MonomialOrder::Lex(vs) => cmp_block(Inner::Lex, &exps(a, vs), &exps(b, vs)),
        MonomialOrder::GrevLex(vs) => cmp_block(Inner::GrevLex, &exps(a, vs), &exps(b, vs)),
        MonomialOrder::Block {
            high,
            high_order,
            low,
            low_order,
        } => cmp_block(*high_order, &exps(a, high), &exps(b, high))
            .then_with(|| cmp_block(*low_order, &exps(a, low), &exps(b, low))),
        MonomialOrder::Product(blocks) => blocks
            .iter()
            .map(|(vs, inner)| cmp_block(*inner, &exps(a, vs), &exps(b, vs)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal),
    };
    head.then_with(|| cmp_unlisted(order, a, b))
}
