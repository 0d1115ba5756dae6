use std::cmp::Ordering;

use super::var::Var;

/// Power product of variables. Entries are sorted by decreasing [`Var`]
/// rank and carry positive exponents only.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub(crate) factors: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { factors: Vec::new() }
    }

    pub fn var(v: Var) -> Self {
        Monomial {
            factors: vec![(v, 1)],
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Self {
        let mut factors: Vec<(Var, u32)> = Vec::new();
        for (v, e) in pairs {
            if e == 0 {
                continue;
            }
            match factors.iter_mut().find(|(w, _)| *w == v) {
                Some(slot) => slot.1 += e,
                None => factors.push((v, e)),
            }
        }
        factors.sort_by_key(|p| std::cmp::Reverse(p.0));
        Monomial { factors }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.factors.iter().find(|(w, _)| *w == v).map_or(0, |&(_, e)| e)
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.factors.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.factors.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(other.factors.len());
        for &(v, e) in &other.factors {
            let d = self.exponent(v);
            if d > e {
                return None;
            }
            if e > d {
                out.push((v, e - d));
            }
        }
        if self.factors.iter().any(|&(v, _)| other.exponent(v) == 0) {
            return None;
        }
        Some(Monomial { factors: out })
    }

    /// Removes `v` and returns its exponent together with the rest.
    pub fn split_var(&self, v: Var) -> (u32, Monomial) {
        let mut e = 0;
        let mut rest = Vec::with_capacity(self.factors.len());
        for &(w, k) in &self.factors {
            if w == v {
                e = k;
            } else {
                rest.push((w, k));
            }
        }
        (e, Monomial { factors: rest })
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let factors = self
            .factors
            .iter()
            .filter_map(|&(v, e)| {
                let m = e.min(other.exponent(v));
                (m > 0).then_some((v, m))
            })
            .collect();
        Monomial { factors }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut pairs = self.factors.clone();
        for &(v, e) in &other.factors {
            match pairs.iter_mut().find(|(w, _)| *w == v) {
                Some(slot) => slot.1 = slot.1.max(e),
                None => pairs.push((v, e)),
            }
        }
        pairs.sort_by_key(|p| std::cmp::Reverse(p.0));
        Monomial { factors: pairs }
    }

    pub fn diff_part(&self) -> &[(Var, u32)] {
        let k = self.factors.iter().take_while(|(v, _)| v.is_diff()).count();
        &self.factors[..k]
    }

    pub fn coeff_part(&self) -> &[(Var, u32)] {
        let k = self.factors.iter().take_while(|(v, _)| v.is_diff()).count();
        &self.factors[k..]
    }

    /// Degree in derivative variables only.
    pub fn diff_degree(&self) -> u32 {
        self.diff_part().iter().map(|&(_, e)| e).sum()
    }
}

fn lex(a: &[(Var, u32)], b: &[(Var, u32)]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.0.cmp(&y.0) {
            Ordering::Equal => match x.1.cmp(&y.1) {
                Ordering::Equal => continue,
                o => return o,
            },
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// Canonical term order: lex on derivative variables (higher derivatives
/// dominate), then graded lex on the independent variable and parameters.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        lex(self.diff_part(), other.diff_part()).then_with(|| {
            let (a, b) = (self.coeff_part(), other.coeff_part());
            let da: u32 = a.iter().map(|&(_, e)| e).sum();
            let db: u32 = b.iter().map(|&(_, e)| e).sum();
            da.cmp(&db).then_with(|| lex(a, b))
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
