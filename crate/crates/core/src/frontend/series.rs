//! Truncated power series and the residual check used to certify outputs.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{DepId, Rat, Var, VarTable};
use crate::diffpoly::Ade;
use crate::error::{Error, Result};

/// `sum c_i x^i + O(x^len)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    pub coeffs: Vec<Rat>,
}

impl Series {
    pub fn new(coeffs: Vec<Rat>) -> Series {
        Series { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn constant(c: Rat, len: usize) -> Series {
        let mut coeffs = vec![Rat::zero(); len];
        if len > 0 {
            coeffs[0] = c;
        }
        Series { coeffs }
    }

    /// `x` truncated to `len` terms.
    pub fn x(len: usize) -> Series {
        let mut s = Series::constant(Rat::zero(), len);
        if len > 1 {
            s.coeffs[1] = Rat::one();
        }
        s
    }

    /// `exp(a x)`.
    pub fn exp(a: &Rat, len: usize) -> Series {
        let mut coeffs = Vec::with_capacity(len);
        let mut c = Rat::one();
        for i in 0..len {
            coeffs.push(c.clone());
            c = c * a / Rat::from_integer((i as i64 + 1).into());
        }
        Series { coeffs }
    }

    pub fn truncate(&self, len: usize) -> Series {
        Series {
            coeffs: self.coeffs.iter().take(len).cloned().collect(),
        }
    }

    pub fn add(&self, o: &Series) -> Series {
        let n = self.len().min(o.len());
        Series {
            coeffs: (0..n).map(|i| &self.coeffs[i] + &o.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, o: &Series) -> Series {
        self.add(&o.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, o: &Series) -> Series {
        let n = self.len().min(o.len());
        let mut out = vec![Rat::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().take(n - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        Series { coeffs: out }
    }

    pub fn pow(&self, e: u32) -> Series {
        (0..e).fold(Series::constant(Rat::one(), self.len()), |acc, _| acc.mul(self))
    }

    /// Quotient; the divisor may start with zeros as long as the dividend
    /// starts with at least as many. Precision drops by that count.
    pub fn div(&self, o: &Series) -> Result<Series> {
        let shift = o
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| Error::DivisionByZero("division by a zero series".into()))?;
        if self.coeffs.iter().take(shift).any(|c| !c.is_zero()) {
            return Err(Error::DivisionByZero("quotient is not a power series".into()));
        }
        let a = &self.coeffs[shift.min(self.len())..];
        let b = &o.coeffs[shift..];
        let n = a.len().min(b.len());
        let mut q: Vec<Rat> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = a[k].clone();
            for j in 0..k {
                acc -= &q[j] * &b[k - j];
            }
            q.push(acc / &b[0]);
        }
        Ok(Series { coeffs: q })
    }

    /// Formal derivative; one coefficient shorter.
    pub fn derivative(&self) -> Series {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer((i as i64).into()))
                .collect(),
        }
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}] + O(x^{})", parts.join(", "), self.len())
    }
}

/// A truncated solution for one unknown function, with all parameters
/// fixed to numbers.
#[derive(Clone, Debug)]
pub struct SeriesWitness {
    pub dep: DepId,
    pub series: Series,
    pub params: BTreeMap<String, Rat>,
}

/// x-adic valuation of a residual, or `Infinite` when it vanishes to the
/// available precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(usize),
    Infinite,
}

/// Substitutes the witness and its derivatives into `ade.poly` and reports
/// the valuation of the residual, computed to precision `t - ade.order`.
pub fn verify_series(ade: &Ade, w: &SeriesWitness, t: usize, table: &VarTable) -> Result<Valuation> {
    if w.dep != ade.dep {
        return Err(Error::arg("witness is for a different function"));
    }
    let n = ade.order as usize;
    if t < n + 2 || w.series.len() < t {
        return Err(Error::arg(format!(
            "precision {t} too small for order {n} or witness of length {}",
            w.series.len()
        )));
    }
    let prec = t - n;
    let mut derivs = vec![w.series.truncate(t)];
    for i in 0..n {
        let d = derivs[i].derivative();
        derivs.push(d);
    }
    let derivs: Vec<Series> = derivs.into_iter().map(|s| s.truncate(prec)).collect();
    let x = Series::x(prec);
    let mut residual = Series::constant(Rat::zero(), prec);
    for (m, c) in ade.poly.terms() {
        let mut term = Series::constant(c.clone(), prec);
        for &(v, e) in m.factors() {
            let base = match v {
                Var::Indep => x.clone(),
                Var::Param(i) => {
                    let name = table.param_name(i);
                    let val = w
                        .params
                        .get(name)
                        .ok_or_else(|| Error::arg(format!("parameter {name} is not bound")))?;
                    Series::constant(val.clone(), prec)
                }
                Var::Diff { dep, order } => {
                    if dep != ade.dep {
                        return Err(Error::arg("equation involves another function"));
                    }
                    derivs[order as usize].clone()
                }
            };
            term = term.mul(&base.pow(e));
        }
        residual = residual.add(&term);
    }
    Ok(match residual.valuation() {
        Some(v) => Valuation::Finite(v),
        None => Valuation::Infinite,
    })
}
