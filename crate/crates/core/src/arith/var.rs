use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Identifier of a differential indeterminate (a dependent function name).
pub type DepId = u32;

/// A ring variable: the independent variable, a constant parameter, or a
/// derivative `y_j^(k)` of a differential indeterminate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    Indep,
    Param(u32),
    Diff { dep: DepId, order: u32 },
}

impl Var {
    pub fn diff(dep: DepId, order: u32) -> Var {
        Var::Diff { dep, order }
    }

    pub fn is_diff(&self) -> bool {
        matches!(self, Var::Diff { .. })
    }

    pub fn dep(&self) -> Option<DepId> {
        match *self {
            Var::Diff { dep, .. } => Some(dep),
            _ => None,
        }
    }

    pub fn order(&self) -> Option<u32> {
        match *self {
            Var::Diff { order, .. } => Some(order),
            _ => None,
        }
    }

    fn rank(&self) -> (u8, u32, std::cmp::Reverse<u32>) {
        match *self {
            Var::Indep => (1, 0, std::cmp::Reverse(0)),
            Var::Param(i) => (0, 0, std::cmp::Reverse(i)),
            Var::Diff { dep, order } => (2, order, std::cmp::Reverse(dep)),
        }
    }
}

/// Ranking used for canonical storage and printing: derivatives above the
/// independent variable above parameters; among derivatives, higher order
/// first, then lower indeterminate id.
impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Names of the independent variable, parameters and dependent functions of
/// one computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarTable {
    indep: String,
    params: Vec<String>,
    deps: Vec<String>,
}

impl Default for VarTable {
    fn default() -> Self {
        VarTable::new("x")
    }
}

impl VarTable {
    pub fn new(indep: &str) -> Self {
        VarTable {
            indep: indep.to_string(),
            params: Vec::new(),
            deps: Vec::new(),
        }
    }

    pub fn indep_name(&self) -> &str {
        &self.indep
    }

    pub fn param(&mut self, name: &str) -> Result<Var> {
        if name == self.indep {
            return Err(Error::arg(format!("`{name}` is the independent variable")));
        }
        if self.deps.iter().any(|d| d == name) {
            return Err(Error::arg(format!("`{name}` is already a dependent function")));
        }
        if let Some(i) = self.params.iter().position(|p| p == name) {
            return Ok(Var::Param(i as u32));
        }
        self.params.push(name.to_string());
        Ok(Var::Param(self.params.len() as u32 - 1))
    }

    pub fn dep(&mut self, name: &str) -> Result<DepId> {
        if name == self.indep {
            return Err(Error::arg(format!("`{name}` is the independent variable")));
        }
        if self.params.iter().any(|p| p == name) {
            return Err(Error::arg(format!("`{name}` is already a parameter")));
        }
        if let Some(i) = self.deps.iter().position(|d| d == name) {
            return Ok(i as DepId);
        }
        self.deps.push(name.to_string());
        Ok(self.deps.len() as DepId - 1)
    }

    /// Registers a dependent name that is not yet used, suffixing `base`
    /// with digits when needed.
    pub fn fresh_dep(&mut self, base: &str) -> DepId {
        let mut name = base.to_string();
        let mut i = 0;
        while name == self.indep || self.params.contains(&name) || self.deps.contains(&name) {
            i += 1;
            name = format!("{base}{i}");
        }
        self.deps.push(name);
        self.deps.len() as DepId - 1
    }

    pub fn lookup_dep(&self, name: &str) -> Option<DepId> {
        self.deps.iter().position(|d| d == name).map(|i| i as DepId)
    }

    pub fn lookup_param(&self, name: &str) -> Option<Var> {
        self.params
            .iter()
            .position(|p| p == name)
            .map(|i| Var::Param(i as u32))
    }

    pub fn dep_name(&self, dep: DepId) -> &str {
        &self.deps[dep as usize]
    }

    pub fn param_name(&self, i: u32) -> &str {
        &self.params[i as usize]
    }

    pub fn params(&self) -> impl Iterator<Item = (Var, &str)> {
        self.params
            .iter()
            .enumerate()
            .map(|(i, p)| (Var::Param(i as u32), p.as_str()))
    }

    pub fn display(&self, v: Var) -> VarDisplay<'_> {
        VarDisplay { table: self, var: v }
    }
}

pub struct VarDisplay<'a> {
    table: &'a VarTable,
    var: Var,
}

impl fmt::Display for VarDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = &self.table.indep;
        match self.var {
            Var::Indep => write!(f, "{x}"),
            Var::Param(i) => write!(f, "{}", self.table.param_name(i)),
            Var::Diff { dep, order: 0 } => write!(f, "{}({x})", self.table.dep_name(dep)),
            Var::Diff { dep, order } => {
                write!(f, "diff({}({x})", self.table.dep_name(dep))?;
                for _ in 0..order {
                    write!(f, ",{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}
