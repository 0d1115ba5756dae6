//! From syntax trees to polynomials, rational functions and ADEs.

use std::collections::BTreeSet;

use crate::arith::{DepId, Poly, Var, VarTable};
use crate::diffpoly::{normalize_ade, Ade, RatFunc};
use crate::error::{Error, Result};

use super::parse::{parse_equation, BinOp, EquationAst, Expr};

fn dep_var(table: &mut VarTable, name: &str, arg: &str, order: u32) -> Result<Var> {
    if arg != table.indep_name() {
        return Err(Error::arg(format!(
            "{name}({arg}) uses '{arg}' but the independent variable is '{}'",
            table.indep_name()
        )));
    }
    if name == table.indep_name() {
        return Err(Error::arg(format!(
            "cannot differentiate the independent variable as {name}({arg})"
        )));
    }
    Ok(Var::diff(table.dep(name)?, order))
}

/// Evaluates an expression. Bare names resolve to the independent variable,
/// an already declared function, or else a parameter.
pub fn expr_to_ratfunc(e: &Expr, table: &mut VarTable) -> Result<RatFunc> {
    Ok(match e {
        Expr::Num(n) => RatFunc::from_poly(Poly::constant(n.clone())),
        Expr::Name { name, primes } => {
            let v = if name == table.indep_name() {
                if *primes > 0 {
                    return Err(Error::arg("primes on the independent variable"));
                }
                Var::Indep
            } else if let Some(d) = table.lookup_dep(name) {
                Var::diff(d, *primes)
            } else if *primes > 0 {
                Var::diff(table.dep(name)?, *primes)
            } else {
                table.param(name)?
            };
            RatFunc::from_poly(Poly::var(v))
        }
        Expr::Apply { name, arg, primes } => {
            RatFunc::from_poly(Poly::var(dep_var(table, name, arg, *primes)?))
        }
        Expr::Diff { name, arg, order } => RatFunc::from_poly(Poly::var(dep_var(table, name, arg, *order)?)),
        Expr::Neg(a) => expr_to_ratfunc(a, table)?.neg(),
        Expr::Pow(a, k) => expr_to_ratfunc(a, table)?.pow(*k),
        Expr::Bin(op, a, b) => {
            let a = expr_to_ratfunc(a, table)?;
            let b = expr_to_ratfunc(b, table)?;
            match op {
                BinOp::Add => a.add(&b),
                BinOp::Sub => a.sub(&b),
                BinOp::Mul => a.mul(&b),
                BinOp::Div => a.div(&b)?,
            }
            .cancel()
        }
    })
}

/// Registers every applied, primed or differentiated name as a function so
/// that bare occurrences elsewhere in the same equation resolve to it.
fn declare_deps(e: &Expr, table: &mut VarTable) -> Result<()> {
    match e {
        Expr::Apply { name, .. } | Expr::Diff { name, .. } => {
            if name != table.indep_name() {
                table.dep(name)?;
            }
        }
        Expr::Name { name, primes } if *primes > 0 && name != table.indep_name() => {
            table.dep(name)?;
        }
        Expr::Name { .. } | Expr::Num(_) => {}
        Expr::Neg(a) | Expr::Pow(a, _) => declare_deps(a, table)?,
        Expr::Bin(_, a, b) => {
            declare_deps(a, table)?;
            declare_deps(b, table)?;
        }
    }
    Ok(())
}

fn equation_ratfunc(ast: &EquationAst, table: &mut VarTable) -> Result<RatFunc> {
    declare_deps(&ast.lhs, table)?;
    if let Some(r) = &ast.rhs {
        declare_deps(r, table)?;
    }
    let lhs = expr_to_ratfunc(&ast.lhs, table)?;
    match &ast.rhs {
        Some(r) => Ok(lhs.sub(&expr_to_ratfunc(r, table)?)),
        None => Ok(lhs),
    }
}

fn deps_of(p: &Poly) -> BTreeSet<DepId> {
    p.vars().into_iter().filter_map(|v| v.dep()).collect()
}

/// `lhs - rhs` with denominators cleared, as a primitive polynomial.
pub fn parse_poly(text: &str, table: &mut VarTable) -> Result<Poly> {
    let ast = parse_equation(text)?;
    let r = equation_ratfunc(&ast, table)?.cancel();
    if r.is_zero() {
        return Err(Error::arg("equation is identically zero"));
    }
    Ok(r.num().primitive())
}

/// An ADE in exactly one unknown function.
pub fn parse_ade(text: &str, table: &mut VarTable) -> Result<Ade> {
    let ast = parse_equation(text)?;
    let r = equation_ratfunc(&ast, table)?.cancel();
    let deps = deps_of(r.num());
    let dep = match deps.len() {
        1 => *deps.iter().next().expect("one element"),
        0 => return Err(Error::arg("equation involves no unknown function")),
        _ => return Err(Error::arg("equation involves more than one unknown function")),
    };
    normalize_ade(&r, &RatFunc::from_poly(Poly::zero()), dep)
}

/// `name = expression`, for example `z=y/(x+y)`. Returns the output name
/// and the expression.
pub fn parse_rational_spec(text: &str, table: &mut VarTable) -> Result<(String, RatFunc)> {
    let ast = parse_equation(text)?;
    let Some(rhs) = &ast.rhs else {
        return Err(Error::arg("expected 'name = expression'"));
    };
    let name = match &ast.lhs {
        Expr::Name { name, primes: 0 } => name.clone(),
        Expr::Apply { name, arg, primes: 0 } if arg == table.indep_name() => name.clone(),
        _ => return Err(Error::arg("left-hand side of a spec must be a plain name")),
    };
    if contains_derivative(rhs) {
        return Err(Error::arg(
            "derivatives are not supported inside a spec; use the derivative operation",
        ));
    }
    if table.lookup_dep(&name).is_some() || table.lookup_param(&name).is_some() || name == table.indep_name()
    {
        return Err(Error::arg(format!("output name '{name}' is already in use")));
    }
    let r = expr_to_ratfunc(rhs, table)?.cancel();
    Ok((name, r))
}

fn contains_derivative(e: &Expr) -> bool {
    match e {
        Expr::Diff { .. } => true,
        Expr::Name { primes, .. } | Expr::Apply { primes, .. } => *primes > 0,
        Expr::Num(_) => false,
        Expr::Neg(a) | Expr::Pow(a, _) => contains_derivative(a),
        Expr::Bin(_, a, b) => contains_derivative(a) || contains_derivative(b),
    }
}

/// Equations from a file: one per line, `#` starts a comment.
pub fn read_equations(text: &str) -> Vec<String> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::to_owned)
        .collect()
}
