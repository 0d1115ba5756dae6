//! Lexer and recursive-descent parser for Maple-style equations.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::Rat;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rat),
    /// A bare name, possibly followed by primes (`y''`).
    Name {
        name: String,
        primes: u32,
    },
    /// `name(arg)`, possibly followed by primes.
    Apply {
        name: String,
        arg: String,
        primes: u32,
    },
    /// `diff(name(arg), arg, ..., arg)`.
    Diff {
        name: String,
        arg: String,
        order: u32,
    },
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// `lhs = rhs`; a missing right-hand side means `= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationAst {
    pub lhs: Expr,
    pub rhs: Option<Expr>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(Rat),
    Name(String),
    Prime,
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()))
        {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let int: String = chars[start..i].iter().collect();
            let mut value = if int.is_empty() {
                Rat::zero()
            } else {
                Rat::from_integer(int.parse::<BigInt>().expect("digits"))
            };
            if i < chars.len() && chars[i] == '.' {
                i += 1;
                let fs = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let frac: String = chars[fs..i].iter().collect();
                if !frac.is_empty() {
                    let scale = num_traits::pow(BigInt::from(10), frac.len());
                    value += Rat::new(frac.parse::<BigInt>().expect("digits"), scale);
                }
            }
            Tok::Num(value)
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Name(chars[start..i].iter().collect())
        } else if c == '\'' {
            i += 1;
            Tok::Prime
        } else if "+-*/^(),=".contains(c) {
            i += 1;
            Tok::Sym(c)
        } else {
            return Err(syntax(l0, c0, format!("unexpected character '{c}'")));
        };
        col += i - start;
        out.push(Token {
            tok,
            line: l0,
            column: c0,
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.column)
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (l, c) = self.here();
        Err(syntax(l, c, msg))
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(format!("expected '{c}'"))
        }
    }

    fn name(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Name(n) => {
                self.pos += 1;
                Ok(n)
            }
            _ => self.fail("expected a name"),
        }
    }

    fn primes(&mut self) -> u32 {
        let mut k = 0;
        while *self.peek() == Tok::Prime {
            self.pos += 1;
            k += 1;
        }
        k
    }

    fn equation(&mut self) -> Result<EquationAst> {
        let lhs = self.expr()?;
        let rhs = if self.eat('=') { Some(self.expr()?) } else { None };
        if *self.peek() != Tok::End {
            return self.fail("unexpected input after the equation");
        }
        Ok(EquationAst { lhs, rhs })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut e = self.term()?;
        loop {
            let op = if self.eat('+') {
                BinOp::Add
            } else if self.eat('-') {
                BinOp::Sub
            } else {
                return Ok(e);
            };
            let r = self.term()?;
            e = Expr::Bin(op, Box::new(e), Box::new(r));
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut e = self.unary()?;
        loop {
            let op = if self.eat('*') {
                BinOp::Mul
            } else if self.eat('/') {
                BinOp::Div
            } else {
                return Ok(e);
            };
            let r = self.unary()?;
            e = Expr::Bin(op, Box::new(e), Box::new(r));
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            let (l, c) = self.here();
            return match self.bump() {
                Tok::Num(n) if n.is_integer() && n >= Rat::zero() => {
                    let e: u32 = n
                        .to_integer()
                        .try_into()
                        .map_err(|_| syntax(l, c, "exponent too large"))?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(syntax(l, c, "exponent must be a non-negative integer literal")),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let (l, c) = self.here();
        match self.bump() {
            Tok::Num(n) => Ok(Expr::Num(n)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Name(n) if n == "diff" && *self.peek() == Tok::Sym('(') => self.diff(),
            Tok::Name(name) => {
                let mut primes = self.primes();
                if self.eat('(') {
                    let arg = self.name()?;
                    self.expect(')')?;
                    primes += self.primes();
                    Ok(Expr::Apply { name, arg, primes })
                } else {
                    Ok(Expr::Name { name, primes })
                }
            }
            Tok::End => Err(syntax(l, c, "unexpected end of input")),
            t => Err(syntax(l, c, format!("unexpected {}", describe(&t)))),
        }
    }

    fn diff(&mut self) -> Result<Expr> {
        self.expect('(')?;
        let (l, c) = self.here();
        let inner = self.atom()?;
        let (name, arg, base) = match inner {
            Expr::Apply { name, arg, primes } => (name, arg, primes),
            Expr::Diff { name, arg, order } => (name, arg, order),
            _ => return Err(syntax(l, c, "diff expects a function application like y(x)")),
        };
        let mut order = base;
        while self.eat(',') {
            let (l, c) = self.here();
            let v = self.name()?;
            if v != arg {
                return Err(syntax(
                    l,
                    c,
                    format!("differentiation variable '{v}' does not match '{arg}'"),
                ));
            }
            order += 1;
        }
        if order == base {
            return self.fail("diff needs at least one differentiation variable");
        }
        self.expect(')')?;
        Ok(Expr::Diff { name, arg, order })
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number {n}"),
        Tok::Name(n) => format!("name '{n}'"),
        Tok::Prime => "'".into(),
        Tok::Sym(c) => format!("'{c}'"),
        Tok::End => "end of input".into(),
    }
}

/// Parses `expr ('=' expr)?`.
pub fn parse_equation(text: &str) -> Result<EquationAst> {
    let toks = lex(text)?;
    Parser { toks, pos: 0 }.equation()
}

/// Parses a single expression.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let eq = parse_equation(text)?;
    match eq.rhs {
        None => Ok(eq.lhs),
        Some(_) => Err(syntax(1, 1, "expected an expression, found an equation")),
    }
}
