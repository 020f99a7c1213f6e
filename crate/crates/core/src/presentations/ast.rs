use std::collections::HashMap;
use std::fmt;

use super::PresentationError;

/// Integer-valued index expression: bounds, exponents, generator indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntExpr {
    Lit(i64),
    Var(String),
    Neg(Box<IntExpr>),
    Bin(IntOp, Box<IntExpr>, Box<IntExpr>),
    /// `abs`, `min`, `max`, `pos(j, k)`, `act(i, k)`.
    Call(String, Vec<IntExpr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntOp {
    Add,
    Sub,
    Mul,
    Div,
    Rem,
}

/// Integer variables in scope, including the parameters `d`, `p`, `n`, `P = d^n`.
pub type Env = HashMap<String, i64>;

impl IntExpr {
    pub fn eval(&self, env: &Env) -> Result<i64, PresentationError> {
        Ok(match self {
            IntExpr::Lit(k) => *k,
            IntExpr::Var(v) => *env
                .get(v)
                .ok_or_else(|| PresentationError::UnknownName(v.clone()))?,
            IntExpr::Neg(x) => -x.eval(env)?,
            IntExpr::Bin(op, a, b) => {
                let (a, b) = (a.eval(env)?, b.eval(env)?);
                match op {
                    IntOp::Add => a + b,
                    IntOp::Sub => a - b,
                    IntOp::Mul => a * b,
                    IntOp::Div | IntOp::Rem if b == 0 => {
                        return Err(PresentationError::Eval(format!(
                            "division by zero in {self}"
                        )))
                    }
                    IntOp::Div => a.div_euclid(b),
                    IntOp::Rem => a.rem_euclid(b),
                }
            }
            IntExpr::Call(f, args) => {
                let v: Vec<i64> = args.iter().map(|a| a.eval(env)).collect::<Result<_, _>>()?;
                call_int(f, &v, env)?
            }
        })
    }
}

fn param(env: &Env, name: &str) -> Result<i64, PresentationError> {
    env.get(name)
        .copied()
        .ok_or_else(|| PresentationError::UnknownName(name.to_string()))
}

/// Label sequence of the ordered partition with lexicographic index `k`.
fn labels(env: &Env, k: i64) -> Result<Vec<i64>, PresentationError> {
    let (d, n) = (param(env, "d")?, param(env, "n")?);
    if k < 0 || k >= d.pow(n as u32) {
        return Err(PresentationError::Eval(format!(
            "partition index {k} out of range"
        )));
    }
    let mut pos = vec![0; n as usize];
    let mut rest = k;
    for slot in pos.iter_mut().rev() {
        *slot = rest % d + 1;
        rest /= d;
    }
    Ok(pos)
}

fn call_int(f: &str, v: &[i64], env: &Env) -> Result<i64, PresentationError> {
    let arity = |k: usize| {
        if v.len() == k {
            Ok(())
        } else {
            Err(PresentationError::Eval(format!("{f} takes {k} arguments")))
        }
    };
    let point = |j: i64, n: usize| {
        if j >= 1 && j as usize <= n {
            Ok(j as usize - 1)
        } else {
            Err(PresentationError::Eval(format!(
                "{f}: point {j} out of range"
            )))
        }
    };
    match f {
        "abs" => {
            arity(1)?;
            Ok(v[0].abs())
        }
        "min" => {
            arity(2)?;
            Ok(v[0].min(v[1]))
        }
        "max" => {
            arity(2)?;
            Ok(v[0].max(v[1]))
        }
        "pos" => {
            arity(2)?;
            let pos = labels(env, v[1])?;
            Ok(pos[point(v[0], pos.len())?])
        }
        "act" => {
            arity(2)?;
            let mut pos = labels(env, v[1])?;
            let i = point(v[0], pos.len())?;
            if i + 1 >= pos.len() {
                return Err(PresentationError::Eval(format!(
                    "act: no simple reflection {}",
                    v[0]
                )));
            }
            pos.swap(i, i + 1);
            let d = param(env, "d")?;
            Ok(pos.iter().fold(0, |acc, &a| acc * d + a - 1))
        }
        _ => Err(PresentationError::UnknownName(f.to_string())),
    }
}

/// Conjunctions and disjunctions of integer comparisons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cond {
    Cmp(CmpOp, IntExpr, IntExpr),
    And(Box<Cond>, Box<Cond>),
    Or(Box<Cond>, Box<Cond>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl Cond {
    pub fn eval(&self, env: &Env) -> Result<bool, PresentationError> {
        Ok(match self {
            Cond::Cmp(op, a, b) => {
                let (a, b) = (a.eval(env)?, b.eval(env)?);
                match op {
                    CmpOp::Eq => a == b,
                    CmpOp::Ne => a != b,
                    CmpOp::Lt => a < b,
                    CmpOp::Le => a <= b,
                    CmpOp::Gt => a > b,
                    CmpOp::Ge => a >= b,
                }
            }
            Cond::And(a, b) => a.eval(env)? && b.eval(env)?,
            Cond::Or(a, b) => a.eval(env)? || b.eval(env)?,
        })
    }
}

/// `var = lo..hi`, inclusive; an empty range binds nothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binder {
    pub var: String,
    pub lo: IntExpr,
    pub hi: IntExpr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Literal {
    /// `E{1,3|2}`.
    Idempotent(String),
    /// `g[2 1 3]`.
    Permutation(String),
}

/// Algebra-valued expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Integer-valued scalar, e.g. `2` or `d`.
    Int(IntExpr),
    Q,
    Zeta,
    /// Bare identifier: an integer variable if bound, else a nullary name.
    Name(String),
    Call(String, Vec<IntExpr>),
    Literal(Literal),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Division by a scalar.
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, IntExpr),
    Sum(Box<Binder>, Option<Cond>, Box<Expr>),
    Prod(Box<Binder>, Option<Cond>, Box<Expr>),
}

impl Expr {
    /// Names referenced as calls or bare identifiers.
    pub fn names(&self, out: &mut Vec<(String, Vec<IntExpr>)>) {
        match self {
            Expr::Name(n) => out.push((n.clone(), Vec::new())),
            Expr::Call(n, a) => out.push((n.clone(), a.clone())),
            Expr::Neg(x) | Expr::Pow(x, _) | Expr::Sum(_, _, x) | Expr::Prod(_, _, x) => {
                x.names(out)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.names(out);
                b.names(out);
            }
            Expr::Int(_) | Expr::Q | Expr::Zeta | Expr::Literal(_) => {}
        }
    }
}

// Printing: every composite is parenthesized below its parent's precedence,
// so the output parses back to the same tree.

fn int_prec(e: &IntExpr) -> u8 {
    match e {
        IntExpr::Bin(IntOp::Add | IntOp::Sub, ..) => 1,
        IntExpr::Bin(..) => 2,
        IntExpr::Neg(_) => 3,
        _ => 4,
    }
}

fn write_int(f: &mut fmt::Formatter<'_>, e: &IntExpr, min: u8) -> fmt::Result {
    if int_prec(e) < min {
        write!(f, "(")?;
        write!(f, "{e}")?;
        return write!(f, ")");
    }
    write!(f, "{e}")
}

impl fmt::Display for IntExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntExpr::Lit(k) if *k < 0 => write!(f, "({k})"),
            IntExpr::Lit(k) => write!(f, "{k}"),
            IntExpr::Var(v) => write!(f, "{v}"),
            IntExpr::Neg(x) => {
                write!(f, "-")?;
                write_int(f, x, 4)
            }
            IntExpr::Bin(op, a, b) => {
                let (p, sym) = match op {
                    IntOp::Add => (1, "+"),
                    IntOp::Sub => (1, "-"),
                    IntOp::Mul => (2, "*"),
                    IntOp::Div => (2, "/"),
                    IntOp::Rem => (2, "%"),
                };
                write_int(f, a, p)?;
                write!(f, " {sym} ")?;
                write_int(f, b, p + 1)
            }
            IntExpr::Call(name, args) => {
                write!(f, "{name}(")?;
                for (k, a) in args.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Cond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cond::Cmp(op, a, b) => {
                let sym = match op {
                    CmpOp::Eq => "==",
                    CmpOp::Ne => "!=",
                    CmpOp::Lt => "<",
                    CmpOp::Le => "<=",
                    CmpOp::Gt => ">",
                    CmpOp::Ge => ">=",
                };
                write!(f, "{a} {sym} {b}")
            }
            Cond::And(a, b) => {
                match **a {
                    Cond::Or(..) => write!(f, "({a})")?,
                    _ => write!(f, "{a}")?,
                }
                write!(f, " and ")?;
                match **b {
                    Cond::Cmp(..) => write!(f, "{b}"),
                    _ => write!(f, "({b})"),
                }
            }
            Cond::Or(a, b) => {
                write!(f, "{a} or ")?;
                match **b {
                    Cond::Or(..) => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
        }
    }
}

impl fmt::Display for Binder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}..{}", self.var, self.lo, self.hi)
    }
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(_) => 3,
        Expr::Pow(..) => 4,
        _ => 5,
    }
}

fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if prec(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

fn write_exponent(f: &mut fmt::Formatter<'_>, k: &IntExpr) -> fmt::Result {
    match k {
        IntExpr::Lit(_) | IntExpr::Var(_) => write!(f, "{k}"),
        IntExpr::Neg(x) if matches!(**x, IntExpr::Lit(_) | IntExpr::Var(_)) => write!(f, "-{x}"),
        _ => write!(f, "({k})"),
    }
}

fn write_loop(
    f: &mut fmt::Formatter<'_>,
    kw: &str,
    b: &Binder,
    c: &Option<Cond>,
    body: &Expr,
) -> fmt::Result {
    write!(f, "{kw}({b}")?;
    if let Some(c) = c {
        write!(f, " where {c}")?;
    }
    write!(f, ", {body})")
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(k) => match k {
                IntExpr::Lit(v) if *v >= 0 => write!(f, "{v}"),
                IntExpr::Var(v) => write!(f, "{v}"),
                _ => write!(f, "({k})"),
            },
            Expr::Q => write!(f, "q"),
            Expr::Zeta => write!(f, "z"),
            Expr::Name(n) => write!(f, "{n}"),
            Expr::Call(n, args) => {
                write!(f, "{n}(")?;
                for (k, a) in args.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            Expr::Literal(Literal::Idempotent(s)) => write!(f, "E{s}"),
            Expr::Literal(Literal::Permutation(s)) => write!(f, "g{s}"),
            Expr::Neg(x) => {
                write!(f, "-")?;
                write_expr(f, x, 4)
            }
            Expr::Add(a, b) => {
                write_expr(f, a, 1)?;
                write!(f, " + ")?;
                write_expr(f, b, 2)
            }
            Expr::Sub(a, b) => {
                write_expr(f, a, 1)?;
                write!(f, " - ")?;
                write_expr(f, b, 2)
            }
            Expr::Mul(a, b) => {
                write_expr(f, a, 2)?;
                write!(f, " * ")?;
                write_expr(f, b, 3)
            }
            Expr::Div(a, b) => {
                write_expr(f, a, 2)?;
                write!(f, " / ")?;
                write_expr(f, b, 3)
            }
            Expr::Pow(x, k) => {
                write_expr(f, x, 5)?;
                write!(f, "^")?;
                write_exponent(f, k)
            }
            Expr::Sum(b, c, body) => write_loop(f, "sum", b, c, body),
            Expr::Prod(b, c, body) => write_loop(f, "prod", b, c, body),
        }
    }
}
