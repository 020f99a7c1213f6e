use super::ast::{Binder, CmpOp, Cond, Expr, IntExpr, IntOp, Literal};
use super::lexer::{lex, Tok, Token};
use super::PresentationError;

/// Recursive-descent parser over a token stream.
pub(crate) struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: usize,
}

fn is_sym(t: Option<&Tok>, s: &str) -> bool {
    matches!(t, Some(Tok::Sym(x)) if *x == s)
}

impl Parser {
    pub fn new(text: &str) -> Result<Self, PresentationError> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            end: text.len(),
        })
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    /// Byte offset of the next token, or end of input.
    pub fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.at)
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn err(&self, msg: impl Into<String>) -> PresentationError {
        PresentationError::syntax(self.offset(), msg)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    pub fn eat_sym(&mut self, s: &str) -> bool {
        if is_sym(self.peek(), s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect_sym(&mut self, s: &str) -> Result<(), PresentationError> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.err(format!("expected {s:?}")))
        }
    }

    pub fn eat_keyword(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(x)) if x == kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn ident(&mut self) -> Result<String, PresentationError> {
        match self.peek() {
            Some(Tok::Ident(x)) => {
                let x = x.clone();
                self.pos += 1;
                Ok(x)
            }
            _ => Err(self.err("expected a name")),
        }
    }

    pub fn expect_end(&self) -> Result<(), PresentationError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }

    // expr := term (('+' | '-') term)*
    pub fn expr(&mut self) -> Result<Expr, PresentationError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_sym("+") {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat_sym("-") {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    // term := unary (('*' | '.' | '/') unary)*
    fn term(&mut self) -> Result<Expr, PresentationError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat_sym("*") || self.eat_sym(".") {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat_sym("/") {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, PresentationError> {
        if self.eat_sym("-") {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat_sym("^") {
            return Ok(Expr::Pow(Box::new(base), self.exponent()?));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<IntExpr, PresentationError> {
        if self.eat_sym("-") {
            return Ok(IntExpr::Neg(Box::new(self.exponent()?)));
        }
        match self.bump() {
            Some(Tok::Int(k)) => Ok(IntExpr::Lit(k)),
            Some(Tok::Ident(v)) => Ok(IntExpr::Var(v)),
            Some(Tok::Sym("(")) => {
                let k = self.int_expr()?;
                self.expect_sym(")")?;
                Ok(k)
            }
            _ => {
                self.pos -= 1;
                Err(self.err("expected an integer exponent"))
            }
        }
    }

    fn atom(&mut self) -> Result<Expr, PresentationError> {
        match self.peek().cloned() {
            Some(Tok::Int(k)) => {
                self.pos += 1;
                Ok(Expr::Int(IntExpr::Lit(k)))
            }
            Some(Tok::Sym("(")) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect_sym(")")?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let call = is_sym(self.peek(), "(");
                match name.as_str() {
                    "sum" | "prod" if call => self.loop_node(&name),
                    "E" if matches!(self.peek(), Some(Tok::Brace(_))) => match self.bump() {
                        Some(Tok::Brace(s)) => Ok(Expr::Literal(Literal::Idempotent(s))),
                        _ => unreachable!(),
                    },
                    "g" if matches!(self.peek(), Some(Tok::Bracket(_))) => match self.bump() {
                        Some(Tok::Bracket(s)) => Ok(Expr::Literal(Literal::Permutation(s))),
                        _ => unreachable!(),
                    },
                    "q" if !call => Ok(Expr::Q),
                    "z" if !call => Ok(Expr::Zeta),
                    _ if call => {
                        self.pos += 1;
                        let args = self.int_args()?;
                        Ok(Expr::Call(name, args))
                    }
                    _ => Ok(Expr::Name(name)),
                }
            }
            _ => Err(self.err("expected an expression")),
        }
    }

    fn loop_node(&mut self, kw: &str) -> Result<Expr, PresentationError> {
        self.expect_sym("(")?;
        let b = self.binder()?;
        let c = if self.eat_keyword("where") {
            Some(self.cond()?)
        } else {
            None
        };
        self.expect_sym(",")?;
        let body = self.expr()?;
        self.expect_sym(")")?;
        Ok(if kw == "sum" {
            Expr::Sum(Box::new(b), c, Box::new(body))
        } else {
            Expr::Prod(Box::new(b), c, Box::new(body))
        })
    }

    /// Comma-separated integer arguments after an opening parenthesis.
    fn int_args(&mut self) -> Result<Vec<IntExpr>, PresentationError> {
        let mut args = Vec::new();
        if self.eat_sym(")") {
            return Ok(args);
        }
        loop {
            args.push(self.int_expr()?);
            if self.eat_sym(")") {
                return Ok(args);
            }
            self.expect_sym(",")?;
        }
    }

    pub fn binder(&mut self) -> Result<Binder, PresentationError> {
        let var = self.ident()?;
        self.expect_sym("=")?;
        let lo = self.int_expr()?;
        self.expect_sym("..")?;
        let hi = self.int_expr()?;
        Ok(Binder { var, lo, hi })
    }

    pub fn int_expr(&mut self) -> Result<IntExpr, PresentationError> {
        let mut lhs = self.int_term()?;
        loop {
            let op = if self.eat_sym("+") {
                IntOp::Add
            } else if self.eat_sym("-") {
                IntOp::Sub
            } else {
                return Ok(lhs);
            };
            lhs = IntExpr::Bin(op, Box::new(lhs), Box::new(self.int_term()?));
        }
    }

    fn int_term(&mut self) -> Result<IntExpr, PresentationError> {
        let mut lhs = self.int_unary()?;
        loop {
            let op = if self.eat_sym("*") {
                IntOp::Mul
            } else if self.eat_sym("/") {
                IntOp::Div
            } else if self.eat_sym("%") {
                IntOp::Rem
            } else {
                return Ok(lhs);
            };
            lhs = IntExpr::Bin(op, Box::new(lhs), Box::new(self.int_unary()?));
        }
    }

    fn int_unary(&mut self) -> Result<IntExpr, PresentationError> {
        if self.eat_sym("-") {
            return Ok(IntExpr::Neg(Box::new(self.int_unary()?)));
        }
        match self.bump() {
            Some(Tok::Int(k)) => Ok(IntExpr::Lit(k)),
            Some(Tok::Ident(v)) => {
                if self.eat_sym("(") {
                    Ok(IntExpr::Call(v, self.int_args()?))
                } else {
                    Ok(IntExpr::Var(v))
                }
            }
            Some(Tok::Sym("(")) => {
                let k = self.int_expr()?;
                self.expect_sym(")")?;
                Ok(k)
            }
            _ => {
                self.pos -= 1;
                Err(self.err("expected an integer expression"))
            }
        }
    }

    // cond := conj ('or' conj)*;  conj := cmp ('and' cmp)*
    pub fn cond(&mut self) -> Result<Cond, PresentationError> {
        let mut lhs = self.conj()?;
        while self.eat_keyword("or") {
            lhs = Cond::Or(Box::new(lhs), Box::new(self.conj()?));
        }
        Ok(lhs)
    }

    fn conj(&mut self) -> Result<Cond, PresentationError> {
        let mut lhs = self.cond_atom()?;
        while self.eat_keyword("and") {
            lhs = Cond::And(Box::new(lhs), Box::new(self.cond_atom()?));
        }
        Ok(lhs)
    }

    fn cond_atom(&mut self) -> Result<Cond, PresentationError> {
        if is_sym(self.peek(), "(") {
            // A parenthesis opens either a nested condition or an integer operand.
            let save = self.pos;
            self.pos += 1;
            if let Ok(c) = self.cond() {
                if self.eat_sym(")") {
                    return Ok(c);
                }
            }
            self.pos = save;
        }
        let a = self.int_expr()?;
        let op = match self.peek() {
            Some(Tok::Sym("==")) => CmpOp::Eq,
            Some(Tok::Sym("!=")) => CmpOp::Ne,
            Some(Tok::Sym("<")) => CmpOp::Lt,
            Some(Tok::Sym("<=")) => CmpOp::Le,
            Some(Tok::Sym(">")) => CmpOp::Gt,
            Some(Tok::Sym(">=")) => CmpOp::Ge,
            _ => return Err(self.err("expected a comparison")),
        };
        self.pos += 1;
        Ok(Cond::Cmp(op, a, self.int_expr()?))
    }

    /// True when the next token starts a `where` clause or is `kw`.
    pub fn next_is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(x)) if x == kw)
    }

    pub fn eat_int(&mut self) -> Option<i64> {
        match self.peek() {
            Some(Tok::Int(k)) => {
                let k = *k;
                self.pos += 1;
                Some(k)
            }
            _ => None,
        }
    }
}

/// Parses one expression; the whole input must be consumed.
pub fn parse_expression(text: &str) -> Result<Expr, PresentationError> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    p.expect_end()?;
    Ok(e)
}

/// Parses one integer-valued condition.
pub fn parse_condition(text: &str) -> Result<Cond, PresentationError> {
    let mut p = Parser::new(text)?;
    let c = p.cond()?;
    p.expect_end()?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(s: &str) {
        let e = parse_expression(s).unwrap();
        let printed = e.to_string();
        assert_eq!(parse_expression(&printed).unwrap(), e, "{s} -> {printed}");
    }

    #[test]
    fn product_of_three() {
        let e = parse_expression("g1 * g2 * g1").unwrap();
        let g = |s: &str| Box::new(Expr::Name(s.into()));
        assert_eq!(e, Expr::Mul(Box::new(Expr::Mul(g("g1"), g("g2"))), g("g1")));
    }

    #[test]
    fn averaged_sum() {
        let e = parse_expression("(1/d) * sum(s=1..d, (g0 * g1^-1)^s)").unwrap();
        let Expr::Mul(c, body) = &e else {
            panic!("{e:?}")
        };
        assert!(matches!(**c, Expr::Div(..)));
        let Expr::Sum(b, None, inner) = &**body else {
            panic!("{body:?}")
        };
        assert_eq!(b.var, "s");
        assert_eq!(b.hi, IntExpr::Var("d".into()));
        assert!(matches!(**inner, Expr::Pow(_, IntExpr::Var(_))));
    }

    #[test]
    fn printing_round_trips() {
        for s in [
            "g(1) * g(2) * g(1)",
            "(1/d) * sum(s = 1..d, (gt(0) * gt(1)^-1)^s)",
            "g(i)^2 - (1 + (q - q^-1) * e(i) * g(i))",
            "sum(k = 0..P - 1 where pos(i, k) == pos(i + 1, k) and (k < 3 or k > 5), E(k))",
            "-(a . b) + -c / 2 - (x - y)",
            "prod(k = 1..p - 1, bw(k)) * z^(d/p)",
            "E{1,2|} * g[2 1] - 3*x^-(k)",
            "((a^2)^3)^-1",
        ] {
            roundtrip(s);
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_expression("g(1) * * g(2)") {
            Err(PresentationError::Syntax { col, .. }) => assert_eq!(col, 8),
            other => panic!("{other:?}"),
        }
        assert!(parse_expression("sum(s = 1..d g(1))").is_err());
        assert!(parse_expression("g(1))").is_err());
    }
}
