//! Recursive-descent parser.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' '-'? int)*
//! atom  := int | variable | '(' expr ')'
//! ```
//!
//! Variables are `x1..xk`; `eps1..epsk` is accepted as a synonym so printed
//! output can be fed back in. Positions are zero-based character offsets.

use num_bigint::BigInt;

use super::ast::Expr;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    k: usize,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), start));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(syntax(i, format!("unexpected character '{}'", c)));
        }
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let mut base = self.atom()?;
        while self.eat('^') {
            let neg = self.eat('-');
            let pos = self.pos();
            match self.bump() {
                (Tok::Int(n), _) => {
                    let e: i64 = n.try_into().map_err(|_| syntax(pos, "exponent too large"))?;
                    base = Expr::Pow(Box::new(base), if neg { -e } else { e });
                }
                _ => return Err(syntax(pos, "expected an integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.bump() {
            (Tok::Int(n), _) => Ok(Expr::Int(n)),
            (Tok::Ident(name), _) => self.variable(&name, pos),
            (Tok::Sym('('), _) => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(syntax(self.pos(), "expected ')'"));
                }
                Ok(e)
            }
            (Tok::End, _) => Err(syntax(pos, "unexpected end of input")),
            (Tok::Sym(c), _) => Err(syntax(pos, format!("unexpected '{}'", c))),
        }
    }

    fn variable(&self, name: &str, pos: usize) -> Result<Expr> {
        let digits = name.strip_prefix("eps").or_else(|| name.strip_prefix('x'));
        let index = digits
            .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()) && !d.starts_with('0'))
            .and_then(|d| d.parse::<usize>().ok());
        match index {
            Some(i) if i >= 1 && i <= self.k => Ok(Expr::Var(i - 1)),
            _ => Err(Error::UnknownVariable { name: name.to_string(), pos }),
        }
    }
}

/// Parses `text` with variables x1..xk.
pub fn parse_expr(text: &str, k: usize) -> Result<Expr> {
    let mut p = Parser { toks: lex(text)?, at: 0, k };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

/// Largest index among identifiers of the form x<i> or eps<i>, used to infer
/// the dimension when none is given.
pub fn max_variable_index(text: &str) -> usize {
    lex(text)
        .unwrap_or_default()
        .iter()
        .filter_map(|(t, _)| match t {
            Tok::Ident(s) => s.strip_prefix("eps").or_else(|| s.strip_prefix('x')).and_then(|d| d.parse::<usize>().ok()),
            _ => None,
        })
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(e: Expr) -> Box<Expr> {
        Box::new(e)
    }

    #[test]
    fn precedence() {
        let e = parse_expr("1/(x1*x2)", 2).unwrap();
        assert_eq!(e, Expr::Div(b(Expr::int(1)), b(Expr::Mul(b(Expr::var(0)), b(Expr::var(1))))));
        // ^ binds tighter than unary minus, which binds tighter than * and /.
        assert_eq!(parse_expr("-x1^2", 1).unwrap(), Expr::Neg(b(Expr::Pow(b(Expr::var(0)), 2))));
        assert_eq!(
            parse_expr("-x1*x2", 2).unwrap(),
            Expr::Mul(b(Expr::Neg(b(Expr::var(0)))), b(Expr::var(1)))
        );
        assert_eq!(
            parse_expr("x1 - x2 - 1", 2).unwrap(),
            Expr::Sub(b(Expr::Sub(b(Expr::var(0)), b(Expr::var(1)))), b(Expr::int(1)))
        );
        assert_eq!(parse_expr("x1/x2/x1", 2).unwrap().to_string(), "x1/x2/x1");
        assert_eq!(parse_expr("x1^-2", 1).unwrap(), Expr::Pow(b(Expr::var(0)), -2));
        assert_eq!(parse_expr("eps2", 2).unwrap(), Expr::var(1));
    }

    #[test]
    fn example_expression() {
        let e = parse_expr("(x1+2*x2)/(x1*(x1+x2)*x2)", 2).unwrap();
        assert_eq!(e.to_string(), "(x1 + 2*x2)/(x1*(x1 + x2)*x2)");
    }

    #[test]
    fn errors() {
        assert_eq!(parse_expr("x3", 2), Err(Error::UnknownVariable { name: "x3".into(), pos: 0 }));
        assert_eq!(parse_expr("1 + y", 2), Err(Error::UnknownVariable { name: "y".into(), pos: 4 }));
        assert!(matches!(parse_expr("x0", 2), Err(Error::UnknownVariable { .. })));
        assert!(matches!(parse_expr("(x1", 2), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_expr("x1 +", 2), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_expr("x1 $ 2", 2), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_expr("x1^x2", 2), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_expr("x1 x2", 2), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_expr("", 2), Err(Error::Syntax { pos: 0, .. })));
    }

    #[test]
    fn dimension_inference() {
        assert_eq!(max_variable_index("x1 + eps3*x2"), 3);
        assert_eq!(max_variable_index("7"), 0);
    }
}
