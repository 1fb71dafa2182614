//! Expression trees over ℚ in the variables x1..xk.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expr {
    /// Nonnegative integer literal; other rationals are built with `/`.
    Int(BigInt),
    /// Zero-based variable index: `Var(0)` is x1.
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

// Binding strength used by the printer.
const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const UNARY: u8 = 3;
const POWER: u8 = 4;
const ATOM: u8 = 5;

impl Expr {
    pub fn int(n: i64) -> Self {
        Expr::Int(n.into())
    }

    pub fn var(i: usize) -> Self {
        Expr::Var(i)
    }

    fn level(&self) -> u8 {
        match self {
            Expr::Int(_) | Expr::Var(_) => ATOM,
            Expr::Pow(..) => POWER,
            Expr::Neg(_) => UNARY,
            Expr::Mul(..) | Expr::Div(..) => PRODUCT,
            Expr::Add(..) | Expr::Sub(..) => SUM,
        }
    }

    /// Largest variable index used, plus one.
    pub fn num_vars(&self) -> usize {
        match self {
            Expr::Int(_) => 0,
            Expr::Var(i) => i + 1,
            Expr::Neg(a) | Expr::Pow(a, _) => a.num_vars(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.num_vars().max(b.num_vars()),
        }
    }

    /// Direct evaluation; `PoleHit` on division by zero.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        Ok(match self {
            Expr::Int(n) => Rational::from_integer(n.clone()),
            Expr::Var(i) => point
                .get(*i)
                .cloned()
                .ok_or(Error::DimensionMismatch { expected: i + 1, found: point.len() })?,
            Expr::Neg(a) => -a.eval(point)?,
            Expr::Add(a, b) => a.eval(point)? + b.eval(point)?,
            Expr::Sub(a, b) => a.eval(point)? - b.eval(point)?,
            Expr::Mul(a, b) => a.eval(point)? * b.eval(point)?,
            Expr::Div(a, b) => {
                let d = b.eval(point)?;
                if d.is_zero() {
                    return Err(Error::PoleHit);
                }
                a.eval(point)? / d
            }
            Expr::Pow(a, e) => {
                let base = a.eval(point)?;
                if *e < 0 {
                    if base.is_zero() {
                        return Err(Error::PoleHit);
                    }
                    num_traits::pow(Rational::one() / base, e.unsigned_abs() as usize)
                } else {
                    num_traits::pow(base, *e as usize)
                }
            }
        })
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.level() < min;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Expr::Int(n) => write!(f, "{}", n)?,
            Expr::Var(i) => write!(f, "x{}", i + 1)?,
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.write(f, UNARY)?;
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write(f, SUM)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                b.write(f, PRODUCT)?;
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.write(f, PRODUCT)?;
                f.write_str(if matches!(self, Expr::Mul(..)) { "*" } else { "/" })?;
                b.write(f, UNARY)?;
            }
            Expr::Pow(a, e) => {
                a.write(f, POWER)?;
                write!(f, "^{}", e)?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Prints with the fewest parentheses that parse back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, SUM)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn b(e: Expr) -> Box<Expr> {
        Box::new(e)
    }

    #[test]
    fn printing() {
        let e = Expr::Div(b(Expr::int(1)), b(Expr::Mul(b(Expr::var(0)), b(Expr::var(1)))));
        assert_eq!(e.to_string(), "1/(x1*x2)");
        let e = Expr::Sub(b(Expr::var(0)), b(Expr::Sub(b(Expr::var(1)), b(Expr::int(2)))));
        assert_eq!(e.to_string(), "x1 - (x2 - 2)");
        let e = Expr::Pow(b(Expr::Neg(b(Expr::var(0)))), -2);
        assert_eq!(e.to_string(), "(-x1)^-2");
        let e = Expr::Neg(b(Expr::Pow(b(Expr::var(0)), 2)));
        assert_eq!(e.to_string(), "-x1^2");
    }

    #[test]
    fn evaluation() {
        let e = Expr::Div(b(Expr::int(1)), b(Expr::Sub(b(Expr::var(0)), b(Expr::var(1)))));
        assert_eq!(e.eval(&[int(3), int(1)]).unwrap(), rat(1, 2));
        assert_eq!(e.eval(&[int(1), int(1)]), Err(Error::PoleHit));
        assert_eq!(Expr::Pow(b(Expr::var(0)), -2).eval(&[int(2)]).unwrap(), rat(1, 4));
        assert_eq!(e.num_vars(), 2);
    }
}
