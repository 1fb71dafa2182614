//! Linear forms and their canonical representatives.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{Polynomial, Rational, RationalMatrix, RationalVector};

/// A nonzero vector v read as the function ε ↦ ⟨v, ε⟩.
pub type LinearForm = RationalVector;

/// A denominator: forms with positive exponents.
pub type Poles = Vec<(LinearForm, u32)>;

/// Primitive pseudo-positive representative `p` and scalar `c` with `v = c·p`.
pub fn canonical_form(v: &LinearForm) -> (LinearForm, Rational) {
    v.pseudo_positive_primitive()
}

pub fn rank(vs: &[RationalVector]) -> usize {
    match vs.first() {
        None => 0,
        Some(v) => RationalMatrix::from_rows(vs, v.dim()).rank(),
    }
}

pub fn independent(vs: &[RationalVector]) -> bool {
    rank(vs) == vs.len()
}

pub fn pole_forms(poles: &[(LinearForm, u32)]) -> Vec<LinearForm> {
    poles.iter().map(|(l, _)| l.clone()).collect()
}

pub fn total_exponent(poles: &[(LinearForm, u32)]) -> u32 {
    poles.iter().map(|(_, s)| s).sum()
}

/// ∏ L_i^{s_i} as a polynomial.
pub fn denominator_polynomial(nvars: usize, poles: &[(LinearForm, u32)]) -> Polynomial {
    poles.iter().fold(Polynomial::one(nvars), |acc, (l, s)| acc.mul(&Polynomial::linear(l).pow(*s)))
}

/// ∏ ⟨L_i, x⟩^{s_i}; errors if a factor vanishes.
pub fn eval_denominator(poles: &[(LinearForm, u32)], point: &[Rational]) -> Result<Rational> {
    let pt = RationalVector(point.to_vec());
    let mut d = Rational::one();
    for (l, s) in poles {
        let v = l.dot(&pt);
        if v.is_zero() {
            return Err(Error::PoleHit);
        }
        d *= num_traits::pow(v, *s as usize);
    }
    Ok(d)
}

/// Human-readable fraction such as `eps2^2/(eps1*(eps1 + eps2)^2)`.
pub fn fraction_string(numerator: &Polynomial, poles: &[(LinearForm, u32)]) -> String {
    if poles.is_empty() {
        return numerator.to_string();
    }
    let num = if numerator.num_terms() > 1 { format!("({})", numerator) } else { numerator.to_string() };
    let den: Vec<String> = poles
        .iter()
        .map(|(l, s)| {
            let p = Polynomial::linear(l);
            let base = if p.num_terms() > 1 { format!("({})", p) } else { p.to_string() };
            if *s == 1 {
                base
            } else {
                format!("{}^{}", base, s)
            }
        })
        .collect();
    if den.len() == 1 {
        format!("{}/{}", num, den[0])
    } else {
        format!("{}/({})", num, den.join("*"))
    }
}
