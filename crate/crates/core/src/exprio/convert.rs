//! Expression trees to germs, with exact extraction of linear factors over ℚ.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ast::Expr;
use crate::error::{Error, Result};
use crate::exact::rational::{denominator_lcm, divisors, from_bigint};
use crate::exact::{Polynomial, Rational, RationalVector};
use crate::germs::form::{canonical_form, denominator_polynomial, LinearForm};
use crate::germs::MeromorphicGerm;

/// num / (∏ L^s · other), with canonical forms L and a leftover factor
/// `other` that is not (yet) known to split into linear forms.
#[derive(Clone, Debug)]
struct Frac {
    num: Polynomial,
    lin: BTreeMap<LinearForm, u32>,
    other: Polynomial,
}

impl Frac {
    fn poly(p: Polynomial) -> Self {
        let k = p.nvars();
        Frac { num: p, lin: BTreeMap::new(), other: Polynomial::one(k) }
    }

    fn lin_poly(lin: &BTreeMap<LinearForm, u32>, k: usize) -> Polynomial {
        let poles: Vec<(LinearForm, u32)> = lin.iter().map(|(l, s)| (l.clone(), *s)).collect();
        denominator_polynomial(k, &poles)
    }

    fn add(&self, o: &Frac) -> Frac {
        let k = self.num.nvars();
        let mut lin = self.lin.clone();
        for (l, s) in &o.lin {
            let e = lin.entry(l.clone()).or_insert(0);
            *e = (*e).max(*s);
        }
        let lift = |f: &Frac| {
            let missing: BTreeMap<LinearForm, u32> =
                lin.iter().map(|(l, s)| (l.clone(), s - f.lin.get(l).copied().unwrap_or(0))).collect();
            f.num.mul(&Self::lin_poly(&missing, k))
        };
        let (a, b) = (lift(self), lift(o));
        if self.other == o.other {
            Frac { num: a.add(&b), lin, other: self.other.clone() }
        } else {
            Frac { num: a.mul(&o.other).add(&b.mul(&self.other)), lin, other: self.other.mul(&o.other) }
        }
    }

    fn mul(&self, o: &Frac) -> Frac {
        let mut lin = self.lin.clone();
        for (l, s) in &o.lin {
            *lin.entry(l.clone()).or_insert(0) += s;
        }
        Frac { num: self.num.mul(&o.num), lin, other: self.other.mul(&o.other) }
    }

    fn neg(&self) -> Frac {
        Frac { num: self.num.neg(), ..self.clone() }
    }

    fn inverse(&self) -> Result<Frac> {
        if self.num.is_zero() {
            return Err(Error::InvalidInput("division by zero".into()));
        }
        let k = self.num.nvars();
        let (factors, rest) = linear_factors(&self.num);
        let num = self.other.mul(&Self::lin_poly(&self.lin, k));
        Ok(Frac { num, lin: factors.into_iter().collect(), other: rest })
    }

    fn pow(&self, e: i64) -> Result<Frac> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let k = self.num.nvars();
        let mut out = Frac::poly(Polynomial::one(k));
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }
}

fn build(e: &Expr, k: usize) -> Result<Frac> {
    Ok(match e {
        Expr::Int(n) => Frac::poly(Polynomial::constant(k, from_bigint(n.clone()))),
        Expr::Var(i) => Frac::poly(Polynomial::var(k, *i)),
        Expr::Neg(a) => build(a, k)?.neg(),
        Expr::Add(a, b) => build(a, k)?.add(&build(b, k)?),
        Expr::Sub(a, b) => build(a, k)?.add(&build(b, k)?.neg()),
        Expr::Mul(a, b) => build(a, k)?.mul(&build(b, k)?),
        Expr::Div(a, b) => build(a, k)?.mul(&build(b, k)?.inverse()?),
        Expr::Pow(a, n) => build(a, k)?.pow(*n)?,
    })
}

/// Converts an expression in k variables into a reduced germ. Fails with
/// `NonLinearPole` when the denominator does not split into linear forms.
pub fn to_germ(e: &Expr, k: usize) -> Result<MeromorphicGerm> {
    if e.num_vars() > k {
        return Err(Error::DimensionMismatch { expected: k, found: e.num_vars() });
    }
    let f = build(e, k)?;
    // Whatever is left in `other` has no linear factor and must cancel.
    let (factors, rest) = linear_factors(&f.other);
    let mut lin = f.lin;
    for (l, s) in factors {
        *lin.entry(l).or_insert(0) += s;
    }
    let num = if rest.is_constant() {
        f.num.scale(&rest.constant_term().recip())
    } else {
        f.num.div_exact(&rest).ok_or_else(|| Error::NonLinearPole(rest.display_with(&|i| format!("x{}", i + 1))))?
    };
    let poles: Vec<(LinearForm, u32)> = lin.into_iter().collect();
    Ok(MeromorphicGerm::from_parts(num, &poles))
}

/// Polynomial expressions only (division by nonzero constants allowed).
pub fn to_polynomial(e: &Expr, k: usize) -> Result<Polynomial> {
    let g = to_germ(e, k)?;
    if !g.is_polynomial() {
        return Err(Error::InvalidInput(format!("'{}' is not a polynomial", e)));
    }
    Ok(g.numerator().clone())
}

/// Rational roots of Σ c_j t^j (coefficients in ascending order).
fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    let l = denominator_lcm(coeffs);
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * from_bigint(l.clone())).to_integer()).collect();
    let Some(top) = ints.iter().rposition(|c| !c.is_zero()) else { return vec![] };
    let low = ints.iter().position(|c| !c.is_zero()).unwrap();
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(Rational::zero());
    }
    let eval = |r: &Rational| {
        ints.iter().rev().fold(Rational::zero(), |acc, c| acc * r + from_bigint(c.clone()))
    };
    for p in divisors(&ints[low]) {
        for q in divisors(&ints[top]) {
            for sign in [1, -1] {
                let r = Rational::new(&p * sign, q.clone());
                if !roots.contains(&r) && eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots
}

/// Coefficients in t of p(e_i + t·e_m), ascending.
fn restrict_to_line(p: &Polynomial, i: usize, m: usize) -> Vec<Rational> {
    let k = p.nvars();
    let subst: Vec<Polynomial> = (0..k)
        .map(|j| {
            if j == m {
                Polynomial::var(1, 0)
            } else if j == i {
                Polynomial::one(1)
            } else {
                Polynomial::zero(1)
            }
        })
        .collect();
    let q = p.compose(&subst);
    let d = q.degree().unwrap_or(0) as usize;
    let mut out = vec![Rational::zero(); d + 1];
    for (mono, c) in q.terms() {
        out[mono.0[0] as usize] = c.clone();
    }
    out
}

/// One homogeneous linear factor of `p` over ℚ, if any.
fn find_linear_factor(p: &Polynomial) -> Option<LinearForm> {
    let k = p.nvars();
    let h = p.homogeneous_component(p.min_degree()?);
    if h.degree()? == 0 {
        return None;
    }
    let m = k - 1;
    // Shear x_j ↦ x_j + λ_j x_m until the top power of x_m appears; then every
    // linear factor involves x_m and can be normalised to x_m + Σ a_i x_i.
    let shears = (0..k.saturating_sub(1)).map(|_| -2i64..=2).multi_cartesian_product();
    for lam in shears {
        let to_sheared: Vec<Polynomial> = (0..k)
            .map(|j| {
                let x = Polynomial::var(k, j);
                if j < m {
                    x.add(&Polynomial::var(k, m).scale(&Rational::from_integer(lam[j].into())))
                } else {
                    x
                }
            })
            .collect();
        let hs = h.compose(&to_sheared);
        let top = restrict_to_line(&hs, usize::MAX, m);
        if top.len() != hs.degree()? as usize + 1 || top.last().unwrap().is_zero() {
            continue;
        }
        let ps = p.compose(&to_sheared);
        let cands: Vec<Vec<Rational>> =
            (0..m).map(|i| rational_roots(&restrict_to_line(&hs, i, m)).into_iter().map(|r| -r).collect()).collect();
        for a in cands.into_iter().multi_cartesian_product() {
            let mut v = a.clone();
            v.push(Rational::one());
            let form = RationalVector::new(v);
            if ps.div_exact(&Polynomial::linear(&form)).is_some() {
                // Undo the shear: L(x) = L'(S⁻¹x) with (S⁻¹x)_j = x_j − λ_j x_m.
                let mut orig = form.coords().to_vec();
                let mut last = orig[m].clone();
                for j in 0..m {
                    last -= &orig[j] * Rational::from_integer(lam[j].into());
                }
                orig[m] = last;
                return Some(RationalVector::new(orig));
            }
        }
        return None;
    }
    None
}

/// p = ∏ L_i^{s_i} · rest with canonical homogeneous linear forms L_i and a
/// rest that has no further homogeneous linear factor over ℚ.
pub fn linear_factors(p: &Polynomial) -> (Vec<(LinearForm, u32)>, Polynomial) {
    let mut rest = p.clone();
    let mut out: BTreeMap<LinearForm, u32> = BTreeMap::new();
    if rest.is_zero() {
        return (vec![], rest);
    }
    while let Some(l) = find_linear_factor(&rest) {
        let (c, _) = canonical_form(&l);
        let lp = Polynomial::linear(&c);
        while let Some(q) = rest.div_exact(&lp) {
            rest = q;
            *out.entry(c.clone()).or_insert(0) += 1;
        }
    }
    (out.into_iter().collect(), rest)
}
