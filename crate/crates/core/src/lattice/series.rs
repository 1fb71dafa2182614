//! Truncated germs: exact polar part plus a Taylor tail, both accurate
//! through a fixed homogeneous degree.

use std::fmt;

use num_traits::One;

use crate::error::Result;
use crate::exact::rational::{factorial, to_f64};
use crate::exact::{AmbientSpace, Polynomial, Rational};
use crate::germs::form::{total_exponent, Poles};
use crate::germs::{decompose_fractions, GermSum, PolarGerm};
use crate::laurent::laurent_expand_germsum;
use crate::residues::{p_order_of, p_res_of};

/// Coefficients c_0..c_n of 1/(1 − e^x) = −1/x + Σ c_j x^j.
///
/// c_j = −b_{j+1} where x/(e^x − 1) = Σ b_j x^j.
pub fn bernoulli_tail_coeffs(n: usize) -> Vec<Rational> {
    // (e^x − 1)/x = Σ a_j x^j with a_j = 1/(j+1)!; invert the series.
    let a: Vec<Rational> = (0..n + 2).map(|j| Rational::new(1.into(), factorial(j as u32 + 1))).collect();
    let mut b: Vec<Rational> = Vec::with_capacity(n + 2);
    for j in 0..n + 2 {
        if j == 0 {
            b.push(Rational::one());
            continue;
        }
        let s: Rational = (1..=j).map(|i| &a[i] * &b[j - i]).sum();
        b.push(-s);
    }
    (0..=n).map(|j| -b[j + 1].clone()).collect()
}

/// Σ_{j ≤ n} c_j x^j as a polynomial in the linear form `l`.
pub(crate) fn tail_in_form(l: &Polynomial, coeffs: &[Rational]) -> Polynomial {
    let k = l.nvars();
    let mut out = Polynomial::zero(k);
    let mut pw = Polynomial::one(k);
    for c in coeffs {
        out = out.add(&pw.scale(c));
        pw = pw.mul(l);
    }
    out
}

/// f = polar_part + taylor_tail + (terms of homogeneous degree > order).
///
/// The homogeneous degree of h/∏L^s is deg h − Σ s.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedGerm {
    polar_part: GermSum,
    taylor_tail: Polynomial,
    order: i64,
}

fn truncate_sum(g: &GermSum, order: i64) -> GermSum {
    let k = g.nvars();
    let terms = g.polar_terms().iter().filter_map(|t| {
        let n = t.numerator().truncate(order + total_exponent(t.poles()) as i64);
        (!n.is_zero()).then(|| t.with_numerator(n))
    });
    GermSum::new(k, terms, Polynomial::zero(k))
}

fn low_of_fraction(num: &Polynomial, poles: &Poles) -> Option<i64> {
    num.min_degree().map(|d| d as i64 - total_exponent(poles) as i64)
}

impl TruncatedGerm {
    /// Drops everything above `order`; polynomial parts of `polar_part` move
    /// to the tail.
    pub fn new(polar_part: GermSum, taylor_tail: Polynomial, order: i64) -> Self {
        let tail = taylor_tail.add(polar_part.polynomial_part()).truncate(order);
        TruncatedGerm { polar_part: truncate_sum(&polar_part, order), taylor_tail: tail, order }
    }

    pub fn zero(nvars: usize, order: i64) -> Self {
        TruncatedGerm { polar_part: GermSum::zero(nvars), taylor_tail: Polynomial::zero(nvars), order }
    }

    /// Decomposes a sum of fractions and truncates.
    pub fn from_fractions(space: &AmbientSpace, fractions: &[(Polynomial, Poles)], order: i64) -> Result<Self> {
        let g = decompose_fractions(space, fractions)?;
        Ok(Self::new(g, Polynomial::zero(space.dim()), order))
    }

    pub fn polar_part(&self) -> &GermSum {
        &self.polar_part
    }

    pub fn taylor_tail(&self) -> &Polynomial {
        &self.taylor_tail
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.taylor_tail.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.polar_part.is_zero() && self.taylor_tail.is_zero()
    }

    /// The whole truncated germ as one GermSum.
    pub fn to_germ_sum(&self) -> GermSum {
        self.polar_part.add(&GermSum::from_polynomial(self.taylor_tail.clone()))
    }

    fn fractions(&self) -> Vec<(Polynomial, Poles)> {
        let mut out: Vec<(Polynomial, Poles)> =
            self.polar_part.polar_terms().iter().map(|t| (t.numerator().clone(), t.poles().clone())).collect();
        if !self.taylor_tail.is_zero() {
            out.push((self.taylor_tail.clone(), Vec::new()));
        }
        out
    }

    /// Lowest homogeneous degree present.
    pub fn low_degree(&self) -> Option<i64> {
        self.fractions().iter().filter_map(|(n, p)| low_of_fraction(n, p)).min()
    }

    pub fn truncate(&self, order: i64) -> Self {
        Self::new(self.polar_part.clone(), self.taylor_tail.clone(), order.min(self.order))
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        Self::new(self.polar_part.add(&other.polar_part), self.taylor_tail.add(&other.taylor_tail), order)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedGerm { polar_part: self.polar_part.scale(c), taylor_tail: self.taylor_tail.scale(c), order: self.order }
    }

    /// Product; the result is accurate through
    /// min(N₁ + low(g), N₂ + low(f)).
    pub fn mul(&self, space: &AmbientSpace, other: &Self) -> Result<Self> {
        let k = self.nvars();
        let (Some(la), Some(lb)) = (self.low_degree(), other.low_degree()) else {
            return Ok(Self::zero(k, self.order.min(other.order)));
        };
        let order = (self.order + lb).min(other.order + la);
        let mut prods = Vec::new();
        for (na, pa) in self.fractions() {
            for (nb, pb) in other.fractions() {
                let mut poles = pa.clone();
                poles.extend(pb.iter().cloned());
                let num = na.mul(&nb).truncate(order + total_exponent(&poles) as i64);
                if !num.is_zero() {
                    prods.push((num, poles));
                }
            }
        }
        Self::from_fractions(space, &prods, order)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        Ok(self.polar_part.evaluate(point)? + self.taylor_tail.eval(point))
    }

    /// Floating-point evaluation; returns ±∞ or NaN at a pole.
    pub fn evaluate_f64(&self, point: &[f64]) -> f64 {
        let mut total = self.taylor_tail.eval_f64(point);
        for t in self.polar_part.polar_terms() {
            let mut den = 1.0;
            for (l, s) in t.poles() {
                let v: f64 = l.coords().iter().zip(point).map(|(a, x)| to_f64(a) * x).sum();
                den *= v.powi(*s as i32);
            }
            total += t.numerator().eval_f64(point) / den;
        }
        total
    }

    /// Highest p-order of the Laurent expansion of the polar part.
    pub fn p_order(&self, space: &AmbientSpace) -> Result<u32> {
        Ok(p_order_of(&laurent_expand_germsum(space, &self.polar_part)?))
    }

    /// p-residue of the polar part; unaffected by truncation as long as the
    /// order is nonnegative.
    pub fn p_res(&self, space: &AmbientSpace) -> Result<GermSum> {
        Ok(p_res_of(&laurent_expand_germsum(space, &self.polar_part)?))
    }

    /// Polar terms of exactly `p` poles counted with multiplicity.
    pub fn terms_of_p_order(&self, p: u32) -> Vec<&PolarGerm> {
        self.polar_part.polar_terms().iter().filter(|t| t.p_order() == p).collect()
    }
}

impl fmt::Display for TruncatedGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.polar_part.polar_terms().iter().map(|t| t.to_string()).collect();
        if !self.taylor_tail.is_zero() || parts.is_empty() {
            parts.push(self.taylor_tail.to_string());
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => out.push_str(&format!(" - {}", rest)),
                None => out.push_str(&format!(" + {}", p)),
            }
        }
        write!(f, "{} + O(deg {})", out, self.order + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, RationalVector};

    #[test]
    fn bernoulli_values() {
        let c = bernoulli_tail_coeffs(5);
        assert_eq!(c, vec![rat(1, 2), rat(-1, 12), rat(0, 1), rat(1, 720), rat(0, 1), rat(-1, 30240)]);
    }

    #[test]
    fn bernoulli_series_matches_function() {
        let c = bernoulli_tail_coeffs(12);
        for x in [-0.7f64, -0.2, 0.3, 1.1] {
            let series: f64 = -1.0 / x + c.iter().enumerate().map(|(j, cj)| to_f64(cj) * x.powi(j as i32)).sum::<f64>();
            assert!((series - 1.0 / (1.0 - x.exp())).abs() < 1e-9, "{x}");
        }
    }

    #[test]
    fn multiplication_respects_order() {
        let s = AmbientSpace::identity(2);
        let x = RationalVector::from_i64(&[1, 0]);
        let y = RationalVector::from_i64(&[0, 1]);
        let c = bernoulli_tail_coeffs(6);
        // 1/(1−e^{ε₁}) and 1/(1−e^{ε₂}) truncated at 4.
        let fx = TruncatedGerm::from_fractions(
            &s,
            &[(Polynomial::constant(2, -Rational::one()), vec![(x.clone(), 1)]), (tail_in_form(&Polynomial::linear(&x), &c), vec![])],
            4,
        )
        .unwrap();
        let fy = TruncatedGerm::from_fractions(
            &s,
            &[(Polynomial::constant(2, -Rational::one()), vec![(y.clone(), 1)]), (tail_in_form(&Polynomial::linear(&y), &c), vec![])],
            4,
        )
        .unwrap();
        assert_eq!(fx.low_degree(), Some(-1));
        let p = fx.mul(&s, &fy).unwrap();
        assert_eq!(p.order(), 3);
        let direct = fx.truncate(3).mul(&s, &fy.truncate(3)).unwrap();
        assert_eq!(p.truncate(2), direct.truncate(2));
        let pt = [0.3, -0.2];
        let exact = 1.0 / ((1.0 - 0.3f64.exp()) * (1.0 - (-0.2f64).exp()));
        assert!((p.evaluate_f64(&pt) - exact).abs() < 1e-3);
        assert_eq!(p.p_order(&s).unwrap(), 2);
        assert_eq!(fx.add(&fy).order(), 4);
        assert!(fx.sub(&fx).is_zero());
    }
}
