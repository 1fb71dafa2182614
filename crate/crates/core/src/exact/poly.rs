//! Sparse multivariate polynomials over ℚ in graded-lexicographic order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rational::{factorial, fmt_rational, from_bigint, Rational};
use super::vector::RationalVector;

/// Exponent vector, ordered by total degree then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(Monomial(e), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(m.0.len());
        p.add_term(m, c);
        p
    }

    /// The linear polynomial ε ↦ ⟨v, ε⟩.
    pub fn linear(v: &RationalVector) -> Self {
        let n = v.dim();
        let mut p = Self::zero(n);
        for (i, c) in v.0.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Largest total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.0.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> Self {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut r = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                r.add_term(ma.mul(mb), ca * cb);
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        r
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong dimension");
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += t;
        }
        total
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter().zip(point).fold(super::rational::to_f64(c), |acc, (&e, &x)| acc * x.powi(e as i32))
            })
            .sum()
    }

    /// Substitutes `subst[i]` for variable i; all substitutes share one variable count.
    pub fn compose(&self, subst: &[Polynomial]) -> Polynomial {
        assert_eq!(subst.len(), self.nvars, "substitution has wrong length");
        let target = subst.first().map_or(0, |p| p.nvars);
        let terms: Vec<(&[u32], &Rational)> = self.terms.iter().map(|(m, c)| (m.0.as_slice(), c)).collect();
        horner(&terms, subst, target)
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut r = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            r.add_term(m2, c * Rational::from_integer(e.into()));
        }
        r
    }

    /// Σ_i u_i ∂_i.
    pub fn directional_derivative(&self, u: &RationalVector) -> Self {
        let mut r = Self::zero(self.nvars);
        for (i, c) in u.0.iter().enumerate() {
            if !c.is_zero() {
                r = r.add(&self.derivative(i).scale(c));
            }
        }
        r
    }

    pub fn homogeneous_component(&self, d: u32) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    /// Drops all terms of total degree above `max_deg`.
    pub fn truncate(&self, max_deg: i64) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| (m.degree() as i64) <= max_deg)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = d.leading_term()?;
        let mut rem = self.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return None;
            }
            let t = Polynomial::monomial(m.div(lm), c / lc);
            rem = rem.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }

    /// Embeds into a ring with more variables (new variables appended).
    pub fn extend_vars(&self, n: usize) -> Self {
        assert!(n >= self.nvars);
        Polynomial {
            nvars: n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(n, 0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Splits off the trailing `n - keep` variables: returns the coefficient of
    /// each monomial in those variables as a polynomial in the first `keep`.
    pub fn split_trailing(&self, keep: usize) -> BTreeMap<Vec<u32>, Polynomial> {
        let mut out: BTreeMap<Vec<u32>, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (head, tail) = m.0.split_at(keep);
            out.entry(tail.to_vec())
                .or_insert_with(|| Polynomial::zero(keep))
                .add_term(Monomial(head.to_vec()), c.clone());
        }
        out
    }

    /// Coefficient vector of a polynomial of degree ≤ 1 with zero constant term.
    pub fn as_linear_form(&self) -> Option<RationalVector> {
        let mut v = RationalVector::zeros(self.nvars);
        for (m, c) in &self.terms {
            if m.degree() != 1 {
                return None;
            }
            let i = m.0.iter().position(|&e| e == 1).unwrap();
            v.0[i] = c.clone();
        }
        Some(v)
    }

    /// 1/α! for a multi-index α.
    pub fn inverse_multi_factorial(alpha: &[u32]) -> Rational {
        let d = alpha.iter().fold(num_bigint::BigInt::one(), |acc, &a| acc * factorial(a));
        Rational::one() / from_bigint(d)
    }

    pub fn display_with(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names(i)),
                    _ => factors.push(format!("{}^{}", names(i), e)),
                }
            }
            if factors.is_empty() {
                out.push_str(&fmt_rational(&a));
            } else if a.is_one() {
                out.push_str(&factors.join("*"));
            } else {
                out.push_str(&format!("{}*{}", fmt_rational(&a), factors.join("*")));
            }
        }
        out
    }
}

/// Horner evaluation in the leading variable; coefficients recurse on the rest.
fn horner(terms: &[(&[u32], &Rational)], subst: &[Polynomial], target: usize) -> Polynomial {
    let Some((s, rest)) = subst.split_first() else {
        let mut c = Rational::zero();
        for (_, a) in terms {
            c += *a;
        }
        return Polynomial::constant(target, c);
    };
    let mut groups: BTreeMap<u32, Vec<(&[u32], &Rational)>> = BTreeMap::new();
    for (m, c) in terms {
        groups.entry(m[0]).or_default().push((&m[1..], c));
    }
    let top = *groups.keys().next_back().unwrap_or(&0);
    let mut acc = Polynomial::zero(target);
    for e in (0..=top).rev() {
        if !acc.is_zero() {
            acc = acc.mul(s);
        }
        if let Some(g) = groups.get(&e) {
            acc = acc.add(&horner(g, rest, target));
        }
    }
    acc
}

pub fn eps_name(i: usize) -> String {
    format!("eps{}", i + 1)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&eps_name))
    }
}

/// Composition with affine-linear substitutes x_i ↦ ⟨a_i, y⟩ + b_i.
pub fn poly_linear_substitute(p: &Polynomial, subst: &[(RationalVector, Rational)]) -> Polynomial {
    let polys: Vec<Polynomial> = subst
        .iter()
        .map(|(a, b)| Polynomial::linear(a).add(&Polynomial::constant(a.dim(), b.clone())))
        .collect();
    p.compose(&polys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn binomial_substitution() {
        let p = x(2, 0).pow(2);
        let s = poly_linear_substitute(
            &p,
            &[(RationalVector::from_i64(&[1, 1]), int(0)), (RationalVector::from_i64(&[0, 1]), int(0))],
        );
        let expect = x(2, 0).pow(2).add(&x(2, 0).mul(&x(2, 1)).scale(&int(2))).add(&x(2, 1).pow(2));
        assert_eq!(s, expect);
    }

    #[test]
    fn constants_and_swap() {
        let c = Polynomial::constant(2, rat(3, 7));
        let sw = [(RationalVector::from_i64(&[0, 1]), int(0)), (RationalVector::from_i64(&[1, 0]), int(0))];
        assert_eq!(poly_linear_substitute(&c, &sw), c);
        let p = x(2, 0).mul(&x(2, 1));
        assert_eq!(poly_linear_substitute(&p, &sw), p);
    }

    #[test]
    fn exact_division() {
        let a = x(2, 0).add(&x(2, 1));
        let b = x(2, 0).sub(&x(2, 1));
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.add(&Polynomial::one(2)).div_exact(&a), None);
        assert_eq!(Polynomial::zero(2).div_exact(&a), Some(Polynomial::zero(2)));
    }

    #[test]
    fn grlex_order_and_display() {
        let p = x(2, 1).add(&x(2, 0).pow(2)).sub(&Polynomial::constant(2, rat(1, 3)));
        assert_eq!(p.to_string(), "eps1^2 + eps2 - 1/3");
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.min_degree(), Some(0));
        assert_eq!(Polynomial::zero(3).to_string(), "0");
    }

    #[test]
    fn derivatives() {
        let p = x(2, 0).pow(3).mul(&x(2, 1));
        assert_eq!(p.derivative(0), x(2, 0).pow(2).mul(&x(2, 1)).scale(&int(3)));
        let d = p.directional_derivative(&RationalVector::from_i64(&[1, 1]));
        assert_eq!(d, p.derivative(0).add(&p.derivative(1)));
    }
}
