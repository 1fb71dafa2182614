use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::form::Poles;
use super::meromorphic::MeromorphicGerm;
use super::polar::PolarGerm;
use crate::error::Result;
use crate::exact::{Polynomial, Rational};

/// Polar terms plus a polynomial part. Terms with identical denominators are
/// merged and zero terms dropped, so the representation is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GermSum {
    polar_terms: Vec<PolarGerm>,
    polynomial_part: Polynomial,
}

impl GermSum {
    pub fn zero(nvars: usize) -> Self {
        GermSum { polar_terms: Vec::new(), polynomial_part: Polynomial::zero(nvars) }
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        GermSum { polar_terms: Vec::new(), polynomial_part: p }
    }

    /// Merges terms sharing a denominator and sorts them by denominator.
    pub fn new(nvars: usize, terms: impl IntoIterator<Item = PolarGerm>, polynomial_part: Polynomial) -> Self {
        let mut map: BTreeMap<Poles, Polynomial> = BTreeMap::new();
        for t in terms {
            let e = map.entry(t.poles().clone()).or_insert_with(|| Polynomial::zero(nvars));
            *e = e.add(t.numerator());
        }
        let polar_terms = map
            .into_iter()
            .filter(|(_, n)| !n.is_zero())
            .map(|(p, n)| PolarGerm::from_parts_unchecked(n, p))
            .collect();
        GermSum { polar_terms, polynomial_part }
    }

    pub fn nvars(&self) -> usize {
        self.polynomial_part.nvars()
    }

    pub fn polar_terms(&self) -> &[PolarGerm] {
        &self.polar_terms
    }

    pub fn polynomial_part(&self) -> &Polynomial {
        &self.polynomial_part
    }

    pub fn is_zero(&self) -> bool {
        self.polar_terms.is_empty() && self.polynomial_part.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        GermSum::new(
            self.nvars(),
            self.polar_terms.iter().chain(&other.polar_terms).cloned(),
            self.polynomial_part.add(&other.polynomial_part),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        GermSum {
            polar_terms: self.polar_terms.iter().map(|t| t.scale(c)).collect(),
            polynomial_part: self.polynomial_part.scale(c),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::from_integer(1.into()))
    }

    pub fn to_meromorphic(&self) -> MeromorphicGerm {
        let mut acc = MeromorphicGerm::from_polynomial(self.polynomial_part.clone());
        for t in &self.polar_terms {
            acc = acc.add(&t.to_meromorphic());
        }
        acc
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        let mut v = self.polynomial_part.eval(point);
        for t in &self.polar_terms {
            v += t.evaluate(point)?;
        }
        Ok(v)
    }
}

impl fmt::Display for GermSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.polar_terms.iter().map(|t| t.to_string()).collect();
        if !self.polynomial_part.is_zero() || parts.is_empty() {
            parts.push(self.polynomial_part.to_string());
        }
        write!(f, "{}", parts.join(" + "))
    }
}
