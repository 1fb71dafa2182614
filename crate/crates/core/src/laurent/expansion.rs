//! Decorated cones and the space of formal expansions in polar germs.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::cones::SimplicialCone;
use crate::error::{Error, Result};
use crate::exact::{AmbientSpace, Polynomial, Rational, RationalVector};
use crate::germs::form::{fraction_string, independent, Poles};
use crate::germs::polar::numerator_is_orthogonal;
use crate::germs::{GermSum, MeromorphicGerm, PolarGerm};

/// A formal monomial ⟨v_1⟩^{s_1} ⋯ ⟨v_n⟩^{s_n}: independent primitive
/// integer generators with exponents ≥ 1, sorted by generator.
///
/// Signs are part of the data, so ⟨e1⟩ and ⟨−e1⟩ are different decorated
/// cones even though they index the same space of functions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DecoratedCone {
    factors: Vec<(RationalVector, u32)>,
}

impl DecoratedCone {
    /// Generators must already be primitive integer vectors.
    pub fn new(factors: Vec<(RationalVector, u32)>) -> Result<Self> {
        let (c, scale) = Self::from_vectors(factors)?;
        if !scale.is_one() {
            return Err(Error::InvalidInput("decorated cone generators must be primitive integer vectors".into()));
        }
        Ok(c)
    }

    /// Normalizes arbitrary generators; returns the cone and `c` with
    /// 1/∏ v_i^{s_i} = c / ∏ p_i^{s_i} where p_i is the primitive form of v_i.
    pub fn from_vectors(factors: Vec<(RationalVector, u32)>) -> Result<(Self, Rational)> {
        if factors.is_empty() {
            return Err(Error::InvalidInput("decorated cone needs at least one generator".into()));
        }
        let k = factors[0].0.dim();
        let mut scale = Rational::one();
        let mut out = Vec::with_capacity(factors.len());
        for (v, s) in factors {
            if v.dim() != k {
                return Err(Error::DimensionMismatch { expected: k, found: v.dim() });
            }
            if v.is_zero() || s == 0 {
                return Err(Error::InvalidInput("decorated cone factors need nonzero generators and exponents".into()));
            }
            let (p, c) = v.primitive();
            scale /= num_traits::pow(c, s as usize);
            out.push((p, s));
        }
        out.sort();
        let gens: Vec<RationalVector> = out.iter().map(|(v, _)| v.clone()).collect();
        if !independent(&gens) {
            return Err(Error::DependentInput);
        }
        Ok((DecoratedCone { factors: out }, scale))
    }

    /// ⟨v_1⟩ ⋯ ⟨v_n⟩ on the generators of a simplicial cone.
    pub fn simple(c: &SimplicialCone) -> Self {
        DecoratedCone { factors: c.generators().iter().map(|g| (g.clone(), 1)).collect() }
    }

    pub fn factors(&self) -> &[(RationalVector, u32)] {
        &self.factors
    }

    pub fn generators(&self) -> Vec<RationalVector> {
        self.factors.iter().map(|(v, _)| v.clone()).collect()
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.factors.iter().map(|(_, s)| *s).collect()
    }

    /// The geometric cone.
    pub fn cone(&self) -> SimplicialCone {
        SimplicialCone::new(self.generators()).expect("decorated cone generators are independent")
    }

    pub fn dim(&self) -> usize {
        self.factors.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.factors[0].0.dim()
    }

    pub fn p_order(&self) -> u32 {
        self.factors.iter().map(|(_, s)| s).sum()
    }

    pub fn is_simple(&self) -> bool {
        self.factors.iter().all(|(_, s)| *s == 1)
    }

    pub fn is_pseudo_positive(&self) -> bool {
        self.factors.iter().all(|(v, _)| v.is_pseudo_positive())
    }

    /// Same cone with the i-th generator negated.
    pub fn flip(&self, i: usize) -> Self {
        let mut factors = self.factors.clone();
        factors[i].0 = factors[i].0.neg();
        factors.sort();
        DecoratedCone { factors }
    }

    /// Negates generators until all are pseudo-positive; returns the sign
    /// the numerator has to absorb.
    pub fn pseudo_positive(&self) -> (Self, Rational) {
        let mut sign = Rational::one();
        let mut factors = Vec::with_capacity(self.factors.len());
        for (v, s) in &self.factors {
            if v.is_pseudo_positive() {
                factors.push((v.clone(), *s));
            } else {
                if s % 2 == 1 {
                    sign = -sign;
                }
                factors.push((v.neg(), *s));
            }
        }
        factors.sort();
        (DecoratedCone { factors }, sign)
    }

    pub fn poles(&self) -> Poles {
        self.factors.clone()
    }
}

impl fmt::Display for DecoratedCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(v, s)| if *s == 1 { format!("<{}>", v) } else { format!("<{}>^{}", v, s) })
            .collect();
        write!(f, "{}", parts.join(""))
    }
}

/// ⊕ g_C / L_C ⊕ h: a finite direct sum of polar germs indexed by decorated
/// cones plus a polynomial part. Zero numerators are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormalExpansion {
    nvars: usize,
    terms: BTreeMap<DecoratedCone, Polynomial>,
    polynomial_part: Polynomial,
}

impl FormalExpansion {
    pub fn zero(nvars: usize) -> Self {
        FormalExpansion { nvars, terms: BTreeMap::new(), polynomial_part: Polynomial::zero(nvars) }
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        FormalExpansion { nvars: p.nvars(), terms: BTreeMap::new(), polynomial_part: p }
    }

    /// One term per polar germ, with the generators taken from its poles as
    /// given (signs included).
    pub fn from_germ_sum(g: &GermSum) -> Result<Self> {
        let mut x = Self::from_polynomial(g.polynomial_part().clone());
        for t in g.polar_terms() {
            x.add_fraction(t.numerator(), t.poles())?;
        }
        Ok(x)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<DecoratedCone, Polynomial> {
        &self.terms
    }

    pub fn polynomial_part(&self) -> &Polynomial {
        &self.polynomial_part
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.polynomial_part.is_zero()
    }

    pub fn add_term(&mut self, cone: DecoratedCone, numerator: &Polynomial) {
        if numerator.is_zero() {
            return;
        }
        let e = self.terms.entry(cone.clone()).or_insert_with(|| Polynomial::zero(numerator.nvars()));
        *e = e.add(numerator);
        if e.is_zero() {
            self.terms.remove(&cone);
        }
    }

    /// Adds g / ∏ v_i^{s_i} for arbitrary nonzero independent v_i.
    pub fn add_fraction(&mut self, numerator: &Polynomial, poles: &[(RationalVector, u32)]) -> Result<()> {
        let (c, scale) = DecoratedCone::from_vectors(poles.to_vec())?;
        self.add_term(c, &numerator.scale(&scale));
        Ok(())
    }

    pub fn add_polynomial(&mut self, p: &Polynomial) {
        self.polynomial_part = self.polynomial_part.add(p);
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (c, g) in &other.terms {
            out.add_term(c.clone(), g);
        }
        out.add_polynomial(&other.polynomial_part);
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        FormalExpansion {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, g)| (k.clone(), g.scale(c))).collect(),
            polynomial_part: self.polynomial_part.scale(c),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Distinct geometric cones of the terms, sorted.
    pub fn support(&self) -> Vec<SimplicialCone> {
        let mut s: Vec<SimplicialCone> = self.terms.keys().map(DecoratedCone::cone).collect();
        s.sort();
        s.dedup();
        s
    }

    /// Every term's generators made pseudo-positive, merging where needed.
    pub fn pseudo_positive(&self) -> Self {
        let mut out = Self::from_polynomial(self.polynomial_part.clone());
        for (c, g) in &self.terms {
            let (pc, sign) = c.pseudo_positive();
            out.add_term(pc, &g.scale(&sign));
        }
        out
    }

    pub fn polar_germs(&self) -> Vec<PolarGerm> {
        self.terms.iter().map(|(c, g)| PolarGerm::from_parts_unchecked(g.clone(), c.poles())).collect()
    }

    pub fn to_germ_sum(&self) -> GermSum {
        GermSum::new(self.nvars, self.polar_germs(), self.polynomial_part.clone())
    }

    /// Checks that every numerator only depends on directions orthogonal to
    /// its cone.
    pub fn validate(&self, space: &AmbientSpace) -> Result<()> {
        for (c, g) in &self.terms {
            if !numerator_is_orthogonal(space, g, &c.generators())? {
                return Err(Error::NotPolar(format!("numerator {} is not orthogonal to {}", g, c)));
            }
        }
        Ok(())
    }

    /// The forgetful map: the plain sum of all terms.
    pub fn phi(&self) -> MeromorphicGerm {
        let parts: Vec<MeromorphicGerm> = self
            .terms
            .iter()
            .map(|(c, g)| MeromorphicGerm::from_parts(g.clone(), c.factors()))
            .chain(std::iter::once(MeromorphicGerm::from_polynomial(self.polynomial_part.clone())))
            .collect();
        MeromorphicGerm::sum(self.nvars, parts.iter())
    }
}

impl fmt::Display for FormalExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.terms.iter().map(|(c, g)| fraction_string(g, c.factors())).collect();
        if !self.polynomial_part.is_zero() || parts.is_empty() {
            parts.push(self.polynomial_part.to_string());
        }
        write!(f, "{}", parts.join(" (+) "))
    }
}

/// φ as a free function.
pub fn phi(x: &FormalExpansion) -> MeromorphicGerm {
    x.phi()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::germs::germ_equal;

    fn v(c: &[i64]) -> RationalVector {
        RationalVector::from_i64(c)
    }

    #[test]
    fn normalization_scales_numerator() {
        let (c, s) = DecoratedCone::from_vectors(vec![(v(&[2, 0]), 2), (v(&[0, 1]), 1)]).unwrap();
        assert_eq!(c.factors(), &[(v(&[0, 1]), 1), (v(&[1, 0]), 2)]);
        assert_eq!(s, rat(1, 4));
        assert!(DecoratedCone::new(vec![(v(&[2, 0]), 1)]).is_err());
        assert_eq!(DecoratedCone::from_vectors(vec![(v(&[1, 0]), 1), (v(&[2, 0]), 1)]), Err(Error::DependentInput));
    }

    #[test]
    fn phi_examples() {
        let mut x = FormalExpansion::zero(2);
        x.add_term(DecoratedCone::new(vec![(v(&[1, 0]), 1)]).unwrap(), &Polynomial::one(2));
        assert!(germ_equal(&x.phi(), &MeromorphicGerm::from_parts(Polynomial::one(2), &[(v(&[1, 0]), 1)])));

        let mut y = FormalExpansion::zero(2);
        y.add_term(DecoratedCone::new(vec![(v(&[1, 0]), 1), (v(&[1, 1]), 1)]).unwrap(), &Polynomial::one(2));
        y.add_term(DecoratedCone::new(vec![(v(&[0, 1]), 1), (v(&[1, 1]), 1)]).unwrap(), &Polynomial::one(2));
        let target = MeromorphicGerm::from_parts(Polynomial::one(2), &[(v(&[1, 0]), 1), (v(&[0, 1]), 1)]);
        assert!(germ_equal(&y.phi(), &target));

        let p = Polynomial::var(2, 0).add(&Polynomial::constant(2, int(3)));
        let z = FormalExpansion::from_polynomial(p.clone());
        assert!(germ_equal(&z.phi(), &MeromorphicGerm::from_polynomial(p)));
    }

    #[test]
    fn flips_and_signs() {
        let c = DecoratedCone::new(vec![(v(&[1, 0]), 2)]).unwrap();
        let f = c.flip(0);
        assert_eq!(f.generators(), vec![v(&[-1, 0])]);
        assert!(!f.is_pseudo_positive());
        let (back, sign) = f.pseudo_positive();
        assert_eq!(back, c);
        assert_eq!(sign, int(1));
        let mut x = FormalExpansion::zero(2);
        x.add_term(c.clone(), &Polynomial::one(2));
        x.add_term(f, &Polynomial::constant(2, int(-1)));
        assert!(x.phi().is_zero());
        assert!(x.pseudo_positive().is_zero());
    }
}
