use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rational::{denominator_lcm, fmt_rational, from_bigint, int, numerator_gcd, Rational};

/// A point of ℚ^k. Also used as the linear function ε ↦ ⟨v, ε⟩.
///
/// The derived ordering is lexicographic on coordinate values, which is the
/// global tie-break order used throughout the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RationalVector(pub Vec<Rational>);

impl RationalVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        RationalVector(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        RationalVector(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn zeros(k: usize) -> Self {
        RationalVector(vec![Rational::zero(); k])
    }

    pub fn unit(k: usize, i: usize) -> Self {
        let mut v = Self::zeros(k);
        v.0[i] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Standard pairing Σ u_i v_i.
    pub fn dot(&self, other: &Self) -> Rational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalVector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Self {
        RationalVector(self.0.iter().map(|a| -a).collect())
    }

    /// Largest index carrying a nonzero coordinate.
    pub fn leading_index(&self) -> Option<usize> {
        self.0.iter().rposition(|c| !c.is_zero())
    }

    /// Zero, or the nonzero coordinate with the largest index is positive.
    pub fn is_pseudo_positive(&self) -> bool {
        match self.leading_index() {
            None => true,
            Some(i) => self.0[i].is_positive(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    /// `self = c · p` with `p` a primitive integer vector and `c > 0`.
    pub fn primitive(&self) -> (RationalVector, Rational) {
        if self.is_zero() {
            return (self.clone(), Rational::one());
        }
        let l = denominator_lcm(&self.0);
        let scaled: Vec<Rational> = self.0.iter().map(|c| c * from_bigint(l.clone())).collect();
        let factor = Rational::new(numerator_gcd(&scaled), l);
        let p = RationalVector(self.0.iter().map(|c| c / &factor).collect());
        debug_assert!(p.is_integral());
        (p, factor)
    }

    /// `self = c · p` with `p` primitive and pseudo-positive; `c` may be negative.
    pub fn pseudo_positive_primitive(&self) -> (RationalVector, Rational) {
        let (p, c) = self.primitive();
        if p.is_pseudo_positive() {
            (p, c)
        } else {
            (p.neg(), -c)
        }
    }

    /// Canonical representative of the ray through `self`.
    pub fn ray(&self) -> RationalVector {
        self.primitive().0
    }

    /// Pads with zeros (or truncates) to dimension `k`.
    pub fn resized(&self, k: usize) -> Self {
        let mut c = self.0.clone();
        c.resize(k, Rational::zero());
        RationalVector(c)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(fmt_rational).collect()
    }

    /// Returns `Some(c)` when `other = c · self`.
    pub fn ratio_to(&self, other: &Self) -> Option<Rational> {
        let i = self.leading_index()?;
        let c = &other.0[i] / &self.0[i];
        if self.scale(&c) == *other {
            Some(c)
        } else {
            None
        }
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn pseudo_positivity() {
        assert!(RationalVector::from_i64(&[1, 0]).is_pseudo_positive());
        assert!(!RationalVector::from_i64(&[1, -1]).is_pseudo_positive());
        assert!(RationalVector::from_i64(&[-1, 1]).is_pseudo_positive());
        assert!(RationalVector::zeros(3).is_pseudo_positive());
    }

    #[test]
    fn primitive_parts() {
        let v = RationalVector::new(vec![rat(2, 3), rat(-4, 3)]);
        let (p, c) = v.primitive();
        assert_eq!(p, RationalVector::from_i64(&[1, -2]));
        assert_eq!(c, rat(2, 3));
        let (q, d) = v.pseudo_positive_primitive();
        assert_eq!(q, RationalVector::from_i64(&[-1, 2]));
        assert_eq!(d, rat(-2, 3));
        assert_eq!(q.scale(&d), v);
    }

    #[test]
    fn ratio() {
        let a = RationalVector::from_i64(&[1, 2]);
        assert_eq!(a.ratio_to(&RationalVector::from_i64(&[-2, -4])), Some(int(-2)));
        assert_eq!(a.ratio_to(&RationalVector::from_i64(&[2, 3])), None);
    }
}
