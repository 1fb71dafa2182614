//! Germ algebra: meromorphic germs with linear poles, polar germs, their sums,
//! the reduction to independent denominators and the polar decomposition.

pub mod decompose;
pub mod form;
pub mod meromorphic;
pub mod polar;
pub mod sum;

pub use decompose::{decompose, decompose_fractions, reduce_to_independent, Fraction};
pub use form::{canonical_form, LinearForm, Poles};
pub use meromorphic::MeromorphicGerm;
pub use polar::{canonicalize_polar, numerator_is_orthogonal, PolarGerm};
pub use sum::GermSum;

use crate::error::Result;
use crate::exact::Rational;

/// Anything that denotes a rational function with linear poles.
pub trait Germ {
    fn to_meromorphic(&self) -> MeromorphicGerm;
}

impl Germ for MeromorphicGerm {
    fn to_meromorphic(&self) -> MeromorphicGerm {
        self.clone()
    }
}

impl Germ for PolarGerm {
    fn to_meromorphic(&self) -> MeromorphicGerm {
        PolarGerm::to_meromorphic(self)
    }
}

impl Germ for GermSum {
    fn to_meromorphic(&self) -> MeromorphicGerm {
        GermSum::to_meromorphic(self)
    }
}

/// Exact equality as rational functions.
pub fn germ_equal(f: &(impl Germ + ?Sized), g: &(impl Germ + ?Sized)) -> bool {
    f.to_meromorphic().sub(&g.to_meromorphic()).is_zero()
}

/// Exact value at a point; fails with `PoleHit` on a vanishing pole.
pub fn evaluate(f: &(impl Germ + ?Sized), point: &[Rational]) -> Result<Rational> {
    f.to_meromorphic().evaluate(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat, Polynomial, RationalVector};

    fn v(c: &[i64]) -> RationalVector {
        RationalVector::from_i64(c)
    }

    #[test]
    fn equality_oracle() {
        let one = Polynomial::one(2);
        let f = MeromorphicGerm::from_parts(one.clone(), &[(v(&[1, 0]), 1)]);
        let g = MeromorphicGerm::from_parts(one, &[(v(&[0, 1]), 1)]);
        assert!(germ_equal(&f, &f));
        assert!(!germ_equal(&f, &g));
    }

    #[test]
    fn evaluation() {
        let num = Polynomial::linear(&v(&[1, 2]));
        let f = MeromorphicGerm::from_parts(num, &[(v(&[1, 0]), 1), (v(&[1, 1]), 1), (v(&[0, 1]), 1)]);
        assert_eq!(evaluate(&f, &[int(1), int(1)]).unwrap(), rat(3, 2));
        let g = MeromorphicGerm::from_parts(Polynomial::one(2), &[(v(&[1, 0]), 1)]);
        assert_eq!(evaluate(&g, &[int(0), int(1)]), Err(crate::Error::PoleHit));
    }
}
