//! Generators of the kernel of φ.

use super::expansion::{DecoratedCone, FormalExpansion};
use super::subdivision::{stellar_subdivision, subdivision_operator};
use crate::cones::SimplicialCone;
use crate::error::Result;
use crate::exact::{AmbientSpace, Rational};
use crate::germs::PolarGerm;

/// Type I: g/L^s ⊕ (−1)^{s_i+1} g/(L with L_i negated)^s, for every i.
pub fn kernel_type_one(term: &PolarGerm) -> Result<Vec<FormalExpansion>> {
    let (dc, scale) = DecoratedCone::from_vectors(term.poles().clone())?;
    let g = term.numerator().scale(&scale);
    let mut out = Vec::with_capacity(dc.dim());
    for i in 0..dc.dim() {
        let s = dc.factors()[i].1;
        let sign = if s % 2 == 1 { Rational::from_integer(1.into()) } else { Rational::from_integer((-1).into()) };
        let mut x = FormalExpansion::zero(term.nvars());
        x.add_term(dc.clone(), &g);
        x.add_term(dc.flip(i), &g.scale(&sign));
        out.push(x);
    }
    Ok(out)
}

/// Type II: term ⊕ 𝔖(−term) for a subdivision of the term's cone.
pub fn kernel_type_two(space: &AmbientSpace, term: &PolarGerm, pieces: &[SimplicialCone]) -> Result<FormalExpansion> {
    let mut x = FormalExpansion::zero(term.nvars());
    x.add_fraction(term.numerator(), term.poles())?;
    let y = subdivision_operator(space, &x.neg(), pieces)?;
    Ok(x.add(&y))
}

/// Type I elements for every generator plus one type II element, on the given
/// subdivision or else the stellar subdivision at the sum of the generators.
/// Every element maps to zero under φ.
pub fn kernel_generators(space: &AmbientSpace, term: &PolarGerm, subdivision: Option<&[SimplicialCone]>) -> Result<Vec<FormalExpansion>> {
    let mut out = kernel_type_one(term)?;
    let (dc, _) = DecoratedCone::from_vectors(term.poles().clone())?;
    let pieces = match subdivision {
        Some(p) => p.to_vec(),
        None => stellar_subdivision(&dc.cone()),
    };
    let two = kernel_type_two(space, term, &pieces)?;
    if !two.is_zero() {
        out.push(two);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Polynomial, RationalVector};

    fn v(c: &[i64]) -> RationalVector {
        RationalVector::from_i64(c)
    }

    #[test]
    fn type_one_examples() {
        let t = PolarGerm::from_parts_unchecked(Polynomial::one(1), vec![(v(&[1]), 1)]);
        let k = kernel_type_one(&t).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].num_terms(), 2);
        assert!(k[0].phi().is_zero());

        let t2 = PolarGerm::from_parts_unchecked(Polynomial::one(1), vec![(v(&[1]), 2)]);
        let k2 = kernel_type_one(&t2).unwrap();
        assert!(k2[0].phi().is_zero());
        assert_eq!(k2[0].terms().values().map(|g| g.constant_term()).collect::<Vec<_>>().len(), 2);
    }

    #[test]
    fn type_two_on_quadrant() {
        let s = AmbientSpace::identity(2);
        let t = PolarGerm::from_parts_unchecked(Polynomial::one(2), vec![(v(&[0, 1]), 1), (v(&[1, 0]), 1)]);
        let all = kernel_generators(&s, &t, None).unwrap();
        assert_eq!(all.len(), 3);
        for x in &all {
            assert!(x.phi().is_zero());
            assert!(!x.is_zero());
        }
        assert_eq!(all[2].num_terms(), 3);
    }
}
