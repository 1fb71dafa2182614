//! The valuation I(C) = (−1)^n w / (L_1 ⋯ L_n) and subdivision checks.

use num_traits::One;

use super::family::cones_meet_along_face;
use super::polycone::PolyCone;
use super::simplicial::SimplicialCone;
use crate::error::{Error, Result};
use crate::exact::{max_minor_abs_sum, AmbientSpace, Polynomial, Rational, RationalMatrix};
use crate::germs::{germ_equal, GermSum, PolarGerm};

/// Sum of |maximal minors| of the k × n generator matrix.
pub fn weight(c: &SimplicialCone) -> Rational {
    let m = RationalMatrix::from_cols(c.generators(), c.ambient_dim());
    max_minor_abs_sum(&m, c.dim()).expect("simplicial generators are independent")
}

/// (−1)^n w / ∏ L_i with the given weight.
pub fn i_simplicial_weighted(c: &SimplicialCone, w: &Rational) -> PolarGerm {
    let n = c.dim();
    let sign = if n.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    let num = Polynomial::constant(c.ambient_dim(), sign * w);
    PolarGerm::from_parts_unchecked(num, c.generators().iter().map(|g| (g.clone(), 1)).collect())
}

pub fn i_simplicial(c: &SimplicialCone) -> PolarGerm {
    i_simplicial_weighted(c, &weight(c))
}

/// Σ I over a family, merged.
pub fn i_sum(cones: &[SimplicialCone]) -> GermSum {
    let k = cones.first().map_or(0, SimplicialCone::ambient_dim);
    GermSum::new(k, cones.iter().map(i_simplicial), Polynomial::zero(k))
}

/// I of a general pointed cone through its canonical pulling triangulation.
pub fn i_cone(space: &AmbientSpace, c: &PolyCone) -> Result<GermSum> {
    space.check_cap()?;
    Ok(i_sum(&c.pulling_triangulation()))
}

/// Pieces lie in C, have C's dimension, meet along faces and carry the same
/// valuation as C, so they cover C exactly.
pub fn check_subdivision(space: &AmbientSpace, pieces: &[SimplicialCone], c: &SimplicialCone) -> Result<()> {
    let fail = |m: String| Err(Error::NotASubdivision(m));
    if pieces.is_empty() {
        return fail(format!("no pieces for {}", c));
    }
    for p in pieces {
        if p.dim() != c.dim() {
            return fail(format!("{} has dimension {} but {} has {}", p, p.dim(), c, c.dim()));
        }
        if !c.contains_cone(p) {
            return fail(format!("{} is not contained in {}", p, c));
        }
    }
    for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            if !cones_meet_along_face(space, &pieces[i], &pieces[j])? {
                return fail(format!("{} and {} overlap", pieces[i], pieces[j]));
            }
        }
    }
    if !germ_equal(&i_sum(pieces), &i_simplicial(c)) {
        return fail(format!("pieces do not cover {}", c));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, RationalVector};

    fn c(g: &[&[i64]]) -> SimplicialCone {
        SimplicialCone::from_i64(g).unwrap()
    }

    #[test]
    fn simplicial_values() {
        let a = i_simplicial(&c(&[&[1, 0], &[1, 1]]));
        assert_eq!(a.numerator().constant_term(), int(1));
        let b = i_simplicial(&c(&[&[1, 0]]));
        assert_eq!(b.numerator().constant_term(), int(-1));
        let d = i_simplicial(&c(&[&[1, 1]]));
        assert_eq!(d.numerator().constant_term(), int(-2));
        assert_eq!(d.poles(), &vec![(RationalVector::from_i64(&[1, 1]), 1)]);
    }

    #[test]
    fn quadrant_split() {
        let s = AmbientSpace::identity(2);
        let q = c(&[&[1, 0], &[0, 1]]);
        let pieces = [c(&[&[1, 0], &[1, 1]]), c(&[&[0, 1], &[1, 1]])];
        assert!(germ_equal(&i_sum(&pieces), &i_simplicial(&q)));
        check_subdivision(&s, &pieces, &q).unwrap();
        assert!(check_subdivision(&s, &pieces[..1], &q).is_err());
        let pc = PolyCone::from_simplicial(&q);
        assert!(germ_equal(&i_cone(&s, &pc).unwrap(), &i_simplicial(&q)));
    }

    #[test]
    fn triangulations_agree() {
        let s = AmbientSpace::identity(3);
        let gens: Vec<RationalVector> =
            [[1, 0, 1], [0, 1, 1], [-1, 0, 1], [0, -1, 1], [1, 1, 2]].iter().map(|g| RationalVector::from_i64(g)).collect();
        let pc = PolyCone::from_generators(&gens, 3).unwrap();
        let a = i_sum(&pc.pulling_triangulation());
        let b = i_sum(&pc.pulling_triangulation_by(&|x, y| y.cmp(x)));
        assert!(germ_equal(&a, &b));
        assert!(germ_equal(&i_cone(&s, &pc).unwrap(), &a));
    }
}
