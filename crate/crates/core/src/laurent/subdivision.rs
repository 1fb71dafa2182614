//! Subdivision operators and the δ-derivations they are built from.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::expansion::{DecoratedCone, FormalExpansion};
use crate::cones::valuation::{check_subdivision, weight};
use crate::cones::{cones_meet_along_face, SimplicialCone};
use crate::error::{Error, Result};
use crate::exact::rational::{factorial, from_bigint};
use crate::exact::{AmbientSpace, Rational, RationalVector};
use crate::germs::PolarGerm;

/// Coefficients b_μ / a with 1/∏ L = Σ (b_μ / a) / ∏ M_μ, for a subdivision
/// {D_μ} of the cone generated by the L's.
pub(crate) fn simple_coefficients(c: &SimplicialCone, pieces: &[SimplicialCone]) -> Vec<(SimplicialCone, Rational)> {
    let a = weight(c);
    pieces.iter().map(|d| (d.clone(), weight(d) / &a)).collect()
}

/// Splits a polar germ with simple poles along a subdivision of its cone.
pub fn subdivide_simple(space: &AmbientSpace, term: &PolarGerm, pieces: &[SimplicialCone]) -> Result<FormalExpansion> {
    let (dc, scale) = DecoratedCone::from_vectors(term.poles().clone())?;
    if !dc.is_simple() {
        return Err(Error::InvalidInput(format!("{} has a repeated pole", term)));
    }
    let c = dc.cone();
    check_subdivision(space, pieces, &c)?;
    let g = term.numerator().scale(&scale);
    let mut out = FormalExpansion::zero(term.nvars());
    for (d, b) in simple_coefficients(&c, pieces) {
        out.add_term(DecoratedCone::simple(&d), &g.scale(&b));
    }
    Ok(out)
}

/// δ_{L*}: on g / ∏ M_j^{r_j} gives Σ_j r_j Q(L*, M_j) g / (⋯ M_j^{r_j+1} ⋯).
/// The polynomial part is differentiated by the same operator, −∂ along Q L*.
pub fn delta_op(space: &AmbientSpace, lstar: &RationalVector, x: &FormalExpansion) -> Result<FormalExpansion> {
    let u = space.q_times(lstar);
    let mut out = FormalExpansion::from_polynomial(x.polynomial_part().directional_derivative(&u).neg());
    for (c, g) in x.terms() {
        if !g.directional_derivative(&u).is_zero() {
            return Err(Error::OrthogonalityViolated);
        }
        for (j, (m, r)) in c.factors().iter().enumerate() {
            let q = space.inner(lstar, m);
            if q.is_zero() {
                continue;
            }
            let mut factors = c.factors().to_vec();
            factors[j].1 += 1;
            let coeff = q * Rational::from_integer((*r).into());
            out.add_term(DecoratedCone::new(factors)?, &g.scale(&coeff));
        }
    }
    Ok(out)
}

/// Applies 𝔖 term by term, with `pieces_of` giving the pieces of each
/// supporting cone.
pub(crate) fn subdivide_with(
    space: &AmbientSpace,
    x: &FormalExpansion,
    pieces_of: &mut dyn FnMut(&SimplicialCone) -> Result<Vec<SimplicialCone>>,
) -> Result<FormalExpansion> {
    let mut cache: BTreeMap<SimplicialCone, Vec<(SimplicialCone, Rational)>> = BTreeMap::new();
    let mut out = FormalExpansion::from_polynomial(x.polynomial_part().clone());
    for (dc, g) in x.terms() {
        let c = dc.cone();
        if !cache.contains_key(&c) {
            let pieces = pieces_of(&c)?;
            cache.insert(c.clone(), simple_coefficients(&c, &pieces));
        }
        let mut y = FormalExpansion::zero(x.nvars());
        for (d, b) in &cache[&c] {
            y.add_term(DecoratedCone::simple(d), &g.scale(b));
        }
        let duals = space.q_dual_family(&dc.generators())?;
        let mut denom = Rational::one();
        for (lstar, s) in duals.iter().zip(dc.exponents()) {
            for _ in 1..s {
                y = delta_op(space, lstar, &y)?;
            }
            denom *= from_bigint(factorial(s - 1));
        }
        out = out.add(&y.scale(&denom.recip()));
    }
    Ok(out)
}

/// 𝔖: re-expresses every term on the cones of `target` that subdivide its
/// supporting cone. `target` must be a simplicial pan-subdivision of the
/// support: its cones meet along faces and each supporting cone is the union
/// of the target cones it contains.
pub fn subdivision_operator(space: &AmbientSpace, x: &FormalExpansion, target: &[SimplicialCone]) -> Result<FormalExpansion> {
    for i in 0..target.len() {
        for j in i + 1..target.len() {
            if !cones_meet_along_face(space, &target[i], &target[j])? {
                return Err(Error::NotAPanSubdivision(format!("{} and {} do not meet along a face", target[i], target[j])));
            }
        }
    }
    subdivide_with(space, x, &mut |c| {
        let pieces: Vec<SimplicialCone> =
            target.iter().filter(|d| d.dim() == c.dim() && c.contains_cone(d)).cloned().collect();
        check_subdivision(space, &pieces, c).map_err(|e| match e {
            Error::NotASubdivision(m) => Error::NotAPanSubdivision(m),
            other => other,
        })?;
        Ok(pieces)
    })
}

/// Pieces of the stellar subdivision of `c` at the sum of its generators.
pub fn stellar_subdivision(c: &SimplicialCone) -> Vec<SimplicialCone> {
    let gens = c.generators();
    if gens.len() < 2 {
        return vec![c.clone()];
    }
    let mid = gens.iter().skip(1).fold(gens[0].clone(), |a, g| a.add(g));
    let mut out: Vec<SimplicialCone> = (0..gens.len())
        .map(|i| {
            let mut g = gens.to_vec();
            g[i] = mid.clone();
            SimplicialCone::new(g).expect("stellar piece")
        })
        .collect();
    out.sort();
    out
}
