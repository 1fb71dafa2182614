//! Exponential sums and integrals over lattice cones.

use itertools::Itertools;
use num_traits::One;

use super::cone::{interior_rays, ray_cone, smooth_subdivide_2d, LatticeCone};
use super::series::{bernoulli_tail_coeffs, tail_in_form, TruncatedGerm};
use crate::cones::check_subdivision;
use crate::cones::SimplicialCone;
use crate::error::{Error, Result};
use crate::exact::rational::to_f64;
use crate::exact::{AmbientSpace, Polynomial, Rational, RationalVector};
use crate::germs::form::Poles;
use crate::germs::{decompose_fractions, GermSum};

/// S(C)(ε) = Σ_{n ∈ C ∩ Λ} e^{⟨n, ε⟩} for a smooth cone, truncated at
/// homogeneous degree `order`.
///
/// With generators v_i the sum is ∏ 1/(1 − e^{L_i}) where L_i = ⟨v_i, ε⟩,
/// and each factor is −1/L_i + Σ c_j L_i^j.
pub fn exp_sum_smooth(space: &AmbientSpace, lc: &LatticeCone, order: usize) -> Result<TruncatedGerm> {
    space.check_cap()?;
    if lc.ambient_dim() != space.dim() {
        return Err(Error::DimensionMismatch { expected: space.dim(), found: lc.ambient_dim() });
    }
    if !lc.is_smooth() {
        return Err(Error::NotSmooth);
    }
    let k = space.dim();
    let gens = lc.lattice_generators();
    let n = gens.len();
    let coeffs = bernoulli_tail_coeffs(order + n);
    let forms: Vec<Polynomial> = gens.iter().map(Polynomial::linear).collect();
    let mut fractions: Vec<(Polynomial, Poles)> = Vec::new();
    // Choose −1/L_i on a subset S and the Taylor tail elsewhere; the term has
    // homogeneous degree ≥ −|S|, so the tails are needed up to order + |S|.
    for mask in 0..(1usize << n) {
        let in_s: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        let s = in_s.iter().filter(|b| **b).count();
        let cap = order as i64 + s as i64;
        let mut num = Polynomial::constant(k, if s % 2 == 0 { Rational::one() } else { -Rational::one() });
        let mut poles = Vec::new();
        for i in 0..n {
            if in_s[i] {
                poles.push((gens[i].clone(), 1));
            } else {
                num = num.mul(&tail_in_form(&forms[i], &coeffs[..=cap as usize])).truncate(cap);
            }
        }
        if !num.is_zero() {
            fractions.push((num, poles));
        }
    }
    TruncatedGerm::from_fractions(space, &fractions, order as i64)
}

/// S(C) for any cone whose span has dimension at most two. Singular
/// two-dimensional cones are resolved and the shared rays removed by
/// inclusion–exclusion.
pub fn exp_sum(space: &AmbientSpace, lc: &LatticeCone, order: usize) -> Result<TruncatedGerm> {
    if lc.is_smooth() {
        return exp_sum_smooth(space, lc, order);
    }
    if lc.dim() != 2 {
        return Err(Error::NoSmoothSubdivisionAvailable);
    }
    let pieces = smooth_subdivide_2d(lc)?;
    let mut total = TruncatedGerm::zero(space.dim(), order as i64);
    for p in &pieces {
        total = total.add(&exp_sum_smooth(space, p, order)?);
    }
    for r in interior_rays(lc, &pieces) {
        total = total.sub(&exp_sum_smooth(space, &ray_cone(lc, &r)?, order)?);
    }
    Ok(total)
}

/// I(C)(ε) = ∫_C e^{⟨x, ε⟩} dx with Lebesgue measure normalised by Λ:
/// (−1)^n · |det A| / ∏ ⟨v_i, ε⟩, A holding the lattice coordinates of the
/// generators.
pub fn exp_integral(space: &AmbientSpace, lc: &LatticeCone) -> Result<GermSum> {
    space.check_cap()?;
    if lc.ambient_dim() != space.dim() {
        return Err(Error::DimensionMismatch { expected: space.dim(), found: lc.ambient_dim() });
    }
    let k = space.dim();
    let n = lc.dim();
    let mut c = lc.multiplicity();
    if n % 2 == 1 {
        c = -c;
    }
    let poles: Poles = lc.lattice_generators().into_iter().map(|g| (g, 1)).collect();
    decompose_fractions(space, &[(Polynomial::constant(k, c), poles)])
}

/// Σ over smooth pieces of p_res(S(piece)). Uses the given subdivision, or a
/// Hirzebruch–Jung resolution when the span has dimension at most two.
pub fn p_res_exp_sum(space: &AmbientSpace, lc: &LatticeCone, subdivision: Option<&[LatticeCone]>) -> Result<GermSum> {
    let pieces = match subdivision {
        Some(p) => {
            validate_subdivision(space, lc, p)?;
            p.to_vec()
        }
        None if lc.is_smooth() => vec![lc.clone()],
        None if lc.dim() == 2 => smooth_subdivide_2d(lc)?,
        None => return Err(Error::NoSmoothSubdivisionAvailable),
    };
    let mut acc = GermSum::zero(space.dim());
    for p in &pieces {
        acc = acc.add(&exp_sum_smooth(space, p, 0)?.p_res(space)?);
    }
    Ok(acc)
}

/// Pieces must be smooth, carry the same lattice and subdivide the cone.
pub fn validate_subdivision(space: &AmbientSpace, lc: &LatticeCone, pieces: &[LatticeCone]) -> Result<()> {
    if pieces.iter().any(|p| !p.is_smooth()) {
        return Err(Error::NotSmooth);
    }
    if pieces.iter().any(|p| !lc.same_lattice(p)) {
        return Err(Error::NotASubdivision("pieces carry a different lattice".into()));
    }
    let cones: Vec<SimplicialCone> = pieces.iter().map(|p| p.cone().clone()).collect();
    check_subdivision(space, &cones, lc.cone())
}

/// The point ε = −½ Σ w_j where w_j ∈ lin(C) is dual to the lattice
/// generators, so every ⟨v_i, ε⟩ = −1/2.
pub fn default_point(lc: &LatticeCone) -> Result<RationalVector> {
    let gens = lc.lattice_generators();
    let dual = AmbientSpace::identity(lc.ambient_dim()).q_dual_family(&gens)?;
    let half = -Rational::new(1.into(), 2.into());
    Ok(dual.iter().fold(RationalVector::zeros(lc.ambient_dim()), |acc, w| acc.add(&w.scale(&half))))
}

fn pairing_f64(v: &RationalVector, point: &[f64]) -> f64 {
    v.coords().iter().zip(point).map(|(a, x)| to_f64(a) * x).sum()
}

/// Σ_{m ∈ [0, height]^n} e^{⟨Σ m_i v_i, ε⟩}, summed term by term.
pub fn direct_sum_smooth(lc: &LatticeCone, point: &[f64], height: u32) -> f64 {
    let pairings: Vec<f64> = lc.lattice_generators().iter().map(|v| pairing_f64(v, point)).collect();
    (0..pairings.len())
        .map(|_| 0..=height)
        .multi_cartesian_product()
        .map(|m| m.iter().zip(&pairings).map(|(mi, p)| *mi as f64 * p).sum::<f64>().exp())
        .sum()
}

/// Σ e^{⟨n, ε⟩} over lattice points n ∈ C whose lattice coordinates are
/// bounded by `radius`; works for singular cones too.
pub fn direct_sum_box(lc: &LatticeCone, point: &[f64], radius: i64) -> f64 {
    let basis = lc.basis();
    let bp: Vec<f64> = basis.iter().map(|b| pairing_f64(b, point)).collect();
    let k = lc.ambient_dim();
    (0..basis.len())
        .map(|_| -radius..=radius)
        .multi_cartesian_product()
        .filter(|z| {
            let p = basis
                .iter()
                .zip(z)
                .fold(RationalVector::zeros(k), |acc, (b, zi)| acc.add(&b.scale(&Rational::from_integer((*zi).into()))));
            lc.cone().contains(&p)
        })
        .map(|z| z.iter().zip(&bp).map(|(zi, p)| *zi as f64 * p).sum::<f64>().exp())
        .sum()
}

/// Truncated series versus direct summation at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    pub point: Vec<f64>,
    pub series: f64,
    pub direct: f64,
    pub residual: f64,
}

/// Compares S(C) truncated at `order` with the direct sum at `point`, which
/// must pair negatively with every generator.
pub fn numeric_oracle(space: &AmbientSpace, lc: &LatticeCone, point: &[f64], order: usize, height: u32) -> Result<OracleReport> {
    if lc.lattice_generators().iter().any(|v| pairing_f64(v, point) >= 0.0) {
        return Err(Error::InvalidInput("evaluation point must pair negatively with every generator".into()));
    }
    let series = exp_sum(space, lc, order)?.evaluate_f64(point);
    let direct = if lc.is_smooth() {
        direct_sum_smooth(lc, point, height)
    } else {
        direct_sum_box(lc, point, height as i64)
    };
    Ok(OracleReport { point: point.to_vec(), series, direct, residual: (series - direct).abs() })
}
