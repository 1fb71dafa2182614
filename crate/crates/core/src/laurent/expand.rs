//! Laurent expansions of arbitrary germs.

use std::collections::BTreeMap;

use num_traits::Signed;

use super::expansion::{DecoratedCone, FormalExpansion};
use super::subdivision::subdivide_with;
use crate::cones::dd::HCone;
use crate::cones::{check_properly_positioned, check_subdivision, common_refinement, refine_cone, ConeFamily, Positioning, SimplicialCone};
use crate::error::{Error, Result};
use crate::exact::{AmbientSpace, Polynomial, Rational, RationalVector};
use crate::germs::{decompose, decompose_fractions, GermSum, MeromorphicGerm};

/// Expands on the common refinement of the (pseudo-positive) supporting
/// cones of a polar decomposition.
pub fn laurent_expand_germsum(space: &AmbientSpace, g: &GermSum) -> Result<FormalExpansion> {
    let x = FormalExpansion::from_germ_sum(g)?.pseudo_positive();
    let family = x.support();
    if family.is_empty() {
        return Ok(x);
    }
    let r = common_refinement(space, &family)?;
    let pieces: BTreeMap<&SimplicialCone, Vec<SimplicialCone>> = family
        .iter()
        .zip(&r.index_sets)
        .map(|(c, idx)| (c, idx.iter().map(|&i| r.family.cones[i].clone()).collect()))
        .collect();
    subdivide_with(space, &x, &mut |c| Ok(pieces[c].clone()))
}

/// Laurent expansion of f. Without a support the result lives on a
/// deterministic properly positioned family of pseudo-positive cones; with a
/// support 𝔠 every term lives on a cone of 𝔠 or one of its faces.
pub fn laurent_expand(space: &AmbientSpace, f: &MeromorphicGerm, support: Option<&[SimplicialCone]>) -> Result<FormalExpansion> {
    space.check_cap()?;
    let x = laurent_expand_germsum(space, &decompose(space, f)?)?;
    match support {
        None => Ok(x),
        Some(s) => move_to_support(space, &x, s),
    }
}

/// Re-expresses an expansion on the faces of a properly positioned support.
pub fn move_to_support(space: &AmbientSpace, x: &FormalExpansion, support: &[SimplicialCone]) -> Result<FormalExpansion> {
    let pos = check_properly_positioned(space, support)?;
    if pos != Positioning::Proper {
        return Err(Error::InvalidInput(format!("support is not {}: {}", Positioning::Proper, pos)));
    }
    let faces = ConeFamily::new(support.to_vec()).face_closure();
    let weights: Vec<RationalVector> = support.iter().map(positive_weight).collect();
    let face_h: Vec<HCone> = faces.iter().map(SimplicialCone::h_rep).collect();
    let nvars = x.nvars();
    let mut groups: BTreeMap<SimplicialCone, Vec<MeromorphicGerm>> = BTreeMap::new();
    let mut out = FormalExpansion::from_polynomial(x.polynomial_part().clone());
    for (dc, g) in x.terms() {
        // When the support already subdivides the term's cone, 𝔖 applies directly.
        let c = dc.cone();
        let ch = c.h_rep();
        let inside: Vec<SimplicialCone> = faces.iter().filter(|f| f.dim() == c.dim() && holds(&ch, f)).cloned().collect();
        if !inside.is_empty() && check_subdivision(space, &inside, &c).is_ok() {
            let mut single = FormalExpansion::zero(nvars);
            single.add_term(dc.clone(), g);
            out = out.add(&subdivide_with(space, &single, &mut |_| Ok(inside.clone()))?);
            continue;
        }
        for (face, y) in place_term(space, dc, g, support, &weights, &faces, &face_h)? {
            groups.entry(face).or_default().push(y);
        }
    }
    for (face, parts) in groups {
        let total = MeromorphicGerm::sum(nvars, parts.iter());
        if total.is_zero() {
            continue;
        }
        for (c, n) in express_on_face(space, &face, &total)? {
            out.add_term(c, &n);
        }
    }
    Ok(out)
}

/// Finds signs for the generators of `dc` so that its cone is covered by
/// faces of the support, then subdivides the term along them. Returns the
/// resulting pieces grouped by face.
fn place_term(
    space: &AmbientSpace,
    dc: &DecoratedCone,
    g: &Polynomial,
    support: &[SimplicialCone],
    weights: &[RationalVector],
    faces: &[SimplicialCone],
    face_h: &[HCone],
) -> Result<Vec<(SimplicialCone, MeromorphicGerm)>> {
    let n = dc.dim();
    let covered = |v: &RationalVector| face_h.iter().any(|h| h.contains(v));
    for mask in 0u32..(1 << n) {
        let mut flipped = dc.clone();
        let mut sign = Rational::from_integer(1.into());
        for i in 0..n {
            if mask & (1 << i) != 0 {
                let (v, s) = &dc.factors()[i];
                if s % 2 == 1 {
                    sign = -sign;
                }
                let j = flipped.factors().iter().position(|(w, _)| w == v).expect("factor present");
                flipped = flipped.flip(j);
            }
        }
        let gens = flipped.generators();
        if !gens.iter().all(covered) {
            continue;
        }
        let cone = flipped.cone();
        let w = positive_weight(&cone);
        // Support cones that provably miss the cone cannot cut it.
        let near: Vec<SimplicialCone> =
            support.iter().zip(weights).filter(|(s, ws)| !apart(&cone, &w, s, ws)).map(|(s, _)| s.clone()).collect();
        let pieces = match refine_cone(space, &cone, &near) {
            Ok(p) => p,
            Err(Error::NotStrictlyConvexUnion) => continue,
            Err(e) => return Err(e),
        };
        let homes: Option<Vec<SimplicialCone>> = pieces
            .iter()
            .map(|p| {
                let mid = p.generators().iter().fold(RationalVector::zeros(space.dim()), |a, g| a.add(g));
                faces
                    .iter()
                    .zip(face_h)
                    .find(|(f, h)| f.dim() == n && h.contains(&mid) && holds(h, p))
                    .map(|(f, _)| f.clone())
            })
            .collect();
        let Some(homes) = homes else { continue };
        let mut single = FormalExpansion::zero(g.nvars());
        single.add_term(flipped, &g.scale(&sign));
        let y = subdivide_with(space, &single, &mut |_| Ok(pieces.clone()))?;
        let mut out = Vec::new();
        for (c, h) in y.terms() {
            let geo = c.cone();
            let i = pieces.iter().position(|p| p == &geo).expect("piece of the subdivision");
            out.push((homes[i].clone(), MeromorphicGerm::from_parts(h.clone(), c.factors())));
        }
        return Ok(out);
    }
    Err(Error::NotInLaurentSubspace(format!("no sign choice puts {} inside the support", dc.cone())))
}

/// Every generator of `c` satisfies `h`.
fn holds(h: &HCone, c: &SimplicialCone) -> bool {
    c.generators().iter().all(|g| h.contains(g))
}

/// A functional positive on c away from the origin: the sum of the duals of
/// its generators.
fn positive_weight(c: &SimplicialCone) -> RationalVector {
    let k = c.ambient_dim();
    let duals = AmbientSpace::identity(k).q_dual_family(c.generators()).expect("independent generators");
    duals.iter().fold(RationalVector::zeros(k), |acc, d| acc.add(d))
}

/// a ∩ b = {0}, certified by a weight of one cone negative on the other.
fn apart(a: &SimplicialCone, wa: &RationalVector, b: &SimplicialCone, wb: &RationalVector) -> bool {
    b.generators().iter().all(|v| wa.dot(v).is_negative()) || a.generators().iter().all(|v| wb.dot(v).is_negative())
}

/// Writes a germ whose poles are generators of `face` as polar germs on
/// decorated versions of `face`.
fn express_on_face(space: &AmbientSpace, face: &SimplicialCone, germ: &MeromorphicGerm) -> Result<Vec<(DecoratedCone, Polynomial)>> {
    let gens = face.generators();
    let fail = || Error::NotInLaurentSubspace(format!("component on {} has poles outside its span", face));
    let mut poles = Vec::new();
    for (p, s) in germ.poles() {
        let u = gens.iter().find(|u| p.ratio_to(u).is_some()).ok_or_else(fail)?;
        poles.push((u.clone(), s, p.ratio_to(u).unwrap()));
    }
    // p = c·u, so 1/p^s = c^{-s}/u^s.
    let mut num = germ.numerator().clone();
    for (_, s, c) in &poles {
        num = num.scale(&num_traits::pow(c.recip(), *s as usize));
    }
    let fr: Vec<_> = poles.iter().map(|(u, s, _)| (u.clone(), *s)).collect();
    let d = decompose_fractions(space, &[(num, fr)])?;
    if !d.polynomial_part().is_zero() {
        return Err(Error::NotInLaurentSubspace(format!("component on {} has a holomorphic part", face)));
    }
    let mut out = Vec::new();
    for t in d.polar_terms() {
        if t.poles().len() != gens.len() {
            return Err(Error::NotInLaurentSubspace(format!("component on {} contains a term on a smaller cone", face)));
        }
        // Canonical forms are ± the face generators.
        let mut factors = Vec::new();
        let mut sign = Rational::from_integer(1.into());
        for (l, s) in t.poles() {
            let u = gens.iter().find(|u| l.ratio_to(u).is_some()).ok_or_else(fail)?;
            let c = l.ratio_to(u).unwrap();
            sign *= num_traits::pow(c.recip(), *s as usize);
            factors.push((u.clone(), *s));
        }
        out.push((DecoratedCone::new(factors)?, t.numerator().scale(&sign)));
    }
    Ok(out)
}
