use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed};

use super::dd::extreme_rays;
use super::simplicial::SimplicialCone;
use crate::error::Result;
use crate::exact::{AmbientSpace, Rational, RationalMatrix, RationalVector};

/// An ordered list of simplicial cones.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ConeFamily {
    pub cones: Vec<SimplicialCone>,
}

impl ConeFamily {
    pub fn new(cones: Vec<SimplicialCone>) -> Self {
        ConeFamily { cones }
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SimplicialCone> {
        self.cones.iter()
    }

    /// The family together with every face of every member.
    pub fn face_closure(&self) -> Vec<SimplicialCone> {
        let mut all: Vec<SimplicialCone> = self.cones.iter().flat_map(|c| c.faces()).filter(|f| f.dim() > 0).collect();
        all.sort();
        all.dedup();
        all
    }
}

/// Extreme rays of c1 ∩ c2.
pub fn intersection_rays(space: &AmbientSpace, c1: &SimplicialCone, c2: &SimplicialCone) -> Result<Vec<RationalVector>> {
    space.check_cap()?;
    Ok(extreme_rays(&c1.h_rep().stacked(&c2.h_rep())).rays)
}

/// c1 ∩ c2 is a face of both cones.
pub fn cones_meet_along_face(space: &AmbientSpace, c1: &SimplicialCone, c2: &SimplicialCone) -> Result<bool> {
    space.check_cap()?;
    if face_certificate(c1, c2) {
        return Ok(true);
    }
    let rays = intersection_rays(space, c1, c2)?;
    Ok(c1.is_face(&rays) && c2.is_face(&rays))
}

/// Decides whether some w satisfies e·w = 0 for every `eqs` row and a·w > 0
/// for every `strict` row, by Fourier–Motzkin elimination.
fn strictly_feasible(k: usize, eqs: &[RationalVector], strict: &[RationalVector]) -> bool {
    let basis: Vec<RationalVector> = if eqs.is_empty() {
        (0..k).map(|i| RationalVector::unit(k, i)).collect()
    } else {
        RationalMatrix::from_rows(eqs, k).kernel()
    };
    // Rows in the coordinates of the kernel basis, made primitive.
    let mut rows: BTreeSet<RationalVector> =
        strict.iter().map(|a| RationalVector::new(basis.iter().map(|b| a.dot(b)).collect()).ray()).collect();
    for j in 0..basis.len() {
        if rows.iter().any(RationalVector::is_zero) {
            return false;
        }
        let (pos, rest): (Vec<_>, Vec<_>) = rows.into_iter().partition(|r| r.0[j].is_positive());
        let (neg, zero): (Vec<_>, Vec<_>) = rest.into_iter().partition(|r| r.0[j].is_negative());
        rows = zero.into_iter().collect();
        for p in &pos {
            for n in &neg {
                let combo = p.scale(&n.0[j].abs()).add(&n.scale(&p.0[j]));
                rows.insert(combo.ray());
            }
        }
    }
    rows.is_empty()
}

/// A functional w ≥ 0 on c1 and ≤ 0 on c2 vanishing on exactly the shared
/// generators S proves c1 ∩ c2 = cone(S), a common face. Such a w exists
/// whenever the cones meet along a common face.
fn face_certificate(c1: &SimplicialCone, c2: &SimplicialCone) -> bool {
    let k = c1.ambient_dim();
    let shared: Vec<RationalVector> = c1.generators().iter().filter(|g| c2.generators().contains(g)).cloned().collect();
    let strict: Vec<RationalVector> = c1
        .generators()
        .iter()
        .filter(|g| !shared.contains(g))
        .cloned()
        .chain(c2.generators().iter().filter(|g| !shared.contains(g)).map(RationalVector::neg))
        .collect();
    strictly_feasible(k, &shared, &strict)
}

/// w_i = m^i with m large enough that w pairs positively with every
/// pseudo-positive generator of the family. None if some generator is not
/// pseudo-positive.
fn lex_weight(family: &[SimplicialCone]) -> Option<RationalVector> {
    let k = family.first()?.ambient_dim();
    let mut m = Rational::one();
    for g in family.iter().flat_map(|c| c.generators()) {
        let l = g.leading_index()?;
        if !g.is_pseudo_positive() {
            return None;
        }
        let total: Rational = g.coords().iter().map(|x| x.abs()).sum();
        m = m.max(total / &g.coords()[l] + Rational::one());
    }
    let mut w = vec![Rational::one(); k];
    for i in 1..k {
        w[i] = &w[i - 1] * &m;
    }
    Some(RationalVector::new(w))
}

/// A functional positive on every generator of both cones proves
/// c1 ∩ −c2 = {0}.
fn opposite_certificate(c1: &SimplicialCone, c2: &SimplicialCone) -> bool {
    let gens: Vec<RationalVector> = c1.generators().iter().chain(c2.generators()).cloned().collect();
    strictly_feasible(c1.ambient_dim(), &[], &gens)
}

/// Dual vectors of a cone's generators: d_i · g_j = δ_ij.
fn duals(c: &SimplicialCone) -> Vec<RationalVector> {
    if c.generators().is_empty() {
        return Vec::new();
    }
    AmbientSpace::identity(c.ambient_dim()).q_dual_family(c.generators()).expect("independent generators")
}

/// With S the shared generators, w = Σ d_g over the other generators of c1
/// is ≥ 0 on c1 and vanishes exactly on cone(S). If w < 0 on the other
/// generators of c2, the cones meet along cone(S).
fn dual_certificate(c1: &SimplicialCone, d1: &[RationalVector], c2: &SimplicialCone) -> bool {
    let k = c1.ambient_dim();
    let w = c1
        .generators()
        .iter()
        .zip(d1)
        .filter(|(g, _)| !c2.generators().contains(g))
        .fold(RationalVector::zeros(k), |acc, (_, d)| acc.add(d));
    c2.generators().iter().filter(|v| !c1.generators().contains(v)).all(|v| w.dot(v).is_negative())
}

/// Some nonzero v has v ∈ C_i and −v ∈ C_j.
pub fn union_contains_line(space: &AmbientSpace, family: &[SimplicialCone]) -> Result<bool> {
    Ok(opposite_pair(space, family)?.is_some())
}

fn opposite_pair(space: &AmbientSpace, family: &[SimplicialCone]) -> Result<Option<(usize, usize)>> {
    space.check_cap()?;
    // A weight positive on every generator settles all pairs at once.
    if let Some(w) = lex_weight(family) {
        if family.iter().flat_map(|c| c.generators()).all(|g| w.dot(g).is_positive()) {
            return Ok(None);
        }
    }
    for i in 0..family.len() {
        for j in i..family.len() {
            if opposite_certificate(&family[i], &family[j]) {
                continue;
            }
            if !intersection_rays(space, &family[i], &family[j].neg())?.is_empty() {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Outcome of a properly-positioned check with a witness on failure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Positioning {
    Proper,
    NotAlongFace(usize, usize),
    ContainsLine(usize, usize),
}

impl fmt::Display for Positioning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Positioning::Proper => write!(f, "properly positioned"),
            Positioning::NotAlongFace(i, j) => write!(f, "cones {} and {} do not meet along a common face", i, j),
            Positioning::ContainsLine(i, j) => write!(f, "cone {} and the negative of cone {} intersect, so the union contains a line", i, j),
        }
    }
}

pub fn check_properly_positioned(space: &AmbientSpace, family: &[SimplicialCone]) -> Result<Positioning> {
    space.check_cap()?;
    let d: Vec<Vec<RationalVector>> = family.iter().map(duals).collect();
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            let (a, b) = (&family[i], &family[j]);
            if dual_certificate(a, &d[i], b) || dual_certificate(b, &d[j], a) {
                continue;
            }
            if !cones_meet_along_face(space, a, b)? {
                return Ok(Positioning::NotAlongFace(i, j));
            }
        }
    }
    Ok(match opposite_pair(space, family)? {
        Some((i, j)) => Positioning::ContainsLine(i, j),
        None => Positioning::Proper,
    })
}

pub fn is_properly_positioned(space: &AmbientSpace, family: &[SimplicialCone]) -> Result<bool> {
    Ok(check_properly_positioned(space, family)? == Positioning::Proper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    fn c(g: &[&[i64]]) -> SimplicialCone {
        SimplicialCone::from_i64(g).unwrap()
    }

    #[test]
    fn meeting_along_faces() {
        let s = AmbientSpace::identity(2);
        let a = c(&[&[1, 0], &[1, 1]]);
        let b = c(&[&[0, 1], &[1, 1]]);
        assert!(cones_meet_along_face(&s, &a, &b).unwrap());
        assert!(cones_meet_along_face(&s, &a, &a).unwrap());
        let q = c(&[&[1, 0], &[0, 1]]);
        let d = c(&[&[1, 1]]);
        assert!(!cones_meet_along_face(&s, &q, &d).unwrap());
    }

    #[test]
    fn lines_in_unions() {
        let s = AmbientSpace::identity(2);
        assert!(union_contains_line(&s, &[c(&[&[1, 0]]), c(&[&[-1, 0]])]).unwrap());
        assert!(!union_contains_line(&s, &[c(&[&[1, 0], &[1, 1]]), c(&[&[0, 1], &[1, 1]])]).unwrap());
        assert!(!union_contains_line(&s, &[c(&[&[1, 0]])]).unwrap());
    }

    #[test]
    fn properly_positioned_examples() {
        let s = AmbientSpace::identity(2);
        assert!(is_properly_positioned(&s, &[c(&[&[1, 0], &[0, 1]])]).unwrap());
        assert!(is_properly_positioned(&s, &[c(&[&[1, 0], &[1, 1]]), c(&[&[0, 1], &[1, 1]])]).unwrap());
        assert_eq!(
            check_properly_positioned(&s, &[c(&[&[1, 0], &[0, 1]]), c(&[&[1, 1]])]).unwrap(),
            Positioning::NotAlongFace(0, 1)
        );
    }

    #[test]
    fn cap_is_enforced() {
        let s = AmbientSpace::identity(3).with_cap(2);
        let a = c(&[&[1, 0, 0]]);
        assert_eq!(cones_meet_along_face(&s, &a, &a), Err(Error::DimensionCapExceeded { dim: 3, cap: 2 }));
    }
}
