//! Common refinement of a family of simplicial cones by hyperplane slicing.

use std::collections::{BTreeMap, BTreeSet};


use super::family::{is_properly_positioned, union_contains_line, ConeFamily};
use super::polycone::PolyCone;
use super::simplicial::SimplicialCone;
use crate::error::{Error, Result};
use crate::exact::{AmbientSpace, RationalVector};

/// Refined family plus, for every input cone, the indices of the output
/// cones that subdivide it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Refinement {
    pub family: ConeFamily,
    pub index_sets: Vec<Vec<usize>>,
}

/// All facet hyperplanes of the cones, plus equations cutting out their spans.
fn hyperplanes(family: &[SimplicialCone]) -> Vec<RationalVector> {
    let mut set: BTreeSet<RationalVector> = BTreeSet::new();
    for c in family {
        let h = c.h_rep();
        for a in h.ineqs.iter().chain(&h.eqs) {
            if !a.is_zero() {
                set.insert(a.pseudo_positive_primitive().0);
            }
        }
    }
    set.into_iter().collect()
}

/// Splits `c` into the cells cut out by the hyperplanes.
fn slice(c: &SimplicialCone, planes: &[RationalVector]) -> Result<Vec<PolyCone>> {
    let mut pieces = vec![PolyCone::from_simplicial(c)];
    for h in planes {
        let mut next = Vec::with_capacity(pieces.len());
        for p in pieces {
            match p.split(h) {
                Some((a, b)) => next.extend([a, b]),
                None => next.push(p),
            }
        }
        pieces = next;
    }
    Ok(pieces)
}

fn identity_refinement(family: &[SimplicialCone]) -> Refinement {
    let mut cones = family.to_vec();
    cones.sort();
    cones.dedup();
    let index_sets = family.iter().map(|c| vec![cones.binary_search(c).expect("present")]).collect();
    Refinement { family: ConeFamily::new(cones), index_sets }
}

/// Properly positioned family subdividing every input cone. A family that is
/// already properly positioned comes back unchanged (sorted). Requires that the
/// union of the inputs contains no line.
pub fn common_refinement(space: &AmbientSpace, family: &[SimplicialCone]) -> Result<Refinement> {
    space.check_cap()?;
    if union_contains_line(space, family)? {
        return Err(Error::NotStrictlyConvexUnion);
    }
    if is_properly_positioned(space, family)? {
        return Ok(identity_refinement(family));
    }
    let planes = hyperplanes(family);
    let mut per_input: Vec<BTreeSet<SimplicialCone>> = Vec::with_capacity(family.len());
    for c in family {
        let mut set = BTreeSet::new();
        for piece in slice(c, &planes)? {
            set.extend(piece.pulling_triangulation());
        }
        per_input.push(set);
    }
    let all: BTreeSet<SimplicialCone> = per_input.iter().flatten().cloned().collect();
    let index: BTreeMap<SimplicialCone, usize> = all.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let index_sets = per_input.iter().map(|s| s.iter().map(|c| index[c]).collect()).collect();
    Ok(Refinement { family: ConeFamily::new(all.into_iter().collect()), index_sets })
}

/// The pieces that `common_refinement` of `c` together with `others` assigns
/// to `c`, without slicing the other cones.
pub fn refine_cone(space: &AmbientSpace, c: &SimplicialCone, others: &[SimplicialCone]) -> Result<Vec<SimplicialCone>> {
    space.check_cap()?;
    let mut family = vec![c.clone()];
    family.extend(others.iter().cloned());
    if union_contains_line(space, &family)? {
        return Err(Error::NotStrictlyConvexUnion);
    }
    if is_properly_positioned(space, &family)? {
        return Ok(vec![c.clone()]);
    }
    let mut set = BTreeSet::new();
    for piece in slice(c, &hyperplanes(&family))? {
        set.extend(piece.pulling_triangulation());
    }
    Ok(set.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::valuation::check_subdivision;

    fn c(g: &[&[i64]]) -> SimplicialCone {
        SimplicialCone::from_i64(g).unwrap()
    }

    #[test]
    fn quadrant_and_half() {
        let s = AmbientSpace::identity(2);
        let fam = [c(&[&[1, 0], &[0, 1]]), c(&[&[1, 0], &[1, 1]])];
        let r = common_refinement(&s, &fam).unwrap();
        assert_eq!(r.family.cones, vec![c(&[&[0, 1], &[1, 1]]), c(&[&[1, 0], &[1, 1]])]);
        assert_eq!(r.index_sets, vec![vec![0, 1], vec![1]]);
        assert!(is_properly_positioned(&s, &r.family.cones).unwrap());
        for (cone, idx) in fam.iter().zip(&r.index_sets) {
            let pieces: Vec<_> = idx.iter().map(|&i| r.family.cones[i].clone()).collect();
            check_subdivision(&s, &pieces, cone).unwrap();
        }
    }

    #[test]
    fn proper_family_is_kept() {
        let s = AmbientSpace::identity(2);
        let fam = [c(&[&[1, 0], &[1, 1]]), c(&[&[0, 1], &[1, 1]])];
        let r = common_refinement(&s, &fam).unwrap();
        let mut sorted = fam.to_vec();
        sorted.sort();
        assert_eq!(r.family.cones, sorted);
        let single = common_refinement(&s, &fam[..1]).unwrap();
        assert_eq!(single.family.cones, fam[..1].to_vec());
    }

    #[test]
    fn lower_dimensional_members() {
        let s = AmbientSpace::identity(3);
        let fam = [c(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), c(&[&[1, 1, 0]]), c(&[&[1, 0, 1], &[0, 1, 0]])];
        let r = common_refinement(&s, &fam).unwrap();
        assert!(is_properly_positioned(&s, &r.family.cones).unwrap());
        for (cone, idx) in fam.iter().zip(&r.index_sets) {
            let pieces: Vec<_> = idx.iter().map(|&i| r.family.cones[i].clone()).collect();
            check_subdivision(&s, &pieces, cone).unwrap();
        }
    }

    #[test]
    fn single_cone_matches_full_refinement() {
        let s = AmbientSpace::identity(3);
        let fam = [c(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), c(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]), c(&[&[1, 2, 1]])];
        let r = common_refinement(&s, &fam).unwrap();
        let want: Vec<_> = r.index_sets[0].iter().map(|&i| r.family.cones[i].clone()).collect();
        assert_eq!(refine_cone(&s, &fam[0], &fam[1..]).unwrap(), want);
    }

    #[test]
    fn rejects_lines() {
        let s = AmbientSpace::identity(1);
        assert_eq!(common_refinement(&s, &[c(&[&[1]]), c(&[&[-1]])]), Err(Error::NotStrictlyConvexUnion));
    }
}
