use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::Zero;

use super::dd::{extreme_rays, HCone};
use super::simplicial::SimplicialCone;
use crate::error::{Error, Result};
use crate::exact::{RationalMatrix, RationalVector};
use crate::germs::form::rank;

/// A pointed polyhedral cone given by its extreme rays, with the
/// H-representation it was computed from.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyCone {
    rays: Vec<RationalVector>,
    span_dim: usize,
    h: HCone,
}

impl PolyCone {
    /// Fails with `InvalidInput` if the cone contains a line.
    pub fn from_h(h: HCone) -> Result<Self> {
        let v = extreme_rays(&h);
        if !v.lineality.is_empty() {
            return Err(Error::InvalidInput("cone is not pointed".into()));
        }
        let span_dim = rank(&v.rays);
        Ok(PolyCone { rays: v.rays, span_dim, h })
    }

    /// Conic hull of arbitrary generators.
    pub fn from_generators(gens: &[RationalVector], k: usize) -> Result<Self> {
        let gens: Vec<RationalVector> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        if gens.is_empty() {
            return Self::from_h(HCone { dim: k, ineqs: vec![], eqs: (0..k).map(|i| RationalVector::unit(k, i)).collect() });
        }
        let eqs = RationalMatrix::from_rows(&gens, k).kernel();
        // Facet normals: extreme rays of the dual cone { a : a·g ≥ 0 }.
        let dual = extreme_rays(&HCone { dim: k, ineqs: gens.clone(), eqs: vec![] });
        let mut ineqs = dual.rays;
        if ineqs.is_empty() && eqs.is_empty() {
            return Err(Error::InvalidInput("generators span a line-containing cone".into()));
        }
        ineqs.sort();
        let pc = Self::from_h(HCone { dim: k, ineqs, eqs })?;
        Ok(pc)
    }

    /// The two halves of the cone on either side of the hyperplane a·x = 0,
    /// or `None` if the hyperplane does not cut it. Works on the rays
    /// directly: a pair of rays on opposite sides contributes a new ray
    /// exactly when the two are adjacent.
    pub fn split(&self, a: &RationalVector) -> Option<(PolyCone, PolyCone)> {
        let side: Vec<Ordering> = self.rays.iter().map(|r| a.dot(r).cmp(&Zero::zero())).collect();
        if !side.contains(&Ordering::Greater) || !side.contains(&Ordering::Less) {
            return None;
        }
        let tight: Vec<BTreeSet<usize>> = self
            .rays
            .iter()
            .map(|r| self.h.ineqs.iter().enumerate().filter(|(_, b)| b.dot(r).is_zero()).map(|(i, _)| i).collect())
            .collect();
        let mut cut = Vec::new();
        for (i, p) in self.rays.iter().enumerate().filter(|(i, _)| side[*i] == Ordering::Greater) {
            for (j, n) in self.rays.iter().enumerate().filter(|(j, _)| side[*j] == Ordering::Less) {
                let common: BTreeSet<usize> = tight[i].intersection(&tight[j]).copied().collect();
                let adjacent = (0..self.rays.len()).all(|l| l == i || l == j || !common.is_subset(&tight[l]));
                if adjacent {
                    cut.push(n.scale(&a.dot(p)).sub(&p.scale(&a.dot(n))).ray());
                }
            }
        }
        let half = |keep: Ordering, normal: RationalVector| {
            let mut rays: Vec<RationalVector> =
                self.rays.iter().zip(&side).filter(|(_, s)| **s != keep.reverse()).map(|(r, _)| r.clone()).collect();
            rays.extend(cut.iter().cloned());
            rays.sort();
            rays.dedup();
            let mut h = self.h.clone().with_ineq(normal);
            // Keep only facets, so that later splits stay cheap.
            let target = self.span_dim - 1;
            h.ineqs.retain(|b| {
                let on: Vec<RationalVector> = rays.iter().filter(|r| b.dot(r).is_zero()).cloned().collect();
                on.len() >= target && rank(&on) == target
            });
            h.ineqs.sort();
            h.ineqs.dedup();
            PolyCone { rays, span_dim: self.span_dim, h }
        };
        Some((half(Ordering::Greater, a.clone()), half(Ordering::Less, a.neg())))
    }

    pub fn from_simplicial(c: &SimplicialCone) -> Self {
        PolyCone { rays: c.generators().to_vec(), span_dim: c.dim(), h: c.h_rep() }
    }

    pub fn rays(&self) -> &[RationalVector] {
        &self.rays
    }

    pub fn span_dim(&self) -> usize {
        self.span_dim
    }

    pub fn h_rep(&self) -> &HCone {
        &self.h
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.span_dim
    }

    pub fn contains(&self, x: &RationalVector) -> bool {
        self.h.contains(x)
    }

    /// Facets of the face given by ray indices, each as sorted ray indices.
    fn facets_of(&self, face: &[usize], fdim: usize) -> Vec<Vec<usize>> {
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        for a in &self.h.ineqs {
            let g: Vec<usize> = face.iter().copied().filter(|&i| a.dot(&self.rays[i]).is_zero()).collect();
            if g.len() == face.len() {
                continue;
            }
            let gr: Vec<RationalVector> = g.iter().map(|&i| self.rays[i].clone()).collect();
            if rank(&gr) + 1 == fdim {
                out.insert(g);
            }
        }
        out.into_iter().collect()
    }

    fn pull(&self, face: &[usize], fdim: usize, order: &dyn Fn(&RationalVector, &RationalVector) -> Ordering, out: &mut Vec<Vec<usize>>) {
        if face.len() == fdim {
            out.push(face.to_vec());
            return;
        }
        let apex = *face.iter().min_by(|&&a, &&b| order(&self.rays[a], &self.rays[b])).unwrap();
        for g in self.facets_of(face, fdim) {
            if g.contains(&apex) {
                continue;
            }
            let mut sub = Vec::new();
            self.pull(&g, fdim - 1, order, &mut sub);
            for mut s in sub {
                s.push(apex);
                s.sort();
                out.push(s);
            }
        }
    }

    /// Pulling triangulation using rays only; the apex of every face is its
    /// smallest ray under `order`. Shared faces are triangulated identically.
    pub fn pulling_triangulation_by(&self, order: &dyn Fn(&RationalVector, &RationalVector) -> Ordering) -> Vec<SimplicialCone> {
        if self.rays.is_empty() {
            return Vec::new();
        }
        let all: Vec<usize> = (0..self.rays.len()).collect();
        let mut simplices = Vec::new();
        self.pull(&all, self.span_dim, order, &mut simplices);
        let mut cones: Vec<SimplicialCone> = simplices
            .into_iter()
            .map(|s| SimplicialCone::new(s.iter().map(|&i| self.rays[i].clone()).collect()).expect("simplex"))
            .collect();
        cones.sort();
        cones.dedup();
        cones
    }

    /// Pulling triangulation in the global lexicographic ray order.
    pub fn pulling_triangulation(&self) -> Vec<SimplicialCone> {
        self.pulling_triangulation_by(&|a, b| a.cmp(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> RationalVector {
        RationalVector::from_i64(c)
    }

    #[test]
    fn square_cone_triangulates_into_two() {
        let gens = [v(&[1, 0, 1]), v(&[0, 1, 1]), v(&[-1, 0, 1]), v(&[0, -1, 1])];
        let pc = PolyCone::from_generators(&gens, 3).unwrap();
        assert_eq!(pc.rays().len(), 4);
        assert_eq!(pc.span_dim(), 3);
        let t = pc.pulling_triangulation();
        assert_eq!(t.len(), 2);
        // Pulling from (0,-1,1) instead of (-1,0,1) picks the other diagonal.
        let r = pc.pulling_triangulation_by(&|a, b| a.coords()[1].cmp(&b.coords()[1]).then(a.cmp(b)));
        assert_eq!(r.len(), 2);
        assert_ne!(t, r);
    }

    #[test]
    fn redundant_generator_dropped() {
        let gens = [v(&[1, 0]), v(&[0, 1]), v(&[1, 1])];
        let pc = PolyCone::from_generators(&gens, 2).unwrap();
        assert_eq!(pc.rays(), &[v(&[0, 1]), v(&[1, 0])]);
        assert!(pc.is_simplicial());
    }

    #[test]
    fn lower_dimensional_polycone() {
        let gens = [v(&[1, 0, 1, 0]), v(&[0, 1, 1, 0]), v(&[-1, 0, 1, 0]), v(&[0, -1, 1, 0])];
        let pc = PolyCone::from_generators(&gens, 4).unwrap();
        assert_eq!(pc.span_dim(), 3);
        assert_eq!(pc.pulling_triangulation().len(), 2);
    }

    #[test]
    fn split_agrees_with_double_description() {
        let gens = [v(&[1, 0, 1]), v(&[0, 1, 1]), v(&[-1, 0, 1]), v(&[0, -1, 1])];
        let pc = PolyCone::from_generators(&gens, 3).unwrap();
        for a in [v(&[1, 1, 0]), v(&[1, 0, 0]), v(&[2, -1, 1]), v(&[1, 3, -2])] {
            let (p, n) = pc.split(&a).unwrap();
            for (half, normal) in [(p, a.clone()), (n, a.neg())] {
                let direct = PolyCone::from_h(pc.h_rep().clone().with_ineq(normal)).unwrap();
                assert_eq!(half.rays(), direct.rays());
                assert_eq!(half.h_rep().ineqs.len(), half.rays().len());
            }
        }
        assert!(pc.split(&v(&[0, 0, 1])).is_none());
        let flat = PolyCone::from_generators(&[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[1, 1, 0])], 3).unwrap();
        let (p, n) = flat.split(&v(&[1, -1, 5])).unwrap();
        let mut want = vec![v(&[1, 0, 0]), v(&[1, 1, 0])];
        want.sort();
        assert_eq!(p.rays(), want.as_slice());
        assert_eq!(n.span_dim(), 2);
    }
}
