//! Double description: extreme rays of { x : A x ≥ 0, B x = 0 }.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::exact::{Rational, RationalMatrix, RationalVector};

/// H-representation of a polyhedral cone in ℚ^d.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HCone {
    pub dim: usize,
    pub ineqs: Vec<RationalVector>,
    pub eqs: Vec<RationalVector>,
}

/// V-representation: extreme rays (primitive, sorted) plus a lineality basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VCone {
    pub rays: Vec<RationalVector>,
    pub lineality: Vec<RationalVector>,
}

impl HCone {
    pub fn new(dim: usize) -> Self {
        HCone { dim, ineqs: Vec::new(), eqs: Vec::new() }
    }

    pub fn with_ineq(mut self, a: RationalVector) -> Self {
        self.ineqs.push(a);
        self
    }

    pub fn stacked(&self, other: &HCone) -> HCone {
        HCone {
            dim: self.dim,
            ineqs: self.ineqs.iter().chain(&other.ineqs).cloned().collect(),
            eqs: self.eqs.iter().chain(&other.eqs).cloned().collect(),
        }
    }

    pub fn contains(&self, x: &RationalVector) -> bool {
        self.ineqs.iter().all(|a| !a.dot(x).is_negative()) && self.eqs.iter().all(|b| b.dot(x).is_zero())
    }
}

fn tight_rank(rows: &[RationalVector], x: &RationalVector, y: Option<&RationalVector>, d: usize) -> usize {
    let tight: Vec<RationalVector> = rows
        .iter()
        .filter(|a| a.dot(x).is_zero() && y.is_none_or(|y| a.dot(y).is_zero()))
        .cloned()
        .collect();
    if tight.is_empty() {
        0
    } else {
        RationalMatrix::from_rows(&tight, d).rank()
    }
}

struct State {
    d: usize,
    lineality: Vec<RationalVector>,
    rays: Vec<RationalVector>,
    processed: Vec<RationalVector>,
}

impl State {
    /// Removes a lineality direction not annihilated by `a`; returns it
    /// oriented so that a·l0 > 0, after shifting the others into a⊥.
    fn split_lineality(&mut self, a: &RationalVector) -> Option<RationalVector> {
        let idx = self.lineality.iter().position(|l| !a.dot(l).is_zero())?;
        let mut l0 = self.lineality.remove(idx);
        if a.dot(&l0).is_negative() {
            l0 = l0.neg();
        }
        let al0 = a.dot(&l0);
        let shift = |v: &RationalVector| -> RationalVector {
            let c: Rational = a.dot(v) / &al0;
            if c.is_zero() {
                v.clone()
            } else {
                v.sub(&l0.scale(&c))
            }
        };
        self.lineality = self.lineality.iter().map(shift).collect();
        self.rays = self.rays.iter().map(|r| shift(r).ray()).collect();
        Some(l0)
    }

    /// Standard DD step when `a` vanishes on the lineality space.
    fn cut(&mut self, a: &RationalVector, keep_positive: bool) {
        let target = self.d.saturating_sub(self.lineality.len() + 2);
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut next = Vec::new();
        for r in &self.rays {
            let v = a.dot(r);
            if v.is_zero() {
                next.push(r.clone());
            } else if v.is_positive() {
                pos.push((r.clone(), v));
            } else {
                neg.push((r.clone(), v));
            }
        }
        for (p, vp) in &pos {
            for (n, vn) in &neg {
                if tight_rank(&self.processed, p, Some(n), self.d) != target {
                    continue;
                }
                let r = n.scale(vp).sub(&p.scale(vn));
                if !r.is_zero() {
                    next.push(r.ray());
                }
            }
        }
        if keep_positive {
            next.extend(pos.into_iter().map(|(r, _)| r));
        }
        self.rays = next;
    }

    fn add_ineq(&mut self, a: &RationalVector) {
        if a.is_zero() {
            return;
        }
        if let Some(l0) = self.split_lineality(a) {
            self.rays.push(l0.ray());
        } else {
            self.cut(a, true);
        }
        self.processed.push(a.clone());
        self.prune();
    }

    fn add_eq(&mut self, b: &RationalVector) {
        if b.is_zero() {
            return;
        }
        if self.split_lineality(b).is_none() {
            self.cut(b, false);
        }
        self.processed.push(b.clone());
        self.prune();
    }

    /// Drops duplicates and anything failing the rank test for extremality.
    fn prune(&mut self) {
        let target = self.d.saturating_sub(self.lineality.len() + 1);
        let set: BTreeSet<RationalVector> = self.rays.drain(..).filter(|r| !r.is_zero()).collect();
        self.rays = set.into_iter().filter(|r| tight_rank(&self.processed, r, None, self.d) == target).collect();
    }
}

/// Extreme rays and lineality of an H-cone.
pub fn extreme_rays(h: &HCone) -> VCone {
    let d = h.dim;
    let mut st = State {
        d,
        lineality: (0..d).map(|i| RationalVector::unit(d, i)).collect(),
        rays: Vec::new(),
        processed: Vec::new(),
    };
    for b in &h.eqs {
        st.add_eq(b);
    }
    for a in &h.ineqs {
        st.add_ineq(a);
    }
    let mut rays = st.rays;
    rays.sort();
    VCone { rays, lineality: st.lineality }
}
