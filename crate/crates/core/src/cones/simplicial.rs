use std::fmt;

use itertools::Itertools;
use num_traits::Signed;

use super::dd::HCone;
use crate::error::{Error, Result};
use crate::exact::{AmbientSpace, Rational, RationalMatrix, RationalVector};
use crate::germs::form::independent;

/// Cone spanned by linearly independent primitive integer generators, kept
/// in lexicographic order. Faces are the sub-lists of generators.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SimplicialCone {
    generators: Vec<RationalVector>,
}

impl SimplicialCone {
    /// Generators are rescaled by positive factors only; direction is kept.
    pub fn new(generators: Vec<RationalVector>) -> Result<Self> {
        if generators.iter().any(RationalVector::is_zero) {
            return Err(Error::InvalidInput("zero generator".into()));
        }
        if let Some(k) = generators.first().map(RationalVector::dim) {
            if generators.iter().any(|g| g.dim() != k) {
                return Err(Error::InvalidInput("generators of different dimensions".into()));
            }
        }
        if !independent(&generators) {
            return Err(Error::DependentInput);
        }
        let mut gens: Vec<RationalVector> = generators.iter().map(RationalVector::ray).collect();
        gens.sort();
        Ok(SimplicialCone { generators: gens })
    }

    pub fn from_i64(gens: &[&[i64]]) -> Result<Self> {
        Self::new(gens.iter().map(|g| RationalVector::from_i64(g)).collect())
    }

    pub fn generators(&self) -> &[RationalVector] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.generators.first().map_or(0, RationalVector::dim)
    }

    pub fn neg(&self) -> Self {
        let mut gens: Vec<RationalVector> = self.generators.iter().map(RationalVector::neg).collect();
        gens.sort();
        SimplicialCone { generators: gens }
    }

    /// Unique coordinates of `x` in the generator basis, if `x` lies in the span.
    pub fn coordinates(&self, x: &RationalVector) -> Option<Vec<Rational>> {
        if self.generators.is_empty() {
            return x.is_zero().then(Vec::new);
        }
        let m = RationalMatrix::from_cols(&self.generators, x.dim());
        m.solve(x).map(|c| c.0)
    }

    pub fn contains(&self, x: &RationalVector) -> bool {
        self.coordinates(x).is_some_and(|c| c.iter().all(|v| !v.is_negative()))
    }

    /// Sum of the generators, a point of the relative interior.
    pub fn interior_point(&self) -> RationalVector {
        let k = self.ambient_dim();
        self.generators.iter().fold(RationalVector::zeros(k), |a, g| a.add(g))
    }

    pub fn contains_cone(&self, other: &SimplicialCone) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    pub fn is_face(&self, sub: &[RationalVector]) -> bool {
        sub.iter().all(|g| self.generators.contains(g))
    }

    pub fn faces(&self) -> Vec<SimplicialCone> {
        (0..=self.dim())
            .flat_map(|n| self.generators.iter().cloned().combinations(n))
            .map(|g| SimplicialCone { generators: g })
            .collect()
    }

    /// Row-reduced basis of the linear span.
    pub fn span_key(&self) -> Vec<RationalVector> {
        span_key(&self.generators, self.ambient_dim())
    }

    /// Facet inequalities w_i (dual basis inside the span) and equations
    /// cutting out the span.
    pub fn h_rep(&self) -> HCone {
        let k = self.ambient_dim();
        let ineqs = if self.generators.is_empty() {
            Vec::new()
        } else {
            AmbientSpace::identity(k).q_dual_family(&self.generators).expect("independent generators")
        };
        let eqs = if self.generators.is_empty() {
            (0..k).map(|i| RationalVector::unit(k, i)).collect()
        } else {
            RationalMatrix::from_rows(&self.generators, k).kernel()
        };
        HCone { dim: k, ineqs, eqs }
    }
}

/// Row-reduced echelon basis of span(vs).
pub fn span_key(vs: &[RationalVector], k: usize) -> Vec<RationalVector> {
    if vs.is_empty() {
        return Vec::new();
    }
    let (r, piv) = RationalMatrix::from_rows(vs, k).rref();
    (0..piv.len()).map(|i| r.row(i)).collect()
}

impl fmt::Display for SimplicialCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.generators.iter().map(|g| g.to_string()).join(", "))
    }
}
