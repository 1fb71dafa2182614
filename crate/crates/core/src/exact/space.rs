use num_traits::{Signed, Zero};

use super::matrix::RationalMatrix;
use super::rational::Rational;
use super::vector::RationalVector;
use crate::error::{Error, Result};

/// Default cap on the ambient dimension for cone computations.
pub const DEFAULT_DIMENSION_CAP: usize = 6;

/// ℚ^k with a symmetric positive-definite Gram matrix Q.
///
/// Linear forms act by the standard pairing; Q only decides orthogonality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AmbientSpace {
    k: usize,
    gram: RationalMatrix,
    cap: usize,
}

impl AmbientSpace {
    pub fn new(gram: RationalMatrix) -> Result<Self> {
        if gram.rows() != gram.cols() || gram.rows() == 0 {
            return Err(Error::DimensionMismatch { expected: gram.rows().max(1), found: gram.cols() });
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if gram.leading_principal_minors().iter().any(|m| !m.is_positive()) {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(AmbientSpace { k: gram.rows(), gram, cap: DEFAULT_DIMENSION_CAP })
    }

    pub fn identity(k: usize) -> Self {
        AmbientSpace { k, gram: RationalMatrix::identity(k), cap: DEFAULT_DIMENSION_CAP }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn gram(&self) -> &RationalMatrix {
        &self.gram
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn check_cap(&self) -> Result<()> {
        if self.k > self.cap {
            Err(Error::DimensionCapExceeded { dim: self.k, cap: self.cap })
        } else {
            Ok(())
        }
    }

    /// Q(u, v) = uᵀ Q v.
    pub fn inner(&self, u: &RationalVector, v: &RationalVector) -> Rational {
        u.dot(&self.gram.mul_vec(v))
    }

    /// Q · v, the vector representing w ↦ Q(v, w) under the standard pairing.
    pub fn q_times(&self, v: &RationalVector) -> RationalVector {
        self.gram.mul_vec(v)
    }

    /// Basis of { w : Q(w, v) = 0 for all v in `vs` }.
    pub fn q_orthogonal_complement(&self, vs: &[RationalVector]) -> Vec<RationalVector> {
        if vs.is_empty() {
            return (0..self.k).map(|i| RationalVector::unit(self.k, i)).collect();
        }
        let rows: Vec<RationalVector> = vs.iter().map(|v| self.q_times(v)).collect();
        RationalMatrix::from_rows(&rows, self.k).kernel()
    }

    /// L_j* in span(Ls) with Q(L_i, L_j*) = δ_ij.
    pub fn q_dual_family(&self, ls: &[RationalVector]) -> Result<Vec<RationalVector>> {
        let n = ls.len();
        let mut g = RationalMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g.set(i, j, self.inner(&ls[i], &ls[j]));
            }
        }
        let ginv = g.inverse().ok_or(Error::DependentInput)?;
        Ok((0..n)
            .map(|j| {
                let mut v = RationalVector::zeros(self.k);
                for (i, l) in ls.iter().enumerate() {
                    let c = ginv.get(i, j);
                    if !c.is_zero() {
                        v = v.add(&l.scale(c));
                    }
                }
                v
            })
            .collect())
    }

    /// Directions u_i = Q·L_i* with ⟨L_j, u_i⟩ = δ_ij and ⟨ℓ, u_i⟩ = 0 for every ℓ
    /// Q-orthogonal to the Ls. The projector ε ↦ ε − Σ ⟨L_i, ε⟩ u_i kills the
    /// L-directions and fixes every Q-orthogonal linear form.
    pub fn transverse_directions(&self, ls: &[RationalVector]) -> Result<Vec<RationalVector>> {
        Ok(self.q_dual_family(ls)?.iter().map(|d| self.q_times(d)).collect())
    }

    /// Matrix of the projector described in [`Self::transverse_directions`].
    pub fn orthogonal_projector(&self, ls: &[RationalVector]) -> Result<RationalMatrix> {
        let us = self.transverse_directions(ls)?;
        let mut p = RationalMatrix::identity(self.k);
        for (l, u) in ls.iter().zip(&us) {
            for a in 0..self.k {
                for b in 0..self.k {
                    let v = p.get(a, b) - &u.0[a] * &l.0[b];
                    p.set(a, b, v);
                }
            }
        }
        Ok(p)
    }

    /// True for the standard inner product.
    pub fn is_identity_gram(&self) -> bool {
        self.gram == RationalMatrix::identity(self.k)
    }

    /// Checks that `w` lies in the span of `vs`.
    pub fn in_span(vs: &[RationalVector], w: &RationalVector) -> bool {
        if vs.is_empty() {
            return w.is_zero();
        }
        let k = w.dim();
        let m = RationalMatrix::from_cols(vs, k);
        m.solve(w).is_some()
    }
}
