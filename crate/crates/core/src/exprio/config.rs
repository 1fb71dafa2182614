//! Settings shared by every command of one session.

use crate::error::{Error, Result};
use crate::exact::space::DEFAULT_DIMENSION_CAP;
use crate::exact::{AmbientSpace, RationalMatrix};

/// Default truncation order for exponential sums.
pub const DEFAULT_TRUNCATION: usize = 8;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SessionConfig {
    pub dim: usize,
    /// `None` means the identity.
    pub gram: Option<RationalMatrix>,
    pub trunc: usize,
    pub cap: usize,
    pub seed: u64,
}

impl SessionConfig {
    pub fn new(dim: usize) -> Self {
        SessionConfig { dim, gram: None, trunc: DEFAULT_TRUNCATION, cap: DEFAULT_DIMENSION_CAP, seed: 0 }
    }

    /// Validates k ≥ 1 and the Gram matrix, then checks the cap.
    pub fn space(&self) -> Result<AmbientSpace> {
        if self.dim == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        let space = match &self.gram {
            None => AmbientSpace::identity(self.dim),
            Some(g) => {
                if g.rows() != self.dim {
                    return Err(Error::DimensionMismatch { expected: self.dim, found: g.rows() });
                }
                AmbientSpace::new(g.clone())?
            }
        };
        let space = space.with_cap(self.cap);
        space.check_cap()?;
        Ok(space)
    }
}
