//! Simplicial cones, properly positioned families, common refinements and
//! the I-valuation.

pub mod dd;
pub mod family;
pub mod polycone;
pub mod refine;
pub mod simplicial;
pub mod valuation;

pub use family::{
    check_properly_positioned, cones_meet_along_face, is_properly_positioned, union_contains_line, ConeFamily,
    Positioning,
};
pub use polycone::PolyCone;
pub use refine::{common_refinement, refine_cone, Refinement};
pub use simplicial::SimplicialCone;
pub use valuation::{check_subdivision, i_cone, i_simplicial, i_sum, weight};

use crate::exact::RationalVector;

/// Zero, or the last nonzero coordinate is positive.
pub fn is_pseudo_positive(v: &RationalVector) -> bool {
    v.is_pseudo_positive()
}
