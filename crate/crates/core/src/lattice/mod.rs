//! Lattice cones, their exponential sums and integrals.

pub mod cone;
pub mod expsum;
pub mod series;

pub use cone::{alternative_smooth_subdivision_2d, is_smooth, smooth_subdivide_2d, stellar_split, LatticeCone};
pub use expsum::{
    default_point, direct_sum_box, direct_sum_smooth, exp_integral, exp_sum, exp_sum_smooth, numeric_oracle, p_res_exp_sum,
    validate_subdivision, OracleReport,
};
pub use series::{bernoulli_tail_coeffs, TruncatedGerm};
