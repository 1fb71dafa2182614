//! Graded components, π±, Jeffrey–Kirwan residues, p-residues and the
//! coproduct.

pub mod coproduct;
pub mod grading;

pub use coproduct::{coproduct, coproduct_left_iterated, coproduct_right_iterated, multiply_out, CoproductTerm};
pub use grading::{
    brion_vergne_split, graded_split, graded_split_expansion, jk_residue, p_order, p_order_of, p_res, p_res_of, pi_minus,
    pi_plus, project, Arrangement, GradedComponentKey,
};
