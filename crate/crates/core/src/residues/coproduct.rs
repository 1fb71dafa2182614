//! The coproduct f ↦ Σ h_i ⊗ 1/L_i^{s_i} (+ h ⊗ 1).

use std::fmt;

use crate::error::Result;
use crate::exact::{AmbientSpace, Polynomial};
use crate::germs::form::fraction_string;
use crate::germs::MeromorphicGerm;
use crate::laurent::{laurent_expand, DecoratedCone};

/// h ⊗ 1/L^s, or h ⊗ 1 when `right` is `None`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoproductTerm {
    pub left: Polynomial,
    pub right: Option<DecoratedCone>,
}

impl CoproductTerm {
    /// The right factor as a germ.
    pub fn right_germ(&self) -> MeromorphicGerm {
        let k = self.left.nvars();
        match &self.right {
            None => MeromorphicGerm::one(k),
            Some(c) => MeromorphicGerm::from_parts(Polynomial::one(k), c.factors()),
        }
    }

    /// left · right.
    pub fn multiply(&self) -> MeromorphicGerm {
        self.right_germ().mul_poly(&self.left)
    }
}

impl fmt::Display for CoproductTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let right = match &self.right {
            None => "1".to_string(),
            Some(c) => fraction_string(&Polynomial::one(self.left.nvars()), c.factors()),
        };
        write!(f, "{} (x) {}", self.left, right)
    }
}

pub fn coproduct(space: &AmbientSpace, f: &MeromorphicGerm) -> Result<Vec<CoproductTerm>> {
    let x = laurent_expand(space, f, None)?;
    let mut out: Vec<CoproductTerm> =
        x.terms().iter().map(|(c, g)| CoproductTerm { left: g.clone(), right: Some(c.clone()) }).collect();
    if !x.polynomial_part().is_zero() {
        out.push(CoproductTerm { left: x.polynomial_part().clone(), right: None });
    }
    Ok(out)
}

/// m ∘ Δ.
pub fn multiply_out(terms: &[CoproductTerm], nvars: usize) -> MeromorphicGerm {
    let parts: Vec<MeromorphicGerm> = terms.iter().map(CoproductTerm::multiply).collect();
    MeromorphicGerm::sum(nvars, parts.iter())
}

/// One summand of an iterated coproduct: a ⊗ b ⊗ c.
pub type Triple = (MeromorphicGerm, MeromorphicGerm, MeromorphicGerm);

/// (id ⊗ Δ) ∘ Δ.
pub fn coproduct_right_iterated(space: &AmbientSpace, f: &MeromorphicGerm) -> Result<Vec<Triple>> {
    let mut out = Vec::new();
    for t in coproduct(space, f)? {
        let left = MeromorphicGerm::from_polynomial(t.left.clone());
        for u in coproduct(space, &t.right_germ())? {
            out.push((left.clone(), MeromorphicGerm::from_polynomial(u.left.clone()), u.right_germ()));
        }
    }
    out.sort_by_key(|t| format!("{:?}", t));
    Ok(out)
}

/// (Δ ⊗ id) ∘ Δ.
pub fn coproduct_left_iterated(space: &AmbientSpace, f: &MeromorphicGerm) -> Result<Vec<Triple>> {
    let mut out = Vec::new();
    for t in coproduct(space, f)? {
        let right = t.right_germ();
        for u in coproduct(space, &MeromorphicGerm::from_polynomial(t.left.clone()))? {
            out.push((MeromorphicGerm::from_polynomial(u.left.clone()), u.right_germ(), right.clone()));
        }
    }
    out.sort_by_key(|t| format!("{:?}", t));
    Ok(out)
}
