use std::fmt;


use super::form::{canonical_form, eval_denominator, fraction_string, independent, pole_forms, LinearForm, Poles};
use super::meromorphic::MeromorphicGerm;
use crate::error::{Error, Result};
use crate::exact::{AmbientSpace, Polynomial, Rational};

/// h / ∏ L_i^{s_i} with independent L_i and h depending only on forms
/// Q-orthogonal to every L_i.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolarGerm {
    numerator: Polynomial,
    poles: Poles,
}

/// True when `numerator` is constant along every direction Q·L_i*, i.e. it is
/// a function of the Q-orthogonal complement of the forms only.
pub fn numerator_is_orthogonal(space: &AmbientSpace, numerator: &Polynomial, forms: &[LinearForm]) -> Result<bool> {
    if forms.is_empty() {
        return Ok(true);
    }
    let dirs = space.transverse_directions(forms)?;
    Ok(dirs.iter().all(|u| numerator.directional_derivative(u).is_zero()))
}

impl PolarGerm {
    /// Checked constructor; forms are kept exactly as given.
    pub fn new(space: &AmbientSpace, numerator: Polynomial, poles: Poles) -> Result<Self> {
        if numerator.is_zero() {
            return Err(Error::NotPolar("zero numerator".into()));
        }
        if poles.is_empty() {
            return Err(Error::NotPolar("no poles".into()));
        }
        if poles.iter().any(|(l, s)| *s == 0 || l.is_zero()) {
            return Err(Error::NotPolar("zero exponent or zero form".into()));
        }
        let forms = pole_forms(&poles);
        if !independent(&forms) {
            return Err(Error::NotPolar("pole forms are linearly dependent".into()));
        }
        if !numerator_is_orthogonal(space, &numerator, &forms)? {
            return Err(Error::NotPolar("numerator is not Q-orthogonal to the poles".into()));
        }
        Ok(PolarGerm { numerator, poles })
    }

    /// Caller guarantees the invariants.
    pub(crate) fn from_parts_unchecked(numerator: Polynomial, poles: Poles) -> Self {
        PolarGerm { numerator, poles }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn poles(&self) -> &Poles {
        &self.poles
    }

    pub fn forms(&self) -> Vec<LinearForm> {
        pole_forms(&self.poles)
    }

    pub fn nvars(&self) -> usize {
        self.numerator.nvars()
    }

    /// s_1 + … + s_n.
    pub fn p_order(&self) -> u32 {
        self.poles.iter().map(|(_, s)| s).sum()
    }

    pub fn to_meromorphic(&self) -> MeromorphicGerm {
        MeromorphicGerm::from_parts(self.numerator.clone(), &self.poles)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        let d = eval_denominator(&self.poles, point)?;
        Ok(self.numerator.eval(point) / d)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PolarGerm { numerator: self.numerator.scale(c), poles: self.poles.clone() }
    }

    /// Same denominator, new numerator.
    pub fn with_numerator(&self, numerator: Polynomial) -> Self {
        PolarGerm { numerator, poles: self.poles.clone() }
    }
}

/// Primitive pseudo-positive sorted forms; scalars and signs go to the numerator.
pub fn canonicalize_polar(space: &AmbientSpace, p: &PolarGerm) -> Result<PolarGerm> {
    if p.numerator.is_zero() {
        return Err(Error::NotPolar("zero numerator".into()));
    }
    let mut num = p.numerator.clone();
    let mut poles: Poles = Vec::with_capacity(p.poles.len());
    for (l, s) in &p.poles {
        let (c, scalar) = canonical_form(l);
        num = num.scale(&num_traits::pow(scalar.recip(), *s as usize));
        poles.push((c, *s));
    }
    poles.sort();
    PolarGerm::new(space, num, poles)
}

impl fmt::Display for PolarGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fraction_string(&self.numerator, &self.poles))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat, RationalVector};

    fn v(c: &[i64]) -> RationalVector {
        RationalVector::from_i64(c)
    }

    #[test]
    fn sign_flip_and_scaling() {
        let s = AmbientSpace::identity(1);
        let p = PolarGerm::new(&s, Polynomial::one(1), vec![(v(&[-1]), 1)]).unwrap();
        let c = canonicalize_polar(&s, &p).unwrap();
        assert_eq!(c.poles(), &vec![(v(&[1]), 1)]);
        assert_eq!(c.numerator().constant_term(), int(-1));

        let p = PolarGerm::new(&s, Polynomial::one(1), vec![(v(&[2]), 2)]).unwrap();
        let c = canonicalize_polar(&s, &p).unwrap();
        assert_eq!(c.poles(), &vec![(v(&[1]), 2)]);
        assert_eq!(c.numerator().constant_term(), rat(1, 4));
    }

    #[test]
    fn already_canonical_is_unchanged() {
        let s = AmbientSpace::identity(2);
        let num = Polynomial::linear(&v(&[1, -1]));
        let p = PolarGerm::new(&s, num, vec![(v(&[1, 1]), 1)]).unwrap();
        assert_eq!(canonicalize_polar(&s, &p).unwrap(), p);
    }

    #[test]
    fn orthogonality_is_enforced() {
        let s = AmbientSpace::identity(2);
        let err = PolarGerm::new(&s, Polynomial::var(2, 0), vec![(v(&[1, 0]), 1)]);
        assert!(matches!(err, Err(Error::NotPolar(_))));
        // Under a non-diagonal Q the admissible numerator variable is no longer eps2.
        let q = AmbientSpace::new(crate::exact::RationalMatrix::from_i64_rows(&[&[2, 1], &[1, 1]])).unwrap();
        let ell = q.q_orthogonal_complement(&[v(&[1, 0])]).remove(0);
        assert!(PolarGerm::new(&q, Polynomial::linear(&ell), vec![(v(&[1, 0]), 1)]).is_ok());
        assert!(PolarGerm::new(&q, Polynomial::var(2, 1), vec![(v(&[1, 0]), 1)]).is_err());
    }
}
