//! Reduction to independent denominators and the polar decomposition.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::form::{canonical_form, independent, pole_forms, LinearForm, Poles};
use super::meromorphic::MeromorphicGerm;
use super::polar::PolarGerm;
use super::sum::GermSum;
use crate::error::Result;
use crate::exact::{AmbientSpace, Polynomial, Rational, RationalMatrix};

/// coefficient · numerator / ∏ L^s with independent forms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fraction {
    pub coefficient: Rational,
    pub numerator: Polynomial,
    pub poles: Poles,
}

impl Fraction {
    pub fn to_meromorphic(&self) -> MeromorphicGerm {
        MeromorphicGerm::from_parts(self.numerator.scale(&self.coefficient), &self.poles)
    }
}

/// Writes the last form of the first dependent prefix as a combination of the
/// earlier independent ones: returns (index j, [(index b, c_b)]).
fn find_circuit(forms: &[LinearForm]) -> Option<(usize, Vec<(usize, Rational)>)> {
    let k = forms.first()?.dim();
    let mut basis: Vec<usize> = Vec::new();
    for (j, l) in forms.iter().enumerate() {
        if !basis.is_empty() {
            let cols: Vec<_> = basis.iter().map(|&b| forms[b].clone()).collect();
            if let Some(x) = RationalMatrix::from_cols(&cols, k).solve(l) {
                let combo = basis.iter().zip(x.0).filter(|(_, c)| !c.is_zero()).map(|(&b, c)| (b, c)).collect();
                return Some((j, combo));
            }
        }
        basis.push(j);
    }
    None
}

/// Rewrites f as a sum of fractions whose denominators are independent subsets
/// of f's pole forms, using 1 = Σ c_b L_b / L_j whenever L_j = Σ c_b L_b.
pub fn reduce_to_independent(f: &MeromorphicGerm) -> Vec<Fraction> {
    let n = f.nvars();
    if f.is_zero() {
        return Vec::new();
    }
    let mut work: BTreeMap<Poles, Polynomial> = BTreeMap::new();
    work.insert(f.poles(), f.numerator().clone());
    let mut done: BTreeMap<Poles, Polynomial> = BTreeMap::new();
    while let Some((poles, num)) = work.pop_last() {
        if num.is_zero() {
            continue;
        }
        let forms = pole_forms(&poles);
        match find_circuit(&forms) {
            None => {
                let e = done.entry(poles).or_insert_with(|| Polynomial::zero(n));
                *e = e.add(&num);
            }
            Some((j, combo)) => {
                for (b, c) in combo {
                    let mut next = poles.clone();
                    next[j].1 += 1;
                    next[b].1 -= 1;
                    next.retain(|(_, s)| *s > 0);
                    let e = work.entry(next).or_insert_with(|| Polynomial::zero(n));
                    *e = e.add(&num.scale(&c));
                }
            }
        }
    }
    done.into_iter()
        .filter(|(_, num)| !num.is_zero())
        .map(|(poles, numerator)| Fraction { coefficient: Rational::one(), numerator, poles })
        .collect()
}

/// Splits N / ∏ L_j^{s_j} (independent forms) into polar germs over subsets of
/// the L_j plus a polynomial, by Taylor expansion along the transverse
/// directions Q·L_j*.
fn decompose_independent(space: &AmbientSpace, numerator: &Polynomial, poles: &Poles) -> Result<(Vec<PolarGerm>, Polynomial)> {
    let k = space.dim();
    let forms = pole_forms(poles);
    let mut work: BTreeMap<Vec<u32>, Polynomial> = BTreeMap::new();
    work.insert(poles.iter().map(|(_, s)| *s).collect(), numerator.clone());
    let mut polar = Vec::new();
    let mut poly = Polynomial::zero(k);
    let by_total = |w: &BTreeMap<Vec<u32>, Polynomial>| {
        w.keys().max_by_key(|e| (e.iter().sum::<u32>(), (*e).clone())).cloned()
    };
    while let Some(exps) = by_total(&work) {
        let num = work.remove(&exps).unwrap();
        if num.is_zero() {
            continue;
        }
        let active: Vec<usize> = (0..exps.len()).filter(|&j| exps[j] > 0).collect();
        if active.is_empty() {
            poly = poly.add(&num);
            continue;
        }
        let lforms: Vec<LinearForm> = active.iter().map(|&j| forms[j].clone()).collect();
        let dirs = space.transverse_directions(&lforms)?;
        let m = active.len();
        // ε_i ↦ (Pε)_i + Σ_a y_a u_a[i], with Pε = ε − Σ_a ⟨L_a, ε⟩ u_a.
        let subst: Vec<Polynomial> = (0..k)
            .map(|i| {
                let mut p = Polynomial::var(k + m, i);
                for (a, (l, u)) in lforms.iter().zip(&dirs).enumerate() {
                    if u.0[i].is_zero() {
                        continue;
                    }
                    let lp = Polynomial::linear(&l.resized(k + m));
                    p = p.sub(&lp.scale(&u.0[i]));
                    p = p.add(&Polynomial::var(k + m, k + a).scale(&u.0[i]));
                }
                p
            })
            .collect();
        let taylor = num.compose(&subst).split_trailing(k);
        for (alpha, c) in taylor {
            if c.is_zero() {
                continue;
            }
            if alpha.iter().all(|&a| a == 0) {
                let p: Poles = active.iter().map(|&j| (forms[j].clone(), exps[j])).collect();
                polar.push(PolarGerm::from_parts_unchecked(c, p));
                continue;
            }
            let mut next = exps.clone();
            let mut extra = Polynomial::one(k);
            for (a, &j) in active.iter().enumerate() {
                let al = alpha[a];
                if al > exps[j] {
                    extra = extra.mul(&Polynomial::linear(&forms[j]).pow(al - exps[j]));
                    next[j] = 0;
                } else {
                    next[j] = exps[j] - al;
                }
            }
            let e = work.entry(next).or_insert_with(|| Polynomial::zero(k));
            *e = e.add(&c.mul(&extra));
        }
    }
    Ok((polar, poly))
}

/// Polar decomposition: f = Σ S_j + h with polar germs S_j whose poles are
/// taken from f's poles and a polynomial h.
pub fn decompose(space: &AmbientSpace, f: &MeromorphicGerm) -> Result<GermSum> {
    let k = space.dim();
    let mut terms = Vec::new();
    let mut poly = Polynomial::zero(k);
    for fr in reduce_to_independent(f) {
        let (p, h) = decompose_independent(space, &fr.numerator.scale(&fr.coefficient), &fr.poles)?;
        terms.extend(p);
        poly = poly.add(&h);
    }
    Ok(GermSum::new(k, terms, poly))
}

/// Polar decomposition of a sum of arbitrary fractions without first
/// combining them over a common denominator.
pub fn decompose_fractions(space: &AmbientSpace, fractions: &[(Polynomial, Poles)]) -> Result<GermSum> {
    let k = space.dim();
    let mut acc = GermSum::zero(k);
    for (num, poles) in fractions {
        let mut n = num.clone();
        let mut ps: BTreeMap<LinearForm, u32> = BTreeMap::new();
        for (l, s) in poles {
            let (c, scalar) = canonical_form(l);
            n = n.scale(&num_traits::pow(scalar.recip(), *s as usize));
            *ps.entry(c).or_insert(0) += s;
        }
        let ps: Poles = ps.into_iter().collect();
        if independent(&pole_forms(&ps)) {
            let (p, h) = decompose_independent(space, &n, &ps)?;
            acc = acc.add(&GermSum::new(k, p, h));
        } else {
            acc = acc.add(&decompose(space, &MeromorphicGerm::from_parts(n, &ps))?);
        }
    }
    Ok(acc)
}
