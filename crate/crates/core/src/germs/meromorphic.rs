use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};
use std::fmt;

use num_traits::{One, Zero};

use super::form::{canonical_form, denominator_polynomial, eval_denominator, fraction_string, LinearForm, Poles};
use crate::error::Result;
use crate::exact::{Polynomial, Rational};

/// A reduced quotient N / ∏ L^s with canonical pole forms.
///
/// No pole form divides the numerator; the zero germ has no poles.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MeromorphicGerm {
    numerator: Polynomial,
    poles: BTreeMap<LinearForm, u32>,
}

impl MeromorphicGerm {
    pub fn zero(nvars: usize) -> Self {
        MeromorphicGerm { numerator: Polynomial::zero(nvars), poles: BTreeMap::new() }
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        MeromorphicGerm { numerator: p, poles: BTreeMap::new() }
    }

    /// Builds and reduces N / ∏ L_i^{s_i}. Forms may be arbitrary nonzero vectors.
    pub fn from_parts(numerator: Polynomial, poles: &[(LinearForm, u32)]) -> Self {
        let mut num = numerator;
        let mut map: BTreeMap<LinearForm, u32> = BTreeMap::new();
        for (l, s) in poles {
            assert!(!l.is_zero(), "zero linear form in a denominator");
            if *s == 0 {
                continue;
            }
            let (p, c) = canonical_form(l);
            num = num.scale(&num_traits::pow(c.recip(), *s as usize));
            *map.entry(p).or_insert(0) += s;
        }
        Self::reduced(num, map)
    }

    fn reduced(mut num: Polynomial, mut poles: BTreeMap<LinearForm, u32>) -> Self {
        if num.is_zero() {
            return Self::zero(num.nvars());
        }
        for (l, s) in poles.iter_mut() {
            let lp = Polynomial::linear(l);
            while *s > 0 {
                match num.div_exact(&lp) {
                    Some(q) => {
                        num = q;
                        *s -= 1;
                    }
                    None => break,
                }
            }
        }
        poles.retain(|_, s| *s > 0);
        MeromorphicGerm { numerator: num, poles }
    }

    pub fn nvars(&self) -> usize {
        self.numerator.nvars()
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn poles(&self) -> Poles {
        self.poles.iter().map(|(l, s)| (l.clone(), *s)).collect()
    }

    pub fn pole_forms(&self) -> Vec<LinearForm> {
        self.poles.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// True when the reduced denominator is empty.
    pub fn is_polynomial(&self) -> bool {
        self.poles.is_empty()
    }

    pub fn denominator(&self) -> Polynomial {
        denominator_polynomial(self.nvars(), &self.poles())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.nvars();
        let mut common = self.poles.clone();
        for (l, s) in &other.poles {
            let e = common.entry(l.clone()).or_insert(0);
            *e = (*e).max(*s);
        }
        let lift = |g: &MeromorphicGerm| {
            let missing: Poles = common
                .iter()
                .filter_map(|(l, s)| {
                    let have = g.poles.get(l).copied().unwrap_or(0);
                    (s > &have).then(|| (l.clone(), s - have))
                })
                .collect();
            g.numerator.mul(&denominator_polynomial(n, &missing))
        };
        let num = lift(self).add(&lift(other));
        Self::reduced(num, common)
    }

    pub fn neg(&self) -> Self {
        MeromorphicGerm { numerator: self.numerator.neg(), poles: self.poles.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        MeromorphicGerm { numerator: self.numerator.scale(c), poles: self.poles.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut poles = self.poles.clone();
        for (l, s) in &other.poles {
            *poles.entry(l.clone()).or_insert(0) += s;
        }
        Self::reduced(self.numerator.mul(&other.numerator), poles)
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        Self::reduced(self.numerator.mul(p), self.poles.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::from_polynomial(Polynomial::one(self.nvars())), |acc, _| acc.mul(self))
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        let d = eval_denominator(&self.poles(), point)?;
        Ok(self.numerator.eval(point) / d)
    }

    /// Germs over the same pole forms are first added over their common
    /// denominator. The rest is combined by repeatedly adding the pair with
    /// the smallest common denominator, so terms that cancel meet before the
    /// denominator grows.
    pub fn sum<'a>(nvars: usize, items: impl IntoIterator<Item = &'a MeromorphicGerm>) -> Self {
        let mut by_forms: BTreeMap<Vec<LinearForm>, Vec<&MeromorphicGerm>> = BTreeMap::new();
        for g in items {
            if !g.is_zero() {
                by_forms.entry(g.poles.keys().cloned().collect()).or_default().push(g);
            }
        }
        let mut pool: Vec<Self> = Vec::with_capacity(by_forms.len());
        for group in by_forms.into_values() {
            let mut top = group[0].poles.clone();
            for g in &group[1..] {
                for (l, s) in &g.poles {
                    let e = top.get_mut(l).expect("same forms");
                    *e = (*e).max(*s);
                }
            }
            let mut num = Polynomial::zero(nvars);
            for g in &group {
                let missing: Poles =
                    top.iter().filter(|(l, s)| **s > g.poles[*l]).map(|(l, s)| (l.clone(), s - g.poles[l])).collect();
                num = num.add(&g.numerator.mul(&denominator_polynomial(nvars, &missing)));
            }
            let s = Self::reduced(num, top);
            if !s.is_zero() {
                pool.push(s);
            }
        }
        let extra = |a: &Self, b: &Self| -> u32 {
            b.poles.iter().map(|(l, s)| s.saturating_sub(a.poles.get(l).copied().unwrap_or(0))).sum::<u32>()
                + a.poles.iter().map(|(l, s)| s.saturating_sub(b.poles.get(l).copied().unwrap_or(0))).sum::<u32>()
        };
        // Min-heap of pair costs; entries go stale when a slot changes.
        let mut slots: Vec<Option<Self>> = pool.into_iter().map(Some).collect();
        let mut version = vec![0u32; slots.len()];
        let mut heap = BinaryHeap::new();
        for i in 0..slots.len() {
            for j in i + 1..slots.len() {
                let c = extra(slots[i].as_ref().unwrap(), slots[j].as_ref().unwrap());
                heap.push(Reverse((c, i, j, 0u32, 0u32)));
            }
        }
        while let Some(Reverse((_, i, j, vi, vj))) = heap.pop() {
            if slots[i].is_none() || slots[j].is_none() || version[i] != vi || version[j] != vj {
                continue;
            }
            let b = slots[j].take().unwrap();
            let s = slots[i].take().unwrap().add(&b);
            version[i] += 1;
            if s.is_zero() {
                continue;
            }
            for (t, other) in slots.iter().enumerate() {
                if let Some(o) = other {
                    let (a, z) = if t < i { (t, i) } else { (i, t) };
                    heap.push(Reverse((extra(&s, o), a, z, version[a], version[z])));
                }
            }
            slots[i] = Some(s);
        }
        let mut pool: Vec<Self> = slots.into_iter().flatten().collect();
        debug_assert!(pool.len() <= 1);
        pool.pop().unwrap_or_else(|| Self::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_polynomial(Polynomial::constant(nvars, Rational::one()))
    }
}

impl fmt::Display for MeromorphicGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fraction_string(&self.numerator, &self.poles()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, RationalVector};

    fn v(c: &[i64]) -> RationalVector {
        RationalVector::from_i64(c)
    }

    #[test]
    fn reduction_cancels_common_factors() {
        let l = v(&[1, 1]);
        let num = Polynomial::linear(&l).mul(&Polynomial::var(2, 0));
        let g = MeromorphicGerm::from_parts(num, &[(l, 2)]);
        assert_eq!(g.poles(), vec![(v(&[1, 1]), 1)]);
        assert_eq!(g.numerator(), &Polynomial::var(2, 0));
    }

    #[test]
    fn sign_and_scale_absorbed() {
        let g = MeromorphicGerm::from_parts(Polynomial::one(1), &[(v(&[-2]), 1)]);
        assert_eq!(g.poles(), vec![(v(&[1]), 1)]);
        assert_eq!(g.numerator().constant_term(), crate::exact::rat(-1, 2));
    }

    #[test]
    fn intro_identity() {
        let one = Polynomial::one(2);
        let lhs = MeromorphicGerm::from_parts(one.clone(), &[(v(&[1, 0]), 1), (v(&[0, 1]), 1)]);
        let a = MeromorphicGerm::from_parts(one.clone(), &[(v(&[1, 0]), 1), (v(&[1, 1]), 1)]);
        let b = MeromorphicGerm::from_parts(one, &[(v(&[0, 1]), 1), (v(&[1, 1]), 1)]);
        assert!(lhs.sub(&a.add(&b)).is_zero());
        assert_eq!(lhs.evaluate(&[int(1), int(2)]).unwrap(), crate::exact::rat(1, 2));
        assert_eq!(lhs.evaluate(&[int(0), int(1)]), Err(crate::Error::PoleHit));
    }
}
