//! Gradings by supporting subspace and p-order, and the projections built on
//! them.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::cones::simplicial::span_key;
use crate::error::{Error, Result};
use crate::exact::{AmbientSpace, Polynomial, RationalVector};
use crate::germs::form::LinearForm;
use crate::germs::{GermSum, MeromorphicGerm, PolarGerm};
use crate::laurent::{laurent_expand, FormalExpansion};

/// A supporting subspace (row-reduced echelon basis) with a p-order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GradedComponentKey {
    pub support_span: Vec<RationalVector>,
    pub p_order: u32,
}

impl GradedComponentKey {
    pub fn new(span: &[RationalVector], k: usize, p_order: u32) -> Self {
        GradedComponentKey { support_span: span_key(span, k), p_order }
    }

    pub fn span_dim(&self) -> usize {
        self.support_span.len()
    }
}

impl fmt::Display for GradedComponentKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis: Vec<String> = self.support_span.iter().map(|v| v.to_string()).collect();
        write!(f, "span{{{}}}, p-order {}", basis.join(", "), self.p_order)
    }
}

/// Groups the polar terms of an expansion by (span, p-order).
pub fn graded_split_expansion(x: &FormalExpansion) -> BTreeMap<GradedComponentKey, GermSum> {
    let k = x.nvars();
    let mut groups: BTreeMap<GradedComponentKey, Vec<PolarGerm>> = BTreeMap::new();
    for (c, g) in x.terms() {
        let key = GradedComponentKey::new(&c.generators(), k, c.p_order());
        groups.entry(key).or_default().push(PolarGerm::from_parts_unchecked(g.clone(), c.poles()));
    }
    groups
        .into_iter()
        .map(|(key, terms)| (key, GermSum::new(k, terms, Polynomial::zero(k))))
        .filter(|(_, g)| !g.is_zero())
        .collect()
}

/// Polar components of f by (supporting subspace, p-order); together with
/// π₊(f) they sum to f.
pub fn graded_split(space: &AmbientSpace, f: &MeromorphicGerm) -> Result<BTreeMap<GradedComponentKey, GermSum>> {
    Ok(graded_split_expansion(&laurent_expand(space, f, None)?))
}

/// Holomorphic part of the Laurent expansion.
pub fn pi_plus(space: &AmbientSpace, f: &MeromorphicGerm) -> Result<Polynomial> {
    Ok(laurent_expand(space, f, None)?.polynomial_part().clone())
}

/// Polar part of the Laurent expansion.
pub fn pi_minus(space: &AmbientSpace, f: &MeromorphicGerm) -> Result<GermSum> {
    let x = laurent_expand(space, f, None)?;
    Ok(GermSum::new(f.nvars(), x.polar_germs(), Polynomial::zero(f.nvars())))
}

/// The component of f on span(u) with p-order p.
pub fn project(space: &AmbientSpace, f: &MeromorphicGerm, u: &[RationalVector], p: u32) -> Result<GermSum> {
    let key = GradedComponentKey::new(u, f.nvars(), p);
    Ok(graded_split(space, f)?.remove(&key).unwrap_or_else(|| GermSum::zero(f.nvars())))
}

/// Generalized Jeffrey–Kirwan residue: the component on U of p-order dim U.
/// U defaults to the span of the poles of f.
pub fn jk_residue(space: &AmbientSpace, f: &MeromorphicGerm, u: Option<&[RationalVector]>) -> Result<GermSum> {
    let poles = f.pole_forms();
    let u = u.map(<[RationalVector]>::to_vec).unwrap_or(poles);
    let key = GradedComponentKey::new(&u, f.nvars(), 0);
    let r = key.span_dim() as u32;
    project(space, f, &u, r)
}

/// A finite set Δ of linear forms with U = span Δ and r = dim U.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Arrangement {
    delta: Vec<LinearForm>,
    span: Vec<RationalVector>,
}

impl Arrangement {
    pub fn new(delta: Vec<LinearForm>) -> Result<Self> {
        if delta.is_empty() || delta.iter().any(RationalVector::is_zero) {
            return Err(Error::InvalidInput("arrangement needs nonzero forms".into()));
        }
        let k = delta[0].dim();
        if let Some(v) = delta.iter().find(|v| v.dim() != k) {
            return Err(Error::DimensionMismatch { expected: k, found: v.dim() });
        }
        let span = span_key(&delta, k);
        Ok(Arrangement { delta, span })
    }

    pub fn delta(&self) -> &[LinearForm] {
        &self.delta
    }

    pub fn span(&self) -> &[RationalVector] {
        &self.span
    }

    pub fn rank(&self) -> usize {
        self.span.len()
    }

    pub fn contains_form(&self, l: &LinearForm) -> bool {
        self.delta.iter().any(|d| l.ratio_to(d).is_some())
    }
}

/// f = G + NG where G collects the components whose supporting subspace has
/// dimension r and NG the rest together with the holomorphic part.
pub fn brion_vergne_split(space: &AmbientSpace, f: &MeromorphicGerm, arr: &Arrangement) -> Result<(GermSum, GermSum)> {
    if let Some(l) = f.pole_forms().iter().find(|l| !arr.contains_form(l)) {
        return Err(Error::NotInRDelta(format!("pole {} is not proportional to a form of the arrangement", l)));
    }
    let k = f.nvars();
    let x = laurent_expand(space, f, None)?;
    let mut g = GermSum::zero(k);
    let mut ng = GermSum::from_polynomial(x.polynomial_part().clone());
    for (key, part) in graded_split_expansion(&x) {
        if key.span_dim() == arr.rank() {
            g = g.add(&part);
        } else {
            ng = ng.add(&part);
        }
    }
    Ok((g, ng))
}

/// Highest p-order among the Laurent terms, 0 for holomorphic germs.
pub fn p_order_of(x: &FormalExpansion) -> u32 {
    x.terms().keys().map(|c| c.p_order()).max().unwrap_or(0)
}

/// Σ h_i(0) / L_i^{s_i} over the terms of maximal p-order.
pub fn p_res_of(x: &FormalExpansion) -> GermSum {
    let k = x.nvars();
    let top = p_order_of(x);
    let terms = x.terms().iter().filter(|(c, _)| c.p_order() == top).filter_map(|(c, g)| {
        let h0 = g.constant_term();
        (!h0.is_zero()).then(|| PolarGerm::from_parts_unchecked(Polynomial::constant(k, h0), c.poles()))
    });
    GermSum::new(k, terms, Polynomial::zero(k))
}

pub fn p_order(space: &AmbientSpace, f: &MeromorphicGerm) -> Result<u32> {
    Ok(p_order_of(&laurent_expand(space, f, None)?))
}

pub fn p_res(space: &AmbientSpace, f: &MeromorphicGerm) -> Result<GermSum> {
    Ok(p_res_of(&laurent_expand(space, f, None)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, RationalMatrix};
    use crate::germs::germ_equal;

    fn v(c: &[i64]) -> RationalVector {
        RationalVector::from_i64(c)
    }

    fn frac(num: Polynomial, poles: &[(&[i64], u32)]) -> MeromorphicGerm {
        let p: Vec<_> = poles.iter().map(|(l, s)| (v(l), *s)).collect();
        MeromorphicGerm::from_parts(num, &p)
    }

    fn one() -> Polynomial {
        Polynomial::one(2)
    }

    #[test]
    fn split_examples() {
        let s = AmbientSpace::identity(2);
        let plane = vec![v(&[1, 0]), v(&[0, 1])];
        let a = graded_split(&s, &frac(one(), &[(&[1, 0], 1), (&[0, 1], 1)])).unwrap();
        assert_eq!(a.keys().cloned().collect::<Vec<_>>(), vec![GradedComponentKey::new(&plane, 2, 2)]);

        let f = frac(one(), &[(&[1, 0], 1), (&[0, 1], 1), (&[1, 1], 1)]);
        let b = graded_split(&s, &f).unwrap();
        assert_eq!(b.len(), 1);
        let (key, val) = b.iter().next().unwrap();
        assert_eq!(key, &GradedComponentKey::new(&plane, 2, 3));
        assert!(germ_equal(val, &f));

        let g = frac(Polynomial::var(2, 1).pow(2), &[(&[1, 0], 1)]).add(&frac(one(), &[(&[0, 1], 3)]));
        let c = graded_split(&s, &g).unwrap();
        let keys: Vec<_> = c.keys().cloned().collect();
        assert_eq!(keys, vec![GradedComponentKey::new(&[v(&[0, 1])], 2, 3), GradedComponentKey::new(&[v(&[1, 0])], 2, 1)]);
    }

    #[test]
    fn projections_plus_minus() {
        let s = AmbientSpace::identity(2);
        let f = MeromorphicGerm::from_parts(Polynomial::var(2, 0).add(&Polynomial::var(2, 1).pow(2)), &[(v(&[1, 0]), 1)]);
        assert_eq!(pi_plus(&s, &f).unwrap(), one());
        let m = pi_minus(&s, &f).unwrap();
        assert!(germ_equal(&m, &frac(Polynomial::var(2, 1).pow(2), &[(&[1, 0], 1)])));

        let a = frac(Polynomial::var(2, 0), &[(&[0, 1], 1)]);
        let b = frac(Polynomial::var(2, 1), &[(&[1, 0], 1)]);
        assert!(pi_plus(&s, &a).unwrap().is_zero());
        assert!(pi_plus(&s, &b).unwrap().is_zero());
        assert_eq!(pi_plus(&s, &a.mul(&b)).unwrap(), one());
    }

    #[test]
    fn project_and_jk() {
        let s = AmbientSpace::identity(2);
        let plane = [v(&[1, 0]), v(&[0, 1])];
        let f = frac(one(), &[(&[1, 0], 1), (&[0, 1], 1)]);
        assert!(germ_equal(&project(&s, &f, &plane, 2).unwrap(), &f));
        assert!(germ_equal(&jk_residue(&s, &f, None).unwrap(), &f));
        let g = frac(one(), &[(&[1, 0], 1), (&[0, 1], 1), (&[1, 1], 1)]);
        assert!(project(&s, &g, &plane, 2).unwrap().is_zero());
        assert!(jk_residue(&s, &g, None).unwrap().is_zero());
        let h = frac(one(), &[(&[1, 0], 2)]);
        assert!(germ_equal(&project(&s, &h, &[v(&[1, 0])], 2).unwrap(), &h));
        assert!(project(&s, &h, &plane, 2).unwrap().is_zero());
        let q = frac(Polynomial::var(2, 1), &[(&[1, 0], 1)]);
        assert!(germ_equal(&jk_residue(&s, &q, Some(&[v(&[1, 0])])).unwrap(), &q));
    }

    #[test]
    fn brion_vergne_examples() {
        let s = AmbientSpace::identity(2);
        let arr = Arrangement::new(vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]).unwrap();
        let f = frac(one(), &[(&[1, 0], 1), (&[0, 1], 1)]);
        let (g, ng) = brion_vergne_split(&s, &f, &arr).unwrap();
        assert!(germ_equal(&g, &f) && ng.is_zero());
        let h = frac(one(), &[(&[1, 0], 2)]);
        let (g, ng) = brion_vergne_split(&s, &h, &arr).unwrap();
        assert!(g.is_zero() && germ_equal(&ng, &h));
        let q = frac(Polynomial::var(2, 1), &[(&[1, 0], 1)]);
        let (g, ng) = brion_vergne_split(&s, &f.add(&q), &arr).unwrap();
        assert!(germ_equal(&g, &f) && germ_equal(&ng, &q));
        let bad = frac(one(), &[(&[1, -1], 1)]);
        assert!(matches!(brion_vergne_split(&s, &bad, &arr), Err(Error::NotInRDelta(_))));
    }

    #[test]
    fn p_order_and_residue() {
        let s = AmbientSpace::identity(2);
        let p = MeromorphicGerm::from_polynomial(Polynomial::var(2, 0));
        assert_eq!(p_order(&s, &p).unwrap(), 0);
        assert!(p_res(&s, &p).unwrap().is_zero());
        let f = frac(Polynomial::linear(&v(&[1, -1])), &[(&[1, 1], 1)]);
        assert_eq!(p_order(&s, &f).unwrap(), 1);
        assert!(p_res(&s, &f).unwrap().is_zero());
        let g = frac(Polynomial::constant(2, int(3)), &[(&[1, 0], 1), (&[1, 1], 2)]).add(&frac(one(), &[(&[0, 1], 1)]));
        assert_eq!(p_order(&s, &g).unwrap(), 3);
        let q = RationalMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
        let s2 = AmbientSpace::new(q).unwrap();
        assert_eq!(p_order(&s2, &g).unwrap(), 3);
        assert!(germ_equal(&p_res(&s, &g).unwrap(), &p_res(&s2, &g).unwrap()));
    }
}
