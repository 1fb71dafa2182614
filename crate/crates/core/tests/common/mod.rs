//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polegerm::cones::{common_refinement, SimplicialCone};
use polegerm::exact::{rat, AmbientSpace, Monomial, Polynomial, Rational, RationalMatrix, RationalVector};
use polegerm::germs::form::independent;
use polegerm::germs::MeromorphicGerm;
use polegerm::lattice::LatticeCone;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(r: &mut impl Rng) -> Rational {
    rat(r.gen_range(-6..=6), r.gen_range(1..=4))
}

pub fn nonzero_rational(r: &mut impl Rng) -> Rational {
    loop {
        let q = small_rational(r);
        if !q.is_zero() {
            return q;
        }
    }
}

pub fn int_vector(r: &mut impl Rng, k: usize, bound: i64) -> RationalVector {
    loop {
        let v = RationalVector::from_i64(&(0..k).map(|_| r.gen_range(-bound..=bound)).collect::<Vec<_>>());
        if !v.is_zero() {
            return v;
        }
    }
}

pub fn rational_matrix(r: &mut impl Rng, rows: usize, cols: usize) -> RationalMatrix {
    let data = (0..rows * cols).map(|_| small_rational(r)).collect();
    RationalMatrix::new(rows, cols, data).unwrap()
}

pub fn polynomial(r: &mut impl Rng, k: usize, max_deg: u32, max_terms: usize) -> Polynomial {
    let mut p = Polynomial::zero(k);
    for _ in 0..r.gen_range(1..=max_terms) {
        let d = r.gen_range(0..=max_deg);
        let mut e = vec![0u32; k];
        for _ in 0..d {
            e[r.gen_range(0..k)] += 1;
        }
        p.add_term(Monomial(e), nonzero_rational(r));
    }
    p
}

/// Random germ in k ≤ 3 variables with at most four pole forms and numerator
/// degree at most three.
pub fn germ(r: &mut impl Rng) -> MeromorphicGerm {
    let k = r.gen_range(1..=3);
    germ_in(r, k)
}

pub fn germ_in(r: &mut impl Rng, k: usize) -> MeromorphicGerm {
    loop {
        let nforms = r.gen_range(1..=4);
        let poles: Vec<(RationalVector, u32)> =
            (0..nforms).map(|_| (int_vector(r, k, 2), r.gen_range(1..=2))).collect();
        let num = polynomial(r, k, 3, 3);
        let f = MeromorphicGerm::from_parts(num, &poles);
        if !f.is_polynomial() {
            return f;
        }
    }
}

/// One or two simple poles over a numerator of degree at most two.
pub fn small_germ_in(r: &mut impl Rng, k: usize) -> MeromorphicGerm {
    let nforms = r.gen_range(1..=2);
    let poles: Vec<(RationalVector, u32)> = (0..nforms).map(|_| (int_vector(r, k, 2), 1)).collect();
    MeromorphicGerm::from_parts(polynomial(r, k, 2, 2), &poles)
}

/// Rational point avoiding every pole of `f`.
pub fn pole_free_point(r: &mut impl Rng, f: &MeromorphicGerm) -> Vec<Rational> {
    loop {
        let p: Vec<Rational> = (0..f.nvars()).map(|_| small_rational(r)).collect();
        let pt = RationalVector::new(p.clone());
        if f.pole_forms().iter().all(|l| !l.dot(&pt).is_zero()) {
            return p;
        }
    }
}

pub fn simplicial_cone(r: &mut impl Rng, k: usize, n: usize, bound: i64) -> SimplicialCone {
    loop {
        let gens: Vec<RationalVector> = (0..n).map(|_| int_vector(r, k, bound)).collect();
        if independent(&gens) {
            return SimplicialCone::new(gens).unwrap();
        }
    }
}

pub fn pseudo_positive_cone(r: &mut impl Rng, k: usize, n: usize, bound: i64) -> SimplicialCone {
    loop {
        let gens: Vec<RationalVector> = (0..n)
            .map(|_| {
                let v = int_vector(r, k, bound);
                if v.is_pseudo_positive() {
                    v
                } else {
                    v.neg()
                }
            })
            .collect();
        if independent(&gens) {
            return SimplicialCone::new(gens).unwrap();
        }
    }
}

/// A properly positioned family: the refinement of random pseudo-positive
/// cones, thinned out at random.
pub fn proper_family(r: &mut impl Rng, k: usize) -> Vec<SimplicialCone> {
    let space = AmbientSpace::identity(k);
    let count = r.gen_range(1..=3);
    let cones: Vec<SimplicialCone> =
        (0..count).map(|_| { let n = r.gen_range(1..=k); pseudo_positive_cone(r, k, n, 2) }).collect();
    let mut fam: Vec<SimplicialCone> = common_refinement(&space, &cones).unwrap().family.iter().cloned().collect();
    fam.shuffle(r);
    fam.truncate(r.gen_range(1..=fam.len()));
    fam
}

/// Strongly convex two-dimensional cone with entries bounded by `bound`.
pub fn lattice_cone_2d(r: &mut impl Rng, bound: i64) -> LatticeCone {
    LatticeCone::standard(simplicial_cone(r, 2, 2, bound)).unwrap()
}

pub fn gram_alt() -> AmbientSpace {
    AmbientSpace::new(RationalMatrix::from_i64_rows(&[&[2, 1], &[1, 1]])).unwrap()
}

/// A positive-definite Gram matrix in dimension k that is not the identity:
/// [[2,1],[1,1]] in the top-left corner, identity elsewhere.
pub fn alternative_space(k: usize) -> AmbientSpace {
    let mut m = RationalMatrix::identity(k);
    if k >= 2 {
        m.set(0, 0, rat(2, 1));
        m.set(0, 1, rat(1, 1));
        m.set(1, 0, rat(1, 1));
    } else {
        m.set(0, 0, rat(2, 1));
    }
    AmbientSpace::new(m).unwrap()
}

/// Random polar germ with simple poles on a pseudo-positive cone and a
/// numerator made Q-orthogonal by projection.
pub fn polar_term(r: &mut impl Rng, space: &AmbientSpace, n: usize) -> polegerm::germs::PolarGerm {
    let k = space.dim();
    let c = pseudo_positive_cone(r, k, n, 2);
    let p = space.orthogonal_projector(c.generators()).unwrap();
    let subst: Vec<Polynomial> = p.row_vectors().iter().map(Polynomial::linear).collect();
    loop {
        let num = polynomial(r, k, 2, 3).compose(&subst);
        if !num.is_zero() {
            let poles = c.generators().iter().map(|g| (g.clone(), 1)).collect();
            return polegerm::germs::PolarGerm::new(space, num, poles).unwrap();
        }
    }
}

/// Places a germ in `f.nvars()` variables onto the coordinates
/// offset..offset+f.nvars() of a k-dimensional space.
pub fn embed(f: &MeromorphicGerm, k: usize, offset: usize) -> MeromorphicGerm {
    let subst: Vec<Polynomial> = (0..f.nvars()).map(|i| Polynomial::var(k, offset + i)).collect();
    let num = f.numerator().compose(&subst);
    let poles: Vec<(RationalVector, u32)> = f
        .poles()
        .iter()
        .map(|(l, s)| {
            let mut c = vec![Rational::zero(); k];
            for (i, x) in l.coords().iter().enumerate() {
                c[offset + i] = x.clone();
            }
            (RationalVector::new(c), *s)
        })
        .collect();
    MeromorphicGerm::from_parts(num, &poles)
}
