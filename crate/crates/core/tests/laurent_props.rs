mod common;

use num_traits::Zero;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use polegerm::cones::{common_refinement, is_properly_positioned, SimplicialCone};
use polegerm::exact::AmbientSpace;
use polegerm::germs::germ_equal;
use polegerm::laurent::{
    kernel_generators, laurent_expand, move_to_support, stellar_subdivision, subdivision_operator, FormalExpansion,
};

fn spaces(k: usize) -> [AmbientSpace; 2] {
    [AmbientSpace::identity(k), common::alternative_space(k)]
}

fn single(t: &polegerm::germs::PolarGerm) -> FormalExpansion {
    let mut x = FormalExpansion::zero(t.nvars());
    x.add_fraction(t.numerator(), t.poles()).unwrap();
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn forgetting_the_expansion_recovers_the_germ(seed in any::<u64>()) {
        let r = &mut common::rng(seed);
        let f = common::germ(r);
        for space in spaces(f.nvars()) {
            let x = laurent_expand(&space, &f, None).unwrap();
            prop_assert!(germ_equal(&x.phi(), &f));
            prop_assert!(x.validate(&space).is_ok());
            prop_assert!(is_properly_positioned(&space, &x.support()).unwrap());
            for (c, g) in x.terms() {
                prop_assert!(c.is_pseudo_positive());
                prop_assert!(c.dim() > 0);
                prop_assert!(!g.is_zero());
            }
        }
    }

    #[test]
    fn expansion_on_a_fixed_support_is_unique(seed in any::<u64>()) {
        let r = &mut common::rng(seed);
        let f = common::germ(r);
        let g = common::small_germ_in(r, f.nvars());
        let space = AmbientSpace::identity(f.nvars());
        let xf = laurent_expand(&space, &f, None).unwrap();
        let xg = laurent_expand(&space, &g, None).unwrap();
        let mut cones: Vec<SimplicialCone> = xf.support();
        cones.extend(xg.support());
        prop_assume!(!cones.is_empty());
        let mut support = common_refinement(&space, &cones).unwrap().family.cones;
        let whole = laurent_expand(&space, &f.add(&g), Some(&support)).unwrap();
        let parts = move_to_support(&space, &xf, &support).unwrap().add(&move_to_support(&space, &xg, &support).unwrap());
        prop_assert!(whole.sub(&parts).is_zero());
        support.shuffle(r);
        let again = laurent_expand(&space, &f.add(&g), Some(&support)).unwrap();
        prop_assert_eq!(again, whole);
    }

    #[test]
    fn subdivision_preserves_phi_and_composes(seed in any::<u64>(), k in 2usize..4) {
        let r = &mut common::rng(seed);
        for space in spaces(k) {
            let n = r.gen_range(2..=k);
            let t = common::polar_term(r, &space, n);
            let x = single(&t);
            let c = x.support()[0].clone();
            let coarse = stellar_subdivision(&c);
            let fine: Vec<SimplicialCone> = coarse.iter().flat_map(stellar_subdivision).collect();
            let once = subdivision_operator(&space, &x, &coarse).unwrap();
            prop_assert!(germ_equal(&once.phi(), &x.phi()));
            let twice = subdivision_operator(&space, &once, &fine).unwrap();
            let direct = subdivision_operator(&space, &x, &fine).unwrap();
            prop_assert!(twice.sub(&direct).is_zero());
            // Simple poles: every new numerator is a multiple of the old one.
            for g in direct.terms().values() {
                let ratio = g.terms().next().and_then(|(m, a)| {
                    let b = t.numerator().coeff(m);
                    (!b.is_zero()).then(|| a / b)
                });
                prop_assert!(ratio.is_some());
                prop_assert_eq!(g, &t.numerator().scale(&ratio.unwrap()));
            }
        }
    }

    #[test]
    fn kernel_elements_vanish_under_phi(seed in any::<u64>(), k in 1usize..4) {
        let r = &mut common::rng(seed);
        for space in spaces(k) {
            let n = r.gen_range(1..=k);
            let t = common::polar_term(r, &space, n);
            for x in kernel_generators(&space, &t, None).unwrap() {
                prop_assert!(x.phi().is_zero());
            }
        }
    }
}
