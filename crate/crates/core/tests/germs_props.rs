mod common;

use proptest::prelude::*;

use polegerm::exact::{int, AmbientSpace, Polynomial};
use polegerm::germs::form::{independent, pole_forms};
use polegerm::germs::{canonical_form, decompose, germ_equal, reduce_to_independent, MeromorphicGerm};

fn spaces(k: usize) -> [AmbientSpace; 2] {
    [AmbientSpace::identity(k), common::alternative_space(k)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn decomposition_round_trips(seed in any::<u64>()) {
        let r = &mut common::rng(seed);
        let f = common::germ(r);
        for space in spaces(f.nvars()) {
            let d = decompose(&space, &f).unwrap();
            prop_assert!(germ_equal(&d, &f));
            let pt = common::pole_free_point(r, &f);
            prop_assert_eq!(d.evaluate(&pt).unwrap(), f.evaluate(&pt).unwrap());
        }
    }

    #[test]
    fn decomposition_is_canonical(seed in any::<u64>()) {
        let r = &mut common::rng(seed);
        let f = common::germ(r);
        let g = common::small_germ_in(r, f.nvars());
        for space in spaces(f.nvars()) {
            let d = decompose(&space, &f).unwrap();
            for t in d.polar_terms() {
                let forms = t.forms();
                prop_assert!(independent(&forms));
                for l in &forms {
                    prop_assert_eq!(&canonical_form(l).0, l);
                }
            }
            // Re-decomposing and summing in another order gives the same data.
            prop_assert_eq!(&decompose(&space, &d.to_meromorphic()).unwrap(), &d);
            let fg = decompose(&space, &f.add(&g)).unwrap();
            let gf = decompose(&space, &g.add(&f)).unwrap();
            prop_assert_eq!(&fg, &gf);
            let sum = d.add(&decompose(&space, &g).unwrap());
            prop_assert_eq!(&decompose(&space, &sum.to_meromorphic()).unwrap(), &fg);
        }
    }

    #[test]
    fn numerators_are_orthogonal(seed in any::<u64>()) {
        let r = &mut common::rng(seed);
        let f = common::germ(r);
        let k = f.nvars();
        for space in spaces(k) {
            for t in decompose(&space, &f).unwrap().polar_terms() {
                let p = space.orthogonal_projector(&t.forms()).unwrap();
                let subst: Vec<Polynomial> = p.row_vectors().iter().map(Polynomial::linear).collect();
                prop_assert_eq!(&t.numerator().compose(&subst), t.numerator());
            }
        }
    }

    #[test]
    fn reduction_stays_on_input_forms(seed in any::<u64>()) {
        let r = &mut common::rng(seed);
        let f = common::germ(r);
        let input: Vec<_> = f.pole_forms().iter().map(|l| canonical_form(l).0).collect();
        let parts = reduce_to_independent(&f);
        let mut total = MeromorphicGerm::zero(f.nvars());
        for p in &parts {
            let forms = pole_forms(&p.poles);
            prop_assert!(independent(&forms));
            for l in &forms {
                prop_assert!(input.contains(&canonical_form(l).0));
            }
            total = total.add(&p.to_meromorphic());
        }
        prop_assert!(germ_equal(&total, &f));
    }
}

#[test]
fn ratio_of_variables_times_its_inverse_is_holomorphic() {
    let space = AmbientSpace::identity(2);
    let e1 = Polynomial::var(2, 0);
    let e2 = Polynomial::var(2, 1);
    let a = MeromorphicGerm::from_parts(e1.clone(), &[(polegerm::exact::RationalVector::from_i64(&[0, 1]), 1)]);
    let b = MeromorphicGerm::from_parts(e2, &[(polegerm::exact::RationalVector::from_i64(&[1, 0]), 1)]);
    let d = decompose(&space, &a.mul(&b)).unwrap();
    assert!(d.polar_terms().is_empty());
    assert_eq!(d.polynomial_part(), &Polynomial::constant(2, int(1)));
}
