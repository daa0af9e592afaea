mod common;

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use flagcoh_core::checks::{random_element, random_poly, rng_for};
use flagcoh_core::coeffring::CoeffRing;
use flagcoh_core::fgl::FormalGroupLaw;
use flagcoh_core::fgring::FormalGroupRing;
use flagcoh_core::flagring::FlagBasis;
use flagcoh_core::par::Execution;
use flagcoh_core::rootdata::RootDatum;

fn ring(name: &str, law: fn(u32) -> FormalGroupLaw, trunc: u32) -> FormalGroupRing {
    FormalGroupRing::new(Arc::new(RootDatum::named(name).unwrap()), Arc::new(law(trunc)))
}

fn universal_b2() -> &'static FormalGroupRing {
    static R: OnceLock<FormalGroupRing> = OnceLock::new();
    R.get_or_init(|| ring("B2", |d| FormalGroupLaw::universal(d).unwrap(), 6))
}

fn connective_b2() -> &'static FormalGroupRing {
    static R: OnceLock<FormalGroupRing> = OnceLock::new();
    R.get_or_init(|| ring("B2", FormalGroupLaw::connective, 7))
}

fn universal_a2_table() -> &'static FlagBasis {
    static F: OnceLock<FlagBasis> = OnceLock::new();
    F.get_or_init(|| common::flag_basis("A2", "universal", None, Execution::Sequential))
}

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..rank, 0..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn polynomial_ring_laws(seed in any::<u64>()) {
        let r: Arc<CoeffRing> = CoeffRing::sequence("a", 4, false).unwrap();
        let mut rng = rng_for(seed);
        let (a, b, c) = (random_poly(&r, &mut rng, 4), random_poly(&r, &mut rng, 4), random_poly(&r, &mut rng, 4));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn division_by_a_root_undoes_multiplication(seed in any::<u64>(), i in 0usize..2) {
        let fr = universal_b2();
        let u = random_element(fr, &mut rng_for(seed)).unwrap();
        let x = fr.x_alpha(i);
        let prod = u.mul(x).unwrap();
        let back = prod.exact_divide(x).unwrap();
        prop_assert_eq!(back.truncated(back.valid_degree()), u.truncated(back.valid_degree()));
    }

    #[test]
    fn twisted_leibniz_rule(seed in any::<u64>(), i in 0usize..2) {
        let fr = universal_b2();
        let mut rng = rng_for(seed);
        let u = random_element(fr, &mut rng).unwrap();
        let v = random_element(fr, &mut rng).unwrap();
        let lhs = fr.delta(i, &u.mul(&v).unwrap()).unwrap();
        let rhs = fr.delta(i, &u).unwrap().mul(&v).unwrap()
            .add(&fr.reflect(i, &u).unwrap().mul(&fr.delta(i, &v).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn invariants_are_killed(seed in any::<u64>(), i in 0usize..2) {
        let fr = universal_b2();
        let u = random_element(fr, &mut rng_for(seed)).unwrap();
        let sym = u.add(&fr.reflect(i, &u).unwrap()).unwrap();
        prop_assert!(fr.delta(i, &sym).unwrap().is_zero());
    }

    #[test]
    fn connective_braid_relation(seed in any::<u64>()) {
        let fr = connective_b2();
        let u = random_element(fr, &mut rng_for(seed)).unwrap();
        let a = fr.delta_word(&[0, 1, 0, 1], &u).unwrap();
        let b = fr.delta_word(&[1, 0, 1, 0], &u).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn word_and_its_reverse_inverse(w in word(2, 10)) {
        let d = RootDatum::named("G2").unwrap();
        let mut rev = w.clone();
        rev.reverse();
        let x = d.element_of_word(&w);
        prop_assert_eq!(d.element_of_word(&rev), d.inverse(x));
        prop_assert!(d.element(x).length <= w.len());
        prop_assert_eq!(d.is_reduced(&w), d.element(x).length == w.len());
        prop_assert_eq!(d.mul(x, d.inverse(x)), d.identity());
    }

    #[test]
    fn formal_multiples_compose(k1 in -3i64..=3, k2 in -3i64..=3) {
        let law = FormalGroupLaw::universal(6).unwrap();
        let x = flagcoh_core::tseries::TruncatedSeries::var(law.ring(), 1, 6, 0);
        let lhs = law.multiple(k1, &law.multiple(k2, &x).unwrap()).unwrap();
        prop_assert_eq!(lhs, law.multiple(k1 * k2, &x).unwrap());
    }

    #[test]
    fn table_products_commute_and_associate(a in 0usize..6, b in 0usize..6, c in 0usize..6) {
        let fb = universal_a2_table();
        let (x, y, z) = (
            flagcoh_core::flagring::FlagClass::basis(6, a),
            flagcoh_core::flagring::FlagClass::basis(6, b),
            flagcoh_core::flagring::FlagClass::basis(6, c),
        );
        prop_assert_eq!(fb.multiply(&x, &y).unwrap(), fb.multiply(&y, &x).unwrap());
        let left = fb.multiply(&fb.multiply(&x, &y).unwrap(), &z).unwrap();
        let right = fb.multiply(&x, &fb.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}
