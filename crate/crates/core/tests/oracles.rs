mod common;

use num_traits::Zero;

use flagcoh_core::coeffring::{Poly, Q};
use flagcoh_core::flagring::FlagBasis;
use flagcoh_core::oracle::{ChowOracle, KOracle};
use flagcoh_core::par::Execution;

fn cartan(fb: &FlagBasis) -> Vec<Vec<i64>> {
    fb.datum().cartan().clone()
}

/// Every product `b_w b_w'` against the oracle, with `want` scaling the
/// oracle's coefficient of `b_v`.
fn compare_all(fb: &FlagBasis, oracle: impl Fn(&[usize], &[usize]) -> std::collections::BTreeMap<Vec<usize>, Q>, scale: impl Fn(i32) -> Q) {
    for a in 0..fb.len() {
        for b in a..fb.len() {
            let ours = fb.product(a, b).unwrap();
            let theirs = oracle(fb.word(a), fb.word(b));
            for v in 0..fb.len() {
                let k = fb.codim(v) as i32 - fb.codim(a) as i32 - fb.codim(b) as i32;
                let want = theirs.get(fb.word(v)).cloned().unwrap_or_else(Q::zero) * scale(k);
                assert_eq!(ours.coord(v), &Poly::constant(want), "{} * {} at {}", fb.name(a), fb.name(b), fb.name(v));
            }
        }
    }
}

#[test]
fn chow_tables_match_divided_differences() {
    for t in ["A2", "B2", "G2"] {
        let fb = common::flag_basis(t, "chow", None, Execution::available());
        let o = ChowOracle::new(&cartan(&fb));
        compare_all(&fb, |a, b| o.product(a, b), |_| Q::from_integer(1.into()));
    }
}

#[test]
fn k_tables_match_group_ring() {
    for t in ["A2", "B2"] {
        let fb = common::flag_basis(t, "ktheory:1", None, Execution::available());
        let o = KOracle::new(&cartan(&fb));
        compare_all(&fb, |a, b| o.product(a, b), |_| Q::from_integer(1.into()));
    }
}

#[test]
fn k_theory_scales_with_beta() {
    let fb = common::flag_basis("A2", "ktheory:3", None, Execution::Sequential);
    let o = KOracle::new(&cartan(&fb));
    let three = Q::from_integer(3.into());
    compare_all(&fb, |a, b| o.product(a, b), |k| if k > 0 { three.pow(k) } else { Q::from_integer(1.into()) });
}

#[test]
fn oracle_weyl_groups_agree_with_root_data() {
    for t in ["A2", "B2", "G2", "A3", "B3", "C3"] {
        let fb_datum = flagcoh_core::rootdata::RootDatum::named(t).unwrap();
        let w = flagcoh_core::oracle::WeylWords::new(fb_datum.cartan());
        assert_eq!(w.words.len(), fb_datum.order(), "{t}");
        for (i, word) in w.words.iter().enumerate() {
            let e = fb_datum.element(i);
            assert_eq!(&e.word, word, "{t}: canonical word {i}");
        }
    }
}
