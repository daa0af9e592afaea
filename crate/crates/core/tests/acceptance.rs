//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use flagcoh_core::checks::{self, CheckResult};
use flagcoh_core::coeffring::{Poly, Q};
use flagcoh_core::fgl::FormalGroupLaw;
use flagcoh_core::fgring::{torsion_and_u0, FormalGroupRing};
use flagcoh_core::flagring::{FlagBasis, MultiplicationTable, Presentation};
use flagcoh_core::oracle::ChowOracle;
use flagcoh_core::par::Execution;
use flagcoh_core::rootdata::RootDatum;

const RANK2: [&str; 3] = ["A2", "B2", "G2"];

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn all_pass(results: impl IntoIterator<Item = CheckResult>) -> Outcome {
    let mut names = Vec::new();
    for r in results {
        if !r.passed {
            return Err(format!("{}: {}", r.name, r.detail));
        }
        names.push(r.name);
    }
    Ok(names.join(", "))
}

struct Universal {
    name: &'static str,
    fb: FlagBasis,
    table: MultiplicationTable,
    elapsed: Duration,
}

fn build_universal() -> Vec<Universal> {
    RANK2
        .iter()
        .map(|&name| {
            let start = Instant::now();
            let fb = common::flag_basis(name, "universal", None, Execution::available());
            let table = MultiplicationTable::build(&fb, "universal", true, false).expect("table");
            Universal { name, fb, table, elapsed: start.elapsed() }
        })
        .collect()
}

fn golden(u: &[Universal]) -> Outcome {
    let mut notes = Vec::new();
    for t in u {
        let pres = Presentation::for_basis(&t.fb);
        let lines = common::compare_with_golden(t.name, &t.table, pres.ring())?;
        if t.elapsed >= Duration::from_secs(60) {
            return Err(format!("{} took {:.1?}", t.name, t.elapsed));
        }
        notes.push(format!("{} {} lines in {:.2?}", t.name, lines, t.elapsed));
    }
    Ok(notes.join("; "))
}

fn torsion() -> Outcome {
    let expected = [("A2", 1), ("A3", 1), ("B2", 1), ("C3", 1), ("G2", 2), ("B3", 2)];
    let mut notes = Vec::new();
    for (name, want) in expected {
        let start = Instant::now();
        let datum = Arc::new(RootDatum::named(name).map_err(|e| e.to_string())?);
        let (t, _) = torsion_and_u0(&datum);
        let elapsed = start.elapsed();
        if t != BigInt::from(want) {
            return Err(format!("{name}: torsion index {t}, expected {want}"));
        }
        if elapsed >= Duration::from_secs(10) {
            return Err(format!("{name} took {elapsed:.1?}"));
        }
        notes.push(format!("{name}={t}"));
    }
    Ok(notes.join(" "))
}

fn a6_absent(u: &[Universal]) -> Outcome {
    let results: Vec<CheckResult> = u
        .iter()
        .flat_map(|t| checks::integrality_and_a6(&t.fb))
        .filter(|r| r.name == "a6_absent")
        .collect();
    if results.len() != u.len() {
        return Err("a6 check missing".into());
    }
    all_pass(results).map(|_| "A2, B2, G2 tables free of a6".into())
}

fn chow_oracle() -> Outcome {
    let mut products = 0;
    for name in RANK2 {
        let fb = common::flag_basis(name, "chow", None, Execution::available());
        let oracle = ChowOracle::new(fb.datum().cartan());
        for a in 0..fb.len() {
            for b in a..fb.len() {
                let ours = fb.product(a, b).map_err(|e| e.to_string())?;
                let theirs = oracle.product(fb.word(a), fb.word(b));
                for v in 0..fb.len() {
                    let want = theirs.get(fb.word(v)).cloned().unwrap_or_else(|| Q::from_integer(0.into()));
                    if ours.coord(v) != &Poly::constant(want) {
                        return Err(format!("{name}: {} * {} at {}", fb.name(a), fb.name(b), fb.name(v)));
                    }
                }
                products += 1;
            }
        }
    }
    Ok(format!("{products} products over 6/8/12-element Weyl groups"))
}

fn operator_identities() -> Outcome {
    let mut results = Vec::new();
    let mut rng = checks::rng_for(1);
    for name in RANK2 {
        let datum = Arc::new(RootDatum::named(name).map_err(|e| e.to_string())?);
        let law = FormalGroupLaw::universal(6).map_err(|e| e.to_string())?;
        let fr = FormalGroupRing::new(datum.clone(), Arc::new(law));
        results.push(checks::demazure_identities(&fr, &mut rng, 50));
        results.push(checks::push_pull_identities(&fr, &mut rng, 50));
        results.push(checks::independence_of_decomposition(&datum, &mut rng, 5));
    }
    results.push(checks::decomposition_dependence_witness());
    all_pass(results).map(|_| "50 elements per type under the universal law; braid invariance for x+y-vxy; B2 witness".into())
}

fn duality(u: &[Universal]) -> Outcome {
    let mut rng = checks::rng_for(2);
    let mut results = Vec::new();
    for t in u {
        results.push(checks::duality_pairing(&t.fb));
        results.extend(checks::u0_identities(t.fb.ring(), &mut rng));
        results.push(checks::torsion_symmetry(t.fb.ring(), &mut rng, 3));
    }
    all_pass(results).map(|_| "pairing is the identity; reversal symmetry and Δ_I(u0) in {t, 0} for all short words".into())
}

fn landweber_novikov(u: &[Universal]) -> Outcome {
    let a2 = u.iter().find(|t| t.name == "A2").expect("A2 table");
    let r = checks::landweber_novikov(&a2.fb, 2);
    let detail = r.detail.clone();
    all_pass([r]).map(|_| detail)
}

fn integrality(u: &[Universal]) -> Outcome {
    let mut results: Vec<CheckResult> = u
        .iter()
        .flat_map(|t| checks::integrality_and_a6(&t.fb))
        .filter(|r| r.name == "integrality")
        .collect();
    for name in RANK2 {
        for theory in ["chow", "ktheory:1", "connective"] {
            let fb = common::flag_basis(name, theory, None, Execution::available());
            results.extend(checks::integrality_and_a6(&fb).into_iter().filter(|r| r.name == "integrality"));
        }
    }
    let count = results.len();
    all_pass(results).map(|_| format!("{count} tables (universal, chow, ktheory:1, connective)"))
}

fn main() {
    let universal = build_universal();
    let criteria: Vec<Criterion> = vec![
        ("1 golden tables", Box::new(|| golden(&universal))),
        ("2 torsion indices", Box::new(torsion)),
        ("3 a6 absence", Box::new(|| a6_absent(&universal))),
        ("4 Chow oracle equivalence", Box::new(chow_oracle)),
        ("5 operator identities", Box::new(operator_identities)),
        ("6 duality and push-forward", Box::new(|| duality(&universal))),
        ("7 Landweber-Novikov", Box::new(|| landweber_novikov(&universal))),
        ("8 integrality", Box::new(|| integrality(&universal))),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        match run() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
