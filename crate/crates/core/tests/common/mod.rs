//! Shared fixtures: the published rank-2 tables and helpers to build and
//! compare multiplication tables.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use flagcoh_core::coeffring::{CoeffRing, Poly};
use flagcoh_core::fgl::Theory;
use flagcoh_core::fgring::FormalGroupRing;
use flagcoh_core::flagring::{FlagBasis, MultiplicationTable};
use flagcoh_core::par::Execution;
use flagcoh_core::rootdata::RootDatum;

pub const A2: &[&str] = &[
    "Z_121 = 1 + a2*Z_1",
    "Z_12*Z_12 = Z_2",
    "Z_21*Z_21 = Z_1",
    "Z_12*Z_21 = Z_1 + Z_2 + a1*pt",
];

pub const B2: &[&str] = &[
    "Z_1212 = 1 + 2*a2*Z_12 + (a3 - a1*a2)*Z_2",
    "Z_121*Z_121 = Z_21",
    "Z_212*Z_212 = 2*Z_12 + a1*Z_2",
    "Z_121*Z_212 = Z_12 + Z_21 + a1*Z_1 + a1*Z_2 + (2*a2 + a1^2)*pt",
    "Z_121*Z_12 = Z_1 + Z_2 + a1*pt",
    "Z_121*Z_21 = Z_1",
    "Z_212*Z_12 = Z_2",
    "Z_212*Z_21 = 2*Z_1 + Z_2 + 2*a1*pt",
];

pub const G2: &[&str] = &[
    "Z_121212 = 1 + 4*a2*Z_1212 + (10*a3 - 10*a1*a2)*Z_212 \
     - (4*a4 + 9*a1*a3 + 3*a2^2 - 9*a1^2*a2)*Z_12 \
     - (54*a5 - 459*a1*a4 - 1188*a2*a3 - 108*a1^2*a3 + 1080*a1*a2^2 + 108*a1^3*a2)*Z_2",
    "Z_12121*Z_12121 = 3*Z_2121 + 3*a1*Z_121 + (13*a2 + 2*a1^2)*Z_21 + (2*a3 + 7*a1*a2 + a1^3)*Z_1",
    "Z_21212*Z_21212 = Z_1212 + 5*a2*Z_12 + (6*a3 - 5*a1*a2)*Z_2",
    "Z_12121*Z_21212 = Z_1212 + Z_2121 + a1*Z_121 + a1*Z_212 + (8*a2 + a1^2)*Z_12 + (8*a2 + a1^2)*Z_21 \
     + (4*a3 + 8*a1*a2 + a1^3)*Z_1 + (10*a3 + 6*a1*a2 + a1^3)*Z_2 \
     + (-4*a4 + a1*a3 + 13*a2^2 + 15*a1^2*a2 + a1^4)*pt",
    "Z_12121*Z_1212 = Z_121 + 3*Z_212 + 4*a1*Z_12 + 3*a1*Z_21 + (8*a2 + 4*a1^2)*Z_1 + (13*a2 + 5*a1^2)*Z_2 \
     + (a3 + 16*a1*a2 + 5*a1^3)*pt",
    "Z_12121*Z_2121 = 2*Z_121 + 2*a1*Z_21 + (4*a2 + a1^2)*Z_1",
    "Z_21212*Z_1212 = 2*Z_212 + a1*Z_12 + 4*a2*Z_2",
    "Z_21212*Z_2121 = Z_121 + Z_212 + a1*Z_12 + a1*Z_21 + (5*a2 + a1^2)*Z_1 + (8*a2 + a1^2)*Z_2 \
     + (3*a3 + 6*a1*a2 + a1^3)*pt",
    "Z_12121*Z_121 = 3*Z_21 + 2*a1*Z_1",
    "Z_12121*Z_212 = 2*Z_12 + Z_21 + 2*a1*Z_1 + 3*a1*Z_2 + (4*a2 + 3*a1^2)*pt",
    "Z_21212*Z_121 = Z_12 + 2*Z_21 + 2*a1*Z_1 + 2*a1*Z_2 + (4*a2 + 2*a1^2)*pt",
    "Z_21212*Z_212 = Z_12",
    "Z_1212*Z_1212 = 2*Z_12 + a1*Z_2",
    "Z_2121*Z_2121 = 2*Z_21 + a1*Z_1",
    "Z_1212*Z_2121 = 2*Z_12 + 2*Z_21 + 3*a1*Z_1 + 4*a1*Z_2 + (4*a2 + 4*a1^2)*pt",
    "Z_12121*Z_12 = Z_1 + 3*Z_2 + 3*a1*pt",
    "Z_12121*Z_21 = Z_1",
    "Z_21212*Z_12 = Z_2",
    "Z_21212*Z_21 = Z_1 + Z_2 + a1*pt",
    "Z_1212*Z_121 = 2*Z_1 + 3*Z_2 + 4*a1*pt",
    "Z_1212*Z_212 = Z_2",
    "Z_2121*Z_121 = Z_1",
    "Z_2121*Z_212 = Z_1 + 2*Z_2 + 2*a1*pt",
];

pub fn golden(type_name: &str) -> &'static [&'static str] {
    match type_name {
        "A2" => A2,
        "B2" => B2,
        "G2" => G2,
        _ => panic!("no published table for {type_name}"),
    }
}

/// `(left, right, {basis name: coefficient})`; `right` is empty for the
/// top-class line.
pub struct GoldenLine {
    pub left: String,
    pub right: Option<String>,
    pub terms: BTreeMap<String, Poly>,
}

fn split_top_level(s: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut negative = false;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                if !cur.trim().is_empty() {
                    out.push((negative, cur.trim().to_string()));
                }
                cur.clear();
                negative = ch == '-';
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push((negative, cur.trim().to_string()));
    }
    out
}

pub fn parse_line(ring: &Arc<CoeffRing>, line: &str) -> GoldenLine {
    let (lhs, rhs) = line.split_once('=').expect("relation");
    let lhs = lhs.trim();
    let (left, right) = match lhs.split_once('*') {
        Some((l, r)) => (l.to_string(), Some(r.to_string())),
        None => (lhs.to_string(), None),
    };
    let mut terms: BTreeMap<String, Poly> = BTreeMap::new();
    for (negative, body) in split_top_level(rhs) {
        let (coeff, basis) = if body == "1" {
            (Poly::one(), "1".to_string())
        } else if body.starts_with("Z_") || body == "pt" {
            (Poly::one(), body.clone())
        } else {
            let (c, b) = body.rsplit_once('*').expect("coefficient times basis");
            let c = c.trim().trim_start_matches('(').trim_end_matches(')');
            (ring.parse(c).expect("coefficient"), b.trim().to_string())
        };
        let coeff = if negative { coeff.neg() } else { coeff };
        let slot = terms.entry(basis).or_insert_with(Poly::zero);
        *slot = slot.add(&coeff);
    }
    GoldenLine { left, right, terms }
}

pub fn flag_basis(type_name: &str, theory: &str, trunc: Option<u32>, exec: Execution) -> FlagBasis {
    let datum = Arc::new(RootDatum::named(type_name).expect("named root system"));
    let n = datum.n_positive() as u32;
    let law = Theory::parse(theory).unwrap().build_law(trunc.unwrap_or(2 * n + 1)).unwrap();
    let ring = Arc::new(FormalGroupRing::new(datum, Arc::new(law)));
    FlagBasis::new(ring, exec).expect("flag basis")
}

pub fn table(type_name: &str, theory: &str) -> MultiplicationTable {
    let fb = flag_basis(type_name, theory, None, Execution::available());
    MultiplicationTable::build(&fb, theory, true, false).expect("table")
}

/// The table as relations keyed by `(left, right)`, coefficients as raw
/// polynomials of the presentation ring.
pub fn table_relations(t: &MultiplicationTable) -> Vec<GoldenLine> {
    let collect = |terms: &[(flagcoh_core::flagring::BasisLabel, flagcoh_core::coeffring::CoeffPoly)]| {
        terms.iter().map(|(l, c)| (t.label_name(*l).to_string(), c.poly().clone())).collect()
    };
    let mut out = vec![GoldenLine { left: t.label_name(t.top.left).to_string(), right: None, terms: collect(&t.top.terms) }];
    for p in &t.products {
        out.push(GoldenLine {
            left: t.label_name(p.left).to_string(),
            right: p.right.map(|r| t.label_name(r).to_string()),
            terms: collect(&p.terms),
        });
    }
    out
}

/// Every published line holds exactly and the table lists nothing else.
pub fn compare_with_golden(type_name: &str, t: &MultiplicationTable, ring: &Arc<CoeffRing>) -> Result<usize, String> {
    let ours = table_relations(t);
    let lines = golden(type_name);
    if ours.len() != lines.len() {
        return Err(format!("{type_name}: {} table lines, {} published", ours.len(), lines.len()));
    }
    for line in lines {
        let g = parse_line(ring, line);
        let found = ours.iter().find(|o| {
            (o.left == g.left && o.right == g.right)
                || (Some(&o.left) == g.right.as_ref() && o.right.as_ref() == Some(&g.left))
        });
        let o = found.ok_or_else(|| format!("{type_name}: no line for `{line}`"))?;
        if o.terms != g.terms {
            return Err(format!("{type_name}: mismatch in `{line}`"));
        }
    }
    Ok(lines.len())
}
