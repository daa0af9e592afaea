mod common;

use flagcoh_core::flagring::Presentation;

fn check(type_name: &str) {
    let t = common::table(type_name, "universal");
    let fb = common::flag_basis(type_name, "universal", None, flagcoh_core::par::Execution::Sequential);
    let pres = Presentation::for_basis(&fb);
    let n = common::compare_with_golden(type_name, &t, pres.ring()).unwrap();
    assert_eq!(n, common::golden(type_name).len());
}

#[test]
fn a2_universal_table() {
    check("A2");
}

#[test]
fn b2_universal_table() {
    check("B2");
}

#[test]
fn g2_universal_table() {
    check("G2");
}

#[test]
fn published_lines_parse_as_stated() {
    let fb = common::flag_basis("A2", "universal", None, flagcoh_core::par::Execution::Sequential);
    let pres = Presentation::for_basis(&fb);
    let line = common::parse_line(pres.ring(), "Z_12*Z_21 = Z_1 + Z_2 + a1*pt");
    assert_eq!(line.right.as_deref(), Some("Z_21"));
    assert_eq!(line.terms.len(), 3);
    let neg = common::parse_line(pres.ring(), "Z_1 = - (a1 - a2)*pt");
    assert_eq!(neg.terms["pt"], pres.ring().parse("a2 - a1").unwrap());
}

#[test]
fn connective_b2_is_the_specialized_table() {
    // x + y - v xy has a11 = -v, so a1 -> -v and a_{i>1} -> 0.
    let t = common::table("B2", "connective");
    let ours = common::table_relations(&t);
    let fb = common::flag_basis("B2", "universal", None, flagcoh_core::par::Execution::Sequential);
    let pres = Presentation::for_basis(&fb);
    let a = pres.ring();
    let cfb = common::flag_basis("B2", "connective", None, flagcoh_core::par::Execution::Sequential);
    let c = Presentation::for_basis(&cfb);
    let v = c.ring().names()[0].clone();
    let images: Vec<_> = (0..a.n_gens())
        .map(|i| if i == 0 { c.ring().parse(&v).unwrap().neg() } else { flagcoh_core::coeffring::Poly::zero() })
        .collect();
    for line in common::B2 {
        let g = common::parse_line(a, line);
        let o = ours
            .iter()
            .find(|o| (o.left == g.left && o.right == g.right) || (Some(&o.left) == g.right.as_ref() && o.right.as_ref() == Some(&g.left)))
            .unwrap_or_else(|| panic!("missing {line}"));
        let want: std::collections::BTreeMap<_, _> = g
            .terms
            .iter()
            .map(|(k, p)| (k.clone(), p.substitute(&images)))
            .filter(|(_, p)| !p.is_zero())
            .collect();
        assert_eq!(o.terms, want, "{line}");
    }
}
