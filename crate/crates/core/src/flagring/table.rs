//! Multiplication tables in the display convention and their text/JSON forms.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{FlagBasis, FlagClass};
use crate::coeffring::{CoeffPoly, CoeffRing, LazardBasis, Poly};
use crate::error::{Error, Result};
use crate::rootdata::{word_string, Word};

/// How coefficients are written: in the a-basis of the Lazard ring for the
/// universal law, or directly in the law's own coefficient ring.
#[derive(Clone, Debug)]
pub enum Presentation {
    Lazard(Arc<LazardBasis>),
    Direct(Arc<CoeffRing>),
}

impl Presentation {
    pub fn for_basis(fb: &FlagBasis) -> Presentation {
        match fb.ring().law().lazard() {
            Some(l) => Presentation::Lazard(l.clone()),
            None => Presentation::Direct(fb.ring().coeff_ring().clone()),
        }
    }

    pub fn ring(&self) -> &Arc<CoeffRing> {
        match self {
            Presentation::Lazard(l) => l.a_ring(),
            Presentation::Direct(r) => r,
        }
    }

    /// Convert and check integrality.
    pub fn present(&self, p: &Poly, context: &str) -> Result<CoeffPoly> {
        match self {
            Presentation::Lazard(l) => {
                let m = CoeffPoly::new(l.m_ring(), p.clone());
                l.change_to_a_basis(&m, l.max_weight()).map_err(|e| match e {
                    Error::Integrality { value, .. } => Error::Integrality {
                        context: context.to_string(),
                        value,
                    },
                    other => other,
                })
            }
            Presentation::Direct(r) => {
                r.check_integral(p, context)?;
                Ok(CoeffPoly::new(r, p.clone()))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BasisLabel {
    Unit,
    Class(usize),
}

/// `left = Σ terms` (decomposition line, `right` empty) or
/// `left * right = Σ terms`.
#[derive(Clone, Debug)]
pub struct TableLine {
    pub left: BasisLabel,
    pub right: Option<BasisLabel>,
    pub terms: Vec<(BasisLabel, CoeffPoly)>,
}

#[derive(Clone, Debug)]
pub struct BasisEntry {
    pub label: BasisLabel,
    pub name: String,
    pub word: Option<Word>,
    pub codim: u32,
}

#[derive(Clone, Debug)]
pub struct MultiplicationTable {
    pub type_name: String,
    pub rank: usize,
    pub theory: String,
    pub truncation: u32,
    pub torsion_index: num_bigint::BigInt,
    pub display: bool,
    pub basis: Vec<BasisEntry>,
    names: Vec<String>,
    /// The decomposition of the top class (or of the unit, in raw mode).
    pub top: TableLine,
    pub products: Vec<TableLine>,
}

impl MultiplicationTable {
    /// Products of basis classes with total codimension below `N` (the
    /// remaining ones are `δ_{w, w0 w'} pt` or zero); `all_pairs` adds those
    /// that are not zero.
    pub fn build(fb: &FlagBasis, theory: &str, display: bool, all_pairs: bool) -> Result<MultiplicationTable> {
        let pres = Presentation::for_basis(fb);
        let n = fb.dimension();
        let top = fb.top();
        let members: Vec<usize> = (0..fb.len()).filter(|&w| !(display && w == top)).collect();
        let mut pairs = Vec::new();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i..] {
                let total = fb.codim(a) + fb.codim(b);
                let keep = total < n
                    || (all_pairs && total == n && a == fb.datum().mul(fb.datum().longest(), b));
                if keep {
                    pairs.push(order_pair(fb, a, b));
                }
            }
        }
        pairs.sort_by_key(|&(a, b)| pair_key(fb, a, b));
        fb.precompute_products(&pairs)?;

        let label_of = |w: usize| BasisLabel::Class(w);
        let mut products = Vec::with_capacity(pairs.len());
        for &(a, b) in &pairs {
            let class = fb.product(a, b)?;
            let context = format!("{} * {}", fb.name(a), fb.name(b));
            let terms = render_terms(fb, &pres, &class, display, &context)?;
            products.push(TableLine { left: label_of(a), right: Some(label_of(b)), terms });
        }

        let unit = fb.unit()?.clone();
        let top_line = if display {
            // Z_{w0} = 1 - Σ_{w ≠ w0} r_w Z_w
            let mut terms = vec![(BasisLabel::Unit, pres.present(&Poly::one(), "unit")?)];
            for w in sorted_classes(fb) {
                if w == top || unit.coords[w].is_zero() {
                    continue;
                }
                terms.push((label_of(w), pres.present(&unit.coords[w].neg(), "top class")?));
            }
            TableLine { left: label_of(top), right: None, terms }
        } else {
            let terms = render_terms(fb, &pres, &unit, false, "unit")?;
            TableLine { left: BasisLabel::Unit, right: None, terms }
        };

        let mut basis: Vec<BasisEntry> = sorted_classes(fb)
            .into_iter()
            .filter(|&w| !(display && w == top))
            .map(|w| BasisEntry {
                label: label_of(w),
                name: fb.name(w),
                word: Some(fb.word(w).clone()),
                codim: fb.codim(w),
            })
            .collect();
        basis.sort_by(|a, b| b.codim.cmp(&a.codim).then_with(|| a.word.cmp(&b.word)));
        if display {
            basis.push(BasisEntry { label: BasisLabel::Unit, name: "1".into(), word: None, codim: 0 });
        }

        Ok(MultiplicationTable {
            type_name: fb.datum().name().to_string(),
            rank: fb.datum().rank(),
            theory: theory.to_string(),
            truncation: fb.ring().trunc(),
            torsion_index: fb.torsion_index().clone(),
            display,
            basis,
            names: (0..fb.len()).map(|w| fb.name(w)).collect(),
            top: top_line,
            products,
        })
    }

    fn name(&self, label: BasisLabel) -> &str {
        match label {
            BasisLabel::Unit => "1",
            BasisLabel::Class(w) => &self.names[w],
        }
    }

    fn lhs(&self, line: &TableLine) -> String {
        match line.right {
            None => self.name(line.left).to_string(),
            Some(r) if r == line.left => format!("{}^2", self.name(line.left)),
            Some(r) => format!("{}*{}", self.name(line.left), self.name(r)),
        }
    }

    fn rhs(&self, line: &TableLine) -> String {
        if line.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (label, c)) in line.terms.iter().enumerate() {
            let t = format_term(self.name(*label), *label == BasisLabel::Unit, c);
            match (i, t.strip_prefix('-')) {
                (0, _) => out.push_str(&t),
                (_, Some(rest)) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                (_, None) => {
                    out.push_str(" + ");
                    out.push_str(&t);
                }
            }
        }
        out
    }

    /// One line per relation, top-class decomposition first.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for line in std::iter::once(&self.top).chain(&self.products) {
            out.push_str(&format!("{} = {}\n", self.lhs(line), self.rhs(line)));
        }
        out
    }

    pub fn to_document(&self) -> TableDocument {
        let terms = |line: &TableLine| -> Vec<TermJson> {
            line.terms
                .iter()
                .map(|(l, c)| TermJson { basis: self.name(*l).to_string(), coeff: c.to_string() })
                .collect()
        };
        TableDocument {
            root_system: RootSystemJson { type_name: self.type_name.clone(), rank: self.rank },
            theory: self.theory.clone(),
            truncation: self.truncation,
            torsion_index: self.torsion_index.to_string().parse().unwrap_or(0),
            basis: self
                .basis
                .iter()
                .map(|e| BasisJson {
                    name: e.name.clone(),
                    word: match &e.word {
                        Some(w) => WordJson::Word(w.iter().map(|i| i + 1).collect()),
                        None => WordJson::Unit("unit".into()),
                    },
                    codim: e.word.as_ref().map(|_| e.codim),
                })
                .collect(),
            top_class: TopJson { basis: self.name(self.top.left).to_string(), result: terms(&self.top) },
            products: self
                .products
                .iter()
                .map(|p| ProductJson {
                    left: self.name(p.left).to_string(),
                    right: self.name(p.right.expect("product line")).to_string(),
                    result: terms(p),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("serializable")
    }

    /// Look up the right-hand side of `left * right` by basis names.
    pub fn product_terms(&self, left: &str, right: &str) -> Option<&[(BasisLabel, CoeffPoly)]> {
        self.products
            .iter()
            .find(|p| {
                let (l, r) = (self.name(p.left), self.name(p.right.unwrap()));
                (l == left && r == right) || (l == right && r == left)
            })
            .map(|p| p.terms.as_slice())
    }

    pub fn label_name(&self, label: BasisLabel) -> &str {
        self.name(label)
    }
}

fn format_term(name: &str, is_unit: bool, c: &CoeffPoly) -> String {
    let s = c.to_string();
    if is_unit {
        return s;
    }
    if c.poly().is_one() {
        return name.to_string();
    }
    if c.poly().neg().is_one() {
        return format!("-{name}");
    }
    if c.poly().len() == 1 {
        format!("{s}*{name}")
    } else {
        format!("({s})*{name}")
    }
}

fn render_terms(
    fb: &FlagBasis,
    pres: &Presentation,
    class: &FlagClass,
    display: bool,
    context: &str,
) -> Result<Vec<(BasisLabel, CoeffPoly)>> {
    let mut terms = Vec::new();
    let (unit_coeff, rest) = if display {
        fb.to_display(class)?
    } else {
        (Poly::zero(), class.clone())
    };
    if !unit_coeff.is_zero() {
        terms.push((BasisLabel::Unit, pres.present(&unit_coeff, context)?));
    }
    for w in sorted_classes(fb) {
        let c = &rest.coords[w];
        if !c.is_zero() {
            terms.push((BasisLabel::Class(w), pres.present(c, context)?));
        }
    }
    Ok(terms)
}

/// Weyl elements by codimension ascending, then word.
fn sorted_classes(fb: &FlagBasis) -> Vec<usize> {
    let mut v: Vec<usize> = (0..fb.len()).collect();
    v.sort_by(|&a, &b| fb.codim(a).cmp(&fb.codim(b)).then_with(|| fb.word(a).cmp(fb.word(b))));
    v
}

fn order_pair(fb: &FlagBasis, a: usize, b: usize) -> (usize, usize) {
    let ka = (fb.codim(a), fb.word(a).clone());
    let kb = (fb.codim(b), fb.word(b).clone());
    if ka <= kb {
        (a, b)
    } else {
        (b, a)
    }
}

fn pair_key(fb: &FlagBasis, a: usize, b: usize) -> (u32, u32, bool, Word, Word) {
    (fb.codim(a) + fb.codim(b), fb.codim(a), a != b, fb.word(a).clone(), fb.word(b).clone())
}

// ---- JSON document ------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TableDocument {
    pub root_system: RootSystemJson,
    pub theory: String,
    pub truncation: u32,
    pub torsion_index: u64,
    pub basis: Vec<BasisJson>,
    pub top_class: TopJson,
    pub products: Vec<ProductJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RootSystemJson {
    #[serde(rename = "type")]
    pub type_name: String,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct BasisJson {
    pub name: String,
    pub word: WordJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codim: Option<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum WordJson {
    Word(Vec<usize>),
    Unit(String),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub basis: String,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TopJson {
    pub basis: String,
    pub result: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ProductJson {
    pub left: String,
    pub right: String,
    pub result: Vec<TermJson>,
}

impl TableDocument {
    /// Parse and check a table document: field set, basis references and
    /// word/codimension consistency.
    pub fn validate(text: &str) -> Result<TableDocument> {
        let doc: TableDocument =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("table document: {e}")))?;
        let names: Vec<&str> = doc.basis.iter().map(|b| b.name.as_str()).collect();
        let top = doc.top_class.basis.as_str();
        let top_ok = top == "1"
            || names.contains(&top)
            || top.strip_prefix("Z_").is_some_and(|w| {
                !w.is_empty() && w.chars().all(|c| c.to_digit(10).is_some_and(|d| d >= 1 && d as usize <= doc.root_system.rank))
            });
        if !top_ok {
            return Err(Error::Parse(format!("malformed top class `{top}`")));
        }
        let known = |n: &str| n == "1" || n == top || names.contains(&n);
        for b in &doc.basis {
            match (&b.word, b.codim) {
                (WordJson::Word(w), Some(_)) => {
                    if w.iter().any(|&i| i == 0 || i > doc.root_system.rank) {
                        return Err(Error::Parse(format!("basis `{}` has letters outside 1..rank", b.name)));
                    }
                    let expect = if w.is_empty() { "pt".to_string() } else { format!("Z_{}", word_string(&w.iter().map(|i| i - 1).collect::<Vec<_>>())) };
                    if expect != b.name {
                        return Err(Error::Parse(format!("basis `{}` does not match its word", b.name)));
                    }
                }
                (WordJson::Unit(u), None) if u == "unit" && b.name == "1" => {}
                _ => return Err(Error::Parse(format!("malformed basis entry `{}`", b.name))),
            }
        }
        let check_terms = |terms: &[TermJson]| -> Result<()> {
            for t in terms {
                if !known(&t.basis) {
                    return Err(Error::Parse(format!("unknown basis element `{}`", t.basis)));
                }
                if t.coeff.trim().is_empty() {
                    return Err(Error::Parse("empty coefficient".into()));
                }
            }
            Ok(())
        };
        check_terms(&doc.top_class.result)?;
        for p in &doc.products {
            if !known(&p.left) || !known(&p.right) {
                return Err(Error::Parse(format!("product {} * {} uses unknown names", p.left, p.right)));
            }
            check_terms(&p.result)?;
        }
        Ok(doc)
    }
}
