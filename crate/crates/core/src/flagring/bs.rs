//! Bott–Samelson rings: the presentation by `ξ_1, …, ξ_l`, expansion of
//! characteristic classes in the `ξ_K` basis, push-forward to a point and
//! the total Chern class of the tangent bundle.
//!
//! Subsets `K ⊆ {1, …, l}` are bitmasks with bit `j - 1` for position `j`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use crate::coeffring::Poly;
use crate::error::Result;
use crate::fgring::FormalGroupRing;
use crate::rootdata::Word;
use crate::tseries::{TruncatedSeries, MAX_VARS};

/// An element `Σ c_K ξ_K`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BsElement {
    pub terms: BTreeMap<u64, Poly>,
}

impl BsElement {
    pub fn zero() -> BsElement {
        BsElement::default()
    }

    pub fn one() -> BsElement {
        BsElement::monomial(0, Poly::one())
    }

    pub fn monomial(k: u64, c: Poly) -> BsElement {
        let mut e = BsElement::zero();
        e.add_term(k, c);
        e
    }

    pub fn coeff(&self, k: u64) -> Poly {
        self.terms.get(&k).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn add_term(&mut self, k: u64, c: Poly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_default();
        slot.add_assign(&c);
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, other: &BsElement) -> BsElement {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Poly) -> BsElement {
        let mut out = BsElement::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, c.mul(s));
        }
        out
    }
}

/// `ξ_j² = Σ_{K ⊆ [1, j-1]} ε Θ_K(x_{-α_{i_j}}) ξ_K ξ_j`.
#[derive(Debug)]
pub struct BsPresentation {
    pub word: Word,
    /// `relations[j - 1][K]`.
    pub relations: Vec<BTreeMap<u64, Poly>>,
    memo: Mutex<HashMap<Vec<u8>, BsElement>>,
}

fn subsets(len: usize) -> impl Iterator<Item = u64> {
    0..(1u64 << len)
}

fn mask_to_bools(k: u64, len: usize) -> Vec<bool> {
    (0..len).map(|j| k >> j & 1 == 1).collect()
}

impl BsPresentation {
    pub fn new(ring: &FormalGroupRing, word: &[usize]) -> Result<BsPresentation> {
        assert!(word.len() < 63, "word too long");
        let mut relations = Vec::with_capacity(word.len());
        for j in 0..word.len() {
            let prefix = &word[..j];
            let x = ring.x_neg_alpha(word[j]).clone();
            relations.push(cc_in_xi(ring, prefix, &x)?.terms);
        }
        Ok(BsPresentation {
            word: word.to_vec(),
            relations,
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn xi(&self, j: usize) -> BsElement {
        assert!(j >= 1 && j <= self.len());
        BsElement::monomial(1 << (j - 1), Poly::one())
    }

    /// Rewrite `Π ξ_j^{e_j}` in the squarefree basis.
    fn reduce(&self, exps: Vec<u8>) -> BsElement {
        let Some(j) = (0..exps.len()).rev().find(|&j| exps[j] >= 2) else {
            let k = exps.iter().enumerate().fold(0u64, |acc, (j, &e)| acc | (u64::from(e) << j));
            return BsElement::monomial(k, Poly::one());
        };
        if let Some(e) = self.memo.lock().unwrap().get(&exps) {
            return e.clone();
        }
        let mut out = BsElement::zero();
        for (k, c) in &self.relations[j] {
            let mut next = exps.clone();
            next[j] -= 1;
            for (i, slot) in next.iter_mut().enumerate().take(j) {
                if k >> i & 1 == 1 {
                    *slot += 1;
                }
            }
            out = out.add(&self.reduce(next).scale(c));
        }
        self.memo.lock().unwrap().insert(exps, out.clone());
        out
    }

    pub fn multiply(&self, a: &BsElement, b: &BsElement) -> BsElement {
        let l = self.len();
        let mut out = BsElement::zero();
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let exps: Vec<u8> = (0..l).map(|j| (ka >> j & 1) as u8 + (kb >> j & 1) as u8).collect();
                out = out.add(&self.reduce(exps).scale(&ca.mul(cb)));
            }
        }
        out
    }

    pub fn pow(&self, a: &BsElement, k: u32) -> BsElement {
        let mut out = BsElement::one();
        for _ in 0..k {
            out = self.multiply(&out, a);
        }
        out
    }

    /// `Σ_{i+j ≤ l} a_{ij} s^i t^j`; exact because products of more than `l`
    /// positive-degree factors vanish.
    pub fn formal_sum(&self, ring: &FormalGroupRing, s: &BsElement, t: &BsElement) -> BsElement {
        let l = self.len() as u32;
        let sp: Vec<BsElement> = (0..=l).map(|k| self.pow(s, k)).collect();
        let tp: Vec<BsElement> = (0..=l).map(|k| self.pow(t, k)).collect();
        let mut out = s.add(t);
        for ((i, j), c) in ring.law().coefficients_table() {
            if i + j <= l {
                out = out.add(&self.multiply(&sp[i as usize], &tp[j as usize]).scale(&c));
            }
        }
        out
    }

    /// `ι(s) = Σ_k ι_k s^k`.
    pub fn formal_inverse(&self, ring: &FormalGroupRing, s: &BsElement) -> BsElement {
        let inv = ring.law().inverse_series();
        let mut out = BsElement::zero();
        for k in 1..=(self.len() as u8) {
            let mut e = [0u8; MAX_VARS];
            e[0] = k;
            let c = inv.coeff(&e);
            if !c.is_zero() {
                out = out.add(&self.pow(s, u32::from(k)).scale(&c));
            }
        }
        out
    }
}

/// `c_I(u) = Σ_K ε Θ_K(u) ξ_K`.
pub fn cc_in_xi(ring: &FormalGroupRing, word: &[usize], u: &TruncatedSeries) -> Result<BsElement> {
    let l = word.len();
    let mut out = BsElement::zero();
    for k in subsets(l) {
        let v = ring.theta(word, &mask_to_bools(k, l), u)?;
        out.add_term(k, v.constant_term());
    }
    Ok(out)
}

/// `ε C_{i_1} ⋯ C_{i_l}(u)`, the push-forward of `c_I(u)` to a point.
pub fn bs_pushforward(ring: &FormalGroupRing, word: &[usize], u: &TruncatedSeries) -> Result<Poly> {
    Ok(ring.c_word(word, u)?.constant_term())
}

/// `Π_j (1 + ξ_j)(1 + F(ξ_j, ι(y_j)))` with `y_j = c_{(i_1..i_{j-1})}(x_{-α_{i_j}})`.
pub fn bs_tangent_chern(ring: &FormalGroupRing, pres: &BsPresentation) -> Result<BsElement> {
    let mut out = BsElement::one();
    for j in 1..=pres.len() {
        let x = ring.x_neg_alpha(pres.word[j - 1]);
        let y = cc_in_xi(ring, &pres.word[..j - 1], x)?;
        let xi = pres.xi(j);
        let diff = pres.formal_sum(ring, &xi, &pres.formal_inverse(ring, &y));
        let factor = pres.multiply(&BsElement::one().add(&xi), &BsElement::one().add(&diff));
        out = pres.multiply(&out, &factor);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgl::FormalGroupLaw;
    use crate::rootdata::RootDatum;
    use std::sync::Arc;

    fn ring(name: &str, law: FormalGroupLaw) -> FormalGroupRing {
        FormalGroupRing::new(Arc::new(RootDatum::named(name).unwrap()), Arc::new(law))
    }

    #[test]
    fn single_letter_relation_is_nilpotent() {
        let r = ring("A2", FormalGroupLaw::additive(5));
        let p = BsPresentation::new(&r, &[0]).unwrap();
        let xi = p.xi(1);
        assert!(p.multiply(&xi, &xi).terms.is_empty());
    }

    #[test]
    fn additive_a2_relation() {
        let r = ring("A2", FormalGroupLaw::additive(5));
        let p = BsPresentation::new(&r, &[0, 1]).unwrap();
        assert_eq!(p.relations[1].get(&1), Some(&Poly::int(-1)));
    }

    #[test]
    fn cc_of_one() {
        let r = ring("B2", FormalGroupLaw::multiplicative(crate::coeffring::q_int(1), 6));
        let e = cc_in_xi(&r, &[0, 1, 0], &r.one()).unwrap();
        assert_eq!(e, BsElement::one());
    }

    #[test]
    fn tangent_class_starts_with_one() {
        let r = ring("A2", FormalGroupLaw::additive(6));
        let p = BsPresentation::new(&r, &[0, 1, 0]).unwrap();
        let c = bs_tangent_chern(&r, &p).unwrap();
        assert_eq!(c.coeff(0), Poly::one());
    }
}
