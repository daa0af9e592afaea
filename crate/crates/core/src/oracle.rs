//! Reference implementations of classical Schubert calculus, written
//! independently of the truncated-series machinery.
//!
//! [`ChowOracle`] works in `Q[y_1, …, y_n]` with the BGG divided differences
//! `∂_i f = (f - s_i f)/α_i`.  [`KOracle`] works in the group ring
//! `Q[e^{±ω}]` with `x_λ = 1 - e^{-λ}` (the law `x + y - xy`) and the
//! Demazure operators evaluated termwise on characters, so nothing is
//! truncated.  Both use their own enumeration of the Weyl group.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::coeffring::Q;

type Word = Vec<usize>;

/// Weyl group elements with lexicographically smallest reduced words,
/// found by breadth-first search on the orbit of `ρ`.
#[derive(Clone, Debug)]
pub struct WeylWords {
    cartan: Vec<Vec<i64>>,
    pub words: Vec<Word>,
    index: HashMap<Vec<i64>, usize>,
}

impl WeylWords {
    pub fn new(cartan: &[Vec<i64>]) -> WeylWords {
        let n = cartan.len();
        let mut ww = WeylWords { cartan: cartan.to_vec(), words: vec![vec![]], index: HashMap::new() };
        let rho = vec![1i64; n];
        ww.index.insert(rho.clone(), 0);
        let mut level = vec![0usize];
        while !level.is_empty() {
            let mut next = Vec::new();
            for &w in &level {
                for i in 0..n {
                    let mut word = ww.words[w].clone();
                    word.push(i);
                    let image = ww.act(&word, &rho);
                    if !ww.index.contains_key(&image) {
                        ww.index.insert(image, ww.words.len());
                        next.push(ww.words.len());
                        ww.words.push(word);
                    }
                }
            }
            level = next;
        }
        ww
    }

    /// `s_i λ` in fundamental-weight coordinates.
    pub fn reflect(&self, i: usize, lambda: &[i64]) -> Vec<i64> {
        let k = lambda[i];
        lambda.iter().enumerate().map(|(j, &l)| l - k * self.cartan[j][i]).collect()
    }

    /// `s_{i1} ⋯ s_{il} λ`.
    pub fn act(&self, word: &[usize], lambda: &[i64]) -> Vec<i64> {
        word.iter().rev().fold(lambda.to_vec(), |acc, &i| self.reflect(i, &acc))
    }

    pub fn element_of(&self, word: &[usize]) -> usize {
        self.index[&self.act(word, &vec![1; self.cartan.len()])]
    }

    pub fn longest(&self) -> usize {
        self.words.len() - 1
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// `α_i` in fundamental-weight coordinates.
    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        self.cartan.iter().map(|row| row[i]).collect()
    }
}

// ---- Chow ring ----------------------------------------------------------

type Polynomial = BTreeMap<Vec<u32>, Q>;

fn poly_add_term(p: &mut Polynomial, e: Vec<u32>, c: Q) {
    if c.is_zero() {
        return;
    }
    let slot = p.entry(e.clone()).or_insert_with(Q::zero);
    *slot += c;
    if slot.is_zero() {
        p.remove(&e);
    }
}

fn poly_mul(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let mut out = Polynomial::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            poly_add_term(&mut out, e, ca * cb);
        }
    }
    out
}

fn poly_scale(a: &Polynomial, s: &Q) -> Polynomial {
    let mut out = Polynomial::new();
    for (e, c) in a {
        poly_add_term(&mut out, e.clone(), c * s);
    }
    out
}

/// BGG calculus on `Q[y]`, `y_i` the fundamental weights.
#[derive(Clone, Debug)]
pub struct ChowOracle {
    pub weyl: WeylWords,
    /// Representative of the point class, normalized so that
    /// `(-1)^N ε ∂_{w0}(g) = 1`.
    g: Polynomial,
}

impl ChowOracle {
    pub fn new(cartan: &[Vec<i64>]) -> ChowOracle {
        let weyl = WeylWords::new(cartan);
        let n = weyl.rank();
        let big_n = weyl.words[weyl.longest()].len() as u32;
        let top = weyl.words[weyl.longest()].clone();
        let mut me = ChowOracle { weyl, g: Polynomial::new() };
        // Some power of y_1 + 2 y_2 + 3 y_3 + … is not killed by ∂_{w0}.
        let mut lin = Polynomial::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            lin.insert(e, Q::from_integer((i as i64 + 1).into()));
        }
        let mut f = Polynomial::new();
        f.insert(vec![0; n], Q::one());
        for _ in 0..big_n {
            f = poly_mul(&f, &lin);
        }
        let value = me.augment(&me.d_word(&top, &f));
        assert!(!value.is_zero(), "regular power has nonzero top divided difference");
        let sign = if big_n.is_multiple_of(2) { Q::one() } else { -Q::one() };
        me.g = poly_scale(&f, &(sign / value));
        me
    }

    fn reflect_poly(&self, i: usize, f: &Polynomial) -> Polynomial {
        // s_i(y_i) = y_i - α_i, other y_j fixed.
        let n = self.weyl.rank();
        let alpha = self.weyl.simple_root(i);
        let mut image = Polynomial::new();
        for (j, &c) in alpha.iter().enumerate() {
            let mut e = vec![0; n];
            e[j] = 1;
            poly_add_term(&mut image, e, Q::from_integer((-c).into()));
        }
        let mut yi = vec![0; n];
        yi[i] = 1;
        poly_add_term(&mut image, yi, Q::one());
        let mut out = Polynomial::new();
        for (e, c) in f {
            let mut rest = e.clone();
            rest[i] = 0;
            let mut term = Polynomial::new();
            term.insert(rest, c.clone());
            for _ in 0..e[i] {
                term = poly_mul(&term, &image);
            }
            for (k, v) in term {
                poly_add_term(&mut out, k, v);
            }
        }
        out
    }

    /// `∂_i f`, by long division in `y_i` by `α_i = 2 y_i + (other terms)`.
    pub fn d(&self, i: usize, f: &Polynomial) -> Polynomial {
        let mut num = f.clone();
        for (e, c) in self.reflect_poly(i, f) {
            poly_add_term(&mut num, e, -c);
        }
        let alpha = self.weyl.simple_root(i);
        let pivot = Q::from_integer(alpha[i].into());
        let mut quot = Polynomial::new();
        while let Some((e, c)) = num.iter().max_by_key(|(e, _)| (e[i], (*e).clone())).map(|(e, c)| (e.clone(), c.clone())) {
            assert!(e[i] > 0, "divided difference is not exact");
            let mut qe = e.clone();
            qe[i] -= 1;
            let qc = c / &pivot;
            // subtract qc * y^qe * α_i
            for (j, &a) in alpha.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let mut te = qe.clone();
                te[j] += 1;
                poly_add_term(&mut num, te, -(&qc * Q::from_integer(a.into())));
            }
            poly_add_term(&mut quot, qe, qc);
        }
        quot
    }

    /// `∂_{i1} ⋯ ∂_{il} f`.
    pub fn d_word(&self, word: &[usize], f: &Polynomial) -> Polynomial {
        word.iter().rev().fold(f.clone(), |acc, &i| self.d(i, &acc))
    }

    fn augment(&self, f: &Polynomial) -> Q {
        f.get(&vec![0; self.weyl.rank()]).cloned().unwrap_or_else(Q::zero)
    }

    /// Representative of the class `b_w`: `(-1)^{l(w)} ∂_{w^{-1}}(g)`.
    pub fn schubert(&self, w: usize) -> Polynomial {
        let word = &self.weyl.words[w];
        let mut rev = word.clone();
        rev.reverse();
        let sign = if word.len().is_multiple_of(2) { Q::one() } else { -Q::one() };
        poly_scale(&self.d_word(&rev, &self.g), &sign)
    }

    /// Coordinates of a homogeneous polynomial in the basis `b_v`:
    /// `c_v = (-1)^{N + l(v)} ε ∂_{w0 v}(f)`.
    pub fn decompose(&self, f: &Polynomial) -> BTreeMap<Word, Q> {
        let w0 = &self.weyl.words[self.weyl.longest()];
        let big_n = w0.len();
        let mut out = BTreeMap::new();
        for v in 0..self.weyl.words.len() {
            let vw = &self.weyl.words[v];
            // w0 v as a word: w0 followed by v, then reduce via the orbit index.
            let mut prod = w0.clone();
            prod.extend(vw);
            let u = self.weyl.element_of(&prod);
            let uw = &self.weyl.words[u];
            if uw.len() + vw.len() != big_n {
                continue;
            }
            let value = self.augment(&self.d_word(uw, f));
            if !value.is_zero() {
                let sign = if (big_n + vw.len()).is_multiple_of(2) { Q::one() } else { -Q::one() };
                out.insert(vw.clone(), value * sign);
            }
        }
        out
    }

    /// `b_w · b_{w'}` keyed by canonical words.
    pub fn product(&self, w: &[usize], w2: &[usize]) -> BTreeMap<Word, Q> {
        let a = self.schubert(self.weyl.element_of(w));
        let b = self.schubert(self.weyl.element_of(w2));
        self.decompose(&poly_mul(&a, &b))
    }
}

/// Exponent vectors of total degree `d` in `n` variables, in lex order.
fn compositions(d: usize, n: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in compositions(d - first, n - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

// ---- K-theory ------------------------------------------------------------

type Laurent = BTreeMap<Vec<i64>, Q>;

fn laurent_add_term(p: &mut Laurent, e: Vec<i64>, c: Q) {
    if c.is_zero() {
        return;
    }
    let slot = p.entry(e.clone()).or_insert_with(Q::zero);
    *slot += c;
    if slot.is_zero() {
        p.remove(&e);
    }
}

fn laurent_mul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            laurent_add_term(&mut out, ea.iter().zip(eb).map(|(x, y)| x + y).collect(), ca * cb);
        }
    }
    out
}

/// Connective K-theory at `β = 1` in the group ring, with
/// `C_α(u) = u - Δ_α(u)` and `Δ_α(u) = (u - s_α u)/(1 - e^{-α})`.
#[derive(Clone, Debug)]
pub struct KOracle {
    pub weyl: WeylWords,
    g: Laurent,
    inverse: Vec<Vec<Q>>,
    seeds: Vec<Laurent>,
}

impl KOracle {
    pub fn new(cartan: &[Vec<i64>]) -> KOracle {
        let weyl = WeylWords::new(cartan);
        let n = weyl.rank();
        let top = weyl.words[weyl.longest()].clone();
        let big_n = top.len();
        let mut me = KOracle { weyl, g: Laurent::new(), inverse: vec![], seeds: vec![] };
        // The first monomial Π x_{ω_i}^{e_i} of degree N not killed by C_{w0}.
        let x_omega = |i: usize| -> Laurent {
            let mut l = Laurent::new();
            l.insert(vec![0; n], Q::one());
            let mut e = vec![0; n];
            e[i] = -1;
            l.insert(e, -Q::one());
            l
        };
        let mut found = None;
        for exps in compositions(big_n, n) {
            let mut f = Laurent::new();
            f.insert(vec![0; n], Q::one());
            for (i, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    f = laurent_mul(&f, &x_omega(i));
                }
            }
            let value = me.augment(&me.c_word(&top, &f));
            if !value.is_zero() {
                found = Some((f, value));
                break;
            }
        }
        let (f, value) = found.expect("some degree-N monomial survives the top operator");
        me.g = f.into_iter().map(|(e, c)| (e, c / &value)).collect();
        let count = me.weyl.words.len();
        me.seeds = (0..count)
            .map(|w| {
                let mut rev = me.weyl.words[w].clone();
                rev.reverse();
                me.c_word(&rev, &me.g)
            })
            .collect();
        let p: Vec<Vec<Q>> = (0..count).map(|w| me.char_coords(&me.seeds[w])).collect();
        // p[w][v] = ε C_{I_v}(seed_w); the transition matrix is its transpose.
        let pt: Vec<Vec<Q>> = (0..count).map(|v| (0..count).map(|w| p[w][v].clone()).collect()).collect();
        me.inverse = crate::linalg::invert(&pt).expect("transition matrix is invertible");
        me
    }

    /// `(ε C_{I_v}(u))_v`, sharing the work on common suffixes.
    fn char_coords(&self, u: &Laurent) -> Vec<Q> {
        let mut memo: HashMap<Word, Laurent> = HashMap::new();
        memo.insert(vec![], u.clone());
        let mut out = Vec::with_capacity(self.weyl.words.len());
        for word in &self.weyl.words {
            for start in (0..word.len()).rev() {
                let suffix = word[start..].to_vec();
                if !memo.contains_key(&suffix) {
                    let inner = &memo[&word[start + 1..].to_vec()];
                    let value = self.c(word[start], inner);
                    memo.insert(suffix, value);
                }
            }
            out.push(self.augment(&memo[word]));
        }
        out
    }

    fn augment(&self, u: &Laurent) -> Q {
        u.values().fold(Q::zero(), |a, c| a + c)
    }

    /// Demazure operator on characters.
    pub fn delta(&self, i: usize, u: &Laurent) -> Laurent {
        let alpha = self.weyl.simple_root(i);
        let mut out = Laurent::new();
        for (lambda, c) in u {
            let k = lambda[i];
            if k > 0 {
                for j in 0..k {
                    let e: Vec<i64> = lambda.iter().zip(&alpha).map(|(l, a)| l - j * a).collect();
                    laurent_add_term(&mut out, e, c.clone());
                }
            } else if k < 0 {
                let base: Vec<i64> = lambda.iter().zip(&alpha).map(|(l, a)| l - k * a).collect();
                for j in 0..-k {
                    let e: Vec<i64> = base.iter().zip(&alpha).map(|(l, a)| l - j * a).collect();
                    laurent_add_term(&mut out, e, -c.clone());
                }
            }
        }
        out
    }

    pub fn c(&self, i: usize, u: &Laurent) -> Laurent {
        let mut out = u.clone();
        for (e, c) in self.delta(i, u) {
            laurent_add_term(&mut out, e, -c);
        }
        out
    }

    pub fn c_word(&self, word: &[usize], u: &Laurent) -> Laurent {
        word.iter().rev().fold(u.clone(), |acc, &i| self.c(i, &acc))
    }

    /// `b_w · b_{w'}` keyed by canonical words.
    pub fn product(&self, w: &[usize], w2: &[usize]) -> BTreeMap<Word, Q> {
        let a = &self.seeds[self.weyl.element_of(w)];
        let b = &self.seeds[self.weyl.element_of(w2)];
        let alpha = self.char_coords(&laurent_mul(a, b));
        let mut out = BTreeMap::new();
        for (v, row) in self.inverse.iter().enumerate() {
            let c: Q = row.iter().zip(&alpha).map(|(x, y)| x * y).sum();
            if !c.is_zero() {
                out.insert(self.weyl.words[v].clone(), c);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Vec<Vec<i64>> {
        vec![vec![2, -1], vec![-1, 2]]
    }

    #[test]
    fn weyl_words_a2() {
        let w = WeylWords::new(&a2());
        let words: Vec<Word> = w.words.clone();
        assert_eq!(words, vec![vec![], vec![0], vec![1], vec![0, 1], vec![1, 0], vec![0, 1, 0]]);
    }

    #[test]
    fn chow_a2_products() {
        let o = ChowOracle::new(&a2());
        let p = o.product(&[0, 1], &[1, 0]);
        let expect: BTreeMap<Word, Q> = [(vec![0], Q::one()), (vec![1], Q::one())].into_iter().collect();
        assert_eq!(p, expect);
        let top = o.product(&[0, 1, 0], &[0]);
        assert_eq!(top, [(vec![0], Q::one())].into_iter().collect());
    }

    #[test]
    fn k_a2_point_is_idempotent_against_top() {
        let o = KOracle::new(&a2());
        let p = o.product(&[0, 1, 0], &[]);
        assert_eq!(p, [(vec![], Q::one())].into_iter().collect());
    }
}
