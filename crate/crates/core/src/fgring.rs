//! The formal group ring `R[[M]]_F` in fundamental-weight coordinates.
//!
//! Elements are [`TruncatedSeries`] in the variables `y_i = x_{ω_i}`.  The
//! simple reflection `s_i` moves only `y_i`, and every `s_i`-invariant factor
//! commutes with `Δ_i` and `C_i`.  Writing `u = Σ_k G_k y_i^k` with `G_k` free
//! of `y_i`, each operator is therefore determined by its values on the powers
//! `y_i^k`, which are computed once per simple root and cached.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::coeffring::{gcd_fold, CoeffPoly, CoeffRing, Poly, Q};
use crate::error::{Error, Result};
use crate::fgl::{reversion, FormalGroupLaw};
use crate::linalg;
use crate::rootdata::RootDatum;
use crate::tseries::{exp_add, exp_degree, Exp, TruncatedSeries, MAX_VARS};

/// Torsion index and the degree-`N` seed polynomial `u0`.
#[derive(Clone, Debug)]
pub struct TorsionData {
    pub t: BigInt,
    /// Integer coefficients of `u0` on degree-`N` monomials in `y`.
    pub u0_terms: Vec<(Exp, BigInt)>,
    pub u0: TruncatedSeries,
}

#[derive(Default)]
struct SimpleTables {
    x_alpha: OnceLock<TruncatedSeries>,
    x_neg_alpha: OnceLock<TruncatedSeries>,
    kappa: OnceLock<TruncatedSeries>,
    reflect: OnceLock<Vec<TruncatedSeries>>,
    delta: OnceLock<Vec<TruncatedSeries>>,
    delta_neg: OnceLock<Vec<TruncatedSeries>>,
    cc: OnceLock<Vec<TruncatedSeries>>,
}

pub struct FormalGroupRing {
    datum: Arc<RootDatum>,
    law: Arc<FormalGroupLaw>,
    trunc: u32,
    n: usize,
    exp: OnceLock<Option<TruncatedSeries>>,
    x_cache: Mutex<HashMap<Vec<i64>, Arc<TruncatedSeries>>>,
    tables: Vec<SimpleTables>,
    torsion: OnceLock<TorsionData>,
}

impl std::fmt::Debug for FormalGroupRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FormalGroupRing")
            .field("datum", &self.datum.name())
            .field("trunc", &self.trunc)
            .finish()
    }
}

/// Embed a one-variable series as a series in variable `i` of `n`.
pub fn embed_univariate(s: &TruncatedSeries, n: usize, i: usize, trunc: u32) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(s.ring(), n, trunc);
    out.lower_valid(s.valid_degree());
    for (e, c) in s.terms() {
        let mut f = [0; MAX_VARS];
        f[i] = e[0];
        out.add_term(f, c.clone());
    }
    out
}

impl FormalGroupRing {
    /// The ring for `datum` over `law`, truncated at the law's truncation.
    pub fn new(datum: Arc<RootDatum>, law: Arc<FormalGroupLaw>) -> FormalGroupRing {
        let n = datum.rank();
        FormalGroupRing {
            trunc: law.trunc(),
            tables: (0..n).map(|_| SimpleTables::default()).collect(),
            datum,
            law,
            n,
            exp: OnceLock::new(),
            x_cache: Mutex::new(HashMap::new()),
            torsion: OnceLock::new(),
        }
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn law(&self) -> &Arc<FormalGroupLaw> {
        &self.law
    }

    pub fn coeff_ring(&self) -> &Arc<CoeffRing> {
        self.law.ring()
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn n_vars(&self) -> usize {
        self.n
    }

    pub fn zero(&self) -> TruncatedSeries {
        TruncatedSeries::zero(self.coeff_ring(), self.n, self.trunc)
    }

    pub fn one(&self) -> TruncatedSeries {
        TruncatedSeries::one(self.coeff_ring(), self.n, self.trunc)
    }

    pub fn constant(&self, c: Poly) -> TruncatedSeries {
        TruncatedSeries::constant(self.coeff_ring(), self.n, self.trunc, c)
    }

    /// `y_i = x_{ω_i}`.
    pub fn y(&self, i: usize) -> TruncatedSeries {
        TruncatedSeries::var(self.coeff_ring(), self.n, self.trunc, i)
    }

    /// A polynomial in the `y` variables with scalar coefficients.
    pub fn polynomial(&self, terms: &[(Exp, Q)]) -> TruncatedSeries {
        TruncatedSeries::from_terms(
            self.coeff_ring(),
            self.n,
            self.trunc,
            terms.iter().map(|(e, q)| (*e, Poly::constant(q.clone()))),
        )
    }

    fn exp_series(&self) -> Option<&TruncatedSeries> {
        self.exp
            .get_or_init(|| self.law.log().map(|l| reversion(l).expect("logarithm is invertible")))
            .as_ref()
    }

    /// `x_λ` for `λ = Σ c_i ω_i`.
    pub fn x_lambda(&self, lambda: &[i64]) -> Arc<TruncatedSeries> {
        assert_eq!(lambda.len(), self.n);
        if let Some(s) = self.x_cache.lock().unwrap().get(lambda) {
            return s.clone();
        }
        let s = Arc::new(self.compute_x_lambda(lambda).expect("x_lambda"));
        self.x_cache.lock().unwrap().insert(lambda.to_vec(), s.clone());
        s
    }

    fn compute_x_lambda(&self, lambda: &[i64]) -> Result<TruncatedSeries> {
        if let (Some(exp), Some(log)) = (self.exp_series(), self.law.log()) {
            // x_λ = exp(Σ c_i log y_i)
            let mut s = self.zero();
            for (i, &c) in lambda.iter().enumerate() {
                if c != 0 {
                    let li = embed_univariate(log, self.n, i, self.trunc);
                    s = s.add(&li.scale_q(&Q::from_integer(c.into())))?;
                }
            }
            return exp.substitute(&[s]);
        }
        let mut acc: Option<TruncatedSeries> = None;
        for (i, &c) in lambda.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let m = self.law.multiple_series(c)?;
            let term = embed_univariate(&m, self.n, i, self.trunc);
            acc = Some(match acc {
                None => term,
                Some(a) => self.law.formal_sum(&a, &term)?,
            });
        }
        Ok(acc.unwrap_or_else(|| self.zero()))
    }

    /// `x_{α_i}`.
    pub fn x_alpha(&self, i: usize) -> &TruncatedSeries {
        self.tables[i]
            .x_alpha
            .get_or_init(|| (*self.x_lambda(self.datum.simple_root(i))).clone())
    }

    /// `x_{-α_i}`.
    pub fn x_neg_alpha(&self, i: usize) -> &TruncatedSeries {
        self.tables[i].x_neg_alpha.get_or_init(|| {
            let neg: Vec<i64> = self.datum.simple_root(i).iter().map(|c| -c).collect();
            (*self.x_lambda(&neg)).clone()
        })
    }

    /// `κ_i = g(x_{α_i}, x_{-α_i})`.
    pub fn kappa(&self, i: usize) -> &TruncatedSeries {
        self.tables[i].kappa.get_or_init(|| {
            // g(x, ι(x)) as a one-variable series, then evaluated at x_{α_i}.
            let g = self.law.kappa().expect("kappa series");
            let w = g.trunc();
            let x = TruncatedSeries::var(self.coeff_ring(), 1, w, 0);
            let ix = self.law.formal_inverse(&x).expect("inverse");
            let k1 = g.substitute(&[x, ix]).expect("kappa restriction");
            k1.substitute(std::slice::from_ref(self.x_alpha(i))).expect("kappa_alpha")
        })
    }

    fn reflect_table(&self, i: usize) -> &Vec<TruncatedSeries> {
        self.tables[i].reflect.get_or_init(|| {
            let mut lam = vec![0i64; self.n];
            lam[i] = 1;
            let img = self.datum.reflect(i, &lam);
            let z = self.x_lambda(&img);
            let mut out = vec![self.one()];
            for k in 1..=self.trunc as usize {
                let next = out[k - 1].mul(&z).expect("power");
                out.push(next);
            }
            out
        })
    }

    fn quotient_table(&self, i: usize, den: &TruncatedSeries) -> Vec<TruncatedSeries> {
        let refl = self.reflect_table(i);
        let mut out = vec![self.zero().truncated(self.trunc.saturating_sub(1))];
        let mut yk = self.one();
        for k in 1..=self.trunc as usize {
            yk = yk.mul(&self.y(i)).expect("power");
            let num = yk.sub(&refl[k]).expect("difference");
            out.push(num.exact_divide(den).expect("divisible by x_alpha"));
        }
        out
    }

    fn delta_table(&self, i: usize) -> &Vec<TruncatedSeries> {
        self.tables[i]
            .delta
            .get_or_init(|| self.quotient_table(i, self.x_alpha(i)))
    }

    fn delta_neg_table(&self, i: usize) -> &Vec<TruncatedSeries> {
        self.tables[i]
            .delta_neg
            .get_or_init(|| self.quotient_table(i, self.x_neg_alpha(i)))
    }

    fn cc_table(&self, i: usize) -> &Vec<TruncatedSeries> {
        self.tables[i].cc.get_or_init(|| {
            let kappa = self.kappa(i);
            let delta = self.delta_table(i);
            let mut yk = self.one();
            let mut out = Vec::with_capacity(delta.len());
            for (k, d) in delta.iter().enumerate() {
                if k > 0 {
                    yk = yk.mul(&self.y(i)).expect("power");
                }
                out.push(yk.mul(kappa).expect("kappa product").sub(d).expect("difference"));
            }
            out
        })
    }

    /// `Σ_k G_k table[k]` for `u = Σ_k G_k y_i^k`, certified to
    /// `u.valid - loss` (or less, when capped).
    fn apply_table(
        &self,
        i: usize,
        u: &TruncatedSeries,
        table: &[TruncatedSeries],
        loss: u32,
        cap: u32,
        what: &str,
    ) -> Result<TruncatedSeries> {
        self.check_element(u)?;
        if u.valid_degree() < loss {
            return Err(self.precision_error(what, loss - u.valid_degree()));
        }
        let valid = (u.valid_degree() - loss).min(table[0].valid_degree()).min(cap);
        let mut out = self.zero().truncated(valid);
        let mut acc: Vec<std::collections::BTreeMap<Exp, Poly>> =
            vec![Default::default(); valid as usize + 1];
        for (e, c) in u.terms() {
            let k = e[i] as usize;
            let mut rest = *e;
            rest[i] = 0;
            let base = exp_degree(&rest);
            if base > valid {
                continue;
            }
            let tk = &table[k];
            for d in 0..=(valid - base).min(tk.valid_degree()) {
                for (et, ct) in tk.component(d) {
                    acc[(base + d) as usize]
                        .entry(exp_add(&rest, et))
                        .or_default()
                        .add_product(c, ct);
                }
            }
        }
        for comp in acc {
            for (e, c) in comp {
                out.add_term(e, c);
            }
        }
        Ok(out)
    }

    fn check_element(&self, u: &TruncatedSeries) -> Result<()> {
        if u.n_vars() != self.n || u.trunc() != self.trunc {
            return Err(Error::ShapeMismatch(format!(
                "element has {} vars and D={}, ring has {} and D={}",
                u.n_vars(),
                u.trunc(),
                self.n,
                self.trunc
            )));
        }
        Ok(())
    }

    fn precision_error(&self, what: &str, short_by: u32) -> Error {
        Error::InsufficientPrecision {
            what: what.to_string(),
            needed: self.trunc + short_by,
        }
    }

    /// `s_i(u)`.
    pub fn reflect(&self, i: usize, u: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.apply_table(i, u, self.reflect_table(i), 0, u32::MAX, "reflection")
    }

    /// `w(u)` for the Weyl element with index `w`.
    pub fn weyl_act(&self, w: usize, u: &TruncatedSeries) -> Result<TruncatedSeries> {
        let word = self.datum.element(w).word.clone();
        let mut out = u.clone();
        for &i in word.iter().rev() {
            out = self.reflect(i, &out)?;
        }
        Ok(out)
    }

    /// `w(u)` computed by direct substitution `y_j ↦ x_{w(ω_j)}`.
    pub fn weyl_act_by_substitution(&self, w: usize, u: &TruncatedSeries) -> Result<TruncatedSeries> {
        let images: Vec<TruncatedSeries> = (0..self.n)
            .map(|j| {
                let mut lam = vec![0i64; self.n];
                lam[j] = 1;
                (*self.x_lambda(&self.datum.act(w, &lam))).clone()
            })
            .collect();
        u.substitute(&images)
    }

    pub fn augmentation(&self, u: &TruncatedSeries) -> CoeffPoly {
        CoeffPoly::new(self.coeff_ring(), u.constant_term())
    }

    /// `Δ_i(u) = (u - s_i u) / x_{α_i}`.
    pub fn delta(&self, i: usize, u: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.apply_table(i, u, self.delta_table(i), 1, u32::MAX, "Demazure operator")
    }

    /// `Δ_{-α_i}(u) = (u - s_i u) / x_{-α_i}`.
    pub fn delta_neg(&self, i: usize, u: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.apply_table(i, u, self.delta_neg_table(i), 1, u32::MAX, "Demazure operator")
    }

    /// `C_i(u) = u κ_i - Δ_i(u)`.
    pub fn cc(&self, i: usize, u: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.apply_table(i, u, self.cc_table(i), 1, u32::MAX, "push-pull operator")
    }

    /// `Δ_i(u)` computed only through degree `cap`.
    pub fn delta_capped(&self, i: usize, u: &TruncatedSeries, cap: u32) -> Result<TruncatedSeries> {
        self.apply_table(i, u, self.delta_table(i), 1, cap, "Demazure operator")
    }

    /// `C_i(u)` computed only through degree `cap`.
    pub fn cc_capped(&self, i: usize, u: &TruncatedSeries, cap: u32) -> Result<TruncatedSeries> {
        self.apply_table(i, u, self.cc_table(i), 1, cap, "push-pull operator")
    }

    /// Fill every operator table (useful before sharing across threads or
    /// before moving to an extended coefficient ring).
    pub fn prepare(&self) {
        for i in 0..self.n {
            self.cc_table(i);
            self.delta_neg_table(i);
            self.x_neg_alpha(i);
        }
    }

    /// The same ring over an extension of the coefficient ring whose leading
    /// generators coincide with the current ones.  Cached tables carry over.
    pub fn extended(&self, ring: &Arc<CoeffRing>) -> Result<FormalGroupRing> {
        let law = Arc::new(self.law.map_coefficients(ring, Poly::clone)?);
        let out = FormalGroupRing::new(self.datum.clone(), law);
        let lift = |s: &TruncatedSeries| s.change_ring(ring, Poly::clone);
        let lift_all = |v: &Vec<TruncatedSeries>| v.iter().map(lift).collect::<Vec<_>>();
        for (src, dst) in self.tables.iter().zip(&out.tables) {
            if let Some(s) = src.x_alpha.get() {
                let _ = dst.x_alpha.set(lift(s));
            }
            if let Some(s) = src.x_neg_alpha.get() {
                let _ = dst.x_neg_alpha.set(lift(s));
            }
            if let Some(s) = src.kappa.get() {
                let _ = dst.kappa.set(lift(s));
            }
            if let Some(v) = src.reflect.get() {
                let _ = dst.reflect.set(lift_all(v));
            }
            if let Some(v) = src.delta.get() {
                let _ = dst.delta.set(lift_all(v));
            }
            if let Some(v) = src.delta_neg.get() {
                let _ = dst.delta_neg.set(lift_all(v));
            }
            if let Some(v) = src.cc.get() {
                let _ = dst.cc.set(lift_all(v));
            }
        }
        if let Some(td) = self.torsion.get() {
            let _ = out.torsion.set(TorsionData {
                t: td.t.clone(),
                u0_terms: td.u0_terms.clone(),
                u0: lift(&td.u0),
            });
        }
        for (k, v) in self.x_cache.lock().unwrap().iter() {
            out.x_cache.lock().unwrap().insert(k.clone(), Arc::new(lift(v)));
        }
        Ok(out)
    }

    /// `Δ_i` straight from the definition (subtraction and division).
    pub fn delta_direct(&self, i: usize, u: &TruncatedSeries) -> Result<TruncatedSeries> {
        let s = self.reflect(i, u)?;
        u.sub(&s)?.exact_divide(self.x_alpha(i))
    }

    /// `Δ_β(u) = (u - s_β u) / x_β` for a root `β` in weight coordinates.
    pub fn delta_root(&self, beta: &[i64], u: &TruncatedSeries) -> Result<TruncatedSeries> {
        let (w, i) = self.root_conjugator(beta)?;
        let winv = self.datum.inverse(w);
        let s = self.weyl_act(w, &self.reflect(i, &self.weyl_act(winv, u)?)?)?;
        u.sub(&s)?.exact_divide(&self.x_lambda(beta))
    }

    fn root_conjugator(&self, beta: &[i64]) -> Result<(usize, usize)> {
        for w in 0..self.datum.order() {
            for i in 0..self.n {
                if self.datum.act(w, self.datum.simple_root(i)) == beta {
                    return Ok((w, i));
                }
            }
        }
        Err(Error::Invalid(format!("{beta:?} is not a root")))
    }

    fn check_word_precision(&self, word: &[usize], u: &TruncatedSeries, what: &str) -> Result<()> {
        let l = word.len() as u32;
        if u.valid_degree() < l {
            return Err(self.precision_error(what, l - u.valid_degree()));
        }
        Ok(())
    }

    /// `Δ_{i1} ∘ ⋯ ∘ Δ_{il}(u)`.
    pub fn delta_word(&self, word: &[usize], u: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_word_precision(word, u, "Demazure word")?;
        let mut out = u.clone();
        for &i in word.iter().rev() {
            out = self.delta(i, &out)?;
        }
        Ok(out)
    }

    /// `C_{i1} ∘ ⋯ ∘ C_{il}(u)`.
    pub fn c_word(&self, word: &[usize], u: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_word_precision(word, u, "push-pull word")?;
        let mut out = u.clone();
        for &i in word.iter().rev() {
            out = self.cc(i, &out)?;
        }
        Ok(out)
    }

    /// `Θ_1 ∘ ⋯ ∘ Θ_l (u)` with `Θ_j = Δ_{-α_{i_j}}` when `in_k[j]`, else `s_{α_{i_j}}`.
    pub fn theta(&self, word: &[usize], in_k: &[bool], u: &TruncatedSeries) -> Result<TruncatedSeries> {
        assert_eq!(word.len(), in_k.len());
        let need = in_k.iter().filter(|&&b| b).count() as u32;
        if u.valid_degree() < need {
            return Err(self.precision_error("Bott-Samelson operator", need - u.valid_degree()));
        }
        let mut out = u.clone();
        for (&i, &k) in word.iter().zip(in_k).rev() {
            out = if k { self.delta_neg(i, &out)? } else { self.reflect(i, &out)? };
        }
        Ok(out)
    }

    /// Torsion index and `u0`, lifted into this ring.
    pub fn torsion(&self) -> &TorsionData {
        self.torsion.get_or_init(|| {
            let (t, terms) = torsion_and_u0(&self.datum);
            let u0 = self.polynomial(
                &terms
                    .iter()
                    .map(|(e, c)| (*e, Q::from_integer(c.clone())))
                    .collect::<Vec<_>>(),
            );
            TorsionData { t, u0_terms: terms, u0 }
        })
    }

    /// Coefficients `r_w` with `Δ_{I_v}(x) = Σ_w r_w Δ_{I_v} Δ_{I_w}(u0)` for all `v`.
    pub fn decompose_over_invariants(&self, x: &TruncatedSeries) -> Result<Vec<TruncatedSeries>> {
        let u0 = self.torsion().u0.clone();
        let words: Vec<Vec<usize>> = self.datum.weyl_elements().iter().map(|e| e.word.clone()).collect();
        let n = words.len();
        let basis: Vec<TruncatedSeries> = words
            .iter()
            .map(|w| self.delta_word(w, &u0))
            .collect::<Result<_>>()?;
        let mut m: Vec<Vec<TruncatedSeries>> = Vec::with_capacity(n);
        let mut b = Vec::with_capacity(n);
        for v in &words {
            m.push(basis.iter().map(|z| self.delta_word(v, z)).collect::<Result<Vec<_>>>()?);
            b.push(self.delta_word(v, x)?);
        }
        let valid = m
            .iter()
            .flatten()
            .chain(b.iter())
            .map(|s| s.valid_degree())
            .min()
            .unwrap_or(0);
        let m0: Vec<Vec<Q>> = m
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| s.constant_term().as_constant().unwrap_or_else(Q::zero))
                    .collect()
            })
            .collect();
        if m.iter().flatten().any(|s| !s.constant_term().is_constant()) {
            return Err(Error::Singular("constant part of the system is not scalar".into()));
        }
        let m0_inv = linalg::invert(&m0).ok_or_else(|| Error::Singular("decomposition system".into()))?;
        let mplus: Vec<Vec<TruncatedSeries>> = m
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| {
                        let mut t = s.truncated(valid);
                        t.add_term([0; MAX_VARS], s.constant_term().neg());
                        t
                    })
                    .collect()
            })
            .collect();
        let b: Vec<TruncatedSeries> = b.iter().map(|s| s.truncated(valid)).collect();
        let apply_inv = |v: &[TruncatedSeries]| -> Result<Vec<TruncatedSeries>> {
            (0..n)
                .map(|r| {
                    let mut acc = self.zero().truncated(valid);
                    for (c, s) in m0_inv[r].iter().zip(v) {
                        if !c.is_zero() {
                            acc = acc.add(&s.scale_q(c))?;
                        }
                    }
                    Ok(acc)
                })
                .collect()
        };
        let mut r = apply_inv(&b)?;
        for _ in 0..=valid {
            let mut rhs = b.clone();
            for (row, target) in mplus.iter().zip(rhs.iter_mut()) {
                for (mv, rw) in row.iter().zip(&r) {
                    if !mv.is_zero() && !rw.is_zero() {
                        *target = target.sub(&mv.mul(rw)?)?;
                    }
                }
            }
            r = apply_inv(&rhs)?;
        }
        Ok(r)
    }
}

/// Torsion index and a Bézout seed polynomial, computed in the additive
/// graded model: `t` is the gcd of `ε Δ_{I_0}` over degree-`N` monomials.
pub fn torsion_and_u0(datum: &Arc<RootDatum>) -> (BigInt, Vec<(Exp, BigInt)>) {
    let n_pos = datum.n_positive() as u32;
    let law = Arc::new(FormalGroupLaw::additive(n_pos));
    let ring = FormalGroupRing::new(datum.clone(), law);
    let word = datum.longest_element().word.clone();
    let monos = monomials_desc(datum.rank(), n_pos);
    let values: Vec<BigInt> = monos
        .iter()
        .map(|e| {
            let m = ring.polynomial(&[(*e, Q::one())]);
            let v = ring.delta_word(&word, &m).expect("degree-N polynomial");
            let c = v.constant_term().as_constant().unwrap_or_else(Q::zero);
            assert!(c.is_integer(), "additive Demazure operators are integral");
            c.to_integer()
        })
        .collect();
    let lambdas = gcd_fold(&values);
    let t: BigInt = lambdas.iter().zip(&values).map(|(l, v)| l * v).sum();
    let (t, lambdas) = if t.is_negative() {
        (-t, lambdas.into_iter().map(|l| -l).collect())
    } else {
        (t, lambdas)
    };
    assert!(!t.is_zero(), "torsion index vanished");
    let terms = monos
        .into_iter()
        .zip(lambdas)
        .filter(|(_, l)| !l.is_zero())
        .collect();
    (t, terms)
}

/// Degree-`d` monomials in `n` variables, lexicographically descending.
pub fn monomials_desc(n: usize, d: u32) -> Vec<Exp> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut Exp, out: &mut Vec<Exp>) {
        if i == n - 1 {
            cur[i] = left as u8;
            out.push(*cur);
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u8;
            rec(n, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(n, 0, d, &mut [0; MAX_VARS], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::q_int;

    fn ring(name: &str, law: FormalGroupLaw) -> FormalGroupRing {
        FormalGroupRing::new(Arc::new(RootDatum::named(name).unwrap()), Arc::new(law))
    }

    #[test]
    fn x_lambda_basics() {
        let r = ring("A2", FormalGroupLaw::universal(5).unwrap());
        assert_eq!(*r.x_lambda(&[1, 0]), r.y(0));
        let add = ring("A2", FormalGroupLaw::additive(5));
        let x = add.x_lambda(&[2, -3]);
        let expect = add.y(0).scale_q(&q_int(2)).sub(&add.y(1).scale_q(&q_int(3))).unwrap();
        assert_eq!(*x, expect);
    }

    #[test]
    fn log_route_matches_fold_route() {
        // The universal law has a logarithm; a copy without one uses the fold route.
        let u = FormalGroupLaw::universal(5).unwrap();
        let plain = u.map_coefficients(u.ring(), Poly::clone).unwrap();
        let a = ring("A2", u);
        let b = ring("A2", plain);
        for lam in [[1, 1], [2, -1], [-1, 2], [0, -1]] {
            assert_eq!(*a.x_lambda(&lam), *b.x_lambda(&lam));
        }
    }

    #[test]
    fn additive_delta_oracle() {
        let add = ring("A2", FormalGroupLaw::additive(4));
        let d = add.delta(0, &add.y(0)).unwrap();
        assert_eq!(d, add.one().truncated(3));
        assert!(add.delta(0, &add.one()).unwrap().is_zero());
    }

    #[test]
    fn cc_of_neg_alpha_is_two() {
        let r = ring("B2", FormalGroupLaw::universal(6).unwrap());
        for i in 0..2 {
            let c = r.cc(i, r.x_neg_alpha(i)).unwrap();
            assert_eq!(c, r.constant(Poly::int(2)).truncated(5));
            let c1 = r.cc(i, &r.one()).unwrap();
            assert_eq!(c1, r.kappa(i).truncated(5));
        }
    }

    #[test]
    fn table_delta_matches_direct() {
        let r = ring("G2", FormalGroupLaw::universal(7).unwrap());
        let u = r.x_lambda(&[1, 1]).mul(&r.y(0)).unwrap();
        for i in 0..2 {
            assert_eq!(r.delta(i, &u).unwrap(), r.delta_direct(i, &u).unwrap());
        }
    }

    #[test]
    fn torsion_rank_two() {
        for (name, t) in [("A2", 1), ("B2", 1), ("G2", 2)] {
            let rd = Arc::new(RootDatum::named(name).unwrap());
            assert_eq!(torsion_and_u0(&rd).0, BigInt::from(t), "{name}");
        }
    }

    #[test]
    fn monomial_order() {
        let m = monomials_desc(2, 2);
        assert_eq!(m.iter().map(|e| (e[0], e[1])).collect::<Vec<_>>(), vec![(2, 0), (1, 1), (0, 2)]);
    }
}
