//! Truncated multivariate power series over a [`CoeffRing`].
//!
//! Terms are bucketed by total degree.  A series is certified modulo terms of
//! total degree above its valid degree; nothing beyond that degree is stored,
//! and reading such a coefficient is a bug that panics.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::coeffring::{CoeffPoly, CoeffRing, Poly, Q};
use crate::error::{Error, Result};

/// Maximum number of series variables.
pub const MAX_VARS: usize = 8;

/// Exponent vector of a series monomial.
pub type Exp = [u8; MAX_VARS];

pub fn exp_degree(e: &Exp) -> u32 {
    e.iter().map(|&x| x as u32).sum()
}

pub fn exp_add(a: &Exp, b: &Exp) -> Exp {
    let mut out = *a;
    for (x, y) in out.iter_mut().zip(b) {
        *x += *y;
    }
    out
}

pub fn exp_var(i: usize) -> Exp {
    let mut e = [0; MAX_VARS];
    e[i] = 1;
    e
}

type Component = BTreeMap<Exp, Poly>;

#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    ring: Arc<CoeffRing>,
    n_vars: usize,
    trunc: u32,
    valid: u32,
    comps: Vec<Component>,
}

impl PartialEq for TruncatedSeries {
    /// Equality of the certified parts, compared up to the smaller valid degree.
    fn eq(&self, other: &Self) -> bool {
        if self.n_vars != other.n_vars || *self.ring != *other.ring {
            return false;
        }
        let v = self.valid.min(other.valid) as usize;
        (0..=v).all(|d| self.comps[d] == other.comps[d])
    }
}

impl TruncatedSeries {
    pub fn zero(ring: &Arc<CoeffRing>, n_vars: usize, trunc: u32) -> TruncatedSeries {
        assert!(n_vars <= MAX_VARS, "at most {MAX_VARS} series variables");
        TruncatedSeries {
            ring: ring.clone(),
            n_vars,
            trunc,
            valid: trunc,
            comps: vec![Component::new(); trunc as usize + 1],
        }
    }

    pub fn constant(ring: &Arc<CoeffRing>, n_vars: usize, trunc: u32, c: Poly) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(ring, n_vars, trunc);
        s.add_term([0; MAX_VARS], c);
        s
    }

    pub fn one(ring: &Arc<CoeffRing>, n_vars: usize, trunc: u32) -> TruncatedSeries {
        TruncatedSeries::constant(ring, n_vars, trunc, Poly::one())
    }

    pub fn var(ring: &Arc<CoeffRing>, n_vars: usize, trunc: u32, i: usize) -> TruncatedSeries {
        assert!(i < n_vars);
        let mut s = TruncatedSeries::zero(ring, n_vars, trunc);
        s.add_term(exp_var(i), Poly::one());
        s
    }

    /// Build from explicit terms; terms beyond the truncation are dropped.
    pub fn from_terms(
        ring: &Arc<CoeffRing>,
        n_vars: usize,
        trunc: u32,
        terms: impl IntoIterator<Item = (Exp, Poly)>,
    ) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(ring, n_vars, trunc);
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    pub fn ring(&self) -> &Arc<CoeffRing> {
        &self.ring
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn valid_degree(&self) -> u32 {
        self.valid
    }

    /// Add `c x^e` in place; ignored beyond the valid degree.
    pub fn add_term(&mut self, e: Exp, c: Poly) {
        debug_assert!(e[self.n_vars..].iter().all(|&x| x == 0));
        let d = exp_degree(&e);
        if d > self.valid || c.is_zero() {
            return;
        }
        let comp = &mut self.comps[d as usize];
        match comp.get_mut(&e) {
            Some(p) => {
                p.add_assign(&c);
                if p.is_zero() {
                    comp.remove(&e);
                }
            }
            None => {
                comp.insert(e, c);
            }
        }
    }

    /// Coefficient of `x^e`.  Panics if `e` lies beyond the valid degree.
    pub fn coeff(&self, e: &Exp) -> Poly {
        let d = exp_degree(e);
        assert!(
            d <= self.valid,
            "read of degree-{d} coefficient beyond valid degree {}",
            self.valid
        );
        self.comps[d as usize].get(e).cloned().unwrap_or_default()
    }

    pub fn coeff_poly(&self, e: &Exp) -> CoeffPoly {
        CoeffPoly::new(&self.ring, self.coeff(e))
    }

    pub fn constant_term(&self) -> Poly {
        self.comps[0].get(&[0; MAX_VARS]).cloned().unwrap_or_default()
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: u32) -> &BTreeMap<Exp, Poly> {
        assert!(d <= self.valid, "read of degree {d} beyond valid degree {}", self.valid);
        &self.comps[d as usize]
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Poly)> {
        self.comps.iter().flat_map(|c| c.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_empty())
    }

    /// Lowest degree with a nonzero term, or `None` when zero to the valid degree.
    pub fn order(&self) -> Option<u32> {
        self.comps.iter().position(|c| !c.is_empty()).map(|d| d as u32)
    }

    /// Degree of the highest stored term.
    pub fn max_degree(&self) -> Option<u32> {
        self.comps.iter().rposition(|c| !c.is_empty()).map(|d| d as u32)
    }

    /// Forget everything above degree `d` (no-op if already coarser).
    pub fn truncated(&self, d: u32) -> TruncatedSeries {
        let mut s = self.clone();
        s.lower_valid(d);
        s
    }

    pub fn lower_valid(&mut self, d: u32) {
        if d < self.valid {
            self.valid = d;
            self.comps.truncate(d as usize + 1);
        }
    }

    fn check_shape(&self, other: &TruncatedSeries) -> Result<()> {
        if self.n_vars != other.n_vars || self.trunc != other.trunc {
            return Err(Error::ShapeMismatch(format!(
                "({} vars, D={}) vs ({} vars, D={})",
                self.n_vars, self.trunc, other.n_vars, other.trunc
            )));
        }
        if !Arc::ptr_eq(&self.ring, &other.ring) && *self.ring != *other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    fn empty_like(&self, valid: u32) -> TruncatedSeries {
        TruncatedSeries {
            ring: self.ring.clone(),
            n_vars: self.n_vars,
            trunc: self.trunc,
            valid,
            comps: vec![Component::new(); valid as usize + 1],
        }
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_shape(other)?;
        let mut out = self.truncated(other.valid);
        for (e, c) in other.terms() {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_shape(other)?;
        let mut out = self.truncated(other.valid);
        for (e, c) in other.terms() {
            out.add_term(*e, c.neg());
        }
        Ok(out)
    }

    pub fn neg(&self) -> TruncatedSeries {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, s: &Poly) -> TruncatedSeries {
        if s.is_zero() {
            return self.empty_like(self.valid);
        }
        self.map_coeffs(|c| c.mul(s))
    }

    pub fn scale_q(&self, s: &Q) -> TruncatedSeries {
        self.map_coeffs(|c| c.scale(s))
    }

    /// Apply `f` to every coefficient, dropping zeros.
    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> TruncatedSeries {
        let mut out = self.empty_like(self.valid);
        for (d, comp) in self.comps.iter().enumerate() {
            for (e, c) in comp {
                let v = f(c);
                if !v.is_zero() {
                    out.comps[d].insert(*e, v);
                }
            }
        }
        out
    }

    /// Move to another coefficient ring, mapping coefficients with `f`.
    pub fn change_ring(&self, ring: &Arc<CoeffRing>, f: impl Fn(&Poly) -> Poly) -> TruncatedSeries {
        let mut out = self.map_coeffs(f);
        out.ring = ring.clone();
        out
    }

    /// Change the nominal truncation, lowering the valid degree if needed.
    pub fn with_trunc(&self, trunc: u32) -> TruncatedSeries {
        let mut out = self.truncated(trunc);
        out.trunc = trunc;
        out
    }

    /// Embed into a series ring with more variables (new variables unused).
    pub fn with_n_vars(&self, n_vars: usize) -> TruncatedSeries {
        assert!(n_vars >= self.n_vars && n_vars <= MAX_VARS);
        let mut out = self.clone();
        out.n_vars = n_vars;
        out
    }

    /// Product; the valid degree is the minimum of the operands'.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_shape(other)?;
        Ok(self.mul_unchecked(other, self.valid.min(other.valid)))
    }

    /// Product computed only up to degree `valid`.
    pub fn mul_to(&self, other: &TruncatedSeries, valid: u32) -> Result<TruncatedSeries> {
        self.check_shape(other)?;
        Ok(self.mul_unchecked(other, valid.min(self.valid).min(other.valid)))
    }

    fn mul_unchecked(&self, other: &TruncatedSeries, valid: u32) -> TruncatedSeries {
        let mut out = self.empty_like(valid);
        let v = valid as usize;
        for da in 0..=v.min(self.comps.len() - 1) {
            if self.comps[da].is_empty() {
                continue;
            }
            for db in 0..=(v - da).min(other.comps.len() - 1) {
                if other.comps[db].is_empty() {
                    continue;
                }
                let target = &mut out.comps[da + db];
                for (ea, ca) in &self.comps[da] {
                    for (eb, cb) in &other.comps[db] {
                        target.entry(exp_add(ea, eb)).or_default().add_product(ca, cb);
                    }
                }
            }
        }
        out.prune();
        out
    }

    fn prune(&mut self) {
        for comp in self.comps.iter_mut() {
            comp.retain(|_, c| !c.is_zero());
        }
    }

    pub fn pow(&self, k: u32) -> TruncatedSeries {
        let mut out = TruncatedSeries::one(&self.ring, self.n_vars, self.trunc);
        out.lower_valid(self.valid);
        for _ in 0..k {
            out = out.mul_unchecked(self, out.valid.min(self.valid));
        }
        out
    }

    /// Compose with `images[i]` in place of variable `i`.  All images must
    /// have zero constant term and share one shape (possibly different from
    /// `self`'s variable count).
    pub fn substitute(&self, images: &[TruncatedSeries]) -> Result<TruncatedSeries> {
        if images.len() != self.n_vars {
            return Err(Error::ShapeMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.n_vars
            )));
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        for img in images {
            first.check_shape(img)?;
            if !img.constant_term().is_zero() {
                return Err(Error::NonZeroConstantTerm);
            }
        }
        if !Arc::ptr_eq(&self.ring, &first.ring) && *self.ring != *first.ring {
            return Err(Error::RingMismatch);
        }
        let identity: Vec<bool> = images
            .iter()
            .enumerate()
            .map(|(i, img)| img.n_vars == self.n_vars && img.is_variable(i))
            .collect();
        let valid = images
            .iter()
            .zip(&identity)
            .filter(|(_, id)| !**id)
            .map(|(img, _)| img.valid)
            .fold(self.valid.min(first.trunc), u32::min);
        let moved: Vec<usize> = (0..self.n_vars).filter(|&i| !identity[i]).collect();
        if moved.is_empty() && first.n_vars == self.n_vars {
            let mut out = self.truncated(valid);
            out.trunc = first.trunc;
            return Ok(out);
        }
        // Group terms by the exponents of substituted variables.
        let mut groups: BTreeMap<Vec<u8>, TruncatedSeries> = BTreeMap::new();
        let template = {
            let mut t = first.empty_like(valid);
            t.trunc = first.trunc;
            t
        };
        for (e, c) in self.terms() {
            if exp_degree(e) > valid {
                continue;
            }
            let key: Vec<u8> = moved.iter().map(|&i| e[i]).collect();
            let mut rest = [0u8; MAX_VARS];
            for i in 0..self.n_vars {
                if identity[i] {
                    rest[i] = e[i];
                }
            }
            groups
                .entry(key)
                .or_insert_with(|| template.clone())
                .add_term(rest, c.clone());
        }
        let mut powers: Vec<Vec<TruncatedSeries>> = moved
            .iter()
            .map(|&i| vec![TruncatedSeries::one(&first.ring, first.n_vars, first.trunc).truncated(valid), images[i].truncated(valid)])
            .collect();
        let mut out = template.clone();
        for (key, g) in groups {
            let mut factor: Option<TruncatedSeries> = None;
            for (slot, &k) in key.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[slot].len() <= k as usize {
                    let last = powers[slot].last().unwrap();
                    let next = last.mul_unchecked(&powers[slot][1], valid);
                    powers[slot].push(next);
                }
                let p = &powers[slot][k as usize];
                factor = Some(match factor {
                    None => p.clone(),
                    Some(f) => f.mul_unchecked(p, valid),
                });
            }
            let term = match factor {
                None => g,
                Some(f) => g.mul_unchecked(&f, valid),
            };
            for (e, c) in term.terms() {
                out.add_term(*e, c.clone());
            }
        }
        Ok(out)
    }

    /// Whether this series is exactly the variable `x_i`.
    pub fn is_variable(&self, i: usize) -> bool {
        self.valid == self.trunc
            && self.comps.iter().map(|c| c.len()).sum::<usize>() == 1
            && self.comps.get(1).and_then(|c| c.get(&exp_var(i))).is_some_and(|p| p.is_one())
    }

    /// The unique `q` with `q * den = num`, computed degree by degree by
    /// dividing by the linear part of `den`.  The valid degree drops by one.
    pub fn exact_divide(&self, den: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_shape(den)?;
        if !den.constant_term().is_zero() {
            return Err(Error::Invalid("divisor has a nonzero constant term".into()));
        }
        let linear = den.comps.get(1).filter(|_| den.valid >= 1);
        let Some(linear) = linear.filter(|l| !l.is_empty()) else {
            return Err(Error::Invalid("divisor has no linear part".into()));
        };
        let lin: Vec<(usize, Poly)> = linear
            .iter()
            .map(|(e, c)| (e.iter().position(|&x| x == 1).unwrap(), c.clone()))
            .collect();
        let Some((pivot, pivot_c)) = lin
            .iter()
            .find_map(|(i, c)| c.as_constant().filter(|q| !q.is_zero()).map(|q| (*i, q)))
        else {
            return Err(Error::Invalid("divisor has no scalar linear coefficient".into()));
        };
        let in_valid = self.valid.min(den.valid);
        if in_valid == 0 {
            return Err(Error::InsufficientPrecision {
                what: "division by a series of order one".into(),
                needed: self.trunc + 1,
            });
        }
        let valid = in_valid - 1;
        let inv_pivot = pivot_c.recip();
        let mut q = self.empty_like(valid);
        for k in 0..=valid as usize {
            // rest = num_{k+1} - Σ_{d ≥ 2} den_d q_{k+1-d}
            let mut rest = self.comps[k + 1].clone();
            for d in 2..=(k + 1).min(den.comps.len() - 1) {
                for (ed, cd) in &den.comps[d] {
                    for (eq, cq) in &q.comps[k + 1 - d] {
                        let e = exp_add(ed, eq);
                        let entry = rest.entry(e).or_default();
                        entry.sub_assign(&cd.mul(cq));
                    }
                }
            }
            rest.retain(|_, c| !c.is_zero());
            q.comps[k] = divide_by_linear(rest, &lin, pivot, &inv_pivot, k as u32 + 1)?;
        }
        Ok(q)
    }

    /// Multiplicative inverse of a series with scalar invertible constant term.
    pub fn invert_unit(&self) -> Result<TruncatedSeries> {
        let c0 = self.constant_term();
        let unit = c0.as_constant().filter(|q| !q.is_zero());
        let Some(c0) = unit else {
            return Err(Error::NotInvertible(self.ring.render(&c0)));
        };
        if !self.ring.rational_mode() && !(c0.is_one() || (-c0.clone()).is_one()) {
            return Err(Error::NotInvertible(crate::coeffring::fmt_q(&c0)));
        }
        let inv0 = c0.recip();
        let mut r = self.empty_like(self.valid);
        r.comps[0].insert([0; MAX_VARS], Poly::constant(inv0.clone()));
        for k in 1..=self.valid as usize {
            let mut acc: Component = Component::new();
            for d in 1..=k {
                for (es, cs) in &self.comps[d] {
                    for (er, cr) in &r.comps[k - d] {
                        acc.entry(exp_add(es, er)).or_default().add_product(cs, cr);
                    }
                }
            }
            let neg_inv = -inv0.clone();
            r.comps[k] = acc
                .into_iter()
                .map(|(e, c)| (e, c.scale(&neg_inv)))
                .filter(|(_, c)| !c.is_zero())
                .collect();
        }
        Ok(r)
    }

    /// Human-readable rendering with variable names, lowest degree first.
    pub fn render(&self, vars: &[&str]) -> String {
        let mut parts = Vec::new();
        for (e, c) in self.terms() {
            let mono: Vec<String> = (0..self.n_vars)
                .filter(|&i| e[i] > 0)
                .map(|i| if e[i] == 1 { vars[i].to_string() } else { format!("{}^{}", vars[i], e[i]) })
                .collect();
            let coeff = self.ring.render(c);
            parts.push(match (mono.is_empty(), c.is_one()) {
                (true, _) => coeff,
                (false, true) => mono.join("*"),
                (false, false) if c.len() == 1 => format!("{coeff}*{}", mono.join("*")),
                _ => format!("({coeff})*{}", mono.join("*")),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Divide a homogeneous component of degree `deg` by the linear form
/// `Σ c_i x_i`, eliminating the pivot variable from the top exponent down.
fn divide_by_linear(
    mut rest: Component,
    lin: &[(usize, Poly)],
    pivot: usize,
    inv_pivot: &Q,
    deg: u32,
) -> Result<Component> {
    let mut quotient = Component::new();
    // Buckets keyed by the pivot exponent, processed from the top.
    let mut buckets: BTreeMap<u8, Component> = BTreeMap::new();
    for (e, c) in std::mem::take(&mut rest) {
        buckets.entry(e[pivot]).or_default().insert(e, c);
    }
    while let Some((&top, _)) = buckets.iter().next_back() {
        let bucket = buckets.remove(&top).unwrap();
        if top == 0 {
            if bucket.values().any(|c| !c.is_zero()) {
                return Err(Error::Division { degree: deg });
            }
            break;
        }
        for (e, c) in bucket {
            if c.is_zero() {
                continue;
            }
            let mut qe = e;
            qe[pivot] -= 1;
            let qc = c.scale(inv_pivot);
            for (i, li) in lin {
                if *i == pivot {
                    continue;
                }
                let mut te = qe;
                te[*i] += 1;
                let target = buckets.entry(te[pivot]).or_default().entry(te).or_default();
                target.sub_assign(&qc.mul(li));
            }
            quotient.insert(qe, qc);
        }
    }
    Ok(quotient)
}

/// Convenience for tests and examples: a one-variable series from its
/// coefficient list `c_0, c_1, …` (scalars).
pub fn univariate(ring: &Arc<CoeffRing>, trunc: u32, coeffs: &[Q]) -> TruncatedSeries {
    TruncatedSeries::from_terms(
        ring,
        1,
        trunc,
        coeffs.iter().enumerate().map(|(k, c)| {
            let mut e = [0; MAX_VARS];
            e[0] = k as u8;
            (e, Poly::constant(c.clone()))
        }),
    )
}

/// The scalar `q` as a polynomial, for building series in tests.
pub fn scalar(q: i64) -> Poly {
    if q == 0 {
        Poly::zero()
    } else {
        Poly::constant(Q::from_integer(q.into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::q_int;

    fn e2(a: u8, b: u8) -> Exp {
        let mut e = [0; MAX_VARS];
        e[0] = a;
        e[1] = b;
        e
    }

    fn ring() -> Arc<CoeffRing> {
        CoeffRing::new([("b", 1)], true).unwrap()
    }

    fn two_var(terms: &[((u8, u8), i64)], trunc: u32) -> TruncatedSeries {
        TruncatedSeries::from_terms(
            &ring(),
            2,
            trunc,
            terms.iter().map(|&((a, b), c)| (e2(a, b), scalar(c))),
        )
    }

    #[test]
    fn product_and_min_rule() {
        let r = ring();
        let x = TruncatedSeries::var(&r, 2, 6, 0).truncated(3);
        let y = TruncatedSeries::var(&r, 2, 6, 1).truncated(5);
        let p = x.mul(&y).unwrap();
        assert_eq!(p.valid_degree(), 3);
        assert_eq!(p.coeff(&e2(1, 1)), Poly::one());
    }

    #[test]
    fn geometric_inverse() {
        let r = ring();
        let one_plus_x = univariate(&r, 8, &[q_int(1), q_int(1)]);
        let inv = one_plus_x.invert_unit().unwrap();
        let prod = one_plus_x.mul(&inv).unwrap();
        assert_eq!(prod, TruncatedSeries::one(&r, 1, 8));
        let two = univariate(&r, 4, &[q_int(2)]);
        assert_eq!(two.invert_unit().unwrap().constant_term(), Poly::constant(crate::coeffring::q_frac(1, 2)));
        let integral = CoeffRing::scalars(false);
        assert!(univariate(&integral, 4, &[q_int(2)]).invert_unit().is_err());
    }

    #[test]
    fn substitute_examples() {
        let s = two_var(&[((1, 0), 1), ((0, 1), 1)], 5);
        let swapped = s
            .substitute(&[two_var(&[((0, 1), 1)], 5), two_var(&[((1, 0), 1)], 5)])
            .unwrap();
        assert_eq!(swapped, s);
        let r = ring();
        let mut sq = TruncatedSeries::zero(&r, 1, 5);
        sq.add_term([2, 0, 0, 0, 0, 0, 0, 0], Poly::one());
        let xy = two_var(&[((1, 0), 1), ((0, 1), 1)], 5);
        let out = sq.substitute(&[xy]).unwrap();
        assert_eq!(out, two_var(&[((2, 0), 1), ((1, 1), 2), ((0, 2), 1)], 5));
        let id = s
            .substitute(&[TruncatedSeries::var(&r, 2, 5, 0), TruncatedSeries::var(&r, 2, 5, 1)])
            .unwrap();
        assert_eq!(id, s);
        assert!(s.substitute(&[TruncatedSeries::one(&r, 2, 5), TruncatedSeries::var(&r, 2, 5, 1)]).is_err());
    }

    #[test]
    fn divide_examples() {
        let num = two_var(&[((2, 0), 1), ((0, 2), -1)], 6);
        let den = two_var(&[((1, 0), 1), ((0, 1), -1)], 6);
        let q = num.exact_divide(&den).unwrap();
        assert_eq!(q, two_var(&[((1, 0), 1), ((0, 1), 1)], 6));
        assert_eq!(q.valid_degree(), 5);
        let a = two_var(&[((1, 0), 2), ((2, 0), 1)], 6);
        assert_eq!(a.exact_divide(&a).unwrap(), TruncatedSeries::one(&ring(), 2, 6));
        // β x y / x = β y
        let r = ring();
        let b = Poly::var(0);
        let bxy = TruncatedSeries::from_terms(&r, 2, 6, [(e2(1, 1), b.clone())]);
        let x = TruncatedSeries::var(&r, 2, 6, 0);
        let q = bxy.exact_divide(&x).unwrap();
        assert_eq!(q, TruncatedSeries::from_terms(&r, 2, 6, [(e2(0, 1), b)]));
        // x^2 + y^2 is not divisible by x - y
        let bad = two_var(&[((2, 0), 1), ((0, 2), 1)], 6);
        assert!(matches!(bad.exact_divide(&den), Err(Error::Division { .. })));
    }

    #[test]
    fn divide_by_non_unit_linear_part() {
        // (2x - y)(x + 3y + x^2) / (2x - y)
        let den = two_var(&[((1, 0), 2), ((0, 1), -1)], 6);
        let q = two_var(&[((1, 0), 1), ((0, 1), 3), ((2, 0), 1)], 6);
        let num = den.mul(&q).unwrap();
        assert_eq!(num.exact_divide(&den).unwrap(), q);
    }

    #[test]
    #[should_panic(expected = "beyond valid degree")]
    fn reads_beyond_valid_trap() {
        let s = two_var(&[((1, 0), 1)], 6).truncated(2);
        let _ = s.coeff(&e2(3, 0));
    }

    #[test]
    fn shape_mismatch() {
        let a = two_var(&[((1, 0), 1)], 6);
        let b = two_var(&[((1, 0), 1)], 5);
        assert!(matches!(a.add(&b), Err(Error::ShapeMismatch(_))));
    }
}
