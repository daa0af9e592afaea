//! Landweber–Novikov operations on ℍ(G/B) for the universal law.
//!
//! The total operation `S_T` is semilinear over `φ_T: 𝕃 → 𝕃[t]`, the map
//! classifying the twisted law `λ_T U(λ_T^{-1} x, λ_T^{-1} y)` with
//! `λ_T(x) = x + Σ t_i x^{i+1}`, and sends `y_i` to `λ_T(y_i)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{FlagBasis, FlagClass};
use crate::coeffring::{CoeffRing, Mono, Poly, Q};
use crate::error::{Error, Result};
use crate::fgl::reversion;
use crate::fgring::{embed_univariate, FormalGroupRing};
use crate::tseries::{TruncatedSeries, MAX_VARS};

pub struct LnOperation {
    bound: u32,
    n_m: usize,
    ext: Arc<CoeffRing>,
    ext_ring: FormalGroupRing,
    t_weights: Vec<u32>,
    phi: Vec<Poly>,
    lambda: Vec<TruncatedSeries>,
}

impl std::fmt::Debug for LnOperation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LnOperation").field("bound", &self.bound).finish()
    }
}

impl LnOperation {
    /// Operations `S_I` with `Σ k·i_k ≤ bound`.
    pub fn new(fb: &FlagBasis, bound: u32) -> Result<LnOperation> {
        let law = fb.ring().law();
        if law.lazard().is_none() {
            return Err(Error::Invalid("Landweber-Novikov operations need the universal law".into()));
        }
        let log = law.log().expect("universal law has a logarithm");
        let m_ring = law.ring().clone();
        let n_m = m_ring.n_gens();
        let ext = m_ring.extend((1..=bound).map(|i| (format!("t{i}"), i)))?;
        let t_weights: Vec<u32> = (0..ext.n_gens())
            .map(|g| if g < n_m { 0 } else { (g - n_m + 1) as u32 })
            .collect();

        let trunc = log.trunc();
        let mut lam = TruncatedSeries::var(&ext, 1, trunc, 0);
        for i in 1..=bound.min(trunc.saturating_sub(1)) {
            let mut e = [0u8; MAX_VARS];
            e[0] = (i + 1) as u8;
            lam.add_term(e, Poly::var(n_m + i as usize - 1));
        }
        let lam_inv = reversion(&lam)?.map_coeffs(|c| c.truncate_weight(&t_weights, bound));
        let log_ext = log.change_ring(&ext, Poly::clone);
        let twisted_log = log_ext.substitute(&[lam_inv])?;
        let mut phi = Vec::with_capacity(n_m);
        for i in 1..=n_m {
            let mut e = [0u8; MAX_VARS];
            e[0] = (i + 1) as u8;
            if (i as u32 + 1) > twisted_log.valid_degree() {
                return Err(Error::InsufficientPrecision {
                    what: "Landweber-Novikov twist".into(),
                    needed: fb.ring().trunc() + 1,
                });
            }
            phi.push(twisted_log.coeff(&e).truncate_weight(&t_weights, bound));
        }

        let ext_ring = fb.ring().extended(&ext)?;
        let n = fb.datum().rank();
        let lam_trunc = lam.with_trunc(ext_ring.trunc());
        let lambda = (0..n).map(|i| embed_univariate(&lam_trunc, n, i, ext_ring.trunc())).collect();
        Ok(LnOperation { bound, n_m, ext, ext_ring, t_weights, phi, lambda })
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// The extended ring `𝕃[m][t_1, …]`.
    pub fn ring(&self) -> &Arc<CoeffRing> {
        &self.ext
    }

    /// `φ_T` on a polynomial in the logarithm coefficients.
    pub fn phi(&self, p: &Poly) -> Poly {
        p.substitute(&self.phi).truncate_weight(&self.t_weights, self.bound)
    }

    fn truncate(&self, p: &Poly) -> Poly {
        p.truncate_weight(&self.t_weights, self.bound)
    }

    /// `S_T(b_w)` with coefficients in the extended ring.
    pub fn total_on_basis(&self, fb: &FlagBasis, w: usize) -> Result<FlagClass> {
        let seed = fb.seed(w).change_ring(&self.ext, |c| self.phi(c));
        let image = seed.substitute(&self.lambda)?.map_coeffs(|c| self.truncate(c));
        let alpha = fb.char_coords_in(&self.ext_ring, &image)?;
        let c = fb.apply_inverse(&alpha, &Q::from_integer(1.into()));
        Ok(c.map_coeffs(|p| self.truncate(p)))
    }

    /// `S_T(x) = Σ_w φ_T(x_w) S_T(b_w)`.
    pub fn total(&self, fb: &FlagBasis, x: &FlagClass) -> Result<FlagClass> {
        let mut out = FlagClass::zero(fb.len());
        for (w, xw) in x.coords.iter().enumerate() {
            if xw.is_zero() {
                continue;
            }
            let s = self.total_on_basis(fb, w)?;
            out = out.add(&s.scale(&self.phi(xw)));
        }
        Ok(out.map_coeffs(|p| self.truncate(p)))
    }

    /// Product of two classes with extended coefficients, truncated in `t`.
    pub fn multiply(&self, fb: &FlagBasis, x: &FlagClass, y: &FlagClass) -> Result<FlagClass> {
        Ok(fb.multiply(x, y)?.map_coeffs(|p| self.truncate(p)))
    }

    /// Split a class with extended coefficients by monomials in `t`:
    /// multi-index `(i_1, …, i_bound)` → class over the logarithm ring.
    pub fn split(&self, x: &FlagClass) -> BTreeMap<Vec<u32>, FlagClass> {
        let len = x.coords.len();
        let mut out: BTreeMap<Vec<u32>, FlagClass> = BTreeMap::new();
        for (w, p) in x.coords.iter().enumerate() {
            for (m, q) in p.terms() {
                let index: Vec<u32> = (0..self.bound as usize).map(|k| u32::from(m.0[self.n_m + k])).collect();
                let mut base = *m;
                for k in 0..self.bound as usize {
                    base.0[self.n_m + k] = 0;
                }
                let class = out.entry(index).or_insert_with(|| FlagClass::zero(len));
                class.coords[w].add_term(base, q.clone());
            }
        }
        out
    }

    /// `S_I(x)` for every multi-index of weight at most the bound.
    pub fn apply(&self, fb: &FlagBasis, x: &FlagClass) -> Result<BTreeMap<Vec<u32>, FlagClass>> {
        let total = self.total(fb, x)?;
        let ring = fb.ring().coeff_ring();
        let parts = self.split(&total);
        for (index, class) in &parts {
            for p in &class.coords {
                ring.check_integral(p, &format!("S_{index:?}"))?;
            }
        }
        Ok(parts)
    }

    /// Weight `Σ k·i_k` of a multi-index.
    pub fn index_weight(index: &[u32]) -> u32 {
        index.iter().enumerate().map(|(k, &e)| (k as u32 + 1) * e).sum()
    }

    /// `t^I` as a monomial of the extended ring.
    pub fn t_monomial(&self, index: &[u32]) -> Mono {
        let mut m = Mono::ONE;
        for (k, &e) in index.iter().enumerate() {
            m.0[self.n_m + k] = e as u8;
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgl::FormalGroupLaw;
    use crate::par::Execution;
    use crate::rootdata::RootDatum;

    #[test]
    fn trivial_index_is_identity() {
        let datum = Arc::new(RootDatum::named("A2").unwrap());
        let ring = Arc::new(FormalGroupRing::new(datum, Arc::new(FormalGroupLaw::universal(7).unwrap())));
        let fb = FlagBasis::new(ring, Execution::Sequential).unwrap();
        let ln = LnOperation::new(&fb, 1).unwrap();
        for w in 0..fb.len() {
            let parts = ln.apply(&fb, &FlagClass::basis(fb.len(), w)).unwrap();
            assert_eq!(parts[&vec![0]], FlagClass::basis(fb.len(), w));
        }
    }
}
