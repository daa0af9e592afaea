//! Formal group laws as truncated bivariate series.
//!
//! Every law is stored with two orders of headroom beyond its nominal
//! truncation `D`, so that `κ(x, y) = (x + y - F(x, y)) / (xy)` is still
//! certified through degree `D`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Deserialize;

use crate::coeffring::{fmt_q, parse_q, CoeffPoly, CoeffRing, LazardBasis, Poly, Q};
use crate::error::{Error, Result};
use crate::tseries::{exp_degree, TruncatedSeries, MAX_VARS};

/// Extra orders carried by the stored law.
pub const HEADROOM: u32 = 2;

#[derive(Clone, Debug, PartialEq)]
pub enum Backend {
    Universal,
    Additive,
    Multiplicative(Q),
    Connective,
    Custom,
    Twisted,
}

#[derive(Clone, Debug)]
pub struct FormalGroupLaw {
    ring: Arc<CoeffRing>,
    trunc: u32,
    f: TruncatedSeries,
    inverse: TruncatedSeries,
    log: Option<TruncatedSeries>,
    backend: Backend,
    lazard: Option<Arc<LazardBasis>>,
}

fn e1(k: u32) -> [u8; MAX_VARS] {
    let mut e = [0; MAX_VARS];
    e[0] = k as u8;
    e
}

fn e2(i: u32, j: u32) -> [u8; MAX_VARS] {
    let mut e = [0; MAX_VARS];
    e[0] = i as u8;
    e[1] = j as u8;
    e
}

/// Compositional inverse of a one-variable series `c x + …` with scalar unit `c`.
pub fn reversion(s: &TruncatedSeries) -> Result<TruncatedSeries> {
    assert_eq!(s.n_vars(), 1);
    if !s.constant_term().is_zero() {
        return Err(Error::NonZeroConstantTerm);
    }
    let lead = s.coeff(&e1(1));
    let Some(c) = lead.as_constant().filter(|c| !c.is_zero()) else {
        return Err(Error::NotInvertible(s.ring().render(&lead)));
    };
    let neg_inv_c = -c.recip();
    let top = s.valid_degree() as usize;
    // pow[j][n] = [x^n] r^j, filled one degree at a time.
    let mut pow: Vec<Vec<Poly>> = vec![vec![Poly::zero(); top + 1]; top + 1];
    pow[0][0] = Poly::one();
    if top >= 1 {
        pow[1][1] = Poly::constant(c.recip());
    }
    for n in 2..=top {
        for j in 2..=n {
            let mut acc = Poly::zero();
            for i in 1..=n + 1 - j {
                if !pow[1][i].is_zero() && !pow[j - 1][n - i].is_zero() {
                    acc.add_product(&pow[1][i], &pow[j - 1][n - i]);
                }
            }
            pow[j][n] = acc;
        }
        let mut rest = Poly::zero();
        for j in 2..=n {
            let sj = s.coeff(&e1(j as u32));
            if !sj.is_zero() && !pow[j][n].is_zero() {
                rest.add_product(&sj, &pow[j][n]);
            }
        }
        pow[1][n] = rest.scale(&neg_inv_c);
    }
    let mut r = TruncatedSeries::zero(s.ring(), 1, s.trunc());
    r.lower_valid(s.valid_degree());
    for n in 1..=top {
        r.add_term(e1(n as u32), pow[1][n].clone());
    }
    Ok(r)
}

impl FormalGroupLaw {
    /// The universal law with logarithm `x + Σ m_i x^{i+1}` at truncation `trunc`.
    pub fn universal(trunc: u32) -> Result<FormalGroupLaw> {
        if trunc == 0 {
            return Err(Error::Invalid("truncation must be at least 1".into()));
        }
        let work = trunc + HEADROOM;
        let ring = CoeffRing::sequence("m", work as usize - 1, false)?;
        let mut log = TruncatedSeries::var(&ring, 1, work, 0);
        for i in 1..work {
            log.add_term(e1(i + 1), Poly::var(i as usize - 1));
        }
        let f = law_from_log(&log)?;
        let mut law = FormalGroupLaw::assemble(ring.clone(), trunc, f, Some(log), Backend::Universal)?;
        let aij = law.coefficients_table();
        law.lazard = Some(Arc::new(LazardBasis::new(&ring, &aij, work - 1)?));
        Ok(law)
    }

    /// `F(x, y) = x + y`.
    pub fn additive(trunc: u32) -> FormalGroupLaw {
        let ring = CoeffRing::scalars(false);
        let f = TruncatedSeries::from_terms(
            &ring,
            2,
            trunc + HEADROOM,
            [(e2(1, 0), Poly::one()), (e2(0, 1), Poly::one())],
        );
        let log = TruncatedSeries::var(&ring, 1, trunc + HEADROOM, 0);
        FormalGroupLaw::assemble(ring, trunc, f, Some(log), Backend::Additive).unwrap()
    }

    /// `F(x, y) = x + y - β x y` over the rationals (integral when β is an integer).
    pub fn multiplicative(beta: Q, trunc: u32) -> FormalGroupLaw {
        let ring = CoeffRing::scalars(!beta.is_integer());
        let f = TruncatedSeries::from_terms(
            &ring,
            2,
            trunc + HEADROOM,
            [
                (e2(1, 0), Poly::one()),
                (e2(0, 1), Poly::one()),
                (e2(1, 1), Poly::constant(-beta.clone())),
            ],
        );
        FormalGroupLaw::assemble(ring, trunc, f, None, Backend::Multiplicative(beta)).unwrap()
    }

    /// `F(x, y) = x + y - v x y` over `Z[v]`, `v` of weight 1.
    pub fn connective(trunc: u32) -> FormalGroupLaw {
        let ring = CoeffRing::new([("v", 1)], false).unwrap();
        let f = TruncatedSeries::from_terms(
            &ring,
            2,
            trunc + HEADROOM,
            [
                (e2(1, 0), Poly::one()),
                (e2(0, 1), Poly::one()),
                (e2(1, 1), Poly::var(0).neg()),
            ],
        );
        FormalGroupLaw::assemble(ring, trunc, f, None, Backend::Connective).unwrap()
    }

    /// A law given by its coefficients `a_ij` (`i, j ≥ 1`); unlisted
    /// coefficients are zero.  Associativity is verified to the stored degree.
    pub fn from_coefficients(
        ring: &Arc<CoeffRing>,
        coeffs: &BTreeMap<(u32, u32), Poly>,
        trunc: u32,
    ) -> Result<FormalGroupLaw> {
        let work = trunc + HEADROOM;
        let mut f = TruncatedSeries::from_terms(
            ring,
            2,
            work,
            [(e2(1, 0), Poly::one()), (e2(0, 1), Poly::one())],
        );
        for (&(i, j), c) in coeffs {
            if i == 0 || j == 0 {
                return Err(Error::InvalidLaw(format!("coefficient a{i},{j} would break F(x,0) = x")));
            }
            let mirror = coeffs.get(&(j, i)).cloned().unwrap_or_default();
            if mirror != *c {
                return Err(Error::InvalidLaw(format!("a{i},{j} differs from a{j},{i}")));
            }
            f.add_term(e2(i, j), c.clone());
        }
        check_associativity(&f)?;
        FormalGroupLaw::assemble(ring.clone(), trunc, f, None, Backend::Custom)
    }

    /// A law given by its logarithm `x + Σ c_i x^{i+1}` with rational `c_i`.
    pub fn from_log(coeffs: &[Q], trunc: u32) -> Result<FormalGroupLaw> {
        let work = trunc + HEADROOM;
        let qring = CoeffRing::scalars(true);
        let mut log = TruncatedSeries::var(&qring, 1, work, 0);
        for (i, c) in coeffs.iter().enumerate() {
            log.add_term(e1(i as u32 + 2), Poly::constant(c.clone()));
        }
        let f = law_from_log(&log)?;
        let integral = f.terms().all(|(_, c)| c.is_integral());
        let ring = CoeffRing::scalars(!integral);
        let f = f.change_ring(&ring, Poly::clone);
        let log = log.change_ring(&ring, Poly::clone);
        FormalGroupLaw::assemble(ring, trunc, f, Some(log), Backend::Custom)
    }

    fn assemble(
        ring: Arc<CoeffRing>,
        trunc: u32,
        f: TruncatedSeries,
        log: Option<TruncatedSeries>,
        backend: Backend,
    ) -> Result<FormalGroupLaw> {
        let inverse = match &log {
            Some(l) => {
                let exp = reversion(l)?;
                exp.substitute(&[l.neg()])?
            }
            None => solve_inverse(&f)?,
        };
        Ok(FormalGroupLaw {
            ring,
            trunc,
            f,
            inverse,
            log,
            backend,
            lazard: None,
        })
    }

    pub fn ring(&self) -> &Arc<CoeffRing> {
        &self.ring
    }

    /// Nominal truncation `D`.
    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    /// `F(x, y)`, certified through degree `D + HEADROOM`.
    pub fn series(&self) -> &TruncatedSeries {
        &self.f
    }

    pub fn inverse_series(&self) -> &TruncatedSeries {
        &self.inverse
    }

    pub fn log(&self) -> Option<&TruncatedSeries> {
        self.log.as_ref()
    }

    pub fn lazard(&self) -> Option<&Arc<LazardBasis>> {
        self.lazard.as_ref()
    }

    /// Coefficient `a_ij` of `x^i y^j`.
    pub fn coefficient(&self, i: u32, j: u32) -> CoeffPoly {
        self.f.coeff_poly(&e2(i, j))
    }

    /// All `a_ij` with `i, j ≥ 1` through the stored degree.
    pub fn coefficients_table(&self) -> BTreeMap<(u32, u32), Poly> {
        self.f
            .terms()
            .filter(|(e, _)| e[0] >= 1 && e[1] >= 1)
            .map(|(e, c)| ((e[0] as u32, e[1] as u32), c.clone()))
            .collect()
    }

    /// `F(s, t)`.
    pub fn formal_sum(&self, s: &TruncatedSeries, t: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.f.substitute(&[s.clone(), t.clone()])
    }

    /// `ι(s)` with `F(s, ι(s)) = 0`.
    pub fn formal_inverse(&self, s: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.inverse.substitute(std::slice::from_ref(s))
    }

    /// The one-variable series `[k]_F(x)`.
    pub fn multiple_series(&self, k: i64) -> Result<TruncatedSeries> {
        let x = TruncatedSeries::var(&self.ring, 1, self.f.trunc(), 0);
        let mut acc = TruncatedSeries::zero(&self.ring, 1, self.f.trunc());
        for _ in 0..k.unsigned_abs() {
            acc = self.formal_sum(&acc, &x)?;
        }
        if k < 0 {
            acc = self.formal_inverse(&acc)?;
        }
        Ok(acc)
    }

    /// `k ·_F s`.
    pub fn multiple(&self, k: i64, s: &TruncatedSeries) -> Result<TruncatedSeries> {
        if !s.constant_term().is_zero() {
            return Err(Error::NonZeroConstantTerm);
        }
        if k == 0 {
            return Ok(s.scale(&Poly::zero()));
        }
        if k == 1 {
            return Ok(s.clone());
        }
        self.multiple_series(k)?.substitute(std::slice::from_ref(s))
    }

    /// `g(x, y) = (x + y - F(x, y)) / (xy)`, certified through degree `D`.
    pub fn kappa(&self) -> Result<TruncatedSeries> {
        let w = self.f.trunc();
        let x = TruncatedSeries::var(&self.ring, 2, w, 0);
        let y = TruncatedSeries::var(&self.ring, 2, w, 1);
        let num = x.add(&y)?.sub(&self.f)?;
        num.exact_divide(&x)?.exact_divide(&y)
    }

    /// Conjugate by `λ`: `F'(x, y) = λ(F(λ⁻¹x, λ⁻¹y))`.  The coefficient ring
    /// of `λ` must extend this law's ring (same leading generators).
    pub fn twist(&self, lambda: &TruncatedSeries) -> Result<FormalGroupLaw> {
        let ring = lambda.ring().clone();
        if ring.generators().len() < self.ring.generators().len()
            || ring.generators()[..self.ring.n_gens()] != *self.ring.generators()
        {
            return Err(Error::RingMismatch);
        }
        if !lambda.coeff(&e1(1)).is_one() || !lambda.constant_term().is_zero() {
            return Err(Error::Invalid("twist needs λ(x) = x + higher terms".into()));
        }
        let w = self.f.trunc();
        let lambda = lambda.with_trunc(w);
        let f = self.f.change_ring(&ring, Poly::clone);
        let inv = reversion(&lambda)?;
        let x = TruncatedSeries::var(&ring, 2, w, 0);
        let y = TruncatedSeries::var(&ring, 2, w, 1);
        let ix = inv.substitute(&[x])?;
        let iy = inv.substitute(&[y])?;
        let inner = f.substitute(&[ix, iy])?;
        let twisted = lambda.substitute(&[inner])?;
        let log = match &self.log {
            Some(l) => Some(l.change_ring(&ring, Poly::clone).substitute(&[inv])?),
            None => None,
        };
        FormalGroupLaw::assemble(ring, self.trunc, twisted, log, Backend::Twisted)
    }

    /// The law obtained by mapping every coefficient through a ring morphism.
    pub fn map_coefficients(&self, ring: &Arc<CoeffRing>, f: impl Fn(&Poly) -> Poly) -> Result<FormalGroupLaw> {
        Ok(FormalGroupLaw {
            ring: ring.clone(),
            trunc: self.trunc,
            f: self.f.change_ring(ring, &f),
            inverse: self.inverse.change_ring(ring, &f),
            log: self.log.as_ref().map(|l| l.change_ring(ring, &f)),
            backend: Backend::Custom,
            lazard: None,
        })
    }

    /// Whether coefficients are expected to stay integral.
    pub fn is_integral(&self) -> bool {
        !self.ring.rational_mode()
    }

    /// `F` rendered in `x`, `y`.
    pub fn render(&self) -> String {
        self.f.truncated(self.trunc).render(&["x", "y"])
    }
}

/// `F = exp(log x + log y)`, exploiting that `(log x + log y)^k` splits
/// binomially into univariate powers.
fn law_from_log(log: &TruncatedSeries) -> Result<TruncatedSeries> {
    let ring = log.ring().clone();
    let w = log.trunc();
    let exp = reversion(log)?;
    // powers[a] = log(x)^a
    let mut powers = vec![TruncatedSeries::one(&ring, 1, w)];
    for a in 1..=w {
        let next = powers[a as usize - 1].mul(log)?;
        powers.push(next);
    }
    let coeff = |a: u32, i: u32| -> Poly {
        if i < a || i > w {
            Poly::zero()
        } else {
            powers[a as usize].coeff(&e1(i))
        }
    };
    let mut f = TruncatedSeries::zero(&ring, 2, w);
    for total in 1..=w {
        for i in 0..=total {
            let j = total - i;
            if j < i {
                continue;
            }
            let mut c = Poly::zero();
            for a in 0..=i {
                let pa = coeff(a, i);
                if pa.is_zero() {
                    continue;
                }
                for b in 0..=j {
                    if a + b == 0 {
                        continue;
                    }
                    let pb = coeff(b, j);
                    if pb.is_zero() {
                        continue;
                    }
                    let ek = exp.coeff(&e1(a + b));
                    if ek.is_zero() {
                        continue;
                    }
                    let binom = Q::from_integer(crate::coeffring::binomial(a + b, a));
                    c.add_assign(&ek.mul(&pa).mul(&pb).scale(&binom));
                }
            }
            if !c.is_zero() {
                f.add_term(e2(i, j), c.clone());
                if i != j {
                    f.add_term(e2(j, i), c);
                }
            }
        }
    }
    Ok(f)
}

/// Solve `F(x, ι(x)) = 0` order by order.
fn solve_inverse(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    let ring = f.ring().clone();
    let w = f.trunc();
    let mut iota = TruncatedSeries::zero(&ring, 1, w);
    iota.add_term(e1(1), Poly::int(-1));
    iota.lower_valid(f.valid_degree());
    let x = TruncatedSeries::var(&ring, 1, w, 0);
    for k in 2..=f.valid_degree() {
        let val = f.substitute(&[x.clone(), iota.truncated(k)])?;
        let c = val.coeff(&e1(k));
        if !c.is_zero() {
            iota.add_term(e1(k), c.neg());
        }
    }
    Ok(iota)
}

/// Compare `F(F(x,y),z)` with `F(x,F(y,z))` through the stored degree.
fn check_associativity(f: &TruncatedSeries) -> Result<()> {
    let ring = f.ring().clone();
    let w = f.trunc();
    let v = |i| TruncatedSeries::var(&ring, 3, w, i);
    let (x, y, z) = (v(0), v(1), v(2));
    let left = f.substitute(&[f.substitute(&[x.clone(), y.clone()])?, z.clone()])?;
    let right = f.substitute(&[x, f.substitute(&[y, z])?])?;
    let diff = left.sub(&right)?;
    let mut bad: Vec<[u8; MAX_VARS]> = diff.terms().map(|(e, _)| *e).collect();
    bad.sort_by_key(|e| (exp_degree(e), *e));
    if let Some(e) = bad.first() {
        return Err(Error::Associativity {
            i: e[0] as u32,
            j: e[1] as u32,
            k: e[2] as u32,
        });
    }
    Ok(())
}

/// Which cohomology theory a computation runs in.
#[derive(Clone, Debug, PartialEq)]
pub enum Theory {
    Universal,
    Chow,
    KTheory(Q),
    Connective,
    Custom(CustomLaw),
}

/// JSON description of a user-supplied law.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomLaw {
    #[serde(default)]
    pub log: Option<Vec<String>>,
    #[serde(default)]
    pub coefficients: Option<BTreeMap<String, String>>,
}

impl Theory {
    /// Parse `universal`, `chow`, `ktheory:β`, `connective`, or
    /// `custom:FILE` (the file is read here).
    pub fn parse(spec: &str) -> Result<Theory> {
        let spec = spec.trim();
        match spec {
            "universal" => return Ok(Theory::Universal),
            "chow" | "additive" => return Ok(Theory::Chow),
            "connective" => return Ok(Theory::Connective),
            "ktheory" => return Ok(Theory::KTheory(Q::one())),
            _ => {}
        }
        if let Some(b) = spec.strip_prefix("ktheory:") {
            return Ok(Theory::KTheory(parse_q(b)?));
        }
        if let Some(path) = spec.strip_prefix("custom:") {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Invalid(format!("cannot read `{path}`: {e}")))?;
            return Ok(Theory::Custom(CustomLaw::from_json(&text)?));
        }
        Err(Error::Invalid(format!("unknown theory `{spec}`")))
    }

    pub fn label(&self) -> String {
        match self {
            Theory::Universal => "universal".into(),
            Theory::Chow => "chow".into(),
            Theory::KTheory(b) => format!("ktheory:{}", fmt_q(b)),
            Theory::Connective => "connective".into(),
            Theory::Custom(_) => "custom".into(),
        }
    }

    pub fn build_law(&self, trunc: u32) -> Result<FormalGroupLaw> {
        match self {
            Theory::Universal => FormalGroupLaw::universal(trunc),
            Theory::Chow => Ok(FormalGroupLaw::additive(trunc)),
            Theory::KTheory(b) => Ok(FormalGroupLaw::multiplicative(b.clone(), trunc)),
            Theory::Connective => Ok(FormalGroupLaw::connective(trunc)),
            Theory::Custom(c) => c.build(trunc),
        }
    }
}

impl CustomLaw {
    pub fn from_json(text: &str) -> Result<CustomLaw> {
        let law: CustomLaw = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("custom law: {e}")))?;
        if law.log.is_some() == law.coefficients.is_some() {
            return Err(Error::Invalid("custom law needs exactly one of `log` or `coefficients`".into()));
        }
        Ok(law)
    }

    pub fn build(&self, trunc: u32) -> Result<FormalGroupLaw> {
        if let Some(log) = &self.log {
            let c: Vec<Q> = log.iter().map(|s| parse_q(s)).collect::<Result<_>>()?;
            return FormalGroupLaw::from_log(&c, trunc);
        }
        let raw = self.coefficients.as_ref().unwrap();
        let mut coeffs = BTreeMap::new();
        let mut integral = true;
        for (k, v) in raw {
            let (i, j) = k
                .split_once(',')
                .and_then(|(i, j)| Some((i.trim().parse::<u32>().ok()?, j.trim().parse::<u32>().ok()?)))
                .ok_or_else(|| Error::Parse(format!("bad coefficient key `{k}`, expected \"i,j\"")))?;
            let q = parse_q(v)?;
            integral &= q.is_integer();
            coeffs.insert((i, j), Poly::constant(q));
        }
        // Symmetric completion: a key given once stands for both orders.
        let keys: Vec<(u32, u32)> = coeffs.keys().copied().collect();
        for (i, j) in keys {
            if !coeffs.contains_key(&(j, i)) {
                let c = coeffs[&(i, j)].clone();
                coeffs.insert((j, i), c);
            }
        }
        let ring = CoeffRing::scalars(!integral);
        FormalGroupLaw::from_coefficients(&ring, &coeffs, trunc)
    }
}

/// The assignment `a_i ↦ value` used by the standard specializations of the
/// a-basis, for the generators `a1 … a_max`.
pub fn specialization_values(theory: &Theory, max: u32) -> Option<Vec<(String, Q)>> {
    let a1 = match theory {
        Theory::Chow => Q::zero(),
        Theory::KTheory(b) => -b.clone(),
        _ => return None,
    };
    Some(
        (1..=max)
            .map(|i| (format!("a{i}"), if i == 1 { a1.clone() } else { Q::zero() }))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::{q_frac, q_int};

    #[test]
    fn universal_low_order() {
        let u = FormalGroupLaw::universal(5).unwrap();
        let m = u.ring().clone();
        assert_eq!(u.coefficient(1, 1), CoeffPoly::parse(&m, "-2*m1").unwrap());
        // x^2 y coefficient: hand reversion gives -3 m2 + 6 m1^2... check symmetry instead.
        assert_eq!(u.coefficient(1, 2), u.coefficient(2, 1));
        let lz = u.lazard().unwrap();
        let a1 = lz.change_to_a_basis(&u.coefficient(1, 1), 6).unwrap();
        assert_eq!(a1.to_string(), "a1");
        let a2 = lz.change_to_a_basis(&u.coefficient(1, 2), 6).unwrap();
        assert_eq!(a2.to_string(), "a2");
    }

    #[test]
    fn additive_and_multiplicative() {
        let add = FormalGroupLaw::additive(6);
        assert!(add.kappa().unwrap().is_zero());
        let x = TruncatedSeries::var(add.ring(), 1, 8, 0);
        assert_eq!(add.multiple(3, &x).unwrap(), x.scale_q(&q_int(3)));
        let beta = q_frac(3, 2);
        let mult = FormalGroupLaw::multiplicative(beta.clone(), 6);
        let k = mult.kappa().unwrap();
        assert_eq!(k.constant_term(), Poly::constant(beta.clone()));
        assert_eq!(k.max_degree(), Some(0));
        let x = TruncatedSeries::var(mult.ring(), 1, 8, 0);
        let two = mult.multiple(2, &x).unwrap();
        let mut expect = x.scale_q(&q_int(2));
        expect.add_term(e1(2), Poly::constant(-beta));
        assert_eq!(two, expect);
    }

    #[test]
    fn inverse_closes() {
        for law in [FormalGroupLaw::universal(6).unwrap(), FormalGroupLaw::connective(6)] {
            let x = TruncatedSeries::var(law.ring(), 1, law.series().trunc(), 0);
            let s = law.formal_sum(&x, &law.formal_inverse(&x).unwrap()).unwrap();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn associativity_rejected() {
        let ring = CoeffRing::scalars(false);
        let mut c = BTreeMap::new();
        c.insert((1, 1), Poly::int(1));
        c.insert((2, 2), Poly::int(1));
        assert!(matches!(
            FormalGroupLaw::from_coefficients(&ring, &c, 5),
            Err(Error::Associativity { .. })
        ));
        let mut c = BTreeMap::new();
        c.insert((1, 1), Poly::int(-1));
        let law = FormalGroupLaw::from_coefficients(&ring, &c, 5).unwrap();
        let iota = law.inverse_series();
        // ι(x) = -x/(1 - x) = -x - x^2 - …
        for k in 1..=7 {
            assert_eq!(iota.coeff(&e1(k)), Poly::int(-1));
        }
    }

    #[test]
    fn theory_parsing() {
        assert_eq!(Theory::parse("universal").unwrap(), Theory::Universal);
        assert_eq!(Theory::parse("ktheory:-1/2").unwrap(), Theory::KTheory(q_frac(-1, 2)));
        assert!(Theory::parse("bogus").is_err());
        let c = CustomLaw::from_json(r#"{"coefficients": {"1,1": "-1"}}"#).unwrap();
        assert!(c.build(4).is_ok());
        assert!(CustomLaw::from_json(r#"{"log": [], "coefficients": {}}"#).is_err());
    }
}
