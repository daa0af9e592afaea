//! Exact weighted-graded polynomial rings used as coefficient rings for series.
//!
//! A [`Poly`] is a ring-agnostic sparse polynomial: a map from exponent
//! vectors to rationals.  It is what the series kernel stores per term.  A
//! [`CoeffPoly`] pairs a `Poly` with its [`CoeffRing`] for the checked public
//! API.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

/// Maximum number of generators a coefficient ring may carry.
pub const MAX_GENERATORS: usize = 32;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Print a rational as `n` or `n/d`.
pub fn fmt_q(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Exponent vector over at most [`MAX_GENERATORS`] generators.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono(pub [u8; MAX_GENERATORS]);

impl Mono {
    pub const ONE: Mono = Mono([0; MAX_GENERATORS]);

    pub fn var(i: usize) -> Mono {
        let mut m = Mono::ONE;
        m.0[i] = 1;
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(*b).expect("coefficient exponent overflow");
        }
        out
    }

    pub fn weight(&self, weights: &[u32]) -> u32 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u32 * w)
            .sum()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Key realizing the canonical print order: descending lexicographic
    /// comparison of exponents read from the highest-index generator.
    fn print_key(&self, n: usize) -> Vec<std::cmp::Reverse<u8>> {
        (0..n).rev().map(|i| std::cmp::Reverse(self.0[i])).collect()
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.0[..last])
    }
}

/// Sparse polynomial with rational coefficients and no stored zeros.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct Poly {
    terms: BTreeMap<Mono, Q>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Q::one())
    }

    pub fn constant(q: Q) -> Poly {
        let mut p = Poly::zero();
        p.add_term(Mono::ONE, q);
        p
    }

    pub fn int(n: i64) -> Poly {
        Poly::constant(q_int(n))
    }

    pub fn var(i: usize) -> Poly {
        let mut p = Poly::zero();
        p.add_term(Mono::var(i), Q::one());
        p
    }

    pub fn monomial(m: Mono, q: Q) -> Poly {
        let mut p = Poly::zero();
        p.add_term(m, q);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Mono::ONE).is_some_and(|q| q.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&Mono::ONE)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Mono::is_one)
    }

    pub fn add_term(&mut self, m: Mono, q: Q) {
        if q.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(q);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += q;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for (m, q) in &other.terms {
            self.add_term(*m, q.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Poly) {
        for (m, q) in &other.terms {
            self.add_term(*m, -q.clone());
        }
    }

    /// `self += other * s`.
    pub fn add_scaled(&mut self, other: &Poly, s: &Q) {
        if s.is_zero() {
            return;
        }
        for (m, q) in &other.terms {
            self.add_term(*m, q * s);
        }
    }

    /// `self += a * b`.
    pub fn add_product(&mut self, a: &Poly, b: &Poly) {
        for (ma, qa) in &a.terms {
            for (mb, qb) in &b.terms {
                self.add_term(ma.mul(mb), qa * qb);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, q)| (*m, -q.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &Q) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, q)| (*m, q * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut out = Poly::zero();
        out.add_product(self, other);
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// The value if this polynomial is a constant.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Mono::ONE).cloned(),
            _ => None,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|q| q.is_integer())
    }

    /// Keep only the terms whose weight does not exceed `max_weight`.
    pub fn truncate_weight(&self, weights: &[u32], max_weight: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight(weights) <= max_weight)
                .map(|(m, q)| (*m, q.clone()))
                .collect(),
        }
    }

    /// Split into homogeneous components by weight.
    pub fn by_weight(&self, weights: &[u32]) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, q) in &self.terms {
            out.entry(m.weight(weights)).or_default().terms.insert(*m, q.clone());
        }
        out
    }

    /// Weights of the terms, if all equal.
    pub fn homogeneous_weight(&self, weights: &[u32]) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.weight(weights));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// Whether generator `i` occurs.
    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    /// Substitute generator `i` by `images[i]` (a polynomial in some target
    /// ring).  Generators beyond `images.len()` must not occur.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        let mut powers: Vec<Vec<Poly>> = vec![vec![Poly::one()]; images.len()];
        let mut out = Poly::zero();
        for (m, q) in &self.terms {
            let mut term = Poly::constant(q.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                assert!(i < images.len(), "no image for generator {i}");
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][e as usize]);
            }
            out.add_assign(&term);
        }
        out
    }

    /// Evaluate generators that have an assigned value; others are kept.
    pub fn partial_eval(&self, values: &[Option<Q>]) -> Poly {
        let mut out = Poly::zero();
        for (m, q) in &self.terms {
            let mut mono = *m;
            let mut c = q.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    let e = mono.0[i];
                    if e > 0 {
                        c *= num_traits::pow(v.clone(), e as usize);
                        mono.0[i] = 0;
                    }
                }
            }
            out.add_term(mono, c);
        }
        out
    }

    /// Least common multiple of coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
    }

    pub fn map_coeffs(&self, f: impl Fn(&Q) -> Q) -> Poly {
        let mut out = Poly::zero();
        for (m, q) in &self.terms {
            out.add_term(*m, f(q));
        }
        out
    }

    /// Render with the given generator names and weights in canonical order.
    pub fn render(&self, names: &[String], weights: &[u32]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let n = names.len();
        let mut terms: Vec<(&Mono, &Q)> = self.terms.iter().collect();
        terms.sort_by_cached_key(|(m, _)| (m.weight(weights), m.print_key(n)));
        let mut out = String::new();
        for (k, (m, q)) in terms.into_iter().enumerate() {
            let neg = q.is_negative();
            let abs = q.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = render_mono(m, names);
            match (abs.is_one(), mono.is_empty()) {
                (_, true) => out.push_str(&fmt_q(&abs)),
                (true, false) => out.push_str(&mono),
                (false, false) => {
                    out.push_str(&fmt_q(&abs));
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }
}

fn render_mono(m: &Mono, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, name) in names.iter().enumerate() {
        match m.0[i] {
            0 => {}
            1 => parts.push(name.clone()),
            e => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub weight: u32,
}

/// A weighted polynomial ring over the integers (or the rationals when
/// `rational_mode` is set).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffRing {
    generators: Vec<Generator>,
    weights: Vec<u32>,
    names: Vec<String>,
    rational_mode: bool,
}

impl CoeffRing {
    pub fn new<S: Into<String>>(
        generators: impl IntoIterator<Item = (S, u32)>,
        rational_mode: bool,
    ) -> Result<Arc<CoeffRing>> {
        let generators: Vec<Generator> = generators
            .into_iter()
            .map(|(n, w)| Generator { name: n.into(), weight: w })
            .collect();
        if generators.len() > MAX_GENERATORS {
            return Err(Error::Invalid(format!(
                "at most {MAX_GENERATORS} coefficient generators are supported"
            )));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.weight == 0 {
                return Err(Error::Invalid(format!("generator `{}` has weight 0", g.name)));
            }
            if g.name.is_empty() || !g.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                return Err(Error::Invalid(format!("bad generator name `{}`", g.name)));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::Invalid(format!("duplicate generator `{}`", g.name)));
            }
        }
        Ok(Arc::new(CoeffRing {
            weights: generators.iter().map(|g| g.weight).collect(),
            names: generators.iter().map(|g| g.name.clone()).collect(),
            generators,
            rational_mode,
        }))
    }

    /// The ring with no generators: plain integers or rationals.
    pub fn scalars(rational_mode: bool) -> Arc<CoeffRing> {
        CoeffRing::new(Vec::<(String, u32)>::new(), rational_mode).unwrap()
    }

    /// Generators `prefix1 … prefixK` with weights `1 … K`.
    pub fn sequence(prefix: &str, k: usize, rational_mode: bool) -> Result<Arc<CoeffRing>> {
        CoeffRing::new((1..=k).map(|i| (format!("{prefix}{i}"), i as u32)), rational_mode)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn n_gens(&self) -> usize {
        self.generators.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rational_mode(&self) -> bool {
        self.rational_mode
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// This ring with extra generators appended.
    pub fn extend<S: Into<String>>(
        &self,
        extra: impl IntoIterator<Item = (S, u32)>,
    ) -> Result<Arc<CoeffRing>> {
        let gens = self
            .generators
            .iter()
            .map(|g| (g.name.clone(), g.weight))
            .chain(extra.into_iter().map(|(n, w)| (n.into(), w)));
        CoeffRing::new(gens, self.rational_mode)
    }

    pub fn render(&self, p: &Poly) -> String {
        p.render(&self.names, &self.weights)
    }

    /// Parse a polynomial such as `"-4*a4 + a1*a3 + 13*a2^2 + 1/2*a1"`.
    pub fn parse(&self, s: &str) -> Result<Poly> {
        parse_poly(self, s)
    }

    /// Fails when the ring is integral and `p` has a non-integer coefficient.
    pub fn check_integral(&self, p: &Poly, context: &str) -> Result<()> {
        if !self.rational_mode && !p.is_integral() {
            return Err(Error::Integrality {
                context: context.to_string(),
                value: self.render(p),
            });
        }
        Ok(())
    }
}

/// A polynomial together with its coefficient ring.
#[derive(Clone, Debug)]
pub struct CoeffPoly {
    ring: Arc<CoeffRing>,
    poly: Poly,
}

impl PartialEq for CoeffPoly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.poly == other.poly
    }
}

impl CoeffPoly {
    pub fn new(ring: &Arc<CoeffRing>, poly: Poly) -> CoeffPoly {
        CoeffPoly { ring: ring.clone(), poly }
    }

    pub fn zero(ring: &Arc<CoeffRing>) -> CoeffPoly {
        CoeffPoly::new(ring, Poly::zero())
    }

    pub fn one(ring: &Arc<CoeffRing>) -> CoeffPoly {
        CoeffPoly::new(ring, Poly::one())
    }

    pub fn gen(ring: &Arc<CoeffRing>, name: &str) -> Result<CoeffPoly> {
        let i = ring
            .index_of(name)
            .ok_or_else(|| Error::Invalid(format!("unknown generator `{name}`")))?;
        Ok(CoeffPoly::new(ring, Poly::var(i)))
    }

    pub fn parse(ring: &Arc<CoeffRing>, s: &str) -> Result<CoeffPoly> {
        Ok(CoeffPoly::new(ring, ring.parse(s)?))
    }

    pub fn ring(&self) -> &Arc<CoeffRing> {
        &self.ring
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn same_ring(&self, other: &CoeffPoly) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &CoeffPoly) -> Result<CoeffPoly> {
        self.same_ring(other)?;
        Ok(CoeffPoly::new(&self.ring, self.poly.add(&other.poly)))
    }

    pub fn sub(&self, other: &CoeffPoly) -> Result<CoeffPoly> {
        self.same_ring(other)?;
        Ok(CoeffPoly::new(&self.ring, self.poly.sub(&other.poly)))
    }

    pub fn mul(&self, other: &CoeffPoly) -> Result<CoeffPoly> {
        self.same_ring(other)?;
        Ok(CoeffPoly::new(&self.ring, self.poly.mul(&other.poly)))
    }

    pub fn neg(&self) -> CoeffPoly {
        CoeffPoly::new(&self.ring, self.poly.neg())
    }

    pub fn scale(&self, s: &Q) -> CoeffPoly {
        CoeffPoly::new(&self.ring, self.poly.scale(s))
    }

    pub fn weight(&self) -> Option<u32> {
        self.poly.homogeneous_weight(self.ring.weights())
    }

    /// Evaluate at rational values; every generator occurring in `self` must
    /// be assigned.  The result lives in the generator-free ring.
    pub fn specialize(&self, assignment: &BTreeMap<String, Q>) -> Result<CoeffPoly> {
        let mut values = vec![None; self.ring.n_gens()];
        for (i, name) in self.ring.names().iter().enumerate() {
            if let Some(v) = assignment.get(name) {
                values[i] = Some(v.clone());
            } else if self.poly.involves(i) {
                return Err(Error::MissingAssignment(name.clone()));
            }
        }
        let p = self.poly.partial_eval(&values);
        Ok(CoeffPoly::new(&CoeffRing::scalars(true), p))
    }
}

impl fmt::Display for CoeffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.render(&self.poly))
    }
}

fn parse_poly(ring: &CoeffRing, s: &str) -> Result<Poly> {
    let err = |msg: &str| Error::Parse(format!("{msg} in polynomial `{s}`"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err("empty input"));
    }
    // Split into signed terms at top-level + and - (not inside exponents).
    let bytes = compact.as_bytes();
    let mut terms: Vec<(bool, &str)> = Vec::new();
    let mut start = 0;
    let mut neg = false;
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if (c == b'+' || c == b'-') && (i == 0 || bytes[i - 1] != b'^') {
            if i > start {
                terms.push((neg, &compact[start..i]));
            } else if i != 0 {
                return Err(err("dangling sign"));
            }
            neg = c == b'-';
            start = i + 1;
        }
        i += 1;
    }
    if start >= compact.len() {
        return Err(err("trailing sign"));
    }
    terms.push((neg, &compact[start..]));
    let mut out = Poly::zero();
    for (neg, body) in terms {
        let mut coeff = Q::one();
        let mut mono = Mono::ONE;
        for factor in body.split('*') {
            if factor.is_empty() {
                return Err(err("empty factor"));
            }
            if factor.as_bytes()[0].is_ascii_digit() {
                coeff *= parse_q(factor)?;
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (n, e.parse::<u8>().map_err(|_| err("bad exponent"))?),
                None => (factor, 1),
            };
            let idx = ring
                .index_of(name)
                .ok_or_else(|| err(&format!("unknown generator `{name}`")))?;
            mono.0[idx] = mono.0[idx].checked_add(exp).ok_or_else(|| err("exponent overflow"))?;
        }
        out.add_term(mono, if neg { -coeff } else { coeff });
    }
    Ok(out)
}

/// The a-generators of the Lazard ring expressed in logarithm coordinates.
///
/// `a1 = a11`, `a2 = a12`, `a3 = a22 - a13`, `a4 = a14`,
/// `a5 = -9 a15 + a24 + 2 a33`; for higher weights `a_k` is the extended-gcd
/// combination of `a_{i,k+1-i}` whose image modulo decomposables is the gcd of
/// the binomial coefficients `C(k+1, i)`.
#[derive(Debug)]
pub struct LazardBasis {
    m_ring: Arc<CoeffRing>,
    a_ring: Arc<CoeffRing>,
    a_exprs: Vec<Poly>,
    solvers: std::sync::Mutex<BTreeMap<u32, Arc<WeightSolver>>>,
}

#[derive(Debug)]
struct WeightSolver {
    a_monos: Vec<Mono>,
    m_index: BTreeMap<Mono, usize>,
    inverse: Vec<Vec<Q>>,
}

impl LazardBasis {
    /// `aij` holds the coefficients of `x^i y^j` of the universal law as
    /// polynomials over `m_ring`, for all `i + j <= max_weight + 1`.
    pub fn new(
        m_ring: &Arc<CoeffRing>,
        aij: &BTreeMap<(u32, u32), Poly>,
        max_weight: u32,
    ) -> Result<LazardBasis> {
        let get = |i: u32, j: u32| -> Result<Poly> {
            aij.get(&(i, j)).cloned().ok_or_else(|| {
                Error::InsufficientPrecision {
                    what: format!("law coefficient a{i}{j} needed for the a-basis"),
                    needed: i + j,
                }
            })
        };
        let mut a_exprs = Vec::new();
        for k in 1..=max_weight {
            let e = match k {
                1 => get(1, 1)?,
                2 => get(1, 2)?,
                3 => get(2, 2)?.sub(&get(1, 3)?),
                4 => get(1, 4)?,
                5 => {
                    let mut p = get(1, 5)?.scale(&q_int(-9));
                    p.add_assign(&get(2, 4)?);
                    p.add_scaled(&get(3, 3)?, &q_int(2));
                    p
                }
                _ => {
                    let lambdas = gcd_fold(
                        &(1..=k.div_ceil(2))
                            .map(|i| binomial(k + 1, i))
                            .collect::<Vec<_>>(),
                    );
                    let mut p = Poly::zero();
                    for (idx, l) in lambdas.iter().enumerate() {
                        let i = idx as u32 + 1;
                        p.add_scaled(&get(i, k + 1 - i)?, &Q::from_integer(l.clone()));
                    }
                    p
                }
            };
            a_exprs.push(e);
        }
        let a_ring = CoeffRing::sequence("a", max_weight as usize, false)?;
        Ok(LazardBasis {
            m_ring: m_ring.clone(),
            a_ring,
            a_exprs,
            solvers: Default::default(),
        })
    }

    pub fn a_ring(&self) -> &Arc<CoeffRing> {
        &self.a_ring
    }

    pub fn m_ring(&self) -> &Arc<CoeffRing> {
        &self.m_ring
    }

    pub fn max_weight(&self) -> u32 {
        self.a_exprs.len() as u32
    }

    /// `a_k` as a polynomial in the logarithm coefficients.
    pub fn expression(&self, k: u32) -> &Poly {
        &self.a_exprs[k as usize - 1]
    }

    /// Rewrite an a-polynomial in the logarithm coefficients.
    pub fn to_m(&self, p: &Poly) -> Poly {
        p.substitute(&self.a_exprs)
    }

    /// Rewrite a polynomial in the logarithm coefficients as an integral
    /// polynomial in `a1, a2, …`.
    pub fn change_to_a_basis(&self, p: &CoeffPoly, degree_bound: u32) -> Result<CoeffPoly> {
        if **p.ring() != *self.m_ring {
            return Err(Error::RingMismatch);
        }
        let mut out = Poly::zero();
        for (w, part) in p.poly().by_weight(self.m_ring.weights()) {
            if w > degree_bound || w > self.max_weight() {
                return Err(Error::NotInImage(format!(
                    "weight {w} exceeds the a-basis bound {}",
                    degree_bound.min(self.max_weight())
                )));
            }
            let solver = self.solver(w)?;
            let mut rhs = vec![Q::zero(); solver.m_index.len()];
            for (m, q) in part.terms() {
                let idx = *solver.m_index.get(m).ok_or_else(|| {
                    Error::NotInImage(format!("monomial {m:?} outside the weight-{w} span"))
                })?;
                rhs[idx] = q.clone();
            }
            for (row, mono) in solver.inverse.iter().zip(&solver.a_monos) {
                let c: Q = row
                    .iter()
                    .zip(&rhs)
                    .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                    .map(|(x, y)| x * y)
                    .sum();
                if !c.is_integer() {
                    return Err(Error::Integrality {
                        context: "a-basis conversion".to_string(),
                        value: self.m_ring.render(p.poly()),
                    });
                }
                out.add_term(*mono, c);
            }
        }
        Ok(CoeffPoly::new(&self.a_ring, out))
    }

    fn solver(&self, w: u32) -> Result<Arc<WeightSolver>> {
        if let Some(s) = self.solvers.lock().unwrap().get(&w) {
            return Ok(s.clone());
        }
        let m_monos = weighted_monomials(self.m_ring.weights(), w);
        let a_monos = weighted_monomials(self.a_ring.weights(), w);
        let m_index: BTreeMap<Mono, usize> =
            m_monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let n = m_monos.len();
        if a_monos.len() != n {
            return Err(Error::NotInImage(format!("weight {w} exceeds the available generators")));
        }
        // Column j of the matrix: m-expansion of the j-th a-monomial.
        let mut mat = vec![vec![Q::zero(); n]; n];
        for (j, am) in a_monos.iter().enumerate() {
            let expanded = Poly::monomial(*am, Q::one()).substitute(&self.a_exprs);
            for (m, q) in expanded.terms() {
                let i = *m_index
                    .get(m)
                    .expect("a-monomial expansion leaves its weight");
                mat[i][j] = q.clone();
            }
        }
        let inverse = crate::linalg::invert(&mat)
            .ok_or_else(|| Error::Singular(format!("a-basis change in weight {w}")))?;
        let solver = Arc::new(WeightSolver { a_monos, m_index, inverse });
        self.solvers.lock().unwrap().insert(w, solver.clone());
        Ok(solver)
    }
}

/// All monomials of exact weight `w` for the given generator weights, in a
/// deterministic order.
pub fn weighted_monomials(weights: &[u32], w: u32) -> Vec<Mono> {
    fn rec(weights: &[u32], i: usize, left: u32, cur: &mut Mono, out: &mut Vec<Mono>) {
        if left == 0 {
            out.push(*cur);
            return;
        }
        if i == weights.len() {
            return;
        }
        let wi = weights[i];
        let mut e = 0u32;
        loop {
            if e * wi > left {
                break;
            }
            cur.0[i] = e as u8;
            rec(weights, i + 1, left - e * wi, cur, out);
            e += 1;
        }
        cur.0[i] = 0;
    }
    let mut out = Vec::new();
    let mut cur = Mono::ONE;
    rec(weights, 0, w, &mut cur, &mut out);
    out
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Coefficients `λ` with `Σ λ_i c_i = gcd(c)` from a left-to-right
/// extended-gcd fold.
pub fn gcd_fold(c: &[BigInt]) -> Vec<BigInt> {
    let mut lambdas: Vec<BigInt> = Vec::with_capacity(c.len());
    let mut g = BigInt::zero();
    for ci in c {
        let e = g.extended_gcd(ci);
        let (mut x, mut y, mut d) = (e.x, e.y, e.gcd);
        if d.is_negative() {
            x = -x;
            y = -y;
            d = -d;
        }
        for l in lambdas.iter_mut() {
            *l *= &x;
        }
        lambdas.push(y);
        g = d;
    }
    lambdas
}

pub fn q_to_i64(q: &Q) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Arc<CoeffRing> {
        CoeffRing::sequence("a", 5, false).unwrap()
    }

    #[test]
    fn integrality_errors_only_in_integral_mode() {
        let half = ring().parse("1/2*a1").unwrap();
        let err = ring().check_integral(&half, "probe").unwrap_err();
        assert!(matches!(err, Error::Integrality { .. }));
        let rational = CoeffRing::sequence("a", 5, true).unwrap();
        assert!(rational.check_integral(&half, "probe").is_ok());
    }

    #[test]
    fn additive_inverse_and_weights() {
        let r = ring();
        let a1 = CoeffPoly::gen(&r, "a1").unwrap();
        let a2 = CoeffPoly::gen(&r, "a2").unwrap();
        assert!(a1.add(&a1.neg()).unwrap().is_zero());
        assert_eq!(a1.mul(&a2).unwrap().weight(), Some(3));
        let s = a1.add(&a2).unwrap();
        let sq = s.mul(&s).unwrap();
        assert_eq!(sq, CoeffPoly::parse(&r, "a1^2 + 2*a1*a2 + a2^2").unwrap());
    }

    #[test]
    fn render_canonical_order() {
        let r = ring();
        let p = r.parse("a1^4 + 15*a1^2*a2 + 13*a2^2 + a1*a3 - 4*a4").unwrap();
        assert_eq!(r.render(&p), "-4*a4 + a1*a3 + 13*a2^2 + 15*a1^2*a2 + a1^4");
        let p = r.parse("a1^2 + 1 + 2*a2").unwrap();
        assert_eq!(r.render(&p), "1 + 2*a2 + a1^2");
        let p = r.parse("10*a3 - 10*a1*a2").unwrap();
        assert_eq!(r.render(&p), "10*a3 - 10*a1*a2");
        assert_eq!(r.render(&r.parse("-1/2*a1").unwrap()), "-1/2*a1");
        assert_eq!(r.render(&Poly::zero()), "0");
    }

    #[test]
    fn parse_rejects_garbage() {
        let r = ring();
        assert!(r.parse("a7").is_err());
        assert!(r.parse("").is_err());
        assert!(r.parse("a1 +").is_err());
        assert!(r.parse("1/0").is_err());
    }

    #[test]
    fn ring_validation() {
        assert!(CoeffRing::new([("a", 1), ("a", 2)], false).is_err());
        assert!(CoeffRing::new([("a", 0)], false).is_err());
    }

    #[test]
    fn specialize_examples() {
        let r = ring();
        let zero: BTreeMap<String, Q> = (1..=5).map(|i| (format!("a{i}"), Q::zero())).collect();
        let p = CoeffPoly::parse(&r, "2*a2 + a1^2").unwrap();
        assert!(p.specialize(&zero).unwrap().is_zero());
        let beta = q_frac(3, 2);
        let p = CoeffPoly::parse(&r, "a1").unwrap();
        let mut asg = BTreeMap::new();
        asg.insert("a1".to_string(), -beta.clone());
        assert_eq!(p.specialize(&asg).unwrap().poly().as_constant(), Some(-beta));
        let p = CoeffPoly::parse(&r, "a1^2 + a2").unwrap();
        assert!(matches!(p.specialize(&asg), Err(Error::MissingAssignment(_))));
    }

    #[test]
    fn gcd_fold_examples() {
        let c: Vec<BigInt> = [6, 15, 20].iter().map(|&x| BigInt::from(x)).collect();
        let l = gcd_fold(&c);
        let s: BigInt = l.iter().zip(&c).map(|(a, b)| a * b).sum();
        assert_eq!(s, BigInt::one());
        let c: Vec<BigInt> = [7, 21, 35].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(gcd_fold(&c), vec![BigInt::one(), BigInt::zero(), BigInt::zero()]);
    }

    #[test]
    fn weighted_monomial_counts() {
        let w: Vec<u32> = (1..=6).collect();
        let counts: Vec<usize> = (0..=6).map(|k| weighted_monomials(&w, k).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11]);
    }
}
