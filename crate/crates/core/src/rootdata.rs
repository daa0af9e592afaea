//! Root systems, Weyl groups and reduced words.
//!
//! Conventions: `cartan[i][j] = <α_i^∨, α_j>`; weights are written in
//! fundamental-weight coordinates, so `α_j` is column `j` of the Cartan
//! matrix.  Simple reflections are indexed from 0 in code and printed from 1.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_traits::{Signed, Zero};

use crate::coeffring::{q_int, Q};
use crate::error::{Error, Result};

/// Largest Weyl group that will be enumerated.
pub const MAX_WEYL_ORDER: usize = 100_000;

pub type Word = Vec<usize>;
pub type Matrix = Vec<Vec<i64>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    /// Lexicographically smallest reduced word.
    pub word: Word,
    pub length: usize,
    /// Action on weights in fundamental-weight coordinates.
    pub matrix: Matrix,
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    name: String,
    rank: usize,
    cartan: Matrix,
    simple_roots: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    positive_roots_simple: Vec<Vec<i64>>,
    elements: Vec<WeylElement>,
    index: HashMap<Matrix, usize>,
    simple_matrices: Vec<Matrix>,
}

impl RootDatum {
    /// Build from a type name such as `A2`, `B3`, `G2`.
    pub fn named(name: &str) -> Result<RootDatum> {
        let cartan = named_cartan(name)?;
        RootDatum::build(&name.to_ascii_uppercase(), cartan)
    }

    pub fn from_cartan(cartan: Matrix) -> Result<RootDatum> {
        RootDatum::build("custom", cartan)
    }

    /// Parse a JSON integer matrix.
    pub fn from_cartan_json(text: &str) -> Result<RootDatum> {
        let m: Matrix = serde_json::from_str(text)
            .map_err(|e| Error::InvalidCartan(format!("expected a JSON integer matrix: {e}")))?;
        RootDatum::from_cartan(m)
    }

    fn build(name: &str, cartan: Matrix) -> Result<RootDatum> {
        validate_cartan(&cartan)?;
        let rank = cartan.len();
        let simple_roots: Vec<Vec<i64>> =
            (0..rank).map(|j| (0..rank).map(|i| cartan[i][j]).collect()).collect();
        let simple_matrices: Vec<Matrix> = (0..rank)
            .map(|i| reflection_matrix(&cartan, i))
            .collect();
        let (elements, index) = enumerate_weyl(rank, &simple_matrices)?;
        let positive_roots_simple = positive_roots_in_simple_coords(&cartan)?;
        let positive_roots = positive_roots_simple
            .iter()
            .map(|c| (0..rank).map(|k| (0..rank).map(|j| cartan[k][j] * c[j]).sum()).collect())
            .collect();
        let rd = RootDatum {
            name: name.to_string(),
            rank,
            cartan,
            simple_roots,
            positive_roots,
            positive_roots_simple,
            elements,
            index,
            simple_matrices,
        };
        if rd.positive_roots.len() != rd.n_positive() {
            return Err(Error::InvalidCartan("root count disagrees with w0 length".into()));
        }
        Ok(rd)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &Matrix {
        &self.cartan
    }

    /// Simple root `α_i` in fundamental-weight coordinates.
    pub fn simple_root(&self, i: usize) -> &[i64] {
        &self.simple_roots[i]
    }

    /// Positive roots in fundamental-weight coordinates.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Positive roots as combinations of simple roots.
    pub fn positive_roots_simple_coords(&self) -> &[Vec<i64>] {
        &self.positive_roots_simple
    }

    /// Number of positive roots, the length of `w0`.
    pub fn n_positive(&self) -> usize {
        self.longest_element().length
    }

    /// All Weyl group elements, ordered by length then canonical word.
    pub fn weyl_elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, idx: usize) -> &WeylElement {
        &self.elements[idx]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn longest(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn longest_element(&self) -> &WeylElement {
        self.elements.last().unwrap()
    }

    /// Index of the element with this matrix.
    pub fn index_of_matrix(&self, m: &Matrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Index of the element `s_{i1} ⋯ s_{il}`.
    pub fn element_of_word(&self, word: &[usize]) -> usize {
        let mut m = identity_matrix(self.rank);
        for &i in word {
            m = mat_mul(&m, &self.simple_matrices[i]);
        }
        self.index[&m]
    }

    pub fn is_reduced(&self, word: &[usize]) -> bool {
        self.elements[self.element_of_word(word)].length == word.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&mat_mul(&self.elements[a].matrix, &self.elements[b].matrix)]
    }

    pub fn inverse(&self, a: usize) -> usize {
        let mut w = self.elements[a].word.clone();
        w.reverse();
        self.element_of_word(&w)
    }

    /// All reduced words of element `w`, sorted lexicographically.
    pub fn reduced_words(&self, w: usize) -> Vec<Word> {
        let mut memo: HashMap<usize, Vec<Word>> = HashMap::new();
        self.reduced_words_rec(w, &mut memo)
    }

    fn reduced_words_rec(&self, w: usize, memo: &mut HashMap<usize, Vec<Word>>) -> Vec<Word> {
        if let Some(v) = memo.get(&w) {
            return v.clone();
        }
        let len = self.elements[w].length;
        let out: Vec<Word> = if len == 0 {
            vec![vec![]]
        } else {
            let mut set = BTreeSet::new();
            for i in 0..self.rank {
                let ws = self.index[&mat_mul(&self.elements[w].matrix, &self.simple_matrices[i])];
                if self.elements[ws].length < len {
                    for mut word in self.reduced_words_rec(ws, memo) {
                        word.push(i);
                        set.insert(word);
                    }
                }
            }
            set.into_iter().collect()
        };
        memo.insert(w, out.clone());
        out
    }

    /// `s_i(λ) = λ - <α_i^∨, λ> α_i`.
    pub fn reflect(&self, i: usize, lambda: &[i64]) -> Vec<i64> {
        let c = lambda[i];
        lambda
            .iter()
            .zip(&self.simple_roots[i])
            .map(|(l, a)| l - c * a)
            .collect()
    }

    /// Action of element `w` on a weight.
    pub fn act(&self, w: usize, lambda: &[i64]) -> Vec<i64> {
        mat_vec(&self.elements[w].matrix, lambda)
    }

    /// Pairing `<β^∨, λ>` for a root `β` given in fundamental-weight coordinates.
    pub fn coroot_pairing(&self, beta: &[i64], lambda: &[i64]) -> Option<i64> {
        // Find w, i with w α_i = β; then <β^∨, λ> = <α_i^∨, w^{-1} λ>.
        for (w, el) in self.elements.iter().enumerate() {
            for i in 0..self.rank {
                if mat_vec(&el.matrix, &self.simple_roots[i]) == beta {
                    let winv = self.inverse(w);
                    return Some(self.act(winv, lambda)[i]);
                }
            }
        }
        None
    }

    /// Whether `l(s_i w) < l(w)`.
    pub fn is_left_descent(&self, i: usize, w: usize) -> bool {
        let m = mat_mul(&self.simple_matrices[i], &self.elements[w].matrix);
        self.elements[self.index[&m]].length < self.elements[w].length
    }

    /// Poincaré polynomial `Σ_w x^{l(w)}` as coefficient list.
    pub fn poincare_polynomial(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.n_positive() + 1];
        for e in &self.elements {
            out[e.length] += 1;
        }
        out
    }
}

/// Render a word as `121` (or `1,2,10` when some index exceeds 9).
pub fn word_string(word: &[usize]) -> String {
    if word.iter().all(|&i| i < 9) {
        word.iter().map(|i| char::from(b'1' + *i as u8)).collect()
    } else {
        word.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Parse `121` or `1,2,1` (1-based) into a 0-based word.
pub fn parse_word(s: &str, rank: usize) -> Result<Word> {
    let s = s.trim();
    if s.is_empty() || s == "-" {
        return Ok(vec![]);
    }
    let parts: Vec<&str> = if s.contains(',') {
        s.split(',').map(str::trim).collect()
    } else {
        s.split("").filter(|p| !p.is_empty()).collect()
    };
    parts
        .into_iter()
        .map(|p| {
            let i: usize = p
                .parse()
                .map_err(|_| Error::Invalid(format!("bad letter `{p}` in word `{s}`")))?;
            if i == 0 || i > rank {
                return Err(Error::Invalid(format!("letter {i} out of range 1..={rank}")));
            }
            Ok(i - 1)
        })
        .collect()
}

pub fn identity_matrix(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

fn reflection_matrix(cartan: &Matrix, i: usize) -> Matrix {
    let n = cartan.len();
    // Column k is s_i(ω_k) = ω_k - δ_ik α_i.
    let mut m = identity_matrix(n);
    for r in 0..n {
        m[r][i] -= cartan[r][i];
    }
    m
}

fn enumerate_weyl(
    rank: usize,
    gens: &[Matrix],
) -> Result<(Vec<WeylElement>, HashMap<Matrix, usize>)> {
    let mut elements = vec![WeylElement {
        word: vec![],
        length: 0,
        matrix: identity_matrix(rank),
    }];
    let mut index: HashMap<Matrix, usize> = HashMap::new();
    index.insert(identity_matrix(rank), 0);
    let mut level_start = 0;
    loop {
        let level_end = elements.len();
        for idx in level_start..level_end {
            for (i, g) in gens.iter().enumerate() {
                let m = mat_mul(&elements[idx].matrix, g);
                if index.contains_key(&m) {
                    continue;
                }
                let mut word = elements[idx].word.clone();
                word.push(i);
                index.insert(m.clone(), elements.len());
                elements.push(WeylElement {
                    length: word.len(),
                    word,
                    matrix: m,
                });
                if elements.len() > MAX_WEYL_ORDER {
                    return Err(Error::Invalid(format!(
                        "Weyl group has more than {MAX_WEYL_ORDER} elements"
                    )));
                }
            }
        }
        if elements.len() == level_end {
            break;
        }
        level_start = level_end;
    }
    Ok((elements, index))
}

fn positive_roots_in_simple_coords(cartan: &Matrix) -> Result<Vec<Vec<i64>>> {
    let n = cartan.len();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
            let mut img = beta.clone();
            img[i] -= pairing;
            if img.iter().all(|&c| c >= 0) && seen.insert(img.clone()) {
                if seen.len() > 10_000 {
                    return Err(Error::InvalidCartan("root system is not finite".into()));
                }
                queue.push_back(img);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
    roots.sort_by_key(|r| (r.iter().sum::<i64>(), std::cmp::Reverse(r.clone())));
    Ok(roots)
}

fn validate_cartan(c: &Matrix) -> Result<()> {
    let n = c.len();
    if n == 0 {
        return Err(Error::InvalidCartan("empty matrix".into()));
    }
    if n > crate::tseries::MAX_VARS {
        return Err(Error::InvalidCartan(format!(
            "rank {n} exceeds the supported maximum {}",
            crate::tseries::MAX_VARS
        )));
    }
    for (i, row) in c.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidCartan("matrix is not square".into()));
        }
        if row[i] != 2 {
            return Err(Error::InvalidCartan(format!("diagonal entry {} is not 2", i + 1)));
        }
        for j in 0..n {
            if i != j && (row[j] > 0 || (row[j] == 0) != (c[j][i] == 0)) {
                return Err(Error::InvalidCartan(format!("bad off-diagonal entry ({},{})", i + 1, j + 1)));
            }
        }
    }
    // Symmetrize: d_i c_ij = d_j c_ji, then test positive definiteness.
    let mut d: Vec<Option<Q>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(q_int(1));
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i == j || c[i][j] == 0 {
                    continue;
                }
                let dj = d[i].clone().unwrap() * q_int(c[i][j]) / q_int(c[j][i]);
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(x) if *x != dj => {
                        return Err(Error::InvalidCartan("matrix is not symmetrizable".into()));
                    }
                    _ => {}
                }
            }
        }
    }
    let sym: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| d[i].clone().unwrap() * q_int(c[i][j])).collect())
        .collect();
    for k in 1..=n {
        let minor: Vec<Vec<Q>> = sym[..k].iter().map(|r| r[..k].to_vec()).collect();
        if !determinant(minor).is_positive() {
            return Err(Error::InvalidCartan("matrix is not of finite type".into()));
        }
    }
    Ok(())
}

fn determinant(mut a: Vec<Vec<Q>>) -> Q {
    let n = a.len();
    let mut det = q_int(1);
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return q_int(0);
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det *= a[col][col].clone();
        for r in col + 1..n {
            let f = a[r][col].clone() / a[col][col].clone();
            for k in col..n {
                let v = &f * &a[col][k];
                a[r][k] -= v;
            }
        }
    }
    det
}

fn named_cartan(name: &str) -> Result<Matrix> {
    let name = name.trim().to_ascii_uppercase();
    let bad = || Error::Invalid(format!("unknown root system type `{name}`"));
    let (kind, rank) = name.split_at(1);
    let n: usize = rank.parse().map_err(|_| bad())?;
    let mut c = identity_matrix(n);
    for row in c.iter_mut() {
        for x in row.iter_mut() {
            *x *= 2;
        }
    }
    let mut link = |i: usize, j: usize, cij: i64, cji: i64| {
        c[i][j] = cij;
        c[j][i] = cji;
    };
    match (kind, n) {
        ("A", 1..) => {
            for i in 0..n.saturating_sub(1) {
                link(i, i + 1, -1, -1);
            }
        }
        ("B", 2..) | ("C", 2..) => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            if kind == "B" {
                // α_n short.
                link(n - 2, n - 1, -1, -2);
            } else {
                link(n - 2, n - 1, -2, -1);
            }
        }
        ("D", 3..) => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            link(n - 3, n - 1, -1, -1);
        }
        ("E", 6..=8) => {
            // Bourbaki labeling: 1-3-4-5-6(-7-8), 2 attached to 4.
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            for i in 2..n - 1 {
                link(i, i + 1, -1, -1);
            }
        }
        ("F", 4) => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        ("G", 2) => {
            // α_1 short, α_2 long.
            link(0, 1, -3, -1);
        }
        _ => return Err(bad()),
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_lengths() {
        let a2 = RootDatum::named("A2").unwrap();
        assert_eq!(a2.cartan(), &vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(a2.n_positive(), 3);
        let lengths: Vec<usize> = a2.weyl_elements().iter().map(|e| e.length).collect();
        assert_eq!(lengths, vec![0, 1, 1, 2, 2, 3]);
        assert_eq!(RootDatum::named("B2").unwrap().order(), 8);
        let g2 = RootDatum::named("G2").unwrap();
        assert_eq!(g2.order(), 12);
        assert_eq!(g2.longest_element().word, vec![0, 1, 0, 1, 0, 1]);
        assert_eq!(RootDatum::named("A1").unwrap().n_positive(), 1);
        assert_eq!(RootDatum::named("F4").unwrap().order(), 1152);
    }

    #[test]
    fn reduced_words_rank2() {
        let a2 = RootDatum::named("A2").unwrap();
        assert_eq!(a2.reduced_words(a2.longest()), vec![vec![0, 1, 0], vec![1, 0, 1]]);
        assert_eq!(a2.reduced_words(0), vec![Vec::<usize>::new()]);
        let b2 = RootDatum::named("B2").unwrap();
        assert_eq!(b2.reduced_words(b2.longest()), vec![vec![0, 1, 0, 1], vec![1, 0, 1, 0]]);
    }

    #[test]
    fn reflections() {
        let a2 = RootDatum::named("A2").unwrap();
        assert_eq!(a2.reflect(0, &[1, 0]), vec![-1, 1]);
        assert_eq!(a2.reflect(0, &[0, 1]), vec![0, 1]);
        for lam in [[3, -2], [0, 5], [-1, -1]] {
            assert_eq!(a2.reflect(1, &a2.reflect(1, &lam)), lam.to_vec());
        }
        for i in 0..2 {
            let a = a2.simple_root(i).to_vec();
            assert_eq!(a2.reflect(i, &a), a.iter().map(|x| -x).collect::<Vec<_>>());
        }
    }

    #[test]
    fn rejects_bad_cartan() {
        assert!(RootDatum::from_cartan(vec![vec![2, -1], vec![-1, 3]]).is_err());
        assert!(RootDatum::from_cartan(vec![vec![2, -2], vec![-2, 2]]).is_err());
        assert!(RootDatum::from_cartan(vec![vec![2, -1], vec![0, 2]]).is_err());
        assert!(RootDatum::from_cartan_json("[[2,-1],[-1,2]]").is_ok());
        assert!(RootDatum::named("X3").is_err());
    }

    #[test]
    fn words_roundtrip() {
        assert_eq!(parse_word("1,2,1", 2).unwrap(), vec![0, 1, 0]);
        assert_eq!(parse_word("212", 2).unwrap(), vec![1, 0, 1]);
        assert!(parse_word("3", 2).is_err());
        assert_eq!(word_string(&[0, 1, 0]), "121");
    }
}
