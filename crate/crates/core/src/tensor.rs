//! Sparse symmetric tensors and their conjugation by a matrix.
//!
//! Only sorted index tuples are stored; the value at a sorted key stands for
//! every permutation of it. For `Q` and a symmetric `𝒜` the conjugate is
//!
//! ```text
//! (Q𝒜Qᵀ)_{i₁…i_k} = Σ_{j₁…j_k} a_{j₁…j_k} q_{i₁j₁} ⋯ q_{i_kj_k}
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::{arrangement_count, distinct_permutations, is_strictly_increasing, multisets};
use crate::hypergraph::{Hypergraph, HypergraphError};
use crate::numbers::{format_rational, parse_rational, Rational, RatMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("key {0:?} repeats an index; the permanent expansion needs square-free support")]
    RepeatedIndex(Vec<usize>),
    #[error("invalid key {0:?}")]
    InvalidKey(Vec<usize>),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Names the indeterminate `a(j₁,…,j_k)` of a generic symmetric tensor;
/// constructed from any ordering of the indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenericEntry(Vec<usize>);

impl GenericEntry {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        GenericEntry(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for GenericEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "a({})", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymTensor {
    k: usize,
    n: usize,
    entries: BTreeMap<Vec<usize>, Rational>,
}

impl SymTensor {
    pub fn zeros(k: usize, n: usize) -> Self {
        SymTensor { k, n, entries: BTreeMap::new() }
    }

    /// Builds a tensor from `(index tuple, value)` pairs in any index order.
    /// Values landing on the same sorted key are added.
    pub fn from_entries(
        k: usize,
        n: usize,
        entries: impl IntoIterator<Item = (Vec<usize>, Rational)>,
    ) -> Result<Self, TensorError> {
        let mut t = SymTensor::zeros(k, n);
        for (mut idx, v) in entries {
            if idx.len() != k || idx.iter().any(|&i| i >= n) {
                return Err(TensorError::InvalidKey(idx));
            }
            idx.sort_unstable();
            t.add_at(idx, v);
        }
        Ok(t)
    }

    fn add_at(&mut self, key: Vec<usize>, v: Rational) {
        if v.is_zero() {
            return;
        }
        let slot = self.entries.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += v;
        if slot.is_zero() {
            self.entries.remove(&key);
        }
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &BTreeMap<Vec<usize>, Rational> {
        &self.entries
    }

    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry at any ordering of `idx`.
    pub fn get(&self, idx: &[usize]) -> Rational {
        let mut key = idx.to_vec();
        key.sort_unstable();
        self.entries.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_square_free(&self) -> bool {
        self.entries.keys().all(|k| is_strictly_increasing(k))
    }

    pub fn scale(&self, s: &Rational) -> SymTensor {
        if s.is_zero() {
            return SymTensor::zeros(self.k, self.n);
        }
        SymTensor { k: self.k, n: self.n, entries: self.entries.iter().map(|(k, v)| (k.clone(), v * s)).collect() }
    }

    /// Sum of all `n^k` entries, counting every permutation of a stored key.
    pub fn total_sum(&self) -> Rational {
        self.entries
            .iter()
            .map(|(key, v)| v * Rational::from_integer(BigInt::from(arrangement_count(key))))
            .sum()
    }

    /// `(𝒜x)_i = Σ_{i₂…i_k} a_{i i₂…i_k} x_{i₂}⋯x_{i_k}`.
    pub fn apply<S>(&self, x: &[S]) -> Result<Vec<S>, TensorError>
    where
        S: Clone + Zero + One + From<Rational> + Add<Output = S> + Mul<Output = S>,
    {
        if x.len() != self.n {
            return Err(TensorError::DimensionMismatch(format!(
                "vector has length {}, tensor has dimension {}",
                x.len(),
                self.n
            )));
        }
        let mut out = vec![S::zero(); self.n];
        for (key, a) in &self.entries {
            let mut prev = None;
            for (pos, &i) in key.iter().enumerate() {
                if prev == Some(i) {
                    continue;
                }
                prev = Some(i);
                let rest: Vec<usize> = key[..pos].iter().chain(&key[pos + 1..]).copied().collect();
                let count = Rational::from_integer(BigInt::from(arrangement_count(&rest)));
                let mut term = S::from(a * count);
                for &j in &rest {
                    term = term * x[j].clone();
                }
                out[i] = out[i].clone() + term;
            }
        }
        Ok(out)
    }

    /// The hypergraph whose adjacency tensor this is, if any.
    pub fn as_adjacency(&self, labels: Vec<String>) -> Option<Hypergraph> {
        if labels.len() != self.n {
            return None;
        }
        for (key, v) in &self.entries {
            if !v.is_one() || !is_strictly_increasing(key) {
                return None;
            }
        }
        Hypergraph::from_indices(self.k, labels, self.entries.keys().cloned()).ok()
    }

    pub fn to_json(&self) -> TensorJson {
        TensorJson {
            k: self.k,
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|(idx, v)| TensorEntryJson { idx: idx.clone(), val: format_rational(v) })
                .collect(),
        }
    }

    pub fn from_json(j: &TensorJson) -> Result<Self, TensorError> {
        let mut entries = Vec::with_capacity(j.entries.len());
        for e in &j.entries {
            let v = parse_rational(&e.val).map_err(|err| TensorError::Parse(err.to_string()))?;
            entries.push((e.idx.clone(), v));
        }
        SymTensor::from_entries(j.k, j.n, entries)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorEntryJson {
    pub idx: Vec<usize>,
    pub val: String,
}

/// `{"k": .., "n": .., "entries": [{"idx": [..], "val": "p/q"}]}` with
/// zero-based sorted indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorJson {
    pub k: usize,
    pub n: usize,
    pub entries: Vec<TensorEntryJson>,
}

impl Serialize for SymTensor {
    fn serialize<Se: serde::Serializer>(&self, s: Se) -> Result<Se::Ok, Se::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymTensor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = TensorJson::deserialize(d)?;
        SymTensor::from_json(&j).map_err(serde::de::Error::custom)
    }
}

/// Entry 1 at every edge, unscaled.
pub fn adjacency_tensor(g: &Hypergraph) -> SymTensor {
    SymTensor {
        k: g.k(),
        n: g.n(),
        entries: g.edges().iter().map(|e| (e.clone(), Rational::one())).collect(),
    }
}

fn check_dims(q: &RatMatrix, t: &SymTensor) -> Result<(), TensorError> {
    if !q.is_square() || q.rows() != t.n {
        return Err(TensorError::DimensionMismatch(format!(
            "matrix is {}x{}, tensor has dimension {}",
            q.rows(),
            q.cols(),
            t.n
        )));
    }
    Ok(())
}

fn collect_output(k: usize, n: usize, values: Vec<(Vec<usize>, Rational)>) -> SymTensor {
    SymTensor { k, n, entries: values.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
}

/// `Q𝒜Qᵀ` by the defining sum: every output key against every ordering of
/// every support key.
pub fn conjugate(q: &RatMatrix, t: &SymTensor) -> Result<SymTensor, TensorError> {
    check_dims(q, t)?;
    let support: Vec<(Vec<Vec<usize>>, &Rational)> =
        t.entries.iter().map(|(key, v)| (distinct_permutations(key), v)).collect();
    let values: Vec<(Vec<usize>, Rational)> = multisets(t.n, t.k)
        .into_par_iter()
        .map(|out| {
            let mut acc = Rational::zero();
            for (perms, a) in &support {
                let mut s = Rational::zero();
                for p in perms {
                    let mut prod = Rational::one();
                    for (&i, &j) in out.iter().zip(p) {
                        let qij = q.get(i, j);
                        if qij.is_zero() {
                            prod = Rational::zero();
                            break;
                        }
                        prod *= qij;
                    }
                    s += prod;
                }
                acc += s * *a;
            }
            (out, acc)
        })
        .collect();
    Ok(collect_output(t.k, t.n, values))
}

/// `Q𝒜Qᵀ` for square-free support: the entry at `I` is
/// `Σ_J a_J · per(Q|_{I×J})` over support keys `J`.
pub fn conjugate_squarefree(q: &RatMatrix, t: &SymTensor) -> Result<SymTensor, TensorError> {
    check_dims(q, t)?;
    if let Some(bad) = t.entries.keys().find(|k| !is_strictly_increasing(k)) {
        return Err(TensorError::RepeatedIndex(bad.clone()));
    }
    let values: Vec<(Vec<usize>, Rational)> = multisets(t.n, t.k)
        .into_par_iter()
        .map(|out| {
            let mut acc = Rational::zero();
            for (key, a) in &t.entries {
                let p = q.submatrix(&out, key).permanent().expect("square submatrix");
                if !p.is_zero() {
                    acc += p * a;
                }
            }
            (out, acc)
        })
        .collect();
    Ok(collect_output(t.k, t.n, values))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("Q is not orthogonal: (QQᵀ)[{row}][{col}] = {value}")]
    NotOrthogonal { row: usize, col: usize, value: String },
    #[error("conjugation mismatch at {labels:?}: Qᵀ𝒜_G Q has {got}, 𝒜_H has {expected}")]
    Mismatch { idx: Vec<usize>, labels: Vec<String>, expected: String, got: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// Record of the two exact checks behind an orthogonal similarity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimilarityCertificate {
    pub n: usize,
    pub k: usize,
    pub orthogonal: bool,
    pub conjugation_equal: bool,
    pub edges_g: usize,
    pub edges_h: usize,
}

impl SimilarityCertificate {
    pub fn is_valid(&self) -> bool {
        self.orthogonal && self.conjugation_equal
    }
}

/// Checks `QQᵀ = I` and `Qᵀ𝒜_G Q = 𝒜_H` exactly.
pub fn certify_similarity(
    q: &RatMatrix,
    g: &Hypergraph,
    h: &Hypergraph,
) -> Result<SimilarityCertificate, CertifyError> {
    if g.n() != h.n() || g.k() != h.k() || !q.is_square() || q.rows() != g.n() {
        return Err(CertifyError::DimensionMismatch(format!(
            "Q is {}x{}, G has {} vertices (k={}), H has {} vertices (k={})",
            q.rows(),
            q.cols(),
            g.n(),
            g.k(),
            h.n(),
            h.k()
        )));
    }
    let qqt = q.mul(&q.transpose()).expect("square");
    for i in 0..q.rows() {
        for j in 0..q.rows() {
            let expect = if i == j { Rational::one() } else { Rational::zero() };
            if qqt.get(i, j) != &expect {
                return Err(CertifyError::NotOrthogonal { row: i, col: j, value: format_rational(qqt.get(i, j)) });
            }
        }
    }
    let image = conjugate(&q.transpose(), &adjacency_tensor(g)).expect("dimensions checked");
    let target = adjacency_tensor(h);
    if let Some(idx) = first_difference(&image, &target) {
        return Err(CertifyError::Mismatch {
            labels: idx.iter().map(|&v| h.label(v).to_string()).collect(),
            expected: format_rational(&target.get(&idx)),
            got: format_rational(&image.get(&idx)),
            idx,
        });
    }
    Ok(SimilarityCertificate {
        n: g.n(),
        k: g.k(),
        orthogonal: true,
        conjugation_equal: true,
        edges_g: g.edge_count(),
        edges_h: h.edge_count(),
    })
}

/// Least sorted key where the two tensors disagree.
pub fn first_difference(a: &SymTensor, b: &SymTensor) -> Option<Vec<usize>> {
    let mut keys: Vec<&Vec<usize>> = a.entries.keys().chain(b.entries.keys()).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter().find(|k| a.entries.get(*k) != b.entries.get(*k)).cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{int, rat, QuadExt};

    fn edge3() -> Hypergraph {
        Hypergraph::with_numbered_vertices(3, 3, vec![vec![0, 1, 2]]).unwrap()
    }

    fn gm4() -> RatMatrix {
        RatMatrix::from_int_rows(
            &[vec![-1, 1, 1, 1], vec![1, -1, 1, 1], vec![1, 1, -1, 1], vec![1, 1, 1, -1]],
            2,
        )
        .unwrap()
    }

    #[test]
    fn adjacency_examples() {
        let t = adjacency_tensor(&edge3());
        assert_eq!(t.support_size(), 1);
        assert_eq!(t.get(&[2, 0, 1]), int(1));
        let g1 = Hypergraph::with_numbered_vertices(4, 3, vec![vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let keys: Vec<_> = adjacency_tensor(&g1).entries().keys().cloned().collect();
        assert_eq!(keys, vec![vec![0, 1, 2], vec![1, 2, 3]]);
        assert!(adjacency_tensor(&Hypergraph::with_numbered_vertices(3, 3, vec![]).unwrap()).is_zero());
    }

    #[test]
    fn apply_examples() {
        let t = adjacency_tensor(&edge3());
        assert_eq!(t.apply(&[int(1), int(1), int(1)]).unwrap(), vec![int(2), int(2), int(2)]);
        assert_eq!(t.apply(&[int(0), int(0), int(0)]).unwrap(), vec![int(0); 3]);
        let g1 = Hypergraph::with_numbered_vertices(4, 3, vec![vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let x = vec![QuadExt::from(int(1)), QuadExt::zero(), QuadExt::zero(), QuadExt::i()];
        assert!(adjacency_tensor(&g1).apply(&x).unwrap().iter().all(Zero::is_zero));
        assert!(t.apply(&[int(1)]).is_err());
    }

    #[test]
    fn repeated_index_apply() {
        // a_{001} = 1: (𝒜x)_0 = 2·x0·x1, (𝒜x)_1 = x0².
        let t = SymTensor::from_entries(3, 2, vec![(vec![1, 0, 0], int(1))]).unwrap();
        assert_eq!(t.apply(&[int(3), int(5)]).unwrap(), vec![int(30), int(9)]);
        assert_eq!(t.total_sum(), int(3));
    }

    #[test]
    fn conjugate_identity_and_permutation() {
        let g = Hypergraph::with_numbered_vertices(4, 3, vec![vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let t = adjacency_tensor(&g);
        assert_eq!(conjugate(&RatMatrix::identity(4), &t).unwrap(), t);
        // P sends vertex j to perm[j]: P[perm[j]][j] = 1.
        let perm = [2, 0, 3, 1];
        let p = RatMatrix::from_fn(4, 4, |i, j| if perm[j] == i { int(1) } else { int(0) });
        let moved = conjugate(&p, &t).unwrap();
        assert_eq!(moved, adjacency_tensor(&g.map_vertices(&perm)));
    }

    #[test]
    fn squarefree_fast_path() {
        let e = Hypergraph::with_numbered_vertices(4, 2, vec![vec![0, 1]]).unwrap();
        let t = adjacency_tensor(&e);
        let fast = conjugate_squarefree(&gm4(), &t).unwrap();
        assert_eq!(fast, conjugate(&gm4(), &t).unwrap());
        for out in multisets(4, 2) {
            let p = gm4().submatrix(&out, &[0, 1]).permanent().unwrap();
            assert_eq!(fast.get(&out), p);
        }
        assert!(conjugate_squarefree(&gm4(), &SymTensor::zeros(2, 4)).unwrap().is_zero());
        let bad = SymTensor::from_entries(2, 4, vec![(vec![1, 1], int(1))]).unwrap();
        assert!(matches!(conjugate_squarefree(&gm4(), &bad), Err(TensorError::RepeatedIndex(_))));
    }

    #[test]
    fn as_adjacency_round_trip() {
        let g1 = Hypergraph::with_numbered_vertices(4, 3, vec![vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        assert_eq!(adjacency_tensor(&g1).as_adjacency(g1.labels().to_vec()), Some(g1.clone()));
        let half = SymTensor::from_entries(3, 4, vec![(vec![0, 1, 2], rat(1, 2))]).unwrap();
        assert_eq!(half.as_adjacency(g1.labels().to_vec()), None);
    }

    #[test]
    fn certify_examples() {
        let g = Hypergraph::with_numbered_vertices(4, 3, vec![vec![0, 1, 2]]).unwrap();
        let h = Hypergraph::with_numbered_vertices(4, 3, vec![vec![1, 2, 3]]).unwrap();
        assert!(certify_similarity(&RatMatrix::identity(4), &g, &g).unwrap().is_valid());
        match certify_similarity(&RatMatrix::identity(4), &g, &h) {
            Err(CertifyError::Mismatch { idx, .. }) => assert_eq!(idx, vec![0, 1, 2]),
            other => panic!("{other:?}"),
        }
        let j = RatMatrix::ones(4);
        assert!(matches!(certify_similarity(&j, &g, &g), Err(CertifyError::NotOrthogonal { .. })));
    }

    #[test]
    fn json_round_trip() {
        let t = SymTensor::from_entries(2, 3, vec![(vec![2, 0], rat(-1, 2)), (vec![1, 1], int(3))]).unwrap();
        let js = serde_json::to_value(&t).unwrap();
        assert_eq!(
            js,
            serde_json::json!({"k": 2, "n": 3, "entries": [{"idx": [0, 2], "val": "-1/2"}, {"idx": [1, 1], "val": "3"}]})
        );
        let back: SymTensor = serde_json::from_value(js).unwrap();
        assert_eq!(back, t);
        assert_eq!(GenericEntry::new(vec![2, 0, 1]).to_string(), "a(1,2,3)");
    }
}
