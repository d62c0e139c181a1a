//! k-uniform hypergraphs on labeled vertices.
//!
//! Vertices are indices `0..n` with a parallel list of distinct string
//! labels. Edges are stored sorted and the edge set is kept in lexicographic
//! order, so two hypergraphs with the same labels compare equal exactly when
//! their edge sets agree.

mod link;
mod structure;

pub use link::{link, link_decompose, reassemble_links, Link, LinkTable};
pub use structure::{
    are_isomorphic, components, find_forbidden_pattern, forbidden_patterns, is_complete, mapped_edges, ForbiddenPattern,
    PatternEmbedding, ISOMORPHISM_VERTEX_CAP,
};

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A sorted list of distinct vertex indices.
pub type Edge = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("rank must be at least 1")]
    RankZero,
    #[error("edge {edge:?} has {got} vertices, expected {expected}")]
    WrongEdgeSize { edge: Vec<String>, got: usize, expected: usize },
    #[error("edge {0:?} repeats a vertex")]
    RepeatedVertex(Vec<String>),
    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),
    #[error("vertex index {index} out of range for {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
    #[error("vertex sets overlap: {0:?}")]
    Overlap(Vec<String>),
    #[error("{size} vertices exceed the cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("hypergraphs are incompatible: {0}")]
    Incompatible(String),
    #[error("operation requires rank {expected}, got {got}")]
    WrongRank { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    k: usize,
    labels: Vec<String>,
    edges: BTreeSet<Edge>,
}

impl Hypergraph {
    /// Builds a hypergraph from edges given as vertex indices. Each edge is
    /// sorted; duplicate edges collapse.
    pub fn from_indices(
        k: usize,
        labels: Vec<String>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self, HypergraphError> {
        if k == 0 {
            return Err(HypergraphError::RankZero);
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(HypergraphError::DuplicateLabel(l.clone()));
            }
        }
        let n = labels.len();
        let mut set = BTreeSet::new();
        for mut e in edges {
            if let Some(&bad) = e.iter().find(|&&v| v >= n) {
                return Err(HypergraphError::IndexOutOfRange { index: bad, n });
            }
            let names = |e: &[usize]| e.iter().map(|&v| labels[v].clone()).collect::<Vec<_>>();
            if e.len() != k {
                return Err(HypergraphError::WrongEdgeSize { edge: names(&e), got: e.len(), expected: k });
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(HypergraphError::RepeatedVertex(names(&e)));
            }
            set.insert(e);
        }
        Ok(Hypergraph { k, labels, edges: set })
    }

    /// Builds a hypergraph from edges written with vertex labels.
    pub fn new<L: AsRef<str>, M: AsRef<str>, E: AsRef<[M]>>(
        k: usize,
        labels: &[L],
        edges: &[E],
    ) -> Result<Self, HypergraphError> {
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        let index = label_index(&labels)?;
        let mut idx_edges = Vec::with_capacity(edges.len());
        for e in edges {
            let e = e.as_ref();
            let mut v = Vec::with_capacity(e.len());
            for l in e {
                let l = l.as_ref();
                v.push(*index.get(l).ok_or_else(|| HypergraphError::UnknownLabel(l.to_string()))?);
            }
            idx_edges.push(v);
        }
        Self::from_indices(k, labels, idx_edges)
    }

    /// Vertices labeled `"1"`, …, `"n"`.
    pub fn with_numbered_vertices(
        n: usize,
        k: usize,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self, HypergraphError> {
        Self::from_indices(k, numbered_labels(n), edges)
    }

    pub fn empty(k: usize, labels: Vec<String>) -> Result<Self, HypergraphError> {
        Self::from_indices(k, labels, std::iter::empty())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `edge` must be sorted.
    pub fn has_edge(&self, edge: &[usize]) -> bool {
        self.edges.contains(edge)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Resolves labels to indices, rejecting unknown or repeated labels.
    pub fn resolve<L: AsRef<str>>(&self, labels: &[L]) -> Result<Vec<usize>, HypergraphError> {
        let mut out = Vec::with_capacity(labels.len());
        for l in labels {
            let l = l.as_ref();
            let v = self.index_of(l).ok_or_else(|| HypergraphError::UnknownLabel(l.to_string()))?;
            if out.contains(&v) {
                return Err(HypergraphError::DuplicateLabel(l.to_string()));
            }
            out.push(v);
        }
        Ok(out)
    }

    pub fn edge_labels(&self, edge: &[usize]) -> Vec<String> {
        edge.iter().map(|&v| self.labels[v].clone()).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(&v)).count()
    }

    /// `Γ(A) = { x : A ∪ {x} ∈ E }` for a set `A` of `k − 1` vertices.
    pub fn neighbourhood(&self, a: &[usize]) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for e in &self.edges {
            if a.iter().all(|v| e.contains(v)) {
                let rest: Vec<usize> = e.iter().copied().filter(|v| !a.contains(v)).collect();
                if rest.len() == 1 {
                    out.insert(rest[0]);
                }
            }
        }
        out
    }

    /// Induced sub-hypergraph on `vertices`; vertex `i` of the result is
    /// `vertices[i]` and keeps its label.
    pub fn induced(&self, vertices: &[usize]) -> Hypergraph {
        let pos: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|e| e.iter().map(|v| pos.get(v).copied()).collect::<Option<Vec<_>>>());
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        Hypergraph::from_indices(self.k, labels, edges).expect("induced edges are valid")
    }

    /// The same hypergraph with its vertices listed in a different order:
    /// new vertex `i` is old vertex `order[i]`.
    pub fn reorder(&self, order: &[usize]) -> Hypergraph {
        assert_eq!(order.len(), self.n(), "reorder needs a full permutation");
        self.induced(order)
    }

    /// Moves the structure along `perm` (old vertex `v` becomes `perm[v]`)
    /// while leaving the label list in place.
    pub fn map_vertices(&self, perm: &[usize]) -> Hypergraph {
        assert_eq!(perm.len(), self.n());
        let edges = self.edges.iter().map(|e| e.iter().map(|&v| perm[v]).collect());
        Hypergraph::from_indices(self.k, self.labels.clone(), edges).expect("permuted edges are valid")
    }

    /// Same vertex set and rank, different edge set.
    pub fn with_edges(&self, edges: impl IntoIterator<Item = Edge>) -> Result<Hypergraph, HypergraphError> {
        Hypergraph::from_indices(self.k, self.labels.clone(), edges)
    }

    /// Checks that `other` lives on the same labeled vertex set with the
    /// same rank.
    pub fn same_shape(&self, other: &Hypergraph) -> bool {
        self.k == other.k && self.labels == other.labels
    }

    pub fn to_json(&self) -> HypergraphJson {
        HypergraphJson {
            k: self.k,
            labels: self.labels.clone(),
            edges: self.edges.iter().map(|e| self.edge_labels(e)).collect(),
        }
    }

    /// Compact text form `k; a,b,c; b,c,d; ...`. Labels are taken in order
    /// of first appearance, so isolated vertices cannot be expressed.
    pub fn parse_text(s: &str) -> Result<Self, HypergraphError> {
        let mut parts = s.split(';').map(str::trim);
        let k: usize = parts
            .next()
            .filter(|p| !p.is_empty())
            .ok_or_else(|| HypergraphError::Parse("missing rank".into()))?
            .parse()
            .map_err(|_| HypergraphError::Parse("rank is not an integer".into()))?;
        let mut labels: Vec<String> = Vec::new();
        let mut edges = Vec::new();
        for p in parts.filter(|p| !p.is_empty()) {
            let e: Vec<String> = p.split(',').map(|l| l.trim().to_string()).collect();
            if e.iter().any(String::is_empty) {
                return Err(HypergraphError::Parse(format!("empty label in edge {p:?}")));
            }
            for l in &e {
                if !labels.contains(l) {
                    labels.push(l.clone());
                }
            }
            edges.push(e);
        }
        Hypergraph::new(k, &labels, &edges)
    }

    /// Accepts canonical JSON or the compact text form.
    pub fn parse(s: &str) -> Result<Self, HypergraphError> {
        if s.trim_start().starts_with('{') {
            serde_json::from_str(s).map_err(|e| HypergraphError::Parse(e.to_string()))
        } else {
            Self::parse_text(s)
        }
    }
}

impl PartialOrd for Hypergraph {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Hypergraph {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.k(), self.labels(), self.edges()).cmp(&(other.k(), other.labels(), other.edges()))
    }
}

pub fn numbered_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn label_index(labels: &[String]) -> Result<HashMap<&str, usize>, HypergraphError> {
    let mut m = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if m.insert(l.as_str(), i).is_some() {
            return Err(HypergraphError::DuplicateLabel(l.clone()));
        }
    }
    Ok(m)
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph(k={}, V={:?}, E=[", self.k, self.labels)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.edge_labels(e).join(","))?;
        }
        write!(f, "])")
    }
}

/// Canonical JSON form: `{"k": 3, "labels": [...], "edges": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphJson {
    pub k: usize,
    pub labels: Vec<String>,
    pub edges: Vec<Vec<String>>,
}

impl TryFrom<HypergraphJson> for Hypergraph {
    type Error = HypergraphError;
    fn try_from(j: HypergraphJson) -> Result<Self, HypergraphError> {
        Hypergraph::new(j.k, &j.labels, &j.edges)
    }
}

impl Serialize for Hypergraph {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Hypergraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = HypergraphJson::deserialize(d)?;
        Hypergraph::try_from(j).map_err(serde::de::Error::custom)
    }
}
