//! Switching: decompose `G` along a switching set `C`, replace every link
//! by its image under `R`, reassemble `H`, and certify `Qᵀ𝒜_G Q = 𝒜_H` for
//! `Q = R ⊕ I`.

mod families;
mod fixture_check;
pub mod random;

pub use families::{fano_switch, gm_switch, sun_switch, wqh_switch};
pub use fixture_check::{certify_fixture, verify_fixture, FixtureCertificate, MappingEntry};

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bkq::verify_membership;
use crate::catalog::{build, support, vq, CatalogError, SwitchFamily, VQ_DIMENSION_CAP};
use crate::hypergraph::{
    are_isomorphic, link_decompose, reassemble_links, Edge, Hypergraph, HypergraphError, Link,
    ISOMORPHISM_VERTEX_CAP,
};
use crate::numbers::{RatMatrix, Rational};
use crate::tensor::{certify_similarity, CertifyError, SimilarityCertificate};

/// One failed hypothesis, tied to the outside set `A` it concerns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    #[serde(rename = "A")]
    pub a: Vec<String>,
    pub rank: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SwitchError {
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("{} link(s) outside B^r_R, first at A = {:?}: {}", .0.len(), .0[0].a, .0[0].detail)]
    LinkNotInB(Vec<Violation>),
    #[error("{} hypothesis violation(s), first at A = {:?}: {}", .0.len(), .0[0].a, .0[0].detail)]
    Condition(Vec<Violation>),
    #[error("certification failed after switching: {0}")]
    CertificationFailed(CertifyError),
    #[error("fixture error: {0}")]
    Fixture(String),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

impl SwitchError {
    pub fn violations(&self) -> &[Violation] {
        match self {
            SwitchError::LinkNotInB(v) | SwitchError::Condition(v) => v,
            _ => &[],
        }
    }
}

/// A replaced link: `L^A` and its image `t(L^A)`, edges written with the
/// labels of `C`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Replacement {
    #[serde(rename = "A")]
    pub a: Vec<String>,
    pub rank: usize,
    pub link: Vec<Vec<String>>,
    pub image: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwitchCertificate {
    pub family: Option<SwitchFamily>,
    pub switching_set: Vec<String>,
    /// `Q` in the vertex order of `G`.
    pub q: RatMatrix,
    pub similarity: SimilarityCertificate,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub isomorphic: Option<bool>,
}

impl SwitchCertificate {
    /// Adds whether `G ≅ H`, when both are small enough to decide.
    pub fn with_isomorphism(mut self, g: &Hypergraph, h: &Hypergraph) -> Self {
        if g.n() <= ISOMORPHISM_VERTEX_CAP {
            self.isomorphic = are_isomorphic(g, h).ok().map(|m| m.is_some());
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwitchOutcome {
    #[serde(rename = "H")]
    pub h: Hypergraph,
    pub certificate: SwitchCertificate,
    pub replacements: Vec<Replacement>,
}

/// `R ⊕ I` written in the host vertex order: row `c[i]`, column `c[j]`
/// holds `R[i][j]`.
pub fn host_matrix(n: usize, c: &[usize], r: &RatMatrix) -> RatMatrix {
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in c.iter().enumerate() {
        pos[v] = i;
    }
    RatMatrix::from_fn(n, n, |u, v| match (pos[u], pos[v]) {
        (usize::MAX, usize::MAX) => {
            if u == v {
                Rational::from_integer(1.into())
            } else {
                Rational::from_integer(0.into())
            }
        }
        (usize::MAX, _) | (_, usize::MAX) => Rational::from_integer(0.into()),
        (i, j) => r.get(i, j).clone(),
    })
}

pub(crate) fn check_switching_set(g: &Hypergraph, c: &[usize], s: usize) -> Result<(), SwitchError> {
    if c.len() != s {
        return Err(SwitchError::SizeMismatch(format!("switching set has {} vertices, R is {s}x{s}", c.len())));
    }
    let distinct: BTreeSet<usize> = c.iter().copied().collect();
    if distinct.len() != c.len() || c.iter().any(|&v| v >= g.n()) {
        return Err(SwitchError::SizeMismatch("switching set must list distinct vertices of G".into()));
    }
    Ok(())
}

pub(crate) fn labels_of(g: &Hypergraph, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| g.label(v).to_string()).collect()
}

pub(crate) fn link_edges_labels(c_labels: &[String], edges: &BTreeSet<Edge>) -> Vec<Vec<String>> {
    edges.iter().map(|e| e.iter().map(|&i| c_labels[i].clone()).collect()).collect()
}

/// Certifies `(G, H)` under `R ⊕ I`; a failure here means the construction
/// was wrong, never that the input was.
pub(crate) fn certify(
    g: &Hypergraph,
    h: &Hypergraph,
    c: &[usize],
    r: &RatMatrix,
    family: Option<SwitchFamily>,
) -> Result<SwitchCertificate, SwitchError> {
    let q = host_matrix(g.n(), c, r);
    let similarity = certify_similarity(&q, g, h).map_err(SwitchError::CertificationFailed)?;
    Ok(SwitchCertificate {
        family,
        switching_set: labels_of(g, c),
        q,
        valid: similarity.is_valid(),
        similarity,
        isomorphic: None,
    })
}

/// Rank-1 images from `𝒱(R)`, keyed by the zero-one vector.
pub(crate) fn vq_map(r: &RatMatrix) -> Option<HashMap<Vec<bool>, Vec<bool>>> {
    if r.rows() > VQ_DIMENSION_CAP {
        return None;
    }
    Some(vq(r).ok()?.into_iter().map(|p| (p.v, p.image)).collect())
}

/// Image of a link under `R`, if the link lies in `B^r_R`.
pub(crate) fn link_image(
    r: &RatMatrix,
    link: &Hypergraph,
    rank1: Option<&HashMap<Vec<bool>, Vec<bool>>>,
) -> Option<BTreeSet<Edge>> {
    if link.is_empty() {
        return Some(BTreeSet::new());
    }
    if link.k() == 1 {
        if let Some(map) = rank1 {
            let mut v = vec![false; link.n()];
            for e in link.edges() {
                v[e[0]] = true;
            }
            let img = map.get(&v)?;
            return Some(support(img).into_iter().map(|i| vec![i]).collect());
        }
    }
    verify_membership(r, link).map(|t| t.edges().clone())
}

/// The generic switch with an explicit matrix. `c[i]` is the vertex matched
/// to row `i` of `R`.
pub fn switch_with_matrix(
    g: &Hypergraph,
    c: &[usize],
    r: &RatMatrix,
    family: Option<SwitchFamily>,
) -> Result<SwitchOutcome, SwitchError> {
    if !r.is_square() {
        return Err(SwitchError::SizeMismatch("R must be square".into()));
    }
    check_switching_set(g, c, r.rows())?;
    let table = link_decompose(g, c)?;
    let c_labels = labels_of(g, c);
    let rank1 = vq_map(r);
    let entries: Vec<(&Vec<usize>, &Link)> = table.entries().iter().collect();
    let images: Vec<Option<Link>> = entries
        .par_iter()
        .map(|(_, l)| match l {
            Link::Flag(b) => Some(Link::Flag(*b)),
            Link::Graph(h) => {
                let img = link_image(r, h, rank1.as_ref())?;
                Some(Link::Graph(h.with_edges(img).ok()?))
            }
        })
        .collect();

    let mut violations = Vec::new();
    let mut replacements = Vec::new();
    let mut new_links: BTreeMap<Vec<usize>, Link> = BTreeMap::new();
    for ((a, l), img) in entries.iter().zip(images) {
        match img {
            None => {
                let Link::Graph(h) = l else { unreachable!() };
                violations.push(Violation {
                    a: labels_of(g, a),
                    rank: h.k(),
                    detail: format!(
                        "link {:?} is not in B^{}_R",
                        link_edges_labels(&c_labels, h.edges()),
                        h.k()
                    ),
                });
            }
            Some(img) => {
                if let (Link::Graph(before), Link::Graph(after)) = (l, &img) {
                    if before.edges() != after.edges() {
                        replacements.push(Replacement {
                            a: labels_of(g, a),
                            rank: before.k(),
                            link: link_edges_labels(&c_labels, before.edges()),
                            image: link_edges_labels(&c_labels, after.edges()),
                        });
                    }
                }
                new_links.insert((*a).clone(), img);
            }
        }
    }
    if !violations.is_empty() {
        return Err(SwitchError::LinkNotInB(violations));
    }
    let edges = reassemble_links(c, new_links.iter().map(|(a, l)| (a.as_slice(), l)));
    let h = g.with_edges(edges)?;
    let certificate = certify(g, &h, c, r, family)?;
    Ok(SwitchOutcome { h, certificate, replacements })
}

/// The generic switch for a catalog family.
pub fn switch(g: &Hypergraph, c: &[usize], family: SwitchFamily) -> Result<SwitchOutcome, SwitchError> {
    let r = build(family)?;
    switch_with_matrix(g, c, &r, Some(family))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fano_fixture_switches_to_printed_h() {
        let fx = fixtures::switch_fixture("fano10").unwrap();
        let c = fx.g.resolve(&fx.switching_set).unwrap();
        let out = switch(&fx.g, &c, SwitchFamily::Fano).unwrap();
        assert_eq!(out.h, fx.h);
        assert!(out.certificate.valid);
    }

    #[test]
    fn edges_outside_c_are_fixed() {
        let labels = ["1", "2", "3", "4", "a", "b", "c", "d"];
        let g = Hypergraph::new(3, &labels, &[["a", "b", "c"], ["b", "c", "d"]]).unwrap();
        let c = g.resolve(&["1", "2", "3", "4"]).unwrap();
        let out = switch(&g, &c, SwitchFamily::Gm4).unwrap();
        assert_eq!(out.h, g);
        assert!(out.replacements.is_empty());
    }

    #[test]
    fn bad_links_are_all_reported() {
        let labels = ["1", "2", "3", "4", "x", "y"];
        let g = Hypergraph::new(2, &labels, &[["1", "x"], ["2", "y"]]).unwrap();
        let c = g.resolve(&["1", "2", "3", "4"]).unwrap();
        let err = switch(&g, &c, SwitchFamily::Gm4).unwrap_err();
        let v = err.violations();
        assert_eq!(v.len(), 2);
        assert_eq!(v[0].a, vec!["x"]);
        assert_eq!(v[1].a, vec!["y"]);
    }

    #[test]
    fn size_mismatch() {
        let g = Hypergraph::with_numbered_vertices(5, 2, vec![]).unwrap();
        assert!(matches!(switch(&g, &[0, 1, 2], SwitchFamily::Gm4), Err(SwitchError::SizeMismatch(_))));
    }
}
