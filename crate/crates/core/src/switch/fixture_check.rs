//! Certifying the fixture pairs, including the search for the matching
//! between the printed labels of `C` and the rows of `R`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{certify, link_image, vq_map, SwitchCertificate, SwitchError};
use crate::catalog::{build, SwitchFamily};
use crate::fixtures::{switch_fixture, SwitchFixture};
use crate::hypergraph::{link_decompose, Hypergraph, Link};
use crate::numbers::RatMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingEntry {
    pub label: String,
    pub row: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureCertificate {
    pub name: String,
    pub family: SwitchFamily,
    /// Which row of `R` each vertex of `C` takes, in row order.
    pub mapping: Vec<MappingEntry>,
    /// Whether the printed label order already works.
    pub natural_order: bool,
    pub candidates_tried: usize,
    pub certificate: SwitchCertificate,
}

/// Label-to-row maps to try, natural order first. For the sun family these
/// are rotations, reflections and in-block swaps of the rows; for the Fano
/// and cube families every permutation.
fn candidates(family: SwitchFamily, s: usize) -> Box<dyn Iterator<Item = Vec<usize>>> {
    match family {
        SwitchFamily::Sg(_) => {
            let m = s / 2;
            Box::new((0..s).flat_map(move |t| {
                [false, true].into_iter().flat_map(move |refl| {
                    (0u32..1 << m).map(move |mask| {
                        (0..s)
                            .map(|j| {
                                let j = if mask & (1 << (j / 2)) != 0 { j ^ 1 } else { j };
                                let j = if refl { s - 1 - j } else { j };
                                (j + t) % s
                            })
                            .collect()
                    })
                })
            }))
        }
        SwitchFamily::Fano | SwitchFamily::Cube => Box::new(Permutations::new(s)),
        _ => Box::new(std::iter::once((0..s).collect())),
    }
}

/// Lexicographic permutations of `0..n`.
struct Permutations {
    next: Option<Vec<usize>>,
}

impl Permutations {
    fn new(n: usize) -> Self {
        Permutations { next: Some((0..n).collect()) }
    }
}

impl Iterator for Permutations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.take()?;
        let mut p = cur.clone();
        if let Some(i) = (0..p.len().saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) {
            let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).expect("successor exists");
            p.swap(i, j);
            p[i + 1..].reverse();
            self.next = Some(p);
        }
        Some(cur)
    }
}

/// Cheap necessary test: every link of `G` maps onto the link of `H` at the
/// same `A`.
fn links_match(g: &Hypergraph, h: &Hypergraph, c: &[usize], r: &RatMatrix, rank1: Option<&HashMap<Vec<bool>, Vec<bool>>>) -> bool {
    let (Ok(tg), Ok(th)) = (link_decompose(g, c), link_decompose(h, c)) else {
        return false;
    };
    let keys = tg.entries().keys().chain(th.entries().keys());
    for a in keys {
        let (lg, lh) = (tg.get(a), th.get(a));
        let ok = match (lg, lh) {
            (Some(Link::Flag(x)), Some(Link::Flag(y))) => x == y,
            (Some(Link::Graph(x)), Some(Link::Graph(y))) => link_image(r, x, rank1).as_ref() == Some(y.edges()),
            (Some(l), None) | (None, Some(l)) => l.is_empty(),
            _ => false,
        };
        if !ok {
            return false;
        }
    }
    true
}

pub fn certify_fixture(fx: &SwitchFixture) -> Result<FixtureCertificate, SwitchError> {
    let r = build(fx.family)?;
    let base = fx.g.resolve(&fx.switching_set)?;
    let s = base.len();
    if s != r.rows() {
        return Err(SwitchError::SizeMismatch(format!("fixture has {s} switching vertices, R is {}", r.rows())));
    }
    let rank1 = vq_map(&r);
    let mut tried = 0;
    for rho in candidates(fx.family, s) {
        tried += 1;
        // label at printed position j goes to row rho[j]
        let mut c = vec![0; s];
        for (j, &row) in rho.iter().enumerate() {
            c[row] = base[j];
        }
        if !links_match(&fx.g, &fx.h, &c, &r, rank1.as_ref()) {
            continue;
        }
        let certificate = certify(&fx.g, &fx.h, &c, &r, Some(fx.family))?;
        let mapping =
            c.iter().enumerate().map(|(row, &v)| MappingEntry { label: fx.g.label(v).to_string(), row }).collect();
        return Ok(FixtureCertificate {
            name: fx.name.clone(),
            family: fx.family,
            mapping,
            natural_order: tried == 1,
            candidates_tried: tried,
            certificate,
        });
    }
    Err(SwitchError::Fixture(format!("no admissible matching of C to the rows of R among {tried} candidates")))
}

/// Certifies a named fixture pair.
pub fn verify_fixture(name: &str) -> Result<FixtureCertificate, SwitchError> {
    let fx = switch_fixture(name).ok_or_else(|| SwitchError::Fixture(format!("unknown fixture {name:?}")))?;
    certify_fixture(&fx)
}
