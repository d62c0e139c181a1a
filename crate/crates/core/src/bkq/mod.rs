//! Enumeration of `B^k_R`: the k-uniform hypergraphs `G` on the switching
//! set whose conjugate `Rᵀ𝒜_G R` is again an adjacency tensor.

mod prop4;
mod search;

pub use prop4::{reproduce_prop4, Prop4Part, Prop4Report};

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{vq, CatalogError};
use crate::hypergraph::{numbered_labels, Hypergraph};
use crate::numbers::RatMatrix;
use crate::tensor::{adjacency_tensor, conjugate};
use search::{dfs, frontier, Shared, State, System};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BkqError {
    #[error("search budget of {budget} nodes exhausted after {nodes} nodes; {partial} pairs found so far")]
    BudgetExhausted { budget: u64, nodes: u64, partial: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// A member `G` of `B^k_R` and its image `t(G)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BkqPair {
    #[serde(rename = "G")]
    pub g: Hypergraph,
    #[serde(rename = "tG")]
    pub tg: Hypergraph,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BkqOptions {
    /// Upper bound on search nodes; exceeding it is an error.
    pub budget_nodes: Option<u64>,
    /// Restrict to one representative per orbit of the automorphism group
    /// of `R`, then close the result under the group.
    pub symmetry: bool,
    /// Interval pruning; without it every leaf is checked.
    pub prune: bool,
    pub parallel: bool,
}

impl Default for BkqOptions {
    fn default() -> Self {
        BkqOptions { budget_nodes: None, symmetry: true, prune: true, parallel: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BkqReport {
    pub pairs: Vec<BkqPair>,
    pub nodes: u64,
    pub group_order: usize,
}

/// `t(G)` when `Rᵀ𝒜_G R` is an adjacency tensor, computed by direct
/// conjugation.
pub fn verify_membership(r: &RatMatrix, g: &Hypergraph) -> Option<Hypergraph> {
    if !r.is_square() || r.rows() != g.n() {
        return None;
    }
    let image = conjugate(&r.transpose(), &adjacency_tensor(g)).ok()?;
    image.as_adjacency(g.labels().to_vec())
}

/// Permutations `σ` with `R[σ(i)][σ(j)] = R[i][j]` for all `i, j`.
pub fn automorphisms(r: &RatMatrix) -> Vec<Vec<usize>> {
    let s = r.rows();
    let mut out = Vec::new();
    let mut sigma = vec![usize::MAX; s];
    let mut used = vec![false; s];
    fn go(r: &RatMatrix, i: usize, sigma: &mut [usize], used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let s = sigma.len();
        if i == s {
            out.push(sigma.to_vec());
            return;
        }
        for c in 0..s {
            if used[c] {
                continue;
            }
            sigma[i] = c;
            let ok = (0..=i).all(|j| {
                r.get(sigma[i], sigma[j]) == r.get(i, j) && r.get(sigma[j], sigma[i]) == r.get(j, i)
            });
            if ok {
                used[c] = true;
                go(r, i + 1, sigma, used, out);
                used[c] = false;
            }
        }
        sigma[i] = usize::MAX;
    }
    go(r, 0, &mut sigma, &mut used, &mut out);
    out
}

fn permute_edges(g: &Hypergraph, sigma: &[usize]) -> Hypergraph {
    g.map_vertices(sigma)
}

fn edge_index(vars: &[Vec<usize>]) -> BTreeMap<Vec<usize>, usize> {
    vars.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect()
}

/// Orbits of the variables (k-subsets) under the group, each sorted, in order
/// of least member.
fn variable_orbits(vars: &[Vec<usize>], group: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let index = edge_index(vars);
    let mut seen = vec![false; vars.len()];
    let mut orbits = Vec::new();
    for v in 0..vars.len() {
        if seen[v] {
            continue;
        }
        let mut orbit = BTreeSet::new();
        for sigma in group {
            let mut img: Vec<usize> = vars[v].iter().map(|&x| sigma[x]).collect();
            img.sort_unstable();
            orbit.insert(index[&img]);
        }
        for &w in &orbit {
            seen[w] = true;
        }
        orbits.push(orbit.into_iter().collect());
    }
    orbits
}

/// All pairs `(G, t(G))` with `G ∈ B^k_R`, sorted. `k = 1` is answered by
/// the `𝒱(R)` scan.
pub fn enumerate_bkq(r: &RatMatrix, k: usize, opts: &BkqOptions) -> Result<BkqReport, BkqError> {
    if k == 0 {
        return Err(BkqError::Invalid("k must be at least 1".into()));
    }
    if !r.is_square() {
        return Err(BkqError::Invalid("R must be square".into()));
    }
    let s = r.rows();
    let labels = numbered_labels(s);
    let group = if opts.symmetry { automorphisms(r) } else { vec![(0..s).collect()] };
    if k == 1 {
        let pairs = vq(r)?
            .into_iter()
            .map(|p| {
                let as_graph = |sup: Vec<usize>| {
                    Hypergraph::from_indices(1, labels.clone(), sup.into_iter().map(|v| vec![v])).unwrap()
                };
                BkqPair { g: as_graph(p.support()), tg: as_graph(p.image_support()) }
            })
            .collect();
        return Ok(BkqReport { pairs, nodes: 1 << s, group_order: group.len() });
    }
    let empty = Hypergraph::empty(k, labels.clone()).unwrap();
    if k > s {
        return Ok(BkqReport { pairs: vec![BkqPair { g: empty.clone(), tg: empty }], nodes: 0, group_order: group.len() });
    }
    let sys = System::build(r, k).ok_or_else(|| BkqError::Invalid("coefficients overflow i64".into()))?;
    let sh = Shared {
        sys: &sys,
        prune: opts.prune,
        budget: opts.budget_nodes,
        nodes: AtomicU64::new(0),
        exhausted: AtomicBool::new(false),
    };
    let nvars = sys.vars.len();
    let by_mass = |fixed: &[bool]| {
        let mut order: Vec<usize> = (0..nvars).filter(|&v| !fixed[v]).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(sys.mass[v]), v));
        order
    };

    // Each branch is (variables fixed to 0, variable fixed to 1).
    let mut branches: Vec<(Vec<usize>, Option<usize>)> = Vec::new();
    if opts.symmetry {
        let orbits = variable_orbits(&sys.vars, &group);
        branches.push((sys.vars.iter().enumerate().map(|(i, _)| i).collect(), None));
        let mut zeros = Vec::new();
        for orbit in &orbits {
            branches.push((zeros.clone(), Some(orbit[0])));
            zeros.extend(orbit.iter().copied());
        }
    } else {
        branches.push((Vec::new(), None));
    }

    let mut tasks: Vec<(State, Vec<usize>, usize)> = Vec::new();
    for (zeros, one) in &branches {
        let mut state = State::new(&sys);
        let mut fixed = vec![false; nvars];
        let mut ok = true;
        for &z in zeros {
            fixed[z] = true;
            ok &= state.assign(&sys, z, false, opts.prune);
        }
        if let Some(o) = one {
            fixed[*o] = true;
            ok &= state.assign(&sys, *o, true, opts.prune);
        }
        if opts.prune && !(ok && state.all_feasible(&sys)) {
            continue;
        }
        let order = by_mass(&fixed);
        let split = if opts.parallel { order.len().min(10) } else { 0 };
        for st in frontier(&sh, &mut state, &order, split) {
            tasks.push((st, order.clone(), split));
        }
    }

    let run = |(state, order, depth): &(State, Vec<usize>, usize)| {
        let mut st = state.clone();
        let mut found = Vec::new();
        dfs(&sh, &mut st, order, *depth, &mut found);
        found
    };
    let found: Vec<(Vec<usize>, Vec<usize>)> = if opts.parallel {
        tasks.par_iter().flat_map_iter(run).collect()
    } else {
        tasks.iter().flat_map(run).collect()
    };

    let nodes = sh.nodes.load(Ordering::Relaxed);
    let mut set: BTreeSet<BkqPair> = BTreeSet::new();
    for (ones, image) in found {
        let g = Hypergraph::from_indices(k, labels.clone(), ones.iter().map(|&v| sys.vars[v].clone())).unwrap();
        let tg = Hypergraph::from_indices(k, labels.clone(), image.iter().map(|&f| sys.outputs[f].clone())).unwrap();
        for sigma in &group {
            set.insert(BkqPair { g: permute_edges(&g, sigma), tg: permute_edges(&tg, sigma) });
        }
    }
    if sh.exhausted.load(Ordering::Relaxed) {
        return Err(BkqError::BudgetExhausted {
            budget: opts.budget_nodes.unwrap_or(0),
            nodes,
            partial: set.len(),
        });
    }
    Ok(BkqReport { pairs: set.into_iter().collect(), nodes, group_order: group.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, fano_lines_and_ovals, SwitchFamily};
    use crate::combinatorics::combinations;

    #[test]
    fn membership_examples() {
        let rf = build(SwitchFamily::Fano).unwrap();
        let fano = fano_lines_and_ovals();
        assert_eq!(verify_membership(&rf, &fano.f1), Some(fano.f2.clone()));
        assert_eq!(verify_membership(&rf.transpose(), &fano.f2), Some(fano.f1.clone()));
        let empty = Hypergraph::empty(3, numbered_labels(7)).unwrap();
        assert_eq!(verify_membership(&rf, &empty), Some(empty));
        let gm = build(SwitchFamily::Gm4).unwrap();
        let e = Hypergraph::with_numbered_vertices(4, 2, vec![vec![0, 1]]).unwrap();
        assert_eq!(verify_membership(&gm, &e), None);
    }

    #[test]
    fn fano_group_has_order_21() {
        assert_eq!(automorphisms(&build(SwitchFamily::Fano).unwrap()).len(), 21);
        assert_eq!(automorphisms(&RatMatrix::identity(4)).len(), 24);
    }

    #[test]
    fn identity_fixes_everything() {
        let r = RatMatrix::identity(4);
        for sym in [false, true] {
            let rep = enumerate_bkq(&r, 2, &BkqOptions { symmetry: sym, ..Default::default() }).unwrap();
            assert_eq!(rep.pairs.len(), 64);
            assert!(rep.pairs.iter().all(|p| p.g == p.tg));
        }
    }

    #[test]
    fn gm4_k1() {
        let rep = enumerate_bkq(&build(SwitchFamily::Gm4).unwrap(), 1, &BkqOptions::default()).unwrap();
        assert_eq!(rep.pairs.len(), 8);
    }

    fn brute_force(r: &RatMatrix, k: usize) -> Vec<BkqPair> {
        let s = r.rows();
        let vars: Vec<Vec<usize>> = combinations(s, k).collect();
        let mut out = Vec::new();
        for mask in 0u64..(1 << vars.len()) {
            let edges = (0..vars.len()).filter(|i| mask & (1 << i) != 0).map(|i| vars[i].clone());
            let g = Hypergraph::with_numbered_vertices(s, k, edges).unwrap();
            if let Some(tg) = verify_membership(r, &g) {
                out.push(BkqPair { g, tg });
            }
        }
        out.sort();
        out
    }

    #[test]
    fn matches_brute_force_k2() {
        for f in [SwitchFamily::Gm4, SwitchFamily::Wqh(2), SwitchFamily::Wqh(1)] {
            let r = build(f).unwrap();
            let expect = brute_force(&r, 2);
            for (symmetry, prune, parallel) in [(true, true, true), (false, true, false), (false, false, false)] {
                let got = enumerate_bkq(&r, 2, &BkqOptions { budget_nodes: None, symmetry, prune, parallel }).unwrap();
                assert_eq!(got.pairs, expect, "{f} sym={symmetry} prune={prune}");
            }
        }
    }

    #[test]
    fn budget_is_reported() {
        let r = build(SwitchFamily::Fano).unwrap();
        let err = enumerate_bkq(&r, 2, &BkqOptions { budget_nodes: Some(10), parallel: false, ..Default::default() });
        assert!(matches!(err, Err(BkqError::BudgetExhausted { .. })));
    }
}
