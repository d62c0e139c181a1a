//! Seeded generators of hypergraphs that satisfy (or, after a mutation,
//! violate) the hypotheses of the family switches.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::catalog::fano_lines_and_ovals;
use crate::combinatorics::combinations;
use crate::hypergraph::{numbered_labels, Edge, Hypergraph};

/// A random hypergraph with its switching set, listed in row order.
#[derive(Debug, Clone)]
pub struct Instance {
    pub g: Hypergraph,
    pub c: Vec<usize>,
}

/// Splits a shuffled vertex set into `C` (first `s`) and `D`.
fn split<R: Rng>(rng: &mut R, n: usize, s: usize) -> (Vec<usize>, Vec<usize>) {
    let mut vs: Vec<usize> = (0..n).collect();
    vs.shuffle(rng);
    let d = vs.split_off(s);
    (vs, d)
}

fn subsets_of(d: &[usize], r: usize) -> Vec<Vec<usize>> {
    combinations(d.len(), r).map(|ix| ix.iter().map(|&i| d[i]).collect()).collect()
}

fn edge(parts: impl IntoIterator<Item = usize>) -> Edge {
    let mut e: Vec<usize> = parts.into_iter().collect();
    e.sort_unstable();
    e
}

/// Random edges inside `D`, each kept with probability one half.
fn outside_edges<R: Rng>(rng: &mut R, d: &[usize], k: usize, edges: &mut BTreeSet<Edge>) {
    for e in subsets_of(d, k) {
        if rng.gen_bool(0.5) {
            edges.insert(edge(e));
        }
    }
}

/// Joins each `(k−1)`-set of `D` to the chosen neighbourhood in `C`.
fn rank1_links<R: Rng>(
    rng: &mut R,
    c: &[usize],
    d: &[usize],
    k: usize,
    edges: &mut BTreeSet<Edge>,
    mut pick: impl FnMut(&mut R) -> Vec<usize>,
) {
    for a in subsets_of(d, k - 1) {
        for pos in pick(rng) {
            edges.insert(edge(a.iter().copied().chain([c[pos]])));
        }
    }
}

fn finish(n: usize, k: usize, c: Vec<usize>, edges: BTreeSet<Edge>) -> Instance {
    let g = Hypergraph::from_indices(k, numbered_labels(n), edges).expect("generated edges are valid");
    Instance { g, c }
}

/// Satisfies the GM hypotheses for `|C| = s`.
pub fn random_gm<R: Rng>(rng: &mut R, n: usize, k: usize, s: usize) -> Instance {
    let (c, d) = split(rng, n, s);
    let mut edges = BTreeSet::new();
    rank1_links(rng, &c, &d, k, &mut edges, |rng| match rng.gen_range(0..3) {
        0 => vec![],
        1 => (0..s).collect(),
        _ => {
            let mut pos: Vec<usize> = (0..s).collect();
            pos.shuffle(rng);
            pos.truncate(s / 2);
            pos
        }
    });
    outside_edges(rng, &d, k, &mut edges);
    finish(n, k, c, edges)
}

/// Satisfies the WQH hypotheses; `c` is `C₁` followed by `C₂`.
pub fn random_wqh<R: Rng>(rng: &mut R, n: usize, k: usize, p: usize) -> Instance {
    let (c, d) = split(rng, n, 2 * p);
    let mut edges = BTreeSet::new();
    rank1_links(rng, &c, &d, k, &mut edges, |rng| match rng.gen_range(0..4) {
        0 => (0..p).collect(),
        1 => (p..2 * p).collect(),
        _ => {
            let j = rng.gen_range(0..=p);
            let mut left: Vec<usize> = (0..p).collect();
            let mut right: Vec<usize> = (p..2 * p).collect();
            left.shuffle(rng);
            right.shuffle(rng);
            left.truncate(j);
            right.truncate(j);
            left.extend(right);
            left
        }
    });
    outside_edges(rng, &d, k, &mut edges);
    finish(n, k, c, edges)
}

/// Satisfies the sun hypotheses with `m` blocks; `c` lists the blocks in
/// order.
pub fn random_sun<R: Rng>(rng: &mut R, n: usize, k: usize, m: usize) -> Instance {
    let s = 2 * m;
    let h = (m - 1) / 2;
    let (c, d) = split(rng, n, s);
    let mut edges = BTreeSet::new();
    rank1_links(rng, &c, &d, k, &mut edges, |rng| {
        if rng.gen_bool(0.5) {
            (0..m).map(|i| 2 * i + rng.gen_range(0..2)).collect()
        } else {
            (0..m).filter(|_| rng.gen_bool(0.5)).flat_map(|i| [2 * i, 2 * i + 1]).collect()
        }
    });
    if k >= 2 {
        for a in subsets_of(&d, k - 2) {
            let mut pairs: Vec<(usize, usize)> = Vec::new();
            for i in 0..m {
                for dist in 1..h {
                    if rng.gen_bool(0.5) {
                        let j = (i + dist) % m;
                        pairs.extend([(2 * i, 2 * j), (2 * i, 2 * j + 1), (2 * i + 1, 2 * j), (2 * i + 1, 2 * j + 1)]);
                    }
                }
            }
            if rng.gen_bool(0.5) {
                for i in 0..m {
                    let centre = 2 * i + rng.gen_range(0..2);
                    let j = (i + h) % m;
                    pairs.extend([(centre, 2 * j), (centre, 2 * j + 1)]);
                }
            }
            for (u, v) in pairs {
                edges.insert(edge(a.iter().copied().chain([c[u], c[v]])));
            }
        }
    }
    outside_edges(rng, &d, k, &mut edges);
    finish(n, k, c, edges)
}

/// Satisfies the Fano hypotheses for a 3-graph on `n >= 7` vertices.
pub fn random_fano<R: Rng>(rng: &mut R, n: usize) -> Instance {
    let fano = fano_lines_and_ovals();
    let (c, d) = split(rng, n, 7);
    let mut edges = BTreeSet::new();
    if rng.gen_bool(0.5) {
        for l in &fano.lines {
            edges.insert(edge(l.iter().map(|&i| c[i])));
        }
    }
    rank1_links(rng, &c, &d, 3, &mut edges, |rng| {
        let l = &fano.lines[rng.gen_range(0..7)];
        match rng.gen_range(0..4) {
            0 => vec![],
            1 => (0..7).collect(),
            2 => l.clone(),
            _ => (0..7).filter(|v| !l.contains(v)).collect(),
        }
    });
    outside_edges(rng, &d, 3, &mut edges);
    finish(n, 3, c, edges)
}

/// Toggles one edge `A ∪ {c}` with `|A| = k − 1`. Returns the mutated
/// hypergraph and the labels of `A`.
pub fn mutate_rank1<R: Rng>(rng: &mut R, inst: &Instance) -> Option<(Hypergraph, Vec<String>)> {
    let g = &inst.g;
    let d: Vec<usize> = (0..g.n()).filter(|v| !inst.c.contains(v)).collect();
    let sets = subsets_of(&d, g.k() - 1);
    let a = sets.choose(rng)?;
    let v = *inst.c.choose(rng)?;
    let e = edge(a.iter().copied().chain([v]));
    let mut edges = g.edges().clone();
    if !edges.remove(&e) {
        edges.insert(e);
    }
    let labels = a.iter().map(|&x| g.label(x).to_string()).collect();
    Some((g.with_edges(edges).ok()?, labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::switch::{fano_switch, gm_switch, sun_switch, wqh_switch};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn blocks(c: &[usize]) -> Vec<(usize, usize)> {
        c.chunks(2).map(|b| (b[0], b[1])).collect()
    }

    #[test]
    fn generated_instances_switch() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let inst = random_gm(&mut rng, 8, 3, 4);
            gm_switch(&inst.g, &inst.c).unwrap();
            let inst = random_wqh(&mut rng, 8, 2, 2);
            wqh_switch(&inst.g, &inst.c[..2], &inst.c[2..]).unwrap();
            let inst = random_sun(&mut rng, 9, 3, 3);
            sun_switch(&inst.g, &blocks(&inst.c)).unwrap();
            let inst = random_fano(&mut rng, 10);
            fano_switch(&inst.g, &inst.c).unwrap();
        }
    }

    #[test]
    fn mutations_are_caught() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..10 {
            let inst = random_gm(&mut rng, 8, 2, 4);
            let (bad, a) = mutate_rank1(&mut rng, &inst).unwrap();
            let err = gm_switch(&bad, &inst.c).unwrap_err();
            assert!(err.violations().iter().any(|v| v.a == a));
        }
    }
}
