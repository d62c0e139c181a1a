use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Hypergraph, HypergraphError};
use crate::combinatorics::combinations;

pub const ISOMORPHISM_VERTEX_CAP: usize = 12;

/// Connected components under edge overlap, each sorted, ordered by least
/// vertex. Isolated vertices come out as singletons.
pub fn components(g: &Hypergraph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for e in g.edges() {
        let r = find(&mut parent, e[0]);
        for &v in &e[1..] {
            let s = find(&mut parent, v);
            if s != r {
                parent[s] = r;
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut root_block = vec![usize::MAX; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        if root_block[r] == usize::MAX {
            root_block[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[root_block[r]].push(v);
    }
    blocks
}

/// True when every k-subset of the vertex set is an edge.
pub fn is_complete(g: &Hypergraph) -> bool {
    let needed = crate::combinatorics::binomial(g.n(), g.k());
    g.edge_count() as u128 == needed
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ForbiddenPattern {
    /// `{123, 234}` on four vertices.
    G1,
    /// `{123, 234, 124}` on four vertices.
    G2,
    /// `{123, 345}` on five vertices.
    G3,
}

impl ForbiddenPattern {
    pub fn order(self) -> usize {
        match self {
            ForbiddenPattern::G1 | ForbiddenPattern::G2 => 4,
            ForbiddenPattern::G3 => 5,
        }
    }

    pub fn edges(self) -> Vec<Vec<usize>> {
        match self {
            ForbiddenPattern::G1 => vec![vec![0, 1, 2], vec![1, 2, 3]],
            ForbiddenPattern::G2 => vec![vec![0, 1, 2], vec![1, 2, 3], vec![0, 1, 3]],
            ForbiddenPattern::G3 => vec![vec![0, 1, 2], vec![2, 3, 4]],
        }
    }

    pub fn hypergraph(self) -> Hypergraph {
        Hypergraph::with_numbered_vertices(self.order(), 3, self.edges()).expect("pattern edges are valid")
    }

    pub fn name(self) -> &'static str {
        match self {
            ForbiddenPattern::G1 => "G1",
            ForbiddenPattern::G2 => "G2",
            ForbiddenPattern::G3 => "G3",
        }
    }
}

/// Host vertex `vertices[i]` plays the role of pattern vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternEmbedding {
    pub pattern: ForbiddenPattern,
    pub vertices: Vec<usize>,
}

/// The first induced copy of `G1`/`G2` among 4-vertex subsets, else of `G3`
/// among 5-vertex subsets.
pub fn find_forbidden_pattern(g: &Hypergraph) -> Result<Option<PatternEmbedding>, HypergraphError> {
    Ok(forbidden_patterns(g)?.into_iter().next())
}

/// Every induced copy of `G1`, `G2` or `G3`, one embedding per vertex set,
/// 4-vertex copies first.
pub fn forbidden_patterns(g: &Hypergraph) -> Result<Vec<PatternEmbedding>, HypergraphError> {
    if g.k() != 3 {
        return Err(HypergraphError::WrongRank { expected: 3, got: g.k() });
    }
    let n = g.n();
    let mut out = Vec::new();
    for s in combinations(n, 4) {
        let present: Vec<Vec<usize>> = combinations(4, 3)
            .map(|t| t.iter().map(|&i| s[i]).collect::<Vec<_>>())
            .filter(|e| g.has_edge(e))
            .collect();
        match present.len() {
            2 => {
                let (e, f) = (&present[0], &present[1]);
                let only_e = *e.iter().find(|v| !f.contains(v)).unwrap();
                let only_f = *f.iter().find(|v| !e.contains(v)).unwrap();
                let shared: Vec<usize> = e.iter().copied().filter(|v| f.contains(v)).collect();
                out.push(PatternEmbedding {
                    pattern: ForbiddenPattern::G1,
                    vertices: vec![only_e, shared[0], shared[1], only_f],
                });
            }
            3 => {
                let missing: Vec<usize> = combinations(4, 3)
                    .map(|t| t.iter().map(|&i| s[i]).collect::<Vec<_>>())
                    .find(|e| !g.has_edge(e))
                    .unwrap();
                let apex = *s.iter().find(|v| !missing.contains(v)).unwrap();
                out.push(PatternEmbedding {
                    pattern: ForbiddenPattern::G2,
                    vertices: vec![missing[0], apex, missing[1], missing[2]],
                });
            }
            _ => {}
        }
    }
    for s in combinations(n, 5) {
        let present: Vec<Vec<usize>> = combinations(5, 3)
            .map(|t| t.iter().map(|&i| s[i]).collect::<Vec<_>>())
            .filter(|e| g.has_edge(e))
            .collect();
        if present.len() != 2 {
            continue;
        }
        let (e, f) = (&present[0], &present[1]);
        let shared: Vec<usize> = e.iter().copied().filter(|v| f.contains(v)).collect();
        if shared.len() != 1 {
            continue;
        }
        let c = shared[0];
        let left: Vec<usize> = e.iter().copied().filter(|&v| v != c).collect();
        let right: Vec<usize> = f.iter().copied().filter(|&v| v != c).collect();
        out.push(PatternEmbedding {
            pattern: ForbiddenPattern::G3,
            vertices: vec![left[0], left[1], c, right[0], right[1]],
        });
    }
    Ok(out)
}

/// Searches for a bijection `φ` with `e ∈ E(G) ⟺ φ(e) ∈ E(H)`; `φ[v]` is
/// the image of `G`'s vertex `v`.
pub fn are_isomorphic(g: &Hypergraph, h: &Hypergraph) -> Result<Option<Vec<usize>>, HypergraphError> {
    for x in [g, h] {
        if x.n() > ISOMORPHISM_VERTEX_CAP {
            return Err(HypergraphError::TooLarge { size: x.n(), cap: ISOMORPHISM_VERTEX_CAP });
        }
    }
    if g.n() != h.n() || g.k() != h.k() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let n = g.n();
    let dg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let dh: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    let mut sg = dg.clone();
    let mut sh = dh.clone();
    sg.sort_unstable();
    sh.sort_unstable();
    if sg != sh {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(dg[v]));
    let ge: Vec<&Vec<usize>> = g.edges().iter().collect();
    let he: Vec<&Vec<usize>> = h.edges().iter().collect();
    let mut map = vec![usize::MAX; n];
    let mut inv = vec![usize::MAX; n];

    struct Ctx<'a> {
        order: Vec<usize>,
        dg: Vec<usize>,
        dh: Vec<usize>,
        g: &'a Hypergraph,
        h: &'a Hypergraph,
        ge: Vec<&'a Vec<usize>>,
        he: Vec<&'a Vec<usize>>,
    }

    fn consistent(cx: &Ctx, map: &[usize], inv: &[usize], v: usize, w: usize) -> bool {
        for e in cx.ge.iter().filter(|e| e.contains(&v)) {
            if e.iter().all(|&u| map[u] != usize::MAX) {
                let mut img: Vec<usize> = e.iter().map(|&u| map[u]).collect();
                img.sort_unstable();
                if !cx.h.has_edge(&img) {
                    return false;
                }
            }
        }
        for e in cx.he.iter().filter(|e| e.contains(&w)) {
            if e.iter().all(|&u| inv[u] != usize::MAX) {
                let mut pre: Vec<usize> = e.iter().map(|&u| inv[u]).collect();
                pre.sort_unstable();
                if !cx.g.has_edge(&pre) {
                    return false;
                }
            }
        }
        true
    }

    fn go(cx: &Ctx, depth: usize, map: &mut [usize], inv: &mut [usize]) -> bool {
        if depth == cx.order.len() {
            return true;
        }
        let v = cx.order[depth];
        for w in 0..cx.order.len() {
            if inv[w] != usize::MAX || cx.dh[w] != cx.dg[v] {
                continue;
            }
            map[v] = w;
            inv[w] = v;
            if consistent(cx, map, inv, v, w) && go(cx, depth + 1, map, inv) {
                return true;
            }
            map[v] = usize::MAX;
            inv[w] = usize::MAX;
        }
        false
    }

    let cx = Ctx { order, dg, dh, g, h, ge, he };
    if go(&cx, 0, &mut map, &mut inv) {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

/// The image of `g`'s edge set under a vertex map, for checking a claimed
/// isomorphism.
pub fn mapped_edges(g: &Hypergraph, map: &[usize]) -> BTreeSet<Vec<usize>> {
    g.edges()
        .iter()
        .map(|e| {
            let mut img: Vec<usize> = e.iter().map(|&v| map[v]).collect();
            img.sort_unstable();
            img
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h3(n: usize, edges: &[[usize; 3]]) -> Hypergraph {
        Hypergraph::with_numbered_vertices(n, 3, edges.iter().map(|e| e.iter().map(|v| v - 1).collect())).unwrap()
    }

    #[test]
    fn component_examples() {
        assert_eq!(components(&h3(5, &[[1, 2, 3], [3, 4, 5]])), vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(components(&h3(3, &[])), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(components(&h3(6, &[[1, 2, 3], [4, 5, 6]])), vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn completeness() {
        assert!(is_complete(&h3(4, &[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]])));
        assert!(!is_complete(&h3(4, &[[1, 2, 3], [2, 3, 4], [1, 2, 4]])));
        assert!(is_complete(&h3(1, &[])));
    }

    #[test]
    fn patterns() {
        let g1 = ForbiddenPattern::G1.hypergraph();
        let emb = find_forbidden_pattern(&g1).unwrap().unwrap();
        assert_eq!(emb, PatternEmbedding { pattern: ForbiddenPattern::G1, vertices: vec![0, 1, 2, 3] });
        let k4 = h3(4, &[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]);
        assert_eq!(find_forbidden_pattern(&k4).unwrap(), None);
        let g3 = h3(5, &[[1, 2, 3], [3, 4, 5]]);
        let emb = find_forbidden_pattern(&g3).unwrap().unwrap();
        assert_eq!(emb, PatternEmbedding { pattern: ForbiddenPattern::G3, vertices: vec![0, 1, 2, 3, 4] });
        let g2 = ForbiddenPattern::G2.hypergraph();
        let emb = find_forbidden_pattern(&g2).unwrap().unwrap();
        assert_eq!(emb.pattern, ForbiddenPattern::G2);
        assert_eq!(emb.vertices[1], 1);
        let two = Hypergraph::with_numbered_vertices(3, 2, vec![vec![0, 1]]).unwrap();
        assert!(find_forbidden_pattern(&two).is_err());
    }

    #[test]
    fn isomorphism() {
        let g = h3(5, &[[1, 2, 3], [3, 4, 5]]);
        assert_eq!(are_isomorphic(&g, &g).unwrap(), Some(vec![0, 1, 2, 3, 4]));
        let h = h3(5, &[[1, 4, 5], [2, 3, 5]]);
        let m = are_isomorphic(&g, &h).unwrap().unwrap();
        assert_eq!(&mapped_edges(&g, &m), h.edges());
        let one = h3(3, &[[1, 2, 3]]);
        let none = h3(3, &[]);
        assert_eq!(are_isomorphic(&one, &none).unwrap(), None);
        let big = Hypergraph::with_numbered_vertices(13, 3, vec![]).unwrap();
        assert!(are_isomorphic(&big, &big).is_err());
    }
}
