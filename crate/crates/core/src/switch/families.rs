//! Switches driven by explicit combinatorial hypotheses. Each one checks its
//! conditions link by link, builds `H` directly, and then certifies it.

use std::collections::{BTreeMap, BTreeSet};

use super::{certify, check_switching_set, labels_of, link_edges_labels, Replacement, SwitchError, SwitchOutcome, Violation};
use crate::catalog::{build, fano_lines_and_ovals, SwitchFamily};
use crate::hypergraph::{link_decompose, reassemble_links, Edge, Hypergraph, Link};

type Rule<'a> = dyn Fn(usize, &BTreeSet<Edge>) -> Result<BTreeSet<Edge>, String> + 'a;

fn run(g: &Hypergraph, c: &[usize], family: SwitchFamily, rule: &Rule) -> Result<SwitchOutcome, SwitchError> {
    let r = build(family)?;
    check_switching_set(g, c, r.rows())?;
    let table = link_decompose(g, c)?;
    let c_labels = labels_of(g, c);
    let mut violations = Vec::new();
    let mut replacements = Vec::new();
    let mut links: BTreeMap<Vec<usize>, Link> = BTreeMap::new();
    for (a, l) in table.entries() {
        let Link::Graph(lg) = l else {
            links.insert(a.clone(), l.clone());
            continue;
        };
        match rule(lg.k(), lg.edges()) {
            Err(detail) => violations.push(Violation { a: labels_of(g, a), rank: lg.k(), detail }),
            Ok(img) => {
                if &img != lg.edges() {
                    replacements.push(Replacement {
                        a: labels_of(g, a),
                        rank: lg.k(),
                        link: link_edges_labels(&c_labels, lg.edges()),
                        image: link_edges_labels(&c_labels, &img),
                    });
                }
                links.insert(a.clone(), Link::Graph(lg.with_edges(img)?));
            }
        }
    }
    if !violations.is_empty() {
        return Err(SwitchError::Condition(violations));
    }
    let h = g.with_edges(reassemble_links(c, links.iter().map(|(a, l)| (a.as_slice(), l))))?;
    let certificate = certify(g, &h, c, &r, Some(family))?;
    Ok(SwitchOutcome { h, certificate, replacements })
}

fn points(edges: &BTreeSet<Edge>) -> Vec<usize> {
    edges.iter().map(|e| e[0]).collect()
}

fn singletons(xs: impl IntoIterator<Item = usize>) -> BTreeSet<Edge> {
    xs.into_iter().map(|x| vec![x]).collect()
}

fn meets_c(rank: usize) -> String {
    format!("edges meet the switching set in {rank} vertices")
}

/// GM switching for a `C` of even size at least 4: no edge meets `C` twice,
/// and every `A` sees `0`, `|C|/2` or `|C|` vertices of `C`; the halves are
/// swapped for their complements.
pub fn gm_switch(g: &Hypergraph, c: &[usize]) -> Result<SwitchOutcome, SwitchError> {
    let s = c.len();
    if s < 4 || s % 2 == 1 {
        return Err(SwitchError::SizeMismatch(format!("GM switching needs an even set of size >= 4, got {s}")));
    }
    let rule = |rank: usize, edges: &BTreeSet<Edge>| {
        if rank != 1 {
            return Err(meets_c(rank));
        }
        let x = points(edges);
        match x.len() {
            n if n == s => Ok(edges.clone()),
            n if 2 * n == s => Ok(singletons((0..s).filter(|v| !x.contains(v)))),
            n => Err(format!("A has {n} neighbours in C, expected 0, {} or {s}", s / 2)),
        }
    };
    run(g, c, SwitchFamily::Gm(s), &rule)
}

/// WQH switching on `C₁ ∪ C₂` with `|C₁| = |C₂| = p`: no edge meets `C`
/// twice, and every neighbourhood in `C` is `C₁`, `C₂`, or balanced. `C₁` and
/// `C₂` trade places.
pub fn wqh_switch(g: &Hypergraph, c1: &[usize], c2: &[usize]) -> Result<SwitchOutcome, SwitchError> {
    let p = c1.len();
    if p == 0 || c2.len() != p {
        return Err(SwitchError::SizeMismatch(format!(
            "WQH switching needs two nonempty halves of equal size, got {} and {}",
            c1.len(),
            c2.len()
        )));
    }
    let c: Vec<usize> = c1.iter().chain(c2).copied().collect();
    let rule = |rank: usize, edges: &BTreeSet<Edge>| {
        if rank != 1 {
            return Err(meets_c(rank));
        }
        let x = points(edges);
        let left = x.iter().filter(|&&v| v < p).count();
        let right = x.len() - left;
        if left == p && right == 0 {
            Ok(singletons(p..2 * p))
        } else if left == 0 && right == p {
            Ok(singletons(0..p))
        } else if left == right {
            Ok(edges.clone())
        } else {
            Err(format!("A has {left} neighbours in C1 and {right} in C2"))
        }
    };
    run(g, &c, SwitchFamily::Wqh(p), &rule)
}

fn sun_rank2(m: usize, edges: &BTreeSet<Edge>) -> Result<BTreeSet<Edge>, String> {
    let s = 2 * m;
    let h = (m - 1) / 2;
    let mut pairs: BTreeMap<(usize, usize), Vec<&Edge>> = BTreeMap::new();
    for e in edges {
        let (bu, bv) = (e[0] / 2, e[1] / 2);
        if bu == bv {
            return Err(format!("edge {{v{}, v{}}} lies inside a block", e[0] + 1, e[1] + 1));
        }
        let d = (bv + m - bu) % m;
        let key = if d <= h { (bu, bv) } else { (bv, bu) };
        pairs.entry(key).or_default().push(e);
    }
    let mut out = BTreeSet::new();
    let mut stars = 0;
    for ((i, j), es) in pairs {
        let d = (j + m - i) % m;
        if d < h {
            if es.len() != 4 {
                return Err(format!("blocks C{} and C{} are joined by {} edges, expected 0 or 4", i + 1, j + 1, es.len()));
            }
            out.extend(es.into_iter().cloned());
            continue;
        }
        let centre = if es.len() == 2 {
            let common: Vec<usize> = es[0].iter().filter(|v| es[1].contains(v)).copied().collect();
            common.first().copied().filter(|&x| x / 2 == i)
        } else {
            None
        };
        let Some(centre) = centre else {
            return Err(format!("edges between C{} and C{} do not form a star centred in C{}", i + 1, j + 1, i + 1));
        };
        stars += 1;
        let moved = (centre + s - 2) % s;
        for leaf in [2 * j, 2 * j + 1] {
            out.insert(vec![moved.min(leaf), moved.max(leaf)]);
        }
    }
    if stars != 0 && stars != m {
        return Err(format!("{stars} of the {m} block pairs at distance {h} carry a star, expected none or all"));
    }
    Ok(out)
}

/// Sun switching on blocks `C_i = {v_{2i−1}, v_{2i}}`, `m` odd. Transversal
/// neighbourhoods and the distance-`(m−1)/2` stars move one block back; every
/// other admissible link is fixed.
pub fn sun_switch(g: &Hypergraph, blocks: &[(usize, usize)]) -> Result<SwitchOutcome, SwitchError> {
    let m = blocks.len();
    if m < 3 || m % 2 == 0 {
        return Err(SwitchError::SizeMismatch(format!("sun switching needs an odd number >= 3 of blocks, got {m}")));
    }
    let s = 2 * m;
    let c: Vec<usize> = blocks.iter().flat_map(|&(a, b)| [a, b]).collect();
    let rule = |rank: usize, edges: &BTreeSet<Edge>| match rank {
        1 => {
            let x = points(edges);
            let counts: Vec<usize> = (0..m).map(|i| x.iter().filter(|&&v| v / 2 == i).count()).collect();
            if counts.iter().all(|&n| n == 1) {
                Ok(singletons(x.iter().map(|&v| (v + s - 2) % s)))
            } else if counts.iter().all(|&n| n % 2 == 0) {
                Ok(edges.clone())
            } else {
                Err(format!("neighbour counts per block {counts:?} differ in parity"))
            }
        }
        2 => sun_rank2(m, edges),
        _ => Err(meets_c(rank)),
    };
    run(g, &c, SwitchFamily::Sg(s), &rule)
}

/// Fano switching for 3-graphs: `G[C]` is empty or `F₁`, no edge meets `C`
/// in two vertices, and each pair outside sees `∅`, `C`, a line or the
/// complement of a line. Lines go to ovals and `F₁` to `F₂`.
pub fn fano_switch(g: &Hypergraph, c: &[usize]) -> Result<SwitchOutcome, SwitchError> {
    if g.k() != 3 {
        return Err(SwitchError::SizeMismatch(format!("Fano switching needs a 3-graph, got rank {}", g.k())));
    }
    let fano = fano_lines_and_ovals();
    let all: BTreeSet<usize> = (0..7).collect();
    let complement = |x: &[usize]| all.iter().copied().filter(|v| !x.contains(v)).collect::<Vec<_>>();
    let rule = |rank: usize, edges: &BTreeSet<Edge>| match rank {
        3 if edges == fano.f1.edges() => Ok(fano.f2.edges().clone()),
        3 => Err("G[C] is neither empty nor the Fano plane F1".to_string()),
        2 => Err(meets_c(2)),
        _ => {
            let x = points(edges);
            if x.len() == 7 {
                return Ok(edges.clone());
            }
            for (l, o) in fano.lines.iter().zip(&fano.ovals) {
                if &x == l {
                    return Ok(singletons(o.iter().copied()));
                }
                if x == complement(l) {
                    return Ok(singletons(complement(o)));
                }
            }
            Err(format!("neighbourhood {:?} is not empty, C, a line or a line complement", x.iter().map(|v| v + 1).collect::<Vec<_>>()))
        }
    };
    run(g, c, SwitchFamily::Fano, &rule)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::switch::switch;

    #[test]
    fn gm_on_a_graph() {
        let labels = ["1", "2", "3", "4", "x", "y"];
        let g = Hypergraph::new(2, &labels, &[["1", "x"], ["2", "x"], ["x", "y"], ["1", "y"], ["2", "y"], ["3", "y"], ["4", "y"]]).unwrap();
        let c = g.resolve(&["1", "2", "3", "4"]).unwrap();
        let out = gm_switch(&g, &c).unwrap();
        let want = Hypergraph::new(2, &labels, &[["3", "x"], ["4", "x"], ["x", "y"], ["1", "y"], ["2", "y"], ["3", "y"], ["4", "y"]]).unwrap();
        assert_eq!(out.h, want);
        assert_eq!(switch(&g, &c, SwitchFamily::Gm(4)).unwrap().h, want);
        assert_eq!(gm_switch(&out.h, &c).unwrap().h, g);
    }

    #[test]
    fn gm_reports_every_bad_set() {
        let labels = ["1", "2", "3", "4", "x", "y", "z"];
        let g = Hypergraph::new(2, &labels, &[["1", "x"], ["1", "y"], ["2", "y"], ["3", "y"], ["1", "2"]]).unwrap();
        let c = g.resolve(&["1", "2", "3", "4"]).unwrap();
        let err = gm_switch(&g, &c).unwrap_err();
        let a: Vec<_> = err.violations().iter().map(|v| v.a.clone()).collect();
        assert_eq!(a, vec![Vec::<String>::new(), vec!["x".to_string()], vec!["y".to_string()]]);
    }

    #[test]
    fn wqh_swaps_halves() {
        let labels = ["a", "b", "c", "d", "x"];
        let g = Hypergraph::new(2, &labels, &[["a", "x"], ["b", "x"]]).unwrap();
        let c1 = g.resolve(&["a", "b"]).unwrap();
        let c2 = g.resolve(&["c", "d"]).unwrap();
        let out = wqh_switch(&g, &c1, &c2).unwrap();
        assert_eq!(out.h, Hypergraph::new(2, &labels, &[["c", "x"], ["d", "x"]]).unwrap());
    }

    #[test]
    fn sun_moves_transversals_and_stars() {
        let labels: Vec<String> = (1..=6).map(|i| format!("v{i}")).chain(["x".to_string()]).collect();
        // transversal {v1, v3, v5} and one star per adjacent block pair
        let g = Hypergraph::from_indices(
            2,
            labels.clone(),
            vec![vec![0, 6], vec![2, 6], vec![4, 6], vec![0, 2], vec![0, 3], vec![3, 4], vec![3, 5], vec![0, 5], vec![1, 5]],
        )
        .unwrap();
        let blocks = [(0, 1), (2, 3), (4, 5)];
        let out = sun_switch(&g, &blocks).unwrap();
        let c: Vec<usize> = (0..6).collect();
        assert_eq!(out.h, switch(&g, &c, SwitchFamily::Sg(6)).unwrap().h);
        assert!(out.certificate.valid);
    }

    #[test]
    fn sun_rejects_a_lone_star() {
        let g = Hypergraph::with_numbered_vertices(6, 2, vec![vec![0, 2], vec![0, 3]]).unwrap();
        let err = sun_switch(&g, &[(0, 1), (2, 3), (4, 5)]).unwrap_err();
        assert_eq!(err.violations().len(), 1);
        assert!(err.violations()[0].detail.contains("none or all"));
    }

    #[test]
    fn fano_fixture_via_family_rule() {
        let fx = crate::fixtures::switch_fixture("fano10").unwrap();
        let c = fx.g.resolve(&fx.switching_set).unwrap();
        let out = fano_switch(&fx.g, &c).unwrap();
        assert_eq!(out.h, fx.h);
    }
}
