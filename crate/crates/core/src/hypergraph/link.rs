use std::collections::{BTreeMap, BTreeSet};

use super::{Edge, Hypergraph, HypergraphError};

/// The link of a set `A` of outside vertices in a switching set `C`.
///
/// When `|A| = k` there is nothing left to place inside `C`, and the link
/// reduces to whether `A` itself is an edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Link {
    Flag(bool),
    Graph(Hypergraph),
}

impl Link {
    pub fn rank(&self) -> usize {
        match self {
            Link::Flag(_) => 0,
            Link::Graph(h) => h.k(),
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Link::Flag(b) => !b,
            Link::Graph(h) => h.is_empty(),
        }
    }
}

fn check_disjoint(g: &Hypergraph, c: &[usize], a: &[usize]) -> Result<(), HypergraphError> {
    for &v in c.iter().chain(a) {
        if v >= g.n() {
            return Err(HypergraphError::IndexOutOfRange { index: v, n: g.n() });
        }
    }
    let overlap: Vec<String> = a.iter().filter(|v| c.contains(v)).map(|&v| g.label(v).to_string()).collect();
    if overlap.is_empty() {
        Ok(())
    } else {
        Err(HypergraphError::Overlap(overlap))
    }
}

fn link_labels(g: &Hypergraph, c: &[usize]) -> Vec<String> {
    c.iter().map(|&v| g.label(v).to_string()).collect()
}

/// `G[C;A]`: the hypergraph on `C` (vertex `i` is `c[i]`) whose edges `f`
/// satisfy `f ∪ A ∈ E(G)`.
pub fn link(g: &Hypergraph, c: &[usize], a: &[usize]) -> Result<Link, HypergraphError> {
    check_disjoint(g, c, a)?;
    let k = g.k();
    if a.len() > k {
        return Err(HypergraphError::WrongRank { expected: k, got: a.len() });
    }
    let mut a_sorted = a.to_vec();
    a_sorted.sort_unstable();
    if a.len() == k {
        return Ok(Link::Flag(g.has_edge(&a_sorted)));
    }
    let pos: BTreeMap<usize, usize> = c.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut edges = Vec::new();
    for e in g.edges() {
        if !a_sorted.iter().all(|v| e.contains(v)) {
            continue;
        }
        let rest: Option<Vec<usize>> =
            e.iter().filter(|v| !a_sorted.contains(v)).map(|v| pos.get(v).copied()).collect();
        if let Some(f) = rest {
            edges.push(f);
        }
    }
    let h = Hypergraph::from_indices(k - a.len(), link_labels(g, c), edges)?;
    Ok(Link::Graph(h))
}

/// Every nonempty link of `G` at a switching set `C`, keyed by the sorted
/// outside set `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkTable {
    c: Vec<usize>,
    d: Vec<usize>,
    entries: BTreeMap<Vec<usize>, Link>,
}

impl LinkTable {
    pub fn switching_set(&self) -> &[usize] {
        &self.c
    }

    pub fn outside(&self) -> &[usize] {
        &self.d
    }

    pub fn entries(&self) -> &BTreeMap<Vec<usize>, Link> {
        &self.entries
    }

    pub fn get(&self, a: &[usize]) -> Option<&Link> {
        self.entries.get(a)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Rebuilds the edge set `⋃_A E(G[C;A]) ⊙ {A}` in host indices.
    pub fn reassemble(&self) -> BTreeSet<Edge> {
        reassemble_links(&self.c, self.entries.iter().map(|(a, l)| (a.as_slice(), l)))
    }
}

/// `⋃_A E(L_A) ⊙ {A}` for links expressed on `c`.
pub fn reassemble_links<'a>(
    c: &[usize],
    links: impl IntoIterator<Item = (&'a [usize], &'a Link)>,
) -> BTreeSet<Edge> {
    let mut out = BTreeSet::new();
    for (a, l) in links {
        match l {
            Link::Flag(true) => {
                out.insert(a.to_vec());
            }
            Link::Flag(false) => {}
            Link::Graph(h) => {
                for f in h.edges() {
                    let mut e: Vec<usize> = f.iter().map(|&i| c[i]).chain(a.iter().copied()).collect();
                    e.sort_unstable();
                    out.insert(e);
                }
            }
        }
    }
    out
}

/// Splits `G` along the switching set `C`, listed in the order that matches
/// the rows of the switching matrix.
pub fn link_decompose(g: &Hypergraph, c: &[usize]) -> Result<LinkTable, HypergraphError> {
    check_disjoint(g, c, &[])?;
    let mut seen = BTreeSet::new();
    for &v in c {
        if !seen.insert(v) {
            return Err(HypergraphError::DuplicateLabel(g.label(v).to_string()));
        }
    }
    let d: Vec<usize> = (0..g.n()).filter(|v| !seen.contains(v)).collect();
    let pos: BTreeMap<usize, usize> = c.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut grouped: BTreeMap<Vec<usize>, Vec<Edge>> = BTreeMap::new();
    for e in g.edges() {
        let a: Vec<usize> = e.iter().copied().filter(|v| !pos.contains_key(v)).collect();
        let f: Vec<usize> = e.iter().filter_map(|v| pos.get(v).copied()).collect();
        grouped.entry(a).or_default().push(f);
    }
    let labels = link_labels(g, c);
    let mut entries = BTreeMap::new();
    for (a, fs) in grouped {
        let r = g.k() - a.len();
        let l = if r == 0 {
            Link::Flag(true)
        } else {
            Link::Graph(Hypergraph::from_indices(r, labels.clone(), fs)?)
        };
        entries.insert(a, l);
    }
    Ok(LinkTable { c: c.to_vec(), d, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Hypergraph {
        Hypergraph::parse("3; 1,2,3; 1,2,x; 2,3,x; 1,x,y; x,y,z").unwrap()
    }

    #[test]
    fn links_have_expected_rank() {
        let g = small();
        let c = g.resolve(&["1", "2", "3"]).unwrap();
        let x = g.index_of("x").unwrap();
        let y = g.index_of("y").unwrap();
        let z = g.index_of("z").unwrap();
        let l = link(&g, &c, &[x]).unwrap();
        assert_eq!(l.rank(), 2);
        let Link::Graph(h) = l else { panic!() };
        assert_eq!(h.edges().iter().cloned().collect::<Vec<_>>(), vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(link(&g, &c, &[x, y, z]).unwrap(), Link::Flag(true));
        assert!(link(&g, &c, &[y, z]).unwrap().is_empty());
        assert!(link(&g, &c, &[0]).is_err());
    }

    #[test]
    fn decompose_round_trip() {
        let g = small();
        let c = g.resolve(&["3", "1", "2"]).unwrap();
        let t = link_decompose(&g, &c).unwrap();
        assert_eq!(&t.reassemble(), g.edges());
        assert_eq!(t.len(), 4);
        assert_eq!(t.outside().len(), 3);
    }
}
