//! Frozen example hypergraphs: three switched pairs, the three forbidden
//! 3-graphs and the two Fano planes. Every fixture has a canonical JSON form
//! whose SHA-256 is pinned below.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::catalog::{fano_labels, fano_lines_and_ovals, SwitchFamily};
use crate::hypergraph::{ForbiddenPattern, Hypergraph};

pub const FIXTURE_NAMES: [&str; 8] = ["fano10", "sun12", "cube11", "g1", "g2", "g3", "fano_plane_F1", "fano_plane_F2"];

pub const CHECKSUMS: [(&str, &str); 8] = [
    ("fano10", "1c9fa3e71eac65ffc82d99c73c38cdc63378203ce4e57faa969feb61a88394ff"),
    ("sun12", "2e7ee5eff3bfd18008f3964af2ee49f6572896381216ba77fcf5cdbc00d29831"),
    ("cube11", "ab16e7f7847e550b0e52c760d8f5f254615b75b5ae7c55f28e78e7ef2bdff247"),
    ("g1", "b47a60125517783cb27be4a3e326bc383dcbccaeb40817bbd42ff3c2e3c1a35d"),
    ("g2", "b6cbcfb4260397d90a638623f80b2d34c4a1b5ce5521fb95d046898d787a8302"),
    ("g3", "77c7cf1fa4f8838c20077ea519195067ae00d8dc5437750e63da2c89eb1a882e"),
    ("fano_plane_F1", "ed43a6eaf84f5bf0b1e3f1fdaf058b8dd746979e8e45cf51ff90851ca5bcc00a"),
    ("fano_plane_F2", "6264ed780aac1dfa660b50b5f4fb6b9d08a72e2f909a7d56e6a99792e5e69231"),
];

/// A cospectral pair together with the family that switches one into the
/// other and the switching set, listed in the row order of `R`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwitchFixture {
    pub name: String,
    pub family: SwitchFamily,
    pub switching_set: Vec<String>,
    #[serde(rename = "G")]
    pub g: Hypergraph,
    #[serde(rename = "H")]
    pub h: Hypergraph,
}

fn chars(s: &str) -> Vec<String> {
    s.chars().map(String::from).collect()
}

fn graph(k: usize, labels: &str, edges: &[&str]) -> Hypergraph {
    let edges: Vec<Vec<String>> = edges.iter().map(|e| chars(e)).collect();
    Hypergraph::new(k, &chars(labels), &edges).expect("fixture edges are valid")
}

/// `{a ∪ t : a ∈ heads}` for each tail `t`.
fn join(heads: &str, tail: &str) -> Vec<String> {
    heads.chars().map(|h| format!("{h}{tail}")).collect()
}

fn pairs_with(pairs: &[&str], tail: &str) -> Vec<String> {
    pairs.iter().map(|p| format!("{p}{tail}")).collect()
}

fn build_switch_fixture(name: &str) -> Option<SwitchFixture> {
    let (family, k, labels, set, g_edges, h_edges): (SwitchFamily, usize, &str, &str, Vec<String>, Vec<String>) = match name {
        "fano10" => (
            SwitchFamily::Fano,
            3,
            "1234567xyz",
            "1234567",
            ["124", "235", "346", "457", "156", "267", "137", "1xy", "2xy", "4xy", "xyz"].map(String::from).to_vec(),
            ["356", "467", "157", "126", "237", "134", "245", "3xy", "5xy", "6xy", "xyz"].map(String::from).to_vec(),
        ),
        "sun12" => {
            let mut g = pairs_with(&["18", "25", "26", "28", "03", "47", "48", "04", "69", "06"], "x");
            g.extend(join("13570", "xy"));
            let mut h = pairs_with(&["16", "26", "27", "28", "38", "48", "49", "04", "05", "06"], "x");
            h.extend(join("91358", "xy"));
            (SwitchFamily::Sg(10), 3, "0123456789xy", "0123456789", g, h)
        }
        "cube11" => {
            let mut g = join("2367", "xyz");
            g.extend(pairs_with(&["17", "26", "46", "48", "28", "35", "45", "47", "56", "67"], "xy"));
            let mut h = join("1368", "xyz");
            h.extend(pairs_with(&["17", "26", "46", "48", "12", "18", "24", "27", "36", "37"], "xy"));
            (SwitchFamily::Cube, 4, "12345678xyz", "12345678", g, h)
        }
        _ => return None,
    };
    let g_refs: Vec<&str> = g_edges.iter().map(String::as_str).collect();
    let h_refs: Vec<&str> = h_edges.iter().map(String::as_str).collect();
    Some(SwitchFixture {
        name: name.to_string(),
        family,
        switching_set: chars(set),
        g: graph(k, labels, &g_refs),
        h: graph(k, labels, &h_refs),
    })
}

pub fn switch_fixture(name: &str) -> Option<SwitchFixture> {
    build_switch_fixture(name)
}

/// The single-hypergraph fixtures: the forbidden patterns and the planes.
pub fn graph_fixture(name: &str) -> Option<Hypergraph> {
    match name {
        "g1" => Some(ForbiddenPattern::G1.hypergraph()),
        "g2" => Some(ForbiddenPattern::G2.hypergraph()),
        "g3" => Some(ForbiddenPattern::G3.hypergraph()),
        "fano_plane_F1" | "fano_plane_F2" => {
            let f = fano_lines_and_ovals();
            let g = if name.ends_with('1') { f.f1 } else { f.f2 };
            debug_assert_eq!(g.labels(), fano_labels().as_slice());
            Some(g)
        }
        _ => None,
    }
}

pub fn fixture_json(name: &str) -> Option<Value> {
    if let Some(fx) = switch_fixture(name) {
        return serde_json::to_value(fx).ok();
    }
    serde_json::to_value(graph_fixture(name)?).ok()
}

/// Compact JSON with the key order fixed by the types.
pub fn canonical_json(name: &str) -> Option<String> {
    serde_json::to_string(&fixture_json(name)?).ok()
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

pub fn checksum(name: &str) -> Option<String> {
    canonical_json(name).map(|s| sha256_hex(s.as_bytes()))
}

pub fn pinned_checksum(name: &str) -> Option<&'static str> {
    CHECKSUMS.iter().find(|(n, _)| *n == name).map(|(_, c)| *c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checksums_are_frozen() {
        for name in FIXTURE_NAMES {
            assert_eq!(checksum(name).as_deref(), pinned_checksum(name), "{name}");
        }
    }

    #[test]
    fn fixture_sizes() {
        for (name, n, e) in [("fano10", 10, 11), ("sun12", 12, 15), ("cube11", 11, 14)] {
            let fx = switch_fixture(name).unwrap();
            assert_eq!((fx.g.n(), fx.g.edge_count(), fx.h.edge_count()), (n, e, e), "{name}");
        }
        assert_eq!(graph_fixture("g3").unwrap().n(), 5);
        assert!(graph_fixture("nope").is_none());
    }

    #[test]
    fn json_round_trip() {
        let fx = switch_fixture("sun12").unwrap();
        let back: SwitchFixture = serde_json::from_str(&canonical_json("sun12").unwrap()).unwrap();
        assert_eq!(back, fx);
    }
}
