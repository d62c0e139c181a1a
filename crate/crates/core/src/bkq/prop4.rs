//! Closed-form descriptions of `B^k_R` for the small cases, checked against
//! the enumeration.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{enumerate_bkq, BkqError, BkqOptions};
use crate::catalog::{build, fano_lines_and_ovals, SwitchFamily};
use crate::combinatorics::combinations;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Prop4Part {
    /// `gm:s`, `k = 1`.
    I,
    /// `wqh:p`, `k = 1`.
    Ii,
    /// `fano`, `k = 1`.
    Iii,
    /// `fano`, `k = 3`.
    Iv,
    /// `sg:2m`, `k = 1`.
    V,
}

impl FromStr for Prop4Part {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "i" | "1" => Prop4Part::I,
            "ii" | "2" => Prop4Part::Ii,
            "iii" | "3" => Prop4Part::Iii,
            "iv" | "4" => Prop4Part::Iv,
            "v" | "5" => Prop4Part::V,
            _ => return Err(format!("unknown part {s:?}; expected i, ii, iii, iv or v")),
        })
    }
}

impl fmt::Display for Prop4Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Prop4Part::I => "i",
            Prop4Part::Ii => "ii",
            Prop4Part::Iii => "iii",
            Prop4Part::Iv => "iv",
            Prop4Part::V => "v",
        };
        f.write_str(s)
    }
}

/// Edge sets of `G` and `t(G)`, each edge as a sorted list of zero-based
/// vertex indices.
pub type EdgePair = (BTreeSet<Vec<usize>>, BTreeSet<Vec<usize>>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop4Report {
    pub part: Prop4Part,
    pub family: SwitchFamily,
    pub k: usize,
    pub enumerated: usize,
    pub closed_form: usize,
    /// Enumerated but absent from the closed form.
    pub extra: Vec<EdgePair>,
    /// In the closed form but not found by the enumeration.
    pub missing: Vec<EdgePair>,
    pub matches: bool,
}

fn singletons(xs: impl IntoIterator<Item = usize>) -> BTreeSet<Vec<usize>> {
    xs.into_iter().map(|x| vec![x]).collect()
}

fn subsets(s: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..(1 << s)).map(move |m| (0..s).filter(|i| m & (1 << i) != 0).collect())
}

/// The family, rank and closed-form pair set for a part; `param` is `s`
/// for (i), `p` for (ii) and `m` for (v), and ignored otherwise.
pub fn closed_form(part: Prop4Part, param: usize) -> Result<(SwitchFamily, usize, BTreeSet<EdgePair>), BkqError> {
    let mut out = BTreeSet::new();
    let (family, k) = match part {
        Prop4Part::I => {
            let s = param;
            let family = SwitchFamily::Gm(s).validate()?;
            let all: Vec<usize> = (0..s).collect();
            out.insert((BTreeSet::new(), BTreeSet::new()));
            out.insert((singletons(all.clone()), singletons(all.clone())));
            for x in combinations(s, s / 2) {
                let rest = all.iter().copied().filter(|v| !x.contains(v));
                out.insert((singletons(x.iter().copied()), singletons(rest)));
            }
            (family, 1)
        }
        Prop4Part::Ii => {
            let p = param;
            let family = SwitchFamily::Wqh(p).validate()?;
            for x in subsets(2 * p) {
                let left = x.iter().filter(|&&v| v < p).count();
                if 2 * left == x.len() {
                    out.insert((singletons(x.iter().copied()), singletons(x)));
                }
            }
            out.insert((singletons(0..p), singletons(p..2 * p)));
            (family, 1)
        }
        Prop4Part::Iii => {
            let fano = fano_lines_and_ovals();
            let all: BTreeSet<usize> = (0..7).collect();
            out.insert((BTreeSet::new(), BTreeSet::new()));
            out.insert((singletons(all.clone()), singletons(all.clone())));
            for i in 0..7 {
                let (l, o) = (&fano.lines[i], &fano.ovals[i]);
                out.insert((singletons(l.iter().copied()), singletons(o.iter().copied())));
                let lc = all.iter().copied().filter(|v| !l.contains(v));
                let oc = all.iter().copied().filter(|v| !o.contains(v));
                out.insert((singletons(lc), singletons(oc)));
            }
            (SwitchFamily::Fano, 1)
        }
        Prop4Part::Iv => {
            let fano = fano_lines_and_ovals();
            out.insert((BTreeSet::new(), BTreeSet::new()));
            out.insert((fano.f1.edges().clone(), fano.f2.edges().clone()));
            (SwitchFamily::Fano, 3)
        }
        Prop4Part::V => {
            let m = param;
            let s = 2 * m;
            let family = SwitchFamily::Sg(s).validate()?;
            for x in subsets(s) {
                let counts: Vec<usize> = (0..m).map(|i| x.iter().filter(|&&v| v / 2 == i).count()).collect();
                if counts.iter().all(|c| c % 2 == 0) {
                    out.insert((singletons(x.iter().copied()), singletons(x.iter().copied())));
                }
                if counts.iter().all(|&c| c == 1) {
                    // π(v_j) = v_{j−2 mod 2m}
                    let shifted = x.iter().map(|&v| (v + s - 2) % s);
                    out.insert((singletons(x.iter().copied()), singletons(shifted)));
                }
            }
            (family, 1)
        }
    };
    Ok((family, k, out))
}

/// Enumerates the relevant `B^k_R` and compares it with the closed form.
pub fn reproduce_prop4(part: Prop4Part, param: usize, opts: &BkqOptions) -> Result<Prop4Report, BkqError> {
    let (family, k, expected) = closed_form(part, param)?;
    let r = build(family)?;
    let report = enumerate_bkq(&r, k, opts)?;
    let found: BTreeSet<EdgePair> =
        report.pairs.iter().map(|p| (p.g.edges().clone(), p.tg.edges().clone())).collect();
    let extra: Vec<EdgePair> = found.difference(&expected).cloned().collect();
    let missing: Vec<EdgePair> = expected.difference(&found).cloned().collect();
    Ok(Prop4Report {
        part,
        family,
        k,
        enumerated: found.len(),
        closed_form: expected.len(),
        matches: extra.is_empty() && missing.is_empty(),
        extra,
        missing,
    })
}
