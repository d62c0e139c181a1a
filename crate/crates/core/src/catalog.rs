//! The switching matrices: the indecomposable regular orthogonal matrices of
//! level 2 and row sum 1, plus the `gm:n` and `wqh:p` families.
//!
//! `circulant(a₀, …, a_{s−1})` has entry `a_{(c−r) mod s}` at row `r`,
//! column `c`, so each row is the right rotation of the one above.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::Hypergraph;
use crate::numbers::{int, rat, Rational, RatMatrix};

pub const VQ_DIMENSION_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown family {0:?}; expected gm4, gm:<n>, sg:<n>, fano, cube or wqh:<p>")]
    UnknownFamily(String),
    #[error("cannot embed a {s}x{s} matrix into dimension {n}")]
    EmbedTooSmall { s: usize, n: usize },
    #[error("dimension {dim} exceeds the cap of {cap}")]
    TooLarge { dim: usize, cap: usize },
    #[error("matrix entries are too large for the integer scan")]
    Overflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SwitchFamily {
    Gm4,
    /// `(2/n)·J − I` for even `n ≥ 4`.
    Gm(usize),
    /// Sun-graph matrix of even dimension `n = 2m`, `m ≥ 3` odd.
    Sg(usize),
    Fano,
    Cube,
    /// Dimension `2p`.
    Wqh(usize),
}

impl SwitchFamily {
    pub fn validate(self) -> Result<Self, CatalogError> {
        match self {
            SwitchFamily::Gm(n) if n < 4 || n % 2 == 1 => {
                Err(CatalogError::InvalidParameter(format!("gm needs even n >= 4, got {n}")))
            }
            SwitchFamily::Sg(n) if n % 2 == 1 || n / 2 < 3 || (n / 2) % 2 == 0 => Err(
                CatalogError::InvalidParameter(format!("sg needs n = 2m with odd m >= 3, got {n}")),
            ),
            SwitchFamily::Wqh(0) => Err(CatalogError::InvalidParameter("wqh needs p >= 1".into())),
            f => Ok(f),
        }
    }

    pub fn dim(self) -> usize {
        match self {
            SwitchFamily::Gm4 => 4,
            SwitchFamily::Gm(n) | SwitchFamily::Sg(n) => n,
            SwitchFamily::Fano => 7,
            SwitchFamily::Cube => 8,
            SwitchFamily::Wqh(p) => 2 * p,
        }
    }

    /// All families named in the level-2 classification, plus small members
    /// of the two parametric families.
    pub fn standard() -> Vec<SwitchFamily> {
        vec![
            SwitchFamily::Gm4,
            SwitchFamily::Sg(6),
            SwitchFamily::Sg(10),
            SwitchFamily::Fano,
            SwitchFamily::Cube,
            SwitchFamily::Gm(4),
            SwitchFamily::Gm(6),
            SwitchFamily::Gm(8),
            SwitchFamily::Wqh(1),
            SwitchFamily::Wqh(2),
            SwitchFamily::Wqh(3),
        ]
    }
}

impl fmt::Display for SwitchFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SwitchFamily::Gm4 => write!(f, "gm4"),
            SwitchFamily::Gm(n) => write!(f, "gm:{n}"),
            SwitchFamily::Sg(n) => write!(f, "sg:{n}"),
            SwitchFamily::Fano => write!(f, "fano"),
            SwitchFamily::Cube => write!(f, "cube"),
            SwitchFamily::Wqh(p) => write!(f, "wqh:{p}"),
        }
    }
}

impl FromStr for SwitchFamily {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, CatalogError> {
        let t = s.trim().to_ascii_lowercase();
        let param = |p: &str| {
            p.parse::<usize>().map_err(|_| CatalogError::InvalidParameter(format!("bad parameter in {s:?}")))
        };
        let f = match t.split_once(':') {
            None => match t.as_str() {
                "gm4" => SwitchFamily::Gm4,
                "fano" => SwitchFamily::Fano,
                "cube" => SwitchFamily::Cube,
                _ => return Err(CatalogError::UnknownFamily(s.to_string())),
            },
            Some(("gm", p)) => SwitchFamily::Gm(param(p)?),
            Some(("sg", p)) => SwitchFamily::Sg(param(p)?),
            Some(("wqh", p)) => SwitchFamily::Wqh(param(p)?),
            Some(_) => return Err(CatalogError::UnknownFamily(s.to_string())),
        };
        f.validate()
    }
}

impl Serialize for SwitchFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SwitchFamily {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn circulant(first_row: &[Rational]) -> RatMatrix {
    let s = first_row.len();
    RatMatrix::from_fn(s, s, |r, c| first_row[(c + s - r) % s].clone())
}

/// Block circulant with square blocks of equal size.
pub fn block_circulant(blocks: &[RatMatrix]) -> RatMatrix {
    let m = blocks.len();
    let b = blocks[0].rows();
    RatMatrix::from_fn(m * b, m * b, |r, c| {
        let blk = &blocks[(c / b + m - r / b) % m];
        blk.get(r % b, c % b).clone()
    })
}

#[cfg(test)]
fn ints(rows: &[Vec<i64>]) -> RatMatrix {
    RatMatrix::from_int_rows(rows, 1).expect("well-formed rows")
}

fn half() -> Rational {
    rat(1, 2)
}

pub fn build(f: SwitchFamily) -> Result<RatMatrix, CatalogError> {
    let f = f.validate()?;
    let i2 = RatMatrix::identity(2);
    let j2 = RatMatrix::ones(2);
    let o2 = RatMatrix::zeros(2, 2);
    let y = i2.scale(&int(2)).sub(&j2).unwrap();
    let z = j2.sub(&i2).unwrap();
    Ok(match f {
        SwitchFamily::Gm4 => circulant(&[int(-1), int(1), int(1), int(1)]).scale(&half()),
        SwitchFamily::Gm(n) => {
            let c = rat(2, n as i64);
            RatMatrix::ones(n).scale(&c).sub(&RatMatrix::identity(n)).unwrap()
        }
        SwitchFamily::Sg(n) => {
            let m = n / 2;
            let mut blocks = vec![j2.clone()];
            blocks.extend(std::iter::repeat_n(o2, m - 2));
            blocks.push(y);
            block_circulant(&blocks).scale(&half())
        }
        SwitchFamily::Fano => {
            circulant(&[-1, 1, 1, 0, 1, 0, 0].map(int)).scale(&half())
        }
        SwitchFamily::Cube => {
            let neg = |m: &RatMatrix| m.scale(&int(-1));
            let grid = [
                [neg(&i2), i2.clone(), i2.clone(), i2.clone()],
                [i2.clone(), neg(&z), i2.clone(), z.clone()],
                [i2.clone(), z.clone(), neg(&z), i2.clone()],
                [i2.clone(), i2.clone(), z.clone(), neg(&z)],
            ];
            RatMatrix::from_fn(8, 8, |r, c| grid[r / 2][c / 2].get(r % 2, c % 2).clone()).scale(&half())
        }
        SwitchFamily::Wqh(p) => {
            let inv = rat(1, p as i64);
            RatMatrix::from_fn(2 * p, 2 * p, |r, c| {
                let same_block = (r < p) == (c < p);
                let diag = if r == c { Rational::one() } else { Rational::zero() };
                if same_block {
                    diag - &inv
                } else {
                    inv.clone()
                }
            })
        }
    })
}

/// The sun-graph matrix in the form `½·circulant(Y, O, …, O, J, O)`.
pub fn build_sg_alternative(n: usize) -> Result<RatMatrix, CatalogError> {
    SwitchFamily::Sg(n).validate()?;
    let m = n / 2;
    let i2 = RatMatrix::identity(2);
    let j2 = RatMatrix::ones(2);
    let y = i2.scale(&int(2)).sub(&j2).unwrap();
    let mut blocks = vec![RatMatrix::zeros(2, 2); m];
    blocks[0] = y;
    blocks[m - 2] = j2;
    Ok(block_circulant(&blocks).scale(&half()))
}

/// Finds block permutations `(σ, τ)` of 2×2 blocks with
/// `b[block i][block j] = a[block σ(i)][block τ(j)]`.
pub fn find_block_permutation(a: &RatMatrix, b: &RatMatrix, block: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    let m = a.rows() / block;
    let block_of = |x: &RatMatrix, i: usize, j: usize| x.submatrix(&range(i * block, block), &range(j * block, block));
    let mut sigma: Vec<usize> = (0..m).collect();
    loop {
        // with the row blocks fixed, each column block of b pins down τ(j)
        let mut tau = Vec::with_capacity(m);
        let mut used = vec![false; m];
        for j in 0..m {
            let hit = (0..m).find(|&t| !used[t] && (0..m).all(|i| block_of(b, i, j) == block_of(a, sigma[i], t)));
            match hit {
                Some(t) => {
                    used[t] = true;
                    tau.push(t);
                }
                None => break,
            }
        }
        if tau.len() == m {
            return Some((sigma, tau));
        }
        if !next_permutation(&mut sigma) {
            return None;
        }
    }
}

fn range(start: usize, len: usize) -> Vec<usize> {
    (start..start + len).collect()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// `Q = R ⊕ I_{n−s}`.
pub fn embed(r: &RatMatrix, n: usize) -> Result<RatMatrix, CatalogError> {
    let s = r.rows();
    if n < s {
        return Err(CatalogError::EmbedTooSmall { s, n });
    }
    Ok(r.direct_sum(&RatMatrix::identity(n - s)))
}

/// A zero-one vector `v` together with `Rᵀv`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VqPair {
    pub v: Vec<bool>,
    pub image: Vec<bool>,
}

impl VqPair {
    pub fn support(&self) -> Vec<usize> {
        support(&self.v)
    }

    pub fn image_support(&self) -> Vec<usize> {
        support(&self.image)
    }
}

pub fn support(v: &[bool]) -> Vec<usize> {
    v.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i).collect()
}

pub fn indicator(s: usize, items: &[usize]) -> Vec<bool> {
    let mut v = vec![false; s];
    for &i in items {
        v[i] = true;
    }
    v
}

/// `𝒱(R)`: every zero-one `v` whose image `Rᵀv` is again zero-one, sorted
/// by `v`.
pub fn vq(r: &RatMatrix) -> Result<Vec<VqPair>, CatalogError> {
    let s = r.rows();
    if !r.is_square() {
        return Err(CatalogError::InvalidParameter("vq needs a square matrix".into()));
    }
    if s > VQ_DIMENSION_CAP {
        return Err(CatalogError::TooLarge { dim: s, cap: VQ_DIMENSION_CAP });
    }
    let (level, entries) = r.scaled_to_integers().ok_or(CatalogError::Overflow)?;
    // (Rᵀv)_j = Σ_i r[i][j] v_i; every coordinate must land in {0, level}.
    let mut sums = vec![0i64; s];
    let mut mask: u64 = 0;
    let mut found = Vec::new();
    let check = |sums: &[i64]| sums.iter().all(|&x| x == 0 || x == level);
    if check(&sums) {
        found.push(mask);
    }
    for step in 1u64..(1u64 << s) {
        let bit = step.trailing_zeros() as usize;
        let adding = mask & (1 << bit) == 0;
        mask ^= 1 << bit;
        let row = &entries[bit * s..(bit + 1) * s];
        for (acc, &e) in sums.iter_mut().zip(row) {
            if adding {
                *acc += e;
            } else {
                *acc -= e;
            }
        }
        if check(&sums) {
            found.push(mask);
        }
    }
    let mut out: Vec<VqPair> = found
        .into_iter()
        .map(|m| {
            let v: Vec<bool> = (0..s).map(|i| m & (1 << i) != 0).collect();
            let image = (0..s)
                .map(|j| (0..s).filter(|&i| v[i]).map(|i| entries[i * s + j]).sum::<i64>() == level)
                .collect();
            VqPair { v, image }
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Lines `ℓᵢ`, ovals `𝒪ᵢ` and the two Fano planes on `C = {v₁, …, v₇}`,
/// as zero-based vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanoData {
    pub lines: Vec<Vec<usize>>,
    pub ovals: Vec<Vec<usize>>,
    pub f1: Hypergraph,
    pub f2: Hypergraph,
}

pub fn fano_labels() -> Vec<String> {
    (1..=7).map(|i| i.to_string()).collect()
}

pub fn fano_lines_and_ovals() -> FanoData {
    let shift = |set: &[usize], i: usize| {
        let mut s: Vec<usize> = set.iter().map(|&v| (v + i) % 7).collect();
        s.sort_unstable();
        s
    };
    let line = [0, 1, 3];
    let oval = [2, 4, 5];
    let lines: Vec<Vec<usize>> = (0..7).map(|i| shift(&line, i)).collect();
    let ovals: Vec<Vec<usize>> = (0..7).map(|i| shift(&oval, i)).collect();
    let f1 = Hypergraph::from_indices(3, fano_labels(), lines.clone()).expect("lines");
    let f2 = Hypergraph::from_indices(3, fano_labels(), ovals.clone()).expect("ovals");
    FanoData { lines, ovals, f1, f2 }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn first_row(m: &RatMatrix) -> Vec<Rational> {
        m.row(0).to_vec()
    }

    #[test]
    fn parse_and_display() {
        for s in ["gm4", "gm:6", "sg:10", "fano", "cube", "wqh:3"] {
            let f: SwitchFamily = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!("gm:5".parse::<SwitchFamily>().is_err());
        assert!("sg:8".parse::<SwitchFamily>().is_err());
        assert!("wqh:0".parse::<SwitchFamily>().is_err());
        assert!("petersen".parse::<SwitchFamily>().is_err());
    }

    #[test]
    fn built_examples() {
        let f = build(SwitchFamily::Fano).unwrap();
        assert_eq!(first_row(&f), [-1, 1, 1, 0, 1, 0, 0].map(|x| rat(x, 2)).to_vec());
        assert_eq!(build(SwitchFamily::Wqh(1)).unwrap(), ints(&[vec![0, 1], vec![1, 0]]));
        assert_eq!(build(SwitchFamily::Gm(4)).unwrap(), build(SwitchFamily::Gm4).unwrap());
    }

    #[test]
    fn all_regular_orthogonal() {
        for f in SwitchFamily::standard() {
            let m = build(f).unwrap();
            assert_eq!(m.is_regular_orthogonal(), Ok(Rational::one()), "{f}");
        }
    }

    #[test]
    fn alternative_sg_is_a_block_permutation() {
        for n in [6, 10, 14] {
            let a = build(SwitchFamily::Sg(n)).unwrap();
            let b = build_sg_alternative(n).unwrap();
            assert_eq!(b.is_regular_orthogonal(), Ok(Rational::one()));
            let (s, t) = find_block_permutation(&a, &b, 2).expect("permutation exists");
            let rows: Vec<usize> = (0..n).map(|i| 2 * s[i / 2] + i % 2).collect();
            let cols: Vec<usize> = (0..n).map(|i| 2 * t[i / 2] + i % 2).collect();
            assert_eq!(a.submatrix(&rows, &cols), b);
        }
    }

    #[test]
    fn embedding() {
        let f = build(SwitchFamily::Fano).unwrap();
        let q = embed(&f, 10).unwrap();
        assert_eq!(q.rows(), 10);
        assert_eq!(q.get(8, 8), &int(1));
        assert_eq!(embed(&f, 7).unwrap(), f);
        assert_eq!(embed(&RatMatrix::identity(2), 4).unwrap(), RatMatrix::identity(4));
        assert!(embed(&f, 6).is_err());
    }

    #[test]
    fn vq_examples() {
        let gm = vq(&build(SwitchFamily::Gm4).unwrap()).unwrap();
        assert_eq!(gm.len(), 8);
        for p in &gm {
            let w = p.support().len();
            match w {
                0 | 4 => assert_eq!(p.v, p.image),
                2 => assert!(p.v.iter().zip(&p.image).all(|(a, b)| a != b)),
                _ => panic!("unexpected weight {w}"),
            }
        }
        assert_eq!(vq(&RatMatrix::identity(5)).unwrap().len(), 32);
        let fano = fano_lines_and_ovals();
        let vf = vq(&build(SwitchFamily::Fano).unwrap()).unwrap();
        assert_eq!(vf.len(), 16);
        for i in 0..7 {
            let pair = VqPair { v: indicator(7, &fano.lines[i]), image: indicator(7, &fano.ovals[i]) };
            assert!(vf.contains(&pair));
        }
    }

    #[test]
    fn fano_structure() {
        let d = fano_lines_and_ovals();
        assert_eq!(d.lines[0], vec![0, 1, 3]);
        assert_eq!(d.ovals[0], vec![2, 4, 5]);
        assert_eq!(d.f1.edge_count(), 7);
        assert_eq!(d.f2.edge_count(), 7);
        for i in 0..7 {
            let mut all: Vec<usize> = d.lines[i].iter().chain(&d.ovals[i]).copied().collect();
            all.push((i + 6) % 7);
            all.sort_unstable();
            assert_eq!(all, (0..7).collect::<Vec<_>>());
        }
    }
}
