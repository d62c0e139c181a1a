//! Regularity of adjacency tensors: is there a nonzero `x` with `𝒜x = 0`
//! and `xᵀx = 0`?
//!
//! [`decide_regularity`] applies the structural rule (nullity for graphs,
//! component shape for 3-graphs, always irregular above). [`search_witness`]
//! independently looks for an exact witness vector in ℚ(i, √m).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::{arrangement_count, combinations};
use crate::echar::{groebner, is_zero_dimensional, GroebnerFailure, GroebnerLimits, Monomial, MonomialOrder, MultiPoly};
use crate::hypergraph::{components, forbidden_patterns, is_complete, ForbiddenPattern, Hypergraph, HypergraphError, PatternEmbedding};
use crate::numbers::{common_denominator, square_free_decomposition, QuadExt, RatMatrix, Rational};
use crate::tensor::adjacency_tensor;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegularityError {
    #[error("regularity is only defined here for rank k >= 2, got {0}")]
    UnsupportedRank(usize),
    #[error("the hypergraph is regular, so it has no witness")]
    RegularInput,
    #[error("no witness found by any constructive route")]
    NoWitness,
    #[error("witness has length {got}, expected {expected}")]
    Length { expected: usize, got: usize },
    #[error("Gröbner basis computation stopped: {0:?}")]
    Groebner(GroebnerFailure),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// The structural facts behind a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StructuralProof {
    /// Graphs: regular iff the nullity of the adjacency matrix is at most 1.
    Nullity { nullity: usize },
    /// 3-graphs: regular iff every component is complete and at most one
    /// vertex is isolated.
    Components { components: Vec<Vec<String>>, complete: Vec<bool>, isolated: usize },
    /// Rank at least 4: irregular once there are two vertices.
    HighRank { k: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessSource {
    /// `e_u + i·e_v` for rank at least 4.
    HighRank { u: String, v: String },
    /// `e_u + i·e_v` for two isolated vertices.
    IsolatedPair { u: String, v: String },
    /// A pattern vector placed on an induced copy of a forbidden pattern,
    /// zero elsewhere.
    Pattern { pattern: ForbiddenPattern, vertices: Vec<String> },
    /// `e_u + i·e_v` for two vertices that share no edge.
    SeparatedPair { u: String, v: String },
    /// Cube roots of unity on a non-edge `{a, b, c}`.
    CubeRootTriple { vertices: Vec<String> },
    /// `√ρ·y₁ + i·y₂` for orthogonal rational null vectors, `ρ = |y₂|²/|y₁|²`.
    NullSpace { radicand: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub x: Vec<QuadExt>,
    pub source: WitnessSource,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityVerdict {
    pub regular: bool,
    pub proof: StructuralProof,
    /// Present for irregular verdicts whenever a witness was found.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

fn adjacency_matrix(g: &Hypergraph) -> RatMatrix {
    let mut m = RatMatrix::zeros(g.n(), g.n());
    for e in g.edges() {
        m.set(e[0], e[1], Rational::one());
        m.set(e[1], e[0], Rational::one());
    }
    m
}

fn structural(g: &Hypergraph) -> Result<(bool, StructuralProof), RegularityError> {
    match g.k() {
        0 | 1 => Err(RegularityError::UnsupportedRank(g.k())),
        2 => {
            let nullity = adjacency_matrix(g).nullity();
            Ok((nullity <= 1, StructuralProof::Nullity { nullity }))
        }
        3 => {
            let comps = components(g);
            let complete: Vec<bool> = comps.iter().map(|c| c.len() == 1 || is_complete(&g.induced(c))).collect();
            let isolated = (0..g.n()).filter(|&v| g.degree(v) == 0).count();
            let regular = complete.iter().all(|&c| c) && isolated <= 1;
            let components = comps.iter().map(|c| c.iter().map(|&v| g.label(v).to_string()).collect()).collect();
            Ok((regular, StructuralProof::Components { components, complete, isolated }))
        }
        k => Ok((g.n() <= 1, StructuralProof::HighRank { k, n: g.n() })),
    }
}

/// The structural verdict, with a witness attached when irregular and one
/// can be found.
pub fn decide_regularity(g: &Hypergraph) -> Result<RegularityVerdict, RegularityError> {
    let (regular, proof) = structural(g)?;
    let witness = if regular { None } else { search_witness(g)? };
    Ok(RegularityVerdict { regular, proof, witness })
}

/// A verified witness for a hypergraph the structural rule calls irregular.
pub fn build_witness(g: &Hypergraph) -> Result<Witness, RegularityError> {
    let (regular, _) = structural(g)?;
    if regular {
        return Err(RegularityError::RegularInput);
    }
    search_witness(g)?.ok_or(RegularityError::NoWitness)
}

/// Exact check of `𝒜_G x = 0`, `Σ xᵢ² = 0` and `x ≠ 0`.
pub fn verify_witness(g: &Hypergraph, x: &[QuadExt]) -> Result<bool, RegularityError> {
    if x.len() != g.n() {
        return Err(RegularityError::Length { expected: g.n(), got: x.len() });
    }
    if x.iter().all(|v| v.is_zero()) {
        return Ok(false);
    }
    let square_sum = x.iter().fold(QuadExt::zero(), |acc, v| acc + v * v);
    if !square_sum.is_zero() {
        return Ok(false);
    }
    let ax = adjacency_tensor(g).apply(x).expect("length checked");
    Ok(ax.iter().all(|v| v.is_zero()))
}

fn q(a: Rational, b: Rational, c: Rational, d: Rational) -> QuadExt {
    QuadExt::new(a, b, c, d)
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// The pattern vectors, one entry per pattern vertex.
pub fn pattern_witness(p: ForbiddenPattern) -> Vec<QuadExt> {
    let one = QuadExt::one();
    let i = QuadExt::i();
    let zero = QuadExt::zero();
    match p {
        ForbiddenPattern::G1 => vec![one, zero.clone(), zero, i],
        ForbiddenPattern::G2 => vec![
            q(r(-1, 2), r(0, 1), r(0, 1), r(-1, 2)),
            zero,
            one,
            q(r(-1, 2), r(0, 1), r(0, 1), r(1, 2)),
        ],
        ForbiddenPattern::G3 => vec![one.clone(), one, zero, i.clone(), i],
    }
}

fn pair_vector(n: usize, u: usize, v: usize) -> Vec<QuadExt> {
    let mut x = vec![QuadExt::zero(); n];
    x[u] = QuadExt::one();
    x[v] = QuadExt::i();
    x
}

fn embed_pattern(n: usize, emb: &PatternEmbedding) -> Vec<QuadExt> {
    let mut x = vec![QuadExt::zero(); n];
    for (val, &v) in pattern_witness(emb.pattern).into_iter().zip(&emb.vertices) {
        x[v] = val;
    }
    x
}

fn shares_edge(g: &Hypergraph, u: usize, v: usize) -> bool {
    g.edges().iter().any(|e| e.contains(&u) && e.contains(&v))
}

fn null_space_witness(g: &Hypergraph) -> Option<Witness> {
    let basis = adjacency_matrix(g).null_space();
    if basis.len() < 2 {
        return None;
    }
    let dot = |a: &[Rational], b: &[Rational]| a.iter().zip(b).map(|(x, y)| x * y).sum::<Rational>();
    let y1 = basis[0].clone();
    let coef = dot(&basis[1], &y1) / dot(&y1, &y1);
    let y2: Vec<Rational> = basis[1].iter().zip(&y1).map(|(b, a)| b - &coef * a).collect();
    // clear denominators so the norms are integers
    let integral = |y: Vec<Rational>| {
        let d = Rational::from_integer(common_denominator(y.iter()));
        y.into_iter().map(|v| v * &d).collect::<Vec<_>>()
    };
    let (y1, y2) = (integral(y1), integral(y2));
    let rho = dot(&y2, &y2) / dot(&y1, &y1);
    // √(p/q) = f·√m / q with p·q = f²·m
    let pq: BigInt = rho.numer() * rho.denom();
    let (f, m) = square_free_decomposition(&pq);
    let scale = Rational::new(f, rho.denom().clone());
    let m_u64 = u64::try_from(m).ok()?;
    let x: Vec<QuadExt> = y1
        .iter()
        .zip(&y2)
        .map(|(a, b)| {
            let s = a * &scale;
            if m_u64 == 1 {
                q(s, b.clone(), Rational::zero(), Rational::zero())
            } else {
                QuadExt::with_radicand(m_u64, Rational::zero(), b.clone(), s, Rational::zero())
            }
        })
        .collect();
    debug_assert!(rho.is_positive());
    Some(Witness { x, source: WitnessSource::NullSpace { radicand: m_u64 } })
}

/// Tries every constructive route in turn and returns the first witness
/// that verifies exactly, whatever the structural verdict says.
pub fn search_witness(g: &Hypergraph) -> Result<Option<Witness>, RegularityError> {
    let n = g.n();
    let label = |v: usize| g.label(v).to_string();
    let check = |w: Witness| -> Result<Option<Witness>, RegularityError> {
        Ok(if verify_witness(g, &w.x)? { Some(w) } else { None })
    };
    match g.k() {
        0 | 1 => return Err(RegularityError::UnsupportedRank(g.k())),
        2 => return match null_space_witness(g) {
            Some(w) => check(w),
            None => Ok(None),
        },
        3 => {}
        _ => {
            if n < 2 {
                return Ok(None);
            }
            return check(Witness { x: pair_vector(n, 0, 1), source: WitnessSource::HighRank { u: label(0), v: label(1) } });
        }
    }
    let isolated: Vec<usize> = (0..n).filter(|&v| g.degree(v) == 0).collect();
    if isolated.len() >= 2 {
        let (u, v) = (isolated[0], isolated[1]);
        if let Some(w) = check(Witness { x: pair_vector(n, u, v), source: WitnessSource::IsolatedPair { u: label(u), v: label(v) } })? {
            return Ok(Some(w));
        }
    }
    for emb in forbidden_patterns(g)? {
        let source = WitnessSource::Pattern {
            pattern: emb.pattern,
            vertices: emb.vertices.iter().map(|&v| label(v)).collect(),
        };
        if let Some(w) = check(Witness { x: embed_pattern(n, &emb), source })? {
            return Ok(Some(w));
        }
    }
    for uv in combinations(n, 2) {
        let (u, v) = (uv[0], uv[1]);
        if !shares_edge(g, u, v) {
            let w = Witness { x: pair_vector(n, u, v), source: WitnessSource::SeparatedPair { u: label(u), v: label(v) } };
            if let Some(w) = check(w)? {
                return Ok(Some(w));
            }
        }
    }
    let omega = q(r(-1, 2), r(0, 1), r(0, 1), r(1, 2));
    let omega2 = q(r(-1, 2), r(0, 1), r(0, 1), r(-1, 2));
    for t in combinations(n, 3) {
        if g.has_edge(&t) {
            continue;
        }
        let mut x = vec![QuadExt::zero(); n];
        x[t[0]] = omega2.clone();
        x[t[1]] = QuadExt::one();
        x[t[2]] = omega.clone();
        let source = WitnessSource::CubeRootTriple { vertices: t.iter().map(|&v| label(v)).collect() };
        if let Some(w) = check(Witness { x, source })? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// The polynomials `(𝒜x)_i` and `Σ xᵢ²` in `x₁..x_n`.
pub fn regularity_system(g: &Hypergraph, order: MonomialOrder) -> Vec<MultiPoly> {
    let n = g.n();
    let mut rows: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); n];
    for e in g.edges() {
        for (pos, &i) in e.iter().enumerate() {
            let rest: Vec<usize> = e[..pos].iter().chain(&e[pos + 1..]).copied().collect();
            let mut m = vec![0u16; n];
            for &j in &rest {
                m[j] += 1;
            }
            rows[i].push((m, Rational::from_integer(arrangement_count(&rest).into())));
        }
    }
    let mut out: Vec<MultiPoly> = rows
        .into_iter()
        .filter(|r| !r.is_empty())
        .map(|r| MultiPoly::from_terms(n, order, r))
        .collect();
    let norm: Vec<(Monomial, Rational)> = (0..n)
        .map(|i| {
            let mut m = vec![0u16; n];
            m[i] = 2;
            (m, Rational::one())
        })
        .collect();
    out.push(MultiPoly::from_terms(n, order, norm));
    out
}

/// Decides regularity from the equations alone: the system is homogeneous,
/// so its only common zero is `x = 0` exactly when the ideal is
/// zero-dimensional.
pub fn decide_regularity_algebraic(g: &Hypergraph, limits: &GroebnerLimits) -> Result<bool, RegularityError> {
    if g.k() < 2 {
        return Err(RegularityError::UnsupportedRank(g.k()));
    }
    if g.n() == 0 {
        return Ok(true);
    }
    let gb = groebner(&regularity_system(g, MonomialOrder::GrevLex), limits).map_err(RegularityError::Groebner)?;
    Ok(is_zero_dimensional(&gb.basis))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pattern(p: ForbiddenPattern) -> Hypergraph {
        p.hypergraph()
    }

    #[test]
    fn pattern_witnesses_verify() {
        for p in [ForbiddenPattern::G1, ForbiddenPattern::G2, ForbiddenPattern::G3] {
            assert!(verify_witness(&pattern(p), &pattern_witness(p)).unwrap(), "{}", p.name());
        }
    }

    #[test]
    fn non_witnesses() {
        let g1 = pattern(ForbiddenPattern::G1);
        let mut x = vec![QuadExt::zero(); 4];
        x[0] = QuadExt::one();
        assert!(!verify_witness(&g1, &x).unwrap());
        assert!(!verify_witness(&g1, &vec![QuadExt::zero(); 4]).unwrap());
        assert!(verify_witness(&g1, &x[..3]).is_err());
    }

    #[test]
    fn g2_is_irregular_with_its_pattern_vector() {
        let v = decide_regularity(&pattern(ForbiddenPattern::G2)).unwrap();
        assert!(!v.regular);
        let w = v.witness.unwrap();
        assert!(matches!(w.source, WitnessSource::Pattern { pattern: ForbiddenPattern::G2, .. }));
        assert_eq!(w.x, pattern_witness(ForbiddenPattern::G2));
    }

    #[test]
    fn g3_padded_into_seven_vertices() {
        // G3 on vertices 2..6 (1-based), two extra isolated-from-the-pattern vertices
        let g = Hypergraph::with_numbered_vertices(7, 3, vec![vec![1, 2, 3], vec![3, 4, 5]]).unwrap();
        let emb = PatternEmbedding { pattern: ForbiddenPattern::G3, vertices: vec![1, 2, 3, 4, 5] };
        let x = embed_pattern(7, &emb);
        assert!(verify_witness(&g, &x).unwrap());
        assert!(x[0].is_zero() && x[6].is_zero());
    }

    #[test]
    fn complete_components() {
        let k4: Vec<Vec<usize>> = combinations(4, 3).collect();
        let mut edges = k4.clone();
        edges.push(vec![4, 5, 6]);
        let g = Hypergraph::with_numbered_vertices(8, 3, edges).unwrap();
        let v = decide_regularity(&g).unwrap();
        assert!(v.regular);
        let StructuralProof::Components { isolated, complete, .. } = v.proof else { panic!() };
        assert_eq!(isolated, 1);
        assert!(complete.iter().all(|&c| c));
    }

    #[test]
    fn rank_four_is_irregular() {
        let g = Hypergraph::with_numbered_vertices(5, 4, vec![vec![0, 1, 2, 3]]).unwrap();
        let v = decide_regularity(&g).unwrap();
        assert!(!v.regular);
        assert!(verify_witness(&g, &v.witness.unwrap().x).unwrap());
        let one = Hypergraph::with_numbered_vertices(1, 4, vec![]).unwrap();
        assert!(decide_regularity(&one).unwrap().regular);
    }

    #[test]
    fn graphs_with_irrational_ratio() {
        // K_{1,3} plus an isolated vertex: nullity 3
        let g = Hypergraph::with_numbered_vertices(5, 2, vec![vec![0, 1], vec![0, 2], vec![0, 3]]).unwrap();
        let v = decide_regularity(&g).unwrap();
        assert!(!v.regular);
        let w = v.witness.unwrap();
        assert!(verify_witness(&g, &w.x).unwrap());
        let p3 = Hypergraph::with_numbered_vertices(3, 2, vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert!(decide_regularity(&p3).unwrap().regular);
    }

    #[test]
    fn rank_one_is_rejected() {
        let g = Hypergraph::with_numbered_vertices(2, 1, vec![vec![0]]).unwrap();
        assert_eq!(decide_regularity(&g), Err(RegularityError::UnsupportedRank(1)));
    }

    #[test]
    fn algebraic_decision() {
        let lim = GroebnerLimits::default();
        let g = |n, edges: Vec<Vec<usize>>| Hypergraph::with_numbered_vertices(n, 3, edges).unwrap();
        assert!(decide_regularity_algebraic(&g(3, vec![vec![0, 1, 2]]), &lim).unwrap());
        assert!(!decide_regularity_algebraic(&g(4, vec![vec![0, 1, 2]]), &lim).unwrap());
        let star = g(5, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 1, 4], vec![2, 3, 4]]);
        assert!(decide_regularity_algebraic(&star, &lim).unwrap());
        assert!(!decide_regularity(&star).unwrap().regular);
        let path = Hypergraph::with_numbered_vertices(3, 2, vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert!(decide_regularity_algebraic(&path, &lim).unwrap());
        let two = Hypergraph::with_numbered_vertices(2, 2, vec![]).unwrap();
        assert!(!decide_regularity_algebraic(&two, &lim).unwrap());
    }
}
