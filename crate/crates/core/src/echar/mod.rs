//! E-characteristic computations at desk scale: exact characteristic
//! polynomials of matrices, elimination polynomials for the normalized
//! E-eigenvalues of small tensors, and a numeric cross-check.

mod groebner;
mod numeric;
mod poly;

pub use groebner::{
    groebner, is_zero_dimensional, reduce, GroebnerBasis, GroebnerFailure, GroebnerLimits, Monomial, MonomialOrder,
    MultiPoly,
};
pub use numeric::{eigenpairs_numeric, ComplexValue, NumericEigenpair, NumericOptions};
pub use poly::{char_poly_matrix, UniPoly};

use num_complex::Complex64;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::arrangement_count;
use crate::numbers::{RatMatrix, Rational};
use crate::tensor::SymTensor;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EcharError {
    #[error("tensor too large for elimination: k = {k}, n = {n} (limits: n <= 5 for k = 2, n <= 4 for k = 3)")]
    TooLarge { k: usize, n: usize },
    #[error("S-pair budget exhausted after {0} pairs")]
    Budget(u64),
    #[error("a basis element grew to {0} terms")]
    TermCap(usize),
    #[error("the elimination ideal is zero")]
    NoEliminant,
    #[error("spectra computed under different scaling conventions")]
    ConventionMismatch,
    #[error("matrix must be square and symmetric")]
    NotSymmetric,
}

impl From<GroebnerFailure> for EcharError {
    fn from(f: GroebnerFailure) -> Self {
        match f {
            GroebnerFailure::PairBudget { processed } => EcharError::Budget(processed),
            GroebnerFailure::TooManyTerms { terms } => EcharError::TermCap(terms),
        }
    }
}

/// `Σ_{i=0}^{n−1} (k−1)^i`, which is `n` for `k = 2`.
pub fn generic_degree_bound(n: usize, k: usize) -> u128 {
    assert!(n >= 1 && k >= 2, "degree bound needs n >= 1 and k >= 2");
    (0..n as u32).map(|i| ((k - 1) as u128).pow(i)).sum()
}

/// `1/(k−1)!` when scaling is on.
pub fn scale_factor(k: usize, scaled: bool) -> Rational {
    if !scaled {
        return Rational::one();
    }
    let f: i64 = (1..k as i64).product();
    Rational::new(1.into(), f.into())
}

/// The order-2 tensor of a symmetric matrix.
pub fn tensor_from_matrix(m: &RatMatrix) -> Result<SymTensor, EcharError> {
    if !m.is_square() || m.transpose() != *m {
        return Err(EcharError::NotSymmetric);
    }
    let n = m.rows();
    let entries = (0..n).flat_map(|i| (i..n).map(move |j| (vec![i, j], m.get(i, j).clone())));
    Ok(SymTensor::from_entries(2, n, entries).expect("indices in range"))
}

/// The polynomials `(𝒜x)_i − λx_i` and `xᵀx − 1` in variables
/// `x₁ > … > x_n > λ`.
pub fn eigen_system(t: &SymTensor, scaled: bool, order: MonomialOrder) -> Vec<MultiPoly> {
    let n = t.dim();
    let nv = n + 1;
    let s = scale_factor(t.order(), scaled);
    let mut rows: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); n];
    for (key, a) in t.entries() {
        let mut prev = None;
        for (pos, &i) in key.iter().enumerate() {
            if prev == Some(i) {
                continue;
            }
            prev = Some(i);
            let rest: Vec<usize> = key[..pos].iter().chain(&key[pos + 1..]).copied().collect();
            let mut m = vec![0u16; nv];
            for &j in &rest {
                m[j] += 1;
            }
            let c = a * &s * Rational::from_integer(arrangement_count(&rest).into());
            rows[i].push((m, c));
        }
    }
    let mut out: Vec<MultiPoly> = rows
        .into_iter()
        .enumerate()
        .map(|(i, mut terms)| {
            let mut m = vec![0u16; nv];
            m[i] = 1;
            m[n] = 1;
            terms.push((m, -Rational::one()));
            MultiPoly::from_terms(nv, order, terms)
        })
        .collect();
    let mut norm: Vec<(Monomial, Rational)> = (0..n)
        .map(|i| {
            let mut m = vec![0u16; nv];
            m[i] = 2;
            (m, Rational::one())
        })
        .collect();
    norm.push((vec![0u16; nv], -Rational::one()));
    out.push(MultiPoly::from_terms(nv, order, norm));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Elimination {
    /// Monic generator of the elimination ideal in `λ`.
    pub polynomial: UniPoly,
    pub squarefree: UniPoly,
    pub degree_bound: u128,
    /// Monitored only: whether `deg g` stays within the generic bound
    /// (doubled for odd `k`).
    pub within_bound: bool,
    pub pairs_processed: u64,
    pub basis_size: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub diagnostic: Option<String>,
}

/// The monic generator of `⟨𝒜x − λx, xᵀx − 1⟩ ∩ ℚ[λ]`, whose roots are the
/// normalized E-eigenvalues.
pub fn echar_eliminate(t: &SymTensor, scaled: bool, limits: &GroebnerLimits) -> Result<Elimination, EcharError> {
    let (k, n) = (t.order(), t.dim());
    let fits = match k {
        2 => n <= 5,
        3 => n <= 4,
        _ => false,
    };
    if !fits || n == 0 {
        return Err(EcharError::TooLarge { k, n });
    }
    let gb = groebner(&eigen_system(t, scaled, MonomialOrder::Lex), limits)?;
    let lam = gb.basis.iter().find(|p| p.only_in(n)).ok_or(EcharError::NoEliminant)?;
    let polynomial = UniPoly::new(lam.univariate_coeffs(n)).monic();
    let diagnostic = (polynomial.degree() == Some(0)).then(|| "the ideal is trivial: no normalized E-eigenvalues".to_string());
    let degree_bound = generic_degree_bound(n, k);
    let cap = if k % 2 == 1 { 2 * degree_bound } else { degree_bound };
    Ok(Elimination {
        squarefree: polynomial.squarefree_part(),
        within_bound: polynomial.degree().unwrap_or(0) as u128 <= cap,
        degree_bound,
        pairs_processed: gb.pairs_processed,
        basis_size: gb.basis.len(),
        polynomial,
        diagnostic,
    })
}

/// Whether the root set of `p` is closed under `λ ↦ −λ`.
pub fn is_sign_symmetric(p: &UniPoly) -> bool {
    let s = p.squarefree_part();
    s.reflect().monic() == s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Spectrum {
    Exact { polynomial: UniPoly, scaled: bool },
    Numeric { values: Vec<ComplexValue>, scaled: bool },
}

impl Spectrum {
    fn scaled(&self) -> bool {
        match self {
            Spectrum::Exact { scaled, .. } | Spectrum::Numeric { scaled, .. } => *scaled,
        }
    }

    fn points(&self) -> Vec<Complex64> {
        match self {
            Spectrum::Exact { polynomial, .. } => polynomial.squarefree_part().roots(),
            Spectrum::Numeric { values, .. } => values.iter().map(|&v| v.into()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumComparison {
    /// `exact` compares squarefree parts; `numeric` compares point sets.
    pub mode: String,
    pub equal: bool,
    pub only_in_a: Vec<ComplexValue>,
    pub only_in_b: Vec<ComplexValue>,
}

fn unmatched(a: &[Complex64], b: &[Complex64], tol: f64) -> Vec<ComplexValue> {
    a.iter().filter(|x| !b.iter().any(|y| (*x - y).norm() <= tol)).map(|&x| x.into()).collect()
}

/// Set comparison of two spectra. Exact when both sides are polynomials.
pub fn compare_spectra(a: &Spectrum, b: &Spectrum, tol: f64) -> Result<SpectrumComparison, EcharError> {
    if a.scaled() != b.scaled() {
        return Err(EcharError::ConventionMismatch);
    }
    if let (Spectrum::Exact { polynomial: p, .. }, Spectrum::Exact { polynomial: q, .. }) = (a, b) {
        let (sp, sq) = (p.squarefree_part(), q.squarefree_part());
        let g = sp.gcd(&sq);
        let extra = |s: &UniPoly| {
            if g.is_zero() {
                return s.roots().into_iter().map(Into::into).collect();
            }
            s.div_rem(&g).0.roots().into_iter().map(Into::into).collect()
        };
        return Ok(SpectrumComparison {
            mode: "exact".into(),
            equal: sp == sq,
            only_in_a: extra(&sp),
            only_in_b: extra(&sq),
        });
    }
    let (pa, pb) = (a.points(), b.points());
    let only_in_a = unmatched(&pa, &pb, tol);
    let only_in_b = unmatched(&pb, &pa, tol);
    Ok(SpectrumComparison { mode: "numeric".into(), equal: only_in_a.is_empty() && only_in_b.is_empty(), only_in_a, only_in_b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Hypergraph;
    use crate::tensor::adjacency_tensor;

    fn edge3() -> SymTensor {
        adjacency_tensor(&Hypergraph::with_numbered_vertices(3, 3, vec![vec![0, 1, 2]]).unwrap())
    }

    #[test]
    fn degree_bounds() {
        assert_eq!(generic_degree_bound(4, 3), 15);
        assert_eq!(generic_degree_bound(6, 2), 6);
        assert_eq!(generic_degree_bound(1, 3), 1);
        assert_eq!(generic_degree_bound(3, 4), 13);
    }

    #[test]
    fn swap_matrix_matches_char_poly() {
        let m = RatMatrix::from_int_rows(&[vec![0, 1], vec![1, 0]], 1).unwrap();
        let e = echar_eliminate(&tensor_from_matrix(&m).unwrap(), false, &GroebnerLimits::default()).unwrap();
        assert_eq!(e.squarefree, char_poly_matrix(&m).squarefree_part());
    }

    #[test]
    fn single_edge_spectrum() {
        let e = echar_eliminate(&edge3(), true, &GroebnerLimits::default()).unwrap();
        let target = UniPoly::from_ints(&[0, -1, 0, 3]);
        assert!(e.squarefree.divides(&target) && target.monic().divides(&e.squarefree));
        assert!(is_sign_symmetric(&e.polynomial));
        assert!(e.within_bound);
    }

    #[test]
    fn empty_tensor_has_only_zero() {
        let t = SymTensor::zeros(3, 3);
        let e = echar_eliminate(&t, true, &GroebnerLimits::default()).unwrap();
        assert_eq!(e.polynomial, UniPoly::x());
    }

    #[test]
    fn comparisons() {
        let a = echar_eliminate(&edge3(), true, &GroebnerLimits::default()).unwrap();
        let empty = echar_eliminate(&SymTensor::zeros(3, 3), true, &GroebnerLimits::default()).unwrap();
        let ea = Spectrum::Exact { polynomial: a.polynomial.clone(), scaled: true };
        let eb = Spectrum::Exact { polynomial: empty.polynomial, scaled: true };
        let cmp = compare_spectra(&ea, &eb, 1e-8).unwrap();
        assert!(!cmp.equal);
        assert_eq!(cmp.only_in_a.len(), 2);
        let num = eigenpairs_numeric(&edge3(), true, &NumericOptions::default());
        let en = Spectrum::Numeric { values: num.iter().map(|p| p.lambda).collect(), scaled: true };
        assert!(compare_spectra(&ea, &en, 1e-8).unwrap().equal);
        let unscaled = Spectrum::Exact { polynomial: a.polynomial, scaled: false };
        assert_eq!(compare_spectra(&ea, &unscaled, 1e-8), Err(EcharError::ConventionMismatch));
    }

    #[test]
    fn size_cap() {
        let t = SymTensor::zeros(3, 5);
        assert_eq!(echar_eliminate(&t, true, &GroebnerLimits::default()).unwrap_err(), EcharError::TooLarge { k: 3, n: 5 });
    }

    #[test]
    fn relabeled_hypergraph_is_cospectral() {
        let g = Hypergraph::with_numbered_vertices(4, 3, vec![vec![0, 1, 2], vec![0, 1, 3], vec![1, 2, 3]]).unwrap();
        let h = g.map_vertices(&[2, 0, 3, 1]);
        let lim = GroebnerLimits::default();
        let a = echar_eliminate(&adjacency_tensor(&g), true, &lim).unwrap();
        let b = echar_eliminate(&adjacency_tensor(&h), true, &lim).unwrap();
        assert!(is_sign_symmetric(&a.polynomial));
        let sa = Spectrum::Exact { polynomial: a.polynomial, scaled: true };
        let sb = Spectrum::Exact { polynomial: b.polynomial, scaled: true };
        assert!(compare_spectra(&sa, &sb, 0.0).unwrap().equal);
    }

    #[test]
    fn complete_four_vertex_run() {
        let g = Hypergraph::with_numbered_vertices(4, 3, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])
            .unwrap();
        let e = echar_eliminate(&adjacency_tensor(&g), true, &GroebnerLimits::default()).unwrap();
        assert!(is_sign_symmetric(&e.polynomial));
        let roots = e.squarefree.roots();
        let num = eigenpairs_numeric(&adjacency_tensor(&g), true, &NumericOptions::default());
        for r in roots {
            assert!(num.iter().any(|p| (Complex64::from(p.lambda) - r).norm() < 1e-6), "{r} not found");
        }
    }

    #[test]
    fn numeric_path_and_empty() {
        let p3 = Hypergraph::with_numbered_vertices(3, 2, vec![vec![0, 1], vec![1, 2]]).unwrap();
        let got: Vec<f64> = eigenpairs_numeric(&adjacency_tensor(&p3), false, &NumericOptions::default())
            .iter()
            .map(|p| p.lambda.re)
            .collect();
        let r2 = 2f64.sqrt();
        assert_eq!(got.len(), 3);
        for (g, w) in got.iter().zip([-r2, 0.0, r2]) {
            assert!((g - w).abs() < 1e-8);
        }
        let empty = eigenpairs_numeric(&SymTensor::zeros(3, 3), true, &NumericOptions::default());
        assert_eq!(empty.len(), 1);
        assert!(Complex64::from(empty[0].lambda).norm() < 1e-8);
    }
}
