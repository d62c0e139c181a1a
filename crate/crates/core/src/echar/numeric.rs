//! Damped Newton on `𝒜x − λx = 0, xᵀx − 1 = 0` over ℂ^{n+1}.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::arrangement_count;
use crate::tensor::SymTensor;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexValue {
    fn from(z: Complex64) -> Self {
        ComplexValue { re: z.re, im: z.im }
    }
}

impl From<ComplexValue> for Complex64 {
    fn from(z: ComplexValue) -> Self {
        Complex64::new(z.re, z.im)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericEigenpair {
    pub lambda: ComplexValue,
    pub x: Vec<ComplexValue>,
    /// `max(‖𝒜x − λx‖∞, |xᵀx − 1|)`.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericOptions {
    pub starts: usize,
    /// Clustering radius for eigenvalues.
    pub tol: f64,
    /// Residual below which a run counts as converged.
    pub residual_tol: f64,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for NumericOptions {
    fn default() -> Self {
        NumericOptions { starts: 200, tol: 1e-8, residual_tol: 1e-11, max_iter: 100, seed: 0 }
    }
}

/// `(𝒜x)_i` as a list of `(i, coefficient, other indices)`.
struct Terms {
    n: usize,
    terms: Vec<(usize, f64, Vec<usize>)>,
}

impl Terms {
    fn new(t: &SymTensor, scale: f64) -> Terms {
        let mut terms = Vec::new();
        for (key, a) in t.entries() {
            let a = a.to_f64().unwrap_or(f64::NAN) * scale;
            let mut prev = None;
            for (pos, &i) in key.iter().enumerate() {
                if prev == Some(i) {
                    continue;
                }
                prev = Some(i);
                let rest: Vec<usize> = key[..pos].iter().chain(&key[pos + 1..]).copied().collect();
                terms.push((i, a * arrangement_count(&rest) as f64, rest));
            }
        }
        Terms { n: t.dim(), terms }
    }

    fn residual(&self, z: &DVector<Complex64>) -> DVector<Complex64> {
        let n = self.n;
        let lambda = z[n];
        let mut f = DVector::from_fn(n + 1, |i, _| if i < n { -lambda * z[i] } else { Complex64::new(-1.0, 0.0) });
        for (i, c, rest) in &self.terms {
            f[*i] += rest.iter().fold(Complex64::new(*c, 0.0), |acc, &j| acc * z[j]);
        }
        for j in 0..n {
            f[n] += z[j] * z[j];
        }
        f
    }

    fn jacobian(&self, z: &DVector<Complex64>) -> DMatrix<Complex64> {
        let n = self.n;
        let mut jac = DMatrix::from_element(n + 1, n + 1, Complex64::zero());
        for i in 0..n {
            jac[(i, i)] = -z[n];
            jac[(i, n)] = -z[i];
            jac[(n, i)] = z[i] * 2.0;
        }
        for (i, c, rest) in &self.terms {
            for p in 0..rest.len() {
                let d = rest
                    .iter()
                    .enumerate()
                    .filter(|&(q, _)| q != p)
                    .fold(Complex64::new(*c, 0.0), |acc, (_, &j)| acc * z[j]);
                jac[(*i, rest[p])] += d;
            }
        }
        jac
    }
}

fn sup_norm(v: &DVector<Complex64>) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn newton(terms: &Terms, mut z: DVector<Complex64>, opts: &NumericOptions) -> Option<(DVector<Complex64>, f64)> {
    let mut f = terms.residual(&z);
    let mut r = sup_norm(&f);
    for _ in 0..opts.max_iter {
        if r < opts.residual_tol {
            return Some((z, r));
        }
        let step = terms.jacobian(&z).lu().solve(&(-&f))?;
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..=20 {
            let cand = &z + &step * Complex64::new(t, 0.0);
            let fc = terms.residual(&cand);
            let rc = sup_norm(&fc);
            if rc.is_finite() && rc < r {
                z = cand;
                f = fc;
                r = rc;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (r < opts.residual_tol).then_some((z, r))
}

fn random_start(terms: &Terms, rng: &mut ChaCha8Rng) -> DVector<Complex64> {
    let n = terms.n;
    let mut x: Vec<Complex64> = (0..n)
        .map(|_| {
            let rad = 2.0 * rng.gen::<f64>().sqrt();
            let theta = rng.gen::<f64>() * std::f64::consts::TAU;
            Complex64::from_polar(rad, theta)
        })
        .collect();
    let norm = x.iter().map(|v| v * v).sum::<Complex64>().sqrt();
    if norm.norm() > 1e-12 {
        for v in &mut x {
            *v /= norm;
        }
    }
    let mut z = DVector::from_iterator(n + 1, x.iter().copied().chain([Complex64::zero()]));
    // λ₀ = xᵀ(𝒜x) for the normalised start
    let f = terms.residual(&z);
    z[n] = (0..n).map(|i| x[i] * f[i]).sum();
    z
}

/// Converged eigenpairs from seeded random starts, one representative (the
/// best residual) per cluster of eigenvalues. May miss eigenvalues.
pub fn eigenpairs_numeric(t: &SymTensor, scaled: bool, opts: &NumericOptions) -> Vec<NumericEigenpair> {
    let scale = if scaled { 1.0 / (1..t.order()).map(|v| v as f64).product::<f64>() } else { 1.0 };
    let terms = Terms::new(t, scale);
    let n = terms.n;
    let mut found: Vec<(DVector<Complex64>, f64)> = (0..opts.starts)
        .into_par_iter()
        .filter_map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(s as u64);
            newton(&terms, random_start(&terms, &mut rng), opts)
        })
        .collect();
    found.sort_by(|a, b| a.1.total_cmp(&b.1));
    let mut reps: Vec<NumericEigenpair> = Vec::new();
    for (z, r) in found {
        let lambda = z[n];
        if reps.iter().any(|p| (Complex64::from(p.lambda) - lambda).norm() <= opts.tol) {
            continue;
        }
        reps.push(NumericEigenpair { lambda: lambda.into(), x: (0..n).map(|i| z[i].into()).collect(), residual: r });
    }
    reps.sort_by(|a, b| a.lambda.re.total_cmp(&b.lambda.re).then(a.lambda.im.total_cmp(&b.lambda.im)));
    reps
}
