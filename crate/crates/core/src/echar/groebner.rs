//! Sparse multivariate polynomials over ℚ and Buchberger's algorithm.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::numbers::Rational;

pub type Monomial = Vec<u16>;

/// Variable `0` is the largest under both orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    GrevLex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &[u16], b: &[u16]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => {
                let da: u32 = a.iter().map(|&e| e as u32).sum();
                let db: u32 = b.iter().map(|&e| e as u32).sum();
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u16], b: &[u16]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn quotient(a: &[u16], b: &[u16]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn coprime(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn degree(m: &[u16]) -> u32 {
    m.iter().map(|&e| e as u32).sum()
}

/// Terms sorted by decreasing monomial, no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    order: MonomialOrder,
    terms: Vec<(Monomial, Rational)>,
}

impl MultiPoly {
    pub fn zero(nvars: usize, order: MonomialOrder) -> Self {
        MultiPoly { nvars, order, terms: vec![] }
    }

    pub fn from_terms(nvars: usize, order: MonomialOrder, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut v: Vec<(Monomial, Rational)> = terms.into_iter().collect();
        assert!(v.iter().all(|(m, _)| m.len() == nvars), "monomial length must equal the variable count");
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut merged: Vec<(Monomial, Rational)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match merged.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        MultiPoly { nvars, order, terms: merged }
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, order: MonomialOrder, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Self::from_terms(nvars, order, [(m, Rational::one())])
    }

    pub fn constant(nvars: usize, order: MonomialOrder, c: Rational) -> Self {
        Self::from_terms(nvars, order, [(vec![0; nvars], c)])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| degree(m)).max().unwrap_or(0)
    }

    pub fn monic(mut self) -> Self {
        if let Some(lc) = self.leading_coefficient().cloned() {
            for (_, c) in &mut self.terms {
                *c /= &lc;
            }
        }
        self
    }

    /// True when only variable `i` appears.
    pub fn only_in(&self, i: usize) -> bool {
        self.terms.iter().all(|(m, _)| m.iter().enumerate().all(|(j, &e)| j == i || e == 0))
    }

    /// `self − c·x^m·other`, merging two sorted term lists.
    fn sub_scaled(&self, c: &Rational, m: &[u16], other: &MultiPoly) -> MultiPoly {
        let ord = self.order;
        let shifted = other.terms.iter().map(|(om, oc)| (om.iter().zip(m).map(|(a, b)| a + b).collect::<Monomial>(), oc * c));
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().cloned().peekable();
        let mut b = shifted.peekable();
        loop {
            let pick = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => ord.cmp(&x.0, &y.0),
            };
            match pick {
                Ordering::Greater => out.push(a.next().unwrap()),
                Ordering::Less => {
                    let (mm, cc) = b.next().unwrap();
                    out.push((mm, -cc));
                }
                Ordering::Equal => {
                    let (mm, ca) = a.next().unwrap();
                    let (_, cb) = b.next().unwrap();
                    let d = ca - cb;
                    if !d.is_zero() {
                        out.push((mm, d));
                    }
                }
            }
        }
        MultiPoly { nvars: self.nvars, order: ord, terms: out }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.sub_scaled(&-Rational::one(), &vec![0; self.nvars], other)
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.sub_scaled(&Rational::one(), &vec![0; self.nvars], other)
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let terms = self.terms.iter().flat_map(|(ma, ca)| {
            other.terms.iter().map(move |(mb, cb)| (ma.iter().zip(mb).map(|(x, y)| x + y).collect(), ca * cb))
        });
        MultiPoly::from_terms(self.nvars, self.order, terms.collect::<Vec<_>>())
    }

    /// The same polynomial under another order.
    pub fn reorder(&self, order: MonomialOrder) -> MultiPoly {
        MultiPoly::from_terms(self.nvars, order, self.terms.clone())
    }

    /// Exponents of variable `i` with coefficients, for univariate members.
    pub fn univariate_coeffs(&self, i: usize) -> Vec<Rational> {
        let d = self.terms.iter().map(|(m, _)| m[i] as usize).max().unwrap_or(0);
        let mut c = vec![Rational::zero(); if self.is_zero() { 0 } else { d + 1 }];
        for (m, v) in &self.terms {
            c[m[i] as usize] += v;
        }
        c
    }
}

/// Full reduction of `f` modulo `basis`.
pub fn reduce(f: &MultiPoly, basis: &[MultiPoly]) -> MultiPoly {
    let mut rem_terms: Vec<(Monomial, Rational)> = Vec::new();
    let mut p = f.clone();
    'outer: while let Some((lm, lc)) = p.terms.first().cloned() {
        for g in basis {
            let glm = g.leading_monomial().expect("basis elements are nonzero");
            if divides(glm, &lm) {
                let c = &lc / g.leading_coefficient().unwrap();
                p = p.sub_scaled(&c, &quotient(&lm, glm), g);
                continue 'outer;
            }
        }
        rem_terms.push((lm, lc));
        p.terms.remove(0);
    }
    MultiPoly { nvars: f.nvars, order: f.order, terms: rem_terms }
}

fn s_polynomial(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (lf, lg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let l = lcm(lf, lg);
    let a = MultiPoly::from_terms(f.nvars, f.order, [(quotient(&l, lf), Rational::one() / f.leading_coefficient().unwrap())]);
    let b = &Rational::one() / g.leading_coefficient().unwrap();
    a.mul(f).sub_scaled(&b, &quotient(&l, lg), g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerLimits {
    /// S-pairs reduced before giving up.
    pub max_pairs: u64,
    /// Largest number of terms allowed in any basis element.
    pub max_terms: usize,
}

impl Default for GroebnerLimits {
    fn default() -> Self {
        GroebnerLimits { max_pairs: 20_000, max_terms: 20_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroebnerFailure {
    PairBudget { processed: u64 },
    TooManyTerms { terms: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    /// Reduced and monic, sorted by increasing leading monomial.
    pub basis: Vec<MultiPoly>,
    pub pairs_processed: u64,
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner(gens: &[MultiPoly], limits: &GroebnerLimits) -> Result<GroebnerBasis, GroebnerFailure> {
    let mut g: Vec<MultiPoly> = Vec::new();
    for f in gens {
        let r = reduce(f, &g);
        if !r.is_zero() {
            g.push(r.monic());
        }
    }
    let Some(order) = g.first().map(|p| p.order) else {
        return Ok(GroebnerBasis { basis: vec![], pairs_processed: 0 });
    };
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    let mut processed = 0u64;
    while !pairs.is_empty() {
        // normal strategy: smallest lcm first
        let &(i, j) = pairs
            .iter()
            .min_by(|a, b| {
                let la = lcm(g[a.0].leading_monomial().unwrap(), g[a.1].leading_monomial().unwrap());
                let lb = lcm(g[b.0].leading_monomial().unwrap(), g[b.1].leading_monomial().unwrap());
                order.cmp(&la, &lb).then(a.cmp(b))
            })
            .unwrap();
        pairs.remove(&(i, j));
        let (li, lj) = (g[i].leading_monomial().unwrap().clone(), g[j].leading_monomial().unwrap().clone());
        if coprime(&li, &lj) {
            continue;
        }
        let l = lcm(&li, &lj);
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && divides(g[k].leading_monomial().unwrap(), &l)
                && !pairs.contains(&key(i, k))
                && !pairs.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        processed += 1;
        if processed > limits.max_pairs {
            return Err(GroebnerFailure::PairBudget { processed });
        }
        let r = reduce(&s_polynomial(&g[i], &g[j]), &g);
        if r.is_zero() {
            continue;
        }
        if r.terms.len() > limits.max_terms {
            return Err(GroebnerFailure::TooManyTerms { terms: r.terms.len() });
        }
        let r = r.monic();
        let n = g.len();
        g.push(r);
        for k in 0..n {
            pairs.insert((k, n));
        }
    }
    Ok(GroebnerBasis { basis: interreduce(g), pairs_processed: processed })
}

fn interreduce(mut g: Vec<MultiPoly>) -> Vec<MultiPoly> {
    g.sort_by(|a, b| a.order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    // drop elements whose leading monomial is divisible by an earlier one
    let mut minimal: Vec<MultiPoly> = Vec::new();
    for p in g {
        let lm = p.leading_monomial().unwrap();
        if !minimal.iter().any(|q| divides(q.leading_monomial().unwrap(), lm)) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for idx in 0..minimal.len() {
        let others: Vec<MultiPoly> =
            minimal.iter().enumerate().filter(|&(j, _)| j != idx).map(|(_, p)| p.clone()).collect();
        let lead = MultiPoly { terms: minimal[idx].terms[..1].to_vec(), ..minimal[idx].clone() };
        let tail = MultiPoly { terms: minimal[idx].terms[1..].to_vec(), ..minimal[idx].clone() };
        out.push(lead.add(&reduce(&tail, &others)).monic());
    }
    out
}

/// True when the ideal has finitely many common zeros: every variable has a
/// pure power among the leading monomials.
pub fn is_zero_dimensional(basis: &[MultiPoly]) -> bool {
    let Some(n) = basis.first().map(|p| p.nvars) else {
        return false;
    };
    (0..n).all(|i| {
        basis.iter().any(|p| {
            let lm = p.leading_monomial().unwrap();
            lm[i] > 0 && lm.iter().enumerate().all(|(j, &e)| j == i || e == 0)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn orders() {
        assert_eq!(MonomialOrder::Lex.cmp(&[1, 0, 0], &[0, 5, 5]), Ordering::Greater);
        assert_eq!(MonomialOrder::GrevLex.cmp(&[1, 0, 0], &[0, 1, 1]), Ordering::Less);
        assert_eq!(MonomialOrder::GrevLex.cmp(&[1, 1, 0], &[1, 0, 1]), Ordering::Greater);
    }

    #[test]
    fn circle_and_line() {
        // x² + y² − 1, x − y  →  lex basis {x − y, y² − 1/2}
        let o = MonomialOrder::Lex;
        let f = MultiPoly::from_terms(2, o, [(vec![2, 0], r(1)), (vec![0, 2], r(1)), (vec![0, 0], r(-1))]);
        let g = MultiPoly::from_terms(2, o, [(vec![1, 0], r(1)), (vec![0, 1], r(-1))]);
        let gb = groebner(&[f, g], &GroebnerLimits::default()).unwrap();
        assert_eq!(gb.basis.len(), 2);
        let last = &gb.basis[0];
        assert!(last.only_in(1));
        assert_eq!(last.univariate_coeffs(1), vec![Rational::new((-1).into(), 2.into()), r(0), r(1)]);
        assert!(is_zero_dimensional(&gb.basis));
    }

    #[test]
    fn unit_ideal() {
        let o = MonomialOrder::GrevLex;
        let x = MultiPoly::var(1, o, 0);
        let one_minus = MultiPoly::constant(1, o, r(1)).sub(&x);
        let gb = groebner(&[x, one_minus], &GroebnerLimits::default()).unwrap();
        assert_eq!(gb.basis, vec![MultiPoly::constant(1, o, r(1))]);
    }

    #[test]
    fn budget_is_enforced() {
        let o = MonomialOrder::Lex;
        let x = |i| MultiPoly::var(3, o, i);
        let gens = [x(0).mul(&x(1)).sub(&x(2)), x(1).mul(&x(2)).sub(&x(0)), x(0).mul(&x(2)).sub(&x(1))];
        let tight = GroebnerLimits { max_pairs: 1, max_terms: 100 };
        assert!(matches!(groebner(&gens, &tight), Err(GroebnerFailure::PairBudget { .. })));
    }
}
