use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::numbers::{format_rational, parse_rational, NumberError, RatMatrix, Rational};

/// Univariate polynomial over ℚ, coefficients from the constant term up.
/// The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `λ`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => UniPoly { coeffs: self.coeffs.iter().map(|c| c / lc).collect() },
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::zero(), |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer((i as i64).into()))
                .collect(),
        )
    }

    pub fn add(&self, other: &UniPoly) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &UniPoly, i: usize| p.coeffs.get(i).cloned().unwrap_or_else(Rational::zero);
        Self::new((0..n).map(|i| get(self, i) + get(other, i)).collect())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `p(−λ)`.
    pub fn reflect(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn divides(&self, other: &UniPoly) -> bool {
        !self.is_zero() && other.div_rem(self).1.is_zero()
    }

    /// Monic product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return if self.is_zero() { Self::zero() } else { Self::one() };
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Complex roots with multiplicity, from the eigenvalues of the companion
    /// matrix.
    pub fn roots(&self) -> Vec<Complex64> {
        let Some(d) = self.degree() else { return vec![] };
        if d == 0 {
            return vec![];
        }
        let m = self.monic();
        let c: Vec<f64> = m.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
        let companion = DMatrix::from_fn(d, d, |i, j| {
            if j == d - 1 {
                -c[i]
            } else if i == j + 1 {
                1.0
            } else {
                0.0
            }
        });
        companion.complex_eigenvalues().iter().map(|z| self.polish(*z)).collect()
    }

    /// A few Newton steps on the squarefree part to sharpen a root.
    fn polish(&self, mut z: Complex64) -> Complex64 {
        let p = self.squarefree_part();
        let dp = p.derivative();
        for _ in 0..8 {
            let d = dp.eval_complex(z);
            if d.norm() < 1e-300 {
                break;
            }
            let step = p.eval_complex(z) / d;
            z -= step;
            if step.norm() < 1e-16 * z.norm().max(1.0) {
                break;
            }
        }
        z
    }

    /// Coefficients from the leading term down, as `"p/q"` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().rev().map(format_rational).collect()
    }

    pub fn from_strings<S: AsRef<str>>(s: &[S]) -> Result<Self, NumberError> {
        let mut c: Vec<Rational> = s.iter().map(|x| parse_rational(x.as_ref())).collect::<Result<_, _>>()?;
        c.reverse();
        Ok(Self::new(c))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let a = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let coef = format_rational(&a);
            match (i, a.is_one()) {
                (0, _) => f.write_str(&coef)?,
                (_, true) => {}
                _ => write!(f, "{coef}*")?,
            }
            match i {
                0 => {}
                1 => f.write_str("λ")?,
                _ => write!(f, "λ^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        UniPoly::from_strings(&v).map_err(serde::de::Error::custom)
    }
}

/// `det(λI − M)` by Faddeev–LeVerrier.
pub fn char_poly_matrix(m: &RatMatrix) -> UniPoly {
    assert!(m.is_square(), "characteristic polynomial needs a square matrix");
    let n = m.rows();
    // coefficients c_n = 1, c_{n-k} = -tr(M·M_k)/k with M_1 = I, M_{k+1} = M·M_k + c_{n-k} I
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = RatMatrix::identity(n);
    for k in 1..=n {
        let am = m.mul(&mk).expect("square");
        let trace: Rational = (0..n).map(|i| am.get(i, i).clone()).sum();
        let c = -trace / Rational::from_integer((k as i64).into());
        coeffs[n - k] = c.clone();
        mk = am.add(&RatMatrix::identity(n).scale(&c)).expect("square");
    }
    UniPoly::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = UniPoly::from_ints(&[-1, 0, 1]);
        let q = UniPoly::from_ints(&[1, 1]);
        let (d, r) = p.div_rem(&q);
        assert_eq!(d, UniPoly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(p.gcd(&q), q);
        let sq = p.mul(&p).mul(&UniPoly::x());
        assert_eq!(sq.squarefree_part(), p.mul(&UniPoly::x()));
        assert_eq!(p.reflect(), p);
        assert_eq!(UniPoly::x().to_string(), "λ");
        assert_eq!(UniPoly::from_ints(&[0, -2, 0, 3]).to_string(), "3*λ^3 - 2*λ");
    }

    #[test]
    fn char_polys() {
        let swap = RatMatrix::from_int_rows(&[vec![0, 1], vec![1, 0]], 1).unwrap();
        assert_eq!(char_poly_matrix(&swap), UniPoly::from_ints(&[-1, 0, 1]));
        assert_eq!(char_poly_matrix(&RatMatrix::zeros(3, 3)), UniPoly::from_ints(&[0, 0, 0, 1]));
        let p3 = RatMatrix::from_int_rows(&[vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]], 1).unwrap();
        assert_eq!(char_poly_matrix(&p3), UniPoly::from_ints(&[0, -2, 0, 1]));
    }

    #[test]
    fn roots_of_cubic() {
        let p = UniPoly::from_ints(&[0, -1, 0, 3]);
        let mut r: Vec<f64> = p.roots().iter().map(|z| z.re).collect();
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let s = 1.0 / 3f64.sqrt();
        for (got, want) in r.iter().zip([-s, 0.0, s]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn string_round_trip() {
        let p = UniPoly::new(vec![Rational::new(1.into(), 3.into()), Rational::zero(), Rational::one()]);
        assert_eq!(p.to_strings(), vec!["1", "0", "1/3"]);
        assert_eq!(UniPoly::from_strings(&p.to_strings()).unwrap(), p);
    }
}
