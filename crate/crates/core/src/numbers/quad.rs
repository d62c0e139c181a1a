use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{format_rational, parse_rational, Rational};

/// An element `a + b·i + c·√m + d·i·√m` of ℚ(i, √m).
///
/// The default radicand is 3, which covers every witness coordinate of the
/// forbidden 3-uniform patterns. Null-space witnesses for graphs may need a
/// different square-free `m`; values with different radicands only mix when
/// one of them has no radical part.
#[derive(Clone, Debug)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
    radicand: u64,
}

const DEFAULT_RADICAND: u64 = 3;

impl QuadExt {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Self::with_radicand(DEFAULT_RADICAND, a, b, c, d)
    }

    /// Panics if `m` is zero or one; those do not give a quadratic extension.
    pub fn with_radicand(m: u64, a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        assert!(m >= 2, "radicand must be at least 2, got {m}");
        QuadExt { a, b, c, d, radicand: m }
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::new(r, Rational::zero(), Rational::zero(), Rational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one(), Rational::zero(), Rational::zero())
    }

    /// √m for the given radicand.
    pub fn sqrt_radicand(m: u64) -> Self {
        Self::with_radicand(m, Rational::zero(), Rational::zero(), Rational::one(), Rational::zero())
    }

    pub fn real(&self) -> &Rational {
        &self.a
    }
    pub fn imag(&self) -> &Rational {
        &self.b
    }
    pub fn radical(&self) -> &Rational {
        &self.c
    }
    pub fn imag_radical(&self) -> &Rational {
        &self.d
    }
    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    fn has_radical_part(&self) -> bool {
        !self.c.is_zero() || !self.d.is_zero()
    }

    fn joint_radicand(&self, other: &Self) -> u64 {
        match (self.has_radical_part(), other.has_radical_part()) {
            (true, true) => {
                assert_eq!(
                    self.radicand, other.radicand,
                    "cannot combine elements of Q(i, sqrt {}) and Q(i, sqrt {})",
                    self.radicand, other.radicand
                );
                self.radicand
            }
            (true, false) => self.radicand,
            (false, true) => other.radicand,
            (false, false) => self.radicand.min(other.radicand),
        }
    }

    /// Complex conjugation `i ↦ −i`.
    pub fn conj(&self) -> Self {
        QuadExt {
            a: self.a.clone(),
            b: -&self.b,
            c: self.c.clone(),
            d: -&self.d,
            radicand: self.radicand,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // x * conj(x) = p + q√m is real; rationalise with p − q√m.
        let m = Rational::from_integer(BigInt::from(self.radicand));
        let cx = self.conj();
        let norm = self * &cx;
        debug_assert!(norm.b.is_zero() && norm.d.is_zero());
        let (p, q) = (norm.a.clone(), norm.c.clone());
        let denom = &p * &p - &m * &q * &q;
        let rationaliser = QuadExt::with_radicand(
            self.radicand,
            &p / &denom,
            Rational::zero(),
            -(&q / &denom),
            Rational::zero(),
        );
        Some(&cx * &rationaliser)
    }

    /// Floating-point value as `(re, im)`.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let s = (self.radicand as f64).sqrt();
        let f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
        (f(&self.a) + f(&self.c) * s, f(&self.b) + f(&self.d) * s)
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a
            && self.b == other.b
            && self.c == other.c
            && self.d == other.d
            && (!self.has_radical_part() || self.radicand == other.radicand)
    }
}

impl Eq for QuadExt {}

impl From<Rational> for QuadExt {
    fn from(r: Rational) -> Self {
        QuadExt::from_rational(r)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.radicand;
        let parts = [
            (&self.a, String::new()),
            (&self.b, "i".to_string()),
            (&self.c, format!("√{m}")),
            (&self.d, format!("i√{m}")),
        ];
        let mut wrote = false;
        for (coef, unit) in parts {
            if coef.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            if unit.is_empty() {
                write!(f, "{}", format_rational(coef))?;
            } else {
                write!(f, "({}){}", format_rational(coef), unit)?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt::from_rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt::from_rational(Rational::one())
    }
}

impl<'a> Add<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn add(self, o: &QuadExt) -> QuadExt {
        QuadExt {
            radicand: self.joint_radicand(o),
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            c: &self.c + &o.c,
            d: &self.d + &o.d,
        }
    }
}

impl<'a> Sub<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn sub(self, o: &QuadExt) -> QuadExt {
        QuadExt {
            radicand: self.joint_radicand(o),
            a: &self.a - &o.a,
            b: &self.b - &o.b,
            c: &self.c - &o.c,
            d: &self.d - &o.d,
        }
    }
}

impl<'a> Mul<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn mul(self, o: &QuadExt) -> QuadExt {
        let radicand = self.joint_radicand(o);
        let m = Rational::from_integer(BigInt::from(radicand));
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&o.a, &o.b, &o.c, &o.d);
        // i² = −1, (√m)² = m, (i√m)² = −m
        QuadExt {
            a: a * e - b * f + &m * (c * g) - &m * (d * h),
            b: a * f + b * e + &m * (c * h) + &m * (d * g),
            c: a * g - b * h + c * e - d * f,
            d: a * h + b * g + c * f + d * e,
            radicand,
        }
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
            radicand: self.radicand,
        }
    }
}

impl Div<&QuadExt> for &QuadExt {
    type Output = QuadExt;
    fn div(self, o: &QuadExt) -> QuadExt {
        let inv = o.inverse().expect("division by zero in Q(i, sqrt m)");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, o: QuadExt) -> QuadExt { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, o: &QuadExt) -> QuadExt { (&self).$m(o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct QuadExtRepr {
    a: String,
    b: String,
    c: String,
    d: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    radicand: Option<u64>,
}

impl Serialize for QuadExt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QuadExtRepr {
            a: format_rational(&self.a),
            b: format_rational(&self.b),
            c: format_rational(&self.c),
            d: format_rational(&self.d),
            radicand: (self.radicand != DEFAULT_RADICAND).then_some(self.radicand),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadExt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = QuadExtRepr::deserialize(d)?;
        let p = |s: &str| parse_rational(s).map_err(serde::de::Error::custom);
        let m = r.radicand.unwrap_or(DEFAULT_RADICAND);
        if m < 2 {
            return Err(serde::de::Error::custom("radicand must be at least 2"));
        }
        Ok(QuadExt::with_radicand(m, p(&r.a)?, p(&r.b)?, p(&r.c)?, p(&r.d)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{int, rat};
    use proptest::prelude::*;

    fn q(a: i64, b: i64, c: i64, d: i64) -> QuadExt {
        QuadExt::new(int(a), int(b), int(c), int(d))
    }

    #[test]
    fn unit_rules() {
        let i = QuadExt::i();
        let s = QuadExt::sqrt_radicand(3);
        assert_eq!(&i * &i, q(-1, 0, 0, 0));
        assert_eq!(&s * &s, q(3, 0, 0, 0));
        let is = &i * &s;
        assert_eq!(is, q(0, 0, 0, 1));
        assert_eq!(&is * &is, q(-3, 0, 0, 0));
    }

    #[test]
    fn cube_root_of_unity() {
        // ω = (−1 + i√3)/2 satisfies ω² + ω + 1 = 0
        let w = QuadExt::new(rat(-1, 2), int(0), int(0), rat(1, 2));
        let sum = &(&(&w * &w) + &w) + &QuadExt::one();
        assert!(sum.is_zero());
    }

    #[test]
    fn json_shape() {
        let x = QuadExt::new(rat(-1, 2), int(0), int(0), rat(-1, 2));
        let js = serde_json::to_value(&x).unwrap();
        assert_eq!(js, serde_json::json!({"a": "-1/2", "b": "0", "c": "0", "d": "-1/2"}));
        let back: QuadExt = serde_json::from_value(js).unwrap();
        assert_eq!(back, x);
        let y = QuadExt::with_radicand(5, int(1), int(0), int(2), int(0));
        let back: QuadExt = serde_json::from_str(&serde_json::to_string(&y).unwrap()).unwrap();
        assert_eq!(back.radicand(), 5);
    }

    fn arb() -> impl Strategy<Value = QuadExt> {
        prop::collection::vec((-9i64..10, 1i64..5), 4).prop_map(|v| {
            QuadExt::new(rat(v[0].0, v[0].1), rat(v[1].0, v[1].1), rat(v[2].0, v[2].1), rat(v[3].0, v[3].1))
        })
    }

    proptest! {
        #[test]
        fn mul_associative(x in arb(), y in arb(), z in arb()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        }

        #[test]
        fn norm_has_no_imaginary_part(x in arb()) {
            let n = &x.conj() * &x;
            prop_assert!(n.imag().is_zero());
            prop_assert!(n.imag_radical().is_zero());
        }

        #[test]
        fn inverse_is_inverse(x in arb()) {
            prop_assume!(!x.is_zero());
            prop_assert_eq!(&x * &x.inverse().unwrap(), QuadExt::one());
        }

        #[test]
        fn distributive(x in arb(), y in arb(), z in arb()) {
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        }
    }
}
