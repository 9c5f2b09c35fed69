use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;

use super::rational::{forward_binop, Rational};
use crate::error::{Error, Result};

/// An element `a + b√3` of the real quadratic field ℚ(√3).
///
/// The pair `(a, b)` is unique for each value, so derived equality and
/// hashing are numeric. Ordering follows the real embedding.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    a: Rational,
    b: Rational,
}

impl ExactScalar {
    pub fn new(a: Rational, b: Rational) -> Self {
        ExactScalar { a, b }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn sqrt3() -> Self {
        ExactScalar { a: Rational::zero(), b: Rational::one() }
    }

    pub fn rational(a: Rational) -> Self {
        ExactScalar { a, b: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(Rational::from_int(n))
    }

    /// Rational part `a`.
    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// Coefficient `b` of √3.
    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    /// The Galois conjugate `a - b√3`.
    pub fn conjugate(&self) -> Self {
        ExactScalar { a: self.a.clone(), b: -&self.b }
    }

    /// Field norm `a² - 3b²`.
    pub fn field_norm(&self) -> Rational {
        &(&self.a * &self.a) - &(&Rational::from_int(3) * &(&self.b * &self.b))
    }

    /// Sign under the real embedding, decided from `sign(a)`, `sign(b)` and `a²` versus `3b²`.
    pub fn signum(&self) -> Ordering {
        let (sa, sb) = (self.a.signum(), self.b.signum());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // opposite signs: the larger magnitude wins
        match self.field_norm().signum() {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => unreachable!("√3 is irrational"),
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.field_norm();
        Ok(ExactScalar { a: &self.a / &n, b: -(&self.b / &n) })
    }

    pub fn checked_div(&self, rhs: &ExactScalar) -> Result<Self> {
        if let Some(r) = rhs.as_rational() {
            let inv = r.recip()?;
            return Ok(ExactScalar { a: &self.a * &inv, b: &self.b * &inv });
        }
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        ExactScalar { a: &self.a * k, b: &self.b * k }
    }

    /// Exact floor under the real embedding.
    pub fn floor(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.floor();
        }
        // b√3 = ±sqrt(3p²)/q and isqrt brackets it within 1/q
        let (p, qd) = (self.b.numer(), self.b.denom());
        let s = (BigInt::from(3) * &p * &p).sqrt();
        let lower = if self.b.signum() == Ordering::Greater {
            &self.a + &Rational::from_big(num_rational::BigRational::new(s, qd))
        } else {
            &self.a - &Rational::from_big(num_rational::BigRational::new(s + 1, qd))
        };
        let n = lower.floor();
        let next = ExactScalar::rational(Rational::from_bigint(&n + 1));
        if next <= *self {
            n + 1
        } else {
            n
        }
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// Floating value, for display and rendering only.
    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * 3f64.sqrt()
    }
}

impl From<Rational> for ExactScalar {
    fn from(a: Rational) -> Self {
        Self::rational(a)
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &'a ExactScalar) -> ExactScalar {
        ExactScalar { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &'a ExactScalar) -> ExactScalar {
        ExactScalar { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &'a ExactScalar) -> ExactScalar {
        if rhs.b.is_zero() {
            return self.scale(&rhs.a);
        }
        if self.b.is_zero() {
            return rhs.scale(&self.a);
        }
        let three_bb = &Rational::from_int(3) * &(&self.b * &rhs.b);
        ExactScalar { a: &(&self.a * &rhs.a) + &three_bb, b: &(&self.a * &rhs.b) + &(&self.b * &rhs.a) }
    }
}

impl<'a> Div<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    /// Panics on division by zero; use [`ExactScalar::checked_div`] to get an error instead.
    fn div(self, rhs: &'a ExactScalar) -> ExactScalar {
        self.checked_div(rhs).expect("division by zero in Q(sqrt 3)")
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { a: -&self.a, b: -&self.b }
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

forward_binop!(ExactScalar, Add, add);
forward_binop!(ExactScalar, Sub, sub);
forward_binop!(ExactScalar, Mul, mul);
forward_binop!(ExactScalar, Div, div);

impl std::iter::Sum for ExactScalar {
    fn sum<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |acc, x| &acc + &x)
    }
}

impl Ord for ExactScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.b == other.b {
            return self.a.cmp(&other.a);
        }
        (self - other).signum()
    }
}

impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Prints `a`, `b√3` or `a+b√3` (`a-b√3`), with `a` and `b` as `p/q`.
impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}√3", self.b);
        }
        if self.b.signum() == Ordering::Less {
            write!(f, "{}-{}√3", self.a, -&self.b)
        } else {
            write!(f, "{}+{}√3", self.a, self.b)
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

const ROOT3_MARKERS: [&str; 5] = ["*√3", "√3", "*sqrt3", "sqrt3", "r3"];

impl FromStr for ExactScalar {
    type Err = Error;

    /// Parses sums of terms like `4/3`, `-2/3√3`, `√3`, `1/2*sqrt3`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let compact = compact.replace("sqrt(3)", "sqrt3");
        if compact.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes: Vec<char> = compact.chars().collect();
        for i in 1..bytes.len() {
            if (bytes[i] == '+' || bytes[i] == '-') && !matches!(bytes[i - 1], '/' | 'e' | 'E' | '+' | '-') {
                terms.push(bytes[start..i].iter().collect::<String>());
                start = i;
            }
        }
        terms.push(bytes[start..].iter().collect::<String>());

        let mut acc = ExactScalar::zero();
        for term in terms {
            let (coef, irrational) = match ROOT3_MARKERS.iter().find(|m| term.ends_with(*m)) {
                Some(m) => (term[..term.len() - m.len()].to_string(), true),
                None => (term.clone(), false),
            };
            let coef = match coef.as_str() {
                "" | "+" => Rational::one(),
                "-" => -Rational::one(),
                c => c.trim_start_matches('+').parse::<Rational>()?,
            };
            acc = if irrational {
                &acc + &ExactScalar::new(Rational::zero(), coef)
            } else {
                &acc + &ExactScalar::rational(coef)
            };
        }
        Ok(acc)
    }
}

impl serde::Serialize for ExactScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for ExactScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `a + b√3` from integer fractions: `qs((a_num, a_den), (b_num, b_den))`.
pub fn qs(a: (i64, i64), b: (i64, i64)) -> ExactScalar {
    ExactScalar::new(Rational::new(a.0, a.1), Rational::new(b.0, b.1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::q;
    use proptest::prelude::*;

    #[test]
    fn square_of_one_plus_root3() {
        let x = qs((1, 1), (1, 1));
        assert_eq!(&x * &x, qs((4, 1), (2, 1)));
    }

    #[test]
    fn irrational_orbit_norms_sum_to_rational() {
        let lo = qs((4, 3), (-2, 3));
        let hi = qs((4, 3), (2, 3));
        assert_eq!(&lo + &hi, ExactScalar::rational(q(8, 3)));
    }

    #[test]
    fn reciprocal_via_conjugate() {
        let x = qs((1, 1), (1, 1));
        let inv = x.recip().unwrap();
        assert_eq!(inv, qs((-1, 2), (1, 2)));
        assert_eq!(&x * &inv, ExactScalar::one());
        assert!(matches!(x.checked_div(&ExactScalar::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn ordering_examples() {
        assert_eq!(qs((4, 3), (2, 3)).cmp(&ExactScalar::rational(q(8, 3))), Ordering::Less);
        let x = qs((5, 7), (-1, 9));
        assert_eq!(x.cmp(&x), Ordering::Equal);
        assert_eq!(ExactScalar::sqrt3().cmp(&ExactScalar::rational(q(7, 4))), Ordering::Less);
    }

    #[test]
    fn display_and_parse() {
        let x = qs((4, 3), (-2, 3));
        assert_eq!(x.to_string(), "4/3-2/3√3");
        assert_eq!(x.to_string().parse::<ExactScalar>().unwrap(), x);
        assert_eq!("1/2*sqrt3".parse::<ExactScalar>().unwrap(), qs((0, 1), (1, 2)));
        assert_eq!("-√3 + 1".parse::<ExactScalar>().unwrap(), qs((1, 1), (-1, 1)));
        assert_eq!("-1/3".parse::<ExactScalar>().unwrap(), ExactScalar::rational(q(-1, 3)));
        assert!("abc".parse::<ExactScalar>().is_err());
    }

    #[test]
    fn floor_examples() {
        assert_eq!(ExactScalar::sqrt3().floor(), BigInt::from(1));
        assert_eq!((-ExactScalar::sqrt3()).floor(), BigInt::from(-2));
        assert_eq!(qs((2, 1), (-1, 1)).floor(), BigInt::from(0));
        assert_eq!(qs((-5, 3), (1, 1)).floor(), BigInt::from(0));
        assert_eq!(ExactScalar::rational(q(-7, 2)).floor(), BigInt::from(-4));
    }

    fn small_scalar() -> impl Strategy<Value = ExactScalar> {
        (-60i64..60, 1i64..13, -60i64..60, 1i64..13).prop_map(|(an, ad, bn, bd)| qs((an, ad), (bn, bd)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn compare_agrees_with_float(x in small_scalar(), y in small_scalar()) {
            let diff = x.to_f64() - y.to_f64();
            let ord = x.cmp(&y);
            // exact ties are impossible unless equal; float separation of distinct
            // values at this size is far above rounding error
            if x == y {
                prop_assert_eq!(ord, Ordering::Equal);
            } else if diff.abs() > 1e-9 {
                prop_assert_eq!(ord, diff.partial_cmp(&0.0).unwrap());
            }
        }
    }

    proptest! {
        #[test]
        fn conjugation_is_a_ring_homomorphism(x in small_scalar(), y in small_scalar(), z in small_scalar()) {
            let lhs = (&(&x * &y) + &z).conjugate();
            let rhs = &(&x.conjugate() * &y.conjugate()) + &z.conjugate();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn floor_brackets_value(x in small_scalar()) {
            let n = Rational::from_bigint(x.floor());
            prop_assert!(ExactScalar::rational(n.clone()) <= x);
            prop_assert!(x < ExactScalar::rational(&n + &Rational::one()));
        }

        #[test]
        fn display_round_trips(x in small_scalar()) {
            prop_assert_eq!(x.to_string().parse::<ExactScalar>().unwrap(), x);
        }
    }
}
