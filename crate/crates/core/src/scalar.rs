//! Exact scalars: arbitrary-precision rationals and elements of a real
//! quadratic extension `Q(sqrt(t))`.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.0.cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Exact square root when `self` is the square of a rational.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Rational::new(n, d))
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `"n"` or `"n/d"` with an optional leading sign on `n`.
    /// Non-canonical input such as `"2/4"` is reduced.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Parse(format!("invalid rational {s:?}"));
        let s_trim = s.trim();
        let (n, d) = match s_trim.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s_trim, None),
        };
        let numer: BigInt = n.parse().map_err(|_| bad())?;
        let denom: BigInt = match d {
            Some(d) => {
                if d.starts_with(['+', '-']) {
                    return Err(bad());
                }
                d.parse().map_err(|_| bad())?
            }
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(Rational::new(numer, denom))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Panics on a zero divisor, like the integer types do.
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// The real number `rat + rad * sqrt(t)` with `t > 0` rational.
///
/// The radicand is stored as given and never reduced to square-free form, so
/// two values with the same real meaning can differ structurally (`2 + 0√4`
/// versus `0 + 1√4`). Use [`QuadExt::is_zero`] on a difference to compare by
/// value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    pub rat: Rational,
    pub rad: Rational,
    t: Rational,
}

impl QuadExt {
    pub fn new(rat: Rational, rad: Rational, t: Rational) -> Result<Self, Error> {
        if !t.is_positive() {
            return Err(Error::NonPositiveRadicand(t.to_string()));
        }
        Ok(QuadExt { rat, rad, t })
    }

    /// A rational embedded with radicand `t`.
    pub fn rational(rat: Rational, t: &Rational) -> Self {
        QuadExt {
            rat,
            rad: Rational::zero(),
            t: t.clone(),
        }
    }

    pub fn t(&self) -> &Rational {
        &self.t
    }

    pub fn is_rational(&self) -> bool {
        self.rad.is_zero()
    }

    /// Exact zero test. Handles perfect-square radicands, where
    /// `rat = -rad * sqrt(t)` can hold with both parts nonzero.
    pub fn is_zero(&self) -> bool {
        if self.rat.is_zero() && self.rad.is_zero() {
            return true;
        }
        self.rat.signum() * self.rad.signum() < 0
            && self.rat.square() == &self.rad.square() * &self.t
    }

    /// The value as a rational, when it is one (including perfect-square
    /// radicands).
    pub fn to_rational(&self) -> Option<Rational> {
        if self.rad.is_zero() {
            return Some(self.rat.clone());
        }
        self.t.sqrt_exact().map(|s| &self.rat + &self.rad * s)
    }

    pub fn to_f64(&self) -> f64 {
        self.rat.to_f64() + self.rad.to_f64() * self.t.to_f64().sqrt()
    }

    fn common_t(&self, other: &QuadExt) -> Result<Rational, Error> {
        if self.t == other.t || other.rad.is_zero() {
            Ok(self.t.clone())
        } else if self.rad.is_zero() {
            Ok(other.t.clone())
        } else {
            Err(Error::MismatchedRadicand {
                left: self.t.to_string(),
                right: other.t.to_string(),
            })
        }
    }

    pub fn try_add(&self, other: &QuadExt) -> Result<QuadExt, Error> {
        let t = self.common_t(other)?;
        Ok(QuadExt {
            rat: &self.rat + &other.rat,
            rad: &self.rad + &other.rad,
            t,
        })
    }

    pub fn try_sub(&self, other: &QuadExt) -> Result<QuadExt, Error> {
        self.try_add(&-other)
    }

    /// `(a + b√t)(c + d√t) = (ac + bdt) + (ad + bc)√t`.
    pub fn try_mul(&self, other: &QuadExt) -> Result<QuadExt, Error> {
        let t = self.common_t(other)?;
        let rat = &self.rat * &other.rat + &self.rad * &other.rad * &t;
        let rad = &self.rat * &other.rad + &self.rad * &other.rat;
        Ok(QuadExt { rat, rad, t })
    }

    pub fn scale(&self, k: &Rational) -> QuadExt {
        QuadExt {
            rat: &self.rat * k,
            rad: &self.rad * k,
            t: self.t.clone(),
        }
    }

    /// Rendering used in reports: the bare rational when the radical part
    /// vanishes, otherwise the full `a + b*sqrt(t)` form.
    pub fn render_compact(&self) -> String {
        if self.rad.is_zero() {
            self.rat.to_string()
        } else {
            self.to_string()
        }
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            rat: -&self.rat,
            rad: -&self.rad,
            t: self.t.clone(),
        }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.rat, self.rad, self.t)
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for QuadExt {
    type Err = Error;

    /// Parses the `a + b*sqrt(t)` rendering produced by `Display`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Parse(format!("invalid quadratic-extension value {s:?}"));
        let (rat, rest) = s.split_once(" + ").ok_or_else(bad)?;
        let (rad, rest) = rest.split_once("*sqrt(").ok_or_else(bad)?;
        let t = rest.strip_suffix(')').ok_or_else(bad)?;
        QuadExt::new(rat.parse()?, rad.parse()?, t.parse()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn qe(a: Rational, b: Rational, t: i64) -> QuadExt {
        QuadExt::new(a, b, Rational::from_int(t)).unwrap()
    }

    #[test]
    fn renders_canonical_rationals() {
        assert_eq!(r(2, 4).to_string(), "1/2");
        assert_eq!(r(-6, 3).to_string(), "-2");
        assert_eq!(r(3, -9).to_string(), "-1/3");
        assert_eq!(Rational::zero().to_string(), "0");
        assert!("4/-2".parse::<Rational>().is_err());
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert_eq!("-10/4".parse::<Rational>().unwrap(), r(-5, 2));
    }

    #[test]
    fn quadext_products() {
        let x = qe(r(1, 1), r(1, 1), 2);
        let y = qe(r(1, 1), r(-1, 1), 2);
        assert_eq!(x.try_mul(&y).unwrap(), qe(r(-1, 1), r(0, 1), 2));

        let s = qe(r(0, 1), r(1, 1), 3);
        assert_eq!(s.try_mul(&s).unwrap(), qe(r(3, 1), r(0, 1), 3));

        let a = qe(r(1, 2), r(1, 3), 5);
        let b = qe(r(2, 1), r(0, 1), 5);
        assert_eq!(a.try_mul(&b).unwrap(), qe(r(1, 1), r(2, 3), 5));
    }

    #[test]
    fn quadext_zero_test() {
        assert!(qe(r(0, 1), r(0, 1), 7).is_zero());
        assert!(qe(r(2, 1), r(-1, 1), 4).is_zero());
        assert!(!qe(r(2, 1), r(1, 1), 4).is_zero());
        assert!(!qe(r(1, 1), r(1, 1), 2).is_zero());
        assert!(!qe(r(1, 1), r(-1, 1), 2).is_zero());
    }

    #[test]
    fn mismatched_radicands_are_rejected() {
        let a = qe(r(0, 1), r(1, 1), 2);
        let b = qe(r(0, 1), r(1, 1), 3);
        assert!(matches!(
            a.try_mul(&b),
            Err(Error::MismatchedRadicand { .. })
        ));
        // a pure rational mixes with anything
        let c = qe(r(5, 1), r(0, 1), 3);
        let p = a.try_mul(&c).unwrap();
        assert_eq!(p.t(), &Rational::from_int(2));
        assert_eq!(p.rad, r(5, 1));
    }

    #[test]
    fn nonpositive_radicand_rejected() {
        assert!(QuadExt::new(r(1, 1), r(1, 1), Rational::zero()).is_err());
        assert!(QuadExt::new(r(1, 1), r(1, 1), r(-1, 2)).is_err());
    }

    #[test]
    fn quadext_rendering_round_trips() {
        let x = qe(r(-1, 2), r(3, 7), 5);
        assert_eq!(x.to_string(), "-1/2 + 3/7*sqrt(5)");
        assert_eq!(x.to_string().parse::<QuadExt>().unwrap(), x);
        assert_eq!(qe(r(2, 1), r(0, 1), 3).render_compact(), "2");
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(r(9, 4).sqrt_exact(), Some(r(3, 2)));
        assert_eq!(r(2, 1).sqrt_exact(), None);
        assert_eq!(r(-4, 1).sqrt_exact(), None);
        assert_eq!(qe(r(1, 1), r(-1, 1), 4).to_rational(), Some(r(-1, 1)));
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-10_000i64..10_000, 1i64..500).prop_map(|(n, d)| Rational::new(n, d))
    }

    fn quadext(t: i64) -> impl Strategy<Value = QuadExt> {
        (rational(), rational()).prop_map(move |(a, b)| qe(a, b, t))
    }

    proptest! {
        #[test]
        fn field_axioms_hold_exactly(a in rational(), b in rational(), c in rational()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
        }

        #[test]
        fn rational_render_parse_round_trip(a in rational()) {
            prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
        }

        #[test]
        fn quadext_zero_is_absorbing(t in 1i64..50, x in quadext(1), y in quadext(1)) {
            let x = qe(x.rat, x.rad, t);
            let y = qe(y.rat, y.rad, t);
            let d = x.try_sub(&x).unwrap();
            prop_assert!(d.is_zero());
            prop_assert!(d.try_mul(&y).unwrap().is_zero());
        }

        #[test]
        fn zero_test_matches_floating_point(x in quadext(9)) {
            // radicand 9 is a perfect square, so the value is rational
            let v = &x.rat + &x.rad * Rational::from_int(3);
            prop_assert_eq!(x.is_zero(), v.is_zero());
        }
    }
}
