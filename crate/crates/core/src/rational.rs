//! Arbitrary-precision rationals, always stored reduced with a positive
//! denominator, so equality is field-wise.
//!
//! Most values in this crate are integers (sequence terms with integer
//! seeds) or have small denominators (powers of `a`, `b`, `2`, `Δ`). The
//! arithmetic below short-circuits those cases instead of running a full
//! big-integer gcd on every operation.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::iter::{Product, Sum};
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    numer: BigInt,
    denom: BigInt,
}

/// Non-negative gcd of two integers.
pub(crate) fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let (ma, mb) = (a.magnitude(), b.magnitude());
    if ma.is_one() || mb.is_one() {
        return BigInt::one();
    }
    if let Some(small) = mb.to_u64() {
        return small_gcd(ma, small);
    }
    if let Some(small) = ma.to_u64() {
        return small_gcd(mb, small);
    }
    if is_power_of_two(mb) || is_power_of_two(ma) {
        let tz = ma
            .trailing_zeros()
            .unwrap_or(0)
            .min(mb.trailing_zeros().unwrap_or(0));
        return BigInt::one() << tz;
    }
    BigInt::from_biguint(Sign::Plus, ma.gcd(mb))
}

fn small_gcd(big: &BigUint, small: u64) -> BigInt {
    let rem = (big % small).to_u64().unwrap_or(0);
    BigInt::from(rem.gcd(&small))
}

fn is_power_of_two(x: &BigUint) -> bool {
    x.count_ones() == 1
}

impl Rational {
    /// Builds `numer / denom` in lowest terms.
    ///
    /// Panics if `denom` is zero.
    pub fn new(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "rational with zero denominator");
        let (numer, denom) = if denom.is_negative() {
            (-numer, -denom)
        } else {
            (numer, denom)
        };
        Self::reduced(numer, denom)
    }

    /// `denom` must already be positive.
    fn reduced(numer: BigInt, denom: BigInt) -> Self {
        if denom.is_one() {
            return Rational { numer, denom };
        }
        if numer.is_zero() {
            return Self::zero();
        }
        let g = gcd(&numer, &denom);
        if g.is_one() {
            Rational { numer, denom }
        } else {
            Rational {
                numer: numer / &g,
                denom: denom / g,
            }
        }
    }

    pub fn from_integer(n: BigInt) -> Self {
        Rational {
            numer: n,
            denom: BigInt::one(),
        }
    }

    pub fn numer(&self) -> &BigInt {
        &self.numer
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn is_integer(&self) -> bool {
        self.denom.is_one()
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.numer.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.denom.is_one() && self.numer.is_one()
    }

    pub fn recip(&self) -> Self {
        self.checked_recip().expect("reciprocal of zero")
    }

    pub fn checked_recip(&self) -> Option<Self> {
        if self.numer.is_zero() {
            return None;
        }
        let (numer, denom) = if self.numer.is_negative() {
            (-&self.denom, -&self.numer)
        } else {
            (self.denom.clone(), self.numer.clone())
        };
        Some(Rational { numer, denom })
    }

    /// Integer power; negative exponents invert first. Panics on `0^e`, `e < 0`.
    pub fn pow(&self, exp: i64) -> Self {
        if exp < 0 {
            return self.recip().pow(-exp);
        }
        let e = u32::try_from(exp).expect("exponent out of range");
        // Powers of coprime integers stay coprime.
        Rational {
            numer: self.numer.pow(e),
            denom: self.denom.pow(e),
        }
    }

    fn add_ref(&self, rhs: &Rational) -> Rational {
        match (self.denom.is_one(), rhs.denom.is_one()) {
            (true, true) => Rational::from_integer(&self.numer + &rhs.numer),
            // k + n/d = (kd + n)/d stays reduced when gcd(n, d) = 1.
            (true, false) => Rational {
                numer: &self.numer * &rhs.denom + &rhs.numer,
                denom: rhs.denom.clone(),
            },
            (false, true) => Rational {
                numer: &rhs.numer * &self.denom + &self.numer,
                denom: self.denom.clone(),
            },
            (false, false) if self.denom == rhs.denom => {
                Self::reduced(&self.numer + &rhs.numer, self.denom.clone())
            }
            (false, false) => Self::reduced(
                &self.numer * &rhs.denom + &rhs.numer * &self.denom,
                &self.denom * &rhs.denom,
            ),
        }
    }

    fn mul_ref(&self, rhs: &Rational) -> Rational {
        if self.numer.is_zero() || rhs.numer.is_zero() {
            return Rational::zero();
        }
        match (self.denom.is_one(), rhs.denom.is_one()) {
            (true, true) => Rational::from_integer(&self.numer * &rhs.numer),
            (true, false) => Self::scale_fraction(&self.numer, rhs),
            (false, true) => Self::scale_fraction(&rhs.numer, self),
            (false, false) => {
                let g1 = gcd(&self.numer, &rhs.denom);
                let g2 = gcd(&rhs.numer, &self.denom);
                Rational {
                    numer: (&self.numer / &g1) * (&rhs.numer / &g2),
                    denom: (&self.denom / &g2) * (&rhs.denom / &g1),
                }
            }
        }
    }

    fn scale_fraction(k: &BigInt, frac: &Rational) -> Rational {
        let g = gcd(k, &frac.denom);
        if g.is_one() {
            Rational {
                numer: k * &frac.numer,
                denom: frac.denom.clone(),
            }
        } else {
            Rational {
                numer: (k / &g) * &frac.numer,
                denom: &frac.denom / g,
            }
        }
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::from_integer(BigInt::zero())
    }
    fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::from_integer(BigInt::one())
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for Rational {
            fn from(n: $t) -> Self {
                Rational::from_integer(BigInt::from(n))
            }
        }
    )*};
}
from_prim!(i32, i64, i128, u32, u64, usize);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            numer: -self.numer,
            denom: self.denom,
        }
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            numer: -&self.numer,
            denom: self.denom.clone(),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                let f: fn(&Rational, &Rational) -> Rational = $body;
                f(self, rhs)
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_ref(b));
forward_binop!(Sub, sub, |a, b| a.add_ref(&-b));
forward_binop!(Mul, mul, |a, b| a.mul_ref(b));
forward_binop!(Div, div, |a, b| a.mul_ref(&b.recip()));

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = self.add_ref(rhs);
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        *self = self.add_ref(&rhs);
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = self.add_ref(&-rhs);
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = self.mul_ref(rhs);
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

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.denom == other.denom {
            return self.numer.cmp(&other.numer);
        }
        (&self.numer * &other.denom).cmp(&(&other.numer * &self.denom))
    }
}

/// Prints `p` for integers and `p/q` otherwise.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom.is_one() {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, self.denom)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError {
    input: String,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cannot parse {:?} as a rational (expected `p` or `p/q`)",
            self.input
        )
    }
}

impl core::error::Error for ParseRationalError {}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError { input: s.into() };
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let numer: BigInt = n.parse().map_err(|_| err())?;
        let denom: BigInt = d.parse().map_err(|_| err())?;
        if denom.is_zero() {
            return Err(err());
        }
        Ok(Rational::new(numer, denom))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn normalizes_sign_and_gcd() {
        let x = r(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(r(0, -7), Rational::zero());
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(r(3, 2).to_string(), "3/2");
        assert_eq!(r(-10, 5).to_string(), "-2");
        assert_eq!("-6/4".parse::<Rational>().unwrap(), r(-3, 2));
        assert_eq!(" 12 ".parse::<Rational>().unwrap(), r(12, 1));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn pow_signs() {
        assert_eq!(r(-2, 3).pow(3), r(-8, 27));
        assert_eq!(r(-2, 3).pow(-2), r(9, 4));
        assert_eq!(r(-2, 3).pow(-1), r(-3, 2));
        assert_eq!(r(5, 7).pow(0), Rational::one());
    }

    #[test]
    fn gcd_paths() {
        let big = BigInt::from(3u8).pow(200) * BigInt::from(1u64 << 40);
        let two_pow = BigInt::one() << 100;
        assert_eq!(gcd(&big, &two_pow), BigInt::one() << 40);
        assert_eq!(gcd(&big, &BigInt::from(12)), BigInt::from(12));
        let p = BigInt::from(3u8).pow(90);
        let q = BigInt::from(3u8).pow(70) * BigInt::from(5u8).pow(60);
        assert_eq!(gcd(&p, &q), BigInt::from(3u8).pow(70));
    }

    #[test]
    #[should_panic]
    fn zero_denominator_panics() {
        let _ = r(1, 0);
    }

    fn wide() -> impl Strategy<Value = BigInt> {
        proptest::collection::vec(any::<u32>(), 1..9).prop_flat_map(|digits| {
            any::<bool>().prop_map(move |neg| {
                let mag = BigInt::from_slice(Sign::Plus, &digits);
                if neg {
                    -mag
                } else {
                    mag
                }
            })
        })
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (wide(), wide()).prop_filter_map("nonzero denominator", |(n, d)| {
            (!d.is_zero()).then(|| Rational::new(n, d))
        })
    }

    proptest! {
        #[test]
        fn add_then_sub_roundtrips(x in rational(), y in rational()) {
            prop_assert_eq!(&(&x + &y) - &y, x);
        }

        #[test]
        fn mul_then_div_roundtrips(x in rational(), y in rational()) {
            prop_assume!(!y.is_zero());
            prop_assert_eq!(&(&x * &y) / &y, x);
        }

        #[test]
        fn always_reduced(x in rational(), y in rational()) {
            for z in [&x + &y, &x * &y, &x - &y] {
                prop_assert!(z.denom().is_positive());
                prop_assert!(Integer::gcd(z.numer(), z.denom()).is_one());
            }
        }

        #[test]
        fn display_parse_roundtrip(x in rational()) {
            prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
        }

        #[test]
        fn distributive(x in rational(), y in rational(), z in rational()) {
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        }
    }
}
