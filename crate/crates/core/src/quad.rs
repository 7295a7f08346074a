//! Arithmetic in `Q[t]/(t^2 - Δ)`.
//!
//! The roots `α, β = (ab ± t)/2` of `x^2 - abx - abc` and the Binet
//! constants live here. Multiplication reduces `t^2` to `Δ` formally, so the
//! same code path works whether or not `Δ` is a perfect square; when it is,
//! the ring has zero divisors and [`QuadElem::inv`] can fail.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Error, Rational, Result};

/// `x + y·t` with `t^2 = delta`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadElem {
    x: Rational,
    y: Rational,
    delta: BigInt,
}

impl QuadElem {
    /// Panics if `delta` is zero.
    pub fn new(x: Rational, y: Rational, delta: BigInt) -> Self {
        assert!(!delta.is_zero(), "QuadElem over a zero discriminant");
        QuadElem { x, y, delta }
    }

    pub fn from_rational(x: Rational, delta: &BigInt) -> Self {
        Self::new(x, Rational::zero(), delta.clone())
    }

    pub fn one(delta: &BigInt) -> Self {
        Self::from_rational(Rational::one(), delta)
    }

    pub fn zero(delta: &BigInt) -> Self {
        Self::from_rational(Rational::zero(), delta)
    }

    /// The adjoined square root `t`.
    pub fn sqrt_delta(delta: &BigInt) -> Self {
        Self::new(Rational::zero(), Rational::one(), delta.clone())
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn y(&self) -> &Rational {
        &self.y
    }

    pub fn delta(&self) -> &BigInt {
        &self.delta
    }

    /// True when the `t` component vanishes.
    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadElem {
            x: self.x.clone(),
            y: -&self.y,
            delta: self.delta.clone(),
        }
    }

    /// `x^2 - Δ y^2`.
    pub fn norm(&self) -> Rational {
        &self.x * &self.x - Rational::from(self.delta.clone()) * &self.y * &self.y
    }

    pub fn scale(&self, k: &Rational) -> Self {
        QuadElem {
            x: &self.x * k,
            y: &self.y * k,
            delta: self.delta.clone(),
        }
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.delta == other.delta {
            Ok(())
        } else {
            Err(Error::DeltaMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(QuadElem {
            x: &self.x + &other.x,
            y: &self.y + &other.y,
            delta: self.delta.clone(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let d = Rational::from(self.delta.clone());
        Ok(QuadElem {
            x: &self.x * &other.x + &self.y * &other.y * d,
            y: &self.x * &other.y + &self.y * &other.x,
            delta: self.delta.clone(),
        })
    }

    /// `(x - yt) / N(p)`; fails when the norm is zero.
    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(self.conj().scale(&n.recip()))
    }

    /// Square-and-multiply; `p^0 = 1`.
    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = QuadElem::one(&self.delta);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.x, self.y, self.delta)
    }
}

impl fmt::Debug for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}t | t^2={})", self.x, self.y, self.delta)
    }
}

// Operator forms panic on mismatched discriminants: mixing rings is a
// programming error, not a data condition.
impl Add for &QuadElem {
    type Output = QuadElem;
    fn add(self, rhs: &QuadElem) -> QuadElem {
        self.try_add(rhs).expect("QuadElem discriminant mismatch")
    }
}

impl Sub for &QuadElem {
    type Output = QuadElem;
    fn sub(self, rhs: &QuadElem) -> QuadElem {
        self.try_add(&-rhs).expect("QuadElem discriminant mismatch")
    }
}

impl Mul for &QuadElem {
    type Output = QuadElem;
    fn mul(self, rhs: &QuadElem) -> QuadElem {
        self.try_mul(rhs).expect("QuadElem discriminant mismatch")
    }
}

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem {
            x: -&self.x,
            y: -&self.y,
            delta: self.delta.clone(),
        }
    }
}

impl Add for QuadElem {
    type Output = QuadElem;
    fn add(self, rhs: QuadElem) -> QuadElem {
        &self + &rhs
    }
}

impl Sub for QuadElem {
    type Output = QuadElem;
    fn sub(self, rhs: QuadElem) -> QuadElem {
        &self - &rhs
    }
}

impl Mul for QuadElem {
    type Output = QuadElem;
    fn mul(self, rhs: QuadElem) -> QuadElem {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(x: (i64, i64), y: (i64, i64), delta: i64) -> QuadElem {
        QuadElem::new(
            Rational::new(x.0.into(), x.1.into()),
            Rational::new(y.0.into(), y.1.into()),
            delta.into(),
        )
    }

    fn golden() -> QuadElem {
        q((1, 2), (1, 2), 5)
    }

    #[test]
    fn t_squared_is_delta() {
        let t = QuadElem::sqrt_delta(&BigInt::from(5));
        assert_eq!(&t * &t, q((5, 1), (0, 1), 5));
    }

    #[test]
    fn golden_roots_multiply_to_minus_one() {
        let alpha = golden();
        let beta = alpha.conj();
        assert_eq!(&alpha * &beta, q((-1, 1), (0, 1), 5));
    }

    #[test]
    fn multiplicative_identity() {
        let p = q((3, 7), (-2, 5), 12);
        assert_eq!(&p * &QuadElem::one(&BigInt::from(12)), p);
    }

    #[test]
    fn inverse_examples() {
        let t = QuadElem::sqrt_delta(&BigInt::from(5));
        assert_eq!(t.inv().unwrap(), q((0, 1), (1, 5), 5));
        assert_eq!(q((2, 1), (0, 1), 5).inv().unwrap(), q((1, 2), (0, 1), 5));
        // Jacobsthal: a = b = 1, c = 2 gives Δ = 9, and 3 + t is a zero divisor.
        assert_eq!(q((3, 1), (1, 1), 9).inv(), Err(Error::ZeroDivisor));
    }

    #[test]
    fn powers_of_golden_ratio() {
        assert_eq!(golden().pow(0), QuadElem::one(&BigInt::from(5)));
        assert_eq!(golden().pow(2), q((3, 2), (1, 2), 5));
        // Brute force by repeated multiplication.
        let mut acc = QuadElem::one(&BigInt::from(5));
        for _ in 0..10 {
            acc = &acc * &golden();
        }
        assert_eq!(acc, q((123, 2), (55, 2), 5));
        assert_eq!(golden().pow(10), acc);
    }

    #[test]
    fn mismatched_delta_is_an_error() {
        let p = q((1, 1), (1, 1), 5);
        let r = q((1, 1), (1, 1), 6);
        assert_eq!(p.try_mul(&r), Err(Error::DeltaMismatch));
        assert_eq!(p.try_add(&r), Err(Error::DeltaMismatch));
    }

    #[test]
    #[should_panic(expected = "discriminant mismatch")]
    fn mismatched_delta_operator_panics() {
        let _ = &q((1, 1), (1, 1), 5) * &q((1, 1), (1, 1), 6);
    }

    fn nonzero_delta() -> impl Strategy<Value = i64> {
        prop_oneof![-40i64..=-1, 1i64..=40]
    }

    proptest! {
        #[test]
        fn inverse_is_exact(delta in nonzero_delta(), p in (-50i64..50, 1i64..20, -50i64..50, 1i64..20)) {
            let p = q((p.0, p.1), (p.2, p.3), delta);
            prop_assume!(!p.norm().is_zero());
            prop_assert_eq!(&p * &p.inv().unwrap(), QuadElem::one(&BigInt::from(delta)));
        }

        #[test]
        fn pow_is_additive(delta in nonzero_delta(), x in -9i64..9, y in -9i64..9, m in 0u64..=64, n in 0u64..=64) {
            let p = q((x, 2), (y, 3), delta);
            prop_assert_eq!(p.pow(m + n), &p.pow(m) * &p.pow(n));
        }

        #[test]
        fn ring_axioms(delta in nonzero_delta(), a in -20i64..20, b in -20i64..20, c in -20i64..20,
                       d in -20i64..20, e in -20i64..20, f in -20i64..20) {
            let p = q((a, 1), (b, 2), delta);
            let r = q((c, 3), (d, 1), delta);
            let s = q((e, 1), (f, 5), delta);
            prop_assert_eq!(&(&p * &r) * &s, &p * &(&r * &s));
            prop_assert_eq!(&p * &r, &r * &p);
            prop_assert_eq!(&p * &(&r + &s), &(&p * &r) + &(&p * &s));
        }
    }
}
