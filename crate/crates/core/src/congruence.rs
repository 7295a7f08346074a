//! Divisibility consequences of the binomial expansions, checked under a
//! congruence notion that accepts rational residuals.
//!
//! A residual `p/q` (reduced) is `≡ 0 (mod M)` when `M | p` and
//! `gcd(q, M) = 1`, i.e. in `Z` localized away from the primes of `q`.
//! The corollary residuals are sums of terms carrying `(a/b)^e` factors, so
//! the corollary checkers additionally localize away from the primes of
//! `ab`: when strict divisibility fails but every offending prime of `M`
//! divides `ab`, the instance is reported [`CongruenceStatus::Inapplicable`]
//! rather than [`CongruenceStatus::Fails`].

use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::identity::{halve, Verifier};
use crate::rational::gcd;
use crate::report::IndexTuple;
use crate::sequence::{xi, SeqSpec};
use crate::{Error, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CongruenceStatus {
    Holds,
    Fails,
    /// Trivial modulus, or the modulus meets a prime that is inverted.
    Inapplicable,
}

impl CongruenceStatus {
    pub fn name(self) -> &'static str {
        match self {
            CongruenceStatus::Holds => "Holds",
            CongruenceStatus::Fails => "Fails",
            CongruenceStatus::Inapplicable => "Inapplicable",
        }
    }
}

impl fmt::Display for CongruenceStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Classifies `x ≡ 0 (mod modulus)`.
///
/// `|modulus| ≤ 1` and a denominator sharing a factor with the modulus give
/// `Inapplicable`; otherwise the numerator decides.
pub fn rat_congruent_zero(x: &Rational, modulus: &BigInt) -> CongruenceStatus {
    rat_congruent_zero_away_from(x, modulus, &BigInt::one())
}

/// As [`rat_congruent_zero`], additionally treating the primes of
/// `inverted` as units: a failure of strict divisibility that disappears
/// once those primes are removed from the modulus is `Inapplicable`.
pub fn rat_congruent_zero_away_from(
    x: &Rational,
    modulus: &BigInt,
    inverted: &BigInt,
) -> CongruenceStatus {
    let m = modulus.abs();
    if m <= BigInt::one() {
        return CongruenceStatus::Inapplicable;
    }
    if !gcd(x.denom(), &m).is_one() {
        return CongruenceStatus::Inapplicable;
    }
    if x.numer().is_multiple_of(&m) {
        return CongruenceStatus::Holds;
    }
    let unit_free = strip_primes_of(&m, inverted);
    if unit_free != m && x.numer().is_multiple_of(&unit_free) {
        CongruenceStatus::Inapplicable
    } else {
        CongruenceStatus::Fails
    }
}

/// Largest divisor of `m` coprime to `units`.
fn strip_primes_of(m: &BigInt, units: &BigInt) -> BigInt {
    let mut m = m.clone();
    if units.is_zero() {
        return m;
    }
    loop {
        let g = gcd(&m, units);
        if g.is_one() {
            return m;
        }
        m /= g;
    }
}

/// One instance of a corollary congruence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceReport {
    name: &'static str,
    index: IndexTuple,
    residual: Rational,
    modulus: BigInt,
    status: CongruenceStatus,
}

impl CongruenceReport {
    fn new(
        name: &'static str,
        index: IndexTuple,
        residual: Rational,
        modulus: BigInt,
        ab: &BigInt,
    ) -> Self {
        let status = rat_congruent_zero_away_from(&residual, &modulus, ab);
        CongruenceReport {
            name,
            index,
            residual,
            modulus,
            status,
        }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn index(&self) -> &IndexTuple {
        &self.index
    }

    pub fn residual(&self) -> &Rational {
        &self.residual
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn status(&self) -> CongruenceStatus {
        self.status
    }
}

impl fmt::Display for CongruenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}]: residual={} modulus={} status={}",
            self.name, self.index, self.residual, self.modulus, self.status
        )
    }
}

fn check_domain(spec: &SeqSpec) -> Result<()> {
    if !spec.params().is_positive() {
        return Err(Error::InvalidParams(
            "congruence checks require positive a, b, c",
        ));
    }
    if !spec.has_integer_seeds() {
        return Err(Error::InvalidParams(
            "congruence checks require integer w0, w1",
        ));
    }
    Ok(())
}

fn integer_modulus(x: &Rational) -> BigInt {
    // Positive integer parameters and integer seeds keep u, v integral.
    x.to_integer().expect("modulus term is an integer")
}

impl Verifier {
    /// `w_{mn+r} − (b/a)^{ξ(m)(n+ξ(n))/2 − ξ(mn)ξ(r)} c^n u_{m−1}^n w_r ≡ 0 (mod u_m)`.
    pub fn cor1(&mut self, m: u64, n: u64, r: u64) -> Result<CongruenceReport> {
        check_domain(self.spec())?;
        if m == 0 || n == 0 || r == 0 {
            return Err(Error::InvalidIndex("cor1 needs m, n, r >= 1"));
        }
        let p = self.params();
        self.prepare(m * n + r, m, 0);
        let e = xi(m) * halve(n as i64 + xi(n), "cor1")? - xi(m * n) * xi(r);
        let residual = self.w.get(m * n + r)
            - p.b_over_a(e)
                * Rational::from(p.c()).pow(n as i64)
                * self.u.get(m - 1).pow(n as i64)
                * self.w.get(r);
        Ok(CongruenceReport::new(
            "cor1",
            IndexTuple::from([("m", m as i64), ("n", n as i64), ("r", r as i64)]),
            residual,
            integer_modulus(self.u.get(m)),
            &p.ab(),
        ))
    }

    /// `w_{2mn+r} − (−1)^{(m+1)n} c^{mn} w_r ≡ 0 (mod v_m)`.
    pub fn cor2(&mut self, m: u64, n: u64, r: u64) -> Result<CongruenceReport> {
        check_domain(self.spec())?;
        if m == 0 || n == 0 || r == 0 {
            return Err(Error::InvalidIndex("cor2 needs m, n, r >= 1"));
        }
        let p = self.params();
        self.prepare(2 * m * n + r, 0, m);
        let residual = self.w.get(2 * m * n + r)
            - Rational::from(-1).pow(((m + 1) * n) as i64)
                * Rational::from(p.c()).pow((m * n) as i64)
                * self.w.get(r);
        Ok(CongruenceReport::new(
            "cor2",
            IndexTuple::from([("m", m as i64), ("n", n as i64), ("r", r as i64)]),
            residual,
            integer_modulus(self.v.get(m)),
            &p.ab(),
        ))
    }

    /// `w_{2(m+r)n+d} − (−1)^{n(m+1)} c^{mn} w_{2rn+d} ≡ 0 (mod v_m)`.
    pub fn cor3(&mut self, n: u64, m: u64, r: u64, d: u64) -> Result<CongruenceReport> {
        check_domain(self.spec())?;
        if n == 0 || m == 0 || r == 0 || d == 0 {
            return Err(Error::InvalidIndex("cor3 needs n, m, r, d >= 1"));
        }
        let p = self.params();
        self.prepare(2 * (m + r) * n + d, 0, m);
        let residual = self.w.get(2 * (m + r) * n + d)
            - Rational::from(-1).pow((n * (m + 1)) as i64)
                * Rational::from(p.c()).pow((m * n) as i64)
                * self.w.get(2 * r * n + d);
        Ok(CongruenceReport::new(
            "cor3",
            IndexTuple::from([
                ("n", n as i64),
                ("m", m as i64),
                ("r", r as i64),
                ("d", d as i64),
            ]),
            residual,
            integer_modulus(self.v.get(m)),
            &p.ab(),
        ))
    }
}

pub fn check_cor1(spec: &SeqSpec, m: u64, n: u64, r: u64) -> Result<CongruenceReport> {
    Verifier::new(spec.clone()).cor1(m, n, r)
}

pub fn check_cor2(spec: &SeqSpec, m: u64, n: u64, r: u64) -> Result<CongruenceReport> {
    Verifier::new(spec.clone()).cor2(m, n, r)
}

pub fn check_cor3(spec: &SeqSpec, n: u64, m: u64, r: u64, d: u64) -> Result<CongruenceReport> {
    Verifier::new(spec.clone()).cor3(n, m, r, d)
}
