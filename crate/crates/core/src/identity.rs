//! Checkers for the binomial and multinomial identities satisfied by `w`.
//!
//! Each checker evaluates the left side from the recurrence and the right
//! side from the closed-form sum, then compares exactly. Every exponent of
//! `a/b` that the formulas write as a half-integer expression goes through
//! [`halve`], which rejects odd numerators instead of rounding.
//!
//! [`Verifier`] owns prefix tables for `w`, `u` and `v` of one spec so a
//! sweep over many index tuples reuses terms; the free `check_*` functions
//! build a fresh one per call.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::report::{IdentityReport, IndexTuple};
use crate::sequence::{int_pow, xi, Params, SeqSpec, Terms};
use crate::{Error, QuadElem, Rational, Result};

/// Which root of `x² − abx − abc` to substitute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Root {
    Alpha,
    Beta,
}

/// The two displayed forms of the `r = 1, m = 2, c = 1` case of the
/// four-term identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Thm4Variant {
    /// `(ab+2) w_{n+4} = w_n + a^{ξ(n+1)} b^{ξ(n)} w_{n+1} + w_{n+6}`
    Direct,
    /// `(ab+1) w_{n+4} = w_n + a^{ξ(n+1)} b^{ξ(n)} (w_{n+1} + w_{n+5})`
    ZhangForm,
}

/// The two multinomial expansions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Thm5Form {
    /// Expands `w_{(m+2r)n+d}`, normalized by `v_m^{-n}`.
    S2,
    /// Expands `w_{2(m+r)n+d}`.
    S3,
}

/// Integer half of an exponent numerator that must be even.
pub fn halve(e: i64, what: &'static str) -> Result<i64> {
    if e % 2 != 0 {
        return Err(Error::NonIntegralExponent(what));
    }
    Ok(e / 2)
}

/// Numerator `E = ξ(mn+r) − 2iξ(m) + i − ξ(i+r) + nξ(m)` of the `b/a`
/// exponent in the simplified binomial expansion of `w_{mn+r}`.
pub fn thm2_exponent(m: u64, n: u64, r: u64, i: u64) -> i64 {
    let (n_i, i_i) = (n as i64, i as i64);
    xi(m * n + r) - 2 * i_i * xi(m) + i_i - xi(i + r) + n_i * xi(m)
}

/// The two `a/b` exponents shown to coincide when correcting the published
/// Lucas-coefficient expansions: `(left, right)` with
/// `left = ξ(r+1)ξ(m)i + (−1)^{r+1}ξ(m)(i−ξ(i))/2` and
/// `right = ξ(m)(i+ξ(i))/2 − ξ(im)ξ(r)`.
pub fn remark2_exponents(m: u64, i: u64, r: u64) -> (i64, i64) {
    let i_s = i as i64;
    let sign = if (r + 1).is_multiple_of(2) { 1 } else { -1 };
    let left = xi(r + 1) * xi(m) * i_s + sign * xi(m) * ((i_s - xi(i)) / 2);
    let right = xi(m) * ((i_s + xi(i)) / 2) - xi(i * m) * xi(r);
    (left, right)
}

/// True when both exponent forms agree (they always should).
pub fn check_remark2_exponent(m: u64, i: u64, r: u64) -> bool {
    let (l, r) = remark2_exponents(m, i, r);
    l == r
}

/// `δ[m,n,r,i] = (ab)^{⌊(i+r)/2⌋ + n⌊m/2⌋} a^{−ξ(m+1)i − 1 + ξ(i+r)} b^{ξ(m)(n−i)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaWeight {
    pub m: u64,
    pub n: u64,
    pub r: u64,
    pub i: u64,
    pub value: Rational,
}

impl DeltaWeight {
    pub fn new(params: Params, m: u64, n: u64, r: u64, i: u64) -> Self {
        let ab_exp = ((i + r) / 2 + n * (m / 2)) as i64;
        let a_exp = -xi(m + 1) * i as i64 - 1 + xi(i + r);
        let b_exp = xi(m) * (n as i64 - i as i64);
        let value = Rational::from(params.ab()).pow(ab_exp)
            * int_pow(params.a(), a_exp)
            * int_pow(params.b(), b_exp);
        DeltaWeight { m, n, r, i, value }
    }
}

/// Row `C(n, 0..=n)` by the multiplicative recurrence.
fn binomial_row(n: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut cur = BigInt::one();
    row.push(cur.clone());
    for i in 0..n {
        cur = cur * (n - i) / (i + 1);
        row.push(cur.clone());
    }
    row
}

/// Compositions `(i, j, s)` of `n` in lexicographic order with their
/// multinomial coefficients `n!/(i! j! s!) = C(n,i)·C(n−i,j)`.
fn compositions(n: u64) -> Vec<((u64, u64, u64), BigInt)> {
    let outer = binomial_row(n);
    let mut out = Vec::new();
    for i in 0..=n {
        let inner = binomial_row(n - i);
        for j in 0..=(n - i) {
            let coeff = &outer[i as usize] * &inner[j as usize];
            out.push(((i, j, n - i - j), coeff));
        }
    }
    out
}

fn neg_pow(c: i64, e: u64) -> Rational {
    Rational::from(-c).pow(e as i64)
}

fn sign_pow(e: u64) -> Rational {
    Rational::from(-1).pow(e as i64)
}

fn ensure_m_gt_1(m: u64, what: &'static str) -> Result<()> {
    if m <= 1 {
        Err(Error::InvalidIndex(what))
    } else {
        Ok(())
    }
}

fn idx<const N: usize>(entries: [(&'static str, u64); N]) -> IndexTuple {
    let mut t = IndexTuple::new();
    for (k, v) in entries {
        t.push(k, v as i64);
    }
    t
}

/// Memoizing evaluation context for one sequence.
///
/// Holds the prefix tables of `w` (the spec itself) and of `u`, `v` for the
/// same parameters. Not shared across threads; make one per worker.
#[derive(Debug, Clone)]
pub struct Verifier {
    spec: SeqSpec,
    pub(crate) w: Terms,
    pub(crate) u: Terms,
    pub(crate) v: Terms,
}

impl Verifier {
    pub fn new(spec: SeqSpec) -> Self {
        let p = spec.params();
        Verifier {
            w: Terms::new(spec.clone()),
            u: Terms::new(SeqSpec::u(p)),
            v: Terms::new(SeqSpec::v(p)),
            spec,
        }
    }

    pub fn spec(&self) -> &SeqSpec {
        &self.spec
    }

    pub fn params(&self) -> Params {
        self.spec.params()
    }

    pub(crate) fn prepare(&mut self, w_max: u64, u_max: u64, v_max: u64) {
        self.w.extend_to(w_max);
        self.u.extend_to(u_max);
        self.v.extend_to(v_max);
    }

    /// `w_n` from the table.
    pub fn w(&mut self, n: u64) -> Rational {
        self.w.extend_to(n);
        self.w.get(n).clone()
    }

    /// Binomial expansion of `u_{mn+r}` with the `δ[m,n,r,i]` weights.
    /// Summands are reported with the outer prefactor applied.
    pub fn eq7(&mut self, m: u64, n: u64, r: u64) -> Result<IdentityReport> {
        ensure_m_gt_1(m, "eq7 needs m > 1")?;
        let p = self.params();
        self.prepare(0, (m * n + r).max(n + r).max(m), 0);
        let u = &self.u;
        let total = m * n + r;
        let prefactor =
            int_pow(p.a(), 1 - xi(total)) * Rational::from(p.ab()).pow(-((total / 2) as i64));
        let c = Rational::from(p.c());
        let summands: Vec<Rational> = binomial_row(n)
            .into_iter()
            .enumerate()
            .map(|(i, binom)| {
                let i = i as u64;
                let delta = DeltaWeight::new(p, m, n, r, i).value;
                Rational::from(binom)
                    * c.pow((n - i) as i64)
                    * u.get(m).pow(i as i64)
                    * u.get(m - 1).pow((n - i) as i64)
                    * u.get(i + r)
                    * delta
                    * &prefactor
            })
            .collect();
        let rhs = summands.iter().sum();
        Ok(IdentityReport::new(
            "eq7",
            idx([("m", m), ("n", n), ("r", r)]),
            u.get(total).clone(),
            rhs,
        )
        .with_summands(summands))
    }

    /// Simplified `b/a`-exponent expansion of `w_{mn+r}` in powers of `u_m`.
    pub fn thm2(&mut self, m: u64, n: u64, r: u64) -> Result<IdentityReport> {
        ensure_m_gt_1(m, "thm2 needs m > 1")?;
        let p = self.params();
        self.prepare((m * n + r).max(n + r), m, 0);
        let (u, w) = (&self.u, &self.w);
        let c = Rational::from(p.c());
        let mut summands = Vec::with_capacity(n as usize + 1);
        for (i, binom) in binomial_row(n).into_iter().enumerate() {
            let i = i as u64;
            let e = halve(thm2_exponent(m, n, r, i), "thm2")?;
            summands.push(
                Rational::from(binom)
                    * p.b_over_a(e)
                    * c.pow((n - i) as i64)
                    * u.get(m).pow(i as i64)
                    * u.get(m - 1).pow((n - i) as i64)
                    * w.get(i + r),
            );
        }
        let rhs = summands.iter().sum();
        Ok(IdentityReport::new(
            "thm2",
            idx([("m", m), ("n", n), ("r", r)]),
            w.get(m * n + r).clone(),
            rhs,
        )
        .with_summands(summands))
    }

    /// The `c = 1`, even-index case `w_{2mn+2r} = Σ C(n,i) (b/a)^{(i−ξ(i))/2}
    /// u_{2m}^i u_{2m−1}^{n−i} w_{i+2r}`. With `corrected = false` the `b/a`
    /// factor is dropped, reproducing the uncorrected published statement.
    pub fn zhang47(&mut self, m: u64, n: u64, r: u64, corrected: bool) -> Result<IdentityReport> {
        let p = self.params();
        if p.c() != 1 {
            return Err(Error::InvalidParams("zhang47 requires c = 1"));
        }
        ensure_m_gt_1(m, "zhang47 needs m > 1")?;
        self.prepare((2 * m * n + 2 * r).max(n + 2 * r), 2 * m, 0);
        let (u, w) = (&self.u, &self.w);
        let mut summands = Vec::with_capacity(n as usize + 1);
        for (i, binom) in binomial_row(n).into_iter().enumerate() {
            let i = i as u64;
            let mut term = Rational::from(binom)
                * u.get(2 * m).pow(i as i64)
                * u.get(2 * m - 1).pow((n - i) as i64)
                * w.get(i + 2 * r);
            if corrected {
                term *= &p.b_over_a(halve(i as i64 - xi(i), "zhang47")?);
            }
            summands.push(term);
        }
        let rhs = summands.iter().sum();
        let name = if corrected {
            "zhang47"
        } else {
            "zhang47-uncorrected"
        };
        Ok(IdentityReport::new(
            name,
            idx([("m", m), ("n", n), ("r", r)]),
            w.get(2 * m * n + 2 * r).clone(),
            rhs,
        )
        .with_summands(summands))
    }

    /// Expansion of `w_{2mn+r}` in powers of `v_m`.
    pub fn thm3(&mut self, m: u64, n: u64, r: u64) -> Result<IdentityReport> {
        ensure_m_gt_1(m, "thm3 needs m > 1")?;
        let p = self.params();
        self.prepare(2 * m * n + r, 0, m);
        let (v, w) = (&self.v, &self.w);
        let mut summands = Vec::with_capacity(n as usize + 1);
        for (i, binom) in binomial_row(n).into_iter().enumerate() {
            let i = i as u64;
            let e = xi(m) * halve(i as i64 + xi(i), "thm3")? - xi(i * m) * xi(r);
            summands.push(
                Rational::from(binom)
                    * sign_pow((m + 1) * (n - i))
                    * p.a_over_b(e)
                    * Rational::from(p.c()).pow((m * (n - i)) as i64)
                    * v.get(m).pow(i as i64)
                    * w.get(i * m + r),
            );
        }
        let rhs = summands.iter().sum();
        Ok(IdentityReport::new(
            "thm3",
            idx([("m", m), ("n", n), ("r", r)]),
            w.get(2 * m * n + r).clone(),
            rhs,
        )
        .with_summands(summands))
    }

    /// `w_{n+2k} = (a/b)^{ξ(n+1)ξ(k)} v_k w_{n+k} − (−c)^k w_n`.
    pub fn lemma2(&mut self, n: u64, k: u64) -> Result<IdentityReport> {
        if k == 0 {
            return Err(Error::InvalidIndex("lemma2 needs k >= 1"));
        }
        let p = self.params();
        self.prepare(n + 2 * k, 0, k);
        let (v, w) = (&self.v, &self.w);
        let first = p.a_over_b(xi(n + 1) * xi(k)) * v.get(k) * w.get(n + k);
        let second = -(neg_pow(p.c(), k) * w.get(n));
        let rhs = &first + &second;
        Ok(IdentityReport::new(
            "lemma2",
            idx([("n", n), ("k", k)]),
            w.get(n + 2 * k).clone(),
            rhs,
        )
        .with_summands(vec![first, second]))
    }

    /// Ring identity
    /// `−(−abc)^{m+r} + a^{⌈r/2⌉} b^{⌊r/2⌋} v_r (−abc)^m z^r + z^{2(m+r)}
    ///  = z^{m+2r} a^{⌈m/2⌉} b^{⌊m/2⌋} v_m` for `z ∈ {α, β}`.
    pub fn lemma3(&mut self, m: u64, r: u64, root: Root) -> Result<IdentityReport<QuadElem>> {
        if m == 0 || r == 0 {
            return Err(Error::InvalidIndex("lemma3 needs m, r >= 1"));
        }
        let p = self.params();
        self.prepare(0, 0, m.max(r));
        let delta = p.delta();
        let (alpha, beta) = p.roots();
        let z = match root {
            Root::Alpha => alpha,
            Root::Beta => beta,
        };
        let scalar = |x: Rational| QuadElem::from_rational(x, &delta);
        let neg_abc = Rational::from(-p.abc());
        let constant = scalar(-neg_abc.pow((m + r) as i64));
        let middle = z
            .pow(r)
            .scale(&(p.lucas_scale(r) * self.v.get(r) * neg_abc.pow(m as i64)));
        let top = z.pow(2 * (m + r));
        let lhs = &(&constant + &middle) + &top;
        let rhs = z.pow(m + 2 * r).scale(&(p.lucas_scale(m) * self.v.get(m)));
        let name = match root {
            Root::Alpha => "lemma3-alpha",
            Root::Beta => "lemma3-beta",
        };
        Ok(
            IdentityReport::new(name, idx([("m", m), ("r", r)]), lhs, rhs)
                .with_summands(vec![constant, middle, top]),
        )
    }

    /// Four-term identity
    /// `−(−c)^{m+r} w_n + (−c)^m (a/b)^{ξ(r)ξ(n+1)} v_r w_{r+n} + w_{2(m+r)+n}
    ///  = (a/b)^{ξ(m)ξ(n+1)} v_m w_{m+2r+n}`.
    pub fn thm4(&mut self, n: u64, m: u64, r: u64) -> Result<IdentityReport> {
        if n == 0 || m == 0 || r == 0 {
            return Err(Error::InvalidIndex("thm4 needs n, m, r >= 1"));
        }
        let p = self.params();
        self.prepare(2 * (m + r) + n, 0, m.max(r));
        let (v, w) = (&self.v, &self.w);
        let t0 = -(neg_pow(p.c(), m + r) * w.get(n));
        let t1 = neg_pow(p.c(), m) * p.a_over_b(xi(r) * xi(n + 1)) * v.get(r) * w.get(r + n);
        let t2 = w.get(2 * (m + r) + n).clone();
        let lhs = &(&t0 + &t1) + &t2;
        let rhs = p.a_over_b(xi(m) * xi(n + 1)) * v.get(m) * w.get(m + 2 * r + n);
        Ok(
            IdentityReport::new("thm4", idx([("n", n), ("m", m), ("r", r)]), lhs, rhs)
                .with_summands(vec![t0, t1, t2]),
        )
    }

    /// The `r = 1, m = 2, c = 1` specialization of [`Verifier::thm4`] in
    /// either displayed form.
    pub fn thm4_special(&mut self, n: u64, variant: Thm4Variant) -> Result<IdentityReport> {
        let p = self.params();
        if p.c() != 1 {
            return Err(Error::InvalidParams("thm4-special requires c = 1"));
        }
        self.prepare(n + 6, 0, 0);
        let w = &self.w;
        let shift = int_pow(p.a(), xi(n + 1)) * int_pow(p.b(), xi(n));
        let ab = Rational::from(p.ab());
        let (lhs, summands, name) = match variant {
            Thm4Variant::Direct => (
                (ab + Rational::from(2)) * w.get(n + 4),
                vec![
                    w.get(n).clone(),
                    &shift * w.get(n + 1),
                    w.get(n + 6).clone(),
                ],
                "thm4-special-direct",
            ),
            Thm4Variant::ZhangForm => (
                (ab + Rational::one()) * w.get(n + 4),
                vec![
                    w.get(n).clone(),
                    &shift * w.get(n + 1),
                    &shift * w.get(n + 5),
                ],
                "thm4-special-zhang",
            ),
        };
        let rhs = summands.iter().sum();
        Ok(IdentityReport::new(name, idx([("n", n)]), lhs, rhs).with_summands(summands))
    }

    /// Multinomial expansions over compositions `i + j + s = n`.
    ///
    /// For [`Thm5Form::S2`] the summands are reported already multiplied by
    /// `v_m^{-n}`, so in both forms they add up to the right side.
    pub fn thm5(
        &mut self,
        n: u64,
        m: u64,
        r: u64,
        d: u64,
        form: Thm5Form,
    ) -> Result<IdentityReport> {
        if n == 0 || m == 0 || r == 0 {
            return Err(Error::InvalidIndex("thm5 needs n, m, r >= 1"));
        }
        let p = self.params();
        let big = 2 * (m + r) * n + d;
        self.prepare(big, 0, m.max(r));
        let (v, w) = (&self.v, &self.w);
        let c = p.c();
        let mut summands = Vec::new();
        let (lhs, name) = match form {
            Thm5Form::S3 => {
                for ((i, j, s), coeff) in compositions(n) {
                    let e = xi(m) * halve(i as i64 + xi(i), "thm5-s3")?
                        + xi(r) * halve(j as i64 + xi(j), "thm5-s3")?
                        - xi(m * i) * xi(r * j)
                        - xi(m * i + r * j) * xi(d);
                    summands.push(
                        Rational::from(coeff)
                            * sign_pow(j)
                            * neg_pow(c, s * (m + r) + m * j)
                            * v.get(m).pow(i as i64)
                            * v.get(r).pow(j as i64)
                            * w.get((m + 2 * r) * i + r * j + d)
                            * p.a_over_b(e),
                    );
                }
                (w.get(big).clone(), "thm5-s3")
            }
            Thm5Form::S2 => {
                let v_m = v.get(m);
                if v_m.is_zero() {
                    return Err(Error::DegenerateModulus);
                }
                let norm = v_m.pow(-(n as i64));
                let fixed = -xi(m) * halve(n as i64 + xi(n), "thm5-s2")? + xi(m * n) * xi(d);
                for ((i, j, s), coeff) in compositions(n) {
                    let e = xi(r) * halve(j as i64 + xi(j), "thm5-s2")? - xi(r * j) * xi(d) + fixed;
                    summands.push(
                        Rational::from(coeff)
                            * sign_pow(s)
                            * neg_pow(c, m * j + (m + r) * s)
                            * v.get(r).pow(j as i64)
                            * w.get(2 * (m + r) * i + r * j + d)
                            * p.a_over_b(e)
                            * &norm,
                    );
                }
                (w.get((m + 2 * r) * n + d).clone(), "thm5-s2")
            }
        };
        let rhs = summands.iter().sum();
        Ok(IdentityReport::new(
            name,
            idx([("n", n), ("m", m), ("r", r), ("d", d)]),
            lhs,
            rhs,
        )
        .with_summands(summands))
    }
}

pub fn check_eq7(params: Params, m: u64, n: u64, r: u64) -> Result<IdentityReport> {
    Verifier::new(SeqSpec::u(params)).eq7(m, n, r)
}

pub fn check_thm2(spec: &SeqSpec, m: u64, n: u64, r: u64) -> Result<IdentityReport> {
    Verifier::new(spec.clone()).thm2(m, n, r)
}

pub fn check_zhang47_corrected(
    spec: &SeqSpec,
    m: u64,
    n: u64,
    r: u64,
    corrected: bool,
) -> Result<IdentityReport> {
    Verifier::new(spec.clone()).zhang47(m, n, r, corrected)
}

pub fn check_thm3(spec: &SeqSpec, m: u64, n: u64, r: u64) -> Result<IdentityReport> {
    Verifier::new(spec.clone()).thm3(m, n, r)
}

pub fn check_lemma3(
    params: Params,
    m: u64,
    r: u64,
    root: Root,
) -> Result<IdentityReport<QuadElem>> {
    Verifier::new(SeqSpec::u(params)).lemma3(m, r, root)
}

pub fn check_thm4(spec: &SeqSpec, n: u64, m: u64, r: u64) -> Result<IdentityReport> {
    Verifier::new(spec.clone()).thm4(n, m, r)
}

pub fn check_thm4_special(spec: &SeqSpec, n: u64, variant: Thm4Variant) -> Result<IdentityReport> {
    Verifier::new(spec.clone()).thm4_special(n, variant)
}

pub fn check_thm5(
    spec: &SeqSpec,
    n: u64,
    m: u64,
    r: u64,
    d: u64,
    form: Thm5Form,
) -> Result<IdentityReport> {
    Verifier::new(spec.clone()).thm5(n, m, r, d, form)
}
