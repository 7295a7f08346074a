//! Exact computation and identity checking for generalized bi-periodic
//! Horadam sequences.
//!
//! The sequence `w_n(w0, w1; a, b, c)` obeys `w_n = a w_{n-1} + c w_{n-2}` for
//! even `n` and `w_n = b w_{n-1} + c w_{n-2}` for odd `n`. Everything here is
//! exact: scalars are [`Rational`]s and the characteristic roots live in
//! [`QuadElem`], the ring `Q[t]/(t^2 - Δ)` with `Δ = a²b² + 4abc`.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]
#![warn(rust_2018_idioms, unused_qualifications)]

extern crate alloc;

mod error;

pub mod congruence;
pub mod fast;
pub mod identity;
pub mod quad;
pub mod rational;
pub mod report;
pub mod sequence;

pub use congruence::{
    check_cor1, check_cor2, check_cor3, rat_congruent_zero, rat_congruent_zero_away_from,
    CongruenceReport, CongruenceStatus,
};
pub use error::Error;
pub use fast::{lemma2_step, term_fast, StepMatrix};
pub use identity::{
    check_eq7, check_lemma3, check_remark2_exponent, check_thm2, check_thm3, check_thm4,
    check_thm4_special, check_thm5, check_zhang47_corrected, DeltaWeight, Root, Thm4Variant,
    Thm5Form, Verifier,
};
pub use quad::QuadElem;
pub use rational::Rational;
pub use report::{IdentityReport, IndexTuple};
pub use sequence::{
    check_eq5, gf_coeffs, lemma1_combine, term_binet, term_naive, BinetConstants, Family, Params,
    Parity, SeqSpec, Terms,
};

pub type Result<T, E = Error> = core::result::Result<T, E>;
