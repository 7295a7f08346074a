use alloc::vec::Vec;
use core::fmt;

use crate::Rational;

/// Named indices that pin down one instance of an identity, in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IndexTuple(Vec<(&'static str, i64)>);

impl IndexTuple {
    pub fn new() -> Self {
        IndexTuple(Vec::new())
    }

    pub fn push(&mut self, name: &'static str, value: i64) {
        self.0.push((name, value));
    }

    pub fn get(&self, name: &str) -> Option<i64> {
        self.0.iter().find(|(k, _)| *k == name).map(|&(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, i64)> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<const N: usize> From<[(&'static str, i64); N]> for IndexTuple {
    fn from(entries: [(&'static str, i64); N]) -> Self {
        IndexTuple(entries.to_vec())
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// Outcome of checking one identity instance: both sides, computed
/// independently, and whether they agree exactly.
///
/// `T` is [`Rational`] for sequence identities and [`crate::QuadElem`] for
/// the ring identity checked by [`crate::check_lemma3`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport<T = Rational> {
    name: &'static str,
    index: IndexTuple,
    lhs: T,
    rhs: T,
    equal: bool,
    summands: Vec<T>,
}

impl<T: PartialEq> IdentityReport<T> {
    pub fn new(name: &'static str, index: IndexTuple, lhs: T, rhs: T) -> Self {
        let equal = lhs == rhs;
        IdentityReport {
            name,
            index,
            lhs,
            rhs,
            equal,
            summands: Vec::new(),
        }
    }

    /// Attaches the individual terms whose sum forms the right side.
    pub fn with_summands(mut self, summands: Vec<T>) -> Self {
        self.summands = summands;
        self
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn index(&self) -> &IndexTuple {
        &self.index
    }

    pub fn lhs(&self) -> &T {
        &self.lhs
    }

    pub fn rhs(&self) -> &T {
        &self.rhs
    }

    pub fn equal(&self) -> bool {
        self.equal
    }

    pub fn summands(&self) -> &[T] {
        &self.summands
    }
}

impl<T: fmt::Display> fmt::Display for IdentityReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}]: lhs={} rhs={} equal={}",
            self.name, self.index, self.lhs, self.rhs, self.equal
        )
    }
}
