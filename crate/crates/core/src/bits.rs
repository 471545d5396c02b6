//! Fixed-length binary strings with 1-based positional access.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite sequence of bits.
///
/// Positional accessors ([`BitString::bit`], [`BitString::range`]) are
/// 1-based, so `s.bit(1)` is the first bit and `s.range(i, j)` is the
/// inclusive substring from the `i`'th to the `j`'th bit. Slice access via
/// [`BitString::as_slice`] is ordinary 0-based Rust indexing.
///
/// Ordering is lexicographic with `0 < 1`, which is also the order used
/// whenever searches need a canonical "smallest" string.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        BitString { bits }
    }

    pub fn zeros(len: usize) -> Self {
        BitString {
            bits: vec![false; len],
        }
    }

    /// The `len` low bits of `value`, most significant first.
    ///
    /// Numeric order of `value` coincides with lexicographic order of the
    /// result, which is what exhaustive enumerations rely on.
    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!(len <= 64, "from_u64 supports at most 64 bits");
        let bits = (0..len).rev().map(|i| (value >> i) & 1 == 1).collect();
        BitString { bits }
    }

    /// Inverse of [`BitString::from_u64`]; `None` when longer than 64 bits.
    pub fn to_u64(&self) -> Option<u64> {
        if self.bits.len() > 64 {
            return None;
        }
        Some(
            self.bits
                .iter()
                .fold(0u64, |acc, &b| (acc << 1) | u64::from(b)),
        )
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// The `i`'th bit, 1-based.
    pub fn bit(&self, i: usize) -> bool {
        assert!(
            i >= 1 && i <= self.bits.len(),
            "bit index {i} out of range 1..={}",
            self.bits.len()
        );
        self.bits[i - 1]
    }

    /// Inclusive 1-based substring `x[i:j]`. An empty range is allowed when
    /// `j == i - 1`.
    pub fn range(&self, i: usize, j: usize) -> BitString {
        assert!(i >= 1 && j + 1 >= i && j <= self.bits.len());
        BitString::new(self.bits[i - 1..j].to_vec())
    }

    /// The first `len` bits.
    pub fn prefix(&self, len: usize) -> BitString {
        BitString::new(self.bits[..len].to_vec())
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    pub fn concat(&self, other: &BitString) -> BitString {
        let mut bits = Vec::with_capacity(self.len() + other.len());
        bits.extend_from_slice(&self.bits);
        bits.extend_from_slice(&other.bits);
        BitString { bits }
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn complement(&self) -> BitString {
        self.bits.iter().map(|b| !b).collect()
    }

    /// Hamming distance; errors on a length mismatch.
    pub fn distance(&self, other: &BitString) -> Result<usize> {
        if self.len() != other.len() {
            return Err(Error::invalid(format!(
                "length mismatch: {} vs {}",
                self.len(),
                other.len()
            )));
        }
        Ok(hamming_slices(&self.bits, &other.bits))
    }
}

/// Hamming distance of two equal-length slices.
pub(crate) fn hamming_slices(a: &[bool], b: &[bool]) -> usize {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        BitString::new(iter.into_iter().collect())
    }
}

impl From<Vec<bool>> for BitString {
    fn from(bits: Vec<bool>) -> Self {
        BitString::new(bits)
    }
}

impl AsRef<[bool]> for BitString {
    fn as_ref(&self) -> &[bool] {
        &self.bits
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::invalid(format!(
                    "invalid character {other:?} in bit string {s:?}"
                ))),
            })
            .collect()
    }
}

impl serde::Serialize for BitString {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for BitString {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

/// Shorthand for parsing a literal in tests and builtins.
///
/// Panics on characters other than `0`/`1`.
pub fn bits(s: &str) -> BitString {
    s.parse().expect("bit string literal")
}
