//! Merging three Alice words into one close to all of them.

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::rational::{ceil_count, ratio, Rational};

/// `ceil((1/4 + eps/2) * len)`: the distance at which the merge stops
/// following the majority.
pub fn merge_threshold(eps: Rational, len: usize) -> usize {
    ceil_count(ratio(1, 4) + eps / 2, len)
}

/// Online form of [`merge_triple_word`], one position at a time.
#[derive(Debug, Clone)]
pub(crate) struct Merger {
    threshold: usize,
    dist: [usize; 3],
    lock: Option<usize>,
}

impl Merger {
    pub(crate) fn new(threshold: usize) -> Self {
        Merger {
            threshold,
            dist: [0; 3],
            lock: None,
        }
    }

    pub(crate) fn step(&mut self, bits: [bool; 3]) -> bool {
        let out = match self.lock {
            Some(i) => bits[i],
            None => majority(bits),
        };
        for (d, b) in self.dist.iter_mut().zip(bits) {
            *d += usize::from(b != out);
        }
        if self.lock.is_none() {
            let max = *self.dist.iter().max().unwrap();
            if max >= self.threshold {
                self.lock = self.dist.iter().position(|&d| d == max);
            }
        }
        out
    }
}

pub(crate) fn majority(bits: [bool; 3]) -> bool {
    bits.iter().filter(|&&b| b).count() >= 2
}

/// Follows the bitwise majority of `w1, w2, w3` until some word is
/// `ceil((1/4 + eps/2) * A)` away from the output so far, then copies the
/// farthest word (smallest index on ties) for the rest.
///
/// When the three words have diameter at most `(1/2 + eps) * A`, the output
/// is within `(1/4 + eps/2) * A + 1` of each of them.
pub fn merge_triple_word(
    w1: &BitString,
    w2: &BitString,
    w3: &BitString,
    eps: Rational,
) -> Result<BitString> {
    let len = w1.len();
    if w2.len() != len || w3.len() != len {
        return Err(Error::invalid(format!(
            "words have lengths {}, {}, {}",
            w1.len(),
            w2.len(),
            w3.len()
        )));
    }
    Ok(merge_slices([w1.as_slice(), w2.as_slice(), w3.as_slice()], eps))
}

pub(crate) fn merge_slices(words: [&[bool]; 3], eps: Rational) -> BitString {
    let len = words[0].len();
    let mut merger = Merger::new(merge_threshold(eps, len));
    (0..len)
        .map(|t| merger.step([words[0][t], words[1][t], words[2][t]]))
        .collect()
}
