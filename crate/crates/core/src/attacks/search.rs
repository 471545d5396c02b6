//! Candidate feedback words for the certificate searches.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::mix::absorb;

/// Largest feedback length that is enumerated exhaustively.
pub const EXHAUSTIVE_FEEDBACK_BITS: usize = 20;

/// Default number of sampled feedback words.
pub const DEFAULT_BUDGET: u64 = 1 << 16;

const SAMPLE_TAG: u64 = 0x5A3D_1E00;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Number of feedback samples when exhaustive enumeration is too large.
    pub budget: u64,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: DEFAULT_BUDGET,
            seed: 0,
        }
    }
}

/// How the feedback word was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FeedbackMode {
    /// Bob's share of the section is small; feedback fixed to all zeros.
    Fixed,
    /// Every feedback word in lexicographic order.
    Exhaustive,
    /// Seeded pseudorandom samples.
    Sampled,
}

/// The ordered list of feedback words a search scans for one candidate
/// tuple. Words are generated on demand by index.
#[derive(Debug, Clone, Copy)]
pub struct FeedbackCandidates {
    mode: FeedbackMode,
    len: usize,
    count: u64,
    seed: u64,
}

impl FeedbackCandidates {
    pub fn fixed(len: usize) -> Self {
        FeedbackCandidates {
            mode: FeedbackMode::Fixed,
            len,
            count: 1,
            seed: 0,
        }
    }

    /// All `2^len` words when `len <= 20`, otherwise `config.budget`
    /// seeded samples.
    pub fn for_length(len: usize, config: &SearchConfig) -> Self {
        if len <= EXHAUSTIVE_FEEDBACK_BITS {
            FeedbackCandidates {
                mode: FeedbackMode::Exhaustive,
                len,
                count: 1 << len,
                seed: 0,
            }
        } else {
            FeedbackCandidates {
                mode: FeedbackMode::Sampled,
                len,
                count: config.budget,
                seed: config.seed,
            }
        }
    }

    pub fn mode(&self) -> FeedbackMode {
        self.mode
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// The `i`'th candidate. Sample `i` packs its bits from
    /// `absorb(absorb(absorb(seed, SAMPLE_TAG), i), chunk)`, most significant
    /// bit first, one 64-bit chunk at a time.
    pub fn get(&self, i: u64) -> BitString {
        match self.mode {
            FeedbackMode::Fixed => BitString::zeros(self.len),
            FeedbackMode::Exhaustive => BitString::from_u64(i, self.len),
            FeedbackMode::Sampled => {
                let state = absorb(absorb(self.seed, SAMPLE_TAG), i);
                let mut word = 0;
                (0..self.len)
                    .map(|p| {
                        if p % 64 == 0 {
                            word = absorb(state, (p / 64) as u64);
                        }
                        (word >> (63 - p % 64)) & 1 == 1
                    })
                    .collect()
            }
        }
    }

    /// The first candidate (by index) accepted by `accept`, with the index.
    /// Runs in parallel; the result does not depend on scheduling.
    pub fn find_first<T, F>(&self, accept: F) -> Option<(u64, T)>
    where
        T: Send,
        F: Fn(&BitString) -> Option<T> + Sync + Send,
    {
        if self.count <= 64 {
            return (0..self.count).find_map(|i| accept(&self.get(i)).map(|t| (i, t)));
        }
        (0..self.count)
            .into_par_iter()
            .find_map_first(|i| accept(&self.get(i)).map(|t| (i, t)))
    }
}
