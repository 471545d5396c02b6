use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Speaker {
    Alice,
    Bob,
}

impl Speaker {
    pub fn symbol(self) -> char {
        match self {
            Speaker::Alice => 'A',
            Speaker::Bob => 'B',
        }
    }
}

/// Fixed speaking order of a non-adaptive protocol.
///
/// Ordinals are 1-based throughout: Alice's `t`'th round is the `t`'th `A`
/// in the schedule, Bob's `j`'th round the `j`'th `B`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RoundSchedule {
    rounds: Vec<Speaker>,
    // Per round: ordinal among that speaker's rounds (1-based).
    ordinals: Vec<usize>,
    // gamma[t - 1]: Bob rounds strictly before Alice's t'th round.
    gamma: Vec<usize>,
    // forward[j - 1]: Alice rounds strictly before Bob's j'th round.
    forward: Vec<usize>,
}

impl RoundSchedule {
    pub fn new(rounds: Vec<Speaker>) -> Self {
        let mut ordinals = Vec::with_capacity(rounds.len());
        let mut gamma = Vec::new();
        let mut forward = Vec::new();
        for &s in &rounds {
            match s {
                Speaker::Alice => {
                    gamma.push(forward.len());
                    ordinals.push(gamma.len());
                }
                Speaker::Bob => {
                    forward.push(gamma.len());
                    ordinals.push(forward.len());
                }
            }
        }
        RoundSchedule {
            rounds,
            ordinals,
            gamma,
            forward,
        }
    }

    /// Total number of rounds `n`.
    pub fn len(&self) -> usize {
        self.rounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rounds.is_empty()
    }

    pub fn alice_rounds(&self) -> usize {
        self.gamma.len()
    }

    pub fn bob_rounds(&self) -> usize {
        self.forward.len()
    }

    pub fn rounds(&self) -> &[Speaker] {
        &self.rounds
    }

    /// Speaker of round `r` (1-based).
    pub fn speaker(&self, r: usize) -> Speaker {
        self.rounds[r - 1]
    }

    /// Ordinal of round `r` (1-based) among its speaker's rounds.
    pub fn ordinal(&self, r: usize) -> usize {
        self.ordinals[r - 1]
    }

    /// Number of Bob rounds strictly before Alice's `t`'th round.
    pub fn gamma(&self, t: usize) -> Result<usize> {
        if t == 0 || t > self.alice_rounds() {
            return Err(Error::invalid(format!(
                "Alice round ordinal {t} out of range 1..={}",
                self.alice_rounds()
            )));
        }
        Ok(self.gamma[t - 1])
    }

    /// Number of Alice rounds strictly before Bob's `j`'th round, i.e. the
    /// length of Bob's received prefix when he speaks.
    pub fn forward_prefix(&self, j: usize) -> Result<usize> {
        if j == 0 || j > self.bob_rounds() {
            return Err(Error::invalid(format!(
                "Bob round ordinal {j} out of range 1..={}",
                self.bob_rounds()
            )));
        }
        Ok(self.forward[j - 1])
    }

    pub(crate) fn gamma_table(&self) -> &[usize] {
        &self.gamma
    }

    pub(crate) fn forward_table(&self) -> &[usize] {
        &self.forward
    }

    /// `(alice, bob)` round counts among the first `boundary` rounds.
    pub fn counts_before(&self, boundary: usize) -> (usize, usize) {
        let alice = self.rounds[..boundary]
            .iter()
            .filter(|&&s| s == Speaker::Alice)
            .count();
        (alice, boundary - alice)
    }

    /// The first `boundary` rounds.
    pub fn prefix(&self, boundary: usize) -> RoundSchedule {
        RoundSchedule::new(self.rounds[..boundary].to_vec())
    }

    /// Rounds after `boundary`.
    pub fn suffix(&self, boundary: usize) -> RoundSchedule {
        RoundSchedule::new(self.rounds[boundary..].to_vec())
    }

    /// Splits the protocol at round `ceil(21 n / 47)`.
    pub fn split_sections(&self) -> SectionSplit {
        let n = self.len();
        let boundary = (21 * n).div_ceil(47);
        let (a1, b1) = self.counts_before(boundary);
        SectionSplit {
            boundary,
            a1,
            b1,
            a2: self.alice_rounds() - a1,
            b2: self.bob_rounds() - b1,
        }
    }

    /// Interleaves an Alice-round word and a Bob-round word into a full
    /// per-round transcript.
    pub fn interleave(&self, alice: &[bool], bob: &[bool]) -> Result<Vec<bool>> {
        if alice.len() != self.alice_rounds() || bob.len() != self.bob_rounds() {
            return Err(Error::invalid(format!(
                "interleave expects {} Alice and {} Bob bits, got {} and {}",
                self.alice_rounds(),
                self.bob_rounds(),
                alice.len(),
                bob.len()
            )));
        }
        let (mut a, mut b) = (alice.iter(), bob.iter());
        Ok(self
            .rounds
            .iter()
            .map(|s| match s {
                Speaker::Alice => *a.next().unwrap(),
                Speaker::Bob => *b.next().unwrap(),
            })
            .collect())
    }
}

impl FromStr for RoundSchedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rounds = s
            .chars()
            .map(|c| match c {
                'A' => Ok(Speaker::Alice),
                'B' => Ok(Speaker::Bob),
                other => Err(Error::invalid(format!(
                    "schedule may only contain 'A' and 'B', found {other:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RoundSchedule::new(rounds))
    }
}

impl fmt::Display for RoundSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.rounds {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

impl fmt::Debug for RoundSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RoundSchedule({self})")
    }
}

/// Round counts on either side of the section boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SectionSplit {
    /// Number of rounds in the first section.
    pub boundary: usize,
    pub a1: usize,
    pub b1: usize,
    pub a2: usize,
    pub b2: usize,
}

impl SectionSplit {
    /// A split from raw counts; the boundary is `a1 + b1`.
    pub fn from_counts(a1: usize, b1: usize, a2: usize, b2: usize) -> Self {
        SectionSplit {
            boundary: a1 + b1,
            a1,
            b1,
            a2,
            b2,
        }
    }

    pub fn n(&self) -> usize {
        self.a1 + self.b1 + self.a2 + self.b2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sched(s: &str) -> RoundSchedule {
        s.parse().unwrap()
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(sched("ABAB").gamma(2).unwrap(), 1);
        let all_alice = sched("AAAA");
        for t in 1..=4 {
            assert_eq!(all_alice.gamma(t).unwrap(), 0);
        }
        assert_eq!(sched("BBA").gamma(1).unwrap(), 2);
    }

    #[test]
    fn gamma_out_of_range() {
        assert!(sched("ABAB").gamma(0).is_err());
        assert!(sched("ABAB").gamma(3).is_err());
        assert!(sched("BBB").gamma(1).is_err());
    }

    #[test]
    fn split_examples() {
        let all_alice = RoundSchedule::new(vec![Speaker::Alice; 47]);
        assert_eq!(
            all_alice.split_sections(),
            SectionSplit {
                boundary: 21,
                a1: 21,
                b1: 0,
                a2: 26,
                b2: 0
            }
        );
        assert_eq!(
            RoundSchedule::new(vec![Speaker::Bob; 94])
                .split_sections()
                .boundary,
            42
        );
        assert_eq!(sched("ABABABABAB").split_sections().boundary, 5);
    }

    #[test]
    fn split_boundary_exhaustive_up_to_100() {
        for n in 1..=100usize {
            let rounds = (0..n)
                .map(|r| if r % 3 == 1 { Speaker::Bob } else { Speaker::Alice })
                .collect();
            let s = RoundSchedule::new(rounds);
            let split = s.split_sections();
            // ceil by repeated subtraction, independent of div_ceil.
            let mut expected = 0;
            while expected * 47 < 21 * n {
                expected += 1;
            }
            assert_eq!(split.a1 + split.b1, expected, "n = {n}");
            assert_eq!(split.n(), n);
            assert_eq!(split.a1 + split.a2, s.alice_rounds());
            if n >= 3 {
                assert!(split.boundary >= 1);
            }
        }
    }

    #[test]
    fn interleave_follows_schedule() {
        let s = sched("ABBA");
        let t = s.interleave(&[true, false], &[false, true]).unwrap();
        assert_eq!(t, vec![true, false, true, false]);
        assert!(s.interleave(&[true], &[false, true]).is_err());
    }

    #[test]
    fn rejects_bad_symbols() {
        assert!("ABX".parse::<RoundSchedule>().is_err());
    }
}
