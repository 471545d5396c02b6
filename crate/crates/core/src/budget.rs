//! Exact cost fractions of the three attacks and the choice between them.
//!
//! With `a_i = A_i / n` and `b_i = B_i / n` for the two sections:
//!
//! - one-third attack: `d1 = a1/3 + a2/3`
//! - triple-merge attack: `d2 = a1/4 + b1/2 + a2/3`
//! - transcript-switch attack: `d3 = max(a2/2 + b2/2, a1/2 + b1/2 + b2/2)`
//!
//! When the first section is exactly 21/47 of the protocol the smallest of
//! the three never exceeds 13/47; [`weighted_identity`] is the certificate.

use serde::{Deserialize, Serialize};

use crate::attacks::AttackId;
use crate::error::{Error, Result};
use crate::protocol::SectionSplit;
use crate::rational::{format_rational, int, ratio, Rational};

/// Section round counts as exact fractions of the protocol length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SectionFractions {
    pub a1: Rational,
    pub b1: Rational,
    pub a2: Rational,
    pub b2: Rational,
}

impl SectionFractions {
    pub fn new(a1: Rational, b1: Rational, a2: Rational, b2: Rational) -> Self {
        SectionFractions { a1, b1, a2, b2 }
    }

    pub fn from_split(split: &SectionSplit, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("protocol length must be positive"));
        }
        if split.n() != n {
            return Err(Error::invalid(format!(
                "section counts sum to {} but n = {n}",
                split.n()
            )));
        }
        let f = |c: usize| int(c) / int(n);
        Ok(SectionFractions::new(
            f(split.a1),
            f(split.b1),
            f(split.a2),
            f(split.b2),
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaTriple {
    pub delta1: Rational,
    pub delta2: Rational,
    pub delta3: Rational,
    /// `1/2 - a2/2`, which equals `delta3` whenever that is below 13/47
    /// and the first section is exactly 21/47.
    pub delta3_prime: Rational,
}

impl DeltaTriple {
    pub fn of(fr: &SectionFractions) -> Self {
        let half = ratio(1, 2);
        let third = ratio(1, 3);
        let quarter = ratio(1, 4);
        DeltaTriple {
            delta1: third * fr.a1 + third * fr.a2,
            delta2: quarter * fr.a1 + half * fr.b1 + third * fr.a2,
            delta3: (half * fr.a2 + half * fr.b2).max(half * fr.a1 + half * fr.b1 + half * fr.b2),
            delta3_prime: half - half * fr.a2,
        }
    }

    /// `(attack, value)` of the smallest delta; ties go to the lower attack.
    pub fn minimum(&self) -> (AttackId, Rational) {
        let mut best = (AttackId::One, self.delta1);
        for (id, d) in [(AttackId::Two, self.delta2), (AttackId::Three, self.delta3)] {
            if d < best.1 {
                best = (id, d);
            }
        }
        best
    }
}

/// The cost fractions for a split of an `n`-round protocol.
pub fn deltas(split: &SectionSplit, n: usize) -> Result<DeltaTriple> {
    Ok(DeltaTriple::of(&SectionFractions::from_split(split, n)?))
}

/// `(9/35) d1 + (12/35) d2 + (2/5) d3'`. Equal to 13/47 whenever
/// `a1 + b1 = 21/47` and the four fractions sum to 1.
pub fn weighted_identity(fr: &SectionFractions) -> Rational {
    let d = DeltaTriple::of(fr);
    ratio(9, 35) * d.delta1 + ratio(12, 35) * d.delta2 + ratio(2, 5) * d.delta3_prime
}

/// The attack with the smallest cost fraction, and that fraction.
pub fn select_attack(split: &SectionSplit, n: usize) -> Result<(AttackId, Rational)> {
    Ok(deltas(split, n)?.minimum())
}

/// The deltas rendered as `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaReport {
    pub delta1: String,
    pub delta2: String,
    pub delta3: String,
    pub delta3_prime: String,
}

impl From<&DeltaTriple> for DeltaReport {
    fn from(d: &DeltaTriple) -> Self {
        DeltaReport {
            delta1: format_rational(&d.delta1),
            delta2: format_rational(&d.delta2),
            delta3: format_rational(&d.delta3),
            delta3_prime: format_rational(&d.delta3_prime),
        }
    }
}

/// The section-1 share the split targets.
pub fn first_section_share() -> Rational {
    ratio(21, 47)
}

/// The resilience ceiling certified by the three attacks.
pub fn ceiling() -> Rational {
    ratio(13, 47)
}
