//! The three attacks, each producing two inputs and a forced transcript per
//! input under which Bob's views coincide.

mod merge;
mod one;
mod pair;
mod search;
mod three;
mod triple;
mod two;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::protocol::{
    confusable, CorruptionCount, ExecutionTrace, ForceTranscript, Protocol,
};
use crate::rational::{format_rational, int, Rational};

pub use merge::{merge_threshold, merge_triple_word};
pub use one::{attack_one, brute_force_pair_cost, Attack1Outcome, OneThirdPlan};
pub use pair::{find_confusable_pair, pair_candidates_needed, PairCertificate, PairSection};
pub use search::{
    FeedbackCandidates, FeedbackMode, SearchConfig, DEFAULT_BUDGET, EXHAUSTIVE_FEEDBACK_BITS,
};
pub use three::{attack_three, attack_three_bound};
pub use triple::{find_confusable_triple, TripleCertificate};
pub use two::{attack_two, attack_two_bound};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AttackId {
    One,
    Two,
    Three,
}

impl AttackId {
    pub fn number(self) -> u8 {
        match self {
            AttackId::One => 1,
            AttackId::Two => 2,
            AttackId::Three => 3,
        }
    }
}

impl fmt::Display for AttackId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl Serialize for AttackId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.number())
    }
}

/// What the one-third attack did, in replayable form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OneThirdSummary {
    pub survivors: [BitString; 2],
    pub eliminated: BitString,
    pub switch_round: Option<usize>,
    pub deltas: [usize; 3],
    pub transcript: BitString,
}

impl From<&Attack1Outcome> for OneThirdSummary {
    fn from(o: &Attack1Outcome) -> Self {
        OneThirdSummary {
            survivors: o.survivors.clone(),
            eliminated: o.eliminated.clone(),
            switch_round: o.switch_round,
            deltas: o.deltas,
            transcript: o.transcript.clone(),
        }
    }
}

/// Attack-specific evidence behind an [`AttackOutcome`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    OneThird {
        attack: OneThirdSummary,
    },
    TripleMerge {
        section_one: TripleCertificate,
        section_two: OneThirdSummary,
    },
    TranscriptSwitch {
        clique: Vec<usize>,
        /// Absent when the second section has no Alice rounds and the pair
        /// shares its first-section transcript.
        section_two: Option<PairCertificate>,
    },
}

/// Two inputs and, for each, the transcript the adversary forces. Built
/// only after both forced executions were replayed and compared.
#[derive(Debug, Clone)]
pub struct AttackOutcome {
    pub attack: AttackId,
    /// Indices into the protocol's input list.
    pub inputs: [usize; 2],
    /// Delivered bit of every round under each input.
    pub targets: [BitString; 2],
    pub traces: [ExecutionTrace; 2],
    /// `[input][section]` flip counts, split at the section boundary.
    pub section_costs: [[CorruptionCount; 2]; 2],
    pub boundary: usize,
    /// Upper bound on each input's total flips.
    pub bound: Rational,
    pub confusable: bool,
    pub certificate: Certificate,
    pub candidates_tried: u64,
}

impl AttackOutcome {
    /// The adversary plan for each input.
    pub fn plans(&self) -> [ForceTranscript; 2] {
        self.targets.clone().map(ForceTranscript)
    }

    pub fn costs(&self) -> [usize; 2] {
        [0, 1].map(|i| self.traces[i].corruption_total())
    }

    pub fn max_cost(&self) -> usize {
        self.costs().into_iter().max().unwrap_or(0)
    }

    pub fn within_bound(&self) -> bool {
        self.costs().iter().all(|&c| int(c) <= self.bound)
    }
}

/// Replays both forced transcripts and assembles the outcome, rejecting it
/// if Bob's views differ or a cost exceeds `bound`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn finalize(
    protocol: &Protocol,
    attack: AttackId,
    inputs: [usize; 2],
    targets: [BitString; 2],
    bound: Rational,
    certificate: Certificate,
    candidates_tried: u64,
) -> Result<AttackOutcome> {
    if inputs[0] == inputs[1] {
        return Err(Error::rejected("attack returned the same input twice"));
    }
    let boundary = protocol.schedule().split_sections().boundary;
    let traces = [
        protocol.execute(protocol.input(inputs[0]), ForceTranscript(targets[0].clone()))?,
        protocol.execute(protocol.input(inputs[1]), ForceTranscript(targets[1].clone()))?,
    ];
    let confusable = confusable(&traces[0], &traces[1])?;
    if !confusable {
        return Err(Error::rejected(format!(
            "attack {attack}: Bob's views differ on replay"
        )));
    }
    let outcome = AttackOutcome {
        attack,
        inputs,
        section_costs: [
            traces[0].section_corruptions(boundary),
            traces[1].section_corruptions(boundary),
        ],
        targets,
        traces,
        boundary,
        bound,
        confusable,
        certificate,
        candidates_tried,
    };
    if !outcome.within_bound() {
        return Err(Error::rejected(format!(
            "attack {attack}: costs {:?} exceed bound {}",
            outcome.costs(),
            format_rational(&bound)
        )));
    }
    Ok(outcome)
}

/// Attack one on inputs `indices` of the protocol, as an [`AttackOutcome`].
pub fn mount_attack_one(protocol: &Protocol, indices: [usize; 3]) -> Result<AttackOutcome> {
    if let Some(&bad) = indices.iter().find(|&&i| i >= protocol.inputs().len()) {
        return Err(Error::invalid(format!("input index {bad} out of range")));
    }
    let out = attack_one(protocol, indices.map(|i| protocol.input(i)))?;
    let inputs = [indices[out.order[0]], indices[out.order[1]]];
    finalize(
        protocol,
        AttackId::One,
        inputs,
        [out.transcript.clone(), out.transcript.clone()],
        int(out.bound),
        Certificate::OneThird {
            attack: OneThirdSummary::from(&out),
        },
        0,
    )
}
