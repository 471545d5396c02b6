//! Merge three inputs in the first section, then run the one-third attack
//! on them in the second.

use crate::bits::BitString;
use crate::error::Result;
use crate::protocol::{AlicePrefix, Protocol, SectionSplit};
use crate::rational::{half_plus, int, ratio, Rational};

use super::one::attack_one;
use super::search::SearchConfig;
use super::triple::find_confusable_triple;
use super::{finalize, AttackId, AttackOutcome, Certificate, OneThirdSummary};

/// `(1/4 + eps/2) * A1 + 1 + (1/2 + eps) * B1 + ceil(A2 / 3)`.
pub fn attack_two_bound(split: &SectionSplit, eps: Rational) -> Rational {
    (ratio(1, 4) + eps / 2) * int(split.a1)
        + 1
        + half_plus(eps) * int(split.b1)
        + int(split.a2.div_ceil(3))
}

/// Finds a mergeable triple in the first section, forces the merged word
/// and its feedback there, and then runs the one-third attack on the
/// rounds that remain.
pub fn attack_two(
    protocol: &Protocol,
    eps: Rational,
    config: &SearchConfig,
) -> Result<AttackOutcome> {
    let split = protocol.schedule().split_sections();
    let section = protocol.truncate(split.boundary)?;
    let triple = find_confusable_triple(&section, eps, config)?;
    let residual = protocol.condition_on_prefix(
        split.boundary,
        AlicePrefix::Shared(triple.feedback.clone()),
        triple.merged.clone(),
    )?;
    let one = attack_one(&residual, triple.inputs.map(|i| protocol.input(i)))?;
    let head: BitString = section
        .schedule()
        .interleave(triple.merged.as_slice(), triple.feedback.as_slice())?
        .into();
    let target = head.concat(&one.transcript);
    let inputs = [triple.inputs[one.order[0]], triple.inputs[one.order[1]]];
    let tried = triple.candidates_tried;
    finalize(
        protocol,
        AttackId::Two,
        inputs,
        [target.clone(), target],
        attack_two_bound(&split, eps),
        Certificate::TripleMerge {
            section_one: triple,
            section_two: OneThirdSummary::from(&one),
        },
        tried,
    )
}
