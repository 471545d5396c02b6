//! Pick two inputs with close first-section transcripts; show Bob the
//! first input's transcript there, then force the second input's word.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bits::BitString;
use crate::combinatorics::{find_close_clique, StringFamily};
use crate::error::{Error, Result};
use crate::protocol::{AlicePrefix, ExecutionTrace, Protocol, SectionSplit};
use crate::rational::{format_rational, half_plus, int, Rational};

use super::pair::{find_confusable_pair, pair_candidates_needed, PairSection};
use super::search::SearchConfig;
use super::triple::check_eps;
use super::{finalize, AttackId, AttackOutcome, Certificate};

/// The larger of `(1/2 + 2 eps) * A2 + (1/2 + eps) * B2` and
/// `(1/2 + eps) * (A1 + B1) + (1/2 + eps) * B2`.
pub fn attack_three_bound(split: &SectionSplit, eps: Rational) -> Rational {
    let h = half_plus(eps);
    let first = (h + eps) * int(split.a2) + h * int(split.b2);
    let second = h * int(split.a1 + split.b1) + h * int(split.b2);
    first.max(second)
}

/// Runs the transcript-switch attack.
///
/// Every input's noiseless first-section transcript is computed, and a set
/// of inputs whose transcripts are pairwise within `(1/2 + eps)` of the
/// section length is found. From that set, a pair `(x1, x2)` and feedback
/// `b` for the second section are chosen so that Bob, having seen `x1`'s
/// first section, is shown `a(x2; b)` afterwards. Under `x1` the first
/// section is left alone; under `x2` it is rewritten to `x1`'s transcript
/// on Alice's rounds while Alice keeps receiving her own noiseless
/// feedback.
pub fn attack_three(
    protocol: &Protocol,
    eps: Rational,
    config: &SearchConfig,
) -> Result<AttackOutcome> {
    check_eps(eps)?;
    let split = protocol.schedule().split_sections();
    let k = protocol.inputs().len();
    let needed = pair_candidates_needed(eps);
    if k < needed {
        return Err(Error::precondition(format!(
            "|inputs| > sqrt(2/eps) fails: {k}^2 * {} <= 2",
            format_rational(&eps)
        )));
    }
    let section = protocol.truncate(split.boundary)?;
    let noiseless: Vec<ExecutionTrace> = protocol
        .inputs()
        .iter()
        .map(|x| section.simulate_noiseless(x))
        .collect::<Result<_>>()?;
    let transcripts: Vec<BitString> = noiseless.iter().map(ExecutionTrace::delivered).collect();
    let family = StringFamily::new(transcripts.clone())?;
    let clique = find_close_clique(&family, eps, needed)?;

    let suffix = protocol.schedule().suffix(split.boundary);
    let bound = attack_three_bound(&split, eps);
    if split.a2 == 0 {
        return shared_transcript(protocol, &noiseless, clique.indices, bound);
    }

    let prefix: HashMap<BitString, BitString> = protocol
        .inputs()
        .iter()
        .zip(&noiseless)
        .map(|(x, t)| (x.clone(), t.alice_view()))
        .collect();
    let advice: Vec<BitString> = noiseless.iter().map(ExecutionTrace::bob_view).collect();
    let pair = find_confusable_pair(
        &PairSection::Advised {
            protocol,
            boundary: split.boundary,
            alice_prefix: AlicePrefix::PerInput(Arc::new(prefix)),
            advice: &advice,
        },
        &clique.indices,
        eps,
        config,
    )?;
    let [x1, x2] = pair.inputs;
    let tail: BitString = suffix
        .interleave(pair.alice_word.as_slice(), pair.feedback.as_slice())?
        .into();
    let head_x2: BitString = section
        .schedule()
        .interleave(
            noiseless[x1].bob_view().as_slice(),
            noiseless[x2].alice_view().as_slice(),
        )?
        .into();
    let targets = [transcripts[x1].concat(&tail), head_x2.concat(&tail)];
    let tried = pair.candidates_tried;
    finalize(
        protocol,
        AttackId::Three,
        [x1, x2],
        targets,
        bound,
        Certificate::TranscriptSwitch {
            clique: clique.indices,
            section_two: Some(pair),
        },
        tried,
    )
}

/// No Alice rounds after the boundary: Bob's view is fixed by the first
/// section, so only two inputs with the same noiseless first section work.
fn shared_transcript(
    protocol: &Protocol,
    noiseless: &[ExecutionTrace],
    clique: Vec<usize>,
    bound: Rational,
) -> Result<AttackOutcome> {
    for (a, &i) in clique.iter().enumerate() {
        for &j in &clique[a + 1..] {
            if noiseless[i].delivered() == noiseless[j].delivered() {
                let targets = [i, j].map(|x| {
                    protocol
                        .simulate_noiseless(protocol.input(x))
                        .map(|t| t.delivered())
                });
                let [ti, tj] = targets;
                return finalize(
                    protocol,
                    AttackId::Three,
                    [i, j],
                    [ti?, tj?],
                    bound,
                    Certificate::TranscriptSwitch {
                        clique,
                        section_two: None,
                    },
                    0,
                );
            }
        }
    }
    Err(Error::exhausted(
        "second section has no Alice rounds and no two candidates share a first-section transcript",
        0,
    ))
}
