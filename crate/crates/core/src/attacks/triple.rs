//! Search for three inputs that can be merged into one forward word.

use serde::Serialize;

use crate::bits::{hamming_slices, BitString};
use crate::error::{Error, Result};
use crate::protocol::{ForceTranscript, Protocol};
use crate::rational::{format_rational, half_plus, int, ratio, within, Rational};

use super::merge::merge_slices;
use super::search::{FeedbackCandidates, FeedbackMode, SearchConfig};

/// Three inputs, a feedback word `b`, and the merged forward word Bob is
/// shown under all three.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleCertificate {
    /// Indices into the protocol's input list, increasing.
    pub inputs: [usize; 3],
    /// Delivered on Bob's rounds.
    pub feedback: BitString,
    pub mode: FeedbackMode,
    /// Delivered on Alice's rounds.
    pub merged: BitString,
    /// `a(x_i; b)` for each input.
    pub alice_words: [BitString; 3],
    /// Flips on Alice's rounds for each input.
    pub alice_costs: [usize; 3],
    /// What Bob sends after receiving the merged word.
    pub bob_sent: BitString,
    /// Flips on Bob's rounds, the same for every input.
    pub bob_cost: usize,
    pub candidates_tried: u64,
}

pub(crate) fn check_eps(eps: Rational) -> Result<()> {
    if eps < int(0) || eps > ratio(1, 2) {
        return Err(Error::invalid(format!(
            "eps must lie in [0, 1/2], got {}",
            format_rational(&eps)
        )));
    }
    Ok(())
}

/// Looks for inputs `x1 < x2 < x3` and feedback `b` such that the three
/// Alice words under `b` have diameter at most `(1/2 + eps) * A` and Bob,
/// shown their merge, sends something within `(1/2 + eps) * B` of `b`.
///
/// When `B <= eps * (A + B)` the feedback is fixed to all zeros and the
/// Bob condition is still checked. Otherwise every `b` is tried when
/// `B <= 20`, and `config.budget` seeded samples are tried beyond that.
/// Triples are scanned in lexicographic order with `b` innermost, so the
/// result is the smallest accepted `(x1, x2, x3, b)`.
///
/// For `eps > 0` the input count must satisfy `|inputs|^3 * eps > 4`.
pub fn find_confusable_triple(
    section: &Protocol,
    eps: Rational,
    config: &SearchConfig,
) -> Result<TripleCertificate> {
    check_eps(eps)?;
    let k = section.inputs().len();
    if eps > int(0) && int(k).pow(3) * eps <= int(4) {
        return Err(Error::precondition(format!(
            "|inputs| > (4/eps)^(1/3) fails: {k}^3 * {} <= 4",
            format_rational(&eps)
        )));
    }
    if k < 3 {
        return Err(Error::precondition(format!(
            "a triple needs at least 3 inputs, have {k}"
        )));
    }
    let schedule = section.schedule();
    let (a, b_len) = (schedule.alice_rounds(), schedule.bob_rounds());
    if a == 0 {
        return Err(Error::exhausted("section has no Alice rounds", 0));
    }
    let candidates = if within(b_len, eps, a + b_len) {
        FeedbackCandidates::fixed(b_len)
    } else {
        FeedbackCandidates::for_length(b_len, config)
    };
    let limit = half_plus(eps);
    let inputs = section.inputs();
    let fixed_words: Option<Vec<BitString>> = (candidates.mode() == FeedbackMode::Fixed).then(|| {
        let b = candidates.get(0);
        inputs
            .iter()
            .map(|x| section.alice_word_unchecked(x, b.as_slice()))
            .collect()
    });

    let attempt = |idx: [usize; 3], b: &BitString| -> Option<Accepted> {
        let words: [BitString; 3] = match &fixed_words {
            Some(all) => idx.map(|i| all[i].clone()),
            None => idx.map(|i| section.alice_word_unchecked(&inputs[i], b.as_slice())),
        };
        let [w1, w2, w3] = [&words[0], &words[1], &words[2]].map(BitString::as_slice);
        let diam = hamming_slices(w1, w2)
            .max(hamming_slices(w1, w3))
            .max(hamming_slices(w2, w3));
        if !within(diam, limit, a) {
            return None;
        }
        let merged = merge_slices([w1, w2, w3], eps);
        let bob_sent = section.bob_word_unchecked(merged.as_slice());
        let bob_cost = hamming_slices(bob_sent.as_slice(), b.as_slice());
        within(bob_cost, limit, b_len).then_some(Accepted {
            words,
            merged,
            bob_sent,
            bob_cost,
        })
    };

    let mut tried = 0u64;
    for i in 0..k {
        for j in i + 1..k {
            for m in j + 1..k {
                let idx = [i, j, m];
                if let Some((pos, acc)) = candidates.find_first(|b| attempt(idx, b)) {
                    tried += pos + 1;
                    let feedback = candidates.get(pos);
                    return certify(section, eps, idx, feedback, candidates.mode(), acc, tried);
                }
                tried += candidates.count();
            }
        }
    }
    Err(Error::exhausted(
        format!(
            "no triple with diameter <= {} * {a} and feedback cost <= {} * {b_len}",
            format_rational(&limit),
            format_rational(&limit)
        ),
        tried,
    ))
}

struct Accepted {
    words: [BitString; 3],
    merged: BitString,
    bob_sent: BitString,
    bob_cost: usize,
}

/// Replays the forced transcript on all three inputs and checks every
/// claimed count.
fn certify(
    section: &Protocol,
    eps: Rational,
    inputs: [usize; 3],
    feedback: BitString,
    mode: FeedbackMode,
    acc: Accepted,
    candidates_tried: u64,
) -> Result<TripleCertificate> {
    let schedule = section.schedule();
    let target: BitString = schedule
        .interleave(acc.merged.as_slice(), feedback.as_slice())?
        .into();
    let a = schedule.alice_rounds();
    let alice_limit = (ratio(1, 4) + eps / 2) * int(a) + 1;
    let mut alice_costs = [0; 3];
    for (slot, &i) in inputs.iter().enumerate() {
        let trace = section.execute(section.input(i), ForceTranscript(target.clone()))?;
        let c = trace.corruptions();
        let expected = acc.merged.distance(&acc.words[slot])?;
        if trace.alice_sent() != acc.words[slot]
            || trace.bob_sent() != acc.bob_sent
            || c.alice != expected
            || c.bob != acc.bob_cost
            || int(c.alice) > alice_limit
        {
            return Err(Error::rejected(format!(
                "triple certificate for input {} does not replay",
                section.input(i)
            )));
        }
        alice_costs[slot] = c.alice;
    }
    Ok(TripleCertificate {
        inputs,
        feedback,
        mode,
        merged: acc.merged,
        alice_words: acc.words,
        alice_costs,
        bob_sent: acc.bob_sent,
        bob_cost: acc.bob_cost,
        candidates_tried,
    })
}
