//! Search for two inputs whose forward words Bob cannot separate once the
//! first one is bent toward the second.

use std::sync::OnceLock;

use serde::Serialize;

use crate::bits::{hamming_slices, BitString};
use crate::error::{Error, Result};
use crate::protocol::{AlicePrefix, ForceTranscript, Protocol};
use crate::rational::{format_rational, half_plus, int, within, Rational};

use super::search::{FeedbackCandidates, FeedbackMode, SearchConfig};
use super::triple::check_eps;

/// Where the section protocol comes from.
#[derive(Debug, Clone)]
pub enum PairSection<'a> {
    /// One protocol for every pair.
    Fixed(&'a Protocol),
    /// The rounds after `boundary` of `protocol`, with Bob's earlier view
    /// fixed to `advice[x1]` when `x1` is the first input of the pair, and
    /// Alice's earlier view given by `alice_prefix`.
    Advised {
        protocol: &'a Protocol,
        boundary: usize,
        alice_prefix: AlicePrefix,
        advice: &'a [BitString],
    },
}

impl PairSection<'_> {
    fn base(&self) -> &Protocol {
        match self {
            PairSection::Fixed(p) => p,
            PairSection::Advised { protocol, .. } => protocol,
        }
    }

    fn for_first(&self, x1: usize) -> Result<Protocol> {
        match self {
            PairSection::Fixed(p) => Ok((*p).clone()),
            PairSection::Advised {
                protocol,
                boundary,
                alice_prefix,
                advice,
            } => {
                let adv = advice
                    .get(x1)
                    .ok_or_else(|| Error::invalid(format!("no advice for input index {x1}")))?;
                protocol.condition_on_prefix(*boundary, alice_prefix.clone(), adv.clone())
            }
        }
    }

    fn advice(&self, x1: usize) -> Option<BitString> {
        match self {
            PairSection::Fixed(_) => None,
            PairSection::Advised { advice, .. } => advice.get(x1).cloned(),
        }
    }
}

/// Inputs `(x1, x2)` and feedback `b` such that delivering `a(x2; b)` and
/// `b` costs little under either input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCertificate {
    /// Indices into the protocol's input list.
    pub inputs: [usize; 2],
    pub feedback: BitString,
    pub mode: FeedbackMode,
    /// `a(x2; b)`, delivered on Alice's rounds.
    pub alice_word: BitString,
    /// `a(x1; b)`.
    pub first_word: BitString,
    /// Bob's earlier view, if the section was conditioned on one.
    pub advice: Option<BitString>,
    pub bob_sent: BitString,
    pub bob_cost: usize,
    /// Alice-round flips under `x1`; zero under `x2`.
    pub alice_cost: usize,
    pub candidates_tried: u64,
}

/// Smallest candidate count `K` with `eps * K^2 > 2`; 2 when `eps = 0`.
pub fn pair_candidates_needed(eps: Rational) -> usize {
    if eps <= int(0) {
        return 2;
    }
    let mut k = 2;
    while int(k * k) * eps <= int(2) {
        k += 1;
    }
    k
}

/// Looks for an ordered pair `(x1, x2)` of distinct candidates and
/// feedback `b` with `Δ(a(x1; b), a(x2; b)) <= (1/2 + eps) * A` and
/// `Δ(b, β) <= (1/2 + eps) * B`, where `β` is what Bob sends on receiving
/// `a(x2; b)`.
///
/// Feedback is chosen as in
/// [`find_confusable_triple`](super::find_confusable_triple). Pairs are
/// scanned in lexicographic order of candidate position with `b`
/// innermost. For `eps > 0` the candidate count must satisfy
/// `|candidates|^2 * eps > 2`.
pub fn find_confusable_pair(
    section: &PairSection<'_>,
    candidates: &[usize],
    eps: Rational,
    config: &SearchConfig,
) -> Result<PairCertificate> {
    check_eps(eps)?;
    let k = candidates.len();
    let n_inputs = section.base().inputs().len();
    if let Some(&bad) = candidates.iter().find(|&&i| i >= n_inputs) {
        return Err(Error::invalid(format!("candidate index {bad} out of range")));
    }
    if k < 2 {
        return Err(Error::precondition(format!(
            "a pair needs at least 2 candidates, have {k}"
        )));
    }
    if eps > int(0) && int(k * k) * eps <= int(2) {
        return Err(Error::precondition(format!(
            "|candidates| > sqrt(2/eps) fails: {k}^2 * {} <= 2",
            format_rational(&eps)
        )));
    }
    let sections: Vec<OnceLock<Result<Protocol>>> = (0..k).map(|_| OnceLock::new()).collect();
    let section_for = |pos: usize| -> Result<&Protocol> {
        sections[pos]
            .get_or_init(|| section.for_first(candidates[pos]))
            .as_ref()
            .map_err(Clone::clone)
    };
    let first = section_for(0)?;
    let (a, b_len) = (first.schedule().alice_rounds(), first.schedule().bob_rounds());
    if a == 0 {
        return Err(Error::exhausted("section has no Alice rounds", 0));
    }
    let feedback = if within(b_len, eps, a + b_len) {
        FeedbackCandidates::fixed(b_len)
    } else {
        FeedbackCandidates::for_length(b_len, config)
    };
    let limit = half_plus(eps);

    let mut tried = 0u64;
    for p1 in 0..k {
        let sec = section_for(p1)?;
        let x1 = &sec.inputs()[candidates[p1]];
        for p2 in 0..k {
            if p1 == p2 {
                continue;
            }
            let x2 = &sec.inputs()[candidates[p2]];
            let hit = feedback.find_first(|b| {
                let w1 = sec.alice_word_unchecked(x1, b.as_slice());
                let w2 = sec.alice_word_unchecked(x2, b.as_slice());
                if !within(hamming_slices(w1.as_slice(), w2.as_slice()), limit, a) {
                    return None;
                }
                let beta = sec.bob_word_unchecked(w2.as_slice());
                let cost = hamming_slices(beta.as_slice(), b.as_slice());
                within(cost, limit, b_len).then_some((w1, w2, beta, cost))
            });
            if let Some((pos, (w1, w2, beta, cost))) = hit {
                tried += pos + 1;
                let cert = PairCertificate {
                    inputs: [candidates[p1], candidates[p2]],
                    feedback: feedback.get(pos),
                    mode: feedback.mode(),
                    alice_cost: w1.distance(&w2)?,
                    alice_word: w2,
                    first_word: w1,
                    advice: section.advice(candidates[p1]),
                    bob_sent: beta,
                    bob_cost: cost,
                    candidates_tried: tried,
                };
                return certify(sec, cert);
            }
            tried += feedback.count();
        }
    }
    Err(Error::exhausted(
        format!(
            "no pair with forward distance <= {} * {a} and feedback cost <= {} * {b_len}",
            format_rational(&limit),
            format_rational(&limit)
        ),
        tried,
    ))
}

fn certify(sec: &Protocol, cert: PairCertificate) -> Result<PairCertificate> {
    let target: BitString = sec
        .schedule()
        .interleave(cert.alice_word.as_slice(), cert.feedback.as_slice())?
        .into();
    for (slot, &i) in cert.inputs.iter().enumerate() {
        let trace = sec.execute(sec.input(i), ForceTranscript(target.clone()))?;
        let c = trace.corruptions();
        let expected = if slot == 0 { cert.alice_cost } else { 0 };
        if c.alice != expected || c.bob != cert.bob_cost || trace.bob_sent() != cert.bob_sent {
            return Err(Error::rejected(format!(
                "pair certificate for input {} does not replay",
                sec.input(i)
            )));
        }
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;
    use std::sync::Arc;

    use super::*;
    use crate::bits::bits;
    use crate::protocol::strategy::{Codebook, Prg, Silent};
    use crate::protocol::{all_inputs, BobStrategy, RoundSchedule};
    use crate::rational::ratio;

    fn codebook(schedule: &str, words: &[&str], bob: Arc<dyn BobStrategy>) -> Protocol {
        let schedule: RoundSchedule = schedule.parse().unwrap();
        let inputs: Vec<BitString> = all_inputs(2).into_iter().take(words.len()).collect();
        let map: HashMap<_, _> = inputs.iter().cloned().zip(words.iter().map(|w| bits(w))).collect();
        let alice = Codebook::new(map, &inputs, schedule.alice_rounds()).unwrap();
        Protocol::new(schedule, 2, inputs, Arc::new(alice), bob).unwrap()
    }

    #[test]
    fn needed_counts() {
        assert_eq!(pair_candidates_needed(int(0)), 2);
        assert_eq!(pair_candidates_needed(ratio(1, 2)), 3);
        assert_eq!(pair_candidates_needed(ratio(1, 8)), 5);
        assert_eq!(pair_candidates_needed(ratio(1, 10)), 5);
    }

    #[test]
    fn all_alice_pair() {
        let p = codebook("AAAA", &["0000", "0011", "1111"], Arc::new(Silent));
        let cert =
            find_confusable_pair(&PairSection::Fixed(&p), &[0, 1, 2], int(0), &SearchConfig::default())
                .unwrap();
        assert_eq!(cert.inputs, [0, 1]);
        assert_eq!(cert.alice_cost, 2);
        assert_eq!(cert.alice_word.to_string(), "0011");
        assert_eq!(cert.advice, None);
    }

    #[test]
    fn precondition_boundary() {
        let p = codebook("AAAA", &["0000", "0011", "1111"], Arc::new(Silent));
        let err = find_confusable_pair(
            &PairSection::Fixed(&p),
            &[0, 1],
            ratio(1, 2),
            &SearchConfig::default(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("sqrt(2/eps)"), "{err}");
    }

    #[test]
    fn feedback_independent_alice() {
        let p = codebook("AABAAB", &["0000", "0011", "1111"], Arc::new(Prg { seed: 9 }));
        let cert =
            find_confusable_pair(&PairSection::Fixed(&p), &[0, 1, 2], int(0), &SearchConfig::default())
                .unwrap();
        assert_eq!(cert.inputs, [0, 1]);
        assert_eq!(cert.alice_cost, 2);
        assert!(cert.bob_cost <= 1);
    }

    #[test]
    fn advised_section_uses_advice() {
        let schedule: RoundSchedule = "ABAB".parse().unwrap();
        let p = Protocol::new(
            schedule,
            2,
            all_inputs(2),
            Arc::new(Prg { seed: 1 }),
            Arc::new(Prg { seed: 2 }),
        )
        .unwrap();
        let prefix: HashMap<BitString, BitString> =
            p.inputs().iter().map(|x| (x.clone(), bits("1"))).collect();
        let advice: Vec<BitString> = (0..4).map(|i| BitString::from_u64(i % 2, 1)).collect();
        let section = PairSection::Advised {
            protocol: &p,
            boundary: 2,
            alice_prefix: AlicePrefix::PerInput(Arc::new(prefix)),
            advice: &advice,
        };
        let cert = find_confusable_pair(&section, &[0, 1, 2, 3], int(0), &SearchConfig::default())
            .unwrap();
        assert_eq!(cert.advice.as_ref(), Some(&advice[cert.inputs[0]]));
    }
}
