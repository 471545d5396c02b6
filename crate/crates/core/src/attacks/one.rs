//! The one-third attack: follow the majority of three inputs, then lock
//! onto the middle one.

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::protocol::{
    confusable, AdversaryPlan, ExecutionTrace, Protocol, RoundRecord, Speaker,
};

use super::merge::majority;

/// Result of [`attack_one`].
#[derive(Debug, Clone)]
pub struct Attack1Outcome {
    /// `(y1, y2)`: the two inputs Bob cannot tell apart.
    pub survivors: [BitString; 2],
    pub eliminated: BitString,
    /// Positions of `(y1, y2, y3)` in the input triple passed in.
    pub order: [usize; 3],
    /// Delivered bit of every round, the same under both survivors.
    pub transcript: BitString,
    /// Alice-round ordinal at which the attack locked onto `y2`.
    pub switch_round: Option<usize>,
    /// Final running counts for the three inputs, in the order passed in.
    pub deltas: [usize; 3],
    pub costs: [usize; 2],
    /// `ceil(A / 3)`.
    pub bound: usize,
    pub traces: [ExecutionTrace; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub(crate) struct OneThirdState {
    threshold: usize,
    t: usize,
    deltas: [usize; 3],
    lock: Option<(usize, [usize; 3])>,
}

impl OneThirdState {
    fn new(threshold: usize) -> Self {
        OneThirdState {
            threshold,
            t: 0,
            deltas: [0; 3],
            lock: None,
        }
    }

    fn order(&self) -> [usize; 3] {
        let mut order = [0, 1, 2];
        order.sort_by_key(|&i| (self.deltas[i], i));
        order
    }

    fn step(&mut self, bits: [bool; 3]) -> bool {
        self.t += 1;
        let out = match self.lock {
            Some((_, order)) => bits[order[1]],
            None => majority(bits),
        };
        for (d, b) in self.deltas.iter_mut().zip(bits) {
            *d += usize::from(b != out);
        }
        if self.lock.is_none() {
            let order = self.order();
            if self.deltas[order[1]] >= self.threshold {
                self.lock = Some((self.t, order));
            }
        }
        out
    }
}

/// The attack as an online adversary over three candidate inputs.
///
/// Bob's rounds pass through. On Alice's `t`'th round the plan works out
/// what she would send under each of the three inputs given the feedback
/// delivered so far, and delivers their majority until the second-largest
/// running disagreement count reaches `ceil(A / 3)`; from then on it
/// delivers what the middle input (by count) would send.
#[derive(Clone)]
pub struct OneThirdPlan {
    protocol: Protocol,
    inputs: [BitString; 3],
    threshold: usize,
}

impl OneThirdPlan {
    pub fn new(protocol: &Protocol, inputs: [&BitString; 3]) -> Self {
        OneThirdPlan {
            protocol: protocol.clone(),
            inputs: inputs.map(BitString::clone),
            threshold: protocol.schedule().alice_rounds().div_ceil(3),
        }
    }

    fn alice_bits(&self, t: usize, feedback: &[bool]) -> [bool; 3] {
        let alice = self.protocol.alice_strategy();
        [0, 1, 2].map(|i| alice.bit(&self.inputs[i], t, feedback))
    }

    /// State after the Alice rounds in `history`, plus the feedback Alice
    /// has received.
    fn replay(&self, history: &[RoundRecord]) -> (OneThirdState, Vec<bool>) {
        let mut state = OneThirdState::new(self.threshold);
        let mut feedback = Vec::new();
        for rec in history {
            match rec.speaker {
                Speaker::Bob => feedback.push(rec.delivered),
                Speaker::Alice => {
                    state.step(self.alice_bits(state.t + 1, &feedback));
                }
            }
        }
        (state, feedback)
    }
}

impl AdversaryPlan for OneThirdPlan {
    fn deliver(&self, round: usize, history: &[RoundRecord], sent: bool) -> Option<bool> {
        if history.len() + 1 != round || round > self.protocol.rounds() {
            return None;
        }
        match self.protocol.schedule().speaker(round) {
            Speaker::Bob => Some(sent),
            Speaker::Alice => {
                let (mut state, feedback) = self.replay(history);
                Some(state.step(self.alice_bits(state.t + 1, &feedback)))
            }
        }
    }
}

/// Runs the one-third attack on three distinct inputs.
///
/// Both survivors end up with identical Bob views at a cost of at most
/// `ceil(A / 3)` flips each, all on Alice's rounds. With no Alice rounds at
/// all, the first two inputs are returned uncorrupted.
pub fn attack_one(protocol: &Protocol, inputs: [&BitString; 3]) -> Result<Attack1Outcome> {
    for x in inputs {
        if protocol.index_of(x).is_none() {
            return Err(Error::invalid(format!("{x} is not in the input space")));
        }
    }
    if inputs[0] == inputs[1] || inputs[0] == inputs[2] || inputs[1] == inputs[2] {
        return Err(Error::invalid("attack one needs three distinct inputs"));
    }
    let plan = OneThirdPlan::new(protocol, inputs);
    let probe = protocol.execute(inputs[0], &plan)?;
    let (state, _) = plan.replay(probe.records());
    let (switch_round, order) = match state.lock {
        Some((t0, order)) => (Some(t0), order),
        None => (None, state.order()),
    };
    if protocol.schedule().alice_rounds() == 0 {
        debug_assert_eq!(order, [0, 1, 2]);
    }
    let transcript = probe.delivered();
    let traces = [
        protocol.execute(inputs[order[0]], &plan)?,
        protocol.execute(inputs[order[1]], &plan)?,
    ];
    for (trace, &pos) in traces.iter().zip(&order) {
        if trace.delivered() != transcript {
            return Err(Error::rejected("survivor transcripts differ"));
        }
        let c = trace.corruptions();
        if c.bob != 0 || c.alice != state.deltas[pos] || c.alice > plan.threshold {
            return Err(Error::rejected(format!(
                "survivor cost {c:?} disagrees with running count {} (bound {})",
                state.deltas[pos], plan.threshold
            )));
        }
    }
    if !confusable(&traces[0], &traces[1])? {
        return Err(Error::rejected("survivors are distinguishable"));
    }
    let costs = [traces[0].corruption_total(), traces[1].corruption_total()];
    Ok(Attack1Outcome {
        survivors: [inputs[order[0]].clone(), inputs[order[1]].clone()],
        eliminated: inputs[order[2]].clone(),
        order,
        transcript,
        switch_round,
        deltas: state.deltas,
        costs,
        bound: plan.threshold,
        traces,
    })
}

/// Smallest achievable second-smallest distance from a common word to
/// three words, by trying every word. Exponential; for testing only.
pub fn brute_force_pair_cost(words: [&BitString; 3]) -> usize {
    let len = words[0].len();
    assert!(len <= 24);
    (0..1u64 << len)
        .map(|v| {
            let t = BitString::from_u64(v, len);
            let mut d = words.map(|w| t.distance(w).expect("equal lengths"));
            d.sort_unstable();
            d[1]
        })
        .min()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;
    use std::sync::Arc;

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::bits::bits;
    use crate::protocol::strategy::{Codebook, Echo, Silent};
    use crate::protocol::{all_inputs, RoundSchedule};

    fn codebook(schedule: &str, words: &[&str], echo: bool) -> Protocol {
        let schedule: RoundSchedule = schedule.parse().unwrap();
        let k = (usize::BITS - (words.len() - 1).leading_zeros()) as usize;
        let inputs: Vec<BitString> = all_inputs(k.max(1)).into_iter().take(words.len()).collect();
        let map: HashMap<BitString, BitString> = inputs
            .iter()
            .cloned()
            .zip(words.iter().map(|w| bits(w)))
            .collect();
        let alice = Codebook::new(map, &inputs, schedule.alice_rounds()).unwrap();
        let bob: Arc<dyn crate::protocol::BobStrategy> =
            if echo { Arc::new(Echo) } else { Arc::new(Silent) };
        Protocol::new(schedule, k.max(1), inputs, Arc::new(alice), bob).unwrap()
    }

    fn triple(p: &Protocol) -> [&BitString; 3] {
        [p.input(0), p.input(1), p.input(2)]
    }

    #[test]
    fn worked_example() {
        let p = codebook("AAA", &["000", "011", "101"], false);
        let out = attack_one(&p, triple(&p)).unwrap();
        assert_eq!(out.transcript.to_string(), "001");
        assert_eq!(out.switch_round, Some(2));
        assert_eq!(out.order, [0, 1, 2]);
        assert_eq!(out.costs, [1, 1]);
        assert_eq!(out.bound, 1);
        assert_eq!(out.survivors, [p.input(0).clone(), p.input(1).clone()]);
    }

    #[test]
    fn identical_codewords() {
        let p = codebook("AAAA", &["0110", "0110", "0110"], false);
        let out = attack_one(&p, triple(&p)).unwrap();
        assert_eq!(out.transcript.to_string(), "0110");
        assert_eq!(out.costs, [0, 0]);
        assert_eq!(out.switch_round, None);
    }

    #[test]
    fn echo_schedule_matches_all_alice() {
        let p = codebook("ABABAB", &["000", "011", "101"], true);
        let out = attack_one(&p, triple(&p)).unwrap();
        assert_eq!(out.costs, [1, 1]);
        assert_eq!(out.switch_round, Some(2));
        assert_eq!(out.traces[0].bob_view().to_string(), "001");
        for t in &out.traces {
            assert_eq!(t.corruptions().bob, 0);
        }
    }

    #[test]
    fn no_alice_rounds() {
        let p = codebook("BB", &["", "", ""], false);
        let out = attack_one(&p, triple(&p)).unwrap();
        assert_eq!(out.costs, [0, 0]);
        assert_eq!(out.bound, 0);
        assert_eq!(out.survivors, [p.input(0).clone(), p.input(1).clone()]);
    }

    #[test]
    fn rejects_repeated_inputs() {
        let p = codebook("AAA", &["000", "011", "101"], false);
        let x = p.input(0);
        assert!(matches!(
            attack_one(&p, [x, x, p.input(1)]),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn phase_one_follows_majority() {
        let p = codebook("AAAAAAAAA", &["000000000", "111000111", "010101010"], false);
        let out = attack_one(&p, triple(&p)).unwrap();
        let words: Vec<BitString> = (0..3).map(|i| p.alice_word(p.input(i), &bits("")).unwrap()).collect();
        let last = out.switch_round.unwrap_or(9);
        for t in 1..=last {
            let m = majority([words[0].bit(t), words[1].bit(t), words[2].bit(t)]);
            assert_eq!(out.transcript.bit(t), m, "round {t}");
        }
    }

    #[test]
    fn sandwich_against_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let len = rng.random_range(1..=10);
            let words: Vec<String> = (0..3)
                .map(|_| {
                    (0..len)
                        .map(|_| if rng.random::<bool>() { '1' } else { '0' })
                        .collect()
                })
                .collect();
            let refs: Vec<&str> = words.iter().map(String::as_str).collect();
            let p = codebook(&"A".repeat(len), &refs, false);
            let out = attack_one(&p, triple(&p)).unwrap();
            let ws = [bits(refs[0]), bits(refs[1]), bits(refs[2])];
            let oracle = brute_force_pair_cost([&ws[0], &ws[1], &ws[2]]);
            let cost = out.costs[0].max(out.costs[1]);
            assert!(oracle <= cost && cost <= len.div_ceil(3), "{refs:?}");
        }
    }
}
