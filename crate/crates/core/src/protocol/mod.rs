//! Non-adaptive two-party protocols and their execution over an
//! adversarial binary channel.

mod plan;
mod schedule;
pub mod strategy;
mod trace;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

pub use plan::{AdversaryPlan, Faithful, FlipRounds, ForceTranscript, PlanFn};
pub use schedule::{RoundSchedule, SectionSplit, Speaker};
pub use strategy::{AlicePrefix, AliceStrategy, BobStrategy};
pub use trace::{confusable, CorruptionCount, ExecutionTrace, RoundRecord};

use crate::bits::BitString;
use crate::error::{Error, Result};
use strategy::{ConditionedAlice, ConditionedBob};

/// Maps Bob's full received sequence to a guess at Alice's input.
pub trait Decoder: Send + Sync {
    fn decode(&self, received: &BitString) -> BitString;
}

/// Every bit string of length `k`, in lexicographic order.
pub fn all_inputs(k: usize) -> Vec<BitString> {
    assert!(k < 64);
    (0..1u64 << k).map(|v| BitString::from_u64(v, k)).collect()
}

/// A fixed-length, fixed-order protocol in which Alice holds one of a
/// finite set of inputs.
///
/// Cloning is cheap; all parts are shared.
#[derive(Clone)]
pub struct Protocol {
    schedule: Arc<RoundSchedule>,
    input_length: usize,
    inputs: Arc<Vec<BitString>>,
    index: Arc<HashMap<BitString, usize>>,
    alice: Arc<dyn AliceStrategy>,
    bob: Arc<dyn BobStrategy>,
    decoder: Option<Arc<dyn Decoder>>,
}

impl Protocol {
    pub fn new(
        schedule: RoundSchedule,
        input_length: usize,
        inputs: Vec<BitString>,
        alice: Arc<dyn AliceStrategy>,
        bob: Arc<dyn BobStrategy>,
    ) -> Result<Self> {
        if schedule.is_empty() {
            return Err(Error::invalid("schedule must have at least one round"));
        }
        if inputs.len() < 2 {
            return Err(Error::invalid(format!(
                "input space needs at least 2 members, got {}",
                inputs.len()
            )));
        }
        let mut index = HashMap::with_capacity(inputs.len());
        for (i, x) in inputs.iter().enumerate() {
            if x.len() != input_length {
                return Err(Error::invalid(format!(
                    "input {x} has length {} but k = {input_length}",
                    x.len()
                )));
            }
            if index.insert(x.clone(), i).is_some() {
                return Err(Error::invalid(format!("duplicate input {x}")));
            }
        }
        Ok(Protocol {
            schedule: Arc::new(schedule),
            input_length,
            inputs: Arc::new(inputs),
            index: Arc::new(index),
            alice,
            bob,
            decoder: None,
        })
    }

    pub fn with_decoder(mut self, decoder: Arc<dyn Decoder>) -> Self {
        self.decoder = Some(decoder);
        self
    }

    pub fn decode(&self, received: &BitString) -> Option<BitString> {
        self.decoder.as_ref().map(|d| d.decode(received))
    }

    pub fn schedule(&self) -> &RoundSchedule {
        &self.schedule
    }

    pub fn rounds(&self) -> usize {
        self.schedule.len()
    }

    pub fn input_length(&self) -> usize {
        self.input_length
    }

    pub fn inputs(&self) -> &[BitString] {
        &self.inputs
    }

    pub fn input(&self, i: usize) -> &BitString {
        &self.inputs[i]
    }

    pub fn index_of(&self, x: &BitString) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn alice_strategy(&self) -> &Arc<dyn AliceStrategy> {
        &self.alice
    }

    pub fn bob_strategy(&self) -> &Arc<dyn BobStrategy> {
        &self.bob
    }

    fn check_input(&self, x: &BitString) -> Result<()> {
        if self.index.contains_key(x) {
            Ok(())
        } else {
            Err(Error::invalid(format!("{x} is not in the input space")))
        }
    }

    /// What Alice sends on each of her rounds with input `x` if she receives
    /// `feedback` on Bob's rounds. Bit `t` depends only on the first
    /// `gamma(t)` bits of `feedback`.
    pub fn alice_word(&self, x: &BitString, feedback: &BitString) -> Result<BitString> {
        self.check_input(x)?;
        if feedback.len() != self.schedule.bob_rounds() {
            return Err(Error::invalid(format!(
                "feedback has {} bits but there are {} Bob rounds",
                feedback.len(),
                self.schedule.bob_rounds()
            )));
        }
        Ok(self.alice_word_unchecked(x, feedback.as_slice()))
    }

    pub(crate) fn alice_word_unchecked(&self, x: &BitString, feedback: &[bool]) -> BitString {
        self.schedule
            .gamma_table()
            .iter()
            .enumerate()
            .map(|(t0, &g)| self.alice.bit(x, t0 + 1, &feedback[..g]))
            .collect()
    }

    /// What Bob sends on each of his rounds if he receives `forward` on
    /// Alice's rounds.
    pub fn bob_word(&self, forward: &BitString) -> Result<BitString> {
        if forward.len() != self.schedule.alice_rounds() {
            return Err(Error::invalid(format!(
                "forward word has {} bits but there are {} Alice rounds",
                forward.len(),
                self.schedule.alice_rounds()
            )));
        }
        Ok(self.bob_word_unchecked(forward.as_slice()))
    }

    pub(crate) fn bob_word_unchecked(&self, forward: &[bool]) -> BitString {
        self.schedule
            .forward_table()
            .iter()
            .enumerate()
            .map(|(j0, &f)| self.bob.bit(j0 + 1, &forward[..f]))
            .collect()
    }

    /// Runs the protocol on input `x` with `plan` choosing every delivered
    /// bit.
    pub fn execute(&self, x: &BitString, plan: impl AdversaryPlan) -> Result<ExecutionTrace> {
        self.check_input(x)?;
        let n = self.schedule.len();
        let mut records = Vec::with_capacity(n);
        let mut alice_view = Vec::with_capacity(self.schedule.bob_rounds());
        let mut bob_view = Vec::with_capacity(self.schedule.alice_rounds());
        for r in 1..=n {
            let speaker = self.schedule.speaker(r);
            let ordinal = self.schedule.ordinal(r);
            let sent = match speaker {
                Speaker::Alice => self.alice.bit(x, ordinal, &alice_view),
                Speaker::Bob => self.bob.bit(ordinal, &bob_view),
            };
            let delivered = plan.deliver(r, &records, sent).ok_or_else(|| {
                Error::ExecutionFault(format!("adversary plan has no decision for round {r}"))
            })?;
            match speaker {
                Speaker::Alice => bob_view.push(delivered),
                Speaker::Bob => alice_view.push(delivered),
            }
            records.push(RoundRecord {
                round: r,
                speaker,
                sent,
                delivered,
            });
        }
        Ok(ExecutionTrace::new(
            Arc::clone(&self.schedule),
            x.clone(),
            records,
        ))
    }

    /// Execution without any corruption.
    pub fn simulate_noiseless(&self, x: &BitString) -> Result<ExecutionTrace> {
        self.execute(x, Faithful)
    }

    fn derived(&self, schedule: RoundSchedule, alice: Arc<dyn AliceStrategy>, bob: Arc<dyn BobStrategy>) -> Protocol {
        Protocol {
            schedule: Arc::new(schedule),
            input_length: self.input_length,
            inputs: Arc::clone(&self.inputs),
            index: Arc::clone(&self.index),
            alice,
            bob,
            decoder: None,
        }
    }

    /// The first `boundary` rounds as a protocol of their own. Strategies are
    /// unchanged since they only ever read prefixes.
    pub fn truncate(&self, boundary: usize) -> Result<Protocol> {
        if boundary > self.rounds() {
            return Err(Error::invalid(format!(
                "boundary {boundary} exceeds protocol length {}",
                self.rounds()
            )));
        }
        Ok(self.derived(
            self.schedule.prefix(boundary),
            Arc::clone(&self.alice),
            Arc::clone(&self.bob),
        ))
    }

    /// The rounds after `boundary`, with both parties' pre-boundary views
    /// fixed: Alice is assumed to have received `alice_prefix` (possibly
    /// depending on her input) and Bob `bob_prefix`.
    pub fn condition_on_prefix(
        &self,
        boundary: usize,
        alice_prefix: AlicePrefix,
        bob_prefix: BitString,
    ) -> Result<Protocol> {
        if boundary > self.rounds() {
            return Err(Error::invalid(format!(
                "boundary {boundary} exceeds protocol length {}",
                self.rounds()
            )));
        }
        let (a1, b1) = self.schedule.counts_before(boundary);
        if bob_prefix.len() != a1 {
            return Err(Error::invalid(format!(
                "Bob's prefix has {} bits but {a1} Alice rounds precede the boundary",
                bob_prefix.len()
            )));
        }
        for x in self.inputs.iter() {
            match alice_prefix.for_input(x) {
                None => {
                    return Err(Error::invalid(format!(
                        "no Alice prefix given for input {x}"
                    )))
                }
                Some(p) if p.len() != b1 => {
                    return Err(Error::invalid(format!(
                        "Alice's prefix for {x} has {} bits but {b1} Bob rounds precede the boundary",
                        p.len()
                    )))
                }
                Some(_) => {}
            }
        }
        let alice = ConditionedAlice {
            inner: Arc::clone(&self.alice),
            offset: a1,
            prefix: alice_prefix,
        };
        let bob = ConditionedBob {
            inner: Arc::clone(&self.bob),
            offset: b1,
            prefix: bob_prefix,
        };
        Ok(self.derived(self.schedule.suffix(boundary), Arc::new(alice), Arc::new(bob)))
    }
}

impl fmt::Debug for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Protocol")
            .field("schedule", &self.schedule)
            .field("k", &self.input_length)
            .field("inputs", &self.inputs.len())
            .finish_non_exhaustive()
    }
}
