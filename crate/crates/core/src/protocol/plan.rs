//! Adversary plans: online rules choosing each delivered bit.

use std::collections::BTreeSet;

use crate::bits::BitString;
use crate::protocol::RoundRecord;

/// An online adversary.
///
/// At round `round` (1-based) the plan sees the records of all earlier
/// rounds and the bit just sent, and returns the bit to deliver. `None`
/// means the plan has no answer, which aborts execution.
pub trait AdversaryPlan {
    fn deliver(&self, round: usize, history: &[RoundRecord], sent: bool) -> Option<bool>;
}

impl<P: AdversaryPlan + ?Sized> AdversaryPlan for &P {
    fn deliver(&self, round: usize, history: &[RoundRecord], sent: bool) -> Option<bool> {
        (**self).deliver(round, history, sent)
    }
}

/// Delivers every bit as sent.
#[derive(Debug, Clone, Copy, Default)]
pub struct Faithful;

impl AdversaryPlan for Faithful {
    fn deliver(&self, _round: usize, _history: &[RoundRecord], sent: bool) -> Option<bool> {
        Some(sent)
    }
}

/// Flips exactly the listed rounds.
#[derive(Debug, Clone, Default)]
pub struct FlipRounds(pub BTreeSet<usize>);

impl AdversaryPlan for FlipRounds {
    fn deliver(&self, round: usize, _history: &[RoundRecord], sent: bool) -> Option<bool> {
        Some(sent ^ self.0.contains(&round))
    }
}

/// Forces the received transcript to a fixed target, whatever is sent.
///
/// Because both parties are deterministic, every attack in this crate can
/// be replayed as a target transcript per input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForceTranscript(pub BitString);

impl AdversaryPlan for ForceTranscript {
    fn deliver(&self, round: usize, _history: &[RoundRecord], _sent: bool) -> Option<bool> {
        self.0.as_slice().get(round.checked_sub(1)?).copied()
    }
}

/// Adapts a closure into a plan.
pub struct PlanFn<F>(pub F);

impl<F> AdversaryPlan for PlanFn<F>
where
    F: Fn(usize, &[RoundRecord], bool) -> Option<bool>,
{
    fn deliver(&self, round: usize, history: &[RoundRecord], sent: bool) -> Option<bool> {
        (self.0)(round, history, sent)
    }
}
