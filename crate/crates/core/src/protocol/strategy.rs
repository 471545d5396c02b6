//! Deterministic party strategies.
//!
//! Alice's strategy maps (input, Alice-round ordinal, feedback received so
//! far) to her next bit; Bob's maps (Bob-round ordinal, forward bits received
//! so far) to his. Ordinals are 1-based. Strategies must be total and pure:
//! the same arguments always give the same bit.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::mix::{absorb, absorb_bits};
use crate::protocol::RoundSchedule;

pub trait AliceStrategy: Send + Sync {
    fn bit(&self, input: &BitString, t: usize, feedback: &[bool]) -> bool;
}

pub trait BobStrategy: Send + Sync {
    fn bit(&self, j: usize, received: &[bool]) -> bool;
}

/// Alice ignores feedback and sends a fixed word per input.
#[derive(Debug, Clone)]
pub struct Codebook {
    words: HashMap<BitString, BitString>,
}

impl Codebook {
    /// Every input must have a word of exactly `alice_rounds` bits.
    pub fn new(
        words: HashMap<BitString, BitString>,
        inputs: &[BitString],
        alice_rounds: usize,
    ) -> Result<Self> {
        for x in inputs {
            match words.get(x) {
                None => return Err(Error::invalid(format!("no codeword for input {x}"))),
                Some(w) if w.len() != alice_rounds => {
                    return Err(Error::invalid(format!(
                        "codeword for {x} has length {} but there are {alice_rounds} Alice rounds",
                        w.len()
                    )))
                }
                Some(_) => {}
            }
        }
        Ok(Codebook { words })
    }

    pub fn word(&self, input: &BitString) -> Option<&BitString> {
        self.words.get(input)
    }
}

impl AliceStrategy for Codebook {
    fn bit(&self, input: &BitString, t: usize, _feedback: &[bool]) -> bool {
        self.words[input].bit(t)
    }
}

/// Explicit lookup table for Alice, keyed by (input, ordinal, feedback).
#[derive(Debug, Clone)]
pub struct AliceTable {
    entries: HashMap<(BitString, usize, BitString), bool>,
}

impl AliceTable {
    /// Checks totality: every input, every Alice round `t`, and every
    /// feedback prefix of length `gamma(t)` must have an entry.
    pub fn new(
        entries: HashMap<(BitString, usize, BitString), bool>,
        inputs: &[BitString],
        schedule: &RoundSchedule,
    ) -> Result<Self> {
        for x in inputs {
            for (t0, &g) in schedule.gamma_table().iter().enumerate() {
                let t = t0 + 1;
                check_prefix_width(g)?;
                for p in 0..(1u64 << g) {
                    let key = (x.clone(), t, BitString::from_u64(p, g));
                    if !entries.contains_key(&key) {
                        return Err(Error::invalid(format!(
                            "table has no entry for {}:{}:{}",
                            key.0, key.1, key.2
                        )));
                    }
                }
            }
        }
        Ok(AliceTable { entries })
    }
}

impl AliceStrategy for AliceTable {
    fn bit(&self, input: &BitString, t: usize, feedback: &[bool]) -> bool {
        let key = (input.clone(), t, BitString::from(feedback.to_vec()));
        self.entries[&key]
    }
}

/// Explicit lookup table for Bob, keyed by (ordinal, received prefix).
#[derive(Debug, Clone)]
pub struct BobTable {
    entries: HashMap<(usize, BitString), bool>,
}

impl BobTable {
    pub fn new(entries: HashMap<(usize, BitString), bool>, schedule: &RoundSchedule) -> Result<Self> {
        for (j0, &f) in schedule.forward_table().iter().enumerate() {
            check_prefix_width(f)?;
            for p in 0..(1u64 << f) {
                let key = (j0 + 1, BitString::from_u64(p, f));
                if !entries.contains_key(&key) {
                    return Err(Error::invalid(format!(
                        "table has no entry for {}:{}",
                        key.0, key.1
                    )));
                }
            }
        }
        Ok(BobTable { entries })
    }
}

impl BobStrategy for BobTable {
    fn bit(&self, j: usize, received: &[bool]) -> bool {
        self.entries[&(j, BitString::from(received.to_vec()))]
    }
}

fn check_prefix_width(width: usize) -> Result<()> {
    if width > 20 {
        return Err(Error::invalid(format!(
            "table strategies support prefixes of at most 20 bits, schedule needs {width}"
        )));
    }
    Ok(())
}

/// Repeats the most recently received bit, or sends 0 before anything
/// has been received.
#[derive(Debug, Clone, Copy, Default)]
pub struct Echo;

impl AliceStrategy for Echo {
    fn bit(&self, _input: &BitString, _t: usize, feedback: &[bool]) -> bool {
        feedback.last().copied().unwrap_or(false)
    }
}

impl BobStrategy for Echo {
    fn bit(&self, _j: usize, received: &[bool]) -> bool {
        received.last().copied().unwrap_or(false)
    }
}

/// Always sends 0.
#[derive(Debug, Clone, Copy, Default)]
pub struct Silent;

impl AliceStrategy for Silent {
    fn bit(&self, _input: &BitString, _t: usize, _feedback: &[bool]) -> bool {
        false
    }
}

impl BobStrategy for Silent {
    fn bit(&self, _j: usize, _received: &[bool]) -> bool {
        false
    }
}

const ALICE_TAG: u64 = 0xA11C_E000;
const BOB_TAG: u64 = 0xB0B0_0000;

/// Pseudorandom strategy table, evaluated lazily.
///
/// Alice's bit is the top bit of
/// `absorb_bits(absorb(absorb(absorb_bits(absorb(seed, ALICE_TAG), x), 1), t + 4), feedback)`
/// and Bob's the top bit of
/// `absorb_bits(absorb(absorb(seed, BOB_TAG), j + 4), received)`,
/// with [`absorb`]/[`absorb_bits`] from [`crate::mix`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prg {
    pub seed: u64,
}

impl AliceStrategy for Prg {
    fn bit(&self, input: &BitString, t: usize, feedback: &[bool]) -> bool {
        let s = absorb_bits(absorb(self.seed, ALICE_TAG), input.iter());
        let s = absorb(absorb(s, 1), t as u64 + 4);
        absorb_bits(s, feedback.iter().copied()) >> 63 == 1
    }
}

impl BobStrategy for Prg {
    fn bit(&self, j: usize, received: &[bool]) -> bool {
        let s = absorb(absorb(self.seed, BOB_TAG), j as u64 + 4);
        absorb_bits(s, received.iter().copied()) >> 63 == 1
    }
}

/// Adapts a closure into an Alice strategy.
pub struct AliceFn<F>(pub F);

impl<F> AliceStrategy for AliceFn<F>
where
    F: Fn(&BitString, usize, &[bool]) -> bool + Send + Sync,
{
    fn bit(&self, input: &BitString, t: usize, feedback: &[bool]) -> bool {
        (self.0)(input, t, feedback)
    }
}

/// Adapts a closure into a Bob strategy.
pub struct BobFn<F>(pub F);

impl<F> BobStrategy for BobFn<F>
where
    F: Fn(usize, &[bool]) -> bool + Send + Sync,
{
    fn bit(&self, j: usize, received: &[bool]) -> bool {
        (self.0)(j, received)
    }
}

/// Alice's strategy on the rounds after a section boundary, with a fixed
/// feedback prefix prepended to whatever she receives afterwards.
pub(crate) struct ConditionedAlice {
    pub(crate) inner: Arc<dyn AliceStrategy>,
    pub(crate) offset: usize,
    pub(crate) prefix: AlicePrefix,
}

/// What Alice is assumed to have received before the boundary.
#[derive(Clone)]
pub enum AlicePrefix {
    /// The same feedback for every input.
    Shared(BitString),
    /// Feedback depending on Alice's input.
    PerInput(Arc<HashMap<BitString, BitString>>),
}

impl AlicePrefix {
    pub fn for_input(&self, input: &BitString) -> Option<&BitString> {
        match self {
            AlicePrefix::Shared(p) => Some(p),
            AlicePrefix::PerInput(map) => map.get(input),
        }
    }
}

impl fmt::Debug for AlicePrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlicePrefix::Shared(p) => write!(f, "Shared({p})"),
            AlicePrefix::PerInput(m) => write!(f, "PerInput({} inputs)", m.len()),
        }
    }
}

impl AliceStrategy for ConditionedAlice {
    fn bit(&self, input: &BitString, t: usize, feedback: &[bool]) -> bool {
        let prefix = self
            .prefix
            .for_input(input)
            .expect("conditioned prefix exists for every input");
        let mut full = Vec::with_capacity(prefix.len() + feedback.len());
        full.extend_from_slice(prefix.as_slice());
        full.extend_from_slice(feedback);
        self.inner.bit(input, t + self.offset, &full)
    }
}

pub(crate) struct ConditionedBob {
    pub(crate) inner: Arc<dyn BobStrategy>,
    pub(crate) offset: usize,
    pub(crate) prefix: BitString,
}

impl BobStrategy for ConditionedBob {
    fn bit(&self, j: usize, received: &[bool]) -> bool {
        let mut full = Vec::with_capacity(self.prefix.len() + received.len());
        full.extend_from_slice(self.prefix.as_slice());
        full.extend_from_slice(received);
        self.inner.bit(j + self.offset, &full)
    }
}
