//! Simulation of non-adaptive interactive protocols over an adversarial
//! bit-flip channel, together with three constructive attacks that make
//! Bob's view identical for two different inputs of Alice's.
//!
//! The crate is organised as:
//!
//! - [`protocol`]: schedules, strategies, execution under an adversary plan;
//! - [`combinatorics`]: Hamming-space searches (close pairs, triples, cliques);
//! - [`attacks`]: the one-third attack, the triple-merge attack and the
//!   transcript-switch attack, each producing replayable certificates;
//! - [`budget`]: exact evaluation of the three attack-cost fractions;
//! - [`harness`]: protocol files, builtin protocols, end-to-end runs and the
//!   lemma verification suite.

pub mod attacks;
pub mod bits;
pub mod budget;
pub mod combinatorics;
pub mod error;
pub mod harness;
pub mod mix;
pub mod protocol;
pub mod rational;

pub use bits::BitString;
pub use error::{Error, Result};
pub use protocol::{
    all_inputs, confusable, AdversaryPlan, CorruptionCount, ExecutionTrace, Protocol,
    RoundSchedule, SectionSplit, Speaker,
};
pub use rational::Rational;
