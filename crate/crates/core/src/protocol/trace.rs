use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::protocol::{RoundSchedule, Speaker};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoundRecord {
    /// 1-based round index.
    pub round: usize,
    pub speaker: Speaker,
    pub sent: bool,
    pub delivered: bool,
}

impl RoundRecord {
    pub fn corrupted(&self) -> bool {
        self.sent != self.delivered
    }
}

/// Flip counts split by the direction of the corrupted bit.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorruptionCount {
    /// Flips on Alice's rounds (forward channel).
    pub alice: usize,
    /// Flips on Bob's rounds (feedback channel).
    pub bob: usize,
}

impl CorruptionCount {
    pub fn total(&self) -> usize {
        self.alice + self.bob
    }
}

impl std::ops::Add for CorruptionCount {
    type Output = CorruptionCount;

    fn add(self, rhs: Self) -> Self {
        CorruptionCount {
            alice: self.alice + rhs.alice,
            bob: self.bob + rhs.bob,
        }
    }
}

/// Round-by-round record of one execution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExecutionTrace {
    schedule: Arc<RoundSchedule>,
    input: BitString,
    records: Vec<RoundRecord>,
}

impl ExecutionTrace {
    pub(crate) fn new(
        schedule: Arc<RoundSchedule>,
        input: BitString,
        records: Vec<RoundRecord>,
    ) -> Self {
        ExecutionTrace {
            schedule,
            input,
            records,
        }
    }

    pub fn schedule(&self) -> &RoundSchedule {
        &self.schedule
    }

    pub fn input(&self) -> &BitString {
        &self.input
    }

    pub fn records(&self) -> &[RoundRecord] {
        &self.records
    }

    fn collect(&self, speaker: Speaker, delivered: bool) -> BitString {
        self.records
            .iter()
            .filter(|r| r.speaker == speaker)
            .map(|r| if delivered { r.delivered } else { r.sent })
            .collect()
    }

    /// Everything Alice receives, in order.
    pub fn alice_view(&self) -> BitString {
        self.collect(Speaker::Bob, true)
    }

    /// Everything Bob receives, in order.
    pub fn bob_view(&self) -> BitString {
        self.collect(Speaker::Alice, true)
    }

    pub fn alice_sent(&self) -> BitString {
        self.collect(Speaker::Alice, false)
    }

    /// Bob's transmitted bits.
    pub fn bob_sent(&self) -> BitString {
        self.collect(Speaker::Bob, false)
    }

    /// The received transcript, one bit per round.
    pub fn delivered(&self) -> BitString {
        self.records.iter().map(|r| r.delivered).collect()
    }

    pub fn sent(&self) -> BitString {
        self.records.iter().map(|r| r.sent).collect()
    }

    pub fn corruption_total(&self) -> usize {
        self.records.iter().filter(|r| r.corrupted()).count()
    }

    pub fn corruptions(&self) -> CorruptionCount {
        self.corruptions_in(0, self.records.len())
    }

    /// Flips among rounds `start + 1 ..= end` (1-based, so `(0, n)` is the
    /// whole execution).
    pub fn corruptions_in(&self, start: usize, end: usize) -> CorruptionCount {
        let mut count = CorruptionCount::default();
        for r in &self.records[start..end] {
            if r.corrupted() {
                match r.speaker {
                    Speaker::Alice => count.alice += 1,
                    Speaker::Bob => count.bob += 1,
                }
            }
        }
        count
    }

    /// Flips before and after the section boundary.
    pub fn section_corruptions(&self, boundary: usize) -> [CorruptionCount; 2] {
        [
            self.corruptions_in(0, boundary),
            self.corruptions_in(boundary, self.records.len()),
        ]
    }
}

/// Whether Bob sees exactly the same bits in both executions.
pub fn confusable(first: &ExecutionTrace, second: &ExecutionTrace) -> Result<bool> {
    if first.schedule != second.schedule {
        return Err(Error::invalid(format!(
            "traces come from different schedules ({} vs {})",
            first.schedule, second.schedule
        )));
    }
    Ok(first.bob_view() == second.bob_view())
}
