//! End-to-end runs: choose the cheapest attack for the protocol's section
//! split, mount it, and report.

use serde::Serialize;

use crate::attacks::{
    attack_three, attack_two, mount_attack_one, AttackId, AttackOutcome, Certificate,
    SearchConfig, DEFAULT_BUDGET,
};
use crate::bits::BitString;
use crate::budget::{deltas, DeltaReport};
use crate::error::{Error, Result};
use crate::protocol::{confusable, CorruptionCount, ForceTranscript, Protocol, SectionSplit};
use crate::rational::{format_rational, int, ratio, Rational};

use super::file::LoadedProtocol;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub eps: Rational,
    pub seed: u64,
    pub budget: u64,
    /// Fall back to attack one when attack two or three fails.
    pub fallback: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            eps: ratio(1, 8),
            seed: 0,
            budget: DEFAULT_BUDGET,
            fallback: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Success,
    SearchExhausted,
    PreconditionViolated,
}

impl Status {
    /// Process exit code for the CLI.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::SearchExhausted => 2,
            Status::PreconditionViolated => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputCosts {
    pub section_one: CorruptionCount,
    pub section_two: CorruptionCount,
    pub total: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FallbackInfo {
    pub from: AttackId,
    pub reason: String,
    pub succeeded: bool,
}

/// Everything needed to replay both adversary plans.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Replay {
    /// Delivered bit of every round, per input.
    pub targets: [BitString; 2],
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub candidates_tried: u64,
    pub seed: u64,
    pub budget: u64,
}

/// Result of [`run`]. Field order is the serialization order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub status: Status,
    pub protocol_digest: String,
    pub n: usize,
    pub k: usize,
    pub input_count: usize,
    pub split: SectionSplit,
    pub deltas: DeltaReport,
    pub eps: String,
    pub selected_attack: AttackId,
    pub selected_fraction: String,
    pub attack_used: Option<AttackId>,
    pub fallback: Option<FallbackInfo>,
    pub failure: Option<String>,
    pub inputs: Option<[BitString; 2]>,
    pub input_indices: Option<[usize; 2]>,
    pub corruptions: Option<[InputCosts; 2]>,
    pub bound: Option<String>,
    pub max_corruption: Option<usize>,
    pub corruption_fraction: Option<String>,
    pub confusable: bool,
    pub replay: Option<Replay>,
    pub search: SearchStats,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }
}

fn mount(protocol: &Protocol, attack: AttackId, search: &SearchConfig, eps: Rational) -> Result<AttackOutcome> {
    match attack {
        AttackId::One => {
            if protocol.inputs().len() < 3 {
                return Err(Error::invalid(format!(
                    "attack one needs 3 inputs, have {}",
                    protocol.inputs().len()
                )));
            }
            mount_attack_one(protocol, [0, 1, 2])
        }
        AttackId::Two => attack_two(protocol, eps, search),
        AttackId::Three => attack_three(protocol, eps, search),
    }
}

/// Splits attack errors into reportable statuses; anything else is a
/// fault and propagates.
fn classify(err: Error) -> Result<(Status, String, u64)> {
    match err {
        Error::SearchExhausted { tried, .. } => {
            let msg = err.to_string();
            Ok((Status::SearchExhausted, msg, tried))
        }
        Error::CliqueExhausted { .. } => Ok((Status::SearchExhausted, err.to_string(), 0)),
        Error::PreconditionViolated(_) | Error::InvalidArgument(_) => {
            Ok((Status::PreconditionViolated, err.to_string(), 0))
        }
        other => Err(other),
    }
}

/// Computes the section split and cost fractions, mounts the attack with
/// the smallest fraction, and reports the verified outcome.
pub fn run(loaded: &LoadedProtocol, config: &RunConfig) -> Result<Report> {
    let protocol = &loaded.protocol;
    if config.eps < int(0) || config.eps > ratio(1, 2) {
        return Err(Error::invalid(format!(
            "eps must lie in [0, 1/2], got {}",
            format_rational(&config.eps)
        )));
    }
    let split = protocol.schedule().split_sections();
    let n = protocol.rounds();
    let triple = deltas(&split, n)?;
    let (selected, fraction) = triple.minimum();
    let search = SearchConfig {
        budget: config.budget,
        seed: config.seed,
    };

    let mut tried = 0;
    let mut fallback = None;
    let mut failure = None;
    let mut status = Status::Success;
    let mut outcome = None;
    match mount(protocol, selected, &search, config.eps) {
        Ok(o) => outcome = Some(o),
        Err(e) => {
            let (s, msg, t) = classify(e)?;
            status = s;
            tried = t;
            failure = Some(msg.clone());
            if config.fallback && selected != AttackId::One {
                match mount(protocol, AttackId::One, &search, config.eps) {
                    Ok(o) => {
                        outcome = Some(o);
                        status = Status::Success;
                        fallback = Some(FallbackInfo {
                            from: selected,
                            reason: msg,
                            succeeded: true,
                        });
                    }
                    Err(e2) => {
                        let (_, msg2, _) = classify(e2)?;
                        fallback = Some(FallbackInfo {
                            from: selected,
                            reason: msg,
                            succeeded: false,
                        });
                        failure = Some(format!("{}; fallback: {msg2}", failure.unwrap_or_default()));
                    }
                }
            }
        }
    }

    let mut report = Report {
        status,
        protocol_digest: loaded.digest.clone(),
        n,
        k: protocol.input_length(),
        input_count: protocol.inputs().len(),
        split,
        deltas: DeltaReport::from(&triple),
        eps: format_rational(&config.eps),
        selected_attack: selected,
        selected_fraction: format_rational(&fraction),
        attack_used: None,
        fallback,
        failure,
        inputs: None,
        input_indices: None,
        corruptions: None,
        bound: None,
        max_corruption: None,
        corruption_fraction: None,
        confusable: false,
        replay: None,
        search: SearchStats {
            candidates_tried: tried,
            seed: config.seed,
            budget: config.budget,
        },
    };
    if let Some(o) = outcome {
        report.attack_used = Some(o.attack);
        report.inputs = Some(o.inputs.map(|i| protocol.input(i).clone()));
        report.input_indices = Some(o.inputs);
        report.corruptions = Some([0, 1].map(|i| InputCosts {
            section_one: o.section_costs[i][0],
            section_two: o.section_costs[i][1],
            total: o.section_costs[i][0].total() + o.section_costs[i][1].total(),
        }));
        report.bound = Some(format_rational(&o.bound));
        let max = o.max_cost();
        report.max_corruption = Some(max);
        report.corruption_fraction = Some(format_rational(&ratio(max as i128, n as i128)));
        report.confusable = o.confusable;
        report.search.candidates_tried = o.candidates_tried;
        report.replay = Some(Replay {
            targets: o.targets,
            certificate: o.certificate,
        });
    }
    Ok(report)
}

/// Re-checks a success report against the protocol using only the data in
/// the report: both forced transcripts are replayed, Bob's views compared,
/// and the recorded costs and bound checked.
pub fn verify_report(protocol: &Protocol, report: &Report) -> Result<bool> {
    let (Some(replay), Some(inputs), Some(costs), Some(bound)) =
        (&report.replay, &report.inputs, &report.corruptions, &report.bound)
    else {
        return Ok(false);
    };
    let bound = crate::rational::parse_rational(bound)?;
    let traces = [0, 1]
        .map(|i| protocol.execute(&inputs[i], ForceTranscript(replay.targets[i].clone())));
    let [t0, t1] = traces;
    let (t0, t1) = (t0?, t1?);
    let boundary = report.split.boundary;
    let ok = confusable(&t0, &t1)?
        && [&t0, &t1].iter().zip(costs).all(|(t, c)| {
            let [s1, s2] = t.section_corruptions(boundary);
            s1 == c.section_one && s2 == c.section_two && int(t.corruption_total()) <= bound
        });
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::builtin::{builtin_protocol, BuiltinParams};

    fn builtin(name: &str, n: usize, k: usize, size: Option<usize>) -> LoadedProtocol {
        builtin_protocol(
            name,
            &BuiltinParams {
                n,
                k,
                size,
                ..BuiltinParams::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn three_codewords_all_alice() {
        let loaded = builtin("codebook-silent", 9, 2, Some(3));
        let report = run(&loaded, &RunConfig::default()).unwrap();
        assert_eq!(report.status, Status::Success);
        assert!(report.confusable);
        if report.attack_used == Some(AttackId::One) {
            assert!(report.max_corruption.unwrap() <= 3);
        }
        assert!(verify_report(&loaded.protocol, &report).unwrap());
    }

    #[test]
    fn codebook_echo_small() {
        let loaded = builtin("codebook-echo", 10, 2, None);
        let report = run(&loaded, &RunConfig::default()).unwrap();
        assert_eq!(report.status, Status::Success);
        assert!(report.confusable);
        assert!(verify_report(&loaded.protocol, &report).unwrap());
    }

    #[test]
    fn two_inputs_cannot_be_attacked() {
        let schedule = format!("{}{}", "A".repeat(21), "B".repeat(26));
        let loaded = builtin_protocol(
            "codebook-silent",
            &BuiltinParams {
                k: 1,
                schedule: Some(schedule),
                ..BuiltinParams::default()
            },
        )
        .unwrap();
        for fallback in [true, false] {
            let report = run(&loaded, &RunConfig { fallback, ..RunConfig::default() }).unwrap();
            assert_eq!(report.selected_attack, AttackId::Two);
            assert_eq!(report.status, Status::PreconditionViolated);
            assert!(report.failure.as_ref().unwrap().contains("(4/eps)^(1/3)"));
            assert_eq!(report.fallback.is_some(), fallback);
            assert!(!report.confusable);
        }
        let loaded = builtin("codebook-silent", 47, 1, None);
        let report = run(&loaded, &RunConfig::default()).unwrap();
        assert_eq!(report.selected_attack, AttackId::Three);
        assert_eq!(report.status, Status::PreconditionViolated);
        assert!(report.failure.as_ref().unwrap().contains("sqrt(2/eps)"));
    }

    #[test]
    fn reports_are_deterministic() {
        let loaded = builtin_protocol(
            "prg",
            &BuiltinParams {
                n: 40,
                k: 3,
                seed: 5,
                ..BuiltinParams::default()
            },
        )
        .unwrap();
        let cfg = RunConfig { seed: 9, budget: 1000, ..RunConfig::default() };
        assert_eq!(run(&loaded, &cfg).unwrap().to_json(), run(&loaded, &cfg).unwrap().to_json());
    }
}
