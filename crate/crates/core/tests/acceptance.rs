//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::collections::HashMap;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use iecc_core::attacks::{attack_one, AttackId};
use iecc_core::budget::{weighted_identity, DeltaTriple, SectionFractions};
use iecc_core::harness::{
    builtin_protocol, run, verify_lemmas, verify_report, BuiltinParams, LemmaParams, Report,
    RunConfig, Status,
};
use iecc_core::protocol::strategy::{Codebook, Silent};
use iecc_core::protocol::ForceTranscript;
use iecc_core::rational::{int, ratio, Rational};
use iecc_core::{all_inputs, BitString, Protocol, RoundSchedule, SectionSplit};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type RunSummary = (Status, Option<AttackId>, bool);
type Criterion = fn() -> Outcome;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn attack_bound(attack: AttackId, split: &SectionSplit, eps: Rational) -> Rational {
    let h = ratio(1, 2) + eps;
    match attack {
        AttackId::One => int((split.a1 + split.a2).div_ceil(3)),
        AttackId::Two => {
            (ratio(1, 4) + eps / 2) * int(split.a1) + 1 + h * int(split.b1) + int(split.a2.div_ceil(3))
        }
        AttackId::Three => {
            let x1 = (h + eps) * int(split.a2) + h * int(split.b2);
            let x2 = h * int(split.a1 + split.b1) + h * int(split.b2);
            x1.max(x2)
        }
    }
}

/// Replays both forced transcripts from the report, independently of the
/// library's own verification.
fn replay_ok(protocol: &Protocol, report: &Report, eps: Rational) -> Result<(), String> {
    let replay = report.replay.as_ref().ok_or("no replay data")?;
    let inputs = report.inputs.as_ref().ok_or("no inputs")?;
    if inputs[0] == inputs[1] {
        return Err("identical inputs".into());
    }
    let mut views = Vec::new();
    let mut costs = Vec::new();
    for (x, target) in inputs.iter().zip(&replay.targets) {
        let trace = protocol
            .execute(x, ForceTranscript(target.clone()))
            .map_err(|e| e.to_string())?;
        views.push(trace.bob_view());
        costs.push(trace.records().iter().filter(|r| r.sent != r.delivered).count());
    }
    if views[0] != views[1] {
        return Err("Bob's views differ".into());
    }
    let attack = report.attack_used.ok_or("no attack recorded")?;
    let bound = attack_bound(attack, &report.split, eps);
    for c in costs {
        if int(c) > bound {
            return Err(format!("cost {c} exceeds attack {attack} bound {bound}"));
        }
    }
    if !verify_report(protocol, report).map_err(|e| e.to_string())? {
        return Err("library verification disagrees".into());
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let eps = ratio(1, 8);
    let cases: Vec<(u64, usize, usize)> = {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        (0..200u64)
            .map(|seed| (seed, rng.random_range(6..=60), rng.random_range(2..=4)))
            .collect()
    };
    let results: Vec<Result<RunSummary, String>> = cases
        .par_iter()
        .map(|&(seed, n, k)| {
            let loaded = builtin_protocol(
                "prg",
                &BuiltinParams {
                    n,
                    k,
                    seed,
                    ..BuiltinParams::default()
                },
            )
            .map_err(|e| e.to_string())?;
            let config = RunConfig {
                eps,
                seed,
                ..RunConfig::default()
            };
            let report = run(&loaded, &config).map_err(|e| format!("seed {seed}: {e}"))?;
            if report.status == Status::Success {
                replay_ok(&loaded.protocol, &report, eps).map_err(|e| format!("seed {seed}: {e}"))?;
            }
            Ok((report.status, report.attack_used, report.fallback.is_some()))
        })
        .collect();
    let mut tally: HashMap<String, usize> = HashMap::new();
    for r in &results {
        match r {
            Err(e) => return outcome(false, e.clone()),
            Ok((status, attack, fell_back)) => {
                let mut key = match attack {
                    Some(a) => format!("{status:?}/attack-{a}"),
                    None => format!("{status:?}"),
                };
                if *fell_back {
                    key.push_str("/fallback");
                }
                *tally.entry(key).or_default() += 1;
            }
        }
    }
    let mut tally: Vec<_> = tally.into_iter().collect();
    tally.sort();
    let elapsed = start.elapsed();
    outcome(
        elapsed < Duration::from_secs(300),
        format!("200 protocols in {:.1?}; outcomes {tally:?}", elapsed),
    )
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut violations = 0;
    for _ in 0..100 {
        let a = rng.random_range(1..=12usize);
        let inputs = all_inputs(2)[..3].to_vec();
        let words: Vec<BitString> = (0..3)
            .map(|_| (0..a).map(|_| rng.random::<bool>()).collect())
            .collect();
        let map: HashMap<_, _> = inputs.iter().cloned().zip(words.iter().cloned()).collect();
        let alice = Codebook::new(map, &inputs, a).unwrap();
        let schedule: RoundSchedule = "A".repeat(a).parse().unwrap();
        let p = Protocol::new(schedule, 2, inputs.clone(), Arc::new(alice), Arc::new(Silent)).unwrap();
        let out = attack_one(&p, [&inputs[0], &inputs[1], &inputs[2]]).unwrap();
        let cost = out.costs[0].max(out.costs[1]);
        let oracle = (0..1u64 << a)
            .map(|v| {
                let t = BitString::from_u64(v, a);
                let mut d: Vec<usize> = words.iter().map(|w| t.distance(w).unwrap()).collect();
                d.sort_unstable();
                d[1]
            })
            .min()
            .unwrap();
        if !(oracle <= cost && cost <= a.div_ceil(3)) {
            violations += 1;
        }
    }
    outcome(violations == 0, format!("100 triples, {violations} violations"))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let ceiling = ratio(13, 47);
    let (s1, s2) = (ratio(21, 47), ratio(26, 47));
    let mut bad = 0;
    for i in 0..100 {
        for j in 0..100 {
            let a1 = s1 * ratio(i, 99);
            let a2 = s2 * ratio(j, 99);
            let fr = SectionFractions::new(a1, s1 - a1, a2, s2 - a2);
            let d = DeltaTriple::of(&fr);
            let d1 = a1 / 3 + a2 / 3;
            let d2 = a1 / 4 + (s1 - a1) / 2 + a2 / 3;
            let d3p = ratio(1, 2) - a2 / 2;
            let weighted = ratio(9, 35) * d1 + ratio(12, 35) * d2 + ratio(2, 5) * d3p;
            let ok = d.delta1 == d1
                && d.delta2 == d2
                && d.delta3_prime == d3p
                && d1.min(d2).min(d3p) <= ceiling
                && weighted == ceiling
                && weighted_identity(&fr) == ceiling;
            bad += usize::from(!ok);
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad == 0 && elapsed < Duration::from_secs(10),
        format!("10000 grid points, {bad} failures, {elapsed:.1?}"),
    )
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let report = verify_lemmas(&LemmaParams::default());
    let elapsed = start.elapsed();
    let failed: Vec<&str> = report
        .properties
        .iter()
        .filter(|p| !p.passed)
        .map(|p| p.name.as_str())
        .collect();
    outcome(
        report.all_passed && elapsed < Duration::from_secs(120),
        format!(
            "{} properties, failed {failed:?}, {elapsed:.1?}",
            report.properties.len()
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut checked = 0u64;
    let mut violations = 0u64;
    for eps in [int(0), ratio(1, 8)] {
        for a in 1..=8usize {
            let all = 1u64 << a;
            let diam_limit = (ratio(1, 2) + eps) * int(a);
            let limit = (ratio(1, 4) + eps / 2) * int(a) + 1;
            let (c, v) = (0..all)
                .into_par_iter()
                .map(|x| {
                    let (mut c, mut v) = (0u64, 0u64);
                    let w1 = BitString::from_u64(x, a);
                    for y in 0..all {
                        let w2 = BitString::from_u64(y, a);
                        for z in 0..all {
                            let w3 = BitString::from_u64(z, a);
                            let d = [(&w1, &w2), (&w1, &w3), (&w2, &w3)]
                                .iter()
                                .map(|(s, t)| s.distance(t).unwrap())
                                .max()
                                .unwrap();
                            if int(d) > diam_limit {
                                continue;
                            }
                            c += 1;
                            let m = iecc_core::attacks::merge_triple_word(&w1, &w2, &w3, eps).unwrap();
                            if [&w1, &w2, &w3].iter().any(|w| int(m.distance(w).unwrap()) > limit) {
                                v += 1;
                            }
                        }
                    }
                    (c, v)
                })
                .reduce(|| (0, 0), |p, q| (p.0 + q.0, p.1 + q.1));
            checked += c;
            violations += v;
        }
    }
    outcome(
        violations == 0,
        format!("{checked} triples checked, {violations} violations"),
    )
}

fn ac6_report() -> (Report, usize) {
    let loaded = builtin_protocol(
        "codebook-echo",
        &BuiltinParams {
            n: 470,
            k: 10,
            ..BuiltinParams::default()
        },
    )
    .unwrap();
    let config = RunConfig {
        eps: ratio(1, 10),
        seed: 470,
        budget: 1 << 16,
        ..RunConfig::default()
    };
    let report = run(&loaded, &config).unwrap();
    if report.status == Status::Success {
        if let Err(e) = replay_ok(&loaded.protocol, &report, config.eps) {
            panic!("replay failed: {e}");
        }
    }
    (report, loaded.protocol.rounds())
}

fn criterion_6() -> Outcome {
    let (report, n) = ac6_report();
    let limit = ratio(13, 47) + ratio(2, 10) + ratio(5, n as i128);
    let Some(max) = report.max_corruption else {
        return outcome(false, format!("status {:?}: {:?}", report.status, report.failure));
    };
    let fraction = ratio(max as i128, n as i128);
    outcome(
        report.status == Status::Success && report.confusable && fraction <= limit,
        format!(
            "attack {:?} (selected {}), max cost {max}/{n} = {:.4} <= {:.4}",
            report.attack_used,
            report.selected_attack,
            max as f64 / n as f64,
            *limit.numer() as f64 / *limit.denom() as f64
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut same = true;
    for (name, n, k, seed) in [("prg", 48, 4, 11u64), ("codebook-echo", 60, 3, 0), ("prg", 30, 2, 3)] {
        let params = BuiltinParams {
            n,
            k,
            seed,
            ..BuiltinParams::default()
        };
        let config = RunConfig {
            seed: 5,
            budget: 4096,
            ..RunConfig::default()
        };
        let a = run(&builtin_protocol(name, &params).unwrap(), &config).unwrap().to_json();
        let b = run(&builtin_protocol(name, &params).unwrap(), &config).unwrap().to_json();
        same &= a == b;
    }
    let (a, _) = ac6_report();
    let (b, _) = ac6_report();
    same &= a.to_json() == b.to_json();
    outcome(same, "repeated runs compared byte for byte")
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 7] = [
        ("confusability soundness on 200 random protocols", criterion_1),
        ("attack one against brute force", criterion_2),
        ("budget lemma on rational grid", criterion_3),
        ("combinatorics oracles", criterion_4),
        ("merge guarantee", criterion_5),
        ("scaled trend check", criterion_6),
        ("determinism", criterion_7),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        all &= o.passed;
        println!(
            "{} [{}] {name}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
