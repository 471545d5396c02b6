//! Deterministic built-in protocol families.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::mix::{absorb, mix64};
use crate::protocol::all_inputs;

use super::file::{build, InputSpec, LoadedProtocol, ProtocolFile, StrategyDescriptor};

pub const BUILTIN_NAMES: [&str; 4] = ["codebook-silent", "codebook-echo", "prg", "repeat"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuiltinParams {
    /// Protocol length; ignored when `schedule` is given.
    pub n: usize,
    pub k: usize,
    /// Seed for the `prg` family.
    pub seed: u64,
    /// Explicit schedule overriding the family's default.
    pub schedule: Option<String>,
    /// Use only the first `size` inputs (lexicographically).
    pub size: Option<usize>,
}

impl Default for BuiltinParams {
    fn default() -> Self {
        BuiltinParams {
            n: 10,
            k: 2,
            seed: 0,
            schedule: None,
            size: None,
        }
    }
}

/// The protocol file for a built-in family:
///
/// - `codebook-silent`: all-Alice schedule, Alice sends a simplex-style
///   codeword (bit `t` is the parity of `x AND v_t`, the `v_t` cycling
///   through nonzero vectors ordered by weight then value), Bob silent;
/// - `codebook-echo`: schedule `ABAB...`, the same codebook, Bob repeats
///   the last bit he received;
/// - `repeat`: all-Alice schedule, Alice sends `x` over and over;
/// - `prg`: seeded schedule and seeded pseudorandom strategies for both.
pub fn builtin_file(name: &str, params: &BuiltinParams) -> Result<ProtocolFile> {
    let k = params.k;
    if k == 0 || k > 16 {
        return Err(Error::invalid(format!("k must be in 1..=16, got {k}")));
    }
    let default_schedule = |unit: &str| -> Result<String> {
        if params.n == 0 {
            return Err(Error::invalid("n must be at least 1"));
        }
        Ok(unit.chars().cycle().take(params.n).collect())
    };
    let schedule = match (&params.schedule, name) {
        (Some(s), _) => s.clone(),
        (None, "codebook-echo") => default_schedule("AB")?,
        (None, "prg") => prg_schedule(params.seed, params.n)?,
        (None, _) => default_schedule("A")?,
    };
    let a = schedule.chars().filter(|&c| c == 'A').count();
    let mut inputs = all_inputs(k);
    if let Some(size) = params.size {
        if size < 2 || size > inputs.len() {
            return Err(Error::invalid(format!(
                "size must be in 2..={}, got {size}",
                inputs.len()
            )));
        }
        inputs.truncate(size);
    }
    let input_spec = if params.size.is_some() {
        InputSpec::List(inputs.iter().map(ToString::to_string).collect())
    } else {
        InputSpec::all()
    };
    let codebook = |word: &dyn Fn(&BitString) -> BitString| StrategyDescriptor::Codebook {
        words: inputs
            .iter()
            .map(|x| (x.to_string(), word(x).to_string()))
            .collect::<BTreeMap<_, _>>(),
    };
    let (alice, bob) = match name {
        "codebook-silent" => (codebook(&|x| simplex_word(x, a)), StrategyDescriptor::Silent),
        "codebook-echo" => (codebook(&|x| simplex_word(x, a)), StrategyDescriptor::Echo),
        "repeat" => (
            codebook(&|x| x.as_slice().iter().copied().cycle().take(a).collect()),
            StrategyDescriptor::Silent,
        ),
        "prg" => (
            StrategyDescriptor::Prg { seed: params.seed },
            StrategyDescriptor::Prg {
                seed: mix64(params.seed),
            },
        ),
        other => {
            return Err(Error::invalid(format!(
                "unknown builtin {other:?}; expected one of {}",
                BUILTIN_NAMES.join(", ")
            )))
        }
    };
    Ok(ProtocolFile {
        k,
        schedule,
        inputs: input_spec,
        alice,
        bob: Some(bob),
    })
}

pub fn builtin_protocol(name: &str, params: &BuiltinParams) -> Result<LoadedProtocol> {
    build(builtin_file(name, params)?)
}

/// Round `r` belongs to Bob when `absorb(seed ^ 0x5C4E_D000, r) mod 8` is
/// below a seed-dependent share in `1..=4`.
fn prg_schedule(seed: u64, n: usize) -> Result<String> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let state = seed ^ 0x5C4E_D000;
    let share = 1 + mix64(state) % 4;
    Ok((1..=n as u64)
        .map(|r| if absorb(state, r) % 8 < share { 'B' } else { 'A' })
        .collect())
}

fn simplex_word(x: &BitString, len: usize) -> BitString {
    let k = x.len();
    let mut vectors: Vec<u64> = (1..1u64 << k).collect();
    vectors.sort_by_key(|v| (v.count_ones(), *v));
    let xv = x.to_u64().expect("k <= 16");
    (0..len)
        .map(|t| (vectors[t % vectors.len()] & xv).count_ones() % 2 == 1)
        .collect()
}
