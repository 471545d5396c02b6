//! The JSON protocol file format.
//!
//! ```json
//! {
//!   "k": 2,
//!   "schedule": "ABAB",
//!   "inputs": "all",
//!   "alice": {"type": "codebook", "words": {"00": "00", "01": "01", "10": "10", "11": "11"}},
//!   "bob": {"type": "echo"}
//! }
//! ```
//!
//! `inputs` is either `"all"` (every string of length `k`, allowed for
//! `k <= 16`) or a list of distinct bit strings. Strategy descriptors:
//!
//! - `{"type": "codebook", "words": {input: word}}`, Alice only;
//! - `{"type": "table", "entries": {key: 0 | 1}}`, where Alice's keys are
//!   `"input:t:feedback"` and Bob's are `"j:received"`, prefixes given as
//!   bit strings (possibly empty);
//! - `{"type": "echo"}`, `{"type": "silent"}`;
//! - `{"type": "prg", "seed": u64}`.
//!
//! `bob` may be omitted when the schedule has no Bob rounds.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::protocol::strategy::{AliceTable, BobTable, Codebook, Echo, Prg, Silent};
use crate::protocol::{all_inputs, AliceStrategy, BobStrategy, Protocol, RoundSchedule};

/// Largest `k` for which `"inputs": "all"` is accepted.
pub const MAX_ALL_INPUTS_K: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtocolFile {
    pub k: usize,
    pub schedule: String,
    pub inputs: InputSpec,
    pub alice: StrategyDescriptor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bob: Option<StrategyDescriptor>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InputSpec {
    /// Must be `"all"`.
    Keyword(String),
    List(Vec<String>),
}

impl InputSpec {
    pub fn all() -> Self {
        InputSpec::Keyword("all".into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum StrategyDescriptor {
    Codebook { words: BTreeMap<String, String> },
    Table { entries: BTreeMap<String, u8> },
    Echo,
    Silent,
    Prg { seed: u64 },
}

/// A validated protocol together with the file it was built from.
#[derive(Debug, Clone)]
pub struct LoadedProtocol {
    pub protocol: Protocol,
    pub file: ProtocolFile,
    /// SHA-256 of the file's canonical JSON encoding, in hex.
    pub digest: String,
}

pub fn load_protocol(path: impl AsRef<Path>) -> Result<LoadedProtocol> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::load("<file>", format!("{}: {e}", path.display())))?;
    parse_protocol(&text)
}

pub fn parse_protocol(text: &str) -> Result<LoadedProtocol> {
    let mut de = serde_json::Deserializer::from_str(text);
    let file: ProtocolFile = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let field = e.path().to_string();
        Error::load(field, e.into_inner().to_string())
    })?;
    build(file)
}

/// Canonical JSON encoding: struct fields in declaration order, map keys
/// sorted.
pub fn canonical_json(file: &ProtocolFile) -> String {
    serde_json::to_string(file).expect("protocol files always serialize")
}

pub fn digest(file: &ProtocolFile) -> String {
    hex::encode(Sha256::digest(canonical_json(file).as_bytes()))
}

fn bitstring(field: &str, s: &str) -> Result<BitString> {
    s.parse()
        .map_err(|_| Error::load(field, format!("{s:?} is not a bit string")))
}

/// Validates a file and builds its protocol.
pub fn build(file: ProtocolFile) -> Result<LoadedProtocol> {
    let schedule: RoundSchedule = file
        .schedule
        .parse()
        .map_err(|e: Error| Error::load("schedule", e.to_string()))?;
    if schedule.is_empty() {
        return Err(Error::load("schedule", "schedule must have at least one round"));
    }
    let inputs = match &file.inputs {
        InputSpec::Keyword(w) if w == "all" => {
            if file.k > MAX_ALL_INPUTS_K {
                return Err(Error::load(
                    "inputs",
                    format!("\"all\" is limited to k <= {MAX_ALL_INPUTS_K}, got k = {}", file.k),
                ));
            }
            all_inputs(file.k)
        }
        InputSpec::Keyword(w) => {
            return Err(Error::load("inputs", format!("expected \"all\" or a list, got {w:?}")))
        }
        InputSpec::List(list) => list
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let field = format!("inputs[{i}]");
                let x = bitstring(&field, s)?;
                if x.len() != file.k {
                    return Err(Error::load(field, format!("length {} but k = {}", x.len(), file.k)));
                }
                Ok(x)
            })
            .collect::<Result<Vec<_>>>()?,
    };
    let alice = alice_strategy(&file.alice, &file, &schedule, &inputs)?;
    let bob: Arc<dyn BobStrategy> = match &file.bob {
        Some(d) => bob_strategy(d, &schedule)?,
        None if schedule.bob_rounds() > 0 => {
            return Err(Error::load(
                "bob",
                format!(
                    "missing, but the schedule has {} Bob rounds",
                    schedule.bob_rounds()
                ),
            ))
        }
        None => Arc::new(Silent),
    };
    let protocol = Protocol::new(schedule, file.k, inputs, alice, bob)
        .map_err(|e| Error::load("<protocol>", e.to_string()))?;
    Ok(LoadedProtocol {
        protocol,
        digest: digest(&file),
        file,
    })
}

fn alice_strategy(
    d: &StrategyDescriptor,
    file: &ProtocolFile,
    schedule: &RoundSchedule,
    inputs: &[BitString],
) -> Result<Arc<dyn AliceStrategy>> {
    Ok(match d {
        StrategyDescriptor::Codebook { words } => {
            let mut map = HashMap::with_capacity(words.len());
            for (x, w) in words {
                let field = format!("alice.words.{x}");
                let xb = bitstring(&field, x)?;
                if xb.len() != file.k {
                    return Err(Error::load(field, format!("input length {} but k = {}", xb.len(), file.k)));
                }
                map.insert(xb, bitstring(&field, w)?);
            }
            Arc::new(
                Codebook::new(map, inputs, schedule.alice_rounds())
                    .map_err(|e| Error::load("alice.words", e.to_string()))?,
            )
        }
        StrategyDescriptor::Table { entries } => {
            let mut map = HashMap::with_capacity(entries.len());
            for (key, &v) in entries {
                let field = format!("alice.entries.{key}");
                let parts: Vec<&str> = key.split(':').collect();
                let [x, t, fb] = parts[..] else {
                    return Err(Error::load(field, "key must be \"input:t:feedback\""));
                };
                let t: usize = t
                    .parse()
                    .map_err(|_| Error::load(&field, format!("{t:?} is not a round ordinal")))?;
                map.insert((bitstring(&field, x)?, t, bitstring(&field, fb)?), table_bit(&field, v)?);
            }
            Arc::new(
                AliceTable::new(map, inputs, schedule)
                    .map_err(|e| Error::load("alice.entries", e.to_string()))?,
            )
        }
        StrategyDescriptor::Echo => Arc::new(Echo),
        StrategyDescriptor::Silent => Arc::new(Silent),
        StrategyDescriptor::Prg { seed } => Arc::new(Prg { seed: *seed }),
    })
}

fn bob_strategy(d: &StrategyDescriptor, schedule: &RoundSchedule) -> Result<Arc<dyn BobStrategy>> {
    Ok(match d {
        StrategyDescriptor::Codebook { .. } => {
            return Err(Error::load("bob.type", "codebook strategies are for Alice only"))
        }
        StrategyDescriptor::Table { entries } => {
            let mut map = HashMap::with_capacity(entries.len());
            for (key, &v) in entries {
                let field = format!("bob.entries.{key}");
                let Some((j, received)) = key.split_once(':') else {
                    return Err(Error::load(field, "key must be \"j:received\""));
                };
                let j: usize = j
                    .parse()
                    .map_err(|_| Error::load(&field, format!("{j:?} is not a round ordinal")))?;
                map.insert((j, bitstring(&field, received)?), table_bit(&field, v)?);
            }
            Arc::new(
                BobTable::new(map, schedule).map_err(|e| Error::load("bob.entries", e.to_string()))?,
            )
        }
        StrategyDescriptor::Echo => Arc::new(Echo),
        StrategyDescriptor::Silent => Arc::new(Silent),
        StrategyDescriptor::Prg { seed } => Arc::new(Prg { seed: *seed }),
    })
}

fn table_bit(field: &str, v: u8) -> Result<bool> {
    match v {
        0 => Ok(false),
        1 => Ok(true),
        _ => Err(Error::load(field, format!("table bits must be 0 or 1, got {v}"))),
    }
}
