//! Shared fixtures for the benchmarks.

use iecc_core::harness::{builtin_protocol, BuiltinParams, LoadedProtocol};

pub fn builtin(name: &str, n: usize, k: usize, seed: u64) -> LoadedProtocol {
    builtin_protocol(
        name,
        &BuiltinParams {
            n,
            k,
            seed,
            ..BuiltinParams::default()
        },
    )
    .expect("builtin parameters are valid")
}
