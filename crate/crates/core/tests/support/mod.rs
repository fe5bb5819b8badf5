#![allow(dead_code)]

pub mod oracle;
pub mod suites;

use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

/// Environment variable overriding the property-test seed.
pub const SEED_VAR: &str = "ORBIT_EQUIV_SEED";
pub const DEFAULT_SEED: u64 = 0x5eed_0b17;

pub fn seed() -> u64 {
    match std::env::var(SEED_VAR) {
        Ok(s) => s.parse().unwrap_or_else(|_| panic!("{SEED_VAR} must be a u64, got {s:?}")),
        Err(_) => DEFAULT_SEED,
    }
}

/// A deterministic runner: same seed, same cases, no persistence files.
pub fn runner(cases: u32) -> TestRunner {
    let mut config = Config::with_cases(cases);
    config.failure_persistence = None;
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed().to_le_bytes());
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &bytes))
}
