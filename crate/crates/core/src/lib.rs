//! Prime number races and their limiting logarithmic distributions.
//!
//! The crate has two halves that meet in [`limit::compare_empirical`]:
//!
//! * the empirical side enumerates primes ([`primes`]), evaluates
//!   per-prime coefficients ([`coeffs`]) and accumulates race trajectories
//!   ([`race`]);
//! * the analytic side computes L-function zeros ([`zeros`]) and rebuilds
//!   the limiting distribution from them ([`limit`]).

pub mod arith;
pub mod coeffs;
mod error;
pub mod fmt;
pub mod li;
pub mod limit;
pub mod primes;
pub mod race;
pub mod zeros;

pub use error::{Error, Result};

/// Hex-encoded SHA-256 of a byte slice, used to pin input files in reports.
pub fn sha256_hex(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    hex::encode(Sha256::digest(bytes))
}
