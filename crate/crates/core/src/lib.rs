//! Exact desk-scale computation with P-smooth numbers.
//!
//! Given a finite set P of at least two primes, let A be the positive
//! integers composed only of primes from P. This crate computes, exactly:
//!
//! - ordered enumeration of A, membership, predecessor queries, the greedy
//!   decomposition and its gap statistics ([`smooth`]);
//! - minimal unsigned term counts and the threshold F(k), the least n that
//!   is not a sum of at most k elements of A ([`repr`]);
//! - minimal signed term counts (terms from A and -A), the signed
//!   threshold, p-adic values and the S-unit condition checker ([`signed`]);
//! - the Carmichael function and constructions of moduli with anomalously
//!   small lambda ([`carmichael`]);
//! - residue-class coverage of k-fold sums modulo m and obstruction
//!   certificates bounding the signed threshold from above ([`residue`]);
//! - overflow-safe log-space evaluation of the growth bounds with
//!   finite-range empirical comparisons ([`bounds`]).
//!
//! All operations are deterministic; range sweeps may run on several
//! threads but reduce in sample order, so results are identical for any
//! worker count.

pub mod bounds;
pub mod carmichael;
pub mod repr;
pub mod residue;
pub mod signed;
pub mod smooth;

mod arith;
mod bits;
mod error;

pub use arith::is_prime;
pub use error::{Error, Result};

/// Caps shared by the memory- or time-hungry operations. Every cap
/// produces a structured resource error when exceeded, never silent
/// truncation.
#[derive(Clone, Debug)]
pub struct ResourceLimits {
    /// Max elements an enumeration of A may produce.
    pub element_cap: usize,
    /// Max samples in one gap sweep.
    pub sample_cap: usize,
    /// Max bytes for tables, bitsets and sieves.
    pub mem_bytes: u64,
    /// Max states (window width 2B+1) of the signed search.
    pub state_cap: u64,
}

impl Default for ResourceLimits {
    fn default() -> Self {
        ResourceLimits {
            element_cap: 1 << 24,
            sample_cap: 1 << 24,
            mem_bytes: 1 << 30,
            state_cap: 100_000_000,
        }
    }
}

impl ResourceLimits {
    /// Default limits with the byte cap taken from SMOOTHSUM_MAX_MEM
    /// (bytes) when set.
    pub fn from_env() -> Self {
        let mut limits = ResourceLimits::default();
        if let Ok(v) = std::env::var("SMOOTHSUM_MAX_MEM") {
            if let Ok(bytes) = v.trim().parse::<u64>() {
                limits.mem_bytes = bytes;
            }
        }
        limits
    }
}
