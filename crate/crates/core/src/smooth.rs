//! The prime set P, the multiplicative semigroup A of P-smooth positive
//! integers, ordered enumeration, predecessor queries, the greedy
//! decomposition and gap statistics.
//!
//! A contains 1 (the empty product), which guarantees that every positive
//! integer has a greedy decomposition and that predecessor queries always
//! have an answer.

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::ResourceLimits;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// A validated, strictly increasing set of at least two primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSet {
    primes: Vec<u64>,
}

impl PrimeSet {
    /// Sorts, deduplicates and validates. Rejects composites and sets
    /// with fewer than two distinct primes.
    pub fn new(primes: &[u64]) -> Result<Self> {
        if primes.is_empty() {
            return Err(Error::InvalidArgument("empty prime list".into()));
        }
        let mut v = primes.to_vec();
        v.sort_unstable();
        v.dedup();
        for &p in &v {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
        }
        if v.len() < 2 {
            return Err(Error::TooFewPrimes(v.len()));
        }
        Ok(PrimeSet { primes: v })
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Number of primes, usually written t.
    pub fn count(&self) -> usize {
        self.primes.len()
    }

    pub fn smallest(&self) -> u64 {
        self.primes[0]
    }
}

impl std::fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.primes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// An element of A together with its exact exponent vector:
/// value = prod p_i^{e_i}. The all-zero vector is 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothNumber {
    value: u64,
    exponents: Vec<u32>,
}

impl SmoothNumber {
    pub fn one(t: usize) -> Self {
        SmoothNumber {
            value: 1,
            exponents: vec![0; t],
        }
    }

    pub fn from_exponents(ps: &PrimeSet, exponents: &[u32]) -> Result<Self> {
        if exponents.len() != ps.count() {
            return Err(Error::InvalidArgument(format!(
                "expected {} exponents, got {}",
                ps.count(),
                exponents.len()
            )));
        }
        let mut value: u64 = 1;
        for (&p, &e) in ps.primes().iter().zip(exponents) {
            for _ in 0..e {
                value = value
                    .checked_mul(p)
                    .ok_or_else(|| Error::Overflow(format!("{p}^{e} term exceeds u64")))?;
            }
        }
        Ok(SmoothNumber {
            value,
            exponents: exponents.to_vec(),
        })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }
}

/// Every element of A in [1, limit], strictly increasing, each with its
/// exponent vector. Generalized Hamming-number merge: each prime holds a
/// cursor into the output and offers its next candidate product.
pub fn enumerate_smooth(
    ps: &PrimeSet,
    limit: u64,
    limits: &ResourceLimits,
) -> Result<Vec<SmoothNumber>> {
    if limit < 1 {
        return Err(Error::InvalidArgument("limit must be >= 1".into()));
    }
    let t = ps.count();
    let mut out = vec![SmoothNumber::one(t)];
    let mut cursor = vec![0usize; t];
    // candidate[i] = primes[i] * out[cursor[i]].value, saturating on overflow
    let mut candidate: Vec<u64> = ps
        .primes()
        .iter()
        .map(|&p| if p <= limit { p } else { u64::MAX })
        .collect();
    loop {
        let mut best = u64::MAX;
        for &c in &candidate {
            if c < best {
                best = c;
            }
        }
        if best > limit {
            break;
        }
        if out.len() >= limits.element_cap {
            return Err(Error::ResourceLimit {
                what: "smooth enumeration elements",
                needed: out.len() as u64 + 1,
                cap: limits.element_cap as u64,
            });
        }
        // Unique factorization: every prime whose candidate equals `best`
        // derives the same exponent vector, so take the first and advance all.
        let mut pushed = false;
        for i in 0..t {
            if candidate[i] == best {
                if !pushed {
                    let mut exps = out[cursor[i]].exponents.clone();
                    exps[i] += 1;
                    out.push(SmoothNumber {
                        value: best,
                        exponents: exps,
                    });
                    pushed = true;
                }
                cursor[i] += 1;
                candidate[i] = ps.primes()[i].saturating_mul(out[cursor[i]].value);
            }
        }
    }
    Ok(out)
}

/// Values only; convenience for the dynamic programs that do not need
/// exponent vectors.
pub fn enumerate_smooth_values(
    ps: &PrimeSet,
    limit: u64,
    limits: &ResourceLimits,
) -> Result<Vec<u64>> {
    Ok(enumerate_smooth(ps, limit, limits)?
        .into_iter()
        .map(|s| s.value)
        .collect())
}

/// Membership test by repeated division; the exponent vector if n is in A.
pub fn is_smooth(ps: &PrimeSet, n: u64) -> Option<Vec<u32>> {
    if n == 0 {
        return None;
    }
    let mut rem = n;
    let mut exps = vec![0u32; ps.count()];
    for (i, &p) in ps.primes().iter().enumerate() {
        while rem % p == 0 {
            rem /= p;
            exps[i] += 1;
        }
    }
    if rem == 1 {
        Some(exps)
    } else {
        None
    }
}

/// max { a in A : a <= n }, by descent over exponent vectors. Exponent i
/// is bounded by log n / log p_i, so the search tree is polylog(n) and
/// answers point queries far beyond any enumeration cap.
pub fn largest_smooth_leq(ps: &PrimeSet, n: u64) -> Result<SmoothNumber> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let primes = ps.primes();
    let t = primes.len();
    let mut best_val = 1u64;
    let mut best_exps = vec![0u32; t];
    let mut exps = vec![0u32; t];

    fn descend(
        primes: &[u64],
        i: usize,
        limit: u64,
        acc: u64,
        exps: &mut Vec<u32>,
        best_val: &mut u64,
        best_exps: &mut Vec<u32>,
    ) {
        if i == primes.len() {
            if acc > *best_val {
                *best_val = acc;
                best_exps.copy_from_slice(exps);
            }
            return;
        }
        let p = primes[i];
        let mut v = acc;
        let mut e = 0u32;
        loop {
            exps[i] = e;
            descend(primes, i + 1, limit, v, exps, best_val, best_exps);
            if *best_val == limit {
                break; // exact hit, nothing larger exists
            }
            match v.checked_mul(p) {
                Some(nv) if nv <= limit => {
                    v = nv;
                    e += 1;
                }
                _ => break,
            }
        }
        exps[i] = 0;
    }

    descend(primes, 0, n, 1, &mut exps, &mut best_val, &mut best_exps);
    Ok(SmoothNumber {
        value: best_val,
        exponents: best_exps,
    })
}

/// Greedy decomposition: repeatedly subtract the largest element of A not
/// exceeding the remainder. Terminates because 1 is in A; terms are
/// non-increasing and sum to n.
pub fn greedy_decompose(ps: &PrimeSet, n: u64) -> Result<Vec<SmoothNumber>> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let mut rem = n;
    let mut terms = Vec::new();
    while rem > 0 {
        let term = largest_smooth_leq(ps, rem)?;
        rem -= term.value();
        terms.push(term);
    }
    Ok(terms)
}

/// n, its predecessor in A and their difference. No element of A lies in
/// (predecessor, n].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapRecord {
    pub n: u64,
    pub predecessor: u64,
    pub gap: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapSummary {
    pub samples: u64,
    pub max_gap: u64,
    pub max_gap_at: u64,
    pub max_relative_gap: f64,
    pub max_relative_gap_at: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GapStatistics {
    pub records: Vec<GapRecord>,
    pub summary: GapSummary,
}

/// Gap records for n = lo, lo+stride, .. <= hi. The range is swept in
/// parallel; records come back in sample order so the output is identical
/// for any worker count.
pub fn gap_statistics(
    ps: &PrimeSet,
    lo: u64,
    hi: u64,
    stride: u64,
    limits: &ResourceLimits,
) -> Result<GapStatistics> {
    if lo < 1 || lo > hi {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= lo <= hi, got [{lo}, {hi}]"
        )));
    }
    if stride < 1 {
        return Err(Error::InvalidArgument("stride must be >= 1".into()));
    }
    let samples = (hi - lo) / stride + 1;
    if samples > limits.sample_cap as u64 {
        return Err(Error::ResourceLimit {
            what: "gap range samples",
            needed: samples,
            cap: limits.sample_cap as u64,
        });
    }
    let values = enumerate_smooth_values(ps, hi, limits)?;
    let records: Vec<GapRecord> = (0..samples)
        .into_par_iter()
        .map(|j| {
            let n = lo + j * stride;
            let idx = values.partition_point(|&v| v <= n) - 1;
            let predecessor = values[idx];
            GapRecord {
                n,
                predecessor,
                gap: n - predecessor,
            }
        })
        .collect();
    let mut summary = GapSummary {
        samples,
        max_gap: 0,
        max_gap_at: lo,
        max_relative_gap: 0.0,
        max_relative_gap_at: lo,
    };
    for r in &records {
        if r.gap > summary.max_gap {
            summary.max_gap = r.gap;
            summary.max_gap_at = r.n;
        }
        let rel = r.gap as f64 / r.n as f64;
        if rel > summary.max_relative_gap {
            summary.max_relative_gap = rel;
            summary.max_relative_gap_at = r.n;
        }
    }
    Ok(GapStatistics { records, summary })
}
