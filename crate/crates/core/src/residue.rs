//! Residue-class coverage of k-fold smooth sums and the obstruction
//! certificates it yields.
//!
//! For a modulus m, the residues of A mod m form the product closure of
//! the t power orbits {p_i^u mod m}. Iterating a modular sumset over those
//! residues (with negated copies in the signed case) gives the residues
//! attained by sums of at most k terms. When that set misses a residue r,
//! NO integer congruent to r mod m is such a sum, so the smallest positive
//! witness in the class bounds the signed threshold function from above.

use crate::bits::Bitset;
use crate::carmichael::{carmichael_lambda, eps_construct, factorize};
use crate::error::{Error, Result};
use crate::signed::min_terms_signed;
use crate::smooth::PrimeSet;
use crate::ResourceLimits;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// The full eventually-periodic orbit {b^u mod m : u >= 0}, ascending.
/// u = 0 contributes residue 1. For m <= 1 the ring is trivial.
pub fn power_residues(b: i64, m: u64) -> Vec<u64> {
    if m <= 1 {
        return vec![0];
    }
    let bm = b.rem_euclid(m as i64) as u64;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut r = 1 % m;
    while seen.insert(r) {
        out.push(r);
        r = crate::arith::mulmod(r, bm, m);
    }
    out.sort_unstable();
    out
}

/// Residues of A mod m: the closure {prod_i r_i : r_i in orbit(p_i)},
/// ascending.
pub fn smooth_residues(ps: &PrimeSet, m: u64) -> Vec<u64> {
    if m <= 1 {
        return vec![0];
    }
    let mut cur: HashSet<u64> = HashSet::new();
    cur.insert(1 % m);
    for &p in ps.primes() {
        let orbit = power_residues(p as i64, m);
        let mut next = HashSet::with_capacity(cur.len() * orbit.len());
        for &c in &cur {
            for &r in &orbit {
                next.insert(crate::arith::mulmod(c, r, m));
            }
        }
        cur = next;
    }
    let mut out: Vec<u64> = cur.into_iter().collect();
    out.sort_unstable();
    out
}

/// Residues modulo m attained by sums of at most k terms (the empty sum
/// contributes residue 0).
pub struct ResidueCoverage {
    m: u64,
    k: u32,
    signed: bool,
    residues: Bitset,
    source_sizes: Vec<usize>,
}

impl ResidueCoverage {
    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn term_budget(&self) -> u32 {
        self.k
    }

    pub fn signed(&self) -> bool {
        self.signed
    }

    /// Per-prime power-orbit sizes mod m.
    pub fn source_sizes(&self) -> &[usize] {
        &self.source_sizes
    }

    pub fn covered(&self, r: u64) -> bool {
        assert!(r < self.m);
        self.residues.get(r as usize)
    }

    pub fn count(&self) -> u64 {
        self.residues.count() as u64
    }

    pub fn first_missing(&self) -> Option<u64> {
        self.residues.first_zero().map(|i| i as u64)
    }

    pub fn missing(&self, max: usize) -> Vec<u64> {
        self.residues
            .zeros(max)
            .into_iter()
            .map(|i| i as u64)
            .collect()
    }

    pub fn summary(&self, sample: usize) -> CoverageSummary {
        CoverageSummary {
            m: self.m,
            k: self.k,
            signed: self.signed,
            covered: self.count(),
            missing: self.m - self.count(),
            first_missing: self.missing(sample),
            source_sizes: self.source_sizes.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoverageSummary {
    pub m: u64,
    pub k: u32,
    pub signed: bool,
    pub covered: u64,
    pub missing: u64,
    pub first_missing: Vec<u64>,
    pub source_sizes: Vec<usize>,
}

/// Iterated modular sumset by shifted-OR bitset rounds; exact, and early
/// exits when coverage stabilizes or saturates.
pub fn sumset_coverage(
    ps: &PrimeSet,
    k: u32,
    m: u64,
    signed: bool,
    limits: &ResourceLimits,
) -> Result<ResidueCoverage> {
    if m < 2 {
        return Err(Error::InvalidArgument("modulus must be >= 2".into()));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    if m / 4 > limits.mem_bytes {
        return Err(Error::ResourceLimit {
            what: "coverage bitset bytes",
            needed: m / 4,
            cap: limits.mem_bytes,
        });
    }
    let source_sizes: Vec<usize> = ps
        .primes()
        .iter()
        .map(|&p| power_residues(p as i64, m).len())
        .collect();
    let base = smooth_residues(ps, m);
    let mut shifts: Vec<u64> = base.clone();
    if signed {
        for &r in &base {
            shifts.push((m - r) % m);
        }
        shifts.sort_unstable();
        shifts.dedup();
    }
    let mut cov = Bitset::new(m as usize);
    cov.set(0);
    for _ in 0..k {
        let mut next = cov.clone();
        for &r in &shifts {
            next.or_rotate(&cov, r as usize);
        }
        let stable = next == cov;
        cov = next;
        if stable || cov.count() as u64 == m {
            break;
        }
    }
    Ok(ResidueCoverage {
        m,
        k,
        signed,
        residues: cov,
        source_sizes,
    })
}

/// Instance check of the coverage-counting inequality: #H_{P,k} (mod m)
/// against (lambda(m) + max alpha_j + 1)^(kt), compared in log space.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoverageBoundReport {
    pub m: u64,
    pub k: u32,
    pub t: usize,
    pub lambda: u64,
    pub max_alpha: u32,
    pub coverage_size: u64,
    pub log_coverage: f64,
    pub log_bound: f64,
    pub holds: bool,
}

pub fn coverage_bound_check(
    ps: &PrimeSet,
    k: u32,
    m: u64,
    limits: &ResourceLimits,
) -> Result<CoverageBoundReport> {
    let cov = sumset_coverage(ps, k, m, false, limits)?;
    let lambda = carmichael_lambda(m)?;
    let max_alpha = factorize(m)?.max_exponent();
    let t = ps.count();
    let log_coverage = (cov.count() as f64).ln();
    let log_bound = (k as f64) * (t as f64) * ((lambda + max_alpha as u64 + 1) as f64).ln();
    Ok(CoverageBoundReport {
        m,
        k,
        t,
        lambda,
        max_alpha,
        coverage_size: cov.count(),
        log_coverage,
        log_bound,
        holds: log_coverage <= log_bound + 1e-9,
    })
}

/// A modulus m and residue r with no sum of at most k signed smooth terms
/// congruent to r; the smallest positive member of the class witnesses
/// the implied bound on the signed threshold function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionCertificate {
    #[serde(rename = "P")]
    pub primes: Vec<u64>,
    pub k: u32,
    pub m: u64,
    pub lambda_m: u64,
    pub residue: u64,
    pub witness_n: u64,
    pub checked_by_search: bool,
}

#[derive(Clone, Debug)]
pub struct ObstructionBudget {
    /// Largest y for the candidate pools L = lcm(1..y).
    pub max_y: u32,
    /// Candidate moduli kept after generation.
    pub max_candidates: usize,
    /// Candidate moduli must stay at or below this.
    pub modulus_cap: u64,
    /// Skip candidates whose orbit-size product exceeds this.
    pub residue_work_cap: u64,
    /// Cross-check witnesses up to this size with the exact signed search.
    pub verify_witness_max: u64,
}

impl Default for ObstructionBudget {
    fn default() -> Self {
        ObstructionBudget {
            max_y: 12,
            max_candidates: 4000,
            modulus_cap: 20_000_000,
            residue_work_cap: 2_000_000,
            verify_witness_max: 10_000,
        }
    }
}

fn lambda_of_prime_power(q: u64, a: u32) -> u64 {
    if q == 2 {
        match a {
            1 => 1,
            2 => 2,
            _ => 1u64 << (a - 2),
        }
    } else {
        q.pow(a - 1) * (q - 1)
    }
}

/// Candidate moduli: products of prime powers q^a with lambda(q^a) | L,
/// over the eps pools for y = 2..max_y. Sorted by lambda(m)/ln(m)
/// ascending, which is the order in which misses are likely.
fn candidate_moduli(budget: &ObstructionBudget) -> Result<Vec<(u64, u64)>> {
    let mut seen: HashSet<u64> = HashSet::new();
    let mut out: Vec<(u64, u64)> = Vec::new();
    for y in 2..=budget.max_y {
        let eps = match eps_construct(y) {
            Ok(r) => r,
            Err(Error::Overflow(_)) => break,
            Err(e) => return Err(e),
        };
        let l = eps.smooth_exponent_l;
        // pool primes: q with q-1 | L; keep the smallest 64
        let mut qs: Vec<u64> = crate::carmichael::eps_prime_pool(l)?;
        qs.truncate(64);
        let mut powers: Vec<Vec<(u64, u64)>> = Vec::new(); // (q^a, lambda(q^a))
        for &q in &qs {
            let mut col = Vec::new();
            let mut pw = q;
            let mut a = 1u32;
            while pw <= budget.modulus_cap {
                let lam = lambda_of_prime_power(q, a);
                if l % lam != 0 {
                    break;
                }
                col.push((pw, lam));
                match pw.checked_mul(q) {
                    Some(nv) => pw = nv,
                    None => break,
                }
                a += 1;
            }
            powers.push(col);
        }
        // DFS over per-prime power choices
        fn dfs(
            powers: &[Vec<(u64, u64)>],
            i: usize,
            m: u64,
            lam: u64,
            cap: u64,
            seen: &mut HashSet<u64>,
            out: &mut Vec<(u64, u64)>,
            max_out: usize,
        ) {
            if out.len() >= max_out {
                return;
            }
            if i == powers.len() {
                if m >= 2 && seen.insert(m) {
                    out.push((m, lam));
                }
                return;
            }
            // skip this prime
            dfs(powers, i + 1, m, lam, cap, seen, out, max_out);
            for &(pw, plam) in &powers[i] {
                match m.checked_mul(pw) {
                    Some(nm) if nm <= cap => {
                        let nlam = crate::arith::lcm_checked(lam, plam).unwrap_or(u64::MAX);
                        dfs(powers, i + 1, nm, nlam, cap, seen, out, max_out);
                    }
                    _ => break,
                }
            }
        }
        dfs(
            &powers,
            0,
            1,
            1,
            budget.modulus_cap,
            &mut seen,
            &mut out,
            budget.max_candidates,
        );
        if out.len() >= budget.max_candidates {
            break;
        }
    }
    out.sort_by(|a, b| {
        let score = |&(m, lam): &(u64, u64)| lam as f64 / (m as f64).ln();
        score(a)
            .total_cmp(&score(b))
            .then(a.0.cmp(&b.0))
            .then(a.1.cmp(&b.1))
    });
    Ok(out)
}

/// Scan candidate moduli for one whose signed coverage misses a residue;
/// return the certificate with the smallest witness in the missed class.
/// None means the budget was exhausted without a find, which is the
/// expected outcome once k is large relative to the modulus cap.
pub fn find_obstruction(
    ps: &PrimeSet,
    k: u32,
    budget: &ObstructionBudget,
    limits: &ResourceLimits,
) -> Result<Option<ObstructionCertificate>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    let candidates = candidate_moduli(budget)?;
    for (m, _lam) in candidates {
        let orbit_product: u64 = ps
            .primes()
            .iter()
            .map(|&p| power_residues(p as i64, m).len() as u64)
            .try_fold(1u64, |acc, s| acc.checked_mul(s))
            .unwrap_or(u64::MAX);
        if orbit_product > budget.residue_work_cap {
            continue;
        }
        if m / 4 > limits.mem_bytes {
            continue;
        }
        let cov = sumset_coverage(ps, k, m, true, limits)?;
        if let Some(residue) = cov.first_missing() {
            debug_assert!(residue >= 1, "the empty sum always covers residue 0");
            let witness_n = residue; // smallest positive integer in the class
            let lambda_m = carmichael_lambda(m)?;
            let checked_by_search = if witness_n <= budget.verify_witness_max {
                let bound = witness_n.saturating_mul(witness_n).max(16);
                let r = min_terms_signed(ps, witness_n as i64, bound, k, limits)?;
                match r.length {
                    Some(len) if len <= k => {
                        return Err(Error::Internal(format!(
                            "certificate (m={m}, r={residue}) refuted: {witness_n} has a \
                             {len}-term signed representation"
                        )));
                    }
                    _ => true,
                }
            } else {
                false
            };
            return Ok(Some(ObstructionCertificate {
                primes: ps.primes().to_vec(),
                k,
                m,
                lambda_m,
                residue,
                witness_n,
                checked_by_search,
            }));
        }
    }
    Ok(None)
}
