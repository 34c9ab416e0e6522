//! Log-space evaluation of the closed-form growth bounds and the
//! finite-range empirical comparisons against exact counts.
//!
//! Everything exponential is evaluated and compared in natural-log scale;
//! the doubly exponential expressions overflow any fixed-width float long
//! before the parameter ranges of interest end.

use crate::error::{Error, Result};
use crate::signed::signed_reach;
use crate::smooth::{enumerate_smooth_values, PrimeSet};
use crate::ResourceLimits;
use serde::{Deserialize, Serialize};

/// Fixed wording for every emitted report: finite sweeps fit constants,
/// they cannot verify asymptotic statements.
pub const LIMITATION_NOTE: &str = "The growth inequalities reported here are asymptotic and \
involve unspecified or ineffective constants; a finite sweep can only report fitted constants \
and observed margins, never verify the asymptotic statements themselves.";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundConstants {
    /// Lower-bound exponent constant c in k^(ck).
    pub c: f64,
    /// Leading constant C in C(kt)^((1+eps)kt).
    pub big_c: f64,
    /// Exponent constant in exp((kt)^c_pm).
    pub c_pm: f64,
    pub epsilon: f64,
    /// Greedy gap-shrink constant.
    pub c1: f64,
    /// Greedy tail-ratio constant, > 1.
    pub c2: f64,
    /// Smooth-count constant in (C6 log n)^t.
    pub c6: f64,
}

impl Default for BoundConstants {
    fn default() -> Self {
        BoundConstants {
            c: 1.0,
            big_c: 1.0,
            c_pm: 1.0,
            epsilon: 1.0,
            c1: 1.0,
            c2: 2.0,
            c6: 1.0,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundEntry {
    pub name: &'static str,
    pub formula: &'static str,
    /// Natural log of the bound's value.
    pub log_value: f64,
}

/// The four closed-form bounds at (k, t), in log space.
pub fn eval_bounds(k: u64, t: u64, consts: &BoundConstants) -> Result<Vec<BoundEntry>> {
    if k < 2 || t < 2 {
        return Err(Error::InvalidArgument("need k >= 2 and t >= 2".into()));
    }
    if consts.epsilon <= 0.0 || consts.c <= 0.0 || consts.big_c <= 0.0 || consts.c_pm <= 0.0 {
        return Err(Error::InvalidArgument(
            "constants and epsilon must be positive".into(),
        ));
    }
    let kf = k as f64;
    let kt = (k as f64) * (t as f64);
    Ok(vec![
        BoundEntry {
            name: "lower_unsigned",
            formula: "k^(c k)",
            log_value: consts.c * kf * kf.ln(),
        },
        BoundEntry {
            name: "upper_unsigned",
            formula: "C (kt)^((1+eps) kt)",
            log_value: consts.big_c.ln() + (1.0 + consts.epsilon) * kt * kt.ln(),
        },
        BoundEntry {
            name: "upper_signed",
            formula: "exp((kt)^c_pm)",
            log_value: (consts.c_pm * kt.ln()).exp(),
        },
        BoundEntry {
            name: "upper_signed_eventual",
            formula: "(kt)^((1+eps) kt)",
            log_value: (1.0 + consts.epsilon) * kt * kt.ln(),
        },
    ])
}

/// The greedy term-count estimate
/// 2 log n / (c1 log log n) + sqrt(log n) / log c2.
pub fn greedy_bound_eval(n: u64, c1: f64, c2: f64) -> Result<f64> {
    if n < 16 {
        return Err(Error::InvalidArgument("need n >= 16".into()));
    }
    if c1 <= 0.0 || c2 <= 1.0 {
        return Err(Error::InvalidArgument("need c1 > 0 and c2 > 1".into()));
    }
    let ln = (n as f64).ln();
    Ok(2.0 * ln / (c1 * ln.ln()) + ln.sqrt() / c2.ln())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GreedyBoundRow {
    pub n: u64,
    pub observed_terms: u64,
    pub formula_value: f64,
    pub holds: bool,
}

/// Observed greedy length next to the formula value at the given c1, c2.
pub fn greedy_bound_rows(
    ps: &PrimeSet,
    samples: &[u64],
    c1: f64,
    c2: f64,
) -> Result<Vec<GreedyBoundRow>> {
    samples
        .iter()
        .map(|&n| {
            let observed = crate::smooth::greedy_decompose(ps, n)?.len() as u64;
            let formula_value = greedy_bound_eval(n, c1, c2)?;
            Ok(GreedyBoundRow {
                n,
                observed_terms: observed,
                formula_value,
                holds: (observed as f64) <= formula_value,
            })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CountBoundRow {
    pub n: u64,
    /// #(A united with {0}) in [0, n].
    pub count: u64,
    pub log_count: f64,
    pub log_bound: f64,
    pub holds: bool,
}

/// Count of A plus zero up to n versus (c6 log n)^t in log space.
pub fn count_smooth_bound_check(
    ps: &PrimeSet,
    n: u64,
    c6: f64,
    limits: &ResourceLimits,
) -> Result<CountBoundRow> {
    if n < 2 {
        return Err(Error::InvalidArgument("need n >= 2".into()));
    }
    let count = enumerate_smooth_values(ps, n, limits)?.len() as u64 + 1;
    let t = ps.count() as f64;
    let log_count = (count as f64).ln();
    let log_bound = t * (c6 * (n as f64).ln()).ln();
    Ok(CountBoundRow {
        n,
        count,
        log_count,
        log_bound,
        holds: log_count <= log_bound + 1e-12,
    })
}

/// Least C6 making the count bound hold over the sampled n.
pub fn fitted_c6(ps: &PrimeSet, samples: &[u64], limits: &ResourceLimits) -> Result<f64> {
    let t = ps.count() as f64;
    let mut best: f64 = 0.0;
    for &n in samples {
        if n < 2 {
            continue;
        }
        let count = enumerate_smooth_values(ps, n, limits)?.len() as f64 + 1.0;
        // count = (c6 ln n)^t  =>  c6 = count^(1/t) / ln n
        best = best.max(count.powf(1.0 / t) / (n as f64).ln());
    }
    Ok(best)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SieveCountReport {
    pub n_limit: u64,
    /// Exact #\{n <= N : gcd(n, prod P) = 1\} by inclusion-exclusion.
    pub exact: u64,
    /// N prod (1 - 1/p) - 2^t.
    pub product_lower_bound: f64,
    /// 2^-t N - 2^t.
    pub simple_lower_bound: f64,
    pub holds_product: bool,
    pub holds_simple: bool,
}

/// Exact coprime count compared with both lower-bound expressions. The
/// comparisons are done in exact integer cross-multiplied form.
pub fn sieve_count_coprime(ps: &PrimeSet, n_limit: u64) -> Result<SieveCountReport> {
    if n_limit < 1 {
        return Err(Error::InvalidArgument("limit must be >= 1".into()));
    }
    let t = ps.count();
    if t >= 32 {
        return Err(Error::InvalidArgument("prime set too large for sieve".into()));
    }
    let mut exact: i128 = 0;
    for mask in 0u32..(1 << t) {
        let mut prod: u128 = 1;
        let mut bits = 0;
        for (i, &p) in ps.primes().iter().enumerate() {
            if mask >> i & 1 == 1 {
                prod *= p as u128;
                bits += 1;
            }
        }
        let term = (n_limit as u128 / prod) as i128;
        exact += if bits % 2 == 0 { term } else { -term };
    }
    let exact = exact as u64;

    // N prod(p-1) / prod(p) - 2^t, compared as
    // exact * prod(p) >= N * prod(p-1) - 2^t * prod(p)
    let prod_p: i128 = ps.primes().iter().map(|&p| p as i128).product();
    let prod_pm1: i128 = ps.primes().iter().map(|&p| p as i128 - 1).product();
    let two_t: i128 = 1 << t;
    let holds_product =
        (exact as i128) * prod_p >= (n_limit as i128) * prod_pm1 - two_t * prod_p;
    // 2^-t N - 2^t, compared as exact * 2^t >= N - 2^(2t)
    let holds_simple = (exact as i128) * two_t >= (n_limit as i128) - (two_t * two_t);

    Ok(SieveCountReport {
        n_limit,
        exact,
        product_lower_bound: n_limit as f64 * (prod_pm1 as f64 / prod_p as f64)
            - two_t as f64,
        simple_lower_bound: n_limit as f64 / two_t as f64 - two_t as f64,
        holds_product,
        holds_simple,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SignedCountReport {
    pub k: u32,
    pub n_limit: u64,
    pub magnitude_bound: u64,
    /// Exact count of n <= N coprime to P with a <= k-term signed
    /// representation under the magnitude bound.
    pub count: u64,
    pub log_count: Option<f64>,
    /// log of 2 * 2^k * (3 log N)^(kt).
    pub log_bound: f64,
    pub holds: bool,
}

/// Exhaustive-regime comparison of the representable-and-coprime count
/// against 2 * 2^k (3 log N)^(kt).
pub fn representable_count_signed(
    ps: &PrimeSet,
    k: u32,
    n_limit: u64,
    bound: u64,
    limits: &ResourceLimits,
) -> Result<SignedCountReport> {
    if k == 0 || k > 3 {
        return Err(Error::InvalidArgument(
            "exhaustive regime covers 1 <= k <= 3".into(),
        ));
    }
    if n_limit > 100_000 {
        return Err(Error::InvalidArgument(
            "exhaustive regime covers N <= 10^5".into(),
        ));
    }
    if bound < n_limit {
        return Err(Error::InvalidArgument("bound must be >= limit".into()));
    }
    let reach = signed_reach(ps, bound, k, limits)?;
    let mut count = 0u64;
    for n in 1..=n_limit {
        if ps.primes().iter().any(|&p| n % p == 0) {
            continue;
        }
        if !reach.unreachable_within(n as i64, k) {
            count += 1;
        }
    }
    let t = ps.count() as f64;
    let log_bound = (2.0f64).ln() + k as f64 * (2.0f64).ln()
        + k as f64 * t * (3.0 * (n_limit as f64).ln()).ln();
    let log_count = (count > 0).then(|| (count as f64).ln());
    Ok(SignedCountReport {
        k,
        n_limit,
        magnitude_bound: bound,
        count,
        log_count,
        log_bound,
        holds: log_count.map_or(true, |lc| lc <= log_bound + 1e-12),
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LambdaSampleReport {
    pub m_max: u64,
    /// min over 16 <= m <= m_max of ln lambda(m) / (lnln m * lnlnln m).
    pub min_statistic: f64,
    pub argmin_m: u64,
    pub argmin_lambda: u64,
    pub argmin_factorization: String,
    pub samples: u64,
}

/// Sampled statistic for the small-lambda direction; reported, never
/// asserted, since the underlying claim is asymptotic.
pub fn lambda_lower_sample(m_max: u64, limits: &ResourceLimits) -> Result<LambdaSampleReport> {
    if m_max < 100 {
        return Err(Error::InvalidArgument("need m_max >= 100".into()));
    }
    if m_max.saturating_mul(4) > limits.mem_bytes {
        return Err(Error::ResourceLimit {
            what: "lambda sieve bytes",
            needed: m_max * 4,
            cap: limits.mem_bytes,
        });
    }
    // smallest-prime-factor sieve, then lambda per m from its factorization
    let n = m_max as usize;
    let mut spf: Vec<u32> = (0..=n as u32).collect();
    let mut i = 2usize;
    while i * i <= n {
        if spf[i] == i as u32 {
            for j in (i * i..=n).step_by(i) {
                if spf[j] == j as u32 {
                    spf[j] = i as u32;
                }
            }
        }
        i += 1;
    }
    let lambda_of = |mut m: usize| -> u64 {
        let mut l = 1u64;
        while m > 1 {
            let q = spf[m] as u64;
            let mut a = 0u32;
            while m % q as usize == 0 {
                m /= q as usize;
                a += 1;
            }
            let lp = if q == 2 {
                match a {
                    1 => 1,
                    2 => 2,
                    _ => 1u64 << (a - 2),
                }
            } else {
                q.pow(a - 1) * (q - 1)
            };
            l = crate::arith::lcm_checked(l, lp).expect("lambda <= m");
        }
        l
    };
    let mut best = f64::INFINITY;
    let mut arg = 16u64;
    let mut arg_lambda = 1u64;
    let mut samples = 0u64;
    for m in 16..=m_max {
        let lam = lambda_of(m as usize);
        let lnln = (m as f64).ln().ln();
        let lnlnln = lnln.ln();
        if lnlnln <= 0.0 {
            continue;
        }
        samples += 1;
        let stat = (lam as f64).ln() / (lnln * lnlnln);
        if stat < best {
            best = stat;
            arg = m;
            arg_lambda = lam;
        }
    }
    Ok(LambdaSampleReport {
        m_max,
        min_statistic: best,
        argmin_m: arg,
        argmin_lambda: arg_lambda,
        argmin_factorization: crate::carmichael::factorize(arg)?.to_string_compact(),
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gcd;

    fn limits() -> ResourceLimits {
        ResourceLimits::default()
    }

    fn p23() -> PrimeSet {
        PrimeSet::new(&[2, 3]).unwrap()
    }

    #[test]
    fn eval_bounds_substitution_identities() {
        let consts = BoundConstants::default();
        let entries = eval_bounds(2, 2, &consts).unwrap();
        // k=2, c=1: log k^(ck) = 2 log 2
        assert!((entries[0].log_value - 2.0 * 2f64.ln()).abs() < 1e-12);
        // k=2, t=2, eps=1, C=1: log bound = 8 log 4
        assert!((entries[1].log_value - 8.0 * 4f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn eval_bounds_ordering_for_large_c_pm() {
        let consts = BoundConstants {
            c_pm: 4.0,
            ..BoundConstants::default()
        };
        let entries = eval_bounds(3, 2, &consts).unwrap();
        let (ii, iii) = (entries[1].log_value, entries[2].log_value);
        assert!(iii > ii);
    }

    #[test]
    fn eval_bounds_finite_at_kt_a_million() {
        let entries = eval_bounds(1000, 1000, &BoundConstants::default()).unwrap();
        for e in &entries {
            assert!(e.log_value.is_finite(), "{} overflowed", e.name);
        }
    }

    #[test]
    fn greedy_formula_spot_value() {
        // n = e^e (rounded up): second term = sqrt(e)/log c2 at c1 -> inf
        let n = 16u64;
        let v = greedy_bound_eval(n, 1e12, std::f64::consts::E).unwrap();
        let expect = (16f64).ln().sqrt();
        assert!((v - expect).abs() < 1e-6);
        assert!(greedy_bound_eval(15, 1.0, 2.0).is_err());
        assert!(greedy_bound_eval(100, 1.0, 1.0).is_err());
    }

    #[test]
    fn greedy_rows_hold_with_unit_constants() {
        let rows = greedy_bound_rows(&p23(), &[1000, 10_000, 100_000, 1_000_000], 1.0, 2.0)
            .unwrap();
        for r in &rows {
            assert!(r.holds, "n={} observed={} formula={}", r.n, r.observed_terms, r.formula_value);
        }
    }

    #[test]
    fn count_bound_examples() {
        let row = count_smooth_bound_check(&p23(), 10, 3.0, &limits()).unwrap();
        assert_eq!(row.count, 8); // 0,1,2,3,4,6,8,9
        // (3 ln 10)^2 ~ 47.7 >= 8
        assert!(row.holds);
        let fit = fitted_c6(&p23(), &[10, 100, 1000, 10_000], &limits()).unwrap();
        assert!(fit > 0.0 && fit < 3.0);
        // the fitted constant makes the bound hold on the sample
        for &n in &[10u64, 100, 1000, 10_000] {
            let row = count_smooth_bound_check(&p23(), n, fit + 1e-9, &limits()).unwrap();
            assert!(row.holds);
        }
    }

    #[test]
    fn sieve_examples() {
        let r = sieve_count_coprime(&p23(), 12).unwrap();
        assert_eq!(r.exact, 4); // 1, 5, 7, 11
        assert!(r.holds_simple); // bound is -1
        assert!(r.holds_product);

        let r = sieve_count_coprime(&p23(), 10_000).unwrap();
        assert_eq!(r.exact, 3333);
        assert!(r.holds_simple && r.holds_product);
        assert!((r.simple_lower_bound - 2496.0).abs() < 1e-12);

        let ps25 = PrimeSet::new(&[2, 5]).unwrap();
        let r = sieve_count_coprime(&ps25, 10).unwrap();
        assert_eq!(r.exact, 4); // 1, 3, 7, 9
    }

    #[test]
    fn sieve_matches_direct_gcd_loop() {
        let ps = PrimeSet::new(&[3, 5, 7]).unwrap();
        for n in [1u64, 2, 104, 1000] {
            let direct = (1..=n).filter(|&v| gcd(v, 105) == 1).count() as u64;
            assert_eq!(sieve_count_coprime(&ps, n).unwrap().exact, direct);
        }
    }

    #[test]
    fn representable_count_examples() {
        // k=1, N=100: only a=1 is smooth and coprime to 6
        let r = representable_count_signed(&p23(), 1, 100, 1000, &limits()).unwrap();
        assert_eq!(r.count, 1);
        assert!(r.holds);
    }

    #[test]
    fn representable_count_matches_pair_enumeration() {
        let ps = p23();
        let n_limit = 500u64;
        let bound = 5000u64;
        let r = representable_count_signed(&ps, 2, n_limit, bound, &limits()).unwrap();
        // brute force: all +-a +-b with |a|,|b| <= bound
        let a = enumerate_smooth_values(&ps, bound, &limits()).unwrap();
        let mut reachable = vec![false; n_limit as usize + 1];
        for &x in &a {
            if x <= n_limit {
                reachable[x as usize] = true;
            }
            for &y in &a {
                for v in [x as i64 + y as i64, x as i64 - y as i64] {
                    if v >= 1 && v <= n_limit as i64 {
                        reachable[v as usize] = true;
                    }
                }
            }
        }
        let direct = (1..=n_limit)
            .filter(|&n| n % 2 != 0 && n % 3 != 0 && reachable[n as usize])
            .count() as u64;
        assert_eq!(r.count, direct);
        assert!(r.holds);
    }

    #[test]
    fn lambda_sample_finds_65520() {
        let r = lambda_lower_sample(100_000, &limits()).unwrap();
        assert_eq!(r.argmin_m, 65520);
        assert_eq!(r.argmin_lambda, 12);
        assert_eq!(r.argmin_factorization, "2^4*3^2*5*7*13");
        assert!(r.min_statistic > 0.0 && r.min_statistic.is_finite());
        assert!((r.min_statistic - 1.1762948096363604).abs() < 1e-9);
    }
}
