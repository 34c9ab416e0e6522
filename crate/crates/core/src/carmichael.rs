//! The Carmichael function, integer factorization, and the constructive
//! search for moduli with anomalously small lambda.
//!
//! The construction behind `eps_construct`: put L = lcm(1..y) and let m be
//! the product of all primes q with q-1 | L. Then lambda(m) = lcm of the
//! q-1 divides L, while m is roughly e^L-sized, so lambda(m) is tiny
//! relative to m. These moduli drive the residue-obstruction search.

use crate::arith::{gcd, is_prime, lcm_checked, ln_big, mulmod};
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

/// Exact prime factorization, primes strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub m: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn max_exponent(&self) -> u32 {
        self.factors.iter().map(|&(_, a)| a).max().unwrap_or(0)
    }

    pub fn to_string_compact(&self) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        self.factors
            .iter()
            .map(|&(q, a)| {
                if a == 1 {
                    q.to_string()
                } else {
                    format!("{q}^{a}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

const TRIAL_BOUND: u64 = 1 << 16;
const RHO_ROUNDS: u64 = 1 << 22;

// Brent-variant Pollard rho with deterministic polynomial offsets.
fn rho_split(n: u64) -> Option<u64> {
    for c in 1..64u64 {
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let f = |v: u64| (mulmod(v, v, n) + c) % n;
        let mut steps = 0u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
            steps += 1;
            if steps > RHO_ROUNDS {
                break;
            }
        }
        if d != n && d != 1 {
            return Some(d);
        }
    }
    None
}

/// Trial division up to 2^16, then rho splitting with deterministic
/// Miller-Rabin verification of every final factor.
pub fn factorize(m: u64) -> Result<Factorization> {
    if m == 0 {
        return Err(Error::InvalidArgument("cannot factor 0".into()));
    }
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut rem = m;
    let push = |q: u64, a: u32, factors: &mut Vec<(u64, u32)>| {
        factors.push((q, a));
    };
    let mut d = 2u64;
    while d <= TRIAL_BOUND && d * d <= rem {
        if rem % d == 0 {
            let mut a = 0;
            while rem % d == 0 {
                rem /= d;
                a += 1;
            }
            push(d, a, &mut factors);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rem > 1 {
        // remaining cofactor: fully split it
        let mut stack = vec![rem];
        let mut big: Vec<u64> = Vec::new();
        while let Some(v) = stack.pop() {
            if is_prime(v) {
                big.push(v);
            } else if let Some(d) = rho_split(v) {
                stack.push(d);
                stack.push(v / d);
            } else {
                return Err(Error::ResourceLimit {
                    what: "factor splitting iterations",
                    needed: RHO_ROUNDS + 1,
                    cap: RHO_ROUNDS,
                });
            }
        }
        big.sort_unstable();
        let mut i = 0;
        while i < big.len() {
            let q = big[i];
            let mut a = 0u32;
            while i < big.len() && big[i] == q {
                a += 1;
                i += 1;
            }
            push(q, a, &mut factors);
        }
    }
    factors.sort_unstable();
    // verification: the factorization must multiply back exactly
    let mut check = 1u64;
    for &(q, a) in &factors {
        debug_assert!(is_prime(q));
        for _ in 0..a {
            check = check
                .checked_mul(q)
                .ok_or_else(|| Error::Internal("factor product overflow".into()))?;
        }
    }
    if check != m {
        return Err(Error::Internal(format!(
            "factorization of {m} does not multiply back"
        )));
    }
    Ok(Factorization { m, factors })
}

fn lambda_prime_power(q: u64, a: u32) -> u64 {
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

/// The least universal exponent: the smallest e with b^e = 1 (mod m) for
/// every b coprime to m. lambda(1) = 1.
pub fn carmichael_lambda(m: u64) -> Result<u64> {
    let fac = factorize(m)?;
    let mut l = 1u64;
    for &(q, a) in &fac.factors {
        let lp = lambda_prime_power(q, a);
        l = lcm_checked(l, lp).expect("lambda(m) divides a value <= m");
    }
    Ok(l)
}

/// Result of a small-lambda modulus construction or window search. The
/// modulus is exact and may be far beyond machine words; the window is
/// kept in natural-log space.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaSearchResult {
    pub m: BigUint,
    pub lambda: u64,
    pub window_log_low: f64,
    pub window_log_high: f64,
    /// The auxiliary exponent L = lcm(1..y); lambda divides it.
    pub smooth_exponent_l: u64,
}

impl LambdaSearchResult {
    pub fn ln_m(&self) -> f64 {
        ln_big(&self.m)
    }
}

fn lcm_upto(y: u32) -> Result<u64> {
    let mut l = 1u64;
    for i in 2..=y as u64 {
        l = lcm_checked(l, i).ok_or_else(|| {
            Error::Overflow(format!("lcm(1..{y}) exceeds u64; use a smaller y"))
        })?;
    }
    Ok(l)
}

fn divisors_of(n: u64) -> Result<Vec<u64>> {
    let fac = factorize(n)?;
    let mut divs = vec![1u64];
    for &(q, a) in &fac.factors {
        let prev = divs.clone();
        let mut pw = 1u64;
        for _ in 0..a {
            pw *= q;
            for &d in &prev {
                divs.push(d * pw);
            }
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

/// Primes q with q-1 | L, ascending.
pub(crate) fn eps_prime_pool(l: u64) -> Result<Vec<u64>> {
    let mut qs: Vec<u64> = divisors_of(l)?
        .into_iter()
        .filter_map(|d| {
            let q = d.checked_add(1)?;
            is_prime(q).then_some(q)
        })
        .collect();
    qs.sort_unstable();
    Ok(qs)
}

/// L = lcm(1..y); m = product of every prime q with q-1 | L. lambda(m)
/// divides L by construction while m grows superexponentially in L.
pub fn eps_construct(y: u32) -> Result<LambdaSearchResult> {
    if y < 2 {
        return Err(Error::InvalidArgument("y must be >= 2".into()));
    }
    let l = lcm_upto(y)?;
    let qs = eps_prime_pool(l)?;
    let mut m = BigUint::one();
    let mut lambda = 1u64;
    for &q in &qs {
        m *= BigUint::from(q);
        lambda = lcm_checked(lambda, q - 1).expect("lcm of divisors of L divides L");
    }
    debug_assert_eq!(l % lambda, 0);
    let ln_m = ln_big(&m);
    Ok(LambdaSearchResult {
        m,
        lambda,
        window_log_low: ln_m,
        window_log_high: ln_m,
        smooth_exponent_l: l,
    })
}

#[derive(Clone, Debug)]
pub struct WindowBudget {
    /// Largest y tried for L = lcm(1..y).
    pub max_y: u32,
    /// Cap on inequality checks before giving up.
    pub max_checks: u64,
}

impl Default for WindowBudget {
    fn default() -> Self {
        WindowBudget {
            max_y: 40,
            max_checks: 100_000,
        }
    }
}

/// Search for m with log m in [log i, (log i)^c3] and
/// lambda(m) < (log m)^(c4 * logloglog m).
///
/// Candidates are ascending-prefix products over the eps prime pools;
/// adding pool primes grows m while lambda stays a divisor of L, so the
/// inequality only gets easier along a prefix. Returns None when the
/// budget is exhausted, which is a legitimate outcome for small i.
pub fn find_small_lambda_window(
    i: u64,
    c3: f64,
    c4: f64,
    budget: &WindowBudget,
) -> Result<Option<LambdaSearchResult>> {
    if i < 16 {
        return Err(Error::InvalidArgument(
            "need i >= 16 so that logloglog i > 0".into(),
        ));
    }
    if c3 <= 1.0 || c4 <= 0.0 {
        return Err(Error::InvalidArgument("need c3 > 1 and c4 > 0".into()));
    }
    let log_low = (i as f64).ln();
    let log_high = log_low.powf(c3);
    let mut checks = 0u64;
    for y in 2..=budget.max_y {
        let l = match lcm_upto(y) {
            Ok(l) => l,
            Err(_) => break, // lcm outgrew u64; candidates from larger y are out of reach
        };
        let qs = eps_prime_pool(l)?;
        let mut m = BigUint::one();
        let mut ln_m = 0f64;
        let mut lambda = 1u64;
        for &q in &qs {
            m *= BigUint::from(q);
            ln_m += (q as f64).ln();
            lambda = lcm_checked(lambda, q - 1).expect("divides L");
            if ln_m < log_low {
                continue;
            }
            if ln_m > log_high {
                break;
            }
            checks += 1;
            if checks > budget.max_checks {
                return Ok(None);
            }
            // lambda(m) < (ln m)^(c4 * lnlnln m), compared in log space
            let lnln = ln_m.ln();
            let lnlnln = lnln.ln();
            if lnlnln > 0.0 && (lambda as f64).ln() < c4 * lnlnln * lnln {
                return Ok(Some(LambdaSearchResult {
                    m,
                    lambda,
                    window_log_low: log_low,
                    window_log_high: log_high,
                    smooth_exponent_l: l,
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(12).unwrap().factors, vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(1).unwrap().factors, vec![]);
        assert_eq!(
            factorize(27720).unwrap().factors,
            vec![(2, 3), (3, 2), (5, 1), (7, 1), (11, 1)]
        );
        // needs the rho path: two primes above the trial bound
        let n = 1_000_003u64 * 1_000_033u64;
        assert_eq!(
            factorize(n).unwrap().factors,
            vec![(1_000_003, 1), (1_000_033, 1)]
        );
    }

    #[test]
    fn factorization_display() {
        assert_eq!(factorize(65520).unwrap().to_string_compact(), "2^4*3^2*5*7*13");
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(carmichael_lambda(8).unwrap(), 2);
        assert_eq!(carmichael_lambda(15).unwrap(), 4);
        assert_eq!(carmichael_lambda(1).unwrap(), 1);
        assert_eq!(carmichael_lambda(2).unwrap(), 1);
        assert_eq!(carmichael_lambda(4).unwrap(), 2);
        assert_eq!(carmichael_lambda(16).unwrap(), 4);
        assert_eq!(carmichael_lambda(42).unwrap(), 6);
        assert_eq!(carmichael_lambda(2730).unwrap(), 12);
    }

    // brute-force universal exponent for the minimality/universality checks
    fn universal(m: u64, e: u64) -> bool {
        (1..m)
            .filter(|&b| gcd(b, m) == 1)
            .all(|b| crate::arith::powmod(b, e, m) == 1)
    }

    #[test]
    fn lambda_universal_and_minimal_small() {
        for m in 2..=200u64 {
            let l = carmichael_lambda(m).unwrap();
            assert!(universal(m, l), "lambda({m})={l} not universal");
            for d in 1..l {
                if l % d == 0 {
                    assert!(!universal(m, d), "lambda({m})={l} but {d} is universal");
                }
            }
        }
    }

    #[test]
    fn lambda_divides_totient() {
        // totient sieve up to 10^4
        let max = 10_000usize;
        let mut phi: Vec<u64> = (0..=max as u64).collect();
        for p in 2..=max {
            if phi[p] == p as u64 {
                for mult in (p..=max).step_by(p) {
                    phi[mult] -= phi[mult] / p as u64;
                }
            }
        }
        for m in 1..=max {
            assert_eq!(phi[m] % carmichael_lambda(m as u64).unwrap(), 0, "m={m}");
        }
    }

    #[test]
    fn eps_construct_small() {
        let r = eps_construct(2).unwrap();
        assert_eq!(r.smooth_exponent_l, 2);
        assert_eq!(r.m, BigUint::from(6u32));
        assert_eq!(r.lambda, 2);

        let r = eps_construct(3).unwrap();
        assert_eq!(r.smooth_exponent_l, 6);
        assert_eq!(r.m, BigUint::from(42u32));
        assert_eq!(r.lambda, 6);
    }

    #[test]
    fn eps_construct_ten() {
        let r = eps_construct(10).unwrap();
        assert_eq!(r.smooth_exponent_l, 2520);
        assert_eq!(2520 % r.lambda, 0);
        assert!(r.m > BigUint::from(10u64.pow(10)));
        // frozen from the divisor enumeration: primes q with q-1 | 2520
        let expect: Vec<u64> = vec![
            2, 3, 5, 7, 11, 13, 19, 29, 31, 37, 41, 43, 61, 71, 73, 127, 181, 211, 281, 421,
            631, 2521,
        ];
        let mut m = BigUint::one();
        for &q in &expect {
            m *= BigUint::from(q);
        }
        assert_eq!(r.m, m);
        assert_eq!(r.lambda, 2520);
    }

    #[test]
    fn eps_construct_rejects_small_y_and_overflowing_y() {
        assert!(matches!(eps_construct(1), Err(Error::InvalidArgument(_))));
        assert!(matches!(eps_construct(100), Err(Error::Overflow(_))));
    }

    #[test]
    fn window_search_small_instance() {
        // i = 16, loose constants: m = 42 from the y=3 pool qualifies
        let r = find_small_lambda_window(16, 2.0, 10.0, &WindowBudget::default())
            .unwrap()
            .expect("should find a modulus");
        let ln_m = r.ln_m();
        assert!(ln_m >= r.window_log_low - 1e-9 && ln_m <= r.window_log_high + 1e-9);
        assert_eq!(r.smooth_exponent_l % r.lambda, 0);
    }

    #[test]
    fn window_search_thousand() {
        let r = find_small_lambda_window(1000, 3.0, 3.0, &WindowBudget::default())
            .unwrap()
            .expect("window [ln 1000, (ln 1000)^3] is reachable");
        let ln_m = r.ln_m();
        assert!(ln_m >= (1000f64).ln() - 1e-9);
        assert!(ln_m <= (1000f64).ln().powf(3.0) + 1e-9);
        let lnln = ln_m.ln();
        assert!((r.lambda as f64).ln() < 3.0 * lnln.ln() * lnln);
    }

    #[test]
    fn window_search_validates_inputs() {
        assert!(find_small_lambda_window(15, 2.0, 2.0, &WindowBudget::default()).is_err());
        assert!(find_small_lambda_window(100, 1.0, 2.0, &WindowBudget::default()).is_err());
    }
}
