//! Minimal signed representation lengths (terms from A and -A), the
//! signed threshold function, p-adic values, and the checker for the
//! four hypotheses of the S-unit finiteness criterion.
//!
//! The signed search runs a layer-synchronous reachability sweep over the
//! integer window [-B, B]: layer d holds every integer expressible as a
//! sum of at most d signed smooth terms of magnitude at most B. Any
//! multiset of terms with |a_i| <= B and |sum| <= B can be ordered so each
//! partial sum stays inside [-B, B] (pick an opposite-signed term whenever
//! the running sum and remaining terms allow it), so clipping at the
//! window edges loses no representations.

use crate::bits::Bitset;
use crate::error::{Error, Result};
use crate::repr::FOutcome;
use crate::smooth::{enumerate_smooth_values, is_smooth, PrimeSet, SmoothNumber};
use crate::ResourceLimits;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Cumulative reachability layers over [-bound, bound].
pub struct SignedReach {
    bound: u64,
    /// layers[d] = integers reachable with at most d terms; bit i is the
    /// integer i - bound.
    layers: Vec<Bitset>,
    /// True when the last two layers coincide, i.e. reachability is closed.
    stabilized: bool,
}

fn window_checks(bound: u64, layer_count: u64, limits: &ResourceLimits) -> Result<usize> {
    let states = bound
        .checked_mul(2)
        .and_then(|v| v.checked_add(1))
        .ok_or_else(|| Error::Overflow("state window exceeds u64".into()))?;
    if states > limits.state_cap {
        return Err(Error::ResourceLimit {
            what: "signed search states",
            needed: states,
            cap: limits.state_cap,
        });
    }
    let bytes = (states / 8 + 1).saturating_mul(layer_count + 1);
    if bytes > limits.mem_bytes {
        return Err(Error::ResourceLimit {
            what: "signed search layer bytes",
            needed: bytes,
            cap: limits.mem_bytes,
        });
    }
    Ok(states as usize)
}

/// Expand reachability for `max_len` layers (or until stable).
pub fn signed_reach(
    ps: &PrimeSet,
    bound: u64,
    max_len: u32,
    limits: &ResourceLimits,
) -> Result<SignedReach> {
    if bound < 1 {
        return Err(Error::InvalidArgument("bound must be >= 1".into()));
    }
    let states = window_checks(bound, max_len as u64, limits)?;
    let gens = enumerate_smooth_values(ps, bound, limits)?;
    let mut zero = Bitset::new(states);
    zero.set(bound as usize);
    let mut layers = vec![zero];
    let mut stabilized = false;
    for _ in 1..=max_len {
        let prev = layers.last().unwrap();
        let mut next = prev.clone();
        for &a in &gens {
            next.or_shl(prev, a as usize);
            next.or_shr(prev, a as usize);
        }
        if &next == prev {
            stabilized = true;
            break;
        }
        layers.push(next);
    }
    Ok(SignedReach {
        bound,
        layers,
        stabilized,
    })
}

impl SignedReach {
    pub fn bound(&self) -> u64 {
        self.bound
    }

    fn bit_of(&self, n: i64) -> Option<usize> {
        let b = self.bound as i64;
        if n < -b || n > b {
            return None;
        }
        Some((n + b) as usize)
    }

    /// Minimal term count for n within the expanded layers, if reached.
    pub fn distance(&self, n: i64) -> Option<u32> {
        let bit = self.bit_of(n)?;
        self.layers
            .iter()
            .position(|l| l.get(bit))
            .map(|d| d as u32)
    }

    /// True when n is NOT reachable with at most k terms. Decidable for
    /// any k once the sweep stabilized, otherwise only for k within the
    /// expanded layers.
    pub fn unreachable_within(&self, n: i64, k: u32) -> bool {
        debug_assert!(
            self.stabilized || (k as usize) < self.layers.len(),
            "k exceeds the expanded layers"
        );
        let Some(bit) = self.bit_of(n) else {
            return true;
        };
        let d = (k as usize).min(self.layers.len() - 1);
        !self.layers[d].get(bit)
    }
}

/// One signed term of a representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedTerm {
    pub term: SmoothNumber,
    pub negative: bool,
}

/// Search outcome for one target. `certified` is set only when the sweep
/// exhausted every representation with fewer terms under `magnitude_bound`
/// AND the bound reached the certification threshold n^2; even then the
/// value is exact only under the magnitude-bound hypothesis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedSearchResult {
    pub n: i64,
    pub length: Option<u32>,
    pub terms: Vec<SignedTerm>,
    pub magnitude_bound: u64,
    pub certified: bool,
}

fn certification_threshold(n: i64) -> u64 {
    n.unsigned_abs().saturating_mul(n.unsigned_abs())
}

/// Minimal l <= length_cap with n a sum of l terms from A or -A, each of
/// magnitude at most `bound`.
pub fn min_terms_signed(
    ps: &PrimeSet,
    n: i64,
    bound: u64,
    length_cap: u32,
    limits: &ResourceLimits,
) -> Result<SignedSearchResult> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be nonzero".into()));
    }
    if bound < n.unsigned_abs() {
        return Err(Error::InvalidArgument(format!(
            "bound {bound} is below |n| = {}",
            n.unsigned_abs()
        )));
    }
    if length_cap == 0 {
        return Err(Error::InvalidArgument("length cap must be >= 1".into()));
    }
    let reach = signed_reach(ps, bound, length_cap, limits)?;
    let certified = bound >= certification_threshold(n);
    let Some(dist) = reach.distance(n).filter(|&d| d <= length_cap) else {
        return Ok(SignedSearchResult {
            n,
            length: None,
            terms: Vec::new(),
            magnitude_bound: bound,
            certified,
        });
    };
    // Backtrack a witness: at each layer pick the first generator (value
    // ascending, positive sign first) that steps into the previous layer.
    let gens = enumerate_smooth_values(ps, bound, limits)?;
    let mut terms = Vec::new();
    let mut state = n;
    for d in (1..=dist).rev() {
        let prev = &reach.layers[d as usize - 1];
        let mut found = false;
        'scan: for &a in &gens {
            for negative in [false, true] {
                let step = if negative { -(a as i64) } else { a as i64 };
                let back = state - step;
                if back.unsigned_abs() <= bound && prev.get((back + bound as i64) as usize) {
                    terms.push(SignedTerm {
                        term: SmoothNumber::from_exponents(
                            ps,
                            &is_smooth(ps, a).expect("generator is smooth"),
                        )?,
                        negative,
                    });
                    state = back;
                    found = true;
                    break 'scan;
                }
            }
        }
        if !found {
            return Err(Error::Internal("witness backtrack lost the path".into()));
        }
    }
    debug_assert_eq!(state, 0);
    terms.sort_by(|a, b| {
        b.term
            .value()
            .cmp(&a.term.value())
            .then(a.negative.cmp(&b.negative))
    });
    Ok(SignedSearchResult {
        n,
        length: Some(dist),
        terms,
        magnitude_bound: bound,
        certified,
    })
}

/// Least n <= n_limit with no signed representation of at most k terms of
/// magnitude <= bound. The certified flag is bound >= n_limit^2; see
/// `SignedSearchResult` for what certification does and does not claim.
pub fn f_pm_of_k(
    ps: &PrimeSet,
    k: u32,
    n_limit: u64,
    bound: u64,
    limits: &ResourceLimits,
) -> Result<(FOutcome, bool)> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    if n_limit < 1 {
        return Err(Error::InvalidArgument("limit must be >= 1".into()));
    }
    if bound < n_limit {
        return Err(Error::InvalidArgument(format!(
            "bound {bound} is below the search limit {n_limit}"
        )));
    }
    let reach = signed_reach(ps, bound, k, limits)?;
    let certified = bound >= n_limit.saturating_mul(n_limit);
    for n in 1..=n_limit {
        if reach.unreachable_within(n as i64, k) {
            return Ok((FOutcome::Value(n), certified));
        }
    }
    Ok((FOutcome::ExceedsLimit(n_limit), certified))
}

/// |x| p^{-r} with p^r the exact power of p in x, as an exact rational
/// (an integer whenever x is an integer).
pub fn padic_value(x: i64, p: u64) -> Result<BigRational> {
    if x == 0 {
        return Err(Error::InvalidArgument(
            "p-adic value of 0 is undefined".into(),
        ));
    }
    if !crate::arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut v = x.unsigned_abs();
    while v % p == 0 {
        v /= p;
    }
    Ok(BigRational::from_integer(BigInt::from(v)))
}

/// A tuple (x_0, .., x_l) with the finiteness-criterion parameters: the
/// auxiliary prime set S_0 and the constants c > 0 and 0 <= d < 1.
#[derive(Clone, Debug)]
pub struct EvertseTuple {
    pub entries: Vec<i64>,
    pub s0: PrimeSet,
    pub c: BigRational,
    pub d: BigRational,
}

/// Verdict on the four hypotheses:
/// (a) the entries sum to zero;
/// (b) no proper nonempty subset of the entries sums to zero;
/// (c) gcd of the entries is 1;
/// (d) prod_j (|x_j| prod_{p in S0} |x_j|_p) <= c (max_j |x_j|)^d,
///     evaluated exactly (the inner factor is the S0-free kernel of x_j).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvertseVerdict {
    pub zero_sum: bool,
    pub no_vanishing_subsum: bool,
    pub gcd_one: bool,
    pub product_bound: bool,
    /// Decimal value of the left-hand product of (d), when defined.
    pub product: Option<String>,
    pub max_abs: u64,
}

impl EvertseVerdict {
    pub fn all_hold(&self) -> bool {
        self.zero_sum && self.no_vanishing_subsum && self.gcd_one && self.product_bound
    }
}

const EVERTSE_MAX_L: usize = 20;

pub fn check_evertse_conditions(tuple: &EvertseTuple) -> Result<EvertseVerdict> {
    let xs = &tuple.entries;
    if xs.len() < 2 {
        return Err(Error::InvalidArgument(
            "need at least two entries (l >= 1)".into(),
        ));
    }
    let l = xs.len() - 1;
    if l > EVERTSE_MAX_L {
        return Err(Error::ResourceLimit {
            what: "subsum enumeration entries (l)",
            needed: l as u64,
            cap: EVERTSE_MAX_L as u64,
        });
    }
    if tuple.c <= BigRational::zero() {
        return Err(Error::InvalidArgument("c must be positive".into()));
    }
    if tuple.d < BigRational::zero() || tuple.d >= BigRational::one() {
        return Err(Error::InvalidArgument("d must lie in [0, 1)".into()));
    }

    let total: i128 = xs.iter().map(|&x| x as i128).sum();
    let zero_sum = total == 0;

    // exhaustive over the 2^(l+1) - 2 proper nonempty subsets
    let full: u32 = xs.len() as u32;
    let mut no_vanishing_subsum = true;
    'masks: for mask in 1..((1u32 << full) - 1) {
        let mut s: i128 = 0;
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            s += xs[i] as i128;
            m &= m - 1;
        }
        if s == 0 {
            no_vanishing_subsum = false;
            break 'masks;
        }
    }

    let gcd_one = xs
        .iter()
        .fold(0u64, |g, &x| crate::arith::gcd(g, x.unsigned_abs()))
        == 1;

    let max_abs = xs.iter().map(|&x| x.unsigned_abs()).max().unwrap();

    // (d): zero entries are reported as a failed bound, per the contract
    let (product_bound, product) = if xs.iter().any(|&x| x == 0) {
        (false, None)
    } else {
        let mut lhs = BigUint::one();
        for &x in xs {
            let mut v = x.unsigned_abs();
            for &p in tuple.s0.primes() {
                while v % p == 0 {
                    v /= p;
                }
            }
            lhs *= BigUint::from(v);
        }
        // lhs <= (nc/dc) * M^(nd/dd)  <=>  (lhs*dc)^dd <= nc^dd * M^nd
        let nc = tuple.c.numer().magnitude().clone();
        let dc = tuple.c.denom().magnitude().clone();
        let nd = biguint_to_u32(tuple.d.numer().magnitude(), "numerator of d")?;
        let dd = biguint_to_u32(tuple.d.denom().magnitude(), "denominator of d")?;
        let m = BigUint::from(max_abs);
        let left = (&lhs * &dc).pow(dd);
        let right = nc.pow(dd) * m.pow(nd);
        (left <= right, Some(lhs.to_string()))
    };

    Ok(EvertseVerdict {
        zero_sum,
        no_vanishing_subsum,
        gcd_one,
        product_bound,
        product,
        max_abs,
    })
}

fn biguint_to_u32(v: &BigUint, what: &str) -> Result<u32> {
    u32::try_from(v.clone()).map_err(|_| Error::InvalidArgument(format!("{what} is too large")))
}
