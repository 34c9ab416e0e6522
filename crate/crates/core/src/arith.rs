//! Shared modular / integer arithmetic helpers.

use num_bigint::BigUint;

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// lcm(a, b), or None on overflow.
pub(crate) fn lcm_checked(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd(a, b)).checked_mul(b)
}

/// Deterministic Miller-Rabin for u64. The base set {2,..,37} decides
/// primality for every n < 2^64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'base: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

/// Natural log of a nonzero big integer, computed from the top mantissa
/// bits so it stays accurate for values far beyond f64 range.
pub(crate) fn ln_big(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        let words = n.to_u64_digits();
        let v = words.first().copied().unwrap_or(0);
        return (v as f64).ln();
    }
    let shift = bits - 64;
    let top: BigUint = n >> shift;
    let mant = top.to_u64_digits()[0];
    (mant as f64).ln() + shift as f64 * std::f64::consts::LN_2
}
