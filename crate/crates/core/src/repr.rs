//! Exact minimal term counts for unsigned smooth sums, and the threshold
//! function F(k) derived from them.
//!
//! The table stores, for every n <= limit, the least number of elements of
//! A summing to n, one byte per entry. F(k) is the least n whose entry
//! exceeds k; sums of at most k terms of A together with 0 are exactly the
//! sums counted here.

use crate::error::{Error, Result};
use crate::smooth::{enumerate_smooth_values, PrimeSet};
use crate::ResourceLimits;
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};

/// Cell value for "needs more than term_cap terms".
pub const UNREACHABLE_MARKER: u8 = u8::MAX;

const MAGIC: &[u8; 4] = b"SMTB";
const FORMAT_VERSION: u32 = 1;

/// Outcome of a threshold query bounded by a search limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value")]
pub enum FOutcome {
    /// The least witness.
    Value(u64),
    /// Every n up to the stated limit is representable.
    ExceedsLimit(u64),
}

impl FOutcome {
    pub fn value(&self) -> Option<u64> {
        match self {
            FOutcome::Value(v) => Some(*v),
            FOutcome::ExceedsLimit(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationTable {
    primes: Vec<u64>,
    limit: u64,
    term_cap: u8,
    /// cells[n] = minimal terms for n, index 0..=limit; cells[0] = 0.
    cells: Vec<u8>,
}

/// Forward dynamic program: cells[n] = 1 + min over a in A, a <= n of
/// cells[n-a]. Entries that would exceed term_cap carry the marker; they
/// are exact up to term_cap by induction on the recurrence.
pub fn build_min_terms(
    ps: &PrimeSet,
    limit: u64,
    term_cap: u8,
    limits: &ResourceLimits,
) -> Result<RepresentationTable> {
    if limit < 1 {
        return Err(Error::InvalidArgument("limit must be >= 1".into()));
    }
    if term_cap == 0 || term_cap == UNREACHABLE_MARKER {
        return Err(Error::InvalidArgument(
            "term cap must be in [1, 254]".into(),
        ));
    }
    let bytes = limit + 1;
    if bytes > limits.mem_bytes {
        return Err(Error::ResourceLimit {
            what: "representation table bytes",
            needed: bytes,
            cap: limits.mem_bytes,
        });
    }
    let smooth = enumerate_smooth_values(ps, limit, limits)?;
    let n_usize = limit as usize;
    let mut cells = vec![UNREACHABLE_MARKER; n_usize + 1];
    cells[0] = 0;
    for n in 1..=n_usize {
        let mut best = u16::from(UNREACHABLE_MARKER);
        for &a in &smooth {
            let a = a as usize;
            if a > n {
                break;
            }
            let below = cells[n - a];
            if below != UNREACHABLE_MARKER {
                let cand = below as u16 + 1;
                if cand < best {
                    best = cand;
                    if best == 1 {
                        break;
                    }
                }
            }
        }
        cells[n] = if best <= term_cap as u16 {
            best as u8
        } else {
            UNREACHABLE_MARKER
        };
    }
    Ok(RepresentationTable {
        primes: ps.primes().to_vec(),
        limit,
        term_cap,
        cells,
    })
}

impl RepresentationTable {
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn term_cap(&self) -> u8 {
        self.term_cap
    }

    /// Minimal term count for n, or None when it exceeds the term cap.
    pub fn min_terms(&self, n: u64) -> Option<u8> {
        assert!(n <= self.limit, "n out of table range");
        let c = self.cells[n as usize];
        (c != UNREACHABLE_MARKER).then_some(c)
    }

    /// Least n in [1, limit] that is not a sum of at most k elements of A
    /// (equivalently of exactly k elements of A plus zeros).
    ///
    /// Requires k <= term_cap: a marker cell only certifies "more than
    /// term_cap terms", which decides "more than k" just for such k.
    pub fn f_of_k(&self, k: u32) -> FOutcome {
        assert!(
            k <= u32::from(self.term_cap),
            "f_of_k(k={k}) needs a table with term_cap >= k (have {})",
            self.term_cap
        );
        for n in 1..=self.limit {
            let c = self.cells[n as usize];
            if c == UNREACHABLE_MARKER || u32::from(c) > k {
                return FOutcome::Value(n);
            }
        }
        FOutcome::ExceedsLimit(self.limit)
    }

    /// F(k) for k = 1, 2, .. until the limit is exceeded (that final entry
    /// included), capped by the table's term cap.
    pub fn summary(&self) -> TableSummary {
        let mut f = Vec::new();
        for k in 1..=u32::from(self.term_cap) {
            let out = self.f_of_k(k);
            let done = matches!(out, FOutcome::ExceedsLimit(_));
            f.push(FEntry { k, outcome: out });
            if done {
                break;
            }
        }
        TableSummary {
            primes: self.primes.clone(),
            limit: self.limit,
            term_cap: self.term_cap,
            f,
        }
    }

    /// Binary layout: magic "SMTB", version u32, t u32, t primes u64,
    /// limit u64, term_cap u32, then one byte per n for n = 1..=limit
    /// (0xFF marks entries above the term cap). All integers little-endian.
    pub fn write_binary<W: Write>(&self, w: &mut W) -> Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&FORMAT_VERSION.to_le_bytes())?;
        w.write_all(&(self.primes.len() as u32).to_le_bytes())?;
        for &p in &self.primes {
            w.write_all(&p.to_le_bytes())?;
        }
        w.write_all(&self.limit.to_le_bytes())?;
        w.write_all(&u32::from(self.term_cap).to_le_bytes())?;
        w.write_all(&self.cells[1..])?;
        Ok(())
    }

    pub fn read_binary<R: Read>(r: &mut R) -> Result<Self> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        let mut u32buf = [0u8; 4];
        let mut u64buf = [0u8; 8];
        r.read_exact(&mut u32buf)?;
        if u32::from_le_bytes(u32buf) != FORMAT_VERSION {
            return Err(Error::Format("unsupported version".into()));
        }
        r.read_exact(&mut u32buf)?;
        let t = u32::from_le_bytes(u32buf) as usize;
        if t < 2 || t > 64 {
            return Err(Error::Format(format!("implausible prime count {t}")));
        }
        let mut primes = Vec::with_capacity(t);
        for _ in 0..t {
            r.read_exact(&mut u64buf)?;
            primes.push(u64::from_le_bytes(u64buf));
        }
        r.read_exact(&mut u64buf)?;
        let limit = u64::from_le_bytes(u64buf);
        r.read_exact(&mut u32buf)?;
        let term_cap = u32::from_le_bytes(u32buf);
        if term_cap == 0 || term_cap > 254 {
            return Err(Error::Format(format!("implausible term cap {term_cap}")));
        }
        let mut cells = vec![0u8; limit as usize + 1];
        r.read_exact(&mut cells[1..])?;
        Ok(RepresentationTable {
            primes,
            limit,
            term_cap: term_cap as u8,
            cells,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FEntry {
    pub k: u32,
    pub outcome: FOutcome,
}

/// JSON summary of a table: the F(k) values it determines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableSummary {
    pub primes: Vec<u64>,
    pub limit: u64,
    pub term_cap: u8,
    pub f: Vec<FEntry>,
}

/// Convenience: build a table sized for the query and return F(k).
pub fn f_of_k(ps: &PrimeSet, k: u32, n_limit: u64, limits: &ResourceLimits) -> Result<FOutcome> {
    if k < 1 || k > 254 {
        return Err(Error::InvalidArgument("k must lie in [1, 254]".into()));
    }
    let table = build_min_terms(ps, n_limit, k as u8, limits)?;
    Ok(table.f_of_k(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smooth::greedy_decompose;
    use proptest::prelude::*;

    fn limits() -> ResourceLimits {
        ResourceLimits::default()
    }

    fn p23() -> PrimeSet {
        PrimeSet::new(&[2, 3]).unwrap()
    }

    #[test]
    fn min_terms_examples() {
        let t = build_min_terms(&p23(), 100, 64, &limits()).unwrap();
        assert_eq!(t.min_terms(5), Some(2)); // 5 = 2 + 3
        assert_eq!(t.min_terms(6), Some(1)); // 6 in A
        assert_eq!(t.min_terms(23), Some(3)); // 23 = 18 + 4 + 1
    }

    #[test]
    fn no_two_term_sum_hits_23() {
        // direct oracle: no a in A with 23 - a in A
        let a: Vec<u64> = enumerate_smooth_values(&p23(), 23, &limits()).unwrap();
        for &x in &a {
            assert!(a.binary_search(&(23 - x)).is_err() || x == 23);
        }
    }

    #[test]
    fn f_examples_against_pair_oracle() {
        let ps = p23();
        let t = build_min_terms(&ps, 1000, 8, &limits()).unwrap();
        assert_eq!(t.f_of_k(1), FOutcome::Value(5));
        assert_eq!(t.f_of_k(2), FOutcome::Value(23));

        // independent oracle for k = 2: mark every a + b
        let a = enumerate_smooth_values(&ps, 1000, &limits()).unwrap();
        let mut reach = vec![false; 1001];
        reach[0] = true;
        for &x in &a {
            reach[x as usize] = true;
            for &y in &a {
                if x + y <= 1000 {
                    reach[(x + y) as usize] = true;
                }
            }
        }
        let oracle = (1..=1000).find(|&n| !reach[n as usize]).unwrap();
        assert_eq!(oracle, 23);
    }

    #[test]
    fn f_of_3_matches_meet_in_middle_oracle() {
        let ps = p23();
        let n = 2000u64;
        let t = build_min_terms(&ps, n, 8, &limits()).unwrap();
        // oracle: pair sums + one more term
        let a = enumerate_smooth_values(&ps, n, &limits()).unwrap();
        let mut two = vec![false; n as usize + 1];
        two[0] = true;
        for &x in &a {
            two[x as usize] = true;
            for &y in &a {
                if x + y <= n {
                    two[(x + y) as usize] = true;
                }
            }
        }
        let mut three = two.clone();
        for s in 0..=n as usize {
            if two[s] {
                for &x in &a {
                    let v = s + x as usize;
                    if v <= n as usize {
                        three[v] = true;
                    }
                }
            }
        }
        let oracle = (1..=n).find(|&v| !three[v as usize]);
        assert_eq!(t.f_of_k(3).value(), oracle);
        assert_eq!(t.f_of_k(3), FOutcome::Value(431));
    }

    #[test]
    fn exceeding_the_limit_is_reported() {
        let t = build_min_terms(&p23(), 20, 8, &limits()).unwrap();
        assert_eq!(t.f_of_k(3), FOutcome::ExceedsLimit(20));
    }

    #[test]
    fn table_oracle_equivalence_small() {
        // exhaustive <=3-term sums vs table entries, N = 10^4
        let ps = p23();
        let n = 10_000usize;
        let t = build_min_terms(&ps, n as u64, 3, &limits()).unwrap();
        let a = enumerate_smooth_values(&ps, n as u64, &limits()).unwrap();
        let mut best = vec![u8::MAX; n + 1];
        best[0] = 0;
        for rounds in 0..3 {
            let prev = best.clone();
            for s in 0..=n {
                if prev[s] == rounds {
                    for &x in &a {
                        let v = s + x as usize;
                        if v <= n && best[v] > rounds + 1 {
                            best[v] = rounds + 1;
                        }
                    }
                }
            }
        }
        for v in 1..=n {
            let expect = (best[v] <= 3).then_some(best[v]);
            assert_eq!(t.min_terms(v as u64), expect, "n={v}");
        }
    }

    #[test]
    fn summary_lists_f_values() {
        let t = build_min_terms(&p23(), 500, 8, &limits()).unwrap();
        let s = t.summary();
        assert_eq!(s.f[0].outcome, FOutcome::Value(5));
        assert_eq!(s.f[1].outcome, FOutcome::Value(23));
        assert_eq!(s.f[2].outcome, FOutcome::Value(431));
        assert_eq!(s.f[3].outcome, FOutcome::ExceedsLimit(500));
        assert_eq!(s.f.len(), 4);
    }

    #[test]
    fn growth_exponents_positive() {
        // c(k) = log F(k) / (k log k) for the computed thresholds; the
        // sequence is reported, positivity is all that is asserted
        let t = build_min_terms(&p23(), 100_000, 8, &limits()).unwrap();
        let mut cs = Vec::new();
        for k in 2..=4u32 {
            let FOutcome::Value(f) = t.f_of_k(k) else {
                panic!("F({k}) computable at this limit")
            };
            let c = (f as f64).ln() / (k as f64 * (k as f64).ln());
            assert!(c > 0.0);
            cs.push((k, c));
        }
        println!("growth exponents c(k): {cs:?}");
    }

    #[test]
    fn binary_round_trip() {
        let t = build_min_terms(&p23(), 777, 9, &limits()).unwrap();
        let mut buf = Vec::new();
        t.write_binary(&mut buf).unwrap();
        let back = RepresentationTable::read_binary(&mut buf.as_slice()).unwrap();
        assert_eq!(t, back);
    }

    #[test]
    fn binary_rejects_garbage() {
        let mut buf = b"NOPE".to_vec();
        buf.extend_from_slice(&[0u8; 64]);
        assert!(matches!(
            RepresentationTable::read_binary(&mut buf.as_slice()),
            Err(Error::Format(_))
        ));
    }

    proptest! {
        #[test]
        fn greedy_dominates_table(n in 1u64..5000) {
            let ps = p23();
            let t = build_min_terms(&ps, 5000, 64, &limits()).unwrap();
            let greedy = greedy_decompose(&ps, n).unwrap().len() as u8;
            prop_assert!(t.min_terms(n).unwrap() <= greedy);
        }

        #[test]
        fn superadditive(m in 1u64..2500, n in 1u64..2500) {
            let t = build_min_terms(&p23(), 5000, 64, &limits()).unwrap();
            let a = t.min_terms(m).unwrap() as u16;
            let b = t.min_terms(n).unwrap() as u16;
            prop_assert!((t.min_terms(m + n).unwrap() as u16) <= a + b);
        }

        #[test]
        fn f_monotone(k in 1u32..6) {
            let t = build_min_terms(&p23(), 2000, 8, &limits()).unwrap();
            let cur = t.f_of_k(k);
            let next = t.f_of_k(k + 1);
            // treat "exceeds" as +infinity
            match (cur, next) {
                (FOutcome::Value(a), FOutcome::Value(b)) => prop_assert!(b >= a),
                (FOutcome::ExceedsLimit(_), FOutcome::Value(_)) => prop_assert!(false),
                _ => {}
            }
        }
    }
}
