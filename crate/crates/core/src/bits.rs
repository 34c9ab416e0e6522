//! Fixed-width bitset with the shifted-OR primitives used by the residue
//! sumset and the signed reachability search.

const WORD: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Bitset {
    len: usize,
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    #[allow(dead_code)] // exercised by tests
    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the first zero bit, if any.
    pub fn first_zero(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != u64::MAX {
                let bit = wi * WORD + (!w).trailing_zeros() as usize;
                if bit < self.len {
                    return Some(bit);
                }
            }
        }
        None
    }

    /// First `max` zero-bit indices in ascending order.
    pub fn zeros(&self, max: usize) -> Vec<usize> {
        let mut out = Vec::new();
        'outer: for (wi, &w) in self.words.iter().enumerate() {
            if w == u64::MAX {
                continue;
            }
            for b in 0..WORD {
                let i = wi * WORD + b;
                if i >= self.len {
                    break 'outer;
                }
                if w >> b & 1 == 0 {
                    out.push(i);
                    if out.len() == max {
                        break 'outer;
                    }
                }
            }
        }
        out
    }

    fn mask_tail(&mut self) {
        let extra = self.words.len() * WORD - self.len;
        if extra > 0 {
            let last = self.words.len() - 1;
            self.words[last] &= u64::MAX >> extra;
        }
    }

    /// self |= (src << s), bits shifted past the end are dropped.
    pub fn or_shl(&mut self, src: &Bitset, s: usize) {
        debug_assert_eq!(self.len, src.len);
        if s >= self.len {
            return;
        }
        let (off, sh) = (s / WORD, s % WORD);
        let n = self.words.len();
        if sh == 0 {
            for i in (off..n).rev() {
                self.words[i] |= src.words[i - off];
            }
        } else {
            for i in (off..n).rev() {
                let mut w = src.words[i - off] << sh;
                if i > off {
                    w |= src.words[i - off - 1] >> (WORD - sh);
                }
                self.words[i] |= w;
            }
        }
        self.mask_tail();
    }

    /// self |= (src >> s), bits shifted below zero are dropped.
    pub fn or_shr(&mut self, src: &Bitset, s: usize) {
        debug_assert_eq!(self.len, src.len);
        if s >= self.len {
            return;
        }
        let (off, sh) = (s / WORD, s % WORD);
        let n = self.words.len();
        if sh == 0 {
            for i in 0..n - off {
                self.words[i] |= src.words[i + off];
            }
        } else {
            for i in 0..n - off {
                let mut w = src.words[i + off] >> sh;
                if i + off + 1 < n {
                    w |= src.words[i + off + 1] << (WORD - sh);
                }
                self.words[i] |= w;
            }
        }
    }

    /// self |= rotate(src, r) over the cyclic group Z_len.
    pub fn or_rotate(&mut self, src: &Bitset, r: usize) {
        debug_assert_eq!(self.len, src.len);
        let r = r % self.len;
        if r == 0 {
            for (a, b) in self.words.iter_mut().zip(&src.words) {
                *a |= b;
            }
            return;
        }
        self.or_shl(src, r);
        self.or_shr(src, self.len - r);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn to_set(b: &Bitset) -> Vec<usize> {
        (0..b.len()).filter(|&i| b.get(i)).collect()
    }

    #[test]
    fn rotate_matches_naive() {
        for len in [1usize, 5, 63, 64, 65, 130, 200] {
            let mut src = Bitset::new(len);
            for i in (0..len).step_by(3) {
                src.set(i);
            }
            src.set(len - 1);
            for r in [0usize, 1, 7, 63, 64, 65, len - 1] {
                let r = r % len;
                let mut dst = Bitset::new(len);
                dst.or_rotate(&src, r);
                let expect: Vec<usize> = {
                    let mut v: Vec<usize> =
                        to_set(&src).into_iter().map(|i| (i + r) % len).collect();
                    v.sort_unstable();
                    v
                };
                assert_eq!(to_set(&dst), expect, "len={len} r={r}");
            }
        }
    }

    #[test]
    fn shifts_clip_at_edges() {
        let mut src = Bitset::new(100);
        src.set(0);
        src.set(99);
        let mut d = Bitset::new(100);
        d.or_shl(&src, 10);
        assert_eq!(to_set(&d), vec![10]);
        let mut d = Bitset::new(100);
        d.or_shr(&src, 10);
        assert_eq!(to_set(&d), vec![89]);
    }

    #[test]
    fn zeros_and_count() {
        let mut b = Bitset::new(70);
        for i in 0..70 {
            if i != 3 && i != 68 {
                b.set(i);
            }
        }
        assert_eq!(b.count(), 68);
        assert_eq!(b.first_zero(), Some(3));
        assert_eq!(b.zeros(10), vec![3, 68]);
    }
}
