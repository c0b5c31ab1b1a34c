//! Brute-force oracles and small helpers shared by the integration tests.
//! Nothing here uses the engine.

#![allow(dead_code)]

use std::collections::BTreeSet;

pub mod checks;

/// Calls `f` on every vector in the box `ranges[0] x ... x ranges[n-1]`.
pub fn for_each_assignment(ranges: &[(i64, i64)], mut f: impl FnMut(&[i64])) {
    if ranges.iter().any(|&(lo, hi)| lo > hi) {
        return;
    }
    let mut cur: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        f(&cur);
        let mut i = 0;
        loop {
            if i == cur.len() {
                return;
            }
            if cur[i] < ranges[i].1 {
                cur[i] += 1;
                break;
            }
            cur[i] = ranges[i].0;
            i += 1;
        }
    }
}

pub fn magic_series(n: usize) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    for_each_assignment(&vec![(0, n as i64 - 1); n], |s| {
        let ok = (0..n).all(|i| s.iter().filter(|&&v| v == i as i64).count() as i64 == s[i]);
        if ok {
            out.insert(s.to_vec());
        }
    });
    out
}

/// Langford pairings as first-occurrence positions `p_1..p_n`; the second
/// copy of `i` is at `p_i + i + 1`.
pub fn langford(n: usize) -> BTreeSet<Vec<i64>> {
    let len = 2 * n as i64;
    let mut out = BTreeSet::new();
    for_each_assignment(&vec![(0, len - 1); n], |p| {
        let mut seen = vec![false; len as usize];
        for (idx, &first) in p.iter().enumerate() {
            let second = first + idx as i64 + 2;
            if second >= len || seen[first as usize] || seen[second as usize] {
                return;
            }
            seen[first as usize] = true;
            seen[second as usize] = true;
        }
        out.insert(p.to_vec());
    });
    out
}

pub fn knapsack(weights: &[i64], target: i64, ranges: &[(i64, i64)]) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    for_each_assignment(ranges, |x| {
        if x.iter().zip(weights).map(|(a, b)| a * b).sum::<i64>() == target {
            out.insert(x.to_vec());
        }
    });
    out
}

/// Tiny deterministic generator so randomized tests need no seed plumbing.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next_u64() % (hi - lo + 1) as u64) as i64
    }

    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.next_u64() % den < num
    }
}
