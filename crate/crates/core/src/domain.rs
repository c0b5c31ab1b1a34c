//! Sparse-set integer domains over a fixed universe.
//!
//! Members occupy the prefix `dense[..size]`. Removal swaps the value past the
//! boundary and decrements `size`, so restoring the size slot on backtrack
//! restores the set. Bounds are kept in their own reversible slots.

use alloc::vec::Vec;

use crate::trail::{SlotId, Trail};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RemoveOutcome {
    Removed,
    Absent,
    Wipeout,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BindOutcome {
    Bound { removed: Vec<i64> },
    Wipeout,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundOutcome {
    Changed { removed: Vec<i64> },
    NoChange,
    Wipeout,
}

#[derive(Debug, Clone)]
pub struct IntDomain {
    lo: i64,
    hi: i64,
    dense: Vec<i64>,
    index: Vec<u32>,
    size: SlotId,
    min: SlotId,
    max: SlotId,
}

impl IntDomain {
    /// Domain holding every integer of `lo..=hi`.
    pub fn interval(trail: &mut Trail, lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "empty universe {lo}..={hi}");
        let n = (hi - lo + 1) as usize;
        IntDomain {
            lo,
            hi,
            dense: (lo..=hi).collect(),
            index: (0..n as u32).collect(),
            size: trail.new_slot(n as i64),
            min: trail.new_slot(lo),
            max: trail.new_slot(hi),
        }
    }

    /// Domain holding exactly `values`, with the universe spanning their hull.
    pub fn from_values(trail: &mut Trail, values: &[i64]) -> Self {
        let lo = *values.iter().min().expect("empty value set");
        let hi = *values.iter().max().unwrap();
        let mut dom = Self::interval(trail, lo, hi);
        for v in lo..=hi {
            if !values.contains(&v) {
                dom.remove(trail, v);
            }
        }
        dom
    }

    pub fn universe(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    #[inline]
    pub fn size(&self, trail: &Trail) -> usize {
        trail.get(self.size) as usize
    }

    #[inline]
    pub fn min(&self, trail: &Trail) -> i64 {
        trail.get(self.min)
    }

    #[inline]
    pub fn max(&self, trail: &Trail) -> i64 {
        trail.get(self.max)
    }

    #[inline]
    pub fn member(&self, trail: &Trail, v: i64) -> bool {
        if v < self.lo || v > self.hi {
            return false;
        }
        (self.index[(v - self.lo) as usize] as usize) < self.size(trail)
    }

    pub fn is_bound_to(&self, trail: &Trail, v: i64) -> bool {
        self.size(trail) == 1 && self.member(trail, v)
    }

    /// Current members in increasing order.
    pub fn values(&self, trail: &Trail) -> Vec<i64> {
        let mut out: Vec<i64> = self.dense[..self.size(trail)].to_vec();
        out.sort_unstable();
        out
    }

    pub fn remove(&mut self, trail: &mut Trail, v: i64) -> RemoveOutcome {
        if !self.member(trail, v) {
            return RemoveOutcome::Absent;
        }
        let size = self.size(trail);
        if size == 1 {
            return RemoveOutcome::Wipeout;
        }
        let last = size - 1;
        let at = self.index[(v - self.lo) as usize] as usize;
        let moved = self.dense[last];
        self.dense.swap(at, last);
        self.index[(moved - self.lo) as usize] = at as u32;
        self.index[(v - self.lo) as usize] = last as u32;
        trail.set(self.size, last as i64);

        if v == self.min(trail) {
            let mut m = v + 1;
            while !self.member(trail, m) {
                m += 1;
            }
            trail.set(self.min, m);
        }
        if v == self.max(trail) {
            let mut m = v - 1;
            while !self.member(trail, m) {
                m -= 1;
            }
            trail.set(self.max, m);
        }
        RemoveOutcome::Removed
    }

    pub fn bind(&mut self, trail: &mut Trail, v: i64) -> BindOutcome {
        if !self.member(trail, v) {
            return BindOutcome::Wipeout;
        }
        let removed: Vec<i64> = self
            .values(trail)
            .into_iter()
            .filter(|&w| w != v)
            .collect();
        for &w in &removed {
            self.remove(trail, w);
        }
        BindOutcome::Bound { removed }
    }

    pub fn update_min(&mut self, trail: &mut Trail, v: i64) -> BoundOutcome {
        if v <= self.min(trail) {
            return BoundOutcome::NoChange;
        }
        if v > self.max(trail) {
            return BoundOutcome::Wipeout;
        }
        let removed: Vec<i64> = (self.min(trail)..v)
            .filter(|&w| self.member(trail, w))
            .collect();
        for &w in &removed {
            self.remove(trail, w);
        }
        BoundOutcome::Changed { removed }
    }

    pub fn update_max(&mut self, trail: &mut Trail, v: i64) -> BoundOutcome {
        if v >= self.max(trail) {
            return BoundOutcome::NoChange;
        }
        if v < self.min(trail) {
            return BoundOutcome::Wipeout;
        }
        let removed: Vec<i64> = (v + 1..=self.max(trail))
            .filter(|&w| self.member(trail, w))
            .collect();
        for &w in &removed {
            self.remove(trail, w);
        }
        BoundOutcome::Changed { removed }
    }

    /// Bytes held by the sparse-set arrays.
    pub fn heap_bytes(&self) -> usize {
        self.dense.len() * core::mem::size_of::<i64>() + self.index.len() * core::mem::size_of::<u32>()
    }
}
