//! Unit-coefficient linear constraints. Coefficients are supplied by affine
//! views (or, without views, by auxiliary variables), so filtering only ever
//! touches `min`, `max`, `update_min` and `update_max`.

use alloc::vec::Vec;

use crate::kernel::{Propagator, Store};
use crate::{ConstraintId, Inconsistent, PropResult, VarRef};

fn bound_sums(store: &Store, terms: &[VarRef]) -> (i64, i64) {
    terms
        .iter()
        .fold((0, 0), |(lo, hi), &x| (lo + store.min(x), hi + store.max(x)))
}

/// `sum(terms) = rhs`.
#[derive(Debug, Clone)]
pub struct LinearEq {
    terms: Vec<VarRef>,
    rhs: i64,
}

impl LinearEq {
    pub fn new(terms: Vec<VarRef>, rhs: i64) -> Self {
        LinearEq { terms, rhs }
    }
}

impl Propagator for LinearEq {
    fn name(&self) -> &'static str {
        "linear_eq"
    }

    fn attach(&mut self, id: ConstraintId, store: &mut Store) {
        for &x in &self.terms {
            store.watch(x, id);
        }
    }

    fn propagate(&mut self, store: &mut Store) -> PropResult {
        loop {
            let (lo, hi) = bound_sums(store, &self.terms);
            if lo > self.rhs || hi < self.rhs {
                return Err(Inconsistent);
            }
            let mut changed = false;
            for &x in &self.terms {
                let (xmin, xmax) = (store.min(x), store.max(x));
                let new_min = self.rhs - (hi - xmax);
                let new_max = self.rhs - (lo - xmin);
                if new_min > xmin {
                    store.update_min(x, new_min)?;
                    changed = true;
                }
                if new_max < xmax {
                    store.update_max(x, new_max)?;
                    changed = true;
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    fn is_satisfied(&self, store: &Store) -> Option<bool> {
        let mut sum = 0;
        for &x in &self.terms {
            sum += store.value(x)?;
        }
        Some(sum == self.rhs)
    }

    fn heap_bytes(&self) -> usize {
        self.terms.len() * core::mem::size_of::<VarRef>()
    }
}

/// `sum(terms) <= rhs`.
#[derive(Debug, Clone)]
pub struct LinearLeq {
    terms: Vec<VarRef>,
    rhs: i64,
}

impl LinearLeq {
    pub fn new(terms: Vec<VarRef>, rhs: i64) -> Self {
        LinearLeq { terms, rhs }
    }
}

impl Propagator for LinearLeq {
    fn name(&self) -> &'static str {
        "linear_leq"
    }

    fn attach(&mut self, id: ConstraintId, store: &mut Store) {
        for &x in &self.terms {
            store.watch(x, id);
        }
    }

    fn propagate(&mut self, store: &mut Store) -> PropResult {
        loop {
            let (lo, _) = bound_sums(store, &self.terms);
            if lo > self.rhs {
                return Err(Inconsistent);
            }
            let mut changed = false;
            for &x in &self.terms {
                let (xmin, xmax) = (store.min(x), store.max(x));
                let new_max = self.rhs - (lo - xmin);
                if new_max < xmax {
                    store.update_max(x, new_max)?;
                    changed = true;
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    fn is_satisfied(&self, store: &Store) -> Option<bool> {
        let mut sum = 0;
        for &x in &self.terms {
            sum += store.value(x)?;
        }
        Some(sum <= self.rhs)
    }

    fn heap_bytes(&self) -> usize {
        self.terms.len() * core::mem::size_of::<VarRef>()
    }
}
