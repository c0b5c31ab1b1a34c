use alloc::vec::Vec;

use crate::kernel::{Propagator, Store};
use crate::{ConstraintId, Inconsistent, PropResult, VarRef};

/// Disjunction of 0/1 literals with unit propagation. A literal `(x, true)`
/// holds when `x = 1`, `(x, false)` when `x = 0`.
#[derive(Debug, Clone)]
pub struct BoolClause {
    lits: Vec<(VarRef, bool)>,
}

impl BoolClause {
    pub fn new(lits: Vec<(VarRef, bool)>) -> Self {
        BoolClause { lits }
    }
}

#[inline]
fn truth(positive: bool) -> i64 {
    positive as i64
}

impl Propagator for BoolClause {
    fn name(&self) -> &'static str {
        "bool_clause"
    }

    fn attach(&mut self, id: ConstraintId, store: &mut Store) {
        for &(x, _) in &self.lits {
            store.watch(x, id);
        }
    }

    fn propagate(&mut self, store: &mut Store) -> PropResult {
        let mut open = None;
        let mut n_open = 0;
        for &(x, pos) in &self.lits {
            let t = truth(pos);
            if store.is_bound_to(x, t) {
                return Ok(());
            }
            if store.member(x, t) {
                n_open += 1;
                open = Some((x, t));
            }
        }
        match (n_open, open) {
            (0, _) => Err(Inconsistent),
            (1, Some((x, t))) => store.bind(x, t),
            _ => Ok(()),
        }
    }

    fn is_satisfied(&self, store: &Store) -> Option<bool> {
        let mut any = false;
        for &(x, pos) in &self.lits {
            any |= store.value(x)? == truth(pos);
        }
        Some(any)
    }

    fn heap_bytes(&self) -> usize {
        self.lits.len() * core::mem::size_of::<(VarRef, bool)>()
    }
}
