use alloc::vec::Vec;

use crate::kernel::{Propagator, Store};
use crate::{ConstraintId, Inconsistent, PropResult, VarRef};

/// Value-based forward checking: once a member of the scope is bound to `v`,
/// `v` is removed from every other member.
#[derive(Debug, Clone)]
pub struct AllDifferent {
    scope: Vec<VarRef>,
}

impl AllDifferent {
    pub fn new(scope: Vec<VarRef>) -> Self {
        AllDifferent { scope }
    }

    fn clear_value(&self, store: &mut Store, from: VarRef, v: i64) -> PropResult {
        let mut seen_self = false;
        for &y in &self.scope {
            if y == from {
                if seen_self {
                    // the same handle twice can never take distinct values
                    return Err(Inconsistent);
                }
                seen_self = true;
                continue;
            }
            store.remove(y, v)?;
        }
        Ok(())
    }
}

impl Propagator for AllDifferent {
    fn name(&self) -> &'static str {
        "alldifferent"
    }

    fn attach(&mut self, id: ConstraintId, store: &mut Store) {
        for &x in &self.scope {
            store.watch_value(x, id);
        }
    }

    fn propagate(&mut self, store: &mut Store) -> PropResult {
        loop {
            let before: usize = self.scope.iter().map(|&x| store.size(x)).sum();
            for &x in &self.scope {
                if let Some(v) = store.value(x) {
                    self.clear_value(store, x, v)?;
                }
            }
            let after: usize = self.scope.iter().map(|&x| store.size(x)).sum();
            if after == before {
                return Ok(());
            }
        }
    }

    fn on_value_event(&mut self, store: &mut Store, source: VarRef, _value: i64) -> PropResult {
        match store.value(source) {
            Some(v) => self.clear_value(store, source, v),
            None => Ok(()),
        }
    }

    fn is_satisfied(&self, store: &Store) -> Option<bool> {
        let mut vals = Vec::with_capacity(self.scope.len());
        for &x in &self.scope {
            vals.push(store.value(x)?);
        }
        vals.sort_unstable();
        Some(vals.windows(2).all(|w| w[0] != w[1]))
    }

    fn heap_bytes(&self) -> usize {
        self.scope.len() * core::mem::size_of::<VarRef>()
    }
}
