//! Channeling propagators used when expressions are flattened into auxiliary
//! variables. Both are domain consistent, so an auxiliary variable always
//! holds exactly the values the corresponding view would expose.

use crate::fns::{AffineFn, InjectiveViewFn};
use crate::kernel::{Propagator, Store};
use crate::{ConstraintId, PropResult, VarRef};

/// `b <=> (x = i)` with `b` a 0/1 variable.
#[derive(Debug, Clone)]
pub struct ReifEqChannel {
    b: VarRef,
    x: VarRef,
    i: i64,
}

impl ReifEqChannel {
    pub fn new(b: VarRef, x: VarRef, i: i64) -> Self {
        ReifEqChannel { b, x, i }
    }
}

impl Propagator for ReifEqChannel {
    fn name(&self) -> &'static str {
        "reif_eq"
    }

    fn attach(&mut self, id: ConstraintId, store: &mut Store) {
        store.watch(self.b, id);
        store.watch(self.x, id);
    }

    fn propagate(&mut self, store: &mut Store) -> PropResult {
        let (b, x, i) = (self.b, self.x, self.i);
        loop {
            let before = (store.size(b), store.size(x));
            if !store.member(x, i) {
                store.remove(b, 1)?;
            }
            if store.is_bound_to(x, i) {
                store.remove(b, 0)?;
            }
            if !store.member(b, 1) {
                store.remove(x, i)?;
            }
            if !store.member(b, 0) {
                store.bind(x, i)?;
            }
            if (store.size(b), store.size(x)) == before {
                return Ok(());
            }
        }
    }

    fn is_satisfied(&self, store: &Store) -> Option<bool> {
        let b = store.value(self.b)?;
        let x = store.value(self.x)?;
        Some(b == (x == self.i) as i64)
    }
}

/// `y = f(x)` for an injective affine `f`, value-based in both directions.
#[derive(Debug, Clone)]
pub struct AffineChannel {
    x: VarRef,
    y: VarRef,
    f: AffineFn,
}

impl AffineChannel {
    pub fn new(x: VarRef, y: VarRef, f: AffineFn) -> Self {
        AffineChannel { x, y, f }
    }
}

impl Propagator for AffineChannel {
    fn name(&self) -> &'static str {
        "affine_channel"
    }

    fn attach(&mut self, id: ConstraintId, store: &mut Store) {
        store.watch_value(self.x, id);
        store.watch_value(self.y, id);
    }

    fn propagate(&mut self, store: &mut Store) -> PropResult {
        for w in store.values(self.y) {
            let supported = match self.f.inverse(w) {
                Some(v) => store.member(self.x, v),
                None => false,
            };
            if !supported {
                store.remove(self.y, w)?;
            }
        }
        for v in store.values(self.x) {
            if !store.member(self.y, self.f.forward(v)) {
                store.remove(self.x, v)?;
            }
        }
        Ok(())
    }

    fn on_value_event(&mut self, store: &mut Store, source: VarRef, value: i64) -> PropResult {
        if source == self.x {
            store.remove(self.y, self.f.forward(value))
        } else {
            match self.f.inverse(value) {
                Some(v) => store.remove(self.x, v),
                None => Ok(()),
            }
        }
    }

    fn is_satisfied(&self, store: &Store) -> Option<bool> {
        Some(store.value(self.y)? == self.f.forward(store.value(self.x)?))
    }
}
