//! Variable views: stateless adapters that delegate domain operations *and*
//! constraint watching to the variable they are defined over.
//!
//! A variable view stores neither a domain nor watch lists. Watching `c` on a
//! view pushes `(c, view)` down the chain to the plain variable, which later
//! translates removed values with [`Store::map`].

use crate::fns::{AffineFn, InjectiveViewFn};
use crate::kernel::Store;
use crate::variables::{EngineMode, NodeKind, Shape, WatchList};
use crate::{ConstraintId, Error, PropResult, VarRef};
use alloc::vec::Vec;

impl Store {
    /// `y = x + k` as a variable view.
    pub fn shift_view(&mut self, x: VarRef, k: i64) -> Result<VarRef, Error> {
        self.variable_view(x, AffineFn::shift(k))
    }

    /// `y = a*x + b` as a variable view; `a` must be non-zero.
    pub fn affine_view(&mut self, x: VarRef, a: i64, b: i64) -> Result<VarRef, Error> {
        self.variable_view(x, AffineFn::new(a, b)?)
    }

    fn variable_view(&mut self, x: VarRef, f: AffineFn) -> Result<VarRef, Error> {
        if self.mode != EngineMode::VariableView {
            return Err(Error::UnsupportedMode {
                view: "variable view",
                mode: self.mode,
            });
        }
        Ok(self.push_node(
            NodeKind::Affine { base: x, f },
            WatchList::Ids(Vec::new()),
            WatchList::Ids(Vec::new()),
        ))
    }

    /// Pushes `(c, watcher)` onto the variable-watch list of the plain
    /// variable under `x`.
    pub(crate) fn watch_via(&mut self, x: VarRef, c: ConstraintId, watcher: VarRef) {
        match self.shape(x) {
            Shape::Affine { base, .. } => self.watch_via(base, c, watcher),
            _ => {
                let list = &mut self.nodes[x.index()].sc;
                let WatchList::Pairs(pairs) = list else {
                    unreachable!("variable-view host without pair list")
                };
                if !pairs.contains(&(c, watcher)) {
                    pairs.push((c, watcher));
                    self.mem.add(core::mem::size_of::<(ConstraintId, VarRef)>());
                }
            }
        }
    }

    /// Value-watch counterpart of [`Store::watch_via`]. `f` accumulates the
    /// composition of view functions from the plain variable up to `watcher`;
    /// it is only stored when composed value watches are enabled.
    pub(crate) fn watch_value_via(&mut self, x: VarRef, c: ConstraintId, watcher: VarRef, f: AffineFn) {
        match self.shape(x) {
            Shape::Affine { base, f: inner } => self.watch_value_via(base, c, watcher, f.compose(inner)),
            _ => match &mut self.nodes[x.index()].scv {
                WatchList::Pairs(pairs) => {
                    if !pairs.contains(&(c, watcher)) {
                        pairs.push((c, watcher));
                        self.mem.add(core::mem::size_of::<(ConstraintId, VarRef)>());
                    }
                }
                WatchList::Triples(triples) => {
                    if !triples.iter().any(|t| t.0 == c && t.1 == watcher) {
                        triples.push((c, watcher, f));
                        self.mem.add(core::mem::size_of::<(ConstraintId, VarRef, AffineFn)>());
                    }
                }
                WatchList::Ids(_) => unreachable!("variable-view host without pair list"),
            },
        }
    }

    pub(crate) fn injective_member(&self, base: VarRef, f: AffineFn, v: i64) -> bool {
        match f.inverse(v) {
            Some(w) => self.member(base, w),
            None => false,
        }
    }

    pub(crate) fn injective_remove(&mut self, base: VarRef, f: AffineFn, v: i64) -> PropResult {
        match f.inverse(v) {
            Some(w) => self.remove(base, w),
            None => Ok(()),
        }
    }

    pub(crate) fn injective_min(&self, base: VarRef, f: AffineFn) -> i64 {
        if f.coefficient() > 0 {
            f.forward(self.min(base))
        } else {
            f.forward(self.max(base))
        }
    }

    pub(crate) fn injective_max(&self, base: VarRef, f: AffineFn) -> i64 {
        if f.coefficient() > 0 {
            f.forward(self.max(base))
        } else {
            f.forward(self.min(base))
        }
    }
}
