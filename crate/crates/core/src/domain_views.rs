//! Domain views: views that delegate only domain operations and keep their
//! own watch lists.
//!
//! The viewed variable (or view) records each domain view in its `views` list
//! and notifies it of every removed value. The view translates the value once
//! through its own function, schedules its watchers with the translated value,
//! and forwards the translated value to the views stacked on top of it.
//!
//! Bound updates on injective views use monotonicity: a monotone function
//! maps `updateMin` to `updateMin` on the underlying variable, an
//! anti-monotone one to `updateMax`. When the bound has no exact preimage it
//! is first rounded to the nearest representable view value.

use alloc::vec::Vec;

use crate::fns::{AffineFn, BaseBound, InjectiveViewFn};
use crate::kernel::Store;
use crate::variables::{EngineMode, NodeKind, Shape, WatchList};
use crate::{Error, PropResult, VarRef};

impl Store {
    /// `y = x + k` as a domain view.
    pub fn shift_dview(&mut self, x: VarRef, k: i64) -> Result<VarRef, Error> {
        self.domain_view(x, AffineFn::shift(k))
    }

    /// `y = a*x + b` as a domain view; `a` must be non-zero.
    pub fn affine_dview(&mut self, x: VarRef, a: i64, b: i64) -> Result<VarRef, Error> {
        self.domain_view(x, AffineFn::new(a, b)?)
    }

    fn domain_view(&mut self, x: VarRef, f: AffineFn) -> Result<VarRef, Error> {
        let y = self.new_domain_view_node(NodeKind::Affine { base: x, f }, "domain view")?;
        Ok(y)
    }

    /// Creates a view node with local watch lists and registers it on its base.
    pub(crate) fn new_domain_view_node(&mut self, kind: NodeKind, what: &'static str) -> Result<VarRef, Error> {
        if self.mode != EngineMode::DomainView {
            return Err(Error::UnsupportedMode { view: what, mode: self.mode });
        }
        let base = match &kind {
            NodeKind::Affine { base, .. } | NodeKind::Literal { base, .. } | NodeKind::Modulo { base, .. } => *base,
            NodeKind::Plain(_) => unreachable!(),
        };
        let y = self.push_node(kind, WatchList::Ids(Vec::new()), WatchList::Ids(Vec::new()));
        self.add_view(base, y);
        Ok(y)
    }

    /// Called on view `y` after its base lost `v` (in the base's coordinates).
    pub(crate) fn notify_view(&mut self, y: VarRef, v: i64) {
        let lost = match self.shape(y) {
            Shape::Affine { f, .. } => Some(f.forward(v)),
            Shape::Literal { base, value } => self.literal_lost(base, value, v),
            Shape::Modulo { k, .. } => self.modulo_lost(y, k, v),
            Shape::Plain => unreachable!("plain variable registered as a view"),
        };
        if let Some(w) = lost {
            self.wake(y);
            self.wake_value(y, w);
            self.notify_views(y, w);
        }
    }

    pub(crate) fn injective_update_min(&mut self, base: VarRef, f: AffineFn, v: i64) -> PropResult {
        self.apply_base_bound(base, f.lower_bound_preimage(v))
    }

    pub(crate) fn injective_update_max(&mut self, base: VarRef, f: AffineFn, v: i64) -> PropResult {
        self.apply_base_bound(base, f.upper_bound_preimage(v))
    }

    fn apply_base_bound(&mut self, base: VarRef, bound: BaseBound) -> PropResult {
        match bound {
            BaseBound::AtLeast(m) => self.update_min(base, m),
            BaseBound::AtMost(m) => self.update_max(base, m),
        }
    }
}
