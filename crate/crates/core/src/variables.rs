//! Variables and the uniform [`VarRef`] contract.
//!
//! Every variable and view lives in one arena inside the [`Store`]. A plain
//! variable owns a domain and watch lists; views own a link to the variable
//! (or view) they are defined over. How watch lists are shaped depends on the
//! [`EngineMode`]:
//!
//! * `NoView` / `DomainView`: lists of constraint ids, the source being the
//!   owner itself. In `DomainView` mode views keep their own lists and plain
//!   variables notify their registered views on every removal.
//! * `VariableView`: the plain variable at the bottom of a view chain stores
//!   `(constraint, watcher)` pairs and translates removed values through
//!   [`Store::map`] when scheduling value events.

use alloc::vec::Vec;

use crate::domain::{IntDomain, RemoveOutcome};
use crate::fns::{AffineFn, InjectiveViewFn, ModuloFn};
use crate::kernel::Store;
use crate::trail::SlotId;
use crate::{ConstraintId, Inconsistent, PropResult, VarRef};

/// Which view implementation an engine instance uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EngineMode {
    /// No views; expressions are flattened into auxiliary variables.
    NoView,
    /// Views delegate domain operations and constraint watching.
    VariableView,
    /// Views delegate domain operations and keep their own watch lists.
    DomainView,
}

impl EngineMode {
    pub const ALL: [EngineMode; 3] = [EngineMode::NoView, EngineMode::VariableView, EngineMode::DomainView];

    pub fn as_str(&self) -> &'static str {
        match self {
            EngineMode::NoView => "noview",
            EngineMode::VariableView => "varview",
            EngineMode::DomainView => "domview",
        }
    }

    pub fn parse(s: &str) -> Option<EngineMode> {
        match s {
            "noview" => Some(EngineMode::NoView),
            "varview" => Some(EngineMode::VariableView),
            "domview" => Some(EngineMode::DomainView),
            _ => None,
        }
    }
}

impl core::fmt::Display for EngineMode {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub(crate) enum NodeKind {
    Plain(IntDomain),
    Affine { base: VarRef, f: AffineFn },
    Literal { base: VarRef, value: i64 },
    Modulo { base: VarRef, f: ModuloFn, supports: Vec<SlotId> },
}

#[derive(Debug, Clone)]
pub(crate) enum WatchList {
    Ids(Vec<ConstraintId>),
    Pairs(Vec<(ConstraintId, VarRef)>),
    Triples(Vec<(ConstraintId, VarRef, AffineFn)>),
}

impl WatchList {
    fn entry_bytes(&self) -> usize {
        match self {
            WatchList::Ids(_) => core::mem::size_of::<ConstraintId>(),
            WatchList::Pairs(_) => core::mem::size_of::<(ConstraintId, VarRef)>(),
            WatchList::Triples(_) => core::mem::size_of::<(ConstraintId, VarRef, AffineFn)>(),
        }
    }

    /// Entries as `(constraint, source)`; plain ids are reported with `owner`.
    fn entries(&self, owner: VarRef) -> Vec<(ConstraintId, VarRef)> {
        match self {
            WatchList::Ids(v) => v.iter().map(|&c| (c, owner)).collect(),
            WatchList::Pairs(v) => v.clone(),
            WatchList::Triples(v) => v.iter().map(|&(c, z, _)| (c, z)).collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Node {
    pub(crate) kind: NodeKind,
    pub(crate) sc: WatchList,
    pub(crate) scv: WatchList,
    pub(crate) views: Vec<VarRef>,
}

/// Copyable summary of a node's kind, used to dispatch without holding a borrow.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Shape {
    Plain,
    Affine { base: VarRef, f: AffineFn },
    Literal { base: VarRef, value: i64 },
    Modulo { base: VarRef, k: i64 },
}

impl Store {
    /// New plain variable over `lo..=hi`.
    pub fn new_var(&mut self, lo: i64, hi: i64) -> VarRef {
        let dom = IntDomain::interval(&mut self.trail, lo, hi);
        self.push_plain(dom)
    }

    /// New plain variable holding exactly `values`.
    pub fn new_var_with_values(&mut self, values: &[i64]) -> VarRef {
        let dom = IntDomain::from_values(&mut self.trail, values);
        self.push_plain(dom)
    }

    fn push_plain(&mut self, dom: IntDomain) -> VarRef {
        self.mem.add(dom.heap_bytes() + 3 * 16);
        let (sc, scv) = match self.mode {
            EngineMode::VariableView => (
                WatchList::Pairs(Vec::new()),
                if self.composed_value_watches {
                    WatchList::Triples(Vec::new())
                } else {
                    WatchList::Pairs(Vec::new())
                },
            ),
            _ => (WatchList::Ids(Vec::new()), WatchList::Ids(Vec::new())),
        };
        self.push_node(NodeKind::Plain(dom), sc, scv)
    }

    pub(crate) fn push_node(&mut self, kind: NodeKind, sc: WatchList, scv: WatchList) -> VarRef {
        let id = VarRef::new(self.nodes.len());
        self.mem.add(core::mem::size_of::<Node>());
        self.nodes.push(Node {
            kind,
            sc,
            scv,
            views: Vec::new(),
        });
        id
    }

    pub(crate) fn shape(&self, x: VarRef) -> Shape {
        match &self.nodes[x.index()].kind {
            NodeKind::Plain(_) => Shape::Plain,
            NodeKind::Affine { base, f } => Shape::Affine { base: *base, f: *f },
            NodeKind::Literal { base, value } => Shape::Literal {
                base: *base,
                value: *value,
            },
            NodeKind::Modulo { base, f, .. } => Shape::Modulo {
                base: *base,
                k: f.modulus(),
            },
        }
    }

    #[inline]
    fn dom(&self, x: VarRef) -> &IntDomain {
        match &self.nodes[x.index()].kind {
            NodeKind::Plain(d) => d,
            _ => unreachable!("not a plain variable"),
        }
    }

    pub fn is_plain(&self, x: VarRef) -> bool {
        matches!(self.shape(x), Shape::Plain)
    }

    /// The plain variable reached by following view links from `x`.
    pub fn underlying(&self, mut x: VarRef) -> VarRef {
        loop {
            match self.shape(x) {
                Shape::Plain => return x,
                Shape::Affine { base, .. } | Shape::Literal { base, .. } | Shape::Modulo { base, .. } => x = base,
            }
        }
    }

    pub fn member(&self, x: VarRef, v: i64) -> bool {
        match self.shape(x) {
            Shape::Plain => self.dom(x).member(&self.trail, v),
            Shape::Affine { base, f } => self.injective_member(base, f, v),
            Shape::Literal { base, value } => self.literal_member(base, value, v),
            Shape::Modulo { .. } => self.modulo_member(x, v),
        }
    }

    pub fn size(&self, x: VarRef) -> usize {
        match self.shape(x) {
            Shape::Plain => self.dom(x).size(&self.trail),
            Shape::Affine { base, .. } => self.size(base),
            Shape::Literal { base, value } => {
                self.literal_member(base, value, 0) as usize + self.literal_member(base, value, 1) as usize
            }
            Shape::Modulo { .. } => self.modulo_residues(x).count(),
        }
    }

    pub fn min(&self, x: VarRef) -> i64 {
        match self.shape(x) {
            Shape::Plain => self.dom(x).min(&self.trail),
            Shape::Affine { base, f } => self.injective_min(base, f),
            Shape::Literal { base, value } => {
                if self.literal_member(base, value, 0) {
                    0
                } else {
                    1
                }
            }
            Shape::Modulo { .. } => self.modulo_residues(x).next().unwrap_or(0),
        }
    }

    pub fn max(&self, x: VarRef) -> i64 {
        match self.shape(x) {
            Shape::Plain => self.dom(x).max(&self.trail),
            Shape::Affine { base, f } => self.injective_max(base, f),
            Shape::Literal { base, value } => {
                if self.literal_member(base, value, 1) {
                    1
                } else {
                    0
                }
            }
            Shape::Modulo { .. } => self.modulo_residues(x).last().unwrap_or(0),
        }
    }

    pub fn is_bound(&self, x: VarRef) -> bool {
        self.size(x) == 1
    }

    pub fn is_bound_to(&self, x: VarRef, v: i64) -> bool {
        self.size(x) == 1 && self.member(x, v)
    }

    /// The value of `x` when bound.
    pub fn value(&self, x: VarRef) -> Option<i64> {
        if self.is_bound(x) {
            Some(self.min(x))
        } else {
            None
        }
    }

    /// Current members of `x` in increasing order.
    pub fn values(&self, x: VarRef) -> Vec<i64> {
        match self.shape(x) {
            Shape::Plain => self.dom(x).values(&self.trail),
            Shape::Affine { base, f } => {
                let mut out: Vec<i64> = self.values(base).into_iter().map(|v| f.forward(v)).collect();
                if f.coefficient() < 0 {
                    out.reverse();
                }
                out
            }
            Shape::Literal { base, value } => (0..=1).filter(|&b| self.literal_member(base, value, b)).collect(),
            Shape::Modulo { .. } => self.modulo_residues(x).collect(),
        }
    }

    /// Removes `v` from `x`. Fails when the removal would empty the domain.
    pub fn remove(&mut self, x: VarRef, v: i64) -> PropResult {
        match self.shape(x) {
            Shape::Plain => self.plain_remove(x, v),
            Shape::Affine { base, f } => self.injective_remove(base, f, v),
            Shape::Literal { base, value } => self.literal_remove(base, value, v),
            Shape::Modulo { base, k } => self.modulo_remove(x, base, k, v),
        }
    }

    /// Reduces `x` to `{v}`; fails when `v` is not a member.
    pub fn bind(&mut self, x: VarRef, v: i64) -> PropResult {
        match self.shape(x) {
            Shape::Plain => {
                if !self.member(x, v) {
                    return Err(Inconsistent);
                }
                for w in self.values(x) {
                    if w != v {
                        self.plain_remove(x, w)?;
                    }
                }
                Ok(())
            }
            Shape::Affine { base, f } => match f.inverse(v) {
                Some(w) => self.bind(base, w),
                None => Err(Inconsistent),
            },
            Shape::Literal { .. } | Shape::Modulo { .. } => self.bind_by_removal(x, v),
        }
    }

    /// Removes every member below `v`.
    pub fn update_min(&mut self, x: VarRef, v: i64) -> PropResult {
        match self.shape(x) {
            Shape::Plain => {
                if v <= self.min(x) {
                    return Ok(());
                }
                if v > self.max(x) {
                    return Err(Inconsistent);
                }
                for w in self.values(x) {
                    if w >= v {
                        break;
                    }
                    self.plain_remove(x, w)?;
                }
                Ok(())
            }
            Shape::Affine { base, f } => self.injective_update_min(base, f, v),
            Shape::Literal { .. } | Shape::Modulo { .. } => self.update_min_by_removal(x, v),
        }
    }

    /// Removes every member above `v`.
    pub fn update_max(&mut self, x: VarRef, v: i64) -> PropResult {
        match self.shape(x) {
            Shape::Plain => {
                if v >= self.max(x) {
                    return Ok(());
                }
                if v < self.min(x) {
                    return Err(Inconsistent);
                }
                for w in self.values(x).into_iter().rev() {
                    if w <= v {
                        break;
                    }
                    self.plain_remove(x, w)?;
                }
                Ok(())
            }
            Shape::Affine { base, f } => self.injective_update_max(base, f, v),
            Shape::Literal { .. } | Shape::Modulo { .. } => self.update_max_by_removal(x, v),
        }
    }

    /// Generic bind for views without a direct delegation rule.
    pub(crate) fn bind_by_removal(&mut self, x: VarRef, v: i64) -> PropResult {
        if !self.member(x, v) {
            return Err(Inconsistent);
        }
        for w in self.values(x) {
            if w != v {
                self.remove(x, w)?;
            }
        }
        Ok(())
    }

    /// Value-by-value bound update for views that are neither monotone nor
    /// anti-monotone.
    pub(crate) fn update_min_by_removal(&mut self, x: VarRef, v: i64) -> PropResult {
        if v > self.max(x) {
            return Err(Inconsistent);
        }
        for w in self.values(x) {
            if w >= v {
                break;
            }
            self.remove(x, w)?;
        }
        Ok(())
    }

    pub(crate) fn update_max_by_removal(&mut self, x: VarRef, v: i64) -> PropResult {
        if v < self.min(x) {
            return Err(Inconsistent);
        }
        for w in self.values(x).into_iter().rev() {
            if w <= v {
                break;
            }
            self.remove(x, w)?;
        }
        Ok(())
    }

    /// Removal on a plain variable: shrink the domain, wake own watchers, then
    /// (domain-view mode) notify every registered view. A removal that would
    /// empty the domain fails without waking anyone.
    fn plain_remove(&mut self, x: VarRef, v: i64) -> PropResult {
        let Store { nodes, trail, .. } = self;
        let NodeKind::Plain(dom) = &mut nodes[x.index()].kind else {
            unreachable!()
        };
        match dom.remove(trail, v) {
            RemoveOutcome::Absent => Ok(()),
            RemoveOutcome::Wipeout => Err(Inconsistent),
            RemoveOutcome::Removed => {
                self.wake(x);
                self.wake_value(x, v);
                if self.mode == EngineMode::DomainView {
                    self.notify_views(x, v);
                }
                Ok(())
            }
        }
    }

    /// Forwards the loss of `v` (in `x`'s coordinates) to every view on `x`.
    pub(crate) fn notify_views(&mut self, x: VarRef, v: i64) {
        for k in 0..self.nodes[x.index()].views.len() {
            let y = self.nodes[x.index()].views[k];
            self.notify_view(y, v);
        }
    }

    /// Schedules a variable event for every variable watcher of `x`.
    pub(crate) fn wake(&mut self, x: VarRef) {
        let Store { nodes, queue, .. } = self;
        match &nodes[x.index()].sc {
            WatchList::Ids(cs) => {
                for &c in cs {
                    queue.schedule_var_event(c, x);
                }
            }
            WatchList::Pairs(ps) => {
                for &(c, z) in ps {
                    queue.schedule_var_event(c, z);
                }
            }
            WatchList::Triples(ts) => {
                for &(c, z, _) in ts {
                    queue.schedule_var_event(c, z);
                }
            }
        }
        self.sample_memory();
    }

    /// Schedules a value event for every value watcher of `x`; `v` is the
    /// value removed, in `x`'s own coordinates.
    pub(crate) fn wake_value(&mut self, x: VarRef, v: i64) {
        let Store { nodes, queue, .. } = self;
        match &nodes[x.index()].scv {
            WatchList::Ids(cs) => {
                for &c in cs {
                    queue.schedule_value_event(c, x, v);
                }
            }
            WatchList::Pairs(ps) => {
                for &(c, z) in ps {
                    queue.schedule_value_event(c, z, map_in(nodes, z, v));
                }
            }
            WatchList::Triples(ts) => {
                for &(c, z, f) in ts {
                    queue.schedule_value_event(c, z, f.forward(v));
                }
            }
        }
        self.sample_memory();
    }

    /// Registers `c` for variable events on `x`.
    pub fn watch(&mut self, x: VarRef, c: ConstraintId) {
        match (self.mode, self.shape(x)) {
            (EngineMode::VariableView, Shape::Affine { base, .. }) => self.watch_via(base, c, x),
            (EngineMode::VariableView, Shape::Plain) => self.watch_via(x, c, x),
            _ => self.watch_local(x, c, false),
        }
    }

    /// Registers `c` for value events on `x`.
    pub fn watch_value(&mut self, x: VarRef, c: ConstraintId) {
        match (self.mode, self.shape(x)) {
            (EngineMode::VariableView, Shape::Affine { base, f }) => self.watch_value_via(base, c, x, f),
            (EngineMode::VariableView, Shape::Plain) => self.watch_value_via(x, c, x, AffineFn::IDENTITY),
            _ => self.watch_local(x, c, true),
        }
    }

    /// Appends `c` to the owner's own id list (set semantics).
    pub(crate) fn watch_local(&mut self, x: VarRef, c: ConstraintId, value: bool) {
        let node = &mut self.nodes[x.index()];
        let list = if value { &mut node.scv } else { &mut node.sc };
        let WatchList::Ids(ids) = list else {
            unreachable!("local watch on a delegated list")
        };
        if !ids.contains(&c) {
            ids.push(c);
            let bytes = list.entry_bytes();
            self.mem.add(bytes);
        }
    }

    /// Registers `y` to be notified of every removal on `x` (domain-view mode
    /// only; a no-op otherwise).
    pub fn add_view(&mut self, x: VarRef, y: VarRef) {
        if self.mode != EngineMode::DomainView {
            return;
        }
        let views = &mut self.nodes[x.index()].views;
        if !views.contains(&y) {
            views.push(y);
            self.mem.add(core::mem::size_of::<VarRef>());
        }
    }

    /// Maps a value of the plain variable under `x` into `x`'s coordinates.
    pub fn map(&self, x: VarRef, v: i64) -> i64 {
        map_in(&self.nodes, x, v)
    }

    /// Views registered on `x` (domain-view mode).
    pub fn views_of(&self, x: VarRef) -> &[VarRef] {
        &self.nodes[x.index()].views
    }

    /// `(constraint, source)` entries of `x`'s variable-watch list.
    pub fn var_watchers(&self, x: VarRef) -> Vec<(ConstraintId, VarRef)> {
        self.nodes[x.index()].sc.entries(x)
    }

    /// `(constraint, source)` entries of `x`'s value-watch list.
    pub fn value_watchers(&self, x: VarRef) -> Vec<(ConstraintId, VarRef)> {
        self.nodes[x.index()].scv.entries(x)
    }

    /// Store value-watch entries as `(constraint, watcher, composed fn)`
    /// instead of translating through `map`. Must be called before any
    /// variable is created; only meaningful in variable-view mode.
    #[doc(hidden)]
    pub fn use_composed_value_watches(&mut self) {
        assert!(self.nodes.is_empty(), "switch must precede variable creation");
        self.composed_value_watches = self.mode == EngineMode::VariableView;
    }
}

pub(crate) fn map_in(nodes: &[Node], x: VarRef, v: i64) -> i64 {
    match &nodes[x.index()].kind {
        NodeKind::Affine { base, f } => f.forward(map_in(nodes, *base, v)),
        _ => v,
    }
}
