//! Propagation queue, fixpoint loop and backtracking frames.

use alloc::boxed::Box;
use alloc::collections::VecDeque;
use alloc::vec::Vec;
use core::ops::{Deref, DerefMut};

use crate::trail::Trail;
use crate::variables::{EngineMode, Node};
use crate::{ConstraintId, Inconsistent, PropResult, VarRef};

/// A pending propagation request.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Event {
    /// The domain of `source` shrank.
    Var { constraint: ConstraintId, source: VarRef },
    /// `value` (in the coordinates of `source`) was removed from `source`.
    Value {
        constraint: ConstraintId,
        source: VarRef,
        value: i64,
    },
}

impl Event {
    pub fn constraint(&self) -> ConstraintId {
        match *self {
            Event::Var { constraint, .. } | Event::Value { constraint, .. } => constraint,
        }
    }

    pub fn source(&self) -> VarRef {
        match *self {
            Event::Var { source, .. } | Event::Value { source, .. } => source,
        }
    }
}

/// FIFO of events. Variable events are deduplicated per `(constraint, source)`
/// while pending; value events never are.
#[derive(Debug, Default)]
pub struct PropagationQueue {
    pending: VecDeque<Event>,
    // per constraint, sorted by source
    scheduled: Vec<Vec<(VarRef, bool)>>,
}

impl PropagationQueue {
    pub fn new() -> Self {
        Self::default()
    }

    fn flag(&mut self, c: ConstraintId, x: VarRef) -> &mut bool {
        let ci = c.index();
        if self.scheduled.len() <= ci {
            self.scheduled.resize_with(ci + 1, Vec::new);
        }
        let row = &mut self.scheduled[ci];
        let at = match row.binary_search_by_key(&x, |e| e.0) {
            Ok(at) => at,
            Err(at) => {
                row.insert(at, (x, false));
                at
            }
        };
        &mut row[at].1
    }

    pub fn schedule_var_event(&mut self, constraint: ConstraintId, source: VarRef) {
        let flag = self.flag(constraint, source);
        if !*flag {
            *flag = true;
            self.pending.push_back(Event::Var { constraint, source });
        }
    }

    pub fn schedule_value_event(&mut self, constraint: ConstraintId, source: VarRef, value: i64) {
        self.pending.push_back(Event::Value {
            constraint,
            source,
            value,
        });
    }

    pub fn pop(&mut self) -> Option<Event> {
        let ev = self.pending.pop_front()?;
        if let Event::Var { constraint, source } = ev {
            *self.flag(constraint, source) = false;
        }
        Some(ev)
    }

    pub fn clear(&mut self) {
        self.pending.clear();
        for row in &mut self.scheduled {
            for e in row.iter_mut() {
                e.1 = false;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.pending.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pending.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Event> {
        self.pending.iter()
    }
}

/// Per-run counters. Timings are filled in by the caller, which owns a clock.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunStats {
    pub propagations: u64,
    pub nodes: u64,
    pub failures: u64,
    pub solutions: u64,
    pub peak_bytes: u64,
    pub cpu_ms: f64,
    pub wall_ms: f64,
}

/// Engine-level byte accounting: a fixed part grown as structures are
/// allocated, plus the live sizes of the queue and trail log.
#[derive(Debug, Clone, Copy, Default)]
pub struct MemTracker {
    fixed: u64,
    peak: u64,
}

impl MemTracker {
    pub fn add(&mut self, bytes: usize) {
        self.fixed += bytes as u64;
        self.peak = self.peak.max(self.fixed);
    }

    pub fn sample(&mut self, live: usize) {
        self.peak = self.peak.max(self.fixed + live as u64);
    }

    pub fn fixed(&self) -> u64 {
        self.fixed
    }

    pub fn peak(&self) -> u64 {
        self.peak
    }
}

/// Variables, views, queue and trail: everything a propagator may touch.
pub struct Store {
    pub(crate) mode: EngineMode,
    pub(crate) composed_value_watches: bool,
    pub(crate) nodes: Vec<Node>,
    pub(crate) trail: Trail,
    pub(crate) queue: PropagationQueue,
    pub(crate) stats: RunStats,
    pub(crate) mem: MemTracker,
}

impl Store {
    pub fn new(mode: EngineMode) -> Self {
        Store {
            mode,
            composed_value_watches: false,
            nodes: Vec::new(),
            trail: Trail::new(),
            queue: PropagationQueue::new(),
            stats: RunStats::default(),
            mem: MemTracker::default(),
        }
    }

    pub fn mode(&self) -> EngineMode {
        self.mode
    }

    pub fn queue(&self) -> &PropagationQueue {
        &self.queue
    }

    pub fn stats(&self) -> &RunStats {
        &self.stats
    }

    pub fn stats_mut(&mut self) -> &mut RunStats {
        &mut self.stats
    }

    pub fn trail(&self) -> &Trail {
        &self.trail
    }

    pub fn num_refs(&self) -> usize {
        self.nodes.len()
    }

    pub fn schedule_var_event(&mut self, c: ConstraintId, x: VarRef) {
        self.queue.schedule_var_event(c, x);
        self.sample_memory();
    }

    pub fn schedule_value_event(&mut self, c: ConstraintId, x: VarRef, v: i64) {
        self.queue.schedule_value_event(c, x, v);
        self.sample_memory();
    }

    pub(crate) fn sample_memory(&mut self) {
        let live = self.queue.len() * core::mem::size_of::<Event>()
            + self.trail.log_len() * core::mem::size_of::<(u32, i64)>()
            + self.trail.depth() * 16;
        self.mem.sample(live);
    }

    /// Peak engine-tracked bytes so far.
    pub fn peak_bytes(&self) -> u64 {
        self.mem.peak()
    }

    pub fn fixed_bytes(&self) -> u64 {
        self.mem.fixed()
    }

    pub fn push_frame(&mut self) {
        self.trail.push_frame();
        self.sample_memory();
    }

    /// Panics when no frame is open.
    pub fn pop_frame(&mut self) {
        self.trail.pop_frame();
    }
}

/// A filtering algorithm registered with the engine.
///
/// `propagate` must enforce the full filtering from scratch; the event entry
/// points may exploit the event but default to it.
pub trait Propagator {
    fn name(&self) -> &'static str;

    /// Registers the watches this propagator needs on its scope.
    fn attach(&mut self, id: ConstraintId, store: &mut Store);

    fn propagate(&mut self, store: &mut Store) -> PropResult;

    fn on_var_event(&mut self, store: &mut Store, _source: VarRef) -> PropResult {
        self.propagate(store)
    }

    fn on_value_event(&mut self, store: &mut Store, _source: VarRef, _value: i64) -> PropResult {
        self.propagate(store)
    }

    /// `None` while some scope member is unbound.
    fn is_satisfied(&self, store: &Store) -> Option<bool>;

    fn heap_bytes(&self) -> usize {
        0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixpoint {
    Consistent,
    Failed,
}

/// The store plus the registered propagators.
pub struct Solver {
    store: Store,
    props: Vec<Box<dyn Propagator>>,
    unposted: Vec<ConstraintId>,
    root_failed: bool,
}

impl Solver {
    pub fn new(mode: EngineMode) -> Self {
        Solver {
            store: Store::new(mode),
            props: Vec::new(),
            unposted: Vec::new(),
            root_failed: false,
        }
    }

    /// Registers `p`; its initial filtering runs at the next fixpoint.
    pub fn post<P: Propagator + 'static>(&mut self, p: P) -> ConstraintId {
        let id = ConstraintId::new(self.props.len());
        let mut p = Box::new(p);
        p.attach(id, &mut self.store);
        self.store
            .mem
            .add(core::mem::size_of::<P>() + p.heap_bytes() + core::mem::size_of::<Box<dyn Propagator>>());
        self.props.push(p);
        self.unposted.push(id);
        id
    }

    pub fn num_constraints(&self) -> usize {
        self.props.len()
    }

    pub fn constraint_name(&self, c: ConstraintId) -> &'static str {
        self.props[c.index()].name()
    }

    /// Records a failure observed outside propagation (e.g. a root-level
    /// domain restriction while building a model).
    pub fn note(&mut self, r: PropResult) {
        if r.is_err() {
            self.root_failed = true;
        }
    }

    pub fn propagate_fixpoint(&mut self) -> Fixpoint {
        if self.root_failed && self.store.trail.depth() == 0 {
            self.store.queue.clear();
            return Fixpoint::Failed;
        }
        let pending: Vec<ConstraintId> = core::mem::take(&mut self.unposted);
        for c in pending {
            if self.props[c.index()].propagate(&mut self.store).is_err() {
                return self.fail();
            }
        }
        while let Some(ev) = self.store.queue.pop() {
            self.store.stats.propagations += 1;
            let r = match ev {
                Event::Var { constraint, source } => {
                    self.props[constraint.index()].on_var_event(&mut self.store, source)
                }
                Event::Value {
                    constraint,
                    source,
                    value,
                } => self.props[constraint.index()].on_value_event(&mut self.store, source, value),
            };
            if r.is_err() {
                return self.fail();
            }
        }
        self.store.sample_memory();
        Fixpoint::Consistent
    }

    fn fail(&mut self) -> Fixpoint {
        self.store.queue.clear();
        if self.store.trail.depth() == 0 {
            self.root_failed = true;
        }
        Fixpoint::Failed
    }

    /// Checks every constraint against the current (fully bound) state.
    /// Returns the first violated or undecided constraint.
    pub fn check_solution(&self) -> Result<(), ConstraintId> {
        for (i, p) in self.props.iter().enumerate() {
            if p.is_satisfied(&self.store) != Some(true) {
                return Err(ConstraintId::new(i));
            }
        }
        Ok(())
    }

    pub fn store(&self) -> &Store {
        &self.store
    }

    pub fn store_mut(&mut self) -> &mut Store {
        &mut self.store
    }
}

impl Deref for Solver {
    type Target = Store;

    fn deref(&self) -> &Store {
        &self.store
    }
}

impl DerefMut for Solver {
    fn deref_mut(&mut self) -> &mut Store {
        &mut self.store
    }
}

impl From<Inconsistent> for Fixpoint {
    fn from(_: Inconsistent) -> Self {
        Fixpoint::Failed
    }
}
