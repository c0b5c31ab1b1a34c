//! Randomized and exhaustive conformance checks. Each returns the number of
//! cases examined, or a description of the first mismatch. They are shared
//! by the integration tests and the acceptance target.

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::rc::Rc;

use viewcp_core::{ConstraintId, EngineMode, Fixpoint, PropResult, Propagator, Solver, Store, VarRef};

use super::SplitMix;

/// What a [`Recorder`] saw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Seen {
    Var { tag: u32, source: usize },
    Value { tag: u32, source: usize, value: i64 },
}

pub type Log = Rc<RefCell<Vec<Seen>>>;

/// A propagator that prunes nothing and logs every event it receives.
pub struct Recorder {
    tag: u32,
    scope: Vec<VarRef>,
    value_based: bool,
    log: Log,
}

impl Recorder {
    pub fn post(s: &mut Solver, tag: u32, scope: &[VarRef], value_based: bool, log: &Log) -> ConstraintId {
        s.post(Recorder {
            tag,
            scope: scope.to_vec(),
            value_based,
            log: log.clone(),
        })
    }
}

impl Propagator for Recorder {
    fn name(&self) -> &'static str {
        "recorder"
    }

    fn attach(&mut self, id: ConstraintId, store: &mut Store) {
        for &x in &self.scope {
            if self.value_based {
                store.watch_value(x, id);
            } else {
                store.watch(x, id);
            }
        }
    }

    fn propagate(&mut self, _store: &mut Store) -> PropResult {
        Ok(())
    }

    fn on_var_event(&mut self, _store: &mut Store, source: VarRef) -> PropResult {
        self.log.borrow_mut().push(Seen::Var {
            tag: self.tag,
            source: source.index(),
        });
        Ok(())
    }

    fn on_value_event(&mut self, _store: &mut Store, source: VarRef, value: i64) -> PropResult {
        self.log.borrow_mut().push(Seen::Value {
            tag: self.tag,
            source: source.index(),
            value,
        });
        Ok(())
    }

    fn is_satisfied(&self, _store: &Store) -> Option<bool> {
        Some(true)
    }
}

fn drain_sorted(log: &Log) -> Vec<Seen> {
    let mut v: Vec<Seen> = log.borrow_mut().drain(..).collect();
    v.sort();
    v
}

/// Plain variable over `lo..=hi` restricted to `keep`.
fn var_with(s: &mut Solver, lo: i64, hi: i64, keep: &BTreeSet<i64>) -> VarRef {
    let x = s.new_var(lo, hi);
    for v in lo..=hi {
        if !keep.contains(&v) {
            s.remove(x, v).expect("keep is non-empty");
        }
    }
    x
}

fn affine_in(s: &mut Solver, x: VarRef, a: i64, b: i64) -> VarRef {
    match s.mode() {
        EngineMode::VariableView => s.affine_view(x, a, b).unwrap(),
        EngineMode::DomainView => s.affine_dview(x, a, b).unwrap(),
        EngineMode::NoView => panic!("views need a view mode"),
    }
}

fn image(set: &BTreeSet<i64>, f: impl Fn(i64) -> i64) -> BTreeSet<i64> {
    set.iter().map(|&v| f(v)).collect()
}

fn fmt_set(s: &BTreeSet<i64>) -> Vec<i64> {
    s.iter().copied().collect()
}

// ---------------------------------------------------------------------------
// injective views

#[derive(Debug, Clone, Copy)]
enum Op {
    Remove(i64),
    UpdateMin(i64),
    UpdateMax(i64),
    Bind(i64),
}

/// One randomized stack of 1 to 3 shift/affine views over a random base
/// domain, compared against the image of the base set after every
/// operation. Returns the number of operations checked.
pub fn injective_case(rng: &mut SplitMix, mode: EngineMode) -> Result<usize, String> {
    let lo = rng.range(-6, 0);
    let hi = lo + rng.range(0, 8);
    let mut base: BTreeSet<i64> = (lo..=hi).filter(|_| rng.chance(2, 3)).collect();
    if base.is_empty() {
        base.insert(lo);
    }
    let mut s = Solver::new(mode);
    let x = var_with(&mut s, lo, hi, &base);
    let depth = rng.range(1, 3);
    let mut fns: Vec<(i64, i64)> = Vec::new();
    let mut y = x;
    for _ in 0..depth {
        let (a, b) = if rng.chance(1, 2) {
            (1, rng.range(-4, 4))
        } else {
            ([-3, -2, -1, 2, 3][rng.range(0, 4) as usize], rng.range(-4, 4))
        };
        y = affine_in(&mut s, y, a, b);
        fns.push((a, b));
    }
    let f = |v: i64| fns.iter().fold(v, |acc, &(a, b)| a * acc + b);
    let ctx = format!("{mode} base={:?} fns={fns:?}", fmt_set(&base));

    let mut checked = 0;
    for _ in 0..6 {
        let img = image(&base, f);
        if s.values(y) != fmt_set(&img) {
            return Err(format!("{ctx}: values {:?} != {:?}", s.values(y), fmt_set(&img)));
        }
        let (mn, mx) = (*img.first().unwrap(), *img.last().unwrap());
        if s.size(y) != img.len() || s.min(y) != mn || s.max(y) != mx {
            return Err(format!("{ctx}: size/min/max mismatch"));
        }
        for w in mn - 3..=mx + 3 {
            if s.member(y, w) != img.contains(&w) {
                return Err(format!("{ctx}: member({w}) wrong"));
            }
        }
        if mode == EngineMode::VariableView {
            for &v in &base {
                if s.map(y, v) != f(v) {
                    return Err(format!("{ctx}: map({v}) = {} != {}", s.map(y, v), f(v)));
                }
            }
        }
        let w = rng.range(mn - 2, mx + 2);
        let op = match rng.range(0, 3) {
            0 => Op::Remove(w),
            1 => Op::UpdateMin(w),
            2 => Op::UpdateMax(w),
            _ => Op::Bind(w),
        };
        let keep: BTreeSet<i64> = base
            .iter()
            .copied()
            .filter(|&v| match op {
                Op::Remove(w) => f(v) != w,
                Op::UpdateMin(w) => f(v) >= w,
                Op::UpdateMax(w) => f(v) <= w,
                Op::Bind(w) => f(v) == w,
            })
            .collect();
        let r = match op {
            Op::Remove(w) => s.remove(y, w),
            Op::UpdateMin(w) => s.update_min(y, w),
            Op::UpdateMax(w) => s.update_max(y, w),
            Op::Bind(w) => s.bind(y, w),
        };
        checked += 1;
        if r.is_ok() == keep.is_empty() {
            return Err(format!("{ctx}: {op:?} returned {r:?}, expected set {:?}", fmt_set(&keep)));
        }
        if r.is_err() {
            return Ok(checked);
        }
        if s.values(x) != fmt_set(&keep) {
            return Err(format!("{ctx}: after {op:?} base {:?} != {:?}", s.values(x), fmt_set(&keep)));
        }
        base = keep;
        s.propagate_fixpoint();
    }
    Ok(checked)
}

pub fn injective_views(cases: usize, seed: u64) -> Result<usize, String> {
    let mut rng = SplitMix(seed);
    let mut ops = 0;
    for i in 0..cases {
        let mode = if i % 2 == 0 {
            EngineMode::VariableView
        } else {
            EngineMode::DomainView
        };
        ops += injective_case(&mut rng, mode)?;
    }
    Ok(ops)
}

// ---------------------------------------------------------------------------
// non-injective views

#[derive(Debug, Clone, Copy)]
enum NonInj {
    Literal(i64),
    Modulo(i64),
}

impl NonInj {
    fn apply(self, v: i64) -> i64 {
        match self {
            NonInj::Literal(i) => (v == i) as i64,
            NonInj::Modulo(k) => v.rem_euclid(k),
        }
    }

    fn codomain(self) -> Vec<i64> {
        match self {
            NonInj::Literal(_) => vec![0, 1],
            NonInj::Modulo(k) => (0..k).collect(),
        }
    }

    fn build(self, s: &mut Solver, x: VarRef) -> VarRef {
        match self {
            NonInj::Literal(i) => s.literal_view(x, i).unwrap(),
            NonInj::Modulo(k) => s.modulo_view(x, k).unwrap(),
        }
    }
}

struct NonInjRig {
    s: Solver,
    x: VarRef,
    y: VarRef,
    log: Log,
}

impl NonInjRig {
    fn new(lo: i64, hi: i64, base: &BTreeSet<i64>, g: NonInj) -> Self {
        let mut s = Solver::new(EngineMode::DomainView);
        let x = var_with(&mut s, lo, hi, base);
        let y = g.build(&mut s, x);
        let log: Log = Rc::default();
        Recorder::post(&mut s, 0, &[y], true, &log);
        Recorder::post(&mut s, 1, &[y], false, &log);
        assert_eq!(s.propagate_fixpoint(), Fixpoint::Consistent);
        NonInjRig { s, x, y, log }
    }

    /// Events expected when the base set shrinks from `before` to `after`.
    fn expected(&self, g: NonInj, before: &BTreeSet<i64>, after: &BTreeSet<i64>) -> Vec<Seen> {
        let src = self.y.index();
        let (ib, ia) = (image(before, |v| g.apply(v)), image(after, |v| g.apply(v)));
        let mut out: Vec<Seen> = ib
            .difference(&ia)
            .map(|&value| Seen::Value { tag: 0, source: src, value })
            .collect();
        if ib != ia {
            out.push(Seen::Var { tag: 1, source: src });
        }
        out.sort();
        out
    }

    fn check_state(&self, g: NonInj, base: &BTreeSet<i64>, ctx: &str) -> Result<(), String> {
        let img = image(base, |v| g.apply(v));
        if self.s.values(self.x) != fmt_set(base) {
            return Err(format!("{ctx}: base {:?} != {:?}", self.s.values(self.x), fmt_set(base)));
        }
        for w in -1..=4 {
            if self.s.member(self.y, w) != img.contains(&w) {
                return Err(format!("{ctx}: member({w}) wrong for image {:?}", fmt_set(&img)));
            }
        }
        if let NonInj::Modulo(k) = g {
            for r in 0..k {
                let want = base.iter().filter(|&&v| v.rem_euclid(k) == r).count() as i64;
                if self.s.support_count(self.y, r) != want {
                    return Err(format!("{ctx}: support({r}) = {} != {want}", self.s.support_count(self.y, r)));
                }
            }
        }
        Ok(())
    }
}

/// Every non-empty base set over universes of size 1 to 6 (starting at 0
/// and at -2), every literal value touching the universe and every modulus
/// 1 to 4: view-side removals and base-side removal sequences are compared
/// with a per-value simulation, including the emitted loss events.
pub fn noninjective_exhaustive() -> Result<usize, String> {
    let mut cases = 0;
    for size in 1..=6i64 {
        for lo in [0i64, -2] {
            let hi = lo + size - 1;
            let mut kinds: Vec<NonInj> = (lo - 1..=hi + 1).map(NonInj::Literal).collect();
            kinds.extend((1..=4).map(NonInj::Modulo));
            for mask in 1u32..(1 << size) {
                let base: BTreeSet<i64> = (0..size).filter(|b| mask & (1 << b) != 0).map(|b| lo + b).collect();
                for &g in &kinds {
                    let ctx = format!("{g:?} base={:?}", fmt_set(&base));
                    let rig = NonInjRig::new(lo, hi, &base, g);
                    rig.check_state(g, &base, &ctx)?;
                    cases += 1;

                    // removal of a view value
                    for w in g.codomain() {
                        let mut rig = NonInjRig::new(lo, hi, &base, g);
                        let keep: BTreeSet<i64> = base.iter().copied().filter(|&v| g.apply(v) != w).collect();
                        let r = rig.s.remove(rig.y, w);
                        cases += 1;
                        if r.is_ok() == keep.is_empty() {
                            return Err(format!("{ctx}: remove({w}) returned {r:?}"));
                        }
                        if r.is_err() {
                            continue;
                        }
                        rig.s.propagate_fixpoint();
                        let ctx = format!("{ctx} remove({w})");
                        rig.check_state(g, &keep, &ctx)?;
                        let got = drain_sorted(&rig.log);
                        let want = rig.expected(g, &base, &keep);
                        if got != want {
                            return Err(format!("{ctx}: events {got:?} != {want:?}"));
                        }
                    }

                    // removal sequences on the base, ascending and descending
                    for order in [fmt_set(&base), fmt_set(&base).into_iter().rev().collect()] {
                        let mut rig = NonInjRig::new(lo, hi, &base, g);
                        let mut cur = base.clone();
                        for &v in &order[..order.len() - 1] {
                            let mut next = cur.clone();
                            next.remove(&v);
                            rig.s.remove(rig.x, v).map_err(|_| format!("{ctx}: remove base {v} failed"))?;
                            rig.s.propagate_fixpoint();
                            let ctx = format!("{ctx} base-remove {v}");
                            rig.check_state(g, &next, &ctx)?;
                            let got = drain_sorted(&rig.log);
                            let want = rig.expected(g, &cur, &next);
                            if got != want {
                                return Err(format!("{ctx}: events {got:?} != {want:?}"));
                            }
                            cur = next;
                            cases += 1;
                        }
                        if rig.s.remove(rig.x, order[order.len() - 1]).is_ok() {
                            return Err(format!("{ctx}: removing the last base value succeeded"));
                        }
                    }
                }
            }
        }
    }
    Ok(cases)
}

// ---------------------------------------------------------------------------
// event translation

/// The value-event and var-event trace of a fixed 2-level stack
/// `y2 = g(f(x))`, `z2 = f(g(z))` under a removal sequence on `x` and `z`.
fn event_trace(
    mode: EngineMode,
    composed: bool,
    size: i64,
    f: (i64, i64),
    g: (i64, i64),
    removals: &[(usize, i64)],
) -> Vec<(bool, Vec<Seen>)> {
    let mut s = Solver::new(mode);
    if composed {
        s.use_composed_value_watches();
    }
    let x = s.new_var(0, size - 1);
    let z = s.new_var(0, size - 1);
    let y1 = affine_in(&mut s, x, f.0, f.1);
    let y2 = affine_in(&mut s, y1, g.0, g.1);
    let z1 = affine_in(&mut s, z, g.0, g.1);
    let z2 = affine_in(&mut s, z1, f.0, f.1);
    let log: Log = Rc::default();
    Recorder::post(&mut s, 0, &[y2, z2], true, &log);
    Recorder::post(&mut s, 1, &[y1, z], true, &log);
    Recorder::post(&mut s, 2, &[x, y2, z1], false, &log);
    Recorder::post(&mut s, 3, &[x, y1, y2, z2], true, &log);
    s.propagate_fixpoint();
    let mut out = Vec::new();
    for &(which, v) in removals {
        let target = if which == 0 { x } else { z };
        let ok = s.remove(target, v).is_ok();
        if ok {
            s.propagate_fixpoint();
        }
        out.push((ok, drain_sorted(&log)));
        if !ok {
            break;
        }
    }
    out
}

const STACK_FNS: [(i64, i64); 5] = [(1, -2), (1, 3), (-1, 1), (2, 0), (-3, 2)];

/// Compares the per-step event multisets of VariableView (both the
/// recursive-map and the composed-function bookkeeping) and DomainView on
/// every pair of stack functions. Removal sequences are every permutation of
/// all removals for universes up to 3 and `samples` random sequences for
/// sizes 4 to 6. Returns the number of sequences compared.
pub fn event_equivalence(samples: usize, seed: u64) -> Result<usize, String> {
    let mut rng = SplitMix(seed);
    let mut count = 0;
    for size in 1..=6i64 {
        let all: Vec<(usize, i64)> = (0..2).flat_map(|w| (0..size).map(move |v| (w, v))).collect();
        let sequences: Vec<Vec<(usize, i64)>> = if size <= 3 {
            permutations(&all)
        } else {
            (0..samples)
                .map(|_| {
                    let mut seq = all.clone();
                    for i in (1..seq.len()).rev() {
                        let j = rng.range(0, i as i64) as usize;
                        seq.swap(i, j);
                    }
                    seq
                })
                .collect()
        };
        for &f in &STACK_FNS {
            for &g in &STACK_FNS {
                for seq in &sequences {
                    let dom = event_trace(EngineMode::DomainView, false, size, f, g, seq);
                    let var = event_trace(EngineMode::VariableView, false, size, f, g, seq);
                    let cmp = event_trace(EngineMode::VariableView, true, size, f, g, seq);
                    if dom != var || dom != cmp {
                        return Err(format!("f={f:?} g={g:?} seq={seq:?}\n dom={dom:?}\n var={var:?}\n cmp={cmp:?}"));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// trail

/// Random operations through plain, affine, literal and modulo handles,
/// interleaved with push/pop, checked against a stack of snapshots of the
/// base set. Returns the number of operations.
pub fn trail_sequences(sequences: usize, seed: u64) -> Result<usize, String> {
    let mut rng = SplitMix(seed);
    let mut ops = 0;
    for seq in 0..sequences {
        let lo = rng.range(-4, 0);
        let hi = lo + rng.range(2, 9);
        let k = rng.range(1, 4);
        let lit = rng.range(lo, hi);
        let mut s = Solver::new(EngineMode::DomainView);
        let x = s.new_var(lo, hi);
        let m = s.modulo_view(x, k).unwrap();
        let l = s.literal_view(x, lit).unwrap();
        let a = s.affine_dview(x, -2, 1).unwrap();
        let am = s.modulo_view(a, k).unwrap();
        let fx = |h: VarRef, v: i64| -> i64 {
            if h == x {
                v
            } else if h == m {
                v.rem_euclid(k)
            } else if h == l {
                (v == lit) as i64
            } else if h == a {
                -2 * v + 1
            } else {
                (-2 * v + 1).rem_euclid(k)
            }
        };
        let handles = [x, m, l, a, am];
        let mut cur: BTreeSet<i64> = (lo..=hi).collect();
        let mut stack: Vec<BTreeSet<i64>> = Vec::new();
        let ctx = |i: usize| format!("seq {seq} step {i} lo={lo} hi={hi} k={k} lit={lit}");

        s.push_frame();
        stack.push(cur.clone());
        for step in 0..30 {
            ops += 1;
            let roll = rng.range(0, 9);
            if roll == 0 {
                s.push_frame();
                stack.push(cur.clone());
            } else if roll == 1 && stack.len() > 1 {
                s.pop_frame();
                cur = stack.pop().unwrap();
            } else {
                let h = handles[rng.range(0, 4) as usize];
                let img = image(&cur, |v| fx(h, v));
                let (mn, mx) = (*img.first().unwrap(), *img.last().unwrap());
                let w = rng.range(mn - 1, mx + 1);
                let kind = rng.range(0, 3);
                let keep: BTreeSet<i64> = cur
                    .iter()
                    .copied()
                    .filter(|&v| match kind {
                        0 => fx(h, v) != w,
                        1 => fx(h, v) >= w,
                        2 => fx(h, v) <= w,
                        _ => fx(h, v) == w,
                    })
                    .collect();
                let r = match kind {
                    0 => s.remove(h, w),
                    1 => s.update_min(h, w),
                    2 => s.update_max(h, w),
                    _ => s.bind(h, w),
                };
                if r.is_ok() == keep.is_empty() {
                    return Err(format!("{}: op {kind} on handle {} value {w} returned {r:?}", ctx(step), h.index()));
                }
                s.propagate_fixpoint();
                if r.is_ok() {
                    cur = keep;
                } else {
                    // a failed branch is abandoned
                    s.pop_frame();
                    cur = stack.pop().unwrap();
                    if stack.is_empty() {
                        s.push_frame();
                        stack.push(cur.clone());
                    }
                }
            }
            if s.values(x) != fmt_set(&cur) {
                return Err(format!("{}: base {:?} != {:?}", ctx(step), s.values(x), fmt_set(&cur)));
            }
            for (view, shift) in [(m, false), (am, true)] {
                for r in 0..k {
                    let want = cur
                        .iter()
                        .filter(|&&v| (if shift { -2 * v + 1 } else { v }).rem_euclid(k) == r)
                        .count() as i64;
                    if s.support_count(view, r) != want {
                        return Err(format!("{}: support({r}) of {} is {} != {want}", ctx(step), view.index(), s.support_count(view, r)));
                    }
                }
            }
        }
        while s.trail().depth() > 0 {
            s.pop_frame();
        }
        if s.values(x) != (lo..=hi).collect::<Vec<_>>() || s.support_count(m, 0) != (lo..=hi).filter(|v| v.rem_euclid(k) == 0).count() as i64 {
            return Err(format!("seq {seq}: root not restored"));
        }
    }
    Ok(ops)
}
