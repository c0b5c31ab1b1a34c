//! Benchmark models. Every builder works in all three engine modes; the
//! helpers in this module decide how an expression is represented:
//!
//! | expression  | NoView                     | VariableView   | DomainView     |
//! |-------------|----------------------------|----------------|----------------|
//! | `a*x + b`   | aux var + `AffineChannel`  | `affine_view`  | `affine_dview` |
//! | `x = i`     | aux 0/1 + `ReifEqChannel`  | same as NoView | `literal_view` |
//!
//! Auxiliary variables are created with exactly the image of the source
//! domain and are kept domain consistent, so the search tree is the same in
//! every mode.

mod bibd;
mod knapsack;
mod langford;
mod magic;
mod slab;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use bibd::{bibd_dimensions, build_bibd};
pub use knapsack::build_knapsack;
pub use langford::build_langford;
pub use magic::build_magicseries;
pub use slab::{build_slab, SlabInstance};

use crate::constraints::{affine_channel, reif_eq};
use crate::fns::{AffineFn, InjectiveViewFn};
use crate::kernel::Solver;
use crate::search::{dfs_first_fail, SearchOutcome};
use crate::{EngineMode, Error, VarRef};

/// `a*x + b` in the representation of the solver's mode.
pub fn affine(s: &mut Solver, x: VarRef, a: i64, b: i64) -> Result<VarRef, Error> {
    let f = AffineFn::new(a, b)?;
    if f == AffineFn::IDENTITY {
        return Ok(x);
    }
    match s.mode() {
        EngineMode::NoView => {
            let mut image: Vec<i64> = s.values(x).into_iter().map(|v| f.forward(v)).collect();
            image.sort_unstable();
            let y = s.new_var_with_values(&image);
            affine_channel(s, x, y, f);
            Ok(y)
        }
        EngineMode::VariableView => s.affine_view(x, a, b),
        EngineMode::DomainView => s.affine_dview(x, a, b),
    }
}

/// `x + k`.
pub fn shift(s: &mut Solver, x: VarRef, k: i64) -> Result<VarRef, Error> {
    affine(s, x, 1, k)
}

/// Boolean negation `1 - b`.
pub fn negate(s: &mut Solver, b: VarRef) -> Result<VarRef, Error> {
    affine(s, b, -1, 1)
}

/// The 0/1 expression `x = i`.
pub fn reify_eq(s: &mut Solver, x: VarRef, i: i64) -> Result<VarRef, Error> {
    match s.mode() {
        EngineMode::DomainView => s.literal_view(x, i),
        EngineMode::NoView | EngineMode::VariableView => {
            let b = s.new_var(0, 1);
            reif_eq(s, b, x, i);
            Ok(b)
        }
    }
}

/// A benchmark instance, independent of the engine mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelSpec {
    MagicSeries { n: usize },
    Langford { n: usize },
    /// `sum(w_i * x_i) = target` with `x_i` in `ranges[i]`.
    Knapsack {
        weights: Vec<i64>,
        target: i64,
        ranges: Vec<(i64, i64)>,
    },
    Bibd { v: usize, k: usize, lambda: usize },
    Slab(SlabInstance),
}

impl ModelSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ModelSpec::MagicSeries { .. } => "magicseries",
            ModelSpec::Langford { .. } => "langford",
            ModelSpec::Knapsack { .. } => "knapsack",
            ModelSpec::Bibd { .. } => "bibd",
            ModelSpec::Slab(_) => "slab",
        }
    }

    /// Solution limit used by the benchmark harness.
    pub fn default_limit(&self) -> Option<u64> {
        match self {
            ModelSpec::Bibd { .. } => Some(1),
            _ => None,
        }
    }

    /// Short instance label, e.g. `n=5` or `v=7,k=3,l=1`.
    pub fn instance_label(&self) -> String {
        use alloc::format;
        match self {
            ModelSpec::MagicSeries { n } | ModelSpec::Langford { n } => format!("n={n}"),
            ModelSpec::Knapsack { weights, target, .. } => format!("items={},b={target}", weights.len()),
            ModelSpec::Bibd { v, k, lambda } => format!("v={v},k={k},l={lambda}"),
            ModelSpec::Slab(inst) => format!("orders={},slabs={}", inst.weights.len(), inst.capacities.len()),
        }
    }

    pub fn build(&self, mode: EngineMode) -> Result<Model, Error> {
        let mut model = match self {
            ModelSpec::MagicSeries { n } => build_magicseries(*n, mode)?,
            ModelSpec::Langford { n } => build_langford(*n, mode)?,
            ModelSpec::Knapsack {
                weights,
                target,
                ranges,
            } => build_knapsack(weights, *target, ranges, mode)?,
            ModelSpec::Bibd { v, k, lambda } => build_bibd(*v, *k, *lambda, mode)?,
            ModelSpec::Slab(inst) => build_slab(inst, mode)?,
        };
        model.limit = self.default_limit();
        Ok(model)
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name(), self.instance_label())
    }
}

/// Desk-scale knapsack with `items` items (1 to 6): fixed weights, unit
/// ranges `[0, 3]` and a target reachable in several ways.
pub fn knapsack_instance(items: usize) -> ModelSpec {
    const WEIGHTS: [i64; 6] = [2, 3, 5, 7, 4, 6];
    const TARGETS: [i64; 6] = [4, 9, 14, 21, 24, 30];
    let items = items.clamp(1, WEIGHTS.len());
    ModelSpec::Knapsack {
        weights: WEIGHTS[..items].to_vec(),
        target: TARGETS[items - 1],
        ranges: alloc::vec![(0, 3); items],
    }
}

/// The benchmark suite: magic series 4..=7, Langford 3..=8, knapsack with
/// 3 to 6 items, the (7,3,1) design and the mini slab instance.
pub fn benchmark_suite() -> Vec<ModelSpec> {
    let mut out = Vec::new();
    out.extend((4..=7).map(|n| ModelSpec::MagicSeries { n }));
    out.extend((3..=8).map(|n| ModelSpec::Langford { n }));
    out.extend((3..=6).map(knapsack_instance));
    out.push(ModelSpec::Bibd { v: 7, k: 3, lambda: 1 });
    out.push(ModelSpec::Slab(SlabInstance::mini()));
    out
}

/// A posted model ready for search.
pub struct Model {
    pub solver: Solver,
    /// Decision variables, in branching tie-break order.
    pub vars: Vec<VarRef>,
    pub limit: Option<u64>,
}

impl Model {
    pub(crate) fn new(solver: Solver, vars: Vec<VarRef>) -> Self {
        Model {
            solver,
            vars,
            limit: None,
        }
    }

    pub fn solve(&mut self) -> SearchOutcome {
        dfs_first_fail(&mut self.solver, &self.vars, self.limit)
    }
}
