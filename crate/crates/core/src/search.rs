//! Depth-first search with first-fail variable ordering and n-ary branching
//! over ascending values.

use alloc::vec::Vec;

use crate::kernel::{Fixpoint, RunStats, Solver};
use crate::VarRef;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SearchOutcome {
    /// Values of the decision variables, one vector per solution, in the
    /// order solutions were found.
    pub solutions: Vec<Vec<i64>>,
    pub stats: RunStats,
}

/// Smallest unbound domain; ties go to the earliest position in `vars`.
pub fn select_first_fail(solver: &Solver, vars: &[VarRef]) -> Option<VarRef> {
    let mut best: Option<(usize, VarRef)> = None;
    for &x in vars {
        let s = solver.size(x);
        if s > 1 && best.is_none_or(|(b, _)| s < b) {
            best = Some((s, x));
        }
    }
    best.map(|(_, x)| x)
}

/// Enumerates solutions over `vars` until `limit` solutions have been found
/// (`None` enumerates all). Every solution is checked against all posted
/// constraints; a violation is a bug in a propagator and panics.
///
/// The root fixpoint counts as one node; each branch `x = v` is another.
pub fn dfs_first_fail(solver: &mut Solver, vars: &[VarRef], limit: Option<u64>) -> SearchOutcome {
    let mut solutions = Vec::new();
    solver.stats_mut().nodes += 1;
    if solver.propagate_fixpoint() == Fixpoint::Failed {
        solver.stats_mut().failures += 1;
    } else {
        explore(solver, vars, limit, &mut solutions);
    }
    solver.sample_memory();
    let peak = solver.peak_bytes();
    solver.stats_mut().peak_bytes = peak;
    SearchOutcome {
        solutions,
        stats: *solver.stats(),
    }
}

fn explore(solver: &mut Solver, vars: &[VarRef], limit: Option<u64>, out: &mut Vec<Vec<i64>>) -> bool {
    let x = match select_first_fail(solver, vars) {
        Some(x) => x,
        None => {
            if let Err(c) = solver.check_solution() {
                panic!(
                    "search reached an assignment violating constraint {} ({})",
                    c.index(),
                    solver.constraint_name(c)
                );
            }
            out.push(vars.iter().map(|&y| solver.min(y)).collect());
            solver.stats_mut().solutions += 1;
            return limit.is_some_and(|l| solver.stats().solutions >= l);
        }
    };
    for v in solver.values(x) {
        solver.push_frame();
        solver.stats_mut().nodes += 1;
        let ok = solver.bind(x, v).is_ok() && solver.propagate_fixpoint() == Fixpoint::Consistent;
        let stop = if ok {
            explore(solver, vars, limit, out)
        } else {
            solver.queue.clear();
            solver.stats_mut().failures += 1;
            false
        };
        solver.pop_frame();
        if stop {
            return true;
        }
    }
    false
}
