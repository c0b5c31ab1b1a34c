//! The core propagators. Each is written once against the [`VarRef`]
//! contract and runs unchanged on plain variables, variable views and domain
//! views.

mod alldiff;
mod channel;
mod clause;
mod linear;

use alloc::vec::Vec;

pub use alldiff::AllDifferent;
pub use channel::{AffineChannel, ReifEqChannel};
pub use clause::BoolClause;
pub use linear::{LinearEq, LinearLeq};

use crate::fns::AffineFn;
use crate::kernel::Solver;
use crate::{ConstraintId, VarRef};

/// Forward-checking `alldifferent(xs)`.
pub fn alldifferent(s: &mut Solver, xs: &[VarRef]) -> ConstraintId {
    s.post(AllDifferent::new(xs.to_vec()))
}

/// `sum(xs) = b`, bounds filtering.
pub fn linear_eq(s: &mut Solver, xs: &[VarRef], b: i64) -> ConstraintId {
    s.post(LinearEq::new(xs.to_vec(), b))
}

/// `sum(xs) <= b`, bounds filtering.
pub fn linear_leq(s: &mut Solver, xs: &[VarRef], b: i64) -> ConstraintId {
    s.post(LinearLeq::new(xs.to_vec(), b))
}

/// `OR(pos) OR OR(not neg)` over 0/1 variables.
pub fn bool_clause(s: &mut Solver, pos: &[VarRef], neg: &[VarRef]) -> ConstraintId {
    let lits: Vec<(VarRef, bool)> = pos
        .iter()
        .map(|&x| (x, true))
        .chain(neg.iter().map(|&x| (x, false)))
        .collect();
    s.post(BoolClause::new(lits))
}

/// `b <=> (x = i)` as a propagator.
pub fn reif_eq(s: &mut Solver, b: VarRef, x: VarRef, i: i64) -> ConstraintId {
    s.post(ReifEqChannel::new(b, x, i))
}

/// `y = f(x)` as a propagator.
pub fn affine_channel(s: &mut Solver, x: VarRef, y: VarRef, f: AffineFn) -> ConstraintId {
    s.post(AffineChannel::new(x, y, f))
}
