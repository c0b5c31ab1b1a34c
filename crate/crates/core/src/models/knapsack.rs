use alloc::vec::Vec;

use super::{affine, Model};
use crate::constraints::linear_eq;
use crate::kernel::Solver;
use crate::{EngineMode, Error, VarRef};

/// `sum_i weights[i] * x_i = target` with `x_i` in `ranges[i]` (inclusive).
pub fn build_knapsack(weights: &[i64], target: i64, ranges: &[(i64, i64)], mode: EngineMode) -> Result<Model, Error> {
    if weights.len() != ranges.len() {
        return Err(Error::InvalidParameter("knapsack needs one range per weight"));
    }
    if ranges.iter().any(|&(lo, hi)| lo > hi) {
        return Err(Error::InvalidParameter("knapsack range is empty"));
    }
    let mut s = Solver::new(mode);
    let xs: Vec<VarRef> = ranges.iter().map(|&(lo, hi)| s.new_var(lo, hi)).collect();
    let mut terms = Vec::with_capacity(xs.len());
    for (&x, &w) in xs.iter().zip(weights) {
        terms.push(affine(&mut s, x, w, 0)?);
    }
    linear_eq(&mut s, &terms, target);
    Ok(Model::new(s, xs))
}
