use alloc::vec::Vec;

use super::{affine, reify_eq, Model};
use crate::constraints::linear_eq;
use crate::kernel::Solver;
use crate::{EngineMode, Error, VarRef};

/// Magic series of length `n`: `s_i` is the number of occurrences of `i`
/// in the series, posted as `sum_j [s_j = i] - s_i = 0`.
pub fn build_magicseries(n: usize, mode: EngineMode) -> Result<Model, Error> {
    if n == 0 {
        return Err(Error::InvalidParameter("magic series needs n >= 1"));
    }
    let mut s = Solver::new(mode);
    let hi = n as i64 - 1;
    let series: Vec<VarRef> = (0..n).map(|_| s.new_var(0, hi)).collect();
    for i in 0..n {
        let mut terms = Vec::with_capacity(n + 1);
        for &sj in &series {
            terms.push(reify_eq(&mut s, sj, i as i64)?);
        }
        terms.push(affine(&mut s, series[i], -1, 0)?);
        linear_eq(&mut s, &terms, 0);
    }
    Ok(Model::new(s, series))
}
