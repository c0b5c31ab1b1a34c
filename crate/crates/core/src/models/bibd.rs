use alloc::vec::Vec;

use super::{negate, Model};
use crate::constraints::{bool_clause, linear_eq};
use crate::kernel::Solver;
use crate::{EngineMode, Error, VarRef};

/// Number of blocks `b` and replication `r` of a `(v, k, lambda)` design,
/// after the usual divisibility checks.
pub fn bibd_dimensions(v: usize, k: usize, lambda: usize) -> Result<(usize, usize), Error> {
    if v == 0 || k == 0 || lambda == 0 || k > v {
        return Err(Error::InvalidParameter("bibd needs 1 <= k <= v and lambda >= 1"));
    }
    if k == v {
        // every block is the whole point set
        return Ok((lambda, lambda));
    }
    if k == 1 {
        return Err(Error::InvalidParameter("bibd with k = 1 < v cannot cover pairs"));
    }
    let r_num = lambda * (v - 1);
    if !r_num.is_multiple_of(k - 1) {
        return Err(Error::Infeasible("lambda*(v-1) is not divisible by k-1"));
    }
    let b_num = lambda * v * (v - 1);
    if !b_num.is_multiple_of(k * (k - 1)) {
        return Err(Error::Infeasible("lambda*v*(v-1) is not divisible by k*(k-1)"));
    }
    Ok((b_num / (k * (k - 1)), r_num / (k - 1)))
}

/// Incidence matrix of a balanced incomplete block design: `v` rows (points)
/// and `b` columns (blocks), rows sum to `r`, columns to `k`, and every two
/// rows share exactly `lambda` columns.
///
/// The pair condition uses `z <=> (a and b)` written with negations only:
/// `(not z or a)`, `(not z or b)`, `(z or not a or not b)`, where every
/// `not` is a negation expression rather than a negative literal.
pub fn build_bibd(v: usize, k: usize, lambda: usize, mode: EngineMode) -> Result<Model, Error> {
    let (b, r) = bibd_dimensions(v, k, lambda)?;
    let mut s = Solver::new(mode);
    let cells: Vec<VarRef> = (0..v * b).map(|_| s.new_var(0, 1)).collect();
    let at = |i: usize, j: usize| cells[i * b + j];
    let mut negs = Vec::with_capacity(cells.len());
    for &c in &cells {
        negs.push(negate(&mut s, c)?);
    }

    for i in 0..v {
        let row: Vec<VarRef> = (0..b).map(|j| at(i, j)).collect();
        linear_eq(&mut s, &row, r as i64);
    }
    for j in 0..b {
        let col: Vec<VarRef> = (0..v).map(|i| at(i, j)).collect();
        linear_eq(&mut s, &col, k as i64);
    }
    for i1 in 0..v {
        for i2 in i1 + 1..v {
            let mut both = Vec::with_capacity(b);
            for j in 0..b {
                let z = s.new_var(0, 1);
                let nz = negate(&mut s, z)?;
                let (a, na) = (at(i1, j), negs[i1 * b + j]);
                let (c, nc) = (at(i2, j), negs[i2 * b + j]);
                bool_clause(&mut s, &[nz, a], &[]);
                bool_clause(&mut s, &[nz, c], &[]);
                bool_clause(&mut s, &[z, na, nc], &[]);
                both.push(z);
            }
            linear_eq(&mut s, &both, lambda as i64);
        }
    }
    Ok(Model::new(s, cells))
}
