use alloc::vec::Vec;

use super::{shift, Model};
use crate::constraints::alldifferent;
use crate::kernel::Solver;
use crate::{EngineMode, Error, Inconsistent, VarRef};

/// Langford pairing L(2, n). `p_i` is the position of the first `i`; the
/// second `i` sits at `p_i + i + 1`. All `2n` positions lie in `[0, 2n-1]`
/// and are pairwise different.
///
/// The decision variables are `p_1..p_n`.
pub fn build_langford(n: usize, mode: EngineMode) -> Result<Model, Error> {
    if n == 0 {
        return Err(Error::InvalidParameter("langford needs n >= 1"));
    }
    let mut s = Solver::new(mode);
    let last = 2 * n as i64 - 1;
    let mut firsts: Vec<VarRef> = Vec::with_capacity(n);
    let mut all: Vec<VarRef> = Vec::with_capacity(2 * n);
    for i in 1..=n as i64 {
        let hi = last - (i + 1);
        let p = if hi < 0 {
            // the pair does not fit at all
            let p = s.new_var(0, 0);
            s.note(Err(Inconsistent));
            p
        } else {
            s.new_var(0, hi)
        };
        firsts.push(p);
    }
    all.extend_from_slice(&firsts);
    for (i, &p) in firsts.iter().enumerate() {
        let q = shift(&mut s, p, i as i64 + 2)?;
        all.push(q);
    }
    alldifferent(&mut s, &all);
    Ok(Model::new(s, firsts))
}
