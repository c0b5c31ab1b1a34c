use alloc::vec::Vec;

use super::{affine, reify_eq, Model};
use crate::constraints::{bool_clause, linear_leq};
use crate::kernel::Solver;
use crate::{EngineMode, Error, VarRef};

/// A small slab-design instance: each order has a weight and a color and is
/// assigned to one slab; a slab carries at most its capacity and at most two
/// colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlabInstance {
    pub weights: Vec<i64>,
    pub colors: Vec<usize>,
    pub capacities: Vec<i64>,
}

impl SlabInstance {
    /// The desk-scale instance used by the benchmark suite.
    pub fn mini() -> Self {
        SlabInstance {
            weights: alloc::vec![3, 2, 4, 1, 3, 2, 2, 3, 1],
            colors: alloc::vec![0, 1, 2, 0, 3, 1, 2, 3, 4],
            capacities: alloc::vec![8, 9, 10],
        }
    }

    pub fn num_colors(&self) -> usize {
        self.colors.iter().map(|&c| c + 1).max().unwrap_or(0)
    }
}

/// Per slab `s` and color `c`, `y_{s,c} <=> OR_{o of color c} (x_o = s)`,
/// then `sum_c y_{s,c} <= 2` and `sum_o w_o * (x_o = s) <= cap_s`.
pub fn build_slab(inst: &SlabInstance, mode: EngineMode) -> Result<Model, Error> {
    if inst.weights.len() != inst.colors.len() {
        return Err(Error::InvalidParameter("slab needs one color per order"));
    }
    if inst.capacities.is_empty() && !inst.weights.is_empty() {
        return Err(Error::InvalidParameter("slab needs at least one slab"));
    }
    let mut s = Solver::new(mode);
    let n_slabs = inst.capacities.len() as i64;
    let xs: Vec<VarRef> = inst.weights.iter().map(|_| s.new_var(0, n_slabs - 1)).collect();
    for (slab, &cap) in inst.capacities.iter().enumerate() {
        let mut on: Vec<VarRef> = Vec::with_capacity(xs.len());
        for &x in &xs {
            on.push(reify_eq(&mut s, x, slab as i64)?);
        }
        let mut load = Vec::with_capacity(xs.len());
        for (&lit, &w) in on.iter().zip(&inst.weights) {
            load.push(affine(&mut s, lit, w, 0)?);
        }
        linear_leq(&mut s, &load, cap);

        let mut used = Vec::new();
        for c in 0..inst.num_colors() {
            let of_color: Vec<VarRef> = (0..xs.len()).filter(|&o| inst.colors[o] == c).map(|o| on[o]).collect();
            if of_color.is_empty() {
                continue;
            }
            let y = s.new_var(0, 1);
            bool_clause(&mut s, &of_color, &[y]);
            for &lit in &of_color {
                bool_clause(&mut s, &[y], &[lit]);
            }
            used.push(y);
        }
        linear_leq(&mut s, &used, 2);
    }
    Ok(Model::new(s, xs))
}
