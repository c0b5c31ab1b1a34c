//! A small finite-domain propagation kernel with three interchangeable ways
//! of handling expressions such as `x + 3`, `2x - 1` or `b <=> (x = 4)`:
//!
//! * **no views**: expressions are flattened into auxiliary variables tied to
//!   the originals by channeling constraints;
//! * **variable views**: adapters that forward both domain operations and
//!   constraint registration to the underlying variable;
//! * **domain views**: adapters that forward domain operations only and keep
//!   their own watch lists. These also support non-injective functions
//!   (literal and modulo views).
//!
//! The kernel supports both variable-based events (`c` must run because `x`
//! shrank) and value-based events (`c` must run because `x` lost `v`).
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! ```
//! use viewcp_core::constraints::{alldifferent, linear_eq};
//! use viewcp_core::search::dfs_first_fail;
//! use viewcp_core::{EngineMode, Solver};
//!
//! let mut s = Solver::new(EngineMode::DomainView);
//! let x = s.new_var(0, 5);
//! let y = s.new_var(0, 5);
//! let two_y = s.affine_dview(y, 2, 0).unwrap();
//! linear_eq(&mut s, &[x, two_y], 6);
//! alldifferent(&mut s, &[x, y]);
//! let out = dfs_first_fail(&mut s, &[x, y], None);
//! assert_eq!(out.solutions, vec![vec![4, 1], vec![0, 3]]);
//! ```

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod constraints;
pub mod domain;
pub mod domain_views;
pub mod fns;
pub mod kernel;
pub mod models;
pub mod noninjective;
pub mod search;
pub mod trail;
pub mod variable_views;
pub mod variables;

pub use kernel::{Event, Fixpoint, PropagationQueue, Propagator, RunStats, Solver, Store};
pub use variables::EngineMode;

/// Handle to a variable or a view.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarRef(u32);

impl VarRef {
    pub fn new(index: usize) -> Self {
        VarRef(index as u32)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConstraintId(u32);

impl ConstraintId {
    pub fn new(index: usize) -> Self {
        ConstraintId(index as u32)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A domain was emptied. Not an error: it prunes the current branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inconsistent;

pub type PropResult = Result<(), Inconsistent>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An affine view `a*x + b` with `a = 0` is not injective.
    ZeroCoefficient,
    NonPositiveModulus(i64),
    /// The requested view kind does not exist in this engine mode.
    UnsupportedMode { view: &'static str, mode: EngineMode },
    InvalidParameter(&'static str),
    /// The instance fails a necessary condition checked before search.
    Infeasible(&'static str),
}

impl core::fmt::Display for Error {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Error::ZeroCoefficient => f.write_str("affine view with zero coefficient"),
            Error::NonPositiveModulus(k) => write!(f, "modulo view needs k >= 1, got {k}"),
            Error::UnsupportedMode { view, mode } => write!(f, "{view} is not available in {mode} mode"),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::Infeasible(why) => write!(f, "infeasible instance: {why}"),
        }
    }
}

impl core::error::Error for Error {}
