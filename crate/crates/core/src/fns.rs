//! Integer view functions and their inverses.
//!
//! Injective functions are affine maps `v -> a*v + b` with `a != 0`; a shift
//! is the special case `a = 1`. Affine maps are closed under composition, which
//! is what lets variable views fold a chain of views into a single function.
//! Non-injective functions expose a set-valued inverse over a finite universe.

use alloc::vec::Vec;

use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Monotone,
    AntiMonotone,
    Neither,
}

/// An injective `ψ` together with its partial inverse.
pub trait InjectiveViewFn {
    fn forward(&self, v: i64) -> i64;
    /// `None` stands for the undefined preimage.
    fn inverse(&self, w: i64) -> Option<i64>;
    fn monotonicity(&self) -> Monotonicity;
}

/// A possibly non-injective `ψ` whose inverse is a set of preimages.
pub trait NonInjectiveViewFn {
    fn forward(&self, v: i64) -> i64;

    /// All `v` in `lo..=hi` with `forward(v) == w`, or `None` when there are none.
    fn inverse_set(&self, w: i64, lo: i64, hi: i64) -> Option<Vec<i64>> {
        let set: Vec<i64> = (lo..=hi).filter(|&v| self.forward(v) == w).collect();
        if set.is_empty() {
            None
        } else {
            Some(set)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AffineFn {
    a: i64,
    b: i64,
}

impl AffineFn {
    pub const IDENTITY: AffineFn = AffineFn { a: 1, b: 0 };

    pub fn new(a: i64, b: i64) -> Result<Self, Error> {
        if a == 0 {
            return Err(Error::ZeroCoefficient);
        }
        Ok(AffineFn { a, b })
    }

    pub fn shift(k: i64) -> Self {
        AffineFn { a: 1, b: k }
    }

    pub fn negation() -> Self {
        AffineFn { a: -1, b: 1 }
    }

    pub fn coefficient(&self) -> i64 {
        self.a
    }

    pub fn offset(&self) -> i64 {
        self.b
    }

    /// `self ∘ inner`, i.e. `v -> self(inner(v))`.
    pub fn compose(self, inner: AffineFn) -> AffineFn {
        AffineFn {
            a: self.a * inner.a,
            b: self.a * inner.b + self.b,
        }
    }

    /// Bound on the underlying value equivalent to `ψ(x) >= v`.
    pub fn lower_bound_preimage(&self, v: i64) -> BaseBound {
        if self.a > 0 {
            BaseBound::AtLeast(div_ceil(v - self.b, self.a))
        } else {
            BaseBound::AtMost(div_floor(v - self.b, self.a))
        }
    }

    /// Bound on the underlying value equivalent to `ψ(x) <= v`.
    pub fn upper_bound_preimage(&self, v: i64) -> BaseBound {
        if self.a > 0 {
            BaseBound::AtMost(div_floor(v - self.b, self.a))
        } else {
            BaseBound::AtLeast(div_ceil(v - self.b, self.a))
        }
    }
}

impl InjectiveViewFn for AffineFn {
    #[inline]
    fn forward(&self, v: i64) -> i64 {
        self.a * v + self.b
    }

    #[inline]
    fn inverse(&self, w: i64) -> Option<i64> {
        let k = w - self.b;
        if self.a == 1 {
            Some(k)
        } else if k % self.a == 0 {
            Some(k / self.a)
        } else {
            None
        }
    }

    fn monotonicity(&self) -> Monotonicity {
        if self.a > 0 {
            Monotonicity::Monotone
        } else {
            Monotonicity::AntiMonotone
        }
    }
}

/// A bound update to apply on the underlying variable of a view.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseBound {
    AtLeast(i64),
    AtMost(i64),
}

/// `y = x mod k` with residues in `0..k` (floor modulus).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModuloFn {
    k: i64,
}

impl ModuloFn {
    pub fn new(k: i64) -> Result<Self, Error> {
        if k <= 0 {
            return Err(Error::NonPositiveModulus(k));
        }
        Ok(ModuloFn { k })
    }

    pub fn modulus(&self) -> i64 {
        self.k
    }
}

impl NonInjectiveViewFn for ModuloFn {
    #[inline]
    fn forward(&self, v: i64) -> i64 {
        v.rem_euclid(self.k)
    }
}

/// `b = [x == i]`, the function behind a literal view.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EqualsFn {
    pub value: i64,
}

impl NonInjectiveViewFn for EqualsFn {
    fn forward(&self, v: i64) -> i64 {
        (v == self.value) as i64
    }
}

pub fn div_floor(n: i64, d: i64) -> i64 {
    let q = n / d;
    if n % d != 0 && ((n < 0) != (d < 0)) {
        q - 1
    } else {
        q
    }
}

pub fn div_ceil(n: i64, d: i64) -> i64 {
    -div_floor(-n, d)
}
