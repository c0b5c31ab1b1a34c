//! Domain views over non-injective functions: literal views `b <=> (x = i)`
//! and modulo views `y = x mod k`.
//!
//! A view value survives while at least one support remains in the base
//! domain, so a base removal only schedules the view's watchers when it kills
//! the last support of some view value. Modulo views count supports per
//! residue in reversible slots; the support sets themselves are recovered by
//! scanning the base domain.

use alloc::vec::Vec;

use crate::fns::{ModuloFn, NonInjectiveViewFn};
use crate::kernel::Store;
use crate::variables::NodeKind;
use crate::{Error, PropResult, VarRef};

impl Store {
    /// The 0/1 view of `x = i`.
    pub fn literal_view(&mut self, x: VarRef, i: i64) -> Result<VarRef, Error> {
        self.new_domain_view_node(NodeKind::Literal { base: x, value: i }, "literal view")
    }

    /// `y = x mod k` (residues in `0..k`); `k` must be positive.
    pub fn modulo_view(&mut self, x: VarRef, k: i64) -> Result<VarRef, Error> {
        let f = ModuloFn::new(k)?;
        if self.mode != crate::variables::EngineMode::DomainView {
            return Err(Error::UnsupportedMode { view: "modulo view", mode: self.mode });
        }
        let mut counts = alloc::vec![0i64; k as usize];
        for w in self.values(x) {
            counts[f.forward(w) as usize] += 1;
        }
        let supports = counts.into_iter().map(|n| self.trail.new_slot(n)).collect();
        self.mem.add(k as usize * 16);
        self.new_domain_view_node(NodeKind::Modulo { base: x, f, supports }, "modulo view")
    }

    pub(crate) fn literal_member(&self, base: VarRef, i: i64, v: i64) -> bool {
        match v {
            0 => !self.is_bound_to(base, i),
            1 => self.member(base, i),
            _ => false,
        }
    }

    pub(crate) fn literal_remove(&mut self, base: VarRef, i: i64, v: i64) -> PropResult {
        match v {
            0 => self.bind(base, i),
            1 => self.remove(base, i),
            _ => Ok(()),
        }
    }

    /// View value killed by the base losing `v`, if any. Must run after the
    /// base domain has been updated.
    pub(crate) fn literal_lost(&self, base: VarRef, i: i64, v: i64) -> Option<i64> {
        if v == i {
            Some(1)
        } else if self.is_bound_to(base, i) {
            Some(0)
        } else {
            None
        }
    }

    fn supports(&self, y: VarRef) -> &[crate::trail::SlotId] {
        match &self.nodes[y.index()].kind {
            NodeKind::Modulo { supports, .. } => supports,
            _ => unreachable!("not a modulo view"),
        }
    }

    /// Number of base values currently supporting residue `r` of `y`.
    pub fn support_count(&self, y: VarRef, r: i64) -> i64 {
        let s = self.supports(y);
        if r < 0 || r as usize >= s.len() {
            return 0;
        }
        self.trail.get(s[r as usize])
    }

    pub(crate) fn modulo_member(&self, y: VarRef, v: i64) -> bool {
        self.support_count(y, v) > 0
    }

    pub(crate) fn modulo_residues(&self, y: VarRef) -> impl DoubleEndedIterator<Item = i64> + '_ {
        let s = self.supports(y);
        (0..s.len() as i64).filter(move |&r| self.trail.get(s[r as usize]) > 0)
    }

    pub(crate) fn modulo_remove(&mut self, y: VarRef, base: VarRef, k: i64, v: i64) -> PropResult {
        if !self.modulo_member(y, v) {
            return Ok(());
        }
        let f = ModuloFn::new(k).expect("validated at construction");
        let support: Vec<i64> = self.values(base).into_iter().filter(|&w| f.forward(w) == v).collect();
        for w in support {
            self.remove(base, w)?;
        }
        Ok(())
    }

    pub(crate) fn modulo_lost(&mut self, y: VarRef, k: i64, w: i64) -> Option<i64> {
        let r = w.rem_euclid(k);
        let slot = self.supports(y)[r as usize];
        let left = self.trail.get(slot) - 1;
        self.trail.set(slot, left);
        if left == 0 {
            Some(r)
        } else {
            None
        }
    }
}
