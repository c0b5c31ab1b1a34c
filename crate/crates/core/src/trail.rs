//! Reversible integer slots with a frame-structured undo log.
//!
//! Every piece of state that must be restored on backtrack (domain sizes,
//! bounds, modulo support counters) lives in a slot owned by the [`Trail`].
//! A slot is saved at most once per frame: each frame gets a fresh stamp and
//! a slot whose stamp matches the current one has already been logged.

use alloc::vec::Vec;

/// Handle to one reversible word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SlotId(u32);

impl SlotId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy)]
struct Frame {
    log_len: usize,
    stamp: u64,
}

#[derive(Debug, Clone, Default)]
pub struct Trail {
    words: Vec<i64>,
    stamps: Vec<u64>,
    log: Vec<(SlotId, i64)>,
    frames: Vec<Frame>,
    stamp: u64,
    next_stamp: u64,
}

impl Trail {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn new_slot(&mut self, init: i64) -> SlotId {
        let id = SlotId(self.words.len() as u32);
        self.words.push(init);
        self.stamps.push(self.stamp);
        id
    }

    #[inline]
    pub fn get(&self, slot: SlotId) -> i64 {
        self.words[slot.index()]
    }

    #[inline]
    pub fn set(&mut self, slot: SlotId, value: i64) {
        let i = slot.index();
        if !self.frames.is_empty() && self.stamps[i] != self.stamp {
            self.log.push((slot, self.words[i]));
            self.stamps[i] = self.stamp;
        }
        self.words[i] = value;
    }

    pub fn push_frame(&mut self) {
        self.frames.push(Frame {
            log_len: self.log.len(),
            stamp: self.stamp,
        });
        self.next_stamp += 1;
        self.stamp = self.next_stamp;
    }

    /// Restores every slot written since the matching [`Trail::push_frame`].
    ///
    /// Panics when no frame is open.
    pub fn pop_frame(&mut self) {
        let frame = self
            .frames
            .pop()
            .expect("pop_frame called without a matching push_frame");
        while self.log.len() > frame.log_len {
            let (slot, old) = self.log.pop().unwrap();
            self.words[slot.index()] = old;
        }
        self.stamp = frame.stamp;
    }

    pub fn depth(&self) -> usize {
        self.frames.len()
    }

    pub fn num_slots(&self) -> usize {
        self.words.len()
    }

    pub fn log_len(&self) -> usize {
        self.log.len()
    }
}
