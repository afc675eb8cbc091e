//! Smallest value window admitting a completion of a partial schedule.
//!
//! Given the speaker satisfactions already fixed by assigned talks and, for
//! every unassigned talk, the satisfaction it would get in each free slot,
//! find the narrowest interval `[lo, hi]` such that the fixed values lie in
//! it and the unassigned talks can be matched to distinct free slots with
//! all their values inside it. The width is a lower bound on the speaker
//! unfairness of every completion, and it is exact when the speaker term is
//! the only one that matters.

use crate::scalar::Scalar;

/// Reusable buffers for [`min_window`].
#[derive(Debug, Default)]
pub(crate) struct WindowSolver<T> {
    values: Vec<T>,
    slot_of_talk: Vec<usize>,
    talk_of_slot: Vec<usize>,
    masks: Vec<u64>,
}

const NONE: usize = usize::MAX;

impl<T: Scalar> WindowSolver<T> {
    pub(crate) fn new() -> Self {
        Self {
            values: Vec::new(),
            slot_of_talk: Vec::new(),
            talk_of_slot: Vec::new(),
            masks: Vec::new(),
        }
    }

    /// `value(i, s)` is the satisfaction of the `i`-th unassigned talk in slot
    /// `s`; `free` is the bit set of usable slots (at most 64 slots).
    /// `fixed` is the (min, max) of the already assigned values, if any.
    ///
    /// Returns `None` when no completion exists.
    pub(crate) fn min_window(
        &mut self,
        talks: usize,
        free: u64,
        fixed: Option<(T, T)>,
        value: impl Fn(usize, usize) -> T,
    ) -> Option<T> {
        if talks == 0 {
            return Some(fixed.map_or(T::zero(), |(lo, hi)| hi - lo));
        }
        if (free.count_ones() as usize) < talks {
            return None;
        }
        self.values.clear();
        for i in 0..talks {
            let mut rest = free;
            while rest != 0 {
                let s = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                self.values.push(value(i, s));
            }
        }
        if let Some((lo, hi)) = fixed {
            self.values.push(lo);
            self.values.push(hi);
        }
        self.values
            .sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        self.values.dedup();

        let (cap_lo, need_hi) = match fixed {
            Some((lo, hi)) => (lo, hi),
            None => (T::infinity(), T::neg_infinity()),
        };
        let count = self.values.len();
        let mut best: Option<T> = None;
        let mut j = 0usize;
        for i in 0..count {
            let lo = self.values[i];
            if lo > cap_lo {
                break;
            }
            if j < i {
                j = i;
            }
            while j < count && (self.values[j] < need_hi || !self.feasible(talks, free, lo, self.values[j], &value)) {
                j += 1;
            }
            if j == count {
                break;
            }
            let width = self.values[j] - lo;
            if best.map_or(true, |b| width < b) {
                best = Some(width);
            }
        }
        best
    }

    fn feasible(
        &mut self,
        talks: usize,
        free: u64,
        lo: T,
        hi: T,
        value: &impl Fn(usize, usize) -> T,
    ) -> bool {
        self.masks.clear();
        for i in 0..talks {
            let mut mask = 0u64;
            let mut rest = free;
            while rest != 0 {
                let s = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let v = value(i, s);
                if v >= lo && v <= hi {
                    mask |= 1 << s;
                }
            }
            if mask == 0 {
                return false;
            }
            self.masks.push(mask);
        }
        self.slot_of_talk.clear();
        self.slot_of_talk.resize(talks, NONE);
        self.talk_of_slot.clear();
        self.talk_of_slot.resize(64, NONE);
        for i in 0..talks {
            let mut visited = 0u64;
            if !self.augment(i, &mut visited) {
                return false;
            }
        }
        true
    }

    fn augment(&mut self, talk: usize, visited: &mut u64) -> bool {
        let mut rest = self.masks[talk] & !*visited;
        while rest != 0 {
            let s = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            *visited |= 1 << s;
            let owner = self.talk_of_slot[s];
            if owner == NONE || self.augment(owner, visited) {
                self.talk_of_slot[s] = talk;
                self.slot_of_talk[talk] = s;
                return true;
            }
        }
        false
    }
}
