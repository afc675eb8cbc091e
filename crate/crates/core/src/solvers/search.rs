//! Depth-first branch-and-bound over talk → slot choices.
//!
//! Talks are branched in descending overall interest, candidate slots in
//! descending overall availability. Each node is bounded by the sum of three
//! independent upper bounds, one per objective term:
//!
//! * welfare: fixed gain plus an optimal assignment of the remaining talks
//!   to the free slots (a cheap row-maximum relaxation is tried first);
//! * participant fairness: per participant type, the reachable interval of
//!   normalized gain, tightened by pairwise difference bounds;
//! * speaker fairness: the per-talk reachable interval, tightened by the
//!   narrowest value window that still admits a perfect matching.
//!
//! Participants with identical rows are merged into one type; slots with
//! identical availability columns and talks whose crowd and contributions
//! to every active term coincide are branched only once. Requiring equal
//! crowds even when welfare is weighted out keeps the returned schedule's
//! reported metrics independent of which twin was explored.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use crate::assignment::Hungarian;
use crate::error::{Error, Result};
use crate::metrics::ideal_gains;
use crate::model::{Instance, ObjectiveWeights, SolveConfig};
use crate::scalar::Scalar;

use super::window::WindowSolver;

pub(crate) const MAX_SLOTS: usize = 64;
const NONE: usize = usize::MAX;
/// Talks whose contribution rows differ by less than this are treated as interchangeable.
const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// Precomputed, immutable view of an instance under fixed weights.
pub(crate) struct SearchModel<T> {
    n: usize,
    l: usize,
    weights: ObjectiveWeights<T>,
    /// `welfare_weight · G[t][s] / (m·n)`, talks × slots.
    welfare: Vec<T>,
    /// `G[t][s] / (m·n)`, regardless of weights; used to detect twin talks.
    share: Vec<T>,
    types: usize,
    /// `V_q(t)·A_q(s) / ICG_q` per participant type, `[(q·n + t)·l + s]`.
    part: Vec<T>,
    /// `G[t][s] / IEC_t`, talks × slots.
    speaker: Vec<T>,
    talk_order: Vec<usize>,
    slot_order: Vec<usize>,
    /// Position (in branching order) of the previous interchangeable talk.
    prev_twin_talk: Vec<usize>,
    /// Bit set of lower-indexed slots with an identical availability column.
    lower_twin_slots: Vec<u64>,
}

impl<T: Scalar> SearchModel<T> {
    pub(crate) fn new(instance: &Instance<T>, weights: ObjectiveWeights<T>) -> Result<Self> {
        instance.check(true)?;
        weights.check()?;
        let (m, n, l) = (
            instance.participant_count(),
            instance.talk_count(),
            instance.slot_count(),
        );
        if l > MAX_SLOTS {
            return Err(Error::Size(format!(
                "exact search supports at most {MAX_SLOTS} slots, got {l}"
            )));
        }
        let (icg, iec) = ideal_gains(instance)?;
        let crowd = instance.crowd_matrix();
        let mn = T::from_usize(m * n).unwrap();

        let welfare: Vec<T> = (0..n)
            .flat_map(|t| (0..l).map(move |s| (t, s)))
            .map(|(t, s)| weights.welfare_weight * crowd.get(t, s) / mn)
            .collect();
        let share: Vec<T> = (0..n)
            .flat_map(|t| (0..l).map(move |s| (t, s)))
            .map(|(t, s)| crowd.get(t, s) / mn)
            .collect();
        let speaker: Vec<T> = (0..n)
            .flat_map(|t| (0..l).map(move |s| (t, s)))
            .map(|(t, s)| (crowd.get(t, s) / iec[t]).min(T::one()))
            .collect();

        let mut reps: Vec<usize> = Vec::new();
        for p in 0..m {
            let same = |q: usize| {
                instance.interest().row(p) == instance.interest().row(q)
                    && instance.availability().row(p) == instance.availability().row(q)
            };
            if !reps.iter().any(|&q| same(q)) {
                reps.push(p);
            }
        }
        let types = reps.len();
        let mut part = Vec::with_capacity(types * n * l);
        for &p in &reps {
            for t in 0..n {
                for s in 0..l {
                    part.push(instance.gain(p, t, s) / icg[p]);
                }
            }
        }

        let desc = |key: &dyn Fn(usize) -> T, count: usize| {
            let mut idx: Vec<usize> = (0..count).collect();
            idx.sort_by(|&a, &b| {
                key(b)
                    .partial_cmp(&key(a))
                    .unwrap_or(std::cmp::Ordering::Equal)
                    .then(a.cmp(&b))
            });
            idx
        };
        let talk_order = desc(&|t| instance.overall_interest(t), n);
        let slot_order = desc(&|s| instance.overall_availability(s), l);

        let mut model = Self {
            n,
            l,
            weights,
            welfare,
            share,
            types,
            part,
            speaker,
            talk_order,
            slot_order,
            prev_twin_talk: vec![NONE; n],
            lower_twin_slots: vec![0; l],
        };

        for s in 0..l {
            for r in 0..s {
                let same = (0..m).all(|p| instance.availability().get(p, r) == instance.availability().get(p, s));
                if same {
                    model.lower_twin_slots[s] |= 1 << r;
                }
            }
        }
        for k in 0..n {
            let t = model.talk_order[k];
            model.prev_twin_talk[k] = (0..k)
                .rev()
                .find(|&j| model.talks_interchangeable(model.talk_order[j], t))
                .unwrap_or(NONE);
        }
        Ok(model)
    }

    fn talks_interchangeable(&self, a: usize, b: usize) -> bool {
        let tol = T::lit(SYMMETRY_TOLERANCE);
        let rows_close = |data: &[T], a: usize, b: usize| {
            (0..self.l).all(|s| (data[a * self.l + s] - data[b * self.l + s]).abs() <= tol)
        };
        let w = &self.weights;
        rows_close(&self.share, a, b)
            && (w.lambda1.is_zero()
                || (0..self.types).all(|q| rows_close(&self.part, q * self.n + a, q * self.n + b)))
            && (w.lambda2.is_zero() || rows_close(&self.speaker, a, b))
    }

    #[inline]
    fn w(&self, t: usize, s: usize) -> T {
        self.welfare[t * self.l + s]
    }

    #[inline]
    fn a(&self, q: usize, t: usize, s: usize) -> T {
        self.part[(q * self.n + t) * self.l + s]
    }

    #[inline]
    fn e(&self, t: usize, s: usize) -> T {
        self.speaker[t * self.l + s]
    }

    /// Objective of a complete assignment, summed in talk-index order.
    pub(crate) fn objective(&self, slot_of: &[usize]) -> T {
        let w = &self.weights;
        let mut total = T::zero();
        if !w.welfare_weight.is_zero() {
            total = (0..self.n).fold(T::zero(), |acc, t| acc + self.w(t, slot_of[t]));
        }
        if !w.lambda1.is_zero() {
            let (mut lo, mut hi) = (T::infinity(), T::neg_infinity());
            for q in 0..self.types {
                let g = (0..self.n).fold(T::zero(), |acc, t| acc + self.a(q, t, slot_of[t]));
                lo = lo.min(g);
                hi = hi.max(g);
            }
            total = total - w.lambda1 * (hi - lo);
        }
        if !w.lambda2.is_zero() {
            let (mut lo, mut hi) = (T::infinity(), T::neg_infinity());
            for t in 0..self.n {
                let e = self.e(t, slot_of[t]);
                lo = lo.min(e);
                hi = hi.max(e);
            }
            total = total - w.lambda2 * (hi - lo);
        }
        total
    }
}

/// Per-worker scratch state for bounding.
pub(crate) struct Scratch<T> {
    hungarian: Hungarian<T>,
    window: WindowSolver<T>,
    lo: Vec<T>,
    hi: Vec<T>,
    free_slots: Vec<usize>,
    rest_talks: Vec<usize>,
}

impl<T: Scalar> Scratch<T> {
    pub(crate) fn new() -> Self {
        Self {
            hungarian: Hungarian::new(),
            window: WindowSolver::new(),
            lo: Vec::new(),
            hi: Vec::new(),
            free_slots: Vec::new(),
            rest_talks: Vec::new(),
        }
    }
}

/// A partial assignment with running sums, grown along the branching order.
#[derive(Clone)]
pub(crate) struct Partial<T> {
    /// Slot of each talk (by talk index) or `NONE`.
    slot_of: Vec<usize>,
    used: u64,
    depth: usize,
    welfare: T,
    /// Running normalized gain per participant type.
    gain: Vec<T>,
    nec_lo: T,
    nec_hi: T,
}

impl<T: Scalar> Partial<T> {
    pub(crate) fn root(model: &SearchModel<T>) -> Self {
        Self {
            slot_of: vec![NONE; model.n],
            used: 0,
            depth: 0,
            welfare: T::zero(),
            gain: vec![T::zero(); model.types],
            nec_lo: T::infinity(),
            nec_hi: T::neg_infinity(),
        }
    }

    /// Builds the node for an arbitrary injective set of assigned talks.
    /// `depth` is meaningful only when the assigned talks form a prefix of
    /// the branching order.
    pub(crate) fn from_assignment(model: &SearchModel<T>, partial: &[Option<usize>]) -> Result<Self> {
        if partial.len() != model.n {
            return Err(Error::InvalidSchedule(format!(
                "partial assignment has {} entries for {} talks",
                partial.len(),
                model.n
            )));
        }
        let mut node = Self::root(model);
        for (t, slot) in partial.iter().enumerate() {
            if let Some(s) = *slot {
                if s >= model.l {
                    return Err(Error::InvalidSchedule(format!("talk {t} assigned to missing slot {s}")));
                }
                if node.used & (1 << s) != 0 {
                    return Err(Error::InvalidSchedule(format!("slot {s} assigned twice")));
                }
                node.assign(model, t, s);
            }
        }
        node.depth = model
            .talk_order
            .iter()
            .take_while(|&&t| node.slot_of[t] != NONE)
            .count();
        Ok(node)
    }

    fn assign(&mut self, model: &SearchModel<T>, t: usize, s: usize) {
        self.slot_of[t] = s;
        self.used |= 1 << s;
        self.depth += 1;
        self.welfare = self.welfare + model.w(t, s);
        for q in 0..model.types {
            self.gain[q] = self.gain[q] + model.a(q, t, s);
        }
        let e = model.e(t, s);
        self.nec_lo = self.nec_lo.min(e);
        self.nec_hi = self.nec_hi.max(e);
    }

    /// Reverts `assign(model, t, _)` given the state saved before it.
    fn unassign(&mut self, t: usize, saved: &Saved<T>, gain: &[T]) {
        self.used &= !(1 << self.slot_of[t]);
        self.slot_of[t] = NONE;
        self.depth -= 1;
        self.welfare = saved.welfare;
        self.gain.copy_from_slice(gain);
        self.nec_lo = saved.nec_lo;
        self.nec_hi = saved.nec_hi;
    }

    /// Objective of a complete node from its running sums.
    fn value(&self, model: &SearchModel<T>) -> T {
        let w = &model.weights;
        let mut total = self.welfare;
        if !w.lambda1.is_zero() {
            let lo = self.gain.iter().copied().fold(T::infinity(), T::min);
            let hi = self.gain.iter().copied().fold(T::neg_infinity(), T::max);
            total = total - w.lambda1 * (hi - lo);
        }
        if !w.lambda2.is_zero() {
            total = total - w.lambda2 * (self.nec_hi - self.nec_lo);
        }
        total
    }

    fn save(&self) -> Saved<T> {
        Saved {
            welfare: self.welfare,
            nec_lo: self.nec_lo,
            nec_hi: self.nec_hi,
        }
    }

    pub(crate) fn slots(&self) -> &[usize] {
        &self.slot_of
    }

    fn is_complete(&self, model: &SearchModel<T>) -> bool {
        self.slot_of.iter().filter(|&&s| s != NONE).count() == model.n
    }
}

/// Scalar state of a [`Partial`] saved before an in-place assignment.
struct Saved<T> {
    welfare: T,
    nec_lo: T,
    nec_hi: T,
}

/// Upper bound on the objective over every completion of `node`.
///
/// With `threshold = Some(x)` the computation stops as soon as the bound is
/// known to be `<= x` (the returned value is then only guaranteed `<= x`).
pub(crate) fn bound<T: Scalar>(
    model: &SearchModel<T>,
    node: &Partial<T>,
    scratch: &mut Scratch<T>,
    threshold: Option<T>,
) -> T {
    let mut rest = std::mem::take(&mut scratch.rest_talks);
    let mut free = std::mem::take(&mut scratch.free_slots);
    rest.clear();
    rest.extend((0..model.n).filter(|&t| node.slot_of[t] == NONE));
    free.clear();
    free.extend((0..model.l).filter(|&s| node.used & (1 << s) == 0));
    let value = bound_with(model, node, scratch, threshold, &rest, &free);
    scratch.rest_talks = rest;
    scratch.free_slots = free;
    value
}

fn bound_with<T: Scalar>(
    model: &SearchModel<T>,
    node: &Partial<T>,
    scratch: &mut Scratch<T>,
    threshold: Option<T>,
    rest: &[usize],
    free: &[usize],
) -> T {
    let w = &model.weights;
    let free_mask = !node.used & low_bits(model.l);

    // Welfare: row-maximum relaxation.
    let mut welfare = T::zero();
    if !w.welfare_weight.is_zero() {
        welfare = node.welfare
            + rest.iter().fold(T::zero(), |acc, &t| {
                acc + free.iter().fold(T::neg_infinity(), |m, &s| m.max(model.w(t, s)))
            });
    }

    // Participant fairness: interval bound.
    let mut participant = T::zero();
    if !w.lambda1.is_zero() && model.types > 1 {
        scratch.lo.clear();
        scratch.hi.clear();
        for q in 0..model.types {
            let (mut lo, mut hi) = (node.gain[q], node.gain[q]);
            for &t in rest {
                let (mut a_lo, mut a_hi) = (T::infinity(), T::neg_infinity());
                for &s in free {
                    let a = model.a(q, t, s);
                    a_lo = a_lo.min(a);
                    a_hi = a_hi.max(a);
                }
                lo = lo + a_lo;
                hi = hi + a_hi;
            }
            scratch.lo.push(lo);
            scratch.hi.push(hi);
        }
        let min_hi = scratch.hi.iter().copied().fold(T::infinity(), T::min);
        let max_lo = scratch.lo.iter().copied().fold(T::neg_infinity(), T::max);
        participant = (min_hi - max_lo).min(T::zero());
    }

    // Speaker fairness: interval bound.
    let mut speaker = T::zero();
    if !w.lambda2.is_zero() {
        // Each assigned talk is its own interval, so they pin both ends.
        let (mut min_hi, mut max_lo) = (node.nec_lo, node.nec_hi);
        for &t in rest {
            let (mut e_lo, mut e_hi) = (T::infinity(), T::neg_infinity());
            for &s in free {
                let e = model.e(t, s);
                e_lo = e_lo.min(e);
                e_hi = e_hi.max(e);
            }
            min_hi = min_hi.min(e_hi);
            max_lo = max_lo.max(e_lo);
        }
        speaker = (min_hi - max_lo).min(T::zero());
    }

    let total = |welfare: T, participant: T, speaker: T| {
        welfare + w.lambda1 * participant + w.lambda2 * speaker
    };
    let done = |value: T| threshold.map_or(false, |x| value <= x);
    let mut current = total(welfare, participant, speaker);
    if done(current) || rest.is_empty() {
        return current;
    }

    // Participant fairness: pairwise difference bound.
    if !w.lambda1.is_zero() && model.types > 1 {
        let mut worst_gap = T::zero();
        for q in 0..model.types {
            for r in 0..model.types {
                if q == r {
                    continue;
                }
                let mut gap = node.gain[q] - node.gain[r];
                for &t in rest {
                    gap = gap
                        + free
                            .iter()
                            .fold(T::infinity(), |m, &s| m.min(model.a(q, t, s) - model.a(r, t, s)));
                }
                worst_gap = worst_gap.max(gap);
            }
        }
        participant = participant.min(-worst_gap);
        current = total(welfare, participant, speaker);
        if done(current) {
            return current;
        }
    }

    // Welfare: exact assignment of remaining talks.
    if !w.welfare_weight.is_zero() && rest.len() > 1 {
        let best = scratch
            .hungarian
            .solve_max(rest.len(), free.len(), |i, j| model.w(rest[i], free[j]));
        welfare = welfare.min(node.welfare + best);
        current = total(welfare, participant, speaker);
        if done(current) {
            return current;
        }
    }

    // Speaker fairness: narrowest feasible window.
    if !w.lambda2.is_zero() {
        let fixed = if node.nec_lo.is_infinite() {
            None
        } else {
            Some((node.nec_lo, node.nec_hi))
        };
        let width = scratch
            .window
            .min_window(rest.len(), free_mask, fixed, |i, s| model.e(rest[i], s));
        match width {
            Some(width) => speaker = speaker.min(-width),
            None => return T::neg_infinity(),
        }
        current = total(welfare, participant, speaker);
    }
    current
}

fn low_bits(count: usize) -> u64 {
    if count >= 64 {
        u64::MAX
    } else {
        (1u64 << count) - 1
    }
}

/// Outcome of [`search`].
pub(crate) struct SearchOutcome {
    pub slots: Vec<usize>,
    pub complete: bool,
    pub nodes: u64,
}

struct Shared {
    best_bits: AtomicU64,
    nodes: AtomicU64,
    stop: AtomicBool,
    started: Instant,
    next_task: AtomicUsize,
}

impl Shared {
    fn best(&self) -> f64 {
        f64::from_bits(self.best_bits.load(Ordering::Relaxed))
    }

    fn offer(&self, value: f64) {
        let _ = self
            .best_bits
            .fetch_update(Ordering::Relaxed, Ordering::Relaxed, |bits| {
                (value > f64::from_bits(bits)).then(|| value.to_bits())
            });
    }
}

struct Worker<'a, T> {
    model: &'a SearchModel<T>,
    config: &'a SolveConfig,
    shared: &'a Shared,
    scratch: Scratch<T>,
    best: T,
    best_slots: Vec<usize>,
    local_nodes: u64,
    tolerance: T,
    /// Participant-type gains saved per depth while descending.
    gain_stack: Vec<T>,
}

const NODE_BATCH: u64 = 1024;

impl<'a, T: Scalar> Worker<'a, T> {
    fn threshold(&self) -> T {
        let shared = T::from_f64(self.shared.best()).unwrap_or(T::neg_infinity());
        self.best.max(shared) + self.tolerance
    }

    fn tick(&mut self) -> bool {
        self.local_nodes += 1;
        if self.local_nodes % NODE_BATCH == 0 {
            let total = self.shared.nodes.fetch_add(NODE_BATCH, Ordering::Relaxed) + NODE_BATCH;
            if self.config.node_limit.map_or(false, |limit| total >= limit)
                || self
                    .config
                    .time_limit
                    .map_or(false, |limit| self.shared.started.elapsed() >= limit)
            {
                self.shared.stop.store(true, Ordering::Relaxed);
            }
        }
        !self.shared.stop.load(Ordering::Relaxed)
    }

    fn flush_nodes(&mut self) {
        let rem = self.local_nodes % NODE_BATCH;
        self.shared.nodes.fetch_add(rem, Ordering::Relaxed);
        self.local_nodes -= rem;
    }

    fn leaf(&mut self, node: &Partial<T>) {
        let value = node.value(self.model);
        if value > self.best {
            self.best = value;
            self.best_slots.clone_from(&node.slot_of);
            self.shared.offer(value.as_f64());
        }
    }

    /// Bit set of candidate slots for the next talk in branching order.
    fn candidates(&self, node: &Partial<T>) -> u64 {
        let model = self.model;
        let min_slot = match model.prev_twin_talk[node.depth] {
            NONE => None,
            j => Some(node.slot_of[model.talk_order[j]]),
        };
        let mut mask = 0u64;
        for s in 0..model.l {
            if node.used & (1 << s) == 0
                && min_slot.map_or(true, |m| s > m)
                && model.lower_twin_slots[s] & !node.used == 0
            {
                mask |= 1 << s;
            }
        }
        mask
    }

    fn dfs(&mut self, node: &mut Partial<T>) {
        if !self.tick() {
            return;
        }
        let model = self.model;
        if node.depth == model.n {
            self.leaf(node);
            return;
        }
        let t = model.talk_order[node.depth];
        let candidates = self.candidates(node);
        let saved = node.save();
        let base = node.depth * model.types;
        self.gain_stack[base..base + model.types].copy_from_slice(&node.gain);
        for &s in &model.slot_order {
            if candidates & (1 << s) == 0 {
                continue;
            }
            node.assign(model, t, s);
            let threshold = self.threshold();
            let pruned = node.depth < model.n
                && bound(model, node, &mut self.scratch, Some(threshold)) <= threshold;
            if !pruned {
                self.dfs(node);
            }
            node.unassign(t, &saved, &self.gain_stack[base..base + model.types]);
            if self.shared.stop.load(Ordering::Relaxed) {
                return;
            }
        }
    }
}

/// Runs the exact search, seeded with `incumbents` (complete assignments).
pub(crate) fn search<T: Scalar>(
    model: &SearchModel<T>,
    config: &SolveConfig,
    incumbents: &[Vec<usize>],
) -> SearchOutcome {
    let mut best = T::neg_infinity();
    let mut best_slots = Vec::new();
    for slots in incumbents {
        let value = model.objective(slots);
        if value > best {
            best = value;
            best_slots = slots.clone();
        }
    }
    let shared = Shared {
        best_bits: AtomicU64::new(best.as_f64().to_bits()),
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        started: Instant::now(),
        next_task: AtomicUsize::new(0),
    };
    let tolerance = T::lit(config.prune_tolerance);
    let make_worker = || Worker {
        model,
        config,
        shared: &shared,
        scratch: Scratch::new(),
        best,
        best_slots: best_slots.clone(),
        local_nodes: 0,
        tolerance,
        gain_stack: vec![T::zero(); (model.n + 1) * model.types],
    };

    let workers = if config.deterministic { 1 } else { config.worker_count.max(1) };
    let mut root = Partial::root(model);
    if workers == 1 {
        let mut worker = make_worker();
        if bound(model, &root, &mut worker.scratch, None) > worker.threshold() || model.n == 0 {
            worker.dfs(&mut root);
        }
        worker.flush_nodes();
        return SearchOutcome {
            slots: worker.best_slots,
            complete: !shared.stop.load(Ordering::Relaxed),
            nodes: shared.nodes.load(Ordering::Relaxed),
        };
    }

    // Expand breadth-first until there is enough independent work.
    let mut frontier = vec![root];
    let mut expander = make_worker();
    while frontier.len() < workers * 16 && frontier.iter().all(|n| n.depth < model.n) {
        let threshold = expander.threshold();
        let mut next = Vec::new();
        for node in &frontier {
            expander.tick();
            let t = model.talk_order[node.depth];
            let candidates = expander.candidates(node);
            for s in model.slot_order.iter().copied().filter(|&s| candidates & (1 << s) != 0) {
                let mut child = node.clone();
                child.assign(model, t, s);
                if child.depth == model.n {
                    expander.leaf(&child);
                } else if bound(model, &child, &mut expander.scratch, Some(threshold)) > threshold {
                    next.push(child);
                }
            }
        }
        if next.is_empty() {
            frontier = next;
            break;
        }
        frontier = next;
    }
    expander.flush_nodes();

    let results: Vec<(T, Vec<usize>)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                let frontier = &frontier;
                let shared = &shared;
                let mut worker = Worker {
                    best: expander.best,
                    best_slots: expander.best_slots.clone(),
                    ..make_worker()
                };
                scope.spawn(move || {
                    loop {
                        let i = shared.next_task.fetch_add(1, Ordering::Relaxed);
                        if i >= frontier.len() || shared.stop.load(Ordering::Relaxed) {
                            break;
                        }
                        let mut node = frontier[i].clone();
                        let threshold = worker.threshold();
                        if node.depth == model.n {
                            worker.leaf(&node);
                        } else if bound(model, &node, &mut worker.scratch, Some(threshold)) > threshold {
                            worker.dfs(&mut node);
                        }
                    }
                    worker.flush_nodes();
                    (worker.best, worker.best_slots)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
    });

    let (_, slots) = results
        .into_iter()
        .chain(std::iter::once((expander.best, expander.best_slots.clone())))
        .fold((T::neg_infinity(), Vec::new()), |(bo, bs), (o, s)| {
            if o > bo || (o == bo && !s.is_empty() && (bs.is_empty() || s < bs)) {
                (o, s)
            } else {
                (bo, bs)
            }
        });
    SearchOutcome {
        slots,
        complete: !shared.stop.load(Ordering::Relaxed),
        nodes: shared.nodes.load(Ordering::Relaxed),
    }
}

/// Full-strength bound for an arbitrary partial assignment.
pub(crate) fn bound_for<T: Scalar>(model: &SearchModel<T>, partial: &[Option<usize>]) -> Result<T> {
    let node = Partial::from_assignment(model, partial)?;
    if node.is_complete(model) {
        return Ok(model.objective(node.slots()));
    }
    let mut scratch = Scratch::new();
    Ok(bound(model, &node, &mut scratch, None))
}
