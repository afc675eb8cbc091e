//! Schedule construction: welfare maximization by assignment, the
//! interest–availability matching heuristic, exact branch-and-bound for the
//! joint objective, and an exhaustive oracle.

mod search;
mod window;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::assignment::max_weight_assignment;
use crate::error::{Error, Result};
use crate::metrics::{evaluate, evaluate_with_ideals, ideal_gains, joint_objective, MetricsReport};
use crate::model::{Instance, ObjectiveWeights, Schedule, SolveConfig};
use crate::scalar::Scalar;

use search::SearchModel;

/// Which procedure produced a schedule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Swm,
    Iam,
    Pfair,
    Sfair,
    Fairconf,
    Bruteforce,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Swm => "swm",
            Method::Iam => "iam",
            Method::Pfair => "pfair",
            Method::Sfair => "sfair",
            Method::Fairconf => "fairconf",
            Method::Bruteforce => "bruteforce",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "swm" => Ok(Method::Swm),
            "iam" => Ok(Method::Iam),
            "pfair" => Ok(Method::Pfair),
            "sfair" => Ok(Method::Sfair),
            "fairconf" => Ok(Method::Fairconf),
            "bruteforce" => Ok(Method::Bruteforce),
            other => Err(Error::Argument(format!("unknown method '{other}'"))),
        }
    }
}

/// A schedule together with its metrics and how it was found.
#[derive(Clone, Debug)]
pub struct Solution<T> {
    pub schedule: Schedule,
    pub report: MetricsReport<T>,
    /// Joint objective of `report` under `weights`.
    pub objective: T,
    pub weights: ObjectiveWeights<T>,
    pub method: Method,
    /// Whether the search proved the schedule optimal for `weights`.
    pub optimal: bool,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

impl<T: Scalar> Solution<T> {
    fn build(
        instance: &Instance<T>,
        schedule: Schedule,
        weights: ObjectiveWeights<T>,
        method: Method,
        optimal: bool,
        nodes_explored: u64,
        started: Instant,
    ) -> Result<Self> {
        let report = evaluate(instance, &schedule)?;
        let objective = joint_objective(
            &report,
            &weights,
            instance.participant_count(),
            instance.talk_count(),
        );
        Ok(Self {
            schedule,
            report,
            objective,
            weights,
            method,
            optimal,
            nodes_explored,
            elapsed: started.elapsed(),
        })
    }
}

impl<T: Scalar + Serialize> Serialize for Solution<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Solution", 7)?;
        s.serialize_field("assignment", &self.schedule.assignment)?;
        s.serialize_field("objective", &self.objective)?;
        s.serialize_field("method", &self.method)?;
        s.serialize_field("optimal", &self.optimal)?;
        s.serialize_field("nodes_explored", &self.nodes_explored)?;
        s.serialize_field("time_ms", &(self.elapsed.as_secs_f64() * 1e3))?;
        s.serialize_field("metrics", &self.report)?;
        s.end()
    }
}

/// Maximizes total expected participation via a rectangular assignment on
/// the talk × slot crowd matrix.
pub fn solve_swm<T: Scalar>(instance: &Instance<T>) -> Result<Solution<T>> {
    let started = Instant::now();
    instance.check(true)?;
    let crowd = instance.crowd_matrix();
    let (assignment, _) = max_weight_assignment(&crowd.to_rows());
    Solution::build(
        instance,
        Schedule::new(assignment),
        ObjectiveWeights::welfare_only(),
        Method::Swm,
        true,
        0,
        started,
    )
}

/// Interest–availability matching: the k-th most popular talk goes to the
/// k-th most available slot. Ties are broken by ascending index, or by a
/// ChaCha8 shuffle when `seed` is given.
pub fn solve_iam<T: Scalar>(instance: &Instance<T>, seed: Option<u64>) -> Result<Solution<T>> {
    let started = Instant::now();
    instance.check(true)?;
    let schedule = iam_schedule(instance, seed);
    Solution::build(
        instance,
        schedule,
        ObjectiveWeights::welfare_only(),
        Method::Iam,
        false,
        0,
        started,
    )
}

fn iam_schedule<T: Scalar>(instance: &Instance<T>, seed: Option<u64>) -> Schedule {
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    let mut ranked = |count: usize, key: &dyn Fn(usize) -> T| {
        let mut idx: Vec<usize> = (0..count).collect();
        if let Some(rng) = rng.as_mut() {
            idx.shuffle(rng);
        }
        // Stable sort keeps the (possibly shuffled) order among ties.
        idx.sort_by(|&a, &b| key(b).partial_cmp(&key(a)).unwrap_or(std::cmp::Ordering::Equal));
        idx
    };
    let talks = ranked(instance.talk_count(), &|t| instance.overall_interest(t));
    let slots = ranked(instance.slot_count(), &|s| instance.overall_availability(s));
    let mut assignment = vec![0; instance.talk_count()];
    for (t, s) in talks.into_iter().zip(slots) {
        assignment[t] = s;
    }
    Schedule::new(assignment)
}

/// Method tag for a weight vector: pure participant or speaker fairness map
/// to their baseline names, anything else is reported as FairConf.
fn method_for<T: Scalar>(weights: &ObjectiveWeights<T>) -> Method {
    let zero = |x: T| x.is_zero();
    match (
        zero(weights.welfare_weight),
        zero(weights.lambda1),
        zero(weights.lambda2),
    ) {
        (true, false, true) => Method::Pfair,
        (true, true, false) => Method::Sfair,
        _ => Method::Fairconf,
    }
}

/// Exact maximization of the joint objective by branch-and-bound.
///
/// When a time or node budget runs out the best schedule found so far is
/// returned with `optimal = false`.
pub fn solve_exact<T: Scalar>(
    instance: &Instance<T>,
    weights: ObjectiveWeights<T>,
    config: &SolveConfig,
) -> Result<Solution<T>> {
    let started = Instant::now();
    config.check()?;
    let model = SearchModel::new(instance, weights)?;
    let mut incumbents = vec![iam_schedule(instance, None).assignment];
    if !weights.welfare_weight.is_zero() {
        incumbents.push(solve_swm(instance)?.schedule.assignment);
    }
    let outcome = search::search(&model, config, &incumbents);
    Solution::build(
        instance,
        Schedule::new(outcome.slots),
        weights,
        method_for(&weights),
        outcome.complete,
        outcome.nodes,
        started,
    )
}

/// Upper bound on the joint objective over every completion of `partial`
/// (entry `t` is the slot of talk `t`, or `None` when unassigned).
pub fn bound_partial<T: Scalar>(
    instance: &Instance<T>,
    weights: ObjectiveWeights<T>,
    partial: &[Option<usize>],
) -> Result<T> {
    let model = SearchModel::new(instance, weights)?;
    search::bound_for(&model, partial)
}

pub const DEFAULT_BRUTEFORCE_CAP: u64 = 10_000_000;

/// Number of injective talk → slot maps, saturating at `u64::MAX`.
pub fn schedule_count(talks: usize, slots: usize) -> u64 {
    if talks > slots {
        return 0;
    }
    (slots - talks + 1..=slots).fold(1u64, |acc, k| acc.saturating_mul(k as u64))
}

/// Exhaustive search over all injective schedules, using the public metric
/// functions directly. Ties go to the lexicographically smallest assignment.
pub fn solve_bruteforce<T: Scalar>(
    instance: &Instance<T>,
    weights: ObjectiveWeights<T>,
) -> Result<Solution<T>> {
    solve_bruteforce_with_cap(instance, weights, DEFAULT_BRUTEFORCE_CAP)
}

pub fn solve_bruteforce_with_cap<T: Scalar>(
    instance: &Instance<T>,
    weights: ObjectiveWeights<T>,
    cap: u64,
) -> Result<Solution<T>> {
    let started = Instant::now();
    instance.check(true)?;
    weights.check()?;
    let (n, l) = (instance.talk_count(), instance.slot_count());
    let count = schedule_count(n, l);
    if count > cap {
        return Err(Error::Size(format!(
            "{count} schedules exceed the brute-force cap of {cap}"
        )));
    }
    let (icg, iec) = ideal_gains(instance)?;
    let m = instance.participant_count();

    struct Enum<'a, T> {
        instance: &'a Instance<T>,
        weights: ObjectiveWeights<T>,
        icg: &'a [T],
        iec: &'a [T],
        m: usize,
        current: Vec<usize>,
        used: Vec<bool>,
        best: Option<(T, Vec<usize>)>,
        visited: u64,
    }

    impl<T: Scalar> Enum<'_, T> {
        fn go(&mut self, t: usize) {
            let n = self.current.len();
            if t == n {
                self.visited += 1;
                let schedule = Schedule::new(self.current.clone());
                let report =
                    evaluate_with_ideals(self.instance, &schedule, self.icg.to_vec(), self.iec.to_vec());
                let value = joint_objective(&report, &self.weights, self.m, n);
                if self.best.as_ref().map_or(true, |(b, _)| value > *b) {
                    self.best = Some((value, schedule.assignment));
                }
                return;
            }
            for s in 0..self.used.len() {
                if !self.used[s] {
                    self.used[s] = true;
                    self.current[t] = s;
                    self.go(t + 1);
                    self.used[s] = false;
                }
            }
        }
    }

    let mut e = Enum {
        instance,
        weights,
        icg: &icg,
        iec: &iec,
        m,
        current: vec![0; n],
        used: vec![false; l],
        best: None,
        visited: 0,
    };
    e.go(0);
    let (_, assignment) = e.best.expect("at least one schedule exists");
    Solution::build(
        instance,
        Schedule::new(assignment),
        weights,
        Method::Bruteforce,
        true,
        e.visited,
        started,
    )
}

/// Runs one of the named methods; `lambdas` is used only by FairConf.
pub fn solve_method<T: Scalar>(
    instance: &Instance<T>,
    method: Method,
    lambdas: (T, T),
    config: &SolveConfig,
) -> Result<Solution<T>> {
    match method {
        Method::Swm => solve_swm(instance),
        Method::Iam => solve_iam(instance, None),
        Method::Pfair => solve_exact(instance, ObjectiveWeights::participant_fairness(), config),
        Method::Sfair => solve_exact(instance, ObjectiveWeights::speaker_fairness(), config),
        Method::Fairconf => solve_exact(
            instance,
            ObjectiveWeights::fairconf(lambdas.0, lambdas.1),
            config,
        ),
        Method::Bruteforce => solve_bruteforce(
            instance,
            ObjectiveWeights::fairconf(lambdas.0, lambdas.1),
        ),
    }
}
