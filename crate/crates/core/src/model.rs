//! Problem instances, schedules, objective weights and validation.
//!
//! An [`Instance`] holds two probability matrices: interest of each
//! participant in each talk, and availability of each participant in each
//! slot. A [`Schedule`] maps every talk to a distinct slot. Slots are plain
//! labels; nothing here assumes they are ordered in time.

use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::compute_ideal_gains;
use crate::scalar::Scalar;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Copy> Matrix<T> {
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(Error::Structure(format!(
                "row {i} has {} entries, expected {cols}",
                row.len()
            )));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> T {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
}

/// Optional display names. Indices remain the only identity.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Labels {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub participants: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub talks: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slots: Option<Vec<String>>,
}

/// A scheduling problem: `interest[p][t]` and `availability[p][s]`.
///
/// Construction only checks shapes. Value ranges and degeneracy are checked
/// by [`validate`], so out-of-range data can still be loaded and inspected.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "RawInstance<T>",
    into = "RawInstance<T>",
    bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>")
)]
pub struct Instance<T> {
    interest: Matrix<T>,
    availability: Matrix<T>,
    labels: Option<Labels>,
}

#[derive(Clone, Serialize, Deserialize)]
struct RawInstance<T> {
    interest: Vec<Vec<T>>,
    availability: Vec<Vec<T>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Labels>,
}

impl<T: Scalar> TryFrom<RawInstance<T>> for Instance<T> {
    type Error = Error;

    fn try_from(raw: RawInstance<T>) -> Result<Self> {
        let mut instance = Instance::from_rows(&raw.interest, &raw.availability)?;
        instance.labels = raw.labels;
        Ok(instance)
    }
}

impl<T: Scalar> From<Instance<T>> for RawInstance<T> {
    fn from(instance: Instance<T>) -> Self {
        RawInstance {
            interest: instance.interest.to_rows(),
            availability: instance.availability.to_rows(),
            labels: instance.labels,
        }
    }
}

impl<T: Scalar> Instance<T> {
    /// Builds an instance from matrices; counts are inferred from the shapes.
    pub fn new(interest: Matrix<T>, availability: Matrix<T>) -> Result<Self> {
        if interest.rows() == 0 {
            return Err(Error::Structure("instance has no participants".into()));
        }
        if interest.cols() == 0 {
            return Err(Error::Structure("instance has no talks".into()));
        }
        if availability.cols() == 0 {
            return Err(Error::Structure("instance has no slots".into()));
        }
        if interest.rows() != availability.rows() {
            return Err(Error::Structure(format!(
                "interest has {} participant rows but availability has {}",
                interest.rows(),
                availability.rows()
            )));
        }
        Ok(Self {
            interest,
            availability,
            labels: None,
        })
    }

    pub fn from_rows(interest: &[Vec<T>], availability: &[Vec<T>]) -> Result<Self> {
        Self::new(Matrix::from_rows(interest)?, Matrix::from_rows(availability)?)
    }

    pub fn with_labels(mut self, labels: Labels) -> Self {
        self.labels = Some(labels);
        self
    }

    pub fn participant_count(&self) -> usize {
        self.interest.rows()
    }

    pub fn talk_count(&self) -> usize {
        self.interest.cols()
    }

    pub fn slot_count(&self) -> usize {
        self.availability.cols()
    }

    pub fn interest(&self) -> &Matrix<T> {
        &self.interest
    }

    pub fn availability(&self) -> &Matrix<T> {
        &self.availability
    }

    pub fn labels(&self) -> Option<&Labels> {
        self.labels.as_ref()
    }

    /// Probability that `p` attends talk `t` held in slot `s`.
    #[inline]
    pub fn gain(&self, p: usize, t: usize, s: usize) -> T {
        self.interest.get(p, t) * self.availability.get(p, s)
    }

    /// Overall interest in talk `t`, summed over participants.
    pub fn overall_interest(&self, t: usize) -> T {
        (0..self.participant_count()).fold(T::zero(), |acc, p| acc + self.interest.get(p, t))
    }

    /// Overall availability of slot `s`, summed over participants.
    pub fn overall_availability(&self, s: usize) -> T {
        (0..self.participant_count()).fold(T::zero(), |acc, p| acc + self.availability.get(p, s))
    }

    /// Aggregate gain matrix `G[t][s] = Σ_p V_p(t)·A_p(s)` (talks × slots).
    pub fn crowd_matrix(&self) -> Matrix<T> {
        Matrix::from_fn(self.talk_count(), self.slot_count(), |t, s| {
            (0..self.participant_count()).fold(T::zero(), |acc, p| acc + self.gain(p, t, s))
        })
    }

    /// Returns `Err(Error::Validation)` unless the instance passes [`validate`].
    pub fn check(&self, strict: bool) -> Result<()> {
        let report = validate(self, strict);
        if report.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(report))
        }
    }
}

/// One-to-one assignment of talks to slots; entry `i` is the slot of talk `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Schedule {
    pub assignment: Vec<usize>,
}

impl Schedule {
    pub fn new(assignment: Vec<usize>) -> Self {
        Self { assignment }
    }

    pub fn slot_of(&self, talk: usize) -> usize {
        self.assignment[talk]
    }
}

impl From<Vec<usize>> for Schedule {
    fn from(assignment: Vec<usize>) -> Self {
        Self { assignment }
    }
}

/// True iff `schedule` assigns every talk of `instance` to a distinct, existing slot.
pub fn is_valid_schedule<T: Scalar>(instance: &Instance<T>, schedule: &Schedule) -> bool {
    schedule_error(instance, schedule).is_none()
}

pub(crate) fn schedule_error<T: Scalar>(instance: &Instance<T>, schedule: &Schedule) -> Option<String> {
    let slots = instance.slot_count();
    if schedule.assignment.len() != instance.talk_count() {
        return Some(format!(
            "assignment has {} entries for {} talks",
            schedule.assignment.len(),
            instance.talk_count()
        ));
    }
    let mut used = vec![false; slots];
    for (t, &s) in schedule.assignment.iter().enumerate() {
        if s >= slots {
            return Some(format!("talk {t} assigned to slot {s}, only {slots} slots exist"));
        }
        if used[s] {
            return Some(format!("slot {s} assigned to more than one talk"));
        }
        used[s] = true;
    }
    None
}

/// Relative weights of welfare, participant fairness and speaker fairness.
///
/// The joint objective is
/// `welfare_weight·TEP/(m·n) + lambda1·(min NCG − max NCG) + lambda2·(min NEC − max NEC)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveWeights<T> {
    pub welfare_weight: T,
    pub lambda1: T,
    pub lambda2: T,
}

impl<T: Scalar> ObjectiveWeights<T> {
    pub fn new(welfare_weight: T, lambda1: T, lambda2: T) -> Self {
        Self {
            welfare_weight,
            lambda1,
            lambda2,
        }
    }

    /// Welfare plus both fairness terms.
    pub fn fairconf(lambda1: T, lambda2: T) -> Self {
        Self::new(T::one(), lambda1, lambda2)
    }

    pub fn welfare_only() -> Self {
        Self::new(T::one(), T::zero(), T::zero())
    }

    pub fn participant_fairness() -> Self {
        Self::new(T::zero(), T::one(), T::zero())
    }

    pub fn speaker_fairness() -> Self {
        Self::new(T::zero(), T::zero(), T::one())
    }

    pub fn check(&self) -> Result<()> {
        let all = [self.welfare_weight, self.lambda1, self.lambda2];
        if all.iter().any(|w| !w.is_finite() || *w < T::zero()) {
            return Err(Error::Argument(format!(
                "weights must be finite and non-negative, got ({}, {}, {})",
                self.welfare_weight, self.lambda1, self.lambda2
            )));
        }
        if all.iter().all(|w| w.is_zero()) {
            return Err(Error::Argument("at least one objective weight must be positive".into()));
        }
        Ok(())
    }
}

/// Search budgets and parallelism for the exact solver.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveConfig {
    pub time_limit: Option<Duration>,
    pub node_limit: Option<u64>,
    pub worker_count: usize,
    /// Run the search in a fixed order so the returned schedule is reproducible.
    pub deterministic: bool,
    pub prune_tolerance: f64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            time_limit: None,
            node_limit: None,
            worker_count: 1,
            deterministic: false,
            prune_tolerance: 1e-12,
        }
    }
}

impl SolveConfig {
    pub fn deterministic() -> Self {
        Self {
            deterministic: true,
            ..Self::default()
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.worker_count = workers;
        self
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }

    pub fn with_node_limit(mut self, limit: u64) -> Self {
        self.node_limit = Some(limit);
        self
    }

    pub fn check(&self) -> Result<()> {
        if self.worker_count == 0 {
            return Err(Error::Argument("worker_count must be at least 1".into()));
        }
        if !(self.prune_tolerance >= 0.0) {
            return Err(Error::Argument("prune_tolerance must be non-negative".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixKind {
    Interest,
    Availability,
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixKind::Interest => f.write_str("interest"),
            MatrixKind::Availability => f.write_str("availability"),
        }
    }
}

/// A single failed instance invariant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    OutOfRange {
        matrix: MatrixKind,
        row: usize,
        col: usize,
        value: f64,
    },
    MoreTalksThanSlots { talks: usize, slots: usize },
    /// Participant cannot gain anything from any schedule (ICG = 0).
    DegenerateParticipant { participant: usize },
    /// Talk cannot draw any crowd in any slot (IEC = 0).
    DegenerateTalk { talk: usize },
}

impl Violation {
    pub fn is_degeneracy(&self) -> bool {
        matches!(
            self,
            Violation::DegenerateParticipant { .. } | Violation::DegenerateTalk { .. }
        )
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OutOfRange {
                matrix,
                row,
                col,
                value,
            } => write!(f, "{matrix}[{row}][{col}] = {value} is outside [0, 1]"),
            Violation::MoreTalksThanSlots { talks, slots } => {
                write!(f, "{talks} talks cannot fit into {slots} slots")
            }
            Violation::DegenerateParticipant { participant } => {
                write!(f, "participant {participant} has zero ideal cumulative gain")
            }
            Violation::DegenerateTalk { talk } => {
                write!(f, "talk {talk} has zero ideal expected crowd")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Lists every violated instance invariant.
///
/// Strict mode additionally rejects participants and talks whose ideal gain
/// or ideal crowd is zero, since their normalized satisfaction is undefined.
pub fn validate<T: Scalar>(instance: &Instance<T>, strict: bool) -> ValidationReport {
    let mut violations = Vec::new();
    for (kind, matrix) in [
        (MatrixKind::Interest, &instance.interest),
        (MatrixKind::Availability, &instance.availability),
    ] {
        for r in 0..matrix.rows() {
            for (c, &v) in matrix.row(r).iter().enumerate() {
                if !(v >= T::zero() && v <= T::one()) {
                    violations.push(Violation::OutOfRange {
                        matrix: kind,
                        row: r,
                        col: c,
                        value: v.as_f64(),
                    });
                }
            }
        }
    }
    if instance.talk_count() > instance.slot_count() {
        violations.push(Violation::MoreTalksThanSlots {
            talks: instance.talk_count(),
            slots: instance.slot_count(),
        });
    }
    if strict {
        let (icg, iec) = compute_ideal_gains(instance);
        for (p, g) in icg.iter().enumerate() {
            if !(*g > T::zero()) {
                violations.push(Violation::DegenerateParticipant { participant: p });
            }
        }
        for (t, g) in iec.iter().enumerate() {
            if !(*g > T::zero()) {
                violations.push(Violation::DegenerateTalk { talk: t });
            }
        }
    }
    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table1() -> Instance<f64> {
        Instance::from_rows(&[vec![1.0], vec![1.0]], &[vec![1.0, 0.49, 0.0], vec![0.0, 0.49, 1.0]])
            .unwrap()
    }

    #[test]
    fn table1_is_valid() {
        assert!(validate(&table1(), true).is_empty());
        assert!(validate(&table1(), false).is_empty());
    }

    #[test]
    fn identity_instance_is_valid() {
        let inst = Instance::from_rows(&[vec![1.0]], &[vec![1.0]]).unwrap();
        assert!(validate(&inst, true).is_empty());
    }

    #[test]
    fn zero_availability_is_degenerate_only_in_strict_mode() {
        let inst = Instance::from_rows(
            &[vec![1.0, 0.5], vec![0.3, 0.2]],
            &[vec![0.0, 0.0, 0.0], vec![0.4, 0.9, 0.1]],
        )
        .unwrap();
        assert!(validate(&inst, false).is_empty());
        let report = validate(&inst, true);
        assert_eq!(
            report.violations,
            vec![Violation::DegenerateParticipant { participant: 0 }]
        );
    }

    #[test]
    fn out_of_range_entry_names_cell() {
        let inst = Instance::from_rows(&[vec![1.5]], &[vec![1.0, -0.1]]).unwrap();
        let report = validate(&inst, false);
        assert_eq!(report.violations.len(), 2);
        assert_eq!(
            report.violations[0],
            Violation::OutOfRange {
                matrix: MatrixKind::Interest,
                row: 0,
                col: 0,
                value: 1.5
            }
        );
        assert!(report.to_string().contains("availability[0][1]"));
    }

    #[test]
    fn too_many_talks() {
        let inst = Instance::from_rows(&[vec![0.5, 0.5]], &[vec![1.0]]).unwrap();
        assert!(validate(&inst, false)
            .violations
            .contains(&Violation::MoreTalksThanSlots { talks: 2, slots: 1 }));
    }

    #[test]
    fn nan_is_out_of_range() {
        let inst = Instance::from_rows(&[vec![f64::NAN]], &[vec![1.0]]).unwrap();
        assert_eq!(validate(&inst, false).violations.len(), 1);
    }

    #[test]
    fn dimension_mismatch_is_structural() {
        let err = Instance::from_rows(&[vec![1.0], vec![1.0]], &[vec![1.0]]).unwrap_err();
        assert!(matches!(err, Error::Structure(_)));
        let err = Instance::from_rows(&[vec![1.0], vec![1.0, 0.5]], &[vec![1.0], vec![1.0]])
            .unwrap_err();
        assert!(matches!(err, Error::Structure(_)));
        let err = Instance::<f64>::from_rows(&[], &[]).unwrap_err();
        assert!(matches!(err, Error::Structure(_)));
    }

    #[test]
    fn schedule_validity() {
        let t2 = Instance::from_rows(&[vec![1.0, 0.5]], &[vec![1.0, 0.75, 0.8]]).unwrap();
        assert!(is_valid_schedule(&t2, &Schedule::new(vec![0, 2])));
        assert!(!is_valid_schedule(&t2, &Schedule::new(vec![0, 0])));
        assert!(!is_valid_schedule(&t2, &Schedule::new(vec![0])));
        assert!(!is_valid_schedule(&table1(), &Schedule::new(vec![3])));
    }

    #[test]
    fn weights_check() {
        assert!(ObjectiveWeights::<f64>::new(0.0, 0.0, 0.0).check().is_err());
        assert!(ObjectiveWeights::<f64>::new(1.0, -0.1, 0.0).check().is_err());
        assert!(ObjectiveWeights::<f64>::fairconf(0.5, 0.5).check().is_ok());
    }

    #[test]
    fn instance_json_shape() {
        let json = r#"{"interest":[[1.0],[1.0]],"availability":[[1.0,0.49,0.0],[0.0,0.49,1.0]],
            "labels":{"talks":["keynote"]}}"#;
        let inst: Instance<f64> = serde_json::from_str(json).unwrap();
        assert_eq!(inst.participant_count(), 2);
        assert_eq!(inst.slot_count(), 3);
        assert_eq!(inst.labels().unwrap().talks.as_deref(), Some(&["keynote".to_string()][..]));
        let bad = r#"{"interest":[[1.0]],"availability":[[1.0],[1.0]]}"#;
        assert!(serde_json::from_str::<Instance<f64>>(bad).is_err());
    }
}
