//! Satisfaction, welfare and fairness metrics for an (instance, schedule) pair.
//!
//! Participant satisfaction is the cumulative gain `CG_p` normalized by the
//! best gain any schedule could give that participant (`ICG_p`). Speaker
//! satisfaction is the expected crowd `EC_t` normalized by the best crowd
//! the talk could draw in any slot (`IEC_t`). Unfairness on each side is the
//! spread (max − min) of the normalized values.

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::model::{schedule_error, Instance, ObjectiveWeights, Schedule, ValidationReport, Violation};
use crate::scalar::Scalar;

/// All metrics of one schedule.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricsReport<T> {
    pub cg: Vec<T>,
    pub icg: Vec<T>,
    pub ncg: Vec<T>,
    pub ec: Vec<T>,
    pub iec: Vec<T>,
    pub nec: Vec<T>,
    /// Total expected participation.
    pub tep: T,
    /// Participant unfairness, `max NCG − min NCG`.
    pub psi_p: T,
    /// Speaker unfairness, `max NEC − min NEC`.
    pub psi_s: T,
}

fn mean<T: Scalar>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |a, &b| a + b) / T::from_usize(v.len()).unwrap()
}

fn min_of<T: Scalar>(v: &[T]) -> T {
    v.iter().copied().fold(T::infinity(), T::min)
}

fn max_of<T: Scalar>(v: &[T]) -> T {
    v.iter().copied().fold(T::neg_infinity(), T::max)
}

impl<T: Scalar> MetricsReport<T> {
    pub fn participant_count(&self) -> usize {
        self.ncg.len()
    }

    pub fn talk_count(&self) -> usize {
        self.nec.len()
    }

    pub fn ncg_mean(&self) -> T {
        mean(&self.ncg)
    }

    pub fn ncg_min(&self) -> T {
        min_of(&self.ncg)
    }

    pub fn ncg_max(&self) -> T {
        max_of(&self.ncg)
    }

    pub fn nec_mean(&self) -> T {
        mean(&self.nec)
    }

    pub fn nec_min(&self) -> T {
        min_of(&self.nec)
    }

    pub fn nec_max(&self) -> T {
        max_of(&self.nec)
    }
}

impl<T: Scalar + Serialize> Serialize for MetricsReport<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("MetricsReport", 7)?;
        s.serialize_field("ncg", &self.ncg)?;
        s.serialize_field("nec", &self.nec)?;
        s.serialize_field("tep", &self.tep)?;
        s.serialize_field("psi_p", &self.psi_p)?;
        s.serialize_field("psi_s", &self.psi_s)?;
        s.serialize_field("ncg_mean", &self.ncg_mean())?;
        s.serialize_field("nec_mean", &self.nec_mean())?;
        s.end()
    }
}

/// Ideal gains without any validation; used by strict validation itself.
///
/// A participant's best schedule pairs its interests and its top
/// availabilities, both sorted descending (rearrangement inequality).
pub(crate) fn compute_ideal_gains<T: Scalar>(instance: &Instance<T>) -> (Vec<T>, Vec<T>) {
    let n = instance.talk_count();
    let desc = |a: &T, b: &T| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal);
    let icg = (0..instance.participant_count())
        .map(|p| {
            let mut v = instance.interest().row(p).to_vec();
            let mut a = instance.availability().row(p).to_vec();
            v.sort_by(desc);
            a.sort_by(desc);
            v.iter()
                .zip(a.iter())
                .take(n)
                .fold(T::zero(), |acc, (&x, &y)| acc + x * y)
        })
        .collect();
    let crowd = instance.crowd_matrix();
    let iec = (0..n)
        .map(|t| crowd.row(t).iter().copied().fold(T::zero(), T::max))
        .collect();
    (icg, iec)
}

/// Per-participant ideal cumulative gain and per-talk ideal expected crowd.
pub fn ideal_gains<T: Scalar>(instance: &Instance<T>) -> Result<(Vec<T>, Vec<T>)> {
    let (icg, iec) = compute_ideal_gains(instance);
    check_normalizers(&icg, &iec)?;
    Ok((icg, iec))
}

fn check_normalizers<T: Scalar>(icg: &[T], iec: &[T]) -> Result<()> {
    let mut violations: Vec<Violation> = icg
        .iter()
        .enumerate()
        .filter(|(_, g)| !(**g > T::zero()))
        .map(|(participant, _)| Violation::DegenerateParticipant { participant })
        .collect();
    violations.extend(
        iec.iter()
            .enumerate()
            .filter(|(_, g)| !(**g > T::zero()))
            .map(|(talk, _)| Violation::DegenerateTalk { talk }),
    );
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::Validation(ValidationReport { violations }))
    }
}

/// Computes every metric of `schedule` on `instance`.
pub fn evaluate<T: Scalar>(instance: &Instance<T>, schedule: &Schedule) -> Result<MetricsReport<T>> {
    if let Some(msg) = schedule_error(instance, schedule) {
        return Err(Error::InvalidSchedule(msg));
    }
    let (icg, iec) = ideal_gains(instance)?;
    Ok(evaluate_with_ideals(instance, schedule, icg, iec))
}

pub(crate) fn evaluate_with_ideals<T: Scalar>(
    instance: &Instance<T>,
    schedule: &Schedule,
    icg: Vec<T>,
    iec: Vec<T>,
) -> MetricsReport<T> {
    let m = instance.participant_count();
    let n = instance.talk_count();
    let cg: Vec<T> = (0..m)
        .map(|p| {
            (0..n).fold(T::zero(), |acc, t| acc + instance.gain(p, t, schedule.slot_of(t)))
        })
        .collect();
    let ec: Vec<T> = (0..n)
        .map(|t| {
            let s = schedule.slot_of(t);
            (0..m).fold(T::zero(), |acc, p| acc + instance.gain(p, t, s))
        })
        .collect();
    // Rounding may push a ratio one ulp past 1.
    let clamp = |x: T| x.max(T::zero()).min(T::one());
    let ncg: Vec<T> = cg.iter().zip(&icg).map(|(&c, &i)| clamp(c / i)).collect();
    let nec: Vec<T> = ec.iter().zip(&iec).map(|(&e, &i)| clamp(e / i)).collect();
    let tep = cg.iter().fold(T::zero(), |a, &b| a + b);
    let psi_p = max_of(&ncg) - min_of(&ncg);
    let psi_s = max_of(&nec) - min_of(&nec);
    MetricsReport {
        cg,
        icg,
        ncg,
        ec,
        iec,
        nec,
        tep,
        psi_p,
        psi_s,
    }
}

fn check_eps<T: Scalar>(eps: T) -> Result<()> {
    if eps >= T::zero() {
        Ok(())
    } else {
        Err(Error::Argument(format!("epsilon must be non-negative, got {eps}")))
    }
}

/// Whether every pair of participants' satisfactions differ by at most `eps`.
pub fn is_eps_fair_participants<T: Scalar>(report: &MetricsReport<T>, eps: T) -> Result<bool> {
    check_eps(eps)?;
    Ok(report.psi_p <= eps)
}

/// Whether every pair of speakers' satisfactions differ by at most `eps`.
pub fn is_eps_fair_speakers<T: Scalar>(report: &MetricsReport<T>, eps: T) -> Result<bool> {
    check_eps(eps)?;
    Ok(report.psi_s <= eps)
}

/// Weighted joint objective (to be maximized) for an `m`-participant, `n`-talk instance.
pub fn joint_objective<T: Scalar>(
    report: &MetricsReport<T>,
    weights: &ObjectiveWeights<T>,
    m: usize,
    n: usize,
) -> T {
    let mn = T::from_usize(m * n).unwrap();
    weights.welfare_weight * report.tep / mn - weights.lambda1 * report.psi_p
        - weights.lambda2 * report.psi_s
}
