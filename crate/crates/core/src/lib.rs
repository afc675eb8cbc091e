//! Fair scheduling of talks into slots for virtual conferences.
//!
//! Participants have an interest probability for every talk and an
//! availability probability for every slot. A schedule places each talk in
//! its own slot. The crate measures a schedule's total expected
//! participation, how evenly it satisfies participants (normalized
//! cumulative gain) and speakers (normalized expected crowd), and finds
//! schedules that trade these off exactly.
//!
//! All numeric code is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases at the crate root fix the scalar to `f64`.
//!
//! ```
//! use fairconf::{datagen, solvers, ObjectiveWeights, SolveConfig};
//!
//! let instance: fairconf::Instance = datagen::builtin(datagen::Builtin::Table1);
//! let fair = solvers::solve_exact(
//!     &instance,
//!     ObjectiveWeights::participant_fairness(),
//!     &SolveConfig::deterministic(),
//! )
//! .unwrap();
//! assert_eq!(fair.schedule.assignment, vec![1]);
//! assert!((fair.report.tep - 0.98).abs() < 1e-9);
//! ```

pub mod assignment;
pub mod datagen;
pub mod error;
pub mod harness;
pub mod metrics;
pub mod model;
pub mod scalar;
pub mod solvers;

pub use error::{Error, Result};
pub use model::{Labels, Schedule, SolveConfig, ValidationReport, Violation};
pub use scalar::Scalar;
pub use solvers::Method;

pub type Instance = model::Instance<f64>;
pub type Matrix = model::Matrix<f64>;
pub type ObjectiveWeights = model::ObjectiveWeights<f64>;
pub type MetricsReport = metrics::MetricsReport<f64>;
pub type Solution = solvers::Solution<f64>;
