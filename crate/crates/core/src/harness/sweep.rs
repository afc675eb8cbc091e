//! λ-sweeps over FairConf plus one row per baseline method, with CSV output.

use std::io::Write;
use std::time::Duration;

use crate::error::{Error, Result};
use crate::metrics::MetricsReport;
use crate::model::{Instance, Schedule, SolveConfig};
use crate::scalar::Scalar;
use crate::solvers::{solve_method, Method};

/// Exact CSV header written by [`write_csv`].
pub const CSV_HEADER: [&str; 16] = [
    "method",
    "lambda1",
    "lambda2",
    "tep",
    "ncg_mean",
    "ncg_min",
    "ncg_max",
    "psi_p",
    "nec_mean",
    "nec_min",
    "nec_max",
    "psi_s",
    "objective",
    "optimal",
    "nodes_explored",
    "time_ms",
];

/// Methods a sweep may include, in their default order.
pub const SWEEP_METHODS: [Method; 5] = [
    Method::Swm,
    Method::Iam,
    Method::Pfair,
    Method::Sfair,
    Method::Fairconf,
];

#[derive(Clone, Debug)]
pub struct SweepSpec<T> {
    pub instance: Instance<T>,
    pub methods: Vec<Method>,
    pub lambda1_values: Vec<T>,
    pub lambda2_values: Vec<T>,
    pub config: SolveConfig,
}

impl<T: Scalar> SweepSpec<T> {
    pub fn check(&self) -> Result<()> {
        if self.methods.is_empty() {
            return Err(Error::Argument("a sweep needs at least one method".into()));
        }
        if let Some(m) = self.methods.iter().find(|m| !SWEEP_METHODS.contains(m)) {
            return Err(Error::Argument(format!("method '{m}' cannot be swept")));
        }
        if self.methods.contains(&Method::Fairconf)
            && (self.lambda1_values.is_empty() || self.lambda2_values.is_empty())
        {
            return Err(Error::Argument(
                "fairconf needs non-empty lambda1 and lambda2 grids".into(),
            ));
        }
        let bad = self
            .lambda1_values
            .iter()
            .chain(&self.lambda2_values)
            .find(|x| !(x.is_finite() && **x >= T::zero()));
        if let Some(x) = bad {
            return Err(Error::Argument(format!("lambda values must be finite and non-negative, got {x}")));
        }
        self.config.check()
    }
}

/// One solved point of a sweep.
#[derive(Clone, Debug)]
pub struct SweepRow<T> {
    pub method: Method,
    /// `(λ1, λ2)` for FairConf rows, `None` for baselines.
    pub lambdas: Option<(T, T)>,
    pub schedule: Schedule,
    pub report: MetricsReport<T>,
    pub objective: T,
    pub optimal: bool,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

/// Solves every point of `spec` in order: each method as listed, with
/// FairConf expanded to λ1 (outer) × λ2 (inner). A search that runs out of
/// budget yields a row with `optimal = false` instead of an error.
pub fn run_sweep<T: Scalar>(spec: &SweepSpec<T>) -> Result<Vec<SweepRow<T>>> {
    spec.check()?;
    spec.instance.check(true)?;
    let mut rows = Vec::new();
    for &method in &spec.methods {
        let points: Vec<Option<(T, T)>> = if method == Method::Fairconf {
            spec.lambda1_values
                .iter()
                .flat_map(|&a| spec.lambda2_values.iter().map(move |&b| Some((a, b))))
                .collect()
        } else {
            vec![None]
        };
        for lambdas in points {
            let solution = solve_method(
                &spec.instance,
                method,
                lambdas.unwrap_or((T::zero(), T::zero())),
                &spec.config,
            )?;
            rows.push(SweepRow {
                method,
                lambdas,
                schedule: solution.schedule,
                report: solution.report,
                objective: solution.objective,
                optimal: solution.optimal,
                nodes_explored: solution.nodes_explored,
                elapsed: solution.elapsed,
            });
        }
    }
    Ok(rows)
}

/// Writes `rows` as CSV under [`CSV_HEADER`].
///
/// λ columns are empty for baselines. IAM optimizes no objective, so its
/// objective and node columns are empty, as is SWM's node count (it is not
/// a search). With `include_time = false` the time column is left empty so
/// the output is byte-identical across runs.
pub fn write_csv<T: Scalar, W: Write>(rows: &[SweepRow<T>], out: W, include_time: bool) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER)?;
    let num = |x: T| x.as_f64().to_string();
    for row in rows {
        let r = &row.report;
        let (l1, l2) = row
            .lambdas
            .map_or((String::new(), String::new()), |(a, b)| (num(a), num(b)));
        let searched = !matches!(row.method, Method::Swm | Method::Iam);
        let objective = if row.method == Method::Iam {
            String::new()
        } else {
            num(row.objective)
        };
        let nodes = if searched {
            row.nodes_explored.to_string()
        } else {
            String::new()
        };
        let time = if include_time {
            (row.elapsed.as_secs_f64() * 1e3).to_string()
        } else {
            String::new()
        };
        writer.write_record([
            row.method.as_str().to_string(),
            l1,
            l2,
            num(r.tep),
            num(r.ncg_mean()),
            num(r.ncg_min()),
            num(r.ncg_max()),
            num(r.psi_p),
            num(r.nec_mean()),
            num(r.nec_min()),
            num(r.nec_max()),
            num(r.psi_s),
            objective,
            row.optimal.to_string(),
            nodes,
            time,
        ])?;
    }
    writer.flush()?;
    Ok(())
}
