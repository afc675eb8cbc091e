//! JSON files for instances, schedules and solutions.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Instance, Schedule};
use crate::scalar::Scalar;
use crate::solvers::{Method, Solution};

/// Parses JSON, turning syntax and shape errors into [`Error::Format`] that
/// quotes the offending line.
pub fn from_json_str<D: DeserializeOwned>(text: &str) -> Result<D> {
    serde_json::from_str(text).map_err(|err| {
        let line = err.line();
        let context = text
            .lines()
            .nth(line.saturating_sub(1))
            .map(|l| l.trim())
            .filter(|l| !l.is_empty())
            .map(|l| {
                let shown: String = l.chars().take(80).collect();
                format!(" near `{shown}`")
            })
            .unwrap_or_default();
        Error::Format(format!(
            "line {line}, column {}: {err}{context}",
            err.column()
        ))
    })
}

/// Parses an instance and runs strict validation on it.
pub fn instance_from_json<T>(text: &str) -> Result<Instance<T>>
where
    T: Scalar + DeserializeOwned,
{
    let instance: Instance<T> = from_json_str(text)?;
    instance.check(true)?;
    Ok(instance)
}

pub fn load_instance<T>(path: impl AsRef<Path>) -> Result<Instance<T>>
where
    T: Scalar + DeserializeOwned,
{
    instance_from_json(&fs::read_to_string(path)?)
}

pub fn save_instance<T>(path: impl AsRef<Path>, instance: &Instance<T>) -> Result<()>
where
    T: Scalar + Serialize,
{
    write_json(path, instance)
}

pub fn save_solution<T>(path: impl AsRef<Path>, solution: &Solution<T>) -> Result<()>
where
    T: Scalar + Serialize,
{
    write_json(path, solution)
}

/// Writes solution JSON; without time the `time_ms` field is `null` so the
/// output of a deterministic solve is reproducible byte for byte.
pub fn write_solution_json<T, W>(mut out: W, solution: &Solution<T>, include_time: bool) -> Result<()>
where
    T: Scalar + Serialize,
    W: Write,
{
    let mut value = serde_json::to_value(solution)?;
    if !include_time {
        value["time_ms"] = serde_json::Value::Null;
    }
    out.write_all(to_json_pretty(&value)?.as_bytes())?;
    Ok(())
}

/// Pretty JSON with a trailing newline.
pub fn to_json_pretty<S: Serialize + ?Sized>(value: &S) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn write_json<S: Serialize + ?Sized>(path: impl AsRef<Path>, value: &S) -> Result<()> {
    fs::write(path, to_json_pretty(value)?)?;
    Ok(())
}

/// Metrics block of a saved solution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsRecord {
    pub ncg: Vec<f64>,
    pub nec: Vec<f64>,
    pub tep: f64,
    pub psi_p: f64,
    pub psi_s: f64,
    pub ncg_mean: f64,
    pub nec_mean: f64,
}

/// A solution as read back from disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub assignment: Vec<usize>,
    pub objective: f64,
    pub method: Method,
    pub optimal: bool,
    pub nodes_explored: u64,
    /// `None` when the time was suppressed.
    pub time_ms: Option<f64>,
    pub metrics: MetricsRecord,
}

pub fn load_solution(path: impl AsRef<Path>) -> Result<SolutionRecord> {
    from_json_str(&fs::read_to_string(path)?)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ScheduleFile {
    Bare(Vec<usize>),
    Wrapped { assignment: Vec<usize> },
}

/// Reads a schedule from a bare JSON array, or from any object with an
/// `assignment` array (a saved solution qualifies).
pub fn schedule_from_json(text: &str) -> Result<Schedule> {
    let file: ScheduleFile = from_json_str(text).map_err(|err| match err {
        Error::Format(msg) => Error::Format(format!(
            "expected a slot array or an object with \"assignment\" ({msg})"
        )),
        other => other,
    })?;
    Ok(match file {
        ScheduleFile::Bare(assignment) | ScheduleFile::Wrapped { assignment } => {
            Schedule::new(assignment)
        }
    })
}

pub fn load_schedule(path: impl AsRef<Path>) -> Result<Schedule> {
    schedule_from_json(&fs::read_to_string(path)?)
}
