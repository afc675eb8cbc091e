//! Re-derives the welfare/fairness tension claims on the built-in tables
//! and the IAM optimality claim on the segregated-availability instance.

use std::fmt;

use serde::Serialize;

use crate::datagen::{builtin, gen_grouped, Builtin, GroupScenario};
use crate::error::Result;
use crate::model::{ObjectiveWeights, SolveConfig};
use crate::solvers::{solve_exact, solve_iam, solve_swm};

/// Absolute tolerance of every comparison.
pub const CLAIM_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct ClaimCheck {
    pub name: &'static str,
    pub statement: &'static str,
    pub passed: bool,
    /// Measured values, plus the first failed expectation if any.
    pub detail: String,
}

impl fmt::Display for ClaimCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}: {} [{}]", self.name, self.statement, self.detail)
    }
}

/// Collects `(label, got, want)` comparisons for one check.
struct Expect {
    measured: Vec<String>,
    failure: Option<String>,
}

impl Expect {
    fn new() -> Self {
        Self {
            measured: Vec::new(),
            failure: None,
        }
    }

    fn eq(&mut self, label: &str, got: f64, want: f64) {
        self.measured.push(format!("{label}={got:.10}"));
        if (got - want).abs() > CLAIM_TOLERANCE && self.failure.is_none() {
            self.failure = Some(format!("{label} expected {want:.10}"));
        }
    }

    fn lt(&mut self, label: &str, a: f64, b: f64) {
        if !(a + CLAIM_TOLERANCE < b) && self.failure.is_none() {
            self.failure = Some(format!("{label}: {a:.10} is not below {b:.10}"));
        }
    }

    fn finish(self, name: &'static str, statement: &'static str) -> ClaimCheck {
        let mut detail = self.measured.join(", ");
        if let Some(f) = &self.failure {
            detail.push_str("; ");
            detail.push_str(f);
        }
        ClaimCheck {
            name,
            statement,
            passed: self.failure.is_none(),
            detail,
        }
    }
}

fn claim1() -> Result<ClaimCheck> {
    let inst = builtin::<f64>(Builtin::Table1);
    let swm = solve_swm(&inst)?;
    let fair = solve_exact(&inst, ObjectiveWeights::participant_fairness(), &SolveConfig::deterministic())?;
    let mut e = Expect::new();
    e.eq("swm.tep", swm.report.tep, 1.0);
    e.eq("swm.psi_p", swm.report.psi_p, 1.0);
    e.eq("pfair.tep", fair.report.tep, 0.98);
    e.eq("pfair.psi_p", fair.report.psi_p, 0.0);
    e.lt("pfair.tep < swm.tep", fair.report.tep, swm.report.tep);
    Ok(e.finish("C1", "participant fairness costs welfare on table1"))
}

fn claim2() -> Result<ClaimCheck> {
    let inst = builtin::<f64>(Builtin::Table2);
    let swm = solve_swm(&inst)?;
    let fair = solve_exact(&inst, ObjectiveWeights::speaker_fairness(), &SolveConfig::deterministic())?;
    let mut e = Expect::new();
    e.eq("swm.tep", swm.report.tep, 1.4);
    e.eq("swm.psi_s", swm.report.psi_s, 0.2);
    e.eq("sfair.tep", fair.report.tep, 1.175);
    e.eq("sfair.psi_s", fair.report.psi_s, 0.05);
    e.lt("sfair.psi_s < swm.psi_s", fair.report.psi_s, swm.report.psi_s);
    e.lt("sfair.tep < swm.tep", fair.report.tep, swm.report.tep);
    Ok(e.finish("C2", "speaker fairness costs welfare on table2"))
}

fn claim3() -> Result<ClaimCheck> {
    let inst = builtin::<f64>(Builtin::Table3);
    let cfg = SolveConfig::deterministic();
    let speakers = solve_exact(&inst, ObjectiveWeights::speaker_fairness(), &cfg)?;
    let participants = solve_exact(&inst, ObjectiveWeights::participant_fairness(), &cfg)?;
    let mut e = Expect::new();
    e.eq("sfair.psi_s", speakers.report.psi_s, 0.0);
    e.eq("sfair.psi_p", speakers.report.psi_p, 0.3 / 1.7);
    e.eq("pfair.psi_p", participants.report.psi_p, 0.0);
    e.eq("pfair.psi_s", participants.report.psi_s, 0.8);
    Ok(e.finish("C3", "participant and speaker fairness conflict on table3"))
}

fn claim4() -> Result<ClaimCheck> {
    let inst = gen_grouped::<f64>(&GroupScenario::segregated_availability(5))?;
    let swm = solve_swm(&inst)?;
    let iam = solve_iam(&inst, None)?;
    let mut e = Expect::new();
    e.eq("iam.tep", iam.report.tep, swm.report.tep);
    e.measured.push(format!("swm.tep={:.10}", swm.report.tep));
    Ok(e.finish("C4", "IAM maximizes welfare on balanced segregated availability"))
}

/// Runs the four checks in order.
pub fn verify_claims() -> Result<Vec<ClaimCheck>> {
    Ok(vec![claim1()?, claim2()?, claim3()?, claim4()?])
}
