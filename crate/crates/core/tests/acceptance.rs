//! Acceptance suite: one PASS/FAIL line per criterion, then a summary.
//!
//! Lines go straight to stdout so they show up without `--nocapture`.
//! Run alone with `cargo test -p fairconf-core --test acceptance`.

mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{all_schedules, random_schedule, small_instance, WEIGHT_GRID};
use fairconf::datagen::{builtin, gen_grouped, gen_uniform, Builtin, GroupScenario, DEFAULT_SEED};
use fairconf::harness::io::write_solution_json;
use fairconf::harness::{run_sweep, verify_claims, write_csv, SweepSpec};
use fairconf::metrics::{evaluate, is_eps_fair_participants, is_eps_fair_speakers};
use fairconf::solvers::{solve_bruteforce, solve_exact, solve_iam, solve_swm};
use fairconf::{Instance, Method, MetricsReport, ObjectiveWeights, SolveConfig};

const TOL: f64 = 1e-9;
/// Per-solve budget for the full-size instances.
const SOLVE_BUDGET: Duration = Duration::from_secs(600);

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn close(label: &str, got: f64, want: f64, tol: f64) -> Result<(), String> {
    if (got - want).abs() <= tol {
        Ok(())
    } else {
        Err(format!("{label} = {got:.12}, expected {want:.12} ± {tol:e}"))
    }
}

fn at_most(label: &str, got: f64, limit: f64) -> Result<(), String> {
    if got <= limit {
        Ok(())
    } else {
        Err(format!("{label} = {got:e} exceeds {limit:e}"))
    }
}

fn exact_config() -> SolveConfig {
    SolveConfig::default()
        .with_workers(fairconf::harness::default_workers())
        .with_time_limit(SOLVE_BUDGET)
}

fn seg_avail() -> Instance {
    gen_grouped(&GroupScenario::segregated_availability(5)).unwrap()
}

fn seg_interest() -> Instance {
    gen_grouped(&GroupScenario::segregated_interest(5)).unwrap()
}

fn solve_within_budget(inst: &Instance, w: ObjectiveWeights) -> Result<fairconf::Solution, String> {
    let s = solve_exact(inst, w, &exact_config()).map_err(|e| e.to_string())?;
    ensure!(s.elapsed <= SOLVE_BUDGET, "solve took {:?}", s.elapsed);
    Ok(s)
}

fn c1_counterexamples() -> Outcome {
    let started = Instant::now();
    let cfg = SolveConfig::deterministic();
    let t1: Instance = builtin(Builtin::Table1);
    let t2: Instance = builtin(Builtin::Table2);
    let t3: Instance = builtin(Builtin::Table3);

    close("table1 swm tep", solve_swm(&t1).unwrap().report.tep, 1.0, TOL)?;
    close("table2 swm tep", solve_swm(&t2).unwrap().report.tep, 1.4, TOL)?;
    let oracle = solve_bruteforce(&t3, ObjectiveWeights::welfare_only()).unwrap().report.tep;
    close("table3 swm tep", solve_swm(&t3).unwrap().report.tep, oracle, TOL)?;

    let p1 = solve_exact(&t1, ObjectiveWeights::participant_fairness(), &cfg).unwrap();
    close("table1 pfair psi_p", p1.report.psi_p, 0.0, TOL)?;
    close("table1 pfair tep", p1.report.tep, 0.98, TOL)?;
    let s2 = solve_exact(&t2, ObjectiveWeights::speaker_fairness(), &cfg).unwrap();
    close("table2 sfair psi_s", s2.report.psi_s, 0.05, TOL)?;
    close("table2 sfair tep", s2.report.tep, 1.175, TOL)?;
    let s3 = solve_exact(&t3, ObjectiveWeights::speaker_fairness(), &cfg).unwrap();
    close("table3 sfair psi_s", s3.report.psi_s, 0.0, TOL)?;
    close("table3 sfair psi_p", s3.report.psi_p, 0.3 / 1.7, TOL)?;
    let p3 = solve_exact(&t3, ObjectiveWeights::participant_fairness(), &cfg).unwrap();
    close("table3 pfair psi_p", p3.report.psi_p, 0.0, TOL)?;
    close("table3 pfair psi_s", p3.report.psi_s, 0.8, TOL)?;

    let elapsed = started.elapsed();
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("table3 swm tep = {oracle:.4}, {elapsed:?}"))
}

fn c2_segregated_availability() -> Outcome {
    let inst = seg_avail();
    let swm = solve_swm(&inst).unwrap();
    close("swm tep", swm.report.tep, 14.7608771239, 1e-4)?;
    let iam = solve_iam(&inst, None).unwrap();
    close("iam tep", iam.report.tep, swm.report.tep, TOL)?;
    let pfair = solve_within_budget(&inst, ObjectiveWeights::participant_fairness())?;
    at_most("pfair psi_p", pfair.report.psi_p, 1.3896e-6 + TOL)?;
    let sfair = solve_within_budget(&inst, ObjectiveWeights::speaker_fairness())?;
    close("sfair psi_s", sfair.report.psi_s, 0.1284964916, 1e-4)?;
    Ok(format!(
        "swm tep {:.10}, pfair psi_p {:.3e} ({:?}, optimal={}), sfair psi_s {:.10}",
        swm.report.tep, pfair.report.psi_p, pfair.elapsed, pfair.optimal, sfair.report.psi_s
    ))
}

fn c3_fairconf_objective() -> Outcome {
    let s = solve_within_budget(&seg_avail(), ObjectiveWeights::fairconf(0.5, 0.5))?;
    let want = 14.65836076 / 100.0 + 0.5 * -0.0001224844 + 0.5 * -0.1284964916;
    close("objective", s.objective, want, 1e-5)?;
    ensure!(s.optimal, "search did not prove optimality");
    Ok(format!("J* = {:.10} (target {want:.7}), {:?}", s.objective, s.elapsed))
}

fn c4_segregated_interest() -> Outcome {
    let inst = seg_interest();
    let swm = solve_swm(&inst).unwrap();
    close("swm tep", swm.report.tep, 18.8272984421, 1e-4)?;
    let sfair = solve_within_budget(&inst, ObjectiveWeights::speaker_fairness())?;
    at_most("sfair psi_s", sfair.report.psi_s, 0.4122147478 + 1e-6)?;
    let pfair = solve_within_budget(&inst, ObjectiveWeights::participant_fairness())?;
    at_most("pfair psi_p", pfair.report.psi_p, 1.21e-10 + TOL)?;
    Ok(format!(
        "swm tep {:.10}, sfair psi_s {:.10}, pfair psi_p {:.3e} ({:?}, optimal={})",
        swm.report.tep, sfair.report.psi_s, pfair.report.psi_p, pfair.elapsed, pfair.optimal
    ))
}

fn c5_oracle_equivalence() -> Outcome {
    let started = Instant::now();
    let mut solves = 0;
    for seed in 0..50u64 {
        let inst = small_instance(seed, 5, 6);
        for &(ww, l1, l2) in &WEIGHT_GRID {
            let w = ObjectiveWeights::new(ww, l1, l2);
            let exact = solve_exact(&inst, w, &SolveConfig::deterministic()).unwrap();
            let brute = solve_bruteforce(&inst, w).unwrap();
            ensure!(exact.optimal, "seed {seed} {w:?}: not proven optimal");
            close(&format!("seed {seed} {w:?}"), exact.objective, brute.objective, TOL)?;
            solves += 1;
        }
    }
    let elapsed = started.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!("{solves} solves agree, {elapsed:?}"))
}

fn c6_ideal_closed_forms() -> Outcome {
    for seed in 0..20u64 {
        let inst = small_instance(1000 + seed, 6, 7);
        let (n, l) = (inst.talk_count(), inst.slot_count());
        let mut best_cg = vec![0.0f64; inst.participant_count()];
        let mut best_ec = vec![0.0f64; n];
        let mut ideal = None;
        for s in all_schedules(n, l) {
            let r = evaluate(&inst, &s).unwrap();
            best_cg.iter_mut().zip(&r.cg).for_each(|(b, &c)| *b = b.max(c));
            best_ec.iter_mut().zip(&r.ec).for_each(|(b, &e)| *b = b.max(e));
            ideal.get_or_insert((r.icg, r.iec));
        }
        let (icg, iec) = ideal.unwrap();
        for (p, (a, b)) in icg.iter().zip(&best_cg).enumerate() {
            close(&format!("seed {seed} icg[{p}]"), *a, *b, TOL)?;
        }
        for (t, (a, b)) in iec.iter().zip(&best_ec).enumerate() {
            close(&format!("seed {seed} iec[{t}]"), *a, *b, TOL)?;
        }
    }
    Ok("20 instances".into())
}

fn c7_iam_lemma() -> Outcome {
    let mut checked = 0;
    for case in 0..3 {
        for seed in 0..20u64 {
            let base = gen_uniform(5, 6, 8, 2000 + 100 * case + seed).unwrap();
            let (mut v, mut a) = (base.interest().to_rows(), base.availability().to_rows());
            if case != 1 {
                a = vec![a[0].clone(); a.len()];
            }
            if case != 0 {
                v = vec![v[0].clone(); v.len()];
            }
            let inst = Instance::from_rows(&v, &a).unwrap();
            let swm = solve_swm(&inst).unwrap().report.tep;
            for tie in [None, Some(0), Some(1), Some(7), Some(42)] {
                let iam = solve_iam(&inst, tie).unwrap().report.tep;
                close(&format!("case {case} seed {seed} tie {tie:?}"), iam, swm, TOL)?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (instance, tie seed) pairs"))
}

fn c8_structural_invariants() -> Outcome {
    for k in 0..100u64 {
        let inst = small_instance(3000 + k, 8, 10);
        let (n, l) = (inst.talk_count(), inst.slot_count());
        let r = evaluate(&inst, &random_schedule(n, l, k)).unwrap();
        ensure!(r.ncg.iter().chain(&r.nec).all(|x| (0.0..=1.0).contains(x)), "pair {k}: value outside [0,1]");
        close(&format!("pair {k} sum cg"), r.cg.iter().sum(), r.tep, TOL)?;
        close(&format!("pair {k} sum ec"), r.ec.iter().sum(), r.tep, TOL)?;
        type FairFn = fn(&MetricsReport, f64) -> fairconf::Result<bool>;
        let sides: [(f64, FairFn); 2] = [(r.psi_p, is_eps_fair_participants), (r.psi_s, is_eps_fair_speakers)];
        for (psi, fair) in sides {
            ensure!(fair(&r, psi).unwrap(), "pair {k}: not fair at eps = psi");
            if psi > 1e-6 {
                ensure!(!fair(&r, psi - 1e-6).unwrap(), "pair {k}: fair below psi");
            }
            let grid: Vec<bool> = (0..=50).map(|i| fair(&r, i as f64 / 50.0).unwrap()).collect();
            ensure!(grid.windows(2).all(|w| w[1] || !w[0]), "pair {k}: not monotone in eps");
        }
    }
    Ok("100 pairs".into())
}

fn c9_lambda_shape() -> Outcome {
    let inst = seg_avail();
    let grid = [0.0, 0.25, 0.5, 0.75, 1.0];
    let mut values = Vec::new();
    for &l1 in &grid {
        let s = solve_within_budget(&inst, ObjectiveWeights::fairconf(l1, 0.5))?;
        ensure!(s.optimal, "lambda1 = {l1}: not proven optimal");
        values.push(s.objective);
    }
    for (i, w) in values.windows(2).enumerate() {
        ensure!(w[1] <= w[0] + TOL, "increase between points {i} and {}: {values:?}", i + 1);
    }
    for (i, w) in values.windows(3).enumerate() {
        ensure!(w[1] <= (w[0] + w[2]) / 2.0 + TOL, "not convex around point {}: {values:?}", i + 1);
    }
    Ok(format!("J* = {values:.7?}"))
}

fn c10_uniform_dominance() -> Outcome {
    let inst = gen_uniform(10, 10, 10, DEFAULT_SEED).unwrap();
    let swm = solve_swm(&inst).unwrap();
    let pfair = solve_within_budget(&inst, ObjectiveWeights::participant_fairness())?;
    let sfair = solve_within_budget(&inst, ObjectiveWeights::speaker_fairness())?;
    at_most("pfair psi_p - swm psi_p", pfair.report.psi_p - swm.report.psi_p, TOL)?;
    at_most("sfair psi_s - swm psi_s", sfair.report.psi_s - swm.report.psi_s, TOL)?;
    Ok(format!(
        "psi_p {:.4} <= {:.4}, psi_s {:.4} <= {:.4}",
        pfair.report.psi_p, swm.report.psi_p, sfair.report.psi_s, swm.report.psi_s
    ))
}

fn c11_claims_and_determinism() -> Outcome {
    let checks = verify_claims().map_err(|e| e.to_string())?;
    let passed = checks.iter().filter(|c| c.passed).count();
    ensure!(checks.len() == 4 && passed == 4, "{passed}/{} claims passed", checks.len());

    let inst = gen_uniform(6, 6, 8, 11).unwrap();
    let sweep = || {
        let spec = SweepSpec {
            instance: inst.clone(),
            methods: vec![Method::Swm, Method::Iam, Method::Pfair, Method::Sfair, Method::Fairconf],
            lambda1_values: vec![0.0, 0.5, 1.0],
            lambda2_values: vec![0.5],
            config: SolveConfig::deterministic(),
        };
        let mut buf = Vec::new();
        write_csv(&run_sweep(&spec).unwrap(), &mut buf, false).unwrap();
        buf
    };
    ensure!(sweep() == sweep(), "sweep CSV differs between runs");
    let solve = || {
        let s = solve_exact(&inst, ObjectiveWeights::fairconf(0.3, 0.6), &SolveConfig::deterministic()).unwrap();
        let mut buf = Vec::new();
        write_solution_json(&mut buf, &s, false).unwrap();
        buf
    };
    ensure!(solve() == solve(), "solution JSON differs between runs");
    Ok("4/4 claims, byte-identical sweep and solve output".into())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("counterexample exactness", c1_counterexamples),
        ("segregated availability baselines", c2_segregated_availability),
        ("fairconf objective at 0.5/0.5", c3_fairconf_objective),
        ("segregated interest baselines", c4_segregated_interest),
        ("exact vs brute-force oracle", c5_oracle_equivalence),
        ("ideal gain closed forms", c6_ideal_closed_forms),
        ("IAM optimality lemma", c7_iam_lemma),
        ("structural invariants", c8_structural_invariants),
        ("lambda sweep shape", c9_lambda_shape),
        ("uniform instance dominance", c10_uniform_dominance),
        ("claims and determinism", c11_claims_and_determinism),
    ];
    let mut failed = Vec::new();
    let mut out = std::io::stdout().lock();
    writeln!(out).unwrap();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => writeln!(out, "PASS criterion {id:>2} ({name}): {detail}").unwrap(),
            Err(why) => {
                writeln!(out, "FAIL criterion {id:>2} ({name}): {why}").unwrap();
                failed.push(id);
            }
        }
        out.flush().unwrap();
    }
    writeln!(out, "acceptance: {} passed, {} failed", criteria.len() - failed.len(), failed.len()).unwrap();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
