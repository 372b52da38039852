use std::fmt::Write as _;
use std::time::Duration;

use ssg_core::generate::{cycle_with_averages, generate, GeneratorSpec};
use ssg_core::{Game, Result};

use crate::solve::{solve, Algorithm};

#[derive(Debug, Clone)]
pub struct BenchPlan {
    /// `spec.n` is overwritten by each entry of `sizes`; the seed is offset per instance.
    pub spec: GeneratorSpec,
    pub sizes: Vec<usize>,
    pub solvers: Vec<Algorithm>,
    pub instances: usize,
    pub repetitions: usize,
    /// Single cycles with this many average vertices instead of the family in `spec`.
    pub averages: Option<usize>,
    pub fvs_max: usize,
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub n: usize,
    pub instance: usize,
    pub solver: Algorithm,
    pub n_max: usize,
    pub n_ave: usize,
    /// Improvement steps or subsolver calls, whichever the solver reports.
    pub work: Option<usize>,
    pub within_bound: Option<bool>,
    /// Fastest of the repetitions.
    pub time: Duration,
    /// `None` on success, the refusal otherwise.
    pub error: Option<String>,
}

fn instance(plan: &BenchPlan, n: usize, i: usize) -> Result<Game> {
    let seed = plan.spec.seed.wrapping_add(i as u64);
    match plan.averages {
        Some(a) => cycle_with_averages(n, a, seed),
        None => generate(&GeneratorSpec { n, seed, ..plan.spec }),
    }
}

/// Rows come out ordered by size, instance, then solver.
pub fn run(plan: &BenchPlan) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &n in &plan.sizes {
        for i in 0..plan.instances {
            let game = instance(plan, n, i)?;
            for &solver in &plan.solvers {
                let mut row = BenchRow {
                    n: game.len(),
                    instance: i,
                    solver,
                    n_max: game.count_max(),
                    n_ave: game.count_ave(),
                    work: None,
                    within_bound: None,
                    time: Duration::MAX,
                    error: None,
                };
                for _ in 0..plan.repetitions.max(1) {
                    match solve(&game, solver, plan.fvs_max) {
                        Ok(sol) => {
                            row.solver = sol.algorithm;
                            row.work = sol
                                .counters
                                .iter()
                                .find(|(k, _)| matches!(*k, "iterations" | "calls" | "subgames"))
                                .map(|(_, c)| *c);
                            row.within_bound = sol.within_bound;
                            row.time = row.time.min(sol.elapsed);
                        }
                        Err(e) => {
                            row.error = Some(e.to_string());
                            row.time = Duration::ZERO;
                            break;
                        }
                    }
                }
                rows.push(row);
            }
        }
    }
    Ok(rows)
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| "-".into(), |v| v.to_string())
}

fn bound(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    }
}

pub fn table(rows: &[BenchRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>8} {:>4} {:<15} {:>7} {:>6} {:>8} {:>6} {:>12}  status",
        "n", "inst", "solver", "n_M", "n_a", "work", "bound", "time_us"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:>8} {:>4} {:<15} {:>7} {:>6} {:>8} {:>6} {:>12}  {}",
            r.n,
            r.instance,
            r.solver.name(),
            r.n_max,
            r.n_ave,
            opt(r.work),
            bound(r.within_bound),
            r.time.as_micros(),
            r.error.as_deref().unwrap_or("ok"),
        );
    }
    out
}

pub fn csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("n,instance,solver,n_max,n_ave,work,within_bound,time_us,status\n");
    for r in rows {
        let status = r.error.as_deref().map_or("ok".to_string(), |e| format!("\"{}\"", e.replace('"', "'")));
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.n,
            r.instance,
            r.solver.name(),
            r.n_max,
            r.n_ave,
            opt(r.work),
            bound(r.within_bound),
            r.time.as_micros(),
            status
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ssg_core::generate::Family;

    #[test]
    fn max_acyclic_rows_respect_the_step_bound() {
        let plan = BenchPlan {
            spec: GeneratorSpec::new(Family::MaxAcyclic, 0, 5),
            sizes: vec![10, 20],
            solvers: vec![Algorithm::MaxAcyclic, Algorithm::Hk],
            instances: 2,
            repetitions: 1,
            averages: None,
            fvs_max: 3,
        };
        let rows = run(&plan).unwrap();
        assert_eq!(rows.len(), 8);
        assert!(rows.iter().all(|r| r.error.is_none()));
        assert!(rows.iter().filter(|r| r.solver == Algorithm::MaxAcyclic).all(|r| r.within_bound == Some(true)));
        let text = csv(&rows);
        assert_eq!(text.lines().count(), 9);
    }

    #[test]
    fn refusals_are_rows_not_failures() {
        let plan = BenchPlan {
            spec: GeneratorSpec::new(Family::MaxAcyclic, 0, 5),
            sizes: vec![8],
            solvers: vec![Algorithm::Acyclic],
            instances: 1,
            repetitions: 1,
            averages: None,
            fvs_max: 3,
        };
        let rows = run(&plan).unwrap();
        assert!(rows[0].error.as_deref().is_some_and(|e| e.contains("acyclic")));
    }
}
