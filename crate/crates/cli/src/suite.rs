//! Verify-suite runs on a worker pool of fixed size.

use std::fmt::Write as _;

use anyhow::Result;
use clap::ValueEnum;
use serde::Serialize;
use topogames::game::SolverConfig;
use topogames::invariants::{
    check_composition_theorems, check_core_chain, check_determinacy, check_monotonicity,
    check_special_classes, check_strategies, Corpus, InvariantReport,
};

pub const DETERMINACY_SAMPLES: usize = 200;
pub const MONOTONICITY_SAMPLES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Core,
    Composition,
    Special,
    Strategies,
    Determinacy,
    Monotonicity,
    All,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub max_n: usize,
    pub jobs: usize,
    pub seed: u64,
    pub solver: SolverConfig,
}

/// The job count is left out: it cannot change any result.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyOutput {
    pub suite: Suite,
    pub max_n: usize,
    pub seed: u64,
    pub reports: Vec<InvariantReport>,
}

impl VerifyOutput {
    pub fn ok(&self) -> bool {
        self.reports.iter().all(InvariantReport::ok)
    }
}

pub fn run_verify(config: &VerifyConfig) -> Result<VerifyOutput> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()?;
    pool.install(|| {
        let corpus = Corpus::up_to_iso(config.max_n)?;
        let mut reports = Vec::new();
        let s = config.suite;
        if s.includes(Suite::Core) {
            reports.push(check_core_chain(&corpus, &config.solver));
        }
        if s.includes(Suite::Composition) {
            reports.push(check_composition_theorems(&corpus, &config.solver));
        }
        if s.includes(Suite::Special) {
            reports.push(check_special_classes(&corpus, &config.solver));
        }
        if s.includes(Suite::Strategies) {
            reports.push(check_strategies(&corpus));
        }
        if s.includes(Suite::Determinacy) {
            reports.push(check_determinacy(&corpus, config.seed, DETERMINACY_SAMPLES));
        }
        if s.includes(Suite::Monotonicity) {
            reports.push(check_monotonicity(&corpus, config.seed, MONOTONICITY_SAMPLES));
        }
        Ok(VerifyOutput {
            suite: config.suite,
            max_n: config.max_n,
            seed: config.seed,
            reports,
        })
    })
}

pub fn render_table(output: &VerifyOutput) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<16} {:>8} {:>8} {:>10}  status",
        "predicate", "passed", "failed", "time"
    );
    for r in &output.reports {
        let status = if r.ok() { "ok" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{:<16} {:>8} {:>8} {:>9.2}s  {status}",
            r.predicate,
            r.passed,
            r.failed,
            r.wall_time.as_secs_f64()
        );
        for (k, v) in &r.observations {
            let _ = writeln!(out, "    {k}: {v}");
        }
        for c in r.counterexamples.iter().take(5) {
            let _ = writeln!(out, "    counterexample {}: {}", c.code, c.detail);
        }
    }
    out
}
