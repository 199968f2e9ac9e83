//! Batch runner: bodies × statements × λ-grid, evaluated on a worker pool
//! and merged by a fixed sort key so outputs are byte-reproducible.

use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificate::{certificate, CertificateResult};
use crate::constructions::{DIAG_MAX_BASE_DIM, T_MAX_BASE_DIM};
use crate::error::{GeomError, Result};
use crate::output::{certificate_csv, reports_csv, reports_jsonl};
use crate::verify::{self, uniform_grid, InequalityReport, StatementId, Subject, TOL_VERIFY};
use crate::zoo::{default_zoo, generate, recenter, BodySpec, Recenter};

/// Default seed of the built-in zoo.
pub const DEFAULT_SEED: u64 = 2024;

fn default_grid() -> usize {
    21
}

fn default_tol() -> f64 {
    TOL_VERIFY
}

fn all_statements() -> Vec<StatementId> {
    StatementId::ALL.to_vec()
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct OutputPaths {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reports_jsonl: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reports_csv: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate_csv: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub bodies: Vec<BodySpec>,
    #[serde(default = "all_statements")]
    pub statements: Vec<StatementId>,
    /// Number of uniform λ points in `[0, 1]`, endpoints included.
    #[serde(default = "default_grid")]
    pub lambda_grid: usize,
    #[serde(default = "default_tol")]
    pub tol_verify: f64,
    /// Worker threads; 0 uses every core.
    #[serde(default)]
    pub jobs: usize,
    /// λ-grid size of the `n = 4, 5` certificate table; absent skips it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate_grid: Option<usize>,
    #[serde(default)]
    pub outputs: OutputPaths,
}

impl RunConfig {
    pub fn new(bodies: Vec<BodySpec>) -> Self {
        RunConfig {
            bodies,
            statements: all_statements(),
            lambda_grid: default_grid(),
            tol_verify: default_tol(),
            jobs: 0,
            certificate_grid: None,
            outputs: OutputPaths::default(),
        }
    }

    /// The default zoo for `n = 2..=5`, every statement, and the 1001-point
    /// certificate table.
    pub fn full_matrix(seed: u64) -> Self {
        let bodies = (2..=5).flat_map(|n| default_zoo(n, seed)).collect();
        RunConfig { certificate_grid: Some(1001), ..Self::new(bodies) }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(s).map_err(|e| GeomError::BadSpec(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.lambda_grid == 0 {
            return Err(GeomError::BadSpec("lambda_grid must be positive".into()));
        }
        if !(self.tol_verify >= 0.0 && self.tol_verify.is_finite()) {
            return Err(GeomError::BadSpec(format!("tol_verify = {}", self.tol_verify)));
        }
        if self.certificate_grid == Some(0) {
            return Err(GeomError::BadSpec("certificate_grid must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TaskFailure {
    pub statement: StatementId,
    pub bodies: Vec<String>,
    pub error: GeomError,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunOutcome {
    pub reports: Vec<InequalityReport>,
    pub certificates: Vec<CertificateResult>,
    pub failures: Vec<TaskFailure>,
}

impl RunOutcome {
    /// Asserted reports that failed.
    pub fn violations(&self) -> impl Iterator<Item = &InequalityReport> {
        self.reports.iter().filter(|r| r.failed_assertion())
    }

    /// Exploratory reports with a negative margin.
    pub fn candidates(&self) -> impl Iterator<Item = &InequalityReport> {
        self.reports.iter().filter(|r| !r.asserted && !r.passed)
    }

    pub fn invalid_certificates(&self) -> impl Iterator<Item = &CertificateResult> {
        self.certificates.iter().filter(|c| !c.valid)
    }

    pub fn reports_csv(&self) -> String {
        reports_csv(&self.reports)
    }

    pub fn reports_jsonl(&self) -> String {
        reports_jsonl(&self.reports)
    }

    pub fn certificate_csv(&self) -> String {
        certificate_csv(&self.certificates)
    }

    pub fn write(&self, paths: &OutputPaths) -> std::io::Result<()> {
        if let Some(p) = &paths.reports_jsonl {
            std::fs::write(p, self.reports_jsonl())?;
        }
        if let Some(p) = &paths.reports_csv {
            std::fs::write(p, self.reports_csv())?;
        }
        if let Some(p) = &paths.certificate_csv {
            std::fs::write(p, self.certificate_csv())?;
        }
        Ok(())
    }
}

struct Task {
    subject: usize,
    partner: usize,
    statement: StatementId,
}

fn run_task(subjects: &[Subject], task: &Task, grid: &[f64]) -> Result<Vec<InequalityReport>> {
    let s = &subjects[task.subject];
    let partner = &subjects[task.partner];
    let n = s.dim();
    match task.statement {
        StatementId::Thm1 => verify::verify_theorem_sum(s, grid),
        StatementId::Lem2 => verify::verify_lemma2(s, grid),
        StatementId::Cor3 => Ok(vec![verify::verify_average_corollary(s)?]),
        StatementId::Cor4 => (1..n).map(|k| verify::verify_markov_corollary(s, k)).collect(),
        StatementId::RsDiff => Ok(vec![verify::verify_rs_difference(s)?]),
        StatementId::RsSecproj => {
            let mut out = Vec::new();
            if n <= T_MAX_BASE_DIM {
                out.extend(verify::verify_t_secproj(s, s, 0.5)?);
            }
            if n <= DIAG_MAX_BASE_DIM {
                let centred = |x: &Subject| -> Result<(Subject, Vec<f64>)> {
                    let (b, t) = recenter(&x.body, Recenter::Centroid)?;
                    Ok((Subject::new(x.label.clone(), b), t))
                };
                let (k, tk) = centred(s)?;
                let (l, tl) = centred(partner)?;
                let mut r = verify::verify_diag_secproj(&k, &l)?;
                r.note = Some(format!("centroids moved to 0 by {tk:?} and {tl:?}"));
                out.push(r);
            }
            Ok(out)
        }
        StatementId::GodbersenJ => verify::verify_godbersen(s),
        StatementId::AlexandrovJ => verify::verify_alexandrov(s),
        StatementId::Unbalanced => verify::verify_unbalanced(s, grid),
        StatementId::Strange => Ok(vec![verify::verify_strange(s, partner)?]),
        StatementId::MilmanPajor => Ok(vec![verify::verify_milman_pajor(s, partner)?]),
        StatementId::RemarkEl => verify::verify_remark_el(s, grid),
    }
}

fn sort_reports(reports: &mut [InequalityReport]) {
    reports.sort_by(|a, b| {
        a.n.cmp(&b.n)
            .then_with(|| a.statement.cmp(&b.statement))
            .then_with(|| a.bodies.cmp(&b.bodies))
            .then_with(|| a.j.cmp(&b.j))
            .then_with(|| a.k.cmp(&b.k))
            .then_with(|| a.lambda.unwrap_or(-1.0).total_cmp(&b.lambda.unwrap_or(-1.0)))
            .then_with(|| a.note.cmp(&b.note))
    });
}

/// Builds the bodies, evaluates every requested statement and the
/// certificate table. Body generation errors abort the run; errors inside
/// a statement are collected in `failures`.
pub fn run(config: &RunConfig) -> Result<RunOutcome> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| GeomError::InvalidParameter(format!("worker pool: {e}")))?;
    pool.install(|| run_in_pool(config))
}

fn run_in_pool(config: &RunConfig) -> Result<RunOutcome> {
    let subjects: Vec<Subject> = config
        .bodies
        .par_iter()
        .map(|spec| Ok(Subject::new(spec.label(), generate(spec)?)))
        .collect::<Result<_>>()?;
    let grid = uniform_grid(config.lambda_grid);

    // pair statements use the next body of the same dimension
    let partner = |i: usize| -> usize {
        let n = subjects[i].dim();
        let same: Vec<usize> = (0..subjects.len()).filter(|&k| subjects[k].dim() == n).collect();
        let pos = same.iter().position(|&k| k == i).expect("present");
        same[(pos + 1) % same.len()]
    };
    let mut statements = config.statements.clone();
    statements.sort();
    statements.dedup();
    let tasks: Vec<Task> = (0..subjects.len())
        .flat_map(|i| {
            let p = partner(i);
            statements.iter().map(move |&statement| Task { subject: i, partner: p, statement })
        })
        .collect();

    let results: Vec<(usize, Result<Vec<InequalityReport>>)> =
        tasks.par_iter().enumerate().map(|(i, t)| (i, run_task(&subjects, t, &grid))).collect();

    let mut outcome = RunOutcome::default();
    for (i, res) in results {
        let t = &tasks[i];
        match res {
            Ok(reps) => outcome.reports.extend(reps),
            Err(error) => {
                let mut bodies = vec![subjects[t.subject].label.clone()];
                if matches!(t.statement, StatementId::Strange | StatementId::MilmanPajor | StatementId::RsSecproj) {
                    bodies.push(subjects[t.partner].label.clone());
                }
                outcome.failures.push(TaskFailure { statement: t.statement, bodies, error });
            }
        }
    }
    for r in &mut outcome.reports {
        r.set_tol(config.tol_verify);
    }
    sort_reports(&mut outcome.reports);

    if let Some(m) = config.certificate_grid {
        outcome.certificates = [4, 5]
            .iter()
            .flat_map(|&n| uniform_grid(m).into_iter().map(move |l| (n, l)))
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&(n, l)| certificate(n, l))
            .collect::<Result<_>>()?;
    }
    Ok(outcome)
}
