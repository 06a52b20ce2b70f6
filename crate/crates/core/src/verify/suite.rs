//! Batch verification: a JSON list of identity checks in, a report out.
//!
//! A report is itself a valid suite file. Sampled parameters are written out
//! explicitly, so feeding a report back reproduces the same numbers.

use std::collections::BTreeMap;
use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::params::{complex_json, Params};
use super::registry::{self, QuadratureOverride, RunOptions, SeriesOverride};
use crate::error::Error;

/// Keys a report adds to each entry; accepted (and ignored) when a report is re-read.
const RECORD_KEYS: &[&str] = &[
    "lhs", "rhs", "abs_residual", "rel_residual", "truncation_order", "converged", "status",
    "wall_time_s", "channels", "note", "message",
];

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub identity_id: String,
    #[serde(default)]
    pub params: Params,
    #[serde(default, skip_serializing_if = "SeriesOverride::is_empty")]
    pub series: SeriesOverride,
    #[serde(default, skip_serializing_if = "QuadratureOverride::is_empty")]
    pub quadrature: QuadratureOverride,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_max_rel_residual: Option<f64>,
    /// Draw this many random completions of `params`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(flatten, skip_serializing)]
    extra: BTreeMap<String, Value>,
}

impl SuiteEntry {
    pub fn new(identity_id: &str, params: Params) -> Self {
        SuiteEntry { identity_id: identity_id.to_string(), params, ..Default::default() }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    #[serde(default)]
    pub seed: u64,
    /// Default cap on index-set sizes for every entry.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(default)]
    pub entries: Vec<SuiteEntry>,
}

impl SuiteConfig {
    pub fn from_json(text: &str) -> Result<Self, SuiteError> {
        let mut value: Value = serde_json::from_str(text).map_err(|e| SuiteError::config(format!("invalid suite JSON: {e}")))?;
        if let Some(obj) = value.as_object_mut() {
            obj.remove("summary");
        }
        serde_json::from_value(value).map_err(|e| SuiteError::config(format!("invalid suite file: {e}")))
    }
}

/// Run-wide settings from the command line.
#[derive(Debug, Clone, Copy, Default)]
pub struct SuiteOptions {
    /// Replaces every entry's threshold.
    pub tol: Option<f64>,
    /// Replaces every entry's maximal total order.
    pub max_order: Option<usize>,
    /// Worker threads; `None` uses rayon's default.
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub identity_id: String,
    pub params: Params,
    #[serde(default, skip_serializing_if = "SeriesOverride::is_empty")]
    pub series: SeriesOverride,
    #[serde(default, skip_serializing_if = "QuadratureOverride::is_empty")]
    pub quadrature: QuadratureOverride,
    pub expected_max_rel_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub converged: Option<bool>,
    pub status: Status,
    pub wall_time_s: f64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub channels: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl std::fmt::Display for Summary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} passed / {} failed / {} skipped", self.passed, self.failed, self.skipped)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    pub summary: Summary,
    pub entries: Vec<Record>,
}

/// A suite that could not be run to completion.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SuiteError {
    #[error("{0}")]
    Config(String),
    #[error("entry {index} ({id}): {source}")]
    Entry { index: usize, id: String, source: Error },
}

impl SuiteError {
    fn config(msg: String) -> Self {
        SuiteError::Config(msg)
    }

    /// The underlying numerical error, if any.
    pub fn source_error(&self) -> Option<&Error> {
        match self {
            SuiteError::Config(_) => None,
            SuiteError::Entry { source, .. } => Some(source),
        }
    }
}

struct Job {
    index: usize,
    id: String,
    params: Params,
    series: SeriesOverride,
    quadrature: QuadratureOverride,
    run_series: SeriesOverride,
    tol: f64,
}

/// Expands samples and checks every entry without evaluating anything.
fn plan(config: &SuiteConfig, opts: &SuiteOptions) -> Result<Vec<Job>, SuiteError> {
    let mut jobs = Vec::new();
    for (index, entry) in config.entries.iter().enumerate() {
        let fail = |source: Error| SuiteError::Entry { index, id: entry.identity_id.clone(), source };
        if let Some(key) = entry.extra.keys().find(|k| !RECORD_KEYS.contains(&k.as_str())) {
            return Err(fail(Error::Domain(format!("unknown entry field `{key}`"))));
        }
        registry::info(&entry.identity_id).map_err(fail)?;
        let draws = entry.samples.unwrap_or(1);
        if draws == 0 {
            return Err(fail(Error::Domain("samples must be at least 1".into())));
        }
        for draw in 0..draws {
            let stream = config.seed.wrapping_add(index as u64 * 1_000_003).wrapping_add(draw as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(stream);
            let params = registry::complete(&entry.identity_id, &entry.params, &mut rng).map_err(fail)?;
            registry::validate(&entry.identity_id, &params).map_err(fail)?;
            let run_series = SeriesOverride {
                max_order: opts.max_order.or(entry.series.max_order),
                budget: entry.series.budget.or(config.budget),
                ..entry.series
            };
            run_series.apply(crate::series::SeriesControl::default()).map_err(fail)?;
            let tol = opts
                .tol
                .or(entry.expected_max_rel_residual)
                .unwrap_or_else(|| registry::default_tolerance(&entry.identity_id, &params));
            if !(tol >= 0.0) {
                return Err(fail(Error::Domain(format!("threshold must be nonnegative, got {tol}"))));
            }
            jobs.push(Job {
                index,
                id: entry.identity_id.clone(),
                params,
                series: entry.series,
                quadrature: entry.quadrature,
                run_series,
                tol,
            });
        }
    }
    Ok(jobs)
}

/// Checks a suite without running it.
pub fn validate_suite(config: &SuiteConfig, opts: &SuiteOptions) -> Result<usize, SuiteError> {
    plan(config, opts).map(|jobs| jobs.len())
}

fn run_job(job: &Job) -> Result<Record, SuiteError> {
    let opts = RunOptions { series: job.run_series, quadrature: job.quadrature };
    let mut record = Record {
        identity_id: job.id.clone(),
        params: job.params.clone(),
        series: job.series,
        quadrature: job.quadrature,
        expected_max_rel_residual: job.tol,
        lhs: None,
        rhs: None,
        abs_residual: None,
        rel_residual: None,
        truncation_order: None,
        converged: None,
        status: Status::Error,
        wall_time_s: 0.0,
        channels: BTreeMap::new(),
        note: None,
        message: None,
    };
    let start = std::time::Instant::now();
    match registry::evaluate(&job.id, &job.params, &opts) {
        Ok(rep) => {
            record.status = if rep.passes(job.tol) { Status::Pass } else { Status::Fail };
            if !rep.converged {
                record.message = Some("series tail criterion not met".into());
            }
            record.lhs = Some(complex_json(rep.lhs));
            record.rhs = Some(complex_json(rep.rhs));
            record.abs_residual = Some(rep.abs_residual);
            record.rel_residual = Some(rep.rel_residual);
            record.truncation_order = Some(rep.truncation_order);
            record.converged = Some(rep.converged);
            record.channels = rep.channels;
            record.note = rep.note;
        }
        Err(e @ Error::Unsupported(_)) => {
            record.status = Status::Skip;
            record.message = Some(e.to_string());
        }
        Err(e @ Error::NonConvergence { .. }) => {
            record.status = Status::Error;
            record.message = Some(e.to_string());
        }
        Err(source) => return Err(SuiteError::Entry { index: job.index, id: job.id.clone(), source }),
    }
    record.wall_time_s = start.elapsed().as_secs_f64();
    Ok(record)
}

/// Validates the whole suite, then evaluates it in parallel, keeping entry order.
pub fn run_suite(config: &SuiteConfig, opts: &SuiteOptions) -> Result<SuiteReport, SuiteError> {
    let jobs = plan(config, opts)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = opts.jobs {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| SuiteError::config(format!("cannot start worker pool: {e}")))?;
    let records: Vec<Record> =
        pool.install(|| jobs.par_iter().map(run_job).collect::<Result<Vec<_>, _>>())?;
    let mut summary = Summary::default();
    for r in &records {
        match r.status {
            Status::Pass => summary.passed += 1,
            Status::Skip => summary.skipped += 1,
            Status::Fail | Status::Error => summary.failed += 1,
        }
    }
    Ok(SuiteReport { seed: config.seed, budget: config.budget, summary, entries: records })
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "identity_id", "params", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_residual", "rel_residual",
            "expected_max_rel_residual", "truncation_order", "converged", "status", "wall_time_s", "message",
        ])?;
        let part = |v: &Option<Value>, key: &str| {
            v.as_ref().and_then(|v| v.get(key)).map(|x| x.to_string()).unwrap_or_default()
        };
        let opt = |v: Option<String>| v.unwrap_or_default();
        for r in &self.entries {
            let status = serde_json::to_value(r.status).expect("status serializes");
            w.write_record([
                r.identity_id.clone(),
                serde_json::to_string(&r.params).expect("params serialize"),
                part(&r.lhs, "re"),
                part(&r.lhs, "im"),
                part(&r.rhs, "re"),
                part(&r.rhs, "im"),
                opt(r.abs_residual.map(|v| v.to_string())),
                opt(r.rel_residual.map(|v| v.to_string())),
                r.expected_max_rel_residual.to_string(),
                opt(r.truncation_order.map(|v| v.to_string())),
                opt(r.converged.map(|v| v.to_string())),
                status.as_str().unwrap_or_default().to_string(),
                r.wall_time_s.to_string(),
                opt(r.message.clone()),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> SuiteConfig {
        SuiteConfig::from_json(text).unwrap()
    }

    #[test]
    fn sampled_entries_reproduce() {
        let config = cfg(r#"{"seed": 3, "entries": [{"identity_id": "prop1_exponential", "params": {"k": 2}, "samples": 2}]}"#);
        let report = run_suite(&config, &SuiteOptions::default()).unwrap();
        assert_eq!(report.entries.len(), 2);
        assert_eq!(report.summary.passed, 2);
        assert_eq!(report.entries[0].params.point("x").unwrap().dim(), 2);
        let again = run_suite(&SuiteConfig::from_json(&report.to_json()).unwrap(), &SuiteOptions::default()).unwrap();
        for (a, b) in report.entries.iter().zip(&again.entries) {
            assert_eq!((&a.params, &a.lhs, &a.rhs), (&b.params, &b.lhs, &b.rhs));
        }
    }

    #[test]
    fn validation_happens_before_evaluation() {
        let config = cfg(r#"{"entries": [
            {"identity_id": "cosine_beta", "params": {"alpha": 1, "beta": 1}},
            {"identity_id": "diagonal_gf", "params": {"beta": 1.5, "x": [0.5, 1.0], "u": 0.3}}]}"#);
        let err = run_suite(&config, &SuiteOptions::default()).unwrap_err();
        assert!(matches!(err, SuiteError::Entry { index: 1, source: Error::Domain(_), .. }));
        assert!(SuiteConfig::from_json(r#"{"entries": [{"identity_id": "cosine_beta", "typo": 1}]}"#)
            .map(|c| validate_suite(&c, &SuiteOptions::default()))
            .unwrap()
            .is_err());
    }

    #[test]
    fn thresholds_and_skips() {
        let config = cfg(r#"{"entries": [
            {"identity_id": "cosine_beta", "params": {"alpha": 1, "beta": 1}, "expected_max_rel_residual": 1e-30},
            {"identity_id": "product_formula", "params": {"m": 1, "n": 1, "alpha": {"re": 0.5, "im": 0.1}, "beta": 0.5, "x": 0.3, "y": 0.4}}]}"#);
        let report = run_suite(&config, &SuiteOptions::default()).unwrap();
        assert_eq!(report.entries[1].status, Status::Skip);
        assert_eq!(report.summary.skipped, 1);
        let empty = run_suite(&SuiteConfig::default(), &SuiteOptions::default()).unwrap();
        assert_eq!(empty.summary, Summary::default());
        let mut buf = Vec::new();
        report.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 3);
    }
}
