//! Job configs and the check / h1 / decompose runners behind the command line.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::cohomology::{decompose_report, reports_for_labels, CohomologyError, CohomologyReport, DecompositionReport};
use crate::lie::{FormContext, LieError, ModuleLabel};
use crate::linalg::{LinalgError, LinalgScalar, RankOptions, DEFAULT_GAP_THRESHOLD};
use crate::reps::{invariant_form, AnyRep, BuildContext, BuiltRep, Registry, RepError};
use crate::scalars::{NumberField, ScalarError, ScalarMode};
use crate::words::{Presentation, PresentationDiagnostics, PresentationSpec, WordError};

#[derive(Debug, Error)]
pub enum JobError {
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

impl JobError {
    /// Failures of an internal consistency check, as opposed to bad input.
    pub fn is_internal(&self) -> bool {
        match self {
            JobError::Cohomology(e) => e.is_internal(),
            JobError::Rep(RepError::Linalg(LinalgError::Internal(_))) | JobError::Lie(LieError::Linalg(LinalgError::Internal(_))) => {
                true
            }
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeName {
    Exact,
    Rational,
    Float,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalarSpec {
    pub mode: ModeName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_poly: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<PresentationSpec>,
    pub scalars: ScalarSpec,
    pub rep: Value,
    #[serde(default)]
    pub labels: Vec<ModuleLabel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap_threshold: Option<f64>,
}

/// Command-line values that take precedence over the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub mode: Option<ModeName>,
    pub tolerance: Option<f64>,
    pub labels: Option<Vec<ModuleLabel>>,
}

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

impl JobConfig {
    pub fn from_json(text: &str) -> Result<Self, JobError> {
        serde_json::from_str(text).map_err(|e| JobError::Config(e.to_string()))
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(m) = o.mode {
            self.scalars.mode = m;
        }
        if let Some(t) = o.tolerance {
            self.scalars.tolerance = Some(t);
        }
        if let Some(l) = &o.labels {
            self.labels = l.clone();
        }
    }

    pub fn scalar_mode(&self) -> Result<ScalarMode, JobError> {
        let s = &self.scalars;
        match s.mode {
            ModeName::Float => ScalarMode::float(s.tolerance.unwrap_or(DEFAULT_TOLERANCE)).map_err(JobError::Config),
            ModeName::Rational => Ok(ScalarMode::Rational),
            ModeName::Exact => match (&s.min_poly, &s.interval) {
                (Some(p), Some(i)) => {
                    let spec = crate::scalars::FieldSpec { min_poly: p.clone(), interval: i.clone() };
                    Ok(ScalarMode::Exact(NumberField::from_spec(&spec)?))
                }
                (None, None) => Ok(ScalarMode::Exact(NumberField::rationals())),
                _ => Err(JobError::Config("exact mode needs both min_poly and interval, or neither".into())),
            },
        }
    }

    pub fn rank_options(&self) -> Result<RankOptions, JobError> {
        let tolerance = self.scalars.tolerance.unwrap_or(DEFAULT_TOLERANCE);
        if !(tolerance > 0.0 && tolerance < 1.0) {
            return Err(JobError::Config(format!("tolerance must lie in (0, 1), got {tolerance}")));
        }
        let gap_threshold = self.gap_threshold.unwrap_or(DEFAULT_GAP_THRESHOLD);
        if gap_threshold.is_nan() || gap_threshold < 1.0 {
            return Err(JobError::Config(format!("gap_threshold must be at least 1, got {gap_threshold}")));
        }
        Ok(RankOptions { tolerance, gap_threshold })
    }

    pub fn labels_or_default(&self) -> Vec<ModuleLabel> {
        if self.labels.is_empty() {
            vec![ModuleLabel::So]
        } else {
            self.labels.clone()
        }
    }
}

/// A built representation together with the options it was built with.
pub struct Prepared {
    pub rep: AnyRep,
    pub opts: RankOptions,
    pub labels: Vec<ModuleLabel>,
}

pub fn prepare(config: &JobConfig, registry: &Registry) -> Result<Prepared, JobError> {
    let presentation = config.presentation.as_ref().map(Presentation::from_spec).transpose()?;
    let opts = config.rank_options()?;
    let mode = config.scalar_mode()?;
    let ctx = BuildContext { mode, opts, presentation };
    let rep = registry.build(&config.rep, &ctx)?;
    Ok(Prepared { rep, opts, labels: config.labels_or_default() })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub presentation: PresentationDiagnostics,
    pub size: usize,
    pub mode: String,
    pub relators_checked: bool,
    pub max_deviation: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form_signature: Option<(usize, usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyperbolic: Option<bool>,
    #[serde(default)]
    pub notes: Vec<String>,
}

fn form_context<S: LinalgScalar>(b: &BuiltRep<S>, opts: &RankOptions) -> Result<FormContext<S>, JobError> {
    let q = match &b.form {
        Some(q) => q.clone(),
        None => invariant_form(&b.rep, opts)?,
    };
    Ok(FormContext::new(q, *opts)?)
}

fn check_built<S: LinalgScalar>(b: &BuiltRep<S>, opts: &RankOptions, mode: &str) -> Result<CheckReport, JobError> {
    let mut notes = b.notes.clone();
    let (form_signature, hyperbolic) = match form_context(b, opts) {
        Ok(f) => (Some(f.signature()), Some(f.is_hyperbolic())),
        Err(e) => {
            notes.push(format!("no invariant form: {e}"));
            (None, None)
        }
    };
    Ok(CheckReport {
        presentation: b.rep.presentation().validate()?,
        size: b.rep.size(),
        mode: mode.to_string(),
        relators_checked: b.rep.is_checked(),
        max_deviation: b.rep.max_deviation(),
        form_signature,
        hyperbolic,
        notes,
    })
}

pub fn run_check(p: &Prepared) -> Result<CheckReport, JobError> {
    match &p.rep {
        AnyRep::Exact(b) => check_built(b, &p.opts, "exact"),
        AnyRep::Float(b) => check_built(b, &p.opts, "float"),
    }
}

fn h1_built<S: LinalgScalar>(b: &BuiltRep<S>, labels: &[ModuleLabel], opts: &RankOptions) -> Result<Vec<CohomologyReport>, JobError> {
    let form = if labels.iter().any(|l| l.needs_form()) { Some(form_context(b, opts)?) } else { None };
    let mut out = Vec::with_capacity(labels.len());
    for r in reports_for_labels(&b.rep, form.as_ref(), labels, opts) {
        let mut r = r?;
        r.notes.extend(b.notes.iter().cloned());
        out.push(r);
    }
    Ok(out)
}

pub fn run_h1(p: &Prepared) -> Result<Vec<CohomologyReport>, JobError> {
    match &p.rep {
        AnyRep::Exact(b) => h1_built(b, &p.labels, &p.opts),
        AnyRep::Float(b) => h1_built(b, &p.labels, &p.opts),
    }
}

fn decompose_built<S: LinalgScalar>(b: &BuiltRep<S>, opts: &RankOptions) -> Result<DecompositionReport, JobError> {
    let form = form_context(b, opts)?;
    let mut report = decompose_report(&b.rep, &form, opts)?;
    report.notes.extend(b.notes.iter().cloned());
    Ok(report)
}

pub fn run_decompose(p: &Prepared) -> Result<DecompositionReport, JobError> {
    match &p.rep {
        AnyRep::Exact(b) => decompose_built(b, &p.opts),
        AnyRep::Float(b) => decompose_built(b, &p.opts),
    }
}

/// Plain-text table of H¹ reports.
pub fn format_table(reports: &[CohomologyReport]) -> String {
    let mut out = format!(
        "{:<8} {:>4} {:>4} {:>4} {:>6} {:>6} {:>6} {:>6} {:>6} {:>10}\n",
        "label", "k", "m", "d", "dimZ1", "dimB1", "dimH0", "dimH1", "mode", "certified"
    );
    for r in reports {
        let mode = match r.mode {
            crate::cohomology::ReportMode::Exact => "exact",
            crate::cohomology::ReportMode::Float => "float",
        };
        out.push_str(&format!(
            "{:<8} {:>4} {:>4} {:>4} {:>6} {:>6} {:>6} {:>6} {:>6} {:>10}\n",
            r.label.as_str(),
            r.k,
            r.m,
            r.d,
            r.dim_z1,
            r.dim_b1,
            r.dim_h0,
            r.dim_h1,
            mode,
            r.certified
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TORUS: &str = r#"{
        "presentation": {"generators": ["a", "b"], "relators": ["a b A B"]},
        "scalars": {"mode": "rational"},
        "rep": {"builder": "raw", "matrices": [[["1"]], [["1"]]]},
        "labels": ["trivial"]
    }"#;

    #[test]
    fn torus_config_runs() {
        let cfg = JobConfig::from_json(TORUS).unwrap();
        let p = prepare(&cfg, &Registry::default()).unwrap();
        let reports = run_h1(&p).unwrap();
        assert_eq!(reports[0].dim_h1, 2);
        assert!(format_table(&reports).contains("trivial"));
    }

    #[test]
    fn overrides_and_validation() {
        let mut cfg = JobConfig::from_json(TORUS).unwrap();
        cfg.apply(&Overrides { mode: Some(ModeName::Float), tolerance: Some(1e-10), labels: None });
        assert!(matches!(cfg.scalar_mode().unwrap(), ScalarMode::Float { .. }));
        assert!(JobConfig::from_json("{not json").is_err());
        assert!(JobConfig::from_json(r#"{"scalars": {"mode": "exact"}, "rep": {}, "extra": 1}"#).is_err());
        let mut bad = JobConfig::from_json(TORUS).unwrap();
        bad.scalars.tolerance = Some(2.0);
        assert!(bad.rank_options().is_err());
    }

    #[test]
    fn config_round_trip() {
        let cfg = JobConfig::from_json(TORUS).unwrap();
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(JobConfig::from_json(&text).unwrap(), cfg);
    }
}
