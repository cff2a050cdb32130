//! Seeded Monte Carlo comparison of the estimators.
//!
//! One trial draws a measurement matrix (unless it is fixed for the whole
//! experiment), one fresh test pair and a fresh training set, fits every
//! requested estimator on the training set and records its squared error on
//! the test pair. All draws of trial `k` come from stream `k` of the master
//! seed and are made in that order, so:
//!
//! * results do not depend on how trials are scheduled across threads;
//! * every sweep point of a given trial sees the same `H`, test pair and
//!   underlying normals (common random numbers), which makes neighbouring
//!   points of a curve directly comparable.

use std::fmt::Write as _;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{
    discriminative_estimator, discriminative_highsnr, fit_ml_from_moments, generative_estimator, generative_highsnr,
    oracle_lmmse, AffineEstimator, FittedModel, KnownStatistics,
};
use crate::linalg::{GainForm, CONDITION_WARNING};
use crate::moments::compute_moments;
use crate::synth::{random_h, sample_pairs, GaussianPrior, Nonlinearity, Seed, TrueModel};

/// Column order of [`MseReport::to_csv`].
pub const CSV_HEADER: &str = "sweep_name,sweep_value,estimator,mean_mse,std_err,trials_ok,trials_failed";

/// The swept quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sweep {
    /// SNR = 1/σ² over `snr_grid`, with `nt_grid` holding the single n_t.
    Snr,
    /// n_t over `nt_grid`, with `snr_grid` holding the single SNR.
    #[serde(rename = "n_t", alias = "nt")]
    Nt,
}

impl Sweep {
    pub fn name(self) -> &'static str {
        match self {
            Sweep::Snr => "snr",
            Sweep::Nt => "n_t",
        }
    }
}

/// Whether the measurement matrix is redrawn for every trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HMode {
    PerTrial,
    FixedOnce,
}

/// The prior handed to a generative estimator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PriorMode {
    TruePrior,
    /// `C_yy` replaced by the identity (mean kept). Data are still generated
    /// with the true prior.
    IdentityMismatch,
}

/// Estimators a trial can evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimatorKind {
    Oracle,
    Generative,
    GenerativeMismatch,
    Discriminative,
    GenerativeHighsnr,
    DiscriminativeHighsnr,
}

impl EstimatorKind {
    pub const ALL: [EstimatorKind; 6] = [
        EstimatorKind::Oracle,
        EstimatorKind::Generative,
        EstimatorKind::GenerativeMismatch,
        EstimatorKind::Discriminative,
        EstimatorKind::GenerativeHighsnr,
        EstimatorKind::DiscriminativeHighsnr,
    ];

    pub fn label(self) -> &'static str {
        match self {
            EstimatorKind::Oracle => "oracle",
            EstimatorKind::Generative => "generative",
            EstimatorKind::GenerativeMismatch => "generative_mismatch",
            EstimatorKind::Discriminative => "discriminative",
            EstimatorKind::GenerativeHighsnr => "generative_highsnr",
            EstimatorKind::DiscriminativeHighsnr => "discriminative_highsnr",
        }
    }

    fn prior_mode(self) -> PriorMode {
        match self {
            EstimatorKind::GenerativeMismatch => PriorMode::IdentityMismatch,
            _ => PriorMode::TruePrior,
        }
    }
}

/// `10^(k/2)` for `k = -4..=8`: -20 dB to 40 dB in 5 dB steps.
pub fn default_snr_grid() -> Vec<f64> {
    (-4..=8).map(|k| 10f64.powf(k as f64 / 2.0)).collect()
}

pub fn default_nt_grid() -> Vec<usize> {
    vec![40, 60, 100, 200, 500, 1000, 5000]
}

/// Full description of a Monte Carlo experiment.
///
/// Every field has a default, so a config file only lists what it changes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n_x: usize,
    pub n_y: usize,
    pub sweep: Sweep,
    pub snr_grid: Vec<f64>,
    pub nt_grid: Vec<usize>,
    pub mc_trials: usize,
    pub seed: Seed,
    pub h_mode: HMode,
    pub nonlinearity: Nonlinearity,
    /// Every entry of the true noise mean.
    pub noise_mean: f64,
    pub estimators: Vec<EstimatorKind>,
    pub gain_form: GainForm,
    pub ridge: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            n_x: 28,
            n_y: 30,
            sweep: Sweep::Snr,
            snr_grid: default_snr_grid(),
            nt_grid: vec![100],
            mc_trials: 10_000,
            seed: Seed(20_230_901),
            h_mode: HMode::PerTrial,
            nonlinearity: Nonlinearity::Linear,
            noise_mean: 0.0,
            estimators: vec![
                EstimatorKind::Oracle,
                EstimatorKind::Generative,
                EstimatorKind::GenerativeMismatch,
                EstimatorKind::Discriminative,
            ],
            gain_form: GainForm::Auto,
            ridge: 0.0,
        }
    }
}

impl ExperimentConfig {
    /// Every violated constraint, or `Ok` if the config is runnable.
    pub fn validate(&self) -> std::result::Result<(), Vec<String>> {
        let mut problems = Vec::new();
        if self.n_x == 0 {
            problems.push("n_x must be ≥ 1".to_string());
        }
        if self.n_y == 0 {
            problems.push("n_y must be ≥ 1".to_string());
        }
        if self.mc_trials == 0 {
            problems.push("mc_trials must be ≥ 1".to_string());
        }
        if self.snr_grid.is_empty() {
            problems.push("snr_grid must not be empty".to_string());
        }
        if let Some(bad) = self.snr_grid.iter().find(|s| !(**s > 0.0 && s.is_finite())) {
            problems.push(format!("snr_grid entries must be positive and finite (got {bad})"));
        }
        if self.nt_grid.is_empty() {
            problems.push("nt_grid must not be empty".to_string());
        }
        if self.nt_grid.contains(&0) {
            problems.push("nt_grid entries must be ≥ 1".to_string());
        }
        match self.sweep {
            Sweep::Snr if self.nt_grid.len() > 1 => {
                problems.push("nt_grid must have exactly one entry for an snr sweep".to_string())
            }
            Sweep::Nt if self.snr_grid.len() > 1 => {
                problems.push("snr_grid must have exactly one entry for an n_t sweep".to_string())
            }
            _ => {}
        }
        if !(self.ridge >= 0.0 && self.ridge.is_finite()) {
            problems.push(format!("ridge must be finite and ≥ 0 (got {})", self.ridge));
        }
        if !self.noise_mean.is_finite() {
            problems.push("noise_mean must be finite".to_string());
        }
        if self.estimators.is_empty() {
            problems.push("estimators must not be empty".to_string());
        }
        for (i, kind) in self.estimators.iter().enumerate() {
            if self.estimators[..i].contains(kind) {
                problems.push(format!("estimators lists {} twice", kind.label()));
            }
        }
        if let Err(e) = self.nonlinearity.validate() {
            problems.push(format!("nonlinearity: {e}"));
        }
        if !self.nonlinearity.is_linear() && self.estimators.contains(&EstimatorKind::Oracle) {
            problems.push("estimators: oracle requires the linear nonlinearity".to_string());
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(problems)
        }
    }

    /// Sweep points `(snr, n_t)` in grid order.
    pub fn points(&self) -> Vec<SweepPoint> {
        match self.sweep {
            Sweep::Snr => self
                .snr_grid
                .iter()
                .map(|&snr| SweepPoint {
                    snr,
                    n_t: self.nt_grid[0],
                })
                .collect(),
            Sweep::Nt => self
                .nt_grid
                .iter()
                .map(|&n_t| SweepPoint {
                    snr: self.snr_grid[0],
                    n_t,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub snr: f64,
    pub n_t: usize,
}

impl SweepPoint {
    pub fn sigma2(&self) -> f64 {
        1.0 / self.snr
    }

    fn value(&self, sweep: Sweep) -> f64 {
        match sweep {
            Sweep::Snr => self.snr,
            Sweep::Nt => self.n_t as f64,
        }
    }
}

/// Outcome of one estimator in one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub estimator: EstimatorKind,
    /// Squared test error, or why the estimator could not be built.
    pub squared_error: std::result::Result<f64, Error>,
    pub condition: f64,
}

/// A validated config plus the quantities shared by all trials.
#[derive(Debug, Clone)]
pub struct Experiment {
    cfg: ExperimentConfig,
    prior: GaussianPrior,
    mismatched: GaussianPrior,
    fixed_h: Option<DMatrix<f64>>,
}

impl Experiment {
    pub fn new(cfg: ExperimentConfig) -> Result<Self> {
        cfg.validate().map_err(|p| Error::invalid(p.join("; ")))?;
        let prior = GaussianPrior::exponential_decay(cfg.n_y)?;
        let mismatched = prior.with_identity_covariance();
        let fixed_h = match cfg.h_mode {
            HMode::FixedOnce => Some(random_h(cfg.n_x, cfg.n_y, &mut cfg.seed.stream(Seed::SHARED_STREAM))?),
            HMode::PerTrial => None,
        };
        Ok(Experiment {
            cfg,
            prior,
            mismatched,
            fixed_h,
        })
    }

    /// Like [`Experiment::new`] but with an explicit target prior and,
    /// optionally, a measurement matrix held fixed across all trials.
    pub fn with_model(cfg: ExperimentConfig, prior: GaussianPrior, h: Option<DMatrix<f64>>) -> Result<Self> {
        cfg.validate().map_err(|p| Error::invalid(p.join("; ")))?;
        if prior.dim() != cfg.n_y {
            return Err(Error::invalid(format!(
                "prior has dimension {}, n_y is {}",
                prior.dim(),
                cfg.n_y
            )));
        }
        if let Some(h) = &h {
            if h.shape() != (cfg.n_x, cfg.n_y) {
                return Err(Error::invalid(format!(
                    "H is {}x{}, expected {}x{}",
                    h.nrows(),
                    h.ncols(),
                    cfg.n_x,
                    cfg.n_y
                )));
            }
        }
        let mut exp = Experiment::new(cfg)?;
        exp.mismatched = prior.with_identity_covariance();
        exp.prior = prior;
        if h.is_some() {
            exp.fixed_h = h;
        }
        Ok(exp)
    }

    pub fn config(&self) -> &ExperimentConfig {
        &self.cfg
    }

    pub fn prior(&self) -> &GaussianPrior {
        &self.prior
    }

    /// Run trial `trial` at `point`.
    pub fn run_trial(&self, point: SweepPoint, trial: u64) -> Result<Vec<TrialRecord>> {
        let cfg = &self.cfg;
        let mut rng = cfg.seed.trial(trial);
        let h = match &self.fixed_h {
            Some(h) => h.clone(),
            None => random_h(cfg.n_x, cfg.n_y, &mut rng)?,
        };
        let sigma2 = point.sigma2();
        let model = TrueModel::linear(h, nalgebra::DVector::from_element(cfg.n_x, cfg.noise_mean), sigma2)?
            .with_nonlinearity(cfg.nonlinearity)?;
        let test = sample_pairs(&self.prior, &model, 1, &mut rng)?;
        let (x_star, y_star) = (test.x(0), test.y(0));
        let train = sample_pairs(&self.prior, &model, point.n_t, &mut rng)?;
        let moments = compute_moments(&train)?;

        let mut fit: Option<Result<FittedModel>> = None;
        let mut records = Vec::with_capacity(cfg.estimators.len());
        for &kind in &cfg.estimators {
            let built: Result<AffineEstimator> = match kind {
                EstimatorKind::Oracle => oracle_lmmse(&self.prior, &model),
                EstimatorKind::Generative | EstimatorKind::GenerativeMismatch => {
                    let fit = fit.get_or_insert_with(|| fit_ml_from_moments(&moments, cfg.ridge));
                    let prior = match kind.prior_mode() {
                        PriorMode::TruePrior => &self.prior,
                        PriorMode::IdentityMismatch => &self.mismatched,
                    };
                    fit.clone().and_then(|fit| {
                        let known = KnownStatistics::new(prior.clone(), sigma2)?;
                        generative_estimator(&fit, &known, &moments, cfg.gain_form)
                    })
                }
                EstimatorKind::Discriminative => discriminative_estimator(&moments, cfg.ridge),
                EstimatorKind::GenerativeHighsnr => generative_highsnr(&self.prior, &model.h, &moments),
                EstimatorKind::DiscriminativeHighsnr => discriminative_highsnr(&model.h, &moments),
            };
            let (squared_error, condition) = match built {
                Ok(est) => {
                    let err = est.squared_error(&x_star, &y_star).and_then(|e| {
                        if e.is_finite() {
                            Ok(e)
                        } else {
                            Err(Error::invalid("non-finite squared error"))
                        }
                    });
                    (err, est.condition)
                }
                Err(e) => {
                    let condition = match &e {
                        Error::Singular { condition, .. } => *condition,
                        _ => f64::NAN,
                    };
                    (Err(e), condition)
                }
            };
            records.push(TrialRecord {
                estimator: kind,
                squared_error,
                condition,
            });
        }
        Ok(records)
    }

    /// Run every trial at every sweep point and aggregate.
    pub fn run(&self) -> Result<MseReport> {
        let cfg = &self.cfg;
        let points = cfg.points();
        let trials = cfg.mc_trials;
        let outcomes: Vec<Vec<TrialRecord>> = (0..points.len() * trials)
            .into_par_iter()
            .map(|cell| self.run_trial(points[cell / trials], (cell % trials) as u64))
            .collect::<Result<_>>()?;

        let mut rows = Vec::new();
        let mut warnings = Vec::new();
        for (p, point) in points.iter().enumerate() {
            let block = &outcomes[p * trials..(p + 1) * trials];
            for (e, &kind) in cfg.estimators.iter().enumerate() {
                let mut errors = Vec::with_capacity(trials);
                let mut failed = 0;
                let mut first_failure = None;
                let mut ill_conditioned = 0;
                let mut max_condition = 0.0_f64;
                for trial in block {
                    let rec = &trial[e];
                    if rec.condition.is_finite() {
                        max_condition = max_condition.max(rec.condition);
                    }
                    if rec.condition > CONDITION_WARNING {
                        ill_conditioned += 1;
                    }
                    match &rec.squared_error {
                        Ok(v) => errors.push(*v),
                        Err(err) => {
                            failed += 1;
                            first_failure.get_or_insert_with(|| err.to_string());
                        }
                    }
                }
                let stats = compute_mse(&errors);
                let value = point.value(cfg.sweep);
                rows.push(MseRow {
                    sweep_value: value,
                    estimator: kind,
                    mean_mse: stats.map(|s| s.0),
                    std_err: stats.map(|s| s.1),
                    trials_ok: errors.len(),
                    trials_failed: failed,
                });
                if failed > 0 || ill_conditioned > 0 {
                    warnings.push(CellWarning {
                        sweep_value: value,
                        estimator: kind,
                        ill_conditioned,
                        max_condition,
                        failed,
                        first_failure,
                    });
                }
            }
        }
        Ok(MseReport {
            sweep: cfg.sweep,
            rows,
            metadata: ReportMetadata {
                config: cfg.clone(),
                warnings,
            },
        })
    }
}

/// Mean and standard error (sample standard deviation over `√count`).
///
/// `None` for an empty list; a single value has standard error 0.
pub fn compute_mse(errors: &[f64]) -> Option<(f64, f64)> {
    if errors.is_empty() {
        return None;
    }
    let n = errors.len() as f64;
    let mean = errors.iter().sum::<f64>() / n;
    if errors.len() == 1 {
        return Some((mean, 0.0));
    }
    let var = errors.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Some((mean, (var / n).sqrt()))
}

/// Run one trial of `cfg`.
pub fn run_trial(cfg: &ExperimentConfig, point: SweepPoint, trial: u64) -> Result<Vec<TrialRecord>> {
    Experiment::new(cfg.clone())?.run_trial(point, trial)
}

/// MSE versus SNR at a single training-set size.
pub fn sweep_snr(cfg: &ExperimentConfig) -> Result<MseReport> {
    if cfg.nt_grid.len() != 1 {
        return Err(Error::invalid("an snr sweep needs exactly one nt_grid entry"));
    }
    Experiment::new(ExperimentConfig {
        sweep: Sweep::Snr,
        ..cfg.clone()
    })?
    .run()
}

/// MSE versus training-set size at a single SNR.
pub fn sweep_nt(cfg: &ExperimentConfig) -> Result<MseReport> {
    if cfg.snr_grid.len() != 1 {
        return Err(Error::invalid("an n_t sweep needs exactly one snr_grid entry"));
    }
    Experiment::new(ExperimentConfig {
        sweep: Sweep::Nt,
        ..cfg.clone()
    })?
    .run()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MseRow {
    pub sweep_value: f64,
    pub estimator: EstimatorKind,
    /// Absent when every trial of the cell failed.
    pub mean_mse: Option<f64>,
    pub std_err: Option<f64>,
    pub trials_ok: usize,
    pub trials_failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellWarning {
    pub sweep_value: f64,
    pub estimator: EstimatorKind,
    /// Trials whose condition estimate exceeded the warning threshold.
    pub ill_conditioned: usize,
    pub max_condition: f64,
    pub failed: usize,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportMetadata {
    pub config: ExperimentConfig,
    pub warnings: Vec<CellWarning>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MseReport {
    pub sweep: Sweep,
    pub rows: Vec<MseRow>,
    pub metadata: ReportMetadata,
}

impl MseReport {
    pub fn row(&self, sweep_value: f64, estimator: EstimatorKind) -> Option<&MseRow> {
        self.rows
            .iter()
            .find(|r| r.sweep_value == sweep_value && r.estimator == estimator)
    }

    /// Rows of one estimator in sweep order.
    pub fn curve(&self, estimator: EstimatorKind) -> Vec<&MseRow> {
        self.rows.iter().filter(|r| r.estimator == estimator).collect()
    }

    /// The results table. Floats use Rust's shortest round-trip formatting,
    /// so identical reports serialise to identical bytes.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.rows.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        let opt = |v: Option<f64>| v.map(|v| format!("{v:e}")).unwrap_or_default();
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                self.sweep.name(),
                r.sweep_value,
                r.estimator.label(),
                opt(r.mean_mse),
                opt(r.std_err),
                r.trials_ok,
                r.trials_failed
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(sweep: Sweep) -> ExperimentConfig {
        ExperimentConfig {
            n_x: 4,
            n_y: 5,
            sweep,
            snr_grid: if sweep == Sweep::Snr {
                vec![1.0, 100.0]
            } else {
                vec![10.0]
            },
            nt_grid: if sweep == Sweep::Nt { vec![6, 20, 50] } else { vec![30] },
            mc_trials: 40,
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn mse_statistics() {
        assert_eq!(compute_mse(&[1.0, 1.0, 1.0]), Some((1.0, 0.0)));
        assert_eq!(compute_mse(&[0.0, 2.0]), Some((1.0, 1.0)));
        assert_eq!(compute_mse(&[]), None);
    }

    #[test]
    fn default_grids() {
        let g = default_snr_grid();
        assert_eq!(g.len(), 13);
        assert!((g[0] - 0.01).abs() < 1e-18);
        assert!((g[12] - 1e4).abs() < 1e-9);
        assert_eq!(default_nt_grid(), vec![40, 60, 100, 200, 500, 1000, 5000]);
    }

    #[test]
    fn validation_lists_every_problem() {
        let cfg = ExperimentConfig {
            mc_trials: 0,
            ridge: -1.0,
            nt_grid: vec![10, 20],
            ..ExperimentConfig::default()
        };
        let problems = cfg.validate().unwrap_err();
        assert!(problems.iter().any(|p| p == "mc_trials must be ≥ 1"));
        assert!(problems.iter().any(|p| p.starts_with("ridge")));
        assert!(problems.iter().any(|p| p.starts_with("nt_grid")));
        assert_eq!(problems.len(), 3);
        assert!(ExperimentConfig::default().validate().is_ok());
    }

    #[test]
    fn oracle_needs_linear_model() {
        let cfg = ExperimentConfig {
            nonlinearity: Nonlinearity::Tanh { scale: 1.0 },
            ..ExperimentConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn trial_is_deterministic() {
        let exp = Experiment::new(small(Sweep::Snr)).unwrap();
        let point = SweepPoint { snr: 10.0, n_t: 30 };
        assert_eq!(exp.run_trial(point, 7).unwrap(), exp.run_trial(point, 7).unwrap());
        assert_ne!(exp.run_trial(point, 7).unwrap(), exp.run_trial(point, 8).unwrap());
    }

    #[test]
    fn noiseless_square_trial_has_zero_error() {
        let cfg = ExperimentConfig {
            n_x: 4,
            n_y: 4,
            estimators: EstimatorKind::ALL.to_vec(),
            ..ExperimentConfig::default()
        };
        let exp = Experiment::new(cfg).unwrap();
        let point = SweepPoint { snr: 1e14, n_t: 50 };
        for rec in exp.run_trial(point, 0).unwrap() {
            if rec.estimator == EstimatorKind::GenerativeMismatch {
                continue;
            }
            let e = rec.squared_error.unwrap();
            assert!(e < 1e-6, "{:?}: {e}", rec.estimator);
        }
    }

    #[test]
    fn failures_are_recorded_not_fatal() {
        let mut cfg = small(Sweep::Nt);
        cfg.nt_grid = vec![3, 30];
        let report = Experiment::new(cfg).unwrap().run().unwrap();
        let row = report.row(3.0, EstimatorKind::Discriminative).unwrap();
        assert_eq!(row.trials_ok, 0);
        assert_eq!(row.trials_failed, 40);
        assert_eq!(row.mean_mse, None);
        assert!(report
            .metadata
            .warnings
            .iter()
            .any(|w| w.estimator == EstimatorKind::Discriminative && w.failed == 40));
        let ok = report.row(30.0, EstimatorKind::Discriminative).unwrap();
        assert_eq!(ok.trials_ok, 40);
        for r in &report.rows {
            assert_eq!(r.trials_ok + r.trials_failed, 40);
        }
    }

    #[test]
    fn csv_shape() {
        let report = sweep_snr(&small(Sweep::Snr)).unwrap();
        let csv = report.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(first.len(), 7);
        assert_eq!(first[0], "snr");
        assert_eq!(first[1], "1");
        assert_eq!(first[2], "oracle");
        assert_eq!(csv.lines().count(), 1 + 2 * 4);
    }

    #[test]
    fn sweep_arity_checked() {
        assert!(sweep_nt(&small(Sweep::Snr)).is_err());
        assert!(sweep_snr(&small(Sweep::Nt)).is_err());
    }

    #[test]
    fn config_round_trips_through_json() {
        let cfg = small(Sweep::Nt);
        let text = serde_json::to_string(&cfg).unwrap();
        let back: ExperimentConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(cfg, back);
        let partial: ExperimentConfig = serde_json::from_str(r#"{"mc_trials": 5}"#).unwrap();
        assert_eq!(partial.n_x, 28);
        assert_eq!(partial.mc_trials, 5);
    }
}
