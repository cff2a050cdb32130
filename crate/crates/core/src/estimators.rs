//! Affine estimators of `y` from `x`.
//!
//! Two learned rules are built from a training set:
//!
//! * **generative**: fit the unknown `H` and noise mean by maximum likelihood,
//!   then take the LMMSE estimator of the fitted jointly Gaussian model using
//!   the known prior and noise variance;
//! * **discriminative**: minimise the empirical squared error over all affine
//!   maps `A x + b`, which is the sample-LMMSE estimator.
//!
//! The remaining constructors are closed forms used as references: the oracle
//! LMMSE with the true model, the large-sample limits of both learned rules,
//! and their noise-free (high-SNR) limits.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{gain_form_a, posterior_gain, spd_solve, GainForm};
use crate::moments::{compute_moments, Dataset, SampleMoments};
use crate::synth::{GaussianPrior, TrueModel};

/// Which construction produced an [`AffineEstimator`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Generative,
    Discriminative,
    OracleLmmse,
    GenerativeAsymptote,
    DiscriminativeAsymptote,
    GenerativeHighSnr,
    DiscriminativeHighSnr,
}

/// Maximum-likelihood estimates of the measurement matrix and noise mean.
#[derive(Debug, Clone, PartialEq)]
pub struct FittedModel {
    pub h_hat: DMatrix<f64>,
    pub mu_hat: DVector<f64>,
    /// Condition estimate of the (ridged) `Ĉ_yy` that was inverted.
    pub condition: f64,
}

/// The inference rule `ŷ = A x + b`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineEstimator {
    pub a: DMatrix<f64>,
    pub b: DVector<f64>,
    pub provenance: Provenance,
    /// Worst condition estimate among the matrices inverted to build it.
    pub condition: f64,
}

impl AffineEstimator {
    pub fn new(a: DMatrix<f64>, b: DVector<f64>, provenance: Provenance) -> Result<Self> {
        if a.nrows() != b.len() {
            return Err(Error::invalid(format!(
                "A has {} rows but b has dimension {}",
                a.nrows(),
                b.len()
            )));
        }
        Ok(AffineEstimator {
            a,
            b,
            provenance,
            condition: 1.0,
        })
    }

    fn with_condition(mut self, condition: f64) -> Self {
        self.condition = condition;
        self
    }

    pub fn n_x(&self) -> usize {
        self.a.ncols()
    }

    pub fn n_y(&self) -> usize {
        self.a.nrows()
    }

    /// `A x + b`.
    pub fn estimate(&self, x: &DVector<f64>) -> Result<DVector<f64>> {
        if x.len() != self.n_x() {
            return Err(Error::invalid(format!(
                "estimator expects {}-dimensional input, got {}",
                self.n_x(),
                x.len()
            )));
        }
        Ok(&self.a * x + &self.b)
    }

    /// `‖y − (A x + b)‖²`.
    pub fn squared_error(&self, x: &DVector<f64>, y: &DVector<f64>) -> Result<f64> {
        let y_hat = self.estimate(x)?;
        if y.len() != y_hat.len() {
            return Err(Error::invalid(format!(
                "target has dimension {}, estimator produces {}",
                y.len(),
                y_hat.len()
            )));
        }
        Ok((y - y_hat).norm_squared())
    }

    /// Mean squared error over a dataset.
    pub fn empirical_risk(&self, data: &Dataset) -> Result<f64> {
        if data.n_x() != self.n_x() || data.n_y() != self.n_y() {
            return Err(Error::invalid("dataset dimensions do not match the estimator"));
        }
        if data.is_empty() {
            return Err(Error::invalid("empirical risk of an empty dataset"));
        }
        let mut residual = &self.a * data.xs();
        for mut col in residual.column_iter_mut() {
            col += &self.b;
        }
        residual -= data.ys();
        Ok(residual.norm_squared() / data.len() as f64)
    }

    /// `[A | b]` as one matrix.
    pub fn augmented(&self) -> DMatrix<f64> {
        let mut m = self.a.clone().insert_column(self.n_x(), 0.0);
        m.set_column(self.n_x(), &self.b);
        m
    }

    /// Relative Frobenius distance between the augmented maps `[A | b]`.
    pub fn relative_difference(&self, reference: &AffineEstimator) -> f64 {
        crate::linalg::relative_frobenius(&self.augmented(), &reference.augmented())
    }
}

/// What the generative estimator is told: the target prior and the noise variance.
#[derive(Debug, Clone)]
pub struct KnownStatistics {
    pub prior: GaussianPrior,
    pub sigma2: f64,
}

impl KnownStatistics {
    pub fn new(prior: GaussianPrior, sigma2: f64) -> Result<Self> {
        if !(sigma2 > 0.0 && sigma2.is_finite()) {
            return Err(Error::invalid(format!("known sigma2 must be positive, got {sigma2}")));
        }
        Ok(KnownStatistics { prior, sigma2 })
    }
}

/// Population first and second moments of `(x, y)`.
#[derive(Debug, Clone)]
pub struct PopulationMoments {
    pub mu_x: DVector<f64>,
    pub c_yx: DMatrix<f64>,
    pub c_xx: DMatrix<f64>,
}

impl PopulationMoments {
    /// Moments implied by the linear model: `C_xy = H C_yy`,
    /// `C_xx = H C_yy Hᵀ + σ² I`, `μ_x = H μ_y + μ_w`.
    pub fn linear(prior: &GaussianPrior, model: &TrueModel) -> Result<Self> {
        model.validate()?;
        if !model.nonlinearity.is_linear() {
            return Err(Error::invalid("closed-form population moments need the linear model"));
        }
        if model.n_y() != prior.dim() {
            return Err(Error::invalid("H and the prior disagree on the target dimension"));
        }
        let c = prior.covariance();
        let c_yx = c * model.h.transpose();
        let mut c_xx = &model.h * &c_yx;
        for i in 0..c_xx.nrows() {
            c_xx[(i, i)] += model.sigma2;
        }
        Ok(PopulationMoments {
            mu_x: &model.h * prior.mean() + &model.mu_w,
            c_yx,
            c_xx,
        })
    }

    /// Large-sample stand-in: the sample moments of a (big) dataset.
    pub fn from_sample(m: &SampleMoments) -> Self {
        PopulationMoments {
            mu_x: m.x_bar.clone(),
            c_yx: m.c_yx.clone(),
            c_xx: m.c_xx.clone(),
        }
    }
}

fn check_moments_match(m: &SampleMoments, n_x: usize, n_y: usize) -> Result<()> {
    if m.n_x() != n_x || m.n_y() != n_y {
        return Err(Error::invalid(format!(
            "moments are for N_x={}, N_y={} but the model has N_x={n_x}, N_y={n_y}",
            m.n_x(),
            m.n_y()
        )));
    }
    Ok(())
}

/// Maximum-likelihood fit of `H` and the noise mean from a dataset.
pub fn fit_ml(data: &Dataset) -> Result<FittedModel> {
    fit_ml_from_moments(&compute_moments(data)?, 0.0)
}

/// `Ĥ = Ĉ_xy (Ĉ_yy + ridge I)⁻¹`, `μ̂ = x̄ − Ĥ ȳ`.
pub fn fit_ml_from_moments(m: &SampleMoments, ridge: f64) -> Result<FittedModel> {
    // Ĉ_xy Ĉ_yy⁻¹ = (Ĉ_yy⁻¹ Ĉ_yx)ᵀ
    let sol = spd_solve(&m.c_yy, &m.c_yx, ridge).map_err(|e| {
        e.naming(
            "C_yy_hat",
            "targets do not span their space; use more samples or a ridge",
        )
    })?;
    let h_hat = sol.value.transpose();
    let mu_hat = &m.x_bar - &h_hat * &m.y_bar;
    Ok(FittedModel {
        h_hat,
        mu_hat,
        condition: sol.condition,
    })
}

/// LMMSE estimator of the fitted linear model under the known prior:
///
/// `ŷ = μ_y + G (x − x̄ − Ĥ (μ_y − ȳ))`
///
/// where `G` is the posterior gain of `(Ĥ, C_yy, σ²)` computed in `form`.
pub fn generative_estimator(
    fit: &FittedModel,
    known: &KnownStatistics,
    moments: &SampleMoments,
    form: GainForm,
) -> Result<AffineEstimator> {
    let (n_x, n_y) = (fit.h_hat.nrows(), fit.h_hat.ncols());
    if known.prior.dim() != n_y {
        return Err(Error::invalid(format!(
            "prior has dimension {} but the fitted H has {n_y} columns",
            known.prior.dim()
        )));
    }
    check_moments_match(moments, n_x, n_y)?;
    let gain = posterior_gain(&fit.h_hat, known.prior.covariance(), known.sigma2, form)?;
    let mu_y = known.prior.mean();
    let offset = &moments.x_bar + &fit.h_hat * (mu_y - &moments.y_bar);
    let b = mu_y - &gain.value * offset;
    Ok(AffineEstimator::new(gain.value, b, Provenance::Generative)?.with_condition(gain.condition.max(fit.condition)))
}

/// Empirical-risk minimiser over affine maps (the sample-LMMSE estimator):
/// `A = Ĉ_yx (Ĉ_xx + ridge I)⁻¹`, `b = ȳ − A x̄`.
pub fn discriminative_estimator(m: &SampleMoments, ridge: f64) -> Result<AffineEstimator> {
    let sol = spd_solve(&m.c_xx, &m.c_xy(), ridge).map_err(|e| {
        e.naming(
            "C_xx_hat",
            "needs more samples than observation dimensions (n_t > N_x) or a ridge",
        )
    })?;
    let a = sol.value.transpose();
    let b = &m.y_bar - &a * &m.x_bar;
    Ok(AffineEstimator::new(a, b, Provenance::Discriminative)?.with_condition(sol.condition))
}

/// LMMSE estimator with the true linear model; the MMSE estimator in the
/// jointly Gaussian case.
pub fn oracle_lmmse(prior: &GaussianPrior, model: &TrueModel) -> Result<AffineEstimator> {
    model.validate()?;
    if !model.nonlinearity.is_linear() {
        return Err(Error::invalid("the oracle LMMSE is only defined for the linear model"));
    }
    if model.n_y() != prior.dim() {
        return Err(Error::invalid("H and the prior disagree on the target dimension"));
    }
    let gain = gain_form_a(&model.h, prior.covariance(), model.sigma2)?;
    let mu_x = &model.h * prior.mean() + &model.mu_w;
    let b = prior.mean() - &gain.value * mu_x;
    Ok(AffineEstimator::new(gain.value, b, Provenance::OracleLmmse)?.with_condition(gain.condition))
}

/// LMMSE estimator from population moments, `C_yx C_xx⁻¹ (x − μ_x) + μ_y`:
/// the large-sample limit of the discriminative estimator.
pub fn population_lmmse(prior: &GaussianPrior, pop: &PopulationMoments) -> Result<AffineEstimator> {
    check_population(prior, pop)?;
    let sol = spd_solve(&pop.c_xx, &pop.c_yx.transpose(), 0.0)
        .map_err(|e| e.naming("C_xx", "observation covariance is singular"))?;
    let a = sol.value.transpose();
    let b = prior.mean() - &a * &pop.mu_x;
    Ok(AffineEstimator::new(a, b, Provenance::DiscriminativeAsymptote)?.with_condition(sol.condition))
}

fn check_population(prior: &GaussianPrior, pop: &PopulationMoments) -> Result<()> {
    let (n_y, n_x) = (pop.c_yx.nrows(), pop.c_yx.ncols());
    if prior.dim() != n_y || pop.mu_x.len() != n_x || pop.c_xx.shape() != (n_x, n_x) {
        return Err(Error::invalid("population moments have inconsistent dimensions"));
    }
    Ok(())
}

/// Large-sample limit of the generative estimator:
///
/// `ŷ = (C⁻¹ C_yx C_xy C⁻¹ + σ² C⁻¹)⁻¹ C⁻¹ C_yx (x − μ_x) + μ_y`, `C = C_yy`.
///
/// Only `μ_x` and `C_yx` enter; `C_xx` is not used by this form.
pub fn generative_asymptote(prior: &GaussianPrior, pop: &PopulationMoments, sigma2: f64) -> Result<AffineEstimator> {
    check_population(prior, pop)?;
    if !(sigma2 >= 0.0 && sigma2.is_finite()) {
        return Err(Error::invalid(format!("sigma2 must be finite and >= 0, got {sigma2}")));
    }
    let c = prior.covariance();
    let n_y = prior.dim();
    let named = |e: Error| e.naming("C_yy", "prior covariance must be invertible");
    // K = C⁻¹ C_yx, the implied Hᵀ.
    let k = spd_solve(c, &pop.c_yx, 0.0).map_err(named)?;
    let mut inner = &k.value * k.value.transpose();
    let mut condition = k.condition;
    if sigma2 > 0.0 {
        let c_inv = spd_solve(c, &DMatrix::identity(n_y, n_y), 0.0).map_err(named)?;
        inner += c_inv.value * sigma2;
    }
    let sol = spd_solve(&inner, &k.value, 0.0)
        .map_err(|e| e.naming("C⁻¹C_yxC_xyC⁻¹ + σ²C⁻¹", "asymptotic information matrix is singular"))?;
    condition = condition.max(sol.condition);
    let a = sol.value;
    let b = prior.mean() - &a * &pop.mu_x;
    Ok(AffineEstimator::new(a, b, Provenance::GenerativeAsymptote)?.with_condition(condition))
}

/// Noise-free limit of the generative estimator:
///
/// `ŷ = μ_y + C_yy Hᵀ (H C_yy Hᵀ)⁻¹ (x − x̄ − H (μ_y − ȳ))`.
///
/// Requires `H C_yy Hᵀ` to be invertible, so `N_y ≥ N_x`.
pub fn generative_highsnr(prior: &GaussianPrior, h: &DMatrix<f64>, moments: &SampleMoments) -> Result<AffineEstimator> {
    if prior.dim() != h.ncols() {
        return Err(Error::invalid("H and the prior disagree on the target dimension"));
    }
    check_moments_match(moments, h.nrows(), h.ncols())?;
    let gain = gain_form_a(h, prior.covariance(), 0.0)
        .map_err(|e| e.naming("H C_yy Hᵀ", "needs N_y >= N_x and H of full row rank"))?;
    let mu_y = prior.mean();
    let offset = &moments.x_bar + h * (mu_y - &moments.y_bar);
    let b = mu_y - &gain.value * offset;
    Ok(AffineEstimator::new(gain.value, b, Provenance::GenerativeHighSnr)?.with_condition(gain.condition))
}

/// Noise-free limit of the discriminative estimator:
///
/// `ŷ = ȳ + Ĉ_yy Hᵀ (H Ĉ_yy Hᵀ)⁻¹ (x − x̄)`.
pub fn discriminative_highsnr(h: &DMatrix<f64>, moments: &SampleMoments) -> Result<AffineEstimator> {
    check_moments_match(moments, h.nrows(), h.ncols())?;
    let gain = gain_form_a(h, &moments.c_yy, 0.0)
        .map_err(|e| e.naming("H C_yy_hat Hᵀ", "needs N_y >= N_x and enough samples"))?;
    let b = &moments.y_bar - &gain.value * &moments.x_bar;
    Ok(AffineEstimator::new(gain.value, b, Provenance::DiscriminativeHighSnr)?.with_condition(gain.condition))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::{random_h, sample_pairs, Seed};
    use nalgebra::{dmatrix, dvector};

    fn worked() -> Dataset {
        let xs = [3.0, 5.0, 7.0].map(|v| dvector![v]);
        let ys = [1.0, 2.0, 3.0].map(|v| dvector![v]);
        Dataset::from_samples(&xs, &ys).unwrap()
    }

    #[test]
    fn ml_fit_worked_example() {
        let fit = fit_ml(&worked()).unwrap();
        assert!((fit.h_hat[(0, 0)] - 2.0).abs() < 1e-12);
        assert!((fit.mu_hat[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ml_fit_constant_targets_is_singular() {
        let xs = [1.0, 2.0, 4.0].map(|v| dvector![v]);
        let ys = [1.0, 1.0, 1.0].map(|v| dvector![v]);
        let err = fit_ml(&Dataset::from_samples(&xs, &ys).unwrap()).unwrap_err();
        match err {
            Error::Singular { matrix, .. } => assert_eq!(matrix, "C_yy_hat"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ml_fit_recovers_noiseless_model() {
        let seed = Seed(77);
        let h = random_h(5, 4, &mut seed.stream(Seed::SHARED_STREAM)).unwrap();
        let mu = dvector![0.5, -1.0, 2.0, 0.0, 3.0];
        let prior = GaussianPrior::exponential_decay(4).unwrap();
        let model = TrueModel::noiseless(h.clone(), mu.clone()).unwrap();
        let data = sample_pairs(&prior, &model, 200, &mut seed.trial(0)).unwrap();
        let fit = fit_ml(&data).unwrap();
        assert!((&fit.h_hat - &h).amax() < 1e-10);
        assert!((&fit.mu_hat - &mu).amax() < 1e-10);
    }

    #[test]
    fn discriminative_worked_example() {
        let m = compute_moments(&worked()).unwrap();
        let est = discriminative_estimator(&m, 0.0).unwrap();
        assert!((est.a[(0, 0)] - 0.5).abs() < 1e-12);
        assert!((est.b[0] + 0.5).abs() < 1e-12);
        assert!((est.estimate(&dvector![5.0]).unwrap()[0] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn discriminative_interpolates_noiseless_identity() {
        let prior = GaussianPrior::standard(3).unwrap();
        let model = TrueModel::noiseless(DMatrix::identity(3, 3), DVector::zeros(3)).unwrap();
        let data = sample_pairs(&prior, &model, 20, &mut Seed(3).trial(0)).unwrap();
        let est = discriminative_estimator(&compute_moments(&data).unwrap(), 0.0).unwrap();
        for t in 0..data.len() {
            let e = est.estimate(&data.x(t)).unwrap() - data.y(t);
            assert!(e.amax() < 1e-8);
        }
    }

    #[test]
    fn discriminative_degenerate_sample_count() {
        let n_x = 6;
        let prior = GaussianPrior::standard(6).unwrap();
        let h = random_h(n_x, 6, &mut Seed(4).trial(0)).unwrap();
        let model = TrueModel::linear(h, DVector::zeros(n_x), 0.5).unwrap();
        let data = sample_pairs(&prior, &model, n_x, &mut Seed(4).trial(1)).unwrap();
        let err = discriminative_estimator(&compute_moments(&data).unwrap(), 0.0).unwrap_err();
        match err {
            Error::Singular { matrix, .. } => assert_eq!(matrix, "C_xx_hat"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn generative_scalar_shrinkage() {
        let n = 3;
        let fit = FittedModel {
            h_hat: DMatrix::identity(n, n),
            mu_hat: DVector::zeros(n),
            condition: 1.0,
        };
        let known = KnownStatistics::new(GaussianPrior::standard(n).unwrap(), 1.0).unwrap();
        let moments = SampleMoments {
            x_bar: DVector::zeros(n),
            y_bar: DVector::zeros(n),
            c_yx: DMatrix::identity(n, n),
            c_yy: DMatrix::identity(n, n),
            c_xx: DMatrix::identity(n, n) * 2.0,
            n_t: 10,
        };
        for form in [GainForm::A, GainForm::B, GainForm::Auto] {
            let est = generative_estimator(&fit, &known, &moments, form).unwrap();
            assert!((&est.a - DMatrix::identity(n, n) * 0.5).amax() < 1e-15);
            assert!(est.b.amax() < 1e-15);
        }
    }

    #[test]
    fn known_statistics_reject_nonpositive_sigma() {
        let prior = GaussianPrior::standard(2).unwrap();
        assert!(KnownStatistics::new(prior.clone(), 0.0).is_err());
        assert!(KnownStatistics::new(prior, -1.0).is_err());
    }

    #[test]
    fn oracle_unit_case() {
        let prior = GaussianPrior::standard(2).unwrap();
        let model = TrueModel::linear(DMatrix::identity(2, 2), DVector::zeros(2), 1.0).unwrap();
        let est = oracle_lmmse(&prior, &model).unwrap();
        assert!((&est.a - DMatrix::identity(2, 2) * 0.5).amax() < 1e-15);
        assert!(est.b.amax() < 1e-15);
    }

    #[test]
    fn oracle_uninformative_observations() {
        let mu = dvector![1.0, -2.0];
        let prior = GaussianPrior::new(mu.clone(), dmatrix![1.0, 0.3; 0.3, 2.0]).unwrap();
        let model = TrueModel::linear(dmatrix![1.0, 2.0; -1.0, 0.5; 0.2, 0.2], dvector![0.1, 0.2, 0.3], 1e12).unwrap();
        let est = oracle_lmmse(&prior, &model).unwrap();
        assert!(est.a.amax() < 1e-10);
        assert!((&est.b - &mu).amax() < 1e-10);
    }

    #[test]
    fn oracle_rejects_nonlinear() {
        let prior = GaussianPrior::standard(2).unwrap();
        let model = TrueModel::linear(DMatrix::identity(2, 2), DVector::zeros(2), 1.0)
            .unwrap()
            .with_nonlinearity(crate::synth::Nonlinearity::Tanh { scale: 1.0 })
            .unwrap();
        assert!(oracle_lmmse(&prior, &model).is_err());
    }

    #[test]
    fn highsnr_scalar() {
        let prior = GaussianPrior::standard(1).unwrap();
        let m = compute_moments(&worked()).unwrap();
        let est = generative_highsnr(&prior, &dmatrix![2.0], &m).unwrap();
        assert_eq!(est.a[(0, 0)], 0.5);
    }

    #[test]
    fn discriminative_highsnr_scalar() {
        // ys = [1, 2, 3] observed noiselessly through H = 2.
        let xs = [2.0, 4.0, 6.0].map(|v| dvector![v]);
        let ys = [1.0, 2.0, 3.0].map(|v| dvector![v]);
        let m = compute_moments(&Dataset::from_samples(&xs, &ys).unwrap()).unwrap();
        assert!((m.c_yy[(0, 0)] - 2.0 / 3.0).abs() < 1e-15);
        let est = discriminative_highsnr(&dmatrix![2.0], &m).unwrap();
        assert!((est.estimate(&dvector![4.0]).unwrap()[0] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn highsnr_projection_is_idempotent() {
        let seed = Seed(21);
        let h = random_h(4, 7, &mut seed.trial(0)).unwrap();
        let prior = GaussianPrior::exponential_decay(7).unwrap();
        let model = TrueModel::noiseless(h.clone(), DVector::zeros(4)).unwrap();
        let data = sample_pairs(&prior, &model, 50, &mut seed.trial(1)).unwrap();
        let mut m = compute_moments(&data).unwrap();
        m.y_bar = prior.mean().clone();
        m.x_bar = &h * &m.y_bar;
        let est = generative_highsnr(&prior, &h, &m).unwrap();
        let p = &est.a * &h;
        assert!((&p * &p - &p).amax() < 1e-10);
        // H A is the identity on the observation space.
        assert!((&h * &est.a - DMatrix::identity(4, 4)).amax() < 1e-10);
    }

    #[test]
    fn highsnr_needs_wide_h() {
        let prior = GaussianPrior::standard(2).unwrap();
        let h = dmatrix![1.0, 0.0; 0.0, 1.0; 1.0, 1.0];
        let model = TrueModel::noiseless(h.clone(), DVector::zeros(3)).unwrap();
        let data = sample_pairs(&prior, &model, 30, &mut Seed(1).trial(0)).unwrap();
        let m = compute_moments(&data).unwrap();
        assert!(matches!(
            generative_highsnr(&prior, &h, &m),
            Err(Error::Singular { .. })
        ));
        assert!(matches!(discriminative_highsnr(&h, &m), Err(Error::Singular { .. })));
    }

    #[test]
    fn asymptote_matches_oracle_for_linear_model() {
        let seed = Seed(8);
        let prior = GaussianPrior::exponential_decay(6).unwrap();
        let h = random_h(5, 6, &mut seed.trial(0)).unwrap();
        let model = TrueModel::linear(h, dvector![1.0, 0.0, -1.0, 0.5, 0.0], 0.2).unwrap();
        let pop = PopulationMoments::linear(&prior, &model).unwrap();
        let oracle = oracle_lmmse(&prior, &model).unwrap();
        let gen = generative_asymptote(&prior, &pop, model.sigma2).unwrap();
        let lmmse = population_lmmse(&prior, &pop).unwrap();
        assert!(gen.relative_difference(&oracle) < 1e-10);
        assert!(lmmse.relative_difference(&oracle) < 1e-10);
    }

    #[test]
    fn asymptote_noiseless_square_reduces_to_form_a() {
        let seed = Seed(12);
        let prior = GaussianPrior::exponential_decay(4).unwrap();
        let h = random_h(4, 4, &mut seed.trial(0)).unwrap();
        let model = TrueModel::noiseless(h.clone(), DVector::zeros(4)).unwrap();
        let pop = PopulationMoments::linear(&prior, &model).unwrap();
        let gen = generative_asymptote(&prior, &pop, 0.0).unwrap();
        let form_a = gain_form_a(&h, prior.covariance(), 0.0).unwrap();
        assert!(crate::linalg::relative_frobenius(&gen.a, &form_a.value) < 1e-8);
    }

    #[test]
    fn estimate_dimension_checked() {
        let est = AffineEstimator::new(DMatrix::identity(2, 2), DVector::zeros(2), Provenance::OracleLmmse).unwrap();
        assert_eq!(est.estimate(&dvector![1.0, 2.0]).unwrap(), dvector![1.0, 2.0]);
        assert!(est.estimate(&dvector![1.0]).is_err());
        let mu = dvector![4.0, 5.0];
        let flat = AffineEstimator::new(DMatrix::zeros(2, 3), mu.clone(), Provenance::Generative).unwrap();
        assert_eq!(flat.estimate(&dvector![9.0, -3.0, 1.0]).unwrap(), mu);
    }
}
