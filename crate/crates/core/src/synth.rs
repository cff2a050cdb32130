//! Ground-truth generation for the linear Gaussian measurement model and its
//! nonlinear (misspecified) variants.
//!
//! Randomness is derived from a single master [`Seed`]: every Monte Carlo
//! trial reads its own ChaCha8 stream, selected by the trial index, so draws
//! do not depend on the order in which trials are scheduled.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moments::Dataset;

/// Master seed for a family of independent random streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

impl Seed {
    /// Stream reserved for quantities drawn once per experiment (e.g. a fixed H).
    pub const SHARED_STREAM: u64 = u64::MAX;

    /// Generator for `stream`. The ChaCha key comes from the master seed and
    /// the stream id selects an independent keystream, so `(master, stream)`
    /// fully determines the draws.
    pub fn stream(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.0);
        rng.set_stream(stream);
        rng
    }

    pub fn trial(&self, index: u64) -> ChaCha8Rng {
        self.stream(index)
    }
}

/// Known Gaussian prior on the targets, `y ~ N(mu_y, C_yy)`.
#[derive(Debug, Clone)]
pub struct GaussianPrior {
    mu_y: DVector<f64>,
    c_yy: DMatrix<f64>,
    chol: DMatrix<f64>,
}

impl GaussianPrior {
    pub fn new(mu_y: DVector<f64>, c_yy: DMatrix<f64>) -> Result<Self> {
        if c_yy.nrows() != mu_y.len() || !c_yy.is_square() {
            return Err(Error::InvalidPrior(format!(
                "mean has dimension {} but covariance is {}x{}",
                mu_y.len(),
                c_yy.nrows(),
                c_yy.ncols()
            )));
        }
        if mu_y.is_empty() {
            return Err(Error::InvalidPrior("target dimension must be at least 1".into()));
        }
        let (chol, _) = crate::linalg::factor(&c_yy, 0.0)
            .map_err(|e| Error::InvalidPrior(format!("C_yy is not symmetric positive definite: {e}")))?;
        let chol = chol.l();
        Ok(GaussianPrior { mu_y, c_yy, chol })
    }

    /// Zero-mean prior with `C_yy[i][j] = exp(-|i - j| / 5)`.
    pub fn exponential_decay(n_y: usize) -> Result<Self> {
        if n_y == 0 {
            return Err(Error::InvalidPrior("target dimension must be at least 1".into()));
        }
        let c = DMatrix::from_fn(n_y, n_y, |i, j| (-(i.abs_diff(j) as f64) / 5.0).exp());
        Self::new(DVector::zeros(n_y), c)
    }

    /// Standard normal prior `N(0, I)`.
    pub fn standard(n_y: usize) -> Result<Self> {
        Self::new(DVector::zeros(n_y), DMatrix::identity(n_y, n_y))
    }

    /// Same mean, covariance replaced by the identity.
    pub fn with_identity_covariance(&self) -> Self {
        let n = self.dim();
        GaussianPrior {
            mu_y: self.mu_y.clone(),
            c_yy: DMatrix::identity(n, n),
            chol: DMatrix::identity(n, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.mu_y.len()
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mu_y
    }

    pub fn covariance(&self) -> &DMatrix<f64> {
        &self.c_yy
    }

    /// Lower Cholesky factor of `C_yy`.
    pub fn cholesky_factor(&self) -> &DMatrix<f64> {
        &self.chol
    }
}

/// Measurement map `g(H, y)` applied before the additive noise.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Nonlinearity {
    /// `H y`.
    #[default]
    Linear,
    /// `s * tanh(H y / s)`, element-wise; tends to `H y` as `s` grows.
    Tanh { scale: f64 },
    /// `H y + alpha * (H y)^3`, element-wise; `alpha = 0` is linear.
    Cubic { alpha: f64 },
}

impl Nonlinearity {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Nonlinearity::Linear => Ok(()),
            Nonlinearity::Tanh { scale } if scale > 0.0 && scale.is_finite() => Ok(()),
            Nonlinearity::Tanh { scale } => Err(Error::invalid(format!("tanh scale must be positive, got {scale}"))),
            Nonlinearity::Cubic { alpha } if alpha.is_finite() => Ok(()),
            Nonlinearity::Cubic { alpha } => Err(Error::invalid(format!("cubic alpha must be finite, got {alpha}"))),
        }
    }

    pub fn is_linear(&self) -> bool {
        matches!(self, Nonlinearity::Linear)
    }

    /// Apply the element-wise distortion to the already-mixed signal `H y`.
    pub fn apply(&self, hy: &mut DMatrix<f64>) {
        match *self {
            Nonlinearity::Linear => {}
            Nonlinearity::Tanh { scale } => hy.apply(|v| *v = scale * (*v / scale).tanh()),
            Nonlinearity::Cubic { alpha } => hy.apply(|v| *v += alpha * *v * *v * *v),
        }
    }
}

/// Ground-truth parameters: `x = g(H, y) + w`, `w ~ N(mu_w, sigma2 * I)`.
#[derive(Debug, Clone)]
pub struct TrueModel {
    pub h: DMatrix<f64>,
    pub mu_w: DVector<f64>,
    pub sigma2: f64,
    pub nonlinearity: Nonlinearity,
}

impl TrueModel {
    /// Linear model with positive noise variance.
    pub fn linear(h: DMatrix<f64>, mu_w: DVector<f64>, sigma2: f64) -> Result<Self> {
        if !(sigma2 > 0.0 && sigma2.is_finite()) {
            return Err(Error::invalid(format!("sigma2 must be positive, got {sigma2}")));
        }
        let model = TrueModel {
            h,
            mu_w,
            sigma2,
            nonlinearity: Nonlinearity::Linear,
        };
        model.validate()?;
        Ok(model)
    }

    /// Noise-free linear model, for high-SNR limit checks only.
    pub fn noiseless(h: DMatrix<f64>, mu_w: DVector<f64>) -> Result<Self> {
        let model = TrueModel {
            h,
            mu_w,
            sigma2: 0.0,
            nonlinearity: Nonlinearity::Linear,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn with_nonlinearity(mut self, nonlinearity: Nonlinearity) -> Result<Self> {
        nonlinearity.validate()?;
        self.nonlinearity = nonlinearity;
        Ok(self)
    }

    pub fn n_x(&self) -> usize {
        self.h.nrows()
    }

    pub fn n_y(&self) -> usize {
        self.h.ncols()
    }

    pub fn validate(&self) -> Result<()> {
        if self.mu_w.len() != self.h.nrows() {
            return Err(Error::invalid(format!(
                "H has {} rows but mu_w has dimension {}",
                self.h.nrows(),
                self.mu_w.len()
            )));
        }
        if self.h.ncols() == 0 || self.h.nrows() == 0 {
            return Err(Error::invalid("H must have at least one row and column"));
        }
        if !(self.sigma2 >= 0.0 && self.sigma2.is_finite()) {
            return Err(Error::invalid(format!(
                "sigma2 must be finite and >= 0, got {}",
                self.sigma2
            )));
        }
        self.nonlinearity.validate()
    }

    /// Noise-free part of the observation, `g(H, y)`, for column-stacked `ys`.
    pub fn measure(&self, ys: &DMatrix<f64>) -> DMatrix<f64> {
        let mut hy = &self.h * ys;
        self.nonlinearity.apply(&mut hy);
        hy
    }
}

fn standard_normals<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> DMatrix<f64> {
    // from_fn fills column-major: one sample's coordinates are consecutive draws.
    DMatrix::from_fn(rows, cols, |_, _| rng.sample::<f64, _>(StandardNormal))
}

/// `n` i.i.d. draws from `prior`, as columns of an `N_y × n` matrix.
pub fn sample_targets<R: Rng + ?Sized>(prior: &GaussianPrior, n: usize, rng: &mut R) -> Result<DMatrix<f64>> {
    if n == 0 {
        return Err(Error::invalid("sample count must be at least 1"));
    }
    let z = standard_normals(rng, prior.dim(), n);
    let mut ys = prior.cholesky_factor() * z;
    for mut col in ys.column_iter_mut() {
        col += prior.mean();
    }
    Ok(ys)
}

/// `n` i.i.d. pairs `(x_t, y_t)` from `model` with targets drawn from `prior`.
///
/// Each sample consumes `N_y` target normals followed by `N_x` noise normals,
/// so the first `k` pairs of a larger draw equal a draw of size `k` from the
/// same stream, and changing only `sigma2` rescales the same noise.
pub fn sample_pairs<R: Rng + ?Sized>(
    prior: &GaussianPrior,
    model: &TrueModel,
    n: usize,
    rng: &mut R,
) -> Result<Dataset> {
    model.validate()?;
    if model.n_y() != prior.dim() {
        return Err(Error::invalid(format!(
            "H has {} columns but the prior has dimension {}",
            model.n_y(),
            prior.dim()
        )));
    }
    if n == 0 {
        return Err(Error::invalid("sample count must be at least 1"));
    }
    let (n_x, n_y) = (model.n_x(), model.n_y());
    let z = standard_normals(rng, n_y + n_x, n);
    let mut ys = prior.cholesky_factor() * z.rows(0, n_y);
    for mut col in ys.column_iter_mut() {
        col += prior.mean();
    }
    let mut xs = model.measure(&ys);
    let sigma = model.sigma2.sqrt();
    let noise = z.rows(n_y, n_x);
    for (t, mut col) in xs.column_iter_mut().enumerate() {
        col += &model.mu_w;
        col.axpy(sigma, &noise.column(t), 1.0);
    }
    Dataset::from_columns(xs, ys)
}

/// `N_x × N_y` matrix of i.i.d. standard normal entries.
pub fn random_h<R: Rng + ?Sized>(n_x: usize, n_y: usize, rng: &mut R) -> Result<DMatrix<f64>> {
    if n_x == 0 || n_y == 0 {
        return Err(Error::invalid("H dimensions must be at least 1"));
    }
    Ok(standard_normals(rng, n_x, n_y))
}
