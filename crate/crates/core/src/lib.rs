//! Generative versus discriminative learning of linear estimators for the
//! partially-known linear Gaussian model `x = H y + w`.
//!
//! The prior `y ~ N(μ_y, C_yy)` and the noise variance are known; `H` and the
//! noise mean are not. [`estimators`] builds the two learned estimators and
//! their closed-form references, [`synth`] generates data, and [`harness`]
//! runs seeded Monte Carlo comparisons.

pub mod error;
pub mod estimators;
pub mod harness;
pub mod linalg;
pub mod moments;
pub mod synth;

pub use nalgebra::{DMatrix, DVector};

pub use error::{Error, Result};
pub use estimators::{
    discriminative_estimator, discriminative_highsnr, fit_ml, fit_ml_from_moments, generative_asymptote,
    generative_estimator, generative_highsnr, oracle_lmmse, population_lmmse, AffineEstimator, FittedModel,
    KnownStatistics, PopulationMoments, Provenance,
};
pub use harness::{ExperimentConfig, MseReport};
pub use linalg::{spd_solve, woodbury_invert, GainForm};
pub use moments::{compute_moments, Dataset, SampleMoments};
pub use synth::{random_h, sample_pairs, sample_targets, GaussianPrior, Nonlinearity, Seed, TrueModel};
