//! Shared fixtures for the criterion benchmarks.

use linest::{
    compute_moments, random_h, sample_pairs, DVector, Dataset, GaussianPrior, SampleMoments, Seed, TrueModel,
};

pub struct Fixture {
    pub prior: GaussianPrior,
    pub model: TrueModel,
    pub data: Dataset,
    pub moments: SampleMoments,
}

/// A draw from the default experiment geometry at noise variance `sigma2`.
pub fn fixture(n_x: usize, n_y: usize, n_t: usize, sigma2: f64) -> Fixture {
    let seed = Seed(0xbe9c);
    let prior = GaussianPrior::exponential_decay(n_y).expect("prior");
    let h = random_h(n_x, n_y, &mut seed.stream(Seed::SHARED_STREAM)).expect("H");
    let model = TrueModel::linear(h, DVector::zeros(n_x), sigma2).expect("model");
    let data = sample_pairs(&prior, &model, n_t, &mut seed.trial(0)).expect("data");
    let moments = compute_moments(&data).expect("moments");
    Fixture {
        prior,
        model,
        data,
        moments,
    }
}
