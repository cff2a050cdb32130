use linest::linalg::{gain_form_a, gain_form_b, relative_frobenius};
use linest::{
    compute_moments, discriminative_estimator, sample_pairs, DMatrix, DVector, Dataset, GaussianPrior, Seed, TrueModel,
};
use proptest::prelude::*;
use rand::Rng;
use rand_distr::StandardNormal;

fn normals<R: Rng>(rng: &mut R, r: usize, c: usize) -> DMatrix<f64> {
    DMatrix::from_fn(r, c, |_, _| rng.sample(StandardNormal))
}

fn spd<R: Rng>(rng: &mut R, n: usize) -> DMatrix<f64> {
    let g = normals(rng, n, n);
    &g * g.transpose() / n as f64 + DMatrix::identity(n, n)
}

/// A random linear-model dataset described by a few scalars.
fn dataset(seed: u64, n_x: usize, n_y: usize, n_t: usize, sigma2: f64) -> Dataset {
    let mut rng = Seed(seed).trial(0);
    let prior = GaussianPrior::new(
        DVector::from_fn(n_y, |_, _| rng.sample(StandardNormal)),
        spd(&mut rng, n_y),
    )
    .unwrap();
    let h = normals(&mut rng, n_x, n_y);
    let model = TrueModel::linear(h, DVector::zeros(n_x), sigma2).unwrap();
    sample_pairs(&prior, &model, n_t, &mut rng).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gain_forms_agree(seed in any::<u64>(), n_x in 1usize..20, n_y in 1usize..20, sigma2 in 0.05f64..5.0) {
        let mut rng = Seed(seed).trial(0);
        let h = normals(&mut rng, n_x, n_y);
        let c = spd(&mut rng, n_y);
        let a = gain_form_a(&h, &c, sigma2).unwrap();
        let b = gain_form_b(&h, &c, sigma2).unwrap();
        prop_assume!(a.condition < 1e10 && b.condition < 1e10);
        prop_assert!(relative_frobenius(&a.value, &b.value) <= 1e-8);
    }

    #[test]
    fn sample_covariances_are_psd(seed in any::<u64>(), n_x in 1usize..10, n_y in 1usize..10, n_t in 1usize..40) {
        let m = compute_moments(&dataset(seed, n_x, n_y, n_t, 0.3)).unwrap();
        let mut rng = Seed(seed ^ 1).trial(0);
        for c in [&m.c_xx, &m.c_yy] {
            prop_assert_eq!(c, &c.transpose());
            for _ in 0..5 {
                let v = DVector::from_fn(c.nrows(), |_, _| rng.sample::<f64, _>(StandardNormal));
                prop_assert!(v.dot(&(c * &v)) >= -1e-10 * v.norm_squared());
            }
        }
    }

    #[test]
    fn moments_ignore_sample_order(seed in any::<u64>(), n_t in 2usize..50, rot in 0usize..50) {
        let data = dataset(seed, 3, 4, n_t, 0.5);
        let order: Vec<usize> = (0..n_t).map(|t| (t + rot) % n_t).rev().collect();
        let xs: Vec<_> = order.iter().map(|&t| data.x(t)).collect();
        let ys: Vec<_> = order.iter().map(|&t| data.y(t)).collect();
        let a = compute_moments(&data).unwrap();
        let b = compute_moments(&Dataset::from_samples(&xs, &ys).unwrap()).unwrap();
        let tol = |m: &DMatrix<f64>| 1e-12 * (1.0 + m.amax());
        prop_assert!((&a.c_xx - &b.c_xx).amax() <= tol(&a.c_xx));
        prop_assert!((&a.c_yy - &b.c_yy).amax() <= tol(&a.c_yy));
        prop_assert!((&a.c_yx - &b.c_yx).amax() <= tol(&a.c_yx));
        prop_assert!((&a.x_bar - &b.x_bar).amax() <= 1e-12 * (1.0 + a.x_bar.amax()));
    }

    #[test]
    fn sample_pairs_is_deterministic(seed in any::<u64>(), n_t in 1usize..30) {
        prop_assert_eq!(dataset(seed, 3, 2, n_t, 1.0), dataset(seed, 3, 2, n_t, 1.0));
    }

    #[test]
    fn discriminative_minimises_empirical_risk(seed in any::<u64>(), n_x in 1usize..6, n_y in 1usize..6) {
        let data = dataset(seed, n_x, n_y, 4 * (n_x + 2), 0.4);
        let est = discriminative_estimator(&compute_moments(&data).unwrap(), 0.0).unwrap();
        let base = est.empirical_risk(&data).unwrap();
        let mut rng = Seed(seed).trial(1);
        for _ in 0..20 {
            let mut moved = est.clone();
            let da = normals(&mut rng, n_y, n_x);
            let db = normals(&mut rng, n_y, 1).column(0).into_owned();
            let norm = (da.norm_squared() + db.norm_squared()).sqrt();
            moved.a += da * (1e-3 / norm);
            moved.b += db * (1e-3 / norm);
            prop_assert!(moved.empirical_risk(&data).unwrap() >= base);
        }
    }
}
