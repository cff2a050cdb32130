//! Symmetric positive-definite solves and the two equivalent forms of the
//! linear-Gaussian posterior gain.
//!
//! Every matrix inverse in the estimators goes through [`spd_solve`], which
//! factors `M + ridge * I` with a Cholesky decomposition and reports a cheap
//! condition estimate taken from the factor's pivots.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};

use crate::error::{Error, Result};

/// Condition estimates above this are reported as warnings by the harness.
pub const CONDITION_WARNING: f64 = 1e12;

/// Tolerated relative asymmetry before a matrix is rejected as non-symmetric.
pub const ASYMMETRY_TOLERANCE: f64 = 1e-10;

/// Factorisations whose condition estimate exceeds `1 / (n * eps)` are
/// treated as singular: the solve would carry no correct digits.
fn singular_threshold(n: usize) -> f64 {
    1.0 / (n.max(1) as f64 * f64::EPSILON)
}

/// Result of a symmetric solve together with the condition estimate of the
/// factored matrix.
#[derive(Debug, Clone)]
pub struct SpdSolution {
    pub value: DMatrix<f64>,
    pub condition: f64,
}

/// Largest entry-wise asymmetry of `m`, relative to its largest entry.
pub fn relative_asymmetry(m: &DMatrix<f64>) -> f64 {
    let scale = m.amax();
    if scale == 0.0 {
        return 0.0;
    }
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for j in 0..n {
        for i in (j + 1)..n {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst / scale
}

/// Replace `m` by `(m + mᵀ) / 2` after checking it is symmetric to within
/// [`ASYMMETRY_TOLERANCE`].
pub fn symmetrize(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if !m.is_square() {
        return Err(Error::invalid(format!(
            "expected a square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let asym = relative_asymmetry(m);
    if asym > ASYMMETRY_TOLERANCE {
        return Err(Error::invalid(format!(
            "matrix is not symmetric (relative asymmetry {asym:.3e})"
        )));
    }
    Ok((m + m.transpose()) * 0.5)
}

/// Hager/Higham lower-bound estimate of `‖M⁻¹‖₁` for symmetric `M`, using
/// only solves with the existing factor.
fn inverse_norm1_estimate(chol: &Cholesky<f64, Dyn>, n: usize) -> f64 {
    let norm1 = |v: &DVector<f64>| v.iter().map(|x| x.abs()).sum::<f64>();
    let mut x = DVector::from_element(n, 1.0 / n as f64);
    let mut estimate = 0.0_f64;
    for _ in 0..5 {
        let y = chol.solve(&x);
        estimate = estimate.max(norm1(&y));
        let sign = y.map(|v| if v >= 0.0 { 1.0 } else { -1.0 });
        let z = chol.solve(&sign);
        let j = z.iamax();
        if z[j].abs() <= z.dot(&x) {
            break;
        }
        x.fill(0.0);
        x[j] = 1.0;
    }
    // Alternating probe that catches cases the iteration above misses.
    if n > 1 {
        let b = DVector::from_fn(n, |i, _| {
            let mag = 1.0 + i as f64 / (n - 1) as f64;
            if i % 2 == 0 {
                mag
            } else {
                -mag
            }
        });
        estimate = estimate.max(2.0 * norm1(&chol.solve(&b)) / (3.0 * n as f64));
    }
    estimate
}

/// Cholesky factor of `m + ridge * I` plus its condition estimate: the
/// larger of the squared pivot ratio and the 1-norm estimate
/// `‖M‖₁ · est(‖M⁻¹‖₁)`. Both are lower bounds.
pub(crate) fn factor(m: &DMatrix<f64>, ridge: f64) -> Result<(Cholesky<f64, Dyn>, f64)> {
    if !(ridge >= 0.0 && ridge.is_finite()) {
        return Err(Error::invalid(format!("ridge must be finite and >= 0, got {ridge}")));
    }
    let mut sym = symmetrize(m)?;
    if sym.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("matrix contains non-finite entries"));
    }
    if ridge > 0.0 {
        for i in 0..sym.nrows() {
            sym[(i, i)] += ridge;
        }
    }
    let n = sym.nrows();
    let norm1 = sym
        .column_iter()
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let singular = |condition| Error::Singular {
        matrix: "matrix".into(),
        condition,
        hint: "not positive definite".into(),
    };
    let chol = Cholesky::new(sym).ok_or_else(|| singular(f64::INFINITY))?;
    let l = chol.l_dirty();
    let (mut lo, mut hi) = (f64::INFINITY, 0.0_f64);
    for i in 0..n {
        let d = l[(i, i)].abs();
        lo = lo.min(d);
        hi = hi.max(d);
    }
    let pivot = if lo > 0.0 { (hi / lo).powi(2) } else { f64::INFINITY };
    let condition = pivot.max(norm1 * inverse_norm1_estimate(&chol, n));
    if condition.is_nan() || condition > singular_threshold(n) {
        return Err(singular(condition));
    }
    Ok((chol, condition))
}

/// Solve `(m + ridge * I) X = b` for symmetric positive-definite `m`.
pub fn spd_solve(m: &DMatrix<f64>, b: &DMatrix<f64>, ridge: f64) -> Result<SpdSolution> {
    if b.nrows() != m.nrows() {
        return Err(Error::invalid(format!(
            "right-hand side has {} rows, matrix is {}x{}",
            b.nrows(),
            m.nrows(),
            m.ncols()
        )));
    }
    let (chol, condition) = factor(m, ridge)?;
    Ok(SpdSolution {
        value: chol.solve(b),
        condition,
    })
}

/// Inverse of a symmetric positive-definite matrix.
pub fn spd_inverse(m: &DMatrix<f64>, ridge: f64) -> Result<SpdSolution> {
    spd_solve(m, &DMatrix::identity(m.nrows(), m.nrows()), ridge)
}

/// Which algebraic route computes the posterior gain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GainForm {
    /// `C Hᵀ (H C Hᵀ + σ²I)⁻¹`: inverts an `N_x × N_x` matrix.
    A,
    /// `(HᵀH + σ² C⁻¹)⁻¹ Hᵀ`: inverts an `N_y × N_y` matrix.
    B,
    /// Form B when `N_y <= N_x`, form A otherwise.
    Auto,
}

impl GainForm {
    pub fn resolve(self, n_x: usize, n_y: usize) -> GainForm {
        match self {
            GainForm::Auto if n_y <= n_x => GainForm::B,
            GainForm::Auto => GainForm::A,
            form => form,
        }
    }
}

fn check_gain_inputs(h: &DMatrix<f64>, c: &DMatrix<f64>, sigma2: f64) -> Result<()> {
    if !(sigma2 >= 0.0 && sigma2.is_finite()) {
        return Err(Error::invalid(format!("sigma2 must be finite and >= 0, got {sigma2}")));
    }
    if c.nrows() != h.ncols() || !c.is_square() {
        return Err(Error::invalid(format!(
            "H is {}x{} but C is {}x{}",
            h.nrows(),
            h.ncols(),
            c.nrows(),
            c.ncols()
        )));
    }
    Ok(())
}

/// Gain `C Hᵀ (H C Hᵀ + σ²I)⁻¹` (`N_y × N_x`).
pub fn gain_form_a(h: &DMatrix<f64>, c: &DMatrix<f64>, sigma2: f64) -> Result<SpdSolution> {
    check_gain_inputs(h, c, sigma2)?;
    let ch_t = c * h.transpose();
    let mut inner = h * &ch_t;
    for i in 0..inner.nrows() {
        inner[(i, i)] += sigma2;
    }
    // (C Hᵀ) S⁻¹ = (S⁻¹ H C)ᵀ since S and C are symmetric.
    let sol = spd_solve(&inner, &ch_t.transpose(), 0.0)
        .map_err(|e| e.naming("H C Hᵀ + σ²I", "innovation covariance is not positive definite"))?;
    Ok(SpdSolution {
        value: sol.value.transpose(),
        condition: sol.condition,
    })
}

/// Gain `(HᵀH + σ² C⁻¹)⁻¹ Hᵀ` (`N_y × N_x`).
pub fn gain_form_b(h: &DMatrix<f64>, c: &DMatrix<f64>, sigma2: f64) -> Result<SpdSolution> {
    check_gain_inputs(h, c, sigma2)?;
    let mut inner = h.transpose() * h;
    let mut condition = 0.0_f64;
    if sigma2 > 0.0 {
        let c_inv = spd_inverse(c, 0.0).map_err(|e| e.naming("C_yy", "prior covariance must be invertible"))?;
        condition = c_inv.condition;
        inner += c_inv.value * sigma2;
    }
    let sol = spd_solve(&inner, &h.transpose(), 0.0)
        .map_err(|e| e.naming("HᵀH + σ²C⁻¹", "information matrix is not invertible"))?;
    Ok(SpdSolution {
        value: sol.value,
        condition: condition.max(sol.condition),
    })
}

/// Gain of the requested form; `Auto` is resolved from the shape of `h`.
pub fn posterior_gain(h: &DMatrix<f64>, c: &DMatrix<f64>, sigma2: f64, form: GainForm) -> Result<SpdSolution> {
    match form.resolve(h.nrows(), h.ncols()) {
        GainForm::B => gain_form_b(h, c, sigma2),
        _ => gain_form_a(h, c, sigma2),
    }
}

/// Both gain forms, computed independently.
///
/// Returns `(form_a_gain, form_b_gain)`; they agree whenever both inner
/// matrices are invertible.
pub fn woodbury_invert(h: &DMatrix<f64>, c: &DMatrix<f64>, sigma2: f64) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let a = gain_form_a(h, c, sigma2)?;
    let b = gain_form_b(h, c, sigma2)?;
    Ok((a.value, b.value))
}

/// `‖a − b‖_F / ‖b‖_F`, or the absolute difference when `b` is zero.
pub fn relative_frobenius(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    let diff = (a - b).norm();
    let scale = b.norm();
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}
