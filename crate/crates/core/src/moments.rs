//! Paired training data and its first and second sample moments.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// `n_t` paired samples `(x_t, y_t)`.
///
/// Samples are stored column-wise: column `t` of `xs` is `x_t`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    xs: DMatrix<f64>,
    ys: DMatrix<f64>,
}

impl Dataset {
    /// Build from column-sample matrices (`N_x × n_t` and `N_y × n_t`).
    pub fn from_columns(xs: DMatrix<f64>, ys: DMatrix<f64>) -> Result<Self> {
        if xs.ncols() != ys.ncols() {
            return Err(Error::invalid(format!(
                "xs has {} samples but ys has {}",
                xs.ncols(),
                ys.ncols()
            )));
        }
        if xs.nrows() == 0 || ys.nrows() == 0 {
            return Err(Error::invalid("sample dimensions must be at least 1"));
        }
        Ok(Dataset { xs, ys })
    }

    /// Build from per-sample vectors.
    pub fn from_samples(xs: &[DVector<f64>], ys: &[DVector<f64>]) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::invalid(format!(
                "xs has {} samples but ys has {}",
                xs.len(),
                ys.len()
            )));
        }
        let (Some(x0), Some(y0)) = (xs.first(), ys.first()) else {
            return Ok(Dataset {
                xs: DMatrix::zeros(0, 0),
                ys: DMatrix::zeros(0, 0),
            });
        };
        let (n_x, n_y) = (x0.len(), y0.len());
        if let Some(t) = xs.iter().position(|x| x.len() != n_x) {
            return Err(Error::invalid(format!(
                "x_{t} has dimension {}, expected {n_x}",
                xs[t].len()
            )));
        }
        if let Some(t) = ys.iter().position(|y| y.len() != n_y) {
            return Err(Error::invalid(format!(
                "y_{t} has dimension {}, expected {n_y}",
                ys[t].len()
            )));
        }
        Self::from_columns(DMatrix::from_columns(xs), DMatrix::from_columns(ys))
    }

    pub fn len(&self) -> usize {
        self.xs.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn n_x(&self) -> usize {
        self.xs.nrows()
    }

    pub fn n_y(&self) -> usize {
        self.ys.nrows()
    }

    pub fn xs(&self) -> &DMatrix<f64> {
        &self.xs
    }

    pub fn ys(&self) -> &DMatrix<f64> {
        &self.ys
    }

    pub fn x(&self, t: usize) -> DVector<f64> {
        self.xs.column(t).into_owned()
    }

    pub fn y(&self, t: usize) -> DVector<f64> {
        self.ys.column(t).into_owned()
    }
}

/// Sample means and `1/n_t`-normalised sample covariances of a [`Dataset`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampleMoments {
    pub x_bar: DVector<f64>,
    pub y_bar: DVector<f64>,
    pub c_yx: DMatrix<f64>,
    pub c_yy: DMatrix<f64>,
    pub c_xx: DMatrix<f64>,
    pub n_t: usize,
}

impl SampleMoments {
    /// Cross-covariance `Ĉ_xy`, always the transpose of `Ĉ_yx`.
    pub fn c_xy(&self) -> DMatrix<f64> {
        self.c_yx.transpose()
    }

    pub fn n_x(&self) -> usize {
        self.x_bar.len()
    }

    pub fn n_y(&self) -> usize {
        self.y_bar.len()
    }
}

fn centered(samples: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let n = samples.ncols() as f64;
    let mean = samples.column_sum() / n;
    let mut c = samples.clone();
    for mut col in c.column_iter_mut() {
        col -= &mean;
    }
    (mean, c)
}

/// Compute the sample moments of `data`.
pub fn compute_moments(data: &Dataset) -> Result<SampleMoments> {
    if data.is_empty() {
        return Err(Error::invalid("cannot compute moments of an empty dataset"));
    }
    let n = data.len() as f64;
    let (x_bar, xc) = centered(data.xs());
    let (y_bar, yc) = centered(data.ys());
    let yc_t = yc.transpose();
    let c_yx = &yc * xc.transpose() / n;
    let mut c_yy = &yc * &yc_t / n;
    let mut c_xx = &xc * xc.transpose() / n;
    // The products are symmetric in exact arithmetic; make them exactly so.
    c_yy = (&c_yy + c_yy.transpose()) * 0.5;
    c_xx = (&c_xx + c_xx.transpose()) * 0.5;
    Ok(SampleMoments {
        x_bar,
        y_bar,
        c_yx,
        c_yy,
        c_xx,
        n_t: data.len(),
    })
}
