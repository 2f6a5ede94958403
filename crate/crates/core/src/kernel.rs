//! Sigmoid, Gaussian and mixed kernel functions.
//!
//! The mixed kernel blends a sigmoid kernel `tanh(gamma_s * <x, y> + coef0)`
//! and a Gaussian kernel `exp(-gamma_g * ||x - y||^2)` with a ratio
//! `alpha` in [0, 1]:
//!
//! ```text
//! K(x, y) = (1 - alpha) * sigmoid(x, y) + alpha * gaussian(x, y)
//! ```
//!
//! All evaluation is in double precision. Squared distances are accumulated
//! as `sum((x_i - y_i)^2)` rather than the expanded dot-product form, which
//! cancels badly for nearby points.

use ndarray::{Array2, ArrayView1, ArrayView2};

use crate::error::{Error, Result};
use crate::space::Configuration;

/// Canonical parameter names shared by the kernel, the default search space
/// and the on-disk formats.
pub mod names {
    pub const MIXED_RATIO: &str = "mixed_ratio";
    pub const SIGMOID_RATIO: &str = "sigmoid_ratio";
    pub const GAUSSIAN_RATIO: &str = "gaussian_ratio";
    pub const C: &str = "C";
    pub const COEF0: &str = "coef0";
}

/// The five tunables of a mixed-kernel SVM.
///
/// `c` is the soft-margin regularization parameter; it travels with the
/// kernel parameters because every training call takes the full bundle.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelParams {
    /// Blend weight `alpha`: 0 = pure sigmoid, 1 = pure Gaussian.
    pub mixed_ratio: f64,
    /// Gamma of the sigmoid kernel.
    pub sigmoid_ratio: f64,
    /// Gamma of the Gaussian kernel.
    pub gaussian_ratio: f64,
    /// Additive offset of the sigmoid kernel.
    pub coef0: f64,
    /// Regularization parameter C.
    pub c: f64,
}

impl KernelParams {
    pub fn new(
        mixed_ratio: f64,
        sigmoid_ratio: f64,
        gaussian_ratio: f64,
        coef0: f64,
        c: f64,
    ) -> Result<Self> {
        let p = KernelParams {
            mixed_ratio,
            sigmoid_ratio,
            gaussian_ratio,
            coef0,
            c,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.mixed_ratio) || !self.mixed_ratio.is_finite() {
            return Err(Error::invalid(format!(
                "mixed_ratio must lie in [0, 1], got {}",
                self.mixed_ratio
            )));
        }
        if !(self.sigmoid_ratio > 0.0 && self.sigmoid_ratio.is_finite()) {
            return Err(Error::invalid(format!(
                "sigmoid_ratio must be positive, got {}",
                self.sigmoid_ratio
            )));
        }
        if !(self.gaussian_ratio > 0.0 && self.gaussian_ratio.is_finite()) {
            return Err(Error::invalid(format!(
                "gaussian_ratio must be positive, got {}",
                self.gaussian_ratio
            )));
        }
        if !self.coef0.is_finite() {
            return Err(Error::invalid(format!("coef0 must be finite, got {}", self.coef0)));
        }
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(Error::invalid(format!("C must be positive, got {}", self.c)));
        }
        Ok(())
    }

    /// Build parameters from a configuration, falling back to `base` for any
    /// parameter the configuration does not name. This lets reduced spaces
    /// (e.g. tuning only the three ratios) reuse fixed defaults for the rest.
    pub fn from_configuration(cfg: &Configuration, base: &KernelParams) -> Result<Self> {
        let get = |name: &str, fallback: f64| cfg.get(name).unwrap_or(fallback);
        KernelParams::new(
            get(names::MIXED_RATIO, base.mixed_ratio),
            get(names::SIGMOID_RATIO, base.sigmoid_ratio),
            get(names::GAUSSIAN_RATIO, base.gaussian_ratio),
            get(names::COEF0, base.coef0),
            get(names::C, base.c),
        )
    }
}

fn check_dims(x: ArrayView1<'_, f64>, y: ArrayView1<'_, f64>) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::invalid(format!(
            "vector dimensions differ: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    Ok(())
}

#[inline]
pub(crate) fn squared_distance(x: ArrayView1<'_, f64>, y: ArrayView1<'_, f64>) -> f64 {
    x.iter()
        .zip(y.iter())
        .map(|(a, b)| {
            let d = a - b;
            d * d
        })
        .sum()
}

#[inline]
pub(crate) fn gaussian_unchecked(
    x: ArrayView1<'_, f64>,
    y: ArrayView1<'_, f64>,
    gaussian_ratio: f64,
) -> f64 {
    (-gaussian_ratio * squared_distance(x, y)).exp()
}

#[inline]
pub(crate) fn sigmoid_unchecked(
    x: ArrayView1<'_, f64>,
    y: ArrayView1<'_, f64>,
    sigmoid_ratio: f64,
    coef0: f64,
) -> f64 {
    (sigmoid_ratio * x.dot(&y) + coef0).tanh()
}

#[inline]
pub(crate) fn mixed_unchecked(x: ArrayView1<'_, f64>, y: ArrayView1<'_, f64>, p: &KernelParams) -> f64 {
    let a = p.mixed_ratio;
    (1.0 - a) * sigmoid_unchecked(x, y, p.sigmoid_ratio, p.coef0)
        + a * gaussian_unchecked(x, y, p.gaussian_ratio)
}

/// `exp(-gamma * ||x - y||^2)`. Equals 1 iff `x == y`.
pub fn gaussian_kernel(
    x: ArrayView1<'_, f64>,
    y: ArrayView1<'_, f64>,
    gaussian_ratio: f64,
) -> Result<f64> {
    check_dims(x, y)?;
    if !(gaussian_ratio > 0.0) {
        return Err(Error::invalid(format!(
            "gaussian_ratio must be positive, got {gaussian_ratio}"
        )));
    }
    Ok(gaussian_unchecked(x, y, gaussian_ratio))
}

/// `tanh(gamma * <x, y> + coef0)`.
pub fn sigmoid_kernel(
    x: ArrayView1<'_, f64>,
    y: ArrayView1<'_, f64>,
    sigmoid_ratio: f64,
    coef0: f64,
) -> Result<f64> {
    check_dims(x, y)?;
    if !(sigmoid_ratio > 0.0) {
        return Err(Error::invalid(format!(
            "sigmoid_ratio must be positive, got {sigmoid_ratio}"
        )));
    }
    Ok(sigmoid_unchecked(x, y, sigmoid_ratio, coef0))
}

/// `(1 - alpha) * sigmoid(x, y) + alpha * gaussian(x, y)`.
pub fn mixed_kernel(x: ArrayView1<'_, f64>, y: ArrayView1<'_, f64>, p: &KernelParams) -> Result<f64> {
    check_dims(x, y)?;
    p.validate()?;
    Ok(mixed_unchecked(x, y, p))
}

/// Entry `(i, j)` is `mixed_kernel(rows[i], cols[j], p)`. Symmetric when
/// `rows` and `cols` are the same matrix.
pub fn gram_matrix(
    rows: ArrayView2<'_, f64>,
    cols: ArrayView2<'_, f64>,
    p: &KernelParams,
) -> Result<Array2<f64>> {
    if rows.ncols() != cols.ncols() {
        return Err(Error::invalid(format!(
            "feature dimensions differ: {} vs {}",
            rows.ncols(),
            cols.ncols()
        )));
    }
    p.validate()?;
    let mut gram = Array2::zeros((rows.nrows(), cols.nrows()));
    for (i, xi) in rows.outer_iter().enumerate() {
        for (j, yj) in cols.outer_iter().enumerate() {
            gram[[i, j]] = mixed_unchecked(xi, yj, p);
        }
    }
    Ok(gram)
}
