//! Platt-style sequential minimal optimization for the soft-margin dual.
//!
//! Two-variable updates with the classic choice heuristics: the outer loop
//! scans KKT violators (alternating full and non-bound passes), the inner
//! choice maximizes |E1 - E2| over the non-bound set with deterministic
//! fallback scans. A full error cache is maintained incrementally.
//!
//! Mixed kernels with a sigmoid component can produce indefinite Gram
//! matrices. When the two-variable curvature is not positive the step is
//! taken to the feasible-segment endpoint with the better dual objective,
//! which keeps the objective non-decreasing and the solver finite.

use ndarray::ArrayView2;

use crate::kernel::{mixed_unchecked, KernelParams};

/// Gram matrices are fully materialized up to this many training rows;
/// beyond it entries are recomputed on demand.
const FULL_GRAM_LIMIT: usize = 4000;

/// Minimal relative change of an alpha for a step to count.
const STEP_EPS: f64 = 1e-12;

/// Margin by which one segment endpoint must beat the other in the
/// indefinite-curvature branch.
const OBJ_EPS: f64 = 1e-12;

pub(crate) struct Gram<'a> {
    x: ArrayView2<'a, f64>,
    params: &'a KernelParams,
    full: Option<Vec<f64>>,
    n: usize,
}

impl<'a> Gram<'a> {
    pub(crate) fn new(x: ArrayView2<'a, f64>, params: &'a KernelParams) -> Self {
        let n = x.nrows();
        let full = (n <= FULL_GRAM_LIMIT).then(|| {
            let mut k = vec![0.0; n * n];
            for i in 0..n {
                for j in 0..=i {
                    let v = mixed_unchecked(x.row(i), x.row(j), params);
                    k[i * n + j] = v;
                    k[j * n + i] = v;
                }
            }
            k
        });
        Gram { x, params, full, n }
    }

    #[inline]
    pub(crate) fn at(&self, i: usize, j: usize) -> f64 {
        match &self.full {
            Some(k) => k[i * self.n + j],
            None => mixed_unchecked(self.x.row(i), self.x.row(j), self.params),
        }
    }
}

pub(crate) struct SmoOutcome {
    pub alphas: Vec<f64>,
    pub bias: f64,
    pub converged: bool,
}

pub(crate) struct Solver<'a> {
    gram: Gram<'a>,
    y: &'a [f64],
    c: f64,
    /// Working tolerance; half the reported KKT tolerance so that the final
    /// bias recomputation cannot push residuals past the contract.
    tol: f64,
    alphas: Vec<f64>,
    bias: f64,
    /// E_i = f(x_i) - y_i under the current alphas and bias.
    errors: Vec<f64>,
    steps: usize,
    max_steps: usize,
}

impl<'a> Solver<'a> {
    pub(crate) fn new(
        x: ArrayView2<'a, f64>,
        y: &'a [f64],
        params: &'a KernelParams,
        kkt_tolerance: f64,
        max_steps: usize,
    ) -> Self {
        let n = y.len();
        Solver {
            gram: Gram::new(x, params),
            y,
            c: params.c,
            tol: 0.5 * kkt_tolerance,
            alphas: vec![0.0; n],
            bias: 0.0,
            errors: y.iter().map(|&yi| -yi).collect(),
            steps: 0,
            max_steps,
        }
    }

    pub(crate) fn solve(mut self, max_passes: usize) -> SmoOutcome {
        let n = self.y.len();
        let mut examine_all = true;
        let mut quiet_passes = 0usize;
        let converged = 'outer: loop {
            let mut changed = 0usize;
            let mut violators = 0usize;
            for i in 0..n {
                if !examine_all && !self.is_free(i) {
                    continue;
                }
                let (violated, stepped) = self.examine(i);
                violators += violated as usize;
                changed += stepped as usize;
                if self.steps >= self.max_steps {
                    break 'outer false;
                }
            }
            if examine_all && violators == 0 {
                break true;
            }
            if changed == 0 {
                quiet_passes += 1;
                if quiet_passes >= max_passes {
                    break false;
                }
            } else {
                quiet_passes = 0;
            }
            if examine_all {
                examine_all = false;
            } else if changed == 0 {
                examine_all = true;
            }
        };

        let bias = self.final_bias();
        SmoOutcome {
            alphas: self.alphas,
            bias,
            converged,
        }
    }

    #[inline]
    fn is_free(&self, i: usize) -> bool {
        self.alphas[i] > 0.0 && self.alphas[i] < self.c
    }

    /// Examine one candidate for the first position of a working pair.
    /// Returns (KKT violated, a step was taken).
    fn examine(&mut self, i2: usize) -> (bool, bool) {
        let y2 = self.y[i2];
        let e2 = self.errors[i2];
        let r2 = e2 * y2; // y*f - 1
        let a2 = self.alphas[i2];
        let violated = (r2 < -self.tol && a2 < self.c) || (r2 > self.tol && a2 > 0.0);
        if !violated {
            return (false, false);
        }

        // 1) the non-bound point with the largest |E1 - E2|
        let mut best: Option<(f64, usize)> = None;
        for i in 0..self.y.len() {
            if i != i2 && self.is_free(i) {
                let gap = (self.errors[i] - e2).abs();
                if best.is_none_or(|(g, _)| gap > g) {
                    best = Some((gap, i));
                }
            }
        }
        if let Some((_, i1)) = best {
            if self.take_step(i1, i2) {
                return (true, true);
            }
        }
        // 2) remaining non-bound points, then 3) everything, both scanned
        // from a deterministic starting offset.
        let n = self.y.len();
        let start = (i2 + 1) % n;
        for pass_free_only in [true, false] {
            for off in 0..n {
                let i1 = (start + off) % n;
                if i1 == i2 {
                    continue;
                }
                if pass_free_only && !self.is_free(i1) {
                    continue;
                }
                if self.take_step(i1, i2) {
                    return (true, true);
                }
            }
        }
        (true, false)
    }

    /// Joint update of alphas i1 and i2. Returns whether anything moved.
    fn take_step(&mut self, i1: usize, i2: usize) -> bool {
        if i1 == i2 {
            return false;
        }
        let (a1, a2) = (self.alphas[i1], self.alphas[i2]);
        let (y1, y2) = (self.y[i1], self.y[i2]);
        let (e1, e2) = (self.errors[i1], self.errors[i2]);
        let s = y1 * y2;

        let (lo, hi) = if s < 0.0 {
            ((a2 - a1).max(0.0), (self.c + a2 - a1).min(self.c))
        } else {
            ((a1 + a2 - self.c).max(0.0), (a1 + a2).min(self.c))
        };
        if lo >= hi {
            return false;
        }

        let k11 = self.gram.at(i1, i1);
        let k12 = self.gram.at(i1, i2);
        let k22 = self.gram.at(i2, i2);
        let eta = k11 + k22 - 2.0 * k12;

        let a2_new = if eta > 0.0 {
            (a2 + y2 * (e1 - e2) / eta).clamp(lo, hi)
        } else {
            // Objective is convex along the segment: best endpoint wins.
            let gain_lo = self.objective_gain(i1, i2, lo);
            let gain_hi = self.objective_gain(i1, i2, hi);
            if gain_lo > gain_hi + OBJ_EPS {
                lo
            } else if gain_hi > gain_lo + OBJ_EPS {
                hi
            } else {
                return false;
            }
        };
        if (a2_new - a2).abs() < STEP_EPS * (a2_new + a2 + STEP_EPS) {
            return false;
        }
        let a1_new = a1 + s * (a2 - a2_new);
        let a1_new = self.snap(a1_new);
        let a2_new = self.snap(a2_new);

        let d1 = y1 * (a1_new - a1);
        let d2 = y2 * (a2_new - a2);
        let b1 = self.bias - e1 - d1 * k11 - d2 * k12;
        let b2 = self.bias - e2 - d1 * k12 - d2 * k22;
        let b_new = if a1_new > 0.0 && a1_new < self.c {
            b1
        } else if a2_new > 0.0 && a2_new < self.c {
            b2
        } else {
            0.5 * (b1 + b2)
        };
        let db = b_new - self.bias;

        for k in 0..self.y.len() {
            self.errors[k] += d1 * self.gram.at(i1, k) + d2 * self.gram.at(i2, k) + db;
        }
        self.alphas[i1] = a1_new;
        self.alphas[i2] = a2_new;
        self.bias = b_new;
        self.steps += 1;
        true
    }

    /// Exact change of the dual objective if alpha2 moves to `t` (and alpha1
    /// follows the equality constraint).
    fn objective_gain(&self, i1: usize, i2: usize, t: f64) -> f64 {
        let (a2, y1, y2) = (self.alphas[i2], self.y[i1], self.y[i2]);
        let s = y1 * y2;
        let d2 = t - a2;
        let d1 = -s * d2;
        let g1 = self.errors[i1] + y1 - self.bias;
        let g2 = self.errors[i2] + y2 - self.bias;
        let k11 = self.gram.at(i1, i1);
        let k12 = self.gram.at(i1, i2);
        let k22 = self.gram.at(i2, i2);
        d1 + d2 - d1 * y1 * g1 - d2 * y2 * g2
            - 0.5 * d1 * d1 * k11
            - 0.5 * d2 * d2 * k22
            - s * d1 * d2 * k12
    }

    #[inline]
    fn snap(&self, a: f64) -> f64 {
        let eps = 1e-12 * self.c;
        if a < eps {
            0.0
        } else if a > self.c - eps {
            self.c
        } else {
            a
        }
    }

    /// Bias per the model contract: mean over free support vectors, or the
    /// midpoint of the interval the bound constraints leave feasible.
    fn final_bias(&self) -> f64 {
        let n = self.y.len();
        // f(x_i) without bias, from scratch for exactness.
        let g = |i: usize| -> f64 {
            (0..n)
                .filter(|&j| self.alphas[j] > 0.0)
                .map(|j| self.alphas[j] * self.y[j] * self.gram.at(j, i))
                .sum()
        };
        let free: Vec<usize> = (0..n).filter(|&i| self.is_free(i)).collect();
        if !free.is_empty() {
            return free.iter().map(|&i| self.y[i] - g(i)).sum::<f64>() / free.len() as f64;
        }
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        for i in 0..n {
            let bound = self.y[i] - g(i);
            let at_zero = self.alphas[i] == 0.0;
            // alpha=0 needs y(g+b) >= 1, alpha=C needs y(g+b) <= 1.
            if (at_zero && self.y[i] > 0.0) || (!at_zero && self.y[i] < 0.0) {
                lo = lo.max(bound);
            } else {
                hi = hi.min(bound);
            }
        }
        match (lo.is_finite(), hi.is_finite()) {
            (true, true) => 0.5 * (lo + hi),
            (true, false) => lo,
            (false, true) => hi,
            (false, false) => 0.0,
        }
    }
}
