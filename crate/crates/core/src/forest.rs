//! Random-forest regression surrogate.
//!
//! CART-style trees with variance-reduction splits, bootstrap resampling and
//! per-node feature subsampling. The forest reports the cross-tree mean as
//! its prediction and the cross-tree population standard deviation as the
//! uncertainty estimate consumed by the acquisition function.
//!
//! Everything is deterministic for a fixed seed: per-tree RNG substreams are
//! derived from the forest seed, split ties resolve to the lowest feature
//! index and then the smallest threshold.

use ndarray::ArrayView2;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum TreeNode {
    Split {
        feature: usize,
        threshold: f64,
        left: Box<TreeNode>,
        right: Box<TreeNode>,
    },
    Leaf {
        value: f64,
    },
}

impl TreeNode {
    fn predict(&self, x: &[f64]) -> f64 {
        match self {
            TreeNode::Leaf { value } => *value,
            TreeNode::Split {
                feature,
                threshold,
                left,
                right,
            } => {
                if x[*feature] <= *threshold {
                    left.predict(x)
                } else {
                    right.predict(x)
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ForestParams {
    pub n_trees: usize,
    pub max_depth: usize,
    pub min_samples_leaf: usize,
    /// Fraction of features offered as split candidates at each node;
    /// the count is `ceil(feature_subsample * d)`.
    pub feature_subsample: f64,
    pub bootstrap: bool,
    pub seed: u64,
}

impl Default for ForestParams {
    fn default() -> Self {
        ForestParams {
            n_trees: 32,
            max_depth: 16,
            min_samples_leaf: 1,
            feature_subsample: 5.0 / 6.0,
            bootstrap: true,
            seed: 0,
        }
    }
}

impl ForestParams {
    fn validate(&self) -> Result<()> {
        if self.n_trees == 0 || self.max_depth == 0 || self.min_samples_leaf == 0 {
            return Err(Error::invalid(
                "n_trees, max_depth and min_samples_leaf must be positive",
            ));
        }
        if !(self.feature_subsample > 0.0 && self.feature_subsample <= 1.0) {
            return Err(Error::invalid("feature_subsample must lie in (0, 1]"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomForest {
    pub trees: Vec<TreeNode>,
    pub n_features: usize,
    pub params: ForestParams,
}

/// Fit a forest on rows of `x` against targets `y`.
pub fn fit(x: ArrayView2<'_, f64>, y: &[f64], params: &ForestParams) -> Result<RandomForest> {
    params.validate()?;
    let n = x.nrows();
    if n == 0 || y.len() != n {
        return Err(Error::invalid(format!(
            "need at least one sample and matching target count (got {} rows, {} targets)",
            n,
            y.len()
        )));
    }
    let d = x.ncols();
    if d == 0 {
        return Err(Error::invalid("need at least one feature"));
    }
    let rows: Vec<&[f64]> = (0..n)
        .map(|i| x.row(i).to_slice().expect("standard layout"))
        .collect();

    let mut trees = Vec::with_capacity(params.n_trees);
    for t in 0..params.n_trees {
        // Independent substream per tree.
        let mut rng = ChaCha8Rng::seed_from_u64(
            params
                .seed
                .wrapping_add((t as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)),
        );
        let indices: Vec<usize> = if params.bootstrap {
            (0..n).map(|_| rng.random_range(0..n)).collect()
        } else {
            (0..n).collect()
        };
        trees.push(build_node(&rows, y, indices, 0, params, &mut rng));
    }
    Ok(RandomForest {
        trees,
        n_features: d,
        params: params.clone(),
    })
}

fn mean(y: &[f64], idx: &[usize]) -> f64 {
    idx.iter().map(|&i| y[i]).sum::<f64>() / idx.len() as f64
}

fn build_node(
    rows: &[&[f64]],
    y: &[f64],
    indices: Vec<usize>,
    depth: usize,
    params: &ForestParams,
    rng: &mut ChaCha8Rng,
) -> TreeNode {
    let leaf = |indices: &[usize]| TreeNode::Leaf {
        value: mean(y, indices),
    };
    if depth >= params.max_depth || indices.len() < 2 * params.min_samples_leaf {
        return leaf(&indices);
    }
    let first = y[indices[0]];
    if indices.iter().all(|&i| y[i] == first) {
        return leaf(&indices);
    }

    let d = rows[0].len();
    let n_candidates = ((params.feature_subsample * d as f64).ceil() as usize).clamp(1, d);
    let mut features: Vec<usize> = (0..d).collect();
    // partial Fisher-Yates, then ascending order for deterministic ties
    for i in 0..n_candidates {
        let j = rng.random_range(i..d);
        features.swap(i, j);
    }
    features.truncate(n_candidates);
    features.sort_unstable();

    let Some((feature, threshold)) = best_split(rows, y, &indices, &features, params.min_samples_leaf)
    else {
        return leaf(&indices);
    };

    let (left_idx, right_idx): (Vec<usize>, Vec<usize>) = indices
        .into_iter()
        .partition(|&i| rows[i][feature] <= threshold);
    let left = build_node(rows, y, left_idx, depth + 1, params, rng);
    let right = build_node(rows, y, right_idx, depth + 1, params, rng);
    TreeNode::Split {
        feature,
        threshold,
        left: Box::new(left),
        right: Box::new(right),
    }
}

/// Best (feature, threshold) by maximal reduction of the summed squared
/// error; thresholds are midpoints between consecutive distinct values.
fn best_split(
    rows: &[&[f64]],
    y: &[f64],
    indices: &[usize],
    features: &[usize],
    min_leaf: usize,
) -> Option<(usize, f64)> {
    let n = indices.len();
    let total_sum: f64 = indices.iter().map(|&i| y[i]).sum();
    let total_sq: f64 = indices.iter().map(|&i| y[i] * y[i]).sum();
    let parent_sse = total_sq - total_sum * total_sum / n as f64;

    let mut best: Option<(f64, usize, f64)> = None; // (reduction, feature, threshold)
    let mut order: Vec<usize> = Vec::with_capacity(n);
    for &f in features {
        order.clear();
        order.extend_from_slice(indices);
        order.sort_by(|&a, &b| {
            rows[a][f]
                .partial_cmp(&rows[b][f])
                .expect("finite feature values")
        });
        let mut left_sum = 0.0;
        let mut left_sq = 0.0;
        for pos in 0..n - 1 {
            let i = order[pos];
            left_sum += y[i];
            left_sq += y[i] * y[i];
            let v = rows[i][f];
            let v_next = rows[order[pos + 1]][f];
            if v == v_next {
                continue;
            }
            let left_n = pos + 1;
            let right_n = n - left_n;
            if left_n < min_leaf || right_n < min_leaf {
                continue;
            }
            let right_sum = total_sum - left_sum;
            let right_sq = total_sq - left_sq;
            let sse = (left_sq - left_sum * left_sum / left_n as f64)
                + (right_sq - right_sum * right_sum / right_n as f64);
            let reduction = parent_sse - sse;
            if reduction > 0.0 && best.map_or(true, |(r, _, _)| reduction > r) {
                best = Some((reduction, f, 0.5 * (v + v_next)));
            }
        }
    }
    best.map(|(_, f, t)| (f, t))
}

/// Mean and population standard deviation of the per-tree predictions.
pub fn predict_mean_std(forest: &RandomForest, x: &[f64]) -> Result<(f64, f64)> {
    if x.len() != forest.n_features {
        return Err(Error::invalid(format!(
            "input has {} features, forest expects {}",
            x.len(),
            forest.n_features
        )));
    }
    let preds: Vec<f64> = forest.trees.iter().map(|t| t.predict(x)).collect();
    let m = preds.iter().sum::<f64>() / preds.len() as f64;
    let var = preds.iter().map(|p| (p - m) * (p - m)).sum::<f64>() / preds.len() as f64;
    Ok((m, var.max(0.0).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use ndarray::{array, Array2};
    use rand::Rng;

    fn exact_params() -> ForestParams {
        ForestParams {
            n_trees: 8,
            max_depth: 64,
            min_samples_leaf: 1,
            feature_subsample: 1.0,
            bootstrap: false,
            seed: 3,
        }
    }

    #[test]
    fn constant_targets_predict_the_constant() {
        let x = Array2::from_shape_fn((20, 3), |(i, j)| (i * 3 + j) as f64);
        let y = vec![0.7; 20];
        let forest = fit(x.view(), &y, &ForestParams::default()).unwrap();
        let (m, s) = predict_mean_std(&forest, &[4.0, 100.0, -3.0]).unwrap();
        assert_eq!(m, 0.7);
        assert_eq!(s, 0.0);
    }

    #[test]
    fn two_points_fit_exactly_without_bootstrap() {
        let x = array![[0.0], [1.0]];
        let y = vec![0.2, 0.9];
        let forest = fit(x.view(), &y, &exact_params()).unwrap();
        let (m0, _) = predict_mean_std(&forest, &[0.0]).unwrap();
        let (m1, _) = predict_mean_std(&forest, &[1.0]).unwrap();
        assert_eq!(m0, 0.2);
        assert_eq!(m1, 0.9);
    }

    #[test]
    fn same_seed_gives_identical_forests() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = Array2::from_shape_fn((40, 5), |_| rng.random_range(0.0..1.0));
        let y: Vec<f64> = (0..40).map(|_| rng.random_range(0.0..1.0)).collect();
        let a = fit(x.view(), &y, &ForestParams::default()).unwrap();
        let b = fit(x.view(), &y, &ForestParams::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn single_tree_has_zero_std() {
        let x = array![[0.0], [1.0], [2.0]];
        let y = vec![0.1, 0.5, 0.9];
        let params = ForestParams {
            n_trees: 1,
            ..ForestParams::default()
        };
        let forest = fit(x.view(), &y, &params).unwrap();
        let (_, s) = predict_mean_std(&forest, &[1.0]).unwrap();
        assert_eq!(s, 0.0);
    }

    #[test]
    fn hand_built_leaves_give_known_mean_and_std() {
        let trees = [0.1, 0.2, 0.3, 0.4, 0.5]
            .iter()
            .map(|&v| TreeNode::Leaf { value: v })
            .collect();
        let forest = RandomForest {
            trees,
            n_features: 2,
            params: ForestParams::default(),
        };
        let (m, s) = predict_mean_std(&forest, &[0.0, 0.0]).unwrap();
        assert_abs_diff_eq!(m, 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(s, 0.02f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(s, 0.1414213562, epsilon = 1e-9);
    }

    #[test]
    fn exact_interpolation_on_distinct_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let x = Array2::from_shape_fn((30, 4), |_| rng.random_range(0.0..1.0));
        let y: Vec<f64> = (0..30).map(|_| rng.random_range(0.0..1.0)).collect();
        let forest = fit(x.view(), &y, &exact_params()).unwrap();
        for i in 0..30 {
            let row: Vec<f64> = x.row(i).to_vec();
            let (m, s) = predict_mean_std(&forest, &row).unwrap();
            assert_abs_diff_eq!(m, y[i], epsilon = 1e-12);
            assert_abs_diff_eq!(s, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn predictions_stay_within_target_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let x = Array2::from_shape_fn((50, 3), |_| rng.random_range(0.0..1.0));
        let y: Vec<f64> = (0..50).map(|_| rng.random_range(0.2..0.8)).collect();
        let (lo, hi) = y.iter().fold((f64::MAX, f64::MIN), |(a, b), &v| (a.min(v), b.max(v)));
        let forest = fit(x.view(), &y, &ForestParams::default()).unwrap();
        for _ in 0..100 {
            let probe = [
                rng.random_range(-1.0..2.0),
                rng.random_range(-1.0..2.0),
                rng.random_range(-1.0..2.0),
            ];
            let (m, s) = predict_mean_std(&forest, &probe).unwrap();
            assert!(m >= lo - 1e-12 && m <= hi + 1e-12);
            assert!(s >= 0.0);
        }
    }

    #[test]
    fn deeper_trees_fit_training_data_at_least_as_well() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let x = Array2::from_shape_fn((60, 2), |_| rng.random_range(0.0..1.0));
        let y: Vec<f64> = (0..60)
            .map(|i| (x[[i, 0]] * 6.0).sin() * 0.3 + x[[i, 1]] * 0.4)
            .collect();
        let mse = |depth: usize| {
            let params = ForestParams {
                max_depth: depth,
                bootstrap: false,
                feature_subsample: 1.0,
                seed: 8,
                ..ForestParams::default()
            };
            let forest = fit(x.view(), &y, &params).unwrap();
            (0..60)
                .map(|i| {
                    let (m, _) = predict_mean_std(&forest, &x.row(i).to_vec()).unwrap();
                    (m - y[i]) * (m - y[i])
                })
                .sum::<f64>()
                / 60.0
        };
        assert!(mse(8) <= mse(2));
    }

    #[test]
    fn empty_data_is_rejected() {
        let x = Array2::<f64>::zeros((0, 3));
        assert!(fit(x.view(), &[], &ForestParams::default()).is_err());
    }

    #[test]
    fn dimension_mismatch_on_predict() {
        let x = array![[0.0, 1.0], [1.0, 0.0]];
        let forest = fit(x.view(), &[0.1, 0.9], &ForestParams::default()).unwrap();
        assert!(predict_mean_std(&forest, &[0.0]).is_err());
    }
}
