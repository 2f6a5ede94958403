//! Soft-margin SVM training under the mixed kernel.
//!
//! Binary classifiers are trained in the dual with SMO (see [`smo`]); the
//! model keeps the support expansion `f(x) = sum_i coef_i K(sv_i, x) + b`
//! with `coef_i = alpha_i * y_i`. Multiclass is one-vs-one with majority
//! voting, ties broken toward the lowest class label.

mod smo;

use ndarray::{Array2, ArrayView1, ArrayView2, Axis};

use crate::error::{Error, Result};
use crate::kernel::{mixed_unchecked, KernelParams};

/// Solver controls.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainSettings {
    /// KKT residual tolerance of the returned model.
    pub kkt_tolerance: f64,
    /// Consecutive sweeps without an update before giving up on progress.
    pub max_passes: usize,
    /// Cap on successful two-variable updates; `None` means `1000 * n`.
    pub max_iterations: Option<usize>,
}

impl Default for TrainSettings {
    fn default() -> Self {
        TrainSettings {
            kkt_tolerance: 1e-3,
            max_passes: 5,
            max_iterations: None,
        }
    }
}

impl TrainSettings {
    fn validate(&self) -> Result<()> {
        if !(self.kkt_tolerance > 0.0) {
            return Err(Error::invalid("kkt_tolerance must be positive"));
        }
        if self.max_passes == 0 {
            return Err(Error::invalid("max_passes must be at least 1"));
        }
        if self.max_iterations == Some(0) {
            return Err(Error::invalid("max_iterations must be at least 1"));
        }
        Ok(())
    }
}

/// A trained binary classifier in dual form.
#[derive(Debug, Clone, PartialEq)]
pub struct BinarySVMModel {
    pub support_vectors: Array2<f64>,
    /// `alpha_i * y_i` per support vector; the weight vector lives here
    /// implicitly.
    pub dual_coefs: Vec<f64>,
    pub bias: f64,
    pub kernel: KernelParams,
    /// Original labels mapped to (-1, +1): `.0` on negative decisions,
    /// `.1` on positive ones.
    pub classes: (usize, usize),
    /// False when the iteration cap cut training short.
    pub converged: bool,
}

impl BinarySVMModel {
    /// `sum_i coef_i K(sv_i, x) + bias`; the sign is the predicted side.
    pub fn decision_function(&self, x: ArrayView1<'_, f64>) -> Result<f64> {
        if self.support_vectors.nrows() > 0 && x.len() != self.support_vectors.ncols() {
            return Err(Error::invalid(format!(
                "input has {} features, model expects {}",
                x.len(),
                self.support_vectors.ncols()
            )));
        }
        let mut score = self.bias;
        for (sv, coef) in self.support_vectors.outer_iter().zip(&self.dual_coefs) {
            score += coef * mixed_unchecked(sv, x, &self.kernel);
        }
        Ok(score)
    }

    pub fn predict(&self, x: ArrayView1<'_, f64>) -> Result<usize> {
        Ok(if self.decision_function(x)? > 0.0 {
            self.classes.1
        } else {
            self.classes.0
        })
    }

    /// Value of the dual objective at the trained alphas. Non-support
    /// points carry alpha = 0 and do not contribute.
    pub fn dual_objective(&self) -> f64 {
        let alpha_sum: f64 = self.dual_coefs.iter().map(|c| c.abs()).sum();
        let mut quad = 0.0;
        for (i, xi) in self.support_vectors.outer_iter().enumerate() {
            for (j, xj) in self.support_vectors.outer_iter().enumerate() {
                quad += self.dual_coefs[i] * self.dual_coefs[j] * mixed_unchecked(xi, xj, &self.kernel);
            }
        }
        alpha_sum - 0.5 * quad
    }
}

/// Train a binary model on labels in {-1, +1}.
pub fn train_binary(
    features: ArrayView2<'_, f64>,
    labels: &[f64],
    params: &KernelParams,
    settings: &TrainSettings,
) -> Result<BinarySVMModel> {
    params.validate()?;
    settings.validate()?;
    let n = features.nrows();
    if n == 0 || labels.len() != n {
        return Err(Error::invalid(format!(
            "feature rows ({n}) and labels ({}) must match and be nonempty",
            labels.len()
        )));
    }
    if labels.iter().any(|&y| y != 1.0 && y != -1.0) {
        return Err(Error::invalid("binary labels must be -1 or +1"));
    }
    if labels.iter().all(|&y| y == labels[0]) {
        return Err(Error::invalid("training data contains a single class"));
    }

    let max_steps = settings.max_iterations.unwrap_or(1000 * n);
    let outcome = smo::Solver::new(features, labels, params, settings.kkt_tolerance, max_steps)
        .solve(settings.max_passes);

    let sv_idx: Vec<usize> = (0..n).filter(|&i| outcome.alphas[i] > 0.0).collect();
    let support_vectors = features.select(Axis(0), &sv_idx);
    let dual_coefs = sv_idx
        .iter()
        .map(|&i| outcome.alphas[i] * labels[i])
        .collect();
    Ok(BinarySVMModel {
        support_vectors,
        dual_coefs,
        bias: outcome.bias,
        kernel: params.clone(),
        classes: (0, 1),
        converged: outcome.converged,
    })
}

/// One binary model per unordered class pair.
#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseModel {
    /// Class predicted on negative decision values.
    pub negative: usize,
    /// Class predicted on positive decision values.
    pub positive: usize,
    pub model: BinarySVMModel,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MulticlassSVMModel {
    /// Distinct labels in ascending order; also the tie-break order.
    pub class_labels: Vec<usize>,
    pub pairwise_models: Vec<PairwiseModel>,
}

/// Train a one-vs-one multiclass model. Each pairwise model sees only the
/// examples of its two classes.
pub fn train_ovo(
    features: ArrayView2<'_, f64>,
    labels: &[usize],
    params: &KernelParams,
    settings: &TrainSettings,
) -> Result<MulticlassSVMModel> {
    if features.nrows() != labels.len() {
        return Err(Error::invalid("feature rows and labels must match"));
    }
    let mut class_labels: Vec<usize> = labels.to_vec();
    class_labels.sort_unstable();
    class_labels.dedup();
    if class_labels.len() < 2 {
        return Err(Error::invalid("multiclass training needs at least 2 classes"));
    }

    let mut pairwise_models = Vec::with_capacity(class_labels.len() * (class_labels.len() - 1) / 2);
    for (ai, &a) in class_labels.iter().enumerate() {
        for &b in &class_labels[ai + 1..] {
            let idx: Vec<usize> = labels
                .iter()
                .enumerate()
                .filter(|(_, &l)| l == a || l == b)
                .map(|(i, _)| i)
                .collect();
            let pair_features = features.select(Axis(0), &idx);
            let pair_labels: Vec<f64> = idx
                .iter()
                .map(|&i| if labels[i] == a { -1.0 } else { 1.0 })
                .collect();
            let mut model = train_binary(pair_features.view(), &pair_labels, params, settings)?;
            model.classes = (a, b);
            pairwise_models.push(PairwiseModel {
                negative: a,
                positive: b,
                model,
            });
        }
    }
    Ok(MulticlassSVMModel {
        class_labels,
        pairwise_models,
    })
}

impl MulticlassSVMModel {
    /// Majority vote over the pairwise models; ties go to the lowest class
    /// label.
    pub fn predict(&self, x: ArrayView1<'_, f64>) -> Result<usize> {
        let mut votes = vec![0usize; self.class_labels.len()];
        for pair in &self.pairwise_models {
            let winner = pair.model.predict(x)?;
            let slot = self
                .class_labels
                .iter()
                .position(|&c| c == winner)
                .expect("pairwise classes come from class_labels");
            votes[slot] += 1;
        }
        let mut best = 0;
        for (i, &v) in votes.iter().enumerate() {
            if v > votes[best] {
                best = i;
            }
        }
        Ok(self.class_labels[best])
    }

    /// Fraction of correctly classified rows.
    pub fn accuracy(&self, features: ArrayView2<'_, f64>, labels: &[usize]) -> Result<f64> {
        if labels.is_empty() || features.nrows() != labels.len() {
            return Err(Error::invalid("accuracy needs a nonempty, consistent test set"));
        }
        let mut correct = 0usize;
        for (row, &label) in features.outer_iter().zip(labels) {
            if self.predict(row)? == label {
                correct += 1;
            }
        }
        Ok(correct as f64 / labels.len() as f64)
    }

    /// Unweighted mean of per-class recall. Every model class must appear in
    /// the test labels and vice versa.
    pub fn class_averaged_accuracy(
        &self,
        features: ArrayView2<'_, f64>,
        labels: &[usize],
    ) -> Result<f64> {
        if labels.is_empty() || features.nrows() != labels.len() {
            return Err(Error::invalid("accuracy needs a nonempty, consistent test set"));
        }
        if labels.iter().any(|l| !self.class_labels.contains(l)) {
            return Err(Error::invalid("test labels contain a class unknown to the model"));
        }
        let mut per_class = vec![(0usize, 0usize); self.class_labels.len()]; // (correct, total)
        for (row, &label) in features.outer_iter().zip(labels) {
            let slot = self.class_labels.iter().position(|&c| c == label).unwrap();
            per_class[slot].1 += 1;
            if self.predict(row)? == label {
                per_class[slot].0 += 1;
            }
        }
        let mut sum = 0.0;
        for (&class, &(correct, total)) in self.class_labels.iter().zip(&per_class) {
            if total == 0 {
                return Err(Error::invalid(format!("class {class} has no test examples")));
            }
            sum += correct as f64 / total as f64;
        }
        Ok(sum / self.class_labels.len() as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::gram_matrix;
    use approx::assert_abs_diff_eq;
    use ndarray::array;

    fn gaussian_params(c: f64) -> KernelParams {
        KernelParams::new(1.0, 1.0, 1.0, 0.0, c).unwrap()
    }

    /// Brute-force maximization of the two-variable dual on the feasible
    /// line, on a fine grid.
    fn two_point_oracle(k: &Array2<f64>, y: &[f64; 2], c: f64, steps: usize) -> (f64, [f64; 2]) {
        let mut best = (f64::NEG_INFINITY, [0.0, 0.0]);
        for i in 0..=steps {
            let a0 = c * i as f64 / steps as f64;
            // equality constraint: a1 = -y1 * a0 * y0
            let a1 = -y[1] * a0 * y[0];
            if !(0.0..=c).contains(&a1) {
                continue;
            }
            let alphas = [a0, a1];
            let mut obj = a0 + a1;
            for p in 0..2 {
                for q in 0..2 {
                    obj -= 0.5 * alphas[p] * alphas[q] * y[p] * y[q] * k[[p, q]];
                }
            }
            if obj > best.0 {
                best = (obj, alphas);
            }
        }
        best
    }

    #[test]
    fn two_point_model_matches_brute_force_dual() {
        let x = array![[0.0], [1.0]];
        let y = [-1.0, 1.0];
        let params = gaussian_params(10.0);
        let model = train_binary(x.view(), &y, &params, &TrainSettings::default()).unwrap();

        assert!(model.converged);
        assert_eq!(model.support_vectors.nrows(), 2);
        let coef_sum: f64 = model.dual_coefs.iter().sum();
        assert_abs_diff_eq!(coef_sum, 0.0, epsilon = 1e-6);
        assert!(model.decision_function(x.row(0)).unwrap() < 0.0);
        assert!(model.decision_function(x.row(1)).unwrap() > 0.0);

        let k = gram_matrix(x.view(), x.view(), &params).unwrap();
        let (oracle_obj, _) = two_point_oracle(&k, &y, 10.0, 2000);
        assert!(model.dual_objective() >= oracle_obj - 1e-4);
    }

    #[test]
    fn xor_layout_is_separated_by_the_gaussian_kernel() {
        let x = array![[0.0, 0.0], [1.0, 1.0], [0.0, 1.0], [1.0, 0.0]];
        let y = [-1.0, -1.0, 1.0, 1.0];
        let params = gaussian_params(100.0);
        let model = train_binary(x.view(), &y, &params, &TrainSettings::default()).unwrap();
        assert!(model.converged);
        for (row, &label) in x.outer_iter().zip(&y) {
            let f = model.decision_function(row).unwrap();
            assert!(f * label > 0.0, "point misclassified: f={f}, y={label}");
        }
    }

    #[test]
    fn contradictory_duplicates_hit_the_bounds() {
        let x = array![[1.0, 2.0], [1.0, 2.0]];
        let y = [-1.0, 1.0];
        let params = gaussian_params(1.0);
        let model = train_binary(x.view(), &y, &params, &TrainSettings::default()).unwrap();
        // No separator exists; both multipliers end at C.
        for coef in &model.dual_coefs {
            assert_eq!(coef.abs(), 1.0);
        }
        let mut correct = 0;
        for (row, &label) in x.outer_iter().zip(&y) {
            if (model.decision_function(row).unwrap() > 0.0) == (label > 0.0) {
                correct += 1;
            }
        }
        assert_eq!(correct, 1, "symmetric conflict classifies exactly one of two");
    }

    #[test]
    fn single_class_input_is_rejected() {
        let x = array![[0.0], [1.0]];
        assert!(train_binary(x.view(), &[1.0, 1.0], &gaussian_params(1.0), &TrainSettings::default())
            .is_err());
    }

    #[test]
    fn degenerate_model_returns_bias() {
        let model = BinarySVMModel {
            support_vectors: Array2::zeros((0, 2)),
            dual_coefs: vec![],
            bias: 0.25,
            kernel: gaussian_params(1.0),
            classes: (0, 1),
            converged: true,
        };
        assert_eq!(model.decision_function(array![1.0, 2.0].view()).unwrap(), 0.25);
    }

    #[test]
    fn batch_and_scalar_scores_agree() {
        let x = array![[0.0, 0.0], [1.0, 1.0], [0.0, 1.0], [1.0, 0.0]];
        let y = [-1.0, -1.0, 1.0, 1.0];
        let params = KernelParams::new(0.5, 0.8, 1.2, 0.3, 10.0).unwrap();
        let model = train_binary(x.view(), &y, &params, &TrainSettings::default()).unwrap();
        let probe = array![[0.3, 0.6]];
        let k = gram_matrix(model.support_vectors.view(), probe.view(), &params).unwrap();
        let batch: f64 = model
            .dual_coefs
            .iter()
            .enumerate()
            .map(|(i, c)| c * k[[i, 0]])
            .sum::<f64>()
            + model.bias;
        let scalar = model.decision_function(probe.row(0)).unwrap();
        assert_abs_diff_eq!(batch, scalar, epsilon = 1e-12);
    }

    #[test]
    fn training_is_deterministic() {
        let x = array![
            [0.0, 0.1],
            [0.9, 1.0],
            [0.1, 0.9],
            [1.0, 0.2],
            [0.4, 0.4],
            [0.6, 0.7]
        ];
        let y = [-1.0, -1.0, 1.0, 1.0, -1.0, 1.0];
        let params = KernelParams::new(0.3, 1.0, 1.0, 0.1, 10.0).unwrap();
        let a = train_binary(x.view(), &y, &params, &TrainSettings::default()).unwrap();
        let b = train_binary(x.view(), &y, &params, &TrainSettings::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn kkt_conditions_hold_after_convergence() {
        let x = array![
            [0.0, 0.1],
            [0.9, 1.0],
            [0.1, 0.9],
            [1.0, 0.2],
            [0.4, 0.4],
            [0.6, 0.7],
            [0.2, 0.3],
            [0.8, 0.5]
        ];
        let y = [-1.0, -1.0, 1.0, 1.0, -1.0, 1.0, -1.0, 1.0];
        for c in [0.37, 1.0, 10.0] {
            let params = KernelParams::new(0.5, 1.0, 1.0, 0.2, c).unwrap();
            let settings = TrainSettings::default();
            let model = train_binary(x.view(), &y, &params, &settings).unwrap();
            assert!(model.converged);
            check_kkt(&model, x.view(), &y, c, settings.kkt_tolerance);
        }
    }

    pub(crate) fn check_kkt(
        model: &BinarySVMModel,
        x: ArrayView2<'_, f64>,
        y: &[f64],
        c: f64,
        tol: f64,
    ) {
        // Recover alpha per training point by matching support vector rows.
        for (i, row) in x.outer_iter().enumerate() {
            let alpha = model
                .support_vectors
                .outer_iter()
                .zip(&model.dual_coefs)
                .find(|(sv, _)| sv == &row)
                .map(|(_, coef)| coef.abs())
                .unwrap_or(0.0);
            let yf = y[i] * model.decision_function(row).unwrap();
            if alpha == 0.0 {
                assert!(yf >= 1.0 - tol, "alpha=0 point has yf={yf}");
            } else if alpha == c {
                assert!(yf <= 1.0 + tol, "alpha=C point has yf={yf}");
            } else {
                assert!((yf - 1.0).abs() <= tol, "free point has yf={yf}");
            }
        }
    }

    #[test]
    fn margin_violations_do_not_increase_with_c() {
        // Fixed overlapping 2-D set.
        let x = array![
            [0.0, 0.0],
            [0.3, 0.2],
            [0.5, 0.4],
            [0.9, 0.8],
            [1.0, 1.0],
            [0.45, 0.5],
            [0.2, 0.4],
            [0.7, 0.6],
            [1.2, 0.9],
            [0.55, 0.35]
        ];
        let y = [-1.0, -1.0, -1.0, 1.0, 1.0, 1.0, -1.0, 1.0, 1.0, -1.0];
        let mut previous = usize::MAX;
        for c in [0.1, 1.0, 10.0, 100.0] {
            let params = gaussian_params(c);
            let model = train_binary(x.view(), &y, &params, &TrainSettings::default()).unwrap();
            let mut violations = 0;
            for (row, &label) in x.outer_iter().zip(&y) {
                if label * model.decision_function(row).unwrap() < 1.0 {
                    violations += 1;
                }
            }
            assert!(
                violations <= previous,
                "violations rose from {previous} to {violations} at C={c}"
            );
            previous = violations;
        }
    }

    #[test]
    fn ovo_pair_counts() {
        let x = array![[0.0], [1.0], [2.0], [3.0], [4.0], [5.0]];
        let labels = [0, 0, 1, 1, 2, 2];
        let params = gaussian_params(10.0);
        let model = train_ovo(x.view(), &labels, &params, &TrainSettings::default()).unwrap();
        assert_eq!(model.pairwise_models.len(), 3);

        let binary = train_ovo(x.view(), &[0, 0, 0, 1, 1, 1], &params, &TrainSettings::default())
            .unwrap();
        assert_eq!(binary.pairwise_models.len(), 1);
    }

    #[test]
    fn six_classes_give_fifteen_pairs() {
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for class in 0..6usize {
            for j in 0..3 {
                rows.push([class as f64 * 10.0, j as f64 * 0.1]);
                labels.push(class);
            }
        }
        let x = Array2::from_shape_vec((rows.len(), 2), rows.into_iter().flatten().collect())
            .unwrap();
        let model =
            train_ovo(x.view(), &labels, &gaussian_params(10.0), &TrainSettings::default())
                .unwrap();
        assert_eq!(model.pairwise_models.len(), 15);
    }

    #[test]
    fn binary_ovo_agrees_with_binary_model() {
        let x = array![[0.0, 0.0], [0.2, 0.1], [1.0, 1.0], [0.9, 1.1]];
        let labels = [0usize, 0, 1, 1];
        let params = gaussian_params(10.0);
        let ovo = train_ovo(x.view(), &labels, &params, &TrainSettings::default()).unwrap();
        let pm1: Vec<f64> = labels.iter().map(|&l| if l == 0 { -1.0 } else { 1.0 }).collect();
        let binary = train_binary(x.view(), &pm1, &params, &TrainSettings::default()).unwrap();
        for row in x.outer_iter() {
            let direct = usize::from(binary.decision_function(row).unwrap() > 0.0);
            assert_eq!(ovo.predict(row).unwrap(), direct);
        }
    }

    #[test]
    fn prediction_tie_breaks_to_lowest_class() {
        // Three constant pairwise deciders voting 0 > 1, 1 > 2, 2 > 0: one
        // vote each.
        let constant = |bias: f64, classes: (usize, usize)| PairwiseModel {
            negative: classes.0,
            positive: classes.1,
            model: BinarySVMModel {
                support_vectors: Array2::zeros((0, 1)),
                dual_coefs: vec![],
                bias,
                kernel: gaussian_params(1.0),
                classes,
                converged: true,
            },
        };
        let model = MulticlassSVMModel {
            class_labels: vec![0, 1, 2],
            pairwise_models: vec![
                constant(-1.0, (0, 1)), // votes 0
                constant(-1.0, (1, 2)), // votes 1
                constant(1.0, (0, 2)),  // votes 2
            ],
        };
        assert_eq!(model.predict(array![0.0].view()).unwrap(), 0);
    }

    #[test]
    fn unanimous_votes_win() {
        let constant = |bias: f64, classes: (usize, usize)| PairwiseModel {
            negative: classes.0,
            positive: classes.1,
            model: BinarySVMModel {
                support_vectors: Array2::zeros((0, 1)),
                dual_coefs: vec![],
                bias,
                kernel: gaussian_params(1.0),
                classes,
                converged: true,
            },
        };
        let model = MulticlassSVMModel {
            class_labels: vec![0, 1, 2],
            pairwise_models: vec![
                constant(1.0, (0, 1)),  // votes 1
                constant(-1.0, (1, 2)), // votes 1
                constant(1.0, (0, 2)),  // votes 2
            ],
        };
        assert_eq!(model.predict(array![0.0].view()).unwrap(), 1);
    }

    #[test]
    fn separated_clouds_reach_high_training_accuracy() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        let centers = [[0.0, 0.0], [10.0, 0.0], [0.0, 10.0]];
        for (class, center) in centers.iter().enumerate() {
            for _ in 0..30 {
                rows.push([
                    center[0] + rng.random_range(-1.0..1.0),
                    center[1] + rng.random_range(-1.0..1.0),
                ]);
                labels.push(class);
            }
        }
        let x = Array2::from_shape_vec((90, 2), rows.into_iter().flatten().collect()).unwrap();
        let model =
            train_ovo(x.view(), &labels, &gaussian_params(10.0), &TrainSettings::default())
                .unwrap();
        let acc = model.accuracy(x.view(), &labels).unwrap();
        assert!(acc >= 0.95, "training accuracy {acc}");
    }

    #[test]
    fn accuracy_complement_on_binary_task() {
        let x = array![[0.0, 0.0], [0.2, 0.1], [1.0, 1.0], [0.9, 1.1]];
        let labels = [0usize, 0, 1, 1];
        let flipped = [1usize, 1, 0, 0];
        let model =
            train_ovo(x.view(), &labels, &gaussian_params(10.0), &TrainSettings::default())
                .unwrap();
        let a = model.accuracy(x.view(), &labels).unwrap();
        let b = model.accuracy(x.view(), &flipped).unwrap();
        assert_abs_diff_eq!(a + b, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn class_averaged_accuracy_examples() {
        // Hand-built constant voter that always answers class 0.
        let always_zero = MulticlassSVMModel {
            class_labels: vec![0, 1],
            pairwise_models: vec![PairwiseModel {
                negative: 0,
                positive: 1,
                model: BinarySVMModel {
                    support_vectors: Array2::zeros((0, 1)),
                    dual_coefs: vec![],
                    bias: -1.0,
                    kernel: gaussian_params(1.0),
                    classes: (0, 1),
                    converged: true,
                },
            }],
        };
        // Class 0 recall 1.0, class 1 recall 0.0 -> 0.5; overall accuracy
        // depends on class sizes instead.
        let x = array![[0.0], [0.0], [0.0], [0.0]];
        let labels = [0usize, 0, 0, 1];
        assert_abs_diff_eq!(
            always_zero.class_averaged_accuracy(x.view(), &labels).unwrap(),
            0.5,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(always_zero.accuracy(x.view(), &labels).unwrap(), 0.75, epsilon = 1e-15);

        // Missing class in the test set is an error.
        let only_zero = [0usize, 0];
        assert!(always_zero
            .class_averaged_accuracy(array![[0.0], [0.0]].view(), &only_zero)
            .is_err());
    }

    #[test]
    fn empty_test_set_is_rejected() {
        let x = array![[0.0], [1.0]];
        let model = train_ovo(x.view(), &[0, 1], &gaussian_params(1.0), &TrainSettings::default())
            .unwrap();
        let empty = Array2::<f64>::zeros((0, 1));
        assert!(model.accuracy(empty.view(), &[]).is_err());
    }
}
