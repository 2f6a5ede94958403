//! Mixed-kernel SVM training and hyperparameter autotuning.
//!
//! The crate provides the pieces of an accuracy-autotuning loop for SVM
//! classifiers whose kernel is a convex blend of a sigmoid and a Gaussian
//! kernel:
//!
//! - [`kernel`] — sigmoid, Gaussian and mixed kernel evaluation, Gram matrices
//! - [`svm`] — SMO-based soft-margin training, one-vs-one multiclass, metrics
//! - [`space`] — quantized box-constrained parameter spaces and configurations
//! - [`forest`] — random-forest regression surrogate with uncertainty
//! - [`tuner`] — Bayesian-optimization search loop with LCB acquisition and an
//!   asynchronous manager/worker evaluation pool
//! - [`refine`] — iterative range refinement driven by failing evaluations
//! - [`data`] — CSV ingestion, splitting, standardization, synthetic datasets
//! - [`perfdb`] — append-only performance database with a CSV on-disk format

pub mod data;
pub mod error;
pub mod forest;
pub mod kernel;
pub mod perfdb;
pub mod refine;
pub mod space;
pub mod svm;
pub mod tuner;

pub use error::{Error, Result};
