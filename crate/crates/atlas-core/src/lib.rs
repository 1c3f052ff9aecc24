//! Disease-Atlas: joint forecasting of longitudinal biomarkers and event hazards.
//!
//! A multitask recurrent network predicts future continuous biomarker values,
//! binary markers, and exponential event hazards from a patient's observation
//! history, with Monte-Carlo dropout supplying predictive uncertainty. The
//! crate also carries everything needed to exercise the model end to end:
//! cohort ingestion and preprocessing, training-window construction, a seeded
//! synthetic cohort generator, baselines, and evaluation metrics.

pub mod error;
pub mod kv;
pub mod numerics;

pub use error::{AtlasError, Result};
