//! Adam update rule with bias correction.

use serde::{Deserialize, Serialize};

use crate::error::{AtlasError, Result};
use crate::numerics::Tensor;

/// Optimizer state: step counter plus first/second moment estimates shaped
/// like the parameter list they were created for.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AdamState {
    pub step: u64,
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
    first_moment: Vec<Tensor>,
    second_moment: Vec<Tensor>,
}

impl AdamState {
    /// Defaults beta1 = 0.9, beta2 = 0.999, epsilon = 1e-8.
    pub fn new(learning_rate: f64, params: &[&Tensor]) -> Result<Self> {
        Self::with_betas(learning_rate, 0.9, 0.999, 1e-8, params)
    }

    pub fn with_betas(
        learning_rate: f64,
        beta1: f64,
        beta2: f64,
        epsilon: f64,
        params: &[&Tensor],
    ) -> Result<Self> {
        if learning_rate <= 0.0 {
            return Err(AtlasError::Usage(format!(
                "learning rate must be positive, got {learning_rate}"
            )));
        }
        if !(0.0..1.0).contains(&beta1) || !(0.0..1.0).contains(&beta2) || beta1 <= 0.0 || beta2 <= 0.0 {
            return Err(AtlasError::Usage(format!(
                "betas must lie in (0,1), got beta1={beta1}, beta2={beta2}"
            )));
        }
        if epsilon <= 0.0 {
            return Err(AtlasError::Usage(format!(
                "epsilon must be positive, got {epsilon}"
            )));
        }
        Ok(AdamState {
            step: 0,
            learning_rate,
            beta1,
            beta2,
            epsilon,
            first_moment: params.iter().map(|p| Tensor::zeros(p.shape())).collect(),
            second_moment: params.iter().map(|p| Tensor::zeros(p.shape())).collect(),
        })
    }

    pub fn num_params(&self) -> usize {
        self.first_moment.len()
    }
}

/// One Adam update over an ordered parameter list.
///
/// `grads` must cover every parameter, in the same order the state was
/// created with; a missing or misshapen entry is a usage error.
pub fn adam_step(
    params: &mut [&mut Tensor],
    grads: &[Tensor],
    state: &mut AdamState,
) -> Result<()> {
    if params.len() != state.num_params() {
        return Err(AtlasError::Usage(format!(
            "adam_step: {} parameters but state tracks {}",
            params.len(),
            state.num_params()
        )));
    }
    if grads.len() != params.len() {
        return Err(AtlasError::Usage(format!(
            "adam_step: {} parameters but {} gradients supplied",
            params.len(),
            grads.len()
        )));
    }
    for (i, (p, g)) in params.iter().zip(grads).enumerate() {
        if p.shape() != g.shape() || p.shape() != state.first_moment[i].shape() {
            return Err(AtlasError::Dimension {
                op: "adam_step",
                left: format!("param {} shape {:?}", i, p.shape()),
                right: format!("gradient shape {:?}", g.shape()),
            });
        }
    }

    state.step += 1;
    let t = state.step as i32;
    let bias1 = 1.0 - state.beta1.powi(t);
    let bias2 = 1.0 - state.beta2.powi(t);

    for (i, param) in params.iter_mut().enumerate() {
        let g = grads[i].values();
        let m = state.first_moment[i].values_mut();
        let v = state.second_moment[i].values_mut();
        let out = param.values_mut();
        for k in 0..g.len() {
            m[k] = state.beta1 * m[k] + (1.0 - state.beta1) * g[k];
            v[k] = state.beta2 * v[k] + (1.0 - state.beta2) * g[k] * g[k];
            let m_hat = m[k] / bias1;
            let v_hat = v[k] / bias2;
            out[k] -= state.learning_rate * m_hat / (v_hat.sqrt() + state.epsilon);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn first_step_moves_by_roughly_learning_rate() {
        // Hand evaluation at t=1, g=1: m_hat = 1, v_hat = 1,
        // update = lr * 1 / (1 + eps) ~= lr.
        let mut p = Tensor::scalar(0.5);
        let mut state = AdamState::new(1e-3, &[&p]).unwrap();
        let g = Tensor::scalar(1.0);
        adam_step(&mut [&mut p], &[g], &mut state).unwrap();
        let expected = 0.5 - 1e-3 / (1.0 + 1e-8);
        assert_relative_eq!(p.values()[0], expected, epsilon = 1e-15);
        assert_eq!(state.step, 1);
    }

    #[test]
    fn zero_gradient_leaves_parameters_unchanged() {
        let mut p = Tensor::vector(vec![1.0, -2.0, 3.0]);
        let mut state = AdamState::new(0.01, &[&p]).unwrap();
        for _ in 0..10 {
            let g = Tensor::zeros(&[3]);
            adam_step(&mut [&mut p], &[g], &mut state).unwrap();
        }
        assert_eq!(p.values(), &[1.0, -2.0, 3.0]);
    }

    #[test]
    fn identical_calls_produce_bit_identical_state() {
        let run = || {
            let mut p = Tensor::vector(vec![0.3, -0.7]);
            let mut state = AdamState::new(0.05, &[&p]).unwrap();
            for step in 1..=5 {
                let g = Tensor::vector(vec![0.1 * step as f64, -0.2]);
                adam_step(&mut [&mut p], &[g], &mut state).unwrap();
            }
            (p, state.step)
        };
        let (p1, s1) = run();
        let (p2, s2) = run();
        assert_eq!(p1.values(), p2.values());
        assert_eq!(s1, s2);
    }

    #[test]
    fn missing_or_misshapen_gradients_rejected() {
        let mut p = Tensor::vector(vec![1.0, 2.0]);
        let mut state = AdamState::new(0.01, &[&p]).unwrap();
        assert!(adam_step(&mut [&mut p], &[], &mut state).is_err());
        let bad = Tensor::vector(vec![1.0]);
        assert!(adam_step(&mut [&mut p], &[bad], &mut state).is_err());
    }
}
