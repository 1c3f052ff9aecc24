//! Dense f64 arrays, reverse-mode automatic differentiation, and Adam.
//!
//! Everything upstream (the network, likelihoods, training) computes on this
//! substrate. Forward passes are recorded on a [`Tape`]; [`Tape::backward`]
//! replays the recording in reverse to accumulate gradients for every leaf.

mod adam;
mod tape;
mod tensor;

pub use adam::{adam_step, AdamState};
pub use tape::{Activation, Gradients, Tape, Var};
pub use tensor::Tensor;

/// Overflow-safe softplus: `max(v, 0) + log1p(exp(-|v|))`.
pub fn softplus(v: f64) -> f64 {
    v.max(0.0) + (-v.abs()).exp().ln_1p()
}

/// Logistic sigmoid, evaluated without overflow on either tail.
pub fn sigmoid(v: f64) -> f64 {
    if v >= 0.0 {
        1.0 / (1.0 + (-v).exp())
    } else {
        let e = v.exp();
        e / (1.0 + e)
    }
}

/// Exponential linear unit: identity for `v >= 0`, `exp(v) - 1` below.
pub fn elu(v: f64) -> f64 {
    if v >= 0.0 {
        v
    } else {
        v.exp() - 1.0
    }
}
