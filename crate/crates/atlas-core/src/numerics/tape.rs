//! Reverse-mode automatic differentiation over a recorded operation tape.
//!
//! Forward operations append nodes to the tape in topological order;
//! [`Tape::backward`] walks the recording once in reverse, accumulating
//! adjoints in a fixed order so gradient values are reproducible.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{AtlasError, Result};
use crate::numerics::{elu, sigmoid, softplus, Tensor};

static TAPE_COUNTER: AtomicU64 = AtomicU64::new(1);

/// Handle to a value recorded on a [`Tape`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Var {
    tape: u64,
    index: usize,
}

/// Elementwise nonlinearity selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Activation {
    Elu,
    Sigmoid,
    Softplus,
}

impl Activation {
    fn apply(self, v: f64) -> f64 {
        match self {
            Activation::Elu => elu(v),
            Activation::Sigmoid => sigmoid(v),
            Activation::Softplus => softplus(v),
        }
    }
}

#[derive(Debug, Clone)]
enum Op {
    /// Gradient-tracked input (parameter or differentiable input).
    Leaf,
    /// Recorded value with no gradient flow (targets, masks, constants).
    Constant,
    Add(usize, usize),
    Sub(usize, usize),
    Mul(usize, usize),
    Div(usize, usize),
    AddScalar(usize),
    Scale(usize, f64),
    MatVec(usize, usize),
    Concat(usize, usize),
    Sum(usize),
    Activate(usize, Activation),
    Log(usize),
    Clamp(usize, f64, f64),
}

#[derive(Debug)]
struct Node {
    op: Op,
    value: Tensor,
    needs_grad: bool,
}

/// Operation recording for one forward pass.
///
/// Nodes are appended in evaluation order, so index order is a topological
/// order of the computation graph; the backward pass visits each node exactly
/// once by walking indices in reverse.
#[derive(Debug)]
pub struct Tape {
    id: u64,
    nodes: Vec<Node>,
}

impl Default for Tape {
    fn default() -> Self {
        Self::new()
    }
}

impl Tape {
    pub fn new() -> Self {
        Tape {
            id: TAPE_COUNTER.fetch_add(1, Ordering::Relaxed),
            nodes: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn push(&mut self, op: Op, value: Tensor, needs_grad: bool) -> Var {
        let index = self.nodes.len();
        self.nodes.push(Node {
            op,
            value,
            needs_grad,
        });
        Var {
            tape: self.id,
            index,
        }
    }

    fn check(&self, var: Var) -> Result<usize> {
        if var.tape != self.id || var.index >= self.nodes.len() {
            return Err(AtlasError::Usage(
                "variable is not attached to this tape".into(),
            ));
        }
        Ok(var.index)
    }

    fn tensor(&self, index: usize) -> &Tensor {
        &self.nodes[index].value
    }

    /// Gradient-tracked leaf. Gradients are collected for leaves only.
    pub fn leaf(&mut self, value: Tensor) -> Var {
        self.push(Op::Leaf, value, true)
    }

    /// Recorded constant; no gradient flows into it.
    pub fn constant(&mut self, value: Tensor) -> Var {
        self.push(Op::Constant, value, false)
    }

    pub fn constant_vector(&mut self, values: &[f64]) -> Var {
        self.constant(Tensor::vector(values.to_vec()))
    }

    pub fn constant_scalar(&mut self, value: f64) -> Var {
        self.constant(Tensor::scalar(value))
    }

    pub fn value(&self, var: Var) -> Result<&Tensor> {
        let idx = self.check(var)?;
        Ok(self.tensor(idx))
    }

    fn binary_elementwise(
        &mut self,
        op_name: &'static str,
        a: Var,
        b: Var,
        f: impl Fn(f64, f64) -> f64,
        make: impl Fn(usize, usize) -> Op,
    ) -> Result<Var> {
        let (ia, ib) = (self.check(a)?, self.check(b)?);
        let (ta, tb) = (self.tensor(ia), self.tensor(ib));
        if ta.shape() != tb.shape() {
            return Err(AtlasError::Dimension {
                op: op_name,
                left: format!("{:?}", ta.shape()),
                right: format!("{:?}", tb.shape()),
            });
        }
        let values = ta
            .values()
            .iter()
            .zip(tb.values())
            .map(|(&x, &y)| f(x, y))
            .collect();
        let value = Tensor::new(ta.shape().to_vec(), values)?;
        let needs = self.nodes[ia].needs_grad || self.nodes[ib].needs_grad;
        Ok(self.push(make(ia, ib), value, needs))
    }

    pub fn add(&mut self, a: Var, b: Var) -> Result<Var> {
        self.binary_elementwise("add", a, b, |x, y| x + y, Op::Add)
    }

    pub fn sub(&mut self, a: Var, b: Var) -> Result<Var> {
        self.binary_elementwise("sub", a, b, |x, y| x - y, Op::Sub)
    }

    pub fn mul(&mut self, a: Var, b: Var) -> Result<Var> {
        self.binary_elementwise("mul", a, b, |x, y| x * y, Op::Mul)
    }

    pub fn div(&mut self, a: Var, b: Var) -> Result<Var> {
        self.binary_elementwise("div", a, b, |x, y| x / y, Op::Div)
    }

    fn unary(
        &mut self,
        a: Var,
        f: impl Fn(f64) -> f64,
        make: impl Fn(usize) -> Op,
    ) -> Result<Var> {
        let ia = self.check(a)?;
        let ta = self.tensor(ia);
        let values = ta.values().iter().map(|&x| f(x)).collect();
        let value = Tensor::new(ta.shape().to_vec(), values)?;
        let needs = self.nodes[ia].needs_grad;
        Ok(self.push(make(ia), value, needs))
    }

    pub fn add_scalar(&mut self, a: Var, c: f64) -> Result<Var> {
        self.unary(a, |x| x + c, Op::AddScalar)
    }

    pub fn scale(&mut self, a: Var, c: f64) -> Result<Var> {
        self.unary(a, |x| c * x, |i| Op::Scale(i, c))
    }

    /// Elementwise nonlinearity; total on finite inputs.
    pub fn activate(&mut self, a: Var, kind: Activation) -> Result<Var> {
        self.unary(a, |x| kind.apply(x), |i| Op::Activate(i, kind))
    }

    pub fn elu(&mut self, a: Var) -> Result<Var> {
        self.activate(a, Activation::Elu)
    }

    pub fn sigmoid(&mut self, a: Var) -> Result<Var> {
        self.activate(a, Activation::Sigmoid)
    }

    pub fn softplus(&mut self, a: Var) -> Result<Var> {
        self.activate(a, Activation::Softplus)
    }

    pub fn log(&mut self, a: Var) -> Result<Var> {
        self.unary(a, |x| x.ln(), Op::Log)
    }

    /// Clamp into `[lo, hi]`; gradient passes through only where unclamped.
    pub fn clamp(&mut self, a: Var, lo: f64, hi: f64) -> Result<Var> {
        self.unary(a, |x| x.clamp(lo, hi), |i| Op::Clamp(i, lo, hi))
    }

    pub fn clamp_min(&mut self, a: Var, lo: f64) -> Result<Var> {
        self.clamp(a, lo, f64::INFINITY)
    }

    /// Matrix-vector product `w · x` for `w: [m, n]`, `x: [n]`.
    pub fn matvec(&mut self, w: Var, x: Var) -> Result<Var> {
        let (iw, ix) = (self.check(w)?, self.check(x)?);
        let (tw, tx) = (self.tensor(iw), self.tensor(ix));
        if tw.rank() != 2 || tx.rank() != 1 || tw.shape()[1] != tx.shape()[0] {
            return Err(AtlasError::Dimension {
                op: "matvec",
                left: format!("{:?}", tw.shape()),
                right: format!("{:?}", tx.shape()),
            });
        }
        let (m, n) = (tw.shape()[0], tw.shape()[1]);
        let mut values = vec![0.0; m];
        let wv = tw.values();
        let xv = tx.values();
        for i in 0..m {
            let row = &wv[i * n..(i + 1) * n];
            values[i] = row.iter().zip(xv).map(|(&a, &b)| a * b).sum();
        }
        let needs = self.nodes[iw].needs_grad || self.nodes[ix].needs_grad;
        Ok(self.push(Op::MatVec(iw, ix), Tensor::vector(values), needs))
    }

    /// `w · x + a` with `a` broadcast over the output rows.
    pub fn affine(&mut self, x: Var, w: Var, a: Var) -> Result<Var> {
        let wx = self.matvec(w, x)?;
        self.add(wx, a)
    }

    /// Concatenate two vectors.
    pub fn concat(&mut self, a: Var, b: Var) -> Result<Var> {
        let (ia, ib) = (self.check(a)?, self.check(b)?);
        let (ta, tb) = (self.tensor(ia), self.tensor(ib));
        if ta.rank() != 1 || tb.rank() != 1 {
            return Err(AtlasError::Dimension {
                op: "concat",
                left: format!("{:?}", ta.shape()),
                right: format!("{:?}", tb.shape()),
            });
        }
        let mut values = ta.values().to_vec();
        values.extend_from_slice(tb.values());
        let needs = self.nodes[ia].needs_grad || self.nodes[ib].needs_grad;
        Ok(self.push(Op::Concat(ia, ib), Tensor::vector(values), needs))
    }

    /// Sum of all entries, as a scalar node.
    pub fn sum(&mut self, a: Var) -> Result<Var> {
        let ia = self.check(a)?;
        let total: f64 = self.tensor(ia).values().iter().sum();
        let needs = self.nodes[ia].needs_grad;
        Ok(self.push(Op::Sum(ia), Tensor::scalar(total), needs))
    }

    /// Sum of `a ⊙ weights` with constant weights; the masked-sum workhorse.
    pub fn weighted_sum(&mut self, a: Var, weights: &[f64]) -> Result<Var> {
        let w = self.constant_vector(weights);
        let prod = self.mul(a, w)?;
        self.sum(prod)
    }

    /// Reverse pass from a scalar loss. Every leaf receives an entry in the
    /// returned map (zeros when the leaf does not influence the loss);
    /// gradients accumulate by summation over all usage paths.
    pub fn backward(&self, loss: Var) -> Result<Gradients> {
        let loss_idx = self.check(loss)?;
        if !self.tensor(loss_idx).is_scalar() {
            return Err(AtlasError::Usage(format!(
                "backward() requires a scalar loss, got shape {:?}",
                self.tensor(loss_idx).shape()
            )));
        }
        let mut adjoint: Vec<Option<Vec<f64>>> = vec![None; self.nodes.len()];
        adjoint[loss_idx] = Some(vec![1.0]);
        let mut by_node: Vec<Option<Tensor>> = vec![None; self.nodes.len()];

        for i in (0..=loss_idx).rev() {
            let Some(g) = adjoint[i].take() else { continue };
            match &self.nodes[i].op {
                Op::Leaf => {
                    let shape = self.nodes[i].value.shape().to_vec();
                    by_node[i] = Some(Tensor::new(shape, g).expect("adjoint matches leaf shape"));
                }
                Op::Constant => {}
                Op::Add(a, b) => {
                    self.accumulate(&mut adjoint, *a, |acc| add_assign(acc, &g));
                    self.accumulate(&mut adjoint, *b, |acc| add_assign(acc, &g));
                }
                Op::Sub(a, b) => {
                    self.accumulate(&mut adjoint, *a, |acc| add_assign(acc, &g));
                    self.accumulate(&mut adjoint, *b, |acc| sub_assign(acc, &g));
                }
                Op::Mul(a, b) => {
                    let (va, vb) = (self.tensor(*a).values(), self.tensor(*b).values());
                    self.accumulate(&mut adjoint, *a, |acc| {
                        for (k, slot) in acc.iter_mut().enumerate() {
                            *slot += g[k] * vb[k];
                        }
                    });
                    self.accumulate(&mut adjoint, *b, |acc| {
                        for (k, slot) in acc.iter_mut().enumerate() {
                            *slot += g[k] * va[k];
                        }
                    });
                }
                Op::Div(a, b) => {
                    let (va, vb) = (self.tensor(*a).values(), self.tensor(*b).values());
                    self.accumulate(&mut adjoint, *a, |acc| {
                        for (k, slot) in acc.iter_mut().enumerate() {
                            *slot += g[k] / vb[k];
                        }
                    });
                    self.accumulate(&mut adjoint, *b, |acc| {
                        for (k, slot) in acc.iter_mut().enumerate() {
                            *slot -= g[k] * va[k] / (vb[k] * vb[k]);
                        }
                    });
                }
                Op::AddScalar(a) => {
                    self.accumulate(&mut adjoint, *a, |acc| add_assign(acc, &g));
                }
                Op::Scale(a, c) => {
                    let c = *c;
                    self.accumulate(&mut adjoint, *a, |acc| {
                        for (k, slot) in acc.iter_mut().enumerate() {
                            *slot += c * g[k];
                        }
                    });
                }
                Op::MatVec(w, x) => {
                    let tw = self.tensor(*w);
                    let (m, n) = (tw.shape()[0], tw.shape()[1]);
                    let wv = tw.values();
                    let xv = self.tensor(*x).values();
                    self.accumulate(&mut adjoint, *w, |acc| {
                        for i in 0..m {
                            for j in 0..n {
                                acc[i * n + j] += g[i] * xv[j];
                            }
                        }
                    });
                    self.accumulate(&mut adjoint, *x, |acc| {
                        for j in 0..n {
                            let mut s = 0.0;
                            for i in 0..m {
                                s += wv[i * n + j] * g[i];
                            }
                            acc[j] += s;
                        }
                    });
                }
                Op::Concat(a, b) => {
                    let la = self.tensor(*a).len();
                    self.accumulate(&mut adjoint, *a, |acc| add_assign(acc, &g[..la]));
                    self.accumulate(&mut adjoint, *b, |acc| add_assign(acc, &g[la..]));
                }
                Op::Sum(a) => {
                    self.accumulate(&mut adjoint, *a, |acc| {
                        for slot in acc.iter_mut() {
                            *slot += g[0];
                        }
                    });
                }
                Op::Activate(a, kind) => {
                    let out = self.nodes[i].value.values();
                    let vin = self.tensor(*a).values();
                    let kind = *kind;
                    self.accumulate(&mut adjoint, *a, |acc| {
                        for (k, slot) in acc.iter_mut().enumerate() {
                            let d = match kind {
                                // elu'(v) = 1 for v >= 0, exp(v) = elu(v) + 1 below
                                Activation::Elu => {
                                    if vin[k] >= 0.0 {
                                        1.0
                                    } else {
                                        out[k] + 1.0
                                    }
                                }
                                Activation::Sigmoid => out[k] * (1.0 - out[k]),
                                Activation::Softplus => sigmoid(vin[k]),
                            };
                            *slot += g[k] * d;
                        }
                    });
                }
                Op::Log(a) => {
                    let vin = self.tensor(*a).values();
                    self.accumulate(&mut adjoint, *a, |acc| {
                        for (k, slot) in acc.iter_mut().enumerate() {
                            *slot += g[k] / vin[k];
                        }
                    });
                }
                Op::Clamp(a, lo, hi) => {
                    let vin = self.tensor(*a).values();
                    let (lo, hi) = (*lo, *hi);
                    self.accumulate(&mut adjoint, *a, |acc| {
                        for (k, slot) in acc.iter_mut().enumerate() {
                            if vin[k] >= lo && vin[k] <= hi {
                                *slot += g[k];
                            }
                        }
                    });
                }
            }
        }

        // Leaves untouched by the loss still get a (zero) gradient entry.
        for (i, node) in self.nodes.iter().enumerate() {
            if matches!(node.op, Op::Leaf) && by_node[i].is_none() {
                by_node[i] = Some(Tensor::zeros(node.value.shape()));
            }
        }

        Ok(Gradients {
            tape: self.id,
            by_node,
        })
    }

    fn accumulate(
        &self,
        adjoint: &mut [Option<Vec<f64>>],
        target: usize,
        write: impl FnOnce(&mut [f64]),
    ) {
        if !self.nodes[target].needs_grad {
            return;
        }
        let slot = adjoint[target].get_or_insert_with(|| vec![0.0; self.nodes[target].value.len()]);
        write(slot);
    }
}

fn add_assign(acc: &mut [f64], g: &[f64]) {
    for (slot, &v) in acc.iter_mut().zip(g) {
        *slot += v;
    }
}

fn sub_assign(acc: &mut [f64], g: &[f64]) {
    for (slot, &v) in acc.iter_mut().zip(g) {
        *slot -= v;
    }
}

/// Gradient map produced by [`Tape::backward`]; holds one tensor per leaf.
#[derive(Debug)]
pub struct Gradients {
    tape: u64,
    by_node: Vec<Option<Tensor>>,
}

impl Gradients {
    /// Gradient of the loss with respect to a leaf variable.
    pub fn get(&self, var: Var) -> Result<&Tensor> {
        if var.tape != self.tape {
            return Err(AtlasError::Usage(
                "gradient lookup with a variable from another tape".into(),
            ));
        }
        self.by_node
            .get(var.index)
            .and_then(|t| t.as_ref())
            .ok_or_else(|| {
                AtlasError::Usage(format!(
                    "node {} is not a leaf; gradients are kept for leaves only",
                    var.index
                ))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn affine_identity_and_hand_forced() {
        let mut tape = Tape::new();
        let x = tape.leaf(Tensor::vector(vec![1.0, 2.0]));
        let w = tape.constant(Tensor::matrix(2, 2, vec![1.0, 0.0, 0.0, 1.0]).unwrap());
        let a = tape.constant_vector(&[0.0, 0.0]);
        let y = tape.affine(x, w, a).unwrap();
        assert_eq!(tape.value(y).unwrap().values(), &[1.0, 2.0]);

        let mut tape = Tape::new();
        let x = tape.leaf(Tensor::vector(vec![1.0, 1.0]));
        let w = tape.constant(Tensor::matrix(1, 2, vec![2.0, 3.0]).unwrap());
        let a = tape.constant_vector(&[-5.0]);
        let y = tape.affine(x, w, a).unwrap();
        assert_eq!(tape.value(y).unwrap().values(), &[0.0]);
    }

    #[test]
    fn affine_shape_mismatch_names_both_shapes() {
        let mut tape = Tape::new();
        let x = tape.leaf(Tensor::vector(vec![1.0, 2.0, 3.0]));
        let w = tape.constant(Tensor::matrix(2, 2, vec![1.0; 4]).unwrap());
        let a = tape.constant_vector(&[0.0, 0.0]);
        let err = tape.affine(x, w, a).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("[2, 2]") && msg.contains("[3]"), "{msg}");
    }

    #[test]
    fn sigmoid_derivative_at_zero() {
        let mut tape = Tape::new();
        let w = tape.leaf(Tensor::scalar(0.0));
        let s = tape.sigmoid(w).unwrap();
        let grads = tape.backward(s).unwrap();
        assert_relative_eq!(grads.get(w).unwrap().values()[0], 0.25, epsilon = 1e-15);
    }

    #[test]
    fn sum_of_matvec_gradient_is_outer_of_ones_and_x() {
        let mut tape = Tape::new();
        let w = tape.leaf(Tensor::matrix(2, 3, vec![0.5, -1.0, 2.0, 0.0, 1.0, -0.5]).unwrap());
        let x = tape.constant_vector(&[1.0, 2.0, 3.0]);
        let y = tape.matvec(w, x).unwrap();
        let loss = tape.sum(y).unwrap();
        let grads = tape.backward(loss).unwrap();
        assert_eq!(
            grads.get(w).unwrap().values(),
            &[1.0, 2.0, 3.0, 1.0, 2.0, 3.0]
        );
    }

    #[test]
    fn gradient_accumulates_over_usage_paths() {
        // loss = x*x + x  =>  dloss/dx = 2x + 1
        let mut tape = Tape::new();
        let x = tape.leaf(Tensor::scalar(3.0));
        let sq = tape.mul(x, x).unwrap();
        let loss = tape.add(sq, x).unwrap();
        let grads = tape.backward(loss).unwrap();
        assert_relative_eq!(grads.get(x).unwrap().values()[0], 7.0, epsilon = 1e-15);
    }

    #[test]
    fn backward_rejects_cross_tape_and_non_scalar() {
        let mut a = Tape::new();
        let b = Tape::new();
        let x = a.leaf(Tensor::scalar(1.0));
        assert!(matches!(b.backward(x), Err(AtlasError::Usage(_))));

        let v = a.leaf(Tensor::vector(vec![1.0, 2.0]));
        assert!(matches!(a.backward(v), Err(AtlasError::Usage(_))));
    }

    #[test]
    fn unused_leaf_gets_zero_gradient() {
        let mut tape = Tape::new();
        let x = tape.leaf(Tensor::scalar(2.0));
        let unused = tape.leaf(Tensor::vector(vec![1.0, 1.0]));
        let loss = tape.mul(x, x).unwrap();
        let grads = tape.backward(loss).unwrap();
        assert_eq!(grads.get(unused).unwrap().values(), &[0.0, 0.0]);
    }

    #[test]
    fn constants_do_not_collect_gradients() {
        let mut tape = Tape::new();
        let x = tape.leaf(Tensor::scalar(2.0));
        let c = tape.constant_scalar(5.0);
        let loss = tape.mul(x, c).unwrap();
        let grads = tape.backward(loss).unwrap();
        assert!(grads.get(c).is_err());
        assert_eq!(grads.get(x).unwrap().values(), &[5.0]);
    }

    /// Central finite differences on a scalar-valued function of one leaf.
    fn finite_diff(f: impl Fn(&[f64]) -> f64, at: &[f64], h: f64) -> Vec<f64> {
        let mut grad = vec![0.0; at.len()];
        for k in 0..at.len() {
            let mut plus = at.to_vec();
            let mut minus = at.to_vec();
            plus[k] += h;
            minus[k] -= h;
            grad[k] = (f(&plus) - f(&minus)) / (2.0 * h);
        }
        grad
    }

    fn rel_err(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs()).max(1e-8)
    }

    /// Three-layer composition: sum(softplus(W2 · elu(W1·x + b)) / (1 + sig))
    /// checked against central differences with h = 1e-5.
    #[test]
    fn random_composition_matches_finite_differences() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..5 {
            let w1: Vec<f64> = (0..12).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let b1: Vec<f64> = (0..4).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let w2: Vec<f64> = (0..8).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let x: Vec<f64> = (0..3).map(|_| rng.gen_range(-2.0..2.0)).collect();

            let eval = |w1v: &[f64]| -> f64 {
                let mut tape = Tape::new();
                let w1t = tape.leaf(Tensor::matrix(4, 3, w1v.to_vec()).unwrap());
                let b1t = tape.constant_vector(&b1);
                let w2t = tape.constant(Tensor::matrix(2, 4, w2.clone()).unwrap());
                let xt = tape.constant_vector(&x);
                let h1 = tape.affine(xt, w1t, b1t).unwrap();
                let h1 = tape.elu(h1).unwrap();
                let h2 = tape.matvec(w2t, h1).unwrap();
                let sp = tape.softplus(h2).unwrap();
                let sg = tape.sigmoid(h2).unwrap();
                let one = tape.constant_vector(&[1.0, 1.0]);
                let denom = tape.add(one, sg).unwrap();
                let ratio = tape.div(sp, denom).unwrap();
                let loss = tape.sum(ratio).unwrap();
                tape.value(loss).unwrap().item().unwrap()
            };

            let mut tape = Tape::new();
            let w1t = tape.leaf(Tensor::matrix(4, 3, w1.clone()).unwrap());
            let b1t = tape.constant_vector(&b1);
            let w2t = tape.constant(Tensor::matrix(2, 4, w2.clone()).unwrap());
            let xt = tape.constant_vector(&x);
            let h1 = tape.affine(xt, w1t, b1t).unwrap();
            let h1 = tape.elu(h1).unwrap();
            let h2 = tape.matvec(w2t, h1).unwrap();
            let sp = tape.softplus(h2).unwrap();
            let sg = tape.sigmoid(h2).unwrap();
            let one = tape.constant_vector(&[1.0, 1.0]);
            let denom = tape.add(one, sg).unwrap();
            let ratio = tape.div(sp, denom).unwrap();
            let loss = tape.sum(ratio).unwrap();
            let grads = tape.backward(loss).unwrap();
            let analytic = grads.get(w1t).unwrap().values().to_vec();

            let numeric = finite_diff(eval, &w1, 1e-5);
            for (a, n) in analytic.iter().zip(&numeric) {
                assert!(rel_err(*a, *n) < 1e-5, "analytic {a} vs numeric {n}");
            }
        }
    }
}
