//! Small fully connected network used as the Q-value approximator.
//!
//! Hidden layers use ReLU, the output layer is affine. Weight matrices are
//! stored row-major with shape `(out, in)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

const MAGIC: &[u8; 4] = b"RLSQ";
const VERSION: u8 = 1;

#[derive(Debug, Error, PartialEq)]
pub enum NetError {
    #[error("network needs at least three layer sizes, all positive")]
    InvalidSizes,
    #[error("expected input of length {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("gradient shapes do not match the network")]
    ShapeMismatch,
    #[error("bad model magic or version")]
    BadHeader,
    #[error("model bytes truncated or malformed")]
    Truncated,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mlp {
    layer_sizes: Vec<usize>,
    weights: Vec<Vec<f32>>,
    biases: Vec<Vec<f32>>,
}

/// Parameter-shaped gradient buffers.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients {
    pub weights: Vec<Vec<f32>>,
    pub biases: Vec<Vec<f32>>,
}

impl Gradients {
    pub fn zeros_like(net: &Mlp) -> Self {
        Gradients {
            weights: net.weights.iter().map(|w| vec![0.0; w.len()]).collect(),
            biases: net.biases.iter().map(|b| vec![0.0; b.len()]).collect(),
        }
    }

    pub fn add_assign(&mut self, other: &Gradients) {
        for (a, b) in self.weights.iter_mut().zip(&other.weights) {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        }
        for (a, b) in self.biases.iter_mut().zip(&other.biases) {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        }
    }

    pub fn scale(&mut self, k: f32) {
        self.weights
            .iter_mut()
            .chain(self.biases.iter_mut())
            .flatten()
            .for_each(|x| *x *= k);
    }

    pub fn is_zero(&self) -> bool {
        self.weights.iter().chain(&self.biases).flatten().all(|&x| x == 0.0)
    }
}

impl Mlp {
    /// Glorot-uniform weights, zero biases.
    pub fn new(layer_sizes: &[usize], seed: u64) -> Result<Self, NetError> {
        if layer_sizes.len() < 3 || layer_sizes.iter().any(|&n| n == 0) {
            return Err(NetError::InvalidSizes);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut weights = Vec::new();
        let mut biases = Vec::new();
        for pair in layer_sizes.windows(2) {
            let (fan_in, fan_out) = (pair[0], pair[1]);
            let limit = (6.0 / (fan_in + fan_out) as f64).sqrt() as f32;
            weights.push((0..fan_in * fan_out).map(|_| rng.gen_range(-limit..=limit)).collect());
            biases.push(vec![0.0; fan_out]);
        }
        Ok(Mlp {
            layer_sizes: layer_sizes.to_vec(),
            weights,
            biases,
        })
    }

    /// Builds a network from explicit parameters; used by tests and loaders.
    pub fn from_parts(
        layer_sizes: Vec<usize>,
        weights: Vec<Vec<f32>>,
        biases: Vec<Vec<f32>>,
    ) -> Result<Self, NetError> {
        if layer_sizes.len() < 2 || layer_sizes.iter().any(|&n| n == 0) {
            return Err(NetError::InvalidSizes);
        }
        let layers = layer_sizes.len() - 1;
        if weights.len() != layers || biases.len() != layers {
            return Err(NetError::ShapeMismatch);
        }
        for (l, pair) in layer_sizes.windows(2).enumerate() {
            if weights[l].len() != pair[0] * pair[1] || biases[l].len() != pair[1] {
                return Err(NetError::ShapeMismatch);
            }
        }
        Ok(Mlp {
            layer_sizes,
            weights,
            biases,
        })
    }

    pub fn layer_sizes(&self) -> &[usize] {
        &self.layer_sizes
    }

    pub fn weights(&self) -> &[Vec<f32>] {
        &self.weights
    }

    pub fn biases(&self) -> &[Vec<f32>] {
        &self.biases
    }

    pub fn weights_mut(&mut self) -> &mut [Vec<f32>] {
        &mut self.weights
    }

    pub fn biases_mut(&mut self) -> &mut [Vec<f32>] {
        &mut self.biases
    }

    /// Number of weight layers.
    pub fn depth(&self) -> usize {
        self.weights.len()
    }

    pub fn input_len(&self) -> usize {
        self.layer_sizes[0]
    }

    pub fn output_len(&self) -> usize {
        *self.layer_sizes.last().expect("non-empty")
    }

    pub fn param_count(&self) -> usize {
        self.weights.iter().map(Vec::len).sum::<usize>() + self.biases.iter().map(Vec::len).sum::<usize>()
    }

    /// Layer count times input width times output width. Hidden widths do
    /// not enter; see [`Mlp::param_count`] for the true size.
    pub fn complexity(&self) -> u64 {
        (self.depth() * self.input_len() * self.output_len()) as u64
    }

    fn check_input(&self, input: &[f32]) -> Result<(), NetError> {
        if input.len() != self.input_len() {
            return Err(NetError::DimensionMismatch {
                expected: self.input_len(),
                actual: input.len(),
            });
        }
        Ok(())
    }

    /// Activations of every layer, input first.
    fn activations(&self, input: &[f32]) -> Vec<Vec<f32>> {
        let last = self.depth() - 1;
        let mut acts = vec![input.to_vec()];
        for l in 0..self.depth() {
            let x = &acts[l];
            let n_in = self.layer_sizes[l];
            let mut y = self.biases[l].clone();
            for (o, yo) in y.iter_mut().enumerate() {
                let row = &self.weights[l][o * n_in..(o + 1) * n_in];
                *yo += row.iter().zip(x).map(|(w, v)| w * v).sum::<f32>();
                if l != last {
                    *yo = yo.max(0.0);
                }
            }
            acts.push(y);
        }
        acts
    }

    pub fn forward(&self, input: &[f32]) -> Result<Vec<f32>, NetError> {
        self.check_input(input)?;
        Ok(self.activations(input).pop().expect("output layer"))
    }

    /// Reverse-mode gradients of `loss` with respect to every parameter,
    /// given `output_gradient = dloss/doutput` at `input`.
    pub fn backward(&self, input: &[f32], output_gradient: &[f32]) -> Result<Gradients, NetError> {
        self.check_input(input)?;
        if output_gradient.len() != self.output_len() {
            return Err(NetError::DimensionMismatch {
                expected: self.output_len(),
                actual: output_gradient.len(),
            });
        }
        let acts = self.activations(input);
        let mut grads = Gradients::zeros_like(self);
        let mut delta = output_gradient.to_vec();
        for l in (0..self.depth()).rev() {
            let n_in = self.layer_sizes[l];
            let x = &acts[l];
            for (o, &d) in delta.iter().enumerate() {
                grads.biases[l][o] = d;
                let row = &mut grads.weights[l][o * n_in..(o + 1) * n_in];
                row.iter_mut().zip(x).for_each(|(g, v)| *g = d * v);
            }
            if l == 0 {
                break;
            }
            // Back through W then the ReLU of layer l-1 (active where output > 0).
            let mut next = vec![0.0f32; n_in];
            for (o, &d) in delta.iter().enumerate() {
                let row = &self.weights[l][o * n_in..(o + 1) * n_in];
                next.iter_mut().zip(row).for_each(|(n, w)| *n += w * d);
            }
            for (n, &a) in next.iter_mut().zip(x) {
                if a <= 0.0 {
                    *n = 0.0;
                }
            }
            delta = next;
        }
        Ok(grads)
    }

    pub fn sgd_step(&mut self, grads: &Gradients, learning_rate: f32) -> Result<(), NetError> {
        let shapes_match = grads.weights.len() == self.weights.len()
            && grads.weights.iter().zip(&self.weights).all(|(g, w)| g.len() == w.len())
            && grads.biases.iter().zip(&self.biases).all(|(g, b)| g.len() == b.len());
        if !shapes_match {
            return Err(NetError::ShapeMismatch);
        }
        for (w, g) in self.weights.iter_mut().zip(&grads.weights) {
            w.iter_mut().zip(g).for_each(|(p, d)| *p -= learning_rate * d);
        }
        for (b, g) in self.biases.iter_mut().zip(&grads.biases) {
            b.iter_mut().zip(g).for_each(|(p, d)| *p -= learning_rate * d);
        }
        Ok(())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(9 + 4 * (self.layer_sizes.len() + self.param_count()));
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.extend_from_slice(&(self.layer_sizes.len() as u32).to_le_bytes());
        for &n in &self.layer_sizes {
            out.extend_from_slice(&(n as u32).to_le_bytes());
        }
        for (w, b) in self.weights.iter().zip(&self.biases) {
            for x in w.iter().chain(b) {
                out.extend_from_slice(&x.to_le_bytes());
            }
        }
        out
    }

    /// Parses a model and returns it with the number of bytes consumed.
    pub fn from_bytes(bytes: &[u8]) -> Result<(Self, usize), NetError> {
        let mut r = ByteReader { bytes, pos: 0 };
        if r.take(4)? != MAGIC || r.take(1)?[0] != VERSION {
            return Err(NetError::BadHeader);
        }
        let count = r.u32()? as usize;
        if count < 2 || count > 64 {
            return Err(NetError::Truncated);
        }
        let sizes = (0..count).map(|_| r.u32().map(|n| n as usize)).collect::<Result<Vec<_>, _>>()?;
        let mut weights = Vec::new();
        let mut biases = Vec::new();
        for pair in sizes.windows(2) {
            weights.push(r.f32s(pair[0] * pair[1])?);
            biases.push(r.f32s(pair[1])?);
        }
        let net = Mlp::from_parts(sizes, weights, biases).map_err(|_| NetError::Truncated)?;
        Ok((net, r.pos))
    }
}

struct ByteReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> ByteReader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], NetError> {
        let end = self.pos.checked_add(n).ok_or(NetError::Truncated)?;
        let s = self.bytes.get(self.pos..end).ok_or(NetError::Truncated)?;
        self.pos = end;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32, NetError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().expect("4 bytes")))
    }

    fn f32s(&mut self, n: usize) -> Result<Vec<f32>, NetError> {
        let raw = self.take(n.checked_mul(4).ok_or(NetError::Truncated)?)?;
        Ok(raw
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes(c.try_into().expect("4 bytes")))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_rules() {
        let a = Mlp::new(&[7, 16, 16, 7], 3).unwrap();
        let b = Mlp::new(&[7, 16, 16, 7], 3).unwrap();
        assert_eq!(a, b);
        assert!(a.biases().iter().flatten().all(|&x| x == 0.0));
        assert_eq!(a.param_count(), 519);
        assert_eq!(a.depth(), 3);
        let lim = (6.0f32 / 23.0).sqrt();
        assert!(a.weights()[0].iter().all(|w| w.abs() <= lim));
        assert_eq!(Mlp::new(&[7, 7], 0), Err(NetError::InvalidSizes));
        assert_eq!(Mlp::new(&[7, 0, 7], 0), Err(NetError::InvalidSizes));
    }

    #[test]
    fn forward_small_cases() {
        let zero = Mlp::from_parts(vec![2, 3, 2], vec![vec![0.0; 6], vec![0.0; 6]], vec![vec![0.0; 3], vec![0.0; 2]]).unwrap();
        assert_eq!(zero.forward(&[1.0, -2.0]).unwrap(), vec![0.0, 0.0]);

        let unit = Mlp::from_parts(vec![1, 1, 1], vec![vec![1.0], vec![1.0]], vec![vec![0.0], vec![0.0]]).unwrap();
        assert_eq!(unit.forward(&[-5.0]).unwrap(), vec![0.0]);
        assert_eq!(unit.forward(&[2.5]).unwrap(), vec![2.5]);
        assert_eq!(
            unit.forward(&[1.0, 2.0]),
            Err(NetError::DimensionMismatch { expected: 1, actual: 2 })
        );
    }

    #[test]
    fn zero_output_gradient_gives_zero_gradients() {
        let net = Mlp::new(&[4, 8, 3], 1).unwrap();
        let g = net.backward(&[0.1, 0.2, 0.3, 0.4], &[0.0; 3]).unwrap();
        assert!(g.is_zero());
    }

    #[test]
    fn sgd_identities() {
        let mut net = Mlp::new(&[3, 5, 2], 9).unwrap();
        let before = net.clone();
        net.sgd_step(&Gradients::zeros_like(&net), 0.5).unwrap();
        assert_eq!(net, before);
        let grads = Gradients {
            weights: net.weights().to_vec(),
            biases: net.biases().to_vec(),
        };
        net.sgd_step(&grads, 1.0).unwrap();
        assert!(net.weights().iter().flatten().all(|&w| w == 0.0));
    }

    #[test]
    fn complexity_is_layers_times_io() {
        let three = Mlp::new(&[8, 16, 16, 4], 0).unwrap();
        assert_eq!(three.complexity(), 96);
        let five = Mlp::new(&[8, 16, 16, 16, 16, 4], 0).unwrap();
        assert_eq!(five.complexity(), 160);
        let one = Mlp::from_parts(vec![1, 1], vec![vec![1.0]], vec![vec![0.0]]).unwrap();
        assert_eq!(one.complexity(), 1);
    }

    #[test]
    fn fits_identity_regression() {
        let mut net = Mlp::new(&[1, 8, 1], 5).unwrap();
        let xs: Vec<f32> = (0..16).map(|i| i as f32 / 15.0).collect();
        let loss = |n: &Mlp| {
            xs.iter()
                .map(|&x| (n.forward(&[x]).unwrap()[0] - x).powi(2))
                .sum::<f32>()
                / xs.len() as f32
        };
        let mut losses = vec![loss(&net)];
        for _ in 0..10 {
            let mut g = Gradients::zeros_like(&net);
            for &x in &xs {
                let y = net.forward(&[x]).unwrap()[0];
                g.add_assign(&net.backward(&[x], &[2.0 * (y - x)]).unwrap());
            }
            g.scale(1.0 / xs.len() as f32);
            net.sgd_step(&g, 0.1).unwrap();
            losses.push(loss(&net));
        }
        assert!(losses.windows(2).all(|w| w[1] < w[0]), "{losses:?}");
        assert!(losses[10] <= 0.5 * losses[0], "{losses:?}");
    }

    #[test]
    fn bytes_roundtrip_and_errors() {
        let net = Mlp::new(&[7, 16, 16, 7], 2).unwrap();
        let bytes = net.to_bytes();
        let (back, used) = Mlp::from_bytes(&bytes).unwrap();
        assert_eq!(back, net);
        assert_eq!(used, bytes.len());
        assert_eq!(Mlp::from_bytes(&bytes[..bytes.len() - 1]), Err(NetError::Truncated));
        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert_eq!(Mlp::from_bytes(&bad), Err(NetError::BadHeader));
    }
}
