//! Analytic objectives with seeded stochastic gradient oracles.
//!
//! Gradients are pure functions of `(theta, step_index, seed)`: noise and
//! minibatch choices come from the counter-based generator in [`crate::rng`],
//! so any trajectory can be replayed bit for bit.

use alloc::vec;
use alloc::vec::Vec;

use crate::rng;

#[cfg(not(feature = "std"))]
use crate::float::FloatExt;

// Key salts keeping the independent noise streams apart.
const SALT_GRAD_NOISE: u64 = 0x67;
const SALT_MLP_X: u64 = 0x1001;
const SALT_MLP_TEACHER: u64 = 0x1002;
const SALT_MLP_BATCH: u64 = 0x1003;
const SALT_MLP_INIT: u64 = 0x1004;

/// An objective with a (possibly stochastic) gradient oracle.
pub trait Problem {
    /// Number of parameters.
    fn dim(&self) -> usize;

    /// True objective value (never noisy).
    fn loss(&self, theta: &[f64]) -> f64;

    /// Stochastic gradient at `theta`. Deterministic in
    /// `(theta, step_index, seed)`.
    fn grad(&self, theta: &[f64], step_index: u64, seed: u64) -> Vec<f64>;

    /// Loss at the optimum, when known.
    fn optimum_loss(&self) -> Option<f64> {
        None
    }

    /// Conventional starting point.
    fn default_start(&self) -> Vec<f64> {
        vec![0.0; self.dim()]
    }
}

/// Quadratic `f(theta) = 1/2 (theta - p)^T H (theta - p)` with optional
/// per-coordinate Gaussian gradient noise of standard deviation
/// `noise_sigma` (the finite-batch-size noise model; sigma plays the role of
/// `1/sqrt(batch size)` scaled by the per-sample gradient spread).
#[derive(Debug, Clone)]
pub struct Quadratic {
    dim: usize,
    /// Row-major symmetric `dim x dim` matrix.
    hessian: Vec<f64>,
    minimum: Vec<f64>,
    noise_sigma: f64,
}

impl Quadratic {
    /// Full symmetric Hessian. Panics if the matrix is not square of the
    /// minimum's dimension or not symmetric.
    pub fn new(hessian: Vec<f64>, minimum: Vec<f64>, noise_sigma: f64) -> Self {
        let dim = minimum.len();
        assert_eq!(hessian.len(), dim * dim, "hessian must be {dim}x{dim}");
        assert!(noise_sigma >= 0.0, "noise_sigma must be >= 0");
        for i in 0..dim {
            for j in 0..i {
                let (a, b) = (hessian[i * dim + j], hessian[j * dim + i]);
                assert!(
                    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0),
                    "hessian not symmetric at ({i},{j})"
                );
            }
        }
        Self {
            dim,
            hessian,
            minimum,
            noise_sigma,
        }
    }

    /// Diagonal Hessian from its curvatures.
    pub fn diagonal(curvatures: &[f64], minimum: Vec<f64>, noise_sigma: f64) -> Self {
        let dim = curvatures.len();
        assert_eq!(minimum.len(), dim);
        let mut hessian = vec![0.0; dim * dim];
        for (i, &h) in curvatures.iter().enumerate() {
            hessian[i * dim + i] = h;
        }
        Self::new(hessian, minimum, noise_sigma)
    }

    /// `H (theta - p)` without noise.
    pub fn true_grad(&self, theta: &[f64]) -> Vec<f64> {
        assert_eq!(theta.len(), self.dim, "dimension mismatch");
        let d: Vec<f64> = theta
            .iter()
            .zip(&self.minimum)
            .map(|(t, p)| t - p)
            .collect();
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self.hessian[i * self.dim + j] * d[j])
                    .sum()
            })
            .collect()
    }
}

impl Problem for Quadratic {
    fn dim(&self) -> usize {
        self.dim
    }

    fn loss(&self, theta: &[f64]) -> f64 {
        let g = self.true_grad(theta);
        0.5 * theta
            .iter()
            .zip(&self.minimum)
            .zip(&g)
            .map(|((t, p), gi)| (t - p) * gi)
            .sum::<f64>()
    }

    fn grad(&self, theta: &[f64], step_index: u64, seed: u64) -> Vec<f64> {
        let mut g = self.true_grad(theta);
        if self.noise_sigma > 0.0 {
            for (i, gi) in g.iter_mut().enumerate() {
                *gi += self.noise_sigma
                    * rng::gaussian(&[seed, SALT_GRAD_NOISE, step_index, i as u64]);
            }
        }
        g
    }

    fn optimum_loss(&self) -> Option<f64> {
        // Zero at the stated minimum; only meaningful when H is PSD, which
        // holds for the benchmark spectra. Saddle cases report None.
        let psd_diag = (0..self.dim).all(|i| self.hessian[i * self.dim + i] >= 0.0);
        psd_diag.then_some(0.0)
    }
}

/// The classic banana valley `f = (1 - x)^2 + 100 (y - x^2)^2`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rosenbrock;

impl Rosenbrock {
    /// Analytic gradient at `(x, y)`.
    pub fn gradient(theta: &[f64]) -> Vec<f64> {
        assert_eq!(theta.len(), 2, "rosenbrock is 2-dimensional");
        let (x, y) = (theta[0], theta[1]);
        vec![
            -2.0 * (1.0 - x) - 400.0 * x * (y - x * x),
            200.0 * (y - x * x),
        ]
    }
}

impl Problem for Rosenbrock {
    fn dim(&self) -> usize {
        2
    }

    fn loss(&self, theta: &[f64]) -> f64 {
        let (x, y) = (theta[0], theta[1]);
        (1.0 - x) * (1.0 - x) + 100.0 * (y - x * x) * (y - x * x)
    }

    fn grad(&self, theta: &[f64], _step_index: u64, _seed: u64) -> Vec<f64> {
        Self::gradient(theta)
    }

    fn optimum_loss(&self) -> Option<f64> {
        Some(0.0)
    }

    fn default_start(&self) -> Vec<f64> {
        vec![-1.2, 1.0]
    }
}

/// One-hidden-layer dense network with tanh activation and squared loss on a
/// fixed synthetic regression dataset.
///
/// Targets come from a hidden teacher network of the same shape, so the loss
/// is learnable; inputs, teacher weights and minibatch membership are all
/// derived from `data_seed` and frozen at construction time.
#[derive(Debug, Clone)]
pub struct TinyMlp {
    inputs: usize,
    hidden: usize,
    outputs: usize,
    batch: usize,
    data_seed: u64,
    /// Flattened dataset: `samples` rows of `inputs` features.
    xs: Vec<f64>,
    /// Flattened targets: `samples` rows of `outputs` values.
    ys: Vec<f64>,
    samples: usize,
}

impl TinyMlp {
    pub fn new(
        inputs: usize,
        hidden: usize,
        outputs: usize,
        samples: usize,
        batch: usize,
        data_seed: u64,
    ) -> Self {
        assert!(hidden >= 1 && hidden <= 32, "hidden layer limited to 32 units");
        assert!(inputs >= 1 && outputs >= 1 && samples >= 1);
        assert!(batch >= 1 && batch <= samples, "batch must lie in 1..=samples");
        let teacher: Vec<f64> = (0..Self::param_count(inputs, hidden, outputs))
            .map(|k| rng::gaussian(&[data_seed, SALT_MLP_TEACHER, k as u64]))
            .collect();
        let xs: Vec<f64> = (0..samples * inputs)
            .map(|k| rng::gaussian(&[data_seed, SALT_MLP_X, k as u64]))
            .collect();
        let mut mlp = Self {
            inputs,
            hidden,
            outputs,
            batch,
            data_seed,
            xs,
            ys: Vec::new(),
            samples,
        };
        let mut ys = vec![0.0; samples * outputs];
        for s in 0..samples {
            let out = mlp.forward(&teacher, mlp.sample_x(s));
            ys[s * outputs..(s + 1) * outputs].copy_from_slice(&out);
        }
        mlp.ys = ys;
        mlp
    }

    fn param_count(inputs: usize, hidden: usize, outputs: usize) -> usize {
        hidden * inputs + hidden + outputs * hidden + outputs
    }

    fn sample_x(&self, s: usize) -> &[f64] {
        &self.xs[s * self.inputs..(s + 1) * self.inputs]
    }

    fn sample_y(&self, s: usize) -> &[f64] {
        &self.ys[s * self.outputs..(s + 1) * self.outputs]
    }

    // Parameter layout: [w1 (hidden x inputs), b1 (hidden),
    //                    w2 (outputs x hidden), b2 (outputs)].
    fn forward(&self, theta: &[f64], x: &[f64]) -> Vec<f64> {
        let (h, i, o) = (self.hidden, self.inputs, self.outputs);
        let (w1, rest) = theta.split_at(h * i);
        let (b1, rest) = rest.split_at(h);
        let (w2, b2) = rest.split_at(o * h);
        let mut act = vec![0.0; h];
        for r in 0..h {
            let mut z = b1[r];
            for c in 0..i {
                z += w1[r * i + c] * x[c];
            }
            act[r] = z.tanh();
        }
        let mut out = vec![0.0; o];
        for r in 0..o {
            let mut z = b2[r];
            for c in 0..h {
                z += w2[r * h + c] * act[c];
            }
            out[r] = z;
        }
        out
    }

    /// Gradient of `1/2 ||f(x) - y||^2` for one sample, accumulated into
    /// `grad` with weight `w`.
    fn accumulate_sample_grad(&self, theta: &[f64], s: usize, w: f64, grad: &mut [f64]) {
        let (h, i, o) = (self.hidden, self.inputs, self.outputs);
        let x = self.sample_x(s);
        let y = self.sample_y(s);
        let (w1, rest) = theta.split_at(h * i);
        let (b1, rest) = rest.split_at(h);
        let (w2, _b2) = rest.split_at(o * h);

        let mut pre = vec![0.0; h];
        let mut act = vec![0.0; h];
        for r in 0..h {
            let mut z = b1[r];
            for c in 0..i {
                z += w1[r * i + c] * x[c];
            }
            pre[r] = z;
            act[r] = z.tanh();
        }
        let mut err = vec![0.0; o];
        for r in 0..o {
            let mut z = theta[h * i + h + o * h + r]; // b2
            for c in 0..h {
                z += w2[r * h + c] * act[c];
            }
            err[r] = z - y[r];
        }
        // Backprop through the linear head.
        let mut dact = vec![0.0; h];
        for r in 0..o {
            for c in 0..h {
                grad[h * i + h + r * h + c] += w * err[r] * act[c];
                dact[c] += err[r] * w2[r * h + c];
            }
            grad[h * i + h + o * h + r] += w * err[r];
        }
        // Through tanh into the first layer.
        for r in 0..h {
            let dpre = dact[r] * (1.0 - act[r] * act[r]);
            for c in 0..i {
                grad[r * i + c] += w * dpre * x[c];
            }
            grad[h * i + r] += w * dpre;
        }
    }

    /// Mean gradient over an explicit set of sample indices.
    pub fn batch_grad(&self, theta: &[f64], indices: &[usize]) -> Vec<f64> {
        assert_eq!(theta.len(), self.dim(), "dimension mismatch with net spec");
        let mut grad = vec![0.0; self.dim()];
        let w = 1.0 / indices.len() as f64;
        for &s in indices {
            self.accumulate_sample_grad(theta, s, w, &mut grad);
        }
        grad
    }

    /// Minibatch membership for one gradient evaluation (sampling with
    /// replacement; full batch iterates the dataset in order instead).
    pub fn batch_indices(&self, batch_index: u64, seed: u64) -> Vec<usize> {
        if self.batch == self.samples {
            return (0..self.samples).collect();
        }
        (0..self.batch)
            .map(|j| {
                (rng::hash(&[seed, SALT_MLP_BATCH, batch_index, j as u64]) % self.samples as u64)
                    as usize
            })
            .collect()
    }
}

impl Problem for TinyMlp {
    fn dim(&self) -> usize {
        Self::param_count(self.inputs, self.hidden, self.outputs)
    }

    fn loss(&self, theta: &[f64]) -> f64 {
        assert_eq!(theta.len(), self.dim(), "dimension mismatch with net spec");
        let mut total = 0.0;
        for s in 0..self.samples {
            let out = self.forward(theta, self.sample_x(s));
            let y = self.sample_y(s);
            total += 0.5
                * out
                    .iter()
                    .zip(y)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>();
        }
        total / self.samples as f64
    }

    fn grad(&self, theta: &[f64], step_index: u64, seed: u64) -> Vec<f64> {
        let indices = self.batch_indices(step_index, seed);
        self.batch_grad(theta, &indices)
    }

    fn default_start(&self) -> Vec<f64> {
        // Small deterministic init keyed off the dataset seed.
        let scale = 0.5 / (self.inputs as f64).sqrt();
        (0..self.dim())
            .map(|k| scale * rng::gaussian(&[self.data_seed, SALT_MLP_INIT, k as u64]))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn central_diff(problem: &dyn Problem, theta: &[f64], h: f64) -> Vec<f64> {
        (0..theta.len())
            .map(|i| {
                let mut plus = theta.to_vec();
                let mut minus = theta.to_vec();
                plus[i] += h;
                minus[i] -= h;
                (problem.loss(&plus) - problem.loss(&minus)) / (2.0 * h)
            })
            .collect()
    }

    fn max_rel_err(a: &[f64], b: &[f64]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).abs() / x.abs().max(y.abs()).max(1.0))
            .fold(0.0, f64::max)
    }

    #[test]
    fn quadratic_grad_at_minimum_is_zero() {
        let q = Quadratic::diagonal(&[1.0, 2.0], vec![3.0, -1.0], 0.0);
        let g = q.grad(&[3.0, -1.0], 0, 0);
        assert_eq!(g, vec![0.0, 0.0]);
    }

    #[test]
    fn identity_hessian_grad_is_displacement() {
        let q = Quadratic::diagonal(&[1.0, 1.0], vec![0.0, 0.0], 0.0);
        let g = q.grad(&[1.0, 2.0], 0, 0);
        assert_eq!(g, vec![1.0, 2.0]);
    }

    #[test]
    fn noisy_grad_mean_recovers_true_gradient() {
        let sigma = 0.5;
        let q = Quadratic::diagonal(&[1.0, 4.0], vec![0.0, 0.0], sigma);
        let theta = [0.7, -0.3];
        let truth = q.true_grad(&theta);
        let n = 10_000u64;
        let mut mean = vec![0.0; 2];
        for step in 0..n {
            let g = q.grad(&theta, step, 42);
            for (m, gi) in mean.iter_mut().zip(&g) {
                *m += gi / n as f64;
            }
        }
        for (m, t) in mean.iter().zip(&truth) {
            assert!(
                (m - t).abs() < 3.0 * sigma / (n as f64).sqrt(),
                "mean {m} vs true {t}"
            );
        }
    }

    #[test]
    fn noiseless_quadratic_gradient_is_linear() {
        let q = Quadratic::new(
            vec![2.0, 0.5, 0.5, 1.0],
            vec![1.0, -2.0],
            0.0,
        );
        let t1 = [0.3, 1.8];
        let t2 = [-2.0, 0.4];
        let mid: Vec<f64> = t1.iter().zip(&t2).map(|(a, b)| (a + b) / 2.0).collect();
        let (g1, g2, gm) = (q.grad(&t1, 0, 0), q.grad(&t2, 0, 0), q.grad(&mid, 0, 0));
        for i in 0..2 {
            assert!((g1[i] + g2[i] - 2.0 * gm[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn rosenbrock_gradient_known_points() {
        assert_eq!(Rosenbrock::gradient(&[1.0, 1.0]), vec![0.0, 0.0]);
        assert_eq!(Rosenbrock::gradient(&[0.0, 0.0]), vec![-2.0, 0.0]);
    }

    #[test]
    fn rosenbrock_matches_finite_differences() {
        let r = Rosenbrock;
        for k in 0..10u64 {
            let theta = [
                rng::uniform(&[21, k, 0]) * 4.0 - 2.0,
                rng::uniform(&[21, k, 1]) * 4.0 - 2.0,
            ];
            let g = r.grad(&theta, 0, 0);
            let fd = central_diff(&r, &theta, 1e-6);
            assert!(max_rel_err(&g, &fd) < 1e-5, "at {theta:?}");
        }
    }

    #[test]
    fn quadratic_matches_finite_differences() {
        let q = Quadratic::new(vec![2.0, 1.0, 1.0, 2.0], vec![0.5, -0.5], 0.0);
        for k in 0..10u64 {
            let theta = [
                rng::uniform(&[22, k, 0]) * 4.0 - 2.0,
                rng::uniform(&[22, k, 1]) * 4.0 - 2.0,
            ];
            let g = q.grad(&theta, 0, 0);
            let fd = central_diff(&q, &theta, 1e-6);
            assert!(max_rel_err(&g, &fd) < 1e-7, "at {theta:?}");
        }
    }

    #[test]
    fn mlp_full_batch_is_mean_of_per_sample_gradients() {
        let mlp = TinyMlp::new(3, 5, 2, 16, 16, 7);
        let theta = mlp.default_start();
        let full = mlp.grad(&theta, 0, 0);
        let mut mean = vec![0.0; mlp.dim()];
        for s in 0..16 {
            let gs = mlp.batch_grad(&theta, &[s]);
            for (m, g) in mean.iter_mut().zip(&gs) {
                *m += g / 16.0;
            }
        }
        assert!(max_rel_err(&full, &mean) < 1e-12);
    }

    #[test]
    fn mlp_matches_finite_differences() {
        let mlp = TinyMlp::new(3, 4, 2, 12, 12, 11);
        for k in 0..10u64 {
            let theta: Vec<f64> = (0..mlp.dim())
                .map(|i| rng::gaussian(&[23, k, i as u64]) * 0.5)
                .collect();
            let g = mlp.grad(&theta, 0, 0);
            let fd = central_diff(&mlp, &theta, 1e-5);
            assert!(max_rel_err(&g, &fd) < 1e-4, "draw {k}");
        }
    }

    #[test]
    fn mlp_minibatch_gradients_are_reproducible() {
        let mlp = TinyMlp::new(4, 8, 2, 64, 8, 3);
        let theta = mlp.default_start();
        let a = mlp.grad(&theta, 5, 99);
        let b = mlp.grad(&theta, 5, 99);
        assert_eq!(a, b);
        let c = mlp.grad(&theta, 6, 99);
        assert_ne!(a, c);
    }
}
