// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::generator::coherent_generator;
use super::linalg::{identity, CMatrix};
use super::state::Superoperator;
use crate::bloch::WalkParams;
use crate::error::{Error, Result};
use crate::sampling::uniform_axis;

/// Smallest accepted sample count.
pub const MIN_SAMPLES: usize = 10_000;
/// Samples drawn from one random stream.
pub const CHUNK_SAMPLES: usize = 1 << 14;

/// Monte Carlo estimate of a generator with per-entry standard errors.
#[derive(Debug, Clone)]
pub struct SampledGenerator {
    pub generator: Superoperator,
    /// Standard error of each entry, real and imaginary parts separately.
    pub standard_error: CMatrix,
    pub samples: usize,
}

impl SampledGenerator {
    /// Largest `|estimate − reference| / SE` over entries, real and
    /// imaginary parts separately. Entries with zero spread must agree to
    /// `1e-12`; a mismatch there counts as infinite.
    pub fn max_z_score(&self, reference: &CMatrix) -> f64 {
        let est = self.generator.matrix();
        let mut worst: f64 = 0.0;
        for ((e, r), se) in est.iter().zip(reference.iter()).zip(self.standard_error.iter()) {
            for (d, s) in [((e.re - r.re).abs(), se.re), ((e.im - r.im).abs(), se.im)] {
                let z = if s > 0.0 {
                    d / s
                } else if d <= 1e-12 {
                    0.0
                } else {
                    f64::INFINITY
                };
                worst = worst.max(z);
            }
        }
        worst
    }
}

#[derive(Clone)]
struct Moments {
    sum: Vec<Complex64>,
    sum_sq: Vec<Complex64>,
}

impl Moments {
    fn zero() -> Self {
        Self {
            sum: vec![Complex64::default(); 16],
            sum_sq: vec![Complex64::default(); 16],
        }
    }

    fn merge(mut self, other: &Moments) -> Self {
        for i in 0..16 {
            self.sum[i] += other.sum[i];
            self.sum_sq[i] += other.sum_sq[i];
        }
        self
    }
}

/// Entries of `(r·σ)* ⊗ (r·σ)` in column-major order.
fn projector_term(r: [f64; 3]) -> [Complex64; 16] {
    let [x, y, z] = r;
    let s = [
        [Complex64::new(z, 0.0), Complex64::new(x, -y)],
        [Complex64::new(x, y), Complex64::new(-z, 0.0)],
    ];
    let mut out = [Complex64::default(); 16];
    for (i, slot) in out.iter_mut().enumerate() {
        let (row, col) = (i % 4, i / 4);
        *slot = s[row / 2][col / 2].conj() * s[row % 2][col % 2];
    }
    out
}

fn chunk_moments(seed: u64, chunk: usize, count: usize) -> Moments {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64);
    let mut m = Moments::zero();
    for _ in 0..count {
        let term = projector_term(uniform_axis(&mut rng).components());
        for (i, c) in term.iter().enumerate() {
            m.sum[i] += c;
            m.sum_sq[i] += Complex64::new(c.re * c.re, c.im * c.im);
        }
    }
    m
}

/// Depolarizing generator with the projector term `(γ/2)(r·σ)* ⊗ (r·σ)`
/// averaged over `samples` area-uniform axes.
///
/// Chunk `k` of [`CHUNK_SAMPLES`] draws uses stream `k` of a ChaCha8 generator
/// seeded with `seed`; partial sums are combined in chunk order, so results
/// do not depend on the thread count.
pub fn depolarizing_generator_via_sampling(params: &WalkParams, samples: usize, seed: u64) -> Result<SampledGenerator> {
    if samples < MIN_SAMPLES {
        return Err(Error::InvalidParameter(format!(
            "need at least {MIN_SAMPLES} samples, got {samples}"
        )));
    }
    let chunks = samples.div_ceil(CHUNK_SAMPLES);
    let partial: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let count = CHUNK_SAMPLES.min(samples - k * CHUNK_SAMPLES);
            chunk_moments(seed, k, count)
        })
        .collect();
    let total = partial.iter().fold(Moments::zero(), Moments::merge);

    let n = samples as f64;
    let w = 0.5 * params.gamma();
    let mut mean = CMatrix::zeros(4, 4);
    let mut se = CMatrix::zeros(4, 4);
    for i in 0..16 {
        let mu = total.sum[i] / n;
        let var = |sq: f64, m: f64| ((sq / n - m * m).max(0.0) * n / (n - 1.0)).sqrt() / n.sqrt();
        mean[i] = mu * w;
        se[i] = Complex64::new(var(total.sum_sq[i].re, mu.re), var(total.sum_sq[i].im, mu.im)) * w;
    }
    let generator = coherent_generator(params) - identity(4) * Complex64::from(w) + mean;
    Ok(SampledGenerator {
        generator: Superoperator::from_matrix(generator),
        standard_error: se,
        samples,
    })
}
