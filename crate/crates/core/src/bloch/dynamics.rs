// SPDX-License-Identifier: Apache-2.0

//! Bloch trajectories `⟨σ(t)⟩ = exp(At) ⟨σ(0)⟩`.
//!
//! For a diagonalizable generator the exponential is expanded over the
//! Frobenius covariants `Π_{k≠j} (A − λ_k)/(λ_j − λ_k)`. When two eigenvalues
//! are closer than [`DEGENERACY_GAP`] relative to the spectral radius, or the
//! discriminant classifies the point as a boundary, values come from the
//! Padé exponential instead.

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use super::matrix::{channel_matrix, DynamicalMatrix};
use super::spectrum::{channel_spectrum, Region, SpectralData};
use super::types::{BlochVector, Channel, WalkParams};
use crate::expm::expm3;

/// Relative eigenvalue gap below which the spectral path is not used.
pub const DEGENERACY_GAP: f64 = 1e-6;

/// One exponential mode of `⟨σz(t)⟩ = Re Σ wⱼ e^{λⱼ t}` from `|0⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub lambda: Complex64,
    pub weight: Complex64,
}

/// `Re[(c₀ + c₁t + c₂t²) e^{λt}]` with `Im λ ≥ 0`.
///
/// Conjugate pairs are merged into one term with doubled coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub lambda: Complex64,
    pub coef: [Complex64; 3],
}

impl Term {
    pub fn value(&self, t: f64) -> f64 {
        let [c0, c1, c2] = self.coef;
        ((c0 + (c1 + c2 * t) * t) * (self.lambda * t).exp()).re
    }

    /// `Σ |cᵢ| tⁱ`, a bound on the polynomial factor on `[0, t]`.
    pub fn poly_bound(&self, t: f64) -> f64 {
        let [c0, c1, c2] = self.coef;
        c0.norm() + (c1.norm() + c2.norm() * t) * t
    }

    /// Bound on the derivative of the polynomial factor on `[0, t]`.
    pub fn poly_slope_bound(&self, t: f64) -> f64 {
        self.coef[1].norm() + 2.0 * self.coef[2].norm() * t
    }

    pub fn degree(&self) -> usize {
        self.coef.iter().rposition(|c| *c != Complex64::ZERO).unwrap_or(0)
    }

    pub fn magnitude(&self) -> f64 {
        self.coef.iter().map(|c| c.norm()).sum()
    }

    pub fn is_oscillating(&self) -> bool {
        self.lambda.im > 0.0
    }
}

#[derive(Debug, Clone)]
enum Expansion {
    Modal {
        modes: [Mode; 3],
        covariants: Box<[Matrix3<Complex64>; 3]>,
    },
    /// Confluent form used only for horizons and bounds; values come from
    /// the matrix exponential.
    Degenerate { terms: Vec<Term> },
}

/// Precomputed single-qubit dynamics for one channel and parameter set.
#[derive(Debug, Clone)]
pub struct BlochSystem {
    channel: Channel,
    params: WalkParams,
    matrix: DynamicalMatrix,
    spectrum: SpectralData,
    expansion: Expansion,
    terms: Vec<Term>,
}

/// `[(A − λ_k)(A − λ_l)]₃₃` for an axis channel:
/// `−4Δ² + γ²(1 − r_z²) + (λ_k + λ_l) γ (1 − r_z²) + λ_k λ_l`.
fn printed_bracket(params: &WalkParams, r_z: f64, lk: Complex64, ll: Complex64) -> Complex64 {
    let (g, d) = (params.gamma(), params.delta());
    let w = 1.0 - r_z * r_z;
    Complex64::new(-4.0 * d * d + g * g * w, 0.0) + (lk + ll) * (g * w) + lk * ll
}

fn real_term(lambda: f64, coef: [f64; 3]) -> Term {
    Term {
        lambda: Complex64::new(lambda, 0.0),
        coef: coef.map(|c| Complex64::new(c, 0.0)),
    }
}

impl BlochSystem {
    pub fn new(channel: impl Into<Channel>, params: &WalkParams) -> Self {
        let channel = channel.into();
        let matrix = channel_matrix(&channel, params);
        let spectrum = channel_spectrum(&channel, params);
        let expansion = Self::expand(&channel, params, &matrix, &spectrum);
        let terms = match &expansion {
            Expansion::Modal { modes, .. } => modal_terms(modes),
            Expansion::Degenerate { terms } => terms.clone(),
        };
        Self {
            channel,
            params: *params,
            matrix,
            spectrum,
            expansion,
            terms,
        }
    }

    fn expand(channel: &Channel, params: &WalkParams, matrix: &DynamicalMatrix, spectrum: &SpectralData) -> Expansion {
        let lam = spectrum.eigenvalues;
        let scale = spectrum.max_modulus();
        let near_repeated = spectrum.region == Region::Boundary && spectrum.min_gap() < TRIPLE_SPREAD * scale;
        if scale == 0.0 || near_repeated || spectrum.min_gap() < DEGENERACY_GAP * scale {
            return Expansion::Degenerate {
                terms: confluent_terms(matrix, &lam, TRIPLE_SPREAD * scale),
            };
        }
        let a = matrix.matrix().map(|v| Complex64::new(v, 0.0));
        let ident = Matrix3::<Complex64>::identity();
        let mut covariants = [Matrix3::<Complex64>::zeros(); 3];
        let mut modes = [Mode {
            lambda: Complex64::ZERO,
            weight: Complex64::ZERO,
        }; 3];
        for j in 0..3 {
            let (k, l) = ((j + 1) % 3, (j + 2) % 3);
            let denom = (lam[j] - lam[k]) * (lam[j] - lam[l]);
            let num = (a - ident * lam[k]) * (a - ident * lam[l]);
            covariants[j] = num / denom;
            let weight = match channel {
                Channel::Axis(axis) => printed_bracket(params, axis.z(), lam[k], lam[l]) / denom,
                Channel::Depolarizing => covariants[j][(2, 2)],
            };
            modes[j] = Mode { lambda: lam[j], weight };
        }
        Expansion::Modal {
            modes,
            covariants: Box::new(covariants),
        }
    }

    pub fn channel(&self) -> &Channel {
        &self.channel
    }

    pub fn params(&self) -> &WalkParams {
        &self.params
    }

    pub fn matrix(&self) -> &DynamicalMatrix {
        &self.matrix
    }

    pub fn spectrum(&self) -> &SpectralData {
        &self.spectrum
    }

    /// Modes of `⟨σz(t)⟩`, or `None` if the spectrum is (near-)degenerate.
    pub fn modes(&self) -> Option<&[Mode; 3]> {
        match &self.expansion {
            Expansion::Modal { modes, .. } => Some(modes),
            Expansion::Degenerate { .. } => None,
        }
    }

    /// `⟨σz(t)⟩` as a sum of exponential-polynomial terms. Exact when the
    /// spectrum is separated, a confluent approximation otherwise.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Terms whose coefficients are not negligible against the total.
    pub fn significant_terms(&self) -> Vec<Term> {
        let total: f64 = self.terms.iter().map(Term::magnitude).sum();
        self.terms
            .iter()
            .copied()
            .filter(|t| t.magnitude() > NEGLIGIBLE_WEIGHT * total)
            .collect()
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self.expansion, Expansion::Degenerate { .. })
    }

    /// `⟨σz(t)⟩` from `|0⟩`.
    pub fn sigma_z(&self, t: f64) -> f64 {
        if t == 0.0 {
            return 1.0;
        }
        self.sigma_z_spectral(t).unwrap_or_else(|| self.sigma_z_expm(t))
    }

    /// Spectral-expansion value; `None` when the spectrum is degenerate.
    pub fn sigma_z_spectral(&self, t: f64) -> Option<f64> {
        self.modes()
            .map(|modes| modes.iter().map(|m| (m.weight * (m.lambda * t).exp()).re).sum())
    }

    /// `(exp(At))₃₃` by scaling and squaring.
    pub fn sigma_z_expm(&self, t: f64) -> f64 {
        expm3(&(self.matrix.matrix() * t))[(2, 2)]
    }

    /// `⟨σz(t)⟩ e^{−st}`, evaluated without forming the underflowing factor.
    /// Modes with negligible weight are dropped so that they cannot grow
    /// relative to the scale.
    pub fn sigma_z_scaled(&self, t: f64, s: f64) -> f64 {
        match self.modes() {
            Some(modes) => {
                let total: f64 = modes.iter().map(|m| m.weight.norm()).sum();
                modes
                    .iter()
                    .filter(|m| m.weight.norm() > NEGLIGIBLE_WEIGHT * total)
                    .map(|m| (m.weight * ((m.lambda - s) * t).exp()).re)
                    .sum()
            }
            None => {
                let shifted = self.matrix.matrix() - Matrix3::identity() * s;
                expm3(&(shifted * t))[(2, 2)]
            }
        }
    }

    /// `exp(At) v0`.
    pub fn propagate(&self, v0: &BlochVector, t: f64) -> BlochVector {
        if t == 0.0 {
            return *v0;
        }
        match &self.expansion {
            Expansion::Modal { modes, covariants } => {
                let v = Vector3::new(v0.x, v0.y, v0.z).map(|c| Complex64::new(c, 0.0));
                let mut out = Vector3::<Complex64>::zeros();
                for (m, c) in modes.iter().zip(covariants.iter()) {
                    out += c * v * (m.lambda * t).exp();
                }
                BlochVector::new(out[0].re, out[1].re, out[2].re)
            }
            Expansion::Degenerate { .. } => self.propagate_expm(v0, t),
        }
    }

    pub fn propagate_expm(&self, v0: &BlochVector, t: f64) -> BlochVector {
        let v = expm3(&(self.matrix.matrix() * t)) * Vector3::new(v0.x, v0.y, v0.z);
        BlochVector::new(v[0], v[1], v[2])
    }

    /// Bound on `|d/dt [⟨σz⟩ e^{−st}]|` over `[t, horizon]`.
    ///
    /// With `s = 0` the contraction bound `‖A‖_F` caps the term sum.
    pub fn slope_bound(&self, t: f64, horizon: f64, s: f64) -> f64 {
        let t = t.max(0.0);
        let h = horizon.max(t);
        let safety = if self.is_degenerate() { DEGENERATE_SAFETY } else { 1.0 };
        let modal: f64 = self
            .significant_terms()
            .iter()
            .map(|term| {
                let shifted = term.lambda - s;
                (term.poly_slope_bound(h) + shifted.norm() * term.poly_bound(h)) * (shifted.re * t).exp()
            })
            .sum::<f64>()
            * safety;
        let global = (self.matrix.frobenius_norm() + s.abs()) * (-s * h).exp().max((-s * t).exp());
        modal.min(global)
    }
}

/// Terms below this fraction of the total coefficient mass are ignored when
/// locating dominant modes.
pub const NEGLIGIBLE_WEIGHT: f64 = 1e-12;

/// Root spread, relative to the spectral radius, treated as a triple root.
/// A triple root is only resolved to about the cube root of the rounding
/// error, so this is much looser than [`DEGENERACY_GAP`].
const TRIPLE_SPREAD: f64 = 1e-3;

/// Inflation applied to confluent-form bounds, which are exact only at exact
/// degeneracy.
pub const DEGENERATE_SAFETY: f64 = 2.0;

fn modal_terms(modes: &[Mode; 3]) -> Vec<Term> {
    let zero = Complex64::ZERO;
    if modes[0].lambda.im > 0.0 {
        vec![
            Term {
                lambda: modes[0].lambda,
                coef: [modes[0].weight * 2.0, zero, zero],
            },
            Term {
                lambda: Complex64::new(modes[2].lambda.re, 0.0),
                coef: [Complex64::new(modes[2].weight.re, 0.0), zero, zero],
            },
        ]
    } else {
        modes
            .iter()
            .map(|m| real_term(m.lambda.re, [m.weight.re, 0.0, 0.0]))
            .collect()
    }
}

/// Hermite-interpolation form of `(exp(At))₃₃` for a double or triple root.
fn confluent_terms(matrix: &DynamicalMatrix, lam: &[Complex64; 3], tol: f64) -> Vec<Term> {
    let a = matrix.matrix();
    let pairs = [(0, 1, 2), (0, 2, 1), (1, 2, 0)];
    let &(i, j, k) = pairs
        .iter()
        .min_by(|p, q| {
            let dp = (lam[p.0] - lam[p.1]).norm();
            let dq = (lam[q.0] - lam[q.1]).norm();
            dp.total_cmp(&dq)
        })
        .expect("three pairs");
    let mu = 0.5 * (lam[i].re + lam[j].re);
    let other = lam[k].re;
    let delta = other - mu;
    let spread = lam.iter().map(|l| (l - lam[k]).norm()).fold(0.0, f64::max);
    if spread <= tol {
        let mu = (lam[0].re + lam[1].re + lam[2].re) / 3.0;
        let n = a - Matrix3::identity() * mu;
        let n2 = n * n;
        return vec![real_term(mu, [1.0, n[(2, 2)], 0.5 * n2[(2, 2)]])];
    }
    let n = a - Matrix3::identity() * mu;
    let n2 = n * n;
    let w = n2[(2, 2)] / (delta * delta);
    vec![
        real_term(mu, [1.0 - w, n[(2, 2)] - w * delta, 0.0]),
        real_term(other, [w, 0.0, 0.0]),
    ]
}

/// `exp(At) v0` for a channel.
pub fn propagate(channel: impl Into<Channel>, params: &WalkParams, v0: &BlochVector, t: f64) -> BlochVector {
    BlochSystem::new(channel, params).propagate(v0, t)
}

/// `⟨σz(t)⟩` from `|0⟩` for a channel.
pub fn sigma_z(channel: impl Into<Channel>, params: &WalkParams, t: f64) -> f64 {
    BlochSystem::new(channel, params).sigma_z(t)
}
