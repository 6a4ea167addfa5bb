// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Tolerance on `|r|^2 - 1` accepted for a decoherence axis.
pub const AXIS_TOLERANCE: f64 = 1e-12;

/// Unit vector on the Bloch sphere along which each qubit is projectively
/// measured.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecoherenceAxis {
    x: f64,
    y: f64,
    z: f64,
}

impl DecoherenceAxis {
    /// Phase flip (dephasing in the computational basis).
    pub const DEPHASING: Self = Self { x: 0.0, y: 0.0, z: 1.0 };
    /// Bit flip: measurement along the Hamiltonian axis.
    pub const BIT_FLIP: Self = Self { x: 1.0, y: 0.0, z: 0.0 };
    /// Bit-phase flip.
    pub const BIT_PHASE_FLIP: Self = Self { x: 0.0, y: 1.0, z: 0.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm_sq = x * x + y * y + z * z;
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > AXIS_TOLERANCE {
            return Err(Error::AxisNotNormalized { norm_sq });
        }
        Ok(Self { x, y, z })
    }

    /// Rescales an arbitrary non-zero vector onto the sphere.
    pub fn normalized(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::AxisNotNormalized { norm_sq: norm * norm });
        }
        Self::new(x / norm, y / norm, z / norm)
    }

    /// `r = (sinθ cosφ, sinθ sinφ, cosθ)` with `θ ∈ [0, π]`, `φ ∈ [0, 2π]`.
    pub fn from_angles(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(invalid(format!("theta = {theta} outside [0, pi]")));
        }
        if !(0.0..=std::f64::consts::TAU).contains(&phi) {
            return Err(invalid(format!("phi = {phi} outside [0, 2pi]")));
        }
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self::new(st * cp, st * sp, ct)
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// Polar angles `(θ, φ)` with `φ ∈ [0, 2π)`.
    pub fn angles(&self) -> (f64, f64) {
        let theta = self.z.clamp(-1.0, 1.0).acos();
        let mut phi = self.y.atan2(self.x);
        if phi < 0.0 {
            phi += std::f64::consts::TAU;
        }
        (theta, phi)
    }

    /// Representative with all components non-negative. `⟨σz(t)⟩` depends on
    /// the axis only through `r_x²` and `r_z²`, so this leaves it unchanged.
    pub fn canonical(&self) -> Self {
        Self {
            x: self.x.abs(),
            y: self.y.abs(),
            z: self.z.abs(),
        }
    }
}

/// Hopping amplitude `Δ` and decoherence rate `γ`, both in inverse time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WalkParams {
    delta: f64,
    gamma: f64,
}

impl WalkParams {
    pub fn new(delta: f64, gamma: f64) -> Result<Self> {
        if !(delta.is_finite() && delta > 0.0) {
            return Err(invalid(format!("hopping amplitude must be > 0, got {delta}")));
        }
        if !(gamma.is_finite() && gamma >= 0.0) {
            return Err(invalid(format!("decoherence rate must be >= 0, got {gamma}")));
        }
        Ok(Self { delta, gamma })
    }

    /// `Δ = 1`, the natural time unit.
    pub fn with_ratio(gamma_over_delta: f64) -> Result<Self> {
        Self::new(1.0, gamma_over_delta)
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn ratio(&self) -> f64 {
        self.gamma / self.delta
    }
}

/// Expectations `(⟨σx⟩, ⟨σy⟩, ⟨σz⟩)` of a single qubit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    /// The walker's starting qubit state `|0⟩`.
    pub const GROUND: Self = Self { x: 0.0, y: 0.0, z: 1.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

/// A single-qubit decoherence channel driving the Bloch dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Channel {
    /// Projective measurement along a fixed axis.
    Axis(DecoherenceAxis),
    /// Measurement along a uniformly randomized axis.
    Depolarizing,
}

impl Channel {
    pub fn axis(&self) -> Option<&DecoherenceAxis> {
        match self {
            Channel::Axis(a) => Some(a),
            Channel::Depolarizing => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Channel::Axis(_) => "axis",
            Channel::Depolarizing => "depolarizing",
        }
    }
}

impl From<DecoherenceAxis> for Channel {
    fn from(axis: DecoherenceAxis) -> Self {
        Channel::Axis(axis)
    }
}
