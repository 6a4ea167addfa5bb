// SPDX-License-Identifier: Apache-2.0

//! Elementary solutions for `⟨σz(t)⟩` from `|0⟩` in the channels whose
//! dynamics decouple.

use serde::{Deserialize, Serialize};

use super::types::{Channel, DecoherenceAxis, WalkParams};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpecialChannel {
    /// Axis in the y–z plane, `r = (0, ±√(1 − r_z²), r_z)`.
    DephasingFamily { r_z: f64 },
    /// Axis `(1, 0, 0)`.
    BitFlip,
    /// Uniformly randomized axis.
    Depolarizing,
}

impl SpecialChannel {
    pub fn channel(&self) -> Result<Channel> {
        Ok(match *self {
            SpecialChannel::DephasingFamily { r_z } => {
                self.validate()?;
                let r_y = (1.0 - r_z * r_z).max(0.0).sqrt();
                Channel::Axis(DecoherenceAxis::new(0.0, r_y, r_z)?)
            }
            SpecialChannel::BitFlip => Channel::Axis(DecoherenceAxis::BIT_FLIP),
            SpecialChannel::Depolarizing => Channel::Depolarizing,
        })
    }

    fn validate(&self) -> Result<()> {
        if let SpecialChannel::DephasingFamily { r_z } = *self {
            if !(r_z.is_finite() && r_z.abs() <= 1.0) {
                return Err(Error::InvalidChannel {
                    channel: "dephasing_family",
                    requirement: format!("|r_z| <= 1, got {r_z}"),
                });
            }
        }
        Ok(())
    }
}

/// Damping regime of the y–z oscillator when `r_x = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Damping {
    Under,
    Critical,
    Over,
}

pub fn damping(params: &WalkParams) -> Damping {
    let (g, d4) = (params.gamma(), 4.0 * params.delta());
    if g < d4 {
        Damping::Under
    } else if g > d4 {
        Damping::Over
    } else {
        Damping::Critical
    }
}

/// `⟨σz(t)⟩` from the elementary solution of `channel`.
pub fn closed_form_special(channel: &SpecialChannel, params: &WalkParams, t: f64) -> Result<f64> {
    channel.validate()?;
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "time must be finite and >= 0, got {t}"
        )));
    }
    let (g, d) = (params.gamma(), params.delta());
    Ok(match *channel {
        SpecialChannel::BitFlip => (-g * t).exp() * (2.0 * d * t).cos(),
        SpecialChannel::Depolarizing => (-2.0 * g * t / 3.0).exp() * (2.0 * d * t).cos(),
        SpecialChannel::DephasingFamily { r_z } => {
            let tilt = 2.0 * r_z * r_z - 1.0;
            match damping(params) {
                Damping::Under => {
                    let omega = (16.0 * d * d - g * g).sqrt() / 2.0;
                    (-g * t / 2.0).exp() * ((omega * t).cos() + g * tilt / (2.0 * omega) * (omega * t).sin())
                }
                Damping::Critical => (2.0 * d * tilt * t + 1.0) * (-2.0 * d * t).exp(),
                Damping::Over => {
                    let s = (g * g - 16.0 * d * d).sqrt();
                    let (lp, lm) = ((-g + s) / 2.0, (-g - s) / 2.0);
                    let gz = g * r_z * r_z;
                    ((lp + gz) * (lp * t).exp() - (lm + gz) * (lm * t).exp()) / s
                }
            }
        }
    })
}
