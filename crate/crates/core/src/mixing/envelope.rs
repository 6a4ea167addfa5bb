// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;
use std::f64::consts::E;

use crate::bloch::dynamics::DEGENERATE_SAFETY;
use crate::bloch::{BlochSystem, Channel, WalkParams};
use crate::error::{Error, Result};

/// `|⟨σz(t)⟩| ≤ constant · e^{−rate·t}` for all `t ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Envelope {
    pub constant: f64,
    pub rate: f64,
}

impl Envelope {
    /// Envelope from the exponential-polynomial expansion of `⟨σz⟩`.
    ///
    /// Pure exponentials give `C = Σ|wᵢ|` and the slowest decay rate.
    /// Polynomial factors (repeated roots) are absorbed at half the slowest
    /// rate using `max tⁱ e^{−κt} = (i/(eκ))ⁱ`.
    pub fn from_system(sys: &BlochSystem) -> Result<Self> {
        let terms = sys.significant_terms();
        let slowest = terms.iter().map(|t| t.lambda.re).fold(f64::NEG_INFINITY, f64::max);
        let decay_floor = 1e-14 * sys.spectrum().max_modulus();
        if slowest.is_nan() || slowest >= -decay_floor {
            return Err(Error::NoDecay { max_real_part: slowest });
        }
        let rate = -slowest;
        if terms.iter().all(|t| t.degree() == 0) {
            let constant = terms.iter().map(|t| t.coef[0].norm()).sum::<f64>();
            return Ok(Self { constant, rate });
        }
        let target = 0.5 * rate;
        let mut constant = 0.0;
        for term in &terms {
            let kappa = -term.lambda.re - target;
            for (i, c) in term.coef.iter().enumerate() {
                let peak = if i == 0 {
                    1.0
                } else {
                    (i as f64 / (E * kappa)).powi(i as i32)
                };
                constant += c.norm() * peak;
            }
        }
        Ok(Self {
            constant: constant * DEGENERATE_SAFETY,
            rate: target,
        })
    }

    pub fn value(&self, t: f64) -> f64 {
        self.constant * (-self.rate * t).exp()
    }

    /// Time after which the envelope stays below `level`.
    pub fn horizon(&self, level: f64) -> f64 {
        ((self.constant / level).ln() / self.rate).max(0.0)
    }
}

/// Envelope of `⟨σz(t)⟩` for `channel`; fails with [`Error::NoDecay`] when
/// the slowest contributing mode does not decay.
pub fn envelope_bound(channel: impl Into<Channel>, params: &WalkParams) -> Result<Envelope> {
    Envelope::from_system(&BlochSystem::new(channel, params))
}
