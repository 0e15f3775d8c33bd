//! Link gains, SINR and Shannon rate.

use rand::Rng;
use rand_distr::{Distribution, Exp1, Gamma};

use crate::error::{Error, Result};
use crate::scenario::{dbm_to_mw, CellId, Fading, Scenario, UserId};

/// Power-law path gain `ref_gain * d^-exponent`, with distances under the
/// 1 m reference clamped to it.
pub fn path_gain(distance: f64, exponent: f64, ref_gain: f64) -> f64 {
    ref_gain * distance.max(1.0).powf(-exponent)
}

/// Small-scale fading power gains with unit mean.
#[derive(Debug, Clone, Copy)]
pub enum FadingSampler {
    Exponential,
    Gamma(Gamma<f64>),
}

impl FadingSampler {
    pub fn new(kind: Fading, nakagami_m: f64) -> Result<Self> {
        match kind {
            Fading::Rayleigh => Ok(FadingSampler::Exponential),
            Fading::Nakagami => Gamma::new(nakagami_m, 1.0 / nakagami_m)
                .map(FadingSampler::Gamma)
                .map_err(|e| Error::field("nakagami_m", e.to_string())),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            FadingSampler::Exponential => Exp1.sample(rng),
            FadingSampler::Gamma(g) => g.sample(rng),
        }
    }
}

/// Rayleigh fading power gain: exponential with unit mean.
pub fn sample_fading<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    Exp1.sample(rng)
}

/// SINR of serving cell `serving` given per-cell transmit powers (mW), the
/// user's gains towards each cell and the noise power (mW). Every other cell
/// interferes.
pub fn sinr_from_gains(powers_mw: &[f64], gains: &[f64], serving: usize, noise_mw: f64) -> f64 {
    let signal = powers_mw[serving] * gains[serving];
    let interference: f64 = powers_mw
        .iter()
        .zip(gains)
        .enumerate()
        .filter(|(k, _)| *k != serving)
        .map(|(_, (p, g))| p * g)
        .sum();
    signal / (interference + noise_mw)
}

/// SINR of `user` served by `cell`, computed from the scenario's gains.
pub fn sinr(user: UserId, cell: CellId, scenario: &Scenario) -> f64 {
    let powers: Vec<f64> = scenario.cells().iter().map(|c| c.power_mw()).collect();
    let noise = dbm_to_mw(scenario.config().noise_power);
    sinr_from_gains(&powers, &scenario.gains()[user.0], cell.0, noise)
}

/// `W log2(1 + sinr)` in bps.
pub fn shannon_rate(sinr: f64, bandwidth: f64) -> f64 {
    bandwidth * sinr.ln_1p() / std::f64::consts::LN_2
}
