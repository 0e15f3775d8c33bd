//! Handover-failure probabilities for macro-to-pico and pico-to-pico moves.
//!
//! A handover fails when the user's path crosses the inner failure circle of
//! radius `r` around the target cell center. For a uniformly random entry
//! angle that happens with probability `(2/pi) acos(sqrt(1 - (r/R)^2))`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};

/// Probability that a macro-to-pico handover into a cell with coverage radius
/// `coverage` and failure radius `hf_radius` fails.
pub fn hf_prob_m2p(hf_radius: f64, coverage: f64) -> Result<f64> {
    if !(coverage > 0.0) {
        return Err(Error::domain(
            "hf_prob_m2p",
            format!("coverage radius must be positive, got {coverage}"),
        ));
    }
    if !(0.0..=coverage).contains(&hf_radius) {
        return Err(Error::domain(
            "hf_prob_m2p",
            format!("failure radius must lie in [0, {coverage}], got {hf_radius}"),
        ));
    }
    Ok(m2p_from_ratio(hf_radius / coverage))
}

// acos(sqrt(1 - x^2)) == asin(x) on [0, 1]; asin keeps precision near x = 0.
fn m2p_from_ratio(ratio: f64) -> f64 {
    (2.0 / PI * ratio.asin()).clamp(0.0, 1.0)
}

/// Largest `r/R` whose macro-to-pico failure probability stays at `max_prob`.
pub fn reliability_ratio(max_prob: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&max_prob) {
        return Err(Error::domain(
            "reliability_ratio",
            format!("probability must lie in [0, 1], got {max_prob}"),
        ));
    }
    Ok((FRAC_PI_2 * max_prob).sin())
}

/// Geometry of a pico-to-pico move: the user leaves cell 1 (coverage `r1`,
/// handover must finish before `r1_exit`) and enters cell 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct P2PGeometry {
    pub source_radius: f64,
    pub source_exit_radius: f64,
    pub target_radius: f64,
    pub target_hf_radius: f64,
    pub center_distance: f64,
    pub prep_time: f64,
    pub speed_min: f64,
    pub speed_max: f64,
}

impl P2PGeometry {
    pub fn validate(&self) -> Result<()> {
        let bad = |reason: String| Err(Error::domain("P2PGeometry", reason));
        if !(self.source_radius > 0.0 && self.source_exit_radius > self.source_radius) {
            return bad(format!(
                "need exit radius {} > coverage radius {} > 0",
                self.source_exit_radius, self.source_radius
            ));
        }
        if !(self.target_hf_radius > 0.0 && self.target_hf_radius < self.target_radius) {
            return bad(format!(
                "need 0 < target failure radius {} < target coverage radius {}",
                self.target_hf_radius, self.target_radius
            ));
        }
        if !(self.prep_time > 0.0) {
            return bad(format!(
                "preparation time must be positive, got {}",
                self.prep_time
            ));
        }
        if !(self.speed_min >= 0.0 && self.speed_min <= self.speed_max) {
            return bad(format!(
                "need 0 <= speed_min {} <= speed_max {}",
                self.speed_min, self.speed_max
            ));
        }
        if !(self.center_distance >= 0.0) {
            return bad(format!(
                "center distance must be >= 0, got {}",
                self.center_distance
            ));
        }
        Ok(())
    }

    /// Speed below which the handover out of the source cell is triggered in time.
    pub fn trigger_speed(&self) -> f64 {
        (self.source_exit_radius - self.source_radius) / self.prep_time
    }

    /// Probability that a uniformly distributed speed is slow enough to trigger.
    pub fn trigger_probability(&self) -> f64 {
        let v = self.trigger_speed();
        if self.speed_max > self.speed_min {
            ((v - self.speed_min) / (self.speed_max - self.speed_min)).clamp(0.0, 1.0)
        } else if v >= self.speed_min {
            1.0
        } else {
            0.0
        }
    }
}

/// Whether the target cell sits at a distance that allows a reliable move:
/// `R1 + r2 <= OO' <= r1' + R2`, both bounds inclusive.
pub fn p2p_feasible(g: &P2PGeometry) -> bool {
    let d = g.center_distance;
    g.source_radius + g.target_hf_radius <= d && d <= g.source_exit_radius + g.target_radius
}

/// Failure probability of a pico-to-pico move: one minus the chance that the
/// handover triggers in time and the path avoids the target failure circle.
pub fn hf_prob_p2p(g: &P2PGeometry) -> f64 {
    let miss_target_circle = 1.0 - m2p_from_ratio((g.target_hf_radius / g.target_radius).min(1.0));
    (1.0 - g.trigger_probability() * miss_target_circle).clamp(0.0, 1.0)
}
