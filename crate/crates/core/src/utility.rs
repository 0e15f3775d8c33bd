//! Context-aware utilities.
//!
//! Users value a cell by how far its rate sits above or below their device's
//! target rate, plus a load term. Small cells value a user by how long it will
//! stay (`cos theta / V`), how congested its current cell is, and how urgent
//! its traffic is (`1 / tau`).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matching::Matching;
use crate::scenario::{CellId, LoadSign, LogBase, Scenario, Shape, UserId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeviceClass {
    Laptop,
    Tablet,
    Smartphone,
}

impl DeviceClass {
    pub const ALL: [DeviceClass; 3] = [
        DeviceClass::Laptop,
        DeviceClass::Tablet,
        DeviceClass::Smartphone,
    ];

    /// Typical screen diagonal in inches.
    pub fn screen_inches(self) -> f64 {
        match self {
            DeviceClass::Laptop => 17.0,
            DeviceClass::Tablet => 10.0,
            DeviceClass::Smartphone => 4.5,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            DeviceClass::Laptop => "laptop",
            DeviceClass::Tablet => "tablet",
            DeviceClass::Smartphone => "smartphone",
        }
    }
}

impl fmt::Display for DeviceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DeviceClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "laptop" => Ok(DeviceClass::Laptop),
            "tablet" => Ok(DeviceClass::Tablet),
            "smartphone" => Ok(DeviceClass::Smartphone),
            other => Err(Error::domain(
                "target_rate",
                format!("unknown device class `{other}`"),
            )),
        }
    }
}

/// Typical target rate in bps for a device class.
pub fn target_rate(class: DeviceClass) -> f64 {
    match class {
        DeviceClass::Laptop => 1000e3,
        DeviceClass::Tablet => 600e3,
        DeviceClass::Smartphone => 400e3,
    }
}

/// Target rate looked up by class name.
pub fn target_rate_by_name(name: &str) -> Result<f64> {
    Ok(target_rate(name.parse()?))
}

/// Quality of service after `t` ms for traffic of urgency `tau` ms.
pub fn qos_decay(t: f64, tau: f64) -> f64 {
    1.0 / (1.0 + (t - tau).exp())
}

/// Coefficients shared by every user and cell utility evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UtilityParams {
    pub gamma: f64,
    pub rate_norm: f64,
    pub load_sign: LoadSign,
    pub log_base: LogBase,
    pub offload_term: bool,
}

impl UtilityParams {
    pub fn from_config(config: &crate::scenario::Config) -> Self {
        Self {
            gamma: config.gamma,
            rate_norm: config.rate_norm,
            load_sign: config.load_sign,
            log_base: config.log_base,
            offload_term: config.offload_term,
        }
    }
}

/// Rate-dependent part of the user utility.
pub fn rate_term(rate: f64, target: f64, rate_norm: f64, shape: Shape) -> f64 {
    if rate >= target {
        ((rate - target) / rate_norm).powf(shape.alpha)
    } else {
        -shape.lambda * ((target - rate) / rate_norm).powf(shape.beta)
    }
}

/// Load-dependent part of the user utility for a cell with `quota` slots of
/// which `load` are taken by other users.
pub fn load_term(quota: usize, load: usize, params: &UtilityParams) -> f64 {
    let free = quota as f64 - load as f64;
    match params.load_sign {
        LoadSign::Literal => -params.gamma * free,
        LoadSign::Prose => params.gamma * free,
    }
}

/// Utility user `i` expects from cell `j` under the current matching. The
/// load `m_j` counts the users already on `j` other than `i`.
pub fn user_utility(
    matching: &Matching,
    user: UserId,
    cell: CellId,
    scenario: &Scenario,
    params: &UtilityParams,
) -> f64 {
    let ue = scenario.user(user);
    let rate = scenario.rate(user, cell);
    let others = matching.load(cell) - usize::from(matching.cell_of(user) == cell);
    rate_term(rate, ue.target_rate, params.rate_norm, ue.shape)
        + load_term(scenario.cell(cell).quota, others, params)
}

/// Cell utility from raw context values. `prev_load`/`prev_quota` describe the
/// cell the user is currently served by.
pub fn scbs_utility_value(
    cos_theta: f64,
    speed: f64,
    prev_load: usize,
    prev_quota: usize,
    urgency: f64,
    params: &UtilityParams,
) -> f64 {
    let bracket = if params.offload_term {
        1.0 + params
            .log_base
            .log(prev_load.max(1) as f64 / prev_quota as f64)
    } else {
        1.0
    };
    cos_theta / speed * bracket / urgency
}

/// Utility pico `j` gains by serving user `i`, with the offloading bracket read
/// from the load of `i`'s current serving cell.
pub fn scbs_utility(
    matching: &Matching,
    cell: CellId,
    user: UserId,
    scenario: &Scenario,
    params: &UtilityParams,
) -> f64 {
    let prev = matching.cell_of(user);
    scbs_utility_from(prev, matching.load(prev), cell, user, scenario, params)
}

/// Same as [`scbs_utility`] with an explicit previous cell and its load.
pub fn scbs_utility_from(
    prev: CellId,
    prev_load: usize,
    cell: CellId,
    user: UserId,
    scenario: &Scenario,
    params: &UtilityParams,
) -> f64 {
    let ue = scenario.user(user);
    scbs_utility_value(
        ue.direction(cell).cos(),
        ue.speed,
        prev_load,
        scenario.cell(prev).quota,
        ue.urgency_ms,
        params,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_3;

    fn params(gamma: f64) -> UtilityParams {
        UtilityParams {
            gamma,
            rate_norm: 1e6,
            load_sign: LoadSign::Literal,
            log_base: LogBase::Natural,
            offload_term: true,
        }
    }

    #[test]
    fn qos_examples() {
        assert_eq!(qos_decay(3.0, 3.0), 0.5);
        assert!((qos_decay(0.0, 5.0) - 0.99331).abs() < 1e-5);
        let mut last = 1.0;
        for k in 0..100 {
            let q = qos_decay(k as f64 * 0.1, 2.0);
            assert!(q < last);
            last = q;
        }
    }

    #[test]
    fn qos_drops_by_about_exp_minus_tau_over_two_tau() {
        for tau in [6.0, 8.0, 12.0] {
            let ratio = qos_decay(2.0 * tau, tau) / qos_decay(0.0, tau);
            let expected = (-tau).exp();
            assert!((ratio / expected - 1.0).abs() < 0.01, "tau={tau}");
        }
    }

    #[test]
    fn target_rates() {
        assert_eq!(target_rate(DeviceClass::Laptop), 1000e3);
        assert_eq!(target_rate(DeviceClass::Tablet), 600e3);
        assert_eq!(target_rate(DeviceClass::Smartphone), 400e3);
        assert_eq!(target_rate_by_name("Tablet").unwrap(), 600e3);
        assert!(target_rate_by_name("watch").is_err());
    }

    #[test]
    fn user_utility_examples() {
        let p = params(0.0);
        for alpha in [0.5, 1.0, 2.0, 3.7] {
            let shape = Shape::new(alpha, 1.0, 1.0);
            let u = rate_term(1.4e6, 0.4e6, p.rate_norm, shape) + load_term(4, 1, &p);
            assert!((u - 1.0).abs() < 1e-12);
        }

        let p = params(1.0);
        let shape = Shape::new(2.0, 2.0, 2.0);
        let hi = rate_term(1e6, 1e6, p.rate_norm, shape) + load_term(4, 2, &p);
        assert_eq!(hi, -2.0);

        let p = params(0.0);
        let shape = Shape::new(1.0, 1.0, 2.0);
        let u = rate_term(0.5e6, 1e6, p.rate_norm, shape) + load_term(4, 0, &p);
        assert!((u + 1.0).abs() < 1e-12);
    }

    #[test]
    fn rate_term_continuous_and_increasing() {
        let shape = Shape::new(0.7, 1.6, 1.3);
        let target = 6e5;
        let below = rate_term(target - 1e-3, target, 1e6, shape);
        let above = rate_term(target + 1e-3, target, 1e6, shape);
        assert!(below.abs() < 1e-6 && above.abs() < 1e-3);
        let mut last = f64::NEG_INFINITY;
        for k in 0..400 {
            let v = rate_term(k as f64 * 5e3, target, 1e6, shape);
            assert!(v > last);
            last = v;
        }
    }

    #[test]
    fn load_term_signs() {
        let lit = params(1.0);
        assert!(load_term(4, 3, &lit) > load_term(4, 1, &lit));
        let prose = UtilityParams {
            load_sign: LoadSign::Prose,
            ..lit
        };
        assert!(load_term(4, 3, &prose) < load_term(4, 1, &prose));
        assert_eq!(load_term(4, 4, &prose), 0.0);
    }

    #[test]
    fn scbs_examples() {
        let p = params(1.0);
        assert_eq!(scbs_utility_value(1.0, 1.0, 4, 4, 1.0, &p), 1.0);
        assert_eq!(scbs_utility_value(1.0, 1.0, 1, 1, 2.0, &p), 0.5);
        let v = scbs_utility_value(FRAC_PI_3.cos(), 2.0, 2, 4, 1.0, &p);
        assert!((v - 0.25 * (1.0 + 0.5f64.ln())).abs() < 1e-12);
        assert!((v - 0.0767).abs() < 1e-4);
        // empty previous cell counts as one user
        let v = scbs_utility_value(1.0, 1.0, 0, 4, 1.0, &p);
        assert!((v - (1.0 + 0.25f64.ln())).abs() < 1e-12);
        assert!(v < 0.0);
    }

    #[test]
    fn scbs_monotonicity() {
        let p = params(1.0);
        let base = scbs_utility_value(0.8, 5.0, 3, 4, 2.0, &p);
        assert!(scbs_utility_value(0.8, 6.0, 3, 4, 2.0, &p) < base);
        assert!(scbs_utility_value(0.8, 5.0, 3, 4, 2.5, &p) < base);
        assert!(scbs_utility_value(0.8, 5.0, 4, 4, 2.0, &p) > base);
    }

    #[test]
    fn log_base_switch() {
        let p = UtilityParams {
            log_base: LogBase::Ten,
            ..params(1.0)
        };
        let v = scbs_utility_value(1.0, 1.0, 1, 10, 1.0, &p);
        assert!(v.abs() < 1e-12);
        let frozen = UtilityParams {
            offload_term: false,
            ..params(1.0)
        };
        assert_eq!(scbs_utility_value(1.0, 1.0, 1, 10, 1.0, &frozen), 1.0);
    }
}
