//! Simulation parameters, loaded from flat `key = value` text (TOML syntax).
//!
//! Every key is optional; absent keys take the defaults below. Powers are in
//! dBm, SINR thresholds in dB, speeds in km/h and urgencies in ms. The
//! scenario builder converts to SI and linear power.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fading {
    /// Unit-mean exponential power gain (Rayleigh amplitude).
    Rayleigh,
    /// Unit-mean gamma power gain with shape `nakagami_m`.
    Nakagami,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LogBase {
    Natural,
    Ten,
    Two,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Natural => x.ln(),
            LogBase::Ten => x.log10(),
            LogBase::Two => x.log2(),
        }
    }
}

/// Sign convention of the load term `gamma * (q_j - m_j)` in the user utility.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LoadSign {
    /// `-gamma * (q_j - m_j)`: free capacity is a cost.
    Literal,
    /// `+gamma * (q_j - m_j)`: free capacity is a reward.
    Prose,
}

/// Utility shape `(alpha, beta, lambda)` for one device class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Shape {
    pub alpha: f64,
    pub beta: f64,
    pub lambda: f64,
}

impl Shape {
    pub const fn new(alpha: f64, beta: f64, lambda: f64) -> Self {
        Self {
            alpha,
            beta,
            lambda,
        }
    }
}

impl From<[f64; 3]> for Shape {
    fn from(v: [f64; 3]) -> Self {
        Shape::new(v[0], v[1], v[2])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub macro_radius: f64,
    pub num_picocells: usize,
    pub num_users: usize,
    pub pico_power: f64,
    pub macro_power: f64,
    pub bandwidth: f64,
    pub quota: usize,
    pub noise_power: f64,
    pub min_sinr: f64,
    pub tau_range: [f64; 2],
    pub speed_range: [f64; 2],
    pub gamma: f64,
    #[serde(rename = "K")]
    pub rate_norm: f64,
    /// Proportions of laptops, tablets and smartphones.
    pub device_mix: [f64; 3],
    pub prep_time: f64,
    pub pathloss_exponent: f64,
    /// Linear path gain at the 1 m reference distance.
    pub ref_gain: f64,
    pub monte_carlo_runs: usize,
    pub rng_seed: u64,

    pub pico_radius: f64,
    /// Failure-circle radius as a fraction of the coverage radius.
    pub hf_ratio: f64,
    /// Handover-completion radius beyond the source cell, as a multiple of its coverage radius.
    pub exit_radius_factor: f64,
    pub hf_threshold: f64,
    pub fading: Fading,
    pub nakagami_m: f64,
    pub log_base: LogBase,
    pub load_sign: LoadSign,
    /// When false the offloading bracket of the cell utility is pinned to 1.
    pub offload_term: bool,
    /// Users only apply to picos whose SINR reaches `min_sinr`.
    pub require_min_sinr: bool,
    pub baseline_quota: bool,
    pub max_outer: usize,

    pub laptop_shape: [f64; 3],
    pub tablet_shape: [f64; 3],
    pub smartphone_shape: [f64; 3],
    pub laptop_rate: f64,
    pub tablet_rate: f64,
    pub smartphone_rate: f64,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            macro_radius: 1000.0,
            num_picocells: 24,
            num_users: 60,
            pico_power: 30.0,
            macro_power: 46.0,
            bandwidth: 200e3,
            quota: 4,
            noise_power: -121.0,
            min_sinr: 9.56,
            tau_range: [0.5, 5.0],
            speed_range: [20.0, 40.0],
            gamma: 1.0,
            rate_norm: 10.0 * 100e3,
            device_mix: [1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
            prep_time: 2.0,
            pathloss_exponent: 4.0,
            ref_gain: 1e-3,
            monte_carlo_runs: 100,
            rng_seed: 0,
            pico_radius: 100.0,
            hf_ratio: 0.075,
            exit_radius_factor: 1.2,
            hf_threshold: 0.05,
            fading: Fading::Rayleigh,
            nakagami_m: 2.0,
            log_base: LogBase::Natural,
            load_sign: LoadSign::Literal,
            offload_term: true,
            require_min_sinr: true,
            baseline_quota: true,
            max_outer: 1000,
            laptop_shape: [2.0, 2.0, 2.0],
            tablet_shape: [1.0, 1.0, 1.0],
            smartphone_shape: [0.5, 0.5, 0.5],
            laptop_rate: 1000e3,
            tablet_rate: 600e3,
            smartphone_rate: 400e3,
        }
    }
}

/// Parse a config from `key = value` text. Absent keys keep their defaults.
pub fn load_config(source: &str) -> Result<Config> {
    let config: Config = toml::from_str(source).map_err(|e| Error::ConfigSyntax(e.to_string()))?;
    config.validate()?;
    Ok(config)
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        positive("macro_radius", self.macro_radius)?;
        positive("bandwidth", self.bandwidth)?;
        positive("pico_radius", self.pico_radius)?;
        positive("K", self.rate_norm)?;
        positive("prep_time", self.prep_time)?;
        positive("ref_gain", self.ref_gain)?;
        positive("nakagami_m", self.nakagami_m)?;
        finite("pico_power", self.pico_power)?;
        finite("macro_power", self.macro_power)?;
        finite("noise_power", self.noise_power)?;
        finite("min_sinr", self.min_sinr)?;
        finite("pathloss_exponent", self.pathloss_exponent)?;
        if self.pathloss_exponent < 0.0 {
            return Err(Error::field("pathloss_exponent", "must be >= 0"));
        }
        finite("gamma", self.gamma)?;
        if self.gamma < 0.0 {
            return Err(Error::field("gamma", "must be >= 0"));
        }
        if self.quota == 0 {
            return Err(Error::field("quota", "must be at least 1"));
        }
        if self.pico_radius >= self.macro_radius {
            return Err(Error::field(
                "pico_radius",
                "must be smaller than macro_radius",
            ));
        }

        let [tau_lo, tau_hi] = self.tau_range;
        if !(tau_lo > 0.0 && tau_lo <= tau_hi && tau_hi.is_finite()) {
            return Err(Error::field(
                "tau_range",
                format!("need 0 < lo <= hi, got [{tau_lo}, {tau_hi}]"),
            ));
        }
        let [v_lo, v_hi] = self.speed_range;
        if !(v_lo > 0.0 && v_lo <= v_hi && v_hi.is_finite()) {
            return Err(Error::field(
                "speed_range",
                format!("need 0 < V_min <= V_max, got [{v_lo}, {v_hi}]"),
            ));
        }

        if self.device_mix.iter().any(|p| !(*p >= 0.0)) {
            return Err(Error::field("device_mix", "proportions must be >= 0"));
        }
        let total: f64 = self.device_mix.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::field(
                "device_mix",
                format!("proportions must sum to 1, got {total}"),
            ));
        }

        if !(self.hf_ratio > 0.0 && self.hf_ratio < 1.0) {
            return Err(Error::field("hf_ratio", "must lie in (0, 1)"));
        }
        if !(self.exit_radius_factor > 1.0 && self.exit_radius_factor.is_finite()) {
            return Err(Error::field("exit_radius_factor", "must be > 1"));
        }
        if !(0.0..=1.0).contains(&self.hf_threshold) {
            return Err(Error::field("hf_threshold", "must lie in [0, 1]"));
        }
        if self.max_outer == 0 {
            return Err(Error::field("max_outer", "must be at least 1"));
        }

        for (field, shape) in [
            ("laptop_shape", self.laptop_shape),
            ("tablet_shape", self.tablet_shape),
            ("smartphone_shape", self.smartphone_shape),
        ] {
            if shape.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
                return Err(Error::field(
                    field,
                    "alpha, beta and lambda must be positive",
                ));
            }
        }
        for (field, rate) in [
            ("laptop_rate", self.laptop_rate),
            ("tablet_rate", self.tablet_rate),
            ("smartphone_rate", self.smartphone_rate),
        ] {
            positive(field, rate)?;
        }
        Ok(())
    }

    pub fn speed_bounds_mps(&self) -> (f64, f64) {
        (
            kmh_to_mps(self.speed_range[0]),
            kmh_to_mps(self.speed_range[1]),
        )
    }

    pub fn with_size(&self, num_users: usize, num_picocells: usize) -> Config {
        Config {
            num_users,
            num_picocells,
            ..self.clone()
        }
    }
}

fn positive(field: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::field(
            field,
            format!("must be positive and finite, got {v}"),
        ))
    }
}

fn finite(field: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::field(field, format!("must be finite, got {v}")))
    }
}

pub fn kmh_to_mps(v: f64) -> f64 {
    v / 3.6
}

pub fn dbm_to_mw(dbm: f64) -> f64 {
    10f64.powf(dbm / 10.0)
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}
