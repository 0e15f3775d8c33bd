//! Network realizations: one macro cell overlaid with picocells and mobile users.

mod config;
mod serialize;

use std::f64::consts::{FRAC_PI_2, PI};

use rand::distr::weighted::WeightedIndex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Distribution;
use serde::{Deserialize, Serialize};

pub use config::{
    db_to_linear, dbm_to_mw, kmh_to_mps, load_config, Config, Fading, LoadSign, LogBase, Shape,
};

use crate::channel;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::utility::DeviceClass;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellId(pub usize);

impl CellId {
    /// The macro cell is always the first cell of a scenario.
    pub const MACRO: CellId = CellId(0);

    pub fn is_macro(self) -> bool {
        self == Self::MACRO
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UserId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tier {
    Macro,
    Pico,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub id: CellId,
    pub tier: Tier,
    pub position: Point,
    pub power_dbm: f64,
    pub coverage_radius: f64,
    pub hf_radius: f64,
    pub quota: usize,
}

impl Cell {
    pub fn power_mw(&self) -> f64 {
        dbm_to_mw(self.power_dbm)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UserEquipment {
    pub id: UserId,
    pub position: Point,
    /// m/s
    pub speed: f64,
    /// Heading relative to the line towards each cell's center, indexed by cell.
    pub directions: Vec<f64>,
    pub device: DeviceClass,
    pub screen: f64,
    /// bps
    pub target_rate: f64,
    pub urgency_ms: f64,
    pub shape: Shape,
}

impl UserEquipment {
    pub fn direction(&self, cell: CellId) -> f64 {
        self.directions[cell.0]
    }
}

/// An immutable network snapshot. Cell 0 is the macro, cells `1..=P` are picos.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    config: Config,
    cells: Vec<Cell>,
    users: Vec<UserEquipment>,
    gains: Vec<Vec<f64>>,
    sinr: Vec<Vec<f64>>,
}

impl Scenario {
    /// Assemble a scenario from parts, checking shapes and deriving link SINRs.
    pub fn new(
        config: Config,
        cells: Vec<Cell>,
        users: Vec<UserEquipment>,
        gains: Vec<Vec<f64>>,
    ) -> Result<Self> {
        config.validate()?;
        let Some(first) = cells.first() else {
            return Err(Error::Scenario("a scenario needs a macro cell".into()));
        };
        if first.tier != Tier::Macro {
            return Err(Error::Scenario("cell 0 must be the macro".into()));
        }
        for (k, cell) in cells.iter().enumerate() {
            if cell.id != CellId(k) {
                return Err(Error::Scenario(format!(
                    "cell at index {k} has id {}",
                    cell.id.0
                )));
            }
            if k > 0 && cell.tier != Tier::Pico {
                return Err(Error::Scenario(format!("cell {k} must be a pico")));
            }
            if !(cell.hf_radius > 0.0 && cell.hf_radius < cell.coverage_radius) {
                return Err(Error::Scenario(format!("cell {k} needs 0 < r < R")));
            }
            if cell.quota == 0 {
                return Err(Error::Scenario(format!("cell {k} has zero quota")));
            }
        }
        if gains.len() != users.len() {
            return Err(Error::Scenario(format!(
                "gain matrix has {} rows for {} users",
                gains.len(),
                users.len()
            )));
        }
        for (i, (ue, row)) in users.iter().zip(&gains).enumerate() {
            if ue.id != UserId(i) {
                return Err(Error::Scenario(format!(
                    "user at index {i} has id {}",
                    ue.id.0
                )));
            }
            if row.len() != cells.len() || ue.directions.len() != cells.len() {
                return Err(Error::Scenario(format!(
                    "user {i} needs one gain and one direction per cell"
                )));
            }
            if row.iter().any(|g| !(*g > 0.0 && g.is_finite())) {
                return Err(Error::Scenario(format!("user {i} has a non-positive gain")));
            }
            if !(ue.speed > 0.0 && ue.urgency_ms > 0.0) {
                return Err(Error::Scenario(format!(
                    "user {i} needs positive speed and urgency"
                )));
            }
        }

        let powers: Vec<f64> = cells.iter().map(Cell::power_mw).collect();
        let noise = dbm_to_mw(config.noise_power);
        let sinr = gains
            .iter()
            .map(|row| {
                (0..cells.len())
                    .map(|j| channel::sinr_from_gains(&powers, row, j, noise))
                    .collect()
            })
            .collect();

        Ok(Self {
            config,
            cells,
            users,
            gains,
            sinr,
        })
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn users(&self) -> &[UserEquipment] {
        &self.users
    }

    pub fn num_users(&self) -> usize {
        self.users.len()
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn num_picos(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cell(&self, id: CellId) -> &Cell {
        &self.cells[id.0]
    }

    pub fn user(&self, id: UserId) -> &UserEquipment {
        &self.users[id.0]
    }

    pub fn pico_ids(&self) -> impl Iterator<Item = CellId> + '_ {
        (1..self.cells.len()).map(CellId)
    }

    pub fn user_ids(&self) -> impl Iterator<Item = UserId> + '_ {
        (0..self.users.len()).map(UserId)
    }

    pub fn quotas(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.quota).collect()
    }

    pub fn gain(&self, user: UserId, cell: CellId) -> f64 {
        self.gains[user.0][cell.0]
    }

    pub fn gains(&self) -> &[Vec<f64>] {
        &self.gains
    }

    /// Linear SINR of `user` when served by `cell`, all other cells interfering.
    pub fn sinr(&self, user: UserId, cell: CellId) -> f64 {
        self.sinr[user.0][cell.0]
    }

    /// Full-band Shannon rate in bps.
    pub fn rate(&self, user: UserId, cell: CellId) -> f64 {
        channel::shannon_rate(self.sinr(user, cell), self.config.bandwidth)
    }

    pub fn distance(&self, user: UserId, cell: CellId) -> f64 {
        self.user(user).position.distance(&self.cell(cell).position)
    }

    pub fn to_csv(&self) -> String {
        serialize::scenario_csv(self)
    }
}

fn uniform_in_disk<R: Rng>(rng: &mut R, radius: f64) -> Point {
    let r = radius * rng.random::<f64>().sqrt();
    let phi = 2.0 * PI * rng.random::<f64>();
    Point::new(r * phi.cos(), r * phi.sin())
}

/// Uniform on the open interval (-pi/2, pi/2).
fn heading<R: Rng>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            return (u - 0.5) * 2.0 * FRAC_PI_2;
        }
    }
}

pub fn shape_for(config: &Config, class: DeviceClass) -> Shape {
    match class {
        DeviceClass::Laptop => config.laptop_shape.into(),
        DeviceClass::Tablet => config.tablet_shape.into(),
        DeviceClass::Smartphone => config.smartphone_shape.into(),
    }
}

pub fn target_rate_for(config: &Config, class: DeviceClass) -> f64 {
    match class {
        DeviceClass::Laptop => config.laptop_rate,
        DeviceClass::Tablet => config.tablet_rate,
        DeviceClass::Smartphone => config.smartphone_rate,
    }
}

/// The macro cell at the origin. Its quota is the user count, i.e. unbounded.
pub fn macro_cell(config: &Config) -> Cell {
    Cell {
        id: CellId::MACRO,
        tier: Tier::Macro,
        position: Point::ORIGIN,
        power_dbm: config.macro_power,
        coverage_radius: config.macro_radius,
        hf_radius: config.hf_ratio * config.macro_radius,
        quota: config.num_users.max(1),
    }
}

pub fn pico_cell(config: &Config, id: usize, position: Point) -> Cell {
    Cell {
        id: CellId(id),
        tier: Tier::Pico,
        position,
        power_dbm: config.pico_power,
        coverage_radius: config.pico_radius,
        hf_radius: config.hf_ratio * config.pico_radius,
        quota: config.quota,
    }
}

/// Draw one network realization. The same `(config, seed)` always yields the
/// same scenario.
pub fn generate_scenario(config: &Config, seed: u64) -> Result<Scenario> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let num_cells = config.num_picocells + 1;

    let mut cells = Vec::with_capacity(num_cells);
    cells.push(macro_cell(config));
    for k in 1..num_cells {
        let position = uniform_in_disk(&mut rng, config.macro_radius);
        cells.push(pico_cell(config, k, position));
    }

    let devices = WeightedIndex::new(config.device_mix)
        .map_err(|e| Error::field("device_mix", e.to_string()))?;
    let (v_lo, v_hi) = config.speed_bounds_mps();
    let [tau_lo, tau_hi] = config.tau_range;

    let mut users = Vec::with_capacity(config.num_users);
    for i in 0..config.num_users {
        let position = uniform_in_disk(&mut rng, config.macro_radius);
        let speed = v_lo + (v_hi - v_lo) * rng.random::<f64>();
        let urgency_ms = tau_lo + (tau_hi - tau_lo) * rng.random::<f64>();
        let device = DeviceClass::ALL[devices.sample(&mut rng)];
        let mut directions = vec![0.0; num_cells];
        for theta in directions.iter_mut().skip(1) {
            *theta = heading(&mut rng);
        }
        users.push(UserEquipment {
            id: UserId(i),
            position,
            speed,
            directions,
            device,
            screen: device.screen_inches(),
            target_rate: target_rate_for(config, device),
            urgency_ms,
            shape: shape_for(config, device),
        });
    }

    let fading = channel::FadingSampler::new(config.fading, config.nakagami_m)?;
    let gains = users
        .iter()
        .map(|ue| {
            cells
                .iter()
                .map(|cell| {
                    let d = ue.position.distance(&cell.position);
                    channel::path_gain(d, config.pathloss_exponent, config.ref_gain)
                        * fading.sample(&mut rng)
                })
                .collect()
        })
        .collect();

    Scenario::new(config.clone(), cells, users, gains)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        let config = Config::default();
        let a = generate_scenario(&config, 1).unwrap();
        let b = generate_scenario(&config, 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_csv(), b.to_csv());
    }

    #[test]
    fn seeds_differ() {
        let config = Config::default();
        let a = generate_scenario(&config, 1).unwrap();
        let b = generate_scenario(&config, 2).unwrap();
        assert_ne!(a.user(UserId(0)).position, b.user(UserId(0)).position);
    }

    #[test]
    fn empty_user_set() {
        let config = Config {
            num_users: 0,
            ..Config::default()
        };
        let s = generate_scenario(&config, 1).unwrap();
        assert_eq!(s.num_users(), 0);
        assert_eq!(s.num_cells(), config.num_picocells + 1);
        assert_eq!(s.cell(CellId::MACRO).quota, 1);
    }

    #[test]
    fn everything_inside_the_macro_disk() {
        let config = Config::default();
        for seed in 0..20 {
            let s = generate_scenario(&config, seed).unwrap();
            for c in s.cells() {
                assert!(c.position.norm() <= config.macro_radius);
            }
            let (lo, hi) = config.speed_bounds_mps();
            for u in s.users() {
                assert!(u.position.norm() <= config.macro_radius);
                assert!(u.speed >= lo && u.speed <= hi);
                assert!(u.urgency_ms >= 0.5 && u.urgency_ms <= 5.0);
                assert!(u.directions[1..].iter().all(|t| t.abs() < FRAC_PI_2));
            }
            assert_eq!(s.gains().len(), config.num_users);
            assert!(s.gains().iter().flatten().all(|g| *g > 0.0));
        }
    }

    #[test]
    fn sampled_speed_mean_is_the_midpoint() {
        let config = Config {
            num_users: 100_000,
            num_picocells: 0,
            ..Config::default()
        };
        let s = generate_scenario(&config, 9).unwrap();
        let mean = s.users().iter().map(|u| u.speed).sum::<f64>() / s.num_users() as f64;
        let (lo, hi) = config.speed_bounds_mps();
        let mid = 0.5 * (lo + hi);
        assert!((mean / mid - 1.0).abs() < 0.01, "{mean} vs {mid}");
    }

    #[test]
    fn rejects_bad_shapes() {
        let config = Config::default();
        let s = generate_scenario(&config.with_size(2, 1), 3).unwrap();
        let mut gains = s.gains().to_vec();
        gains[0].pop();
        assert!(Scenario::new(
            s.config().clone(),
            s.cells().to_vec(),
            s.users().to_vec(),
            gains
        )
        .is_err());
        let mut gains = s.gains().to_vec();
        gains[1][0] = 0.0;
        assert!(Scenario::new(
            s.config().clone(),
            s.cells().to_vec(),
            s.users().to_vec(),
            gains
        )
        .is_err());
    }
}
