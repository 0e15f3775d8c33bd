use crate::geometry::{classify_visitor, interaction_time, Visitor};
use crate::handover::{hf_prob_m2p, hf_prob_p2p, p2p_feasible, P2PGeometry};
use crate::scenario::{db_to_linear, CellId, Config, Scenario, UserId};
use crate::utility::{self, UtilityParams};

use super::Matching;

/// Everything the engine needs to know about a user/cell association game.
///
/// Cell 0 is the macro fallback: it never appears in preference lists and has
/// no quota. Utilities and acceptability may depend on the current matching.
pub trait AssociationGame {
    fn num_users(&self) -> usize;

    /// Cell count including the macro.
    fn num_cells(&self) -> usize;

    fn quota(&self, cell: CellId) -> usize;

    /// Whether `user` and pico `cell` find each other acceptable under `matching`.
    fn acceptable(&self, matching: &Matching, user: UserId, cell: CellId) -> bool;

    /// Whether a matching may place `user` on pico `cell` at all. Used to
    /// discard individually irrational matchings during enumeration.
    fn admissible(&self, user: UserId, cell: CellId) -> bool;

    fn user_utility(&self, matching: &Matching, user: UserId, cell: CellId) -> f64;

    fn cell_utility(&self, matching: &Matching, cell: CellId, user: UserId) -> f64;

    fn quotas(&self) -> Vec<usize> {
        (0..self.num_cells())
            .map(|j| self.quota(CellId(j)))
            .collect()
    }
}

/// Admission rules a pico applies before ranking users.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissionParams {
    pub hf_threshold: f64,
    pub prep_time: f64,
    pub exit_radius_factor: f64,
    pub speed_min: f64,
    pub speed_max: f64,
    /// Linear SINR users require from a pico, if any.
    pub min_sinr: Option<f64>,
}

impl AdmissionParams {
    pub fn from_config(config: &Config) -> Self {
        let (speed_min, speed_max) = config.speed_bounds_mps();
        Self {
            hf_threshold: config.hf_threshold,
            prep_time: config.prep_time,
            exit_radius_factor: config.exit_radius_factor,
            speed_min,
            speed_max,
            min_sinr: config
                .require_min_sinr
                .then(|| db_to_linear(config.min_sinr)),
        }
    }
}

/// The context-aware association game played on a scenario.
#[derive(Debug, Clone, Copy)]
pub struct ContextGame<'a> {
    pub scenario: &'a Scenario,
    pub utility: UtilityParams,
    pub admission: AdmissionParams,
}

impl<'a> ContextGame<'a> {
    pub fn new(scenario: &'a Scenario) -> Self {
        Self {
            scenario,
            utility: UtilityParams::from_config(scenario.config()),
            admission: AdmissionParams::from_config(scenario.config()),
        }
    }

    /// The user is inside the pico's coverage area and stays longer than the
    /// handover preparation time.
    pub fn is_candidate(&self, user: UserId, cell: CellId) -> bool {
        let ue = self.scenario.user(user);
        let c = self.scenario.cell(cell);
        if self.scenario.distance(user, cell) > c.coverage_radius {
            return false;
        }
        match interaction_time(c.coverage_radius, ue.direction(cell), ue.speed) {
            Ok(t) => classify_visitor(t, self.admission.prep_time) == Visitor::Candidate,
            Err(_) => false,
        }
    }

    /// Predicted handover-failure probability for moving `user` from `from` to pico `to`.
    /// `None` when a pico-to-pico move is geometrically infeasible.
    pub fn handover_failure(&self, from: CellId, to: CellId) -> Option<f64> {
        let target = self.scenario.cell(to);
        if from.is_macro() {
            return hf_prob_m2p(target.hf_radius, target.coverage_radius).ok();
        }
        let source = self.scenario.cell(from);
        let g = P2PGeometry {
            source_radius: source.coverage_radius,
            source_exit_radius: self.admission.exit_radius_factor * source.coverage_radius,
            target_radius: target.coverage_radius,
            target_hf_radius: target.hf_radius,
            center_distance: source.position.distance(&target.position),
            prep_time: self.admission.prep_time,
            speed_min: self.admission.speed_min,
            speed_max: self.admission.speed_max,
        };
        p2p_feasible(&g).then(|| hf_prob_p2p(&g))
    }

    /// Pico-side admission: candidate and reliable handover from the user's
    /// current cell. A pico always admits the users it already serves.
    pub fn admits(&self, matching: &Matching, cell: CellId, user: UserId) -> bool {
        let from = matching.cell_of(user);
        if from == cell {
            return true;
        }
        self.is_candidate(user, cell)
            && self
                .handover_failure(from, cell)
                .is_some_and(|p| p <= self.admission.hf_threshold)
    }

    /// User-side acceptability: the pico's SINR reaches the user's minimum.
    pub fn user_accepts(&self, user: UserId, cell: CellId) -> bool {
        self.admission
            .min_sinr
            .is_none_or(|min| self.scenario.sinr(user, cell) >= min)
    }

    /// Users pico `cell` would consider under `matching`.
    pub fn acceptable_set(&self, cell: CellId, matching: &Matching) -> Vec<UserId> {
        self.scenario
            .user_ids()
            .filter(|&i| self.admits(matching, cell, i))
            .collect()
    }
}

impl AssociationGame for ContextGame<'_> {
    fn num_users(&self) -> usize {
        self.scenario.num_users()
    }

    fn num_cells(&self) -> usize {
        self.scenario.num_cells()
    }

    fn quota(&self, cell: CellId) -> usize {
        self.scenario.cell(cell).quota
    }

    fn acceptable(&self, matching: &Matching, user: UserId, cell: CellId) -> bool {
        !cell.is_macro() && self.user_accepts(user, cell) && self.admits(matching, cell, user)
    }

    fn admissible(&self, user: UserId, cell: CellId) -> bool {
        cell.is_macro()
            || (self.user_accepts(user, cell)
                && self.is_candidate(user, cell)
                && self
                    .handover_failure(CellId::MACRO, cell)
                    .is_some_and(|p| p <= self.admission.hf_threshold))
    }

    fn user_utility(&self, matching: &Matching, user: UserId, cell: CellId) -> f64 {
        utility::user_utility(matching, user, cell, self.scenario, &self.utility)
    }

    fn cell_utility(&self, matching: &Matching, cell: CellId, user: UserId) -> f64 {
        utility::scbs_utility(matching, cell, user, self.scenario, &self.utility)
    }
}

/// A game with fixed utility tables: no externalities. `None` marks an
/// unacceptable pair. Users value the macro below every acceptable pico.
#[derive(Debug, Clone, PartialEq)]
pub struct FrozenGame {
    /// `user_utils[i][j]`, column 0 unused.
    pub user_utils: Vec<Vec<Option<f64>>>,
    /// `cell_utils[j][i]`, row 0 unused.
    pub cell_utils: Vec<Vec<Option<f64>>>,
    pub quotas: Vec<usize>,
}

impl AssociationGame for FrozenGame {
    fn num_users(&self) -> usize {
        self.user_utils.len()
    }

    fn num_cells(&self) -> usize {
        self.quotas.len()
    }

    fn quota(&self, cell: CellId) -> usize {
        self.quotas[cell.0]
    }

    fn acceptable(&self, _: &Matching, user: UserId, cell: CellId) -> bool {
        self.admissible(user, cell) && !cell.is_macro()
    }

    fn admissible(&self, user: UserId, cell: CellId) -> bool {
        cell.is_macro()
            || (self.user_utils[user.0][cell.0].is_some()
                && self.cell_utils[cell.0][user.0].is_some())
    }

    fn user_utility(&self, _: &Matching, user: UserId, cell: CellId) -> f64 {
        if cell.is_macro() {
            return f64::NEG_INFINITY;
        }
        self.user_utils[user.0][cell.0].unwrap_or(f64::NEG_INFINITY)
    }

    fn cell_utility(&self, _: &Matching, cell: CellId, user: UserId) -> f64 {
        self.cell_utils[cell.0][user.0].unwrap_or(f64::NEG_INFINITY)
    }
}
