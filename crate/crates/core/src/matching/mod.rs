//! Many-to-one matching between users and small cells, with externalities.
//!
//! Utilities on both sides depend on the current matching, so the engine
//! repeatedly rebuilds preference lists from the current matching and runs a
//! user-proposing deferred acceptance on them until the matching stops
//! changing or starts cycling.

mod brute_force;
mod deferred_acceptance;
mod game;
mod preferences;
mod solve;
mod stability;

use std::collections::BTreeSet;
use std::fmt::Write;

pub use brute_force::{
    brute_force_stable, BRUTE_FORCE_MAX_PICOS, BRUTE_FORCE_MAX_QUOTA, BRUTE_FORCE_MAX_USERS,
};
pub use deferred_acceptance::{deferred_acceptance, deferred_acceptance_with_stats, DaStats};
pub use game::{AdmissionParams, AssociationGame, ContextGame, FrozenGame};
pub use preferences::{build_preferences, PreferenceProfile};
pub use solve::{solve, Outcome, SolveResult};
pub use stability::{is_stable, BlockingPair};

use crate::error::{Error, Result};
use crate::scenario::{CellId, UserId};

/// Association of every user with one cell. Users not held by a pico sit on
/// the macro (cell 0).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    serving: Vec<CellId>,
    members: Vec<BTreeSet<UserId>>,
}

impl Matching {
    pub fn all_macro(num_users: usize, num_cells: usize) -> Self {
        assert!(num_cells >= 1, "a matching needs at least the macro cell");
        let mut members = vec![BTreeSet::new(); num_cells];
        members[0] = (0..num_users).map(UserId).collect();
        Self {
            serving: vec![CellId::MACRO; num_users],
            members,
        }
    }

    /// Build a matching from each user's serving cell.
    pub fn from_assignment(serving: Vec<CellId>, num_cells: usize) -> Result<Self> {
        let mut m = Matching::all_macro(serving.len(), num_cells.max(1));
        for (i, cell) in serving.into_iter().enumerate() {
            if cell.0 >= m.members.len() {
                return Err(Error::Matching(format!(
                    "user {i} assigned to unknown cell {}",
                    cell.0
                )));
            }
            m.assign(UserId(i), cell);
        }
        Ok(m)
    }

    pub fn num_users(&self) -> usize {
        self.serving.len()
    }

    pub fn num_cells(&self) -> usize {
        self.members.len()
    }

    pub fn cell_of(&self, user: UserId) -> CellId {
        self.serving[user.0]
    }

    pub fn members(&self, cell: CellId) -> &BTreeSet<UserId> {
        &self.members[cell.0]
    }

    pub fn load(&self, cell: CellId) -> usize {
        self.members[cell.0].len()
    }

    /// Move `user` to `cell`, keeping both directions of the map in sync.
    pub fn assign(&mut self, user: UserId, cell: CellId) {
        let old = self.serving[user.0];
        self.members[old.0].remove(&user);
        self.members[cell.0].insert(user);
        self.serving[user.0] = cell;
    }

    pub fn assignment(&self) -> &[CellId] {
        &self.serving
    }

    pub fn pico_served(&self) -> impl Iterator<Item = UserId> + '_ {
        self.serving
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_macro())
            .map(|(i, _)| UserId(i))
    }

    pub fn macro_load(&self) -> usize {
        self.load(CellId::MACRO)
    }

    /// Check the matching invariants against per-cell quotas (macro quota ignored).
    pub fn check(&self, quotas: &[usize]) -> Result<()> {
        if quotas.len() != self.members.len() {
            return Err(Error::Matching(format!(
                "{} quotas for {} cells",
                quotas.len(),
                self.members.len()
            )));
        }
        for (i, cell) in self.serving.iter().enumerate() {
            if !self.members[cell.0].contains(&UserId(i)) {
                return Err(Error::Matching(format!(
                    "user {i} missing from cell {}",
                    cell.0
                )));
            }
        }
        let mut total = 0;
        for (j, set) in self.members.iter().enumerate() {
            total += set.len();
            if j > 0 && set.len() > quotas[j] {
                return Err(Error::Matching(format!(
                    "cell {j} holds {} users over quota {}",
                    set.len(),
                    quotas[j]
                )));
            }
            if let Some(u) = set.iter().find(|u| self.serving[u.0] != CellId(j)) {
                return Err(Error::Matching(format!(
                    "cell {j} lists user {} served elsewhere",
                    u.0
                )));
            }
        }
        if total != self.serving.len() {
            return Err(Error::Matching("a user is listed twice".into()));
        }
        Ok(())
    }

    /// `user_id,cell_id,utility` rows, one per user in id order.
    pub fn to_csv<G: AssociationGame>(&self, game: &G) -> String {
        let mut out = String::from("user_id,cell_id,utility\n");
        for (i, cell) in self.serving.iter().enumerate() {
            let u = game.user_utility(self, UserId(i), *cell);
            let _ = writeln!(out, "{},{},{}", i, cell.0, u);
        }
        out
    }
}
