use std::cmp::Ordering;
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::scenario::{CellId, UserId};

use super::{AssociationGame, Matching};

/// Strict rankings on both sides. `cells[0]` (the macro) is always empty.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PreferenceProfile {
    pub users: Vec<Vec<CellId>>,
    pub cells: Vec<Vec<UserId>>,
}

impl PreferenceProfile {
    /// Lists must reference known ids, be duplicate-free, leave the macro out
    /// and be mutual: `j` in `i`'s list iff `i` in `j`'s list.
    pub fn validate(&self) -> Result<()> {
        let (n, c) = (self.users.len(), self.cells.len());
        if c == 0 {
            return Err(Error::Preferences("no macro cell".into()));
        }
        if !self.cells[0].is_empty() {
            return Err(Error::Preferences("the macro cannot rank users".into()));
        }
        let mut pairs = HashSet::new();
        for (i, list) in self.users.iter().enumerate() {
            for &j in list {
                if j.is_macro() || j.0 >= c {
                    return Err(Error::Preferences(format!(
                        "user {i} lists invalid cell {}",
                        j.0
                    )));
                }
                if !pairs.insert((i, j.0)) {
                    return Err(Error::Preferences(format!(
                        "user {i} lists cell {} twice",
                        j.0
                    )));
                }
            }
        }
        let mut seen = HashSet::new();
        for (j, list) in self.cells.iter().enumerate() {
            for &i in list {
                if i.0 >= n {
                    return Err(Error::Preferences(format!(
                        "cell {j} lists unknown user {}",
                        i.0
                    )));
                }
                if !seen.insert((i.0, j)) {
                    return Err(Error::Preferences(format!(
                        "cell {j} lists user {} twice",
                        i.0
                    )));
                }
                if !pairs.contains(&(i.0, j)) {
                    return Err(Error::Preferences(format!(
                        "cell {j} lists user {} who does not list it",
                        i.0
                    )));
                }
            }
        }
        if seen.len() != pairs.len() {
            return Err(Error::Preferences(
                "a user lists a cell that does not list it".into(),
            ));
        }
        Ok(())
    }
}

fn descending<T: Ord>(a: &(f64, T), b: &(f64, T)) -> Ordering {
    b.0.total_cmp(&a.0).then_with(|| a.1.cmp(&b.1))
}

/// Rank mutually acceptable partners by utility under `matching`, highest
/// first, lower id first on ties.
pub fn build_preferences<G: AssociationGame>(game: &G, matching: &Matching) -> PreferenceProfile {
    let num_cells = game.num_cells();
    let mut users = Vec::with_capacity(game.num_users());
    let mut cells: Vec<Vec<(f64, UserId)>> = vec![Vec::new(); num_cells];

    for i in (0..game.num_users()).map(UserId) {
        let mut ranked: Vec<(f64, CellId)> = (1..num_cells)
            .map(CellId)
            .filter(|&j| game.acceptable(matching, i, j))
            .map(|j| {
                cells[j.0].push((game.cell_utility(matching, j, i), i));
                (game.user_utility(matching, i, j), j)
            })
            .collect();
        ranked.sort_by(descending);
        users.push(ranked.into_iter().map(|(_, j)| j).collect());
    }

    let cells = cells
        .into_iter()
        .map(|mut ranked| {
            ranked.sort_by(descending);
            ranked.into_iter().map(|(_, i)| i).collect()
        })
        .collect();

    PreferenceProfile { users, cells }
}
