use crate::error::{Error, Result};
use crate::scenario::{CellId, UserId};

use super::{Matching, PreferenceProfile};

/// Bookkeeping from one deferred-acceptance run.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DaStats {
    /// Proposal rounds until every user was held or ran out of options.
    pub rounds: usize,
    /// Proposals made by each user.
    pub proposals: Vec<usize>,
    /// Waiting-list sizes per cell after each round.
    pub round_loads: Vec<Vec<usize>>,
}

/// User-proposing deferred acceptance with per-cell quotas.
pub fn deferred_acceptance(prefs: &PreferenceProfile, quotas: &[usize]) -> Result<Matching> {
    deferred_acceptance_with_stats(prefs, quotas).map(|(m, _)| m)
}

pub fn deferred_acceptance_with_stats(
    prefs: &PreferenceProfile,
    quotas: &[usize],
) -> Result<(Matching, DaStats)> {
    prefs.validate()?;
    let num_users = prefs.users.len();
    let num_cells = prefs.cells.len();
    if quotas.len() != num_cells {
        return Err(Error::Preferences(format!(
            "{} quotas for {} cells",
            quotas.len(),
            num_cells
        )));
    }

    // rank[j][i]: position of user i in cell j's list
    let mut rank = vec![vec![usize::MAX; num_users]; num_cells];
    for (j, list) in prefs.cells.iter().enumerate() {
        for (pos, u) in list.iter().enumerate() {
            rank[j][u.0] = pos;
        }
    }

    let mut next = vec![0usize; num_users];
    let mut waiting: Vec<Vec<UserId>> = vec![Vec::new(); num_cells];
    let mut stats = DaStats {
        proposals: vec![0; num_users],
        ..DaStats::default()
    };
    let mut applicants: Vec<UserId> = (0..num_users)
        .map(UserId)
        .filter(|u| !prefs.users[u.0].is_empty())
        .collect();

    while !applicants.is_empty() {
        stats.rounds += 1;
        let mut touched = vec![false; num_cells];
        for u in applicants.drain(..) {
            let list = &prefs.users[u.0];
            if let Some(&j) = list.get(next[u.0]) {
                next[u.0] += 1;
                stats.proposals[u.0] += 1;
                waiting[j.0].push(u);
                touched[j.0] = true;
            }
        }

        let mut rejected = Vec::new();
        for j in (1..num_cells).filter(|&j| touched[j]) {
            let list = &mut waiting[j];
            list.sort_by_key(|u| rank[j][u.0]);
            if list.len() > quotas[j] {
                rejected.extend(list.drain(quotas[j]..));
            }
        }
        stats
            .round_loads
            .push(waiting.iter().map(Vec::len).collect());

        rejected.sort();
        applicants = rejected
            .into_iter()
            .filter(|u| next[u.0] < prefs.users[u.0].len())
            .collect();
    }

    let mut matching = Matching::all_macro(num_users, num_cells);
    for (j, list) in waiting.iter().enumerate() {
        for &u in list {
            matching.assign(u, CellId(j));
        }
    }
    Ok((matching, stats))
}
