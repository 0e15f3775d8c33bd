use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::scenario::{CellId, UserId};

use super::{build_preferences, deferred_acceptance_with_stats, AssociationGame, Matching};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Converged,
    CycleDetected,
    IterationCapHit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub matching: Matching,
    pub outcome: Outcome,
    /// Deferred-acceptance runs performed.
    pub outer_iterations: usize,
    /// Proposal rounds of each deferred-acceptance run.
    pub inner_rounds: Vec<usize>,
    /// Proposals made by each user, per outer iteration.
    pub proposals: Vec<Vec<usize>>,
}

impl SolveResult {
    /// Association attempts per user until the final matching was reached.
    ///
    /// In every counted outer iteration a user spends one attempt per proposal,
    /// or one attempt on the macro fallback if it had nothing to propose. The
    /// last iteration of a converged run only confirms the fixed point and is
    /// not counted, unless it is the only one.
    pub fn iterations_per_user(&self) -> f64 {
        let num_users = self.proposals.first().map_or(0, Vec::len);
        if num_users == 0 {
            return 0.0;
        }
        let counted = match self.outcome {
            Outcome::Converged if self.proposals.len() > 1 => self.proposals.len() - 1,
            _ => self.proposals.len(),
        };
        let attempts: usize = self.proposals[..counted]
            .iter()
            .flatten()
            .map(|&p| p.max(1))
            .sum();
        attempts as f64 / num_users as f64
    }
}

/// Mean utility users get from their serving cells under `matching`.
pub fn mean_user_utility<G: AssociationGame>(game: &G, matching: &Matching) -> f64 {
    let n = game.num_users();
    if n == 0 {
        return 0.0;
    }
    (0..n)
        .map(UserId)
        .map(|i| game.user_utility(matching, i, matching.cell_of(i)))
        .sum::<f64>()
        / n as f64
}

/// Iterate preference rebuilding and deferred acceptance from the all-macro
/// matching until a fixed point, a cycle, or `max_outer` runs.
///
/// On a cycle the matching with the best mean user utility among those in the
/// cycle is returned (earliest on ties).
pub fn solve<G: AssociationGame>(game: &G, max_outer: usize) -> Result<SolveResult> {
    let quotas = game.quotas();
    let mut current = Matching::all_macro(game.num_users(), game.num_cells());
    let mut history = vec![current.clone()];
    let mut seen: HashMap<Vec<CellId>, usize> = HashMap::from([(current.assignment().to_vec(), 0)]);
    let mut inner_rounds = Vec::new();
    let mut proposals = Vec::new();

    for t in 1..=max_outer {
        let prefs = build_preferences(game, &current);
        let (next, stats) = deferred_acceptance_with_stats(&prefs, &quotas)?;
        inner_rounds.push(stats.rounds);
        proposals.push(stats.proposals);

        if next == current {
            return Ok(SolveResult {
                matching: next,
                outcome: Outcome::Converged,
                outer_iterations: t,
                inner_rounds,
                proposals,
            });
        }
        if let Some(&start) = seen.get(next.assignment()) {
            let best = history[start..]
                .iter()
                .map(|m| (mean_user_utility(game, m), m))
                .fold(None::<(f64, &Matching)>, |best, (u, m)| match best {
                    Some((bu, _)) if bu >= u => best,
                    _ => Some((u, m)),
                })
                .map(|(_, m)| m.clone())
                .unwrap_or(next);
            return Ok(SolveResult {
                matching: best,
                outcome: Outcome::CycleDetected,
                outer_iterations: t,
                inner_rounds,
                proposals,
            });
        }
        seen.insert(next.assignment().to_vec(), t);
        history.push(next.clone());
        current = next;
    }

    Ok(SolveResult {
        matching: current,
        outcome: Outcome::IterationCapHit,
        outer_iterations: max_outer,
        inner_rounds,
        proposals,
    })
}
