//! Context-unaware max-SINR association.

use crate::matching::Matching;
use crate::scenario::{db_to_linear, CellId, Scenario, UserId};

/// Greedy max-SINR association. Users are served in descending order of their
/// best pico SINR; each takes its highest-SINR pico that clears `min_sinr`
/// and, when `enforce_quota` is set, still has a free slot. Everyone else
/// stays on the macro.
pub fn max_sinr_assignment(scenario: &Scenario, enforce_quota: bool) -> Matching {
    let min_sinr = db_to_linear(scenario.config().min_sinr);
    let picos: Vec<CellId> = scenario.pico_ids().collect();

    let best = |u: UserId| {
        picos
            .iter()
            .map(|&j| scenario.sinr(u, j))
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let mut order: Vec<(f64, UserId)> = scenario.user_ids().map(|u| (best(u), u)).collect();
    order.sort_by(|a, b| b.0.total_cmp(&a.0).then_with(|| a.1.cmp(&b.1)));

    let mut matching = Matching::all_macro(scenario.num_users(), scenario.num_cells());
    for (_, user) in order {
        let choice = picos
            .iter()
            .copied()
            .filter(|&j| scenario.sinr(user, j) >= min_sinr)
            .filter(|&j| !enforce_quota || matching.load(j) < scenario.cell(j).quota)
            .max_by(|&a, &b| {
                scenario
                    .sinr(user, a)
                    .total_cmp(&scenario.sinr(user, b))
                    .then_with(|| b.cmp(&a))
            });
        if let Some(j) = choice {
            matching.assign(user, j);
        }
    }
    matching
}
