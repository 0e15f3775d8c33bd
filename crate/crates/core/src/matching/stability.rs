use crate::scenario::{CellId, UserId};

use super::{AssociationGame, Matching};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockingPair {
    pub user: UserId,
    pub cell: CellId,
}

/// All user/pico pairs that block `matching`, with every utility evaluated
/// under `matching` itself. An empty list means the matching is stable.
pub fn is_stable<G: AssociationGame>(game: &G, matching: &Matching) -> Vec<BlockingPair> {
    let mut blocking = Vec::new();
    for user in (0..game.num_users()).map(UserId) {
        let current = matching.cell_of(user);
        let current_utility = game.user_utility(matching, user, current);
        for cell in (1..game.num_cells()).map(CellId) {
            if cell == current || !game.acceptable(matching, user, cell) {
                continue;
            }
            if game.user_utility(matching, user, cell) <= current_utility {
                continue;
            }
            let has_room = matching.load(cell) < game.quota(cell);
            let displaces = || {
                let mine = game.cell_utility(matching, cell, user);
                matching
                    .members(cell)
                    .iter()
                    .any(|&other| mine > game.cell_utility(matching, cell, other))
            };
            if has_room || displaces() {
                blocking.push(BlockingPair { user, cell });
            }
        }
    }
    blocking
}
