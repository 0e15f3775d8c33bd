use crate::error::{Error, Result};
use crate::scenario::{CellId, UserId};

use super::{is_stable, AssociationGame, Matching};

pub const BRUTE_FORCE_MAX_USERS: usize = 8;
pub const BRUTE_FORCE_MAX_PICOS: usize = 3;
pub const BRUTE_FORCE_MAX_QUOTA: usize = 2;

/// Every quota-feasible, individually rational matching with no blocking pair.
/// Exhaustive, so only small games are accepted.
pub fn brute_force_stable<G: AssociationGame>(game: &G) -> Result<Vec<Matching>> {
    let n = game.num_users();
    let cells = game.num_cells();
    let picos = cells.saturating_sub(1);
    if n > BRUTE_FORCE_MAX_USERS || picos > BRUTE_FORCE_MAX_PICOS {
        return Err(Error::SizeGuard(format!(
            "{n} users and {picos} picos exceed {BRUTE_FORCE_MAX_USERS} and {BRUTE_FORCE_MAX_PICOS}"
        )));
    }
    if let Some(q) = (1..cells)
        .map(|j| game.quota(CellId(j)))
        .find(|&q| q > BRUTE_FORCE_MAX_QUOTA)
    {
        return Err(Error::SizeGuard(format!(
            "quota {q} exceeds {BRUTE_FORCE_MAX_QUOTA}"
        )));
    }

    let quotas = game.quotas();
    let mut stable = Vec::new();
    let mut digits = vec![0usize; n];
    loop {
        let mut load = vec![0usize; cells];
        for &d in &digits {
            load[d] += 1;
        }
        let feasible = (1..cells).all(|j| load[j] <= quotas[j])
            && digits
                .iter()
                .enumerate()
                .all(|(i, &d)| game.admissible(UserId(i), CellId(d)));
        if feasible {
            let m = Matching::from_assignment(digits.iter().map(|&d| CellId(d)).collect(), cells)?;
            if is_stable(game, &m).is_empty() {
                stable.push(m);
            }
        }

        // odometer increment over base `cells`
        let mut k = 0;
        loop {
            if k == n {
                return Ok(stable);
            }
            digits[k] += 1;
            if digits[k] < cells {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::FrozenGame;

    #[test]
    fn single_mutual_pair() {
        let game = FrozenGame {
            user_utils: vec![vec![None, Some(1.0)]],
            cell_utils: vec![vec![None], vec![Some(1.0)]],
            quotas: vec![1, 1],
        };
        let all = brute_force_stable(&game).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].cell_of(UserId(0)), CellId(1));
    }

    #[test]
    fn nobody_acceptable_leaves_everyone_on_macro() {
        let game = FrozenGame {
            user_utils: vec![vec![None, None, Some(1.0)], vec![None, None, None]],
            cell_utils: vec![
                vec![None, None],
                vec![Some(1.0), Some(1.0)],
                vec![None, Some(2.0)],
            ],
            quotas: vec![2, 1, 1],
        };
        let all = brute_force_stable(&game).unwrap();
        assert_eq!(all, vec![Matching::all_macro(2, 3)]);
    }

    #[test]
    fn size_guard() {
        let game = FrozenGame {
            user_utils: vec![vec![None, Some(1.0)]; 9],
            cell_utils: vec![vec![None; 9], vec![Some(1.0); 9]],
            quotas: vec![9, 1],
        };
        assert!(matches!(
            brute_force_stable(&game),
            Err(Error::SizeGuard(_))
        ));
        let game = FrozenGame {
            user_utils: vec![vec![None, Some(1.0)]],
            cell_utils: vec![vec![None], vec![Some(1.0)]],
            quotas: vec![1, 3],
        };
        assert!(matches!(
            brute_force_stable(&game),
            Err(Error::SizeGuard(_))
        ));
    }
}
