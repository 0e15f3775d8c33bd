#![allow(dead_code)]

use cellmatch::matching::{AssociationGame, FrozenGame, Matching};
use cellmatch::{CellId, UserId};
use rand::Rng;
use std::f64::consts::{FRAC_PI_2, PI};

/// Tanh-sinh quadrature of `f` over the open interval (a, b).
///
/// Nodes are placed through their distance to the nearest endpoint so that
/// integrable endpoint singularities are handled without cancellation; nodes
/// that round onto an endpoint are dropped.
pub fn tanh_sinh<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let h = 1.0 / 64.0;
    let mut sum = f(mid) * FRAC_PI_2;
    for k in 1..=(6.0 / h) as usize {
        let t = k as f64 * h;
        let u = FRAC_PI_2 * t.sinh();
        let w = FRAC_PI_2 * t.cosh() / u.cosh().powi(2);
        // 1 - tanh(u), computed without cancellation
        let gap = half * 2.0 / (1.0 + (2.0 * u).exp());
        if gap == 0.0 || w == 0.0 {
            break;
        }
        for x in [b - gap, a + gap] {
            if x > a && x < b {
                sum += w * f(x);
            }
        }
    }
    sum * h * half
}

/// Shortest distance from the origin to the straight path that enters the
/// circle of radius `radius` at angle `phi` heading in direction `heading`.
pub fn path_distance_to_center(radius: f64, phi: f64, heading: f64) -> f64 {
    let (px, py) = (radius * phi.cos(), radius * phi.sin());
    let (dx, dy) = (heading.cos(), heading.sin());
    (px * dy - py * dx).abs()
}

/// Sample a path crossing a circle: uniform entry point on the boundary,
/// inward heading uniform within +-pi/2 of the center line.
pub fn sample_crossing<R: Rng>(rng: &mut R, radius: f64) -> f64 {
    let phi = rng.random_range(0.0..2.0 * PI);
    let theta = rng.random_range(-FRAC_PI_2..FRAC_PI_2);
    path_distance_to_center(radius, phi, phi + PI + theta)
}

/// A random externality-free game: every user/pico pair is mutually
/// acceptable with probability `p_accept`, utilities uniform in (0, 1).
pub fn random_frozen_game<R: Rng>(
    rng: &mut R,
    users: usize,
    picos: usize,
    quota: usize,
    p_accept: f64,
) -> FrozenGame {
    let cells = picos + 1;
    let mut user_utils = vec![vec![None; cells]; users];
    let mut cell_utils = vec![vec![None; users]; cells];
    for i in 0..users {
        for j in 1..cells {
            if rng.random_bool(p_accept) {
                user_utils[i][j] = Some(rng.random::<f64>());
                cell_utils[j][i] = Some(rng.random::<f64>());
            }
        }
    }
    let mut quotas = vec![quota; cells];
    quotas[0] = users.max(1);
    FrozenGame {
        user_utils,
        cell_utils,
        quotas,
    }
}

/// Every user weakly prefers its cell in `candidate` to its cell in `other`.
pub fn user_weakly_prefers<G: AssociationGame>(
    game: &G,
    candidate: &Matching,
    other: &Matching,
) -> bool {
    (0..game.num_users()).map(UserId).all(|i| {
        game.user_utility(candidate, i, candidate.cell_of(i))
            >= game.user_utility(other, i, other.cell_of(i))
    })
}

/// Structural invariants every matching must satisfy.
pub fn assert_matching_invariants(m: &Matching, quotas: &[usize]) {
    m.check(quotas)
        .expect("matching violates its quotas or bookkeeping");
    let mut seen = 0;
    for j in 0..m.num_cells() {
        let cell = CellId(j);
        for &u in m.members(cell) {
            assert_eq!(m.cell_of(u), cell);
        }
        seen += m.load(cell);
    }
    assert_eq!(seen, m.num_users());
}
