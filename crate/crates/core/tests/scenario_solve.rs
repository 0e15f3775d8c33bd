mod common;

use cellmatch::harness::{grid_mean, run_experiment, Algorithm, Grid, Selection};
use cellmatch::matching::{is_stable, solve, AssociationGame, ContextGame, Outcome};
use cellmatch::scenario::db_to_linear;
use cellmatch::{generate_scenario, CellId, Config};
use common::assert_matching_invariants;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solved_matchings_are_valid(seed in any::<u64>(), users in 0usize..40, picos in 0usize..12) {
        let config = Config::default().with_size(users, picos);
        let scenario = generate_scenario(&config, seed).unwrap();
        let game = ContextGame::new(&scenario);
        let r = solve(&game, config.max_outer).unwrap();
        assert_matching_invariants(&r.matching, &game.quotas());
        if r.outcome == Outcome::Converged {
            prop_assert!(is_stable(&game, &r.matching).is_empty());
        }
        if users > 0 {
            prop_assert!(r.iterations_per_user() >= 1.0);
        }
        for u in r.matching.pico_served() {
            let cell = r.matching.cell_of(u);
            prop_assert!(game.is_candidate(u, cell));
            prop_assert!(scenario.sinr(u, cell) >= db_to_linear(config.min_sinr));
            let p = game.handover_failure(CellId::MACRO, cell).unwrap();
            prop_assert!(p <= config.hf_threshold);
        }
    }

    #[test]
    fn scenarios_are_reproducible(seed in any::<u64>()) {
        let config = Config::default().with_size(15, 5);
        let a = generate_scenario(&config, seed).unwrap();
        let b = generate_scenario(&config, seed).unwrap();
        prop_assert_eq!(a.to_csv(), b.to_csv());
        let ga = ContextGame::new(&a);
        let gb = ContextGame::new(&b);
        prop_assert_eq!(solve(&ga, 100).unwrap(), solve(&gb, 100).unwrap());
    }
}

#[test]
fn zero_threshold_keeps_everyone_on_the_macro() {
    let config = Config {
        hf_threshold: 0.0,
        ..Config::default()
    };
    for seed in 1..20 {
        let s = generate_scenario(&config, seed).unwrap();
        let r = solve(&ContextGame::new(&s), 100).unwrap();
        assert_eq!(r.matching.macro_load(), s.num_users());
    }
}

#[test]
fn few_users_need_about_one_attempt() {
    let grid = Grid {
        users: vec![3],
        picos: vec![15],
    };
    let records = run_experiment(&Config::default(), &grid, 200, Selection::Matching).unwrap();
    let mean = grid_mean(&records, Algorithm::Matching, 3, 15, "iterations_per_user").unwrap();
    assert!((1.0..1.5).contains(&mean), "{mean}");
}

#[test]
fn rate_per_user_falls_as_picos_are_added() {
    let picos = vec![12, 18, 24, 30, 36];
    let grid = Grid {
        users: vec![60],
        picos: picos.clone(),
    };
    let records = run_experiment(&Config::default(), &grid, 100, Selection::Matching).unwrap();
    let rates: Vec<f64> = picos
        .iter()
        .map(|&p| grid_mean(&records, Algorithm::Matching, 60, p, "avg_rate_per_user").unwrap())
        .collect();
    let inversions = rates.windows(2).filter(|w| w[1] > w[0]).count();
    assert!(inversions <= 1, "{rates:?}");
}
