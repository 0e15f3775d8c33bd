//! Monte Carlo experiments comparing the matching engine with max-SINR.

mod csv;
mod gain;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use self::csv::{emit_csv, parse_csv, read_csv, write_csv};
pub use gain::{summarize_gain, GainRow};

use crate::baseline::max_sinr_assignment;
use crate::error::{Error, Result};
use crate::matching::{is_stable, solve, AssociationGame, ContextGame, Matching, Outcome};
use crate::scenario::{generate_scenario, CellId, Config, Scenario};
use crate::utility::{scbs_utility_from, DeviceClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Matching,
    MaxSinr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Selection {
    #[default]
    Both,
    Matching,
    MaxSinr,
}

impl Selection {
    fn algorithms(self) -> &'static [Algorithm] {
        match self {
            Selection::Both => &[Algorithm::Matching, Algorithm::MaxSinr],
            Selection::Matching => &[Algorithm::Matching],
            Selection::MaxSinr => &[Algorithm::MaxSinr],
        }
    }
}

/// One algorithm on one scenario.
///
/// "Assigned" users are those served by a pico; the `_all` columns average
/// over every user, macro-served ones included.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRecord {
    pub users: usize,
    pub picos: usize,
    pub seed: u64,
    pub algorithm: Algorithm,
    pub outcome: Option<Outcome>,
    pub outer_iterations: usize,
    pub iterations_per_user: f64,
    pub assigned_users: usize,
    pub blocking_pairs: usize,
    pub avg_rate_per_user: Option<f64>,
    pub avg_rate_all_users: Option<f64>,
    pub avg_utility_per_user: Option<f64>,
    pub avg_utility_all_users: Option<f64>,
    pub laptop_utility: Option<f64>,
    pub tablet_utility: Option<f64>,
    pub smartphone_utility: Option<f64>,
    pub laptop_utility_all: Option<f64>,
    pub tablet_utility_all: Option<f64>,
    pub smartphone_utility_all: Option<f64>,
    pub avg_utility_per_scbs: Option<f64>,
}

/// Names accepted by [`MetricsRecord::metric`].
pub const METRICS: [&str; 13] = [
    "avg_rate_per_user",
    "avg_rate_all_users",
    "avg_utility_per_user",
    "avg_utility_all_users",
    "laptop_utility",
    "tablet_utility",
    "smartphone_utility",
    "laptop_utility_all",
    "tablet_utility_all",
    "smartphone_utility_all",
    "avg_utility_per_scbs",
    "iterations_per_user",
    "assigned_users",
];

impl MetricsRecord {
    pub fn metric(&self, name: &str) -> Option<f64> {
        match name {
            "avg_rate_per_user" => self.avg_rate_per_user,
            "avg_rate_all_users" => self.avg_rate_all_users,
            "avg_utility_per_user" => self.avg_utility_per_user,
            "avg_utility_all_users" => self.avg_utility_all_users,
            "laptop_utility" => self.laptop_utility,
            "tablet_utility" => self.tablet_utility,
            "smartphone_utility" => self.smartphone_utility,
            "laptop_utility_all" => self.laptop_utility_all,
            "tablet_utility_all" => self.tablet_utility_all,
            "smartphone_utility_all" => self.smartphone_utility_all,
            "avg_utility_per_scbs" => self.avg_utility_per_scbs,
            "iterations_per_user" => Some(self.iterations_per_user),
            "assigned_users" => Some(self.assigned_users as f64),
            _ => None,
        }
    }
}

/// Grid of network sizes to sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub users: Vec<usize>,
    pub picos: Vec<usize>,
}

impl Grid {
    pub fn points(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.users
            .iter()
            .flat_map(move |&n| self.picos.iter().map(move |&p| (n, p)))
    }
}

#[derive(Default)]
struct Mean {
    sum: f64,
    count: usize,
}

impl Mean {
    fn add(&mut self, v: f64) {
        self.sum += v;
        self.count += 1;
    }

    fn get(&self) -> Option<f64> {
        (self.count > 0).then(|| self.sum / self.count as f64)
    }
}

/// Evaluate a final matching on a scenario.
pub fn measure(
    scenario: &Scenario,
    matching: &Matching,
    algorithm: Algorithm,
    seed: u64,
) -> MetricsRecord {
    let game = ContextGame::new(scenario);
    let mut rate = Mean::default();
    let mut rate_all = Mean::default();
    let mut util = Mean::default();
    let mut util_all = Mean::default();
    let mut class: [Mean; 3] = Default::default();
    let mut class_all: [Mean; 3] = Default::default();

    for user in scenario.user_ids() {
        let cell = matching.cell_of(user);
        let r = scenario.rate(user, cell);
        let u = game.user_utility(matching, user, cell);
        let k = scenario.user(user).device.index();
        rate_all.add(r);
        util_all.add(u);
        class_all[k].add(u);
        if !cell.is_macro() {
            rate.add(r);
            util.add(u);
            class[k].add(u);
        }
    }

    let macro_load = matching.macro_load();
    let per_scbs = (scenario.num_picos() > 0).then(|| {
        let total: f64 = scenario
            .pico_ids()
            .flat_map(|j| matching.members(j).iter().map(move |&i| (j, i)))
            .map(|(j, i)| {
                scbs_utility_from(CellId::MACRO, macro_load, j, i, scenario, &game.utility)
            })
            .sum();
        total / scenario.num_picos() as f64
    });

    let [laptop, tablet, smartphone] = class.map(|m| m.get());
    let [laptop_all, tablet_all, smartphone_all] = class_all.map(|m| m.get());
    debug_assert_eq!(DeviceClass::Laptop.index(), 0);

    MetricsRecord {
        users: scenario.num_users(),
        picos: scenario.num_picos(),
        seed,
        algorithm,
        outcome: None,
        outer_iterations: 1,
        iterations_per_user: if scenario.num_users() > 0 { 1.0 } else { 0.0 },
        assigned_users: rate.count,
        blocking_pairs: is_stable(&game, matching).len(),
        avg_rate_per_user: rate.get(),
        avg_rate_all_users: rate_all.get(),
        avg_utility_per_user: util.get(),
        avg_utility_all_users: util_all.get(),
        laptop_utility: laptop,
        tablet_utility: tablet,
        smartphone_utility: smartphone,
        laptop_utility_all: laptop_all,
        tablet_utility_all: tablet_all,
        smartphone_utility_all: smartphone_all,
        avg_utility_per_scbs: per_scbs,
    }
}

/// Run the selected algorithms on one scenario.
pub fn run_scenario(
    scenario: &Scenario,
    seed: u64,
    selection: Selection,
) -> Result<Vec<MetricsRecord>> {
    let mut out = Vec::with_capacity(2);
    for &algorithm in selection.algorithms() {
        let record = match algorithm {
            Algorithm::Matching => {
                let game = ContextGame::new(scenario);
                let result = solve(&game, scenario.config().max_outer)?;
                let mut r = measure(scenario, &result.matching, algorithm, seed);
                r.outcome = Some(result.outcome);
                r.outer_iterations = result.outer_iterations;
                r.iterations_per_user = result.iterations_per_user();
                r
            }
            Algorithm::MaxSinr => {
                let m = max_sinr_assignment(scenario, scenario.config().baseline_quota);
                measure(scenario, &m, algorithm, seed)
            }
        };
        out.push(record);
    }
    Ok(out)
}

/// Sweep `grid` with `runs` scenarios per point. Scenario `s` (1-based) of
/// every grid point uses seed `config.rng_seed + s`. Output is ordered by
/// grid point, then seed, then algorithm, whatever the thread count.
pub fn run_experiment(
    config: &Config,
    grid: &Grid,
    runs: usize,
    selection: Selection,
) -> Result<Vec<MetricsRecord>> {
    config.validate()?;
    let tasks: Vec<(usize, usize, u64)> = grid
        .points()
        .flat_map(|(n, p)| (1..=runs as u64).map(move |s| (n, p, s)))
        .collect();

    let per_task: Vec<Vec<MetricsRecord>> = tasks
        .par_iter()
        .map(|&(n, p, s)| {
            let seed = config.rng_seed.wrapping_add(s);
            let wrap = |source: Error| Error::GridPoint {
                users: n,
                picos: p,
                seed,
                source: Box::new(source),
            };
            let scenario = generate_scenario(&config.with_size(n, p), seed).map_err(wrap)?;
            run_scenario(&scenario, seed, selection).map_err(wrap)
        })
        .collect::<Result<_>>()?;
    Ok(per_task.into_iter().flatten().collect())
}

/// Mean of `metric` over records of one algorithm at one grid point, skipping
/// records where the metric is undefined.
pub fn grid_mean(
    records: &[MetricsRecord],
    algorithm: Algorithm,
    users: usize,
    picos: usize,
    metric: &str,
) -> Option<f64> {
    let mut m = Mean::default();
    records
        .iter()
        .filter(|r| r.algorithm == algorithm && r.users == users && r.picos == picos)
        .filter_map(|r| r.metric(metric))
        .for_each(|v| m.add(v));
    m.get()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cardinality_and_order() {
        let config = Config::default();
        let grid = Grid {
            users: vec![10],
            picos: vec![2, 4, 6],
        };
        let records = run_experiment(&config, &grid, 3, Selection::Both).unwrap();
        assert_eq!(records.len(), 3 * 3 * 2);
        assert_eq!(records[0].picos, 2);
        assert_eq!(records[0].algorithm, Algorithm::Matching);
        assert_eq!(records[1].algorithm, Algorithm::MaxSinr);
        assert_eq!(records[2].seed, 2);
        assert_eq!(records.last().unwrap().picos, 6);
    }

    #[test]
    fn zero_runs_is_empty() {
        let grid = Grid {
            users: vec![10],
            picos: vec![3],
        };
        assert!(
            run_experiment(&Config::default(), &grid, 0, Selection::Both)
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn users_are_conserved_and_iterations_floor() {
        let config = Config::default();
        for seed in 1..6 {
            let s = generate_scenario(&config.with_size(30, 10), seed).unwrap();
            for r in run_scenario(&s, seed, Selection::Both).unwrap() {
                assert!(r.iterations_per_user >= 1.0);
                assert!(r.assigned_users <= 30);
            }
            let game = ContextGame::new(&s);
            let m = solve(&game, 1000).unwrap().matching;
            let total: usize = (0..s.num_cells()).map(|j| m.load(CellId(j))).sum();
            assert_eq!(total, 30);
        }
    }

    #[test]
    fn metric_lookup_covers_every_name() {
        let s = generate_scenario(&Config::default().with_size(5, 2), 1).unwrap();
        let r = &run_scenario(&s, 1, Selection::MaxSinr).unwrap()[0];
        for name in METRICS {
            let _ = r.metric(name);
        }
        assert!(r.metric("iterations_per_user").is_some());
        assert!(r.metric("nope").is_none());
    }
}
