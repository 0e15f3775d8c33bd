use std::collections::BTreeSet;

use serde::Serialize;

use super::{grid_mean, Algorithm, MetricsRecord, METRICS};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GainRow {
    pub users: usize,
    pub picos: usize,
    pub metric: &'static str,
    pub matching_mean: Option<f64>,
    pub baseline_mean: Option<f64>,
    /// `(matching - baseline) / |baseline|`; undefined when either mean is
    /// missing or the baseline mean is zero.
    pub gain: Option<f64>,
}

/// Relative gain of the matching engine over max-SINR for every metric at
/// every grid point present in `records`.
pub fn summarize_gain(records: &[MetricsRecord]) -> Result<Vec<GainRow>> {
    let points: BTreeSet<(usize, usize)> = records.iter().map(|r| (r.users, r.picos)).collect();
    let mut rows = Vec::new();
    for (users, picos) in points {
        for (algorithm, missing) in [
            (Algorithm::Matching, "matching"),
            (Algorithm::MaxSinr, "max_sinr"),
        ] {
            if !records
                .iter()
                .any(|r| r.algorithm == algorithm && r.users == users && r.picos == picos)
            {
                return Err(Error::MissingPair {
                    users,
                    picos,
                    missing,
                });
            }
        }
        for metric in METRICS {
            let m = grid_mean(records, Algorithm::Matching, users, picos, metric);
            let b = grid_mean(records, Algorithm::MaxSinr, users, picos, metric);
            let gain = match (m, b) {
                (Some(m), Some(b)) if b != 0.0 => Some((m - b) / b.abs()),
                _ => None,
            };
            rows.push(GainRow {
                users,
                picos,
                metric,
                matching_mean: m,
                baseline_mean: b,
                gain,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(algorithm: Algorithm, seed: u64, utility: f64) -> MetricsRecord {
        MetricsRecord {
            users: 10,
            picos: 4,
            seed,
            algorithm,
            outcome: None,
            outer_iterations: 1,
            iterations_per_user: 1.0,
            assigned_users: 3,
            blocking_pairs: 0,
            avg_rate_per_user: Some(1e5),
            avg_rate_all_users: Some(1e5),
            avg_utility_per_user: Some(utility),
            avg_utility_all_users: None,
            laptop_utility: None,
            tablet_utility: None,
            smartphone_utility: None,
            laptop_utility_all: None,
            tablet_utility_all: None,
            smartphone_utility_all: None,
            avg_utility_per_scbs: Some(0.0),
        }
    }

    fn gain_of(rows: &[GainRow], metric: &str) -> Option<f64> {
        rows.iter().find(|r| r.metric == metric).unwrap().gain
    }

    #[test]
    fn identical_means_give_zero() {
        let rows = summarize_gain(&[
            record(Algorithm::Matching, 1, 3.0),
            record(Algorithm::MaxSinr, 1, 3.0),
        ])
        .unwrap();
        assert_eq!(gain_of(&rows, "avg_utility_per_user"), Some(0.0));
        assert_eq!(gain_of(&rows, "avg_rate_per_user"), Some(0.0));
        assert_eq!(gain_of(&rows, "avg_utility_all_users"), None);
        assert_eq!(gain_of(&rows, "avg_utility_per_scbs"), None);
    }

    #[test]
    fn doubling_gives_one() {
        let rows = summarize_gain(&[
            record(Algorithm::Matching, 1, 2.0),
            record(Algorithm::MaxSinr, 1, 1.0),
        ])
        .unwrap();
        assert_eq!(gain_of(&rows, "avg_utility_per_user"), Some(1.0));
    }

    #[test]
    fn hand_computed_means() {
        // matching mean (1 + 4) / 2 = 2.5, baseline mean (-2 + -3) / 2 = -2.5
        let records = [
            record(Algorithm::Matching, 1, 1.0),
            record(Algorithm::Matching, 2, 4.0),
            record(Algorithm::MaxSinr, 1, -2.0),
            record(Algorithm::MaxSinr, 2, -3.0),
        ];
        let rows = summarize_gain(&records).unwrap();
        assert_eq!(gain_of(&rows, "avg_utility_per_user"), Some(2.0));
    }

    #[test]
    fn missing_pair_is_an_error() {
        let err = summarize_gain(&[record(Algorithm::Matching, 1, 1.0)]).unwrap_err();
        assert!(matches!(
            err,
            Error::MissingPair {
                users: 10,
                picos: 4,
                missing: "max_sinr"
            }
        ));
    }
}
