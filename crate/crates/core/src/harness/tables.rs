//! Report tables rebuilt from `sweep.csv`, plus the standalone fusion and
//! scenario reports.

use std::collections::BTreeMap;
use std::path::Path;

use super::csvio::{fmt_dp, fmt_f, read_table, to_csv_string, Columns};
use super::sweep::{fusion_row, CHANNEL_HEADER, FUSION_HEADER, NO_COLLISIONS, SWEEP_HEADER};
use crate::comms::{scenario_sweep, ChannelSample};
use crate::detection::{gap_statistics, CoverageCurvePoint, GapStatistics, MultiViewBreakdown};
use crate::error::HarnessError;
use crate::params::ModelParams;
use crate::swarm::StrategyMode;

/// One parsed `sweep.csv` line.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub strategy: String,
    pub point: CoverageCurvePoint,
    pub breakdown: Option<MultiViewBreakdown>,
}

pub fn read_sweep(path: &Path) -> Result<Vec<SweepRow>, HarnessError> {
    let (header, records) = read_table(path, SWEEP_HEADER)?;
    let cols = Columns::new(&header, path);
    records
        .iter()
        .map(|rec| {
            let breakdown = if cols.get(rec, "pct_exactly1") == NO_COLLISIONS {
                None
            } else {
                Some(MultiViewBreakdown {
                    pct_exactly_1: cols.parse(rec, "pct_exactly1")?,
                    pct_exactly_2: cols.parse(rec, "pct_exactly2")?,
                    pct_exactly_3: cols.parse(rec, "pct_exactly3")?,
                    pct_more_than_3: cols.parse(rec, "pct_more_than_3")?,
                    pct_missed: cols.parse(rec, "pct_missed")?,
                })
            };
            Ok(SweepRow {
                strategy: cols.get(rec, "strategy").to_string(),
                point: CoverageCurvePoint {
                    n_drones: cols.parse(rec, "n_drones")?,
                    mean_seen_ge1: cols.parse(rec, "mean_seen_ge1")?,
                    mean_seen_ge2: cols.parse(rec, "mean_seen_ge2")?,
                    mean_total: cols.parse(rec, "mean_total")?,
                },
                breakdown,
            })
        })
        .collect()
}

/// Strategies in order of first appearance, each with its rows.
fn group_by_strategy(rows: &[SweepRow]) -> Vec<(&str, Vec<&SweepRow>)> {
    let mut groups: Vec<(&str, Vec<&SweepRow>)> = Vec::new();
    for r in rows {
        match groups.iter_mut().find(|(s, _)| *s == r.strategy) {
            Some((_, v)) => v.push(r),
            None => groups.push((&r.strategy, vec![r])),
        }
    }
    groups
}

pub const TABLE1_HEADER: &[&str] = &[
    "strategy",
    "mean_difference_pct",
    "max_positive_difference",
    "max_positive_x",
    "max_negative_difference",
    "max_negative_x",
];

pub fn table1_row(strategy: &str, g: &GapStatistics) -> Vec<String> {
    vec![
        strategy.to_string(),
        fmt_dp(g.mean_difference_pct, 2),
        fmt_dp(g.max_positive_difference, 2),
        g.max_positive_at.to_string(),
        fmt_dp(g.max_negative_difference, 2),
        g.max_negative_at.to_string(),
    ]
}

/// Gap statistics between the single-view and multi-view curves, one row per strategy.
pub fn table1(rows: &[SweepRow]) -> Result<String, HarnessError> {
    let mut out = Vec::new();
    for (strategy, group) in group_by_strategy(rows) {
        if group.len() < 2 {
            return Err(HarnessError::Validation(format!(
                "strategy `{strategy}` needs at least 2 drone counts for gap statistics"
            )));
        }
        let curve: Vec<CoverageCurvePoint> = group.iter().map(|r| r.point).collect();
        let g = gap_statistics(&curve).ok_or_else(|| {
            HarnessError::Validation(format!("strategy `{strategy}` never observed a collision"))
        })?;
        out.push(table1_row(strategy, &g));
    }
    Ok(to_csv_string(TABLE1_HEADER, out))
}

pub const TABLE2_HEADER: &[&str] = &["mode", "n_drones", "exactly1", "exactly2", "exactly3", "more"];

/// Display label for a strategy name, falling back to the raw name.
pub fn mode_label(strategy: &str) -> String {
    strategy
        .parse::<StrategyMode>()
        .map(|m| m.label().to_string())
        .unwrap_or_else(|_| strategy.to_string())
}

pub fn table2_row(label: &str, n: usize, b: Option<&MultiViewBreakdown>) -> Vec<String> {
    let mut row = vec![label.to_string(), n.to_string()];
    match b {
        Some(b) => row.extend([b.pct_exactly_1, b.pct_exactly_2, b.pct_exactly_3, b.pct_more_than_3].map(|v| fmt_dp(v, 1))),
        None => row.extend(std::iter::repeat_n(NO_COLLISIONS.to_string(), 4)),
    }
    row
}

/// Observer-count breakdown at the requested drone counts, per strategy.
pub fn table2(rows: &[SweepRow], counts: &[usize]) -> Result<String, HarnessError> {
    let mut out = Vec::new();
    for (strategy, group) in group_by_strategy(rows) {
        let label = mode_label(strategy);
        for &n in counts {
            let row = group.iter().find(|r| r.point.n_drones == n).ok_or_else(|| {
                HarnessError::Validation(format!("drone count {n} missing for strategy `{strategy}`"))
            })?;
            out.push(table2_row(&label, n, row.breakdown.as_ref()));
        }
    }
    Ok(to_csv_string(TABLE2_HEADER, out))
}

/// Reads `event_id,drone_id,snr,dos,gamma` rows and fuses each event's samples.
pub fn fuse_file(path: &Path, threshold: f64) -> Result<String, HarnessError> {
    let (header, records) = read_table(path, CHANNEL_HEADER)?;
    let cols = Columns::new(&header, path);
    let mut by_event: BTreeMap<u64, Vec<ChannelSample>> = BTreeMap::new();
    for rec in &records {
        let sample = ChannelSample {
            drone_id: cols.parse(rec, "drone_id")?,
            snr: cols.parse(rec, "snr")?,
            dos: cols.parse(rec, "dos")?,
            gamma: cols.parse(rec, "gamma")?,
        };
        if sample.snr.is_nan() || sample.snr <= 0.0 || !(0.0..=1.0).contains(&sample.dos) || !(0.0..=1.0).contains(&sample.gamma) {
            return Err(HarnessError::Validation(format!(
                "{}: sample for drone {} out of range (snr > 0, dos and gamma in [0, 1])",
                path.display(),
                sample.drone_id
            )));
        }
        by_event.entry(cols.parse(rec, "event_id")?).or_default().push(sample);
    }
    let rows = by_event
        .iter()
        .map(|(id, samples)| fusion_row(*id, samples, threshold));
    Ok(to_csv_string(FUSION_HEADER, rows))
}

pub const SCENARIO_HEADER: &[&str] = &["n_drones", "edge_energy_j", "cloud_bits", "cloud_bits_per_s"];

pub fn scenario_table(counts: &[usize], params: &ModelParams) -> String {
    let recs = scenario_sweep(counts.iter().copied(), &params.energy, &params.link, params.control_bps);
    to_csv_string(
        SCENARIO_HEADER,
        recs.iter().map(|r| {
            vec![
                r.n_drones.to_string(),
                fmt_f(r.edge_energy_j),
                fmt_f(r.cloud_bits),
                fmt_f(r.cloud_bits_per_s),
            ]
        }),
    )
}
