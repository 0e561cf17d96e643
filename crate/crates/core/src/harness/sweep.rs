//! Sweep orchestration and per-run outputs.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::config::{save_config, ExperimentConfig, Pairing};
use super::csvio::{fmt_f, write_rows};
use crate::comms::{fuse_confidence, sample_channel, ChannelSample};
use crate::detection::{coverage_curves, CoverageCurvePoint, MultiViewBreakdown, ObserverCounts, RepCounts};
use crate::error::HarnessError;
use crate::params::ModelParams;
use crate::rng::{derive_run_seed, mix64, RngHandle};
use crate::rugby::CollisionEvent;
use crate::sim::{MatchLog, Simulation};
use crate::swarm::{StrategyMode, StrategySpec};

/// Strategy id used for match seeds under common random numbers.
const SHARED_MATCH_ID: u8 = 0xFF;
/// Mixed into the master seed for the independent second run set.
const UNPAIRED_SALT: u64 = 0x756E_7061_6972_6564;
const CHANNEL_STREAM: u64 = 3;

pub const SUMMARY_HEADER: &[&str] = &[
    "strategy",
    "n_drones",
    "rep",
    "total_collisions",
    "seen_ge1",
    "seen_ge2",
    "exactly1",
    "exactly2",
    "exactly3",
    "more_than_3",
    "missed",
];

pub const SWEEP_HEADER: &[&str] = &[
    "strategy",
    "n_drones",
    "reps",
    "mean_total",
    "mean_seen_ge1",
    "mean_seen_ge2",
    "mean_diff",
    "pct_exactly1",
    "pct_exactly2",
    "pct_exactly3",
    "pct_more_than_3",
    "pct_missed",
];

pub const EVENT_HEADER: &[&str] = &["run_id", "event_id", "tick", "x", "y", "severity", "n_observers", "observer_ids"];
pub const CHANNEL_HEADER: &[&str] = &["event_id", "drone_id", "snr", "dos", "gamma"];
pub const FUSION_HEADER: &[&str] = &["event_id", "n_observers", "gamma_list", "weight_list", "confidence", "declared"];

/// Written in place of metrics that are undefined for a run with no collisions.
pub const NO_COLLISIONS: &str = "no-collisions";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunSeeds {
    pub match_seed: u64,
    pub drone_seed: u64,
}

/// Seeds for one `(strategy, drone count, rep)` cell.
///
/// Independently seeded runs use `derive_run_seed(master, strategy, n, rep)`
/// for everything. Under common random numbers the match seed drops the
/// strategy and drone count. `second_set` selects the independent run set
/// used for unpaired curves.
pub fn run_seeds(master: u64, mode: StrategyMode, n: usize, rep: u32, crn: bool, second_set: bool) -> RunSeeds {
    let master = if second_set { mix64(master ^ UNPAIRED_SALT) } else { master };
    let run = derive_run_seed(master, mode.id(), n as u16, rep);
    let match_seed = if crn {
        derive_run_seed(master, SHARED_MATCH_ID, 0, rep)
    } else {
        run
    };
    RunSeeds {
        match_seed,
        drone_seed: run,
    }
}

pub fn simulate(params: &ModelParams, mode: StrategyMode, n_drones: usize, ticks: u64, seeds: RunSeeds) -> MatchLog {
    let spec = StrategySpec::from_params(mode, params);
    Simulation::new(params, spec, n_drones, ticks, seeds.match_seed, seeds.drone_seed).run(false)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunSummary {
    pub strategy: StrategyMode,
    pub n_drones: usize,
    pub rep: u32,
    pub counts: ObserverCounts,
}

impl RunSummary {
    pub fn rep_counts(&self) -> RepCounts {
        RepCounts {
            seen_ge1: self.counts.seen_ge1(),
            seen_ge2: self.counts.seen_ge2(),
            total: self.counts.total,
        }
    }

    fn row(&self) -> Vec<String> {
        let c = &self.counts;
        vec![
            self.strategy.name().to_string(),
            self.n_drones.to_string(),
            self.rep.to_string(),
            c.total.to_string(),
            c.seen_ge1().to_string(),
            c.seen_ge2().to_string(),
            c.exactly1.to_string(),
            c.exactly2.to_string(),
            c.exactly3.to_string(),
            c.more_than_3.to_string(),
            c.missed.to_string(),
        ]
    }
}

/// Aggregate over the repetitions at one `(strategy, drone count)` point.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRecord {
    pub strategy: StrategyMode,
    pub point: CoverageCurvePoint,
    /// Mean of per-rep percentages over reps that had collisions.
    pub breakdown: Option<MultiViewBreakdown>,
    pub reps: u32,
}

impl SweepRecord {
    fn row(&self) -> Vec<String> {
        let p = &self.point;
        let mut row = vec![
            self.strategy.name().to_string(),
            p.n_drones.to_string(),
            self.reps.to_string(),
            fmt_f(p.mean_total),
            fmt_f(p.mean_seen_ge1),
            fmt_f(p.mean_seen_ge2),
            fmt_f(p.diff()),
        ];
        match &self.breakdown {
            Some(b) => row.extend(
                [b.pct_exactly_1, b.pct_exactly_2, b.pct_exactly_3, b.pct_more_than_3, b.pct_missed].map(fmt_f),
            ),
            None => row.extend(std::iter::repeat_n(NO_COLLISIONS.to_string(), 5)),
        }
        row
    }
}

/// Aggregates one point. For an unpaired curve, `seen_ge2` is averaged over
/// the independent `second_set` instead of `runs`.
pub fn aggregate(strategy: StrategyMode, n: usize, runs: &[RunSummary], second_set: Option<&[RunSummary]>) -> SweepRecord {
    let reps: Vec<RepCounts> = runs.iter().map(RunSummary::rep_counts).collect();
    let mut point = coverage_curves(&[(n, reps)])[0];
    if let Some(other) = second_set {
        let other: Vec<RepCounts> = other.iter().map(RunSummary::rep_counts).collect();
        point.mean_seen_ge2 = coverage_curves(&[(n, other)])[0].mean_seen_ge2;
    }
    let breakdowns: Vec<MultiViewBreakdown> = runs.iter().filter_map(|r| r.counts.breakdown().ok()).collect();
    SweepRecord {
        strategy,
        point,
        breakdown: MultiViewBreakdown::mean(&breakdowns),
        reps: runs.len() as u32,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepOutput {
    pub runs: Vec<RunSummary>,
    /// Second run set, present only for unpaired sweeps.
    pub unpaired_runs: Vec<RunSummary>,
    pub records: Vec<SweepRecord>,
}

impl SweepOutput {
    pub fn record(&self, strategy: StrategyMode, n: usize) -> Option<&SweepRecord> {
        self.records
            .iter()
            .find(|r| r.strategy == strategy && r.point.n_drones == n)
    }

    /// Coverage curve of one strategy, ordered by drone count.
    pub fn curve(&self, strategy: StrategyMode) -> Vec<CoverageCurvePoint> {
        let mut c: Vec<_> = self
            .records
            .iter()
            .filter(|r| r.strategy == strategy)
            .map(|r| r.point)
            .collect();
        c.sort_by_key(|p| p.n_drones);
        c
    }
}

fn event_rows(run_id: &str, events: &[CollisionEvent]) -> Vec<Vec<String>> {
    events
        .iter()
        .map(|e| {
            vec![
                run_id.to_string(),
                e.event_id.to_string(),
                e.tick.to_string(),
                fmt_f(e.pos.x),
                fmt_f(e.pos.y),
                fmt_f(e.severity),
                e.observers.len().to_string(),
                e.observers.iter().map(u32::to_string).collect::<Vec<_>>().join(";"),
            ]
        })
        .collect()
}

pub fn run_id(mode: StrategyMode, n: usize, rep: u32) -> String {
    format!("{}-n{}-r{}", mode.name(), n, rep)
}

/// Runs the sweep in memory. Points and repetitions execute in parallel;
/// results are collected in `(strategy, count, rep)` order so the output
/// does not depend on scheduling. `on_point` sees each point's event logs.
pub fn execute_sweep(
    cfg: &ExperimentConfig,
    mut on_point: impl FnMut(StrategyMode, usize, &[(u32, MatchLog)]) -> Result<(), HarnessError>,
) -> Result<SweepOutput, HarnessError> {
    cfg.validate()?;
    let crn = cfg.common_random_numbers;
    let mut out = SweepOutput {
        runs: Vec::new(),
        unpaired_runs: Vec::new(),
        records: Vec::new(),
    };
    let summarize = |mode, n, rep, log: &MatchLog| RunSummary {
        strategy: mode,
        n_drones: n,
        rep,
        counts: ObserverCounts::from_events(&log.events),
    };
    for &mode in &cfg.strategies {
        for &n in &cfg.drone_counts {
            let logs: Vec<(u32, MatchLog)> = (0..cfg.reps)
                .into_par_iter()
                .map(|rep| {
                    let seeds = run_seeds(cfg.master_seed, mode, n, rep, crn, false);
                    (rep, simulate(&cfg.params, mode, n, cfg.ticks, seeds))
                })
                .collect();
            on_point(mode, n, &logs)?;
            let runs: Vec<RunSummary> = logs.iter().map(|(rep, log)| summarize(mode, n, *rep, log)).collect();
            let record = if cfg.pairing == Pairing::Unpaired {
                let second: Vec<RunSummary> = (0..cfg.reps)
                    .into_par_iter()
                    .map(|rep| {
                        let seeds = run_seeds(cfg.master_seed, mode, n, rep, crn, true);
                        summarize(mode, n, rep, &simulate(&cfg.params, mode, n, cfg.ticks, seeds))
                    })
                    .collect();
                let rec = aggregate(mode, n, &runs, Some(&second));
                out.unpaired_runs.extend(second);
                rec
            } else {
                aggregate(mode, n, &runs, None)
            };
            out.records.push(record);
            out.runs.extend(runs);
        }
    }
    Ok(out)
}

fn create_dir(path: &Path) -> Result<(), HarnessError> {
    fs::create_dir_all(path).map_err(|e| HarnessError::io(path, e))
}

/// Runs the configured sweep and writes `summary.csv`, `sweep.csv`,
/// `events/<strategy>-n<count>.csv` and the resolved `config.txt` under
/// the output directory.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<SweepOutput, HarnessError> {
    cfg.validate()?;
    let dir = &cfg.output_dir;
    create_dir(dir)?;
    let events_dir = dir.join("events");
    if cfg.write_events {
        create_dir(&events_dir)?;
    }
    let out = execute_sweep(cfg, |mode, n, logs| {
        if !cfg.write_events {
            return Ok(());
        }
        let rows = logs
            .iter()
            .flat_map(|(rep, log)| event_rows(&run_id(mode, n, *rep), &log.events))
            .collect::<Vec<_>>();
        write_rows(&events_dir.join(format!("{}-n{}.csv", mode.name(), n)), EVENT_HEADER, rows)
    })?;
    write_summary(&dir.join("summary.csv"), &out.runs)?;
    if cfg.pairing == Pairing::Unpaired {
        write_summary(&dir.join("summary_unpaired.csv"), &out.unpaired_runs)?;
    }
    write_rows(&dir.join("sweep.csv"), SWEEP_HEADER, out.records.iter().map(SweepRecord::row))?;
    save_config(cfg, &dir.join("config.txt"))?;
    Ok(out)
}

fn write_summary(path: &Path, runs: &[RunSummary]) -> Result<(), HarnessError> {
    write_rows(path, SUMMARY_HEADER, runs.iter().map(RunSummary::row))
}

/// A single match with full per-event outputs.
#[derive(Clone, Debug)]
pub struct SingleRun {
    pub log: MatchLog,
    pub summary: RunSummary,
    /// Per observed event: its id and the observing drones' channel samples.
    pub channels: Vec<(u64, Vec<ChannelSample>)>,
}

/// Runs one match and draws channel samples for every observer of every
/// event at the event's tick.
pub fn run_single(params: &ModelParams, mode: StrategyMode, n_drones: usize, ticks: u64, seed: u64) -> SingleRun {
    let spec = StrategySpec::from_params(mode, params);
    let mut sim = Simulation::new(params, spec, n_drones, ticks, seed, seed);
    let mut channel_rng = RngHandle::new(seed).fork(CHANNEL_STREAM);
    let mut events = Vec::new();
    let mut channels = Vec::new();
    while !sim.is_finished() {
        let tick_events = sim.advance_tick().expect("loop stops at max_ticks");
        for e in &tick_events {
            if e.observers.is_empty() {
                continue;
            }
            let samples = sim
                .world()
                .drones
                .iter()
                .filter(|d| e.observers.binary_search(&d.id).is_ok())
                .map(|d| sample_channel(&mut channel_rng, d, e, &params.channel))
                .collect();
            channels.push((e.event_id, samples));
        }
        events.extend(tick_events);
    }
    let summary = RunSummary {
        strategy: mode,
        n_drones,
        rep: 0,
        counts: ObserverCounts::from_events(&events),
    };
    SingleRun {
        log: MatchLog {
            ticks,
            events,
            trajectories: None,
        },
        summary,
        channels,
    }
}

/// One row of the fusion CSV for a group of samples.
pub fn fusion_row(event_id: u64, samples: &[ChannelSample], threshold: f64) -> Vec<String> {
    let join = |v: &mut dyn Iterator<Item = f64>| v.map(fmt_f).collect::<Vec<_>>().join(";");
    let gammas = join(&mut samples.iter().map(|s| s.gamma));
    let (weights, confidence, declared) = match fuse_confidence(samples, threshold) {
        Ok(r) => (join(&mut r.weights.iter().copied()), fmt_f(r.confidence), r.declared),
        Err(_) => (String::new(), "NA".to_string(), false),
    };
    vec![
        event_id.to_string(),
        samples.len().to_string(),
        gammas,
        weights,
        confidence,
        declared.to_string(),
    ]
}

/// Writes `events.csv`, `summary.csv`, `channels.csv` and `fusion.csv` for a single run.
pub fn write_single_run(run: &SingleRun, params: &ModelParams, seed: u64, dir: &Path) -> Result<Vec<PathBuf>, HarnessError> {
    create_dir(dir)?;
    let s = &run.summary;
    let id = format!("{}-n{}-s{}", s.strategy.name(), s.n_drones, seed);
    let paths: Vec<PathBuf> = ["events.csv", "summary.csv", "channels.csv", "fusion.csv"]
        .iter()
        .map(|f| dir.join(f))
        .collect();
    write_rows(&paths[0], EVENT_HEADER, event_rows(&id, &run.log.events))?;
    write_summary(&paths[1], std::slice::from_ref(s))?;
    let channel_rows = run.channels.iter().flat_map(|(eid, samples)| {
        samples.iter().map(move |c| {
            vec![
                eid.to_string(),
                c.drone_id.to_string(),
                fmt_f(c.snr),
                fmt_f(c.dos),
                fmt_f(c.gamma),
            ]
        })
    });
    write_rows(&paths[2], CHANNEL_HEADER, channel_rows)?;
    let fusion_rows = run
        .channels
        .iter()
        .map(|(eid, samples)| fusion_row(*eid, samples, params.fusion_threshold));
    write_rows(&paths[3], FUSION_HEADER, fusion_rows)?;
    Ok(paths)
}
