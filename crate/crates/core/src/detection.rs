//! Observation of collisions by drones and the coverage statistics built on it.
//!
//! Ground truth is geometric, so there are no false positives: detection
//! accuracy here is recall over the logged collisions.

use crate::error::MetricError;
use crate::geom::distance;
use crate::rugby::CollisionEvent;
use crate::swarm::Drone;

/// Ids (ascending) of drones within their detection radius of the event,
/// boundary inclusive. Call at the event's tick.
pub fn observers_of(event: &CollisionEvent, drones: &[Drone]) -> Vec<u32> {
    let mut ids: Vec<u32> = drones
        .iter()
        .filter(|d| distance(d.pos, event.pos) <= d.detect_radius)
        .map(|d| d.id)
        .collect();
    ids.sort_unstable();
    ids
}

/// Per-tick detected and total collision counts over a match.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DetectionLedger {
    pub detected: Vec<u64>,
    pub total: Vec<u64>,
}

impl DetectionLedger {
    /// Builds the ledger over `horizon` ticks from a match's events.
    pub fn from_events(events: &[CollisionEvent], horizon: u64) -> Self {
        let mut ledger = Self {
            detected: vec![0; horizon as usize],
            total: vec![0; horizon as usize],
        };
        for e in events {
            let t = e.tick as usize;
            if t < ledger.total.len() {
                ledger.total[t] += 1;
                if !e.observers.is_empty() {
                    ledger.detected[t] += 1;
                }
            }
        }
        ledger
    }

    pub fn horizon(&self) -> usize {
        self.total.len()
    }
}

/// Sum of detections over sum of collisions.
pub fn detection_accuracy(ledger: &DetectionLedger) -> Result<f64, MetricError> {
    let total: u64 = ledger.total.iter().sum();
    if total == 0 {
        return Err(MetricError::NoCollisions);
    }
    let detected: u64 = ledger.detected.iter().sum();
    Ok(detected as f64 / total as f64)
}

/// Counts of collisions by number of observing drones.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ObserverCounts {
    pub total: u64,
    pub missed: u64,
    pub exactly1: u64,
    pub exactly2: u64,
    pub exactly3: u64,
    pub more_than_3: u64,
}

impl ObserverCounts {
    pub fn from_events(events: &[CollisionEvent]) -> Self {
        let mut c = Self::default();
        for e in events {
            c.add(e.observers.len());
        }
        c
    }

    pub fn add(&mut self, n_observers: usize) {
        self.total += 1;
        match n_observers {
            0 => self.missed += 1,
            1 => self.exactly1 += 1,
            2 => self.exactly2 += 1,
            3 => self.exactly3 += 1,
            _ => self.more_than_3 += 1,
        }
    }

    pub fn seen_ge1(&self) -> u64 {
        self.total - self.missed
    }

    pub fn seen_ge2(&self) -> u64 {
        self.exactly2 + self.exactly3 + self.more_than_3
    }

    pub fn breakdown(&self) -> Result<MultiViewBreakdown, MetricError> {
        if self.total == 0 {
            return Err(MetricError::NoCollisions);
        }
        let pct = |n: u64| 100.0 * n as f64 / self.total as f64;
        Ok(MultiViewBreakdown {
            pct_exactly_1: pct(self.exactly1),
            pct_exactly_2: pct(self.exactly2),
            pct_exactly_3: pct(self.exactly3),
            pct_more_than_3: pct(self.more_than_3),
            pct_missed: pct(self.missed),
        })
    }
}

/// Share of all collisions by observer count, in percent.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct MultiViewBreakdown {
    pub pct_exactly_1: f64,
    pub pct_exactly_2: f64,
    pub pct_exactly_3: f64,
    pub pct_more_than_3: f64,
    pub pct_missed: f64,
}

impl MultiViewBreakdown {
    pub fn sum(&self) -> f64 {
        self.pct_exactly_1 + self.pct_exactly_2 + self.pct_exactly_3 + self.pct_more_than_3 + self.pct_missed
    }

    /// Percent observed by two or more drones.
    pub fn pct_multi_view(&self) -> f64 {
        self.pct_exactly_2 + self.pct_exactly_3 + self.pct_more_than_3
    }

    /// Component-wise mean; `None` for an empty slice.
    pub fn mean(items: &[MultiViewBreakdown]) -> Option<MultiViewBreakdown> {
        if items.is_empty() {
            return None;
        }
        let n = items.len() as f64;
        let avg = |f: fn(&MultiViewBreakdown) -> f64| items.iter().map(f).sum::<f64>() / n;
        Some(MultiViewBreakdown {
            pct_exactly_1: avg(|b| b.pct_exactly_1),
            pct_exactly_2: avg(|b| b.pct_exactly_2),
            pct_exactly_3: avg(|b| b.pct_exactly_3),
            pct_more_than_3: avg(|b| b.pct_more_than_3),
            pct_missed: avg(|b| b.pct_missed),
        })
    }
}

pub fn multiview_breakdown(events: &[CollisionEvent]) -> Result<MultiViewBreakdown, MetricError> {
    ObserverCounts::from_events(events).breakdown()
}

/// One repetition's coverage counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RepCounts {
    pub seen_ge1: u64,
    pub seen_ge2: u64,
    pub total: u64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoverageCurvePoint {
    pub n_drones: usize,
    pub mean_seen_ge1: f64,
    pub mean_seen_ge2: f64,
    pub mean_total: f64,
}

impl CoverageCurvePoint {
    /// Collisions seen by exactly one drone on average: the single-view gap.
    pub fn diff(&self) -> f64 {
        self.mean_seen_ge1 - self.mean_seen_ge2
    }
}

/// Averages repetitions at each drone count. Points with no repetitions are skipped.
pub fn coverage_curves(per_count: &[(usize, Vec<RepCounts>)]) -> Vec<CoverageCurvePoint> {
    per_count
        .iter()
        .filter(|(_, reps)| !reps.is_empty())
        .map(|(n, reps)| {
            let k = reps.len() as f64;
            let mean = |f: fn(&RepCounts) -> u64| reps.iter().map(|r| f(r) as f64).sum::<f64>() / k;
            CoverageCurvePoint {
                n_drones: *n,
                mean_seen_ge1: mean(|r| r.seen_ge1),
                mean_seen_ge2: mean(|r| r.seen_ge2),
                mean_total: mean(|r| r.total),
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GapStatistics {
    /// `100 * sum D / sum mean_seen_ge1`.
    pub mean_difference_pct: f64,
    pub max_positive_difference: f64,
    pub max_positive_at: usize,
    pub max_negative_difference: f64,
    pub max_negative_at: usize,
}

/// Summarises `D(x) = ge1(x) - ge2(x)` over a curve. Extremes tie to the
/// lower drone count. `None` for an empty curve or one that never saw anything.
pub fn gap_statistics(curve: &[CoverageCurvePoint]) -> Option<GapStatistics> {
    let mut pts: Vec<&CoverageCurvePoint> = curve.iter().collect();
    pts.sort_by_key(|p| p.n_drones);
    let first = pts.first()?;
    let sum_ge1: f64 = pts.iter().map(|p| p.mean_seen_ge1).sum();
    if sum_ge1 == 0.0 {
        return None;
    }
    let sum_d: f64 = pts.iter().map(|p| p.diff()).sum();
    let (mut max_p, mut max_x) = (first.diff(), first.n_drones);
    let (mut min_p, mut min_x) = (first.diff(), first.n_drones);
    for p in &pts[1..] {
        let d = p.diff();
        if d > max_p {
            max_p = d;
            max_x = p.n_drones;
        }
        if d < min_p {
            min_p = d;
            min_x = p.n_drones;
        }
    }
    Some(GapStatistics {
        mean_difference_pct: 100.0 * sum_d / sum_ge1,
        max_positive_difference: max_p,
        max_positive_at: max_x,
        max_negative_difference: min_p,
        max_negative_at: min_x,
    })
}
