use proptest::prelude::*;
use swarmsim::comms::{compute_energy, fuse_confidence, link_bandwidth, ChannelSample, EnergyParams, LinkBudget};
use swarmsim::detection::{
    coverage_curves, gap_statistics, observers_of, CoverageCurvePoint, ObserverCounts, RepCounts,
};
use swarmsim::rugby::CollisionEvent;
use swarmsim::swarm::Drone;
use swarmsim::Vec2;

fn event_at(x: f64, y: f64) -> CollisionEvent {
    CollisionEvent {
        event_id: 0,
        tick: 0,
        pos: Vec2::new(x, y),
        players: (0, 1),
        severity: 0.0,
        observers: Vec::new(),
        clip_window: (0, 0),
    }
}

fn point(n: usize, ge1: f64, ge2: f64) -> CoverageCurvePoint {
    CoverageCurvePoint {
        n_drones: n,
        mean_seen_ge1: ge1,
        mean_seen_ge2: ge2,
        mean_total: 100.0,
    }
}

#[test]
fn detection_boundary_is_inclusive() {
    let drones = [Drone::new(0, Vec2::ZERO, 10.0, 5.0)];
    assert_eq!(observers_of(&event_at(3.0, 4.0), &drones), vec![0]);
    assert!(observers_of(&event_at(3.1, 4.0), &drones).is_empty());
}

#[test]
fn gap_statistics_three_points() {
    let curve = [point(1, 10.0, 5.0), point(2, 20.0, 18.0), point(3, 30.0, 30.0)];
    let g = gap_statistics(&curve).unwrap();
    assert!((g.mean_difference_pct - 700.0 / 60.0).abs() < 1e-9);
    assert_eq!((g.max_positive_difference, g.max_positive_at), (5.0, 1));
    assert_eq!((g.max_negative_difference, g.max_negative_at), (0.0, 3));
}

#[test]
fn gap_statistics_single_point() {
    let g = gap_statistics(&[point(4, 50.0, 40.0)]).unwrap();
    assert!((g.mean_difference_pct - 20.0).abs() < 1e-9);
    assert_eq!(g.max_positive_difference, 10.0);
    assert_eq!(g.max_negative_difference, 10.0);
    assert_eq!(g.max_positive_at, 4);
}

#[test]
fn gap_statistics_empty_or_blind() {
    assert!(gap_statistics(&[]).is_none());
    assert!(gap_statistics(&[point(1, 0.0, 0.0)]).is_none());
}

#[test]
fn coverage_curve_averages_reps() {
    let reps = vec![
        RepCounts { seen_ge1: 10, seen_ge2: 5, total: 20 },
        RepCounts { seen_ge1: 20, seen_ge2: 15, total: 20 },
    ];
    let c = coverage_curves(&[(3, reps), (4, vec![])]);
    assert_eq!(c, vec![CoverageCurvePoint { n_drones: 3, mean_seen_ge1: 15.0, mean_seen_ge2: 10.0, mean_total: 20.0 }]);
    assert_eq!(c[0].diff(), 5.0);
}

#[test]
fn fusion_two_drone_example() {
    let s = [
        ChannelSample { drone_id: 0, snr: 3.0, dos: 1.0, gamma: 0.9 },
        ChannelSample { drone_id: 1, snr: 1.0, dos: 1.0, gamma: 0.1 },
    ];
    let f = fuse_confidence(&s, 0.5).unwrap();
    assert!((f.weights[0] - 0.75).abs() < 1e-12);
    assert!((f.confidence - 0.7).abs() < 1e-12);
    assert!(f.declared);
    assert!(!fuse_confidence(&s[..1], 0.5).unwrap().declared);
}

#[test]
fn energy_default_value() {
    // 0.5 * 30 * 10 * 0.81
    assert!((compute_energy(&EnergyParams::default()) - 121.5).abs() < 1e-9);
}

fn sample() -> impl Strategy<Value = ChannelSample> {
    (0u32..100, 1e-3f64..1e3, 0.01f64..=1.0, 0.0f64..=1.0).prop_map(|(drone_id, snr, dos, gamma)| ChannelSample {
        drone_id,
        snr,
        dos,
        gamma,
    })
}

proptest! {
    #[test]
    fn fusion_weights_are_a_distribution(samples in prop::collection::vec(sample(), 1..12)) {
        let f = fuse_confidence(&samples, 0.5).unwrap();
        prop_assert!((f.weights.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        prop_assert!(f.weights.iter().all(|&w| w >= 0.0));
        let lo = samples.iter().map(|s| s.gamma).fold(f64::INFINITY, f64::min);
        let hi = samples.iter().map(|s| s.gamma).fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(f.confidence >= lo - 1e-12 && f.confidence <= hi + 1e-12);
    }

    #[test]
    fn fusion_ignores_common_snr_scale(samples in prop::collection::vec(sample(), 1..12), c in 1e-3f64..1e3) {
        let scaled: Vec<ChannelSample> = samples.iter().map(|s| ChannelSample { snr: s.snr * c, ..*s }).collect();
        let a = fuse_confidence(&samples, 0.5).unwrap().confidence;
        let b = fuse_confidence(&scaled, 0.5).unwrap().confidence;
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn energy_is_quadratic_in_voltage(v in 0.1f64..5.0, k in 0.1f64..10.0) {
        let p = EnergyParams { v_dd: v, k, ..EnergyParams::default() };
        let p2 = EnergyParams { v_dd: 2.0 * v, ..p };
        prop_assert!((compute_energy(&p2) - 4.0 * compute_energy(&p)).abs() < 1e-9 * compute_energy(&p2));
    }

    #[test]
    fn bandwidth_grows_with_links_and_gain(n in 1usize..30, h in 1e-5f64..1e-2) {
        let link = LinkBudget { h, ..LinkBudget::default() };
        let stronger = LinkBudget { h: 2.0 * h, ..link };
        prop_assert!(link_bandwidth(&vec![link; n + 1]) > link_bandwidth(&vec![link; n]));
        prop_assert!(link_bandwidth(&[stronger]) > link_bandwidth(&[link]));
    }

    #[test]
    fn observer_counts_are_consistent(obs in prop::collection::vec(0usize..8, 1..200)) {
        let mut c = ObserverCounts::default();
        for &k in &obs {
            c.add(k);
        }
        prop_assert!(c.seen_ge2() <= c.seen_ge1() && c.seen_ge1() <= c.total);
        prop_assert!((c.breakdown().unwrap().sum() - 100.0).abs() < 1e-9);
    }

    #[test]
    fn observers_ignore_drone_order(
        pts in prop::collection::vec((0.0f64..100.0, 0.0f64..70.0), 1..15),
        ex in 0.0f64..100.0,
        ey in 0.0f64..70.0,
        seed in any::<u64>(),
    ) {
        let drones: Vec<Drone> = pts.iter().enumerate().map(|(i, &(x, y))| Drone::new(i as u32, Vec2::new(x, y), 10.0, 5.0)).collect();
        let mut shuffled = drones.clone();
        let mut r = swarmsim::RngHandle::new(seed);
        for i in (1..shuffled.len()).rev() {
            shuffled.swap(i, r.index(i + 1));
        }
        let e = event_at(ex, ey);
        prop_assert_eq!(observers_of(&e, &drones), observers_of(&e, &shuffled));
    }
}
