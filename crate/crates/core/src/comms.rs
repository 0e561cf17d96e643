//! Channel-aware fusion of multi-drone detections and the two analytic
//! processing scenarios (on-board inference vs. streaming to the ground station).

use rand_distr::{Distribution, Normal};

use crate::error::FusionError;
use crate::geom::{distance, Vec2};
use crate::rng::RngHandle;
use crate::rugby::CollisionEvent;
use crate::swarm::Drone;

/// One drone's view of one collision as seen by the ground station.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelSample {
    pub drone_id: u32,
    /// Linear power ratio, > 0.
    pub snr: f64,
    /// Detection confidence in [0, 1].
    pub dos: f64,
    /// Detector output probability in [0, 1].
    pub gamma: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FusionResult {
    pub confidence: f64,
    pub weights: Vec<f64>,
    pub declared: bool,
}

/// Weights each drone by `snr * dos` (normalised) and averages the
/// detector probabilities with those weights. A collision is declared only
/// when at least two drones contributed and the fused confidence reaches
/// `threshold`.
pub fn fuse_confidence(samples: &[ChannelSample], threshold: f64) -> Result<FusionResult, FusionError> {
    if samples.is_empty() {
        return Err(FusionError::Empty);
    }
    let raw: Vec<f64> = samples.iter().map(|s| s.snr * s.dos).collect();
    let norm: f64 = raw.iter().sum();
    if norm.is_nan() || norm <= 0.0 {
        return Err(FusionError::DegenerateWeights);
    }
    let weights: Vec<f64> = raw.iter().map(|w| w / norm).collect();
    let confidence = weights.iter().zip(samples).map(|(w, s)| w * s.gamma).sum();
    Ok(FusionResult {
        confidence,
        declared: samples.len() >= 2 && confidence >= threshold,
        weights,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyParams {
    /// Hardware scale constant (opaque units).
    pub k: f64,
    /// Inference frequency, Hz.
    pub f_cnn: f64,
    /// Processing time, s.
    pub t_proc: f64,
    /// Supply voltage, V.
    pub v_dd: f64,
}

impl Default for EnergyParams {
    fn default() -> Self {
        Self {
            k: 0.5,
            f_cnn: 30.0,
            t_proc: 10.0,
            v_dd: 0.9,
        }
    }
}

/// On-board inference energy, `k * f_cnn * t_proc * v_dd^2` joules.
pub fn compute_energy(p: &EnergyParams) -> f64 {
    p.k * p.f_cnn * p.t_proc * p.v_dd * p.v_dd
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinkBudget {
    /// Encoding rate, bits/s.
    pub r_enc: f64,
    /// Observation window, s.
    pub t_obs: f64,
    /// Transmit power, W.
    pub p_t: f64,
    /// Channel gain magnitude.
    pub h: f64,
    /// Noise power, W.
    pub n0b: f64,
}

impl Default for LinkBudget {
    fn default() -> Self {
        Self {
            r_enc: 120e6,
            t_obs: 10.0,
            p_t: 0.1,
            h: 1e-3,
            n0b: 1e-10,
        }
    }
}

impl LinkBudget {
    pub fn snr(&self) -> f64 {
        self.p_t * self.h * self.h / self.n0b
    }

    /// `r_enc * t_obs * log2(1 + snr)`.
    pub fn bits(&self) -> f64 {
        self.r_enc * self.t_obs * self.snr().ln_1p() / std::f64::consts::LN_2
    }
}

/// Aggregate streaming load over the observation window, in bits. Divide by
/// `t_obs` for a rate.
pub fn link_bandwidth(links: &[LinkBudget]) -> f64 {
    links.iter().map(LinkBudget::bits).sum()
}

/// Synthetic channel used to exercise the fusion weighting.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelModel {
    /// Mean SNR at `ref_distance` from the ground station, dB.
    pub snr_ref_db: f64,
    pub ref_distance: f64,
    /// Log-normal shadowing standard deviation, dB.
    pub shadowing_sigma_db: f64,
    pub gamma_noise_sigma: f64,
    pub gcs_pos: Vec2,
}

impl Default for ChannelModel {
    fn default() -> Self {
        Self {
            snr_ref_db: 30.0,
            ref_distance: 10.0,
            shadowing_sigma_db: 4.0,
            gamma_noise_sigma: 0.05,
            gcs_pos: Vec2::new(50.0, 0.0),
        }
    }
}

pub const PATH_LOSS_EXPONENT: f64 = 2.0;

impl ChannelModel {
    /// Mean SNR in dB at `d` patches from the ground station (flat inside `ref_distance`).
    pub fn mean_snr_db(&self, d: f64) -> f64 {
        let ratio = d.max(self.ref_distance) / self.ref_distance;
        self.snr_ref_db - 10.0 * PATH_LOSS_EXPONENT * ratio.log10()
    }
}

/// Draws one drone's channel sample for an event.
///
/// SNR is log-normal around the path-loss mean; `dos` falls linearly from 1
/// at the event to 0 at the detection radius; `gamma` is `dos` plus Gaussian
/// noise, clamped to [0, 1].
pub fn sample_channel(rng: &mut RngHandle, drone: &Drone, event: &CollisionEvent, model: &ChannelModel) -> ChannelSample {
    let mean_db = model.mean_snr_db(distance(drone.pos, model.gcs_pos));
    let shadow = Normal::new(0.0, model.shadowing_sigma_db.max(0.0)).expect("finite sigma");
    let snr = 10f64.powf((mean_db + shadow.sample(rng)) / 10.0);
    let d = distance(drone.pos, event.pos);
    let dos = if drone.detect_radius > 0.0 {
        (1.0 - d / drone.detect_radius).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let noise = Normal::new(0.0, model.gamma_noise_sigma.max(0.0)).expect("finite sigma");
    let gamma = (dos + noise.sample(rng)).clamp(0.0, 1.0);
    ChannelSample {
        drone_id: drone.id,
        snr,
        dos,
        gamma,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScenarioRecord {
    pub n_drones: usize,
    /// On-board inference energy for the whole swarm, J.
    pub edge_energy_j: f64,
    /// Ground-control traffic in the edge scenario over `t_obs`, bits. No drone-to-drone traffic.
    pub edge_control_bits: f64,
    /// Streaming scenario: on-board compute is taken as zero.
    pub cloud_energy_j: f64,
    pub cloud_bits: f64,
    pub cloud_bits_per_s: f64,
}

/// Edge vs. cloud cost for each swarm size, every drone using the same link.
pub fn scenario_sweep(
    counts: impl IntoIterator<Item = usize>,
    energy: &EnergyParams,
    link: &LinkBudget,
    control_bps: f64,
) -> Vec<ScenarioRecord> {
    let per_drone_energy = compute_energy(energy);
    counts
        .into_iter()
        .map(|n| {
            let cloud_bits = link_bandwidth(&vec![*link; n]);
            ScenarioRecord {
                n_drones: n,
                edge_energy_j: n as f64 * per_drone_energy,
                edge_control_bits: n as f64 * control_bps * link.t_obs,
                cloud_energy_j: 0.0,
                cloud_bits,
                cloud_bits_per_s: if link.t_obs > 0.0 { cloud_bits / link.t_obs } else { 0.0 },
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(snr: f64, dos: f64, gamma: f64) -> ChannelSample {
        ChannelSample {
            drone_id: 0,
            snr,
            dos,
            gamma,
        }
    }

    #[test]
    fn fusion_examples() {
        let r = fuse_confidence(&[s(2.0, 0.5, 0.7)], 0.5).unwrap();
        assert!((r.confidence - 0.7).abs() < 1e-12);
        assert!(!r.declared);

        let r = fuse_confidence(&[s(2.0, 0.5, 0.8), s(1.0, 1.0, 0.6)], 0.5).unwrap();
        assert!((r.confidence - 0.7).abs() < 1e-12);
        assert!(r.declared);

        let r = fuse_confidence(&[s(3.0, 1.0, 1.0), s(1.0, 1.0, 0.0)], 0.5).unwrap();
        assert_eq!(r.weights, vec![0.75, 0.25]);
        assert!((r.confidence - 0.75).abs() < 1e-12);

        assert_eq!(fuse_confidence(&[s(1.0, 0.0, 0.5)], 0.5), Err(FusionError::DegenerateWeights));
        assert_eq!(fuse_confidence(&[], 0.5), Err(FusionError::Empty));
    }

    #[test]
    fn energy_examples() {
        let e = |k, f_cnn, t_proc, v_dd| compute_energy(&EnergyParams { k, f_cnn, t_proc, v_dd });
        assert_eq!(e(1.0, 1.0, 0.0, 1.0), 0.0);
        assert_eq!(e(1.0, 1.0, 1.0, 1.0), 1.0);
        assert_eq!(e(2.0, 3.0, 4.0, 2.0), 96.0);
    }

    #[test]
    fn bandwidth_examples() {
        let one = LinkBudget {
            r_enc: 2.0,
            t_obs: 3.0,
            p_t: 1.0,
            h: 1.0,
            n0b: 1.0,
        };
        assert!((link_bandwidth(&[one]) - 6.0).abs() < 1e-9);
        assert_eq!(link_bandwidth(&[LinkBudget { h: 0.0, ..one }]), 0.0);
        assert_eq!(link_bandwidth(&[one, one]), 2.0 * link_bandwidth(&[one]));
    }

    #[test]
    fn scenario_examples() {
        let energy = EnergyParams {
            k: 2.0,
            f_cnn: 3.0,
            t_proc: 4.0,
            v_dd: 2.0,
        };
        let link = LinkBudget::default();
        let recs = scenario_sweep([0, 2, 4], &energy, &link, 64e3);
        assert_eq!(recs[0].edge_energy_j, 0.0);
        assert_eq!(recs[0].cloud_bits, 0.0);
        assert_eq!(recs[0].edge_control_bits, 0.0);
        assert_eq!(recs[2].edge_energy_j, 384.0);
        assert!((recs[2].cloud_bits - 2.0 * recs[1].cloud_bits).abs() <= 1e-9 * recs[2].cloud_bits);
        assert!(recs.iter().all(|r| r.cloud_energy_j == 0.0));
    }

    fn event_at(x: f64, y: f64) -> CollisionEvent {
        CollisionEvent {
            event_id: 0,
            tick: 0,
            pos: Vec2::new(x, y),
            players: (0, 1),
            severity: 0.0,
            observers: vec![],
            clip_window: (0, 0),
        }
    }

    #[test]
    fn channel_sample_confidence_rules() {
        let model = ChannelModel::default();
        let drone = Drone::new(3, Vec2::new(40.0, 30.0), 10.0, 5.0);
        let mut rng = RngHandle::new(4);
        let at = sample_channel(&mut rng, &drone, &event_at(40.0, 30.0), &model);
        assert_eq!(at.dos, 1.0);
        assert_eq!(at.drone_id, 3);
        assert!(at.snr > 0.0 && (0.0..=1.0).contains(&at.gamma));
        let edge = sample_channel(&mut rng, &drone, &event_at(43.0, 34.0), &model);
        assert_eq!(edge.dos, 0.0);

        let a = sample_channel(&mut RngHandle::new(9), &drone, &event_at(41.0, 30.0), &model);
        let b = sample_channel(&mut RngHandle::new(9), &drone, &event_at(41.0, 30.0), &model);
        assert_eq!(a, b);
    }

    #[test]
    fn mean_snr_follows_inverse_square() {
        let m = ChannelModel::default();
        assert_eq!(m.mean_snr_db(5.0), 30.0);
        assert!((m.mean_snr_db(100.0) - 10.0).abs() < 1e-12);
    }
}
