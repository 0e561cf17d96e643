//! Drone agents and their self-organising positioning strategies.
//!
//! No strategy exchanges messages between drones: each target is a function
//! of the shared world snapshot (including other drones' observable
//! positions), the drone's own index, the strategy parameters and the
//! drone's own random stream.

pub mod apportion;
pub mod kmeans;
mod strategies;

use std::fmt;
use std::str::FromStr;

use crate::error::ConfigError;
use crate::geom::{clamp_to_field, FieldSpec, Vec2};
use crate::params::ModelParams;
use crate::rng::RngHandle;
use crate::sim::WorldState;

pub use apportion::{allocate_drones, AllZeroSizes};
pub use kmeans::{cluster_players, Clustering};
pub use strategies::{
    grid_points, orbit_points, risk_score, targets_density, targets_fixed, targets_follow_ball, targets_follow_players,
    targets_random, targets_repulsive, ClusterAssignment,
};

#[derive(Clone, Debug, PartialEq)]
pub struct Drone {
    pub id: u32,
    /// Ground projection of the drone's position.
    pub pos: Vec2,
    /// patches/tick.
    pub speed: f64,
    pub detect_radius: f64,
    pub target: Vec2,
    /// Tick at which `target` was last changed; `None` before the first assignment.
    pub target_since: Option<u64>,
}

impl Drone {
    pub fn new(id: u32, pos: Vec2, speed: f64, detect_radius: f64) -> Self {
        Self {
            id,
            pos,
            speed,
            detect_radius,
            target: pos,
            target_since: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StrategyMode {
    Fixed,
    FollowBall,
    Repulsive,
    FollowPlayers,
    Density,
    Random,
}

impl StrategyMode {
    pub const ALL: [StrategyMode; 6] = [
        StrategyMode::Fixed,
        StrategyMode::FollowBall,
        StrategyMode::Repulsive,
        StrategyMode::FollowPlayers,
        StrategyMode::Density,
        StrategyMode::Random,
    ];

    /// Canonical lowercase name used in config files and CSV output.
    pub fn name(self) -> &'static str {
        match self {
            StrategyMode::Fixed => "fixed",
            StrategyMode::FollowBall => "follow-ball",
            StrategyMode::Repulsive => "repulsive",
            StrategyMode::FollowPlayers => "follow-players",
            StrategyMode::Density => "density",
            StrategyMode::Random => "random",
        }
    }

    /// Capitalised label used in report tables.
    pub fn label(self) -> &'static str {
        match self {
            StrategyMode::Fixed => "Fixed",
            StrategyMode::FollowBall => "Follow-ball",
            StrategyMode::Repulsive => "Repulsive",
            StrategyMode::FollowPlayers => "Follow-players",
            StrategyMode::Density => "Density",
            StrategyMode::Random => "Random",
        }
    }

    /// Stable small integer mixed into run seeds.
    pub fn id(self) -> u8 {
        match self {
            StrategyMode::Fixed => 0,
            StrategyMode::FollowBall => 1,
            StrategyMode::Repulsive => 2,
            StrategyMode::FollowPlayers => 3,
            StrategyMode::Density => 4,
            StrategyMode::Random => 5,
        }
    }
}

impl fmt::Display for StrategyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StrategyMode {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        StrategyMode::ALL
            .into_iter()
            .find(|m| m.name() == norm)
            .ok_or_else(|| ConfigError::UnknownMode(s.trim().to_string()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StrategySpec {
    pub mode: StrategyMode,
    pub orbit_radius: f64,
    pub separation_distance: f64,
    pub risk_radius: f64,
    pub retarget_period: u64,
    pub players_per_cluster: usize,
    pub hotspots: Vec<Vec2>,
}

impl StrategySpec {
    pub fn from_params(mode: StrategyMode, params: &ModelParams) -> Self {
        let s = &params.strategy;
        Self {
            mode,
            orbit_radius: s.orbit_radius,
            separation_distance: s.separation_distance,
            risk_radius: s.risk_radius,
            retarget_period: s.retarget_period,
            players_per_cluster: s.players_per_cluster,
            hotspots: params.hotspots(),
        }
    }
}

/// One target per drone (in drone order), clamped to the field.
///
/// `drone_rngs[i]` is drone `i`'s private stream; only random mode draws from it.
pub fn compute_targets(spec: &StrategySpec, world: &WorldState, drone_rngs: &mut [RngHandle]) -> Vec<Vec2> {
    if world.drones.is_empty() {
        return Vec::new();
    }
    let raw = match spec.mode {
        StrategyMode::Fixed => targets_fixed(spec, world),
        StrategyMode::FollowBall => targets_follow_ball(spec, world),
        StrategyMode::Repulsive => targets_repulsive(spec, world),
        StrategyMode::FollowPlayers => targets_follow_players(spec, world),
        StrategyMode::Density => targets_density(spec, world).0,
        StrategyMode::Random => targets_random(spec, world, drone_rngs),
    };
    debug_assert_eq!(raw.len(), world.drones.len());
    raw.into_iter().map(|t| clamp_to_field(t, &world.field)).collect()
}

/// Moves each drone up to its speed straight toward its target, without overshoot.
pub fn move_drones(drones: &mut [Drone], targets: &[Vec2], field: &FieldSpec) {
    assert_eq!(drones.len(), targets.len(), "one target per drone");
    for (d, &t) in drones.iter_mut().zip(targets) {
        let step = (t - d.pos).capped(d.speed);
        d.pos = clamp_to_field(d.pos + step, field);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mode_names_round_trip() {
        for m in StrategyMode::ALL {
            assert_eq!(m.name().parse::<StrategyMode>().unwrap(), m);
        }
        assert_eq!("follow_players".parse::<StrategyMode>().unwrap(), StrategyMode::FollowPlayers);
        assert_eq!(
            "teleport".parse::<StrategyMode>(),
            Err(ConfigError::UnknownMode("teleport".into()))
        );
    }

    #[test]
    fn move_examples() {
        let field = FieldSpec::default();
        let mut d = vec![Drone::new(0, Vec2::new(0.0, 0.0), 10.0, 5.0)];
        move_drones(&mut d, &[Vec2::new(30.0, 40.0)], &field);
        assert!((d[0].pos.x - 6.0).abs() < 1e-12 && (d[0].pos.y - 8.0).abs() < 1e-12);

        let mut d = vec![Drone::new(0, Vec2::new(10.0, 10.0), 10.0, 5.0)];
        move_drones(&mut d, &[Vec2::new(13.0, 10.0)], &field);
        assert_eq!(d[0].pos, Vec2::new(13.0, 10.0));

        let mut d = vec![Drone::new(0, Vec2::new(98.0, 35.0), 10.0, 5.0)];
        move_drones(&mut d, &[Vec2::new(104.0, 35.0)], &field);
        assert_eq!(d[0].pos, Vec2::new(100.0, 35.0));
    }
}
