use std::f64::consts::TAU;

use super::{allocate_drones, cluster_players, StrategySpec};
use crate::geom::{distance, FieldSpec, Vec2};
use crate::rng::RngHandle;
use crate::rugby::Player;
use crate::sim::WorldState;

/// `n` points on a circle of `radius` around `center`, at angles `2*pi*i/n`. Not clamped.
pub fn orbit_points(center: Vec2, radius: f64, n: usize) -> Vec<Vec2> {
    (0..n)
        .map(|i| center.polar_offset(radius, TAU * i as f64 / n as f64))
        .collect()
}

/// Centres of a `cols x rows` grid covering the field, `cols = ceil(sqrt(n))`,
/// `rows = ceil(n / cols)`, listed row-major and truncated to `n`.
pub fn grid_points(field: &FieldSpec, n: usize) -> Vec<Vec2> {
    if n == 0 {
        return Vec::new();
    }
    let cols = (n as f64).sqrt().ceil() as usize;
    let rows = n.div_ceil(cols);
    let (cw, rh) = (field.length / cols as f64, field.width / rows as f64);
    (0..n)
        .map(|j| {
            let (r, c) = (j / cols, j % cols);
            Vec2::new((c as f64 + 0.5) * cw, (r as f64 + 0.5) * rh)
        })
        .collect()
}

/// Stations at known hotspots; drones beyond the hotspot list spread over a grid.
pub fn targets_fixed(spec: &StrategySpec, world: &WorldState) -> Vec<Vec2> {
    let n = world.drones.len();
    let mut targets: Vec<Vec2> = spec.hotspots.iter().copied().take(n).collect();
    let surplus = n - targets.len();
    targets.extend(grid_points(&world.field, surplus));
    targets
}

pub fn targets_follow_ball(spec: &StrategySpec, world: &WorldState) -> Vec<Vec2> {
    orbit_points(world.ball.pos, spec.orbit_radius, world.drones.len())
}

/// Follow-ball targets pushed apart by drones that are closer than the
/// separation distance: each such neighbour adds `(sep - d)` along the unit
/// vector from it to this drone. Coincident drones split along x, the lower
/// id toward -x.
pub fn targets_repulsive(spec: &StrategySpec, world: &WorldState) -> Vec<Vec2> {
    let mut targets = targets_follow_ball(spec, world);
    let sep = spec.separation_distance;
    for (t, me) in targets.iter_mut().zip(&world.drones) {
        for other in &world.drones {
            if other.id == me.id {
                continue;
            }
            let d = distance(me.pos, other.pos);
            if d >= sep {
                continue;
            }
            let away = (me.pos - other.pos).normalized().unwrap_or(if me.id < other.id {
                Vec2::new(-1.0, 0.0)
            } else {
                Vec2::new(1.0, 0.0)
            });
            *t += away * (sep - d);
        }
    }
    targets
}

/// Collision risk of `player`: opponents within `risk_radius`, each weighted
/// by `1 + max(0, closing speed)`, where closing speed is the rate at which
/// the pair's separation shrinks, `(v_opp - v_self) . unit(self - opp)`.
pub fn risk_score(player: &Player, world: &WorldState, risk_radius: f64) -> f64 {
    world
        .players
        .iter()
        .filter(|q| q.team != player.team)
        .filter_map(|q| {
            let d = distance(player.pos, q.pos);
            if d > risk_radius {
                return None;
            }
            let closing = (player.pos - q.pos)
                .normalized()
                .map_or(0.0, |u| (q.vel - player.vel).dot(u));
            Some(1.0 + closing.max(0.0))
        })
        .sum()
}

/// Drones shadow the riskiest players; the rest fall back to their follow-ball slot.
///
/// Players with positive risk are ranked by score (ties to lower id) and the
/// top `n` are taken in rank order; each takes the nearest still-free drone
/// (ties to lower drone id).
pub fn targets_follow_players(spec: &StrategySpec, world: &WorldState) -> Vec<Vec2> {
    let mut targets = targets_follow_ball(spec, world);
    let n = world.drones.len();
    let mut ranked: Vec<(f64, &Player)> = world
        .players
        .iter()
        .map(|p| (risk_score(p, world, spec.risk_radius), p))
        .filter(|(s, _)| *s > 0.0)
        .collect();
    ranked.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.id.cmp(&b.1.id)));
    ranked.truncate(n);

    let mut free = vec![true; n];
    for (_, player) in ranked {
        let pick = world
            .drones
            .iter()
            .enumerate()
            .filter(|(i, _)| free[*i])
            .min_by(|(_, a), (_, b)| {
                distance(a.pos, player.pos)
                    .total_cmp(&distance(b.pos, player.pos))
                    .then(a.id.cmp(&b.id))
            })
            .map(|(i, _)| i);
        if let Some(i) = pick {
            free[i] = false;
            targets[i] = player.pos;
        }
    }
    targets
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClusterAssignment {
    pub centroids: Vec<Vec2>,
    pub sizes: Vec<usize>,
    /// Drones per cluster; sums to the drone count.
    pub drone_allocation: Vec<usize>,
}

/// Clusters the players, apportions drones to clusters by size, and rings
/// each cluster's drones around its centroid.
///
/// Uses `k = max(1, min(n_drones, ceil(n_players / players_per_cluster)))`.
/// Drones are bound to clusters in ascending drone order against ascending
/// cluster index. With no players it degrades to follow-ball.
pub fn targets_density(spec: &StrategySpec, world: &WorldState) -> (Vec<Vec2>, Option<ClusterAssignment>) {
    let n = world.drones.len();
    if world.players.is_empty() || n == 0 {
        return (targets_follow_ball(spec, world), None);
    }
    let positions: Vec<Vec2> = world.players.iter().map(|p| p.pos).collect();
    let k = world
        .players
        .len()
        .div_ceil(spec.players_per_cluster)
        .min(n)
        .max(1);
    let clustering = cluster_players(&positions, k);
    let allocation = allocate_drones(&clustering.sizes, n).expect("clusters of a nonempty point set are not all empty");

    let mut targets = Vec::with_capacity(n);
    for (&centroid, &m) in clustering.centroids.iter().zip(&allocation) {
        targets.extend(orbit_points(centroid, spec.orbit_radius, m));
    }
    let assignment = ClusterAssignment {
        centroids: clustering.centroids,
        sizes: clustering.sizes,
        drone_allocation: allocation,
    };
    (targets, Some(assignment))
}

/// Bounded random patrol.
///
/// A drone keeps its waypoint until it is within 1 patch of it or
/// `retarget_period` ticks have passed. A new waypoint is drawn uniformly
/// over the field from the drone's own stream and redrawn (up to 20 times)
/// while it lies within `separation_distance` of another drone's current
/// waypoint.
pub fn targets_random(spec: &StrategySpec, world: &WorldState, drone_rngs: &mut [RngHandle]) -> Vec<Vec2> {
    const MAX_REDRAWS: usize = 20;
    let tick = world.clock.tick;
    let field = &world.field;
    world
        .drones
        .iter()
        .zip(drone_rngs.iter_mut())
        .map(|(d, rng)| {
            let keep = match d.target_since {
                Some(since) => distance(d.pos, d.target) > 1.0 && tick.saturating_sub(since) < spec.retarget_period,
                None => false,
            };
            if keep {
                return d.target;
            }
            let mut draw = || Vec2::new(rng.uniform_in(0.0, field.length), rng.uniform_in(0.0, field.width));
            let crowded = |p: Vec2| {
                world
                    .drones
                    .iter()
                    .any(|o| o.id != d.id && distance(o.target, p) < spec.separation_distance)
            };
            let mut wp = draw();
            for _ in 0..MAX_REDRAWS {
                if !crowded(wp) {
                    break;
                }
                wp = draw();
            }
            wp
        })
        .collect()
}
