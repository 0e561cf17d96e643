//! Players, ball and the ground-truth collision stream.
//!
//! Team A attacks toward `x = length`, team B toward `x = 0`. Roles follow
//! possession: the side holding (or last holding) the ball attacks.

use std::collections::BTreeMap;

use crate::geom::{clamp_to_field, distance, FieldSpec, Vec2};
use crate::params::ModelParams;
use crate::rng::RngHandle;
use crate::sim::WorldState;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Team {
    A,
    B,
}

impl Team {
    /// +1 when attacking toward increasing x.
    pub fn attack_dir(self) -> f64 {
        match self {
            Team::A => 1.0,
            Team::B => -1.0,
        }
    }

    pub fn opponent(self) -> Team {
        match self {
            Team::A => Team::B,
            Team::B => Team::A,
        }
    }

    /// x-coordinate of the line this team scores on.
    pub fn try_line(self, field: &FieldSpec) -> f64 {
        match self {
            Team::A => field.length,
            Team::B => 0.0,
        }
    }

    fn index(self) -> usize {
        match self {
            Team::A => 0,
            Team::B => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Attacker,
    Defender,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    TeamOriented,
    Selfish,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Player {
    pub id: u32,
    pub team: Team,
    pub role: Role,
    pub style: Style,
    pub pos: Vec2,
    /// Displacement over the last tick, patches/tick.
    pub vel: Vec2,
    pub max_speed: f64,
    /// First tick at which a tackled player is back on their feet.
    pub grounded_until: u64,
}

impl Player {
    pub fn is_grounded(&self, tick: u64) -> bool {
        tick < self.grounded_until
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BallState {
    Held,
    InFlight,
    Loose,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ball {
    pub pos: Vec2,
    pub holder: Option<u32>,
    pub vel: Vec2,
    pub state: BallState,
    /// Intended receiver while in flight.
    pub receiver: Option<u32>,
    /// Landing point of the current pass.
    pub target: Vec2,
    /// Side in (or last in) possession.
    pub possession: Team,
    /// After a tackle the ball cannot be picked up before this tick.
    pub ruck_until: u64,
}

impl Ball {
    pub fn loose_at(pos: Vec2, possession: Team) -> Self {
        Self {
            pos,
            holder: None,
            vel: Vec2::ZERO,
            state: BallState::Loose,
            receiver: None,
            target: pos,
            possession,
            ruck_until: 0,
        }
    }

    pub fn held_by(player: &Player) -> Self {
        Self {
            pos: player.pos,
            holder: Some(player.id),
            vel: Vec2::ZERO,
            state: BallState::Held,
            receiver: None,
            target: player.pos,
            possession: player.team,
            ruck_until: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CollisionEvent {
    pub event_id: u64,
    pub tick: u64,
    pub pos: Vec2,
    /// Lower id first.
    pub players: (u32, u32),
    /// Magnitude of the pair's relative velocity, patches/tick.
    pub severity: f64,
    /// Observing drone ids, ascending. Filled after drones move.
    pub observers: Vec<u32>,
    /// Inclusive tick interval of the surrounding video clip.
    pub clip_window: (u64, u64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CollisionRule {
    pub contact_distance: f64,
    pub pair_cooldown: u64,
}

impl Default for CollisionRule {
    fn default() -> Self {
        Self {
            contact_distance: 1.0,
            pair_cooldown: 10,
        }
    }
}

/// Last event tick per unordered player pair.
pub type PairCooldowns = BTreeMap<(u32, u32), u64>;

/// What happened to play during a ball step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlayOutcome {
    Continue,
    Score(Team),
    OutOfBounds,
}

/// Builds both teams: ids `0..n` are team A, `n..2n` team B.
pub fn new_players(params: &ModelParams, rng: &mut RngHandle) -> Vec<Player> {
    let n = params.rugby.team_size;
    (0..2 * n)
        .map(|i| Player {
            id: i as u32,
            team: if i < n { Team::A } else { Team::B },
            role: Role::Defender,
            style: if rng.bernoulli(params.rugby.selfish_fraction) {
                Style::Selfish
            } else {
                Style::TeamOriented
            },
            pos: Vec2::ZERO,
            vel: Vec2::ZERO,
            max_speed: params.rugby.max_speed,
            grounded_until: 0,
        })
        .collect()
}

/// Lines both teams up in their own halves and hands the ball to the
/// receiving player nearest the centre spot.
pub fn kickoff(world: &mut WorldState, receiving: Team, rng: &mut RngHandle) {
    let field = world.field;
    let centre = field.center();
    let mut slot = [0usize; 2];
    for p in &mut world.players {
        let k = slot[p.team.index()];
        slot[p.team.index()] += 1;
        let (row, col) = ((k / 5) as f64, (k % 5) as f64);
        let back = -p.team.attack_dir();
        let x = centre.x + back * (5.0 + row * 8.0) + rng.uniform_in(-1.5, 1.5);
        let y = field.width * (col + 0.5) / 5.0 + rng.uniform_in(-1.5, 1.5);
        p.pos = clamp_to_field(Vec2::new(x, y), &field);
        p.vel = Vec2::ZERO;
        p.grounded_until = 0;
    }
    let holder = world
        .players
        .iter()
        .filter(|p| p.team == receiving)
        .min_by(|a, b| {
            distance(a.pos, centre)
                .total_cmp(&distance(b.pos, centre))
                .then(a.id.cmp(&b.id))
        });
    world.ball = match holder {
        Some(h) => Ball::held_by(h),
        None => Ball::loose_at(centre, receiving),
    };
    assign_roles(world);
}

fn assign_roles(world: &mut WorldState) {
    let possession = world.ball.possession;
    for p in &mut world.players {
        p.role = if p.team == possession {
            Role::Attacker
        } else {
            Role::Defender
        };
    }
}

/// Lowest-id player among the `count` nearest to `point` satisfying `filter`.
fn nearest_ids(players: &[Player], point: Vec2, count: usize, filter: impl Fn(&Player) -> bool) -> Vec<u32> {
    let mut cands: Vec<(f64, u32)> = players
        .iter()
        .filter(|p| filter(p))
        .map(|p| (distance(p.pos, point), p.id))
        .collect();
    cands.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    cands.into_iter().take(count).map(|(_, id)| id).collect()
}

/// Moves every player one tick according to role and style.
///
/// Targets are computed from the pre-step snapshot, so the outcome does
/// not depend on iteration order. Grounded players stay put. The ball
/// carrier runs for the try line; team-oriented attackers take support
/// lanes behind and beside the ball. The defenders nearest the ball (and,
/// while it is loose, the nearest attackers) go straight for it; the other
/// defenders mark the nearest opposing attacker goal-side. Selfish players
/// crowd the ball on their own side of it.
pub fn step_players(world: &mut WorldState, params: &ModelParams, rng: &mut RngHandle) {
    assign_roles(world);
    let rp = &params.rugby;
    let ball = world.ball.clone();
    let field = world.field;
    let tick = world.clock.tick;

    let loose = ball.state == BallState::Loose;
    let ruck = loose && tick < ball.ruck_until;
    let up = |p: &Player| !p.is_grounded(tick);
    let mut chasers = if ruck {
        Vec::new()
    } else {
        nearest_ids(&world.players, ball.pos, rp.chasers, |p| up(p) && p.role == Role::Defender)
    };
    if loose {
        chasers.extend(nearest_ids(&world.players, ball.pos, rp.chasers, |p| up(p) && p.role == Role::Attacker));
    }

    let marks = assign_marks(&world.players, &chasers, tick);
    let mut support_rank = 0usize;
    let snapshot = &world.players;
    let mut moves = Vec::with_capacity(snapshot.len());
    for p in snapshot {
        if p.is_grounded(tick) {
            moves.push(Vec2::ZERO);
            continue;
        }
        let dir = p.team.attack_dir();
        let committed = ball.holder == Some(p.id)
            || (ball.state == BallState::InFlight && ball.receiver == Some(p.id))
            || chasers.contains(&p.id)
            || p.style == Style::Selfish
            || p.role == Role::Attacker;
        let crowding = snapshot
            .iter()
            .filter(|q| q.team != p.team && distance(p.pos, q.pos) < rp.personal_space)
            .min_by(|a, b| {
                distance(p.pos, a.pos)
                    .total_cmp(&distance(p.pos, b.pos))
                    .then(a.id.cmp(&b.id))
            });
        let target = if let (false, Some(q)) = (committed, crowding) {
            // Step back out of an opponent's way rather than run through them.
            let away = (p.pos - q.pos).normalized().unwrap_or(Vec2::new(-dir, 0.0));
            p.pos + away * p.max_speed
        } else if ball.holder == Some(p.id) {
            Vec2::new(p.team.try_line(&field), p.pos.y + rng.uniform_in(-2.0, 2.0))
        } else if ball.state == BallState::InFlight && ball.receiver == Some(p.id) {
            ball.target
        } else if chasers.contains(&p.id) {
            ball.pos
        } else if p.role == Role::Attacker && p.style == Style::Selfish {
            ball.pos + Vec2::new(-dir * rp.breakdown_offset, 0.0)
        } else if p.role == Role::Attacker {
            let rank = support_rank;
            support_rank += 1;
            let side = if rank.is_multiple_of(2) { 1.0 } else { -1.0 };
            let lane = (rank / 2 + 1) as f64;
            ball.pos + Vec2::new(-dir * rp.support_depth, side * lane * rp.support_spacing)
        } else {
            let marked = marks.get(&p.id).and_then(|id| snapshot.iter().find(|q| q.id == *id));
            match (marked, p.style) {
                // Selfish defenders shadow tight and jostle.
                (Some(a), Style::Selfish) => {
                    let jostle = Vec2::new(rng.uniform_in(-1.0, 1.0), rng.uniform_in(-1.0, 1.0)) * rp.jostle;
                    a.pos + Vec2::new(-dir * rp.tight_mark_offset, 0.0) + jostle
                }
                (Some(a), Style::TeamOriented) => a.pos + Vec2::new(-dir * rp.mark_offset, 0.0),
                (None, _) => ball.pos,
            }
        };
        let mut target = target;
        if ruck && p.team != ball.possession {
            // Retire behind the offside line until the ruck clears.
            let a = ball.possession.attack_dir();
            if (target.x - ball.pos.x) * a < rp.offside_gap {
                target.x = ball.pos.x + a * rp.offside_gap;
            }
        }
        let target = clamp_to_field(target, &field);
        let mut step = (target - p.pos).capped(p.max_speed);
        if !committed && crowding.is_none() {
            let next = p.pos + step;
            let intrudes = snapshot.iter().any(|q| {
                q.team != p.team && distance(next, q.pos) < rp.personal_space && distance(next, q.pos) < distance(p.pos, q.pos)
            });
            if intrudes {
                step = Vec2::ZERO;
            }
        }
        moves.push(step);
    }

    for (p, step) in world.players.iter_mut().zip(moves) {
        let new_pos = clamp_to_field(p.pos + step, &field);
        p.vel = new_pos - p.pos;
        p.pos = new_pos;
    }
}

/// One-to-one marking: defenders in id order each take the nearest standing
/// attacker nobody has taken yet. Chasers and grounded players are skipped.
fn assign_marks(players: &[Player], chasers: &[u32], tick: u64) -> BTreeMap<u32, u32> {
    let mut taken = BTreeMap::new();
    let mut free: Vec<&Player> = players
        .iter()
        .filter(|q| q.role == Role::Attacker && !q.is_grounded(tick))
        .collect();
    for d in players
        .iter()
        .filter(|d| d.role == Role::Defender && !d.is_grounded(tick) && !chasers.contains(&d.id))
    {
        let best = free
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                distance(d.pos, a.pos)
                    .total_cmp(&distance(d.pos, b.pos))
                    .then(a.id.cmp(&b.id))
            })
            .map(|(i, _)| i);
        if let Some(i) = best {
            taken.insert(d.id, free.swap_remove(i).id);
        }
    }
    taken
}

/// The standing opponent nearest the carrier within contact distance,
/// lowest id on ties.
fn tackler_of(world: &WorldState, holder: &Player, contact: f64) -> Option<u32> {
    let tick = world.clock.tick;
    world
        .players
        .iter()
        .filter(|q| q.team != holder.team && !q.is_grounded(tick) && distance(q.pos, holder.pos) <= contact)
        .min_by(|a, b| {
            distance(a.pos, holder.pos)
                .total_cmp(&distance(b.pos, holder.pos))
                .then(a.id.cmp(&b.id))
        })
        .map(|q| q.id)
}

/// Advances the ball one tick. Scores and balls leaving the field restart
/// play with a kickoff to the side that did not cause the stoppage.
pub fn step_ball(world: &mut WorldState, params: &ModelParams, rng: &mut RngHandle) -> PlayOutcome {
    let rp = &params.rugby;
    let field = world.field;
    match world.ball.state {
        BallState::Held => {
            let Some(holder) = world.ball.holder.and_then(|id| world.player(id)).cloned() else {
                world.ball.state = BallState::Loose;
                world.ball.holder = None;
                return PlayOutcome::Continue;
            };
            world.ball.pos = holder.pos;
            world.ball.vel = holder.vel;
            let line = holder.team.try_line(&field);
            if (holder.pos.x - line).abs() < 1e-9 {
                world.score[holder.team.index()] += 1;
                kickoff(world, holder.team.opponent(), rng);
                return PlayOutcome::Score(holder.team);
            }
            if holder.pos.y <= 0.0 || holder.pos.y >= field.width {
                // Carried into touch.
                kickoff(world, holder.team.opponent(), rng);
                return PlayOutcome::OutOfBounds;
            }
            if let Some(tackler) = tackler_of(world, &holder, params.collision.contact_distance) {
                // Tackle completed: both go to ground and the ball is released.
                let until = world.clock.tick + rp.ground_ticks;
                for p in &mut world.players {
                    if p.id == holder.id || p.id == tackler {
                        p.grounded_until = until;
                    }
                }
                world.ball = Ball::loose_at(holder.pos, holder.team);
                world.ball.ruck_until = world.clock.tick + rp.ruck_ticks;
                return PlayOutcome::Continue;
            }
            let pressured = world
                .players
                .iter()
                .any(|q| q.team != holder.team && distance(q.pos, holder.pos) <= rp.pressure_radius);
            if pressured && rng.bernoulli(rp.p_pass) {
                if let Some(receiver) = choose_receiver(&world.players, &holder, rp.min_pass_distance, world.clock.tick, rng) {
                    start_pass(&mut world.ball, &holder, receiver, rp.pass_speed);
                }
            }
            PlayOutcome::Continue
        }
        BallState::InFlight => {
            let receiver = world.ball.receiver.and_then(|id| world.player(id)).cloned();
            if let Some(r) = &receiver {
                if distance(r.pos, world.ball.pos) < rp.catch_radius {
                    world.ball = Ball::held_by(r);
                    return PlayOutcome::Continue;
                }
            }
            let to_target = world.ball.target - world.ball.pos;
            let arrived = to_target.norm() <= world.ball.vel.norm();
            let next = if arrived {
                world.ball.target
            } else {
                world.ball.pos + world.ball.vel
            };
            if !field.contains(next) {
                let restart = world.ball.possession.opponent();
                kickoff(world, restart, rng);
                return PlayOutcome::OutOfBounds;
            }
            world.ball.pos = next;
            match receiver {
                Some(r) if distance(r.pos, next) < rp.catch_radius => world.ball = Ball::held_by(&r),
                _ if arrived => {
                    world.ball.state = BallState::Loose;
                    world.ball.vel = Vec2::ZERO;
                    world.ball.receiver = None;
                }
                _ => {}
            }
            PlayOutcome::Continue
        }
        BallState::Loose => {
            let ball_pos = world.ball.pos;
            let tick = world.clock.tick;
            if tick < world.ball.ruck_until {
                return PlayOutcome::Continue;
            }
            if world.ball.ruck_until > 0 {
                // Ruck over: the nearest standing player of the side in
                // possession feeds the ball out to a support runner.
                let side = world.ball.possession;
                let feeder = world
                    .players
                    .iter()
                    .filter(|p| p.team == side && !p.is_grounded(tick))
                    .min_by(|a, b| {
                        distance(a.pos, ball_pos)
                            .total_cmp(&distance(b.pos, ball_pos))
                            .then(a.id.cmp(&b.id))
                    })
                    .cloned();
                if let Some(f) = feeder {
                    let mut from = f.clone();
                    from.pos = ball_pos;
                    match choose_receiver(&world.players, &from, rp.min_pass_distance, tick, rng) {
                        Some(r) => start_pass(&mut world.ball, &from, r, rp.pass_speed),
                        None => world.ball = Ball::held_by(&f),
                    }
                    return PlayOutcome::Continue;
                }
                world.ball.ruck_until = 0;
            }
            let picker = world
                .players
                .iter()
                .filter(|p| !p.is_grounded(tick))
                .filter(|p| distance(p.pos, ball_pos) <= rp.catch_radius)
                .min_by(|a, b| {
                    distance(a.pos, ball_pos)
                        .total_cmp(&distance(b.pos, ball_pos))
                        .then(a.id.cmp(&b.id))
                });
            if let Some(p) = picker {
                world.ball = Ball::held_by(p);
            }
            PlayOutcome::Continue
        }
    }
}

/// A random teammate among the three nearest standing ones that are not
/// ahead of the carrier and at least `min_distance` away (falling back to
/// any standing teammate).
fn choose_receiver<'a>(
    players: &'a [Player],
    holder: &Player,
    min_distance: f64,
    tick: u64,
    rng: &mut RngHandle,
) -> Option<&'a Player> {
    let dir = holder.team.attack_dir();
    let mates = |onside_only: bool| {
        let mut v: Vec<&Player> = players
            .iter()
            .filter(|p| p.team == holder.team && p.id != holder.id && !p.is_grounded(tick))
            .filter(|p| !onside_only || (dir * (p.pos.x - holder.pos.x) <= 0.0 && distance(p.pos, holder.pos) >= min_distance))
            .collect();
        v.sort_by(|a, b| {
            distance(a.pos, holder.pos)
                .total_cmp(&distance(b.pos, holder.pos))
                .then(a.id.cmp(&b.id))
        });
        v.truncate(3);
        v
    };
    let mut cands = mates(true);
    if cands.is_empty() {
        cands = mates(false);
    }
    if cands.is_empty() {
        return None;
    }
    Some(cands[rng.index(cands.len())])
}

fn start_pass(ball: &mut Ball, holder: &Player, receiver: &Player, pass_speed: f64) {
    match (receiver.pos - holder.pos).normalized() {
        Some(dir) => {
            *ball = Ball {
                pos: holder.pos,
                holder: None,
                vel: dir * pass_speed,
                state: BallState::InFlight,
                receiver: Some(receiver.id),
                target: receiver.pos,
                possession: holder.team,
                ruck_until: 0,
            };
        }
        // Receiver standing on the carrier: hand-off.
        None => *ball = Ball::held_by(receiver),
    }
}

/// Emits one event per opposing pair in contact whose cooldown has expired,
/// and records the pair's event tick.
pub fn detect_collisions(
    world: &WorldState,
    rule: &CollisionRule,
    cooldowns: &mut PairCooldowns,
    next_event_id: &mut u64,
) -> Vec<CollisionEvent> {
    let tick = world.clock.tick;
    let half_clip = world.field.ticks_for(5.0);
    let mut events = Vec::new();
    let players = &world.players;
    for (i, a) in players.iter().enumerate() {
        for b in &players[i + 1..] {
            if a.team == b.team || distance(a.pos, b.pos) > rule.contact_distance {
                continue;
            }
            let key = (a.id.min(b.id), a.id.max(b.id));
            if let Some(&last) = cooldowns.get(&key) {
                if tick.saturating_sub(last) < rule.pair_cooldown {
                    continue;
                }
            }
            cooldowns.insert(key, tick);
            events.push(CollisionEvent {
                event_id: *next_event_id,
                tick,
                pos: a.pos.midpoint(b.pos),
                players: key,
                severity: (a.vel - b.vel).norm(),
                observers: Vec::new(),
                clip_window: (
                    tick.saturating_sub(half_clip),
                    (tick + half_clip).min(world.clock.max_ticks),
                ),
            });
            *next_event_id += 1;
        }
    }
    events
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{SimClock, WorldState};

    fn player(id: u32, team: Team, x: f64, y: f64) -> Player {
        Player {
            id,
            team,
            role: Role::Defender,
            style: Style::TeamOriented,
            pos: Vec2::new(x, y),
            vel: Vec2::ZERO,
            max_speed: 1.0,
            grounded_until: 0,
        }
    }

    fn world(players: Vec<Player>, ball: Ball) -> WorldState {
        WorldState {
            clock: SimClock { tick: 0, max_ticks: 1800 },
            players,
            ball,
            drones: Vec::new(),
            field: FieldSpec::default(),
            score: [0, 0],
        }
    }

    #[test]
    fn lone_defender_pursues_holder() {
        let holder = player(0, Team::A, 20.0, 10.0);
        let defender = player(1, Team::B, 10.0, 10.0);
        let ball = Ball::held_by(&holder);
        let mut w = world(vec![holder, defender], ball);
        step_players(&mut w, &ModelParams::default(), &mut RngHandle::new(1));
        let d = w.player(1).unwrap();
        assert!(d.vel.x > 0.0, "defender velocity {:?}", d.vel);
        assert!(d.vel.y.abs() < 1e-12);
    }

    #[test]
    fn holder_runs_at_exactly_max_speed() {
        let mut holder = player(0, Team::A, 50.0, 35.0);
        holder.vel = Vec2::new(1.0, 0.0);
        let ball = Ball::held_by(&holder);
        let mut w = world(vec![holder], ball);
        step_players(&mut w, &ModelParams::default(), &mut RngHandle::new(3));
        let h = w.player(0).unwrap();
        assert!((h.vel.norm() - 1.0).abs() < 1e-12);
        assert!(h.vel.x > 0.0);
    }

    #[test]
    fn player_step_is_deterministic() {
        let params = ModelParams::default();
        let mut rng = RngHandle::new(11);
        let mut w = world(new_players(&params, &mut rng), Ball::loose_at(Vec2::new(50.0, 35.0), Team::A));
        kickoff(&mut w, Team::A, &mut rng);
        let mut a = w.clone();
        let mut b = w;
        step_players(&mut a, &params, &mut RngHandle::new(5));
        step_players(&mut b, &params, &mut RngHandle::new(5));
        assert_eq!(a, b);
    }

    #[test]
    fn speeds_never_exceed_cap() {
        let params = ModelParams::default();
        let mut rng = RngHandle::new(2);
        let mut w = world(new_players(&params, &mut rng), Ball::loose_at(Vec2::ZERO, Team::A));
        kickoff(&mut w, Team::B, &mut rng);
        for _ in 0..300 {
            step_players(&mut w, &params, &mut rng);
            step_ball(&mut w, &params, &mut rng);
            for p in &w.players {
                assert!(p.vel.norm() <= p.max_speed + 1e-12);
                assert!(w.field.contains(p.pos));
            }
            w.clock.tick += 1;
        }
    }

    #[test]
    fn held_ball_rides_holder() {
        let holder = player(0, Team::A, 30.0, 30.0);
        let ball = Ball::held_by(&holder);
        let mut w = world(vec![holder], ball);
        w.players[0].pos = Vec2::new(30.7, 29.5);
        step_ball(&mut w, &ModelParams::default(), &mut RngHandle::new(0));
        assert_eq!(w.ball.pos, Vec2::new(30.7, 29.5));
        assert_eq!(w.ball.state, BallState::Held);
    }

    #[test]
    fn in_flight_ball_is_caught_within_catch_radius() {
        let passer = player(0, Team::A, 20.0, 20.0);
        let receiver = player(1, Team::A, 30.0, 20.0);
        let mut ball = Ball::held_by(&passer);
        start_pass(&mut ball, &passer, &receiver, 4.0);
        ball.pos = Vec2::new(29.5, 20.0);
        let mut w = world(vec![passer, receiver], ball);
        step_ball(&mut w, &ModelParams::default(), &mut RngHandle::new(0));
        assert_eq!(w.ball.state, BallState::Held);
        assert_eq!(w.ball.holder, Some(1));
    }

    #[test]
    fn missed_pass_goes_loose_at_target() {
        let passer = player(0, Team::A, 20.0, 20.0);
        let receiver = player(1, Team::A, 30.0, 20.0);
        let mut ball = Ball::held_by(&passer);
        start_pass(&mut ball, &passer, &receiver, 4.0);
        let mut w = world(vec![passer, receiver], ball);
        w.players[1].pos = Vec2::new(30.0, 40.0);
        let params = ModelParams::default();
        let mut rng = RngHandle::new(0);
        for _ in 0..3 {
            step_ball(&mut w, &params, &mut rng);
        }
        assert_eq!(w.ball.state, BallState::Loose);
        assert_eq!(w.ball.pos, Vec2::new(30.0, 20.0));
    }

    #[test]
    fn loose_ball_tie_goes_to_lower_id() {
        let a = player(4, Team::A, 49.5, 35.0);
        let b = player(2, Team::B, 50.5, 35.0);
        let mut w = world(vec![b, a], Ball::loose_at(Vec2::new(50.0, 35.0), Team::A));
        w.players.sort_by_key(|p| p.id);
        step_ball(&mut w, &ModelParams::default(), &mut RngHandle::new(0));
        assert_eq!(w.ball.holder, Some(2));
        assert_eq!(w.ball.possession, Team::B);
    }

    #[test]
    fn try_scored_triggers_kickoff() {
        let params = ModelParams::default();
        let mut rng = RngHandle::new(8);
        let mut w = world(new_players(&params, &mut rng), Ball::loose_at(Vec2::ZERO, Team::A));
        w.players[0].pos = Vec2::new(100.0, 35.0);
        w.ball = Ball::held_by(&w.players[0]);
        assert_eq!(step_ball(&mut w, &params, &mut rng), PlayOutcome::Score(Team::A));
        assert_eq!(w.score, [1, 0]);
        assert_eq!(w.ball.possession, Team::B);
        assert!(w.players.iter().all(|p| p.pos.x < 100.0));
    }

    #[test]
    fn collision_rules() {
        let rule = CollisionRule::default();
        let mut a = player(0, Team::A, 10.0, 10.0);
        let mut b = player(1, Team::B, 10.5, 10.0);
        a.vel = Vec2::new(1.0, 0.0);
        b.vel = Vec2::new(-0.5, 0.0);
        let mut w = world(vec![a, b], Ball::loose_at(Vec2::ZERO, Team::A));
        let mut cd = PairCooldowns::new();
        let mut next = 0;
        let ev = detect_collisions(&w, &rule, &mut cd, &mut next);
        assert_eq!(ev.len(), 1);
        assert_eq!(ev[0].pos, Vec2::new(10.25, 10.0));
        assert_eq!(ev[0].players, (0, 1));
        assert!((ev[0].severity - 1.5).abs() < 1e-12);
        assert_eq!(ev[0].clip_window, (0, 50));

        w.clock.tick = 1;
        assert!(detect_collisions(&w, &rule, &mut cd, &mut next).is_empty());
        w.clock.tick = 10;
        assert_eq!(detect_collisions(&w, &rule, &mut cd, &mut next).len(), 1);
        assert_eq!(next, 2);
    }

    #[test]
    fn same_team_contact_is_not_a_collision() {
        let a = player(0, Team::A, 10.0, 10.0);
        let b = player(1, Team::A, 10.1, 10.0);
        let w = world(vec![a, b], Ball::loose_at(Vec2::ZERO, Team::A));
        let mut next = 0;
        assert!(detect_collisions(&w, &CollisionRule::default(), &mut PairCooldowns::new(), &mut next).is_empty());
    }

    #[test]
    fn co_moving_pair_has_zero_severity() {
        let mut a = player(0, Team::A, 10.0, 10.0);
        let mut b = player(1, Team::B, 10.0, 10.8);
        a.vel = Vec2::new(0.6, 0.2);
        b.vel = Vec2::new(0.6, 0.2);
        let w = world(vec![a, b], Ball::loose_at(Vec2::ZERO, Team::A));
        let mut next = 0;
        let ev = detect_collisions(&w, &CollisionRule::default(), &mut PairCooldowns::new(), &mut next);
        assert_eq!(ev[0].severity, 0.0);
    }
}
