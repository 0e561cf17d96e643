//! Tick engine.
//!
//! One tick runs, in order: players step, ball steps, collisions are
//! detected, drone targets are computed from the post-move world, drones
//! move, observers are assigned to this tick's events, and the clock
//! advances. Agents are always kept sorted by ascending id.

use crate::detection::observers_of;
use crate::error::SimError;
use crate::geom::{FieldSpec, Vec2};
use crate::params::ModelParams;
use crate::rng::RngHandle;
use crate::rugby::{self, Ball, CollisionEvent, PairCooldowns, Player, Team};
use crate::swarm::{self, grid_points, Drone, StrategySpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimClock {
    pub tick: u64,
    pub max_ticks: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WorldState {
    pub clock: SimClock,
    pub players: Vec<Player>,
    pub ball: Ball,
    pub drones: Vec<Drone>,
    pub field: FieldSpec,
    /// Tries scored by team A and team B.
    pub score: [u32; 2],
}

impl WorldState {
    pub fn player(&self, id: u32) -> Option<&Player> {
        self.players
            .binary_search_by_key(&id, |p| p.id)
            .ok()
            .map(|i| &self.players[i])
    }

    /// An empty pitch with a loose ball on the centre spot.
    pub fn empty(field: FieldSpec, max_ticks: u64) -> Self {
        Self {
            clock: SimClock { tick: 0, max_ticks },
            players: Vec::new(),
            ball: Ball::loose_at(field.center(), Team::A),
            drones: Vec::new(),
            field,
            score: [0, 0],
        }
    }

    fn normalize(&mut self) {
        self.players.sort_by_key(|p| p.id);
        self.drones.sort_by_key(|d| d.id);
    }
}

// Stream ids forked off the run seed.
const MATCH_STREAM: u64 = 1;
const DRONE_STREAM: u64 = 2;

/// A single match: world state plus the bookkeeping the tick loop needs.
#[derive(Clone, Debug)]
pub struct Simulation {
    world: WorldState,
    params: ModelParams,
    strategy: StrategySpec,
    match_rng: RngHandle,
    drone_rngs: Vec<RngHandle>,
    cooldowns: PairCooldowns,
    next_event_id: u64,
}

impl Simulation {
    /// Fresh match with two full teams at kickoff and `n_drones` drones on a grid.
    ///
    /// Player behaviour draws from `match_seed`; drones draw from per-drone
    /// streams forked from `drone_seed`. Passing the same seed for both is the
    /// usual case; keeping the match seed fixed while varying the drone seed
    /// replays the same match under a different swarm.
    pub fn new(params: &ModelParams, strategy: StrategySpec, n_drones: usize, max_ticks: u64, match_seed: u64, drone_seed: u64) -> Self {
        let field = params.field;
        let mut match_rng = RngHandle::new(match_seed).fork(MATCH_STREAM);
        let mut world = WorldState::empty(field, max_ticks);
        world.players = rugby::new_players(params, &mut match_rng);
        let receiving = if match_rng.bernoulli(0.5) { Team::A } else { Team::B };
        rugby::kickoff(&mut world, receiving, &mut match_rng);
        world.drones = grid_points(&field, n_drones)
            .into_iter()
            .enumerate()
            .map(|(i, p)| Drone::new(i as u32, p, params.drone.speed, params.drone.detect_radius))
            .collect();
        Self::assemble(world, params, strategy, match_rng, drone_seed)
    }

    /// Wraps an explicit world, e.g. a hand-built test scenario.
    pub fn from_world(mut world: WorldState, params: &ModelParams, strategy: StrategySpec, seed: u64) -> Self {
        world.normalize();
        let match_rng = RngHandle::new(seed).fork(MATCH_STREAM);
        Self::assemble(world, params, strategy, match_rng, seed)
    }

    fn assemble(world: WorldState, params: &ModelParams, strategy: StrategySpec, match_rng: RngHandle, drone_seed: u64) -> Self {
        let drone_root = RngHandle::new(drone_seed).fork(DRONE_STREAM);
        let drone_rngs = world.drones.iter().map(|d| drone_root.fork(u64::from(d.id))).collect();
        Self {
            world,
            params: params.clone(),
            strategy,
            match_rng,
            drone_rngs,
            cooldowns: PairCooldowns::new(),
            next_event_id: 0,
        }
    }

    pub fn world(&self) -> &WorldState {
        &self.world
    }

    pub fn is_finished(&self) -> bool {
        self.world.clock.tick >= self.world.clock.max_ticks
    }

    /// Runs one tick and returns the collisions it produced, observers filled in.
    pub fn advance_tick(&mut self) -> Result<Vec<CollisionEvent>, SimError> {
        if self.is_finished() {
            return Err(SimError::TickOverflow(self.world.clock.max_ticks));
        }
        let params = &self.params;
        rugby::step_players(&mut self.world, params, &mut self.match_rng);
        rugby::step_ball(&mut self.world, params, &mut self.match_rng);
        let mut events = rugby::detect_collisions(
            &self.world,
            &params.collision,
            &mut self.cooldowns,
            &mut self.next_event_id,
        );

        let targets = swarm::compute_targets(&self.strategy, &self.world, &mut self.drone_rngs);
        let tick = self.world.clock.tick;
        for (d, &t) in self.world.drones.iter_mut().zip(&targets) {
            if d.target_since.is_none() || d.target != t {
                d.target = t;
                d.target_since = Some(tick);
            }
        }
        swarm::move_drones(&mut self.world.drones, &targets, &self.world.field);

        for e in &mut events {
            e.observers = observers_of(e, &self.world.drones);
        }
        self.world.clock.tick += 1;
        Ok(events)
    }

    /// Runs to `max_ticks`, optionally recording every drone position after each tick.
    pub fn run(mut self, record_trajectories: bool) -> MatchLog {
        let mut log = MatchLog {
            ticks: self.world.clock.max_ticks - self.world.clock.tick,
            events: Vec::new(),
            trajectories: record_trajectories.then(Vec::new),
        };
        while !self.is_finished() {
            let events = self.advance_tick().expect("loop stops at max_ticks");
            log.events.extend(events);
            if let Some(t) = &mut log.trajectories {
                t.push(self.world.drones.iter().map(|d| d.pos).collect());
            }
        }
        log
    }
}

/// Everything a finished match produced.
#[derive(Clone, Debug, PartialEq)]
pub struct MatchLog {
    pub ticks: u64,
    pub events: Vec<CollisionEvent>,
    /// Drone positions at the end of each tick (observation time), indexed `[tick][drone]`.
    pub trajectories: Option<Vec<Vec<Vec2>>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rugby::{Role, Style};
    use crate::swarm::StrategyMode;

    fn spec(mode: StrategyMode) -> StrategySpec {
        StrategySpec::from_params(mode, &ModelParams::default())
    }

    #[test]
    fn empty_world_only_advances_clock() {
        let params = ModelParams::default();
        let world = WorldState::empty(params.field, 10);
        let mut sim = Simulation::from_world(world.clone(), &params, spec(StrategyMode::Density), 1);
        let events = sim.advance_tick().unwrap();
        assert!(events.is_empty());
        let mut expected = world;
        expected.clock.tick = 1;
        assert_eq!(sim.world(), &expected);
    }

    #[test]
    fn overflow_at_max_ticks() {
        let params = ModelParams::default();
        let mut sim = Simulation::from_world(WorldState::empty(params.field, 1), &params, spec(StrategyMode::Fixed), 1);
        sim.advance_tick().unwrap();
        assert_eq!(sim.advance_tick(), Err(SimError::TickOverflow(1)));
    }

    #[test]
    fn opposing_pair_in_contact_emits_one_event() {
        let params = ModelParams::default();
        let mk = |id, team, x| Player {
            id,
            team,
            role: Role::Defender,
            style: Style::TeamOriented,
            pos: Vec2::new(x, 35.0),
            vel: Vec2::ZERO,
            max_speed: 0.0,
            grounded_until: 0,
        };
        let mut world = WorldState::empty(params.field, 100);
        world.players = vec![mk(0, Team::A, 50.0), mk(1, Team::B, 50.5)];
        let mut sim = Simulation::from_world(world, &params, spec(StrategyMode::Fixed), 3);
        let events = sim.advance_tick().unwrap();
        assert_eq!(events.len(), 1);
        assert_eq!(events[0].pos, Vec2::new(50.25, 35.0));
    }

    #[test]
    fn clock_is_monotone_and_agents_stay_in_field() {
        let params = ModelParams::default();
        for mode in StrategyMode::ALL {
            let mut sim = Simulation::new(&params, spec(mode), 7, 300, 9, 9);
            for t in 0..300 {
                assert_eq!(sim.world().clock.tick, t);
                let before: Vec<Vec2> = sim.world().drones.iter().map(|d| d.pos).collect();
                sim.advance_tick().unwrap();
                let w = sim.world();
                assert!(w.players.iter().all(|p| w.field.contains(p.pos)));
                assert!(w.drones.iter().all(|d| w.field.contains(d.pos)));
                assert!(w.field.contains(w.ball.pos));
                for (d, b) in w.drones.iter().zip(&before) {
                    assert!(crate::geom::distance(d.pos, *b) <= d.speed + 1e-9);
                }
            }
        }
    }
}
