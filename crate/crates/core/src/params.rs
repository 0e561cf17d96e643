//! Every tunable model constant, in one place.
//!
//! Only the drone detection radius (5) and drone speed (10) are measured
//! values; everything else is a declared default chosen to give tens of
//! collisions per match and visible differences between strategies. Each
//! field is settable by name from the experiment config file.

use crate::comms::{ChannelModel, EnergyParams, LinkBudget};
use crate::error::ConfigError;
use crate::geom::{FieldSpec, Vec2};
use crate::rugby::CollisionRule;

#[derive(Clone, Debug, PartialEq)]
pub struct RugbyParams {
    /// Players per side.
    pub team_size: usize,
    /// patches/tick.
    pub max_speed: f64,
    /// patches/tick.
    pub pass_speed: f64,
    pub pressure_radius: f64,
    pub catch_radius: f64,
    /// Per-tick pass probability while under pressure.
    pub p_pass: f64,
    /// Receivers closer than this to the passer are not considered.
    pub min_pass_distance: f64,
    pub selfish_fraction: f64,
    /// Number of defenders (nearest to the ball) that go straight for it.
    pub chasers: usize,
    /// Ticks the ball stays in a ruck after a tackle before it may be contested.
    pub ruck_ticks: u64,
    /// Distance the defending side keeps ahead of the ball during a ruck.
    pub offside_gap: f64,
    /// Distance selfish players keep from the ball, on their own side of it.
    pub breakdown_offset: f64,
    /// Players not contesting the ball back away from opponents closer than this.
    pub personal_space: f64,
    /// Goal-side distance a selfish defender keeps from its attacker.
    pub tight_mark_offset: f64,
    /// Half-width of the random shove added to a selfish defender's target.
    pub jostle: f64,
    /// Goal-side distance a marking defender keeps from its attacker.
    pub mark_offset: f64,
    /// Ticks a tackled carrier and the tackler stay on the ground.
    pub ground_ticks: u64,
    /// Depth behind the ball for team-oriented support runners.
    pub support_depth: f64,
    /// Lateral gap between support lanes.
    pub support_spacing: f64,
}

impl Default for RugbyParams {
    fn default() -> Self {
        Self {
            team_size: 15,
            max_speed: 1.0,
            pass_speed: 4.0,
            pressure_radius: 3.0,
            catch_radius: 1.0,
            p_pass: 0.05,
            min_pass_distance: 3.0,
            selfish_fraction: 0.3,
            chasers: 1,
            ruck_ticks: 30,
            offside_gap: 5.0,
            breakdown_offset: 2.0,
            personal_space: 1.5,
            tight_mark_offset: 1.2,
            jostle: 1.0,
            mark_offset: 2.5,
            ground_ticks: 8,
            support_depth: 3.0,
            support_spacing: 4.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DroneParams {
    /// patches/tick.
    pub speed: f64,
    pub detect_radius: f64,
}

impl Default for DroneParams {
    fn default() -> Self {
        Self {
            speed: 10.0,
            detect_radius: 5.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StrategyParams {
    pub orbit_radius: f64,
    pub separation_distance: f64,
    pub risk_radius: f64,
    pub retarget_period: u64,
    /// Players per k-means cluster in density mode.
    pub players_per_cluster: usize,
    /// Fixed-mode stations; `None` means the default pitch hotspots.
    pub hotspots: Option<Vec<Vec2>>,
}

impl Default for StrategyParams {
    fn default() -> Self {
        Self {
            orbit_radius: 5.0,
            separation_distance: 4.0,
            risk_radius: 3.0,
            retarget_period: 50,
            players_per_cluster: 5,
            hotspots: None,
        }
    }
}

impl StrategyParams {
    /// The two 22 m line midpoints and the centre spot.
    pub fn default_hotspots(field: &FieldSpec) -> Vec<Vec2> {
        let mid_y = field.width * 0.5;
        vec![
            Vec2::new(22.0_f64.min(field.length), mid_y),
            Vec2::new((field.length - 22.0).max(0.0), mid_y),
            Vec2::new(field.length * 0.5, mid_y),
        ]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelParams {
    pub field: FieldSpec,
    pub rugby: RugbyParams,
    pub collision: CollisionRule,
    pub drone: DroneParams,
    pub strategy: StrategyParams,
    pub channel: ChannelModel,
    pub energy: EnergyParams,
    pub link: LinkBudget,
    /// Control-channel rate per drone in the edge scenario, bits/s.
    pub control_bps: f64,
    /// Minimum fused confidence for declaring a collision.
    pub fusion_threshold: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            field: FieldSpec::default(),
            rugby: RugbyParams::default(),
            collision: CollisionRule::default(),
            drone: DroneParams::default(),
            strategy: StrategyParams::default(),
            channel: ChannelModel::default(),
            energy: EnergyParams::default(),
            link: LinkBudget::default(),
            control_bps: 64_000.0,
            fusion_threshold: 0.5,
        }
    }
}

/// Names accepted by [`ModelParams::set`], in the order [`ModelParams::entries`] emits them.
pub const PARAM_KEYS: &[&str] = &[
    "field_length",
    "field_width",
    "tick_duration",
    "team_size",
    "player_max_speed",
    "pass_speed",
    "pressure_radius",
    "catch_radius",
    "p_pass",
    "min_pass_distance",
    "selfish_fraction",
    "chasers",
    "ruck_ticks",
    "offside_gap",
    "breakdown_offset",
    "personal_space",
    "tight_mark_offset",
    "jostle",
    "mark_offset",
    "ground_ticks",
    "support_depth",
    "support_spacing",
    "contact_distance",
    "pair_cooldown",
    "drone_speed",
    "detect_radius",
    "orbit_radius",
    "separation_distance",
    "risk_radius",
    "retarget_period",
    "players_per_cluster",
    "hotspots",
    "snr_ref_db",
    "snr_ref_distance",
    "shadowing_sigma_db",
    "gamma_noise_sigma",
    "gcs_x",
    "gcs_y",
    "energy_k",
    "f_cnn",
    "t_proc",
    "v_dd",
    "r_enc",
    "t_obs",
    "p_t",
    "channel_gain",
    "noise_power",
    "control_bps",
    "fusion_threshold",
];

fn parse_f64(key: &str, value: &str) -> Result<f64, ConfigError> {
    let v: f64 = value
        .trim()
        .parse()
        .map_err(|_| ConfigError::Invalid(format!("{key}: expected a number, got `{value}`")))?;
    if !v.is_finite() {
        return Err(ConfigError::Invalid(format!("{key}: must be finite")));
    }
    Ok(v)
}

fn parse_u64(key: &str, value: &str) -> Result<u64, ConfigError> {
    value
        .trim()
        .parse()
        .map_err(|_| ConfigError::Invalid(format!("{key}: expected a nonnegative integer, got `{value}`")))
}

/// `x:y` pairs separated by commas; empty means "use the defaults".
fn parse_points(key: &str, value: &str) -> Result<Option<Vec<Vec2>>, ConfigError> {
    let value = value.trim();
    if value.is_empty() || value == "default" {
        return Ok(None);
    }
    value
        .split(',')
        .map(|pair| {
            let (x, y) = pair
                .split_once(':')
                .ok_or_else(|| ConfigError::Invalid(format!("{key}: expected x:y, got `{pair}`")))?;
            Ok(Vec2::new(parse_f64(key, x)?, parse_f64(key, y)?))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

impl ModelParams {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let f = || parse_f64(key, value);
        match key {
            "field_length" => self.field.length = f()?,
            "field_width" => self.field.width = f()?,
            "tick_duration" => self.field.tick_duration = f()?,
            "team_size" => self.rugby.team_size = parse_u64(key, value)? as usize,
            "player_max_speed" => self.rugby.max_speed = f()?,
            "pass_speed" => self.rugby.pass_speed = f()?,
            "pressure_radius" => self.rugby.pressure_radius = f()?,
            "catch_radius" => self.rugby.catch_radius = f()?,
            "min_pass_distance" => self.rugby.min_pass_distance = f()?,
            "p_pass" => self.rugby.p_pass = f()?,
            "selfish_fraction" => self.rugby.selfish_fraction = f()?,
            "chasers" => self.rugby.chasers = parse_u64(key, value)? as usize,
            "ruck_ticks" => self.rugby.ruck_ticks = parse_u64(key, value)?,
            "offside_gap" => self.rugby.offside_gap = f()?,
            "breakdown_offset" => self.rugby.breakdown_offset = f()?,
            "personal_space" => self.rugby.personal_space = f()?,
            "tight_mark_offset" => self.rugby.tight_mark_offset = f()?,
            "jostle" => self.rugby.jostle = f()?,
            "mark_offset" => self.rugby.mark_offset = f()?,
            "ground_ticks" => self.rugby.ground_ticks = parse_u64(key, value)?,
            "support_depth" => self.rugby.support_depth = f()?,
            "support_spacing" => self.rugby.support_spacing = f()?,
            "contact_distance" => self.collision.contact_distance = f()?,
            "pair_cooldown" => self.collision.pair_cooldown = parse_u64(key, value)?,
            "drone_speed" => self.drone.speed = f()?,
            "detect_radius" => self.drone.detect_radius = f()?,
            "orbit_radius" => self.strategy.orbit_radius = f()?,
            "separation_distance" => self.strategy.separation_distance = f()?,
            "risk_radius" => self.strategy.risk_radius = f()?,
            "retarget_period" => self.strategy.retarget_period = parse_u64(key, value)?,
            "players_per_cluster" => self.strategy.players_per_cluster = parse_u64(key, value)? as usize,
            "hotspots" => self.strategy.hotspots = parse_points(key, value)?,
            "snr_ref_db" => self.channel.snr_ref_db = f()?,
            "snr_ref_distance" => self.channel.ref_distance = f()?,
            "shadowing_sigma_db" => self.channel.shadowing_sigma_db = f()?,
            "gamma_noise_sigma" => self.channel.gamma_noise_sigma = f()?,
            "gcs_x" => self.channel.gcs_pos.x = f()?,
            "gcs_y" => self.channel.gcs_pos.y = f()?,
            "energy_k" => self.energy.k = f()?,
            "f_cnn" => self.energy.f_cnn = f()?,
            "t_proc" => self.energy.t_proc = f()?,
            "v_dd" => self.energy.v_dd = f()?,
            "r_enc" => self.link.r_enc = f()?,
            "t_obs" => self.link.t_obs = f()?,
            "p_t" => self.link.p_t = f()?,
            "channel_gain" => self.link.h = f()?,
            "noise_power" => self.link.n0b = f()?,
            "control_bps" => self.control_bps = f()?,
            "fusion_threshold" => self.fusion_threshold = f()?,
            _ => return Err(ConfigError::UnknownKey(key.to_string())),
        }
        Ok(())
    }

    /// Current value of every parameter as `(key, value)` text, round-trippable through [`Self::set`].
    pub fn entries(&self) -> Vec<(&'static str, String)> {
        let hotspots = match &self.strategy.hotspots {
            None => "default".to_string(),
            Some(points) => points
                .iter()
                .map(|p| format!("{}:{}", p.x, p.y))
                .collect::<Vec<_>>()
                .join(","),
        };
        let values = [
            self.field.length.to_string(),
            self.field.width.to_string(),
            self.field.tick_duration.to_string(),
            self.rugby.team_size.to_string(),
            self.rugby.max_speed.to_string(),
            self.rugby.pass_speed.to_string(),
            self.rugby.pressure_radius.to_string(),
            self.rugby.catch_radius.to_string(),
            self.rugby.p_pass.to_string(),
            self.rugby.min_pass_distance.to_string(),
            self.rugby.selfish_fraction.to_string(),
            self.rugby.chasers.to_string(),
            self.rugby.ruck_ticks.to_string(),
            self.rugby.offside_gap.to_string(),
            self.rugby.breakdown_offset.to_string(),
            self.rugby.personal_space.to_string(),
            self.rugby.tight_mark_offset.to_string(),
            self.rugby.jostle.to_string(),
            self.rugby.mark_offset.to_string(),
            self.rugby.ground_ticks.to_string(),
            self.rugby.support_depth.to_string(),
            self.rugby.support_spacing.to_string(),
            self.collision.contact_distance.to_string(),
            self.collision.pair_cooldown.to_string(),
            self.drone.speed.to_string(),
            self.drone.detect_radius.to_string(),
            self.strategy.orbit_radius.to_string(),
            self.strategy.separation_distance.to_string(),
            self.strategy.risk_radius.to_string(),
            self.strategy.retarget_period.to_string(),
            self.strategy.players_per_cluster.to_string(),
            hotspots,
            self.channel.snr_ref_db.to_string(),
            self.channel.ref_distance.to_string(),
            self.channel.shadowing_sigma_db.to_string(),
            self.channel.gamma_noise_sigma.to_string(),
            self.channel.gcs_pos.x.to_string(),
            self.channel.gcs_pos.y.to_string(),
            self.energy.k.to_string(),
            self.energy.f_cnn.to_string(),
            self.energy.t_proc.to_string(),
            self.energy.v_dd.to_string(),
            self.link.r_enc.to_string(),
            self.link.t_obs.to_string(),
            self.link.p_t.to_string(),
            self.link.h.to_string(),
            self.link.n0b.to_string(),
            self.control_bps.to_string(),
            self.fusion_threshold.to_string(),
        ];
        PARAM_KEYS.iter().copied().zip(values).collect()
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.field.validate()?;
        let invalid = |msg: &str| Err(ConfigError::Invalid(msg.to_string()));
        if self.collision.contact_distance <= 0.0 {
            return invalid("contact_distance must be > 0");
        }
        if self.strategy.orbit_radius <= 0.0 {
            return invalid("orbit_radius must be > 0");
        }
        if self.strategy.separation_distance <= 0.0 {
            return invalid("separation_distance must be > 0");
        }
        if self.strategy.players_per_cluster == 0 {
            return invalid("players_per_cluster must be >= 1");
        }
        if self.drone.speed < 0.0 || self.drone.detect_radius < 0.0 {
            return invalid("drone_speed and detect_radius must be >= 0");
        }
        if self.rugby.max_speed < 0.0 || self.rugby.pass_speed <= 0.0 {
            return invalid("player_max_speed must be >= 0 and pass_speed > 0");
        }
        if !(0.0..=1.0).contains(&self.rugby.p_pass) || !(0.0..=1.0).contains(&self.rugby.selfish_fraction) {
            return invalid("p_pass and selfish_fraction must lie in [0, 1]");
        }
        if self.link.n0b <= 0.0 || self.link.h < 0.0 {
            return invalid("noise_power must be > 0 and channel_gain >= 0");
        }
        if self.energy.k < 0.0 || self.energy.f_cnn < 0.0 || self.energy.t_proc < 0.0 || self.energy.v_dd < 0.0 {
            return invalid("energy parameters must be >= 0");
        }
        Ok(())
    }

    pub fn hotspots(&self) -> Vec<Vec2> {
        self.strategy
            .hotspots
            .clone()
            .unwrap_or_else(|| StrategyParams::default_hotspots(&self.field))
    }
}
