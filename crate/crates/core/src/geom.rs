//! Planar field geometry. Distances are in patches (1 patch ~ 1 m).

use std::ops::{Add, AddAssign, Mul, Sub};

use crate::error::ConfigError;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm(self) -> f64 {
        (self.x * self.x + self.y * self.y).sqrt()
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// Unit vector in the same direction, or `None` for the zero vector.
    pub fn normalized(self) -> Option<Vec2> {
        let n = self.norm();
        (n > 0.0).then(|| self * (1.0 / n))
    }

    /// Rescales to at most `max_len`, keeping direction.
    pub fn capped(self, max_len: f64) -> Vec2 {
        let n = self.norm();
        if n > max_len && n > 0.0 {
            self * (max_len / n)
        } else {
            self
        }
    }

    pub fn midpoint(self, other: Vec2) -> Vec2 {
        Vec2::new((self.x + other.x) * 0.5, (self.y + other.y) * 0.5)
    }

    /// Point at `radius` from `self` along angle `theta` (radians).
    pub fn polar_offset(self, radius: f64, theta: f64) -> Vec2 {
        Vec2::new(self.x + radius * theta.cos(), self.y + radius * theta.sin())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, rhs: Vec2) {
        self.x += rhs.x;
        self.y += rhs.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

/// Euclidean distance between two points.
pub fn distance(a: Vec2, b: Vec2) -> f64 {
    (a - b).norm()
}

/// Rectangular pitch with its origin at the (0, 0) corner.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldSpec {
    /// x-extent in patches.
    pub length: f64,
    /// y-extent in patches.
    pub width: f64,
    /// Seconds of match time per tick.
    pub tick_duration: f64,
}

impl Default for FieldSpec {
    fn default() -> Self {
        Self {
            length: 100.0,
            width: 70.0,
            tick_duration: 0.1,
        }
    }
}

impl FieldSpec {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !ok(self.length) || !ok(self.width) || !ok(self.tick_duration) {
            return Err(ConfigError::Invalid(format!(
                "field dimensions and tick_duration must be positive (got {}x{}, {} s)",
                self.length, self.width, self.tick_duration
            )));
        }
        Ok(())
    }

    pub fn center(&self) -> Vec2 {
        Vec2::new(self.length * 0.5, self.width * 0.5)
    }

    pub fn contains(&self, p: Vec2) -> bool {
        (0.0..=self.length).contains(&p.x) && (0.0..=self.width).contains(&p.y)
    }

    /// Number of ticks covering `seconds` of match time, rounded to nearest.
    pub fn ticks_for(&self, seconds: f64) -> u64 {
        (seconds / self.tick_duration).round() as u64
    }
}

/// Clamps each coordinate into `[0, extent]`; interior points are returned unchanged.
pub fn clamp_to_field(p: Vec2, field: &FieldSpec) -> Vec2 {
    Vec2::new(p.x.clamp(0.0, field.length), p.y.clamp(0.0, field.width))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_examples() {
        assert_eq!(distance(Vec2::new(0.0, 0.0), Vec2::new(3.0, 4.0)), 5.0);
        assert_eq!(distance(Vec2::new(2.0, 2.0), Vec2::new(2.0, 2.0)), 0.0);
        assert_eq!(distance(Vec2::new(1.0, 0.0), Vec2::new(-1.0, 0.0)), 2.0);
    }

    #[test]
    fn clamp_examples() {
        let f = FieldSpec::default();
        assert_eq!(clamp_to_field(Vec2::new(50.0, 30.0), &f), Vec2::new(50.0, 30.0));
        assert_eq!(clamp_to_field(Vec2::new(-5.0, 30.0), &f), Vec2::new(0.0, 30.0));
        assert_eq!(clamp_to_field(Vec2::new(120.0, 80.0), &f), Vec2::new(100.0, 70.0));
    }

    #[test]
    fn field_validation_rejects_nonpositive() {
        assert!(FieldSpec::default().validate().is_ok());
        let bad = FieldSpec {
            width: 0.0,
            ..FieldSpec::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn capped_keeps_direction() {
        let v = Vec2::new(30.0, 40.0).capped(10.0);
        assert!((v.x - 6.0).abs() < 1e-12 && (v.y - 8.0).abs() < 1e-12);
        assert_eq!(Vec2::new(0.3, 0.4).capped(10.0), Vec2::new(0.3, 0.4));
    }

    #[test]
    fn clip_window_ticks() {
        assert_eq!(FieldSpec::default().ticks_for(5.0), 50);
    }
}
