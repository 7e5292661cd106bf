//! Planar geometry and the bounded arena every agent lives in.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

/// A position or velocity in environment units.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Unit vector pointing at `angle` radians from the +x axis.
    pub fn from_angle(angle: f64) -> Self {
        Self::new(angle.cos(), angle.sin())
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Vec2) -> f64 {
        (self - other).norm()
    }

    pub fn distance_sq(self, other: Vec2) -> f64 {
        (self - other).norm_sq()
    }

    /// `None` for the zero vector.
    pub fn normalized(self) -> Option<Vec2> {
        let n = self.norm();
        (n > 0.0).then(|| self / n)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Arithmetic mean of a set of vectors; zero when the set is empty.
    pub fn mean<I: IntoIterator<Item = Vec2>>(items: I) -> Vec2 {
        let mut sum = Vec2::ZERO;
        let mut count = 0usize;
        for v in items {
            sum += v;
            count += 1;
        }
        if count == 0 {
            Vec2::ZERO
        } else {
            sum / count as f64
        }
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

impl SubAssign for Vec2 {
    fn sub_assign(&mut self, rhs: Vec2) {
        self.x -= rhs.x;
        self.y -= rhs.y;
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    fn mul(self, rhs: Vec2) -> Vec2 {
        rhs * self
    }
}

impl Div<f64> for Vec2 {
    type Output = Vec2;
    fn div(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x / rhs, self.y / rhs)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Rectangular arena `[0, width] x [0, height]` with its origin at a corner.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvBounds {
    pub width: f64,
    pub height: f64,
}

impl Default for EnvBounds {
    fn default() -> Self {
        Self {
            width: 1000.0,
            height: 1000.0,
        }
    }
}

impl EnvBounds {
    pub fn new(width: f64, height: f64) -> Self {
        Self { width, height }
    }

    pub fn contains(&self, p: Vec2) -> bool {
        (0.0..=self.width).contains(&p.x) && (0.0..=self.height).contains(&p.y)
    }

    pub fn center(&self) -> Vec2 {
        Vec2::new(self.width / 2.0, self.height / 2.0)
    }
}

/// Returns `v` unchanged if `|v| <= max`, otherwise `v` rescaled to length `max`.
pub fn clamp_magnitude(v: Vec2, max: f64) -> Vec2 {
    debug_assert!(max >= 0.0);
    let n = v.norm();
    if n <= max {
        v
    } else {
        v * (max / n)
    }
}

/// Advances `p` by `v`, mirroring the position about any wall it crosses and
/// negating the matching velocity component. Repeats until in bounds so very
/// large steps still land inside the arena.
pub fn bounce_reflect(p: Vec2, v: Vec2, env: EnvBounds) -> (Vec2, Vec2) {
    let (x, vx) = reflect_axis(p.x + v.x, v.x, env.width);
    let (y, vy) = reflect_axis(p.y + v.y, v.y, env.height);
    (Vec2::new(x, y), Vec2::new(vx, vy))
}

fn reflect_axis(mut x: f64, mut v: f64, max: f64) -> (f64, f64) {
    for _ in 0..64 {
        if x < 0.0 {
            x = -x;
            v = -v;
        } else if x > max {
            x = 2.0 * max - x;
            v = -v;
        } else {
            return (x, v);
        }
    }
    // Only reachable for steps many arena widths long.
    (x.clamp(0.0, max), v)
}
