//! Small planar linear-algebra primitives.

use serde::{Deserialize, Serialize};

/// A point or vector in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn distance(self, other: Vec2) -> f64 {
        (self - other).norm()
    }

    /// Counterclockwise rotation by `theta` radians about the origin.
    pub fn rotated(self, theta: f64) -> Vec2 {
        let (s, c) = theta.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    /// Polar angle in `(-pi, pi]`.
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl std::ops::Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl std::ops::Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl std::ops::Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

impl std::ops::Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Symmetric 2x2 matrix `[[fxx, fxy], [fxy, fyy]]`, used for Hessians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymMat2 {
    pub fxx: f64,
    pub fxy: f64,
    pub fyy: f64,
}

impl SymMat2 {
    pub fn new(fxx: f64, fxy: f64, fyy: f64) -> Self {
        SymMat2 { fxx, fxy, fyy }
    }

    pub fn det(self) -> f64 {
        self.fxx * self.fyy - self.fxy * self.fxy
    }

    pub fn trace(self) -> f64 {
        self.fxx + self.fyy
    }

    /// Eigenvalues sorted ascending. Symmetric, so both are real.
    pub fn eigenvalues(self) -> (f64, f64) {
        let half_trace = 0.5 * self.trace();
        let half_diff = 0.5 * (self.fxx - self.fyy);
        let disc = half_diff.hypot(self.fxy);
        (half_trace - disc, half_trace + disc)
    }

    pub fn apply(self, v: Vec2) -> Vec2 {
        Vec2::new(
            self.fxx * v.x + self.fxy * v.y,
            self.fxy * v.x + self.fyy * v.y,
        )
    }

    /// Solves `self * x = rhs` by Cramer's rule. `None` when the determinant
    /// is zero or the solution is not finite.
    pub fn solve(self, rhs: Vec2) -> Option<Vec2> {
        let det = self.det();
        if det == 0.0 {
            return None;
        }
        let x = (rhs.x * self.fyy - rhs.y * self.fxy) / det;
        let y = (rhs.y * self.fxx - rhs.x * self.fxy) / det;
        let sol = Vec2::new(x, y);
        sol.is_finite().then_some(sol)
    }
}
