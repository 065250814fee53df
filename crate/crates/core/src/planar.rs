//! Vectors in the orbital plane.
//!
//! Angular momentum is conserved, so every orbit lives in a fixed plane. We
//! take that plane to be x–y; out-of-plane quantities (angular momentum) are
//! carried as signed z-components.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{KeplerError, Result};

/// 2-component real vector for positions and momenta in the orbital plane.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct PlanarVec {
    pub x: f64,
    pub y: f64,
}

impl PlanarVec {
    pub const ZERO: PlanarVec = PlanarVec { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Point at polar coordinates `(radius, angle)`.
    #[inline]
    pub fn from_polar(radius: f64, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(radius * c, radius * s)
    }

    #[inline]
    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product `self × other`.
    #[inline]
    pub fn cross(self, other: Self) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    /// Polar angle in `(-π, π]`.
    #[inline]
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn unit(self) -> Result<Self> {
        let n = self.norm();
        if n > 0.0 && n.is_finite() {
            Ok(self / n)
        } else {
            Err(KeplerError::ZeroRadius)
        }
    }

    /// Rotation by the angle whose cosine and sine are given.
    #[inline]
    pub fn rotate_cs(self, cos: f64, sin: f64) -> Self {
        Self::new(cos * self.x - sin * self.y, sin * self.x + cos * self.y)
    }

    #[inline]
    pub fn rotate(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        self.rotate_cs(c, s)
    }

    /// `self × (lz ẑ)` for an in-plane vector and an out-of-plane scalar.
    #[inline]
    pub fn cross_z(self, lz: f64) -> Self {
        Self::new(self.y * lz, -self.x * lz)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for PlanarVec {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl AddAssign for PlanarVec {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        self.x += rhs.x;
        self.y += rhs.y;
    }
}

impl Sub for PlanarVec {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for PlanarVec {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

impl Mul<f64> for PlanarVec {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: f64) -> Self {
        Self::new(self.x * rhs, self.y * rhs)
    }
}

impl Mul<PlanarVec> for f64 {
    type Output = PlanarVec;
    #[inline]
    fn mul(self, rhs: PlanarVec) -> PlanarVec {
        rhs * self
    }
}

impl Div<f64> for PlanarVec {
    type Output = Self;
    #[inline]
    fn div(self, rhs: f64) -> Self {
        Self::new(self.x / rhs, self.y / rhs)
    }
}

/// Unsigned angle between two nonzero vectors, in `[0, π]`.
///
/// Uses `atan2(|a × b|, a · b)`, which stays accurate near 0 and π where
/// `acos` loses half its digits.
pub fn angle_between(a: PlanarVec, b: PlanarVec) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(KeplerError::InvalidArgument("non-finite vector component".into()));
    }
    if a.norm() == 0.0 || b.norm() == 0.0 {
        return Err(KeplerError::ZeroRadius);
    }
    Ok(a.cross(b).abs().atan2(a.dot(b)))
}
