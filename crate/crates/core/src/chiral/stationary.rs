use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Mat2, Vec2};

/// `M(angle) = [[cos, -sin], [sin, cos]]`; its generator is `-R`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RotationMatrix {
    pub angle: f64,
}

impl RotationMatrix {
    pub fn new(angle: f64) -> Self {
        RotationMatrix { angle }
    }

    pub fn matrix(&self) -> Mat2 {
        Mat2::rotation(self.angle)
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::rotation(-self.angle)
    }
}

fn inverse_gyricity(alpha: f64) -> Result<f64> {
    if alpha == 0.0 || !alpha.is_finite() {
        return Err(Error::DivisionByZero);
    }
    Ok(1.0 / alpha)
}

/// `alpha^{-1} R (I - M^T(angle))`, the map from velocity to displacement
/// jump across a gyroscopic interval of phase `angle = alpha d`.
pub fn jump_matrix(alpha: f64, angle: f64) -> Result<Mat2> {
    let inv = inverse_gyricity(alpha)?;
    Ok((Mat2::R * (Mat2::IDENTITY - Mat2::rotation(-angle))).scale(inv))
}

/// High-gyricity cross-section motion `Y(t) = alpha^{-1} R (I - M^T(alpha t)) g + f`
/// from displacement `f` and velocity `g`.
pub fn stationary_solution(f: Vec2, g: Vec2, alpha: f64, t: f64) -> Result<Vec2> {
    Ok(jump_matrix(alpha, alpha * t)?.apply(g) + f)
}

/// Velocity of [`stationary_solution`]: `M^T(alpha t) g`.
pub fn stationary_velocity(g: Vec2, alpha: f64, t: f64) -> Vec2 {
    RotationMatrix::new(alpha * t).transpose().apply(g)
}

/// Displacement jump `alpha^{-1} R (I - M^T(alpha d)) g` across a
/// gyroscopic interval of length `d`.
pub fn interface_jump(g: Vec2, alpha: f64, d: f64) -> Result<Vec2> {
    if !(d > 0.0) {
        return Err(Error::invalid("d", format!("positive required, got {d}")));
    }
    Ok(jump_matrix(alpha, alpha * d)?.apply(g))
}
