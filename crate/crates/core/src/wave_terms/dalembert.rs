use super::field::{Direction, Polarization, SpatialTerm, WaveField, WaveTerm};
use crate::error::{require_positive, Result};

/// Solution of the free wave equation with speed `speed` from displacement
/// and velocity data given at time `t0`.
///
/// Displacement terms split in half along both directions; velocity terms
/// are integrated once and carried as `(1/2c) [G(x + c tau) - G(x - c tau)]`.
pub fn dalembert(
    displacement: &[SpatialTerm],
    velocity: &[SpatialTerm],
    speed: f64,
    t0: f64,
    polarization: Polarization,
) -> Result<WaveField> {
    require_positive("speed", speed)?;
    let mut terms = Vec::with_capacity(2 * (displacement.len() + velocity.len()));
    let mut push = |coefficient: f64, direction: Direction, spatial_shift: f64, profile| {
        terms.push(WaveTerm {
            coefficient,
            direction,
            speed,
            shift: spatial_shift + direction.sign() * speed * t0,
            polarization,
            profile,
        });
    };
    for piece in displacement {
        let half = 0.5 * piece.coefficient;
        push(half, Direction::Forward, piece.shift, piece.profile);
        push(half, Direction::Backward, piece.shift, piece.profile);
    }
    for piece in velocity {
        let integrated = piece.profile.antiderivative()?;
        let weight = piece.coefficient / (2.0 * speed);
        push(weight, Direction::Backward, piece.shift, integrated);
        push(-weight, Direction::Forward, piece.shift, integrated);
    }
    Ok(WaveField::new(terms))
}
