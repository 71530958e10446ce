use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Result};
use crate::linalg::Vec2;
use crate::wave_terms::{Direction, Polarization, Profile, WaveField, WaveTerm};

/// Transverse field scattered when a unit longitudinal step front
/// `1 - H(x - x0 - c1 (t - t0))` crosses a point chiral interface of
/// strength `beta` at `(x0, t0)`.
///
/// The transverse wave `(beta/2c2) [H(x - x0 - c2 tau) - H(x - x0 + c2 tau)]`
/// does not depend on `c1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpatialScatter {
    pub beta: f64,
    pub c2: f64,
    pub x0: f64,
    pub t0: f64,
    /// Transverse terms, valid for `t > t0`.
    pub scattered: WaveField,
}

impl SpatialScatter {
    /// `beta / (2 c2)`.
    pub fn amplitude(&self) -> f64 {
        self.beta / (2.0 * self.c2)
    }

    /// Scattered displacement at `(x, t)`; zero before `t0`.
    pub fn scattered_at(&self, x: f64, t: f64) -> Result<Vec2> {
        if t <= self.t0 {
            return Ok(Vec2::ZERO);
        }
        Ok(Vec2::new(0.0, self.scattered.eval(x, t, Polarization::Transverse)?))
    }

    /// Reflected field on `x < x0`: `(0, -(beta/2c2) H(x - x0 + c2 tau))`.
    pub fn reflected(&self, x: f64, t: f64) -> Result<Vec2> {
        let tau = t - self.t0;
        if tau <= 0.0 {
            return Ok(Vec2::ZERO);
        }
        let h = Profile::heaviside().eval(x - self.x0 + self.c2 * tau)?;
        Ok(Vec2::new(0.0, -self.amplitude() * h))
    }

    /// Transmitted field on `x > x0`: incident front plus
    /// `(beta/2c2) (H(x - x0 - c2 tau) - 1)` in `v`. `c1` only moves the
    /// longitudinal front.
    pub fn transmitted(&self, c1: f64, x: f64, t: f64) -> Result<Vec2> {
        let tau = t - self.t0;
        let h = Profile::heaviside();
        let u = 1.0 - h.eval(x - self.x0 - c1 * tau)?;
        if tau <= 0.0 {
            return Ok(Vec2::new(u, 0.0));
        }
        let v = self.amplitude() * (h.eval(x - self.x0 - self.c2 * tau)? - 1.0);
        Ok(Vec2::new(u, v))
    }
}

/// Closed-form scattered field of a unit step front on a point chiral
/// interface.
pub fn spatial_scatter(beta: f64, c2: f64, x0: f64, t0: f64) -> Result<SpatialScatter> {
    require_positive("c2", c2)?;
    let a = beta / (2.0 * c2);
    let step = Profile::heaviside();
    let terms = if beta == 0.0 {
        Vec::new()
    } else {
        vec![
            WaveTerm::new(a, Direction::Forward, c2, c2 * t0 - x0, Polarization::Transverse, step)?,
            WaveTerm::new(-a, Direction::Backward, c2, -c2 * t0 - x0, Polarization::Transverse, step)?,
        ]
    };
    Ok(SpatialScatter {
        beta,
        c2,
        x0,
        t0,
        scattered: WaveField::new(terms),
    })
}

/// Transverse plateau when the interface also acts back on `u`:
/// `(beta/2c2) / (1 + beta^2/(4 c1 c2))`.
pub fn coupled_scatter_amplitude(beta: f64, c1: f64, c2: f64) -> f64 {
    beta / (2.0 * c2) / (1.0 + beta * beta / (4.0 * c1 * c2))
}
