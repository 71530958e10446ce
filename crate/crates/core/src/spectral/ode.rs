use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};
use crate::linalg::{Mat2, Vec2};

/// Fourier amplitude pair at one wavenumber: `W_hat = -beta dV_hat/dT`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralState {
    pub k: f64,
    pub w_hat: Complex64,
    pub v_hat: Complex64,
}

impl SpectralState {
    /// State of a field with transformed displacement `v_hat` and transformed
    /// velocity `psi_hat` in a medium of density `beta`.
    pub fn from_data(k: f64, v_hat: Complex64, psi_hat: Complex64, beta: f64) -> Self {
        SpectralState {
            k,
            w_hat: -beta * psi_hat,
            v_hat,
        }
    }

    fn parts(&self) -> (Vec2, Vec2) {
        (
            Vec2::new(self.w_hat.re, self.v_hat.re),
            Vec2::new(self.w_hat.im, self.v_hat.im),
        )
    }

    pub fn apply(&self, m: &Mat2) -> SpectralState {
        let (re, im) = self.parts();
        let (re, im) = (m.apply(re), m.apply(im));
        SpectralState {
            k: self.k,
            w_hat: Complex64::new(re.x(), im.x()),
            v_hat: Complex64::new(re.y(), im.y()),
        }
    }
}

fn step_count(t_end: f64, dt: f64) -> usize {
    let n = t_end / dt;
    let rounded = n.round();
    if (n - rounded).abs() < 1e-9 * n.max(1.0) {
        rounded.max(1.0) as usize
    } else {
        n.ceil() as usize
    }
}

fn coefficient(name: &'static str, value: f64, t: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonPositiveCoefficient { name, t, value })
    }
}

/// Fixed-step classical RK4 for the real system `dY/dT = -M(T) Y` from
/// `t0` to `t_end`. The step is shrunk so it divides the span evenly.
pub fn integrate_real<A, B>(
    k: f64,
    alpha_fn: A,
    beta_fn: B,
    y0: Vec2,
    t0: f64,
    t_end: f64,
    dt: f64,
) -> Result<Vec2>
where
    A: Fn(f64) -> f64,
    B: Fn(f64) -> f64,
{
    require_positive("dt", dt)?;
    if !(t_end >= t0) {
        return Err(Error::invalid("t_end", "must not precede the start time"));
    }
    if t_end == t0 {
        return Ok(y0);
    }
    let n = step_count(t_end - t0, dt);
    let h = (t_end - t0) / n as f64;
    let k2 = k * k;
    let rhs = |t: f64, y: Vec2| -> Result<Vec2> {
        let a = coefficient("alpha", alpha_fn(t), t)?;
        let b = coefficient("beta", beta_fn(t), t)?;
        Ok(Vec2::new(k2 * a * y.y(), -y.x() / b))
    };
    let mut y = y0;
    for i in 0..n {
        let t = t0 + i as f64 * h;
        let k1 = rhs(t, y)?;
        let k2_ = rhs(t + 0.5 * h, y + k1.scale(0.5 * h))?;
        let k3 = rhs(t + 0.5 * h, y + k2_.scale(0.5 * h))?;
        let k4 = rhs(t + h, y + k3.scale(h))?;
        y = y + (k1 + k2_.scale(2.0) + k3.scale(2.0) + k4).scale(h / 6.0);
    }
    Ok(y)
}

/// RK4 integration of one complex spectral state from `T = 0` to `t_end`.
/// The system is real, so real and imaginary parts advance independently.
pub fn integrate_spectrum<A, B>(
    k: f64,
    alpha_fn: A,
    beta_fn: B,
    y0: SpectralState,
    t_end: f64,
    dt: f64,
) -> Result<SpectralState>
where
    A: Fn(f64) -> f64,
    B: Fn(f64) -> f64,
{
    let (re, im) = y0.parts();
    let re = integrate_real(k, &alpha_fn, &beta_fn, re, 0.0, t_end, dt)?;
    let im = integrate_real(k, &alpha_fn, &beta_fn, im, 0.0, t_end, dt)?;
    Ok(SpectralState {
        k,
        w_hat: Complex64::new(re.x(), im.x()),
        v_hat: Complex64::new(re.y(), im.y()),
    })
}

/// Monodromy over `[0, period]` from two integrations with unit initial data.
pub fn integrate_monodromy<A, B>(k: f64, alpha_fn: A, beta_fn: B, period: f64, dt: f64) -> Result<Mat2>
where
    A: Fn(f64) -> f64,
    B: Fn(f64) -> f64,
{
    let c0 = integrate_real(k, &alpha_fn, &beta_fn, Vec2::new(1.0, 0.0), 0.0, period, dt)?;
    let c1 = integrate_real(k, &alpha_fn, &beta_fn, Vec2::new(0.0, 1.0), 0.0, period, dt)?;
    Ok(Mat2::new(c0.x(), c1.x(), c0.y(), c1.y()))
}

/// Monodromy of the Mathieu case `alpha = 1 - 2 q cos 2T`, `beta = 1`,
/// over its period `pi`.
pub fn mathieu_monodromy(q: f64, k: f64, dt: f64) -> Result<Mat2> {
    integrate_monodromy(
        k,
        move |t: f64| 1.0 - 2.0 * q * (2.0 * t).cos(),
        |_| 1.0,
        std::f64::consts::PI,
        dt,
    )
}
