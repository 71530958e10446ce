use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use super::transfer::propagator_until;
use crate::error::{require_positive, Error, Result};
use crate::scalar_laminate::TemporalLaminate;
use crate::wave_terms::{Profile, Shape};

pub const DEFAULT_GRID_SIZE: usize = 4096;

/// Periodic sampling window `x_j = x_min + j dx`, `j < n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralGrid {
    pub n: usize,
    pub x_min: f64,
    pub length: f64,
}

impl SpectralGrid {
    /// `n` points covering `[-half_width, half_width)`.
    pub fn centered(n: usize, half_width: f64) -> Result<Self> {
        require_positive("half_width", half_width)?;
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::invalid("n", format!("power of two >= 2 required, got {n}")));
        }
        Ok(SpectralGrid {
            n,
            x_min: -half_width,
            length: 2.0 * half_width,
        })
    }

    pub fn dx(&self) -> f64 {
        self.length / self.n as f64
    }

    pub fn x(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.dx()
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.x(j)).collect()
    }

    /// Wavenumber of FFT bin `m`, with negative frequencies in the upper half.
    pub fn k(&self, m: usize) -> f64 {
        let signed = if m < self.n / 2 {
            m as f64
        } else {
            m as f64 - self.n as f64
        };
        2.0 * std::f64::consts::PI * signed / self.length
    }

    pub fn nyquist(&self) -> f64 {
        std::f64::consts::PI / self.dx()
    }
}

/// Initial displacement for [`spectral_cauchy`].
#[derive(Clone, Debug, PartialEq)]
pub enum InitialData {
    /// Unshifted Gaussian `exp(-A x^2)`, transformed analytically.
    Gaussian { a: f64 },
    /// Samples on the grid points.
    Sampled(Vec<f64>),
}

impl InitialData {
    /// Analytic data for a plain Gaussian profile.
    pub fn from_profile(p: &Profile) -> Result<Self> {
        match (p.shape(), p.order()) {
            (Shape::Gaussian { a }, 0) => Ok(InitialData::Gaussian { a }),
            _ => Err(Error::invalid(
                "profile",
                format!("no closed-form transform for {p}; pass samples instead"),
            )),
        }
    }
}

/// Samples of the displacement at time `t`, with the largest imaginary part
/// left over by the inverse transform.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampledField {
    pub x: Vec<f64>,
    pub value: Vec<f64>,
    pub max_imaginary: f64,
}

/// Fourier solution of the Cauchy problem with zero initial velocity.
///
/// Transform convention: `F(k) = integral f(x) e^{ikx} dx`, so the inverse
/// carries `e^{-ikx} / 2 pi`. Each wavenumber is advanced by the exact
/// piecewise transfer matrices of the laminate up to `t`.
pub fn spectral_cauchy(
    lam: &TemporalLaminate,
    data: &InitialData,
    grid: &SpectralGrid,
    t: f64,
) -> Result<SampledField> {
    if !(t >= 0.0) {
        return Err(Error::invalid("t", format!("must be >= 0, got {t}")));
    }
    let n = grid.n;
    let dx = grid.dx();
    let mut planner = FftPlanner::<f64>::new();

    let phi_hat: Vec<Complex64> = match data {
        InitialData::Gaussian { a } => {
            let a = require_positive("A", *a)?;
            let required = 6.0 * a.sqrt();
            if grid.nyquist() < required {
                return Err(Error::GridTooCoarse {
                    nyquist: grid.nyquist(),
                    required,
                });
            }
            let scale = (std::f64::consts::PI / a).sqrt();
            (0..n)
                .map(|m| {
                    let k = grid.k(m);
                    Complex64::new(scale * (-k * k / (4.0 * a)).exp(), 0.0)
                })
                .collect()
        }
        InitialData::Sampled(samples) => {
            if samples.len() != n {
                return Err(Error::invalid(
                    "samples",
                    format!("expected {n} samples, got {}", samples.len()),
                ));
            }
            // sum_j f_j e^{i k_m x_j} dx = dx e^{i k_m x_min} sum_j f_j e^{2 pi i m j / n}
            let mut buf: Vec<Complex64> = samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
            planner.plan_fft_inverse(n).process(&mut buf);
            buf.iter()
                .enumerate()
                .map(|(m, &b)| b * Complex64::from_polar(dx, grid.k(m) * grid.x_min))
                .collect()
        }
    };

    let mut spectrum: Vec<Complex64> = phi_hat
        .par_iter()
        .enumerate()
        .map(|(m, &p)| {
            let k = grid.k(m);
            // zero initial velocity: W_hat(0) = 0, so only the V-V entry acts
            let v = propagator_until(k, lam, t).0[1][1] * p;
            v * Complex64::from_polar(1.0 / grid.length, -k * grid.x_min)
        })
        .collect();
    planner.plan_fft_forward(n).process(&mut spectrum);

    let max_imaginary = spectrum.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
    Ok(SampledField {
        x: grid.xs(),
        value: spectrum.iter().map(|c| c.re).collect(),
        max_imaginary,
    })
}
