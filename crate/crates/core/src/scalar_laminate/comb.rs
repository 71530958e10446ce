use super::medium::{MediumPhase, TemporalLaminate};
use super::split::{initial_field, propagate};
use crate::error::{require_positive, Result};
use crate::wave_terms::{Polarization, Profile};

/// Two-phase laminate timed so that each phase carries a wave exactly half
/// a comb period `D`: `c1 T1 = D/2 = c2 T2`.
pub fn comb_laminate(p1: MediumPhase, p2: MediumPhase, half_period: f64) -> Result<TemporalLaminate> {
    require_positive("D", half_period)?;
    TemporalLaminate::equal_distance(p1, p2, 0.5 * half_period)
}

/// Closed-form origin value after `n` cells as printed with the resonance
/// law: `(-1)^n sqrt(beta1/alpha1) (alpha2 beta2 / (alpha1 beta1))^(n/2)`.
pub fn comb_origin_value(alpha1: f64, beta1: f64, alpha2: f64, beta2: f64, n: u32) -> f64 {
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let ratio = (alpha2 * beta2) / (alpha1 * beta1);
    sign * (beta1 / alpha1).sqrt() * ratio.powf(0.5 * n as f64)
}

/// Origin value produced by the splitting engine. It obeys the same growth
/// law with half the prefactor, consistent with the `n = 0` D'Alembert field.
pub fn comb_origin_value_split(alpha1: f64, beta1: f64, alpha2: f64, beta2: f64, n: u32) -> f64 {
    0.5 * comb_origin_value(alpha1, beta1, alpha2, beta2, n)
}

/// `V(0, t)` from [`propagate`] for cells `0..=n_max`, sampled in the middle
/// of the phase-1 window `n (T1 + T2) < t < (n + 1) T1 + n T2`.
pub fn comb_origin_series(
    p1: MediumPhase,
    p2: MediumPhase,
    half_period: f64,
    n_max: u32,
) -> Result<Vec<(u32, f64, f64)>> {
    let lam = comb_laminate(p1, p2, half_period)?;
    let init = initial_field(None, Some(Profile::dirac_comb(half_period)?), p1)?;
    let t1 = lam.layers()[0].duration;
    let period = lam.period();
    let mut out = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let t = n as f64 * period + 0.5 * t1;
        let field = propagate(&lam, init.clone(), t, 1e-14)?;
        out.push((n, t, field.eval(0.0, t, Polarization::Scalar)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_law_examples() {
        assert_eq!(comb_origin_value(1.0, 1.0, 4.0, 1.0, 1), -2.0);
        assert_eq!(comb_origin_value(1.0, 1.0, 4.0, 1.0, 2), 4.0);
        assert_eq!(comb_origin_value(2.0, 0.5, 1.0, 1.0, 3).abs(), 0.5);
    }

    #[test]
    fn engine_matches_halved_law() {
        let p1 = MediumPhase::new(1.0, 1.0).unwrap();
        let p2 = MediumPhase::new(4.0, 1.0).unwrap();
        for (n, _, v) in comb_origin_series(p1, p2, 1.0, 4).unwrap() {
            let expected = comb_origin_value_split(1.0, 1.0, 4.0, 1.0, n);
            assert!((v - expected).abs() < 1e-12, "n={n}: {v} vs {expected}");
        }
    }

    #[test]
    fn engine_matches_halved_law_off_unit_phase() {
        let p1 = MediumPhase::new(3.0, 1.5).unwrap();
        let p2 = MediumPhase::new(1.0, 24.0).unwrap();
        for (n, _, v) in comb_origin_series(p1, p2, 0.8, 3).unwrap() {
            let expected = comb_origin_value_split(3.0, 1.5, 1.0, 24.0, n);
            assert!((v - expected).abs() < 1e-11 * expected.abs().max(1.0), "n={n}: {v} vs {expected}");
        }
    }
}
