use super::medium::{MediumPhase, TemporalLaminate};
use crate::error::{Error, Result};
use crate::wave_terms::{dalembert, Polarization, Profile, SpatialTerm, WaveField, WaveTerm};

/// Default tolerance for dropping negligible terms after each split.
pub const DEFAULT_PRUNE_TOLERANCE: f64 = 1e-12;

/// Relative tolerance under which two impedance products count as equal.
pub const MATCHED_IMPEDANCE_TOLERANCE: f64 = 1e-14;

/// Ratio `r = sqrt(alpha_f beta_f / (alpha_t beta_t))` that drives the split.
pub fn transmission_ratio(from: &MediumPhase, to: &MediumPhase) -> f64 {
    let (zf, zt) = (from.impedance_sq(), to.impedance_sq());
    if (zf - zt).abs() <= MATCHED_IMPEDANCE_TOLERANCE * zf.max(zt) {
        1.0
    } else {
        (zf / zt).sqrt()
    }
}

/// `(transmitted, reversed)` weights `((1 + r)/2, (1 - r)/2)`.
pub fn split_weights(from: &MediumPhase, to: &MediumPhase) -> (f64, f64) {
    let r = transmission_ratio(from, to);
    (0.5 * (1.0 + r), 0.5 * (1.0 - r))
}

/// D'Alembert field for displacement `phi` and velocity `psi` in one phase,
/// starting at `t = 0`.
pub fn initial_field(
    phi: Option<Profile>,
    psi: Option<Profile>,
    phase: MediumPhase,
) -> Result<WaveField> {
    let piece = |p: Profile| SpatialTerm {
        coefficient: 1.0,
        shift: 0.0,
        profile: p,
    };
    let disp: Vec<SpatialTerm> = phi.into_iter().map(piece).collect();
    let vel: Vec<SpatialTerm> = psi.into_iter().map(piece).collect();
    dalembert(&disp, &vel, phase.speed(), 0.0, Polarization::Scalar)
}

/// Splits every term of `field` at the temporal interface `t_star`.
///
/// Each incoming term feeds a transmitted term (same direction) and a
/// reversed term, both at the new speed, with shifts chosen so the profile
/// argument is continuous at `t_star`. Zero reversed parts are not emitted.
pub fn split_field(
    field: &WaveField,
    from: &MediumPhase,
    to: &MediumPhase,
    t_star: f64,
) -> Result<WaveField> {
    let c_from = from.speed();
    let c_to = to.speed();
    let (kept, reversed) = split_weights(from, to);
    let mut out = Vec::with_capacity(2 * field.len());
    for term in field.iter() {
        if (term.speed - c_from).abs() > 1e-12 * c_from.max(1.0) {
            return Err(Error::PhaseMismatch {
                expected: c_from,
                found: term.speed,
            });
        }
        let frozen = term.frozen_shift(t_star);
        let s = term.direction.sign();
        out.push(WaveTerm {
            coefficient: term.coefficient * kept,
            speed: c_to,
            shift: frozen + s * c_to * t_star,
            ..*term
        });
        if reversed != 0.0 {
            out.push(WaveTerm {
                coefficient: term.coefficient * reversed,
                direction: term.direction.flip(),
                speed: c_to,
                shift: frozen - s * c_to * t_star,
                ..*term
            });
        }
    }
    Ok(WaveField::new(out))
}

/// Field on one open time interval between consecutive interfaces.
#[derive(Clone, Debug, PartialEq)]
pub struct Stage {
    pub t_start: f64,
    /// `None` for the final, unbounded interval.
    pub t_end: Option<f64>,
    pub phase: MediumPhase,
    pub field: WaveField,
}

/// Every stage from `t = 0` up to the one containing `t_end`.
pub fn propagate_stages(
    lam: &TemporalLaminate,
    init: WaveField,
    t_end: f64,
    prune_tol: f64,
) -> Result<Vec<Stage>> {
    if !(t_end >= 0.0) {
        return Err(Error::invalid("t_end", format!("must be >= 0, got {t_end}")));
    }
    if !(prune_tol >= 0.0) {
        return Err(Error::invalid("prune_tol", "must be >= 0"));
    }
    let mut stages = Vec::new();
    let mut field = init;
    let mut t_start = 0.0;
    let mut phase = lam.initial_phase();
    for interface in lam.interfaces(t_end) {
        stages.push(Stage {
            t_start,
            t_end: Some(interface.time),
            phase,
            field: field.clone(),
        });
        field = split_field(&field, &interface.from, &interface.to, interface.time)?.prune(prune_tol);
        t_start = interface.time;
        phase = interface.to;
    }
    stages.push(Stage {
        t_start,
        t_end: None,
        phase,
        field,
    });
    Ok(stages)
}

/// Splits at every interface `<= t_end`; the result holds on the last
/// open interval.
pub fn propagate(
    lam: &TemporalLaminate,
    init: WaveField,
    t_end: f64,
    prune_tol: f64,
) -> Result<WaveField> {
    let mut stages = propagate_stages(lam, init, t_end, prune_tol)?;
    Ok(stages.pop().expect("at least one stage").field)
}

/// Rightmost forward and leftmost backward terms of a scalar field: the two
/// edge waves.
pub fn edge_terms(field: &WaveField) -> Option<(WaveTerm, WaveTerm)> {
    use crate::wave_terms::Direction;
    let right = field
        .iter()
        .filter(|t| t.direction == Direction::Forward && t.coefficient != 0.0)
        .min_by(|a, b| a.shift.total_cmp(&b.shift))?;
    let left = field
        .iter()
        .filter(|t| t.direction == Direction::Backward && t.coefficient != 0.0)
        .max_by(|a, b| a.shift.total_cmp(&b.shift))?;
    Some((*right, *left))
}

/// Edge-wave coefficients `(C1, C2)` after `n` macro-cells: `C1` in phase 1,
/// `C2` in the following phase 2.
pub fn edge_amplitude(alpha1: f64, beta1: f64, alpha2: f64, beta2: f64, n: u32) -> (f64, f64) {
    let kappa = (alpha1 * beta1) / (alpha2 * beta2);
    let c1 = 0.5 * growth_base(kappa).powi(n as i32);
    let c2 = 0.5 * (1.0 + kappa.sqrt()) * c1;
    (c1, c2)
}

/// Per-cell edge growth factor `1 + (sqrt(kappa) + 1/sqrt(kappa) - 2)/4`.
pub fn growth_base(kappa: f64) -> f64 {
    let s = kappa.sqrt();
    1.0 + 0.25 * (s + 1.0 / s - 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wave_terms::Direction;

    fn fig2_phases() -> (MediumPhase, MediumPhase) {
        (
            MediumPhase::new(1.0, 1.0).unwrap(),
            MediumPhase::new(4.0, 1.0).unwrap(),
        )
    }

    #[test]
    fn gaussian_start_gives_two_halves() {
        let (p1, _) = fig2_phases();
        let f = initial_field(Some(Profile::gaussian(2.0).unwrap()), None, p1).unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|t| t.coefficient == 0.5));
        assert!(initial_field(None, None, p1).unwrap().is_empty());
    }

    #[test]
    fn comb_start_gives_heaviside_pairs() {
        let (p1, _) = fig2_phases();
        let f = initial_field(None, Some(Profile::dirac_comb(1.0).unwrap()), p1).unwrap();
        assert_eq!(f.len(), 2);
        let comb = Profile::heaviside_comb(1.0).unwrap();
        for t in f.iter() {
            assert_eq!(t.profile, comb);
            assert_eq!(t.coefficient.abs(), 0.5);
        }
        // the backward (x + ct) half carries the + sign
        assert_eq!(f.terms()[1].direction, Direction::Backward);
        assert_eq!(f.terms()[1].coefficient, 0.5);
    }

    #[test]
    fn fig2_first_split_weights() {
        let (p1, p2) = fig2_phases();
        let f = initial_field(Some(Profile::gaussian(1.0).unwrap()), None, p1).unwrap();
        let g = split_field(&f, &p1, &p2, 1.0).unwrap();
        let mut coeffs: Vec<f64> = g.iter().map(|t| t.coefficient).collect();
        coeffs.sort_by(f64::total_cmp);
        assert_eq!(coeffs, vec![0.125, 0.125, 0.375, 0.375]);
    }

    #[test]
    fn second_split_gives_nine_sixteenths() {
        let (p1, p2) = fig2_phases();
        let f = initial_field(Some(Profile::gaussian(1.0).unwrap()), None, p1).unwrap();
        let g = split_field(&f, &p1, &p2, 1.0).unwrap();
        let h = split_field(&g, &p2, &p1, 1.5).unwrap();
        let (right, _) = edge_terms(&h).unwrap();
        assert_eq!(right.coefficient, 9.0 / 16.0);
        let kappa: f64 = 4.0;
        assert!((right.coefficient - (2.0 + kappa.sqrt() + 1.0 / kappa.sqrt()) / 8.0).abs() < 1e-15);
    }

    #[test]
    fn backward_shift_after_one_cell_is_twice_the_cell_width() {
        // Fig. 2 laminate has d = 1: the reversed-then-reversed wave starting
        // at the origin re-enters phase 1 displaced by 2d.
        let (p1, p2) = fig2_phases();
        let lam = TemporalLaminate::equal_distance(p1, p2, 1.0).unwrap();
        let f = initial_field(Some(Profile::gaussian(1.0).unwrap()), None, p1).unwrap();
        let g = propagate(&lam, f, 1.6, 0.0).unwrap();
        let shifts: Vec<f64> = g
            .iter()
            .filter(|t| t.direction == Direction::Backward)
            .map(|t| t.frozen_shift(1.5))
            .collect();
        assert!(shifts.iter().any(|s| (s - 2.0).abs() < 1e-12), "{shifts:?}");
        assert!(shifts.iter().any(|s| (s + 2.0).abs() < 1e-12), "{shifts:?}");
    }

    #[test]
    fn matched_impedance_has_no_reversed_terms() {
        let p1 = MediumPhase::new(2.0, 0.5).unwrap();
        let p2 = MediumPhase::new(0.5, 2.0).unwrap();
        let lam = TemporalLaminate::equal_distance(p1, p2, 0.7).unwrap();
        let f = initial_field(Some(Profile::gaussian(1.0).unwrap()), None, p1).unwrap();
        let g = propagate(&lam, f, 20.0, 1e-15).unwrap();
        assert_eq!(g.len(), 2);
        assert!(g.iter().all(|t| t.coefficient == 0.5));
    }

    #[test]
    fn phase_mismatch_is_reported() {
        let (p1, p2) = fig2_phases();
        let f = initial_field(Some(Profile::gaussian(1.0).unwrap()), None, p2).unwrap();
        assert!(matches!(
            split_field(&f, &p1, &p2, 1.0),
            Err(Error::PhaseMismatch { .. })
        ));
    }

    #[test]
    fn single_phase_propagation_is_identity() {
        let (p1, _) = fig2_phases();
        let lam = TemporalLaminate::homogeneous(p1);
        let f = initial_field(Some(Profile::gaussian(1.0).unwrap()), None, p1).unwrap();
        assert_eq!(propagate(&lam, f.clone(), 50.0, 1e-12).unwrap(), f);
    }

    #[test]
    fn fig2_one_cell_term_budget() {
        let (p1, p2) = fig2_phases();
        let lam = TemporalLaminate::two_phase(p1, 1.0, p2, 0.5).unwrap();
        let f = initial_field(Some(Profile::gaussian(1.0).unwrap()), None, p1).unwrap();
        let g = propagate(&lam, f, 1.5 + 1e-9, 1e-12).unwrap();
        assert!(g.len() <= 8);
        let max = g.iter().map(|t| t.coefficient.abs()).fold(0.0, f64::max);
        assert_eq!(max, 9.0 / 16.0);
    }

    #[test]
    fn edge_amplitude_examples() {
        assert_eq!(edge_amplitude(1.0, 2.0, 3.0, 4.0, 0).0, 0.5);
        assert_eq!(edge_amplitude(2.0, 1.0, 1.0, 2.0, 7).0, 0.5);
        let (c1, c2) = edge_amplitude(8.0, 0.7, 3.0, 0.5906, 1);
        assert!((c1 - 0.54254).abs() < 5e-6, "{c1}");
        assert!((c2 - 0.75353).abs() < 1e-5, "{c2}");
    }
}
