use proptest::prelude::*;

use tlam_core::chiral::{
    cascade_solve, interface_jump, jump_matrix, stationary_solution, stationary_velocity, CascadeCase, CascadeConfig,
    RotationMatrix,
};
use tlam_core::linalg::{Mat2, Vec2};
use tlam_core::scalar_laminate::{initial_field, split_field, split_weights, MediumPhase, TemporalLaminate};
use tlam_core::spectral::{floquet_growth, monodromy, phase_transfer};
use tlam_core::wave_terms::{dalembert, Direction, Polarization, Profile, WaveField, WaveTerm};

fn phase() -> impl Strategy<Value = MediumPhase> {
    (0.1f64..10.0, 0.1f64..10.0).prop_map(|(a, b)| MediumPhase::new(a, b).unwrap())
}

fn term() -> impl Strategy<Value = WaveTerm> {
    (-3.0f64..3.0, any::<bool>(), 0.2f64..3.0, -2.0f64..2.0, 0.3f64..4.0, 0i32..3).prop_map(
        |(coef, fwd, speed, shift, a, order)| {
            let direction = if fwd { Direction::Forward } else { Direction::Backward };
            let profile = Profile::gaussian(a).unwrap().with_order(order);
            WaveTerm::scalar(coef, direction, speed, shift, profile).unwrap()
        },
    )
}

fn field() -> impl Strategy<Value = WaveField> {
    prop::collection::vec(term(), 0..6).prop_map(WaveField::new)
}

fn vec2() -> impl Strategy<Value = Vec2> {
    (-5.0f64..5.0, -5.0f64..5.0).prop_map(|(x, y)| Vec2::new(x, y))
}

proptest! {
    #[test]
    fn evaluation_is_linear(a in field(), b in field(), s in -3.0f64..3.0, x in -4.0f64..4.0, t in 0.0f64..3.0) {
        let pol = Polarization::Scalar;
        let sum = (a.clone() + b.clone()).eval(x, t, pol).unwrap();
        let parts = a.eval(x, t, pol).unwrap() + b.eval(x, t, pol).unwrap();
        prop_assert!((sum - parts).abs() <= 1e-12 * (1.0 + parts.abs()));
        let scaled = a.scale(s).eval(x, t, pol).unwrap();
        prop_assert!((scaled - s * a.eval(x, t, pol).unwrap()).abs() <= 1e-12 * (1.0 + scaled.abs()));
    }

    #[test]
    fn antiderivative_round_trips(a in 0.3f64..4.0, order in 0i32..3, x in -3.0f64..3.0) {
        let p = Profile::gaussian(a).unwrap().with_order(order);
        let back = p.antiderivative().unwrap().derivative();
        prop_assert_eq!(back.eval(x).unwrap(), p.eval(x).unwrap());
    }

    #[test]
    fn gaussian_derivative_matches_differences(a in 0.3f64..4.0, order in 0i32..3, x in -3.0f64..3.0) {
        let p = Profile::gaussian(a).unwrap().with_order(order);
        let h = 1e-5;
        let fd = (p.eval(x + h).unwrap() - p.eval(x - h).unwrap()) / (2.0 * h);
        let exact = p.derivative().eval(x).unwrap();
        prop_assert!((fd - exact).abs() < 1e-5 * (1.0 + exact.abs()), "{} vs {}", fd, exact);
    }

    #[test]
    fn dalembert_reseeding_is_exact(c in 0.2f64..3.0, t0 in 0.0f64..3.0, coefs in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..4)) {
        let g = Profile::gaussian(1.3).unwrap();
        let f: WaveField = coefs
            .iter()
            .enumerate()
            .map(|(i, &(a, s))| {
                let dir = if i % 2 == 0 { Direction::Forward } else { Direction::Backward };
                WaveTerm::scalar(a, dir, c, s, g).unwrap()
            })
            .collect();
        let pol = Polarization::Scalar;
        let re = dalembert(&f.snapshot(t0, pol), &f.time_derivative().snapshot(t0, pol), c, t0, pol).unwrap();
        for x in [-2.0, -0.3, 0.0, 0.7, 1.9] {
            for t in [t0, t0 + 0.4, t0 + 1.3] {
                let (a, b) = (f.eval(x, t, pol).unwrap(), re.eval(x, t, pol).unwrap());
                prop_assert!((a - b).abs() < 1e-12, "{} vs {}", a, b);
            }
        }
    }

    #[test]
    fn splitting_keeps_displacement_and_momentum(p1 in phase(), p2 in phase(), t_star in 0.1f64..3.0, x in -5.0f64..5.0) {
        let before = initial_field(Some(Profile::gaussian(0.7).unwrap()), None, p1).unwrap();
        let after = split_field(&before, &p1, &p2, t_star).unwrap();
        let pol = Polarization::Scalar;
        let (u0, u1) = (before.eval(x, t_star, pol).unwrap(), after.eval(x, t_star, pol).unwrap());
        prop_assert!((u0 - u1).abs() < 1e-12);
        let m0 = p1.beta * before.time_derivative().eval(x, t_star, pol).unwrap();
        let m1 = p2.beta * after.time_derivative().eval(x, t_star, pol).unwrap();
        prop_assert!((m0 - m1).abs() < 1e-10 * (1.0 + m0.abs()), "{} vs {}", m0, m1);
    }

    #[test]
    fn matched_impedance_never_reverses(a1 in 0.1f64..10.0, b1 in 0.1f64..10.0, a2 in 0.1f64..10.0, k in 0.0f64..20.0, t1 in 0.1f64..3.0, t2 in 0.1f64..3.0) {
        let p1 = MediumPhase::new(a1, b1).unwrap();
        let p2 = MediumPhase::new(a2, a1 * b1 / a2).unwrap();
        prop_assert_eq!(split_weights(&p1, &p2), (1.0, 0.0));
        let lam = TemporalLaminate::two_phase(p1, t1, p2, t2).unwrap();
        prop_assert!(floquet_growth(k, &lam).growth_rate < 1e-10);
    }

    #[test]
    fn transfer_matrices_are_unimodular(p in phase(), k in -30.0f64..30.0, d in 0.0f64..5.0) {
        let m = phase_transfer(k, &p, d).unwrap();
        prop_assert!((m.det() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn growth_dichotomy(p1 in phase(), p2 in phase(), t1 in 0.05f64..3.0, t2 in 0.05f64..3.0, k in 0.0f64..10.0) {
        let lam = TemporalLaminate::two_phase(p1, t1, p2, t2).unwrap();
        let tr = monodromy(k, &lam).trace();
        let g = floquet_growth(k, &lam);
        if tr.abs() > 2.0 + 1e-12 {
            prop_assert!(g.growth_rate > 0.0 && g.lambda_max_modulus > 1.0);
        } else {
            prop_assert_eq!(g.growth_rate, 0.0);
            prop_assert_eq!(g.lambda_max_modulus, 1.0);
        }
    }

    #[test]
    fn rotations_are_orthogonal(angle in -20.0f64..20.0) {
        let m = RotationMatrix::new(angle).matrix();
        prop_assert!((m.det() - 1.0).abs() < 1e-14);
        prop_assert!((m * m.transpose()).max_abs_diff(&Mat2::IDENTITY) < 1e-14);
    }

    #[test]
    fn jumps_are_small(g in vec2(), alpha in prop_oneof![-200.0f64..-0.5, 0.5f64..200.0], d in 1e-3f64..10.0) {
        let j = interface_jump(g, alpha, d).unwrap();
        prop_assert!(j.norm() <= 2.0 * g.norm() / alpha.abs() * (1.0 + 1e-12));
    }

    #[test]
    fn stationary_momentum_is_conserved(f in vec2(), g in vec2(), alpha in 1.0f64..100.0, t in 0.0f64..5.0) {
        let m = RotationMatrix::new(alpha * t).matrix();
        prop_assert!((m.apply(stationary_velocity(g, alpha, t)) - g).norm() < 1e-12);
        let y = stationary_solution(f, g, alpha, t).unwrap();
        prop_assert!((y - f).norm() <= 2.0 * g.norm() / alpha + 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cascade_velocity_is_continuous(alpha in 5.0f64..50.0, phase in 0.1f64..6.0, c2 in 0.1f64..0.9, case in 1u32..4) {
        let mut cfg = CascadeConfig::new(CascadeCase::from_index(case).unwrap(), Profile::gaussian(4.0).unwrap(), alpha, 1.0, 3, 1.0, c2);
        cfg.interface_phase = phase;
        let sol = cascade_solve(&cfg).unwrap();
        let jump = jump_matrix(alpha, phase).unwrap();
        for n in 1..3 {
            let t = n as f64;
            let (before, after) = (&sol.intervals[n - 1].field, &sol.intervals[n].field);
            for x in [-1.3, -0.2, 0.4, 1.1] {
                let ev = |f: &WaveField| {
                    Vec2::new(
                        f.eval(x, t, Polarization::Longitudinal).unwrap(),
                        f.eval(x, t, Polarization::Transverse).unwrap(),
                    )
                };
                let vb = ev(&before.time_derivative());
                prop_assert!((ev(&after.time_derivative()) - vb).norm() < 1e-10);
                prop_assert!(((ev(after) - ev(before)) - jump.apply(vb)).norm() < 1e-10);
            }
        }
    }
}
