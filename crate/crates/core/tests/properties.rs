mod common;

use casimir_lab::classical::{classical_force, classical_force_normal, PhaseState};
use casimir_lab::model::{from_normal_coordinates, normal_coordinates};
use casimir_lab::quantum::*;
use common::{arb_model, rel};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn force_routes_agree((model, y) in arb_model()) {
        let a = casimir_force(&model, y).unwrap();
        let b = lifshitz_force(&model, y).unwrap();
        prop_assert!(rel(a, b) < 1e-12, "casimir {a} lifshitz {b}");
    }

    #[test]
    fn bogoliubov_normalization((model, y) in arb_model()) {
        let c = bogoliubov_coefficients(&model, y).unwrap();
        prop_assert!((c.norm_plus() - 1.0).abs() < 1e-12);
        prop_assert!((c.norm_minus() - 1.0).abs() < 1e-12);
        prop_assert_eq!(c.alpha_2p, c.alpha_1p);
        prop_assert_eq!(c.beta_2m, -c.beta_1m);
        let (n1, n2) = mean_free_quanta(&c);
        prop_assert_eq!(n1, n2);
    }

    #[test]
    fn spectrum_sum_and_difference((model, y) in arb_model()) {
        let s = model.spectrum(y).unwrap();
        let (p2, m2) = (s.omega_plus.powi(2), s.omega_minus.powi(2));
        prop_assert!(rel(2.0 * s.omega.powi(2), p2 + m2) < 1e-13);
        prop_assert!((p2 - m2 - 2.0 * s.omega_g.powi(2)).abs() < 1e-13 * p2);
        prop_assert!(s.omega_minus <= s.omega && s.omega <= s.omega_plus);
    }

    #[test]
    fn vacuum_energy_lowered_by_coupling((model, y) in arb_model()) {
        let e = vacuum_energy(&model, y).unwrap();
        prop_assert!(e <= model.hbar() * model.omega() * (1.0 + 1e-15));
        let shift = vacuum_energy_shift(&model, y).unwrap();
        prop_assert!(shift <= 0.0);
        prop_assert!((e - model.hbar() * model.omega() - shift).abs() < 1e-13 * e);
    }

    #[test]
    fn normal_coordinate_round_trip(x1 in -1e3..1e3f64, x2 in -1e3..1e3f64) {
        let (p, m) = normal_coordinates(x1, x2);
        let (a, b) = from_normal_coordinates(p, m);
        let scale = x1.abs().max(x2.abs()).max(1.0);
        prop_assert!((a - x1).abs() < 1e-14 * scale && (b - x2).abs() < 1e-14 * scale);
    }

    #[test]
    fn coupling_derivative_matches_difference_quotient((model, y) in arb_model()) {
        let c = model.coupling();
        let lambda = c.lambda;
        let h = 1e-4 * lambda;
        // inverse-power g' vanishes like y^(n-1) at the origin
        let y = y.max(0.1 * lambda);
        let fd = (c.value(y + h).unwrap() - c.value(y - h).unwrap()) / (2.0 * h);
        let d = c.derivative(y).unwrap();
        prop_assert!((fd - d).abs() <= 1e-6 * d.abs() + 1e-12 * c.g0 / lambda, "fd {fd} analytic {d}");
    }

    #[test]
    fn classical_force_in_either_coordinates(
        (model, y) in arb_model(),
        a in 0.1..1.0f64, b in 0.1..1.0f64, sa in any::<bool>(), sb in any::<bool>(),
    ) {
        let x1 = if sa { a } else { -a };
        let x2 = if sb { b } else { -b };
        let s = PhaseState { x1, x2, y, ..Default::default() };
        let f = classical_force(&model, &s).unwrap();
        let g = classical_force_normal(&model, &s).unwrap();
        prop_assert!(rel(f, g) < 1e-12 || f == 0.0 && g.abs() < 1e-300);
    }

    #[test]
    fn expansion_mass_sums_to_one((model, y) in arb_model(), n_max in 0usize..60, minus in any::<bool>()) {
        let c = bogoliubov_coefficients(&model, y).unwrap();
        let branch = if minus { Branch::Minus } else { Branch::Plus };
        let e = squeezed_vacuum_expansion(&c, branch, n_max).unwrap();
        prop_assert!((e.retained_mass() + e.tail_mass() - 1.0).abs() < 1e-12);
        let r = e.ratio();
        for (n, cn) in e.coefficients.iter().enumerate() {
            prop_assert!((cn - (-r).powi(n as i32) * e.c0).abs() <= 1e-15 * e.c0);
        }
    }

    #[test]
    fn finite_difference_tracks_casimir_force((model, y) in arb_model()) {
        let h = 1e-4 * model.coupling().lambda;
        let y = y.max(0.1 * model.coupling().lambda);
        let f = casimir_force(&model, y).unwrap();
        let fd = finite_difference_force(&model, y, h).unwrap();
        let scale = model.hbar() * model.coupling().g0 / (model.mass() * model.coupling().lambda * model.omega());
        prop_assert!((fd - f).abs() <= 1e-6 * f.abs() + 1e-13 * scale, "fd {fd} F {f}");
    }
}
