use proptest::prelude::*;
use spincons::analysis::{alpha_for_wavevector, conserved_quantity, grid_integral};
use spincons::counting::{current_counts, killing_dim, weight_dims};
use spincons::currents::stress_energy;
use spincons::killing::translation;
use spincons::solutions::{duality, equation_residual, equation_scale, plane_wave};
use spincons::spinor::C64;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn plane_waves_solve_the_field_equation(
        ts in 1usize..=4,
        k in prop::array::uniform3(-3i64..=3),
        re in -2.0f64..2.0, im in -2.0f64..2.0,
        x in prop::array::uniform4(-3.0f64..3.0),
    ) {
        prop_assume!(k != [0, 0, 0]);
        let a = alpha_for_wavevector(&k.map(|v| v as f64)).unwrap();
        let f = plane_wave(ts, &a, C64::new(re, im), 1).unwrap();
        prop_assert!(equation_residual(&f, &x) <= 1e-12 * equation_scale(&f, &x).max(1e-300));
    }

    #[test]
    fn energy_is_positive_and_duality_invariant(
        ts in 1usize..=4,
        k in prop::array::uniform3(-2i64..=2),
        re in -1.0f64..1.0, im in -1.0f64..1.0,
    ) {
        prop_assume!(k != [0, 0, 0] && re * re + im * im > 1e-4);
        let l = 2.0 * std::f64::consts::PI;
        let a = alpha_for_wavevector(&k.map(|v| v as f64)).unwrap();
        let f = plane_wave(ts, &a, C64::new(re, im), -1).unwrap();
        let pt = translation(&[1.0, 0.0, 0.0, 0.0]);
        let e = conserved_quantity(&stress_energy(&f, &pt, 0).unwrap(), 0.0, 8, l).unwrap();
        let ed = conserved_quantity(&stress_energy(&duality(&f), &pt, 0).unwrap(), 0.0, 8, l).unwrap();
        prop_assert!(e > 0.0);
        prop_assert!((e - ed).abs() <= 1e-12 * e);
    }

    #[test]
    fn single_mode_quadrature_is_exact(m in prop::array::uniform3(-4i64..=4), c in -3.0f64..3.0) {
        let l = 2.0 * std::f64::consts::PI;
        let n = 9;
        let v = grid_integral(|x| c + (m[0] as f64 * x[1] + m[1] as f64 * x[2] + m[2] as f64 * x[3]).cos(), 0.0, n, l);
        let exact = if m == [0, 0, 0] { (c + 1.0) * l.powi(3) } else { c * l.powi(3) };
        prop_assert!((v - exact).abs() <= 1e-12 * l.powi(3) * (1.0 + c.abs()));
    }

    #[test]
    fn counts_match_killing_dimensions(ts in 1u64..=12, n in 0u64..=6) {
        let c = current_counts(ts, n);
        prop_assert_eq!(c.t, killing_dim(ts + 2 * n - 1, 0));
        prop_assert_eq!(c.z, killing_dim(ts + 2 * n, 0));
        prop_assert_eq!(c.v, 2 * killing_dim(2 * n + 1, 2 * ts));
        prop_assert_eq!(weight_dims(ts, 2 * n + 1), c.z);
        if n > 0 {
            prop_assert_eq!(weight_dims(ts, 2 * n), c.t + current_counts(ts, n - 1).v);
        }
    }
}
