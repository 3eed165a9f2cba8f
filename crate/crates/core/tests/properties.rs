use morse_laplace::laplace::{
    build_transform, coefficient_closed_form, coefficient_recursion, initial_value,
    inverse_transform, laguerre_identification, ode_residual,
};
use morse_laplace::morse::{self, MorseParams};
use morse_laplace::numerics::GaussLaguerre;
use morse_laplace::special::{gamma_ratio, laguerre_at_origin, laguerre_coeffs, laguerre_eval};
use morse_laplace::{parse_rational, rational_to_string, Rational};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// `b = 1 + k/d`, so b ∈ (1, 11].
fn rational_b() -> impl Strategy<Value = Rational> {
    (1i64..=60, 1i64..=6).prop_map(|(k, d)| q(d + k, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=9)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| q(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn recursion_matches_closed_form(n in 0usize..=20, b in rational_b(), c0 in nonzero_rational()) {
        let rec = coefficient_recursion(n, &b, &c0).unwrap();
        for (j, c) in rec.iter().enumerate() {
            prop_assert_eq!(c, &coefficient_closed_form(n, &b, &c0, j).unwrap());
        }
        let f = build_transform(n, &b, &c0).unwrap();
        prop_assert_eq!(f.coeffs(), rec.as_slice());
    }

    #[test]
    fn transform_solves_the_ode_only_when_quantized(n in 0usize..=20, b in rational_b(), c0 in nonzero_rational()) {
        let f = build_transform(n, &b, &c0).unwrap();
        let a = -Rational::from_integer((n as i64).into());
        prop_assert!(ode_residual(&f, &a, &b, f.residue()).is_zero());
        prop_assert!(!ode_residual(&f, &(a.clone() - q(1, 2)), &b, f.residue()).is_zero());
        let wrong_phi0 = f.residue() + Rational::one();
        prop_assert!(!ode_residual(&f, &a, &b, &wrong_phi0).is_zero());
    }

    #[test]
    fn initial_value_round_trip(n in 0usize..=20, b in rational_b(), c0 in nonzero_rational()) {
        let f = build_transform(n, &b, &c0).unwrap();
        prop_assert_eq!(initial_value(&f), inverse_transform(&f).constant_term());
        prop_assert_eq!(f.pole_order(), n + 1);
    }

    #[test]
    fn coefficients_alternate_in_sign(n in 1usize..=20, b in rational_b(), c0 in nonzero_rational()) {
        let f = build_transform(n, &b, &c0).unwrap();
        for w in f.coeffs().windows(2) {
            prop_assert!((w[0].clone() * w[1].clone()).is_negative());
        }
    }

    #[test]
    fn inverse_image_is_the_laguerre_polynomial(n in 0usize..=20, b in rational_b()) {
        let c0 = if n % 2 == 0 { q(1, 1) } else { q(-1, 1) };
        prop_assert!(laguerre_identification(n, &b, &c0).is_ok());
        let phi = inverse_transform(&build_transform(n, &b, &c0).unwrap());
        let mu = b - Rational::one();
        let laguerre = laguerre_coeffs(n, &mu).unwrap();
        prop_assert_eq!(phi.coeffs(), laguerre.coeffs());
    }

    #[test]
    fn origin_value_is_exact(n in 0usize..=20, num in -9i64..=60, den in 1i64..=10) {
        let mu = q(num, den);
        prop_assume!(mu > -Rational::one());
        let poly = laguerre_coeffs(n, &mu).unwrap();
        prop_assert_eq!(poly.eval(&Rational::zero()), laguerre_at_origin(n, &mu).unwrap());
    }

    #[test]
    fn recurrence_matches_horner(n in 0usize..=12, mu in -0.9f64..8.0, z in 0.0f64..10.0) {
        let poly = laguerre_coeffs(n, &mu).unwrap();
        let terms: f64 = poly.coeffs().iter().enumerate().map(|(j, c)| (c * z.powi(j as i32)).abs()).sum();
        prop_assert!((laguerre_eval(n, mu, z) - poly.eval_f64(z)).abs() <= 1e-12 * terms.max(1.0));
    }

    #[test]
    fn gamma_ratio_matches_gamma_function(x in 1.5f64..15.0, k in 0usize..5) {
        prop_assume!(x - k as f64 > 0.1);
        let direct = statrs::function::gamma::gamma(x) / statrs::function::gamma::gamma(x - k as f64);
        let ratio = gamma_ratio(&x, k).unwrap();
        prop_assert!(((ratio - direct) / direct).abs() < 1e-12);
    }

    #[test]
    fn gauss_laguerre_integrates_polynomials_exactly(order in 2usize..=12, seed in prop::collection::vec(-1.0f64..1.0, 24)) {
        let gl = GaussLaguerre::new(order, 0.0).unwrap();
        let coeffs = &seed[..2 * order];
        let mut exact = 0.0;
        let mut fact = 1.0;
        for (k, c) in coeffs.iter().enumerate() {
            if k > 0 {
                fact *= k as f64;
            }
            exact += c * fact;
        }
        let magnitude: f64 = coeffs.iter().enumerate().map(|(k, c)| c.abs() * (1..=k).map(|i| i as f64).product::<f64>()).sum();
        let quad = gl.integrate_weighted(|z| coeffs.iter().rev().fold(0.0, |acc, c| acc * z + c));
        prop_assert!((quad - exact).abs() <= 1e-13 * magnitude, "{quad} vs {exact}");
    }

    #[test]
    fn energies_are_monotone_and_negative(v1 in -40.0f64..-0.5, v2 in 0.05f64..10.0, alpha in 0.2f64..3.0, mass in 0.3f64..4.0, hbar in 0.3f64..3.0) {
        let p = MorseParams::new(v1, v2, alpha).with_units(mass, hbar);
        let count = morse::bound_state_count(&p);
        let energies: Vec<f64> = (0..count).map(|n| morse::energy(&p, n).unwrap()).collect();
        for w in energies.windows(2) {
            prop_assert!(w[0] < w[1]);
        }
        if let Some(last) = energies.last() {
            prop_assert!(*last < 0.0);
        }
        for (n, e) in energies.iter().enumerate() {
            let s = morse::reduced_params(&p, n).unwrap().s_exponent;
            prop_assert!(s > 0.0);
            let alt = morse::energy_from_s(&p, s);
            prop_assert!(((e - alt) / alt).abs() <= 1e-14);
        }
        prop_assert!(morse::energy(&p, count).is_err());
    }

    #[test]
    fn count_follows_the_well_strength(k in 0.0f64..12.0, v2 in 0.1f64..5.0, alpha in 0.3f64..2.0, mass in 0.5f64..3.0) {
        let v1 = -k * alpha * (2.0 * mass * v2).sqrt() / mass;
        let p = MorseParams::new(v1, v2, alpha).with_units(mass, 1.0);
        let k_actual = p.well_strength().unwrap();
        prop_assume!(((k_actual - 0.5) - (k_actual - 0.5).round()).abs() > 1e-9);
        let expected = (0..).take_while(|n| (*n as f64) + 0.5 < k_actual).count();
        prop_assert_eq!(morse::bound_state_count(&p), expected);
    }

    #[test]
    fn repulsive_or_unbounded_potentials_hold_nothing(v1 in -20.0f64..20.0, v2 in -10.0f64..10.0) {
        prop_assume!(v1 >= 0.0 || v2 <= 0.0);
        prop_assert_eq!(morse::bound_state_count(&MorseParams::new(v1, v2, 1.0)), 0);
        prop_assert!(morse::spectrum(&MorseParams::new(v1, v2, 1.0)).is_empty());
    }

    #[test]
    fn well_strength_is_scale_covariant(exp in -4i32..=4, v1 in -30.0f64..-1.0, v2 in 0.1f64..5.0) {
        let lambda = 2f64.powi(exp);
        let p = MorseParams::new(v1, v2, 1.3);
        let k = p.well_strength().unwrap();
        let stretched = MorseParams { alpha: p.alpha / lambda, mass: p.mass / (lambda * lambda), ..p };
        let rescaled = MorseParams { alpha: p.alpha / lambda, v1: p.v1 / (lambda * lambda), v2: p.v2 / (lambda * lambda), ..p };
        prop_assert_eq!(stretched.well_strength().unwrap(), k);
        prop_assert_eq!(rescaled.well_strength().unwrap(), k);
        for n in 0..morse::bound_state_count(&p) {
            let e = morse::energy(&p, n).unwrap();
            prop_assert!((morse::energy(&stretched, n).unwrap() - e).abs() <= 1e-13 * e.abs());
            prop_assert!((morse::energy(&rescaled, n).unwrap() * lambda * lambda - e).abs() <= 1e-13 * e.abs());
        }
    }

    #[test]
    fn xi_map_round_trips(x in -5.0f64..20.0, v2 in 0.1f64..5.0, alpha in 0.2f64..3.0) {
        let p = MorseParams::new(-10.0, v2, alpha);
        let xi = morse::xi_of_x(&p, x).unwrap();
        prop_assert!(xi > 0.0);
        prop_assert!((p.x_of_xi(xi).unwrap() - x).abs() <= 1e-12 * x.abs().max(1.0));
    }

    #[test]
    fn rational_text_round_trips(n in -10_000i64..10_000, d in 1i64..10_000) {
        let r = q(n, d);
        prop_assert_eq!(parse_rational(&rational_to_string(&r)).unwrap(), r);
    }
}

#[test]
fn threshold_state_with_zero_exponent_is_excluded() {
    // m = ħ = α = 1, V2 = 2: K = |V1|/2, so V1 = -3 puts S_1 exactly at zero
    let p = MorseParams::new(-3.0, 2.0, 1.0);
    assert_eq!(p.well_strength().unwrap(), 1.5);
    assert_eq!(morse::bound_state_count(&p), 1);
    assert!(morse::wavefunction(&p, 1).is_err());
}
