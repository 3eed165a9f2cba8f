//! End-to-end invariant suite: every closed form against its independent oracle.
//!
//! Groups are self-contained and run on their own threads. Each check records the
//! measured discrepancy next to the tolerance it is held to.

use std::thread;

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::laplace::{
    build_transform, coefficient_closed_form, coefficient_recursion, initial_value,
    inverse_transform, laguerre_identification, ode_residual,
};
use crate::morse::{self, MorseParams};
use crate::numerics::{
    grid_convergence_study, halving_levels, integrate_line, numerov_eigenvalues, GaussLaguerre,
    GridSpec, Scheme, Units,
};
use crate::scalar::{Rational, Scalar};
use crate::special::{
    laguerre_at_origin, laguerre_coeffs, laguerre_eval, laguerre_norm_integral,
    laguerre_weighted_integral,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    /// Cap polynomial degrees at 8 instead of 20.
    pub quick: bool,
    /// Relative perturbation applied to every closed-form energy before the Schrödinger
    /// residual check (zero for an honest run).
    pub perturb_energy: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            quick: false,
            perturb_energy: 0.0,
        }
    }
}

impl VerifyOptions {
    fn max_degree(&self) -> usize {
        if self.quick {
            8
        } else {
            20
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// Worst discrepancy observed (a count of failures for exact checks).
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckResult {
    /// Passes when `measured ≤ tolerance`.
    fn within(name: &str, measured: f64, tolerance: f64) -> Self {
        CheckResult {
            name: name.to_string(),
            measured,
            tolerance,
            passed: measured <= tolerance,
        }
    }

    /// Passes when `measured ≥ threshold` (used for convergence orders and sensitivity).
    fn at_least(name: &str, measured: f64, threshold: f64) -> Self {
        CheckResult {
            name: name.to_string(),
            measured,
            tolerance: threshold,
            passed: measured >= threshold,
        }
    }

    fn exact(name: &str, failures: usize) -> Self {
        Self::within(name, failures as f64, 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupReport {
    pub name: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl GroupReport {
    fn new(name: &str, checks: Vec<CheckResult>) -> Self {
        GroupReport {
            name: name.to_string(),
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub passed: bool,
    pub groups: Vec<GroupReport>,
}

type Group = fn(&VerifyOptions) -> GroupReport;

const GROUPS: [Group; 4] = [special_group, laplace_group, morse_group, numerics_group];

/// Runs every group, one thread per group; report order is fixed.
pub fn run(options: &VerifyOptions) -> SuiteReport {
    let groups: Vec<GroupReport> = thread::scope(|scope| {
        let handles: Vec<_> = GROUPS
            .iter()
            .map(|group| scope.spawn(move || group(options)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification group panicked"))
            .collect()
    });
    SuiteReport {
        passed: groups.iter().all(|g| g.passed),
        groups,
    }
}

pub fn reference_params() -> MorseParams {
    MorseParams::new(-5.0, 0.5, 1.0)
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}

const LAGUERRE_PARAMS: [(f64, i64, i64); 4] = [(0.5, 1, 2), (1.0, 1, 1), (2.0, 2, 1), (5.5, 11, 2)];
const NORM_MUS: [f64; 4] = [1.0, 2.0, 4.0, 7.5];
const GAMMAS: [f64; 3] = [1.0, 2.0, 3.5];

fn special_group(o: &VerifyOptions) -> GroupReport {
    let nmax = o.max_degree();
    let mut checks = Vec::new();

    // recurrence vs exact evaluation of the explicit coefficients; relative, with a floor
    // at 1e-4 of the term magnitudes so isolated near-root samples stay meaningful
    let mut worst = 0.0f64;
    for (mu, num, den) in LAGUERRE_PARAMS {
        for n in 0..=nmax {
            let poly = laguerre_coeffs(n, &q(num, den)).expect("mu > -1");
            for step in 0..=100 {
                let z = step as f64 * 0.5;
                let exact = poly
                    .eval(&Rational::from_float(z).expect("finite"))
                    .to_f64();
                let terms: f64 = poly
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(j, c)| (c.to_f64() * z.powi(j as i32)).abs())
                    .sum();
                let err = (laguerre_eval(n, mu, z) - exact).abs() / exact.abs().max(1e-4 * terms);
                worst = worst.max(err);
            }
        }
    }
    checks.push(CheckResult::within(
        "recurrence_vs_coefficients",
        worst,
        1e-12,
    ));

    let mut worst = 0.0f64;
    for mu in [1.0, 2.0, 4.0] {
        let gl = GaussLaguerre::new(16, mu).expect("valid rule");
        for n in 0..=8 {
            for m in 0..n {
                let v =
                    gl.integrate_weighted(|z| laguerre_eval(n, mu, z) * laguerre_eval(m, mu, z));
                worst = worst.max(v.abs());
            }
        }
    }
    checks.push(CheckResult::within("orthogonality", worst, 1e-8));

    let mut worst = 0.0f64;
    for mu in NORM_MUS {
        let gl = GaussLaguerre::new(24, mu - 1.0).expect("valid rule");
        for n in 0..=10 {
            let closed = laguerre_norm_integral(n, mu).expect("mu > 0");
            let quad = gl.integrate_weighted(|z| laguerre_eval(n, mu, z).powi(2));
            worst = worst.max(rel(quad, closed));
        }
    }
    checks.push(CheckResult::within(
        "norm_integral_vs_quadrature",
        worst,
        1e-10,
    ));

    let mut worst = 0.0f64;
    for gamma in GAMMAS {
        let gl = GaussLaguerre::new(24, gamma - 1.0).expect("valid rule");
        for mu in NORM_MUS {
            for n in 0..=10 {
                let closed = laguerre_weighted_integral(gamma, n, mu).expect("gamma > 0");
                let quad = gl.integrate_weighted(|z| laguerre_eval(n, mu, z));
                let scale = weighted_integral_scale(gamma, n, mu);
                worst = worst.max((quad - closed).abs() / closed.abs().max(scale));
            }
        }
    }
    checks.push(CheckResult::within(
        "weighted_integral_vs_quadrature",
        worst,
        1e-10,
    ));

    let mut failures = 0;
    for (_, num, den) in LAGUERRE_PARAMS {
        for n in 0..=nmax {
            let mu = q(num, den);
            let poly = laguerre_coeffs(n, &mu).expect("mu > -1");
            if poly.eval(&q(0, 1)) != laguerre_at_origin(n, &mu).expect("mu > -1") {
                failures += 1;
            }
        }
    }
    checks.push(CheckResult::exact("value_at_origin", failures));

    GroupReport::new("special-fn", checks)
}

/// `Σ_j |l_j| Γ(γ+j)`: the size of the terms that cancel in the γ-weighted integral.
pub fn weighted_integral_scale(gamma: f64, n: usize, mu: f64) -> f64 {
    let poly = laguerre_coeffs(n, &mu).expect("mu > -1");
    poly.coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| c.abs() * statrs::function::gamma::gamma(gamma + j as f64))
        .sum()
}

/// `b ∈ {11/10, 2, 7/2, 7}`.
pub fn transform_b_values() -> [Rational; 4] {
    [q(11, 10), q(2, 1), q(7, 2), q(7, 1)]
}

/// `c0 ∈ {1, -3, 1/2}`.
pub fn transform_c0_values() -> [Rational; 3] {
    [q(1, 1), q(-3, 1), q(1, 2)]
}

fn laplace_group(o: &VerifyOptions) -> GroupReport {
    let nmax = o.max_degree();
    let mut checks = Vec::new();
    let (mut recursion, mut identity, mut wrong_a, mut initial, mut identification, mut signs) =
        (0, 0, 0, 0, 0, 0);
    for b in transform_b_values() {
        for n in 0..=nmax {
            for c0 in transform_c0_values() {
                let rec = coefficient_recursion(n, &b, &c0).expect("valid input");
                let closed: Vec<_> = (0..=n)
                    .map(|j| coefficient_closed_form(n, &b, &c0, j).expect("valid input"))
                    .collect();
                recursion += usize::from(rec != closed);

                let f = build_transform(n, &b, &c0).expect("valid input");
                let a = -Rational::from_usize_exact(n);
                identity += usize::from(!ode_residual(&f, &a, &b, f.residue()).is_zero());
                let off_by_one = a + q(1, 1);
                wrong_a += usize::from(ode_residual(&f, &off_by_one, &b, f.residue()).is_zero());
                initial += usize::from(initial_value(&f) != inverse_transform(&f).constant_term());

                let alternating = f
                    .coeffs()
                    .windows(2)
                    .all(|w| (w[0].clone() * w[1].clone()).is_negative());
                signs += usize::from(!alternating);
            }
            let c0 = Rational::sign_power(n);
            identification += usize::from(laguerre_identification(n, &b, &c0).is_err());
        }
    }
    checks.push(CheckResult::exact("recursion_vs_closed_form", recursion));
    checks.push(CheckResult::exact("ode_identity", identity));
    checks.push(CheckResult::exact(
        "ode_rejects_wrong_quantization",
        wrong_a,
    ));
    checks.push(CheckResult::exact("initial_value_theorem", initial));
    checks.push(CheckResult::exact(
        "laguerre_identification",
        identification,
    ));
    checks.push(CheckResult::exact("sign_alternation", signs));

    // Φ(ξ) against its leading monomial c0 ξ^n/n!
    let mut worst = 0.0f64;
    for b in transform_b_values() {
        for n in 0..=5 {
            let f = build_transform(n, &b.to_f64(), &1.0).expect("valid input");
            let phi = inverse_transform(&f);
            let xi: f64 = 1e5;
            let lead = xi.powi(n as i32) / crate::scalar::factorial::<f64>(n);
            worst = worst.max(rel(phi.eval_f64(xi), lead));
        }
    }
    checks.push(CheckResult::within("asymptotic_leading_term", worst, 1e-2));

    GroupReport::new("laplace-cht", checks)
}

fn line_integral(f: impl Fn(f64) -> f64) -> f64 {
    integrate_line(f, 1e-13).unwrap_or(f64::NAN)
}

fn morse_group(o: &VerifyOptions) -> GroupReport {
    let p = reference_params();
    let general = MorseParams::new(-7.3, 1.9, 0.7).with_units(2.5, 0.8);
    let mut checks = Vec::new();

    let mut worst = 0.0f64;
    for params in [p, general] {
        for n in 0..morse::bound_state_count(&params) {
            let s = morse::reduced_params(&params, n)
                .expect("allowed n")
                .s_exponent;
            let e = morse::energy(&params, n).expect("allowed n");
            worst = worst.max(rel(e, morse::energy_from_s(&params, s)));
        }
    }
    checks.push(CheckResult::within("energy_form_equivalence", worst, 1e-14));

    let states = morse::spectrum(&p);
    let monotone = states.windows(2).all(|w| w[0].energy < w[1].energy)
        && states.last().is_some_and(|s| s.energy < 0.0);
    checks.push(CheckResult::exact(
        "monotone_negative_spectrum",
        usize::from(!monotone),
    ));

    let node_failures = states
        .iter()
        .filter(|st| st.sign_changes(20_000) != st.n)
        .count();
    checks.push(CheckResult::exact("node_counts", node_failures));

    let mut worst = 0.0f64;
    for a in &states {
        for b in &states {
            let g = line_integral(|x| a.psi(x) * b.psi(x));
            let target = if a.n == b.n { 1.0 } else { 0.0 };
            worst = worst.max((g - target).abs());
        }
    }
    checks.push(CheckResult::within("orthonormality", worst, 1e-8));

    let mut worst = 0.0f64;
    for st in &states {
        let gl = GaussLaguerre::new(32, 2.0 * st.s_exponent - 1.0).expect("valid rule");
        // ψ²/ξ = N² ξ^{2S-1} e^{-ξ} L²
        let v = st.norm_const.powi(2)
            * gl.integrate_weighted(|z| laguerre_eval(st.n, 2.0 * st.s_exponent, z).powi(2));
        worst = worst.max(rel(v, p.alpha));
    }
    checks.push(CheckResult::within(
        "xi_measure_normalization",
        worst,
        1e-10,
    ));

    let xs: Vec<f64> = (0..=2000)
        .map(|i| -2.0 + 10.0 * i as f64 / 2000.0)
        .collect();
    let residuals: Vec<f64> = states
        .iter()
        .map(|st| {
            let st = st.with_energy(st.energy * (1.0 + o.perturb_energy));
            morse::schrodinger_residual(&p, &st, &xs, 1e-3)
        })
        .collect();
    let worst = residuals.iter().copied().fold(0.0, f64::max);
    checks.push(CheckResult::within("schrodinger_residual", worst, 1e-4));

    let growth = states
        .iter()
        .map(|st| {
            let honest = morse::schrodinger_residual(&p, st, &xs, 1e-3);
            let bumped = st.with_energy(st.energy * 1.01);
            morse::schrodinger_residual(&p, &bumped, &xs, 1e-3) / honest
        })
        .fold(f64::INFINITY, f64::min);
    checks.push(CheckResult::at_least(
        "residual_sensitivity_1pct",
        growth,
        10.0,
    ));

    let mut failures = 0;
    for lambda in [2.0, 0.5] {
        let k = p.well_strength().expect("valid");
        let stretched = MorseParams {
            alpha: p.alpha / lambda,
            mass: p.mass / (lambda * lambda),
            ..p
        };
        let rescaled = MorseParams {
            alpha: p.alpha / lambda,
            v1: p.v1 / (lambda * lambda),
            v2: p.v2 / (lambda * lambda),
            ..p
        };
        failures += usize::from(stretched.well_strength().expect("valid") != k);
        failures += usize::from(rescaled.well_strength().expect("valid") != k);
    }
    checks.push(CheckResult::exact("scale_covariance", failures));

    let grid = GridSpec::new(-3.0, 25.0, 4000).expect("valid grid");
    let worst = match numerov_eigenvalues(|x| p.potential(x), &grid, states.len(), Units::default())
    {
        Ok(numeric) => numeric
            .iter()
            .zip(&states)
            .map(|(e, st)| rel(*e, st.energy))
            .fold(0.0, f64::max),
        Err(_) => f64::INFINITY,
    };
    checks.push(CheckResult::within("numerov_agreement", worst, 1e-4));

    GroupReport::new("morse", checks)
}

fn numerics_group(o: &VerifyOptions) -> GroupReport {
    let mut checks = Vec::new();

    let harmonic = |x: f64| 0.5 * x * x;
    let grid = GridSpec::new(-12.0, 12.0, 4001).expect("valid grid");
    let mut worst = 0.0f64;
    for scheme in [Scheme::Numerov, Scheme::FivePoint] {
        match crate::numerics::eigenvalues(harmonic, &grid, 6, Units::default(), scheme) {
            Ok(e) => {
                for (n, value) in e.iter().enumerate() {
                    worst = worst.max((value - (n as f64 + 0.5)).abs());
                }
            }
            Err(_) => worst = f64::INFINITY,
        }
    }
    checks.push(CheckResult::within("harmonic_ladder", worst, 1e-6));

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst = 0.0f64;
    let orders: &[usize] = if o.quick { &[4, 8] } else { &[4, 8, 10] };
    for &order in orders {
        let gl = GaussLaguerre::new(order, 0.0).expect("valid rule");
        for _ in 0..20 {
            let coeffs: Vec<f64> = (0..2 * order)
                .map(|_| rng.random_range(-1.0..1.0))
                .collect();
            let exact: f64 = coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * crate::scalar::factorial::<f64>(k))
                .sum();
            let quad =
                gl.integrate_weighted(|z| coeffs.iter().rev().fold(0.0, |acc, c| acc * z + c));
            worst = worst.max(rel(quad, exact));
        }
    }
    checks.push(CheckResult::within(
        "gauss_laguerre_exactness",
        worst,
        1e-13,
    ));

    let p = reference_params();
    let g = GridSpec::new(-3.0, 25.0, 2000).expect("valid grid");
    let a = numerov_eigenvalues(|x| p.potential(x), &g, 5, Units::default());
    let b = numerov_eigenvalues(|x| p.potential(x), &g, 5, Units::default());
    let same = matches!((&a, &b), (Ok(x), Ok(y)) if x.iter().zip(y).all(|(u, v)| u.to_bits() == v.to_bits()));
    checks.push(CheckResult::exact("determinism", usize::from(!same)));

    let base = GridSpec::new(-4.0, 25.0, 501).expect("valid grid");
    let order = grid_convergence_study(&p, &halving_levels(base, 4), 0)
        .ok()
        .and_then(|t| t.observed_order)
        .unwrap_or(f64::NAN);
    checks.push(CheckResult::at_least(
        "numerov_convergence_order",
        order,
        3.5,
    ));

    GroupReport::new("numerics", checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_passes() {
        let report = run(&VerifyOptions {
            quick: true,
            ..Default::default()
        });
        for g in &report.groups {
            for c in &g.checks {
                assert!(
                    c.passed,
                    "{}/{}: {} vs {}",
                    g.name, c.name, c.measured, c.tolerance
                );
            }
        }
        assert!(report.passed);
        let names: Vec<_> = report.groups.iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, ["special-fn", "laplace-cht", "morse", "numerics"]);
    }

    #[test]
    fn perturbed_energies_fail_the_residual_group() {
        let report = run(&VerifyOptions {
            quick: true,
            perturb_energy: 0.01,
        });
        assert!(!report.passed);
        let morse = report.groups.iter().find(|g| g.name == "morse").unwrap();
        let failed: Vec<_> = morse
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        assert_eq!(failed, ["schrodinger_residual"]);
        assert!(report
            .groups
            .iter()
            .filter(|g| g.name != "morse")
            .all(|g| g.passed));
    }
}
