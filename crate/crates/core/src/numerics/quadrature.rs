//! Quadrature engines: generalized Gauss–Laguerre rules and adaptive Gauss–Kronrod.

use std::collections::BinaryHeap;

use nalgebra::DMatrix;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::special::laguerre_pair;

/// Gauss rule for `∫₀^∞ z^α e^{-z} f(z) dz`, exact when `f` is a polynomial of degree
/// at most `2N - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLaguerre {
    alpha: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLaguerre {
    /// Golub–Welsch starting values, each node polished by Newton on `L_N^(α)` and each
    /// weight recomputed from `Γ(N+α+1) / (N! z L_N'(z)²)`.
    pub fn new(order: usize, alpha: f64) -> Result<Self> {
        if order == 0 {
            return Err(Error::param("order", "must be at least 1"));
        }
        if !(alpha.is_finite() && alpha > -1.0) {
            return Err(Error::param("alpha", format!("{alpha} must exceed -1")));
        }
        let nf = order as f64;
        let jacobi = DMatrix::from_fn(order, order, |i, j| {
            if i == j {
                2.0 * i as f64 + alpha + 1.0
            } else if i.abs_diff(j) == 1 {
                let k = i.max(j) as f64;
                (k * (k + alpha)).sqrt()
            } else {
                0.0
            }
        });
        let mut nodes: Vec<f64> = jacobi.symmetric_eigenvalues().iter().copied().collect();
        nodes.sort_by(f64::total_cmp);

        // Γ(N+α+1)/N!
        let scale = (1..=order).fold(gamma(alpha + 1.0), |acc, k| {
            acc * (k as f64 + alpha) / k as f64
        });
        let mut weights = Vec::with_capacity(order);
        for z in nodes.iter_mut() {
            for _ in 0..8 {
                let (l, lm1) = laguerre_pair(order, alpha, *z);
                let deriv = (nf * l - (nf + alpha) * lm1) / *z;
                let step = l / deriv;
                *z -= step;
                if step.abs() <= 1e-16 * z.abs() {
                    break;
                }
            }
            let (l, lm1) = laguerre_pair(order, alpha, *z);
            let deriv = (nf * l - (nf + alpha) * lm1) / *z;
            weights.push(scale / (*z * deriv * deriv));
        }
        Ok(GaussLaguerre {
            alpha,
            nodes,
            weights,
        })
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `Σ w_i f(z_i) ≈ ∫₀^∞ z^α e^{-z} f(z) dz`; the weight is not part of `f`.
    pub fn integrate_weighted(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&z, &w)| w * f(z))
            .sum()
    }

    /// `∫₀^∞ g(z) dz` for a full integrand `g`, dividing the weight back out at the nodes.
    pub fn integrate(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.integrate_weighted(|z| g(z) * z.powf(-self.alpha) * z.exp())
    }
}

/// How to integrate over a half-line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuadratureSpec {
    /// Gauss–Laguerre of the given order with weight `z^alpha e^{-z}` divided out.
    GaussLaguerre { order: usize, alpha: f64 },
    /// Adaptive Gauss–Kronrod (7/15) on the mapped half-line.
    Adaptive { tolerance: f64 },
}

impl QuadratureSpec {
    pub fn gauss_laguerre(order: usize) -> Self {
        QuadratureSpec::GaussLaguerre { order, alpha: 0.0 }
    }

    pub fn adaptive(tolerance: f64) -> Self {
        QuadratureSpec::Adaptive { tolerance }
    }
}

/// `∫₀^∞ f(z) dz` for an exponentially decaying `f`.
pub fn integrate_halfline(f: impl Fn(f64) -> f64, q: QuadratureSpec) -> Result<f64> {
    match q {
        QuadratureSpec::GaussLaguerre { order, alpha } => {
            Ok(GaussLaguerre::new(order, alpha)?.integrate(f))
        }
        QuadratureSpec::Adaptive { tolerance } => {
            // z = t/(1-t), dz = dt/(1-t)²
            adaptive_gauss_kronrod(
                |t| {
                    let u = 1.0 - t;
                    f(t / u) / (u * u)
                },
                0.0,
                1.0,
                tolerance,
            )
        }
    }
}

/// `∫_{-∞}^{∞} f(x) dx` by mapping `x = t/(1-t²)` onto `(-1, 1)`.
pub fn integrate_line(f: impl Fn(f64) -> f64, tolerance: f64) -> Result<f64> {
    adaptive_gauss_kronrod(
        |t| {
            let u = 1.0 - t * t;
            f(t / u) * (1.0 + t * t) / (u * u)
        },
        -1.0,
        1.0,
        tolerance,
    )
}

const MAX_INTERVALS: usize = 4000;

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    abs_value: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod_segment(f: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> Segment {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs_value = WGK[7] * fc.abs();
    for (k, (&x, &w)) in XGK.iter().zip(&WGK).take(7).enumerate() {
        let f1 = f(center - half * x);
        let f2 = f(center + half * x);
        kronrod += w * (f1 + f2);
        abs_value += w * (f1.abs() + f2.abs());
        // odd Kronrod indices are the Gauss nodes
        if k % 2 == 1 {
            gauss += WG[k / 2] * (f1 + f2);
        }
    }
    Segment {
        lo,
        hi,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
        abs_value: abs_value * half.abs(),
    }
}

/// Globally adaptive G7/K15 on `[lo, hi]`. Converged when the summed error estimate is at
/// most `tolerance · ∫|f|`, which also handles integrals that cancel to zero.
pub fn adaptive_gauss_kronrod(
    f: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    tolerance: f64,
) -> Result<f64> {
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(Error::param(
            "tolerance",
            format!("{tolerance} must be positive"),
        ));
    }
    let mut heap = BinaryHeap::new();
    heap.push(kronrod_segment(&f, lo, hi));
    loop {
        let (value, error, abs_value) = heap.iter().fold((0.0, 0.0, 0.0), |acc, s| {
            (acc.0 + s.value, acc.1 + s.error, acc.2 + s.abs_value)
        });
        if !value.is_finite() {
            return Err(Error::QuadratureNonConvergence {
                error: f64::INFINITY,
                intervals: heap.len(),
            });
        }
        if error <= tolerance * abs_value || error == 0.0 {
            return Ok(value);
        }
        if heap.len() >= MAX_INTERVALS {
            return Err(Error::QuadratureNonConvergence {
                error,
                intervals: heap.len(),
            });
        }
        let worst = heap.pop().expect("nonempty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // interval no longer splittable in floating point
            return Err(Error::QuadratureNonConvergence {
                error,
                intervals: heap.len() + 1,
            });
        }
        heap.push(kronrod_segment(&f, worst.lo, mid));
        heap.push(kronrod_segment(&f, mid, worst.hi));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exponential_adaptive() {
        let v = integrate_halfline(|z| (-z).exp(), QuadratureSpec::adaptive(1e-12)).unwrap();
        assert_relative_eq!(v, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn gauss_laguerre_is_exact_for_low_degree() {
        // ∫ e^{-z} z (3-z)^2 = 9·1! - 6·2! + 3! = 3
        let v = integrate_halfline(
            |z| (-z).exp() * z * (3.0 - z).powi(2),
            QuadratureSpec::gauss_laguerre(8),
        )
        .unwrap();
        assert_relative_eq!(v, 3.0, max_relative = 1e-13);
        let gl = GaussLaguerre::new(2, 0.0).unwrap();
        assert_relative_eq!(
            gl.integrate_weighted(|z| z * (3.0 - z).powi(2)),
            3.0,
            max_relative = 1e-13
        );
    }

    #[test]
    fn two_point_rule_matches_textbook() {
        let gl = GaussLaguerre::new(2, 0.0).unwrap();
        let s2 = 2f64.sqrt();
        assert_relative_eq!(gl.nodes()[0], 2.0 - s2, max_relative = 1e-15);
        assert_relative_eq!(gl.nodes()[1], 2.0 + s2, max_relative = 1e-15);
        assert_relative_eq!(gl.weights()[0], (2.0 + s2) / 4.0, max_relative = 1e-14);
        assert_relative_eq!(gl.weights()[1], (2.0 - s2) / 4.0, max_relative = 1e-14);
    }

    #[test]
    fn weights_sum_to_gamma() {
        for alpha in [0.0, 0.5, 3.0, 6.5] {
            for order in [1, 5, 20, 40] {
                let gl = GaussLaguerre::new(order, alpha).unwrap();
                let total: f64 = gl.weights().iter().sum();
                assert_relative_eq!(total, gamma(alpha + 1.0), max_relative = 1e-13);
            }
        }
    }

    #[test]
    fn moments_are_exact_up_to_degree_2n_minus_1() {
        for alpha in [0.0, 1.5, 4.0] {
            let order = 10;
            let gl = GaussLaguerre::new(order, alpha).unwrap();
            for k in 0..2 * order {
                let got = gl.integrate_weighted(|z| z.powi(k as i32));
                let expected = gamma(alpha + k as f64 + 1.0);
                assert_relative_eq!(got, expected, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn rejects_bad_rules() {
        assert!(GaussLaguerre::new(0, 0.0).is_err());
        assert!(GaussLaguerre::new(4, -1.0).is_err());
        assert!(adaptive_gauss_kronrod(|x| x, 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn adaptive_handles_cancellation_and_lines() {
        // ∫ e^{-z}(1 - z) = 0
        let v = integrate_halfline(|z| (-z).exp() * (1.0 - z), QuadratureSpec::adaptive(1e-12))
            .unwrap();
        assert!(v.abs() < 1e-12);
        let g = integrate_line(|x| (-x * x).exp(), 1e-12).unwrap();
        assert_relative_eq!(g, std::f64::consts::PI.sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn adaptive_reports_non_convergence() {
        let r = adaptive_gauss_kronrod(|x| 1.0 / x, 0.0, 1.0, 1e-12);
        assert!(matches!(r, Err(Error::QuadratureNonConvergence { .. })));
    }
}
