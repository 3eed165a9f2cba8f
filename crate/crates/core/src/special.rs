//! Generalized Laguerre polynomials, gamma ratios and the closed-form weighted integrals
//! used for normalization.
//!
//! Standardization:
//!
//! ```text
//! L_n^(μ)(z) = Σ_{j=0}^{n} Γ(n+μ+1)/Γ(j+μ+1) · (-z)^j / (j! (n-j)!)
//! ```
//!
//! Gamma ratios are always formed as finite products ([`gamma_ratio`]) so that large
//! `n + μ` never overflows an intermediate `Γ`.

use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{factorial, Scalar};

/// `Γ(x)/Γ(x-k) = (x-1)(x-2)…(x-k)`.
///
/// Exact in rational arithmetic. Fails when `x - k ≤ 0`.
pub fn gamma_ratio<T: Scalar>(x: &T, k: usize) -> Result<T> {
    let bottom = x.clone() - T::from_usize_exact(k);
    if bottom <= T::zero() {
        return Err(Error::GammaPole(bottom.to_string()));
    }
    Ok((1..=k).fold(T::one(), |acc, i| {
        acc * (x.clone() - T::from_usize_exact(i))
    }))
}

/// Degree-`n` generalized Laguerre polynomial with its exact coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct LaguerrePoly<T> {
    degree: usize,
    parameter: T,
    coeffs: Vec<T>,
}

impl<T: Scalar> LaguerrePoly<T> {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn parameter(&self) -> &T {
        &self.parameter
    }

    /// Coefficient of `z^j` at index `j`.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn eval(&self, z: &T) -> T {
        self.as_polynomial().eval(z)
    }

    /// Horner evaluation through `f64`.
    pub fn eval_f64(&self, z: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * z + c.to_f64())
    }

    pub fn as_polynomial(&self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.clone())
    }
}

/// Builds `L_n^(μ)` coefficient by coefficient; `μ > -1`.
pub fn laguerre_coeffs<T: Scalar>(n: usize, mu: &T) -> Result<LaguerrePoly<T>> {
    if *mu <= -T::one() {
        return Err(Error::param("mu", format!("{mu} must exceed -1")));
    }
    // Γ(n+μ+1)/Γ(j+μ+1) and the factorials built up from j = n downwards
    let top = T::from_usize_exact(n) + mu.clone() + T::one();
    let mut coeffs = vec![T::zero(); n + 1];
    let mut ratio = T::one();
    let mut j_fact: T = factorial(n);
    let mut rest_fact = T::one();
    for j in (0..=n).rev() {
        coeffs[j] = T::sign_power(j) * ratio.clone() / (j_fact.clone() * rest_fact.clone());
        if j > 0 {
            let k = n - j + 1;
            ratio = ratio * (top.clone() - T::from_usize_exact(k));
            j_fact = j_fact / T::from_usize_exact(j);
            rest_fact = rest_fact * T::from_usize_exact(k);
        }
    }
    Ok(LaguerrePoly {
        degree: n,
        parameter: mu.clone(),
        coeffs,
    })
}

/// `L_n^(μ)(0) = Γ(n+μ+1)/(n! Γ(μ+1))`.
pub fn laguerre_at_origin<T: Scalar>(n: usize, mu: &T) -> Result<T> {
    let top = T::from_usize_exact(n) + mu.clone() + T::one();
    Ok(gamma_ratio(&top, n)? / factorial::<T>(n))
}

/// `L_n^(μ)(z)` by the upward three-term recurrence
/// `(k+1) L_{k+1} = (2k+1+μ-z) L_k - (k+μ) L_{k-1}`.
pub fn laguerre_eval(n: usize, mu: f64, z: f64) -> f64 {
    laguerre_pair(n, mu, z).0
}

/// `(L_n^(μ)(z), L_{n-1}^(μ)(z))`, with `L_{-1} = 0`.
pub fn laguerre_pair(n: usize, mu: f64, z: f64) -> (f64, f64) {
    let mut prev = 0.0;
    let mut cur = 1.0;
    for k in 0..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + mu - z) * cur - (k + mu) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// `∫₀^∞ e^{-z} z^{γ-1} L_n^(μ)(z) dz = Γ(γ) Γ(1+μ+n-γ) / (n! Γ(1+μ-γ))`.
///
/// The ratio `Γ(1+μ+n-γ)/Γ(1+μ-γ)` is taken as the rising product `∏_{k=1}^{n} (μ+k-γ)`,
/// which is also its limiting value when either gamma sits on a pole.
pub fn laguerre_weighted_integral(gamma_exp: f64, n: usize, mu: f64) -> Result<f64> {
    if !(gamma_exp.is_finite() && gamma_exp > 0.0) {
        return Err(Error::param(
            "gamma",
            format!("{gamma_exp} must be positive"),
        ));
    }
    if !mu.is_finite() {
        return Err(Error::param("mu", "must be finite"));
    }
    let rising_over_factorial = (1..=n).fold(1.0, |acc, k| {
        let k = k as f64;
        acc * (mu + k - gamma_exp) / k
    });
    Ok(gamma(gamma_exp) * rising_over_factorial)
}

/// `∫₀^∞ e^{-z} z^{μ-1} [L_n^(μ)(z)]² dz = Γ(μ+n+1) / (μ n!)`, `μ > 0`.
///
/// Computed as `Γ(μ) ∏_{k=1}^{n} (μ+k)/k`.
pub fn laguerre_norm_integral(n: usize, mu: f64) -> Result<f64> {
    if !(mu.is_finite() && mu > 0.0) {
        return Err(Error::param("mu", format!("{mu} must be positive")));
    }
    let ratio = (1..=n).fold(1.0, |acc, k| {
        let k = k as f64;
        acc * (mu + k) / k
    });
    Ok(gamma(mu) * ratio)
}

/// Standard orthogonality norm `∫₀^∞ e^{-z} z^μ [L_n^(μ)]² dz = Γ(n+μ+1)/n!`.
pub fn laguerre_orthogonality_norm(n: usize, mu: f64) -> Result<f64> {
    if !(mu.is_finite() && mu > -1.0) {
        return Err(Error::param("mu", format!("{mu} must exceed -1")));
    }
    let ratio = (1..=n).fold(1.0, |acc, k| {
        let k = k as f64;
        acc * (mu + k) / k
    });
    Ok(gamma(mu + 1.0) * ratio)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use approx::assert_relative_eq;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    /// Independent oracle: builds L_n^(μ) as exact polynomials from the three-term
    /// recurrence instead of the explicit sum.
    fn recurrence_coeffs(n: usize, mu: &Rational) -> Vec<Rational> {
        let one = q(1, 1);
        let mut prev: Vec<Rational> = vec![];
        let mut cur = vec![one.clone()];
        for k in 0..n {
            let kq = q(k as i64, 1);
            let mut next = vec![q(0, 1); k + 2];
            for (i, c) in cur.iter().enumerate() {
                next[i] += c.clone() * (q(2 * k as i64 + 1, 1) + mu.clone());
                next[i + 1] -= c.clone();
            }
            for (i, c) in prev.iter().enumerate() {
                next[i] -= c.clone() * (kq.clone() + mu.clone());
            }
            for c in next.iter_mut() {
                *c /= kq.clone() + one.clone();
            }
            prev = cur;
            cur = next;
        }
        cur
    }

    #[test]
    fn gamma_ratio_examples() {
        assert_eq!(gamma_ratio(&5.0, 0).unwrap(), 1.0);
        // Γ(5)/Γ(3) = 4!/2!
        assert_eq!(gamma_ratio(&5.0, 2).unwrap(), 24.0 / 2.0);
        assert_eq!(gamma_ratio(&3.5, 1).unwrap(), 2.5);
        assert_eq!(gamma_ratio(&q(7, 2), 3).unwrap(), q(15, 8));
    }

    #[test]
    fn gamma_ratio_rejects_pole() {
        assert!(matches!(gamma_ratio(&5.0, 5), Err(Error::GammaPole(_))));
        assert!(gamma_ratio(&q(1, 2), 1).is_err());
        assert!(gamma_ratio(&4.5, 4).is_ok());
    }

    #[test]
    fn coeff_examples() {
        let l0 = laguerre_coeffs(0, &q(17, 3)).unwrap();
        assert_eq!(l0.coeffs(), &[q(1, 1)]);
        let l1 = laguerre_coeffs(1, &q(2, 1)).unwrap();
        assert_eq!(l1.coeffs(), &[q(3, 1), q(-1, 1)]);
        let l2 = laguerre_coeffs(2, &q(0, 1)).unwrap();
        assert_eq!(l2.coeffs(), &[q(1, 1), q(-2, 1), q(1, 2)]);
        assert_eq!(l2.coeffs(), recurrence_coeffs(2, &q(0, 1)).as_slice());
    }

    #[test]
    fn coeffs_match_recurrence_exactly() {
        for mu in [q(1, 2), q(1, 1), q(2, 1), q(11, 2), q(-1, 3)] {
            for n in 0..=20 {
                let direct = laguerre_coeffs(n, &mu).unwrap();
                assert_eq!(
                    direct.coeffs(),
                    recurrence_coeffs(n, &mu).as_slice(),
                    "n={n} mu={mu}"
                );
                assert_eq!(direct.degree(), n);
                assert_ne!(direct.coeffs()[n], q(0, 1));
            }
        }
    }

    #[test]
    fn rejects_mu_at_or_below_minus_one() {
        assert!(laguerre_coeffs(3, &-1.0).is_err());
        assert!(laguerre_coeffs(3, &q(-3, 2)).is_err());
        assert!(laguerre_coeffs(3, &-0.999).is_ok());
    }

    #[test]
    fn value_at_origin_exact() {
        for mu in [q(0, 1), q(1, 2), q(5, 1), q(11, 2)] {
            for n in 0..=20 {
                let l = laguerre_coeffs(n, &mu).unwrap();
                assert_eq!(l.coeffs()[0], laguerre_at_origin(n, &mu).unwrap());
            }
        }
        // Γ(4)/(2! Γ(2)) = 3
        assert_eq!(laguerre_at_origin(2, &q(1, 1)).unwrap(), q(3, 1));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(laguerre_eval(0, 3.0, 7.2), 1.0);
        assert_eq!(laguerre_eval(1, 2.0, 3.0), 0.0);
        assert_eq!(laguerre_eval(2, 0.0, 2.0), -1.0);
    }

    #[test]
    fn recurrence_agrees_with_horner() {
        for mu in [0.5, 1.0, 2.0, 5.5] {
            let polys: Vec<_> = (0..=20)
                .map(|n| laguerre_coeffs(n, &q((mu * 2.0) as i64, 2)).unwrap())
                .collect();
            for (n, poly) in polys.iter().enumerate() {
                for step in 0..=200 {
                    let z = step as f64 * 0.25;
                    let exact = poly.eval(&Rational::from_float(z).unwrap());
                    let exact = exact.to_f64();
                    let got = laguerre_eval(n, mu, z);
                    let scale = exact.abs().max(1e-300);
                    // Near roots compare against the size of the individual terms.
                    let terms: f64 = poly
                        .coeffs()
                        .iter()
                        .enumerate()
                        .map(|(j, c)| (c.to_f64() * z.powi(j as i32)).abs())
                        .sum();
                    assert!(
                        (got - exact).abs() <= 1e-12 * scale.max(1e-4 * terms),
                        "n={n} mu={mu} z={z}: {got} vs {exact}"
                    );
                }
            }
        }
    }

    #[test]
    fn weighted_integral_examples() {
        assert_relative_eq!(
            laguerre_weighted_integral(1.0, 0, 0.0).unwrap(),
            1.0,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            laguerre_weighted_integral(2.0, 1, 2.0).unwrap(),
            1.0,
            max_relative = 1e-14
        );
        assert_eq!(laguerre_weighted_integral(1.0, 1, 0.0).unwrap(), 0.0);
        assert!(laguerre_weighted_integral(0.0, 1, 0.0).is_err());
        assert!(laguerre_weighted_integral(-1.0, 1, 0.0).is_err());
    }

    /// Exact moment oracle: for integer μ ≥ 1, ∫ e^{-z} z^{μ-1} z^k dz = (μ+k-1)!.
    fn norm_by_moments(n: usize, mu: i64) -> Rational {
        let l = laguerre_coeffs(n, &q(mu, 1)).unwrap();
        let c = l.coeffs();
        let mut total = q(0, 1);
        for (i, a) in c.iter().enumerate() {
            for (j, b) in c.iter().enumerate() {
                let k = (mu - 1) as usize + i + j;
                total += a.clone() * b.clone() * factorial::<Rational>(k);
            }
        }
        total
    }

    #[test]
    fn norm_integral_examples() {
        assert_eq!(norm_by_moments(0, 1), q(1, 1));
        assert_eq!(norm_by_moments(1, 2), q(3, 1));
        assert_eq!(norm_by_moments(2, 1), q(3, 1));
        assert_relative_eq!(
            laguerre_norm_integral(0, 1.0).unwrap(),
            1.0,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            laguerre_norm_integral(1, 2.0).unwrap(),
            3.0,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            laguerre_norm_integral(2, 1.0).unwrap(),
            3.0,
            max_relative = 1e-14
        );
        for n in 0..=10 {
            for mu in 1..=6 {
                let exact = norm_by_moments(n, mu).to_f64();
                assert_relative_eq!(
                    laguerre_norm_integral(n, mu as f64).unwrap(),
                    exact,
                    max_relative = 1e-13
                );
            }
        }
    }

    #[test]
    fn norm_integral_rejects_nonpositive_mu() {
        assert!(laguerre_norm_integral(1, 0.0).is_err());
        assert!(laguerre_norm_integral(1, -0.5).is_err());
    }

    #[test]
    fn orthogonality_norm_matches_moments() {
        // ∫ e^{-z} z^μ [L_n]^2 = Γ(n+μ+1)/n!; μ=2, n=3 → 5!/3! = 20
        assert_relative_eq!(
            laguerre_orthogonality_norm(3, 2.0).unwrap(),
            20.0,
            max_relative = 1e-14
        );
    }
}
