//! Transform-space engine for the confluent hypergeometric equation
//! `ξΦ'' + (b - ξ)Φ' - aΦ = 0`.
//!
//! With `F(s) = ∫₀^∞ e^{-sξ} Φ(ξ) dξ` the equation becomes first order:
//!
//! ```text
//! s(s-1) F'(s) + [(2-b)s + a - 1] F(s) = (1-b) Φ(0)
//! ```
//!
//! A pole of order `ν` at `s = 0` forces `ν = 1 - a`; a finite principal part
//! `F = Σ_{j=0}^{n} c_j s^{j-n-1}` forces `ν = n + 1`, hence `a = -n`. The coefficients
//! obey `c_{j+1} = c_j (1+j-n-b)/(j+1)`, and termwise inversion of `s^{-(k+1)}` into
//! `ξ^k/k!` yields `Φ_n = c_0 (-1)^n L_n^(b-1)`.
//!
//! This module builds `F` from the closed form and checks the transformed equation as an
//! exact identity; it never integrates the transform ODE numerically.

use crate::error::{Error, Result};
use crate::poly::{LaurentPoly, Polynomial};
use crate::scalar::{factorial, Scalar};
use crate::special::{gamma_ratio, laguerre_coeffs};

/// Parameters `(a, b)` of the confluent hypergeometric equation, `b > 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CHTParams<T> {
    pub a: T,
    pub b: T,
}

impl<T: Scalar> CHTParams<T> {
    pub fn new(a: T, b: T) -> Result<Self> {
        check_b(&b)?;
        Ok(CHTParams { a, b })
    }

    /// The quantized instance `a = -n`.
    pub fn quantized(n: usize, b: T) -> Result<Self> {
        Self::new(-T::from_usize_exact(n), b)
    }

    /// `Some(n)` when `a = -n`.
    pub fn quantum_number(&self) -> Option<usize> {
        quantization_index(&self.a)
    }

    /// Transform of the polynomial solution; refuses non-quantized `a`.
    pub fn transform(&self, c0: &T) -> Result<TransformSeries<T>> {
        let n = self
            .quantum_number()
            .ok_or_else(|| Error::NotQuantized(self.a.to_string()))?;
        build_transform(n, &self.b, c0)
    }
}

fn check_b<T: Scalar>(b: &T) -> Result<()> {
    if *b <= T::one() {
        return Err(Error::param("b", format!("b must exceed 1, got {b}")));
    }
    Ok(())
}

fn check_c0<T: Scalar>(c0: &T) -> Result<()> {
    if c0.is_zero() {
        return Err(Error::param("c0", "must be nonzero"));
    }
    Ok(())
}

/// `F(s) = Σ_{j=0}^{n} c_j s^{j-ν}` with `ν = n + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformSeries<T> {
    coeffs: Vec<T>,
    param_b: T,
}

impl<T: Scalar> TransformSeries<T> {
    /// Checks `c_0 ≠ 0` and `b > 1`.
    pub fn new(coeffs: Vec<T>, param_b: T) -> Result<Self> {
        check_b(&param_b)?;
        match coeffs.first() {
            Some(c0) => check_c0(c0)?,
            None => return Err(Error::param("coeffs", "at least one coefficient required")),
        }
        Ok(TransformSeries { coeffs, param_b })
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn pole_order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn c0(&self) -> &T {
        &self.coeffs[0]
    }

    pub fn param_b(&self) -> &T {
        &self.param_b
    }

    /// Coefficient of `1/s`.
    pub fn residue(&self) -> &T {
        self.coeffs.last().expect("nonempty by construction")
    }

    pub fn to_laurent(&self) -> LaurentPoly<T> {
        LaurentPoly::new(-(self.pole_order() as i64), self.coeffs.clone())
    }

    pub fn eval_f64(&self, s: f64) -> f64 {
        self.to_laurent().eval_f64(s)
    }
}

/// `c_0 … c_n` by forward iteration of `c_{j+1} = c_j (1+j-n-b)/(j+1)`.
pub fn coefficient_recursion<T: Scalar>(n: usize, b: &T, c0: &T) -> Result<Vec<T>> {
    check_b(b)?;
    check_c0(c0)?;
    let nn = T::from_usize_exact(n);
    let mut out = Vec::with_capacity(n + 1);
    out.push(c0.clone());
    for j in 0..n {
        let jj = T::from_usize_exact(j);
        let factor = (T::one() + jj.clone() - nn.clone() - b.clone()) / (jj + T::one());
        let next = out[j].clone() * factor;
        out.push(next);
    }
    Ok(out)
}

/// `c_j = c_0 (-1)^j / j! · Γ(n+b)/Γ(n+b-j)`.
pub fn coefficient_closed_form<T: Scalar>(n: usize, b: &T, c0: &T, j: usize) -> Result<T> {
    check_b(b)?;
    check_c0(c0)?;
    if j > n {
        return Err(Error::param("j", format!("{j} exceeds n = {n}")));
    }
    let top = T::from_usize_exact(n) + b.clone();
    let ratio = gamma_ratio(&top, j)?;
    Ok(c0.clone() * T::sign_power(j) * ratio / factorial::<T>(j))
}

/// All `c_j` from the closed form, sharing the running Γ-ratio and factorial products.
pub fn build_transform<T: Scalar>(n: usize, b: &T, c0: &T) -> Result<TransformSeries<T>> {
    check_b(b)?;
    check_c0(c0)?;
    let top = T::from_usize_exact(n) + b.clone();
    let mut coeffs = Vec::with_capacity(n + 1);
    let (mut ratio, mut fact) = (T::one(), T::one());
    for j in 0..=n {
        if j > 0 {
            ratio = ratio * (top.clone() - T::from_usize_exact(j));
            fact = fact * T::from_usize_exact(j);
        }
        coeffs.push(c0.clone() * T::sign_power(j) * ratio.clone() / fact.clone());
    }
    TransformSeries::new(coeffs, b.clone())
}

/// `s(s-1)F' + [(2-b)s + a - 1]F - (1-b)Φ(0)`, collected as a Laurent polynomial.
///
/// Identically zero exactly when `a = -n` and `phi0` is the residue of `F`.
pub fn ode_residual<T: Scalar>(f: &TransformSeries<T>, a: &T, b: &T, phi0: &T) -> LaurentPoly<T> {
    let big_f = f.to_laurent();
    let one = T::one();
    let two = one.clone() + one.clone();
    // s(s-1) = -s + s^2
    let s_s_minus_1 = LaurentPoly::new(1, vec![-one.clone(), one.clone()]);
    let linear = LaurentPoly::new(0, vec![a.clone() - one.clone(), two - b.clone()]);
    let rhs = LaurentPoly::monomial((one - b.clone()) * phi0.clone(), 0);
    s_s_minus_1
        .mul(&big_f.derivative())
        .add(&linear.mul(&big_f))
        .sub(&rhs)
        .trimmed()
}

/// Termwise inversion `s^{-(k+1)} ↦ ξ^k / k!`, so `Φ(ξ) = Σ_j c_j ξ^{n-j}/(n-j)!`.
pub fn inverse_transform<T: Scalar>(f: &TransformSeries<T>) -> Polynomial<T> {
    let n = f.degree();
    let mut out = vec![T::zero(); n + 1];
    for (j, c) in f.coeffs().iter().enumerate() {
        out[n - j] = c.clone() / factorial::<T>(n - j);
    }
    Polynomial::new(out)
}

/// `lim_{s→∞} sF(s)`, the coefficient of `1/s`.
pub fn initial_value<T: Scalar>(f: &TransformSeries<T>) -> T {
    f.residue().clone()
}

/// `ν = 1 - a`, the pole order forced at `s = 0`.
pub fn singularity_exponent<T: Scalar>(a: &T) -> T {
    T::one() - a.clone()
}

/// `Some(n)` when `1 - a` is a positive integer, i.e. `a = -n`.
pub fn quantization_index<T: Scalar>(a: &T) -> Option<usize> {
    singularity_exponent(a)
        .as_nonneg_integer()
        .filter(|&nu| nu >= 1)
        .map(|nu| nu - 1)
}

/// Both sides of `Φ_n = c_0 (-1)^n L_n^(b-1)`, coefficient by coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct LaguerreIdentification<T> {
    pub transform_side: Vec<T>,
    pub laguerre_side: Vec<T>,
}

pub fn laguerre_identification<T: Scalar>(
    n: usize,
    b: &T,
    c0: &T,
) -> Result<LaguerreIdentification<T>> {
    let phi = inverse_transform(&build_transform(n, b, c0)?).into_coeffs();
    let scale = c0.clone() * T::sign_power(n);
    let lag = laguerre_coeffs(n, &(b.clone() - T::one()))?
        .coeffs()
        .iter()
        .map(|c| c.clone() * scale.clone())
        .collect::<Vec<_>>();
    if let Some(index) = (0..=n).find(|&k| phi[k] != lag[k]) {
        return Err(Error::LaguerreMismatch {
            index,
            transform: phi[index].to_string(),
            laguerre: lag[index].to_string(),
        });
    }
    Ok(LaguerreIdentification {
        transform_side: phi,
        laguerre_side: lag,
    })
}

/// Standard normalization `c_0 = (-1)^n`, under which `Φ_n = L_n^(b-1)`.
pub fn default_c0<T: Scalar>(n: usize) -> T {
    T::sign_power(n)
}
