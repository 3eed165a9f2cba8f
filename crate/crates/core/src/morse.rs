//! Generalized Morse potential `V(x) = V1 e^{-αx} + V2 e^{-2αx}`.
//!
//! The substitution `ξ = 2√(2mV2) e^{-αx}/(ħα)` together with
//! `S = √(-2mE)/(ħα)` and `ψ = e^{-ξ/2} ξ^S Φ(ξ)` turns the Schrödinger equation into the
//! confluent hypergeometric equation with `b = 2S + 1` and
//! `a = mV1/(ħα√(2mV2)) + S + 1/2`. Quantization `a = -n` gives
//! `S_n = K - n - 1/2` with the well strength `K = m|V1|/(ħα√(2mV2))`.

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::laplace::CHTParams;
use crate::scalar::rational_from_f64;
use crate::special::{laguerre_coeffs, laguerre_eval, LaguerrePoly};

/// Physical inputs of one problem instance. Natural units (`m = ħ = 1`) by default.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MorseParams {
    pub mass: f64,
    pub hbar: f64,
    pub alpha: f64,
    pub v1: f64,
    pub v2: f64,
}

impl MorseParams {
    pub fn new(v1: f64, v2: f64, alpha: f64) -> Self {
        MorseParams {
            mass: 1.0,
            hbar: 1.0,
            alpha,
            v1,
            v2,
        }
    }

    pub fn with_units(mut self, mass: f64, hbar: f64) -> Self {
        self.mass = mass;
        self.hbar = hbar;
        self
    }

    /// The ordinary Morse potential `D(e^{-2αx} - 2e^{-αx})`, i.e. `V1 = -2D`, `V2 = D`.
    pub fn ordinary(depth: f64, alpha: f64) -> Self {
        Self::new(-2.0 * depth, depth, alpha)
    }

    /// Checks `m, ħ, α > 0` and finite strengths. Says nothing about the well shape.
    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("mass", self.mass),
            ("hbar", self.hbar),
            ("alpha", self.alpha),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::param(name, format!("{value} must be positive")));
            }
        }
        for (name, value) in [("v1", self.v1), ("v2", self.v2)] {
            if !value.is_finite() {
                return Err(Error::param(name, "must be finite"));
            }
        }
        Ok(())
    }

    /// [`validate`](Self::validate) plus `V2 > 0`, which the ξ substitution requires.
    pub fn validate_reducible(&self) -> Result<()> {
        self.validate()?;
        if self.v2 <= 0.0 {
            return Err(Error::param("v2", "V2 must be positive"));
        }
        Ok(())
    }

    pub fn potential(&self, x: f64) -> f64 {
        let e = (-self.alpha * x).exp();
        self.v1 * e + self.v2 * e * e
    }

    /// `2√(2mV2)/(ħα)`, the value of ξ at `x = 0`.
    pub fn xi_scale(&self) -> Result<f64> {
        self.validate_reducible()?;
        Ok(2.0 * (2.0 * self.mass * self.v2).sqrt() / (self.hbar * self.alpha))
    }

    /// `K = m|V1|/(ħα√(2mV2))`.
    pub fn well_strength(&self) -> Result<f64> {
        self.validate_reducible()?;
        Ok(self.mass * self.v1.abs()
            / (self.hbar * self.alpha * (2.0 * self.mass * self.v2).sqrt()))
    }

    /// Inverse of [`xi_of_x`].
    pub fn x_of_xi(&self, xi: f64) -> Result<f64> {
        if xi.is_nan() || xi <= 0.0 {
            return Err(Error::param("xi", format!("{xi} must be positive")));
        }
        Ok(-(xi / self.xi_scale()?).ln() / self.alpha)
    }

    /// `2m/ħ²`.
    fn kinetic_factor(&self) -> f64 {
        2.0 * self.mass / (self.hbar * self.hbar)
    }
}

/// `ξ = 2√(2mV2) e^{-αx}/(ħα)`.
pub fn xi_of_x(p: &MorseParams, x: f64) -> Result<f64> {
    Ok(p.xi_scale()? * (-p.alpha * x).exp())
}

/// Output of [`reduced_params`].
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedParams {
    pub cht: CHTParams<f64>,
    pub s_exponent: f64,
}

/// `(a = -n, b = 2S_n + 1, S_n = K - n - 1/2)` for an allowed `n`.
pub fn reduced_params(p: &MorseParams, n: usize) -> Result<ReducedParams> {
    check_state(p, n)?;
    let s = p.well_strength()? - n as f64 - 0.5;
    Ok(ReducedParams {
        cht: CHTParams::quantized(n, 2.0 * s + 1.0)?,
        s_exponent: s,
    })
}

/// `a = mV1/(ħα√(2mV2)) + S + 1/2` evaluated for a given `S`; zero minus `n` on shell.
pub fn confluent_a(p: &MorseParams, s: f64) -> Result<f64> {
    p.validate_reducible()?;
    Ok(p.mass * p.v1 / (p.hbar * p.alpha * (2.0 * p.mass * p.v2).sqrt()) + s + 0.5)
}

/// Number of integers `n ≥ 0` with `n < K - 1/2`.
///
/// The comparison is made exactly: `n < K - 1/2` is equivalent to
/// `(2n+1)² ħ²α² V2 < 2m V1²`, which is checked in rational arithmetic on the binary
/// values of the inputs, so states sitting on `S = 0` are excluded without an epsilon.
pub fn bound_state_count(p: &MorseParams) -> usize {
    if p.validate().is_err() || p.v1 >= 0.0 || p.v2 <= 0.0 {
        return 0;
    }
    let exact = |x: f64| rational_from_f64(x).expect("validated finite");
    let (m, hbar, alpha, v1, v2) = (
        exact(p.mass),
        exact(p.hbar),
        exact(p.alpha),
        exact(p.v1),
        exact(p.v2),
    );
    let lhs_unit = hbar.clone() * hbar * alpha.clone() * alpha * v2;
    let two = exact(2.0);
    let rhs = two * m * v1.clone() * v1;
    let allowed = |n: usize| {
        let odd = exact((2 * n + 1) as f64);
        odd.clone() * odd * lhs_unit.clone() < rhs
    };
    let k = p.well_strength().unwrap_or(0.0);
    let mut count = if (k - 0.5).is_finite() && k > 0.5 {
        (k - 0.5).ceil().min(u32::MAX as f64) as usize
    } else {
        0
    };
    while count > 0 && !allowed(count - 1) {
        count -= 1;
    }
    while allowed(count) {
        count += 1;
    }
    count
}

fn check_state(p: &MorseParams, n: usize) -> Result<()> {
    p.validate_reducible()?;
    let count = bound_state_count(p);
    if n >= count {
        return Err(Error::StateOutOfRange { n, count });
    }
    Ok(())
}

/// `E_n = -(V1²/4V2) [1 - (ħα√(2mV2)/(m|V1|)) (n + 1/2)]²`.
pub fn energy(p: &MorseParams, n: usize) -> Result<f64> {
    check_state(p, n)?;
    // 1 - (n+1/2)/K written as (K - n - 1/2)/K; the subtraction is exact near the threshold
    let k = p.well_strength()?;
    let bracket = (k - (n as f64 + 0.5)) / k;
    Ok(-(p.v1 * p.v1) / (4.0 * p.v2) * bracket * bracket)
}

/// `E = -ħ²α²S²/(2m)`.
pub fn energy_from_s(p: &MorseParams, s: f64) -> f64 {
    -(p.hbar * p.alpha * s).powi(2) / (2.0 * p.mass)
}

/// One normalized bound state:
/// `ψ_n(ξ) = √(2αS n!/Γ(2S+n+1)) ξ^S e^{-ξ/2} L_n^(2S)(ξ)`, normalized in `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundState {
    pub n: usize,
    pub s_exponent: f64,
    pub energy: f64,
    pub norm_const: f64,
    pub poly: LaguerrePoly<f64>,
    alpha: f64,
    ln_xi_scale: f64,
    ln_norm: f64,
}

impl BoundState {
    /// ξ at position `x`.
    pub fn xi(&self, x: f64) -> f64 {
        (self.ln_xi_scale - self.alpha * x).exp()
    }

    /// `x` at which ξ takes the given value.
    pub fn x_at(&self, xi: f64) -> f64 {
        (self.ln_xi_scale - xi.ln()) / self.alpha
    }

    /// `ψ_n(x)`.
    pub fn psi(&self, x: f64) -> f64 {
        let ln_xi = self.ln_xi_scale - self.alpha * x;
        self.psi_from_ln_xi(ln_xi, ln_xi.exp())
    }

    /// `ψ_n` as a function of ξ > 0.
    pub fn psi_xi(&self, xi: f64) -> f64 {
        if xi <= 0.0 {
            return 0.0;
        }
        self.psi_from_ln_xi(xi.ln(), xi)
    }

    fn psi_from_ln_xi(&self, ln_xi: f64, xi: f64) -> f64 {
        let ln_envelope = self.ln_norm + self.s_exponent * ln_xi - 0.5 * xi;
        // the polynomial factor grows at most like ξ^n
        if ln_envelope + self.n as f64 * ln_xi.max(0.0) < -745.0 || !xi.is_finite() {
            return 0.0;
        }
        ln_envelope.exp() * laguerre_eval(self.n, 2.0 * self.s_exponent, xi)
    }

    /// Copy with a different energy; used to probe the residual's sensitivity.
    pub fn with_energy(&self, energy: f64) -> Self {
        BoundState {
            energy,
            ..self.clone()
        }
    }

    /// Window in `x` on which ξ runs from `4(2S+n+1)` down to `1e-8`: past the outer
    /// classical turning point on the repulsive side, down to the decaying tail.
    pub fn window(&self) -> (f64, f64) {
        let xi_hi = 4.0 * (2.0 * self.s_exponent + self.n as f64 + 1.0);
        (self.x_at(xi_hi), self.x_at(1e-8))
    }

    /// Sign changes of ψ on `samples` uniform points of [`window`](Self::window).
    pub fn sign_changes(&self, samples: usize) -> usize {
        let (lo, hi) = self.window();
        let values = (0..samples).map(|i| {
            let t = i as f64 / (samples - 1) as f64;
            self.psi(lo + t * (hi - lo))
        });
        count_sign_changes(values)
    }
}

/// Sign changes in a sequence, skipping exact zeros.
pub fn count_sign_changes(values: impl IntoIterator<Item = f64>) -> usize {
    let mut last = 0.0f64;
    let mut changes = 0;
    for v in values {
        if v == 0.0 || v.is_nan() {
            continue;
        }
        if last != 0.0 && (v > 0.0) != (last > 0.0) {
            changes += 1;
        }
        last = v;
    }
    changes
}

pub fn wavefunction(p: &MorseParams, n: usize) -> Result<BoundState> {
    let reduced = reduced_params(p, n)?;
    let s = reduced.s_exponent;
    let mu = 2.0 * s;
    // ln(2αS n!/Γ(2S+n+1))
    let ln_norm_sq =
        (2.0 * p.alpha * s).ln() + ln_gamma(n as f64 + 1.0) - ln_gamma(mu + n as f64 + 1.0);
    let ln_norm = 0.5 * ln_norm_sq;
    Ok(BoundState {
        n,
        s_exponent: s,
        energy: energy(p, n)?,
        norm_const: ln_norm.exp(),
        poly: laguerre_coeffs(n, &mu)?,
        alpha: p.alpha,
        ln_xi_scale: p.xi_scale()?.ln(),
        ln_norm,
    })
}

/// All bound states, deepest first. Empty when the potential has no well.
pub fn spectrum(p: &MorseParams) -> Vec<BoundState> {
    (0..bound_state_count(p))
        .map(|n| wavefunction(p, n).expect("n below the bound-state count"))
        .collect()
}

/// `max_x |ψ'' + (2m/ħ²)(E - V)ψ| / (max_x|ψ| · (2m/ħ²)|E|)` with `ψ''` from the
/// central difference of step `h`.
pub fn schrodinger_residual(p: &MorseParams, st: &BoundState, xs: &[f64], h: f64) -> f64 {
    let k = p.kinetic_factor();
    let mut worst = 0.0f64;
    let mut psi_max = 0.0f64;
    for &x in xs {
        let (left, mid, right) = (st.psi(x - h), st.psi(x), st.psi(x + h));
        let second = (left - 2.0 * mid + right) / (h * h);
        let r = second + k * (st.energy - p.potential(x)) * mid;
        worst = worst.max(r.abs());
        psi_max = psi_max.max(mid.abs());
    }
    worst / (psi_max * k * st.energy.abs())
}
