//! Grid eigensolvers for `-(ħ²/2m)ψ'' + V(x)ψ = Eψ` with Dirichlet walls.
//!
//! The primary oracle is matrix Numerov: the generalized eigenproblem
//! `(-(ħ²/2m) A + B V) ψ = E B ψ` with `A = tridiag(1, -2, 1)/h²` and
//! `B = tridiag(1, 10, 1)/12`. Its eigenvalues are the zeros of
//! `det J(E)`, where `J(E)` is the symmetric tridiagonal matrix obtained from the Numerov
//! recurrence in the variable `φ_i = (1 + h²k_i/12) ψ_i`, `k_i = 2m(E - V_i)/ħ²`. The
//! diagonal of `-J(E)` decreases strictly in `E`, so the count of its negative
//! eigenvalues (a Sturm sequence) equals the number of Numerov eigenvalues below `E`, and
//! each eigenvalue is isolated by bisection on that count.
//!
//! The cross-check is an independent fourth-order five-point discretization whose
//! symmetric pentadiagonal matrix is probed by LDLᵀ inertia.

use crate::error::{Error, Result};

/// Uniform grid including both wall points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
            return Err(Error::InvalidGrid(format!(
                "need x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n_points < 3 {
            return Err(Error::InvalidGrid(format!(
                "need at least 3 points, got {n_points}"
            )));
        }
        Ok(GridSpec {
            x_min,
            x_max,
            n_points,
        })
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.spacing()
    }

    /// Same window with the spacing halved.
    pub fn refined(&self) -> Self {
        GridSpec {
            n_points: 2 * self.n_points - 1,
            ..*self
        }
    }
}

/// Mass and reduced Planck constant of the particle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Units {
    pub mass: f64,
    pub hbar: f64,
}

impl Default for Units {
    fn default() -> Self {
        Units {
            mass: 1.0,
            hbar: 1.0,
        }
    }
}

impl Units {
    fn kinetic_factor(&self) -> f64 {
        2.0 * self.mass / (self.hbar * self.hbar)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scheme {
    #[default]
    Numerov,
    FivePoint,
}

/// Potential sampled at the interior points, plus the bound-state threshold
/// `min(V(x_min), V(x_max))`.
struct Sampled {
    v: Vec<f64>,
    threshold: f64,
    h: f64,
    k: f64,
}

fn sample(potential: &impl Fn(f64) -> f64, g: &GridSpec, units: Units) -> Result<Sampled> {
    if !(units.mass > 0.0 && units.hbar > 0.0) {
        return Err(Error::param("units", "mass and hbar must be positive"));
    }
    let v: Vec<f64> = (1..g.n_points - 1).map(|i| potential(g.point(i))).collect();
    if let Some(bad) = v.iter().position(|x| !x.is_finite()) {
        return Err(Error::InvalidGrid(format!(
            "potential is not finite at x = {}",
            g.point(bad + 1)
        )));
    }
    let threshold = potential(g.x_min).min(potential(g.x_max));
    Ok(Sampled {
        v,
        threshold,
        h: g.spacing(),
        k: units.kinetic_factor(),
    })
}

impl Sampled {
    fn v_min(&self) -> f64 {
        self.v.iter().copied().fold(f64::INFINITY, f64::min)
    }

    fn v_max(&self) -> f64 {
        self.v.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Number of Numerov eigenvalues strictly below `e`.
    fn numerov_count(&self, e: f64) -> usize {
        let c = self.h * self.h * self.k / 12.0;
        let mut count = 0;
        let mut q = 1.0;
        for (i, &v) in self.v.iter().enumerate() {
            let u = c * (e - v);
            let diag = 2.0 * (1.0 - 5.0 * u) / (1.0 + u);
            q = if i == 0 { diag } else { diag - 1.0 / q };
            if q == 0.0 {
                q = f64::MIN_POSITIVE;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Number of five-point eigenvalues strictly below `e`, from the LDLᵀ pivots of
    /// `H - e` (bandwidth two).
    fn five_point_count(&self, e: f64) -> usize {
        let t = 1.0 / (self.k * 12.0 * self.h * self.h);
        // H = t·(tridiag stencil 1, -16, 30, -16, 1) + V
        let (off1, off2) = (-16.0 * t, t);
        let n = self.v.len();
        let mut d = vec![0.0; n];
        // l1[i] = L[i][i-1], l2[i] = L[i][i-2]
        let mut l1 = vec![0.0; n];
        let mut count = 0;
        for i in 0..n {
            let a_ii = 30.0 * t + self.v[i] - e;
            let l2_i = if i >= 2 { off2 / d[i - 2] } else { 0.0 };
            let l1_i = if i >= 1 {
                let mut s = off1;
                if i >= 2 {
                    s -= l2_i * d[i - 2] * l1[i - 1];
                }
                s / d[i - 1]
            } else {
                0.0
            };
            let mut di = a_ii;
            if i >= 1 {
                di -= l1_i * l1_i * d[i - 1];
            }
            if i >= 2 {
                di -= l2_i * l2_i * d[i - 2];
            }
            if di == 0.0 {
                di = f64::MIN_POSITIVE;
            }
            if di < 0.0 {
                count += 1;
            }
            d[i] = di;
            l1[i] = l1_i;
        }
        count
    }

    fn count(&self, scheme: Scheme, e: f64) -> usize {
        match scheme {
            Scheme::Numerov => self.numerov_count(e),
            Scheme::FivePoint => self.five_point_count(e),
        }
    }

    fn lower_bound(&self, scheme: Scheme) -> f64 {
        match scheme {
            // -J(E) is diagonally dominant once k_i ≤ 0 everywhere
            Scheme::Numerov => self.v_min(),
            // Gershgorin
            Scheme::FivePoint => self.v_min() - 4.0 / (12.0 * self.k * self.h * self.h),
        }
    }
}

/// Lowest `count` eigenvalues of `-(ħ²/2m)ψ'' + Vψ` on the grid with the given scheme.
///
/// Only states below `min(V(x_min), V(x_max))` are confined by the potential rather than
/// by the walls; fewer than `count` of those is an error.
pub fn eigenvalues(
    potential: impl Fn(f64) -> f64,
    g: &GridSpec,
    count: usize,
    units: Units,
    scheme: Scheme,
) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::param("count", "must be at least 1"));
    }
    let s = sample(&potential, g, units)?;
    let lo = s.lower_bound(scheme);
    let hi = s.threshold;
    if scheme == Scheme::Numerov && s.h * s.h * s.k * (s.v_max() - lo) / 12.0 >= 1.0 {
        return Err(Error::InvalidGrid(format!(
            "spacing {} too coarse for the Numerov transform at V = {}",
            s.h,
            s.v_max()
        )));
    }
    let found = if hi > lo { s.count(scheme, hi) } else { 0 };
    if found < count {
        return Err(Error::InsufficientBoundStates {
            requested: count,
            found,
            threshold: hi,
        });
    }
    let mut out = Vec::with_capacity(count);
    let mut floor = lo;
    for index in 0..count {
        // smallest e with count(e) > index
        let (mut a, mut b) = (floor, hi);
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if s.count(scheme, mid) > index {
                b = mid;
            } else {
                a = mid;
            }
        }
        let e = 0.5 * (a + b);
        out.push(e);
        floor = a;
    }
    Ok(out)
}

/// Lowest `count` matrix-Numerov eigenvalues.
pub fn numerov_eigenvalues(
    potential: impl Fn(f64) -> f64,
    g: &GridSpec,
    count: usize,
    units: Units,
) -> Result<Vec<f64>> {
    eigenvalues(potential, g, count, units, Scheme::Numerov)
}
