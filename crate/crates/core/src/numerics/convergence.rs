use serde::Serialize;

use crate::error::{Error, Result};
use crate::morse::{self, MorseParams};
use crate::numerics::eigen::{eigenvalues, GridSpec, Scheme, Units};

/// Lowest observed order accepted for the fourth-order scheme.
pub const MIN_NUMEROV_ORDER: f64 = 3.5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n_points: usize,
    pub spacing: f64,
    pub eigenvalue: f64,
    pub abs_error: f64,
    /// `log2(previous error / this error) / log2(previous h / this h)`; absent on the first row.
    pub order: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceTable {
    pub state: usize,
    pub exact: f64,
    pub rows: Vec<ConvergenceRow>,
    /// Smallest pairwise order, when at least two levels were run.
    pub observed_order: Option<f64>,
    /// False when errors stop shrinking or pairwise orders disagree, i.e. the grid error is
    /// masked by domain truncation or round-off.
    pub reliable: bool,
}

/// Numerov error on `E_state` for each grid level, with observed orders between levels.
pub fn grid_convergence_study(
    p: &MorseParams,
    levels: &[GridSpec],
    state: usize,
) -> Result<ConvergenceTable> {
    if levels.is_empty() {
        return Err(Error::param("levels", "at least one grid level required"));
    }
    if levels.windows(2).any(|w| w[1].spacing() >= w[0].spacing()) {
        return Err(Error::param(
            "levels",
            "grid spacing must decrease from level to level",
        ));
    }
    let exact = morse::energy(p, state)?;
    let units = Units {
        mass: p.mass,
        hbar: p.hbar,
    };
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(levels.len());
    for g in levels {
        let e = eigenvalues(|x| p.potential(x), g, state + 1, units, Scheme::Numerov)?[state];
        let abs_error = (e - exact).abs();
        let order = rows
            .last()
            .map(|prev| (prev.abs_error / abs_error).log2() / (prev.spacing / g.spacing()).log2());
        rows.push(ConvergenceRow {
            n_points: g.n_points,
            spacing: g.spacing(),
            eigenvalue: e,
            abs_error,
            order,
        });
    }
    let orders: Vec<f64> = rows.iter().filter_map(|r| r.order).collect();
    let observed_order = orders.iter().copied().fold(None, |acc: Option<f64>, o| {
        Some(acc.map_or(o, |a| a.min(o)))
    });
    let reliable = !orders.is_empty() && orders.iter().all(|o| o.is_finite() && *o > 0.0) && {
        let mean = orders.iter().sum::<f64>() / orders.len() as f64;
        orders.iter().all(|o| (o - mean).abs() <= 0.5)
    };
    Ok(ConvergenceTable {
        state,
        exact,
        rows,
        observed_order,
        reliable,
    })
}

/// `levels` grids on one window, each halving the spacing of the previous one.
pub fn halving_levels(base: GridSpec, levels: usize) -> Vec<GridSpec> {
    std::iter::successors(Some(base), |g| Some(g.refined()))
        .take(levels)
        .collect()
}

/// Window sized from the parameters: `V(x_min) ≥ 10³|E_0|` on the repulsive side and
/// `x_max ≥ x_turn + 10/κ` beyond the outer turning point of the shallowest state,
/// with `κ = √(2m|E_last|)/ħ`.
pub fn morse_window(p: &MorseParams) -> Result<(f64, f64)> {
    let count = morse::bound_state_count(p);
    if count == 0 {
        return Err(Error::param("params", "the potential holds no bound state"));
    }
    let e0 = morse::energy(p, 0)?;
    let e_last = morse::energy(p, count - 1)?;
    // V(x) = E with y = e^{-αx}: V2 y² + V1 y - E = 0
    let root = |e: f64, larger: bool| {
        let disc = (p.v1 * p.v1 + 4.0 * p.v2 * e).max(0.0).sqrt();
        let y = if larger { -p.v1 + disc } else { -p.v1 - disc } / (2.0 * p.v2);
        -y.ln() / p.alpha
    };
    let x_min = root(1e3 * e0.abs(), true);
    let kappa = (2.0 * p.mass * e_last.abs()).sqrt() / p.hbar;
    let x_max = root(e_last, false) + 10.0 / kappa;
    Ok((x_min, x_max))
}
