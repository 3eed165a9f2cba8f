//! Independent numerical oracles: a grid eigensolver, quadrature rules and a grid
//! convergence study. Nothing here uses the closed forms it is meant to check, except the
//! convergence study, which reports errors against them.

pub mod convergence;
pub mod eigen;
pub mod quadrature;

pub use convergence::{
    grid_convergence_study, halving_levels, morse_window, ConvergenceRow, ConvergenceTable,
};
pub use eigen::{eigenvalues, numerov_eigenvalues, GridSpec, Scheme, Units};
pub use quadrature::{integrate_halfline, integrate_line, GaussLaguerre, QuadratureSpec};
