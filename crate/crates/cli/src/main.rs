//! `morse-laplace`: spectra, wavefunctions, transform series and the invariant suite.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.

mod report;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use morse_laplace::laplace::{
    build_transform, default_c0, initial_value, inverse_transform, ode_residual,
};
use morse_laplace::numerics::{integrate_line, morse_window, numerov_eigenvalues, GridSpec, Units};
use morse_laplace::verify::{self, VerifyOptions};
use morse_laplace::{morse, parse_rational, rational_to_string, MorseParams, Rational};

use report::{
    fixed, Csv, GridOut, NumerovCheck, ParamsOut, Sample, SpectrumReport, StateRow,
    TransformReport, VerifyReport, WavefunctionReport, SCHEMA_VERSION,
};

const NUMEROV_TOLERANCE: f64 = 1e-4;
const NORM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Parser)]
#[command(
    name = "morse-laplace",
    version,
    about = "Generalized Morse bound states via the Laplace transform"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form bound-state energies, optionally checked against matrix Numerov.
    #[command(allow_negative_numbers = true)]
    Spectrum {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Compare against matrix-Numerov eigenvalues.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Samples of the normalized eigenfunction ψ_n.
    #[command(allow_negative_numbers = true)]
    Wavefunction {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        x_min: Option<f64>,
        #[arg(long)]
        x_max: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exact transform-space series of the degree-n polynomial solution.
    #[command(allow_negative_numbers = true)]
    Transform {
        #[arg(long)]
        n: usize,
        /// Rational, e.g. 3, 7/2 or 1.1.
        #[arg(long)]
        b: String,
        /// Leading coefficient; defaults to (-1)^n.
        #[arg(long)]
        c0: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Runs every invariant group.
    #[command(allow_negative_numbers = true)]
    Verify {
        /// Degrees up to 8 instead of 20.
        #[arg(long)]
        quick: bool,
        /// Relative shift applied to the energies before the residual check.
        #[arg(long, default_value_t = 0.0)]
        perturb_energy: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
struct ParamArgs {
    #[arg(long)]
    v1: f64,
    #[arg(long)]
    v2: f64,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
}

impl ParamArgs {
    fn params(&self) -> Result<MorseParams> {
        let p = MorseParams::new(self.v1, self.v2, self.alpha).with_units(self.mass, self.hbar);
        p.validate_reducible()?;
        Ok(p)
    }
}

#[derive(Debug, Args)]
struct GridArgs {
    #[arg(long)]
    x_min: Option<f64>,
    #[arg(long)]
    x_max: Option<f64>,
    /// Defaults to 4000, or more when the window needs a finer grid.
    #[arg(long)]
    grid_points: Option<usize>,
}

/// Smallest point count keeping `h²(2m/ħ²)(V_max - V_min)/12 ≤ 0.1`, and at least 4000.
fn default_grid_points(p: &MorseParams, x_min: f64, x_max: f64) -> usize {
    let v_max = p.potential(x_min).max(p.potential(x_max));
    let v_min = -p.v1 * p.v1 / (4.0 * p.v2);
    let k = 2.0 * p.mass / (p.hbar * p.hbar);
    let h_max = (1.2 / (k * (v_max - v_min))).sqrt();
    let needed = ((x_max - x_min) / h_max).ceil() as usize + 1;
    needed.max(4000)
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

impl OutputArgs {
    fn emit(&self, json: impl serde::Serialize, csv: impl FnOnce() -> String) -> Result<()> {
        let text = match self.format {
            Format::Json => serde_json::to_string_pretty(&json)? + "\n",
            Format::Csv => csv(),
        };
        match &self.output {
            Some(path) => {
                fs::write(path, text).with_context(|| format!("writing {}", path.display()))
            }
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(text.as_bytes())?;
                stdout.flush()?;
                Ok(())
            }
        }
    }
}

enum Outcome {
    Ok,
    VerificationFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Spectrum {
            params,
            grid,
            verify,
            output,
        } => spectrum(&params.params()?, &grid, verify, &output),
        Command::Wavefunction {
            params,
            n,
            samples,
            x_min,
            x_max,
            output,
        } => wavefunction(&params.params()?, n, samples, x_min, x_max, &output),
        Command::Transform { n, b, c0, output } => transform(n, &b, c0.as_deref(), &output),
        Command::Verify {
            quick,
            perturb_energy,
            output,
        } => run_verify(quick, perturb_energy, &output),
    }
}

fn spectrum(
    p: &MorseParams,
    grid: &GridArgs,
    verify: bool,
    output: &OutputArgs,
) -> Result<Outcome> {
    let states = morse::spectrum(p);
    let mut rows: Vec<StateRow> = states
        .iter()
        .map(|st| StateRow {
            n: st.n,
            s: st.s_exponent,
            energy: st.energy,
            numerov: None,
            rel_err: None,
        })
        .collect();

    let mut check = None;
    if verify && !states.is_empty() {
        let (auto_min, auto_max) = morse_window(p)?;
        let (lo, hi) = (
            grid.x_min.unwrap_or(auto_min),
            grid.x_max.unwrap_or(auto_max),
        );
        let points = grid
            .grid_points
            .unwrap_or_else(|| default_grid_points(p, lo, hi));
        let g = GridSpec::new(lo, hi, points)?;
        let units = Units {
            mass: p.mass,
            hbar: p.hbar,
        };
        let numeric = numerov_eigenvalues(|x| p.potential(x), &g, states.len(), units)?;
        for (row, e) in rows.iter_mut().zip(&numeric) {
            row.numerov = Some(*e);
            row.rel_err = Some(((e - row.energy) / row.energy).abs());
        }
        let passed = rows
            .iter()
            .all(|r| r.rel_err.is_some_and(|e| e <= NUMEROV_TOLERANCE));
        check = Some(NumerovCheck {
            grid: GridOut {
                x_min: g.x_min,
                x_max: g.x_max,
                n_points: g.n_points,
            },
            tolerance: NUMEROV_TOLERANCE,
            passed,
        });
    }
    let passed = check.as_ref().is_none_or(|c| c.passed);

    let report = SpectrumReport {
        schema_version: SCHEMA_VERSION,
        command: "spectrum",
        params: p.into(),
        well_strength: p.well_strength()?,
        n_max: states.len(),
        numerov: check,
        states: rows,
    };
    output.emit(&report, || {
        let mut header = vec!["n", "S", "energy"];
        if report.numerov.is_some() {
            header.extend(["numerov", "rel_err"]);
        }
        let mut csv = Csv::new(&header);
        for r in &report.states {
            let mut fields = vec![r.n.to_string(), fixed(r.s), fixed(r.energy)];
            fields.extend(r.numerov.map(fixed));
            fields.extend(r.rel_err.map(fixed));
            csv.row(fields);
        }
        csv.finish()
    })?;
    Ok(if passed {
        Outcome::Ok
    } else {
        Outcome::VerificationFailed
    })
}

fn wavefunction(
    p: &MorseParams,
    n: usize,
    samples: usize,
    x_min: Option<f64>,
    x_max: Option<f64>,
    output: &OutputArgs,
) -> Result<Outcome> {
    if samples < 2 {
        bail!("--samples must be at least 2");
    }
    let st = morse::wavefunction(p, n)?;
    let (auto_min, auto_max) = st.window();
    let (lo, hi) = (x_min.unwrap_or(auto_min), x_max.unwrap_or(auto_max));
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        bail!("x range [{lo}, {hi}] is empty");
    }
    let points: Vec<Sample> = (0..samples)
        .map(|i| {
            let x = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
            Sample {
                x,
                xi: st.xi(x),
                psi: st.psi(x),
            }
        })
        .collect();
    let norm_check = integrate_line(|x| st.psi(x).powi(2), NORM_TOLERANCE)?;
    let report = WavefunctionReport {
        schema_version: SCHEMA_VERSION,
        command: "wavefunction",
        params: ParamsOut::from(p),
        n,
        s: st.s_exponent,
        energy: st.energy,
        norm_check,
        sign_changes: morse::count_sign_changes(points.iter().map(|s| s.psi)),
        samples: points,
    };
    output.emit(&report, || {
        let mut csv = Csv::new(&["x", "xi", "psi"]);
        for s in &report.samples {
            csv.row([fixed(s.x), fixed(s.xi), fixed(s.psi)]);
        }
        csv.comment(&format!("norm_check,{}", fixed(report.norm_check)));
        csv.finish()
    })?;
    Ok(Outcome::Ok)
}

fn transform(n: usize, b: &str, c0: Option<&str>, output: &OutputArgs) -> Result<Outcome> {
    let b = parse_rational(b).context("--b")?;
    let c0 = match c0 {
        Some(text) => parse_rational(text).context("--c0")?,
        None => default_c0::<Rational>(n),
    };
    let f = build_transform(n, &b, &c0)?;
    let a = -Rational::from_integer((n as i64).into());
    let phi = inverse_transform(&f);
    let phi0 = phi.constant_term();
    let residual = ode_residual(&f, &a, &b, &initial_value(&f));
    let report = TransformReport {
        schema_version: SCHEMA_VERSION,
        command: "transform",
        n,
        a: rational_to_string(&a),
        b: rational_to_string(&b),
        c0: rational_to_string(&c0),
        pole_order: f.pole_order(),
        coeffs: f.coeffs().iter().map(rational_to_string).collect(),
        residue: rational_to_string(f.residue()),
        phi0: rational_to_string(&phi0),
        phi: phi.coeffs().iter().map(rational_to_string).collect(),
        ode_residual: if residual.is_zero() { "pass" } else { "fail" },
    };
    output.emit(&report, || {
        let mut csv = Csv::new(&["j", "power", "coefficient"]);
        for (j, c) in report.coeffs.iter().enumerate() {
            csv.row([
                j.to_string(),
                (j as i64 - n as i64 - 1).to_string(),
                c.clone(),
            ]);
        }
        csv.finish()
    })?;
    Ok(if residual.is_zero() {
        Outcome::Ok
    } else {
        Outcome::VerificationFailed
    })
}

fn run_verify(quick: bool, perturb_energy: f64, output: &OutputArgs) -> Result<Outcome> {
    if !perturb_energy.is_finite() {
        bail!("--perturb-energy must be finite");
    }
    let suite = verify::run(&VerifyOptions {
        quick,
        perturb_energy,
    });
    let report = VerifyReport::new(&suite, quick, perturb_energy);
    output.emit(&report, || {
        let mut csv = Csv::new(&["group", "check", "measured", "tolerance", "passed"]);
        for g in &report.groups {
            for c in &g.checks {
                csv.row([
                    g.name.to_string(),
                    c.name.to_string(),
                    fixed(c.measured),
                    fixed(c.tolerance),
                    c.passed.to_string(),
                ]);
            }
        }
        csv.finish()
    })?;
    Ok(if suite.passed {
        Outcome::Ok
    } else {
        Outcome::VerificationFailed
    })
}
