//! Command-line front end. [`run`] never panics on user input and returns
//! the process exit code: 0 success, 1 I/O failure, 2 parameter or usage
//! error, 3 a verification check outside tolerance.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::coherent::{coherent_samples, CoherentMode, CoherentParams, CoherentSpinor};
use crate::config::{ConfigValues, ModelConfig};
use crate::error::{Error, Result};
use crate::geometry;
use crate::model::Sign;
use crate::output::{float, to_json, Csv, SCHEMA};
use crate::radial::{log_space, RadialState};
use crate::spectrum::{energy_level, spectrum_sweep};
use crate::verify::{self, Suite, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "cosmic-dirac",
    version,
    about = "Dirac bound states, su(1,1) structure and coherent states in cosmic-string spacetime"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Energy levels n_r = 0..=nrmax.
    #[command(allow_negative_numbers = true)]
    Spectrum {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 5)]
        nrmax: u32,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Normalized radial eigenfunctions as CSV.
    #[command(allow_negative_numbers = true)]
    Wavefunction {
        #[command(flatten)]
        model: ModelArgs,
        /// Radial quantum number; overrides n_r from the config.
        #[arg(long)]
        nr: Option<u32>,
        /// Outer radius; defaults to 30/epsilon.
        #[arg(long)]
        rmax: Option<f64>,
        #[arg(long, default_value_t = 400)]
        points: usize,
        /// Append the eight real components of the full spinor.
        #[arg(long)]
        full: bool,
        #[arg(long, default_value_t = 0.0)]
        t: f64,
        #[arg(long, default_value_t = 0.0)]
        phi: f64,
        #[arg(long, default_value_t = 0.0)]
        z: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coherent-state spinor on a log-spaced radial grid as CSV.
    #[command(allow_negative_numbers = true)]
    Coherent {
        #[command(flatten)]
        model: ModelArgs,
        /// Real coherent parameter in [0, 1).
        #[arg(long)]
        xi: f64,
        #[arg(long, value_enum, default_value_t = ModeArg::Closed)]
        mode: ModeArg,
        /// Series truncation.
        #[arg(long = "N", default_value_t = crate::coherent::DEFAULT_TRUNCATION)]
        truncation: usize,
        #[arg(long)]
        rmax: Option<f64>,
        #[arg(long, default_value_t = 400)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Clifford residual and Dirac matrices at one point.
    #[command(allow_negative_numbers = true)]
    Clifford {
        #[arg(long)]
        rho: f64,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        phi: f64,
    },
    /// Run verification suites and print a JSON report.
    #[command(allow_negative_numbers = true)]
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 2)]
        nrmax: u32,
        /// Grid points for the su(1,1) checks.
        #[arg(long, default_value_t = crate::su11::checks::DEFAULT_POINTS)]
        grid: usize,
        /// Print the check records (or the spectrum table) as CSV.
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Closed,
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    All,
    Clifford,
    Specfun,
    Spectrum,
    Su11,
    Coherent,
    Normalization,
    Eigenfunctions,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::All => Suite::ALL.to_vec(),
            SuiteArg::Clifford => vec![Suite::Clifford],
            SuiteArg::Specfun => vec![Suite::Specfun],
            SuiteArg::Spectrum => vec![Suite::Spectrum],
            SuiteArg::Su11 => vec![Suite::Su11],
            SuiteArg::Coherent => vec![Suite::Coherent],
            SuiteArg::Normalization => vec![Suite::Normalization],
            SuiteArg::Eigenfunctions => vec![Suite::Eigenfunctions],
        }
    }
}

#[derive(Debug, Args)]
struct FormatArgs {
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
}

/// Model parameters: a config file, overridden key by key by flags.
#[derive(Debug, Args)]
struct ModelArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long = "M")]
    mass: Option<f64>,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long)]
    s1: Option<f64>,
    #[arg(long)]
    s2: Option<f64>,
    #[arg(long)]
    m: Option<i64>,
    #[arg(long)]
    k: Option<f64>,
    #[arg(long)]
    s: Option<i64>,
    #[arg(long = "n_r")]
    n_r: Option<u32>,
}

impl ModelArgs {
    fn values(&self) -> Result<ConfigValues> {
        let file = match &self.config {
            Some(p) => ConfigValues::from_file(p)?,
            None => ConfigValues::default(),
        };
        let flags = ConfigValues {
            mass: self.mass,
            omega: self.omega,
            rho: self.rho,
            s1: self.s1,
            s2: self.s2,
            m: self.m,
            k: self.k,
            s: self.s,
            n_r: self.n_r,
        };
        Ok(file.overlay(&flags))
    }

    fn resolve(&self) -> Result<ModelConfig> {
        self.values()?.resolve()
    }

    /// `None` when neither a file nor any flag was given.
    fn resolve_optional(&self) -> Result<Option<ModelConfig>> {
        let v = self.values()?;
        if v.is_empty() {
            Ok(None)
        } else {
            v.resolve().map(Some)
        }
    }
}

/// Text to emit and whether every check passed.
struct Outcome {
    text: String,
    out: Option<PathBuf>,
    pass: bool,
}

impl Outcome {
    fn stdout(text: String) -> Self {
        Outcome {
            text,
            out: None,
            pass: true,
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

/// Parse `argv` (including the program name), execute, and return the exit
/// code. Output goes to `stdout`, diagnostics to `stderr`.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == EXIT_OK { stdout } else { stderr };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let outcome = match execute(cli.command) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let written = match &outcome.out {
        Some(path) => {
            std::fs::write(path, &outcome.text).map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display())))
        }
        None => stdout.write_all(outcome.text.as_bytes()).map_err(Error::from),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_IO;
    }
    if outcome.pass {
        EXIT_OK
    } else {
        let _ = writeln!(stderr, "verification failed: at least one check is outside tolerance");
        EXIT_VERIFY
    }
}

fn execute(command: Command) -> Result<Outcome> {
    match command {
        Command::Spectrum { model, nrmax, format } => spectrum(&model.resolve()?, nrmax, format.csv),
        Command::Wavefunction {
            model,
            nr,
            rmax,
            points,
            full,
            t,
            phi,
            z,
            out,
        } => {
            let cfg = model.resolve()?;
            let text = wavefunction(
                &cfg,
                nr.unwrap_or(cfg.qn.n_r),
                rmax,
                points,
                full.then_some((t, phi, z)),
            )?;
            Ok(Outcome { text, out, pass: true })
        }
        Command::Coherent {
            model,
            xi,
            mode,
            truncation,
            rmax,
            points,
            out,
        } => {
            let mode = match mode {
                ModeArg::Closed => CoherentMode::Closed,
                ModeArg::Series => CoherentMode::Series,
            };
            let text = coherent(&model.resolve()?, xi, mode, truncation, rmax, points)?;
            Ok(Outcome { text, out, pass: true })
        }
        Command::Clifford { rho, r, phi } => clifford(rho, r, phi).map(Outcome::stdout),
        Command::Verify {
            suite,
            model,
            nrmax,
            grid,
            csv,
        } => {
            let opts = VerifyOptions {
                nrmax,
                su11_points: grid,
                ..VerifyOptions::default()
            };
            verify_command(suite, model.resolve_optional()?.as_ref(), &opts, csv)
        }
    }
}

fn spectrum(cfg: &ModelConfig, nrmax: u32, csv: bool) -> Result<Outcome> {
    let levels = spectrum_sweep(&cfg.params, &cfg.qn, nrmax, Sign::Plus);
    let e = |l: &crate::spectrum::EnergyLevel| l.energy.map(f64::abs);
    if csv {
        let mut t = Csv::new(&[
            "n_r", "gamma", "alpha", "epsilon", "E_plus", "E_minus", "valid", "reason",
        ]);
        for l in &levels {
            let ep = e(l).map_or("nan".into(), float);
            let em = e(l).map_or("nan".into(), |v| float(-v));
            t.row(&[
                l.qn.n_r.to_string(),
                float(l.gamma),
                float(l.alpha),
                float(l.epsilon),
                ep,
                em,
                l.is_valid().to_string(),
                l.reason_codes(),
            ]);
        }
        return Ok(Outcome::stdout(t.finish()));
    }
    let rows: Vec<_> = levels
        .iter()
        .map(|l| {
            json!({
                "n_r": l.qn.n_r,
                "gamma": l.gamma,
                "alpha": l.alpha,
                "epsilon": l.epsilon,
                "E_plus": e(l),
                "E_minus": e(l).map(|v| -v),
                "valid": l.is_valid(),
                "reason": l.reasons,
            })
        })
        .collect();
    let doc = json!({"schema": SCHEMA, "model": cfg, "levels": rows});
    Ok(Outcome::stdout(to_json(&doc)?))
}

fn radii_for(epsilon: f64, rmax: Option<f64>, points: usize) -> Result<Vec<f64>> {
    let rmax = rmax.unwrap_or(30.0 / epsilon);
    log_space(1e-4, rmax, points)
}

fn wavefunction(
    cfg: &ModelConfig,
    n_r: u32,
    rmax: Option<f64>,
    points: usize,
    full: Option<(f64, f64, f64)>,
) -> Result<String> {
    let level = energy_level(&cfg.params, &cfg.qn.with_n_r(n_r), Sign::Plus);
    let (state, _) = RadialState::normalized(&level)?;
    let radii = radii_for(state.epsilon(), rmax, points)?;
    let mut header = vec!["r", "F", "G", "F_plus", "G_minus"];
    const FULL: [&str; 8] = [
        "psi1_re", "psi1_im", "psi2_re", "psi2_im", "psi3_re", "psi3_im", "psi4_re", "psi4_im",
    ];
    if full.is_some() {
        header.extend(FULL);
    }
    let mut t = Csv::new(&header);
    for r in radii {
        let s = state.sample(r);
        let mut row = vec![float(r), float(s.f), float(s.g), float(s.f_plus), float(s.g_minus)];
        if let Some((time, phi, z)) = full {
            for c in state.full_spinor(time, r, phi, z)? {
                row.push(float(c.re));
                row.push(float(c.im));
            }
        }
        t.row(&row);
    }
    Ok(t.finish())
}

fn coherent(
    cfg: &ModelConfig,
    xi: f64,
    mode: CoherentMode,
    truncation: usize,
    rmax: Option<f64>,
    points: usize,
) -> Result<String> {
    let cp = CoherentParams::new(xi.into(), cfg.params, cfg.qn, Sign::Plus, truncation)?;
    let spinor = CoherentSpinor::new(&cp)?;
    let decay = spinor.epsilon * (1.0 + xi) / (1.0 - xi);
    let radii = radii_for(decay, rmax, points)?;
    let mut t = Csv::new(&["r", "F_coh", "G_coh", "F_plus", "G_minus"]);
    for s in coherent_samples(&cp, mode, &radii)? {
        t.row(&[
            float(s.r),
            float(s.f_coh),
            float(s.g_coh),
            float(s.f_plus),
            float(s.g_minus),
        ]);
    }
    Ok(t.finish())
}

fn clifford(rho: f64, r: f64, phi: f64) -> Result<String> {
    let frame = geometry::build_frame(rho, r, phi)?;
    let complex = |m: &geometry::Matrix4| -> Vec<Vec<[f64; 2]>> {
        m.iter().map(|row| row.iter().map(|z| [z.re, z.im]).collect()).collect()
    };
    let doc = json!({
        "schema": SCHEMA,
        "rho": rho,
        "r": r,
        "phi": phi,
        "clifford_residual": geometry::clifford_residual(&frame),
        "tetrad_residual": frame.tetrad_residual(),
        "printed_variant_residual": geometry::printed_variant_residual(rho, r, phi)?,
        "tetrad": frame.tetrad,
        "metric_inverse": frame.metric_inv,
        "gammas": frame.gammas.iter().map(complex).collect::<Vec<_>>(),
        "spin_connection_phi": complex(&frame.spin_connection_phi),
    });
    to_json(&doc)
}

fn verify_command(suite: SuiteArg, model: Option<&ModelConfig>, opts: &VerifyOptions, csv: bool) -> Result<Outcome> {
    let report = verify::run(&suite.suites(), model, opts)?;
    let text = if !csv {
        to_json(&report)?
    } else if suite == SuiteArg::Spectrum {
        let mut t = Csv::new(&[
            "n_r",
            "epsilon_algebraic",
            "epsilon_numeric",
            "relative_gap",
            "eigenvector_overlap",
            "convergence_ratio",
        ]);
        let rows = report.suites[0]
            .table
            .as_ref()
            .and_then(|v| v.as_array())
            .cloned()
            .unwrap_or_default();
        for c in rows {
            let num = |k: &str| c[k].as_f64().map_or("nan".into(), float);
            t.row(&[
                c["n_r"].to_string(),
                num("epsilon_algebraic"),
                num("epsilon_numeric"),
                num("relative_gap"),
                num("eigenvector_overlap"),
                num("convergence_ratio"),
            ]);
        }
        t.finish()
    } else {
        let mut t = Csv::new(&["suite", "check", "residual", "tolerance", "kind", "pass"]);
        for rec in report.suites.iter().flat_map(|s| &s.checks) {
            let kind = serde_json::to_value(rec.kind)
                .expect("unit enum")
                .as_str()
                .unwrap_or_default()
                .to_string();
            t.row(&[
                rec.suite.clone(),
                format!("\"{}\"", rec.check.replace('"', "\"\"")),
                float(rec.residual),
                float(rec.tolerance),
                kind,
                rec.pass.to_string(),
            ]);
        }
        t.finish()
    };
    Ok(Outcome {
        text,
        out: None,
        pass: report.pass,
    })
}
