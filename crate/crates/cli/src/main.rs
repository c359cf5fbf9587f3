//! qnlo: command-line front door for the nonlinear-oscillator toolkit.
//! Subcommands construct states, sweep photon statistics, emit figure data,
//! run the verification suites, and synthesize position-dependent-mass
//! profiles. Exit codes: 0 success, 1 config error, 2 verification failure,
//! 3 numeric failure.

mod config;
mod output;
mod spline;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use qnlo_core::pdm::{self, MassProfile};
use qnlo_core::states::{
    build_even, build_gis, build_gk, build_nlcs, build_odd, synthesize_position, GisParameters,
    StateVector, DEFAULT_N_MAX,
};
use qnlo_core::statistics::{self, Parity};
use qnlo_core::verify;
use qnlo_core::wavefunctions::grid;
use qnlo_core::Error as CoreError;

use config::{resolve, resolve_opt, FileConfig};
use output::{sig17, write_output, CsvWriter};

#[derive(Debug)]
enum AppError {
    Config(String),
    Verification,
    Numeric(String),
}

impl From<CoreError> for AppError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::QuadratureExhausted { .. } | CoreError::NonConvergence(_) => {
                AppError::Numeric(e.to_string())
            }
            other => AppError::Config(other.to_string()),
        }
    }
}

impl From<String> for AppError {
    fn from(m: String) -> Self {
        AppError::Config(m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Nlcs,
    Gk,
    Even,
    Odd,
    Gis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProfileArg {
    Rational,
    Custom,
}

#[derive(Debug, Args)]
struct StateParams {
    /// coherent-state family
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    #[arg(long, allow_hyphen_values = true)]
    alpha_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha_im: Option<f64>,
    /// squeezing control parameter of the intelligent states
    #[arg(long, allow_hyphen_values = true)]
    lambda_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    lambda_im: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    z_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    z_im: Option<f64>,
    /// Gazeau-Klauder temporal phase parameter
    #[arg(long, allow_hyphen_values = true)]
    gamma_phase: Option<f64>,
    /// truncation cap on the Fock expansion
    #[arg(long)]
    n_max: Option<u32>,
}

#[derive(Debug, Args)]
struct GridParams {
    #[arg(long, allow_hyphen_values = true)]
    x_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    x_max: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
}

#[derive(Parser, Debug)]
#[command(name = "qnlo", version, about = "nonlinear-oscillator coherent states and photon statistics")]
struct Cli {
    /// JSON config file; flags override file values
    #[arg(long, global = true)]
    config: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build one state and dump its amplitudes as JSON
    State {
        #[command(flatten)]
        params: StateParams,
        #[command(flatten)]
        grid: GridParams,
        /// output path for the JSON dump (stdout if omitted)
        #[arg(long)]
        out: Option<String>,
        /// also write the position profile (x, re, im, |psi|^2) here
        #[arg(long)]
        grid_out: Option<String>,
    },
    /// Sweep r = |alpha|^2 and emit mean_n, Q, g2 per route
    Stats {
        #[command(flatten)]
        params: StateParams,
        #[arg(long)]
        r_min: Option<f64>,
        #[arg(long)]
        r_max: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        r_step: Option<f64>,
        #[arg(long)]
        out: Option<String>,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
    /// Emit photon-statistics figure data: P(n) panels and r-sweeps per family
    Figures {
        /// output prefix; files <prefix>_fig{1,2,3}_{pn,sweep}.csv
        #[arg(long)]
        out_prefix: String,
        /// r at which the photon-number distribution panel is sampled
        #[arg(long, default_value_t = 10.0)]
        r_pn: f64,
        #[arg(long)]
        r_min: Option<f64>,
        #[arg(long)]
        r_max: Option<f64>,
        #[arg(long)]
        r_step: Option<f64>,
        #[arg(long)]
        n_max: Option<u32>,
    },
    /// Run the residual suites and emit a machine-readable report
    Verify {
        /// run a single suite (default: all)
        #[arg(long)]
        suite: Option<String>,
        /// blanket tolerance override for every asserting check
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        gamma_mass: Option<f64>,
        /// write the JSON report here (stdout if omitted)
        #[arg(long)]
        out: Option<String>,
    },
    /// Synthesize a coherent state over position-dependent-mass eigenfunctions
    Pdm {
        #[command(flatten)]
        params: StateParams,
        #[command(flatten)]
        grid: GridParams,
        #[arg(long, value_enum)]
        profile: Option<ProfileArg>,
        #[arg(long)]
        gamma_mass: Option<f64>,
        /// two-column text table (y, m(y)) for the custom profile
        #[arg(long)]
        mass_file: Option<String>,
        #[arg(long)]
        out: Option<String>,
    },
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let file = match &cli.config {
        Some(path) => match FileConfig::load(path) {
            Ok(f) => f,
            Err(m) => {
                eprintln!("error: {m}");
                return 1;
            }
        },
        None => FileConfig::default(),
    };
    match dispatch(cli.command, file) {
        Ok(()) => 0,
        Err(AppError::Config(m)) => {
            eprintln!("error: {m}");
            1
        }
        Err(AppError::Verification) => 2,
        Err(AppError::Numeric(m)) => {
            eprintln!("numeric failure: {m}");
            3
        }
    }
}

struct ResolvedState {
    family: FamilyArg,
    alpha: Complex64,
    lambda: Complex64,
    z: Complex64,
    gamma_phase: f64,
    n_max: u32,
}

fn resolve_state(params: &StateParams, file: &FileConfig) -> Result<ResolvedState, AppError> {
    let family = match resolve_opt(params.family, file.family.as_deref().map(parse_family).transpose()?) {
        Some(f) => f,
        None => return Err(AppError::Config("missing --family".into())),
    };
    Ok(ResolvedState {
        family,
        alpha: Complex64::new(
            resolve(params.alpha_re, file.alpha_re, 0.0),
            resolve(params.alpha_im, file.alpha_im, 0.0),
        ),
        lambda: Complex64::new(
            resolve(params.lambda_re, file.lambda_re, 1.0),
            resolve(params.lambda_im, file.lambda_im, 0.0),
        ),
        z: Complex64::new(
            resolve(params.z_re, file.z_re, 0.0),
            resolve(params.z_im, file.z_im, 0.0),
        ),
        gamma_phase: resolve(params.gamma_phase, file.gamma_phase, 0.0),
        n_max: resolve(params.n_max, file.n_max, DEFAULT_N_MAX),
    })
}

fn parse_family(s: &str) -> Result<FamilyArg, AppError> {
    match s {
        "nlcs" => Ok(FamilyArg::Nlcs),
        "gk" => Ok(FamilyArg::Gk),
        "even" => Ok(FamilyArg::Even),
        "odd" => Ok(FamilyArg::Odd),
        "gis" => Ok(FamilyArg::Gis),
        other => Err(AppError::Config(format!("unknown family '{other}'"))),
    }
}

fn build_state(r: &ResolvedState) -> Result<StateVector, AppError> {
    Ok(match r.family {
        FamilyArg::Nlcs => build_nlcs(r.alpha, r.n_max),
        FamilyArg::Gk => build_gk(r.z, r.gamma_phase, r.n_max),
        FamilyArg::Even => build_even(r.alpha, r.n_max),
        FamilyArg::Odd => build_odd(r.alpha, r.n_max),
        FamilyArg::Gis => build_gis(
            GisParameters {
                alpha: r.alpha,
                lambda: r.lambda,
            },
            r.n_max,
        )?,
    })
}

fn resolve_grid(g: &GridParams, file: &FileConfig) -> Result<Vec<f64>, AppError> {
    let x_min = resolve(g.x_min, file.x_min, -6.0);
    let x_max = resolve(g.x_max, file.x_max, 6.0);
    let points = resolve(g.points, file.points, 1201);
    if points < 2 || x_max <= x_min {
        return Err(AppError::Config(format!(
            "grid needs x_max > x_min and at least 2 points, got [{x_min}, {x_max}] with {points}"
        )));
    }
    Ok(grid(x_min, x_max, points))
}

fn dispatch(command: Command, file: FileConfig) -> Result<(), AppError> {
    match command {
        Command::State {
            params,
            grid: g,
            out,
            grid_out,
        } => {
            let resolved = resolve_state(&params, &file)?;
            let state = build_state(&resolved)?;
            let dump = serde_json::to_string(&state.dump())
                .map_err(|e| AppError::Config(e.to_string()))?;
            let out = resolve_opt(out, file.out.clone());
            write_output(out.as_deref(), &format!("{dump}\n"))?;
            if let Some(path) = grid_out {
                let xs = resolve_grid(&g, &file)?;
                let profile = synthesize_position(&state, &xs);
                let mut csv = CsvWriter::new("y,re,im,abs2");
                for (x, v) in xs.iter().zip(profile) {
                    csv.row(&[sig17(*x), sig17(v.re), sig17(v.im), sig17(v.norm_sqr())]);
                }
                write_output(Some(&path), &csv.finish())?;
            }
            Ok(())
        }
        Command::Stats {
            params,
            r_min,
            r_max,
            r_step,
            out,
            format,
        } => {
            let resolved = resolve_state(&params, &file)?;
            let r_min = resolve(r_min, file.r_min, 0.0);
            let r_max = resolve(r_max, file.r_max, 20.0);
            let r_step = resolve(r_step, file.r_step, 0.1);
            if r_min < 0.0 || r_step <= 0.0 || r_max < r_min {
                return Err(AppError::Config(format!(
                    "bad sweep bounds: r_min {r_min}, r_max {r_max}, r_step {r_step}"
                )));
            }
            let format = resolve(
                format,
                match file.format.as_deref() {
                    Some("csv") => Some(FormatArg::Csv),
                    Some("json") => Some(FormatArg::Json),
                    Some(other) => {
                        return Err(AppError::Config(format!("unknown format '{other}'")))
                    }
                    None => None,
                },
                FormatArg::Csv,
            );
            let rows = stats_rows(&resolved, r_min, r_max, r_step)?;
            let text = match format {
                FormatArg::Csv => {
                    let mut csv = CsvWriter::new("r,mean_n,q,g2,route");
                    for row in &rows {
                        csv.row(&[
                            sig17(row.r),
                            sig17(row.mean_n),
                            sig17(row.q),
                            sig17(row.g2),
                            row.route.to_string(),
                        ]);
                    }
                    csv.finish()
                }
                FormatArg::Json => {
                    let arr: Vec<serde_json::Value> = rows
                        .iter()
                        .map(|row| {
                            serde_json::json!({
                                "r": row.r,
                                "mean_n": row.mean_n,
                                "q": row.q,
                                "g2": row.g2,
                                "route": row.route,
                            })
                        })
                        .collect();
                    format!(
                        "{}\n",
                        serde_json::to_string(&arr).map_err(|e| AppError::Config(e.to_string()))?
                    )
                }
            };
            let out = resolve_opt(out, file.out.clone());
            Ok(write_output(out.as_deref(), &text)?)
        }
        Command::Figures {
            out_prefix,
            r_pn,
            r_min,
            r_max,
            r_step,
            n_max,
        } => {
            let r_min = resolve(r_min, file.r_min, 0.0);
            let r_max = resolve(r_max, file.r_max, 20.0);
            let r_step = resolve(r_step, file.r_step, 0.1);
            let n_max = resolve(n_max, file.n_max, DEFAULT_N_MAX);
            for (fig, family) in [(1, FamilyArg::Nlcs), (2, FamilyArg::Even), (3, FamilyArg::Odd)]
            {
                let resolved = ResolvedState {
                    family,
                    alpha: Complex64::new(0.0, 0.0),
                    lambda: Complex64::new(1.0, 0.0),
                    z: Complex64::new(0.0, 0.0),
                    gamma_phase: 0.0,
                    n_max,
                };
                let state = sweep_state(&resolved, r_pn)?;
                let mut pn_csv = CsvWriter::new("n,p");
                for (n, p) in statistics::photon_distribution(&state) {
                    pn_csv.row(&[n.to_string(), sig17(p)]);
                }
                write_output(
                    Some(&format!("{out_prefix}_fig{fig}_pn.csv")),
                    &pn_csv.finish(),
                )?;

                let rows = stats_rows(&resolved, r_min, r_max, r_step)?;
                let mut csv = CsvWriter::new("r,mean_n,q,g2,route");
                for row in &rows {
                    csv.row(&[
                        sig17(row.r),
                        sig17(row.mean_n),
                        sig17(row.q),
                        sig17(row.g2),
                        row.route.to_string(),
                    ]);
                }
                write_output(Some(&format!("{out_prefix}_fig{fig}_sweep.csv")), &csv.finish())?;
            }
            Ok(())
        }
        Command::Verify {
            suite,
            tol,
            seed,
            gamma_mass,
            out,
        } => {
            let seed = resolve(seed, file.seed, verify::DEFAULT_SEED);
            let gamma_mass = resolve(gamma_mass, file.gamma_mass, 2.0);
            let tol = resolve_opt(tol, file.tol);
            let mut report = match suite {
                Some(name) => {
                    let s = verify::run_suite(&name, seed, gamma_mass)?;
                    verify::VerifyReport {
                        seed,
                        gamma_mass,
                        passed: s.passed,
                        suites: vec![s],
                    }
                }
                None => verify::run_all(seed, gamma_mass)?,
            };
            if let Some(t) = tol {
                verify::apply_tolerance_override(&mut report, t);
            }
            for s in &report.suites {
                for c in &s.checks {
                    let status = if c.note.is_some() {
                        "NOTE"
                    } else if c.passed {
                        "PASS"
                    } else {
                        "FAIL"
                    };
                    eprintln!(
                        "{status} {}::{} residual {:.3e} tol {:.3e}{}",
                        s.suite,
                        c.name,
                        c.residual,
                        c.tolerance,
                        c.note.as_deref().map(|n| format!(" ({n})")).unwrap_or_default()
                    );
                }
                eprintln!(
                    "suite {}: {} ({} checks, max residual {:.3e})",
                    s.suite,
                    if s.passed { "PASS" } else { "FAIL" },
                    s.checks_run,
                    s.max_residual
                );
            }
            let json = serde_json::to_string_pretty(&report)
                .map_err(|e| AppError::Config(e.to_string()))?;
            let out = resolve_opt(out, file.out.clone());
            write_output(out.as_deref(), &format!("{json}\n"))?;
            if report.passed {
                Ok(())
            } else {
                Err(AppError::Verification)
            }
        }
        Command::Pdm {
            params,
            grid: g,
            profile,
            gamma_mass,
            mass_file,
            out,
        } => {
            let resolved = resolve_state(&params, &file)?;
            let profile_kind = resolve(
                profile,
                match file.profile.as_deref() {
                    Some("rational") => Some(ProfileArg::Rational),
                    Some("custom") => Some(ProfileArg::Custom),
                    Some(other) => {
                        return Err(AppError::Config(format!("unknown profile '{other}'")))
                    }
                    None => None,
                },
                ProfileArg::Rational,
            );
            let mass_profile = match profile_kind {
                ProfileArg::Rational => {
                    MassProfile::rational(resolve(gamma_mass, file.gamma_mass, 2.0))?
                }
                ProfileArg::Custom => {
                    let path = resolve_opt(mass_file, file.mass_file.clone()).ok_or_else(|| {
                        AppError::Config("custom profile needs --mass-file".into())
                    })?;
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| AppError::Config(format!("cannot read {path}: {e}")))?;
                    let (xs, ys) = spline::parse_mass_table(&text)?;
                    let spline = spline::CubicSpline::new(xs, ys)?;
                    MassProfile::custom(move |y| spline.eval(y))
                }
            };
            let state = build_state(&resolved)?;
            let ys = resolve_grid(&g, &file)?;
            let profile_vals = pdm::pdm_state(&state, &mass_profile, &ys)?;
            let mut csv = CsvWriter::new("y,re,im,abs2");
            for (y, v) in ys.iter().zip(profile_vals) {
                csv.row(&[sig17(*y), sig17(v.re), sig17(v.im), sig17(v.norm_sqr())]);
            }
            let out = resolve_opt(out, file.out.clone());
            Ok(write_output(out.as_deref(), &csv.finish())?)
        }
    }
}

#[derive(Debug)]
struct StatsRow {
    r: f64,
    mean_n: f64,
    q: f64,
    g2: f64,
    route: &'static str,
}

fn sweep_state(resolved: &ResolvedState, r: f64) -> Result<StateVector, AppError> {
    let amp = Complex64::new(r.sqrt(), 0.0);
    let swept = ResolvedState {
        family: resolved.family,
        alpha: amp,
        lambda: resolved.lambda,
        z: amp,
        gamma_phase: resolved.gamma_phase,
        n_max: resolved.n_max,
    };
    build_state(&swept)
}

fn stats_rows(
    resolved: &ResolvedState,
    r_min: f64,
    r_max: f64,
    r_step: f64,
) -> Result<Vec<StatsRow>, AppError> {
    let mut rows = Vec::new();
    let steps = ((r_max - r_min) / r_step).round();
    if !steps.is_finite() || steps > 1e7 {
        return Err(AppError::Config(format!(
            "sweep would take {steps} steps; reduce the range or raise r_step"
        )));
    }
    let steps = steps as usize;
    for k in 0..=steps {
        let r = r_min + k as f64 * r_step;
        if r > r_max + 1e-12 {
            break;
        }
        let state = sweep_state(resolved, r)?;
        let m = statistics::moments(&state);
        rows.push(StatsRow {
            r,
            mean_n: m.mean_n,
            q: statistics::mandel_q(&state),
            g2: statistics::g2(&state),
            route: "direct",
        });
        match resolved.family {
            FamilyArg::Nlcs | FamilyArg::Gk => {
                let cf = statistics::nlcs_closed_forms(r)?;
                rows.push(StatsRow {
                    r,
                    mean_n: cf.mean_n,
                    q: cf.mandel_q,
                    g2: cf.g2,
                    route: "closed",
                });
                if r > 0.0 {
                    let nf = statistics::stats_from_normalization(r)?;
                    rows.push(StatsRow {
                        r,
                        mean_n: nf.mean_n,
                        q: nf.mandel_q,
                        g2: nf.g2,
                        route: "normalization",
                    });
                }
            }
            FamilyArg::Even | FamilyArg::Odd => {
                let parity = if resolved.family == FamilyArg::Even {
                    Parity::Even
                } else {
                    Parity::Odd
                };
                let cf = statistics::cat_closed_forms(r, parity)?;
                rows.push(StatsRow {
                    r,
                    mean_n: cf.mean_n,
                    q: cf.mandel_q,
                    g2: cf.g2,
                    route: "closed",
                });
            }
            FamilyArg::Gis => {}
        }
    }
    Ok(rows)
}
