//! Command-line front end. Every subcommand samples one closed-form solution
//! on `[0, T]` and writes `<command>.csv`, a `<command>.csv.meta` sidecar and,
//! with `--svg`, `<command>.svg` into the output directory. `converge` writes
//! the convergence table instead.
//!
//! The derivator comes from `--preset` (see [`crate::presets`]) or from a
//! config file passed with `--derivator`; the file format is documented in
//! [`config`]. The output directory is `--output-dir`, else the
//! `STIELTJES_OUTPUT_DIR` environment variable, else `./out`.
//!
//! Exit codes: 0 success, 1 configuration or i/o error, 2 solver or domain
//! error, 3 quadrature accuracy error.

pub mod config;
pub mod output;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::derivator::Derivator;
use crate::error::{Error, Result};
use crate::first_order::{g_exp, g_sin_cos, solve_first_order};
use crate::oscillator::{solve_oscillator, solve_resonance, OscillatorSpec};
use crate::presets;
use crate::scheme::{convergence_study, OscillatorSystem};
use crate::second_order::{solve_homogeneous, solve_nonhomogeneous, SecondOrderProblem};
use crate::stieltjes_integral::Integrand;
use output::Sample;

pub const OUTPUT_DIR_ENV: &str = "STIELTJES_OUTPUT_DIR";

/// Accepts decimals and simple fractions such as `1/27`.
pub fn parse_real(s: &str) -> std::result::Result<f64, String> {
    let v = match s.split_once('/') {
        Some((a, b)) => {
            let a: f64 = a.trim().parse().map_err(|_| format!("'{s}' is not a number"))?;
            let b: f64 = b.trim().parse().map_err(|_| format!("'{s}' is not a number"))?;
            a / b
        }
        None => s.trim().parse().map_err(|_| format!("'{s}' is not a number"))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("'{s}' is not finite"))
    }
}

#[derive(Parser, Debug, Clone)]
#[command(name = "stieltjes", version, about = "Closed-form and numerical solutions of Stieltjes differential equations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Named derivator: identity, example1-g1, example1-g2, table1.
    #[arg(long, conflicts_with = "derivator", default_value = "example1-g2")]
    pub preset: String,
    /// Derivator config file (`stieltjes-derivator v1` format).
    #[arg(long)]
    pub derivator: Option<PathBuf>,
    /// Jump size for the example presets.
    #[arg(long, value_parser = parse_real, default_value = "1/3")]
    pub l: f64,
    /// Window end T for the presets.
    #[arg(long = "horizon", visible_alias = "T", value_parser = parse_real, default_value_t = presets::TABLE1_HORIZON)]
    pub horizon: f64,
    #[arg(long)]
    pub output_dir: Option<PathBuf>,
    /// Number of uniform sample points (jump times are added).
    #[arg(long, default_value_t = 801)]
    pub samples: usize,
    /// Also write an SVG line plot.
    #[arg(long)]
    pub svg: bool,
}

#[derive(Args, Debug, Clone)]
pub struct OscArgs {
    #[arg(long, value_parser = parse_real, default_value_t = presets::EXAMPLE1_OMEGA0, allow_negative_numbers = true)]
    pub omega0: f64,
    #[arg(long, value_parser = parse_real, default_value_t = presets::EXAMPLE1_X0, allow_negative_numbers = true)]
    pub x0: f64,
    #[arg(long, value_parser = parse_real, default_value_t = presets::EXAMPLE1_V0, allow_negative_numbers = true)]
    pub v0: f64,
    /// Runs one scenario per jump size, concurrently; needs a preset.
    #[arg(long, value_delimiter = ',', value_parser = parse_real)]
    pub l_sweep: Vec<f64>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// g-exponential exp_g(β; 0, t).
    Exp {
        #[command(flatten)]
        common: Common,
        #[arg(long = "beta-re", visible_alias = "beta", value_parser = parse_real, default_value_t = 0.0, allow_negative_numbers = true)]
        beta_re: f64,
        #[arg(long = "beta-im", value_parser = parse_real, default_value_t = 0.0, allow_negative_numbers = true)]
        beta_im: f64,
    },
    /// g-sine and g-cosine with frequency b (value = cos_g, value_im = sin_g).
    Sincos {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = parse_real, default_value_t = 1.0, allow_negative_numbers = true)]
        b: f64,
    },
    /// v'_g = βv + f with constant f.
    Solve1 {
        #[command(flatten)]
        common: Common,
        #[arg(long = "beta-re", value_parser = parse_real, default_value_t = -1.0, allow_negative_numbers = true)]
        beta_re: f64,
        #[arg(long = "beta-im", value_parser = parse_real, default_value_t = 0.0, allow_negative_numbers = true)]
        beta_im: f64,
        #[arg(long, value_parser = parse_real, default_value_t = 1.0, allow_negative_numbers = true)]
        v0: f64,
        #[arg(long, value_parser = parse_real, default_value_t = 0.0, allow_negative_numbers = true)]
        source: f64,
    },
    /// v''_g + P v'_g + Q v = f with constant f.
    Solve2 {
        #[command(flatten)]
        common: Common,
        #[arg(long = "P", visible_alias = "p", value_parser = parse_real, default_value_t = 0.0, allow_negative_numbers = true)]
        p: f64,
        #[arg(long = "Q", visible_alias = "q", value_parser = parse_real, default_value_t = 4.0, allow_negative_numbers = true)]
        q: f64,
        #[arg(long, value_parser = parse_real, default_value_t = 1.0, allow_negative_numbers = true)]
        x0: f64,
        #[arg(long, value_parser = parse_real, default_value_t = 1.0, allow_negative_numbers = true)]
        v0: f64,
        #[arg(long, value_parser = parse_real, default_value_t = 0.0, allow_negative_numbers = true)]
        source: f64,
    },
    /// Damped harmonic oscillator.
    Oscillator {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        osc: OscArgs,
        #[arg(long, value_parser = parse_real, default_value_t = 0.0, allow_negative_numbers = true)]
        zeta: f64,
    },
    /// Undamped oscillator forced by cos_g(ω₀; 0, t).
    Resonance {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        osc: OscArgs,
    },
    /// Predictor-corrector convergence study against the resonance solution.
    Converge {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        osc: OscArgs,
        /// Step sizes.
        #[arg(long, value_delimiter = ',', value_parser = parse_real, default_value = "1e-1,1e-2,1e-3,1e-4")]
        h: Vec<f64>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Exp { .. } => "exp",
            Command::Sincos { .. } => "sincos",
            Command::Solve1 { .. } => "solve1",
            Command::Solve2 { .. } => "solve2",
            Command::Oscillator { .. } => "oscillator",
            Command::Resonance { .. } => "resonance",
            Command::Converge { .. } => "converge",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::Exp { common, .. }
            | Command::Sincos { common, .. }
            | Command::Solve1 { common, .. }
            | Command::Solve2 { common, .. }
            | Command::Oscillator { common, .. }
            | Command::Resonance { common, .. }
            | Command::Converge { common, .. } => common,
        }
    }
}

/// Exit code for an error: 1 config/io, 3 accuracy, 2 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::Io(_) => 1,
        Error::Accuracy { .. } => 3,
        _ => 2,
    }
}

impl Common {
    fn derivator_with_l(&self, l: f64) -> Result<Derivator> {
        match &self.derivator {
            Some(path) => config::load_derivator(path),
            None => presets::by_name(&self.preset, l, self.horizon),
        }
    }

    fn derivator(&self) -> Result<Derivator> {
        self.derivator_with_l(self.l)
    }

    pub fn resolved_output_dir(&self) -> PathBuf {
        self.output_dir
            .clone()
            .or_else(|| std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("out"))
    }

    fn source_description(&self) -> String {
        match &self.derivator {
            Some(p) => format!("file {}", p.display()),
            None => format!("preset {}", self.preset),
        }
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn real_sampler(f: impl Fn(f64) -> Result<f64>) -> impl Fn(f64) -> Result<Complex64> {
    move |t| f(t).map(c)
}

/// Samples one command on `d`. Returns the rows for the CSV.
fn sample_command(cmd: &Command, d: &Derivator, n: usize) -> Result<Vec<Sample>> {
    match cmd {
        Command::Exp { beta_re, beta_im, .. } => {
            let e = g_exp(d, Complex64::new(*beta_re, *beta_im))?;
            output::sample(d, n, &|t| e.value(t), &|t| e.value_right(t))
        }
        Command::Sincos { b, .. } => {
            let sc = g_sin_cos(d, *b)?;
            let both = |cos: Complex64, sin: Complex64| Complex64::new(cos.re, sin.re);
            output::sample(
                d,
                n,
                &|t| Ok(both(sc.cos(t)?, sc.sin(t)?)),
                &|t| Ok(both(sc.cos_right(t)?, sc.sin_right(t)?)),
            )
        }
        Command::Solve1 {
            beta_re,
            beta_im,
            v0,
            source,
            ..
        } => {
            let s = solve_first_order(d, Complex64::new(*beta_re, *beta_im), Integrand::constant(c(*source)), c(*v0))?;
            output::sample(d, n, &|t| s.value(t), &|t| s.value_right(t))
        }
        Command::Solve2 { p, q, x0, v0, source, .. } => {
            let prob = SecondOrderProblem::homogeneous(c(*p), c(*q), c(*x0), c(*v0));
            let s = if *source == 0.0 {
                solve_homogeneous(d, &prob)?
            } else {
                solve_nonhomogeneous(d, &prob.with_source(Integrand::constant(c(*source))))?
            };
            output::sample(d, n, &|t| s.value(t), &|t| s.value_right(t))
        }
        Command::Oscillator { osc, zeta, .. } => {
            let s = solve_oscillator(&OscillatorSpec::new(d.clone(), osc.omega0, *zeta, osc.x0, osc.v0))?;
            let (left, right) = (real_sampler(|t| s.value(t)), real_sampler(|t| s.value_right(t)));
            output::sample(d, n, &left, &right)
        }
        Command::Resonance { osc, .. } => {
            let s = solve_resonance(&OscillatorSpec::new(d.clone(), osc.omega0, 0.0, osc.x0, osc.v0))?;
            let (left, right) = (real_sampler(|t| s.value(t)), real_sampler(|t| s.value_right(t)));
            output::sample(d, n, &left, &right)
        }
        Command::Converge { .. } => unreachable!("handled separately"),
    }
}

fn parameter_entries(cmd: &Command) -> Vec<(&'static str, String)> {
    let mut v = Vec::new();
    match cmd {
        Command::Exp { beta_re, beta_im, .. } => {
            v.push(("beta_re", beta_re.to_string()));
            v.push(("beta_im", beta_im.to_string()));
        }
        Command::Sincos { b, .. } => v.push(("b", b.to_string())),
        Command::Solve1 {
            beta_re,
            beta_im,
            v0,
            source,
            ..
        } => {
            v.push(("beta_re", beta_re.to_string()));
            v.push(("beta_im", beta_im.to_string()));
            v.push(("v0", v0.to_string()));
            v.push(("source", source.to_string()));
        }
        Command::Solve2 { p, q, x0, v0, source, .. } => {
            v.push(("P", p.to_string()));
            v.push(("Q", q.to_string()));
            v.push(("x0", x0.to_string()));
            v.push(("v0", v0.to_string()));
            v.push(("source", source.to_string()));
        }
        Command::Oscillator { osc, zeta, .. } => {
            v.push(("omega0", osc.omega0.to_string()));
            v.push(("zeta", zeta.to_string()));
            v.push(("x0", osc.x0.to_string()));
            v.push(("v0", osc.v0.to_string()));
        }
        Command::Resonance { osc, .. } | Command::Converge { osc, .. } => {
            v.push(("omega0", osc.omega0.to_string()));
            v.push(("x0", osc.x0.to_string()));
            v.push(("v0", osc.v0.to_string()));
        }
    }
    v
}

fn write_run(dir: &Path, stem: &str, cmd: &Command, d: &Derivator, l: Option<f64>, rows: &[Sample]) -> Result<Vec<PathBuf>> {
    let common = cmd.common();
    let csv = dir.join(format!("{stem}.csv"));
    output::write_file(&csv, &output::csv_text(rows))?;
    let mut meta = vec![
        ("tool", format!("stieltjes {}", env!("CARGO_PKG_VERSION"))),
        ("command", cmd.name().to_string()),
        ("derivator", common.source_description()),
        ("horizon", d.horizon().to_string()),
        ("jumps", d.jumps().len().to_string()),
        ("rows", rows.len().to_string()),
    ];
    if let Some(l) = l {
        meta.push(("l", l.to_string()));
    }
    meta.extend(parameter_entries(cmd));
    let meta_path = dir.join(format!("{stem}.csv.meta"));
    output::write_file(&meta_path, &output::meta_text(&meta))?;
    let mut written = vec![csv, meta_path];
    if common.svg {
        let svg = dir.join(format!("{stem}.svg"));
        output::write_file(&svg, &output::svg_text(stem, rows))?;
        written.push(svg);
    }
    Ok(written)
}

fn run_converge(cmd: &Command, osc: &OscArgs, h: &[f64], dir: &Path) -> Result<Vec<PathBuf>> {
    let common = cmd.common();
    let d = common.derivator()?;
    if h.is_empty() {
        return Err(Error::Config("converge needs at least one step size".into()));
    }
    let exact = solve_resonance(&OscillatorSpec::new(d.clone(), osc.omega0, 0.0, osc.x0, osc.v0))?;
    let rhs = OscillatorSystem::new(&d, osc.omega0)?;
    let y0 = [c(osc.v0), c(osc.x0)];
    let table = convergence_study(&d, &rhs, &y0, 1, &|t| exact.value(t).map(c), h)?;
    let csv = dir.join("converge.csv");
    table.save_csv(&csv)?;
    let mut meta = vec![
        ("tool", format!("stieltjes {}", env!("CARGO_PKG_VERSION"))),
        ("command", "converge".to_string()),
        ("derivator", common.source_description()),
        ("horizon", d.horizon().to_string()),
        ("fitted_order", table.fitted_order.to_string()),
    ];
    meta.extend(parameter_entries(cmd));
    let meta_path = dir.join("converge.csv.meta");
    output::write_file(&meta_path, &output::meta_text(&meta))?;
    for r in &table.rows {
        println!("h = {:.1e}  e_h = {:.4e}", r.h, r.e_h);
    }
    println!("fitted order {:.4}", table.fitted_order);
    Ok(vec![csv, meta_path])
}

/// Runs a parsed command and returns the files it wrote.
pub fn execute(cli: &Cli) -> Result<Vec<PathBuf>> {
    let cmd = &cli.command;
    let common = cmd.common();
    if !(common.l.is_finite() && common.horizon.is_finite()) {
        return Err(Error::Config("numeric parameters must be finite".into()));
    }
    let dir = common.resolved_output_dir();
    std::fs::create_dir_all(&dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;

    if let Command::Converge { osc, h, .. } = cmd {
        return run_converge(cmd, osc, h, &dir);
    }
    let sweep = match cmd {
        Command::Oscillator { osc, .. } | Command::Resonance { osc, .. } => osc.l_sweep.clone(),
        _ => Vec::new(),
    };
    if sweep.is_empty() {
        let d = common.derivator()?;
        let rows = sample_command(cmd, &d, common.samples)?;
        return write_run(&dir, cmd.name(), cmd, &d, None, &rows);
    }
    if common.derivator.is_some() {
        return Err(Error::Config("--l-sweep needs a preset, not a derivator file".into()));
    }
    let results: Vec<Result<Vec<PathBuf>>> = std::thread::scope(|s| {
        let handles: Vec<_> = sweep
            .iter()
            .enumerate()
            .map(|(i, &l)| {
                let dir = &dir;
                s.spawn(move || {
                    let d = common.derivator_with_l(l)?;
                    let rows = sample_command(cmd, &d, common.samples)?;
                    write_run(dir, &format!("{}_l{i}", cmd.name()), cmd, &d, Some(l), &rows)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sweep worker panicked")).collect()
    });
    let mut all = Vec::new();
    for r in results {
        all.extend(r?);
    }
    Ok(all)
}

/// Parses `args` (including the program name), runs, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(files) => {
            for f in files {
                println!("wrote {}", f.display());
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
