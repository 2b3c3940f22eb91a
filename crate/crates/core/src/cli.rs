//! Command-line interface. Exit status: 0 on success, 1 when a precondition
//! or verdict fails, 2 on usage errors.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::acceptance;
use crate::construction::{Construction, ConstructionConfig, Mode, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::experiments::{
    cross_norm_run, existence_run, g_scan, l1_quadrant_run, nonexistence_run, perturbation_run,
    solve_level, square_example, CrossNormOptions, Verdict,
};
use crate::geometry::{Arc, ArcSet};
use crate::io::{self, Figure};
use crate::norm::NormSpec;
use crate::solver::{region_labels, solve_dp, TraceDatum, DEFAULT_TIE_TOL};

/// Parses an angle in radians, or in degrees with a `deg` suffix.
pub fn parse_angle(s: &str) -> std::result::Result<f64, String> {
    let s = s.trim();
    let (num, scale) = match s.strip_suffix("deg") {
        Some(n) => (n.trim(), std::f64::consts::PI / 180.0),
        None => (s.strip_suffix("rad").unwrap_or(s).trim(), 1.0),
    };
    let x: f64 = num.parse().map_err(|_| format!("invalid angle `{s}`"))?;
    if !x.is_finite() {
        return Err(format!("angle `{s}` is not finite"));
    }
    Ok(x * scale)
}

fn parse_norm(s: &str) -> std::result::Result<NormSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "aniso-lgp", version, about = "Cantor-type boundary data for anisotropic least gradient problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Emit {
    /// Directory for output files; without it the main result goes to stdout.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    csv: bool,
    #[arg(long)]
    svg: bool,
}

/// A closed pipe on stdout is not an error.
fn stdout(text: &str) -> Result<()> {
    use std::io::Write;
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

impl Emit {
    /// JSON and CSV are on by default when no format is chosen.
    fn formats(&self) -> (bool, bool, bool) {
        if !(self.json || self.csv || self.svg) {
            (true, true, false)
        } else {
            (self.json, self.csv, self.svg)
        }
    }

    fn write(&self, name: &str, contents: &str) -> Result<()> {
        match &self.out_dir {
            Some(dir) => {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join(name), contents)?;
            }
            None => stdout(contents)?,
        }
        Ok(())
    }
}

#[derive(Args, Debug, Clone)]
struct BuildArgs {
    #[arg(long, default_value = "lp:2", value_parser = parse_norm)]
    norm: NormSpec,
    #[arg(long, default_value_t = 0.1)]
    alpha0: f64,
    /// Radians, or degrees with a `deg` suffix.
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    theta_center: f64,
    #[arg(long, default_value_t = 6)]
    depth: usize,
    /// equality, equality-fraction or fixed-ratio.
    #[arg(long, default_value = "equality")]
    mode: String,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

impl BuildArgs {
    fn build(&self) -> Result<Construction> {
        let mode = Mode::from_name(&self.mode, self.rho)?;
        Construction::build(
            ConstructionConfig::new(self.norm.clone(), self.alpha0, self.theta_center, self.depth, mode)
                .with_tol(self.tol),
        )
    }
}

/// Either a saved construction or parameters to build one.
#[derive(Args, Debug, Clone)]
struct Source {
    /// Construction dump written by `construct`.
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    build: BuildArgs,
}

impl Source {
    fn load(&self) -> Result<Construction> {
        match &self.input {
            Some(p) => Construction::from_json(&std::fs::read_to_string(p)?),
            None => self.build.build(),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a construction and dump it.
    Construct {
        #[command(flatten)]
        build: BuildArgs,
        #[command(flatten)]
        emit: Emit,
    },
    /// Solve the chord-matching problem for a level of a construction or an explicit arc list.
    Solve {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        level: Option<usize>,
        /// Explicit arcs `start:width,start:width,...` (angles as in --theta-center).
        #[arg(long)]
        arcs: Option<String>,
        /// Norm of the objective; defaults to the construction norm.
        #[arg(long, value_parser = parse_norm)]
        objective_norm: Option<NormSpec>,
        #[arg(long, default_value_t = DEFAULT_TIE_TOL)]
        tie_tol: f64,
        #[command(flatten)]
        emit: Emit,
    },
    /// Evaluate h under another norm at every node of a construction.
    CheckH {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_parser = parse_norm)]
        other: NormSpec,
        /// Exit with status 1 unless every h is strictly positive.
        #[arg(long)]
        require_positive: bool,
        #[command(flatten)]
        emit: Emit,
    },
    /// Compare the two square competitors for each exponent.
    SquareExample {
        #[arg(long, default_value_t = 0.5)]
        a: f64,
        #[arg(long, default_value_t = 0.4)]
        b: f64,
        #[arg(long = "p", default_values_t = [2.0, 3.0])]
        p: Vec<f64>,
        #[command(flatten)]
        emit: Emit,
    },
    /// Equality construction for phi1, sign of h for phi2.
    CrossNorm {
        #[arg(long, default_value = "lp:3", value_parser = parse_norm)]
        phi1: NormSpec,
        #[arg(long, default_value = "lp:2", value_parser = parse_norm)]
        phi2: NormSpec,
        #[arg(long, default_value = "125deg", value_parser = parse_angle, allow_hyphen_values = true)]
        theta_center: f64,
        #[arg(long, default_value_t = 0.05)]
        alpha0: f64,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long)]
        skip_solves: bool,
        #[command(flatten)]
        emit: Emit,
    },
    /// phi2 = phi1 + l1/k on a first-quadrant equality construction.
    Perturbation {
        #[arg(long, default_value = "lp:2", value_parser = parse_norm)]
        norm: NormSpec,
        #[arg(long, default_value_t = 10)]
        k: u32,
        #[arg(long, default_value = "45deg", value_parser = parse_angle, allow_hyphen_values = true)]
        theta_center: f64,
        #[arg(long, default_value_t = 0.05)]
        alpha0: f64,
        #[arg(long, default_value_t = 10)]
        depth: usize,
        #[command(flatten)]
        emit: Emit,
    },
    /// h under l1 at every node of a first-quadrant construction.
    L1Quadrant {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        emit: Emit,
    },
    /// Per-level existence or nonexistence indicators.
    Indicators {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = DEFAULT_TIE_TOL)]
        tie_tol: f64,
        #[command(flatten)]
        emit: Emit,
    },
    /// Run the acceptance checks.
    Verify,
    /// Draw a level of a construction as SVG.
    Render {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 2)]
        level: usize,
        /// Matching whose in-region is shaded: en, eprime or optimal.
        #[arg(long, default_value = "optimal")]
        matching: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Runs the CLI with `args` (including the program name) and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn parse_arcs(text: &str) -> Result<TraceDatum> {
    let arcs = text
        .split(',')
        .map(|item| {
            let (s, w) = item
                .split_once(':')
                .ok_or_else(|| Error::Precondition(format!("arc `{item}` is not start:width")))?;
            let s = parse_angle(s).map_err(Error::Precondition)?;
            let w = parse_angle(w).map_err(Error::Precondition)?;
            Arc::new(s, w)
        })
        .collect::<Result<Vec<_>>>()?;
    TraceDatum::from_arcs(arcs)
}

fn execute(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Construct { build, emit } => {
            let c = build.build()?;
            let (json, csv, svg) = emit.formats();
            if emit.out_dir.is_none() {
                stdout(&c.to_json()?)?;
                return Ok(true);
            }
            if json {
                emit.write("construction.json", &c.to_json()?)?;
            }
            if csv {
                emit.write("nodes.csv", &io::nodes_csv(&c)?)?;
            }
            if svg {
                let level = c.depth().min(6);
                emit.write("construction.svg", &render_level(&c, level, "en")?)?;
            }
            Ok(true)
        }
        Command::Solve { source, level, arcs, objective_norm, tie_tol, emit } => {
            let (json, csv, svg) = emit.formats();
            if let Some(text) = arcs {
                let datum = parse_arcs(&text)?;
                let norm = objective_norm.unwrap_or_else(|| source.build.norm.clone());
                let report = solve_dp(&norm, &datum, tie_tol)?;
                let labels = region_labels(&report.optimal, &datum)?;
                let value = serde_json::json!({ "report": report, "labels": labels });
                if json || emit.out_dir.is_none() {
                    emit.write("solve.json", &io::to_json_pretty(&value)?)?;
                }
                if svg {
                    let fig = Figure {
                        arcs: Some(datum.arcs()),
                        regions: Some((&datum, &labels)),
                        ..Default::default()
                    };
                    emit.write("solve.svg", &io::svg(&fig))?;
                }
                return Ok(true);
            }
            let c = source.load()?;
            let norm = objective_norm.unwrap_or_else(|| c.config().norm.clone());
            let levels: Vec<usize> = match level {
                Some(n) => vec![n],
                None => (0..=c.depth().min(crate::experiments::MAX_SOLVE_LEVEL)).collect(),
            };
            let rows = levels
                .into_iter()
                .map(|n| solve_level(&c, &norm, n, tie_tol))
                .collect::<Result<Vec<_>>>()?;
            if emit.out_dir.is_none() {
                stdout(&io::solve_csv(&rows)?)?;
                return Ok(true);
            }
            if json {
                emit.write("solve.json", &io::to_json_pretty(&rows)?)?;
            }
            if csv {
                emit.write("solve.csv", &io::solve_csv(&rows)?)?;
            }
            Ok(true)
        }
        Command::CheckH { source, other, require_positive, emit } => {
            let c = source.load()?;
            let report = c.check_h_signs(&other);
            let (json, csv, _) = emit.formats();
            eprintln!(
                "min h = {:e}, max |h| = {:e}, nonpositive = {}",
                report.min_h, report.max_abs_h, report.nonpositive_count
            );
            if emit.out_dir.is_none() {
                stdout(&io::h_csv(&report.values)?)?;
            } else {
                if json {
                    emit.write("h.json", &io::to_json_pretty(&report)?)?;
                }
                if csv {
                    emit.write("h.csv", &io::h_csv(&report.values)?)?;
                }
            }
            Ok(!require_positive || report.nonpositive_count == 0)
        }
        Command::SquareExample { a, b, p, emit } => {
            let rows = square_example(a, b, &p)?;
            let (json, csv, _) = emit.formats();
            if emit.out_dir.is_none() {
                stdout(&io::square_csv(&rows)?)?;
            } else {
                if json {
                    emit.write("square.json", &io::to_json_pretty(&rows)?)?;
                }
                if csv {
                    emit.write("square.csv", &io::square_csv(&rows)?)?;
                }
            }
            Ok(true)
        }
        Command::CrossNorm { phi1, phi2, theta_center, alpha0, depth, grid, skip_solves, emit } => {
            let opts = CrossNormOptions { solve_levels: !skip_solves, ..Default::default() };
            let (c, report) = cross_norm_run(&phi1, &phi2, theta_center, alpha0, depth, &opts)?;
            let scan = g_scan(&phi1, &phi2, &c.node(0).arc, grid)?;
            let (json, csv, svg) = emit.formats();
            let value = serde_json::json!({ "report": report, "g_scan": scan });
            if json || emit.out_dir.is_none() {
                emit.write("cross_norm.json", &io::to_json_pretty(&value)?)?;
            }
            if csv && emit.out_dir.is_some() {
                emit.write("h.csv", &io::h_csv(&report.h.values)?)?;
                emit.write("g_scan.csv", &io::g_csv(&scan.rows)?)?;
                emit.write("solve_phi1.csv", &io::solve_csv(&report.levels_phi1)?)?;
                emit.write("solve_phi2.csv", &io::solve_csv(&report.levels_phi2)?)?;
            }
            if svg {
                emit.write("cross_norm.svg", &render_level(&c, c.depth().min(4), "en")?)?;
            }
            eprintln!("verdict: {:?}", report.verdict);
            Ok(report.verdict == Verdict::Certified)
        }
        Command::Perturbation { norm, k, theta_center, alpha0, depth, emit } => {
            let report = perturbation_run(&norm, k, theta_center, alpha0, depth)?;
            let (json, csv, _) = emit.formats();
            if json || emit.out_dir.is_none() {
                emit.write("perturbation.json", &io::to_json_pretty(&report)?)?;
            }
            if csv && emit.out_dir.is_some() {
                emit.write("perturbation.csv", &io::perturbation_csv(&report.nodes)?)?;
            }
            eprintln!("verdict: {:?}", report.verdict);
            Ok(report.verdict == Verdict::Certified)
        }
        Command::L1Quadrant { source, emit } => {
            let c = source.load()?;
            let report = l1_quadrant_run(&c)?;
            let (json, csv, _) = emit.formats();
            if json || emit.out_dir.is_none() {
                emit.write("l1_quadrant.json", &io::to_json_pretty(&report)?)?;
            }
            if csv && emit.out_dir.is_some() {
                emit.write("h.csv", &io::h_csv(&report.h.values)?)?;
                emit.write("areas.csv", &io::areas_csv(&report.areas)?)?;
            }
            eprintln!("nonexistence indicated: {}", report.nonexistence_indicated);
            Ok(report.nonexistence_indicated)
        }
        Command::Indicators { source, tie_tol, emit } => {
            let c = source.load()?;
            let norm = c.config().norm.clone();
            let (json, csv, _) = emit.formats();
            let ok = if c.config().mode == Mode::Equality {
                let r = existence_run(&c, &norm, c.config().tol, tie_tol)?;
                if json || emit.out_dir.is_none() {
                    emit.write("existence.json", &io::to_json_pretty(&r)?)?;
                }
                if csv && emit.out_dir.is_some() {
                    emit.write("areas.csv", &io::areas_csv(&r.areas)?)?;
                }
                eprintln!("existence indicated: {}", r.existence_indicated);
                r.existence_indicated
            } else {
                let r = nonexistence_run(&c, &norm, tie_tol)?;
                if json || emit.out_dir.is_none() {
                    emit.write("nonexistence.json", &io::to_json_pretty(&r)?)?;
                }
                if csv && emit.out_dir.is_some() {
                    emit.write("solve.csv", &io::solve_csv(&r.levels)?)?;
                    emit.write("areas.csv", &io::areas_csv(&r.areas)?)?;
                }
                eprintln!("nonexistence indicated: {}", r.nonexistence_indicated);
                r.nonexistence_indicated
            };
            Ok(ok)
        }
        Command::Verify => {
            let outcomes = acceptance::run_all();
            for o in &outcomes {
                stdout(&format!("{o}\n"))?;
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            stdout(&format!("{} passed, {failed} failed\n", outcomes.len() - failed))?;
            Ok(failed == 0)
        }
        Command::Render { source, level, matching, out } => {
            let c = source.load()?;
            let text = render_level(&c, level, &matching)?;
            match out {
                Some(p) => write_file(&p, &text)?,
                None => stdout(&text)?,
            }
            Ok(true)
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, text)?;
    Ok(())
}

/// SVG of `F_n` with the `E_n` chords solid, the `E'_n` chords dashed, and
/// the in-region of the chosen matching shaded.
pub fn render_level(c: &Construction, level: usize, matching: &str) -> Result<String> {
    let arcs: ArcSet = c.level_arcs(level)?;
    let datum = TraceDatum::new(arcs.clone())?;
    let norm = &c.config().norm;
    let chosen = match matching {
        "en" => c.en_matching(level, norm)?,
        "eprime" => c.eprime_matching(level, norm)?,
        "optimal" => solve_dp(norm, &datum, DEFAULT_TIE_TOL)?.optimal,
        other => {
            return Err(Error::Precondition(format!(
                "unknown matching `{other}` (expected en, eprime or optimal)"
            )))
        }
    };
    let labels = region_labels(&chosen, &datum)?;
    let fig = Figure {
        arcs: Some(&arcs),
        chords: c.en_chords(level)?,
        dashed_chords: if level > 0 { c.eprime_chords(level)? } else { Vec::new() },
        regions: Some((&datum, &labels)),
    };
    Ok(io::svg(&fig))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles() {
        assert_eq!(parse_angle("1.5").unwrap(), 1.5);
        assert!((parse_angle("180deg").unwrap() - std::f64::consts::PI).abs() < 1e-15);
        assert!((parse_angle("-90 deg").unwrap() + std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert_eq!(parse_angle("2rad").unwrap(), 2.0);
        assert!(parse_angle("abc").is_err());
        assert!(parse_angle("infdeg").is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["aniso-lgp", "no-such-command"]), 2);
        assert_eq!(run(["aniso-lgp", "construct", "--norm", "lp:0.5"]), 2);
        assert_eq!(run(["aniso-lgp", "construct", "--alpha0", "x"]), 2);
    }

    #[test]
    fn precondition_errors_exit_one() {
        assert_eq!(run(["aniso-lgp", "construct", "--alpha0", "2.0"]), 1);
        assert_eq!(run(["aniso-lgp", "square-example", "--a", "1.5"]), 1);
    }
}
