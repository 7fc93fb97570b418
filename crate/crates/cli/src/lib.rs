//! `gbswitch`: command-line access to Hadamard constructions, switching-game
//! solvers, bound certificates and the reference tables.
//!
//! [`run`] does all the work and returns the exit code with the captured
//! output streams, so the binary is a thin wrapper and tests can drive the
//! CLI in-process.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 size limit or Hadamard coverage gap.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use gb_core::bounds::{
    c22_certificate, global_g_bound, ksz_upper, r_lower_certificate, reproduce_tables_with,
    sqrt85_certificate, verify_sqrt85, BoundCertificate, ReferenceTables, ReproduceOptions,
};
use gb_core::hadamard::{verify_hadamard, OrderRegistry};
use gb_core::render::render_grid;
use gb_core::switching::{exact_r, exact_g, hadamard_config, solve_g, solve_i, ExactOptions, GameSolution};
use gb_core::{Error, LightGrid};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "gbswitch", version, about = "Gale-Berlekamp switching game and Hadamard bound toolkit")]
pub struct Cli {
    /// Write standard output to this file instead.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print an explicit Hadamard matrix of the given order.
    Hadamard {
        #[arg(long)]
        order: u64,
    },
    /// Solve i(grid) or g(grid) for a grid file.
    Solve {
        #[arg(long, value_name = "FILE")]
        grid: PathBuf,
        #[arg(long, value_enum, default_value_t = GridQuantity::I)]
        quantity: GridQuantity,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive R_n or G_n.
    Exact {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        quantity: GameQuantity,
        /// Number of search partitions; the output does not depend on it.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Allow n = 7.
        #[arg(long)]
        long_running: bool,
        #[arg(long)]
        json: bool,
    },
    /// Lower-bound certificate for R_n, or re-verification of a saved one.
    Certify(CertifyArgs),
    /// Bound arithmetic and range checks.
    Bounds {
        #[command(subcommand)]
        which: BoundsCommand,
    },
    /// Reference tables, recomputed where feasible.
    Tables {
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        json: bool,
        /// Print only table 1, 2 or 3.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        table: Option<u8>,
        /// Exhaustive recomputation up to this n (at most 6; 0 disables it).
        #[arg(long, default_value_t = 6)]
        exact_max_n: usize,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Draw a grid file with ● (on) and ○ (off).
    Render {
        #[arg(long, value_name = "FILE")]
        grid: PathBuf,
        /// Caption the drawing with i(grid).
        #[arg(long)]
        value: bool,
    },
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long, required_unless_present = "verify", conflicts_with = "verify")]
    n: Option<u64>,
    /// Re-verify a certificate JSON file.
    #[arg(long, value_name = "FILE")]
    verify: Option<PathBuf>,
    #[arg(long, requires = "n")]
    json: bool,
    /// Also write the truncated Hadamard grid used by the certificate.
    #[arg(long, value_name = "FILE", requires = "n")]
    grid_out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum BoundsCommand {
    /// C_{2,2,n,n} <= sqrt(k_n/n).
    C22 {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        json: bool,
    },
    /// C_{2,2,n,n} <= sqrt(8/5) for all n <= max.
    Covering {
        #[arg(long)]
        max: u64,
        #[arg(long)]
        json: bool,
    },
    /// G_n/n^{3/2} <= 75*sqrt(17)/289 for all n <= max.
    GlobalG {
        #[arg(long)]
        max: u64,
        #[arg(long)]
        json: bool,
    },
    /// (k_n/n)^{(m-1)/2}.
    Ksz {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridQuantity {
    I,
    G,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GameQuantity {
    #[value(name = "R", alias = "r")]
    R,
    #[value(name = "G", alias = "g")]
    G,
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Io { path: PathBuf, source: std::io::Error },
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Core(Error::SizeLimit { .. } | Error::CoverageGap { .. }) => EXIT_LIMIT,
            Failure::Core(
                Error::Counterexample { .. } | Error::TableRegression { .. } | Error::NumericFailure { .. },
            ) => EXIT_VERIFY,
            Failure::Core(_) | Failure::Io { .. } => EXIT_USAGE,
            Failure::Verify(_) => EXIT_VERIFY,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => format!("error: {e}"),
            Failure::Io { path, source } => format!("error: {}: {source}", path.display()),
            Failure::Verify(msg) => format!("verification failed: {msg}"),
        }
    }
}

type CmdResult = Result<String, Failure>;

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|source| Failure::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|source| Failure::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable value");
    s.push('\n');
    s
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |p| p.get())
}

/// Parses `args` (program name first) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut stderr = String::new();
    let result = dispatch(&cli.command, &mut stderr);
    let (code, stdout) = match result {
        Ok(out) => (EXIT_OK, out),
        Err(f) => {
            let _ = writeln!(stderr, "{}", f.message());
            (f.code(), String::new())
        }
    };
    match (&cli.output, code) {
        (Some(path), EXIT_OK) => match write_file(path, &stdout) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr,
            },
            Err(f) => Outcome {
                code: f.code(),
                stdout: String::new(),
                stderr: stderr + &f.message() + "\n",
            },
        },
        _ => Outcome { code, stdout, stderr },
    }
}

fn dispatch(cmd: &Command, stderr: &mut String) -> CmdResult {
    match cmd {
        Command::Hadamard { order } => cmd_hadamard(*order, stderr),
        Command::Solve { grid, quantity, json } => cmd_solve(grid, *quantity, *json),
        Command::Exact {
            n,
            quantity,
            jobs,
            long_running,
            json,
        } => cmd_exact(*n, *quantity, *jobs, *long_running, *json),
        Command::Certify(args) => cmd_certify(args),
        Command::Bounds { which } => cmd_bounds(which),
        Command::Tables {
            csv,
            json,
            table,
            exact_max_n,
            jobs,
        } => cmd_tables(*csv, *json, *table, *exact_max_n, jobs.unwrap_or_else(default_jobs)),
        Command::Render { grid, value } => cmd_render(grid, *value),
    }
}

fn cmd_hadamard(order: u64, stderr: &mut String) -> CmdResult {
    let reg = OrderRegistry;
    if !reg.is_known(order) {
        return Err(Error::UnsupportedParameter(format!("{order} is not a known Hadamard order")).into());
    }
    let recipe = reg.recipe(order).ok_or(Error::CoverageGap { n: order, cap: order })?;
    let h = recipe.build()?;
    if !verify_hadamard(&h) {
        return Err(Failure::Verify(format!("{} fails H H^T = {order} I", recipe.describe())));
    }
    let _ = writeln!(stderr, "order {order}: {}", recipe.describe());
    Ok(h.to_grid_text())
}

fn load_grid(path: &Path) -> Result<LightGrid, Failure> {
    Ok(LightGrid::parse(&read_file(path)?)?)
}

fn checked(theta: &LightGrid, sol: GameSolution) -> Result<GameSolution, Failure> {
    let again = sol.recompute(theta)?;
    if again != sol.value {
        return Err(Failure::Verify(format!(
            "witness gives {again}, solver reported {}",
            sol.value
        )));
    }
    Ok(sol)
}

fn cmd_solve(path: &Path, q: GridQuantity, json: bool) -> CmdResult {
    let theta = load_grid(path)?;
    let (label, sol) = match q {
        GridQuantity::I => ("i", solve_i(&theta)?),
        GridQuantity::G => ("g", solve_g(&theta)?),
    };
    let sol = checked(&theta, sol)?;
    if json {
        return Ok(to_json(&serde_json::json!({
            "n": theta.n(),
            "quantity": label,
            "value": sol.value,
            "row_signs": sol.witness.row_string(),
            "col_signs": sol.witness.col_string(),
        })));
    }
    Ok(format!(
        "{label} = {}\n{}\n{}\n",
        sol.value,
        sol.witness.row_string(),
        sol.witness.col_string()
    ))
}

fn cmd_exact(n: usize, q: GameQuantity, jobs: usize, long_running: bool, json: bool) -> CmdResult {
    let opts = ExactOptions {
        jobs: jobs.max(1),
        allow_long_running: long_running,
    };
    let (label, out) = match q {
        GameQuantity::R => ("R", exact_r(n, opts)?),
        GameQuantity::G => ("G", exact_g(n, opts)?),
    };
    if json {
        return Ok(to_json(&serde_json::json!({
            "n": n,
            "quantity": label,
            "value": out.value,
            "grids_searched": out.grids_searched,
            "grid": out.grid.to_grid_text().lines().collect::<Vec<_>>(),
        })));
    }
    Ok(format!("{label}_{n} = {}\n{}", out.value, out.grid.to_grid_text()))
}

fn cmd_certify(args: &CertifyArgs) -> CmdResult {
    if let Some(path) = &args.verify {
        let cert: BoundCertificate = serde_json::from_str(&read_file(path)?).map_err(|e| {
            Error::Parse {
                line: e.line(),
                detail: e.to_string(),
            }
        })?;
        return verify_saved(&cert, path);
    }
    let n = args.n.expect("clap enforces --n or --verify");
    let mut cert = r_lower_certificate(n)?;
    if let Some(out) = &args.grid_out {
        let theta = hadamard_config(n as usize)?;
        write_file(out, &theta.to_grid_text())?;
        cert.evidence.grid_file = Some(out.display().to_string());
    }
    if !cert.verified {
        return Err(Failure::Verify(format!("certificate for n = {n} did not self-check")));
    }
    if args.json {
        return Ok(to_json(&cert));
    }
    Ok(certificate_text(&cert))
}

fn verify_saved(cert: &BoundCertificate, path: &Path) -> CmdResult {
    if !cert.verify()? {
        return Err(Failure::Verify(format!(
            "{} does not reproduce on recomputation",
            path.display()
        )));
    }
    if let (Some(file), Some(n)) = (&cert.evidence.grid_file, cert.inputs.n) {
        // Relative grid paths resolve next to the certificate file.
        let grid_path = Path::new(file);
        let grid_path = if grid_path.is_relative() {
            path.parent().unwrap_or(Path::new(".")).join(grid_path)
        } else {
            grid_path.to_path_buf()
        };
        let saved = load_grid(&grid_path)?;
        if saved != hadamard_config(n as usize)? {
            return Err(Failure::Verify(format!("{} is not the certified grid", grid_path.display())));
        }
    }
    Ok(format!("verified: {}\n", claim_line(cert)))
}

fn claim_line(cert: &BoundCertificate) -> String {
    let c = &cert.claim;
    let n = cert
        .inputs
        .n
        .map(|n| format!(" (n = {n})"))
        .or_else(|| cert.inputs.max_n.map(|m| format!(" (N = {m})")))
        .unwrap_or_default();
    format!("{} {} {}{n}", c.quantity, c.relation.symbol(), c.bound_symbolic)
}

fn certificate_text(cert: &BoundCertificate) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "claim: {}", claim_line(cert));
    let _ = writeln!(s, "decimal: {}", cert.claim.bound_decimal);
    let _ = writeln!(s, "method: {}", serde_json::to_value(cert.method).expect("enum").as_str().unwrap_or(""));
    let e = &cert.evidence;
    if let Some(k) = e.k_n {
        let _ = writeln!(s, "k_n: {k}");
    }
    if let Some(v) = e.analytic_value {
        let _ = writeln!(s, "analytic: {v}");
    }
    if let Some(v) = e.exact_value {
        let _ = writeln!(s, "exact config: {v}");
    }
    if let Some(v) = e.maximizer {
        let _ = writeln!(s, "maximizer: n = {v}");
    }
    if let Some(f) = &e.grid_file {
        let _ = writeln!(s, "grid file: {f}");
    }
    for note in &e.notes {
        let _ = writeln!(s, "note: {note}");
    }
    let _ = writeln!(s, "verified: {}", cert.verified);
    s
}

fn cert_output(cert: BoundCertificate, json: bool) -> CmdResult {
    if !cert.verified {
        return Err(Failure::Verify(claim_line(&cert)));
    }
    Ok(if json { to_json(&cert) } else { certificate_text(&cert) })
}

fn cmd_bounds(which: &BoundsCommand) -> CmdResult {
    match which {
        BoundsCommand::C22 { n, json } => cert_output(c22_certificate(*n)?, *json),
        BoundsCommand::Covering { max, json } => {
            if *json {
                return cert_output(sqrt85_certificate(*max)?, true);
            }
            let r = verify_sqrt85(*max)?;
            let mut s = String::new();
            let _ = writeln!(s, "checked n = {}..={}", r.range_checked.0, r.range_checked.1);
            let _ = writeln!(
                s,
                "max k_n/n = {}/{} = {} at n = {} ({} time(s))",
                r.max_ratio_exact.0, r.max_ratio_exact.1, r.max_ratio, r.argmax_n, r.argmax_count
            );
            let hits: u64 = r.cells.iter().map(|c| c.count).sum();
            let _ = writeln!(s, "cells A_(m,k) used: {} covering {hits} values of n", r.cells.len());
            let _ = writeln!(s, "C_{{2,2,n,n}} <= sqrt(8/5): holds");
            Ok(s)
        }
        BoundsCommand::GlobalG { max, json } => cert_output(global_g_bound(*max)?, *json),
        BoundsCommand::Ksz { m, n, json } => {
            let v = ksz_upper(*m, *n)?;
            let k = OrderRegistry.known_order_at_least(*n);
            if *json {
                return Ok(to_json(&serde_json::json!({
                    "m": m,
                    "n": n,
                    "k_n": k,
                    "bound": v,
                    "sup_bound": (8.0f64 / 5.0).powf((*m as f64 - 1.0) / 2.0),
                })));
            }
            Ok(format!("C_inf(m = {m}, n = {n}) <= ({k}/{n})^(({m}-1)/2) = {v}\n"))
        }
    }
}

fn text_tables(t: &ReferenceTables, which: Option<u8>) -> String {
    let mut s = String::new();
    if which.map_or(true, |w| w == 1) {
        let _ = writeln!(s, "Table 1: R_n by source");
        let _ = writeln!(s, "{:>3}  {:>14}  {:>14}  {:>14}", "n", "Brown-Spencer", "Fishburn-Sloane", "Carlson-Stol.");
        for r in &t.table1 {
            let _ = writeln!(
                s,
                "{:>3}  {:>14}  {:>14}  {:>14}",
                r.n,
                r.brown_spencer.to_string(),
                r.fishburn_sloane.to_string(),
                r.carlson_stolarski.to_string()
            );
        }
    }
    if which.map_or(true, |w| w == 2) {
        if !s.is_empty() {
            s.push('\n');
        }
        let _ = writeln!(s, "Table 2: improved lower bounds");
        for &(n, v) in &t.table2 {
            let _ = writeln!(s, "R_{n} >= {v}");
        }
    }
    if which.map_or(true, |w| w == 3) {
        if !s.is_empty() {
            s.push('\n');
        }
        let _ = writeln!(s, "Table 3: R_n, G_n and G_n/n^(3/2)");
        let _ = writeln!(s, "{:>3}  {:>6}  {:>6}  {}", "n", "R_n", "G_n", "G_n/n^(3/2)");
        for r in &t.table3 {
            let _ = writeln!(s, "{:>3}  {:>6}  {:>6}  {}", r.n, r.r.to_string(), r.g.to_string(), r.c_text);
        }
    }
    s
}

fn cmd_tables(csv: bool, json: bool, which: Option<u8>, exact_max_n: usize, jobs: usize) -> CmdResult {
    if exact_max_n > 6 {
        return Err(Error::UnsupportedParameter(format!(
            "--exact-max-n is at most 6, got {exact_max_n}"
        ))
        .into());
    }
    let t = reproduce_tables_with(ReproduceOptions { exact_max_n, jobs })?;
    if json {
        return Ok(to_json(&t));
    }
    if !csv {
        return Ok(text_tables(&t, which));
    }
    let parts: Vec<String> = [(1u8, t.table1_csv()), (2, t.table2_csv()), (3, t.table3_csv())]
        .into_iter()
        .filter(|(k, _)| which.map_or(true, |w| w == *k))
        .map(|(_, csv)| csv)
        .collect();
    Ok(parts.join("\n"))
}

fn cmd_render(path: &Path, value: bool) -> CmdResult {
    let theta = load_grid(path)?;
    if theta.n() > 64 {
        return Err(Error::UnsupportedParameter(format!("render supports n <= 64, got {}", theta.n())).into());
    }
    let caption = if value {
        Some(("i", solve_i(&theta)?.value))
    } else {
        None
    };
    Ok(render_grid(&theta, caption))
}
