//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand};

use crate::error::SolverError;
use crate::group::{make_group_with_limit, FiniteGroup, DEFAULT_MAX_ORDER};
use crate::oracle::brute_decide;
use crate::order::{check_z_line, verify_order, SphericalOrder, WitnessFile};
use crate::solver::{decide, rank, CertificateFile, Verdict};
use crate::spectrum::{read_report, render_report, spectrum_resume, Outcome, ReportLine, SpectrumReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "sphord", version, about = "Decide and verify spherical orders on finite groups")]
struct Cli {
    /// Largest group order accepted.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether an order of arity n exists.
    Decide {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        /// Use brute-force enumeration instead of the solver.
        #[arg(long)]
        oracle: bool,
        /// Where to write the witness or certificate (default: a file named
        /// after the group and arity in the current directory).
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Decide every arity in [2, max-n] and cross-check.
    Spectrum {
        #[arg(long)]
        group: String,
        #[arg(long)]
        max_n: usize,
        /// JSON-lines report; existing lines for this group are reused.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Write a witness order, failing if none exists.
    Witness {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check an order file against every axiom.
    Verify {
        #[arg(long)]
        group: String,
        #[arg(long)]
        order: PathBuf,
    },
    /// Count translation orbits of chirality classes.
    Rank {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        order: Option<PathBuf>,
    },
    /// Sample the natural order on the integers.
    Zorder {
        #[arg(long)]
        n: usize,
        /// Inclusive window `lo..hi`.
        #[arg(long, allow_hyphen_values = true)]
        window: Window,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Window {
    lo: i64,
    hi: i64,
}

impl FromStr for Window {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected lo..hi, got `{s}`"))?;
        let lo: i64 = lo.trim().parse().map_err(|e| format!("bad lower bound: {e}"))?;
        let hi: i64 = hi.trim().parse().map_err(|e| format!("bad upper bound: {e}"))?;
        if lo > hi {
            return Err(format!("empty window {lo}..{hi}"));
        }
        Ok(Window { lo, hi })
    }
}

/// A failure carrying its exit code.
struct Exit(i32, String);

impl Exit {
    fn usage(msg: impl ToString) -> Self {
        Exit(EXIT_USAGE, msg.to_string())
    }
}

fn solver_exit(e: SolverError) -> Exit {
    match e {
        SolverError::Undecided { .. } => Exit(EXIT_UNDECIDED, e.to_string()),
        other => Exit::usage(other),
    }
}

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Parse `args` (program name first) and execute. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Exit(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Exit> {
    let group = |spec: &str| make_group_with_limit(spec, cli.max_order).map_err(Exit::usage);
    match &cli.command {
        Command::Decide { group: spec, n, oracle, json } => cmd_decide(&group(spec)?, *n, *oracle, json.as_deref(), out),
        Command::Spectrum { group: spec, max_n, report } => cmd_spectrum(&group(spec)?, *max_n, report.as_deref(), out),
        Command::Witness { group: spec, n, out: path } => cmd_witness(&group(spec)?, *n, path, out),
        Command::Verify { group: spec, order } => cmd_verify(&group(spec)?, order, out),
        Command::Rank { group: spec, n, order } => cmd_rank(&group(spec)?, *n, order.as_deref(), out),
        Command::Zorder { n, window, samples, seed } => cmd_zorder(*n, *window, *samples, *seed, out),
    }
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(|e| Exit(EXIT_FAILED, e.to_string()))?
    };
}

/// Write `contents` to `path` through a temporary file in the same
/// directory and a rename.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn save(path: &Path, contents: &str) -> Result<(), Exit> {
    write_atomic(path, contents).map_err(|e| Exit::usage(format!("cannot write `{}`: {e}", path.display())))
}

fn file_stem(group: &FiniteGroup, n: usize, kind: &str) -> String {
    let name: String = group
        .name()
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    format!("{name}-n{n}-{kind}.json")
}

fn verdict_json(group: &FiniteGroup, n: usize, verdict: &Verdict) -> (String, &'static str) {
    match verdict {
        Verdict::Orderable { witness, .. } => (witness.to_witness().to_json(), "witness"),
        Verdict::NotOrderable { certificate } => (
            CertificateFile { group: group.name().to_string(), n, certificate: certificate.clone() }.to_json(),
            "certificate",
        ),
    }
}

fn cmd_decide(group: &FiniteGroup, n: usize, oracle: bool, json: Option<&Path>, out: &mut dyn Write) -> Result<i32, Exit> {
    let verdict = if oracle {
        let report = brute_decide(group, n).map_err(Exit::usage)?;
        say!(out, "valid orders: {}", report.valid_orders);
        report.verdict
    } else {
        decide(group, n).map_err(solver_exit)?
    };
    match &verdict {
        Verdict::Orderable { method, .. } => {
            say!(out, "{} n={n}: orderable ({})", group.name(), serde_json::to_string(method).unwrap_or_default().trim_matches('"'))
        }
        Verdict::NotOrderable { certificate } => {
            say!(out, "{} n={n}: not orderable ({} certificate)", group.name(), certificate.kind())
        }
    }
    let (text, kind) = verdict_json(group, n, &verdict);
    let path = json.map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from(file_stem(group, n, kind)));
    save(&path, &text)?;
    say!(out, "{kind} written to {}", path.display());
    Ok(EXIT_OK)
}

fn cmd_witness(group: &FiniteGroup, n: usize, path: &Path, out: &mut dyn Write) -> Result<i32, Exit> {
    match decide(group, n).map_err(solver_exit)? {
        Verdict::Orderable { witness, .. } => {
            save(path, &witness.to_witness().to_json())?;
            say!(out, "witness for {} n={n} written to {}", group.name(), path.display());
            Ok(EXIT_OK)
        }
        Verdict::NotOrderable { certificate } => {
            say!(out, "{} n={n}: not orderable ({} certificate); no witness written", group.name(), certificate.kind());
            Ok(EXIT_FAILED)
        }
    }
}

fn load_order(group: &FiniteGroup, path: &Path) -> Result<SphericalOrder, Exit> {
    let text = std::fs::read_to_string(path).map_err(|e| Exit::usage(format!("cannot read `{}`: {e}", path.display())))?;
    let file = WitnessFile::from_json(&text).map_err(Exit::usage)?;
    SphericalOrder::from_witness(group, &file).map_err(Exit::usage)
}

fn cmd_verify(group: &FiniteGroup, path: &Path, out: &mut dyn Write) -> Result<i32, Exit> {
    let order = load_order(group, path)?;
    let report = verify_order(group, &order).map_err(Exit::usage)?;
    say!(out, "{} n={} ({:?} check)", group.name(), order.arity(), report.mode);
    write!(out, "{report}").map_err(|e| Exit(EXIT_FAILED, e.to_string()))?;
    if report.passed() {
        say!(out, "all axioms pass");
        Ok(EXIT_OK)
    } else {
        say!(out, "verification FAILED");
        Ok(EXIT_FAILED)
    }
}

fn cmd_rank(group: &FiniteGroup, n: usize, path: Option<&Path>, out: &mut dyn Write) -> Result<i32, Exit> {
    let order = path.map(|p| load_order(group, p)).transpose()?;
    let report = rank(group, n, order.as_ref()).map_err(solver_exit)?;
    say!(out, "{} n={n}: {} class orbits", group.name(), report.class_graph_components);
    if let Some(r) = report.witness_rank {
        say!(out, "order meets {r} of them");
    }
    Ok(EXIT_OK)
}

fn cmd_zorder(n: usize, window: Window, samples: usize, seed: Option<u64>, out: &mut dyn Write) -> Result<i32, Exit> {
    if n < 2 {
        return Err(Exit::usage(format!("arity must be at least 2, got {n}")));
    }
    let seed = seed.unwrap_or_else(rand::random);
    say!(out, "seed {seed}");
    let report = check_z_line(n, window.lo, window.hi, samples, seed);
    say!(
        out,
        "n={n} window {}..{}: {} samples, {} dichotomy checks, {} replacement checks, {} failures",
        window.lo,
        window.hi,
        report.samples,
        report.dichotomy_checks,
        report.replacement_checks,
        report.failures.len()
    );
    for f in report.failures.iter().take(10) {
        say!(out, "  {}", serde_json::to_string(f).unwrap_or_default());
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAILED })
}

fn set_string(set: impl IntoIterator<Item = usize>) -> String {
    let items: Vec<String> = set.into_iter().map(|n| n.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn cmd_spectrum(group: &FiniteGroup, max_n: usize, report_path: Option<&Path>, out: &mut dyn Write) -> Result<i32, Exit> {
    let previous = match report_path {
        Some(p) => read_report(p).map_err(Exit::usage)?,
        None => Vec::new(),
    };
    let report = spectrum_resume(group, max_n, &Default::default(), &previous).map_err(Exit::usage)?;
    let (mine, others): (Vec<ReportLine>, Vec<ReportLine>) =
        previous.into_iter().partition(|l| l.group == group.name());

    let mut rows = Vec::with_capacity(report.entries.len());
    for entry in &report.entries {
        let row = match &entry.verdict {
            None if entry.outcome != Outcome::Undecided => {
                mine.iter().rev().find(|l| l.n == entry.n).cloned().expect("resumed cell has a line")
            }
            Some(v) if report_path.is_some() => {
                let (text, kind) = verdict_json(group, entry.n, v);
                let path = artifact_dir(report_path.unwrap()).join(file_stem(group, entry.n, kind));
                save(&path, &text)?;
                ReportLine::from_entry(group.name(), entry, Some(path.display().to_string()))
            }
            _ => ReportLine::from_entry(group.name(), entry, None),
        };
        rows.push(row);
    }
    if let Some(p) = report_path {
        let mut lines = others;
        lines.extend(mine.into_iter().filter(|l| !(2..=max_n).contains(&l.n)));
        lines.extend(rows.iter().cloned());
        save(p, &render_report(&lines))?;
    }

    print_table(&report, &rows, out)?;
    if let Some(p) = report_path {
        say!(out, "report written to {}", p.display());
    }
    if !report.disagreements().is_empty() {
        return Ok(EXIT_FAILED);
    }
    Ok(if report.undecided().is_empty() { EXIT_OK } else { EXIT_UNDECIDED })
}

fn artifact_dir(report: &Path) -> PathBuf {
    let mut name = report.file_name().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(".artifacts");
    report.with_file_name(name)
}

fn print_table(report: &SpectrumReport, rows: &[ReportLine], out: &mut dyn Write) -> Result<(), Exit> {
    say!(out, "{}  n in [2, {}]", report.group, report.bound);
    say!(out, "{:>4}  {:<15}{:<15}{:<23}{:>8}", "n", "verdict", "method", "certificate", "ms");
    for row in rows {
        let verdict = match row.verdict {
            Outcome::Orderable => "orderable",
            Outcome::NotOrderable => "not orderable",
            Outcome::Undecided => "undecided",
        };
        let method = serde_json::to_string(&row.method).unwrap_or_default();
        let cert = row.certificate.as_deref().unwrap_or("-");
        let mut line = format!("{:>4}  {:<15}{:<15}{:<23}{:>8}", row.n, verdict, method.trim_matches('"'), cert, row.millis);
        if let Some(a) = &row.artifact {
            line.push_str("  ");
            line.push_str(a);
        }
        say!(out, "{line}");
    }
    say!(out, "spectrum: {}", set_string(report.members()));
    let disagreements = report.disagreements();
    say!(
        out,
        "cross-checks: {} agree, {} disagree",
        report.cross_checks.len() - disagreements.len(),
        disagreements.len()
    );
    for c in disagreements {
        let cert = match rows.iter().find(|r| r.n == c.n) {
            Some(ReportLine { certificate: Some(kind), .. }) => format!("{kind} certificate"),
            _ => "witness".to_string(),
        };
        say!(
            out,
            "DISAGREE {} n={}: predicted {}, computed {} ({cert})",
            serde_json::to_string(&c.statement).unwrap_or_default().trim_matches('"'),
            c.n,
            if c.predicted { "orderable" } else { "not orderable" },
            if c.observed == Some(true) { "orderable" } else { "not orderable" },
        );
    }
    let unasserted = report.unasserted();
    if !unasserted.is_empty() {
        say!(out, "computed, not predicted by any statement: n in {}", set_string(unasserted));
    }
    let undecided = report.undecided();
    if !undecided.is_empty() {
        say!(out, "undecided (search cap): n in {}", set_string(undecided));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("sphord").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn window_parsing() {
        assert_eq!("-50..50".parse::<Window>().unwrap(), Window { lo: -50, hi: 50 });
        assert!("5..1".parse::<Window>().is_err());
        assert!("5".parse::<Window>().is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&["decide", "--group", "Z4"]).0, EXIT_USAGE);
        assert_eq!(call(&["decide", "--group", "W4", "--n", "3"]).0, EXIT_USAGE);
        assert_eq!(call(&["--max-order", "4", "rank", "--group", "Z5", "--n", "3"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn zorder_prints_seed() {
        let (code, out, _) = call(&["zorder", "--n", "4", "--window", "-50..50", "--samples", "200", "--seed", "7"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.starts_with("seed 7\n"));
    }

    #[test]
    fn rank_output() {
        let (code, out, _) = call(&["rank", "--group", "Z3", "--n", "3"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("2 class orbits"));
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("sub").join("f.json");
        write_atomic(&p, "one").unwrap();
        write_atomic(&p, "two").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "two");
    }
}
