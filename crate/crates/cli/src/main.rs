//! `lapdom`: Laplacian eigenvalue counts and dominating sets of trees.
//!
//! Every command writes one JSON document to stdout and a short readable
//! summary to stderr. Exit codes: 0 success, 1 usage or parse error,
//! 2 invariant violation, 3 unmet algorithm precondition.

mod search;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use lapdom_core::analysis::analyze;
use lapdom_core::contract::{reduction_trace, CleanPath3};
use lapdom_core::domination::{
    brute_certificate, dp_certificate, gamma_dp, greedy_dominating, is_dominating, undominated,
    DominationCertificate, DominationError, TraceEntryJson,
};
use lapdom_core::generators::{self, rng, BadParameter};
use lapdom_core::inertia::{count_interval, mu, Interval};
use lapdom_core::propagation::{alg2_dominating, alg3_dominating};
use lapdom_core::rational::{self, int, ratio, to_f64, Rational, RationalJson};
use lapdom_core::spectrum::{localize_spectrum, SpectralBracketJson};
use lapdom_core::tree::penultimate_count;
use lapdom_core::verify::{contraction_step, verify_all, verify_families, ContractionStep};
use lapdom_core::{Tree, TreeError};
use rand::Rng;

#[derive(Parser)]
#[command(name = "lapdom", version, about = "Laplacian eigenvalue counts and dominating sets of trees")]
struct Cli {
    /// Suppress the readable summary on stderr.
    #[arg(short, long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spectral counts, domination number and the named bounds for one tree.
    Analyze { file: PathBuf },
    /// Localize the Laplacian spectrum, or count eigenvalues in one interval.
    Spectrum(SpectrumArgs),
    /// Build a dominating set and recheck it.
    Dominate(DominateArgs),
    /// Write a tree from one of the built-in families.
    Generate {
        #[command(subcommand)]
        family: Family,
        /// Output file; the edge list goes to stdout when omitted.
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Run the full invariant suite on files, random trees or the extremal families.
    Verify(VerifyArgs),
    /// Hill-climb over trees of one order, maximizing gamma/mu.
    Search(SearchArgs),
    /// Contract clean 3-paths until none remain, reporting each step.
    Contract { file: PathBuf },
}

#[derive(Args)]
struct SpectrumArgs {
    file: PathBuf,
    /// Largest bracket width when localizing.
    #[arg(long, default_value = "1e-6")]
    tol: String,
    /// Count eigenvalues in [A, B) instead of localizing.
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
    interval: Option<Vec<String>>,
    /// Exclude the lower endpoint.
    #[arg(long, requires = "interval")]
    open_lo: bool,
    /// Include the upper endpoint.
    #[arg(long, requires = "interval")]
    closed_hi: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Dp,
    Brute,
    Greedy,
    Alg2,
    Alg3,
}

#[derive(Args)]
struct DominateArgs {
    file: PathBuf,
    #[arg(long, value_enum)]
    method: MethodArg,
    /// Minimum deep degree for alg3.
    #[arg(long)]
    k: Option<usize>,
    /// Explicit epsilon for alg3; requires a tree without adjacent degree-2 vertices.
    #[arg(long)]
    eps: Option<String>,
}

#[derive(Subcommand)]
enum Family {
    /// The 11-vertex two-level example with mu = 4, gamma = 5.
    TwoLevel,
    Path {
        #[arg(long)]
        n: usize,
    },
    Star {
        #[arg(long)]
        leaves: usize,
    },
    /// Legs given as comma-separated lengths, e.g. 2,2,3.
    Spider {
        #[arg(long, value_delimiter = ',', required = true)]
        legs: Vec<usize>,
    },
    /// k hanging nine-vertex subtrees; gamma/mu = 4k/(3k+1).
    Tight43 {
        #[arg(long)]
        k: usize,
    },
    /// 3n-vertex path with n-1 pendant leaves; nu = 2n-1, gamma = n.
    Caterpillar {
        #[arg(long)]
        n: usize,
    },
    /// Uniform labelled tree from a random Prüfer sequence.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random tree with clean 3-paths contracted away.
    Reduced {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random tree whose deep vertices all have degree at least k.
    HighDegree {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct VerifyArgs {
    files: Vec<PathBuf>,
    /// Number of random trees to check.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 1)]
    n_min: usize,
    #[arg(long, default_value_t = 120)]
    n_max: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also sweep the extremal families with parameter 2..=MAX.
    #[arg(long, value_name = "MAX")]
    families: Option<usize>,
    /// Include every per-tree report in the output.
    #[arg(long)]
    reports: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, default_value_t = 20)]
    n: usize,
    #[arg(long, default_value_t = 1000)]
    iters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Starting tree: tight43:K, caterpillar:N or an edge-list file.
    /// Defaults to a random tree on n vertices.
    #[arg(long)]
    start: Option<String>,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: TreeError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Generator(#[from] BadParameter),
    #[error(transparent)]
    Precondition(#[from] DominationError),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Precondition(_) => 3,
            _ => 1,
        }
    }
}

struct Out {
    quiet: bool,
}

impl Out {
    fn json<T: Serialize>(&self, value: &T) {
        self.raw(&(serde_json::to_string_pretty(value).expect("reports serialize") + "\n"));
    }

    // A closed pipe (e.g. `| head`) is not worth a panic.
    fn raw(&self, text: &str) {
        let _ = io::stdout().lock().write_all(text.as_bytes());
    }

    fn note(&self, line: impl AsRef<str>) {
        if !self.quiet {
            eprintln!("{}", line.as_ref());
        }
    }
}

fn read_tree(path: &Path) -> Result<Tree, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    Tree::parse(&text).map_err(|source| CliError::Parse {
        path: path.to_owned(),
        source,
    })
}

fn parse_rational(what: &str, text: &str) -> Result<Rational, CliError> {
    rational::parse(text).map_err(|e| CliError::Usage(format!("{what}: {e}")))
}

fn show(r: &Rational) -> String {
    if r.is_integer() {
        r.to_string()
    } else {
        format!("{r} (~{:.6})", to_f64(r))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            return ExitCode::from(code);
        }
    };
    let out = Out { quiet: cli.quiet };
    match run(cli.command, &out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// `Ok(false)` means the command ran but found a violated invariant.
fn run(command: Command, out: &Out) -> Result<bool, CliError> {
    match command {
        Command::Analyze { file } => cmd_analyze(&read_tree(&file)?, out),
        Command::Spectrum(args) => cmd_spectrum(args, out),
        Command::Dominate(args) => cmd_dominate(args, out),
        Command::Generate { family, output } => cmd_generate(family, output, out),
        Command::Verify(args) => cmd_verify(args, out),
        Command::Search(args) => cmd_search(args, out),
        Command::Contract { file } => cmd_contract(&read_tree(&file)?, out),
    }
}

fn cmd_analyze(t: &Tree, out: &Out) -> Result<bool, CliError> {
    let report = analyze(t);
    out.json(&report);
    out.note(format!(
        "n={} p={} mu={} nu={} gamma={} m[0,2)={}",
        report.n, report.p, report.mu, report.nu, report.gamma, report.below_2
    ));
    out.note(format!("gamma/mu = {}/{}", report.gamma_over_mu.num, report.gamma_over_mu.den));
    for b in &report.bounds {
        out.note(format!("  {:<4} {}", if b.holds { "ok" } else { "FAIL" }, b.statement));
    }
    Ok(report.all_hold())
}

fn cmd_spectrum(args: SpectrumArgs, out: &Out) -> Result<bool, CliError> {
    let t = read_tree(&args.file)?;
    if let Some(ends) = args.interval {
        let lo = parse_rational("interval start", &ends[0])?;
        let hi = parse_rational("interval end", &ends[1])?;
        let iv = Interval {
            lo,
            hi,
            closed_lo: !args.open_lo,
            closed_hi: args.closed_hi,
        };
        let count = count_interval(&t, &iv).map_err(|e| CliError::Usage(e.to_string()))?;
        out.json(&json!({
            "n": t.n(),
            "interval": {
                "lo": RationalJson::from(&iv.lo),
                "hi": RationalJson::from(&iv.hi),
                "closed_lo": iv.closed_lo,
                "closed_hi": iv.closed_hi,
            },
            "count": count,
        }));
        let (l, r) = (if iv.closed_lo { '[' } else { '(' }, if iv.closed_hi { ']' } else { ')' });
        out.note(format!("{count} eigenvalues in {l}{}, {}{r}", iv.lo, iv.hi));
        return Ok(true);
    }
    let tol = parse_rational("tol", &args.tol)?;
    let brackets = localize_spectrum(&t, &tol).map_err(|e| CliError::Usage(e.to_string()))?;
    let json_brackets: Vec<SpectralBracketJson> = brackets.iter().map(Into::into).collect();
    out.json(&json!({
        "n": t.n(),
        "tol": RationalJson::from(&tol),
        "brackets": json_brackets,
    }));
    for b in &brackets {
        let at = if b.is_exact() {
            format!("= {}", show(&b.lo))
        } else {
            format!("in ({:.9}, {:.9})", to_f64(&b.lo), to_f64(&b.hi))
        };
        out.note(format!("  x{:<3} {at}", b.multiplicity));
    }
    Ok(true)
}

#[derive(Serialize)]
struct BoundCheck {
    name: &'static str,
    holds: bool,
    lhs: RationalJson,
    rhs: RationalJson,
}

fn check(name: &'static str, lhs: Rational, rhs: Rational, holds: bool) -> BoundCheck {
    BoundCheck {
        name,
        holds,
        lhs: lhs.into(),
        rhs: rhs.into(),
    }
}

fn cmd_dominate(args: DominateArgs, out: &Out) -> Result<bool, CliError> {
    let t = read_tree(&args.file)?;
    let is_alg3 = matches!(args.method, MethodArg::Alg3);
    if !is_alg3 && (args.k.is_some() || args.eps.is_some()) {
        return Err(CliError::Usage("--k and --eps apply only to --method alg3".into()));
    }
    let cert: DominationCertificate = match args.method {
        MethodArg::Dp => dp_certificate(&t),
        MethodArg::Brute => brute_certificate(&t)?,
        MethodArg::Greedy => greedy_dominating(&t),
        MethodArg::Alg2 => alg2_dominating(&t)?,
        MethodArg::Alg3 => {
            let eps = args.eps.as_deref().map(|e| parse_rational("eps", e)).transpose()?;
            if eps.is_none() && args.k.is_none() {
                return Err(CliError::Usage("alg3 needs --k or --eps".into()));
            }
            alg3_dominating(&t, args.k.unwrap_or(0), eps)?
        }
    };

    let members = cert.set.members();
    let dominating = is_dominating(&t, members);
    let gamma = gamma_dp(&t).0;
    let size = cert.size();
    let r = |x: usize| int(x as i64);
    let mut bounds = vec![
        check("is_dominating", r(undominated(&t, members).len()), int(0), dominating),
        check("size_ge_gamma", r(size), r(gamma), size >= gamma),
    ];
    let n = t.n();
    let p = penultimate_count(&t);
    match args.method {
        MethodArg::Dp | MethodArg::Brute | MethodArg::Greedy => {
            bounds.push(check("size_eq_gamma", r(size), r(gamma), size == gamma));
        }
        MethodArg::Alg2 if n >= 3 => {
            let rhs = r(mu(&t)) + ratio(p as i64 - 1, 3);
            bounds.push(check("alg2_size_bound", r(size), rhs.clone(), r(size) <= rhs));
        }
        MethodArg::Alg3 if n >= 3 => {
            let eps = cert.epsilon.clone().expect("alg3 records epsilon");
            let rhs = (int(1) + eps) * r(p);
            bounds.push(check("high_degree_bound", r(size), rhs.clone(), r(size) < rhs));
        }
        _ => {}
    }
    let ok = bounds.iter().all(|b| b.holds);
    let trace: Vec<TraceEntryJson> = cert.trace.iter().map(Into::into).collect();
    out.json(&json!({
        "method": cert.method,
        "members": members,
        "size": size,
        "is_dominating": dominating,
        "gamma": gamma,
        "minimum": size == gamma,
        "root": cert.root,
        "epsilon": cert.epsilon.as_ref().map(RationalJson::from),
        "bounds_checked": bounds,
        "trace": trace,
    }));
    out.note(format!("size {size} (gamma {gamma}), members {members:?}"));
    for b in &bounds {
        out.note(format!("  {:<4} {}", if b.holds { "ok" } else { "FAIL" }, b.name));
    }
    Ok(ok)
}

fn cmd_generate(family: Family, output: Option<PathBuf>, out: &Out) -> Result<bool, CliError> {
    let (name, t) = match family {
        Family::TwoLevel => ("two-level", generators::two_level()),
        Family::Path { n } => ("path", generators::path(n)?),
        Family::Star { leaves } => ("star", generators::star(leaves)?),
        Family::Spider { legs } => ("spider", generators::spider(&legs)?),
        Family::Tight43 { k } => ("tight43", generators::tight43(k)?),
        Family::Caterpillar { n } => ("caterpillar", generators::caterpillar(n)?),
        Family::Random { n, seed } => ("random", generators::random_tree(n, seed)?),
        Family::Reduced { n, seed } => ("reduced", generators::random_reduced(n, seed)?),
        Family::HighDegree { n, k, seed } => ("high-degree", generators::random_high_degree(n, k, seed)?),
    };
    let text = t.to_edge_list();
    match output {
        Some(path) => {
            fs::write(&path, &text).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            out.json(&json!({ "family": name, "n": t.n(), "output": path }));
            out.note(format!("wrote {name} tree on {} vertices to {}", t.n(), path.display()));
        }
        None => out.raw(&text),
    }
    Ok(true)
}

fn cmd_verify(args: VerifyArgs, out: &Out) -> Result<bool, CliError> {
    if args.files.is_empty() && args.random.is_none() && args.families.is_none() {
        return Err(CliError::Usage("nothing to verify: give files, --random or --families".into()));
    }
    if args.n_min == 0 || args.n_min > args.n_max {
        return Err(CliError::Usage(format!("bad size range {}..={}", args.n_min, args.n_max)));
    }
    let mut trees = args.files.iter().map(|f| read_tree(f)).collect::<Result<Vec<_>, _>>()?;
    if let Some(count) = args.random {
        let mut g = rng(args.seed);
        for _ in 0..count {
            let n = g.gen_range(args.n_min..=args.n_max);
            trees.push(generators::random_tree(n, g.gen())?);
        }
    }
    let (reports, mut summary) = verify_all(&trees, args.seed);
    if let Some(max) = args.families {
        verify_families(&mut summary, max);
    }
    if args.reports {
        out.json(&json!({ "summary": summary, "reports": reports }));
    } else {
        out.json(&json!({ "summary": summary }));
    }
    out.note(format!("{} trees, {} violations", summary.trees, summary.violations));
    for (name, tally) in &summary.checks {
        out.note(format!("  {name:<32} {:>7} passed {:>4} failed", tally.passed, tally.failed));
    }
    for (i, c) in &summary.failures {
        out.note(format!("  FAIL #{i} {}: {}", c.name, c.detail));
    }
    Ok(summary.violations == 0)
}

fn cmd_search(args: SearchArgs, out: &Out) -> Result<bool, CliError> {
    let (label, start) = match args.start.as_deref() {
        None => (format!("random:{}", args.n), generators::random_tree(args.n, args.seed)?),
        Some(given) => {
            let param = |p: &str| {
                p.parse::<usize>()
                    .map_err(|_| CliError::Usage(format!("bad start parameter in {given:?}")))
            };
            let tree = if let Some(k) = given.strip_prefix("tight43:") {
                generators::tight43(param(k)?)?
            } else if let Some(n) = given.strip_prefix("caterpillar:") {
                generators::caterpillar(param(n)?)?
            } else {
                read_tree(Path::new(given))?
            };
            (given.to_owned(), tree)
        }
    };
    let report = search::hill_climb(start, label, args.iters, args.seed);
    out.json(&report);
    out.note(format!(
        "best gamma/mu = {}/{} (~{:.6}) on n={} after {} iterations, {} improvements",
        report.best_gamma,
        report.best_mu,
        report.best_ratio.approx,
        report.n,
        report.iters,
        report.trajectory.len() - 1
    ));
    Ok(report.below_four_thirds)
}

#[derive(Serialize)]
struct StepReport {
    path: CleanPath3,
    n_before: usize,
    n_after: usize,
    #[serde(flatten)]
    counts: ContractionStep,
    mu_drop_ok: bool,
    gamma_drop_ok: bool,
    ratio_ok: bool,
}

fn cmd_contract(t: &Tree, out: &Out) -> Result<bool, CliError> {
    let trace = reduction_trace(t);
    let steps: Vec<StepReport> = trace
        .paths
        .iter()
        .zip(trace.stages.windows(2))
        .map(|(&path, pair)| {
            let counts = contraction_step(&pair[0], &pair[1]);
            StepReport {
                path,
                n_before: pair[0].n(),
                n_after: pair[1].n(),
                mu_drop_ok: counts.mu_drop_ok(),
                gamma_drop_ok: counts.gamma_drop_ok(),
                ratio_ok: counts.ratio_ok(),
                counts,
            }
        })
        .collect();
    let all_ok = steps.iter().all(|s| s.counts.ok());
    let reduced = trace.result();
    out.json(&json!({
        "n": t.n(),
        "steps": steps,
        "reduced": { "n": reduced.n(), "edges": reduced.edges() },
        "all_ok": all_ok,
    }));
    out.note(format!("{} contraction steps, n {} -> {}", steps.len(), t.n(), reduced.n()));
    for s in &steps {
        let c = &s.counts;
        out.note(format!(
            "  {:?}: mu {} -> {}, gamma {} -> {}{}",
            s.path.vertices(),
            c.mu_before,
            c.mu_after,
            c.gamma_before,
            c.gamma_after,
            if c.ok() { "" } else { "  FAIL" }
        ));
    }
    Ok(all_ok)
}
