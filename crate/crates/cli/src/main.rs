//! `terrace`: build groups, search for terraces, verify them and emit the
//! Latin squares they give.
//!
//! Exit codes: 0 success, 1 property or goal not satisfied, 2 usage or
//! input error, 3 budget exhausted.

mod config;
mod runs;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Instant, SystemTime};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use terrace_core::enumerate::{
    enumerate_basic_with, search_with, EnumConfig, EnumKind, EnumMode, SearchConfig, SearchOutcome,
};
use terrace_core::groups::{catalogue_names, parse_group_spec, Group};
use terrace_core::hillclimb::{climb_many, ClimbMode, ClimbParams, ClimbResult, Outcome, RestartPolicy};
use terrace_core::latin::{square_from, LatinSquare};
use terrace_core::orbit::{explore_chain_with, extendable, orbit_of_with, OrbitConfig};
use terrace_core::par::Exec;
use terrace_core::props::{self, classify};
use terrace_core::terrace_file::TerraceFile;

use config::RunConfig;

const EXIT_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_EXHAUSTED: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "terrace", version, about = "Terraces, sequencings and complete Latin squares")]
struct Cli {
    /// key=value config file (default: $TERRACE_CONFIG)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for run records
    #[arg(long, global = true)]
    run_dir: Option<PathBuf>,
    /// Do not write a run record
    #[arg(long, global = true)]
    no_save: bool,
    /// Worker threads (0 = all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Run everything on the calling thread
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Describe a group, or list the named catalogue
    Group(GroupArgs),
    /// Hill-climb for a (directed) terrace
    Climb(ClimbArgs),
    /// Enumerate or count basic arrangements of one kind
    Enumerate(EnumerateArgs),
    /// Check properties of a terrace file
    Verify(VerifyArgs),
    /// Build a Latin square and certify it
    Square(SquareArgs),
    /// Orbit closure or chain search from a terrace
    Orbit(OrbitArgs),
    /// Essentially different terrace and directed terrace counts
    Table(TableArgs),
}

#[derive(Args, Debug)]
struct GroupArgs {
    /// Group spec, e.g. Z6xZ2, D12, Q16, SD(7,3,4), A4
    group: Option<String>,
    /// List catalogue names
    #[arg(long)]
    list: bool,
    /// Include element words
    #[arg(long)]
    words: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Directed,
    Terrace,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PolicyArg {
    TeleportOnly,
    FreshRandom,
}

#[derive(Args, Debug)]
struct ClimbArgs {
    #[arg(long)]
    group: String,
    #[arg(long, value_enum, default_value = "directed")]
    mode: ModeArg,
    #[arg(long)]
    seed: Option<u64>,
    /// Run this many consecutive seeds and report the first success
    #[arg(long)]
    seeds: Option<u64>,
    #[arg(long)]
    max_steps: Option<u64>,
    #[arg(long)]
    max_restarts: Option<u32>,
    #[arg(long, value_enum)]
    restart_policy: Option<PolicyArg>,
    #[arg(long)]
    cuts: Option<u8>,
    /// Record the altitude after every accepted move
    #[arg(long)]
    trace: bool,
    /// Write the found arrangement as a terrace file
    #[arg(long)]
    save_terrace: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    group: String,
    /// directed, terrace, t<k>, half-and-half, narcissistic, directed-half-and-half
    #[arg(long, default_value = "terrace")]
    mode: String,
    /// Also count orbits under the automorphism group
    #[arg(long)]
    essential: bool,
    /// Print counts only, no witnesses
    #[arg(long)]
    count_only: bool,
    /// Stop at the first witness (works for larger orders)
    #[arg(long)]
    first: bool,
    /// Disable automorphism pruning with --first
    #[arg(long)]
    no_symmetry: bool,
    #[arg(long)]
    max_nodes: Option<u64>,
    #[arg(long)]
    save_terrace: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Group spec; defaults to the one named in the file
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    terrace: PathBuf,
    /// terrace, directed, t<k>, half-and-half, narcissistic,
    /// directed-half-and-half, symmetric, extendable, basic
    #[arg(long = "property")]
    properties: Vec<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum SquareFormat {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct SquareArgs {
    #[arg(long)]
    group: Option<String>,
    /// Terrace file to build the square from
    #[arg(long, conflicts_with = "square")]
    terrace: Option<PathBuf>,
    /// Existing square as CSV of symbol ids
    #[arg(long)]
    square: Option<PathBuf>,
    /// complete, row-complete, quasi, row-quasi, roman:<k>, k-complete:<k>, vatican
    #[arg(long = "check")]
    checks: Vec<String>,
    #[arg(long, value_enum, default_value = "json")]
    out: SquareFormat,
    /// Write the square here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Render symbols as group words
    #[arg(long)]
    words: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FindArg {
    Extendable,
}

#[derive(Args, Debug)]
struct OrbitArgs {
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    terrace: PathBuf,
    /// Search a chain (single-piece reversals allowed) for this property
    #[arg(long, value_enum)]
    find: Option<FindArg>,
    #[arg(long)]
    limit: Option<usize>,
    #[arg(long)]
    save_terrace: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// Groups to count (default: every group of order 5 to 12)
    groups: Vec<String>,
}

const TABLE_DEFAULT: &[&str] = &[
    "Z5", "Z6", "D6", "Z8", "Z4xZ2", "D8", "Q8", "Z9", "Z3xZ3", "Z10", "D10", "Z11", "Z12", "Z6xZ2", "D12", "Q12", "A4",
];

/// What a command produced.
struct Report {
    result: Value,
    exit: u8,
    /// Extra stdout before the result (streamed records, CSV).
    preamble: Vec<String>,
    /// Print the result JSON on stdout.
    print_result: bool,
}

impl Report {
    fn new(result: Value, exit: u8) -> Self {
        Self { result, exit, preamble: Vec::new(), print_result: true }
    }
}

struct Ctx {
    cfg: RunConfig,
    exec: Exec,
}

fn group(spec: &str) -> Result<Group> {
    parse_group_spec(spec).with_context(|| format!("group {spec:?}"))
}

fn terrace_input(group_flag: Option<&str>, path: &Path) -> Result<(Group, Vec<usize>)> {
    let file = TerraceFile::load(path).with_context(|| format!("terrace file {}", path.display()))?;
    let g = match group_flag {
        Some(spec) => group(spec)?,
        None => file.build_group()?,
    };
    let a = file.resolve_for(&g).with_context(|| format!("terrace file {}", path.display()))?;
    Ok((g, a))
}

fn write_terrace(path: &Path, g: &Group, a: &[usize]) -> Result<()> {
    let text = TerraceFile::from_words(g, a).to_json() + "\n";
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn cmd_group(args: &GroupArgs) -> Result<Report> {
    if args.list {
        return Ok(Report::new(json!({ "catalogue": catalogue_names() }), 0));
    }
    let spec = args.group.as_deref().ok_or_else(|| anyhow!("give a group spec or --list"))?;
    let g = group(spec)?;
    let mut v = json!({
        "group": g.spec(),
        "order": g.order(),
        "abelian": g.is_abelian(),
        "exponent": g.exponent(),
        "involutions": g.involutions().len(),
        "binary": g.is_binary(),
        "center_order": g.center().len(),
        "inverse_pair_classes": g.class_count(),
        "order_profile": g.order_profile(),
    });
    if args.words {
        v["words"] = json!(g.words());
    }
    Ok(Report::new(v, 0))
}

fn cmd_climb(ctx: &mut Ctx, args: &ClimbArgs) -> Result<Report> {
    let c = &mut ctx.cfg;
    if let Some(v) = args.seed {
        c.seed = v;
    }
    if let Some(v) = args.seeds {
        c.seeds = v;
    }
    if let Some(v) = args.max_steps {
        c.max_steps = v;
    }
    if let Some(v) = args.max_restarts {
        c.max_restarts = v;
    }
    if let Some(p) = args.restart_policy {
        c.restart_policy = match p {
            PolicyArg::TeleportOnly => RestartPolicy::TeleportOnly,
            PolicyArg::FreshRandom => RestartPolicy::FreshRandom,
        };
    }
    if let Some(v) = args.cuts {
        c.max_cuts = v;
    }
    let g = group(&args.group)?;
    let params = ClimbParams {
        mode: match args.mode {
            ModeArg::Directed => ClimbMode::Directed,
            ModeArg::Terrace => ClimbMode::Terrace,
        },
        max_cuts: c.max_cuts,
        seed: c.seed,
        max_steps: c.max_steps,
        max_restarts: c.max_restarts,
        restart_policy: c.restart_policy,
        record_trace: args.trace,
    };
    let seeds: Vec<u64> = (0..c.seeds.max(1)).map(|i| c.seed.wrapping_add(i)).collect();
    let results = climb_many(&g, &params, &seeds, ctx.exec)?;
    let found: Option<&ClimbResult> = results.iter().find(|r| r.outcome == Outcome::Found);
    let best = found.unwrap_or_else(|| results.iter().max_by_key(|r| r.altitude).expect("at least one seed"));
    if let (Some(path), Some(r)) = (&args.save_terrace, found) {
        write_terrace(path, &g, &r.arrangement)?;
    }
    let result = json!({
        "group": g.spec(),
        "mode": params.mode,
        "result": best,
        "words": best.arrangement.iter().map(|&x| g.word(x)).collect::<Vec<_>>(),
        "seeds_tried": results.iter().map(|r| json!({
            "seed": r.seed, "outcome": r.outcome, "altitude": r.altitude,
            "steps_taken": r.steps_taken, "teleports_taken": r.teleports_taken,
        })).collect::<Vec<_>>(),
    });
    Ok(Report::new(result, if found.is_some() { 0 } else { EXIT_EXHAUSTED }))
}

fn cmd_enumerate(ctx: &mut Ctx, args: &EnumerateArgs) -> Result<Report> {
    let g = group(&args.group)?;
    let kind: EnumKind = args.mode.parse().map_err(|e| anyhow!("{e}"))?;
    if let Some(v) = args.max_nodes {
        ctx.cfg.max_nodes = Some(v);
    }
    let c = &ctx.cfg;
    let started = Instant::now();

    if args.first {
        let scfg = SearchConfig {
            cap: c.search_cap,
            use_symmetry: !args.no_symmetry,
            aut_cap: c.aut_cap,
            max_nodes: c.max_nodes,
            exec: ctx.exec,
        };
        let report = search_with(&g, kind, &scfg)?;
        let (exit, witness) = match &report.outcome {
            SearchOutcome::Found(w) => (0, Some(w.clone())),
            SearchOutcome::Exhausted => (EXIT_FAILED, None),
            SearchOutcome::BudgetExceeded => (EXIT_EXHAUSTED, None),
        };
        if let (Some(path), Some(w)) = (&args.save_terrace, &witness) {
            write_terrace(path, &g, w)?;
        }
        let result = json!({
            "group": g.spec(),
            "mode": kind.to_string(),
            "outcome": match report.outcome {
                SearchOutcome::Found(_) => "found",
                SearchOutcome::Exhausted => "none",
                SearchOutcome::BudgetExceeded => "budget-exceeded",
            },
            "witness": witness,
            "words": witness.as_ref().map(|w| w.iter().map(|&x| g.word(x)).collect::<Vec<_>>()),
            "nodes": report.nodes,
        });
        eprintln!("search took {:.3}s", started.elapsed().as_secs_f64());
        return Ok(Report::new(result, exit));
    }

    let ecfg =
        EnumConfig { terrace_cap: c.terrace_cap, directed_cap: c.directed_cap, aut_cap: c.aut_cap, exec: ctx.exec };
    let mode = EnumMode { kind, count_only: args.count_only, essentially_different: args.essential };
    let res = enumerate_basic_with(&g, mode, &ecfg)?;
    let seconds = started.elapsed().as_secs_f64();
    let mut preamble: Vec<String> = res.witnesses.iter().map(|w| json!({ "elements": w }).to_string()).collect();
    let summary = json!({
        "group": g.spec(),
        "mode": kind.to_string(),
        "raw": res.raw_count,
        "essential": res.essential_count,
    });
    let mut final_line = summary.clone();
    final_line["seconds"] = json!((seconds * 1000.0).round() / 1000.0);
    preamble.push(final_line.to_string());
    Ok(Report {
        result: json!({
            "summary": summary,
            "automorphisms": res.automorphism_count,
            "nodes": res.nodes,
            "witnesses": res.witnesses,
        }),
        exit: 0,
        preamble,
        print_result: false,
    })
}

fn check_property(g: &Group, a: &[usize], prop: &str) -> Result<bool> {
    Ok(match prop {
        "basic" => a.first() == Some(&0),
        "symmetric" => props::is_symmetric_sequencing(g, a)?,
        "extendable" => props::is_extendable(g, a)?.is_some(),
        other => {
            let kind: EnumKind = other.parse().map_err(|e| anyhow!("unknown property {other:?}: {e}"))?;
            if let EnumKind::DirectedTk(k) = kind {
                props::is_directed_tk(g, a, k)?
            } else {
                if matches!(kind, EnumKind::HalfAndHalf | EnumKind::Narcissistic | EnumKind::DirectedHalfAndHalf)
                    && g.order().is_multiple_of(2)
                {
                    bail!("{other} is defined for odd order only");
                }
                kind.verify(g, a)
            }
        }
    })
}

fn cmd_verify(args: &VerifyArgs) -> Result<Report> {
    let (g, a) = terrace_input(args.group.as_deref(), &args.terrace)?;
    let mut checks = Vec::new();
    let mut all = true;
    for p in &args.properties {
        let holds = check_property(&g, &a, p)?;
        all &= holds;
        checks.push(json!({ "property": p, "holds": holds }));
    }
    let result = json!({
        "group": g.spec(),
        "elements": a,
        "report": classify(&g, &a),
        "checks": checks,
        "passed": all,
    });
    Ok(Report::new(result, if all { 0 } else { EXIT_FAILED }))
}

fn square_check(sq: &LatinSquare, check: &str) -> Result<bool> {
    let k = |prefix: &str| -> Result<Option<usize>> {
        match check.strip_prefix(prefix) {
            Some(v) => Ok(Some(v.parse().with_context(|| format!("check {check:?}: bad k"))?)),
            None => Ok(None),
        }
    };
    if let Some(k) = k("roman:")? {
        return Ok(sq.is_roman(k));
    }
    if let Some(k) = k("k-complete:")? {
        return Ok(sq.is_k_complete(k));
    }
    Ok(match check {
        "complete" => sq.is_complete(),
        "row-complete" => sq.is_row_complete(),
        "quasi" | "quasi-complete" => sq.is_quasi_complete(),
        "row-quasi" | "row-quasi-complete" => sq.is_row_quasi_complete(),
        "vatican" => sq.is_vatican(),
        _ => bail!("unknown check {check:?}"),
    })
}

fn read_square_csv(path: &Path) -> Result<LatinSquare> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_path(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|f| f.trim().parse::<usize>().with_context(|| format!("bad symbol {f:?}")))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(LatinSquare::from_rows(&rows)?)
}

fn cmd_square(args: &SquareArgs) -> Result<Report> {
    let (sq, g) = match (&args.terrace, &args.square) {
        (Some(t), None) => {
            let (g, a) = terrace_input(args.group.as_deref(), t)?;
            (square_from(&g, &a), Some(g))
        }
        (None, Some(s)) => (read_square_csv(s)?, args.group.as_deref().map(group).transpose()?),
        _ => bail!("give --terrace or --square"),
    };
    if args.words && g.is_none() {
        bail!("--words needs a group");
    }
    let render = if args.words { g.as_ref() } else { None };
    let mut checks = Vec::new();
    let mut all = true;
    for c in &args.checks {
        let holds = square_check(&sq, c)?;
        all &= holds;
        checks.push(json!({ "check": c, "holds": holds }));
    }
    let certificate = sq.certificate();
    let body = match args.out {
        SquareFormat::Csv => sq.to_csv(render),
        SquareFormat::Json => {
            let mut v = sq.to_json();
            if let Some(g) = render {
                v["words"] = json!(sq
                    .rows()
                    .iter()
                    .map(|r| r.iter().map(|&s| g.word(s)).collect::<Vec<_>>())
                    .collect::<Vec<_>>());
            }
            serde_json::to_string_pretty(&v)? + "\n"
        }
    };
    let mut result = json!({
        "order": sq.order(),
        "group": g.as_ref().map(|g| g.spec()),
        "checks": checks,
        "passed": all,
        "certificate": certificate,
    });
    let mut report = Report::new(Value::Null, if all { 0 } else { EXIT_FAILED });
    match &args.output {
        Some(path) => {
            std::fs::write(path, &body).with_context(|| format!("writing {}", path.display()))?;
            result["output"] = json!(path.display().to_string());
        }
        None => {
            report.preamble.push(body.trim_end_matches('\n').to_string());
            report.print_result = false;
        }
    }
    report.result = result;
    Ok(report)
}

fn cmd_orbit(ctx: &mut Ctx, args: &OrbitArgs) -> Result<Report> {
    if let Some(v) = args.limit {
        ctx.cfg.limit = v;
    }
    let (g, a) = terrace_input(args.group.as_deref(), &args.terrace)?;
    let ocfg = OrbitConfig { aut_cap: ctx.cfg.aut_cap, exec: ctx.exec };
    match args.find {
        None => {
            let orbit = orbit_of_with(&g, &a, &ocfg)?;
            let result = json!({
                "group": g.spec(),
                "size": orbit.len(),
                "members": orbit.members(),
            });
            Ok(Report::new(result, 0))
        }
        Some(FindArg::Extendable) => {
            let r = explore_chain_with(&g, &a, ctx.cfg.limit, extendable, &ocfg)?;
            if let (Some(path), Some(w)) = (&args.save_terrace, &r.found) {
                write_terrace(path, &g, w)?;
            }
            let exit = match (&r.found, r.exhausted) {
                (Some(_), _) => 0,
                (None, true) => EXIT_FAILED,
                (None, false) => EXIT_EXHAUSTED,
            };
            let result = json!({
                "group": g.spec(),
                "find": "extendable",
                "found": r.found.is_some(),
                "visited": r.visited,
                "component_exhausted": r.exhausted,
                "witness": r.found.as_ref().map(|w| TerraceFile::from_words(&g, w)),
                "witness_j": r.found.as_ref().and_then(|w| props::is_extendable(&g, w).ok().flatten()),
            });
            Ok(Report::new(result, exit))
        }
    }
}

fn cmd_table(ctx: &Ctx, args: &TableArgs) -> Result<Report> {
    let specs: Vec<String> = if args.groups.is_empty() {
        TABLE_DEFAULT.iter().map(|s| s.to_string()).collect()
    } else {
        args.groups.clone()
    };
    let ecfg = EnumConfig {
        terrace_cap: ctx.cfg.terrace_cap,
        directed_cap: ctx.cfg.directed_cap,
        aut_cap: ctx.cfg.aut_cap,
        exec: ctx.exec,
    };
    let mut rows = Vec::new();
    for s in &specs {
        let g = group(s)?;
        let (t, d) = terrace_core::enumerate::count_table_with(&g, &ecfg)?;
        rows.push(json!({ "group": g.spec(), "order": g.order(), "t": t, "d": d }));
    }
    Ok(Report::new(json!({ "rows": rows }), 0))
}

fn configure_threads(threads: usize) -> Result<()> {
    #[cfg(feature = "parallel")]
    if threads > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().context("configuring the thread pool")?;
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(())
}

fn run(cli: Cli, argv: &[String]) -> Result<u8> {
    let (mut cfg, _) = RunConfig::load(cli.config.as_deref())?;
    if let Some(d) = &cli.run_dir {
        cfg.run_dir = d.clone();
    }
    if let Some(t) = cli.threads {
        cfg.threads = t;
    }
    configure_threads(cfg.threads)?;
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    let mut ctx = Ctx { cfg, exec };

    let started = SystemTime::now();
    let clock = Instant::now();
    let (name, report) = match &cli.command {
        Command::Group(a) => ("group", cmd_group(a)?),
        Command::Climb(a) => ("climb", cmd_climb(&mut ctx, a)?),
        Command::Enumerate(a) => ("enumerate", cmd_enumerate(&mut ctx, a)?),
        Command::Verify(a) => ("verify", cmd_verify(a)?),
        Command::Square(a) => ("square", cmd_square(a)?),
        Command::Orbit(a) => ("orbit", cmd_orbit(&mut ctx, a)?),
        Command::Table(a) => ("table", cmd_table(&ctx, a)?),
    };
    let record = runs::Record { version: runs::VERSION, command: name, argv, config: &ctx.cfg, result: report.result };

    let printed = (|| -> std::io::Result<()> {
        let stdout = std::io::stdout();
        let mut out = stdout.lock();
        for line in &report.preamble {
            writeln!(out, "{line}")?;
        }
        if report.print_result {
            out.write_all(runs::record_json(&record).as_bytes())?;
        }
        out.flush()
    })();
    match printed {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
        _ => {}
    }
    if !cli.no_save {
        let path = runs::save(&ctx.cfg.run_dir, &record, started, clock.elapsed(), report.exit)?;
        eprintln!("saved {}", path.display());
    }
    Ok(report.exit)
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    let shown: Vec<String> = std::iter::once("terrace".to_string()).chain(argv.into_iter().skip(1)).collect();
    match run(cli, &shown) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
