use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use fagroup::catalog::{self, CatalogSpec, GroupFormat};
use fagroup::covering::{self, VerifyOptions};
use fagroup::harness::{self, HarnessOptions, RowStatus};
use fagroup::presentation::classify::{analyze, Hint};
use fagroup::presentation::Presentation;
use fagroup::search::{self, Witness};
use fagroup::structure;
use fagroup::{Caps, Error, FiniteGroup};

#[derive(Parser, Debug)]
#[command(name = "fagroup", version, about = "Decide and witness finite annihilation of groups")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Caps as `key=value` pairs: order, normal, weight, search_budget.
    /// Separate pairs with commas, quote a space-separated list, or repeat the flag.
    #[arg(long, global = true, action = clap::ArgAction::Append, value_delimiter = ',')]
    caps: Vec<String>,
    /// TOML file with the same keys as `--caps`, plus `format` and `jobs`.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads for parallel searches.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a finitely presented group from its abelianisation.
    Analyze {
        file: PathBuf,
        #[arg(long, default_value = "none")]
        hint: String,
        #[arg(long, default_value_t = 1)]
        nfa: usize,
    },
    /// Decide F-A and related properties of a finite group.
    Finite {
        /// Group spec such as `C 15`, `S 5` or `prod(C 2, Q8)`.
        spec: Option<String>,
        /// Read the group from a file instead.
        #[arg(long, conflicts_with = "spec")]
        file: Option<PathBuf>,
        #[arg(long, default_value = "permutations")]
        kind: String,
        #[arg(long)]
        nfa: Option<usize>,
        #[arg(long)]
        weight: bool,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        subcover: bool,
    },
    /// Search for a finite quotient that kills a word.
    Witness {
        file: PathBuf,
        word: String,
        #[arg(long, default_value_t = 30)]
        bound: usize,
    },
    /// Search for any nontrivial finite quotient.
    Quotient {
        file: PathBuf,
        #[arg(long, default_value_t = 30)]
        bound: usize,
    },
    /// Look for witnesses for every reduced word up to a length.
    Scan {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        length: usize,
        #[arg(long, default_value_t = 5)]
        bound: usize,
    },
    /// Cross-check the finite criteria over a catalog.
    VerifyAll {
        #[arg(long, default_value_t = 32)]
        max_order: usize,
        #[arg(long, default_value_t = 3)]
        nfa_max: usize,
        /// Catalog spec file; the built-in catalog otherwise.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Extra Cayley-table files, checked as given (no validation on load).
        #[arg(long, num_args = 1..)]
        cayley: Vec<PathBuf>,
    },
    /// List the groups of a catalog.
    Catalog {
        #[arg(long)]
        spec: Option<PathBuf>,
    },
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    format: Option<Format>,
    jobs: Option<usize>,
    order: Option<usize>,
    normal: Option<usize>,
    weight: Option<usize>,
    search_budget: Option<u128>,
}

/// Process outcome: exit code plus message for stderr.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ClosureExceedsCap { .. }
            | Error::OrderCapExceeded { .. }
            | Error::SearchBudgetExceeded { .. } => 3,
            Error::Io(_) => 4,
            _ => 2,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

/// Attach the offending path to an error message.
fn at_path(path: &Path, e: Error) -> Failure {
    let f = Failure::from(e);
    Failure {
        code: f.code,
        msg: format!("{}: {}", path.display(), f.msg),
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        msg: msg.into(),
    }
}

struct Ctx {
    format: Format,
    caps: Caps,
}

impl Ctx {
    fn emit(&self, value: &Value, text: impl FnOnce() -> String) {
        let out = match self.format {
            Format::Json => serde_json::to_string_pretty(value).expect("json") + "\n",
            Format::Text => text(),
        };
        // a closed pipe (e.g. `| head`) is not an error worth reporting
        let mut stdout = std::io::stdout().lock();
        let _ = stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush());
    }
}

fn apply_cap(caps: &mut Caps, key: &str, value: &str) -> Result<(), Failure> {
    let bad = || usage(format!("bad cap value `{key}={value}`"));
    match key {
        "order" => caps.order = value.parse().map_err(|_| bad())?,
        "normal" => caps.normal = value.parse().map_err(|_| bad())?,
        "weight" => caps.weight = value.parse().map_err(|_| bad())?,
        "search_budget" | "budget" => caps.search_budget = value.parse().map_err(|_| bad())?,
        _ => return Err(usage(format!("unknown cap `{key}`"))),
    }
    Ok(())
}

fn build_ctx(cli: &Cli) -> Result<Ctx, Failure> {
    let file: ConfigFile = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| at_path(path, e.into()))?;
            toml::from_str(&text).map_err(|e| usage(format!("config {}: {e}", path.display())))?
        }
        None => ConfigFile::default(),
    };
    let mut caps = Caps::default();
    for (k, v) in [
        ("order", file.order.map(|x| x.to_string())),
        ("normal", file.normal.map(|x| x.to_string())),
        ("weight", file.weight.map(|x| x.to_string())),
        ("search_budget", file.search_budget.map(|x| x.to_string())),
    ] {
        if let Some(v) = v {
            apply_cap(&mut caps, k, &v)?;
        }
    }
    for kv in cli.caps.iter().flat_map(|s| s.split_whitespace()) {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| usage(format!("expected key=value in --caps, got `{kv}`")))?;
        apply_cap(&mut caps, k, v)?;
    }
    if let Some(jobs) = cli.jobs.or(file.jobs) {
        if jobs == 0 {
            return Err(usage("--jobs must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| usage(e.to_string()))?;
    }
    Ok(Ctx {
        format: cli.format.or(file.format).unwrap_or(Format::Text),
        caps,
    })
}

/// Read a presentation file; `#` comments are blanked so byte offsets survive.
fn read_presentation(path: &Path) -> Result<Presentation, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| at_path(path, e.into()))?;
    let cleaned: String = text
        .lines()
        .map(|l| match l.find('#') {
            Some(i) => format!("{}{}", &l[..i], " ".repeat(l.len() - i)),
            None => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n");
    cleaned.parse::<Presentation>().map_err(|e| at_path(path, e))
}

fn cmd_analyze(ctx: &Ctx, file: &Path, hint: &str, nfa: usize) -> Result<u8, Failure> {
    let p = read_presentation(file)?;
    let hint: Hint = hint.parse()?;
    let a = analyze(&p, nfa, hint)?;
    let value = serde_json::to_value(&a).expect("json");
    ctx.emit(&value, || {
        let mut s = String::new();
        let _ = writeln!(s, "presentation: {}", a.presentation);
        let _ = writeln!(s, "invariants:   {}", a.invariants);
        let _ = writeln!(s, "{:<14}{}", format!("{}:", a.property), a.verdict);
        let _ = writeln!(s, "rule:         {}", a.rule.as_str());
        let _ = writeln!(s, "reason:       {}", a.reason);
        let _ = writeln!(s, "easily F-A:   {}", a.easily_fa);
        let _ = writeln!(s, "perfect:      {}", a.perfect);
        let _ = writeln!(s, "abelian-A:    {}", a.abelian_a);
        let _ = writeln!(s, "free-A:       {}", a.free_a);
        s
    });
    Ok(0)
}

fn load_finite(ctx: &Ctx, spec: Option<&str>, file: Option<&Path>, kind: &str) -> Result<FiniteGroup, Failure> {
    match (spec, file) {
        (_, Some(path)) => {
            catalog::load_group(path, kind.parse::<GroupFormat>()?, ctx.caps.order).map_err(|e| at_path(path, e))
        }
        (Some(spec), None) => Ok(catalog::parse_group_spec(spec, ctx.caps.order)?),
        (None, None) => Err(usage("give a group spec or --file")),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_finite(
    ctx: &Ctx,
    spec: Option<&str>,
    file: Option<&Path>,
    kind: &str,
    nfa: Option<usize>,
    weight: bool,
    verify: bool,
    subcover: bool,
) -> Result<u8, Failure> {
    let g = load_finite(ctx, spec, file, kind)?;
    let caps = &ctx.caps;
    let mut fa = covering::is_fa_finite(&g, caps)?;
    if subcover {
        fa = fa.with_subcover();
    }
    let mut out = json!({"group": g.name(), "order": g.order(), "fa": fa.to_json()});
    let mut text = format!(
        "{} (order {}): {}\n",
        g.name(),
        g.order(),
        if fa.verdict { "F-A" } else { "not F-A" }
    );
    if fa.verdict {
        let _ = writeln!(text, "  cover: {} maximal normal subgroups", fa.cover.len());
    } else {
        let _ = writeln!(text, "  uncovered element: {:?}", fa.uncovered);
    }
    if let Some(sub) = &fa.subcover {
        let _ = writeln!(text, "  greedy subcover: {} subgroups", sub.len());
    }
    let mut code = 0;
    if let Some(n) = nfa {
        let r = covering::is_nfa_finite(&g, n, caps)?;
        let _ = writeln!(
            text,
            "  {n}-F-A: {}{}",
            r.verdict,
            if r.verdict { String::new() } else { format!(" (uncovered {:?})", r.uncovered) }
        );
        out["nfa"] = r.to_json();
    }
    if weight {
        let w = structure::weight_witness(&g, caps)?;
        let _ = writeln!(text, "  weight: {} (normal closure of {:?})", w.weight, w.elements);
        out["weight"] = json!({"weight": w.weight, "elements": w.elements});
    }
    if verify {
        let report = covering::verify_finite_theorems(&g, caps, &VerifyOptions {
            weight: g.order() <= caps.weight,
            ..VerifyOptions::default()
        })?;
        for c in &report.checks {
            let _ = writeln!(text, "  [{}] {}: {}", if c.holds { "ok" } else { "FAIL" }, c.name, c.detail);
        }
        if !report.all_hold() {
            code = 1;
        }
        out["verify"] = serde_json::to_value(&report).expect("json");
    }
    ctx.emit(&out, || text);
    Ok(code)
}

fn none_report(bound: usize, word: &str) -> (Value, String) {
    let searched: Vec<&str> = search::targets_up_to(bound)
        .map(|t| t.iter().map(|g| g.name()).collect())
        .unwrap_or_default();
    let note = format!(
        "no witness among the searched targets of order <= {bound}; this says nothing about larger quotients"
    );
    (
        json!({"result": "none", "bound": bound, "word": word, "searched": searched, "note": note}),
        format!("none ≤ {bound}\n  searched: {}\n", searched.join(", ")),
    )
}

fn witness_text(w: &Witness) -> String {
    let mut s = format!(
        "target {} (order {})\n",
        w.target.name(),
        w.target.order()
    );
    for (g, x) in w.source.generators().iter().zip(&w.images) {
        let _ = writeln!(s, "  {g} -> {x}");
    }
    let _ = writeln!(s, "  word {} -> identity", w.source.render_word(&w.word));
    let _ = writeln!(s, "  verified: {}", w.check.ok());
    s
}

fn cmd_witness(ctx: &Ctx, file: &Path, word: &str, bound: usize) -> Result<u8, Failure> {
    let p = read_presentation(file)?;
    let w = p.parse_word(word)?;
    match search::find_annihilator(&p, &w, bound, &ctx.caps)? {
        Some(wit) => ctx.emit(&wit.to_json(), || witness_text(&wit)),
        None => {
            let (v, t) = none_report(bound, &p.render_word(&w));
            ctx.emit(&v, || t);
        }
    }
    Ok(0)
}

fn cmd_quotient(ctx: &Ctx, file: &Path, bound: usize) -> Result<u8, Failure> {
    let p = read_presentation(file)?;
    match search::nontrivial_quotient_exists(&p, bound, &ctx.caps)? {
        Some(wit) => ctx.emit(&wit.to_json(), || witness_text(&wit)),
        None => {
            let (v, t) = none_report(bound, "1");
            ctx.emit(&v, || t);
        }
    }
    Ok(0)
}

fn cmd_scan(ctx: &Ctx, file: &Path, length: usize, bound: usize) -> Result<u8, Failure> {
    let p = read_presentation(file)?;
    let r = search::fa_scan(&p, length, bound, &ctx.caps)?;
    let value = serde_json::to_value(&r).expect("json");
    ctx.emit(&value, || {
        let mut s = String::new();
        for e in &r.entries {
            let status = serde_json::to_value(e.status).expect("json");
            let _ = writeln!(
                s,
                "{:<24} {}{}",
                e.word,
                status.as_str().unwrap_or_default(),
                e.target.as_ref().map_or(String::new(), |t| format!(" {t}"))
            );
        }
        let _ = writeln!(
            s,
            "{} words, {} witnessed, {} without witness (bound {}, searched {} targets)",
            r.entries.len(),
            r.witnessed,
            r.unwitnessed,
            r.bound,
            r.searched.len()
        );
        s
    });
    Ok(0)
}

fn cmd_verify_all(
    ctx: &Ctx,
    max_order: usize,
    nfa_max: usize,
    spec: Option<&Path>,
    cayley: &[PathBuf],
) -> Result<u8, Failure> {
    let spec = match spec {
        Some(path) => CatalogSpec::from_file(path).map_err(|e| at_path(path, e))?,
        None => CatalogSpec::default(),
    };
    let mut groups = catalog::build_catalog(&spec, &ctx.caps)?;
    for path in cayley {
        groups.push(catalog::load_cayley_unchecked(path).map_err(|e| at_path(path, e))?);
    }
    let opts = HarnessOptions { max_order, nfa_max };
    let summary = harness::verify_all(&groups, &ctx.caps, &opts)?;
    let value = serde_json::to_value(&summary).expect("json");
    ctx.emit(&value, || {
        let mut s = format!("{:<12} {:>5}  {:<10} {:>6}  {}\n", "group", "order", "status", "checks", "abelianisation");
        for r in &summary.rows {
            let status = match r.status {
                RowStatus::Pass => "pass",
                RowStatus::Fail => "FAIL",
                RowStatus::Convention => "convention",
            };
            let ab = match (&r.abelianisation, r.status) {
                (Some(a), _) => a.to_string(),
                (None, RowStatus::Convention) => "trivial group: not F-A, weight 0 by convention".into(),
                (None, _) => "-".into(),
            };
            let _ = writeln!(s, "{:<12} {:>5}  {:<10} {:>6}  {}", r.group, r.order, status, r.checks, ab);
            for f in &r.failures {
                let _ = writeln!(s, "    {} failed: {}", f.name, f.detail);
            }
        }
        let _ = writeln!(
            s,
            "{} groups, {} passed, {} failed, {} mismatches",
            summary.groups, summary.passed, summary.failed, summary.mismatches
        );
        s
    });
    Ok(if summary.ok() { 0 } else { 1 })
}

fn cmd_catalog(ctx: &Ctx, spec: Option<&Path>) -> Result<u8, Failure> {
    let spec = match spec {
        Some(path) => CatalogSpec::from_file(path).map_err(|e| at_path(path, e))?,
        None => CatalogSpec::default(),
    };
    let groups = catalog::build_catalog(&spec, &ctx.caps)?;
    let value = json!(groups
        .iter()
        .map(|g| json!({"name": g.name(), "order": g.order()}))
        .collect::<Vec<_>>());
    ctx.emit(&value, || {
        groups
            .iter()
            .map(|g| format!("{} {}\n", g.name(), g.order()))
            .collect()
    });
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let ctx = build_ctx(&cli)?;
    match &cli.command {
        Command::Analyze { file, hint, nfa } => cmd_analyze(&ctx, file, hint, *nfa),
        Command::Finite {
            spec,
            file,
            kind,
            nfa,
            weight,
            verify,
            subcover,
        } => cmd_finite(&ctx, spec.as_deref(), file.as_deref(), kind, *nfa, *weight, *verify, *subcover),
        Command::Witness { file, word, bound } => cmd_witness(&ctx, file, word, *bound),
        Command::Quotient { file, bound } => cmd_quotient(&ctx, file, *bound),
        Command::Scan { file, length, bound } => cmd_scan(&ctx, file, *length, *bound),
        Command::VerifyAll {
            max_order,
            nfa_max,
            catalog,
            cayley,
        } => cmd_verify_all(&ctx, *max_order, *nfa_max, catalog.as_deref(), cayley),
        Command::Catalog { spec } => cmd_catalog(&ctx, spec.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
