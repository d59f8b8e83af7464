use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use hilbring::algebra::AlgebraElement;
use hilbring::identities::{mixed_suite, pascal_suite, ys_suite, IdentitySuite};
use hilbring::oracle::{SymmetricGroup, DEFAULT_ORACLE_CAP};
use hilbring::presentation::{minimal_presentation, verify_presentation, SCHEMA_VERSION, VERIFIED_MAX_D};
use hilbring::reference::{corrected_relations, published_relations, reference_count, A8_AMBIGUOUS};
use hilbring::{cache, CycleType, StructureConstants};

const CACHE_FILE: &str = "theta-cache.json";

#[derive(Parser)]
#[command(name = "hilbring", version, about = "Exact products, structure constants and minimal presentations of A(d)")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Largest d for which brute-force permutation enumeration is allowed.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,

    /// Structure-constant cache file.
    #[arg(long, global = true, conflicts_with = "no_cache")]
    cache: Option<PathBuf>,

    /// Directory holding the cache file, used when --cache is absent.
    #[arg(long, global = true, env = "HILBRING_CACHE_DIR", hide_env_values = true)]
    cache_dir: Option<PathBuf>,

    #[arg(long, global = true)]
    no_cache: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Product g_λ · g_λ' in A(d).
    Multiply {
        lambda: CycleType,
        other: CycleType,
        #[arg(long)]
        d: usize,
        /// Compute by enumerating S_d instead of the recursion.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Structure constant θ(ε; α, β).
    Theta {
        eps: CycleType,
        alpha: CycleType,
        beta: CycleType,
        /// Print the recursion tree to this depth.
        #[arg(long)]
        trace_depth: Option<usize>,
        /// Also count factorisations in S_d.
        #[arg(long, value_name = "D")]
        oracle_d: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Minimal presentation of A(d).
    Presentation {
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = PresentationFormat::Text)]
        format: PresentationFormat,
        #[arg(long, conflicts_with_all = ["text", "latex"])]
        json: bool,
        #[arg(long, conflicts_with = "latex")]
        text: bool,
        #[arg(long)]
        latex: bool,
        /// Allow d beyond the range checked against published tables.
        #[arg(long)]
        extended: bool,
    },
    /// Relation counts r(d, n) for d = 1..=max-d.
    RelationTable {
        #[arg(long)]
        max_d: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Tsv)]
        format: TableFormat,
        #[arg(long)]
        extended: bool,
    },
    /// Check that published relations vanish and generate all relations.
    Verify {
        #[arg(long)]
        d: usize,
        /// Use the published lists with known misprints corrected.
        #[arg(long)]
        corrected: bool,
        /// Check these relations instead of the published ones.
        #[arg(long = "relation", value_name = "TEXT")]
        relations: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Catalan/Borel/Pascal and expansion identities, as JSON.
    Identities {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PresentationFormat {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Tsv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Pascal,
    Ys,
    Mixed,
    All,
}

/// Outcome of a subcommand: printed output plus whether its checks passed.
struct Report {
    output: String,
    passed: bool,
}

impl Report {
    fn ok(output: String) -> Self {
        Report { output, passed: true }
    }
}

type CmdResult = Result<Report, String>;

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

fn check_range(d: usize, extended: bool) -> Result<(), String> {
    if d == 0 {
        return Err("d must be at least 1".into());
    }
    if d > VERIFIED_MAX_D && !extended {
        return Err(format!(
            "d = {d} exceeds the verified range (d ≤ {VERIFIED_MAX_D}); pass --extended to run anyway"
        ));
    }
    Ok(())
}

fn cmd_multiply(lambda: &CycleType, other: &CycleType, d: usize, oracle: bool, json: bool, cap: usize) -> CmdResult {
    let product = if oracle {
        SymmetricGroup::with_cap(d, cap)
            .and_then(|g| g.product(lambda, other))
            .map_err(|e| e.to_string())?
    } else {
        let x = AlgebraElement::basis(lambda, d);
        let y = AlgebraElement::basis(other, d);
        x.multiply(&y).map_err(|e| e.to_string())?
    };
    Ok(Report::ok(if json {
        pretty(&json!({
            "schema_version": SCHEMA_VERSION,
            "d": d,
            "left": lambda,
            "right": other,
            "method": if oracle { "oracle" } else { "recursion" },
            "product": product,
        }))
    } else {
        product.to_string()
    }))
}

fn cmd_theta(
    eps: &CycleType,
    alpha: &CycleType,
    beta: &CycleType,
    trace_depth: Option<usize>,
    oracle_d: Option<usize>,
    json: bool,
    cap: usize,
) -> CmdResult {
    let table = StructureConstants::global();
    let value = table.theta(eps, alpha, beta);
    let oracle = match oracle_d {
        Some(d) => Some(
            SymmetricGroup::with_cap(d, cap)
                .and_then(|g| g.theta(eps, alpha, beta))
                .map_err(|e| e.to_string())?,
        ),
        None => None,
    };
    let agrees = oracle.is_none_or(|o| value == o.into());
    let derivation = trace_depth.map(|depth| table.derivation(eps, alpha, beta, depth));
    let output = if json {
        pretty(&json!({
            "schema_version": SCHEMA_VERSION,
            "eps": eps,
            "alpha": alpha,
            "beta": beta,
            "theta": value.to_string(),
            "oracle": oracle.map(|o| o.to_string()),
            "derivation": derivation,
        }))
    } else {
        let mut out = value.to_string();
        if let Some(o) = oracle {
            out.push_str(&format!("\noracle: {o} ({})", if agrees { "agrees" } else { "DISAGREES" }));
        }
        if let Some(tree) = derivation {
            out.push('\n');
            out.push_str(tree.to_string().trim_end());
        }
        out
    };
    Ok(Report { output, passed: agrees })
}

fn cmd_presentation(d: usize, format: PresentationFormat, extended: bool) -> CmdResult {
    check_range(d, extended)?;
    let p = minimal_presentation(d).map_err(|e| e.to_string())?;
    let mut output = match format {
        PresentationFormat::Text => p.to_text().trim_end().to_string(),
        PresentationFormat::Json => p.to_json(),
        PresentationFormat::Latex => p.to_latex().trim_end().to_string(),
    };
    if d > VERIFIED_MAX_D && format == PresentationFormat::Text {
        output.push_str(&format!("\nnote: d = {d} exceeds the verified range (d ≤ {VERIFIED_MAX_D})"));
    }
    Ok(Report::ok(output))
}

#[derive(Serialize)]
struct TableRow {
    d: usize,
    counts: Vec<usize>,
    total: usize,
    matches_reference: Option<bool>,
}

fn cmd_relation_table(max_d: usize, format: TableFormat, extended: bool) -> CmdResult {
    check_range(max_d, extended)?;
    let mut rows = Vec::new();
    for d in 1..=max_d {
        let p = minimal_presentation(d).map_err(|e| e.to_string())?;
        let matches_reference = (d <= VERIFIED_MAX_D)
            .then(|| p.counts.iter().enumerate().all(|(k, &c)| reference_count(d, k + 1) == Some(c)));
        rows.push(TableRow {
            d,
            counts: p.counts,
            total: p.total,
            matches_reference,
        });
    }
    let passed = rows.iter().all(|r| r.matches_reference != Some(false));
    let output = match format {
        TableFormat::Json => pretty(&json!({ "schema_version": SCHEMA_VERSION, "rows": rows })),
        TableFormat::Tsv => {
            let width = rows.iter().map(|r| r.counts.len()).max().unwrap_or(0);
            let mut lines = vec![std::iter::once("d".to_string())
                .chain((1..=width).map(|n| format!("n={n}")))
                .chain(["total".to_string()])
                .collect::<Vec<_>>()
                .join("\t")];
            for r in &rows {
                let mut cells = vec![if r.d > VERIFIED_MAX_D { format!("{}*", r.d) } else { r.d.to_string() }];
                cells.extend((0..width).map(|k| r.counts.get(k).copied().unwrap_or(0).to_string()));
                cells.push(r.total.to_string());
                lines.push(cells.join("\t"));
            }
            if max_d > VERIFIED_MAX_D {
                lines.push(format!("# * exceeds the verified range (d ≤ {VERIFIED_MAX_D})"));
            }
            lines.join("\n")
        }
    };
    Ok(Report { output, passed })
}

fn cmd_verify(d: usize, corrected: bool, custom: &[String], json: bool) -> CmdResult {
    check_range(d, false)?;
    let relations = if !custom.is_empty() {
        custom.to_vec()
    } else if corrected {
        corrected_relations(d).ok_or_else(|| format!("no published presentation for d = {d}"))?
    } else {
        published_relations(d, 0).ok_or_else(|| format!("no published presentation for d = {d}"))?
    };
    let check = verify_presentation(d, &relations).map_err(|e| e.to_string())?;
    if let Some(bad) = check.relations.iter().find(|r| r.error.is_some()) {
        return Err(format!("{:?}: {}", bad.text, bad.error.as_deref().unwrap_or_default()));
    }
    // The A(8) list has one relation with an unreadable sign; report both.
    let ambiguous = (d == 8 && custom.is_empty()).then(|| {
        A8_AMBIGUOUS
            .iter()
            .map(|text| {
                let c = verify_presentation(8, &[*text]).expect("d = 8 is in range");
                (text.to_string(), c.relations[0].vanishes)
            })
            .collect::<Vec<_>>()
    });
    let passed = check.passed();
    let output = if json {
        pretty(&json!({
            "schema_version": SCHEMA_VERSION,
            "source": if !custom.is_empty() { "user" } else if corrected { "corrected" } else { "published" },
            "check": check,
            "ambiguous_readings": ambiguous,
            "passed": passed,
        }))
    } else {
        let mut lines = Vec::new();
        for r in &check.relations {
            let status = match (&r.error, r.vanishes) {
                (Some(_), _) => "ERROR",
                (None, true) => "ok",
                (None, false) => "NONZERO",
            };
            let mut line = format!("{status:7} {}", r.text);
            if let Some(e) = &r.error {
                line.push_str(&format!("  ({e})"));
            }
            for res in &r.residues {
                line.push_str(&format!("\n        residue: {res}"));
            }
            lines.push(line);
        }
        if let Some(readings) = &ambiguous {
            for (text, vanishes) in readings {
                lines.push(format!(
                    "reading {text}: {}",
                    if *vanishes { "vanishes" } else { "does not vanish" }
                ));
            }
        }
        lines.push(format!(
            "generates all relations: {}; minimal: {}",
            check.generates, check.minimal
        ));
        lines.push(if passed { "PASS".into() } else { "FAIL".into() });
        lines.join("\n")
    };
    Ok(Report { output, passed })
}

fn cmd_identities(suite: Suite) -> CmdResult {
    let run = |s: Suite| -> Result<IdentitySuite, String> {
        match s {
            Suite::Pascal => Ok(pascal_suite()),
            Suite::Ys => ys_suite().map_err(|e| e.to_string()),
            Suite::Mixed => mixed_suite().map_err(|e| e.to_string()),
            Suite::All => unreachable!(),
        }
    };
    let suites = match suite {
        Suite::All => vec![run(Suite::Pascal)?, run(Suite::Ys)?, run(Suite::Mixed)?],
        s => vec![run(s)?],
    };
    let passed = suites.iter().all(|s| s.passed);
    Ok(Report {
        output: pretty(&json!({ "schema_version": SCHEMA_VERSION, "suites": suites, "passed": passed })),
        passed,
    })
}

fn run(cli: &Cli) -> CmdResult {
    let cap = cli.oracle_cap;
    match &cli.command {
        Command::Multiply { lambda, other, d, oracle, json } => cmd_multiply(lambda, other, *d, *oracle, *json, cap),
        Command::Theta { eps, alpha, beta, trace_depth, oracle_d, json } => {
            cmd_theta(eps, alpha, beta, *trace_depth, *oracle_d, *json, cap)
        }
        Command::Presentation { d, format, json, text, latex, extended } => {
            let format = match (json, text, latex) {
                (true, _, _) => PresentationFormat::Json,
                (_, true, _) => PresentationFormat::Text,
                (_, _, true) => PresentationFormat::Latex,
                _ => *format,
            };
            cmd_presentation(*d, format, *extended)
        }
        Command::RelationTable { max_d, format, extended } => cmd_relation_table(*max_d, *format, *extended),
        Command::Verify { d, corrected, relations, json } => cmd_verify(*d, *corrected, relations, *json),
        Command::Identities { suite } => cmd_identities(*suite),
    }
}

fn cache_path(cli: &Cli) -> Option<PathBuf> {
    if cli.no_cache {
        return None;
    }
    cli.cache
        .clone()
        .or_else(|| cli.cache_dir.as_ref().map(|dir| dir.join(CACHE_FILE)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("thread pool is configured once");
    }
    let cache = cache_path(&cli);
    if let Some(path) = &cache {
        if let Err(e) = cache::load(StructureConstants::global(), path) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let report = match run(&cli) {
        Ok(r) => r,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    // A closed pipe (e.g. `| head`) is not worth a panic.
    let _ = writeln!(std::io::stdout().lock(), "{}", report.output);
    if let Some(path) = &cache {
        if let Err(e) = cache::save(StructureConstants::global(), path) {
            eprintln!("warning: {e}");
        }
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
