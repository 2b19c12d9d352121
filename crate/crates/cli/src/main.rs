use clap::{Args, Parser, Subcommand, ValueEnum};
use pgroups::constructions::ConstructionSpec;
use pgroups::group::{Group, GroupDump};
use pgroups::invariants::invariant_report;
use pgroups::lattice::{all_subgroups, LatticeConfig};
use pgroups::suites::{run_all, run_suite, SuiteReport, SUITE_NAMES};
use pgroups::Error;
use std::path::PathBuf;
use std::process::ExitCode;

/// Exit codes: 0 pass, 1 violations found, 2 bad input, 3 budget
/// exhausted.
#[derive(Parser)]
#[command(name = "pgroups", version, about = "p-group breadth analysis and theorem verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Args)]
struct InputArgs {
    /// Presentation string, e.g. "<a,b | a^4=1, b^2=a^2, a^b=a^-1>"
    presentation: Option<String>,
    /// JSON construction spec file ({kind, params, label})
    #[arg(long, conflicts_with = "presentation")]
    spec: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build one group and print its invariant report
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Run verification suites over the corpus
    Verify {
        /// Suite name (see --list-suites)
        #[arg(long, conflicts_with = "all")]
        suite: Option<String>,
        /// Run every suite in the catalog
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 128)]
        max_order: usize,
        /// Parallelism ceiling (defaults to all cores)
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        /// List the suite catalog and exit
        #[arg(long)]
        list_suites: bool,
    },
    /// Print the subgroup lattice summary of one group
    Lattice {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Enumerate the verification corpus
    Corpus {
        #[arg(long, default_value_t = 128)]
        max_order: usize,
        /// Print one line per group
        #[arg(long)]
        list: bool,
    },
}

fn exit_code_for(e: &Error) -> ExitCode {
    match e {
        Error::BudgetExceeded { .. }
        | Error::CosetLimitExceeded { .. }
        | Error::OrderCapExceeded { .. } => ExitCode::from(3),
        _ => ExitCode::from(2),
    }
}

fn build_input(input: &InputArgs) -> Result<Group, Error> {
    match (&input.presentation, &input.spec) {
        (Some(text), None) => pgroups::constructions::from_presentation(text),
        (None, Some(path)) => {
            let body = std::fs::read_to_string(path)?;
            let spec: ConstructionSpec = serde_json::from_str(&body)?;
            let key = cache_key(&body);
            if let Some(g) = cache_load(&key) {
                return Ok(g);
            }
            let g = spec.build()?;
            cache_store(&key, &g);
            Ok(g)
        }
        _ => Err(Error::InvalidParams(
            "provide a presentation string or --spec FILE".into(),
        )),
    }
}

fn cache_dir() -> Option<PathBuf> {
    std::env::var_os("PGROUPS_CACHE_DIR").map(PathBuf::from)
}

fn cache_key(body: &str) -> String {
    // fnv-1a over the spec text; collisions only waste a rebuild
    let mut h: u64 = 0xcbf29ce484222325;
    for b in body.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}.json")
}

fn cache_load(key: &str) -> Option<Group> {
    let path = cache_dir()?.join(key);
    let body = std::fs::read_to_string(path).ok()?;
    let dump: GroupDump = serde_json::from_str(&body).ok()?;
    Group::from_dump(dump).ok()
}

fn cache_store(key: &str, g: &Group) {
    let Some(dir) = cache_dir() else { return };
    if std::fs::create_dir_all(&dir).is_err() {
        return;
    }
    if let Ok(body) = serde_json::to_string(&g.dump()) {
        let _ = std::fs::write(dir.join(key), body);
    }
}

fn lattice_config(order: usize) -> LatticeConfig {
    LatticeConfig {
        order_cap: order.max(512),
        ..LatticeConfig::default()
    }
}

fn cmd_analyze(input: &InputArgs, format: Format) -> Result<bool, Error> {
    let g = build_input(input)?;
    let lat = all_subgroups(&g, &lattice_config(g.order()))?;
    let report = invariant_report(&g, &lat)?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        Format::Table => {
            println!("group           {}", report.construction_label);
            println!("order           {}", report.order);
            println!("prime           {}", report.prime);
            println!("exponent        {}", report.exponent);
            println!("|Z(G)|          {}", report.center_order);
            println!("[G:Z(G)]        {}", report.center_index);
            println!("|G'|            {}", report.derived_order);
            println!("|Phi(G)|        {}", report.frattini_order);
            println!("|Omega1(G)|     {}", report.omega1_order);
            println!("ebr             {}", report.ebr);
            println!("sbr             {}", report.sbr);
            println!("cbr             {}", report.cbr);
            println!("involutions     {}", report.involution_count);
            let f = &report.flags;
            let mut flags = Vec::new();
            for (name, v) in [
                ("abelian", f.abelian),
                ("hamiltonian", f.hamiltonian),
                ("mn_group", f.mn_group),
                ("minimal_nonabelian", f.minimal_nonabelian),
                ("all_involutions_commute", f.all_involutions_commute),
                ("cyclic_center", f.cyclic_center),
                ("has_abelian_maximal", f.has_abelian_maximal),
            ] {
                if v {
                    flags.push(name);
                }
            }
            println!("flags           {}", flags.join(", "));
        }
    }
    Ok(true)
}

fn print_suite_table(r: &SuiteReport) {
    println!(
        "{:<16} {:>7} checked {:>4} violations {:>4} skipped  {:>8.2}s  {}",
        r.suite_name,
        r.groups_checked,
        r.violations.len(),
        r.skipped.len(),
        r.elapsed_secs,
        r.status
    );
    for v in &r.violations {
        println!("    {}: expected {}; observed {}", v.label, v.expected, v.observed);
    }
    for s in &r.skipped {
        println!("    skipped {s}");
    }
    for n in &r.notes {
        println!("    note: {n}");
    }
}

fn cmd_verify(
    suite: Option<&str>,
    all: bool,
    max_order: usize,
    format: Format,
) -> Result<bool, Error> {
    let reports: Vec<SuiteReport> = if all {
        run_all(max_order)?
    } else {
        let name = suite.ok_or_else(|| {
            Error::InvalidParams("pass --suite NAME or --all".into())
        })?;
        vec![run_suite(name, max_order)?]
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&reports)?),
        Format::Table => {
            for r in &reports {
                print_suite_table(r);
            }
        }
    }
    Ok(reports.iter().all(|r| r.passed()))
}

fn cmd_lattice(input: &InputArgs) -> Result<bool, Error> {
    let g = build_input(input)?;
    let lat = all_subgroups(&g, &lattice_config(g.order()))?;
    println!("{}", serde_json::to_string_pretty(&lat.summary(&g))?);
    Ok(true)
}

fn cmd_corpus(max_order: usize, list: bool) -> Result<bool, Error> {
    let groups = pgroups::constructions::corpus(max_order, pgroups::suites::CORPUS_PRIMES)?;
    if list {
        for g in &groups {
            println!("{:>5}  {}", g.order(), g.label());
        }
    }
    println!("{} groups (pairwise non-isomorphic) up to order {max_order}", groups.len());
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Analyze { input, format } => cmd_analyze(input, *format),
        Command::Verify {
            suite,
            all,
            max_order,
            jobs,
            format,
            list_suites,
        } => {
            if *list_suites {
                for n in SUITE_NAMES {
                    println!("{n}");
                }
                return ExitCode::SUCCESS;
            }
            if let Some(j) = jobs {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(*j)
                    .build_global();
            }
            cmd_verify(suite.as_deref(), *all, *max_order, *format)
        }
        Command::Lattice { input } => cmd_lattice(input),
        Command::Corpus { max_order, list } => cmd_corpus(*max_order, *list),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}
