//! `antimagic`: construct, verify and search antimagic labelings of
//! `K_{1,s} x P_n` and of arbitrary graphs given as JSON.

use std::fs;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use antimagic::census::{self, Summary};
use antimagic::constructions::{construct, ConstructionError, ConstructionOutcome};
use antimagic::exec::Execution;
use antimagic::graph::{
    components, direct_product, make_path, make_star, star_path_direct_product, Graph, ProductParams,
};
use antimagic::io::{self as formats, GraphJson};
use antimagic::labeling::{vertex_weights, Defect, EdgeLabeling, Verdict};
use antimagic::search::{
    find_antimagic, NonAntimagicCertificate, SearchBudget, SearchMode, SearchOutcome, DEFAULT_MAX_NODES,
};
use antimagic::is_antimagic_labeling;
use clap::{error::ErrorKind, Args, Parser, Subcommand, ValueEnum};

mod exit {
    pub const OK: u8 = 0;
    pub const FAIL: u8 = 1;
    pub const NOT_ANTIMAGIC: u8 = 2;
    pub const UNKNOWN: u8 = 3;
    pub const USAGE: u8 = 64;
    pub const DATA: u8 = 65;
    pub const INTERNAL: u8 = 70;
}

#[derive(Debug, Parser)]
#[command(name = "antimagic", version, about = "Antimagic edge labelings of star-path direct products")]
struct Cli {
    /// Node budget for backtracking and exhaustive search.
    #[arg(long, global = true, env = "ANTIMAGIC_BUDGET", default_value_t = DEFAULT_MAX_NODES)]
    max_nodes: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build an antimagic labeling of K_{1,s} x P_n.
    Construct(ConstructArgs),
    /// Check a labeling of a graph for antimagicness.
    Verify(VerifyArgs),
    /// Search for an antimagic labeling.
    Search(SearchArgs),
    /// Run the constructor over a grid of (s, n) and write CSV.
    Census(CensusArgs),
    /// Emit a direct product graph as JSON.
    Product(ProductArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    Csv,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[arg(long)]
    s: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Also write the graph JSON here.
    #[arg(long)]
    graph_out: Option<PathBuf>,
    /// Write the labeling JSON here in addition to stdout.
    #[arg(long)]
    labeling_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    graph: PathBuf,
    labeling: PathBuf,
    /// Print the full vertex weight table.
    #[arg(long)]
    weights: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Backtracking,
}

impl From<ModeArg> for SearchMode {
    fn from(mode: ModeArg) -> Self {
        match mode {
            ModeArg::Exhaustive => SearchMode::Exhaustive,
            ModeArg::Backtracking => SearchMode::Backtracking,
        }
    }
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long, requires = "n", conflicts_with = "graph")]
    s: Option<usize>,
    #[arg(long, requires = "s")]
    n: Option<usize>,
    /// Graph JSON file to search instead of K_{1,s} x P_n.
    #[arg(long, required_unless_present = "s")]
    graph: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "backtracking")]
    mode: ModeArg,
}

#[derive(Debug, Args)]
struct CensusArgs {
    /// Inclusive range such as `1..10`, `1..=10` or `4`.
    #[arg(long, value_parser = parse_range)]
    s: RangeInclusive<usize>,
    #[arg(long, value_parser = parse_range)]
    n: RangeInclusive<usize>,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    sequential: bool,
}

#[derive(Debug, Args)]
struct ProductArgs {
    /// Left factor K_{1,s}.
    #[arg(long, required_unless_present = "left", conflicts_with = "left")]
    star: Option<usize>,
    /// Right factor P_n.
    #[arg(long, required_unless_present = "right", conflicts_with = "right")]
    path: Option<usize>,
    /// Left factor as a graph JSON file.
    #[arg(long)]
    left: Option<PathBuf>,
    /// Right factor as a graph JSON file.
    #[arg(long)]
    right: Option<PathBuf>,
    /// Emit a JSON array with one graph per connected component.
    #[arg(long)]
    components: bool,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Self { code: exit::USAGE, message: message.to_string() }
    }

    fn data(message: impl ToString) -> Self {
        Self { code: exit::DATA, message: message.to_string() }
    }
}

type Outcome = Result<u8, Failure>;

fn parse_range(text: &str) -> Result<RangeInclusive<usize>, String> {
    let number = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    match text.split_once("..") {
        Some((lo, hi)) => Ok(number(lo)?..=number(hi.strip_prefix('=').unwrap_or(hi))?),
        None => {
            let k = number(text)?;
            Ok(k..=k)
        }
    }
}

fn params(s: usize, n: usize) -> Result<ProductParams, Failure> {
    ProductParams::new(s, n).map_err(Failure::usage)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::data(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    formats::parse_graph(&read(path)?).map_err(|e| Failure::data(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn emit(text: &str) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| if text.ends_with('\n') { Ok(()) } else { out.write_all(b"\n") })
        .map_err(|e| Failure { code: exit::INTERNAL, message: format!("stdout: {e}") })
}

fn labeling_json(labeling: &EdgeLabeling, graph_ref: String) -> String {
    serde_json::to_string_pretty(&formats::labeling_to_json(labeling, Some(graph_ref)))
        .expect("labeling JSON serialises")
}

fn certificate_summary(cert: &NonAntimagicCertificate) -> String {
    if cert.exhaustive {
        format!("not antimagic, exhaustive certificate ({} assignments)", cert.assignments_examined)
    } else {
        format!(
            "not antimagic, pruned search certificate ({} assignments, {} nodes)",
            cert.assignments_examined, cert.nodes
        )
    }
}

fn construction_failure(e: ConstructionError) -> Failure {
    match e {
        ConstructionError::Search(_) | ConstructionError::Graph(_) => Failure::usage(e),
        other => Failure { code: exit::INTERNAL, message: other.to_string() },
    }
}

fn cmd_construct(args: ConstructArgs, budget: SearchBudget) -> Outcome {
    let p = params(args.s, args.n)?;
    let g = antimagic::graph::product_star_path(p);
    if let Some(path) = &args.graph_out {
        write_file(path, &formats::graph_to_json_string(&g))?;
    }
    match construct(p, budget).map_err(construction_failure)? {
        ConstructionOutcome::Antimagic(c) => {
            let epsilon = c.epsilon.map(|e| format!(", epsilon {e}")).unwrap_or_default();
            eprintln!("{p}: antimagic via {}{epsilon}", c.method);
            let json = labeling_json(&c.labeling, p.to_string());
            if let Some(path) = &args.labeling_out {
                write_file(path, &json)?;
            }
            let text = match args.format {
                Format::Json => json,
                Format::Dot => formats::to_dot(&g, &c.labeling, &p.to_string()).map_err(Failure::usage)?,
                Format::Csv => formats::to_edge_csv(&g, &c.labeling).map_err(Failure::usage)?,
            };
            emit(&text)?;
            Ok(exit::OK)
        }
        ConstructionOutcome::NotAntimagic(cert) => {
            emit(&certificate_summary(&cert))?;
            Ok(exit::NOT_ANTIMAGIC)
        }
        ConstructionOutcome::Unknown(report) => {
            emit(&format!("unknown, search budget of {} nodes exhausted", report.max_nodes))?;
            Ok(exit::UNKNOWN)
        }
    }
}

fn vertex_name(g: &Graph, v: usize) -> String {
    match g.role(v) {
        Some(role) => format!("{v} ({role})"),
        None => v.to_string(),
    }
}

fn cmd_verify(args: VerifyArgs) -> Outcome {
    let g = read_graph(&args.graph)?;
    let labeling = formats::parse_labeling(&read(&args.labeling)?, &g)
        .map_err(|e| Failure::data(format!("{}: {e}", args.labeling.display())))?;
    let verdict = is_antimagic_labeling(&g, &labeling).map_err(Failure::data)?;
    if args.weights {
        let weights = vertex_weights(&g, &labeling).map_err(Failure::data)?;
        let mut table = String::from("vertex\trole\tweight\n");
        for v in 0..g.vertex_count() {
            let role = g.role(v).map(|r| r.to_string()).unwrap_or_default();
            table.push_str(&format!("{v}\t{role}\t{}\n", weights.weight(v)));
        }
        emit(&table)?;
    }
    match verdict {
        Verdict::Pass => {
            emit(&format!("pass: {} vertices with distinct weights", g.vertex_count()))?;
            Ok(exit::OK)
        }
        Verdict::Fail(Defect::Collision { first, second, weight }) => {
            emit(&format!(
                "fail: vertices {} and {} both have weight {weight}",
                vertex_name(&g, first),
                vertex_name(&g, second)
            ))?;
            Ok(exit::FAIL)
        }
        Verdict::Fail(defect) => {
            emit(&format!("fail: {defect}"))?;
            Ok(exit::FAIL)
        }
    }
}

fn cmd_search(args: SearchArgs, max_nodes: u64) -> Outcome {
    let (g, graph_ref) = match (args.s, args.n, &args.graph) {
        (Some(s), Some(n), None) => {
            let p = params(s, n)?;
            (antimagic::graph::product_star_path(p), p.to_string())
        }
        (None, None, Some(path)) => (read_graph(path)?, path.display().to_string()),
        _ => return Err(Failure::usage("give either --s and --n, or --graph")),
    };
    let budget = SearchBudget::default().with_mode(args.mode.into());
    let budget = SearchBudget { max_nodes, ..budget };
    match find_antimagic(&g, budget).map_err(Failure::usage)? {
        SearchOutcome::Antimagic { labeling, stats } => {
            eprintln!("antimagic after {} nodes", stats.nodes);
            emit(&labeling_json(&labeling, graph_ref))?;
            Ok(exit::OK)
        }
        SearchOutcome::NotAntimagic(cert) => {
            emit(&certificate_summary(&cert))?;
            Ok(exit::NOT_ANTIMAGIC)
        }
        SearchOutcome::Unknown(report) => {
            emit(&format!("unknown, search budget of {} nodes exhausted", report.max_nodes))?;
            Ok(exit::UNKNOWN)
        }
    }
}

fn cmd_census(args: CensusArgs, budget: SearchBudget) -> Outcome {
    let cells = census::grid(args.s, args.n).map_err(Failure::usage)?;
    let execution = if args.sequential { Execution::Sequential } else { Execution::Parallel };
    let rows = census::run(&cells, budget, execution);
    for row in rows.iter().filter(|r| r.error.is_some()) {
        eprintln!("({}, {}): {}", row.s, row.n, row.error.as_deref().unwrap_or_default());
    }
    match &args.out {
        Some(path) => {
            let file = fs::File::create(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            census::write_csv(&rows, io::BufWriter::new(file)).map_err(Failure::usage)?;
        }
        None => census::write_csv(&rows, io::stdout().lock())
            .map_err(|e| Failure { code: exit::INTERNAL, message: e.to_string() })?,
    }
    eprintln!("{} cells: {}", rows.len(), Summary::of(&rows));
    Ok(exit::OK)
}

fn cmd_product(args: ProductArgs) -> Outcome {
    let product = match (args.star, args.path) {
        (Some(s), Some(n)) => star_path_direct_product(params(s, n)?).map_err(Failure::usage)?,
        _ => {
            let left = match (args.star, &args.left) {
                (Some(s), _) => make_star(s).map_err(Failure::usage)?,
                (None, Some(path)) => read_graph(path)?,
                (None, None) => return Err(Failure::usage("missing left factor")),
            };
            let right = match (args.path, &args.right) {
                (Some(n), _) => make_path(n).map_err(Failure::usage)?,
                (None, Some(path)) => read_graph(path)?,
                (None, None) => return Err(Failure::usage("missing right factor")),
            };
            direct_product(&left, &right).map_err(Failure::data)?
        }
    };
    let text = if args.components {
        let parts: Vec<GraphJson> = components(&product).iter().map(|c| GraphJson::from(&c.graph)).collect();
        eprintln!("{} components", parts.len());
        serde_json::to_string_pretty(&parts).expect("graph JSON serialises")
    } else {
        formats::graph_to_json_string(&product)
    };
    emit(&text)?;
    Ok(exit::OK)
}

fn run(cli: Cli) -> Outcome {
    let budget = SearchBudget { max_nodes: cli.max_nodes, ..SearchBudget::default() };
    match cli.command {
        Command::Construct(args) => cmd_construct(args, budget),
        Command::Verify(args) => cmd_verify(args),
        Command::Search(args) => cmd_search(args, cli.max_nodes),
        Command::Census(args) => cmd_census(args, budget),
        Command::Product(args) => cmd_product(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => exit::OK,
                _ => exit::USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("antimagic: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
