//! The `imsets` command line tool.
//!
//! Every subcommand reads graphs, triplets and imsets in the text formats of
//! the library's `io` module, answers one query, and exits with a code that
//! scripts can branch on:
//!
//! * `0` — success (and, for yes/no queries, a positive verdict),
//! * `1` — negative verdict (dependent, not equivalent, not combinatorial,
//!   merge infeasible),
//! * `2` — usage error (bad flags, unparsable or unsuitable input),
//! * `3` — a guard refused the computation (input too large),
//! * `4` — internal invariant violation (a bug, not a user error).
//!
//! Output is a list of facts. In `--format text` they print as
//! `key: value` lines with multi-line values (graphs, imsets) printed raw;
//! in `--format kv` every fact prints as a single `key=value` line with
//! newlines escaped, carrying exactly the same information.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use imsets::error::Error;
use imsets::graph::{GraphClass, MixedGraph};
use imsets::guards::Guards;
use imsets::imset::{self, Imset};
use imsets::io::{self, Labels};
use imsets::set::VertexSet;
use imsets::{mpd, random, separation, standard, triangulate};

/// Environment variables overriding the guard limits.
pub const ENV_MAX_UNIVERSE: &str = "IMSETS_MAX_UNIVERSE";
pub const ENV_MAX_COMPONENT_TRIANGULATIONS: &str = "IMSETS_MAX_COMPONENT_TRIANGULATIONS";
pub const ENV_MAX_TRIANGULATION_PRODUCT: &str = "IMSETS_MAX_TRIANGULATION_PRODUCT";

#[derive(Parser, Debug)]
#[command(
    name = "imsets",
    version,
    about = "Standard imsets for undirected, DAG, decomposable and chain-graph models",
    after_help = "Guard limits can be overridden with the environment variables \
IMSETS_MAX_UNIVERSE, IMSETS_MAX_COMPONENT_TRIANGULATIONS and \
IMSETS_MAX_TRIANGULATION_PRODUCT."
)]
pub struct Cli {
    /// Output format: human-readable text or one key=value fact per line.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Kv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Maximal prime decomposition of an undirected graph.
    Decompose {
        /// Graph file (`-` for stdin).
        #[arg(long)]
        graph: PathBuf,
    },
    /// Minimal triangulations of an undirected or chain graph.
    Triangulate {
        #[arg(long)]
        graph: PathBuf,
        /// Print every triangulation (the default).
        #[arg(long, conflicts_with = "count")]
        all: bool,
        /// Print only the number of triangulations.
        #[arg(long)]
        count: bool,
    },
    /// Build and combine imsets directly.
    #[command(subcommand)]
    Imset(ImsetCommand),
    /// The standard imset of a graph.
    StandardImset {
        #[arg(long)]
        graph: PathBuf,
        /// Which construction to run; `cg` handles every chain graph and
        /// reports when it reduces to the DAG or undirected form.
        #[arg(long, value_enum, default_value_t = Variant::Cg)]
        variant: Variant,
    },
    /// Test one conditional-independence statement against a graph.
    CiTest {
        #[arg(long)]
        graph: PathBuf,
        /// The statement `A | B | C` (comma-separated labels per part).
        #[arg(long)]
        triplet: String,
        #[arg(long, value_enum, default_value_t = CiMethod::Imset)]
        method: CiMethod,
    },
    /// Test whether two graphs are Markov equivalent.
    Equiv(EquivArgs),
    /// Merge two chain components into one, if the merge is feasible.
    Merge {
        #[arg(long)]
        graph: PathBuf,
        /// The upper chain component, as comma-separated labels.
        #[arg(long)]
        upper: String,
        /// The lower chain component, as comma-separated labels.
        #[arg(long)]
        lower: String,
    },
    /// The largest chain graph equivalent to the input.
    Largest {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Every conditional-independence statement the graph represents.
    Model {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = CiMethod::Separation)]
        method: CiMethod,
    },
    /// Cross-validate the imset machinery against separation on random graphs.
    Selftest {
        #[arg(long, default_value_t = 17)]
        seed: u64,
        #[arg(long, default_value_t = 40)]
        samples: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum ImsetCommand {
    /// The identifier imset of one subset.
    Delta {
        /// Universe labels, comma separated.
        #[arg(long)]
        universe: String,
        /// The subset, comma separated (may be empty).
        #[arg(long, default_value = "")]
        set: String,
    },
    /// The semi-elementary imset of a statement `A | B | C`.
    SemiElementary {
        #[arg(long)]
        universe: String,
        #[arg(long)]
        triplet: String,
    },
    /// Sum of two imset files.
    Add { a: PathBuf, b: PathBuf },
    /// Difference of two imset files.
    Sub { a: PathBuf, b: PathBuf },
    /// Decompose an imset into elementary imsets, if possible.
    Decompose {
        imset: PathBuf,
        /// Print only the number of elementary terms.
        #[arg(long)]
        degree: bool,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Dag,
    Decomposable,
    Ug,
    Cg,
    /// Sum over all minimal triangulations of the whole graph.
    V,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CiMethod {
    /// Imset arithmetic: subtract the statement and test membership in the
    /// combinatorial cone.
    Imset,
    /// The graphical separation criterion.
    Separation,
}

#[derive(Args, Debug)]
pub struct EquivArgs {
    /// A graph file; give the flag exactly twice.
    #[arg(long = "graph", required = true)]
    pub graphs: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = EquivMethod::Imset)]
    pub method: EquivMethod,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum EquivMethod {
    /// Equality of standard imsets.
    Imset,
    /// Same skeleton and same complexes.
    Frydenberg,
}

/// One reported fact; `value` may span lines for graph or imset payloads.
struct Fact {
    key: &'static str,
    value: String,
}

struct Report {
    facts: Vec<Fact>,
    /// 0 for a positive outcome, 1 for a negative verdict.
    code: i32,
}

impl Report {
    fn new() -> Report {
        Report {
            facts: Vec::new(),
            code: 0,
        }
    }

    fn push(&mut self, key: &'static str, value: impl Into<String>) {
        self.facts.push(Fact {
            key,
            value: value.into(),
        });
    }

    fn render(&self, format: Format) -> String {
        let mut out = String::new();
        for f in &self.facts {
            match format {
                Format::Text => {
                    if f.value.contains('\n') {
                        let _ = writeln!(out, "{}:", f.key);
                        out.push_str(&f.value);
                        if !f.value.ends_with('\n') {
                            out.push('\n');
                        }
                    } else {
                        let _ = writeln!(out, "{}: {}", f.key, f.value);
                    }
                }
                Format::Kv => {
                    let escaped = f.value.replace('\\', "\\\\").replace('\n', "\\n");
                    let _ = writeln!(out, "{}={}", f.key, escaped);
                }
            }
        }
        out
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::GuardExceeded(_) | Error::UniverseTooLarge(_, _) | Error::Overflow => 3,
        Error::Internal(_) => 4,
        _ => 2,
    }
}

fn guards_from_env() -> Result<Guards, String> {
    let mut g = Guards::default();
    let read = |name: &str| -> Result<Option<usize>, String> {
        match std::env::var(name) {
            Ok(v) => v
                .trim()
                .parse::<usize>()
                .map(Some)
                .map_err(|_| format!("{name} must be a positive integer, got {v:?}")),
            Err(_) => Ok(None),
        }
    };
    if let Some(v) = read(ENV_MAX_UNIVERSE)? {
        g.max_universe = v;
    }
    if let Some(v) = read(ENV_MAX_COMPONENT_TRIANGULATIONS)? {
        g.max_component_triangulations = v;
    }
    if let Some(v) = read(ENV_MAX_TRIANGULATION_PRODUCT)? {
        g.max_triangulation_product = v as u64;
    }
    if g.max_universe == 0 || g.max_component_triangulations == 0 || g.max_triangulation_product == 0
    {
        return Err("guard limits must be positive".into());
    }
    Ok(g)
}

fn read_input(path: &Path) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut buf)
            .map_err(|e| format!("reading stdin: {e}"))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))
    }
}

fn load_graph(path: &Path, guards: &Guards) -> Result<(MixedGraph, Labels), Error> {
    let text = read_input(path).map_err(|msg| Error::Parse { line: 0, msg })?;
    let (g, labels) = io::parse_graph(&text)?;
    if g.universe_size() > guards.max_universe {
        return Err(Error::GuardExceeded(format!(
            "graph has {} vertices (limit {}; raise {} to override)",
            g.universe_size(),
            guards.max_universe,
            ENV_MAX_UNIVERSE
        )));
    }
    Ok((g, labels))
}

fn load_imset(path: &Path) -> Result<(Imset, Labels), Error> {
    let text = read_input(path).map_err(|msg| Error::Parse { line: 0, msg })?;
    io::parse_imset(&text)
}

fn parse_universe(text: &str) -> Result<Labels, Error> {
    let names: Vec<String> = text
        .split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| s.to_string())
        .collect();
    if names.is_empty() {
        return Err(Error::Parse {
            line: 0,
            msg: "universe must name at least one vertex".into(),
        });
    }
    Labels::new(names)
}

fn parse_label_set(text: &str, labels: &Labels) -> Result<VertexSet, Error> {
    let mut s = VertexSet::EMPTY;
    for part in text.split(',').map(|p| p.trim()).filter(|p| !p.is_empty()) {
        let i = labels.index_of(part).ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("unknown vertex label {part:?}"),
        })?;
        s = s.with(i);
    }
    Ok(s)
}

fn class_name(c: GraphClass) -> &'static str {
    match c {
        GraphClass::Undirected => "undirected",
        GraphClass::Dag => "dag",
        GraphClass::Chain => "chain",
        GraphClass::NotChainGraph => "not-a-chain-graph",
    }
}

/// Parses `argv` and runs the selected subcommand, writing all output to
/// `out`. Returns the process exit code.
pub fn run<I, T, W>(argv: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    W: Write,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version arrive here too; they are not failures.
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            if is_help {
                let _ = write!(out, "{e}");
                return 0;
            }
            eprint!("{e}");
            return 2;
        }
    };
    let guards = match guards_from_env() {
        Ok(g) => g,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    match dispatch(&cli.command, &guards) {
        Ok(report) => {
            let _ = write!(out, "{}", report.render(cli.format));
            report.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn dispatch(cmd: &Command, guards: &Guards) -> Result<Report, Error> {
    match cmd {
        Command::Decompose { graph } => decompose(graph, guards),
        Command::Triangulate { graph, all, count } => {
            triangulate_cmd(graph, *all, *count, guards)
        }
        Command::Imset(ic) => imset_cmd(ic),
        Command::StandardImset { graph, variant } => standard_imset(graph, *variant, guards),
        Command::CiTest {
            graph,
            triplet,
            method,
        } => ci_test(graph, triplet, *method, guards),
        Command::Equiv(args) => equiv(args, guards),
        Command::Merge {
            graph,
            upper,
            lower,
        } => merge(graph, upper, lower, guards),
        Command::Largest { graph } => largest(graph, guards),
        Command::Model { graph, method } => model(graph, *method, guards),
        Command::Selftest { seed, samples } => selftest(*seed, *samples, guards),
    }
}

fn decompose(path: &Path, guards: &Guards) -> Result<Report, Error> {
    let (g, labels) = load_graph(path, guards)?;
    let d = mpd::mpd_decompose(&g)?;
    let mut r = Report::new();
    r.push("components", d.components.len().to_string());
    // The stored component order is a D-ordered sequence: each component's
    // intersection with the union of its predecessors is one separator.
    for c in &d.components {
        r.push("component", labels.set_to_string(*c));
    }
    for (s, nu) in &d.separators {
        r.push(
            "separator",
            format!("{} multiplicity {}", labels.set_to_string(*s), nu),
        );
    }
    Ok(r)
}

fn triangulate_cmd(path: &Path, _all: bool, count: bool, guards: &Guards) -> Result<Report, Error> {
    let (g, labels) = load_graph(path, guards)?;
    let ts = match g.classify() {
        GraphClass::Undirected => triangulate::minimal_triangulations(&g, guards)?,
        c if c.is_chain_graph() => triangulate::cg_minimal_triangulations(&g, guards)?,
        _ => return Err(Error::NotChainGraph),
    };
    let mut r = Report::new();
    r.push("count", ts.len().to_string());
    if !count {
        for t in &ts {
            r.push("triangulation", io::format_graph(t, &labels));
        }
    }
    Ok(r)
}

fn imset_cmd(cmd: &ImsetCommand) -> Result<Report, Error> {
    let mut r = Report::new();
    match cmd {
        ImsetCommand::Delta { universe, set } => {
            let labels = parse_universe(universe)?;
            let s = parse_label_set(set, &labels)?;
            let u = Imset::delta(VertexSet::full(labels.len()), s)?;
            r.push("imset", io::format_imset(&u, &labels));
        }
        ImsetCommand::SemiElementary { universe, triplet } => {
            let labels = parse_universe(universe)?;
            let t = io::parse_triplet(triplet, &labels)?;
            let u = imset::semi_elementary(VertexSet::full(labels.len()), &t)?;
            r.push("imset", io::format_imset(&u, &labels));
        }
        ImsetCommand::Add { a, b } => {
            let (ua, labels) = load_imset(a)?;
            let (ub, labels_b) = load_imset(b)?;
            if labels != labels_b {
                return Err(Error::UniverseMismatch);
            }
            r.push("imset", io::format_imset(&ua.try_add(&ub)?, &labels));
        }
        ImsetCommand::Sub { a, b } => {
            let (ua, labels) = load_imset(a)?;
            let (ub, labels_b) = load_imset(b)?;
            if labels != labels_b {
                return Err(Error::UniverseMismatch);
            }
            r.push("imset", io::format_imset(&ua.try_sub(&ub)?, &labels));
        }
        ImsetCommand::Decompose { imset: path, degree } => {
            let (u, labels) = load_imset(path)?;
            match imset::combinatorial_decompose(&u)? {
                Some(terms) => {
                    r.push("verdict", "combinatorial");
                    r.push("degree", terms.len().to_string());
                    if !degree {
                        for t in &terms {
                            r.push("term", io::format_triplet(t, &labels));
                        }
                    }
                }
                None => {
                    r.push("verdict", "not combinatorial");
                    r.code = 1;
                }
            }
        }
    }
    Ok(r)
}

fn standard_imset(path: &Path, variant: Variant, guards: &Guards) -> Result<Report, Error> {
    let (g, labels) = load_graph(path, guards)?;
    let class = g.classify();
    let mut r = Report::new();
    r.push("class", class_name(class));
    let u = match variant {
        Variant::Dag => {
            r.push("construction", "dag");
            standard::standard_imset_dag(&g)?
        }
        Variant::Decomposable => {
            r.push("construction", "decomposable");
            let d = mpd::mpd_decompose(&g)?;
            standard::standard_imset_decomposable(&g, &d)?
        }
        Variant::Ug => {
            r.push("construction", "undirected");
            standard::standard_imset_ug(&g, guards)?
        }
        Variant::V => {
            r.push("construction", "triangulation-sum");
            standard::triangulation_sum_imset(&g, guards)?
        }
        Variant::Cg => {
            r.push("construction", "chain-graph");
            // The general construction specialises on pure graphs; say so.
            let reduction = match class {
                GraphClass::Undirected => "coincides with the undirected construction",
                GraphClass::Dag => "coincides with the dag construction",
                GraphClass::Chain => "none (proper chain graph)",
                GraphClass::NotChainGraph => "n/a",
            };
            r.push("reduction", reduction);
            standard::standard_imset_cg(&g, guards)?
        }
    };
    r.push("degree", u.pair_weighted_sum().to_string());
    r.push("imset", io::format_imset(&u, &labels));
    Ok(r)
}

fn ci_test(path: &Path, triplet: &str, method: CiMethod, guards: &Guards) -> Result<Report, Error> {
    let (g, labels) = load_graph(path, guards)?;
    let t = io::parse_triplet(triplet, &labels)?;
    let independent = match method {
        CiMethod::Imset => {
            let u = standard::standard_imset_cg(&g, guards)?;
            standard::ci_test(&u, &t)?
        }
        CiMethod::Separation => separation::cg_separates(&g, &t)?,
    };
    let mut r = Report::new();
    r.push("statement", io::format_triplet(&t, &labels));
    r.push(
        "method",
        match method {
            CiMethod::Imset => "imset",
            CiMethod::Separation => "separation",
        },
    );
    r.push("verdict", if independent { "independent" } else { "dependent" });
    if !independent {
        r.code = 1;
    }
    Ok(r)
}

fn equiv(args: &EquivArgs, guards: &Guards) -> Result<Report, Error> {
    if args.graphs.len() != 2 {
        return Err(Error::Parse {
            line: 0,
            msg: format!("equiv needs --graph exactly twice, got {}", args.graphs.len()),
        });
    }
    let (g, labels_g) = load_graph(&args.graphs[0], guards)?;
    let (h, labels_h) = load_graph(&args.graphs[1], guards)?;
    if labels_g != labels_h {
        return Err(Error::UniverseMismatch);
    }
    let equivalent = match args.method {
        EquivMethod::Imset => standard::imset_equivalent(&g, &h, guards)?,
        EquivMethod::Frydenberg => separation::frydenberg_equivalent(&g, &h)?,
    };
    let mut r = Report::new();
    r.push(
        "method",
        match args.method {
            EquivMethod::Imset => "imset",
            EquivMethod::Frydenberg => "frydenberg",
        },
    );
    r.push("verdict", if equivalent { "equivalent" } else { "not equivalent" });
    if !equivalent {
        r.code = 1;
    }
    Ok(r)
}

fn merge(path: &Path, upper: &str, lower: &str, guards: &Guards) -> Result<Report, Error> {
    let (g, labels) = load_graph(path, guards)?;
    let up = parse_label_set(upper, &labels)?;
    let lo = parse_label_set(lower, &labels)?;
    let mut r = Report::new();
    match standard::feasible_merge(&g, up, lo)? {
        standard::MergeOutcome::Merged(m) => {
            r.push("verdict", "merged");
            r.push("graph", io::format_graph(&m, &labels));
        }
        standard::MergeOutcome::Infeasible(why) => {
            r.push("verdict", "infeasible");
            r.push(
                "connector-is-clique",
                if why.connector_is_clique { "yes" } else { "no" },
            );
            r.push(
                "outside-parents-shared",
                if why.outside_parents_shared { "yes" } else { "no" },
            );
            r.code = 1;
        }
    }
    Ok(r)
}

fn largest(path: &Path, guards: &Guards) -> Result<Report, Error> {
    let (g, labels) = load_graph(path, guards)?;
    if !g.classify().is_chain_graph() {
        return Err(Error::NotChainGraph);
    }
    let l = standard::largest_equivalent(&g)?;
    let mut r = Report::new();
    r.push("merges", (count_components(&g)? - count_components(&l)?).to_string());
    r.push("graph", io::format_graph(&l, &labels));
    Ok(r)
}

fn count_components(g: &MixedGraph) -> Result<usize, Error> {
    Ok(g.chain_components()?.len())
}

fn model(path: &Path, method: CiMethod, guards: &Guards) -> Result<Report, Error> {
    let (g, labels) = load_graph(path, guards)?;
    let triplets = match method {
        CiMethod::Separation => separation::independence_model(&g)?,
        CiMethod::Imset => standard::imset_independence_model(&g, guards)?,
    };
    let mut r = Report::new();
    r.push("count", triplets.len().to_string());
    for t in &triplets {
        r.push("triplet", io::format_triplet(t, &labels));
    }
    Ok(r)
}

/// Random cross-checks: the imset route and the separation route must agree
/// on every sampled statement, and equal models must coincide with equal
/// imsets. A disagreement is a library bug, reported as an internal error.
fn selftest(seed: u64, samples: usize, guards: &Guards) -> Result<Report, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut statements = 0usize;
    for k in 0..samples {
        let n = 3 + k % 3; // universes of 3..=5 vertices
        let g = random::random_chain_graph(n, 0.5, 0.35, &mut rng)?;
        let u = standard::standard_imset_cg(&g, guards)?;
        for t in separation::all_triplets(g.vertices()) {
            let by_imset = standard::ci_test(&u, &t)?;
            let by_separation = separation::cg_separates(&g, &t)?;
            if by_imset != by_separation {
                return Err(Error::Internal(format!(
                    "imset and separation disagree on {t:?} for {g:?} (seed {seed})"
                )));
            }
            statements += 1;
        }
    }
    let mut pairs = 0usize;
    for _ in 0..samples {
        let g = random::random_chain_graph(4, 0.5, 0.35, &mut rng)?;
        let h = random::random_chain_graph(4, 0.5, 0.35, &mut rng)?;
        let by_imset = standard::imset_equivalent(&g, &h, guards)?;
        let by_complexes = separation::frydenberg_equivalent(&g, &h)?;
        if by_imset != by_complexes {
            return Err(Error::Internal(format!(
                "equivalence tests disagree on {g:?} vs {h:?} (seed {seed})"
            )));
        }
        pairs += 1;
    }
    let mut r = Report::new();
    r.push("graphs", samples.to_string());
    r.push("statements", statements.to_string());
    r.push("pairs", pairs.to_string());
    r.push("verdict", "all checks agree");
    Ok(r)
}
