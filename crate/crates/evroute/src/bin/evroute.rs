//! Command-line front end: route planning, exact frontiers, capacity
//! sweeps, and instance generation. Vertex ids are 1-based on the
//! command line and in all output, matching the file formats.
//!
//! Exit codes: 0 success, 1 bad input, 2 no feasible route, 3 instance
//! guard tripped (oracle size, relaxation rounds, negative cycles).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use evroute::charging::{build_super_graph, load_chargers, route_with_chargers, ChargeModel};
use evroute::experiment::{
    run_experiment, ChargerSetup, ExperimentConfig, TargetSpec, DEFAULT_ORACLE_GUARD,
};
use evroute::graph::{QueryGoal, RoadGraph, VertexId};
use evroute::ingest::{gen_grid, gen_partition_instance, gen_sparse, equal_partition_exists};
use evroute::ingest::{load_params, ClassMix, GraphFile, Params};
use evroute::labeling::ev_pareto_frontier;
use evroute::plan::{OutputFormat, RoutePlan};
use evroute::two_phase::{best_two_phase, prefix_battery_violation};
use evroute::utility::PreferencePair;
use evroute::{Error, WattHours};

#[derive(Parser)]
#[command(name = "evroute", version, about = "Bicriterion route planning for electric vehicles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Plan one route, optionally through charging stations
    Route(RouteArgs),
    /// Print the exact battery-constrained Pareto frontier
    Pareto(ParetoArgs),
    /// Sweep capacities and report reachability and slowdown as CSV
    Experiment(ExperimentArgs),
    /// Generate synthetic instances
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Args)]
struct GraphArgs {
    /// Road-network file
    #[arg(long, value_name = "FILE")]
    graph: PathBuf,
    /// Optional parameter overrides (driving table, prefs, charge rate)
    #[arg(long, value_name = "FILE")]
    params: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
    JsonLines,
}

impl Format {
    fn plan_format(self) -> OutputFormat {
        match self {
            Format::Text => OutputFormat::Text,
            Format::Csv => OutputFormat::Csv,
            Format::JsonLines => OutputFormat::JsonLines,
        }
    }
}

#[derive(Args)]
struct RouteArgs {
    #[command(flatten)]
    io: GraphArgs,
    /// Start vertex, 1-based
    #[arg(long)]
    source: usize,
    /// Destination vertex, 1-based
    #[arg(long)]
    target: usize,
    /// Battery capacity in Wh
    #[arg(long)]
    capacity: Option<WattHours>,
    /// Bound on total travel seconds
    #[arg(long)]
    max_time: Option<i64>,
    /// Bound on total energy in Wh (without chargers)
    #[arg(long)]
    max_energy: Option<i64>,
    /// Charging-station file; requires --capacity
    #[arg(long, value_name = "FILE")]
    chargers: Option<PathBuf>,
    /// Linear charging rate in Wh per second
    #[arg(long)]
    charge_rate: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct ParetoArgs {
    #[command(flatten)]
    io: GraphArgs,
    /// Start vertex, 1-based
    #[arg(long)]
    source: usize,
    /// Destination vertex, 1-based
    #[arg(long)]
    target: usize,
    /// Battery capacity in Wh
    #[arg(long)]
    capacity: WattHours,
    /// Abort when n * (capacity + 1) exceeds this
    #[arg(long, default_value_t = DEFAULT_ORACLE_GUARD)]
    oracle_guard: u128,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct ExperimentArgs {
    #[command(flatten)]
    io: GraphArgs,
    /// Start vertex, 1-based
    #[arg(long)]
    source: usize,
    /// Number of seeded random targets, or "all"
    #[arg(long, default_value = "all")]
    targets: String,
    /// Capacities in Wh, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    capacity: Vec<WattHours>,
    /// Target-sampling seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Charging-station file
    #[arg(long, value_name = "FILE")]
    chargers: Option<PathBuf>,
    /// Linear charging rate in Wh per second
    #[arg(long)]
    charge_rate: Option<f64>,
    /// Abort the oracle when n * (capacity + 1) exceeds this
    #[arg(long, default_value_t = DEFAULT_ORACLE_GUARD)]
    oracle_guard: u128,
    /// Omit the wall-clock column so output is byte-stable
    #[arg(long)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum GenCommand {
    /// 4-neighbor grid with mixed road classes
    Grid {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Relative class weights highway,primary,secondary,local
        #[arg(long, value_delimiter = ',')]
        mix: Option<Vec<u32>>,
        /// Output file; stdout when absent
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Connected sparse random graph
    Sparse {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        segments: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Relative class weights highway,primary,secondary,local
        #[arg(long, value_delimiter = ',')]
        mix: Option<Vec<u32>>,
        /// Output file; stdout when absent
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Chain encoding of an equal-sum partition question
    Partition {
        /// Positive integers, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<i64>,
    },
}

enum CliError {
    Input(String),
    Engine(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::UnknownClass { .. }
            | Error::NonPositiveLength { .. }
            | Error::InvalidPreference { .. }
            | Error::Io(_) => CliError::Input(e.to_string()),
            other => CliError::Engine(other),
        }
    }
}

impl CliError {
    fn input(msg: impl Into<String>) -> CliError {
        CliError::Input(msg.into())
    }

    fn message(&self) -> String {
        match self {
            CliError::Input(msg) => msg.clone(),
            CliError::Engine(e) => e.to_string(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Engine(Error::NoFeasibleRoute | Error::Unreachable { .. }) => 2,
            CliError::Engine(_) => 3,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.exit();
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Route(args) => cmd_route(args),
        Command::Pareto(args) => cmd_pareto(args),
        Command::Experiment(args) => cmd_experiment(args),
        Command::Gen(kind) => cmd_gen(kind),
    }
}

fn load_setup(io: &GraphArgs) -> Result<(RoadGraph, Params), CliError> {
    let params = match &io.params {
        Some(path) => load_params(path)?,
        None => Params::default(),
    };
    let graph = GraphFile::load(&io.graph)?.expand(&params.driving);
    Ok((graph, params))
}

fn vertex(id: usize, n: usize, what: &str) -> Result<VertexId, CliError> {
    if id == 0 || id > n {
        return Err(CliError::input(format!("{what} {id} out of range 1..={n}")));
    }
    Ok(id - 1)
}

fn load_stations(path: &Path, n: usize) -> Result<Vec<VertexId>, CliError> {
    let stations = load_chargers(path)?;
    for &z in &stations {
        if z >= n {
            return Err(CliError::input(format!(
                "charging station {} out of range 1..={n}",
                z + 1
            )));
        }
    }
    Ok(stations)
}

fn charge_model(explicit: Option<f64>, params: &Params) -> Result<ChargeModel, CliError> {
    let rate = explicit.or(params.charge_rate_wh_per_s).ok_or_else(|| {
        CliError::input("set --charge-rate or charge.rate_wh_per_s in the params file")
    })?;
    if !rate.is_finite() || rate <= 0.0 {
        return Err(CliError::input(format!("charge rate must be positive, got {rate}")));
    }
    Ok(ChargeModel::linear(rate))
}

fn prefs_of(params: &Params) -> (Vec<String>, Vec<PreferencePair>) {
    let names = params
        .prefs
        .entries()
        .iter()
        .map(|(n, _)| n.clone())
        .collect();
    (names, params.prefs.pairs())
}

fn cmd_route(args: RouteArgs) -> Result<(), CliError> {
    let (graph, params) = load_setup(&args.io)?;
    let n = graph.vertex_count();
    let s = vertex(args.source, n, "source")?;
    let t = vertex(args.target, n, "target")?;
    let (names, prefs) = prefs_of(&params);

    let plan = match &args.chargers {
        None => {
            let max_energy = match (args.max_energy, args.capacity) {
                (Some(y), Some(c)) => Some(y.min(c)),
                (y, c) => y.or(c),
            };
            let goal = QueryGoal {
                max_time: args.max_time,
                max_energy,
            };
            let route = best_two_phase(&graph, s, t, &prefs, &goal)?;
            if let Some(capacity) = args.capacity {
                if let Some(idx) = prefix_battery_violation(&graph, &route, capacity) {
                    eprintln!(
                        "warning: battery dips below empty at leg edge {idx}; \
                         totals fit the capacity but the prefix does not"
                    );
                }
            }
            RoutePlan::from_two_phase(&graph, s, t, &route, &names)
        }
        Some(path) => {
            let capacity = args
                .capacity
                .ok_or_else(|| CliError::input("--chargers requires --capacity"))?;
            if args.max_energy.is_some() {
                return Err(CliError::input(
                    "--max-energy does not apply with --chargers; use --capacity",
                ));
            }
            let stations = load_stations(path, n)?;
            let model = charge_model(args.charge_rate, &params)?;
            let sg = build_super_graph(&graph, &stations, s, t, &prefs, capacity, &model)?;
            let itinerary = route_with_chargers(&sg, s, t)?;
            if args.max_time.is_some_and(|x| itinerary.total_seconds > x) {
                return Err(Error::NoFeasibleRoute.into());
            }
            RoutePlan::from_itinerary(&graph, s, t, &itinerary, &names)
        }
    };
    print!("{}", plan.render(args.format.plan_format()));
    Ok(())
}

fn cmd_pareto(args: ParetoArgs) -> Result<(), CliError> {
    let (graph, _) = load_setup(&args.io)?;
    let n = graph.vertex_count();
    let s = vertex(args.source, n, "source")?;
    let t = vertex(args.target, n, "target")?;
    if args.capacity <= 0 {
        return Err(CliError::input("capacity must be positive"));
    }
    let product = n as u128 * (args.capacity as u128 + 1);
    if product > args.oracle_guard {
        return Err(Error::OracleGuard {
            product,
            limit: args.oracle_guard,
        }
        .into());
    }
    let table = ev_pareto_frontier(&graph, s, args.capacity)?;
    let mut out = String::new();
    match args.format {
        Format::Text => {
            for w in table.frontier_weights(t) {
                out.push_str(&format!("{} s  {} Wh\n", w.time, w.energy));
            }
        }
        Format::Csv => {
            out.push_str("time_s,energy_wh\n");
            for w in table.frontier_weights(t) {
                out.push_str(&format!("{},{}\n", w.time, w.energy));
            }
        }
        Format::JsonLines => {
            for w in table.frontier_weights(t) {
                out.push_str(&format!(
                    "{{\"time_s\":{},\"energy_wh\":{}}}\n",
                    w.time, w.energy
                ));
            }
        }
    }
    print!("{out}");
    Ok(())
}

fn cmd_experiment(args: ExperimentArgs) -> Result<(), CliError> {
    let (graph, params) = load_setup(&args.io)?;
    let n = graph.vertex_count();
    let source = vertex(args.source, n, "source")?;
    let targets = match args.targets.as_str() {
        "all" => TargetSpec::All,
        count => {
            let count: usize = count
                .parse()
                .map_err(|_| CliError::input(format!("bad --targets value {count:?}")))?;
            if count == 0 || count > n {
                return Err(CliError::input(format!(
                    "--targets must be in 1..={n} or \"all\""
                )));
            }
            TargetSpec::Sample {
                count,
                seed: args.seed,
            }
        }
    };
    if args.capacity.iter().any(|&c| c <= 0) {
        return Err(CliError::input("capacities must be positive"));
    }
    let chargers = match &args.chargers {
        None => None,
        Some(path) => Some(ChargerSetup {
            stations: load_stations(path, n)?,
            model: charge_model(args.charge_rate, &params)?,
        }),
    };
    let (_, prefs) = prefs_of(&params);
    let mut cfg = ExperimentConfig::new(source, targets, args.capacity.clone());
    cfg.prefs = prefs;
    cfg.chargers = chargers;
    cfg.oracle_guard_limit = args.oracle_guard;
    cfg.timing = !args.no_timing;
    let report = run_experiment(&graph, &cfg)?;
    print!("{}", report.to_csv());
    Ok(())
}

fn emit_graph(gf: &GraphFile, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => gf.write(path)?,
        None => print!("{}", gf.to_text()),
    }
    Ok(())
}

fn class_mix(mix: Option<Vec<u32>>) -> Result<ClassMix, CliError> {
    match mix {
        None => Ok(ClassMix::default()),
        Some(weights) => {
            let weights: [u32; 4] = weights
                .try_into()
                .map_err(|_| CliError::input("--mix takes exactly 4 weights"))?;
            if weights.iter().all(|&w| w == 0) {
                return Err(CliError::input("--mix cannot be all zero"));
            }
            Ok(ClassMix::new(weights))
        }
    }
}

fn cmd_gen(kind: GenCommand) -> Result<(), CliError> {
    match kind {
        GenCommand::Grid { rows, cols, seed, mix, out } => {
            if rows == 0 || cols == 0 {
                return Err(CliError::input("grid must be at least 1x1"));
            }
            let gf = gen_grid(rows, cols, &class_mix(mix)?, seed);
            emit_graph(&gf, out.as_deref())
        }
        GenCommand::Sparse { vertices, segments, seed, mix, out } => {
            if vertices == 0 {
                return Err(CliError::input("need at least one vertex"));
            }
            if segments + 1 < vertices {
                return Err(CliError::input(format!(
                    "need at least {} segments to connect {vertices} vertices",
                    vertices - 1
                )));
            }
            let gf = gen_sparse(vertices, segments, &class_mix(mix)?, seed);
            emit_graph(&gf, out.as_deref())
        }
        GenCommand::Partition { values } => {
            if values.iter().any(|&a| a <= 0) {
                return Err(CliError::input("values must be positive integers"));
            }
            let instance = gen_partition_instance(&values);
            let total: i64 = values.iter().sum();
            println!("values: {values:?}  total {total}, half {}", instance.half_sum());
            println!(
                "chain: {} vertices, {} edges; goal X=Y={}",
                instance.graph.vertex_count(),
                instance.graph.edge_count(),
                instance.goal_value()
            );
            let oracle = instance.is_feasible()?;
            println!("oracle feasible: {oracle}");
            println!("subset-sum feasible: {}", equal_partition_exists(&values));
            Ok(())
        }
    }
}
