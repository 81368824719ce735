//! Command-line front end: classify, solve, enumerate, generate, bound,
//! count inversions, and cross-verify instances stored as JSON files.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tropdiff::budget::{Budget, Truncated};
use tropdiff::generators::{self, GenError, LowerBoundPlan};
use tropdiff::inversions;
use tropdiff::io::{InstanceFile, ParseError, PermFamilyFile, SolutionSetFile};
use tropdiff::oracle::{self, SearchBox};
use tropdiff::single_eq;
use tropdiff::support::MultiSupport;
use tropdiff::systems;
use tropdiff::TldeSystem;

#[derive(Parser)]
#[command(name = "tropdiff", version, about = "Tropical linear differential equations: minimal solutions, classification, bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Json,
}

#[derive(Args)]
struct InputArgs {
    /// Instance file (JSON)
    #[arg(long)]
    input: String,
    /// Output format
    #[arg(long, value_enum, default_value = "pretty")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Report holonomicity, regularity and genericity of an instance
    Classify(InputArgs),
    /// Enumerate all minimal solutions (finite part and shift rays)
    Solve(InputArgs),
    /// Brute-force minimal solutions within an exponent box
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        /// Uniform exponent cap overriding the derived box
        #[arg(long)]
        bound: Option<i64>,
        /// Worker threads (accepted for symmetry; enumeration is sequential)
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Solutions at infinity of a univariate instance
    Infinity {
        #[command(flatten)]
        input: InputArgs,
        /// Exhaustive depth for the oracle listing
        #[arg(long, default_value_t = 6)]
        depth: i64,
    },
    /// Emit an instance file built by one of the generators
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Bound formulas for a given order tuple
    Bounds {
        /// Instance file to read the orders from
        #[arg(long, conflicts_with = "orders")]
        input: Option<String>,
        /// Comma-separated order tuple, e.g. 2,1
        #[arg(long, value_delimiter = ',')]
        orders: Option<Vec<i64>>,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
    },
    /// Inversions of permutation families
    Inversions {
        #[command(subcommand)]
        kind: InversionsKind,
    },
    /// Cross-check the structural solver against the brute-force oracle
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Uniform exponent cap overriding the derived box
        #[arg(long)]
        bound: Option<i64>,
    },
}

#[derive(Subcommand)]
enum GenerateKind {
    /// Sharp 2×2 construction with the full mixed-type solution count
    ConstructionN2 {
        #[arg(long)]
        ku: i64,
        #[arg(long)]
        kv: i64,
        #[arg(long, default_value_t = 0)]
        base: i64,
        #[arg(long, default_value_t = 2)]
        step: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cyclic n×n lower-bound construction
    Lower {
        /// Comma-separated order tuple, e.g. 1,1,1
        #[arg(long, value_delimiter = ',')]
        orders: Vec<i64>,
        /// 1-based index family p_1 < p_2 < … with cyclic gaps ≥ 2
        #[arg(long, value_delimiter = ',')]
        family: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        base: i64,
        #[arg(long, default_value_t = 2)]
        step: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rejection-sampled generic regular system
    Random {
        /// Comma-separated order tuple
        #[arg(long, value_delimiter = ',')]
        orders: Vec<i64>,
        #[arg(long, default_value_t = -8)]
        lo: i64,
        #[arg(long, default_value_t = 8)]
        hi: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum InversionsKind {
    /// Count the inversions of a permutation family file
    Count {
        /// Family file (JSON: {"r": …, "perms": [[…], …]})
        #[arg(long)]
        input: String,
    },
    /// Exhaustive maximum inversion count over all n-families on [r]
    Max {
        /// Number of permutations in the family
        #[arg(long)]
        perms: usize,
        /// Ground-set size
        #[arg(long)]
        size: usize,
        /// Worker threads sharding the search
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

enum CliError {
    Input(String),
    Resource(String),
    Mismatch(String),
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<Truncated> for CliError {
    fn from(e: Truncated) -> Self {
        CliError::Resource(e.to_string())
    }
}

impl From<GenError> for CliError {
    fn from(e: GenError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn read_instance(path: &str) -> Result<TldeSystem, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    InstanceFile::parse(&text).map_err(CliError::from)
}

fn print_supports(supports: &[MultiSupport], format: Format) {
    match format {
        Format::Pretty => {
            for s in supports {
                println!("{s}");
            }
        }
        Format::Json => {
            let rows: Vec<Vec<Vec<i64>>> = supports
                .iter()
                .map(|s| s.parts().iter().map(|p| p.elems().to_vec()).collect())
                .collect();
            println!("{}", serde_json::to_string_pretty(&rows).unwrap());
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let budget = Budget::from_env();
    match cli.command {
        Command::Classify(args) => {
            let sigma = read_instance(&args.input)?;
            let holonomic = systems::is_holonomic_system(&sigma, &budget)?;
            let regular = systems::is_regular_system(&sigma);
            let generic = systems::is_generic(&sigma).ok();
            match args.format {
                Format::Pretty => {
                    println!("holonomic: {holonomic}");
                    println!("regular: {regular}");
                    match generic {
                        Some(g) => println!("generic: {g}"),
                        None => println!("generic: n/a (system is not square)"),
                    }
                }
                Format::Json => {
                    let out = serde_json::json!({
                        "holonomic": holonomic,
                        "regular": regular,
                        "generic": generic,
                    });
                    println!("{}", serde_json::to_string_pretty(&out).unwrap());
                }
            }
        }
        Command::Solve(args) => {
            let sigma = read_instance(&args.input)?;
            let set = systems::solve_system(&sigma, &budget)?;
            match args.format {
                Format::Pretty => print!("{set}"),
                Format::Json => {
                    println!("{}", SolutionSetFile::from_set(&set).to_json())
                }
            }
        }
        Command::Oracle { input, bound, jobs } => {
            let _ = jobs;
            let sigma = read_instance(&input.input)?;
            let mut box_ = SearchBox::auto(&sigma);
            if let Some(cap) = bound {
                if cap < 0 {
                    return Err(CliError::Input("--bound must be nonnegative".into()));
                }
                box_ = box_.with_uniform_cap(cap);
            }
            let sols = oracle::oracle_minimal(&sigma, &box_, &budget)?;
            print_supports(&sols, input.format);
        }
        Command::Infinity { input, depth } => {
            let sigma = read_instance(&input.input)?;
            if sigma.n() != 1 || sigma.m() != 1 {
                return Err(CliError::Input(
                    "infinity analysis requires a single univariate equation".into(),
                ));
            }
            if depth < 1 {
                return Err(CliError::Input("--depth must be ≥ 1".into()));
            }
            let p = sigma.eq(0);
            let inf = single_eq::infinity_solutions(p);
            let listed = oracle::oracle_infinity(p, depth);
            match input.format {
                Format::Pretty => {
                    println!("negative_ray: {}", inf.negative_ray);
                    match inf.pair {
                        Some(r) => println!("pair: {{0, -{r}}}"),
                        None => println!("pair: none"),
                    }
                    println!("minimal solutions at infinity up to depth {depth}:");
                    for s in &listed {
                        let terms: Vec<String> =
                            s.iter().map(|e| format!("t^{e}")).collect();
                        println!("  {}", terms.join(" + "));
                    }
                }
                Format::Json => {
                    let out = serde_json::json!({
                        "negative_ray": inf.negative_ray,
                        "pair_r": inf.pair,
                        "oracle_depth": depth,
                        "oracle_minimal": listed,
                    });
                    println!("{}", serde_json::to_string_pretty(&out).unwrap());
                }
            }
        }
        Command::Generate { kind } => {
            let sigma = match kind {
                GenerateKind::ConstructionN2 {
                    ku,
                    kv,
                    base,
                    step,
                    seed,
                } => {
                    if ku < 1 || kv < 1 {
                        return Err(CliError::Input("orders must be ≥ 1".into()));
                    }
                    if step < 2 {
                        return Err(CliError::Input("--step must be ≥ 2".into()));
                    }
                    generators::construct_n2(ku, kv, base, step, seed)?
                }
                GenerateKind::Lower {
                    orders,
                    family,
                    base,
                    step,
                    seed,
                } => {
                    if step < 2 {
                        return Err(CliError::Input("--step must be ≥ 2".into()));
                    }
                    let plan = LowerBoundPlan::new(orders, family)?;
                    generators::construct_lower(&plan, base, step, seed)?
                }
                GenerateKind::Random { orders, lo, hi, seed } => {
                    if orders.is_empty() {
                        return Err(CliError::Input("--orders is required".into()));
                    }
                    if lo >= hi {
                        return Err(CliError::Input("--lo must be below --hi".into()));
                    }
                    generators::random_system(orders.len(), &orders, (lo, hi), seed)?
                }
            };
            println!("{}", InstanceFile::from_system(&sigma).to_json());
        }
        Command::Bounds {
            input,
            orders,
            format,
        } => {
            let orders = match (input, orders) {
                (Some(path), _) => read_instance(&path)?.orders(),
                (None, Some(orders)) => {
                    if orders.is_empty() || orders.iter().any(|&k| k < 1) {
                        return Err(CliError::Input("orders must be ≥ 1".into()));
                    }
                    orders
                }
                (None, None) => {
                    return Err(CliError::Input(
                        "provide --input FILE or --orders LIST".into(),
                    ))
                }
            };
            let n = orders.len();
            let naive = generators::naive_upper_bound(&orders);
            let sharp = (n == 2).then(|| generators::sharp_bound_n2(orders[0], orders[1]));
            let lead = generators::leading_upper(n, &orders);
            match format {
                Format::Pretty => {
                    println!("orders: {orders:?}");
                    println!("naive_upper_bound: {naive}");
                    if let Some(s) = sharp {
                        println!("sharp_n2: {s}");
                    }
                    println!(
                        "leading_upper: {}/{} (plus lower-order terms)",
                        lead.numerator, lead.denominator
                    );
                }
                Format::Json => {
                    let out = serde_json::json!({
                        "orders": orders,
                        "naive_upper_bound": naive,
                        "sharp_n2": sharp,
                        "leading_upper": {
                            "numerator": lead.numerator,
                            "denominator": lead.denominator,
                            "asymptotic": lead.asymptotic,
                        },
                    });
                    println!("{}", serde_json::to_string_pretty(&out).unwrap());
                }
            }
        }
        Command::Inversions { kind } => match kind {
            InversionsKind::Count { input } => {
                let text = std::fs::read_to_string(&input)
                    .map_err(|e| CliError::Input(format!("{input}: {e}")))?;
                let family = PermFamilyFile::parse(&text)?;
                println!("{}", inversions::count_inversions(&family));
            }
            InversionsKind::Max { perms, size, jobs } => {
                if perms < 2 {
                    return Err(CliError::Input("--perms must be ≥ 2".into()));
                }
                if size < 1 || size > 8 {
                    return Err(CliError::Input(
                        "--size must be in 1..=8 (exhaustive search)".into(),
                    ));
                }
                let max = inversions::max_inversions(perms, size, &budget, jobs.max(1))?;
                println!("{max}");
            }
        },
        Command::Verify { input, bound } => {
            let sigma = read_instance(&input.input)?;
            let mut box_ = SearchBox::auto(&sigma);
            if let Some(cap) = bound {
                if cap < 0 {
                    return Err(CliError::Input("--bound must be nonnegative".into()));
                }
                box_ = box_.with_uniform_cap(cap);
            }
            let set = systems::solve_system(&sigma, &budget)?;
            let cap = box_.max_exp_cap();
            let structural = set.members_within(cap);
            let listed = oracle::oracle_minimal(&sigma, &box_, &budget)?;
            let oracle_set: std::collections::BTreeSet<MultiSupport> =
                listed.into_iter().collect();
            if structural == oracle_set {
                println!("MATCH ({} minimal solutions within bound {cap})", oracle_set.len());
            } else {
                let mut detail = String::new();
                for s in structural.difference(&oracle_set) {
                    let _ = writeln!(detail, "  solver only: {s}");
                }
                for s in oracle_set.difference(&structural) {
                    let _ = writeln!(detail, "  oracle only: {s}");
                }
                return Err(CliError::Mismatch(format!(
                    "solver and oracle disagree within bound {cap}:\n{detail}"
                )));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Mismatch(msg)) => {
            eprintln!("MISMATCH: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("input error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Resource(msg)) => {
            eprintln!("resource error: {msg}");
            ExitCode::from(3)
        }
    }
}
