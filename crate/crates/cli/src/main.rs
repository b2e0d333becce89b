//! Command-line front end: exact censuses, weight tables, asymptotic
//! convergence reports, formula-versus-enumeration verification, uniform
//! sampling, and Gram matrix classification.
//!
//! Data goes to standard output, diagnostics to standard error. Exit codes:
//! 0 success, 1 verification mismatch, 2 invalid usage, 3 enumeration
//! budget exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

use hullcensus::asymptotics::{
    self, convergence_report, AsymptoticPrediction, DensityPrediction, QResidue,
};
use hullcensus::bilinear::{BilinearSpace, TypeTag};
use hullcensus::census::{self, CensusCache, CensusEntry};
use hullcensus::gf::Field;
use hullcensus::linalg;
use hullcensus::oracle::{self, OracleBudget, OracleError};
use hullcensus::sampler;
use hullcensus::weights;

mod verify;

#[derive(Parser)]
#[command(
    name = "hullcensus",
    version,
    about = "Exact enumeration of subspaces of finite bilinear spaces by hull dimension"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    /// Proportion of self-orthogonal k-dimensional subspaces.
    SoDensity,
    /// Number of self-orthogonal [n,k] codes.
    Sigma,
    /// Number of self-orthogonal vectors of a given weight.
    Zeta,
    /// Average number of weight-j words in a self-orthogonal [n,k] code.
    AvgWeight,
    /// Proportion of self-orthogonal codes with minimum distance below the
    /// Singleton threshold d.
    NonMds,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Residue {
    Any,
    Even,
    Odd,
    #[value(name = "1mod4")]
    OneMod4,
    #[value(name = "3mod4")]
    ThreeMod4,
}

impl From<Residue> for QResidue {
    fn from(r: Residue) -> QResidue {
        match r {
            Residue::Any => QResidue::Any,
            Residue::Even => QResidue::Even,
            Residue::Odd => QResidue::Odd,
            Residue::OneMod4 => QResidue::OneMod4,
            Residue::ThreeMod4 => QResidue::ThreeMod4,
        }
    }
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Hull dimension; all of 0..=k when omitted.
    #[arg(long)]
    l: Option<usize>,
    /// Space type tag (P, H, E, N1, N0a, N0na); the dot-space type of
    /// (q, n) when omitted.
    #[arg(long = "type")]
    type_tag: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// JSON-lines cache file; BILINEAR_CENSUS_CACHE overrides this.
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct WeightsArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    l: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct AsymptoticsArgs {
    #[arg(long, value_enum)]
    target: Target,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: Option<usize>,
    /// Singleton threshold for --target non-mds.
    #[arg(long)]
    d: Option<usize>,
    /// Vector weight for --target zeta.
    #[arg(long)]
    i: Option<usize>,
    /// Word weight for --target avg-weight.
    #[arg(long)]
    j: Option<usize>,
    #[arg(long, value_enum, default_value = "any")]
    residue: Residue,
    /// Comma-separated prime powers; the residue class default otherwise.
    #[arg(long, value_delimiter = ',')]
    ladder: Option<Vec<u64>>,
    /// Space type for --target so-density (defaults to the dot-space type).
    #[arg(long = "type")]
    type_tag: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: usize,
    /// Verify this Gram matrix document instead of the standard spaces.
    #[arg(long)]
    gram: Option<PathBuf>,
    #[arg(long, default_value_t = 100_000_000)]
    max_subspaces: u64,
    #[arg(long, default_value_t = 10_000_000)]
    max_codewords: u64,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Hull dimension of the stratum to sample from.
    #[arg(long)]
    l: usize,
    #[arg(long, default_value_t = 1)]
    count: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Gram matrix document {"q": ..., "gram": [[...], ...]}.
    #[arg(long)]
    gram: PathBuf,
    /// Cross-check the document's field order.
    #[arg(long)]
    q: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Exact subspace counts stratified by hull dimension.
    Census(CensusArgs),
    /// Aggregate and average weight distribution of a hull stratum.
    Weights(WeightsArgs),
    /// Convergence report of a leading-order prediction along a q-ladder.
    Asymptotics(AsymptoticsArgs),
    /// Recompute every formula by exhaustive enumeration and compare.
    Verify(VerifyArgs),
    /// Draw uniform subspaces from a hull stratum.
    Sample(SampleArgs),
    /// Type, Witt index, and discriminant class of a Gram matrix.
    Classify(ClassifyArgs),
}

/// Failures carrying their process exit code.
pub enum CliError {
    /// Bad parameters or unusable input: exit 2.
    Usage(String),
    /// Enumeration would exceed its budget: exit 3.
    Budget(String),
    /// A verification mismatch: exit 1.
    Mismatch(String),
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> CliError {
        match e {
            OracleError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<linalg::LinalgError> for CliError {
    fn from(e: linalg::LinalgError) -> CliError {
        match e {
            linalg::LinalgError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Census(args) => run_census(args),
        Command::Weights(args) => run_weights(args),
        Command::Asymptotics(args) => run_asymptotics(args),
        Command::Verify(args) => verify::run(args),
        Command::Sample(args) => run_sample(args),
        Command::Classify(args) => run_classify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Mismatch(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn parse_type(q: u64, n: usize, flag: &Option<String>) -> Result<TypeTag, CliError> {
    match flag {
        None => {
            if n == 0 {
                return Err(CliError::Usage("n must be positive".into()));
            }
            Ok(TypeTag::of_dot_space(q, n))
        }
        Some(s) => {
            let tag = TypeTag::parse(s)
                .ok_or_else(|| CliError::Usage(format!("unknown type tag {s:?}")))?;
            if !tag.is_consistent(n, q) {
                return Err(CliError::Usage(format!(
                    "type {tag} is inconsistent with q={q}, n={n}"
                )));
            }
            Ok(tag)
        }
    }
}

fn validate_field(q: u64) -> Result<hullcensus::FieldRef, CliError> {
    Field::new(q).map_err(usage)
}

fn run_census(args: CensusArgs) -> Result<(), CliError> {
    validate_field(args.q)?;
    let tag = parse_type(args.q, args.n, &args.type_tag)?;
    if args.k > args.n {
        return Err(CliError::Usage(format!(
            "k={} exceeds the ambient dimension n={}",
            args.k, args.n
        )));
    }
    let cache_path = std::env::var_os("BILINEAR_CENSUS_CACHE")
        .map(PathBuf::from)
        .or(args.cache);
    let cache = match &cache_path {
        Some(p) => CensusCache::open(p).map_err(usage)?,
        None => CensusCache::in_memory(),
    };

    let ls: Vec<usize> = match args.l {
        Some(l) => {
            if l > args.k {
                return Err(CliError::Usage(format!("l={} exceeds k={}", l, args.k)));
            }
            vec![l]
        }
        None => (0..=args.k).collect(),
    };

    if args.format == Format::Csv {
        println!("q,type,n,k,l,count");
    }
    for l in ls {
        let count = cache.hull_count(args.q, tag, args.n, args.k, l);
        let entry = CensusEntry {
            q: args.q,
            type_tag: tag,
            n: args.n,
            k: args.k,
            l,
            count,
        };
        match args.format {
            Format::Json => {
                println!("{}", serde_json::to_string(&entry).expect("serializable"))
            }
            Format::Csv => println!(
                "{},{},{},{},{},{}",
                entry.q, entry.type_tag, entry.n, entry.k, entry.l, entry.count
            ),
        }
    }
    if cache_path.is_some() {
        cache.save().map_err(usage)?;
    }
    Ok(())
}

fn rational_str(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn run_weights(args: WeightsArgs) -> Result<(), CliError> {
    validate_field(args.q)?;
    let table = weights::aggregate_hull_weights(args.q, args.n, args.k, args.l).map_err(usage)?;
    match args.format {
        Format::Csv => print!("{}", table.to_csv()),
        Format::Json => {
            let aggregate: Vec<String> = table.aggregate.iter().map(|a| a.to_string()).collect();
            let average: Option<Vec<String>> = table
                .average
                .as_ref()
                .map(|avg| avg.iter().map(rational_str).collect());
            let doc = serde_json::json!({
                "q": table.q,
                "n": table.n,
                "k": table.k,
                "l": table.l,
                "aggregate": aggregate,
                "average": average,
            });
            println!("{doc}");
        }
    }
    Ok(())
}

fn need(opt: Option<usize>, what: &str) -> Result<usize, CliError> {
    opt.ok_or_else(|| CliError::Usage(format!("--{what} is required for this target")))
}

fn run_asymptotics(args: AsymptoticsArgs) -> Result<(), CliError> {
    let residue: QResidue = args.residue.into();
    let n = args.n;
    let budget = OracleBudget::default();

    let (prediction, exact): (AsymptoticPrediction, Box<dyn Fn(u64) -> BigRational>) = match args
        .target
    {
        Target::SoDensity => {
            let k = need(args.k, "k")?;
            let tag = match &args.type_tag {
                Some(s) => TypeTag::parse(s)
                    .ok_or_else(|| CliError::Usage(format!("unknown type tag {s:?}")))?,
                None => dot_type(residue, n)?,
            };
            let pred = asymptotics::so_density_prediction(tag, n, k).map_err(usage)?;
            let exact = move |q: u64| {
                BigRational::new(
                    census::self_orthogonal_count(tag, n, k, q),
                    census::gaussian_binomial(n as i64, k as i64, q),
                )
            };
            (pred, Box::new(exact))
        }
        Target::Sigma => {
            let k = need(args.k, "k")?;
            let pred = asymptotics::so_count_prediction(residue, n, k).map_err(usage)?;
            let exact = move |q: u64| BigRational::from_integer(census::so_count_dot(n, k, q));
            (pred, Box::new(exact))
        }
        Target::Zeta => {
            let i = need(args.i, "i")?;
            if i == 0 || i > n {
                return Err(CliError::Usage(format!("need 1 <= i <= n, got i={i}")));
            }
            let pred = asymptotics::so_vector_count_prediction(residue, n, i);
            let exact = move |q: u64| BigRational::from_integer(weights::so_vector_count(q, n, i));
            (pred, Box::new(exact))
        }
        Target::AvgWeight => {
            let k = need(args.k, "k")?;
            let j = need(args.j, "j")?;
            let pred = asymptotics::avg_so_weight_prediction(residue, n, k, j).map_err(usage)?;
            let exact = move |q: u64| {
                BigRational::new(
                    weights::aggregate_so_weights(q, n, k).expect("valid parameters")[j].clone(),
                    census::so_count_dot(n, k, q),
                )
            };
            (pred, Box::new(exact))
        }
        Target::NonMds => {
            let k = need(args.k, "k")?;
            let d = need(args.d, "d")?;
            let pred =
                asymptotics::non_mds_so_density_prediction(n, k, d, residue).map_err(usage)?;
            let ladder = args
                .ladder
                .clone()
                .unwrap_or_else(|| residue.default_ladder());
            return run_non_mds_report(pred, n, k, d, &ladder, &budget);
        }
    };

    let ladder = args
        .ladder
        .unwrap_or_else(|| prediction.residue.default_ladder());
    for &q in &ladder {
        validate_field(q)?;
    }
    let report = convergence_report(
        &target_label(args.target, n, args.k, args.d, args.i, args.j),
        exact,
        &prediction,
        &ladder,
        &asymptotics::default_threshold(),
    )
    .map_err(usage)?;
    println!("{}", report.to_json());
    Ok(())
}

fn dot_type(residue: QResidue, n: usize) -> Result<TypeTag, CliError> {
    let probe = match residue {
        QResidue::Even => 2,
        QResidue::OneMod4 => 5,
        QResidue::ThreeMod4 => 3,
        // All odd q share a type only away from n = 2 mod 4.
        QResidue::Odd if n % 2 == 1 || n % 4 == 0 => 3,
        _ => {
            return Err(CliError::Usage(
                "--type or a finer residue class is required for this target".into(),
            ))
        }
    };
    Ok(TypeTag::of_dot_space(probe, n))
}

fn target_label(
    target: Target,
    n: usize,
    k: Option<usize>,
    d: Option<usize>,
    i: Option<usize>,
    j: Option<usize>,
) -> String {
    let mut out = match target {
        Target::SoDensity => "so-density",
        Target::Sigma => "sigma",
        Target::Zeta => "zeta",
        Target::AvgWeight => "avg-weight",
        Target::NonMds => "non-mds",
    }
    .to_string();
    out.push_str(&format!(" n={n}"));
    if let Some(k) = k {
        out.push_str(&format!(" k={k}"));
    }
    if let Some(d) = d {
        out.push_str(&format!(" d={d}"));
    }
    if let Some(i) = i {
        out.push_str(&format!(" i={i}"));
    }
    if let Some(j) = j {
        out.push_str(&format!(" j={j}"));
    }
    out
}

fn run_non_mds_report(
    pred: DensityPrediction,
    n: usize,
    k: usize,
    d: usize,
    ladder: &[u64],
    budget: &OracleBudget,
) -> Result<(), CliError> {
    let exact = |q: u64| -> Result<BigRational, CliError> {
        let f = validate_field(q)?;
        let scan = oracle::low_distance_so_census(&f, n, k, d, budget)?;
        if scan.total == BigInt::from(0) {
            return Err(CliError::Usage(format!(
                "no self-orthogonal [{n},{k}] codes exist over F_{q}"
            )));
        }
        Ok(BigRational::new(scan.below, scan.total))
    };
    let mut cached: Vec<(u64, BigRational)> = Vec::new();
    for &q in ladder {
        cached.push((q, exact(q)?));
    }
    let lookup = |q: u64| -> BigRational {
        cached
            .iter()
            .find(|(qq, _)| *qq == q)
            .map(|(_, v)| v.clone())
            .expect("ladder point computed")
    };
    let label = format!("non-mds n={n} k={k} d={d}");
    let doc = match pred {
        DensityPrediction::Single(p) => {
            let report = convergence_report(
                &label,
                lookup,
                &p,
                ladder,
                &asymptotics::default_threshold(),
            )
            .map_err(usage)?;
            report.to_json()
        }
        DensityPrediction::Bounds { lower, upper } => {
            let low = convergence_report(
                &format!("{label} (lower bound)"),
                lookup,
                &lower,
                ladder,
                &asymptotics::default_threshold(),
            )
            .map_err(usage)?;
            let up = convergence_report(
                &format!("{label} (upper bound)"),
                lookup,
                &upper,
                ladder,
                &asymptotics::default_threshold(),
            )
            .map_err(usage)?;
            serde_json::json!({"lower": low.to_json(), "upper": up.to_json()})
        }
    };
    println!("{doc}");
    Ok(())
}

fn run_sample(args: SampleArgs) -> Result<(), CliError> {
    let f = validate_field(args.q)?;
    if args.n == 0 {
        return Err(CliError::Usage("n must be positive".into()));
    }
    let space = BilinearSpace::standard_dot(f.clone(), args.n);
    let mut rng = ChaCha12Rng::seed_from_u64(args.seed);
    for _ in 0..args.count {
        let sub = sampler::uniform_with_hull_dim(&space, args.k, args.l, &mut rng, 1_000_000)
            .map_err(usage)?;
        let rows: Vec<Vec<u64>> = (0..sub.dim())
            .map(|r| sub.basis().row(r).iter().map(|e| e.0 as u64).collect())
            .collect();
        let doc = serde_json::json!({"q": args.q, "matrix": rows});
        println!("{doc}");
    }
    Ok(())
}

fn run_classify(args: ClassifyArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.gram).map_err(usage)?;
    let space = BilinearSpace::from_json(&text).map_err(usage)?;
    if let Some(q) = args.q {
        if q != space.field().order() {
            return Err(CliError::Usage(format!(
                "--q {} does not match the document's field order {}",
                q,
                space.field().order()
            )));
        }
    }
    let doc = serde_json::json!({
        "type": space.type_tag().as_str(),
        "witt": space.witt_index(),
        "discriminantSquare": space.discriminant_is_square(),
    });
    println!("{doc}");
    Ok(())
}
