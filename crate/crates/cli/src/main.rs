use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use vvmf_cli::fixtures::{compare, Fixture};
use vvmf_cli::render::{bracketed, comma_list, render, EnumerationDoc, Format};
use vvmf_core::component::{enumerate_components, trace_l_candidates, traces_of};
use vvmf_core::dmatrix::{random_dmatrix, reduce_e6};
use vvmf_core::euler::{dimension_m, p_polynomial, ChiContext};
use vvmf_core::profile::{dual_cuspidal_profile, tensor_standard, Profile};
use vvmf_core::qseries::identity_suite;
use vvmf_core::search::{candidates_for_context, enumerate_types, ContextOutcome};
use vvmf_core::{BlockShape, ComponentParams, DMatrix, DimensionAnswer, FilterSet, MatrixFile, Parity};

#[derive(Parser)]
#[command(name = "vvmf", version, about = "Weight profiles of vector-valued modular forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every candidate multiplicity tuple of a dimension.
    Enumerate(EnumerateArgs),
    /// Show trace data and candidates for one component, or list components.
    Component(ComponentArgs),
    /// Dimensions of spaces of holomorphic forms for one component.
    Dims(DimsArgs),
    /// Eliminate E6 from a derivative matrix.
    Reduce(ReduceArgs),
    /// Check q-expansion identities of the Eisenstein series.
    Qcheck {
        #[arg(long, default_value_t = 50)]
        terms: usize,
    },
    /// Duality and tensor operations on profiles.
    #[command(subcommand)]
    ProfileOps(ProfileOp),
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    dim: u32,
    #[arg(long, default_value = "text")]
    format: Format,
    /// Compare against a golden table and fail on any difference.
    #[arg(long, value_name = "PATH")]
    fixtures_check: Option<PathBuf>,
    /// Keep profiles with exactly two distinct weights.
    #[arg(long)]
    no_two_weight: bool,
    /// Restrict where a multiplicity of d/2 may occur.
    #[arg(long)]
    half_dimension: bool,
    /// Require r <= 8e + 7.
    #[arg(long)]
    ell_bound: bool,
    /// Enable all optional multiplicity refinements.
    #[arg(long)]
    advanced: bool,
    /// Keep only weights in [1, 11].
    #[arg(long)]
    unitary: bool,
    /// Worker threads for the search.
    #[arg(long, env = "VVMF_THREADS")]
    threads: Option<usize>,
}

/// `N` comma-separated counts.
#[derive(Clone, Copy, Debug)]
struct Counts<const N: usize>([u32; N]);

impl<const N: usize> FromStr for Counts<N> {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<u32> = s
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|e| format!("'{p}': {e}")))
            .collect::<Result<_, _>>()?;
        let arr: [u32; N] = parts
            .try_into()
            .map_err(|v: Vec<u32>| format!("expected {N} comma-separated values, got {}", v.len()))?;
        Ok(Counts(arr))
    }
}

fn component(parity: Parity, s: Counts<2>, r: Counts<3>) -> vvmf_core::Result<ComponentParams> {
    let (Counts([a, b]), Counts([x, y, z])) = (s, r);
    ComponentParams::new(parity, (a, b), (x, y, z))
}

#[derive(Args)]
struct ComponentSpec {
    #[arg(long)]
    parity: Parity,
    /// Multiplicities of the eigenvalues of S, as `a,b`.
    #[arg(long)]
    s_mults: Counts<2>,
    /// Multiplicities of the eigenvalues of R, as `x,y,z`.
    #[arg(long)]
    r_mults: Counts<3>,
}

#[derive(Args)]
struct ComponentArgs {
    #[arg(long)]
    dim: u32,
    #[arg(long)]
    parity: Option<Parity>,
    #[arg(long, requires_all = ["parity", "r_mults"])]
    s_mults: Option<Counts<2>>,
    #[arg(long, requires_all = ["parity", "s_mults"])]
    r_mults: Option<Counts<3>>,
    #[arg(long = "twelve-trl", allow_negative_numbers = true)]
    twelve_trl: Option<i64>,
}

#[derive(Args)]
struct DimsArgs {
    #[arg(long)]
    dim: u32,
    #[command(flatten)]
    component: ComponentSpec,
    #[arg(long = "twelve-trl")]
    twelve_trl: i64,
    #[arg(long, allow_negative_numbers = true, default_value_t = -12)]
    k_min: i64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 24)]
    k_max: i64,
    /// Known values of the middle-range cusp form dimensions a_1, a_2, ...
    #[arg(long, value_delimiter = ',')]
    cusp_dims: Vec<u64>,
}

#[derive(Args)]
struct ReduceArgs {
    /// Matrix file; alternatively use --random-shape.
    #[arg(long, conflicts_with = "random_shape")]
    input: Option<PathBuf>,
    /// Generate a random matrix with these block sizes.
    #[arg(long, value_delimiter = ',')]
    random_shape: Option<Vec<u32>>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0)]
    k1: i64,
    /// Where to write the reduced matrix (stdout if absent).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write the change of generators.
    #[arg(long, value_name = "PATH")]
    emit_transform: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ProfileOp {
    /// Cuspidal profile of the dual representation.
    Dual {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        weights: Vec<i64>,
    },
    /// Multiplicities after tensoring with the standard representation.
    TensorStd {
        #[arg(long, value_delimiter = ',', required = true)]
        mults: Vec<u32>,
    },
}

enum Failure {
    Domain(String),
    Internal(String),
}

impl From<vvmf_core::Error> for Failure {
    fn from(e: vvmf_core::Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

type Outcome = Result<bool, Failure>;

fn check_dim(d: u32) -> Result<(), Failure> {
    if d == 0 {
        return Err(Failure::Domain("dimension must be at least 1".into()));
    }
    Ok(())
}

fn check_component_dim(c: &ComponentParams, d: u32) -> Result<(), Failure> {
    if c.dimension() != d {
        return Err(Failure::Domain(format!(
            "component {c} has dimension {}, not {d}",
            c.dimension()
        )));
    }
    Ok(())
}

fn run_enumerate(args: &EnumerateArgs) -> Outcome {
    check_dim(args.dim)?;
    if let Some(n) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Domain(format!("cannot configure {n} threads: {e}")))?;
    }
    let fixture = args
        .fixtures_check
        .as_ref()
        .map(|p| Fixture::load(p).map_err(|e| Failure::Domain(format!("{}: {e}", p.display()))))
        .transpose()?;
    if let Some(f) = &fixture {
        if f.dimension != args.dim {
            return Err(Failure::Domain(format!(
                "fixture is for dimension {}, not {}",
                f.dimension, args.dim
            )));
        }
    }
    let filters = FilterSet {
        two_weight: !args.no_two_weight,
        half_dimension: args.half_dimension || args.advanced,
        ell_bound: args.ell_bound || args.advanced,
        unitary: args.unitary,
    };
    let e = enumerate_types(args.dim, &filters)?;
    let s = &e.stats;
    eprintln!(
        "contexts {}, non-integral {}, weight-sum mismatch {}, candidates {}, rejected {} + {} optional",
        s.contexts, s.non_integral, s.weight_sum_mismatch, s.candidates, s.rejected_mandatory, s.rejected_optional
    );
    let doc = EnumerationDoc::from(&e);
    print!("{}", render(&doc, args.format));
    match fixture {
        None => Ok(true),
        Some(f) => {
            let emitted: Vec<Vec<u32>> = doc.types.iter().map(|t| t.mults.clone()).collect();
            let report = compare(&f, &emitted);
            print!("{report}");
            Ok(report.passed())
        }
    }
}

fn run_component(args: &ComponentArgs) -> Outcome {
    check_dim(args.dim)?;
    let (Some(parity), Some(s), Some(r)) = (args.parity, args.s_mults, args.r_mults) else {
        for c in enumerate_components(args.dim) {
            println!("{c}");
        }
        return Ok(true);
    };
    let c = component(parity, s, r)?;
    check_component_dim(&c, args.dim)?;
    let (s_tr, r1, r2) = traces_of(&c);
    println!("component {c}");
    println!("  tr S = {s_tr}, tr R = {r1}, tr R^2 = {r2}");
    println!("  det S = {}, det R = {}", c.det_s(), c.det_r());
    let candidates = trace_l_candidates(&c);
    println!("  12 Tr L in {{{}}}", comma_list(&candidates));
    let selected: Vec<i64> = match args.twelve_trl {
        Some(t) if candidates.contains(&t) => vec![t],
        Some(t) => {
            return Err(Failure::Domain(format!("12 Tr L = {t} is not admissible for {c}")));
        }
        None => candidates,
    };
    for t in selected {
        let (ctx, middle) = ChiContext::for_component(&c, t)?;
        println!("12 Tr L = {t}: l1 = {}, middle range {}", middle.ell_one, bracketed(&middle.ell_list));
        match p_polynomial(&ctx) {
            Ok(p) => println!("  P(T) = {p}"),
            Err(e) => println!("  {e}"),
        }
        match candidates_for_context(&c, t)? {
            ContextOutcome::NonIntegral => println!("  skipped: non-integral Euler characteristic"),
            ContextOutcome::WeightSumMismatch => println!("  skipped: weight sum mismatch"),
            ContextOutcome::Searched(records) => {
                for rec in records {
                    let f = rec.filter_flags;
                    let verdict = if f.passes(&FilterSet::default()) { "keep" } else { "drop" };
                    println!(
                        "  {verdict} a = {} weights {} mults {} (bounds {}, gap-free {}, mult bounds {}, two-weight {})",
                        bracketed(&rec.a_vector.values),
                        bracketed(rec.profile.weights()),
                        bracketed(&rec.profile.mults()),
                        f.weight_bounds,
                        f.no_gap,
                        f.mult_bounds,
                        f.two_weight
                    );
                }
            }
        }
    }
    Ok(true)
}

fn run_dims(args: &DimsArgs) -> Outcome {
    check_dim(args.dim)?;
    let c = component(args.component.parity, args.component.s_mults, args.component.r_mults)?;
    check_component_dim(&c, args.dim)?;
    if !trace_l_candidates(&c).contains(&args.twelve_trl) {
        return Err(Failure::Domain(format!(
            "12 Tr L = {} is not admissible for {c}",
            args.twelve_trl
        )));
    }
    if args.k_min > args.k_max {
        return Err(Failure::Domain("--k-min exceeds --k-max".into()));
    }
    let (ctx, middle) = ChiContext::for_component(&c, args.twelve_trl)?;
    if !args.cusp_dims.is_empty() && args.cusp_dims.len() != middle.r() {
        return Err(Failure::Domain(format!(
            "expected {} cusp form dimensions, got {}",
            middle.r(),
            args.cusp_dims.len()
        )));
    }
    for k in args.k_min..=args.k_max {
        if !c.parity.matches(k) {
            continue;
        }
        let known = middle
            .ell_list
            .iter()
            .position(|&l| l == k)
            .and_then(|j| args.cusp_dims.get(j).copied());
        match dimension_m(&ctx, &middle, k, known)? {
            DimensionAnswer::Exact(n) => println!("k = {k}: {n}"),
            DimensionAnswer::Symbolic { chi, index } => {
                println!("k = {k}: {chi} + a_{}", index + 1)
            }
        }
    }
    Ok(true)
}

fn write_json(path: Option<&PathBuf>, file: &MatrixFile) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(file).expect("matrix serializes");
    text.push('\n');
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Domain(format!("{}: {e}", p.display()))),
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Domain(e.to_string()))
        }
    }
}

fn run_reduce(args: &ReduceArgs) -> Outcome {
    let a = match (&args.input, &args.random_shape) {
        (Some(p), _) => {
            let text = fs::read_to_string(p).map_err(|e| Failure::Domain(format!("{}: {e}", p.display())))?;
            let file: MatrixFile = serde_json::from_str(&text)
                .map_err(|e| Failure::Domain(format!("{}: {e}", p.display())))?;
            DMatrix::try_from(file)?
        }
        (None, Some(m)) => random_dmatrix(&BlockShape::new(m.clone(), args.k1)?, args.seed),
        (None, None) => return Err(Failure::Domain("give --input or --random-shape".into())),
    };
    let (reduced, p) = reduce_e6(&a)?;
    write_json(args.output.as_ref(), &MatrixFile::from(&reduced))?;
    if let Some(path) = &args.emit_transform {
        write_json(Some(path), &MatrixFile::from(&p))?;
    }
    Ok(true)
}

fn run_qcheck(terms: usize) -> Outcome {
    if terms < 2 {
        return Err(Failure::Domain("need at least 2 terms".into()));
    }
    let mut all = true;
    for check in identity_suite(terms) {
        println!("{} {}", if check.passed { "PASS" } else { "FAIL" }, check.name);
        all &= check.passed;
    }
    Ok(all)
}

fn run_profile_op(op: &ProfileOp) -> Outcome {
    match op {
        ProfileOp::Dual { weights } => {
            let p = dual_cuspidal_profile(&Profile::new(weights.clone()));
            println!("{}", comma_list(p.weights()));
        }
        ProfileOp::TensorStd { mults } => {
            if mults.contains(&0) {
                return Err(Failure::Domain("multiplicities must be positive".into()));
            }
            println!("{}", comma_list(&tensor_standard(mults)));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe (`vvmf ... | head`) instead of panicking in print!.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    env_logger::init();
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Enumerate(a) => run_enumerate(a),
        Command::Component(a) => run_component(a),
        Command::Dims(a) => run_dims(a),
        Command::Reduce(a) => run_reduce(a),
        Command::Qcheck { terms } => run_qcheck(*terms),
        Command::ProfileOps(op) => run_profile_op(op),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
