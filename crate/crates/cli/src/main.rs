//! `quiverhall`: batch front end to the quiverhall library.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quiverhall::forms::{self, RootReport};
use quiverhall::hall::{self, HallAlgebra, HallComputation};
use quiverhall::lusztig::{self, AnyFramedPoint};
use quiverhall::path_algebra::{algebra_dimension, AlgebraDimension, PathAlgElem};
use quiverhall::quiver::Quiver;
use quiverhall::rep::{self, AnyRep, DimVector, Eigenvalues, FieldSpec, Rep};
use quiverhall::{ErrorKind, Field, Limits, PrimeField, Rationals};

const BUDGET_ENV: &str = "QUIVERHALL_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "quiverhall", version, about = "Quivers, representations and Ringel-Hall algebras over finite fields")]
struct Cli {
    /// Maximum number of points scanned by any exhaustive enumeration.
    #[arg(long, global = true, env = BUDGET_ENV)]
    budget: Option<u64>,

    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Seed for every randomized search.
    #[arg(long, global = true, default_value_t = Limits::default().seed)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Dot,
}

#[derive(Args, Debug)]
struct QuiverArg {
    /// Quiver JSON file.
    #[arg(short, long)]
    quiver: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the path basis of kQ (all paths up to a length).
    Paths {
        #[command(flatten)]
        q: QuiverArg,
        /// Longest path listed; defaults to #arrows for acyclic quivers.
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Multiply two path-algebra elements.
    PaMul {
        #[command(flatten)]
        q: QuiverArg,
        /// "F<p>" or "Q".
        #[arg(long)]
        field: String,
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Finite / tame / wild classification.
    Classify {
        #[command(flatten)]
        q: QuiverArg,
    },
    /// Positive roots.
    Roots {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, default_value_t = forms::DEFAULT_HEIGHT_BOUND)]
        height_bound: u32,
    },
    /// Krull-Schmidt decomposition of a representation.
    Decompose {
        /// Rep JSON file.
        #[arg(long)]
        rep: PathBuf,
    },
    /// Isomorphism classes of representations over F_p.
    IsoClasses {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, value_delimiter = ',')]
        dims: Vec<usize>,
        #[arg(long)]
        prime: u64,
    },
    /// Indecomposables vs positive roots for a finite-type quiver.
    GabrielCheck {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 1)]
        dim_bound: usize,
    },
    /// Indecomposable dimension vectors vs roots for any quiver.
    KacCheck {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 1)]
        dim_bound: usize,
    },
    /// Hall product of two classes, or of the simples along a word.
    HallMul {
        /// Quiver JSON file (needed with --word).
        #[arg(short, long)]
        quiver: Option<PathBuf>,
        #[arg(long)]
        prime: Option<u64>,
        /// Vertex names, multiplied left to right.
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["left", "right"])]
        word: Option<Vec<String>>,
        /// Rep JSON of the left factor.
        #[arg(long, requires = "right")]
        left: Option<PathBuf>,
        /// Rep JSON of the right factor.
        #[arg(long, requires = "left")]
        right: Option<PathBuf>,
    },
    /// Quantum Serre relation for an ordered pair of vertices.
    SerreCheck {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, value_delimiter = ',', num_args = 1)]
        vertices: Vec<String>,
        #[arg(long)]
        prime: u64,
    },
    /// Lift a Hall computation across primes to coefficients in v.
    Generic {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, value_delimiter = ',', conflicts_with = "serre")]
        word: Option<Vec<String>>,
        /// Ordered vertex pair of a Serre residual.
        #[arg(long, value_delimiter = ',')]
        serre: Option<Vec<String>>,
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3, 5, 7, 11])]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 2)]
        degree_bound: usize,
    },
    /// Compare dim H_ν (class count) with dim U⁺_ν.
    DimCheck {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, value_delimiter = ',')]
        nu: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        prime: u64,
    },
    /// Count points of Λ_V over F_p.
    LambdaCount {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, value_delimiter = ',')]
        dims: Vec<usize>,
        #[arg(long)]
        prime: u64,
        /// Also print every point.
        #[arg(long)]
        list: bool,
    },
    /// Stability of a framed point.
    StableCheck {
        /// Point JSON file (Rep JSON over the double quiver plus "framing").
        #[arg(long)]
        point: PathBuf,
    },
}

#[derive(Debug)]
struct CliError {
    code: u8,
    kind: &'static str,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            kind: "usage",
            message: message.into(),
        }
    }
}

impl From<quiverhall::Error> for CliError {
    fn from(e: quiverhall::Error) -> Self {
        let (code, kind) = match e.kind() {
            ErrorKind::Usage => (1, "usage"),
            ErrorKind::Resource => (2, "budget"),
            ErrorKind::Invariant => (3, "invariant"),
        };
        CliError {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

enum Output {
    Json(Value),
    Text(String),
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn read_quiver(path: &Path) -> CliResult<Arc<Quiver>> {
    Ok(Arc::new(Quiver::from_json_value(&read_json(path)?)?))
}

fn vertex_indices(q: &Quiver, names: &[String]) -> CliResult<Vec<usize>> {
    Ok(names
        .iter()
        .map(|n| q.vertex_index(n.trim()))
        .collect::<quiverhall::Result<_>>()?)
}

fn dim_vector(q: &Quiver, dims: Vec<usize>) -> CliResult<DimVector> {
    if dims.len() != q.n_vertices() {
        return Err(CliError::usage(format!(
            "dimension vector has {} entries for {} vertices",
            dims.len(),
            q.n_vertices()
        )));
    }
    Ok(DimVector(dims))
}

fn report(r: &RootReport, format: Format) -> Output {
    match format {
        Format::Tsv => Output::Text(r.to_tsv()),
        _ => Output::Json(r.to_json()),
    }
}

fn decompose<F: Eigenvalues>(v: &Rep<F>, limits: &Limits) -> CliResult<Value> {
    let parts = rep::krull_schmidt(v, limits)?;
    let summands: Vec<Value> = parts
        .iter()
        .map(|p| {
            let j = p.to_json();
            json!({"dims": j["dims"], "maps": j["maps"]})
        })
        .collect();
    Ok(json!({
        "indecomposable": parts.len() == 1,
        "count": parts.len(),
        "summands": summands,
    }))
}

fn pa_mul<F: Field>(q: Arc<Quiver>, field: F, left: &Value, right: &Value) -> CliResult<Value> {
    let x = PathAlgElem::from_json(q.clone(), field.clone(), left)?;
    let y = PathAlgElem::from_json(q, field, right)?;
    Ok(x.multiply(&y)?.to_json())
}

fn run(cli: Cli) -> CliResult<Output> {
    let mut limits = Limits {
        seed: cli.seed,
        ..Limits::default()
    };
    if let Some(b) = cli.budget {
        if b == 0 {
            return Err(CliError::usage("budget must be positive"));
        }
        limits = limits.with_enumeration(b);
    }
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(CliError::usage("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::usage(e.to_string()))?;
    }
    let format = cli.format;
    let json_only = |name: &str| -> CliResult<()> {
        if format != Format::Json {
            return Err(CliError::usage(format!("{name} only supports --format json")));
        }
        Ok(())
    };

    match cli.command {
        Command::Paths { q, max_len } => {
            let quiver = read_quiver(&q.quiver)?;
            if format == Format::Dot {
                return Ok(Output::Text(quiver.to_dot()));
            }
            let dimension = algebra_dimension(&quiver);
            let max_len = match (max_len, dimension) {
                (Some(m), _) => m,
                (None, AlgebraDimension::Finite(_)) => quiver.n_arrows(),
                (None, AlgebraDimension::Infinite) => {
                    return Err(CliError::usage("kQ is infinite-dimensional; pass --max-len"))
                }
            };
            let labels: Vec<String> = quiver
                .enumerate_paths(max_len)
                .iter()
                .map(|p| quiver.path_label(p))
                .collect();
            if format == Format::Tsv {
                return Ok(Output::Text(labels.iter().map(|l| format!("{l}\n")).collect()));
            }
            let dim = match dimension {
                AlgebraDimension::Finite(n) => json!(n),
                AlgebraDimension::Infinite => json!("infinite"),
            };
            Ok(Output::Json(json!({"dimension": dim, "paths": labels})))
        }
        Command::PaMul { q, field, left, right } => {
            json_only("pa-mul")?;
            let quiver = read_quiver(&q.quiver)?;
            let (l, r) = (read_json(&left)?, read_json(&right)?);
            Ok(Output::Json(match FieldSpec::parse(&field)? {
                FieldSpec::Prime(f) => pa_mul(quiver, f, &l, &r)?,
                FieldSpec::Rational => pa_mul(quiver, Rationals, &l, &r)?,
            }))
        }
        Command::Classify { q } => {
            let quiver = read_quiver(&q.quiver)?;
            if format == Format::Dot {
                return Ok(Output::Text(quiver.to_dot()));
            }
            json_only("classify")?;
            let t = forms::classify_type(&quiver)?;
            let shapes: Vec<String> = t
                .components
                .iter()
                .map(|c| c.shape.clone().unwrap_or_else(|| "unrecognized".into()))
                .collect();
            let mut out = json!({"verdict": t.kind.to_string(), "graph": shapes.join(" + ")});
            let notes: Vec<&String> = t.components.iter().filter_map(|c| c.note.as_ref()).collect();
            if !notes.is_empty() {
                out["notes"] = json!(notes);
            }
            Ok(Output::Json(out))
        }
        Command::Roots { q, height_bound } => {
            let quiver = read_quiver(&q.quiver)?;
            let roots = forms::positive_roots(&quiver, height_bound)?;
            if format == Format::Tsv {
                let mut s = String::from("root\tkind\n");
                for r in &roots {
                    let v: Vec<String> = r.vector.iter().map(|x| x.to_string()).collect();
                    let kind = match r.kind {
                        forms::RootKind::Real => "real",
                        forms::RootKind::Imaginary => "imaginary",
                    };
                    s.push_str(&format!("{}\t{kind}\n", v.join(",")));
                }
                return Ok(Output::Text(s));
            }
            json_only("roots")?;
            Ok(Output::Json(json!({"count": roots.len(), "roots": roots})))
        }
        Command::Decompose { rep } => {
            json_only("decompose")?;
            Ok(Output::Json(match AnyRep::from_json(&read_json(&rep)?)? {
                AnyRep::Prime(r) => decompose(&r, &limits)?,
                AnyRep::Rational(r) => decompose(&r, &limits)?,
            }))
        }
        Command::IsoClasses { q, dims, prime } => {
            let quiver = read_quiver(&q.quiver)?;
            let d = dim_vector(&quiver, dims)?;
            let table = rep::enumerate_iso_classes(quiver, d, PrimeField::new(prime)?, &limits)?;
            if format == Format::Tsv {
                let mut s = String::from("class\torbit_size\tautomorphisms\n");
                for k in 0..table.num_classes() {
                    s.push_str(&format!("{k}\t{}\t{}\n", table.orbit_size(k), table.automorphism_count(k)));
                }
                return Ok(Output::Text(s));
            }
            json_only("iso-classes")?;
            let classes: Vec<Value> = (0..table.num_classes())
                .map(|k| {
                    let r = table.representative(k).to_json();
                    json!({
                        "index": k,
                        "orbit_size": table.orbit_size(k),
                        "automorphisms": table.automorphism_count(k).to_string(),
                        "rep": {"dims": r["dims"], "maps": r["maps"]},
                    })
                })
                .collect();
            Ok(Output::Json(json!({"count": table.num_classes(), "classes": classes})))
        }
        Command::GabrielCheck { q, prime, dim_bound } => {
            let quiver = read_quiver(&q.quiver)?;
            Ok(report(&forms::check_gabriel(&quiver, prime, dim_bound, &limits)?, format))
        }
        Command::KacCheck { q, prime, dim_bound } => {
            let quiver = read_quiver(&q.quiver)?;
            Ok(report(&forms::check_kac(&quiver, prime, dim_bound, &limits)?, format))
        }
        Command::HallMul { quiver, prime, word, left, right } => {
            json_only("hall-mul")?;
            if let Some(word) = word {
                let path = quiver.ok_or_else(|| CliError::usage("--word needs --quiver"))?;
                let p = prime.ok_or_else(|| CliError::usage("--word needs --prime"))?;
                let q = read_quiver(&path)?;
                let w = vertex_indices(&q, &word)?;
                let alg = HallAlgebra::new(q, p, limits)?;
                let x = alg.monomial(&w)?;
                return Ok(Output::Json(alg.element_to_json(&x)?));
            }
            let (Some(l), Some(r)) = (left, right) else {
                return Err(CliError::usage("hall-mul needs --word or both --left and --right"));
            };
            let (AnyRep::Prime(a), AnyRep::Prime(b)) =
                (AnyRep::from_json(&read_json(&l)?)?, AnyRep::from_json(&read_json(&r)?)?)
            else {
                return Err(CliError::usage("Hall products need representations over F_p"));
            };
            if a.field() != b.field() || a.quiver() != b.quiver() {
                return Err(CliError::usage("factors must share quiver and field"));
            }
            if prime.is_some_and(|p| p != a.field().p()) {
                return Err(CliError::usage("--prime disagrees with the field of the factors"));
            }
            let alg = HallAlgebra::new(a.quiver().clone(), a.field().p(), limits)?;
            let x = hall::HallElement::basis(alg.q(), alg.class_of(&a)?);
            let y = hall::HallElement::basis(alg.q(), alg.class_of(&b)?);
            Ok(Output::Json(alg.element_to_json(&alg.multiply(&x, &y)?)?))
        }
        Command::SerreCheck { q, vertices, prime } => {
            json_only("serre-check")?;
            let quiver = read_quiver(&q.quiver)?;
            let v = vertex_indices(&quiver, &vertices)?;
            let [i, j] = v[..] else {
                return Err(CliError::usage("--vertices takes exactly two vertices"));
            };
            let alg = HallAlgebra::new(quiver, prime, limits)?;
            let c = alg.serre_check(i, j)?;
            Ok(Output::Json(json!({"holds": c.holds, "residual": alg.element_to_json(&c.residual)?})))
        }
        Command::Generic { q, word, serre, primes, degree_bound } => {
            json_only("generic")?;
            let quiver = read_quiver(&q.quiver)?;
            let computation = match (word, serre) {
                (Some(w), None) => HallComputation::Word(vertex_indices(&quiver, &w)?),
                (None, Some(s)) => match vertex_indices(&quiver, &s)?[..] {
                    [i, j] => HallComputation::SerreResidual { i, j },
                    _ => return Err(CliError::usage("--serre takes exactly two vertices")),
                },
                _ => return Err(CliError::usage("generic needs exactly one of --word or --serre")),
            };
            let g = hall::generic_lift(quiver, &computation, &primes, degree_bound, &limits)?;
            Ok(Output::Json(json!({"zero": g.is_zero(), "terms": g.to_json()})))
        }
        Command::DimCheck { q, nu, prime } => {
            json_only("dim-check")?;
            let quiver = read_quiver(&q.quiver)?;
            let nu = dim_vector(&quiver, nu)?;
            let c = hall::finite_type_dim_check(&quiver, &nu, prime, &limits)?;
            Ok(Output::Json(serde_json::to_value(c).expect("plain data")))
        }
        Command::LambdaCount { q, dims, prime, list } => {
            json_only("lambda-count")?;
            let quiver = read_quiver(&q.quiver)?;
            let d = dim_vector(&quiver, dims)?;
            let lam = lusztig::lambda_points(&quiver, &d, prime, &limits)?;
            let mut out = json!({"count": lam.count(), "scanned": lam.total_scanned.to_string()});
            if list {
                out["points"] = Value::Array(lam.points.iter().map(|x| x.to_json()["maps"].clone()).collect());
            }
            Ok(Output::Json(out))
        }
        Command::StableCheck { point } => {
            json_only("stable-check")?;
            let p = AnyFramedPoint::from_json(&read_json(&point)?)?;
            Ok(Output::Json(json!({"stable": p.is_stable()})))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as K;
            if matches!(e.kind(), K::DisplayHelp | K::DisplayVersion | K::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let err = CliError::usage(e.to_string().trim_end().to_string());
            eprintln!("{}", json!({"error": {"kind": err.kind, "message": err.message}}));
            return ExitCode::from(err.code);
        }
    };
    let text = match run(cli) {
        Ok(Output::Json(v)) => serde_json::to_string_pretty(&v).expect("JSON values serialize") + "\n",
        Ok(Output::Text(s)) => s,
        Err(err) => {
            eprintln!("{}", json!({"error": {"kind": err.kind, "message": err.message}}));
            return ExitCode::from(err.code);
        }
    };
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", json!({"error": {"kind": "io", "message": e.to_string()}}));
            ExitCode::from(1)
        }
    }
}
