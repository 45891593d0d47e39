//! `ptft`: command-line front end for the positive TFT engine.
//!
//! Every subcommand prints one JSON document (or an aligned text rendering
//! with `--format table`). Exit status is 0 on success, 1 when the input is
//! rejected and 2 when a check runs but finds a failure.

mod render;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use ptft_core::engine::Theorem;
use ptft_core::models::catalog::{signature_of_form, signature_oracle};
use ptft_core::models::multiset::{divisor_count_oracle, omega_poly_oracle, Multiset};
use ptft_core::models::polya::{polya_chain, PermGroup};
use ptft_core::models::{build_instance, divisor_instance, omega_coefficients, polya_instance, InstanceParams};
use ptft_core::moncat::{mc_check_axioms, Category, Mor, TableCategory, TableSpec};
use ptft_core::semiring::{sr_check_laws, Descriptor, Element};
use ptft_core::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "ptft", version, about = "Positive topological field theories over complete semirings")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Seed for every randomized check.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Write the report to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Randomized semiring law suite for a carrier name or a descriptor file.
    Laws {
        semiring: String,
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
    /// Strict monoidal category axioms for a table-form category file.
    Catcheck {
        file: PathBuf,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// State vector of a bordism, or its state sum at one boundary field.
    Statesum {
        instance: String,
        bordism: PathBuf,
        /// File holding a boundary field `[f_in, f_out]`.
        #[arg(long)]
        boundary: Option<PathBuf>,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Runs a theorem verifier on a theory.
    Verify {
        instance: String,
        theorem: String,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// The five counting quantities of a group acting on colorings (or on
    /// its base set when `--colors` is absent).
    Polya {
        group: PathBuf,
        #[arg(long)]
        colors: Option<usize>,
        #[arg(long, default_value = "nat-inf")]
        semiring: String,
    },
    /// The divisor count of n, or its Ω-polynomial, against an oracle.
    Divisors {
        n: u64,
        #[arg(long)]
        omega: bool,
    },
    /// Signature of a symmetric integer matrix.
    Signature { matrix: PathBuf },
    /// Coboundary aggregate of a catalog `{"closed": M, "bordisms": […]}`.
    Aggregate {
        instance: String,
        catalog: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Args, Debug)]
struct ParamArgs {
    /// Grid resolution of the max and intermediate value theories.
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// Largest label of the delta theory.
    #[arg(long = "n-max", default_value_t = 2)]
    n_max: u32,
    /// Coefficient semiring.
    #[arg(long, default_value = "nat-inf")]
    semiring: String,
    /// Group file for the Pólya and Burnside theories.
    #[arg(long)]
    group: Option<PathBuf>,
    /// Number of colors for the Pólya theory.
    #[arg(long, default_value_t = 2)]
    colors: usize,
}

impl ParamArgs {
    fn resolve(&self) -> Result<InstanceParams> {
        Ok(InstanceParams {
            k: self.k,
            n_max: self.n_max,
            semiring: parse_semiring(&self.semiring)?,
            group: self.group.as_deref().map(load_group).transpose()?,
            colors: self.colors,
        })
    }
}

/// A report together with whether its checks passed.
struct Outcome {
    report: Value,
    passed: bool,
}

impl Outcome {
    fn ok(report: Value) -> Outcome {
        Outcome { report, passed: true }
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn parse_semiring(s: &str) -> Result<Descriptor> {
    let path = Path::new(s);
    if path.is_file() {
        let desc: Descriptor = serde_json::from_value(read_json(path)?).map_err(|e| Error::InvalidDescriptor(e.to_string()))?;
        desc.validate()?;
        return Ok(desc);
    }
    Descriptor::from_name(s)
}

/// Group files: `{"degree": n, "elements": […]}`, `{"degree": n, "generators": […]}`,
/// `{"cyclic": n}` or `{"dihedral": n}`.
#[derive(Deserialize)]
#[serde(untagged)]
enum GroupFile {
    Elements { degree: usize, elements: Vec<Vec<usize>> },
    Generators { degree: usize, generators: Vec<Vec<usize>> },
    Cyclic { cyclic: usize },
    Dihedral { dihedral: usize },
}

fn load_group(path: &Path) -> Result<PermGroup> {
    let file: GroupFile = serde_json::from_value(read_json(path)?).map_err(|_| {
        Error::Parse(format!("{}: expected `degree` with `elements` or `generators`, `cyclic` or `dihedral`", path.display()))
    })?;
    match file {
        GroupFile::Elements { degree, elements } => PermGroup::new(degree, elements),
        GroupFile::Generators { degree, generators } => PermGroup::generated(degree, &generators),
        GroupFile::Cyclic { cyclic } if cyclic > 0 => Ok(PermGroup::cyclic(cyclic)),
        GroupFile::Dihedral { dihedral } if dihedral >= 3 => Ok(PermGroup::dihedral(dihedral)),
        _ => Err(Error::InvalidParams("cyclic groups need n ≥ 1 and dihedral groups n ≥ 3".into())),
    }
}

fn laws(semiring: &str, samples: usize, seed: u64) -> Result<Outcome> {
    let report = sr_check_laws(&parse_semiring(semiring)?, samples, seed);
    Ok(Outcome { passed: report.passed(), report: to_value(&report) })
}

fn catcheck(file: &Path, samples: usize, seed: u64) -> Result<Outcome> {
    let spec: TableSpec = serde_json::from_value(read_json(file)?).map_err(|e| Error::Parse(e.to_string()))?;
    let cat = Category::Table(TableCategory::from_spec(&spec)?);
    let report = mc_check_axioms(&cat, samples, seed);
    Ok(Outcome { passed: report.passed(), report: to_value(&report) })
}

fn statesum(instance: &str, bordism: &Path, boundary: Option<&Path>, params: &ParamArgs) -> Result<Outcome> {
    let inst = build_instance(instance, &params.resolve()?)?;
    let boundary = boundary.map(read_json).transpose()?;
    Ok(Outcome::ok(inst.state_json(&read_json(bordism)?, boundary.as_ref())?))
}

fn verify(instance: &str, theorem: &str, cases: usize, seed: u64, params: &ParamArgs) -> Result<Outcome> {
    let theorem: Theorem = theorem.parse()?;
    if cases == 0 {
        return Err(Error::InvalidParams("at least one case is needed".into()));
    }
    let v = build_instance(instance, &params.resolve()?)?.verify(theorem, cases, seed);
    Ok(Outcome { passed: v.passed(), report: to_value(&v) })
}

fn polya(group: &Path, colors: Option<usize>, semiring: &str) -> Result<Outcome> {
    if colors == Some(0) {
        return Err(Error::InvalidParams("at least one color is needed".into()));
    }
    let desc = parse_semiring(semiring)?;
    let tft = polya_instance(load_group(group)?, colors, desc)?;
    let chain = polya_chain(&tft)?;
    let passed = chain.consistent(tft.descriptor());
    let mut report = chain.to_json();
    report["consistent"] = json!(passed);
    Ok(Outcome { report, passed })
}

fn divisors(n: u64, omega: bool) -> Result<Outcome> {
    let tft = divisor_instance(omega, Descriptor::NatInf)?;
    let w = Multiset::of(n)?;
    let z = tft.state_sum(&w, &ptft_core::fun::Key::pair(ptft_core::fun::Key::unit(), ptft_core::fun::Key::unit()))?;
    if omega {
        let coefficients = omega_coefficients(&z);
        let oracle: Vec<Value> = omega_poly_oracle(n)?.into_iter().map(|c| Descriptor::NatInf.render(&Element::nat(c))).collect();
        let passed = coefficients == oracle;
        return Ok(Outcome { report: json!({ "n": n, "omega": coefficients, "oracle": oracle, "match": passed }), passed });
    }
    let d = match z.value(&Mor::Star) {
        Element::Nat(ptft_core::semiring::Ext::Fin(d)) => u64::try_from(d).map_err(|e| Error::OutOfRange(e.to_string()))?,
        other => return Err(Error::Unsupported(format!("unexpected divisor count {other:?}"))),
    };
    let oracle = divisor_count_oracle(n)?;
    Ok(Outcome { report: json!({ "n": n, "d": d, "oracle": oracle, "match": d == oracle }), passed: d == oracle })
}

fn signature(matrix: &Path) -> Result<Outcome> {
    let m: Vec<Vec<i64>> = serde_json::from_value(read_json(matrix)?).map_err(|e| Error::Parse(e.to_string()))?;
    let (s, oracle) = (signature_of_form(&m)?, signature_oracle(&m)?);
    Ok(Outcome { report: json!({ "size": m.len(), "signature": s, "oracle": oracle, "match": s == oracle }), passed: s == oracle })
}

fn aggregate(instance: &str, catalog: &Path, params: &ParamArgs) -> Result<Outcome> {
    let inst = build_instance(instance, &params.resolve()?)?;
    Ok(Outcome::ok(inst.aggregate_json(&read_json(catalog)?)?))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Laws { semiring, samples } => laws(semiring, *samples, cli.seed),
        Command::Catcheck { file, samples } => catcheck(file, *samples, cli.seed),
        Command::Statesum { instance, bordism, boundary, params } => statesum(instance, bordism, boundary.as_deref(), params),
        Command::Verify { instance, theorem, cases, params } => verify(instance, theorem, *cases, cli.seed, params),
        Command::Polya { group, colors, semiring } => polya(group, *colors, semiring),
        Command::Divisors { n, omega } => divisors(*n, *omega),
        Command::Signature { matrix } => signature(matrix),
        Command::Aggregate { instance, catalog, params } => aggregate(instance, catalog, params),
    }
}

fn error_report(kind: &str, message: String) -> Value {
    json!({ "error": { "kind": kind, "message": message } })
}

fn error_kind(e: &Error) -> String {
    let debug = format!("{e:?}");
    debug.split(['(', ' ', '{']).next().unwrap_or("Error").to_string()
}

fn emit(report: &Value, format: Format, output: Option<&Path>) -> std::io::Result<()> {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(report).expect("json"),
        Format::Table => render::table(report),
    };
    match output {
        Some(path) => fs::write(path, text + "\n"),
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{text}") {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => other,
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.render().to_string();
            println!("{}", serde_json::to_string_pretty(&error_report("Usage", message.trim().to_string())).expect("json"));
            return ExitCode::from(1);
        }
    };
    let (report, code) = match run(&cli) {
        Ok(Outcome { report, passed }) => (report, if passed { 0 } else { 2 }),
        Err(e) => (error_report(&error_kind(&e), e.to_string()), 1),
    };
    if let Err(e) = emit(&report, cli.format, cli.output.as_deref()) {
        eprintln!("cannot write report: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
