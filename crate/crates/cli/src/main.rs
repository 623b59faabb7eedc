//! `odolab`: command-line access to the odometer computations.
//!
//! Every command prints one canonical JSON document. Exit status is 0 on
//! success, 1 on a domain error (reported as `{"error": Name, "message": ...}`)
//! and 2 on a usage, I/O or file-format error.

mod canonical;
mod selftest;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use odolab_core::cohomology::{solve_by_fourier, solve_by_prefix_sum};
use odolab_core::formats::{
    read_exact_function, read_float_function, write_exact_function, write_float_function,
    write_fourier, FormatError,
};
use odolab_core::fredholm::{index_pairing, spectral_commutator_bound, PairingOperator};
use odolab_core::harmonic::{exp_i, fourier, rd_norm, LevelFunction};
use odolab_core::ktheory::{decompose, pair, K0Class, KHomomorphism};
use odolab_core::length::{classify, verify_axioms, LengthSpecFile};
use odolab_core::scalar::Scalar;
use odolab_core::{
    Complex64, Error, ExactComplex, LengthSpec, LengthTable, Scale, DEFAULT_TOLERANCE,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "odolab", version, about = "Harmonic analysis, cohomology and K-theory on odometers")]
struct Cli {
    /// Scale file: a JSON array such as [2,4,8,16].
    #[arg(long, global = true, value_name = "FILE")]
    scale: Option<PathBuf>,
    /// Length spec file: {"scale": [...], "l": [...]}.
    #[arg(long, global = true, value_name = "FILE")]
    spec: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    /// Promote input functions to this level before computing.
    #[arg(long, global = true, value_name = "M")]
    level: Option<usize>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Rational strings and integers, exact arithmetic.
    Exact,
    /// binary64 values.
    Float,
}

#[derive(Subcommand)]
enum Command {
    /// Scale files.
    #[command(subcommand)]
    Scale(ScaleCmd),
    /// Length functions on the dual group.
    #[command(subcommand)]
    Length(LengthCmd),
    /// Locally constant functions: Fourier, norms, exp.
    #[command(subcommand, name = "fn")]
    Function(FnCmd),
    /// Coboundary equation.
    #[command(subcommand)]
    Cohomology(CohomologyCmd),
    /// K_0 classes.
    #[command(subcommand)]
    K0(K0Cmd),
    /// Homomorphisms K_0 -> Z and their Fredholm index.
    #[command(subcommand)]
    Khom(KhomCmd),
    /// Commutator estimates.
    #[command(subcommand)]
    Spectral(SpectralCmd),
    /// Run the built-in invariant suites.
    Selftest {
        /// JSON config {"seed": n, "cases": n}; missing keys use defaults.
        #[arg(long, value_name = "FILE")]
        config: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ScaleCmd {
    /// Check that a sequence is a valid scale.
    Validate { file: PathBuf },
}

#[derive(Subcommand)]
enum LengthCmd {
    /// Recover (s, l) from a table of lambda values.
    Classify { table: PathBuf },
    /// Check the length-function axioms on a table.
    Verify { table: PathBuf },
}

#[derive(Subcommand)]
enum FnCmd {
    /// Fourier coefficients in canonical order.
    Fourier { file: PathBuf },
    /// The rapid-decay norm ||f||_N (needs --spec).
    Norm {
        file: PathBuf,
        #[arg(long = "N", default_value_t = 0)]
        big_n: u32,
    },
    /// exp(i n f) for a real function.
    Exp {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    #[value(name = "prefix_sum")]
    PrefixSum,
    Fourier,
}

#[derive(Subcommand)]
enum CohomologyCmd {
    /// Solve g(x + 1) - g(x) = f(x) with mean-zero g.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::PrefixSum)]
        method: Method,
    },
}

#[derive(Subcommand)]
enum K0Cmd {
    /// Coefficients in the free generators 1_(x).
    Decompose { file: PathBuf },
    /// Evaluate a homomorphism on a class.
    Pair { phi: PathBuf, file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Operator {
    Bounded,
    Dirac,
}

#[derive(Subcommand)]
enum KhomCmd {
    /// Fredholm index of the pairing operator against a projection.
    Index {
        phi: PathBuf,
        p: PathBuf,
        #[arg(long, value_enum, default_value_t = Operator::Bounded)]
        operator: Operator,
    },
}

#[derive(Subcommand)]
enum SpectralCmd {
    /// sup_y Lambda(y) |f(y) - f(gamma(y))| against 2 ||f||_1 (needs --spec).
    Bound {
        file: PathBuf,
        #[arg(long = "Y", default_value_t = 256)]
        sweep: u64,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Domain(e) => Failure::Domain(e),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome<T> = Result<T, Failure>;

fn read_json(path: &Path) -> Outcome<Value> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn parse_as<T: serde::de::DeserializeOwned>(path: &Path) -> Outcome<T> {
    serde_json::from_value(read_json(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn scale_entries(path: &Path) -> Outcome<Vec<u64>> {
    let v = read_json(path)?;
    let arr = v.get("scale").cloned().unwrap_or(v);
    serde_json::from_value(arr).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

enum Func {
    Exact(LevelFunction<ExactComplex>),
    Float(LevelFunction<Complex64>),
}

impl Func {
    fn to_float(&self) -> LevelFunction<Complex64> {
        match self {
            Func::Exact(f) => f.map(Scalar::to_complex),
            Func::Float(f) => f.clone(),
        }
    }
}

struct Context {
    cli: Cli,
}

impl Context {
    fn spec(&self) -> Outcome<LengthSpec> {
        let path = self
            .cli
            .spec
            .as_ref()
            .ok_or_else(|| Failure::Usage("this command needs --spec".into()))?;
        Ok(parse_as::<LengthSpecFile>(path)?.into_spec()?)
    }

    fn scale(&self) -> Outcome<Scale> {
        if let Some(path) = &self.cli.scale {
            return Ok(Scale::new(scale_entries(path)?)?);
        }
        if self.cli.spec.is_some() {
            return Ok(self.spec()?.scale().clone());
        }
        Err(Failure::Usage("this command needs --scale or --spec".into()))
    }

    fn exact_function(&self, path: &Path, scale: &Scale) -> Outcome<LevelFunction<ExactComplex>> {
        let f = read_exact_function(&read_json(path)?, scale)?;
        Ok(match self.cli.level {
            Some(m) => f.promote(scale, m)?,
            None => f,
        })
    }

    fn function(&self, path: &Path, scale: &Scale) -> Outcome<Func> {
        match self.cli.mode {
            Mode::Exact => Ok(Func::Exact(self.exact_function(path, scale)?)),
            Mode::Float => {
                let f = read_float_function(&read_json(path)?, scale)?;
                Ok(Func::Float(match self.cli.level {
                    Some(m) => f.promote(scale, m)?,
                    None => f,
                }))
            }
        }
    }

    fn class(&self, path: &Path, scale: &Scale) -> Outcome<K0Class> {
        Ok(K0Class::from_exact(&self.exact_function(path, scale)?)?)
    }
}

/// Float-mode tolerance, overridable through `ODOLAB_TOLERANCE`.
fn tolerance() -> Outcome<f64> {
    match std::env::var("ODOLAB_TOLERANCE") {
        Ok(s) => s
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|t| t.is_finite() && *t >= 0.0)
            .ok_or_else(|| Failure::Usage(format!("ODOLAB_TOLERANCE: not a tolerance: {s:?}"))),
        Err(_) => Ok(DEFAULT_TOLERANCE),
    }
}

/// Returns the document and whether the command counts as successful.
fn run(ctx: &Context) -> Outcome<(Value, bool)> {
    let ok = |v: Value| Ok((v, true));
    match &ctx.cli.command {
        Command::Scale(ScaleCmd::Validate { file }) => {
            let s = Scale::new(scale_entries(file)?)?;
            ok(json!({"scale": s.entries(), "depth": s.depth(), "lcm": s.lcm().to_string()}))
        }
        Command::Length(LengthCmd::Classify { table }) => {
            let t: LengthTable = parse_as(table)?;
            let spec = classify(&t)?;
            ok(json!({"spec": serde_json::to_value(spec).expect("serializable")}))
        }
        Command::Length(LengthCmd::Verify { table }) => {
            let t: LengthTable = parse_as(table)?;
            let report = verify_axioms(&t)?;
            let mut v = serde_json::to_value(&report).expect("serializable");
            v["all_pass"] = Value::Bool(report.all_pass());
            ok(v)
        }
        Command::Function(FnCmd::Fourier { file }) => {
            let scale = ctx.scale()?;
            let f = ctx.function(file, &scale)?.to_float();
            ok(json!({"level": f.level(), "coeffs": write_fourier(&fourier(&f))}))
        }
        Command::Function(FnCmd::Norm { file, big_n }) => {
            let spec = ctx.spec()?;
            let scale = match &ctx.cli.scale {
                Some(_) => ctx.scale()?,
                None => spec.scale().clone(),
            };
            let f = ctx.function(file, &scale)?.to_float();
            ok(json!({"N": big_n, "norm": rd_norm(&f, *big_n, &spec)?}))
        }
        Command::Function(FnCmd::Exp { file, n }) => {
            let scale = ctx.scale()?;
            let f = ctx.function(file, &scale)?;
            let e = match &f {
                Func::Exact(f) => exp_i(f, *n)?,
                Func::Float(f) => exp_i(f, *n)?,
            };
            ok(write_float_function(&e))
        }
        Command::Cohomology(CohomologyCmd::Solve { file, method }) => {
            let scale = ctx.scale()?;
            let f = ctx.function(file, &scale)?;
            let tol = tolerance()?;
            let g = match (method, &f) {
                (Method::PrefixSum, Func::Exact(f)) => write_exact_function(&solve_by_prefix_sum(f, 0.0)?),
                (Method::PrefixSum, Func::Float(f)) => write_float_function(&solve_by_prefix_sum(f, tol)?),
                (Method::Fourier, Func::Exact(f)) => write_float_function(&solve_by_fourier(f, tol)?),
                (Method::Fourier, Func::Float(f)) => write_float_function(&solve_by_fourier(f, tol)?),
            };
            ok(g)
        }
        Command::K0(K0Cmd::Decompose { file }) => {
            let scale = ctx.scale()?;
            let c = decompose(&ctx.class(file, &scale)?, &scale)?;
            ok(serde_json::to_value(c).expect("serializable"))
        }
        Command::K0(K0Cmd::Pair { phi, file }) => {
            let scale = ctx.scale()?;
            let phi: KHomomorphism = parse_as(phi)?;
            ok(json!({"pairing": pair(&phi, &ctx.class(file, &scale)?, &scale)?}))
        }
        Command::Khom(KhomCmd::Index { phi, p, operator }) => {
            let scale = ctx.scale()?;
            let phi: KHomomorphism = parse_as(phi)?;
            let p = ctx.class(p, &scale)?;
            let spec;
            let op = match operator {
                Operator::Bounded => PairingOperator::Bounded,
                Operator::Dirac => {
                    spec = ctx.spec()?;
                    PairingOperator::Dirac(&spec)
                }
            };
            let index = index_pairing(&phi, &p, &scale, op)?;
            let pairing = pair(&phi, &p, &scale)?;
            ok(json!({"index": index, "pairing": pairing, "agree": index == pairing}))
        }
        Command::Spectral(SpectralCmd::Bound { file, sweep }) => {
            let spec = ctx.spec()?;
            let f = ctx.function(file, spec.scale())?.to_float();
            let bound = spectral_commutator_bound(&f, &spec, *sweep)?;
            let limit = 2.0 * rd_norm(&f, 1, &spec)?;
            ok(json!({"bound": bound, "limit": limit, "within": bound <= limit + DEFAULT_TOLERANCE}))
        }
        Command::Selftest { config } => {
            let cfg = match config {
                Some(path) => parse_as(path)?,
                None => selftest::Config::default(),
            };
            let report = selftest::run(&cfg);
            let passed = report.failed() == 0;
            Ok((report.to_json(), passed))
        }
    }
}

fn emit(doc: &Value, output: Option<&Path>) -> Outcome<()> {
    let text = canonical::to_canonical(doc) + "\n";
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let ctx = Context { cli: Cli::parse() };
    let result = run(&ctx).and_then(|(doc, passed)| {
        emit(&doc, ctx.cli.output.as_deref())?;
        Ok(passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Domain(e)) => {
            let doc = json!({"error": e.name(), "message": e.to_string()});
            println!("{}", canonical::to_canonical(&doc));
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("odolab: error: {msg}");
            ExitCode::from(2)
        }
    }
}
