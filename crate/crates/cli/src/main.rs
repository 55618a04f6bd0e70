mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qca::blade;
use qca::config::{multivector_to_json, AlgebraConfig};
use qca::expr::{eval_str, table, BinOp};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "qca", version, about = "Exact rational quantum Clifford algebra calculator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one expression.
    Eval {
        #[command(flatten)]
        ctx: Context,
        expr: String,
    },
    /// Print the multiplication table of a product over the basis blades.
    Table {
        #[command(flatten)]
        ctx: Context,
        #[arg(long, value_enum)]
        product: Product,
    },
    /// Run a named check suite; exits 1 if any case fails.
    Check {
        #[command(flatten)]
        ctx: Context,
        #[arg(long, value_enum)]
        suite: suites::Suite,
    },
}

#[derive(Args)]
struct Context {
    #[arg(long)]
    dim: Option<usize>,
    /// JSON file with dim and any of B, C, F, BF, Z.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Each form is a path to a JSON file or inline JSON.
    #[arg(long = "B", value_name = "JSON")]
    b: Option<String>,
    #[arg(long = "C", value_name = "JSON")]
    c: Option<String>,
    #[arg(long = "F", value_name = "JSON")]
    f: Option<String>,
    #[arg(long = "BF", value_name = "JSON")]
    bf: Option<String>,
    #[arg(long = "Z", value_name = "JSON")]
    z: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Product {
    Wedge,
    Cmul,
    Rmul,
    Vee,
    Dot,
}

impl Product {
    fn op(self) -> BinOp {
        match self {
            Product::Wedge => BinOp::Wedge,
            Product::Cmul => BinOp::Cmul,
            Product::Rmul => BinOp::Rmul,
            Product::Vee => BinOp::Vee,
            Product::Dot => BinOp::Dot,
        }
    }
}

/// Failure that maps to exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn read_json(arg: &str) -> Result<Value, UsageError> {
    if let Ok(v) = serde_json::from_str(arg) {
        return Ok(v);
    }
    let text = std::fs::read_to_string(arg).map_err(|e| UsageError(format!("{arg}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| UsageError(format!("{arg}: {e}")))
}

impl Context {
    /// Builds the configuration. `fallback_dim` is used when neither
    /// `--dim` nor a config file names one.
    fn config(&self, fallback_dim: Option<usize>) -> Result<AlgebraConfig, UsageError> {
        let mut cfg = match &self.config {
            Some(path) => {
                let v = read_json(&path.to_string_lossy())?;
                let cfg = AlgebraConfig::from_json(&v)?;
                if self.dim.is_some_and(|d| d != cfg.dim) {
                    return Err(UsageError(format!("--dim disagrees with dim {} in {}", cfg.dim, path.display())));
                }
                cfg
            }
            None => {
                let dim = self.dim.or(fallback_dim).ok_or_else(|| UsageError("need --dim or --config".into()))?;
                AlgebraConfig::new(dim)?
            }
        };
        for (key, arg) in [("B", &self.b), ("C", &self.c), ("F", &self.f), ("BF", &self.bf), ("Z", &self.z)] {
            if let Some(a) = arg {
                cfg.set(key, &read_json(a)?)?;
            }
        }
        Ok(cfg)
    }
}

fn run(cli: Cli) -> Result<bool, UsageError> {
    match cli.command {
        Command::Eval { ctx, expr } => {
            let cfg = ctx.config(None)?;
            let v = eval_str(&expr, &cfg)?;
            if ctx.json {
                println!("{}", v.to_json());
            } else {
                println!("{v}");
            }
            Ok(true)
        }
        Command::Table { ctx, product } => {
            let cfg = ctx.config(None)?;
            let rows = table(product.op(), &cfg)?;
            let basis = blade::basis(cfg.dim);
            if ctx.json {
                let names: Vec<String> = basis.iter().map(|b| b.name()).collect();
                let cells: Vec<Vec<Value>> = rows.iter().map(|r| r.iter().map(multivector_to_json).collect()).collect();
                println!("{}", json!({ "product": product.op().symbol(), "blades": names, "table": cells }));
            } else {
                for (a, row) in basis.iter().zip(&rows) {
                    for (b, cell) in basis.iter().zip(row) {
                        println!("{a} {} {b} = {cell}", product.op().symbol());
                    }
                }
            }
            Ok(true)
        }
        Command::Check { ctx, suite } => {
            let cfg = ctx.config(Some(suites::default_dim(suite)))?;
            let report = suites::run(suite, &cfg, seed()?);
            if ctx.json {
                println!("{}", report.to_json());
            } else {
                print!("{report}");
            }
            Ok(report.all_passed())
        }
    }
}

fn seed() -> Result<u64, UsageError> {
    match std::env::var("QCA_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| UsageError(format!("QCA_SEED must be an unsigned integer, got {s:?}"))),
        Err(_) => Ok(suites::DEFAULT_SEED),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            eprintln!("qca: {msg}");
            ExitCode::from(2)
        }
    }
}
