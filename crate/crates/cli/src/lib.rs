//! Command-line front end for `dercalc`.
//!
//! [`execute`] runs one command line in-process and returns its exit code and
//! output, which is what the binary, the session runner and the transcript
//! tests all go through.

pub mod args;
mod cmd;
pub mod output;
pub mod session;

use clap::{Args, Parser, Subcommand};

pub use output::{Format, Out};

/// Default enumeration budget, overridable through `DERCALC_BUDGET`.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] dercalc_core::Error),
    /// A command inside a session script failed with this exit code.
    #[error("{message}")]
    Command { code: i32, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) => {
                use dercalc_core::Error::*;
                match e {
                    Syntax { .. }
                    | Parse(_)
                    | UnknownVariable(_)
                    | UnknownSymbol(_)
                    | UnknownFunction(_)
                    | UnboundSymbol(_)
                    | DuplicateGenerator(_)
                    | MinpolyDegree { .. }
                    | NotSquareFree(_)
                    | NotAPolynomial(_)
                    | MissingGeneratorValue(_)
                    | UnexpectedGeneratorValue(_)
                    | InvalidArgument(_)
                    | GammaTable(_)
                    | OrderOutOfRange { .. }
                    | AxiomMismatch { .. }
                    | UnsupportedOperator(_) => 2,
                    _ => 1,
                }
            }
            CliError::Command { code, .. } => *code,
        }
    }
}

/// Whether every check a command ran passed.
pub type Verdict = Result<bool, CliError>;

#[derive(Debug)]
pub struct Execution {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "dercalc", version, about = "Exact calculator for derivations, cocycles and functional equations")]
pub struct Cli {
    /// Output style: human text or tab-separated line records.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Field towers over Q.
    #[command(subcommand)]
    Tower(TowerCmd),
    /// Derivations on a tower.
    #[command(subcommand)]
    Der(DerCmd),
    /// Higher-order derivations and coefficient tables.
    #[command(subcommand)]
    Hod(HodCmd),
    /// Two-argument cocycles.
    #[command(subcommand)]
    Cocycle(CocycleCmd),
    /// Prime-field experiments.
    #[command(subcommand)]
    Char(CharCmd),
    /// Symmetric multiadditive maps and polynomial functions.
    #[command(subcommand)]
    Multi(MultiCmd),
    /// Functional equations.
    #[command(subcommand)]
    Feq(FeqCmd),
    /// Run a session script.
    Run { script: String },
}

#[derive(Subcommand, Debug)]
pub enum TowerCmd {
    /// Build a tower one generator at a time.
    New {
        /// `name: trans` or `name: alg <minimal polynomial>`, repeatable.
        #[arg(long = "gen", required = true, allow_hyphen_values = true)]
        gens: Vec<String>,
    },
    /// Describe a tower.
    Show {
        #[arg(long, allow_hyphen_values = true)]
        tower: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct DerArgs {
    /// Tower description, e.g. `t: trans; s: alg s^2 - t`.
    #[arg(long, allow_hyphen_values = true)]
    pub tower: String,
    /// Derivation values, e.g. `d(t)=1`; repeat for further derivations.
    #[arg(long = "der", required = true, allow_hyphen_values = true)]
    pub der: Vec<String>,
    /// Slope lambda of the affine map `d + lambda*id` used by residuals.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub slope: String,
}

#[derive(Subcommand, Debug)]
pub enum DerCmd {
    /// Show a derivation with its forced values on algebraic generators.
    Define(DerArgs),
    /// Evaluate an expression in which derivation names may be applied.
    Eval {
        #[command(flatten)]
        d: DerArgs,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// Residuals of the product rule and its consequences.
    Residual {
        #[command(flatten)]
        d: DerArgs,
        #[command(subcommand)]
        kind: ResidualKind,
        /// Exit 1 unless the residual is zero.
        #[arg(long, global = true)]
        expect_zero: bool,
    },
    /// Commutator of the first two derivations.
    Bracket(DerArgs),
    /// `d^0(x), ..., d^k(x)`.
    Iterate {
        #[command(flatten)]
        d: DerArgs,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// Rank of the iterates `id, d, ..., d^k` on sample points.
    Rank {
        #[command(flatten)]
        d: DerArgs,
        #[arg(long)]
        k: usize,
        /// Sample points, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        /// Rational values for the generators, e.g. `t=2`.
        #[arg(long, allow_hyphen_values = true)]
        subst: Option<String>,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum ResidualKind {
    /// `d(xy) - x d(y) - y d(x)`.
    Leibniz {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// `f(x^k) - k x^(k-1) f(x)`.
    Power {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// `f(x^n) - x^(n-m) g(x^m)` with `g` the second derivation (or `f`).
    Monomial {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Slope of `g`.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        slope_g: String,
    },
    /// Residual for the Moebius map with coefficients `a,b,c,d`.
    Mobius {
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// `f(x) + x^2 f(1/x)`.
    Reflect {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// `f(x^2) - 2 x f(x)`.
    Square {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Residual of `f(x^n) = f(x)^n`.
    Nhom {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct GammaArgs {
    /// Order of the table.
    #[arg(long)]
    pub n: Option<usize>,
    /// File with `i j value` lines.
    #[arg(long, conflicts_with = "gamma", allow_hyphen_values = true)]
    pub table: Option<String>,
    /// Built-in table: `binomial` or `ones`.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct HodArgs {
    #[command(flatten)]
    pub gamma: GammaArgs,
    /// Polynomial variables, comma separated.
    #[arg(long, default_value = "t", allow_hyphen_values = true)]
    pub vars: String,
    /// Generator values `dK(v)=poly`, repeatable; missing values are 0.
    #[arg(long = "value", allow_hyphen_values = true)]
    pub values: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum HodCmd {
    /// Check the cocycle condition on a coefficient table.
    GammaCheck(GammaArgs),
    /// Recover `gamma(0..n)` with `Gamma(i,j) = gamma(i+j)/(gamma(i) gamma(j))`.
    GammaFactor(GammaArgs),
    /// Define a higher-order derivation and show its generator values.
    Define(HodArgs),
    /// Evaluate all orders (or order `k`) on a polynomial.
    Eval {
        #[command(flatten)]
        h: HodArgs,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// Extend by one order with the given free values.
    Construct {
        #[command(flatten)]
        h: HodArgs,
        /// Free values `d_{n+1}(v)`, comma separated in variable order.
        #[arg(long, allow_hyphen_values = true)]
        choice: String,
        /// Table for the extended order; defaults to the same built-in kind.
        #[arg(long, allow_hyphen_values = true)]
        next_table: Option<String>,
    },
    /// Product-rule residual of order `k` on `p`, `q`.
    Residual {
        #[command(flatten)]
        h: HodArgs,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct CheckMode {
    /// `exhaustive` or `sampled:N`.
    #[arg(long, default_value = "exhaustive", allow_hyphen_values = true)]
    pub mode: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone)]
pub struct MapArgs {
    /// `gf:P`, `zmod:N` or `window:LO:HI`.
    #[arg(long, allow_hyphen_values = true)]
    pub carrier: String,
    /// A function `f=EXPR` (or `f=parity`, `f=zero`, `f=id`); F and G are its
    /// Cauchy and Leibniz differences.
    #[arg(long = "fn", allow_hyphen_values = true)]
    pub func: Option<String>,
    /// F as an expression in `a`, `b`.
    #[arg(long = "F", allow_hyphen_values = true)]
    pub big_f: Option<String>,
    /// G as an expression in `a`, `b`.
    #[arg(long = "G", allow_hyphen_values = true)]
    pub big_g: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum CocycleCmd {
    /// Tabulate the Cauchy and Leibniz differences of a function.
    Diff {
        #[arg(long, allow_hyphen_values = true)]
        carrier: String,
        #[arg(long = "fn", allow_hyphen_values = true)]
        func: String,
    },
    /// Check cocycle axioms for F and G.
    Verify {
        #[command(flatten)]
        maps: MapArgs,
        /// Comma-separated axiom names, or `all` (which adds eta).
        #[arg(long, default_value = "alpha,beta,gamma,delta,epsilon,zeta", allow_hyphen_values = true)]
        axioms: String,
        #[command(flatten)]
        mode: CheckMode,
    },
    /// Extend F (and G) from `1..=r` to `-r..=r`.
    Extend {
        #[arg(long)]
        r: i64,
        #[arg(long = "F", allow_hyphen_values = true)]
        big_f: String,
        #[arg(long = "G", allow_hyphen_values = true)]
        big_g: Option<String>,
        /// Print the extended F on the window.
        #[arg(long)]
        show: bool,
    },
    /// Reconstruct f from F on `-r..=r` given f(1).
    Primitive {
        #[arg(long)]
        r: i64,
        #[arg(long = "F", allow_hyphen_values = true)]
        big_f: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        f1: String,
    },
    /// Check whether D(a,b) is the Leibniz difference of an additive map.
    LdCheck {
        #[arg(long, allow_hyphen_values = true)]
        carrier: String,
        /// D as an expression in `a`, `b`.
        #[arg(long = "D", allow_hyphen_values = true)]
        big_d: String,
        #[command(flatten)]
        mode: CheckMode,
    },
}

#[derive(Subcommand, Debug)]
pub enum CharCmd {
    /// Decompose a solution (f, g) over GF(p).
    Decompose {
        #[arg(long)]
        p: u64,
        /// Table `0,1,4,4,1` or expression in `x`.
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// All f with lambda (Cauchy difference) + mu (Leibniz difference) = 0.
    Alien {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        lambda: u64,
        #[arg(long)]
        mu: u64,
    },
}

#[derive(Args, Debug, Clone)]
pub struct MultiMapArg {
    /// Map in `(i,j) value` lines (`;` separates lines), or `@FILE`.
    #[arg(long, allow_hyphen_values = true)]
    pub map: String,
    /// Dimension, when the map has no `# arity K dim D` header.
    #[arg(long)]
    pub dim: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum MultiCmd {
    /// Diagonal value A*(x).
    Trace {
        #[command(flatten)]
        a: MultiMapArg,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Iterated difference of a polynomial in `x1..xD`.
    Delta {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        dim: usize,
        /// Steps `y1;y2;...`, each a comma-separated vector.
        #[arg(long, allow_hyphen_values = true)]
        ys: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Polarization identity for a map.
    Polarize {
        #[command(flatten)]
        a: MultiMapArg,
        #[arg(long, allow_hyphen_values = true)]
        ys: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Binomial expansion of A*(x+y).
    Binomial {
        #[command(flatten)]
        a: MultiMapArg,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Recover the components of a polynomial function of degree <= n.
    Recover {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dim: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum FeqCmd {
    /// Check an equation for given functions.
    Check {
        /// Corpus name or an equation `lhs = rhs`.
        #[arg(long, allow_hyphen_values = true)]
        eq: String,
        #[arg(long, allow_hyphen_values = true)]
        carrier: String,
        /// `f=EXPR`, `f=[table]`, `f=parity`, `f=zero` or `f=id`; repeatable.
        #[arg(long = "fn", allow_hyphen_values = true)]
        funcs: Vec<String>,
        /// Parameter values `lambda=1,mu=2`.
        #[arg(long = "param", allow_hyphen_values = true)]
        params: Vec<String>,
        #[command(flatten)]
        mode: CheckMode,
    },
    /// Find every table solution over a finite carrier.
    Solve {
        #[arg(long, allow_hyphen_values = true)]
        eq: String,
        #[arg(long, allow_hyphen_values = true)]
        carrier: String,
        /// Unknowns to solve for; defaults to every function symbol.
        #[arg(long, allow_hyphen_values = true)]
        unknowns: Option<String>,
        /// `all-units` or `lambda=1,mu=2`.
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
    },
    /// List the built-in equations.
    List,
    /// Solutions of the logarithmic equation with and without 0.
    Logzero {
        #[arg(long, allow_hyphen_values = true)]
        carrier: String,
        #[arg(long)]
        units: bool,
    },
    /// Additive maps on GF(p) satisfying f(x) = -x^2 f(1/x).
    Inversion {
        #[arg(long)]
        p: u64,
    },
}

/// Parses and runs one command line (`argv[0]` is the program name).
pub fn execute<S: AsRef<str>>(argv: &[S]) -> Execution {
    let argv: Vec<&str> = argv.iter().map(AsRef::as_ref).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Execution { code: 2, stdout: String::new(), stderr: text }
            } else {
                Execution { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut out = Out::new(cli.format);
    let budget = dercalc_core::budget_from_env(DEFAULT_BUDGET);
    let r = match cli.cmd {
        Cmd::Run { script } => return run_script(&script, cli.format),
        cmd => cmd::dispatch(cmd, &mut out, budget),
    };
    finish(r, &mut out)
}

fn finish(r: Verdict, out: &mut Out) -> Execution {
    match r {
        Ok(true) => Execution { code: 0, stdout: out.take(), stderr: String::new() },
        Ok(false) => Execution { code: 1, stdout: out.take(), stderr: String::new() },
        Err(e) => Execution { code: e.exit_code(), stdout: out.take(), stderr: format!("error: {e}\n") },
    }
}

fn run_script(path: &str, format: Format) -> Execution {
    let text = match args::read_source(path) {
        Ok(t) => t,
        Err(e) => return Execution { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    let t = session::run_session(&text, format);
    Execution { code: t.code, stdout: t.transcript, stderr: t.error.map(|e| e + "\n").unwrap_or_default() }
}
