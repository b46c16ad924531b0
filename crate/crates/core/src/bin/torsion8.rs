//! `torsion8` command-line front end. Reports go to stdout as JSON,
//! diagnostics to stderr.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use torsion8::cli::{self, CurveSpec, Options, Outcome, PointArg, TorsionOrder};
use torsion8::{Error, Result, Sign, Tolerance};

#[derive(Parser)]
#[command(name = "torsion8", version)]
#[command(
    about = "Elliptic-curve torsion points over C: an explicit point of order 8, checked two ways"
)]
struct Cli {
    /// Relative comparison tolerance
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Sign of the square root used for y: + or -
    #[arg(long, global = true, default_value = "+", allow_hyphen_values = true)]
    branch: String,

    /// Largest order searched by the group law
    #[arg(long, global = true, default_value_t = 16)]
    max_order: u32,

    /// Relabel the roots so that beta is real and above 1, if possible
    #[arg(long, global = true)]
    permute_roots: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PointOpts {
    /// Point as "x,y" or a JSON pair of [re, im]
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["x", "order8_point"])]
    point: Option<String>,

    /// x-coordinate only; y comes from --branch
    #[arg(long, allow_hyphen_values = true, conflicts_with = "order8_point")]
    x: Option<String>,

    /// Use the constructed point of order 8
    #[arg(long)]
    order8_point: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Replay the worked example on roots (i, 0, -i) against embedded values
    Example,
    /// Construct torsion points and verify their orders
    Torsion {
        /// Roots "e1,e2,e3" (each "a+bi") or a JSON array of [re, im]
        #[arg(long, allow_hyphen_values = true)]
        roots: String,
        /// Which points: 2, 4, 8 or all
        #[arg(long, default_value = "8")]
        order: String,
    },
    /// Scalar multiple k*P
    Mul {
        #[arg(long, allow_hyphen_values = true)]
        roots: String,
        #[arg(long)]
        k: u64,
        #[command(flatten)]
        point: PointOpts,
        /// Also report the order of P
        #[arg(long)]
        with_order: bool,
    },
    /// Order of a point by the group law and by division polynomials
    Order {
        #[arg(long, allow_hyphen_values = true)]
        roots: String,
        #[command(flatten)]
        point: PointOpts,
    },
    /// Short Weierstrass coefficients, optionally mapping a point
    Normalize {
        #[arg(long, allow_hyphen_values = true)]
        roots: String,
        #[command(flatten)]
        point: PointOpts,
    },
}

fn parse_branch(text: &str) -> Result<Sign> {
    match text {
        "+" | "plus" => Ok(Sign::Plus),
        "-" | "minus" => Ok(Sign::Minus),
        other => Err(Error::Parse(format!(
            "--branch must be + or -, got {other:?}"
        ))),
    }
}

impl PointOpts {
    fn resolve(&self) -> Result<Option<PointArg>> {
        if let Some(p) = &self.point {
            return PointArg::parse_coords(p).map(Some);
        }
        if let Some(x) = &self.x {
            return cli::parse_complex(x).map(|x| Some(PointArg::X(x)));
        }
        Ok(self.order8_point.then_some(PointArg::Order8))
    }

    fn require(&self) -> Result<PointArg> {
        self.resolve()?.ok_or_else(|| {
            Error::Parse("a point is required: --point, --x or --order8-point".into())
        })
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    if cli.max_order == 0 {
        return Err(Error::Parse("--max-order must be at least 1".into()));
    }
    let opts = Options {
        tol: Tolerance::new(cli.tol)?,
        branch: parse_branch(&cli.branch)?,
        max_order: cli.max_order,
        permute_roots: cli.permute_roots,
    };
    match cli.command {
        Command::Example => Ok(cli::cmd_example(&opts)),
        Command::Torsion { roots, order } => cli::cmd_torsion(
            &CurveSpec::parse(&roots)?,
            TorsionOrder::parse(&order)?,
            &opts,
        ),
        Command::Mul {
            roots,
            k,
            point,
            with_order,
        } => cli::cmd_mul(
            &CurveSpec::parse(&roots)?,
            k,
            &point.require()?,
            with_order,
            &opts,
        ),
        Command::Order { roots, point } => {
            cli::cmd_order(&CurveSpec::parse(&roots)?, &point.require()?, &opts)
        }
        Command::Normalize { roots, point } => {
            cli::cmd_normalize(&CurveSpec::parse(&roots)?, point.resolve()?.as_ref(), &opts)
        }
    }
}

fn emit(outcome: &Outcome) {
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{}", outcome.render());
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) if !err.use_stderr() => {
            // --help / --version
            let _ = err.print();
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            let _ = err.print();
            let err = Error::Parse(err.kind().to_string());
            emit(&Outcome::from_error(&err));
            return ExitCode::from(err.exit_code() as u8);
        }
    };

    let outcome = run(cli).unwrap_or_else(|err| {
        eprintln!("error: {err}");
        Outcome::from_error(&err)
    });
    if outcome.exit_code == cli::EXIT_VERIFICATION_FAILED {
        eprintln!("verification failed");
    }
    emit(&outcome);
    ExitCode::from(outcome.exit_code as u8)
}
