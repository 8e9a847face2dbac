use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use quantum_twist::cli::{self, Command, Options};
use quantum_twist::config::{Format, Session};
use quantum_twist::hopf::DEFAULT_MAX_DIM;

#[derive(Parser)]
#[command(name = "qtwist", version, about = "Build and verify twisted bosonizations of quantum linear spaces")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args, Clone)]
struct Common {
    /// Session config (JSON).
    config: PathBuf,
    #[arg(long, value_enum)]
    format: Option<Fmt>,
    /// Refuse algebras of larger dimension.
    #[arg(long)]
    max_dim: Option<usize>,
    /// Run independent checks concurrently.
    #[arg(long)]
    parallel: bool,
}

#[derive(Subcommand)]
enum Sub {
    /// Check the datum and the scalar family.
    Validate(Common),
    /// Sweep the q-binomial identity over primitive roots of unity.
    Qcheck {
        #[arg(long = "max-N", default_value_t = 12)]
        max_n: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Fmt,
    },
    /// Emit product, coproduct and antipode of A as sparse JSON.
    Build(Common),
    /// Verify the braided twist (J_D, or the config's `twist`).
    VerifyTwist(Common),
    /// Verify the Hopf axioms of H, the lifted twist and A = H^T.
    VerifyHopf(Common),
    /// Presentations of the duals A_s*.
    Dual {
        #[command(flatten)]
        common: Common,
        /// Group element s (0-based) selecting the coset sΓ.
        #[arg(long)]
        coset: Option<usize>,
    },
    /// Pointedness criterion against the per-coset presentations.
    Pointed(Common),
    /// Check the config's gauge block.
    GaugeCheck(Common),
    /// Compare A with H under the config's candidate gauge elements.
    Question(Common),
    /// Run every stage.
    Report(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Json,
    Text,
}

impl From<Fmt> for Format {
    fn from(f: Fmt) -> Self {
        match f {
            Fmt::Json => Format::Json,
            Fmt::Text => Format::Text,
        }
    }
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let (cmd, common) = match args.command {
        Sub::Qcheck { max_n, format } => {
            let cmd = Command::Qcheck { max_n };
            let out = cli::run_qcheck(max_n);
            print!("{}", cli::render(format.into(), &cmd, None, &out));
            return ExitCode::from(out.exit_code() as u8);
        }
        Sub::Validate(c) => (Command::Validate, c),
        Sub::Build(c) => (Command::Build, c),
        Sub::VerifyTwist(c) => (Command::VerifyTwist, c),
        Sub::VerifyHopf(c) => (Command::VerifyHopf, c),
        Sub::Dual { common, coset } => (Command::Dual { coset }, common),
        Sub::Pointed(c) => (Command::Pointed, c),
        Sub::GaugeCheck(c) => (Command::GaugeCheck, c),
        Sub::Question(c) => (Command::Question, c),
        Sub::Report(c) => (Command::Report, c),
    };
    let session = match Session::load(&common.config) {
        Ok(s) => s,
        Err(e) => {
            let format = common.format.map(Format::from).unwrap_or_default();
            eprintln!("qtwist: {e}");
            print!("{}", cli::render_error(format, &cmd, &e));
            return ExitCode::from(2);
        }
    };
    let format = common.format.map(Format::from).or(session.config.format).unwrap_or_default();
    let options = Options {
        max_dim: common.max_dim.or(session.config.max_dim).unwrap_or(DEFAULT_MAX_DIM),
        parallel: common.parallel,
    };
    match cli::run(&session, &cmd, &options) {
        Ok(out) => {
            print!("{}", cli::render(format, &cmd, Some(session.name()), &out));
            ExitCode::from(out.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("qtwist: {e}");
            print!("{}", cli::render_error(format, &cmd, &e));
            ExitCode::from(2)
        }
    }
}
