use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use subpoly::{CertificateKind, Direction, InnerBoxKind, Property, SupergradientKind};
use subpoly_cli::commands::{self, BoundKind, Outcome, PolyArgs, PolyKind, SearchMethod};
use subpoly_cli::error::CliError;
use subpoly_cli::instance::{load, LoadedInstance};
use subpoly_cli::report::Report;
use subpoly_cli::{sweep, CAP_ENV_VAR};

/// Polyhedral toolkit for submodular set functions.
#[derive(Parser)]
#[command(name = "subpoly", version, disable_help_subcommand = true)]
struct Cli {
    /// Skip re-validating the instance's declared flags.
    #[arg(long, global = true)]
    trust_flags: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InstanceArg {
    /// Path to the instance file.
    #[arg(long)]
    instance: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate f on a named set.
    Eval {
        #[command(flatten)]
        instance: InstanceArg,
        /// Named set from the instance file.
        #[arg(long)]
        set: String,
    },
    /// Marginal gain f(j | S) of an element with respect to a named set.
    Gain {
        #[command(flatten)]
        instance: InstanceArg,
        #[arg(long)]
        element: usize,
        #[arg(long)]
        set: String,
    },
    /// Greedy extreme point of the base polytope for a permutation.
    Vertex {
        #[command(flatten)]
        instance: InstanceArg,
        /// Comma-separated element order, e.g. `2,0,1`.
        #[arg(long)]
        perm: String,
    },
    /// Extreme subgradient at a named set for an anchor-consistent permutation.
    SubdiffVertex {
        #[command(flatten)]
        instance: InstanceArg,
        #[arg(long)]
        set: String,
        #[arg(long)]
        perm: String,
    },
    /// Decide membership of a named point in a polyhedron.
    Member {
        #[command(flatten)]
        instance: InstanceArg,
        #[arg(long)]
        poly: PolyChoice,
        /// Anchor set (required for anchored polyhedra).
        #[arg(long)]
        set: Option<String>,
        /// Outer-bound order k (super-outer only).
        #[arg(long)]
        k: Option<usize>,
        /// Outer-bound order l (super-outer only).
        #[arg(long)]
        l: Option<usize>,
        /// Inner box kind (inner-box only).
        #[arg(long = "box")]
        box_kind: Option<BoxChoice>,
        #[arg(long)]
        point: String,
    },
    /// Closed-form supergradient (or the tilde corner vector) at a named set.
    Supergradient {
        #[command(flatten)]
        instance: InstanceArg,
        #[arg(long)]
        set: String,
        #[arg(long)]
        kind: KindChoice,
    },
    /// Evaluate a modular or classical bound anchored at one set on another.
    BoundEval {
        #[command(flatten)]
        instance: InstanceArg,
        #[arg(long)]
        bound: BoundChoice,
        /// Anchor set X.
        #[arg(long)]
        set: String,
        /// Set Y the bound is evaluated on.
        #[arg(long)]
        at: String,
        /// Supergradient kind (modular-upper only).
        #[arg(long)]
        kind: Option<KindChoice>,
        /// Chain permutation (modular-lower only).
        #[arg(long)]
        perm: Option<String>,
    },
    /// Minimize f (brute force by default).
    Minimize {
        #[command(flatten)]
        instance: InstanceArg,
        #[arg(long, value_enum, default_value_t = MethodChoice::Brute)]
        method: MethodChoice,
        /// Start set for local search.
        #[arg(long)]
        start: Option<String>,
    },
    /// Maximize f (brute force by default).
    Maximize {
        #[command(flatten)]
        instance: InstanceArg,
        #[arg(long, value_enum, default_value_t = MethodChoice::Brute)]
        method: MethodChoice,
        #[arg(long)]
        start: Option<String>,
    },
    /// Local search plus complement, with the achieved ratio when brute
    /// force is feasible.
    ThirdMax {
        #[command(flatten)]
        instance: InstanceArg,
        #[arg(long)]
        start: Option<String>,
    },
    /// Check an optimality certificate at a named set.
    Certify {
        #[command(flatten)]
        instance: InstanceArg,
        #[arg(long)]
        kind: CertChoice,
        #[arg(long)]
        set: String,
    },
    /// Exhaustively validate a property of the instance.
    Validate {
        #[command(flatten)]
        instance: InstanceArg,
        #[arg(long)]
        property: PropertyChoice,
    },
    /// Run a seeded experiment sweep from a config file.
    Sweep {
        /// Path to the sweep config.
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PolyChoice {
    Lower,
    Base,
    Upper,
    Subdiff,
    Superdiff,
    #[value(name = "sub-outer-11")]
    SubOuter11,
    SuperOuter,
    InnerBox,
    InnerConv,
}

impl From<PolyChoice> for PolyKind {
    fn from(value: PolyChoice) -> Self {
        match value {
            PolyChoice::Lower => PolyKind::Lower,
            PolyChoice::Base => PolyKind::Base,
            PolyChoice::Upper => PolyKind::Upper,
            PolyChoice::Subdiff => PolyKind::Subdiff,
            PolyChoice::Superdiff => PolyKind::Superdiff,
            PolyChoice::SubOuter11 => PolyKind::SubOuter11,
            PolyChoice::SuperOuter => PolyKind::SuperOuter,
            PolyChoice::InnerBox => PolyKind::InnerBox,
            PolyChoice::InnerConv => PolyKind::InnerConv,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindChoice {
    Grow,
    Shrink,
    Bar,
    Tilde,
}

impl From<KindChoice> for SupergradientKind {
    fn from(value: KindChoice) -> Self {
        match value {
            KindChoice::Grow => SupergradientKind::Grow,
            KindChoice::Shrink => SupergradientKind::Shrink,
            KindChoice::Bar => SupergradientKind::Bar,
            KindChoice::Tilde => SupergradientKind::Tilde,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BoxChoice {
    Grow,
    Shrink,
    Bar,
}

impl From<BoxChoice> for InnerBoxKind {
    fn from(value: BoxChoice) -> Self {
        match value {
            BoxChoice::Grow => InnerBoxKind::Grow,
            BoxChoice::Shrink => InnerBoxKind::Shrink,
            BoxChoice::Bar => InnerBoxKind::Bar,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BoundChoice {
    ModularUpper,
    ModularLower,
    NemhauserOne,
    NemhauserTwo,
}

impl From<BoundChoice> for BoundKind {
    fn from(value: BoundChoice) -> Self {
        match value {
            BoundChoice::ModularUpper => BoundKind::ModularUpper,
            BoundChoice::ModularLower => BoundKind::ModularLower,
            BoundChoice::NemhauserOne => BoundKind::NemhauserOne,
            BoundChoice::NemhauserTwo => BoundKind::NemhauserTwo,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodChoice {
    Brute,
    Local,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CertChoice {
    GlobalMin,
    LocalMin,
    LocalMax,
    GlobalMaxExact,
    GlobalMaxSufficient,
}

impl From<CertChoice> for CertificateKind {
    fn from(value: CertChoice) -> Self {
        match value {
            CertChoice::GlobalMin => CertificateKind::GlobalMin,
            CertChoice::LocalMin => CertificateKind::LocalMin,
            CertChoice::LocalMax => CertificateKind::LocalMax,
            CertChoice::GlobalMaxExact => CertificateKind::GlobalMaxExact,
            CertChoice::GlobalMaxSufficient => CertificateKind::GlobalMaxSufficient,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PropertyChoice {
    Submodularity,
    Monotonicity,
    Normalization,
}

impl From<PropertyChoice> for Property {
    fn from(value: PropertyChoice) -> Self {
        match value {
            PropertyChoice::Submodularity => Property::Submodularity,
            PropertyChoice::Monotonicity => Property::Monotonicity,
            PropertyChoice::Normalization => Property::Normalization,
        }
    }
}

fn cap_override() -> Result<Option<usize>, CliError> {
    match std::env::var(CAP_ENV_VAR) {
        Ok(text) => {
            let cap = text.parse::<usize>().map_err(|e| CliError::Invalid {
                what: format!("{CAP_ENV_VAR} environment variable"),
                message: format!("`{text}`: {e}"),
            })?;
            Ok(Some(cap))
        }
        Err(_) => Ok(None),
    }
}

fn command_echo() -> String {
    std::env::args().skip(1).collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let started = Instant::now();
    let echo = command_echo();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            // usage errors exit 1; exit 2 is reserved for mathematical negatives
            let error = CliError::Usage(e.to_string());
            let report = Report::failure(echo, None, &error, elapsed_ms(started));
            println!("{}", report.to_pretty());
            eprintln!("{error}");
            return ExitCode::from(1);
        }
    };

    match run(cli, &echo, started) {
        Ok(code) => ExitCode::from(code),
        Err((digest, error)) => {
            let report = Report::failure(echo, digest, &error, elapsed_ms(started));
            println!("{}", report.to_pretty());
            eprintln!("{error}");
            ExitCode::from(1)
        }
    }
}

fn elapsed_ms(started: Instant) -> f64 {
    started.elapsed().as_secs_f64() * 1e3
}

type Failure = (Option<String>, CliError);

fn run(cli: Cli, echo: &str, started: Instant) -> Result<u8, Failure> {
    let trust_flags = cli.trust_flags;
    let cap = cap_override().map_err(|e| (None, e))?;

    if let Command::Sweep { config } = &cli.command {
        let (config, digest) =
            sweep::load_config(config).map_err(|e| (None, e))?;
        let stdout = std::io::stdout();
        let mut out = stdout.lock();
        let code = sweep::run(&config, &digest, echo, &mut out)
            .map_err(|e| (Some(digest.clone()), e))?;
        out.flush().ok();
        return Ok(code as u8);
    }

    let path = match &cli.command {
        Command::Eval { instance, .. }
        | Command::Gain { instance, .. }
        | Command::Vertex { instance, .. }
        | Command::SubdiffVertex { instance, .. }
        | Command::Member { instance, .. }
        | Command::Supergradient { instance, .. }
        | Command::BoundEval { instance, .. }
        | Command::Minimize { instance, .. }
        | Command::Maximize { instance, .. }
        | Command::ThirdMax { instance, .. }
        | Command::Certify { instance, .. }
        | Command::Validate { instance, .. } => instance.instance.clone(),
        Command::Sweep { .. } => unreachable!("handled above"),
    };

    let loaded = load(&path, trust_flags, cap).map_err(|e| (None, e))?;
    let digest = loaded.digest.clone();
    let outcome =
        dispatch(&cli.command, &loaded).map_err(|e| (Some(digest.clone()), e))?;
    let report = Report::success(
        echo.to_string(),
        Some(digest),
        outcome.result,
        outcome.negative,
        elapsed_ms(started),
    );
    println!("{}", report.to_pretty());
    Ok(report.exit_code() as u8)
}

fn dispatch(command: &Command, li: &LoadedInstance) -> Result<Outcome, CliError> {
    match command {
        Command::Eval { set, .. } => commands::eval(li, set),
        Command::Gain { element, set, .. } => commands::gain(li, *element, set),
        Command::Vertex { perm, .. } => commands::vertex(li, perm),
        Command::SubdiffVertex { set, perm, .. } => commands::subdiff_vertex_cmd(li, set, perm),
        Command::Member { poly, set, k, l, box_kind, point, .. } => {
            let args = PolyArgs {
                kind: (*poly).into(),
                set: set.as_deref(),
                k: *k,
                l: *l,
                box_kind: box_kind.map(Into::into),
            };
            commands::member(li, &args, point)
        }
        Command::Supergradient { set, kind, .. } => {
            commands::supergradient_cmd(li, set, (*kind).into())
        }
        Command::BoundEval { bound, set, at, kind, perm, .. } => commands::bound_eval(
            li,
            (*bound).into(),
            set,
            at,
            kind.map(Into::into),
            perm.as_deref(),
        ),
        Command::Minimize { method, start, .. } => commands::optimize_cmd(
            li,
            Direction::Minimize,
            method_of(*method),
            start.as_deref(),
        ),
        Command::Maximize { method, start, .. } => commands::optimize_cmd(
            li,
            Direction::Maximize,
            method_of(*method),
            start.as_deref(),
        ),
        Command::ThirdMax { start, .. } => commands::third_max(li, start.as_deref()),
        Command::Certify { kind, set, .. } => commands::certify(li, (*kind).into(), set),
        Command::Validate { property, .. } => commands::validate_cmd(li, (*property).into()),
        Command::Sweep { .. } => unreachable!("handled before dispatch"),
    }
}

fn method_of(choice: MethodChoice) -> SearchMethod {
    match choice {
        MethodChoice::Brute => SearchMethod::Brute,
        MethodChoice::Local => SearchMethod::Local,
    }
}
