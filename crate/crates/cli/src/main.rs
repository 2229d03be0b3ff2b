use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hp0_core::gale_frame::parse_frame;
use hp0_core::{Error, GaleFrame, Rat};

mod commands;

use commands::Output;

#[derive(Parser, Debug)]
#[command(
    name = "hp0",
    version,
    about = "Poisson homology of hypertoric varieties from a Gale frame"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Highest degree computed.
    #[arg(long, global = true, default_value_t = hp0_core::hp0::DEFAULT_D_MAX)]
    d_max: usize,

    /// Ground set order, 1-based, e.g. "3,1,2". Applied before everything else.
    #[arg(long, global = true)]
    ordering: Option<String>,

    /// Seed for random specializations.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Report degrees doubled, with the linear forms in degree 2.
    #[arg(long, global = true)]
    paper_degrees: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Signed circuits and broken circuits.
    Circuits { frame: PathBuf },
    /// Hilbert function of the presented module and of the Stanley-Reisner ring.
    Hilbert { frame: PathBuf },
    /// h-vector and intersection cohomology Betti numbers of the dual variety.
    Betti { frame: PathBuf },
    /// Leading monomials of the relations against Stanley-Reisner monomials.
    Degenerate { frame: PathBuf },
    /// Dimension of the fiber at a point, given or seeded.
    Fiber {
        frame: PathBuf,
        /// Point as comma-separated rationals, e.g. "1,-2/3".
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Lattice of flats.
    Flats { frame: PathBuf },
    /// Stalks of both sheaves and the sheaf checks.
    Sheaf { frame: PathBuf },
    /// Every check in one JSON document.
    Report { frame: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

pub struct RunConfig {
    pub d_max: usize,
    pub seed: u64,
    pub paper_degrees: bool,
}

fn parse_ordering(s: &str) -> Result<Vec<usize>, Error> {
    s.split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(i) if i >= 1 => Ok(i - 1),
            _ => Err(Error::Ordering(format!(
                "bad entry {t:?}; expected 1-based column indices"
            ))),
        })
        .collect()
}

fn parse_rational(t: &str) -> Option<Rat> {
    let t = t.trim();
    match t.split_once('/') {
        Some((n, d)) => {
            let (n, d): (i64, i64) = (n.trim().parse().ok()?, d.trim().parse().ok()?);
            (d != 0).then(|| Rat::new(n, d))
        }
        None => Some(Rat::integer(t.parse().ok()?)),
    }
}

fn parse_lambda(s: &str) -> Result<Vec<Rat>, String> {
    s.split(',')
        .enumerate()
        .map(|(i, t)| {
            parse_rational(t)
                .ok_or_else(|| format!("--lambda entry {}: not a rational number: {t:?}", i + 1))
        })
        .collect()
}

fn load(path: &PathBuf, ordering: Option<&str>) -> Result<GaleFrame, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let frame = parse_frame(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    match ordering {
        None => Ok(frame),
        Some(o) => parse_ordering(o)
            .and_then(|order| frame.permuted(&order))
            .map_err(|e| e.to_string()),
    }
}

fn configure_threads() {
    let Ok(value) = std::env::var("HP0_THREADS") else {
        return;
    };
    match value.parse::<usize>() {
        Ok(n) if n > 0 => {
            if let Err(e) = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
            {
                log::warn!("could not size the thread pool: {e}");
            }
        }
        _ => log::warn!("ignoring HP0_THREADS={value:?}: expected a positive integer"),
    }
}

fn run(cli: &Cli) -> Result<Output, String> {
    let config = RunConfig {
        d_max: cli.d_max,
        seed: cli.seed,
        paper_degrees: cli.paper_degrees,
    };
    let ordering = cli.ordering.as_deref();
    match &cli.command {
        Command::Circuits { frame } => Ok(commands::circuits(&load(frame, ordering)?)),
        Command::Hilbert { frame } => Ok(commands::hilbert(&load(frame, ordering)?, &config)),
        Command::Betti { frame } => commands::betti(&load(frame, ordering)?, &config),
        Command::Degenerate { frame } => Ok(commands::degenerate(&load(frame, ordering)?, &config)),
        Command::Fiber { frame, lambda } => {
            let frame = load(frame, ordering)?;
            let lambda = lambda.as_deref().map(parse_lambda).transpose()?;
            commands::fiber(&frame, lambda, &config)
        }
        Command::Flats { frame } => Ok(commands::flats(&load(frame, ordering)?)),
        Command::Sheaf { frame } => Ok(commands::sheaf(&load(frame, ordering)?, &config)),
        Command::Report { frame } => commands::report(&load(frame, ordering)?, &config),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    configure_threads();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("serializable")
                ),
                Format::Tsv => print!("{}", out.tsv),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
