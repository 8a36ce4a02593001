use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nash_cli::commands::{self, Format, ResolveArgs};
use nash_cli::input::ConeSpec;
use nash_cli::{verify, CliError, CliResult};

#[derive(Parser)]
#[command(name = "nash", version, about = "Nash blow-ups of toric cones")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct ConeArgs {
    /// Generators as rows, e.g. "1 0; 4 7"
    #[arg(long, conflicts_with_all = ["facets", "name"])]
    rays: Option<String>,
    /// Inward facet normals as rows
    #[arg(long, conflicts_with = "name")]
    facets: Option<String>,
    /// A classified simplicial cone such as C_3_3 or D_{5,14}
    #[arg(long)]
    name: Option<String>,
}

impl From<ConeArgs> for ConeSpec {
    fn from(a: ConeArgs) -> Self {
        ConeSpec { rays: a.rays, facets: a.facets, name: a.name }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum HjOp {
    Expand,
    Basis,
    Blowup,
    Resolve,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Tables,
    Surface,
    Anomalies,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Hilbert basis of a cone
    Hilbert {
        #[command(flatten)]
        cone: ConeArgs,
    },
    /// Build the resolution tree of a cone
    Resolve {
        #[command(flatten)]
        cone: ConeArgs,
        /// Stop at simplicial cones of index below N; `root` stops at index up to the root's
        #[arg(long, value_name = "N|root")]
        prune_index: Option<String>,
        #[arg(long)]
        no_memo: bool,
        #[arg(long)]
        max_depth: Option<usize>,
        #[arg(long)]
        max_nodes: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// JSON-lines blow-up cache; NASH_CACHE overrides it
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Worker threads, 0 for one per core
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Count or list the classes of simplicial cones
    Enumerate {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        index_max: u64,
        /// List every class instead of counting
        #[arg(long)]
        table: bool,
    },
    /// Planar cones ⟨(1,0),(p,q)⟩
    Hj {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        q: i64,
        #[arg(value_enum)]
        op: HjOp,
    },
    /// Run a self-check suite
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

fn run(cli: Cli) -> CliResult<()> {
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Hilbert { cone } => stdout.write_all(commands::hilbert(&cone.into())?.as_bytes())?,
        Command::Resolve { cone, prune_index, no_memo, max_depth, max_nodes, format, cache, jobs } => {
            let args = ResolveArgs {
                spec: cone.into(),
                prune_index,
                no_memo,
                max_depth,
                max_nodes,
                format: match format {
                    FormatArg::Text => Format::Text,
                    FormatArg::Json => Format::Json,
                    FormatArg::Dot => Format::Dot,
                },
                cache,
                jobs,
            };
            let out = commands::resolve(&args)?;
            stdout.write_all(out.stdout.as_bytes())?;
            eprint!("{}", out.stderr);
            if let Some(b) = out.budget {
                return Err(CliError::Budget(b));
            }
        }
        Command::Enumerate { dim, index_max, table } => {
            stdout.write_all(commands::enumerate(dim, index_max, table)?.as_bytes())?
        }
        Command::Hj { p, q, op } => {
            let op = match op {
                HjOp::Expand => "expand",
                HjOp::Basis => "basis",
                HjOp::Blowup => "blowup",
                HjOp::Resolve => "resolve",
            };
            stdout.write_all(commands::hj(p, q, op)?.as_bytes())?
        }
        Command::Verify { suite, jobs } => {
            let checks = match suite {
                Suite::Tables => verify::tables(),
                Suite::Surface => verify::surface(),
                Suite::Anomalies => verify::anomalies(jobs),
                Suite::All => [verify::tables(), verify::surface(), verify::anomalies(jobs)].concat(),
            };
            stdout.write_all(verify::report(&checks).as_bytes())?;
            let failed = checks.iter().filter(|c| !c.ok).count();
            if failed > 0 {
                return Err(CliError::Verify(format!("{failed} checks failed")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
