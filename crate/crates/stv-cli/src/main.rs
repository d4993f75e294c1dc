use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use supertrop::cli::{cmd_check, cmd_corner, cmd_kapranov, cmd_lattice, CmdOutput, Format, Instance, RunConfig, Suite};

#[derive(Parser)]
#[command(name = "stv", about = "Check supertropical structures and run valuation experiments")]
struct Cli {
    #[arg(long, global = true, env = "STV_SEED", default_value_t = 42)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1000)]
    samples: usize,
    /// Degree bound for random polynomials.
    #[arg(long, global = true, default_value_t = 4)]
    deg: u32,
    /// Variable bound for random polynomials.
    #[arg(long, global = true, default_value_t = 3)]
    vars: usize,
    /// Largest carrier the lattice enumerator accepts.
    #[arg(long, global = true, default_value_t = 12)]
    bound: usize,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run an axiom suite on a table file.
    Check {
        #[arg(value_enum)]
        suite: SuiteArg,
        table: PathBuf,
        /// JSON list of blocks of element names, for the mfce suite.
        #[arg(long)]
        partition: Option<PathBuf>,
    },
    /// Enumerate the MFCE relations of a supertropical table.
    Lattice { table: PathBuf },
    /// Manufactured-root trials of the Kapranov inclusion and the GS statement.
    Kapranov {
        #[arg(value_enum, default_value_t = InstanceArg::Puiseux)]
        instance: InstanceArg,
        /// Move each point off its root before checking.
        #[arg(long)]
        inject_non_root: bool,
    },
    /// Whether a point lies on the corner locus of a tropicalized polynomial.
    Corner { poly: String, point: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Semiring,
    Bipotent,
    Supertropical,
    Ub,
    Mfce,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum InstanceArg {
    Puiseux,
    Padic,
}

fn read(path: &Path) -> Result<String, CmdOutput> {
    std::fs::read_to_string(path).map_err(|e| CmdOutput::input_error(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> CmdOutput {
    let cfg = RunConfig {
        seed: cli.seed,
        samples: cli.samples,
        degree_bound: cli.deg,
        var_bound: cli.vars,
        carrier_bound: cli.bound,
    };
    let result = match &cli.cmd {
        Cmd::Check { suite, table, partition } => (|| {
            let t = read(table)?;
            let p = partition.as_deref().map(read).transpose()?;
            let suite = match suite {
                SuiteArg::Semiring => Suite::Semiring,
                SuiteArg::Bipotent => Suite::Bipotent,
                SuiteArg::Supertropical => Suite::Supertropical,
                SuiteArg::Ub => Suite::Ub,
                SuiteArg::Mfce => Suite::Mfce,
            };
            Ok(cmd_check(&t, suite, p.as_deref()))
        })(),
        Cmd::Lattice { table } => read(table).map(|t| {
            let format = match cli.format {
                FormatArg::Json => Format::Json,
                FormatArg::Dot => Format::Dot,
                FormatArg::Text => Format::Text,
            };
            cmd_lattice(&t, format, cfg.carrier_bound)
        }),
        Cmd::Kapranov { instance, inject_non_root } => {
            let instance = match instance {
                InstanceArg::Puiseux => Instance::Puiseux,
                InstanceArg::Padic => Instance::Padic,
            };
            Ok(cmd_kapranov(&cfg, instance, *inject_non_root))
        }
        Cmd::Corner { poly, point } => Ok(cmd_corner(poly, point)),
    };
    result.unwrap_or_else(|e| e)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = run(&cli);
    eprintln!("{}", out.summary);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &out.stdout) {
                eprintln!("{}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", out.stdout),
    }
    ExitCode::from(out.code as u8)
}
