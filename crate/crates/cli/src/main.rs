use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use koszul_core::exactlinalg::Field;
use koszul_core::presets::PresetName;
use koszul_gerst::spec_file::parse_field;
use koszul_gerst::{run_command, AlgebraSource, CliError, CommandKind, Engine, OutputFormat, RunConfig};

/// Exact Hochschild cohomology, homotopy liftings and Gerstenhaber brackets for Koszul
/// quiver algebras.
#[derive(Parser, Debug)]
#[command(name = "koszul-gerst", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Built-in algebra: `short` or `family` (needs --q).
    #[arg(long, global = true, conflicts_with = "algebra")]
    preset: Option<String>,

    /// Algebra description file.
    #[arg(long, global = true)]
    algebra: Option<PathBuf>,

    /// Value of the parameter q, as a field literal.
    #[arg(long, global = true, allow_hyphen_values = true)]
    q: Option<String>,

    /// Maximal homological degree.
    #[arg(short = 'N', global = true, default_value_t = 4)]
    max_degree: usize,

    /// Restrict cohomology to one internal degree (path length of cochain values).
    #[arg(long, global = true)]
    internal_degree: Option<usize>,

    /// Coefficient field: Q or F<p> for an odd prime p.
    #[arg(long, global = true, value_parser = field_arg)]
    field: Option<Field>,

    /// Bracket engine.
    #[arg(long, global = true, value_enum, default_value_t = EngineArg::Lifting)]
    engine: EngineArg,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,

    /// Run the command's optional identity checks.
    #[arg(long, global = true)]
    verify: bool,

    /// A cochain `v0,v1,...` or `n:v0,v1,...`; repeat for two-argument commands.
    #[arg(long, global = true, allow_hyphen_values = true)]
    cocycle: Vec<String>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// The elements f^n_i, the counts t_n and a basis of the algebra.
    Basis,
    /// Comultiplicative scalars c_pq(n, i, r).
    Comult,
    /// Differentials, diagonal and comparison map ι of the resolution.
    Resolution,
    /// Cocycles, coboundaries and HH dimensions per internal degree.
    Cohomology,
    /// Cup product of two cocycles.
    Cup,
    /// Solve and verify a homotopy lifting.
    Lift,
    /// Gerstenhaber bracket of two cocycles.
    Bracket,
    /// Maurer–Cartan check for a 2-cocycle.
    Mc,
    /// Recompute the reference tables and compare with the embedded values.
    Tables,
    /// Run every built-in check.
    VerifyAll,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum EngineArg {
    Lifting,
    Derivation,
    Bar,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum FormatArg {
    Text,
    Structured,
}

fn field_arg(text: &str) -> Result<Field, String> {
    parse_field(text).ok_or_else(|| format!("unknown field {text:?}; use Q or F<p> with p an odd prime"))
}

fn config(cli: Cli) -> Result<RunConfig, CliError> {
    let command = match cli.command {
        Command::Basis => CommandKind::Basis,
        Command::Comult => CommandKind::Comult,
        Command::Resolution => CommandKind::Resolution,
        Command::Cohomology => CommandKind::Cohomology,
        Command::Cup => CommandKind::Cup,
        Command::Lift => CommandKind::Lift,
        Command::Bracket => CommandKind::Bracket,
        Command::Mc => CommandKind::Mc,
        Command::Tables => CommandKind::Tables,
        Command::VerifyAll => CommandKind::VerifyAll,
    };
    let source = match (cli.preset, cli.algebra) {
        (Some(name), _) => Some(AlgebraSource::Preset(
            PresetName::parse(&name).ok_or(CliError::UnknownPreset(name))?,
        )),
        (None, Some(path)) => Some(AlgebraSource::File(path)),
        (None, None) => None,
    };
    let seed = match std::env::var("KOSZUL_GERST_SEED") {
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| CliError::Invalid(format!("KOSZUL_GERST_SEED must be an unsigned integer, got {text:?}")))?,
        Err(_) => 0,
    };
    Ok(RunConfig {
        command,
        source,
        q: cli.q,
        max_degree: cli.max_degree,
        internal_degree: cli.internal_degree,
        field: cli.field,
        engine: match cli.engine {
            EngineArg::Lifting => Engine::Lifting,
            EngineArg::Derivation => Engine::Derivation,
            EngineArg::Bar => Engine::Bar,
        },
        format: match cli.format {
            FormatArg::Text => OutputFormat::Text,
            FormatArg::Structured => OutputFormat::Structured,
        },
        verify: cli.verify,
        cocycles: cli.cocycle,
        seed,
    })
}

fn main() -> ExitCode {
    let result = config(Cli::parse()).and_then(|cfg| run_command(&cfg).map(|report| (cfg.format, report)));
    match result {
        Ok((format, report)) => {
            print!("{}", report.render(format));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
