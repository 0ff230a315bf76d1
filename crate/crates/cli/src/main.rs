use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use prym_core::catalog::{self, Flags, Instance, Options, INSTANCE_NAMES};
use prym_core::group::DEFAULT_MAX_GROUP_ORDER;
use prym_core::report::build_report;
use prym_core::schema::InputDocument;
use prym_core::{Error, ErrorKind};

const MAX_ORDER_VAR: &str = "PRYM_MAX_GROUP_ORDER";

#[derive(Parser)]
#[command(
    name = "prym",
    version,
    about = "Isotypical decompositions and degree bounds for Abel-Prym maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the group, character table, and action of an input file.
    Validate { input: PathBuf },
    /// Decompose the lattice and report every component.
    Decompose(Run),
    /// Degree bounds only.
    Bounds(Run),
    /// Built-in instances.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// List instance names.
    List,
    /// Print an instance in the input schema.
    Export {
        name: String,
        #[command(flatten)]
        toggles: Toggles,
    },
}

#[derive(Args)]
struct Run {
    /// Input document.
    #[arg(required_unless_present = "catalog", conflicts_with = "catalog")]
    input: Option<PathBuf>,
    /// Use a built-in instance instead of a file.
    #[arg(long)]
    catalog: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    toggles: Toggles,
}

#[derive(Args)]
struct Toggles {
    /// Prime for Dp_scenario.
    #[arg(long)]
    p: Option<u64>,
    /// Dimension used by the scenario instances.
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    assume_pullback_embedding: bool,
    #[arg(long)]
    assume_abel_prym_embedding: bool,
    #[arg(long)]
    apply_divisor_rule: bool,
    #[arg(long)]
    assume_two_point_or_unramified: bool,
}

impl Toggles {
    fn options(&self) -> Options {
        Options {
            p: self.p,
            dim: self.dim,
            assume_pullback_embedding: self.assume_pullback_embedding,
            assume_abel_prym_embedding: self.assume_abel_prym_embedding,
            apply_divisor_rule: self.apply_divisor_rule,
            assume_two_point_or_unramified: self.assume_two_point_or_unramified,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.kind() {
            ErrorKind::Validation => 1,
            ErrorKind::Input => 2,
            ErrorKind::Internal => 3,
        };
        Failure {
            code,
            message: format!("{}: {e}", e.code()),
        }
    }
}

fn input_failure(message: String) -> Failure {
    Failure { code: 2, message }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::Validate { input } => {
            let instance = load_file(&input)?;
            let mut out = format!(
                "ok: group of order {}, {} characters",
                instance.group().order(),
                instance.table.rows().len()
            );
            if let Some(a) = &instance.action {
                out.push_str(&format!(", symplectic action in genus {}", a.genus()));
            }
            out.push('\n');
            Ok(out)
        }
        Command::Decompose(r) => {
            let report = build_report(&resolve(&r)?)?;
            Ok(match r.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            })
        }
        Command::Bounds(r) => {
            let bounds = build_report(&resolve(&r)?)?.bounds_only();
            Ok(match r.format {
                Format::Json => bounds.to_json(),
                Format::Text => bounds.to_text(),
            })
        }
        Command::Catalog(CatalogCommand::List) => Ok(INSTANCE_NAMES
            .iter()
            .map(|n| format!("{n}\t{}\n", catalog::describe(n).unwrap_or("")))
            .collect()),
        Command::Catalog(CatalogCommand::Export { name, toggles }) => {
            let instance = catalog::get(&name, &toggles.options())?;
            Ok(InputDocument::export(&instance)?.to_json())
        }
    }
}

fn resolve(r: &Run) -> Result<Instance, Failure> {
    let options = r.toggles.options();
    match (&r.catalog, &r.input) {
        (Some(name), _) => Ok(catalog::get(name, &options)?),
        (None, Some(path)) => {
            if options.p.is_some() || options.dim.is_some() {
                return Err(input_failure(
                    "--p and --dim apply to catalog instances only".into(),
                ));
            }
            let mut instance = load_file(path)?;
            instance.enable(&Flags::from_options(&options));
            Ok(instance)
        }
        (None, None) => Err(input_failure("no input given".into())),
    }
}

fn load_file(path: &Path) -> Result<Instance, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_failure(format!("cannot read {}: {e}", path.display())))?;
    let doc = InputDocument::from_json(&text)?;
    Ok(doc.load(max_group_order()?)?)
}

fn max_group_order() -> Result<usize, Failure> {
    match std::env::var(MAX_ORDER_VAR) {
        Err(_) => Ok(DEFAULT_MAX_GROUP_ORDER),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| {
                input_failure(format!(
                    "{MAX_ORDER_VAR} must be a positive integer, got {v:?}"
                ))
            }),
    }
}
