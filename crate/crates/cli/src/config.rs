//! Command-line flags and their validation into a [`RunConfig`].

use std::fs;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Deserialize;
use thiserror::Error;
use tiltpoly::quiver::{Interval, Quiver};
use tiltpoly::series::SeriesVariant;
use tiltpoly::tilting::OrderingRule;
use tiltpoly::verify::{ClaimGroup, Limits, OrientationChoice};

#[derive(Debug, Error)]
pub enum CliError {
    /// A flag value is malformed or out of range.
    #[error("{flag}: {message}")]
    Flag { flag: &'static str, message: String },

    #[error(transparent)]
    Core(#[from] tiltpoly::Error),

    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn flag(flag: &'static str, message: impl Into<String>) -> Self {
        CliError::Flag {
            flag,
            message: message.into(),
        }
    }

    /// 2 for anything the caller can fix by changing the invocation.
    pub fn exit_status(&self) -> i32 {
        match self {
            CliError::Core(tiltpoly::Error::Internal(_)) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Cardinalities of the tilting families.
    Count,
    /// List the members of a tilting family.
    Enumerate,
    /// Exact normalized volume of a C- or P-series polytope.
    Volume,
    /// Run the verification battery.
    Verify,
    /// Headline table of closed forms with cross-validation.
    Report,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Series {
    /// Convex hull of roots.
    #[default]
    #[value(name = "C", alias = "c")]
    C,
    /// Union of tilting simplices.
    #[value(name = "P", alias = "p")]
    P,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Ordering {
    /// No nonzero map from a later summand to an earlier one.
    #[default]
    Hom,
    /// Larger supports precede the summands nested inside them.
    Nesting,
}

#[derive(Debug, Parser)]
#[command(
    name = "tiltpoly",
    version,
    about = "Tilting modules of type A, root polytopes and exact volumes"
)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,

    /// Number of vertices (upper end of the range for verify and report).
    #[arg(long)]
    pub n: Option<usize>,

    /// Lower end of the size range for verify and report.
    #[arg(long)]
    pub from: Option<usize>,

    /// "directed", "all", or explicit bits with 1 for i->i+1.
    #[arg(long, default_value = "directed")]
    pub orientation: String,

    /// plus, clus, full, barred_plus, barred_clus, barred_full or all.
    #[arg(long)]
    pub variant: Option<String>,

    #[arg(long, value_enum, default_value_t)]
    pub series: Series,

    #[arg(long, value_enum, default_value_t)]
    pub format: Format,

    /// Worker threads for parallel sections.
    #[arg(long)]
    pub jobs: Option<usize>,

    /// Largest n for hull computations.
    #[arg(long, default_value_t = Limits::default().geometry)]
    pub limit_dim: usize,

    /// Allow sizes above the geometry, enumeration and arithmetic caps.
    #[arg(long)]
    pub override_limits: bool,

    /// Write the output to a file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Rule deciding which orderings of a tilting module are sequences.
    #[arg(long, value_enum, default_value_t)]
    pub ordering: Ordering,

    /// JSON file of Ext entries to overwrite, for mutation testing.
    #[arg(long)]
    pub ext_table: Option<PathBuf>,

    /// Run every claim group.
    #[arg(long)]
    pub all: bool,

    /// Claim group to run; repeatable.
    #[arg(long = "group")]
    pub groups: Vec<String>,

    /// Include wall-clock times in verification reports.
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VariantChoice {
    One(SeriesVariant),
    All,
}

impl VariantChoice {
    /// `All` expands to the three unbarred variants.
    pub fn variants(&self) -> Vec<SeriesVariant> {
        match self {
            VariantChoice::One(v) => vec![*v],
            VariantChoice::All => vec![
                SeriesVariant::Plus,
                SeriesVariant::Clus,
                SeriesVariant::Full,
            ],
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub n: usize,
    pub from: usize,
    pub orientation: OrientationChoice,
    pub variant: VariantChoice,
    pub series: Series,
    pub format: Format,
    pub limits: Limits,
    pub jobs: Option<usize>,
    pub rule: OrderingRule,
    pub ext_overrides: Vec<(Interval, Interval, u32)>,
    pub groups: Vec<ClaimGroup>,
    /// Groups were listed explicitly, so over-limit sizes are errors rather than skips.
    pub explicit_groups: bool,
    pub timings: bool,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExtFixture {
    overrides: Vec<ExtEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExtEntry {
    source: (usize, usize),
    target: (usize, usize),
    ext: u32,
}

fn read_ext_table(path: &PathBuf) -> Result<Vec<(Interval, Interval, u32)>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| {
        CliError::flag(
            "--ext-table",
            format!("cannot read {}: {e}", path.display()),
        )
    })?;
    let fixture: ExtFixture = serde_json::from_str(&text)
        .map_err(|e| CliError::flag("--ext-table", format!("{}: {e}", path.display())))?;
    fixture
        .overrides
        .into_iter()
        .map(|e| {
            let a = Interval::new(e.source.0, e.source.1)
                .map_err(|err| CliError::flag("--ext-table", err.to_string()))?;
            let b = Interval::new(e.target.0, e.target.1)
                .map_err(|err| CliError::flag("--ext-table", err.to_string()))?;
            Ok((a, b, e.ext))
        })
        .collect()
}

fn parse_orientation(raw: &str, n: usize, ranged: bool) -> Result<OrientationChoice, CliError> {
    match raw {
        "directed" => Ok(OrientationChoice::Directed),
        "all" => Ok(OrientationChoice::All),
        bits => {
            if ranged {
                return Err(CliError::flag(
                    "--orientation",
                    "explicit bits need a single size; drop --from",
                ));
            }
            Quiver::from_bits(n, bits)
                .map_err(|e| CliError::flag("--orientation", e.to_string()))?;
            Ok(OrientationChoice::Bits(bits.to_string()))
        }
    }
}

fn parse_variant(raw: Option<&str>, command: Command) -> Result<VariantChoice, CliError> {
    let default = match command {
        Command::Volume => "full",
        _ => "all",
    };
    match raw.unwrap_or(default) {
        "all" if command == Command::Volume => {
            Err(CliError::flag("--variant", "volume needs a single variant"))
        }
        "all" => Ok(VariantChoice::All),
        other => other
            .parse::<SeriesVariant>()
            .map(VariantChoice::One)
            .map_err(|_| {
                CliError::flag(
                    "--variant",
                    format!("unknown variant {other:?}; expected plus, clus, full, barred_plus, barred_clus, barred_full or all"),
                )
            }),
    }
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let n = match (cli.n, cli.command) {
            (Some(n), _) => n,
            (None, Command::Report) => 5,
            (None, _) => return Err(CliError::flag("--n", "required for this command")),
        };
        if n == 0 {
            return Err(CliError::flag("--n", "must be at least 1"));
        }
        let from = match (cli.from, cli.command) {
            (Some(f), Command::Verify | Command::Report) => {
                if f == 0 {
                    return Err(CliError::flag("--from", "must be at least 1"));
                }
                f
            }
            (Some(_), _) => {
                return Err(CliError::flag(
                    "--from",
                    "only verify and report take a range",
                ))
            }
            (None, Command::Report) => 1,
            (None, _) => n,
        };
        let ranged = from != n;
        let orientation = parse_orientation(&cli.orientation, n, ranged)?;
        let variant = parse_variant(cli.variant.as_deref(), cli.command)?;
        if cli.jobs == Some(0) {
            return Err(CliError::flag("--jobs", "must be at least 1"));
        }
        if cli.limit_dim == 0 {
            return Err(CliError::flag("--limit-dim", "must be at least 1"));
        }
        let explicit_groups = !cli.groups.is_empty();
        let groups = if cli.all || !explicit_groups {
            if cli.command == Command::Verify && !cli.all {
                return Err(CliError::flag(
                    "--group",
                    "choose claim groups with --group or run all of them with --all",
                ));
            }
            ClaimGroup::ALL.to_vec()
        } else {
            cli.groups
                .iter()
                .map(|g| {
                    g.parse::<ClaimGroup>().map_err(|_| {
                        let names: Vec<&str> = ClaimGroup::ALL.iter().map(|g| g.name()).collect();
                        CliError::flag(
                            "--group",
                            format!("unknown group {g:?}; expected one of {}", names.join(", ")),
                        )
                    })
                })
                .collect::<Result<_, _>>()?
        };
        let ext_overrides = match &cli.ext_table {
            Some(p) => read_ext_table(p)?,
            None => Vec::new(),
        };
        let limits = Limits {
            geometry: cli.limit_dim,
            override_limits: cli.override_limits,
            ..Limits::default()
        };
        let rule = match cli.ordering {
            Ordering::Hom => OrderingRule::Hom,
            Ordering::Nesting => OrderingRule::Nesting,
        };
        Ok(Self {
            command: cli.command,
            n,
            from,
            orientation,
            variant,
            series: cli.series,
            format: cli.format,
            limits,
            jobs: cli.jobs,
            rule,
            ext_overrides,
            groups,
            explicit_groups: explicit_groups && !cli.all,
            timings: cli.timings,
            out: cli.out,
        })
    }
}
