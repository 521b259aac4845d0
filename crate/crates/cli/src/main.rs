use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};
use keymine::commands::{evaluate_layouts, write_comparison};
use keymine::{
    cmd_analyze, cmd_mine, cmd_optimize, seed_fixtures, AlphabetSource, GeometrySource, MinSupport,
    RunConfig,
};
use keymine_core::corpus::Normalization;
use keymine_core::layout::{AssociationMode, DecisionPolicy};

#[derive(Parser)]
#[command(
    name = "keymine",
    version,
    about = "Corpus-driven two-hand keyboard layout toolkit"
)]
#[command(args_conflicts_with_subcommands = true, arg_required_else_help = true)]
struct Cli {
    /// Write the example transaction file and test geometry into DIR and exit.
    #[arg(long, value_name = "DIR")]
    seed_fixtures: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Count monograms, digrams and trigrams; write frequency tables.
    Analyze(CommonArgs),
    /// Mine frequent itemsets and association rules.
    Mine {
        #[command(flatten)]
        common: CommonArgs,
        /// Transaction file to mine instead of the corpus.
        #[arg(long)]
        transactions: Option<PathBuf>,
        /// Absolute count (`2`) or percentage of transactions (`22%`).
        #[arg(long, default_value = "2")]
        min_support: MinSupport,
        #[arg(long, default_value_t = 0.0)]
        min_confidence: f64,
    },
    /// Partition the alphabet across hands and place it on keys.
    Optimize {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        geometry: GeometryArg,
        #[arg(long, value_enum, default_value_t = Association::Directed)]
        association: Association,
        #[arg(long, value_enum, default_value_t = Policy::PaperLiteral)]
        policy: Policy,
        /// Name recorded in the layout file.
        #[arg(long, default_value = "optimized")]
        name: String,
    },
    /// Score layout files against the corpus and print a comparison.
    Evaluate {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        geometry: GeometryArg,
        #[arg(required = true)]
        layouts: Vec<PathBuf>,
    },
}

#[derive(Args)]
struct CommonArgs {
    /// Corpus file or directory; repeat for several.
    #[arg(long)]
    corpus: Vec<PathBuf>,
    /// `bangla` for the built-in alphabet, or an alphabet file.
    #[arg(long, default_value = "bangla")]
    alphabet: AlphabetSource,
    /// Skip NFC normalization.
    #[arg(long)]
    no_normalize: bool,
    #[arg(long, short, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct GeometryArg {
    /// Built-in geometry name or geometry JSON file.
    #[arg(long, default_value = "default-3row")]
    geometry: GeometrySource,
}

#[derive(Clone, Copy, ValueEnum)]
enum Association {
    Directed,
    Symmetric,
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    PaperLiteral,
    Majority,
}

impl CommonArgs {
    fn config(self) -> RunConfig {
        RunConfig {
            corpus: self.corpus,
            alphabet: self.alphabet,
            normalization: if self.no_normalize {
                Normalization::None
            } else {
                Normalization::Nfc
            },
            out_dir: self.out,
            ..Default::default()
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    if let Some(dir) = cli.seed_fixtures {
        for p in seed_fixtures(&dir)? {
            println!("{}", p.display());
        }
        return Ok(());
    }
    let Some(command) = cli.command else {
        anyhow::bail!("no command given");
    };
    let written = match command {
        Command::Analyze(common) => cmd_analyze(&common.config())?,
        Command::Mine {
            common,
            transactions,
            min_support,
            min_confidence,
        } => {
            let config = RunConfig {
                min_support,
                min_confidence,
                ..common.config()
            };
            cmd_mine(&config, transactions.as_deref())?
        }
        Command::Optimize {
            common,
            geometry,
            association,
            policy,
            name,
        } => {
            let config = RunConfig {
                geometry: geometry.geometry,
                association: match association {
                    Association::Directed => AssociationMode::Directed,
                    Association::Symmetric => AssociationMode::Symmetric,
                },
                policy: match policy {
                    Policy::PaperLiteral => DecisionPolicy::PaperLiteral,
                    Policy::Majority => DecisionPolicy::Majority,
                },
                ..common.config()
            };
            cmd_optimize(&config, &name)?
        }
        Command::Evaluate {
            common,
            geometry,
            layouts,
        } => {
            let config = RunConfig {
                geometry: geometry.geometry,
                ..common.config()
            };
            let comparison = evaluate_layouts(&config, &layouts)?;
            print!("{}", comparison.to_table());
            write_comparison(&comparison, &config.out_dir)?
        }
    };
    for p in written {
        log::info!("wrote {}", p.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
