//! `chanprob`: build joint states from CSV tables and answer inference
//! queries over them.

use std::path::PathBuf;
use std::process::ExitCode;

use chanprob::{CrossoverPath, GaussianFeatureSpec, Mask};
use chanprob_cli::query::{self, QueryOpts};
use chanprob_cli::render::{OutputFormat, DEFAULT_PRECISION};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "chanprob",
    about = "Joint states from data tables: marginals, conditionals, inversion, conditioning and naive Bayes",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// CSV file with a header row
    csv: PathBuf,

    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Ket)]
    format: FormatArg,

    /// Digits after the decimal point in ket output
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: usize,

    /// Tolerance override for the query's numeric checks
    #[arg(long)]
    eps: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Ket,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PathArg {
    Backward,
    Joint,
    Forward,
}

#[derive(Subcommand)]
enum Command {
    /// Marginal of the joint state: wires with mask bit 1 are kept
    Marginal {
        #[command(flatten)]
        common: CommonArgs,
        /// Wire mask, e.g. 1,0,0,0,1
        #[arg(long)]
        mask: String,
    },
    /// Conditional channel from the in-wires to the out-wires
    Extract {
        #[command(flatten)]
        common: CommonArgs,
        /// Output wires of the channel
        #[arg(long = "out-mask")]
        out_mask: String,
        /// Conditioning (input) wires of the channel
        #[arg(long = "in-mask")]
        in_mask: String,
    },
    /// Bayesian inversion of the extracted channel: out-wires become the
    /// channel input, in-wires the output
    Invert {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long = "out-mask")]
        out_mask: String,
        #[arg(long = "in-mask")]
        in_mask: String,
    },
    /// Disintegrate along a mask: bit 1 marks conditioning wires
    Disintegrate {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        mask: String,
    },
    /// Condition the joint state by an effect
    Condition {
        #[command(flatten)]
        common: CommonArgs,
        /// Wires the effect reads (default: all)
        #[arg(long)]
        mask: Option<String>,
        /// Effect text: label:value pairs `t:1,f:0` or an event `{t}`
        #[arg(long)]
        effect: String,
    },
    /// Posterior on the masked wires after observing an effect on the rest
    Crossover {
        #[command(flatten)]
        common: CommonArgs,
        /// Wires to keep (the effect reads the others)
        #[arg(long)]
        mask: String,
        #[arg(long)]
        effect: String,
        /// Which of the three equivalent computations to run
        #[arg(long, value_enum, default_value_t = PathArg::Joint)]
        path: PathArg,
    },
    /// Conditional independence of two wire groups given a third
    Ci {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Conditioning wires (omit for plain independence)
        #[arg(long)]
        z: Option<String>,
    },
    /// Fit a naive Bayes model and print it
    Fit {
        #[command(flatten)]
        common: CommonArgs,
        /// Class column (default: last column)
        #[arg(long)]
        class: Option<String>,
        /// Treat numeric feature columns as Gaussians
        #[arg(long)]
        hybrid: bool,
        /// Gaussian parameter override, repeatable:
        /// feature=Temperature;class=yes;mean=73;stddev=6.2
        #[arg(long = "gaussian")]
        gaussian: Vec<String>,
    },
    /// Classify an observation with a naive Bayes model
    Classify {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated feature values in column order, class excluded
        observation: String,
        #[arg(long)]
        class: Option<String>,
        #[arg(long)]
        hybrid: bool,
        #[arg(long = "gaussian")]
        gaussian: Vec<String>,
    },
}

fn opts(common: &CommonArgs) -> QueryOpts {
    QueryOpts {
        format: match common.format {
            FormatArg::Ket => OutputFormat::Ket,
            FormatArg::Json => OutputFormat::Json,
        },
        precision: common.precision,
        eps: common.eps,
    }
}

fn parse_mask(text: &str) -> Result<Mask, chanprob::Error> {
    text.parse()
}

fn parse_overrides(texts: &[String]) -> Result<Vec<GaussianFeatureSpec>, chanprob::Error> {
    texts.iter().map(|t| t.parse()).collect()
}

fn run(cli: Cli) -> Result<String, Box<dyn std::error::Error>> {
    Ok(match cli.command {
        Command::Marginal { common, mask } => {
            query::run_marginal(&common.csv, &parse_mask(&mask)?, opts(&common))?
        }
        Command::Extract {
            common,
            out_mask,
            in_mask,
        } => query::run_extract(
            &common.csv,
            &parse_mask(&out_mask)?,
            &parse_mask(&in_mask)?,
            opts(&common),
        )?,
        Command::Invert {
            common,
            out_mask,
            in_mask,
        } => query::run_invert(
            &common.csv,
            &parse_mask(&out_mask)?,
            &parse_mask(&in_mask)?,
            opts(&common),
        )?,
        Command::Disintegrate { common, mask } => {
            query::run_disintegrate(&common.csv, &parse_mask(&mask)?, opts(&common))?
        }
        Command::Condition {
            common,
            mask,
            effect,
        } => {
            let mask = mask.as_deref().map(parse_mask).transpose()?;
            query::run_condition(&common.csv, mask.as_ref(), &effect, opts(&common))?
        }
        Command::Crossover {
            common,
            mask,
            effect,
            path,
        } => {
            let path_choice = match path {
                PathArg::Backward => CrossoverPath::Backward,
                PathArg::Joint => CrossoverPath::JointThenMarginal,
                PathArg::Forward => CrossoverPath::Forward,
            };
            query::run_crossover(
                &common.csv,
                &parse_mask(&mask)?,
                &effect,
                path_choice,
                opts(&common),
            )?
        }
        Command::Ci { common, x, y, z } => {
            let z = z.as_deref().map(parse_mask).transpose()?;
            query::run_ci(
                &common.csv,
                &parse_mask(&x)?,
                &parse_mask(&y)?,
                z.as_ref(),
                opts(&common),
            )?
        }
        Command::Fit {
            common,
            class,
            hybrid,
            gaussian,
        } => query::run_fit(
            &common.csv,
            class.as_deref(),
            hybrid,
            &parse_overrides(&gaussian)?,
            opts(&common),
        )?,
        Command::Classify {
            common,
            observation,
            class,
            hybrid,
            gaussian,
        } => query::run_classify(
            &common.csv,
            class.as_deref(),
            hybrid,
            &parse_overrides(&gaussian)?,
            &observation,
            opts(&common),
        )?,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            println!("{output}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            let code = if let Some(cli_err) = err.downcast_ref::<chanprob_cli::CliError>() {
                cli_err.exit_code()
            } else if let Some(core_err) = err.downcast_ref::<chanprob::Error>() {
                if core_err.is_math() {
                    3
                } else {
                    2
                }
            } else {
                2
            };
            ExitCode::from(code as u8)
        }
    }
}
