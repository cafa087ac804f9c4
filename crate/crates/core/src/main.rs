use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use galois_cert::cli::{analyze, render_json, render_text, AnalysisConfig, OutputFormat};
use galois_cert::selftest;

#[derive(Parser)]
#[command(
    name = "galois-cert",
    version,
    about = "Certified splitting fields and Galois correspondences"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a polynomial of degree 2 to 4
    Analyze {
        /// Polynomial, e.g. "x^3 - 2"
        poly: String,
        /// Starting precision in bits
        #[arg(long, default_value_t = 128, value_parser = clap::value_parser!(u32).range(64..))]
        precision: u32,
        /// Largest weight tried in the resolvent search
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
        norm_bound: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Print the arrangement array for each subgroup
        #[arg(long)]
        array: bool,
        /// Explicit resolvent weights, e.g. 0,1,2
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        spec: Option<Vec<i64>>,
    },
    /// Run the built-in acceptance checks
    Selftest,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match args.command {
        Command::Analyze {
            poly,
            precision,
            norm_bound,
            format,
            array,
            spec,
        } => {
            let cfg = AnalysisConfig {
                precision_bits: precision,
                norm_bound,
                format: match format {
                    Format::Text => OutputFormat::Text,
                    Format::Json => OutputFormat::Json,
                },
                emit_array: array,
                seed_spec: spec,
            };
            match analyze(&poly, &cfg) {
                Ok(a) => {
                    match cfg.format {
                        OutputFormat::Text => print!("{}", render_text(&a)),
                        OutputFormat::Json => {
                            println!(
                                "{}",
                                serde_json::to_string_pretty(&render_json(&a)).expect("valid json")
                            )
                        }
                    }
                    if a.report.all_pass() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(4)
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(e.exit_code() as u8)
                }
            }
        }
        Command::Selftest => {
            let results = selftest::run_all();
            for r in &results {
                println!("{r}");
            }
            if results.iter().all(|r| r.pass) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            }
        }
    }
}
