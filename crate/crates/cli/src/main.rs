mod monoid;
mod report;
mod ring;
mod trop;

use clap::{Parser, Subcommand, ValueEnum};
use report::Report;
use std::process::ExitCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "thetactl",
    version,
    about = "Theta rings of log Calabi-Yau pairs from invariant tables"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for batches of products.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load and cross-check a scenario, then summarize it.
    Build(ring::ScenarioArgs),
    /// Cones of the skeleton.
    Skeleton(ring::ScenarioArgs),
    /// Integral points of the skeleton within a bound.
    Points(ring::PointsArgs),
    /// Outputs allowed by the forced pairings, per curve class.
    Candidates(ring::CandidatesArgs),
    /// Product of two theta functions, term by term with sources.
    Multiply(ring::MultiplyArgs),
    /// Associativity on one triple or on all triples within a bound.
    Assoc(ring::AssocArgs),
    /// Unit and commutativity of all products within a bound.
    Unit(ring::SampleArgs),
    /// Torus and degree gradings of all products within a bound.
    Grading(ring::SampleArgs),
    /// Filtration by a nonnegative divisor and its Rees generators.
    Rees(ring::ReesArgs),
    /// Find, evaluate and check polynomial presentations.
    #[command(subcommand)]
    Presentation(ring::PresentationCommand),
    /// Validation and splitting of tropical families.
    #[command(subcommand)]
    Trop(trop::TropCommand),
    /// Saturations, pushouts, integrality and lengths of toric monoids.
    #[command(subcommand)]
    Monoid(monoid::MonoidCommand),
}

pub struct Ctx {
    pub seed: u64,
    pub jobs: usize,
}

fn run(cli: Cli) -> anyhow::Result<Report> {
    let ctx = Ctx {
        seed: cli.seed,
        jobs: cli.jobs.max(1),
    };
    match cli.command {
        Command::Build(a) => ring::build(&a),
        Command::Skeleton(a) => ring::skeleton(&a),
        Command::Points(a) => ring::points(&a),
        Command::Candidates(a) => ring::candidates(&a),
        Command::Multiply(a) => ring::multiply(&a),
        Command::Assoc(a) => ring::assoc(&a),
        Command::Unit(a) => ring::unit(&a, &ctx),
        Command::Grading(a) => ring::grading(&a, &ctx),
        Command::Rees(a) => ring::rees(&a, &ctx),
        Command::Presentation(c) => ring::presentation(&c),
        Command::Trop(c) => trop::run(&c),
        Command::Monoid(c) => monoid::run(&c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            print!("{}", report.render(format));
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let mut msg = String::new();
            for cause in e.chain().map(|c| c.to_string()) {
                if !msg.contains(&cause) {
                    if !msg.is_empty() {
                        msg.push_str(": ");
                    }
                    msg.push_str(&cause);
                }
            }
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
