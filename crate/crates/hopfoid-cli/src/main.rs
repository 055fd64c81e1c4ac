use clap::{Parser, Subcommand, ValueEnum};
use hopfoid::twist::Form;
use hopfoid_cli::{cmd_antipode, cmd_coproduct, cmd_star, cmd_twist, cmd_verify, Format, Report, RunConfig};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hopfoid", version, about = "Exact twist data and checks for the Heisenberg double of a Lie algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// Catalog name (abelian(n), heisenberg3, su2, kappa(n)) or a JSON file
    algebra: String,
    /// Truncation order K in momentum degree
    #[arg(long, default_value_t = 4)]
    order: u32,
    /// Polynomial degree D of the ideal-membership tests
    #[arg(long, default_value_t = 3)]
    degree: u32,
    /// Restrict to one twist form
    #[arg(long, value_parser = parse_form)]
    form: Option<Form>,
    #[arg(long, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,
    /// Seed of the random test pairs
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

fn parse_form(s: &str) -> Result<Form, String> {
    s.parse()
}

#[derive(Subcommand)]
enum Command {
    /// Run every check; exit status 1 if any fails
    Verify(Common),
    /// Star product of two polynomials, from U(g) and from each twist
    Star {
        #[command(flatten)]
        common: Common,
        f: String,
        g: String,
    },
    /// Deformed coproduct of a momentum generator by both formulas
    Coproduct {
        #[command(flatten)]
        common: Common,
        /// Generator such as d1; all generators when omitted
        generator: Option<String>,
    },
    /// Twist representatives, inverses and their checks
    Twist(Common),
    /// The antipode pipeline
    Antipode(Common),
}

fn config(c: &Common) -> RunConfig {
    RunConfig {
        algebra: c.algebra.clone(),
        order: c.order,
        degree: c.degree,
        form: c.form,
        format: match c.format {
            OutFormat::Text => Format::Text,
            OutFormat::Json => Format::Json,
        },
        seed: c.seed,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cfg, result) = match &cli.command {
        Command::Verify(c) => (config(c), cmd_verify(&config(c))),
        Command::Star { common, f, g } => (config(common), cmd_star(&config(common), f, g)),
        Command::Coproduct { common, generator } => (config(common), cmd_coproduct(&config(common), generator.as_deref())),
        Command::Twist(c) => (config(c), cmd_twist(&config(c))),
        Command::Antipode(c) => (config(c), cmd_antipode(&config(c))),
    };
    match result {
        Ok(report) => emit(&cli.command, &cfg, &report),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(cmd: &Command, cfg: &RunConfig, report: &Report) -> ExitCode {
    if let (Command::Star { .. }, Format::Text) = (cmd, cfg.format) {
        // the product comes first so that scripts can read one line
        println!("{}", report.sections[0].values["oracle"]);
    }
    print!("{}", report.render(cfg.format));
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        if let Some(s) = report.first_failure() {
            eprintln!("FAIL in section {}", s.name);
        }
        ExitCode::from(1)
    }
}
