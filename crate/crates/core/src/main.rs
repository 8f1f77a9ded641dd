use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use curve_reflexive::pipeline::{emit_report, parse_poly, run_until, RunConfig, Stage};
use curve_reflexive::Error;

#[derive(Parser)]
#[command(
    version,
    about = "Certify totally reflexive modules over section rings of hyperelliptic curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the curve and configuration only
    Validate(RunArgs),
    /// Find a divisor of degree g+1 with two sections and no base points
    Search(RunArgs),
    /// Build the graded ring, module and canonical module and check their shape
    Build(RunArgs),
    /// Verify the periodic resolution, its dual, Ext vanishing and the type
    Verify(RunArgs),
    /// Full pipeline including the artinian reduction
    Run(RunArgs),
    /// Full pipeline on y² = x⁵ + x + 1 over F_101
    #[command(name = "demo-g2")]
    DemoG2(Overrides),
    /// Full pipeline on y² = x⁷ + x + 1 over F_101
    #[command(name = "demo-g3")]
    DemoG3(Overrides),
}

#[derive(Args)]
struct RunArgs {
    /// `key = value` configuration file
    config: Option<PathBuf>,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Args)]
struct Overrides {
    #[arg(long)]
    prime: Option<u64>,
    /// Polynomial in x, or ascending coefficients separated by commas
    #[arg(long)]
    f: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    degree_bound: Option<usize>,
    #[arg(long)]
    window: Option<usize>,
    /// Also require h¹(D - P) = 0 at every rational place P
    #[arg(long)]
    strong: bool,
    /// Write the JSON certificate here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Overrides {
    fn apply(self, mut cfg: RunConfig) -> Result<RunConfig, Error> {
        if let Some(p) = self.prime {
            cfg.p = p;
        }
        if let Some(f) = self.f {
            cfg.f = parse_poly(&f)?;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(n) = self.degree_bound {
            cfg.degree_bound = n;
        }
        if let Some(w) = self.window {
            cfg.window = w;
        }
        cfg.strong |= self.strong;
        if self.out.is_some() {
            cfg.output = self.out;
        }
        Ok(cfg)
    }
}

fn load(args: RunArgs) -> Result<RunConfig, Error> {
    let base = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            RunConfig::parse(&text)?
        }
        None => {
            let (Some(p), Some(_)) = (args.overrides.prime, &args.overrides.f) else {
                return Err(Error::Config(
                    "give a config file or both --prime and --f".into(),
                ));
            };
            RunConfig::new(p, Vec::new())
        }
    };
    args.overrides.apply(base)
}

fn execute(cfg: RunConfig, last: Stage) -> Result<i32, Error> {
    let doc = run_until(&cfg, last)?;
    match &cfg.output {
        Some(path) => emit_report(&doc, path)?,
        None => print!("{}", doc.to_canonical_json()),
    }
    eprintln!("{}", doc.verdict);
    Ok(doc.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let job = match cli.command {
        Command::Validate(a) => load(a).map(|c| (c, Stage::Validate)),
        Command::Search(a) => load(a).map(|c| (c, Stage::Search)),
        Command::Build(a) => load(a).map(|c| (c, Stage::Build)),
        Command::Verify(a) => load(a).map(|c| (c, Stage::Canonical)),
        Command::Run(a) => load(a).map(|c| (c, Stage::Artinian)),
        Command::DemoG2(o) => o.apply(RunConfig::demo_g2()).map(|c| (c, Stage::Artinian)),
        Command::DemoG3(o) => o.apply(RunConfig::demo_g3()).map(|c| (c, Stage::Artinian)),
    };
    let outcome = job.and_then(|(cfg, last)| execute(cfg, last));
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(e @ Error::Config(_)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
