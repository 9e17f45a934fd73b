use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mw_opinion_cli::commands::{cmd_classical, cmd_find_ne, cmd_max_joint, cmd_payoff, Output};
use mw_opinion_cli::config::{FileConfig, Overrides, RunConfig, DEFAULT_SEED};
use mw_opinion_cli::report::{fmt6, render_table};
use mw_opinion_cli::reproduce::run_claims;
use mw_opinion_cli::{CliError, EXIT_CLAIM_FAILURE, EXIT_USAGE};
use serde_json::json;

/// Classical and Marinatto-Weber quantum opinion games.
#[derive(Debug, Parser)]
#[command(name = "mw-opinion", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Payoff tables, pure Nash equilibria, zero-sum and Pareto analysis.
    Classical,
    /// Expected payoffs of a quantum game for one strategy pair.
    Payoff,
    /// Equilibria among pure-operator profiles and their families.
    FindNe,
    /// Maximum joint payoff of quantum GM3, analytic and grid.
    MaxJoint,
    /// Check every quantitative claim and print a pass/fail table.
    ReproducePaper,
}

#[derive(Debug, Args)]
struct Opts {
    /// TOML file with model, [params], [state], [strategies], [options].
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// GM1, GM2 or GM3.
    #[arg(long, global = true)]
    model: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    b: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    c: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    d: Option<f64>,
    /// basis-ij, entangled-11-33, uniform, random, or a file of [re, im] amplitudes.
    #[arg(long, global = true)]
    state: Option<String>,
    /// A's weight on I (two-level) or on C (three-level).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pa: Option<f64>,
    /// A's weight on D (three-level only).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pa1: Option<f64>,
    /// B's weight on I (two-level) or on C (three-level).
    #[arg(long, global = true, allow_negative_numbers = true)]
    qb: Option<f64>,
    /// B's weight on D (three-level only).
    #[arg(long, global = true, allow_negative_numbers = true)]
    qb1: Option<f64>,
    /// Grid resolution, N or 1/N.
    #[arg(long, global = true)]
    grid: Option<String>,
    /// Minimum number of random draws per claim.
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Print a JSON document instead of tables.
    #[arg(long, global = true)]
    json: bool,
    /// Rescale given amplitudes to unit norm.
    #[arg(long, global = true)]
    normalize: bool,
}

impl Opts {
    fn overrides(&self) -> Overrides {
        Overrides {
            model: self.model.clone(),
            a: self.a,
            b: self.b,
            c: self.c,
            d: self.d,
            state: self.state.clone(),
            pa: self.pa,
            pa1: self.pa1,
            qb: self.qb,
            qb1: self.qb1,
            grid: self.grid.clone(),
            samples: self.samples,
            seed: self.seed,
            normalize: self.normalize,
        }
    }

    fn file(&self) -> Result<FileConfig, CliError> {
        match &self.config {
            Some(path) => FileConfig::load(path),
            None => Ok(FileConfig::default()),
        }
    }
}

fn emit(out: &Output, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(&out.json).expect("JSON values serialize"));
    } else {
        print!("{}", out.text);
    }
}

fn reproduce(opts: &Opts) -> Result<bool, CliError> {
    let file = opts.file()?;
    let seed = opts.seed.or(file.options.seed).unwrap_or(DEFAULT_SEED);
    let samples = opts.samples.or(file.options.samples);
    let claims = run_claims(seed, samples)?;
    let all_pass = claims.iter().all(|c| c.passed());

    let json = json!({
        "command": "reproduce-paper",
        "seed": seed,
        "all_pass": all_pass,
        "claims": claims.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
    });
    let rows: Vec<Vec<String>> = claims
        .iter()
        .map(|c| {
            vec![
                c.criterion.to_string(),
                c.claim_id.clone(),
                if c.passed() { "pass" } else { "FAIL" }.to_string(),
                fmt6(c.worst_error()),
                fmt6(c.tolerance),
            ]
        })
        .collect();
    let passed = claims.iter().filter(|c| c.passed()).count();
    let text = format!(
        "reproduce-paper (seed {seed})\n\n{}\n{passed}/{} claims pass\n",
        render_table(&["#", "claim", "status", "worst |obs - exp|", "tolerance"], &rows),
        claims.len()
    );
    emit(&Output { text, json }, opts.json);
    Ok(all_pass)
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    if let Command::ReproducePaper = cli.command {
        return reproduce(&cli.opts);
    }
    let cfg = RunConfig::resolve(cli.opts.file()?, cli.opts.overrides())?;
    let out = match cli.command {
        Command::Classical => cmd_classical(&cfg)?,
        Command::Payoff => cmd_payoff(&cfg)?,
        Command::FindNe => cmd_find_ne(&cfg)?,
        Command::MaxJoint => cmd_max_joint(&cfg)?,
        Command::ReproducePaper => unreachable!("handled above"),
    };
    emit(&out, cli.opts.json);
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE as u8 } else { 0 };
            e.print().ok();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_CLAIM_FAILURE as u8),
        Err(e) => {
            eprintln!("mw-opinion: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
