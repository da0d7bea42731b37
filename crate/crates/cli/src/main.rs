use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use cdtorus::report::{run_verification, VerificationReport, DEFAULT_CASES};
use cdtorus::{seed_from_env, RankPolicy, ResourceGuard, VerifyOptions};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

mod table;

#[derive(Parser)]
#[command(
    name = "cdtorus",
    version,
    about = "Verify endomorphism ranks of Cayley-Dickson tori"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite and print a table per case.
    Verify {
        /// Single case p (q defaults to 0).
        #[arg(long)]
        p: Option<usize>,
        /// Single case q (p defaults to 0).
        #[arg(long)]
        q: Option<usize>,
        #[command(flatten)]
        run: RunArgs,
        /// Also write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Dump a structure table (R, C, H, O or B(p,q)) as CSV.
    Table {
        algebra: String,
        #[arg(long, default_value_t = ResourceGuard::default().max_real_dim)]
        max_dim: usize,
    },
    /// Run the given cases and write the JSON report array.
    Report {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, short)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Case as `p,q`; repeatable.
    #[arg(long = "case", value_parser = parse_case)]
    cases: Vec<(usize, usize)>,
    /// Largest real dimension of B(p,q) allowed.
    #[arg(long, default_value_t = ResourceGuard::default().max_real_dim)]
    max_dim: usize,
    /// Prime for modular rank computations.
    #[arg(long)]
    mod_prime: Option<u64>,
    /// Force exact rational elimination everywhere.
    #[arg(long, conflicts_with = "mod_prime")]
    exact: bool,
    /// Write zero for every `millis` field.
    #[arg(long)]
    no_timing: bool,
    /// Cases run concurrently.
    #[arg(long, default_value_t = 2)]
    workers: usize,
}

fn parse_case(s: &str) -> Result<(usize, usize), String> {
    let (p, q) = s
        .split_once(',')
        .ok_or_else(|| format!("expected p,q, got {s:?}"))?;
    let p = p
        .trim()
        .parse()
        .map_err(|e| format!("bad p in {s:?}: {e}"))?;
    let q = q
        .trim()
        .parse()
        .map_err(|e| format!("bad q in {s:?}: {e}"))?;
    Ok((p, q))
}

impl RunArgs {
    fn options(&self) -> Result<VerifyOptions> {
        let seed = seed_from_env();
        let policy = if self.exact {
            RankPolicy::exact()
        } else {
            let policy = RankPolicy::seeded(seed);
            match self.mod_prime {
                Some(p) => policy.with_prime(p),
                None => policy,
            }
        };
        policy.validate().context("invalid --mod-prime")?;
        Ok(VerifyOptions {
            guard: ResourceGuard {
                max_real_dim: self.max_dim,
            },
            policy,
            timing: !self.no_timing,
            seed,
            ..Default::default()
        })
    }

    fn run(&self, cases: &[(usize, usize)]) -> Result<Vec<VerificationReport>> {
        let opts = self.options()?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers.max(1))
            .build()?;
        Ok(pool.install(|| {
            cases
                .par_iter()
                .map(|&(p, q)| run_verification(p, q, &opts))
                .collect()
        }))
    }
}

fn print_report(r: &VerificationReport) {
    let status = if r.passed() { "PASS" } else { "FAIL" };
    println!("B({},{})  [{status}]", r.p, r.q);
    let w_name = r.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let w_exp = r
        .checks
        .iter()
        .map(|c| c.expected.chars().count())
        .max()
        .unwrap_or(0);
    for c in &r.checks {
        let mark = if c.pass { "ok  " } else { "FAIL" };
        let pad = w_exp.saturating_sub(c.expected.chars().count());
        println!(
            "  {mark} {:<w_name$}  {}{}  {}  ({} ms)",
            c.name,
            c.expected,
            " ".repeat(pad),
            c.actual,
            c.millis
        );
    }
}

fn to_json(reports: &[VerificationReport]) -> Result<String> {
    let mut s = serde_json::to_string_pretty(reports)?;
    s.push('\n');
    Ok(s)
}

fn finish(reports: &[VerificationReport]) -> ExitCode {
    let mut ok = true;
    for r in reports {
        for c in r.failures() {
            ok = false;
            eprintln!(
                "B({},{}): check {} failed: expected {}, got {}",
                r.p, r.q, c.name, c.expected, c.actual
            );
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Verify { p, q, run, json } => {
            let mut cases = run.cases.clone();
            if p.is_some() || q.is_some() {
                cases.insert(0, (p.unwrap_or(0), q.unwrap_or(0)));
            }
            if cases.is_empty() {
                cases = DEFAULT_CASES.to_vec();
            }
            let reports = run.run(&cases)?;
            for r in &reports {
                print_report(r);
            }
            if let Some(path) = json {
                fs::write(&path, to_json(&reports)?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(finish(&reports))
        }
        Command::Table { algebra, max_dim } => {
            let t = table::parse_algebra(
                &algebra,
                &ResourceGuard {
                    max_real_dim: max_dim,
                },
            )?;
            print!("{}", table::table_csv(&t));
            Ok(ExitCode::SUCCESS)
        }
        Command::Report { run, out } => {
            let reports = run.run(&run.cases)?;
            if out.is_dir() {
                bail!("{} is a directory", out.display());
            }
            fs::write(&out, to_json(&reports)?)
                .with_context(|| format!("writing {}", out.display()))?;
            Ok(finish(&reports))
        }
    }
}
