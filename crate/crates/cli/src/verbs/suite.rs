use clap::Args;
use frcalc_core::battery::{SuiteConfig, BATTERIES, DEFAULT_PAIRS};

use super::Ctx;
use crate::io::positive;
use crate::report::{CliError, CliResult, Outcome};

#[derive(Debug, Args)]
pub struct SuiteArgs {
    /// Run a single (k, l) pair instead of the default three
    #[arg(long, value_parser = positive, requires = "l")]
    k: Option<usize>,
    #[arg(long, value_parser = positive, requires = "k")]
    l: Option<usize>,
    /// Criterion numbers to run (default: all)
    #[arg(long, value_delimiter = ',')]
    only: Vec<usize>,
}

pub fn run(args: &SuiteArgs, ctx: &Ctx) -> CliResult<Outcome> {
    let pairs = match (args.k, args.l) {
        (Some(k), Some(l)) => vec![(k, l)],
        _ => DEFAULT_PAIRS.to_vec(),
    };
    if let Some(bad) = args.only.iter().find(|&&i| i == 0 || i > BATTERIES.len()) {
        return Err(CliError::Usage(format!("no criterion {bad}; valid are 1..={}", BATTERIES.len())));
    }
    let cfg = SuiteConfig::new(pairs, ctx.seed, ctx.tol);
    let reports: Vec<_> = BATTERIES
        .iter()
        .enumerate()
        .filter(|(i, _)| args.only.is_empty() || args.only.contains(&(i + 1)))
        .map(|(_, b)| b(&cfg))
        .collect();
    let mut out = Outcome::new(&reports);
    for r in &reports {
        for (name, &v) in &r.residuals {
            let key = format!("c{}.{name}", r.id);
            out = match r.thresholds.get(name) {
                Some(&b) => out.check(&key, v, b),
                None => out.info(&key, v),
            };
        }
        out = out.verdict(r.pass);
    }
    Ok(out)
}
