use setmax_core::audit::BruteOptions;
use setmax_core::format;
use setmax_core::report::{run as run_report, RunOptions};
use setmax_core::Algorithm;

use crate::cli::SolveArgs;
use crate::{emit, CliError, CliResult};

pub fn parse_algorithms(names: &[String]) -> CliResult<Vec<Algorithm>> {
    names
        .iter()
        .map(|name| {
            Algorithm::parse(name.trim()).ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown algorithm {name:?} (expected ext-super, ext-dep, simple, guess or brute)"
                ))
            })
        })
        .collect()
}

pub fn run(args: SolveArgs) -> CliResult<()> {
    let algorithms = parse_algorithms(&args.algorithms)?;
    let inst = format::load(&args.instance)?;
    let opts = RunOptions {
        opt: args.opt && !args.no_opt,
        audit: args.audit,
        brute: BruteOptions {
            cap: args.brute_cap,
            no_bound: false,
        },
    };
    let report = run_report(&inst, &algorithms, &opts)?;
    emit(args.output.as_deref(), &report.to_json())?;
    if args.output.is_some() {
        print!("{}", report.summary());
    } else {
        eprint!("{}", report.summary());
    }
    if report.passed {
        Ok(())
    } else {
        Err(CliError::Falsified(
            "a theoretical bound or audit failed; see the report".into(),
        ))
    }
}
