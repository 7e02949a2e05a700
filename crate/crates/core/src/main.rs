use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use ckc::approx::{self, Branch, SolveOptions, Trace};
use ckc::dist::{parse_rational, Dist};
use ckc::error::{Error, Result};
use ckc::gap_lab::{self, FlowCertificate};
use ckc::io::{instance_to_json, read_instance};
use ckc::model::{Instance, Neighborhoods};
use ckc::multicolor::{self, ClassRoles, MulticolorOptions};
use ckc::oracle;
use ckc::report::RunReport;

#[derive(Parser)]
#[command(name = "ckc", version, about = "Colorful k-center: approximation, exact search and gap instances")]
struct Cli {
    /// Worker threads for the guess loops (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the approximation on an instance file.
    Solve(SolveArgs),
    /// Compute the optimum by exhaustive search.
    Oracle { instance: PathBuf },
    /// Write a generated instance.
    Gen {
        #[command(subcommand)]
        family: Family,
        /// Instance output path (default: stdout).
        #[arg(long, global = true)]
        out: Option<PathBuf>,
        /// Certificate output path, for families that have one.
        #[arg(long, global = true)]
        cert_out: Option<PathBuf>,
    },
    /// Check a fractional certificate against the flow-strengthened LP.
    CheckFlow { instance: PathBuf, certificate: PathBuf },
}

#[derive(clap::Args)]
struct SolveArgs {
    instance: PathBuf,
    /// LP clustering alone, opening every positive center (may exceed k).
    #[arg(long)]
    pseudo: bool,
    /// Also run the exhaustive oracle and report the ratio.
    #[arg(long)]
    compare_oracle: bool,
    /// Try only this radius, e.g. "3/2" or "sqrt(2)".
    #[arg(long)]
    radius: Option<Dist>,
    /// Include work counters and the winning branch's intermediate sets.
    #[arg(long)]
    trace: bool,
    /// Try every radius even when LP1 is infeasible there.
    #[arg(long)]
    no_lp_gate: bool,
    /// Guess tuples per radius with three or more classes.
    #[arg(long, env = "CKC_GUESS_BUDGET")]
    omega_guess_budget: Option<u64>,
    /// Class (1-based) covered in full by the rounding; default the last.
    #[arg(long)]
    full_class: Option<usize>,
}

#[derive(Subcommand)]
enum Family {
    /// Groups whose balls encode a subset-sum question.
    SubsetSum {
        /// Comma-separated positive integers.
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<u64>,
        #[arg(long)]
        k: usize,
    },
    /// 2n four-point groups with a large LP gap (n odd).
    SosGap {
        #[arg(long)]
        n: usize,
        #[arg(long = "M", value_parser = parse_rational_arg)]
        far: ckc::dist::Rational,
    },
    /// 22 points on which the flow-strengthened LP keeps its gap.
    FlowGap {
        #[arg(long = "M", value_parser = parse_rational_arg)]
        far: ckc::dist::Rational,
    },
}

fn parse_rational_arg(text: &str) -> std::result::Result<ckc::dist::Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

enum Verdict {
    Yes,
    No,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(Verdict::Yes) => ExitCode::SUCCESS,
        Ok(Verdict::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Intractable(_) => 3,
        Error::ContractViolation(_) => 4,
        _ => 2,
    }
}

fn run(command: Command) -> Result<Verdict> {
    match command {
        Command::Solve(args) => solve(args),
        Command::Oracle { instance } => {
            let inst = read_instance(&instance)?;
            let start = Instant::now();
            let mut report = RunReport::new("oracle", &inst);
            let opt = oracle::exact_opt(&inst)?;
            eprintln!("optimal radius {} with centers {:?}", opt.radius, opt.solution.centers);
            report.set_solution(&inst, opt.solution.clone())?;
            report.set_oracle(&inst, opt)?;
            report.wall_ms = ms(start);
            emit(&report)?;
            Ok(Verdict::Yes)
        }
        Command::Gen { family, out, cert_out } => generate(family, out.as_deref(), cert_out.as_deref()),
        Command::CheckFlow { instance, certificate } => {
            let inst = read_instance(&instance)?;
            let cert: FlowCertificate = serde_json::from_str(&fs::read_to_string(&certificate)?)?;
            let start = Instant::now();
            let check = cert.check(&inst)?;
            let mut report = RunReport::new("check-flow", &inst);
            report.details = Some(serde_json::to_value(&check)?);
            report.wall_ms = ms(start);
            if check.ok {
                eprintln!("certificate satisfies every row");
            } else {
                eprintln!("certificate violates {} rows, first {}", check.violated.len(), check.violated[0]);
            }
            emit(&report)?;
            Ok(if check.ok { Verdict::Yes } else { Verdict::No })
        }
    }
}

fn solve(args: SolveArgs) -> Result<Verdict> {
    let inst = read_instance(&args.instance)?;
    let full_class = match args.full_class {
        Some(0) => return Err(Error::InvalidArgument("classes are numbered from 1".into())),
        other => other.map(|c| c - 1),
    };
    let opts = SolveOptions { radius: args.radius.clone(), lp_gate: !args.no_lp_gate };
    let trace = Trace::default();
    let start = Instant::now();
    let mut report = RunReport::new(if args.pseudo { "solve --pseudo" } else { "solve" }, &inst);
    let outcome = if args.pseudo {
        approx::solve_pseudo(&inst, &opts)?
    } else if inst.omega() == 2 && full_class.is_none() {
        approx::solve_with(&inst, &opts, &trace)?
    } else {
        let mopts = MulticolorOptions { solve: opts, full_class, guess_budget: args.omega_guess_budget };
        let out = multicolor::solve_omega_with(&inst, &mopts, &trace)?;
        report.budget_hit = Some(out.budget_hit);
        out.outcome
    };
    report.wall_ms = ms(start);
    if let Some(out) = &outcome {
        report.set_solution(&inst, out.solution.clone())?;
        report.guess_radius = Some(out.guess_radius.clone());
        report.branch = Some(out.branch.clone());
        if args.trace {
            report.details = branch_details(&inst, out, full_class)?;
        }
    }
    if args.trace {
        report.trace = Some(trace.counts());
    }
    if args.compare_oracle {
        report.set_oracle(&inst, oracle::exact_opt(&inst)?)?;
    }
    match &report.solution {
        Some(sol) => eprintln!("radius {} with {} centers {:?}", sol.radius, sol.centers.len(), sol.centers),
        None => eprintln!("no solution at the given radius"),
    }
    emit(&report)?;
    Ok(if report.solution.as_ref().is_some_and(|s| s.feasible) { Verdict::Yes } else { Verdict::No })
}

/// Recomputes the intermediate sets of a guessed-center solution.
fn branch_details(inst: &Instance, out: &approx::Outcome, full_class: Option<usize>) -> Result<Option<serde_json::Value>> {
    let Branch::Separated { guesses } = &out.branch else { return Ok(None) };
    let nb = Neighborhoods::new(inst, &out.guess_radius);
    let (chosen, remaining, thresholds) = if guesses.len() == 3 && full_class.is_none() {
        let p1 = approx::phase_one(inst, &nb, [guesses[0], guesses[1], guesses[2]])?;
        let value = serde_json::to_value(&p1)?;
        let t = vec![(ckc::model::RED, p1.tau)];
        (value, p1.remaining().clone(), t)
    } else {
        let roles = ClassRoles::new(inst.omega(), full_class)?;
        let chains = multicolor::guess_chains(inst, &nb, &roles, guesses)?;
        (serde_json::to_value(&chains)?, chains.remaining.clone(), chains.thresholds.clone())
    };
    let dec = approx::dense_decompose_by(inst, &nb, &remaining, &thresholds);
    Ok(Some(serde_json::json!({ "guesses": chosen, "dense": dec.summary() })))
}

fn generate(family: Family, out: Option<&Path>, cert_out: Option<&Path>) -> Result<Verdict> {
    let (inst, cert) = match family {
        Family::SubsetSum { values, k } => (gap_lab::subset_sum_instance(&values, k)?, None),
        Family::SosGap { n, far } => (gap_lab::sos_gap_instance(n, &far)?, None),
        Family::FlowGap { far } => {
            let (inst, designated, cert) = gap_lab::flow_gap_instance(&far)?;
            eprintln!("designated centers {designated:?}");
            (inst, Some(cert))
        }
    };
    let text = instance_to_json(&inst)?;
    match out {
        Some(path) => fs::write(path, text)?,
        None => println!("{text}"),
    }
    eprintln!("{} points, k = {}, requirements {:?}", inst.n(), inst.k(), inst.req());
    if let Some(cert) = cert {
        let text = serde_json::to_string(&cert)?;
        match cert_out {
            Some(path) => fs::write(path, text)?,
            None => eprintln!("no --cert-out given; certificate not written"),
        }
    }
    Ok(Verdict::Yes)
}

fn emit(report: &RunReport) -> Result<()> {
    println!("{}", serde_json::to_string(report)?);
    Ok(())
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1000.0
}
