//! Command-line front end: solve instances, generate benchmark
//! instances, decode single chromosomes, run the exhaustive oracle, and
//! validate or summarize solution files.

pub mod generator;
pub mod oracle;
pub mod validator;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::engine::{self, RunOptions};
use crate::error::{Error, Result};
use crate::genetic::GaConfig;
use crate::model::{Chromosome, Dims, Instance};
use crate::packer::{decode, parse_solution, render_solution};
use generator::{generate_cut_instance, CutGenSpec};
use oracle::{run_oracle, DEFAULT_ORACLE_LIMIT};
use validator::validate_solution;

#[derive(Parser)]
#[command(
    name = "binpack3d",
    version,
    about = "3D bin packing with heterogeneous containers and 6-way rotation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the genetic algorithm on an instance file
    Solve(SolveArgs),
    /// Generate a guillotine-cut benchmark instance with known optimum 1.0
    Generate(GenerateArgs),
    /// Decode a single chromosome and print its solution
    Decode(DecodeArgs),
    /// Exhaustively decode every chromosome of a tiny instance
    Oracle(OracleArgs),
    /// Independently re-check a solution file against its instance
    Validate(FilePairArgs),
    /// Summarize a solution file
    Report(FilePairArgs),
}

#[derive(Args)]
struct GaArgs {
    /// Population size Z
    #[arg(long = "pop", default_value_t = 100)]
    pop: usize,
    /// Elite count E
    #[arg(long = "elite", default_value_t = 2)]
    elite: usize,
    /// Parent pass-through probability
    #[arg(long = "probc", default_value_t = 0.1)]
    probc: f64,
    /// Mutation probability
    #[arg(long = "pm", default_value_t = 0.2)]
    pm: f64,
    /// Decoder box window size
    #[arg(long = "kb", default_value_t = 3)]
    kb: usize,
    /// Decoder space window size
    #[arg(long = "ke", default_value_t = 5)]
    ke: usize,
    /// Evolution iterations
    #[arg(long = "gens", default_value_t = 100)]
    gens: usize,
    /// Tournament win probability for the fitter candidate
    #[arg(long = "win-prob", default_value_t = 0.9)]
    win_prob: f64,
    /// Worker thread count
    #[arg(long = "workers", default_value_t = 1)]
    workers: usize,
    /// Root seed; runs are bit-identical per seed for any worker count
    #[arg(long = "seed", default_value_t = 0)]
    seed: u64,
}

impl GaArgs {
    fn to_config(&self) -> GaConfig {
        GaConfig {
            pop_size: self.pop,
            elite: self.elite,
            prob_c: self.probc,
            pm: self.pm,
            kb: self.kb,
            ke: self.ke,
            generations: self.gens,
            win_prob: self.win_prob,
            seed: self.seed,
            workers: self.workers,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file
    #[arg(long = "instance")]
    instance: PathBuf,
    #[command(flatten)]
    ga: GaArgs,
    /// Write the best solution to this file instead of stdout
    #[arg(long = "out")]
    out: Option<PathBuf>,
    /// Write gen_<index>.pop checkpoints into this directory
    #[arg(long = "checkpoint-dir")]
    checkpoint_dir: Option<PathBuf>,
    /// Stop after this many generations without improvement
    #[arg(long = "early-stop")]
    early_stop: Option<usize>,
    /// Resume from gen_<index>.pop in the checkpoint directory
    #[arg(long = "resume-from")]
    resume_from: Option<usize>,
    /// Append a one-line machine-readable summary to this file
    #[arg(long = "log", default_value = "results.log")]
    log: PathBuf,
    /// Print per-generation progress
    #[arg(long, short)]
    verbose: bool,
}

#[derive(Args)]
struct GenerateArgs {
    /// Container dims as L,W,H
    #[arg(long = "dims", value_parser = parse_dims)]
    dims: Dims,
    /// Number of boxes to cut
    #[arg(long = "k")]
    k: usize,
    /// Minimum extent of every cut piece
    #[arg(long = "min-extent", default_value_t = 1)]
    min_extent: i64,
    #[arg(long = "seed", default_value_t = 0)]
    seed: u64,
    /// Write the instance to this file instead of stdout
    #[arg(long = "out")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DecodeArgs {
    #[arg(long = "instance")]
    instance: PathBuf,
    /// Chromosome in canonical form, e.g. "2,1,3|1,2"
    #[arg(long = "chromosome")]
    chromosome: String,
    #[arg(long = "kb", default_value_t = 3)]
    kb: usize,
    #[arg(long = "ke", default_value_t = 5)]
    ke: usize,
    /// Write the solution to this file instead of stdout
    #[arg(long = "out")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long = "instance")]
    instance: PathBuf,
    #[arg(long = "kb", default_value_t = 3)]
    kb: usize,
    #[arg(long = "ke", default_value_t = 5)]
    ke: usize,
    /// Refuse instances whose chromosome space exceeds this size
    #[arg(long = "limit", default_value_t = DEFAULT_ORACLE_LIMIT)]
    limit: u64,
}

#[derive(Args)]
struct FilePairArgs {
    #[arg(long = "instance")]
    instance: PathBuf,
    /// Solution file as written by solve or decode
    #[arg(long = "solution")]
    solution: PathBuf,
}

/// Exit codes: 0 ok, 1 validation failure or infeasible, 2 usage.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(args) => cmd_solve(&args),
        Command::Generate(args) => cmd_generate(&args),
        Command::Decode(args) => cmd_decode(&args),
        Command::Oracle(args) => cmd_oracle(&args),
        Command::Validate(args) => cmd_validate(&args),
        Command::Report(args) => cmd_report(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn parse_dims(value: &str) -> std::result::Result<Dims, String> {
    let parts: Vec<&str> = value.split(',').collect();
    if parts.len() != 3 {
        return Err("expected L,W,H".into());
    }
    let mut dims = [0i64; 3];
    for (slot, part) in dims.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| format!("not an integer: {part:?}"))?;
        if *slot < 1 {
            return Err("dimensions must be positive".into());
        }
    }
    Ok(Dims::new(dims[0], dims[1], dims[2]))
}

fn read_instance(path: &PathBuf) -> Result<Instance> {
    Instance::parse(&fs::read_to_string(path)?)
}

fn check_windows(kb: usize, ke: usize) -> Result<()> {
    if kb < 1 || ke < 1 {
        return Err(Error::Config("kb and ke must be at least 1".into()));
    }
    Ok(())
}

fn write_or_print(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn cmd_solve(args: &SolveArgs) -> Result<ExitCode> {
    let inst = read_instance(&args.instance)?;
    let cfg = args.ga.to_config();
    let opts = RunOptions {
        checkpoint_dir: args.checkpoint_dir.clone(),
        early_stop: args.early_stop,
        resume_from: args.resume_from,
    };
    let start = Instant::now();
    let report = engine::run_with(&inst, &cfg, &opts)?;
    let wall = start.elapsed();

    // file and log writes come first so a closed stdout cannot lose them
    if let Some(path) = &args.out {
        fs::write(path, render_solution(&report.solution))?;
    }
    let mut log = fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(&args.log)?;
    writeln!(
        log,
        "{} Z={} E={} G={} seed={} best={} wall_s={:.3}",
        args.instance.display(),
        cfg.pop_size,
        cfg.elite,
        cfg.generations,
        cfg.seed,
        report.best.fitness,
        wall.as_secs_f64()
    )?;

    if args.verbose {
        for stat in &report.stats {
            println!(
                "gen {} best {} ({:.1} ms)",
                stat.index,
                stat.best_fitness,
                stat.elapsed.as_secs_f64() * 1e3
            );
        }
    }
    println!("best fill ratio: {}", report.best.fitness);
    println!("best chromosome: {}", report.best.chromosome.to_text());
    println!("feasible: {}", report.solution.feasible);
    match &args.out {
        Some(path) => println!("solution written to {}", path.display()),
        None => print!("{}", render_solution(&report.solution)),
    }

    Ok(exit_for_feasibility(report.solution.feasible))
}

fn cmd_generate(args: &GenerateArgs) -> Result<ExitCode> {
    let spec = CutGenSpec {
        dims: args.dims,
        k: args.k,
        min_extent: args.min_extent,
        seed: args.seed,
    };
    let inst = generate_cut_instance(&spec)?;
    write_or_print(&args.out, &inst.to_text())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_decode(args: &DecodeArgs) -> Result<ExitCode> {
    check_windows(args.kb, args.ke)?;
    let inst = read_instance(&args.instance)?;
    let chr = Chromosome::parse(&args.chromosome)?;
    if !chr.matches(&inst) {
        return Err(Error::Chromosome(format!(
            "chromosome wants {} boxes and {} containers, instance has {} and {}",
            chr.bps().len(),
            chr.cls().len(),
            inst.box_count(),
            inst.container_count()
        )));
    }
    let sol = decode(&chr, &inst, args.kb, args.ke);
    println!("fitness: {}", sol.fitness);
    write_or_print(&args.out, &render_solution(&sol))?;
    Ok(exit_for_feasibility(sol.feasible))
}

fn cmd_oracle(args: &OracleArgs) -> Result<ExitCode> {
    check_windows(args.kb, args.ke)?;
    let inst = read_instance(&args.instance)?;
    let result = run_oracle(&inst, args.kb, args.ke, args.limit)?;
    println!("best fitness: {}", result.best_fitness);
    println!("best chromosome: {}", result.best_chromosome.to_text());
    println!("evaluated: {}", result.evaluated_count);
    Ok(ExitCode::SUCCESS)
}

fn cmd_validate(args: &FilePairArgs) -> Result<ExitCode> {
    let inst = read_instance(&args.instance)?;
    let sol = parse_solution(&fs::read_to_string(&args.solution)?)?;
    let report = validate_solution(&inst, &sol);
    print!("{report}");
    if report.is_ok() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn cmd_report(args: &FilePairArgs) -> Result<ExitCode> {
    let inst = read_instance(&args.instance)?;
    let sol = parse_solution(&fs::read_to_string(&args.solution)?)?;
    println!("fill ratio: {}", sol.fitness);
    println!("feasible: {}", sol.feasible);
    println!(
        "boxes placed: {} of {}",
        sol.placements.len(),
        inst.box_count()
    );
    println!("containers opened: {}", sol.opened_containers.len());
    for &id in &sol.opened_containers {
        let c = inst.container_by_id(id);
        let used: i64 = sol
            .placements
            .iter()
            .filter(|p| p.container_id == id)
            .map(|p| p.dims.volume())
            .sum();
        println!(
            "  container {id} ({}x{}x{}): {used}/{} volume used",
            c.dims.l,
            c.dims.w,
            c.dims.h,
            c.dims.volume()
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_for_feasibility(feasible: bool) -> ExitCode {
    if feasible {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
