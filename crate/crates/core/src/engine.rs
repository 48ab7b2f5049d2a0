//! Deterministic coordinator/worker generation loop.
//!
//! The coordinator owns generation planning (selection needs the whole
//! population); the resulting mating pairs are evaluated by a worker
//! pool. Every pair draws from its own random stream derived from
//! (seed, generation, pair index), and results are gathered in pair
//! order, so the population sequence is bit-identical for any worker
//! count. Optional per-generation checkpoint files allow resuming.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::genetic::{
    evaluate, plan_generation, seed_population, vary_and_evaluate, GaConfig, Individual, MatingPair,
};
use crate::model::{Chromosome, Instance};
use crate::packer::{decode, PackingSolution};

/// Stream index reserved for the coordinator's own draws.
pub const COORDINATOR_STREAM: u64 = u64::MAX;

/// Derives an independent, reproducible random stream from the root seed,
/// the generation index and the pair index.
pub fn derive_stream(root_seed: u64, generation: u64, pair: u64) -> ChaCha8Rng {
    let mut seed = [0u8; 32];
    seed[..8].copy_from_slice(&root_seed.to_le_bytes());
    seed[8..16].copy_from_slice(&generation.to_le_bytes());
    seed[16..24].copy_from_slice(&pair.to_le_bytes());
    seed[24..32].copy_from_slice(b"bp3d-ga\0");
    ChaCha8Rng::from_seed(seed)
}

/// Engine options beyond the GA parameters.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Write `gen_<index>.pop` after every generation when set.
    pub checkpoint_dir: Option<PathBuf>,
    /// Stop after this many generations without a new best.
    pub early_stop: Option<usize>,
    /// Resume from `gen_<index>.pop` in the checkpoint directory.
    pub resume_from: Option<usize>,
}

/// Per-generation progress: the best fitness in that generation's
/// population and the wall-clock time it took.
#[derive(Clone, Debug)]
pub struct GenerationStat {
    pub index: usize,
    pub best_fitness: f64,
    pub elapsed: Duration,
}

/// Result of a run: the best individual ever observed, its decoded
/// solution, and per-generation statistics.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub best: Individual,
    pub solution: PackingSolution,
    pub stats: Vec<GenerationStat>,
}

/// One checkpoint line: the chromosome's canonical text and its fitness.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckpointRecord {
    pub chromosome_text: String,
    pub fitness: f64,
}

pub fn run(inst: &Instance, cfg: &GaConfig) -> Result<RunReport> {
    run_with(inst, cfg, &RunOptions::default())
}

pub fn run_with(inst: &Instance, cfg: &GaConfig, opts: &RunOptions) -> Result<RunReport> {
    cfg.validate()?;

    let mut stats = Vec::with_capacity(cfg.generations + 1);
    let (start_gen, mut population) = match opts.resume_from {
        Some(gen) => {
            let dir = opts
                .checkpoint_dir
                .as_deref()
                .ok_or_else(|| Error::Config("resuming requires a checkpoint directory".into()))?;
            let population = load_population(&checkpoint_path(dir, gen), inst, cfg)?;
            (gen, population)
        }
        None => {
            let start = Instant::now();
            let mut rng = derive_stream(cfg.seed, 0, COORDINATOR_STREAM);
            let seeds = seed_population(inst, cfg.pop_size, &mut rng);
            let population = parallel_map(&seeds, cfg.workers, |c| {
                evaluate(c.clone(), inst, cfg.kb, cfg.ke)
            });
            if let Some(dir) = opts.checkpoint_dir.as_deref() {
                write_checkpoint(&checkpoint_path(dir, 0), &population)?;
            }
            stats.push(GenerationStat {
                index: 0,
                best_fitness: best_of(&population).fitness,
                elapsed: start.elapsed(),
            });
            (0, population)
        }
    };

    let mut best = best_of(&population).clone();
    let mut stagnant = 0usize;
    for gen in start_gen + 1..=cfg.generations {
        let start = Instant::now();
        let mut coordinator = derive_stream(cfg.seed, gen as u64, COORDINATOR_STREAM);
        let pairs = plan_generation(&population, cfg, &mut coordinator);
        population = evaluate_pairs(&pairs, inst, cfg, gen as u64);
        debug_assert_eq!(population.len(), cfg.pop_size);

        if let Some(dir) = opts.checkpoint_dir.as_deref() {
            write_checkpoint(&checkpoint_path(dir, gen), &population)?;
        }
        let gen_best = best_of(&population);
        if gen_best.fitness > best.fitness {
            best = gen_best.clone();
            stagnant = 0;
        } else {
            stagnant += 1;
        }
        stats.push(GenerationStat {
            index: gen,
            best_fitness: gen_best.fitness,
            elapsed: start.elapsed(),
        });
        if opts.early_stop.is_some_and(|limit| stagnant >= limit) {
            break;
        }
    }

    let solution = decode(&best.chromosome, inst, cfg.kb, cfg.ke);
    Ok(RunReport {
        best,
        solution,
        stats,
    })
}

/// Evaluates one generation's pairs on the worker pool, gathering the
/// next population in pair order.
fn evaluate_pairs(
    pairs: &[MatingPair],
    inst: &Instance,
    cfg: &GaConfig,
    generation: u64,
) -> Vec<Individual> {
    let groups = parallel_map_indexed(pairs, cfg.workers, |idx, pair| {
        let mut rng = derive_stream(cfg.seed, generation, idx as u64);
        vary_and_evaluate(pair, inst, cfg, &mut rng)
    });
    groups.into_iter().flatten().collect()
}

fn best_of(population: &[Individual]) -> &Individual {
    population
        .iter()
        .max_by(|a, b| {
            a.fitness
                .total_cmp(&b.fitness)
                .then_with(|| b.chromosome.to_text().cmp(&a.chromosome.to_text()))
        })
        .expect("population is never empty")
}

fn parallel_map<T, R>(items: &[T], workers: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R>
where
    T: Sync,
    R: Send,
{
    parallel_map_indexed(items, workers, |_, item| f(item))
}

/// Applies `f` to every item, splitting the slice across `workers`
/// threads. The output order always matches the input order.
fn parallel_map_indexed<T, R>(
    items: &[T],
    workers: usize,
    f: impl Fn(usize, &T) -> R + Sync,
) -> Vec<R>
where
    T: Sync,
    R: Send,
{
    if workers <= 1 || items.len() <= 1 {
        return items.iter().enumerate().map(|(i, t)| f(i, t)).collect();
    }
    let chunk_size = items.len().div_ceil(workers);
    let mut out: Vec<Option<R>> = Vec::with_capacity(items.len());
    out.resize_with(items.len(), || None);
    std::thread::scope(|scope| {
        let f = &f;
        let mut handles = Vec::new();
        for (chunk_idx, chunk) in items.chunks(chunk_size).enumerate() {
            let base = chunk_idx * chunk_size;
            handles.push(scope.spawn(move || {
                chunk
                    .iter()
                    .enumerate()
                    .map(|(i, item)| f(base + i, item))
                    .collect::<Vec<R>>()
            }));
        }
        for (chunk_idx, handle) in handles.into_iter().enumerate() {
            let base = chunk_idx * chunk_size;
            for (i, r) in handle
                .join()
                .expect("worker panicked")
                .into_iter()
                .enumerate()
            {
                out[base + i] = Some(r);
            }
        }
    });
    out.into_iter()
        .map(|r| r.expect("gather is complete"))
        .collect()
}

pub fn checkpoint_path(dir: &Path, generation: usize) -> PathBuf {
    dir.join(format!("gen_{generation}.pop"))
}

/// Writes one record per line, `<chromosome_text>\t<fitness>`, with the
/// fitness printed as the shortest round-tripping decimal. The file
/// appears atomically (write to a temp name, then rename).
pub fn write_checkpoint(path: &Path, population: &[Individual]) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let body = population
        .iter()
        .map(|ind| format!("{}\t{}", ind.chromosome.to_text(), ind.fitness))
        .collect::<Vec<_>>()
        .join("\n");
    let tmp = path.with_extension("pop.tmp");
    fs::write(&tmp, body)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Exact inverse of `write_checkpoint`.
pub fn read_checkpoint(path: &Path) -> Result<Vec<CheckpointRecord>> {
    let text = fs::read_to_string(path)?;
    let mut records = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let record = parse_record(line).map_err(|message| Error::Checkpoint {
            path: path.to_path_buf(),
            line: i + 1,
            message,
        })?;
        records.push(record);
    }
    Ok(records)
}

fn parse_record(line: &str) -> std::result::Result<CheckpointRecord, String> {
    let (text, fitness) = line
        .split_once('\t')
        .ok_or_else(|| "expected `<chromosome>\\t<fitness>`".to_string())?;
    Chromosome::parse(text).map_err(|e| e.to_string())?;
    let fitness: f64 = fitness
        .parse()
        .map_err(|_| format!("bad fitness {fitness:?}"))?;
    if !(0.0..=1.0).contains(&fitness) {
        return Err(format!("fitness {fitness} outside [0, 1]"));
    }
    Ok(CheckpointRecord {
        chromosome_text: text.to_string(),
        fitness,
    })
}

fn load_population(path: &Path, inst: &Instance, cfg: &GaConfig) -> Result<Vec<Individual>> {
    let records = read_checkpoint(path)?;
    if records.len() != cfg.pop_size {
        return Err(Error::Checkpoint {
            path: path.to_path_buf(),
            line: records.len(),
            message: format!("expected {} records, found {}", cfg.pop_size, records.len()),
        });
    }
    records
        .into_iter()
        .map(|r| {
            let chromosome = Chromosome::parse(&r.chromosome_text)?;
            if !chromosome.matches(inst) {
                return Err(Error::Chromosome(format!(
                    "checkpoint chromosome {} does not match the instance",
                    r.chromosome_text
                )));
            }
            Ok(Individual {
                chromosome,
                fitness: r.fitness,
            })
        })
        .collect()
}
