//! Genetic operators: population seeding, tournament selection with
//! elitism, two-cut order crossover and swap mutation.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::model::{Chromosome, Instance};
use crate::packer::{decode, PackingSolution};

/// Run parameters. `pop_size` is Z, `elite` is E.
#[derive(Clone, Debug)]
pub struct GaConfig {
    pub pop_size: usize,
    pub elite: usize,
    /// Probability that a selected parent pair passes through unchanged.
    pub prob_c: f64,
    /// Per-chromosome mutation probability.
    pub pm: f64,
    /// Decoder box window size.
    pub kb: usize,
    /// Decoder space window size.
    pub ke: usize,
    /// Evolution iterations after the seeded generation.
    pub generations: usize,
    /// Probability that the fitter tournament candidate wins.
    pub win_prob: f64,
    pub seed: u64,
    pub workers: usize,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            pop_size: 100,
            elite: 2,
            prob_c: 0.1,
            pm: 0.2,
            kb: 3,
            ke: 5,
            generations: 100,
            win_prob: 0.9,
            seed: 0,
            workers: 1,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.pop_size < 4 {
            return Err(Error::Config("population size must be at least 4".into()));
        }
        if self.elite >= self.pop_size {
            return Err(Error::Config(
                "elite count must be smaller than the population".into(),
            ));
        }
        if !(self.pop_size - self.elite).is_multiple_of(2) {
            return Err(Error::Config(
                "population minus elite count must be even".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.prob_c) {
            return Err(Error::Config("prob_c must lie in [0, 1]".into()));
        }
        if !(0.0..=1.0).contains(&self.pm) {
            return Err(Error::Config("pm must lie in [0, 1]".into()));
        }
        if self.win_prob <= 0.5 || self.win_prob > 1.0 {
            return Err(Error::Config("win_prob must lie in (0.5, 1]".into()));
        }
        if self.kb < 1 || self.ke < 1 {
            return Err(Error::Config("kb and ke must be at least 1".into()));
        }
        if self.workers < 1 {
            return Err(Error::Config("worker count must be at least 1".into()));
        }
        Ok(())
    }
}

/// A chromosome with its decoded fill-ratio fitness.
#[derive(Clone, Debug, PartialEq)]
pub struct Individual {
    pub chromosome: Chromosome,
    pub fitness: f64,
}

/// Decodes a chromosome and pairs it with its fitness.
pub fn evaluate(chr: Chromosome, inst: &Instance, kb: usize, ke: usize) -> Individual {
    let fitness = decode(&chr, inst, kb, ke).fitness;
    Individual {
        chromosome: chr,
        fitness,
    }
}

/// Decodes a chromosome keeping the full solution.
pub fn evaluate_full(chr: &Chromosome, inst: &Instance, kb: usize, ke: usize) -> PackingSolution {
    decode(chr, inst, kb, ke)
}

/// One unit of work for the variation phase: an elite individual passed
/// through unchanged, or two parents to breed.
#[derive(Clone, Debug)]
pub enum MatingPair {
    Elite(Individual),
    Parents(Chromosome, Chromosome),
}

/// Builds the initial population: four special chromosomes whose BPS is
/// sorted by descending box volume, length, width and height (stable on
/// ties), each with a random CLS, then fully random chromosomes.
pub fn seed_population(inst: &Instance, z: usize, rng: &mut impl Rng) -> Vec<Chromosome> {
    assert!(z >= 4, "population must hold the four special chromosomes");
    let m = inst.box_count();
    let n = inst.container_count();

    let sorted_bps = |key: fn(&crate::model::BoxSpec) -> i64| -> Vec<usize> {
        let mut ids: Vec<usize> = (1..=m).collect();
        ids.sort_by_key(|&id| std::cmp::Reverse(key(inst.box_by_id(id))));
        ids
    };
    let special = [
        sorted_bps(|b| b.dims.volume()),
        sorted_bps(|b| b.dims.l),
        sorted_bps(|b| b.dims.w),
        sorted_bps(|b| b.dims.h),
    ];

    let mut population = Vec::with_capacity(z);
    for bps in special {
        population.push(Chromosome::new(bps, random_permutation(n, rng)).unwrap());
    }
    for _ in 4..z {
        population
            .push(Chromosome::new(random_permutation(m, rng), random_permutation(n, rng)).unwrap());
    }
    population
}

fn random_permutation(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut ids: Vec<usize> = (1..=n).collect();
    ids.shuffle(rng);
    ids
}

/// Size-2 tournament: draws two distinct individuals uniformly and
/// returns the fitter one with probability `w`, the weaker otherwise.
pub fn tournament_select(pop: &[Individual], w: f64, rng: &mut impl Rng) -> Chromosome {
    assert!(pop.len() >= 2, "tournament needs at least two individuals");
    let first = rng.random_range(0..pop.len());
    let mut second = rng.random_range(0..pop.len() - 1);
    if second >= first {
        second += 1;
    }
    // on equal fitness the first draw counts as the better one, which is
    // uniform over the pair
    let (better, weaker) = if pop[second].fitness > pop[first].fitness {
        (second, first)
    } else {
        (first, second)
    };
    let winner = if rng.random_bool(w) { better } else { weaker };
    pop[winner].chromosome.clone()
}

/// Two-cut order crossover. Each part uses its own cut pair `(i, j)` with
/// `0 <= i < j <= n`: the child copies positions `i+1..=j` (1-indexed)
/// from the first parent and fills the remaining positions circularly
/// from `j+1` with the other parent's genes read circularly from `j+1`,
/// skipping genes already present. The second child swaps the roles.
pub fn crossover(
    p1: &Chromosome,
    p2: &Chromosome,
    cuts_bps: (usize, usize),
    cuts_cls: (usize, usize),
) -> (Chromosome, Chromosome) {
    let child = |a: &Chromosome, b: &Chromosome| {
        Chromosome::new(
            ox_part(a.bps(), b.bps(), cuts_bps),
            ox_part(a.cls(), b.cls(), cuts_cls),
        )
        .expect("order crossover preserves permutations")
    };
    (child(p1, p2), child(p2, p1))
}

fn ox_part(a: &[usize], b: &[usize], (i, j): (usize, usize)) -> Vec<usize> {
    let n = a.len();
    assert!(i < j && j <= n, "cut points must satisfy 0 <= i < j <= n");
    let mut child = vec![0usize; n];
    let mut present = vec![false; n + 1];
    for pos in i..j {
        child[pos] = a[pos];
        present[a[pos]] = true;
    }
    let mut write = j % n;
    for offset in 0..n {
        let gene = b[(j + offset) % n];
        if !present[gene] {
            present[gene] = true;
            child[write] = gene;
            write = (write + 1) % n;
        }
    }
    child
}

/// Draws crossover cut points `0 <= i < j <= n`.
pub fn draw_cuts(n: usize, rng: &mut impl Rng) -> (usize, usize) {
    let i = rng.random_range(0..n);
    let j = rng.random_range(i + 1..=n);
    (i, j)
}

/// With probability `pm`, swaps two random positions in the BPS and two
/// in the CLS. Parts of length 1 are left unchanged.
pub fn mutate(c: &Chromosome, pm: f64, rng: &mut impl Rng) -> Chromosome {
    if !rng.random_bool(pm) {
        return c.clone();
    }
    Chromosome::new(swap_random(c.bps(), rng), swap_random(c.cls(), rng))
        .expect("swapping preserves permutations")
}

fn swap_random(part: &[usize], rng: &mut impl Rng) -> Vec<usize> {
    let mut out = part.to_vec();
    if out.len() >= 2 {
        let (a, b) = distinct_pair(out.len(), rng);
        out.swap(a, b);
    }
    out
}

fn distinct_pair(n: usize, rng: &mut impl Rng) -> (usize, usize) {
    let a = rng.random_range(0..n);
    let mut b = rng.random_range(0..n - 1);
    if b >= a {
        b += 1;
    }
    (a, b)
}

/// Plans one generation: the population sorts by descending fitness
/// (ties by chromosome text), the top E pass through as elites, and
/// (Z - E) tournament draws pair up successively into (Z - E) / 2
/// parent pairs.
pub fn plan_generation(pop: &[Individual], cfg: &GaConfig, rng: &mut impl Rng) -> Vec<MatingPair> {
    assert_eq!(pop.len(), cfg.pop_size, "population size mismatch");
    let mut ranked: Vec<&Individual> = pop.iter().collect();
    ranked.sort_by(|a, b| {
        b.fitness
            .total_cmp(&a.fitness)
            .then_with(|| a.chromosome.to_text().cmp(&b.chromosome.to_text()))
    });
    let ranked: Vec<Individual> = ranked.into_iter().cloned().collect();

    let mut pairs = Vec::with_capacity(cfg.elite + (cfg.pop_size - cfg.elite) / 2);
    for elite in &ranked[..cfg.elite] {
        pairs.push(MatingPair::Elite(elite.clone()));
    }
    let mut pool = Vec::with_capacity(cfg.pop_size - cfg.elite);
    for _ in 0..cfg.pop_size - cfg.elite {
        pool.push(tournament_select(&ranked, cfg.win_prob, rng));
    }
    let mut pool = pool.into_iter();
    while let (Some(first), Some(second)) = (pool.next(), pool.next()) {
        pairs.push(MatingPair::Parents(first, second));
    }
    pairs
}

/// Evaluates one mating pair: elites pass through with their known
/// fitness; parent pairs either pass through with probability `prob_c`
/// (fitness recomputed) or breed two children via crossover and
/// mutation, each decoded for fitness.
pub fn vary_and_evaluate(
    pair: &MatingPair,
    inst: &Instance,
    cfg: &GaConfig,
    rng: &mut impl Rng,
) -> Vec<Individual> {
    match pair {
        MatingPair::Elite(ind) => vec![ind.clone()],
        MatingPair::Parents(p1, p2) => {
            if rng.random_bool(cfg.prob_c) {
                return vec![
                    evaluate(p1.clone(), inst, cfg.kb, cfg.ke),
                    evaluate(p2.clone(), inst, cfg.kb, cfg.ke),
                ];
            }
            let cuts_bps = draw_cuts(inst.box_count(), rng);
            let cuts_cls = draw_cuts(inst.container_count(), rng);
            let (o1, o2) = crossover(p1, p2, cuts_bps, cuts_cls);
            let o1 = mutate(&o1, cfg.pm, rng);
            let o2 = mutate(&o2, cfg.pm, rng);
            vec![
                evaluate(o1, inst, cfg.kb, cfg.ke),
                evaluate(o2, inst, cfg.kb, cfg.ke),
            ]
        }
    }
}
