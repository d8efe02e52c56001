//! Genetic search over 512-bit Moore-neighborhood rules.
//!
//! A chromosome is the rule's truth table. Fitness is the distance from the
//! rule's feature vector to a target (the Game of Life by default); rules
//! with any stable behavior in either measure are infeasible and get
//! infinite fitness.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boolmin::{CoverMode, MinimizeOptions};
use crate::heval::HTables;
use crate::lattice::Dims;
use crate::measures::{
    correlation, distance, dynamic_measure_of, feature_vector, gol_target, static_measure_of, BehaviorVector,
    DynamicParams, FeatureVector, Sampling,
};
use crate::rule::{TruthTable, MOORE_ARITY};
use crate::sim::CompiledRule;
use crate::{Error, Result};

pub const CHROMOSOME_BITS: usize = 1 << MOORE_ARITY;

/// What an evaluation needs besides the chromosome and its sampling seed.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalConfig {
    /// Dynamic-measure parameters; the seed is replaced per individual.
    pub dynamic: DynamicParams,
    pub target: FeatureVector,
    pub cover: MinimizeOptions,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            dynamic: DynamicParams {
                runs: 10,
                ..DynamicParams::default()
            },
            target: gol_target(),
            cover: MinimizeOptions::new(CoverMode::Greedy),
        }
    }
}

/// Measures and fitness of one chromosome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub me: BehaviorVector,
    pub md: BehaviorVector,
    pub fitness: f64,
    /// Both measures have zero stability.
    pub feasible: bool,
    /// The minimized form behind the measures used proven-minimal covers.
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Job {
    pub chromosome: TruthTable,
    pub md_seed: u64,
}

/// Evaluates one chromosome with its frozen dynamic-measure seed.
pub fn evaluate(chromosome: &TruthTable, md_seed: u64, cfg: &EvalConfig) -> Result<Evaluation> {
    if chromosome.arity() != MOORE_ARITY {
        return Err(Error::ArityMismatch {
            expected: MOORE_ARITY,
            got: chromosome.arity(),
        });
    }
    let rule = CompiledRule::with_options(chromosome, &cfg.cover, &HTables::standard());
    let me = static_measure_of(&rule);
    let params = DynamicParams {
        seed: md_seed,
        ..cfg.dynamic
    };
    let md = dynamic_measure_of(&rule, &params)?;
    Ok(score(me, md, rule.exact(), &cfg.target))
}

/// Fitness for given measures: distance to `target`, or infinity when a
/// measure has nonzero stability.
pub fn score(me: BehaviorVector, md: BehaviorVector, exact: bool, target: &FeatureVector) -> Evaluation {
    let feasible = me.stability == 0.0 && md.stability == 0.0;
    let fitness = if feasible {
        distance(&feature_vector(&me, &md), target)
    } else {
        f64::INFINITY
    };
    Evaluation {
        me,
        md,
        fitness,
        feasible,
        exact,
    }
}

/// Evaluates a batch of jobs; results must come back in job order and must
/// not depend on how the work is scheduled.
pub trait BatchEvaluator {
    fn evaluate_batch(&self, jobs: &[Job], cfg: &EvalConfig) -> Result<Vec<Evaluation>>;
}

/// Evaluates jobs one after another on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl BatchEvaluator for Sequential {
    fn evaluate_batch(&self, jobs: &[Job], cfg: &EvalConfig) -> Result<Vec<Evaluation>> {
        jobs.iter().map(|j| evaluate(&j.chromosome, j.md_seed, cfg)).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaConfig {
    pub population: usize,
    pub generations: usize,
    pub mutation: f64,
    pub elitism: usize,
    pub tournament: usize,
    pub seed: u64,
    /// Maximum number of catalog entries emitted.
    pub keep: usize,
    pub eval: EvalConfig,
    /// Cover mode used to recompute the measures of emitted entries;
    /// `None` keeps the search-time values.
    pub report_cover: Option<MinimizeOptions>,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population: 20,
            generations: 5000,
            mutation: 0.01,
            elitism: 2,
            tournament: 3,
            seed: 0,
            keep: 1000,
            eval: EvalConfig::default(),
            report_cover: Some(MinimizeOptions::new(CoverMode::Auto)),
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: alloc::string::String| Err(Error::InvalidParameter(msg));
        if self.population < 2 {
            return bad(format!("population {} is below 2", self.population));
        }
        if !(0.0..=1.0).contains(&self.mutation) {
            return bad(format!("mutation probability {} outside [0, 1]", self.mutation));
        }
        if self.elitism > self.population {
            return bad(format!("elitism {} exceeds population", self.elitism));
        }
        if self.tournament == 0 {
            return bad("tournament size must be at least 1".into());
        }
        self.eval.dynamic.validate()?;
        self.eval.dynamic.dims_for(MOORE_ARITY)?;
        Ok(())
    }
}

/// A chromosome with uniform random bits.
pub fn random_chromosome(rng: &mut impl RngCore) -> TruthTable {
    let mut words = [0u64; CHROMOSOME_BITS / 64];
    for w in &mut words {
        *w = rng.next_u64();
    }
    TruthTable::from_words(MOORE_ARITY, &words).expect("512-bit table")
}

pub fn random_population(size: usize, rng: &mut impl RngCore) -> Vec<TruthTable> {
    (0..size).map(|_| random_chromosome(rng)).collect()
}

/// Swaps the suffixes of `a` and `b` starting at bit `point`.
pub fn one_point_crossover(a: &TruthTable, b: &TruthTable, point: usize) -> Result<(TruthTable, TruthTable)> {
    if a.arity() != b.arity() {
        return Err(Error::ArityMismatch {
            expected: a.arity(),
            got: b.arity(),
        });
    }
    if point == 0 || point >= a.len() {
        return Err(Error::CrossoverPoint(point));
    }
    let mut c1 = a.clone();
    let mut c2 = b.clone();
    for i in point..a.len() {
        c1.set(i, b.get(i));
        c2.set(i, a.get(i));
    }
    Ok((c1, c2))
}

/// Flips each bit independently with probability `p`.
pub fn mutate(chromosome: &mut TruthTable, p: f64, rng: &mut impl Rng) {
    if p <= 0.0 {
        return;
    }
    for i in 0..chromosome.len() {
        if rng.random_bool(p.min(1.0)) {
            chromosome.flip(i);
        }
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Dynamic-measure seed of a chromosome within a run.
pub fn md_seed(run_seed: u64, chromosome: &TruthTable) -> u64 {
    chromosome
        .words()
        .iter()
        .fold(splitmix(run_seed), |h, &w| splitmix(h ^ w))
}

/// One emitted search result.
#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub chromosome: TruthTable,
    pub me: BehaviorVector,
    pub md: BehaviorVector,
    pub fitness: f64,
    /// `None` when either measure is constant across its components.
    pub correlation: Option<f64>,
    pub generation_found: usize,
    pub cover_mode: CoverMode,
    /// Seed of the dynamic measure reported in `md`.
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaOutcome {
    pub catalog: Vec<CatalogEntry>,
    /// Best fitness in the population after each generation, starting with
    /// the initial one.
    pub best_history: Vec<f64>,
    /// Number of distinct chromosomes evaluated.
    pub evaluated: usize,
}

struct Archived {
    eval: Evaluation,
    generation: usize,
    seed: u64,
}

fn by_fitness(a: (&TruthTable, f64), b: (&TruthTable, f64)) -> Ordering {
    a.1.total_cmp(&b.1).then_with(|| a.0.cmp(b.0))
}

/// Runs the generational loop and returns the feasible archive, best first.
pub fn run_ga(cfg: &GaConfig, evaluator: &impl BatchEvaluator) -> Result<GaOutcome> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut archive: BTreeMap<TruthTable, Archived> = BTreeMap::new();
    let mut population = random_population(cfg.population, &mut rng);
    let mut best_history = Vec::with_capacity(cfg.generations + 1);

    for generation in 0..=cfg.generations {
        let mut jobs: Vec<Job> = Vec::new();
        for c in &population {
            if !archive.contains_key(c) && !jobs.iter().any(|j| &j.chromosome == c) {
                jobs.push(Job {
                    chromosome: c.clone(),
                    md_seed: md_seed(cfg.seed, c),
                });
            }
        }
        let evals = evaluator.evaluate_batch(&jobs, &cfg.eval)?;
        for (job, eval) in jobs.into_iter().zip(evals) {
            archive.insert(
                job.chromosome,
                Archived {
                    eval,
                    generation,
                    seed: job.md_seed,
                },
            );
        }

        let fitness: Vec<f64> = population.iter().map(|c| archive[c].eval.fitness).collect();
        let mut ranked: Vec<usize> = (0..population.len()).collect();
        ranked.sort_by(|&i, &j| by_fitness((&population[i], fitness[i]), (&population[j], fitness[j])));
        best_history.push(fitness[ranked[0]]);
        if generation == cfg.generations {
            break;
        }

        // rank position doubles as tournament strength
        let mut rank_of = alloc::vec![0usize; population.len()];
        for (r, &i) in ranked.iter().enumerate() {
            rank_of[i] = r;
        }
        let tournament = |rng: &mut ChaCha8Rng| {
            (0..cfg.tournament)
                .map(|_| rng.random_range(0..population.len()))
                .min_by_key(|&i| rank_of[i])
                .expect("tournament size is at least 1")
        };

        let mut next: Vec<TruthTable> = ranked[..cfg.elitism].iter().map(|&i| population[i].clone()).collect();
        while next.len() < cfg.population {
            let a = tournament(&mut rng);
            let b = tournament(&mut rng);
            let point = rng.random_range(1..CHROMOSOME_BITS);
            let (mut c1, mut c2) = one_point_crossover(&population[a], &population[b], point)?;
            mutate(&mut c1, cfg.mutation, &mut rng);
            mutate(&mut c2, cfg.mutation, &mut rng);
            next.push(c1);
            if next.len() < cfg.population {
                next.push(c2);
            }
        }
        population = next;
    }

    let evaluated = archive.len();
    let mut feasible: Vec<(&TruthTable, &Archived)> = archive.iter().filter(|(_, a)| a.eval.feasible).collect();
    feasible.sort_by(|a, b| by_fitness((a.0, a.1.eval.fitness), (b.0, b.1.eval.fitness)));
    feasible.truncate(cfg.keep);

    let mut catalog = match cfg.report_cover {
        None => feasible
            .into_iter()
            .map(|(c, a)| entry(c, &a.eval, a, cfg.eval.cover.mode))
            .collect(),
        Some(cover) => {
            let report_cfg = EvalConfig {
                cover,
                ..cfg.eval.clone()
            };
            let jobs: Vec<Job> = feasible
                .iter()
                .map(|(c, a)| Job {
                    chromosome: (*c).clone(),
                    md_seed: a.seed,
                })
                .collect();
            let evals = evaluator.evaluate_batch(&jobs, &report_cfg)?;
            feasible
                .into_iter()
                .zip(evals)
                .filter(|(_, e)| e.feasible)
                .map(|((c, a), e)| entry(c, &e, a, cover.mode))
                .collect::<Vec<_>>()
        }
    };
    catalog.sort_by(|a: &CatalogEntry, b: &CatalogEntry| {
        by_fitness((&a.chromosome, a.fitness), (&b.chromosome, b.fitness))
    });

    Ok(GaOutcome {
        catalog,
        best_history,
        evaluated,
    })
}

fn entry(c: &TruthTable, e: &Evaluation, a: &Archived, mode: CoverMode) -> CatalogEntry {
    CatalogEntry {
        chromosome: c.clone(),
        me: e.me,
        md: e.md,
        fitness: e.fitness,
        correlation: correlation(&e.me, &e.md).ok(),
        generation_found: a.generation,
        cover_mode: mode,
        seed: a.seed,
    }
}

/// Small lattice settings for quick searches and tests.
pub fn desk_eval_config() -> EvalConfig {
    EvalConfig {
        dynamic: DynamicParams {
            runs: 10,
            dims: Some(Dims::Grid { rows: 32, cols: 32 }),
            max_steps: 40,
            density: 0.5,
            seed: 0,
            sampling: Sampling::Accumulate,
        },
        ..EvalConfig::default()
    }
}
