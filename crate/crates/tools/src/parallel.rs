//! Thread-parallel evaluation with results identical to the sequential paths.

use ca_core::measures::{dynamic_run, mean_of_runs};
use ca_core::search::{evaluate, BatchEvaluator, EvalConfig, Evaluation, Job};
use ca_core::sim::CompiledRule;
use ca_core::{BehaviorVector, DynamicParams};
use rayon::prelude::*;

/// Evaluates the jobs of a batch on the rayon pool, in job order.
#[derive(Debug, Clone, Copy, Default)]
pub struct Parallel;

impl BatchEvaluator for Parallel {
    fn evaluate_batch(&self, jobs: &[Job], cfg: &EvalConfig) -> ca_core::Result<Vec<Evaluation>> {
        jobs.par_iter()
            .map(|j| evaluate(&j.chromosome, j.md_seed, cfg))
            .collect()
    }
}

/// Dynamic measure with runs spread across threads.
pub fn dynamic_measure(rule: &CompiledRule, params: &DynamicParams) -> ca_core::Result<BehaviorVector> {
    params.validate()?;
    let per_run = (0..params.runs)
        .into_par_iter()
        .map(|i| dynamic_run(rule, params, i))
        .collect::<ca_core::Result<Vec<_>>>()?;
    Ok(mean_of_runs(&per_run))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ca_core::lattice::Dims;
    use ca_core::search::{md_seed, random_chromosome, Sequential};
    use ca_core::{gol_truth_table, TruthTable};
    use rand::SeedableRng;

    #[test]
    fn dynamic_matches_sequential() {
        let params = DynamicParams {
            runs: 12,
            dims: Some(Dims::Grid { rows: 24, cols: 24 }),
            max_steps: 20,
            seed: 8,
            ..DynamicParams::default()
        };
        let rule = CompiledRule::new(&gol_truth_table());
        assert_eq!(
            dynamic_measure(&rule, &params).unwrap(),
            ca_core::measures::dynamic_measure_of(&rule, &params).unwrap()
        );
        let r30 = CompiledRule::new(&TruthTable::elementary(30));
        let line = DynamicParams { dims: None, ..params };
        assert_eq!(
            dynamic_measure(&r30, &line).unwrap(),
            ca_core::measures::dynamic_measure_of(&r30, &line).unwrap()
        );
    }

    #[test]
    fn batch_matches_sequential() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let jobs: Vec<Job> = (0..6)
            .map(|_| {
                let c = random_chromosome(&mut rng);
                Job {
                    md_seed: md_seed(4, &c),
                    chromosome: c,
                }
            })
            .collect();
        let cfg = EvalConfig {
            dynamic: DynamicParams {
                runs: 3,
                dims: Some(Dims::Grid { rows: 16, cols: 16 }),
                max_steps: 10,
                ..DynamicParams::default()
            },
            ..EvalConfig::default()
        };
        assert_eq!(
            Parallel.evaluate_batch(&jobs, &cfg).unwrap(),
            Sequential.evaluate_batch(&jobs, &cfg).unwrap()
        );
    }
}
