//! Static and dynamic behavior measures, feature vectors and their comparison.

use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::{Dims, Lattice};
use crate::mcode::{Behavior, MCode};
use crate::rule::TruthTable;
use crate::sim::{step_counting, CompiledRule};
use crate::{Error, Result};

/// Percentages of (stability, decrease, growth, chaoticity).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BehaviorVector {
    pub stability: f64,
    pub decrease: f64,
    pub growth: f64,
    pub chaoticity: f64,
}

impl BehaviorVector {
    pub const fn new(stability: f64, decrease: f64, growth: f64, chaoticity: f64) -> Self {
        BehaviorVector {
            stability,
            decrease,
            growth,
            chaoticity,
        }
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        BehaviorVector::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.stability, self.decrease, self.growth, self.chaoticity]
    }

    /// Percentages from occurrence counts indexed by code value.
    pub fn from_code_counts(counts: &[u64; 6]) -> Self {
        let total: u64 = counts.iter().sum();
        let mut slots = [0u64; 4];
        for (v, &n) in counts.iter().enumerate() {
            let m = MCode::new(v as u8).expect("index below 6");
            slots[m.behavior().slot()] += n;
        }
        if total == 0 {
            return BehaviorVector::default();
        }
        BehaviorVector::from_array(slots.map(|n| n as f64 * 100.0 / total as f64))
    }

    pub fn get(&self, b: Behavior) -> f64 {
        self.to_array()[b.slot()]
    }

    pub fn sum(&self) -> f64 {
        self.to_array().iter().sum()
    }
}

/// Counts of each code value over the whole table.
pub fn code_counts(codes: &[MCode]) -> [u64; 6] {
    let mut counts = [0u64; 6];
    for m in codes {
        counts[m.value() as usize] += 1;
    }
    counts
}

/// Behavior percentages over every row of the rule's coded truth table.
pub fn static_measure(tt: &TruthTable) -> BehaviorVector {
    static_measure_of(&CompiledRule::new(tt))
}

pub fn static_measure_of(rule: &CompiledRule) -> BehaviorVector {
    BehaviorVector::from_code_counts(&code_counts(rule.codes()))
}

/// Which steps of a run contribute codes to the dynamic measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Sampling {
    /// Every cell at every step `1..=k`.
    #[default]
    Accumulate,
    /// Every cell at step `k` only.
    Final,
}

impl core::str::FromStr for Sampling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "accumulate" => Ok(Sampling::Accumulate),
            "final" => Ok(Sampling::Final),
            other => Err(Error::InvalidParameter(format!("unknown sampling {other:?}"))),
        }
    }
}

impl core::fmt::Display for Sampling {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Sampling::Accumulate => "accumulate",
            Sampling::Final => "final",
        })
    }
}

/// Parameters of the dynamic measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DynamicParams {
    /// Number of independent runs averaged.
    pub runs: usize,
    /// Lattice shape; `None` uses [`Dims::default_for_arity`].
    pub dims: Option<Dims>,
    /// Each run lasts a uniform number of steps in `1..=max_steps`.
    pub max_steps: usize,
    /// Probability that an initial cell is alive.
    pub density: f64,
    pub seed: u64,
    pub sampling: Sampling,
}

impl Default for DynamicParams {
    fn default() -> Self {
        DynamicParams {
            runs: 30,
            dims: None,
            max_steps: 100,
            density: 0.5,
            seed: 0,
            sampling: Sampling::Accumulate,
        }
    }
}

impl DynamicParams {
    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::InvalidParameter("runs must be at least 1".into()));
        }
        if self.max_steps == 0 {
            return Err(Error::InvalidParameter("max steps must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.density) {
            return Err(Error::InvalidParameter(format!(
                "density {} outside [0, 1]",
                self.density
            )));
        }
        if let Some(d) = self.dims {
            d.validate()?;
        }
        Ok(())
    }

    pub fn dims_for(&self, arity: usize) -> Result<Dims> {
        match self.dims {
            Some(d) if d.arity() != arity => Err(Error::DimsMismatch { arity }),
            Some(d) => Ok(d),
            None => Dims::default_for_arity(arity),
        }
    }
}

/// Code counts of one run: a random lattice evolved for `k` steps, counting
/// the code of every cell at the sampled steps.
///
/// Run `i` draws from its own ChaCha stream of `seed`, so runs can be
/// computed in any order or in parallel.
pub fn dynamic_run(rule: &CompiledRule, params: &DynamicParams, run: usize) -> Result<[u64; 6]> {
    let dims = params.dims_for(rule.arity())?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(run as u64);
    let k = rng.random_range(1..=params.max_steps);
    let mut lattice = Lattice::random(dims, params.density, &mut rng)?;
    let mut counts = [0u64; 6];
    match params.sampling {
        Sampling::Accumulate => {
            for _ in 0..k {
                lattice = step_counting(&lattice, rule, &mut counts)?;
            }
        }
        Sampling::Final => {
            for _ in 1..k {
                lattice = crate::sim::step(&lattice, rule.truth_table())?;
            }
            step_counting(&lattice, rule, &mut counts)?;
        }
    }
    Ok(counts)
}

/// Mean of per-run percentage vectors, folded in run order.
pub fn mean_of_runs(per_run: &[[u64; 6]]) -> BehaviorVector {
    let n = per_run.len() as f64;
    let mut acc = [0.0f64; 4];
    for counts in per_run {
        for (a, v) in acc.iter_mut().zip(BehaviorVector::from_code_counts(counts).to_array()) {
            *a += v;
        }
    }
    BehaviorVector::from_array(acc.map(|a| a / n))
}

/// Mean behavior percentages over `params.runs` random evolutions; the
/// initial configuration is never sampled.
pub fn dynamic_measure(tt: &TruthTable, params: &DynamicParams) -> Result<BehaviorVector> {
    dynamic_measure_of(&CompiledRule::new(tt), params)
}

pub fn dynamic_measure_of(rule: &CompiledRule, params: &DynamicParams) -> Result<BehaviorVector> {
    params.validate()?;
    let per_run = (0..params.runs)
        .map(|i| dynamic_run(rule, params, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(mean_of_runs(&per_run))
}

/// Static then dynamic measure, each ordered (chaoticity, decrease, growth, stability).
pub type FeatureVector = [f64; 8];

pub fn feature_vector(me: &BehaviorVector, md: &BehaviorVector) -> FeatureVector {
    [
        me.chaoticity,
        me.decrease,
        me.growth,
        me.stability,
        md.chaoticity,
        md.decrease,
        md.growth,
        md.stability,
    ]
}

/// Euclidean distance.
pub fn distance(a: &FeatureVector, b: &FeatureVector) -> f64 {
    libm::sqrt(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum())
}

/// Pearson correlation of the four aligned components.
pub fn correlation(me: &BehaviorVector, md: &BehaviorVector) -> Result<f64> {
    let x = me.to_array();
    let y = md.to_array();
    let mean = |v: &[f64; 4]| v.iter().sum::<f64>() / 4.0;
    let (mx, my) = (mean(&x), mean(&y));
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for i in 0..4 {
        let (dx, dy) = (x[i] - mx, y[i] - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::UndefinedCorrelation);
    }
    Ok(sxy / libm::sqrt(sxx * syy))
}

/// Published Game of Life measures used as the default search target.
pub const GOL_STATIC: BehaviorVector = BehaviorVector::new(0.0, 4.68, 27.34, 67.96);
pub const GOL_DYNAMIC: BehaviorVector = BehaviorVector::new(0.0, 75.23, 11.37, 13.38);

pub fn gol_target() -> FeatureVector {
    feature_vector(&GOL_STATIC, &GOL_DYNAMIC)
}
