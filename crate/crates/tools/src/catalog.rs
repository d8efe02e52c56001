//! JSON-lines catalogs and the published-rules importer.

use std::fs;
use std::io::{BufRead, Write};
use std::path::Path;

use ca_core::measures::static_measure_of;
use ca_core::rule::MOORE_ARITY;
use ca_core::search::CatalogEntry;
use ca_core::sim::CompiledRule;
use ca_core::{
    correlation, distance, feature_vector, BehaviorVector, BitOrder, CoverMode, DynamicParams, FeatureVector, HTables,
    MinimizeOptions, RuleNumber, TruthTable,
};
use serde::{Deserialize, Serialize};

use crate::error::{io_err, Result, ToolError};
use crate::parallel;
use crate::rulespec::parse_rule_spec;

/// Dynamic-measure settings stored with a record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamsRecord {
    pub runs: usize,
    pub size: String,
    pub steps: usize,
    pub density: f64,
    pub sampling: String,
}

impl ParamsRecord {
    pub fn new(p: &DynamicParams, arity: usize) -> Result<Self> {
        Ok(ParamsRecord {
            runs: p.runs,
            size: p.dims_for(arity)?.to_string(),
            steps: p.max_steps,
            density: p.density,
            sampling: p.sampling.to_string(),
        })
    }
}

/// One catalog line. Vectors are ordered (stability, decrease, growth, chaoticity).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub rule: String,
    pub arity: usize,
    pub bit_order: String,
    pub me: [f64; 4],
    pub md: Option<[f64; 4]>,
    pub fitness: Option<f64>,
    pub correlation: Option<f64>,
    pub generation_found: Option<usize>,
    pub cover_mode: String,
    /// Seed of the dynamic measure in `md`.
    pub seed: Option<u64>,
    pub params: Option<ParamsRecord>,
}

impl CatalogRecord {
    pub fn from_entry(e: &CatalogEntry, order: BitOrder, params: &DynamicParams) -> Result<Self> {
        Ok(CatalogRecord {
            rule: RuleNumber::encode(&e.chromosome, order).to_decimal(),
            arity: e.chromosome.arity(),
            bit_order: order.to_string(),
            me: e.me.to_array(),
            md: Some(e.md.to_array()),
            fitness: Some(e.fitness),
            correlation: e.correlation,
            generation_found: Some(e.generation_found),
            cover_mode: cover_mode_name(e.cover_mode).into(),
            seed: Some(e.seed),
            params: Some(ParamsRecord::new(params, e.chromosome.arity())?),
        })
    }

    pub fn truth_table(&self) -> Result<TruthTable> {
        let order: BitOrder = self.bit_order.parse()?;
        Ok(RuleNumber::from_decimal(&self.rule, self.arity)?.decode(order))
    }

    /// Checks that the rule decodes and each vector sums to 100.
    pub fn validate(&self) -> Result<()> {
        self.truth_table()?;
        let sums = |v: &[f64; 4]| (v.iter().sum::<f64>() - 100.0).abs() <= 1e-6;
        if !sums(&self.me) || self.md.as_ref().is_some_and(|md| !sums(md)) {
            return Err(ToolError::Invalid(format!(
                "measures of rule {} do not sum to 100",
                self.rule
            )));
        }
        Ok(())
    }
}

pub fn cover_mode_name(mode: CoverMode) -> &'static str {
    match mode {
        CoverMode::Exact => "exact",
        CoverMode::Greedy => "greedy",
        CoverMode::Auto => "auto",
    }
}

pub fn write_catalog(mut w: impl Write, records: &[CatalogRecord]) -> std::io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut w, r)?;
        w.write_all(b"\n")?;
    }
    w.flush()
}

pub fn save_catalog(path: &Path, records: &[CatalogRecord]) -> Result<()> {
    let file = fs::File::create(path).map_err(io_err(path))?;
    write_catalog(std::io::BufWriter::new(file), records).map_err(io_err(path))
}

pub fn read_catalog(path: &Path) -> Result<Vec<CatalogRecord>> {
    let file = fs::File::open(path).map_err(io_err(path))?;
    let mut out = Vec::new();
    for (i, line) in std::io::BufReader::new(file).lines().enumerate() {
        let line = line.map_err(io_err(path))?;
        if line.trim().is_empty() {
            continue;
        }
        let format_err = |message: String| ToolError::Format {
            path: path.to_path_buf(),
            line: i + 1,
            message,
        };
        let rec: CatalogRecord = serde_json::from_str(&line).map_err(|e| format_err(e.to_string()))?;
        rec.validate().map_err(|e| format_err(e.to_string()))?;
        out.push(rec);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ImportOptions {
    pub order: BitOrder,
    pub cover: MinimizeOptions,
    /// Also compute the dynamic measure, fitness and correlation.
    pub dynamic: Option<DynamicParams>,
    pub target: FeatureVector,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Import {
    pub records: Vec<CatalogRecord>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Decodes one rule per line: a decimal 512-bit rule number (whitespace
/// inside the number is ignored) or any rule spec. Blank lines and lines
/// starting with `#` are skipped; bad lines become diagnostics.
pub fn import_published_rules(text: &str, opts: &ImportOptions) -> Import {
    let mut import = Import::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match import_line(line, opts) {
            Ok(rec) => import.records.push(rec),
            Err(e) => import.diagnostics.push(Diagnostic {
                line: i + 1,
                message: e.to_string(),
            }),
        }
    }
    import
}

fn import_line(line: &str, opts: &ImportOptions) -> Result<CatalogRecord> {
    let tt = if line.contains(':') {
        parse_rule_spec(line, opts.order)?
    } else {
        let digits: String = line.split_whitespace().collect();
        RuleNumber::from_decimal(&digits, MOORE_ARITY)?.decode(opts.order)
    };
    measure_record(&tt, opts)
}

pub fn measure_record(tt: &TruthTable, opts: &ImportOptions) -> Result<CatalogRecord> {
    let rule = CompiledRule::with_options(tt, &opts.cover, &HTables::standard());
    let me = static_measure_of(&rule);
    let mut rec = CatalogRecord {
        rule: RuleNumber::encode(tt, opts.order).to_decimal(),
        arity: tt.arity(),
        bit_order: opts.order.to_string(),
        me: me.to_array(),
        md: None,
        fitness: None,
        correlation: None,
        generation_found: None,
        cover_mode: cover_mode_name(opts.cover.mode).into(),
        seed: None,
        params: None,
    };
    if let Some(params) = &opts.dynamic {
        let md: BehaviorVector = parallel::dynamic_measure(&rule, params)?;
        rec.md = Some(md.to_array());
        rec.correlation = correlation(&me, &md).ok();
        if tt.arity() == MOORE_ARITY {
            rec.fitness = Some(distance(&feature_vector(&me, &md), &opts.target));
        }
        rec.seed = Some(params.seed);
        rec.params = Some(ParamsRecord::new(params, tt.arity())?);
    }
    Ok(rec)
}
