//! The `ca` command line. JSON goes to stdout and diagnostics to stderr;
//! the exit status is 0 on success, 1 on domain errors and 2 on usage errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use ca_core::heval::validate_h;
use ca_core::measures::{gol_target, static_measure_of};
use ca_core::search::{run_ga, EvalConfig, GaConfig};
use ca_core::sim::{averaged_spacetime, evolve, CompiledRule};
use ca_core::{
    correlation, distance, feature_vector, BehaviorVector, BitOrder, CoverMode, Dims, DynamicParams, FeatureVector,
    HTables, Lattice, MCode, MinimizeOptions, Sampling, TruthTable,
};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use serde::Serialize;

use crate::catalog::{
    cover_mode_name, import_published_rules, save_catalog, write_catalog, CatalogRecord, ImportOptions, ParamsRecord,
};
use crate::error::{io_err, Result, ToolError};
use crate::rulespec::{parse_rule_spec, spec_string};
use crate::{pattern, ppm};

#[derive(Debug, Parser)]
#[command(
    name = "ca",
    version,
    about = "Behavioral measures and rule search for binary cellular automata"
)]
pub struct Cli {
    /// Significance of the neighborhood cells in 2D rule numbers
    #[arg(long, global = true, default_value = "msb-first", value_parser = parse_bit_order)]
    pub bit_order: BitOrder,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimize a rule and report its expression and static measure
    Analyze {
        rule: String,
        #[command(flatten)]
        cover: CoverArgs,
        /// Print the minimized expression instead of JSON
        #[arg(long)]
        emit_expr: bool,
        /// Print the coded truth table as `index -> M` lines instead of JSON
        #[arg(long)]
        emit_mtable: bool,
    },
    /// Static measure over the coded truth table
    Static {
        rule: String,
        #[command(flatten)]
        cover: CoverArgs,
    },
    /// Dynamic measure over random evolutions
    Dynamic {
        rule: String,
        #[command(flatten)]
        dynamic: DynamicArgs,
        #[command(flatten)]
        cover: CoverArgs,
    },
    /// Distance and correlations between the feature vectors of two rules
    Distance {
        a: String,
        b: String,
        #[command(flatten)]
        dynamic: DynamicArgs,
        #[command(flatten)]
        cover: CoverArgs,
    },
    /// Evolve a rule and write PPM frames, M-fields and a spacetime image
    Simulate {
        rule: String,
        /// Lattice size, `N` for 1D or `RxC` for 2D
        #[arg(long, value_parser = parse_dims)]
        size: Option<Dims>,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// '0'/'1' grid placed at the center of an empty lattice
        #[arg(long)]
        seed_pattern: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        cover: CoverArgs,
    },
    /// Genetic search for rules close to a target feature vector
    Search(SearchArgs),
    /// Check the evaluation tables against the behavior constraints
    ValidateH,
    /// Measure a file of published rule numbers, one per line
    Import {
        path: PathBuf,
        /// Also compute the dynamic measure, fitness and correlation
        #[arg(long)]
        dynamic: bool,
        #[command(flatten)]
        dynamic_args: DynamicArgs,
        #[command(flatten)]
        cover: CoverArgs,
        /// Write the catalog here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct CoverArgs {
    /// Prime cover selection: exact, greedy or auto
    #[arg(long, value_parser = parse_cover_mode)]
    pub cover_mode: Option<CoverMode>,
}

#[derive(Debug, Args)]
pub struct DynamicArgs {
    /// Number of random runs averaged [default: 30, search: 10]
    #[arg(long)]
    pub runs: Option<usize>,
    /// Lattice size, `N` for 1D or `RxC` for 2D [default: 200 or 100x100]
    #[arg(long, value_parser = parse_dims)]
    pub size: Option<Dims>,
    /// Maximum run length; each run lasts a uniform 1..=steps
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 0.5)]
    pub density: f64,
    /// Sampled steps: accumulate (all of 1..=k) or final (step k only)
    #[arg(long, default_value = "accumulate", value_parser = parse_sampling)]
    pub sampling: Sampling,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 20)]
    pub pop: usize,
    #[arg(long, default_value_t = 5000)]
    pub gens: usize,
    #[arg(long, default_value_t = 0.01)]
    pub mutation: f64,
    #[arg(long, default_value_t = 2)]
    pub elitism: usize,
    #[arg(long, default_value_t = 3)]
    pub tournament: usize,
    #[arg(long, default_value_t = 1000)]
    pub keep: usize,
    #[arg(long)]
    pub out: PathBuf,
    /// Target as a JSON array of 8 features or {"me": [...], "md": [...]},
    /// inline or in a file [default: Game of Life]
    #[arg(long)]
    pub target: Option<String>,
    #[command(flatten)]
    pub dynamic: DynamicArgs,
    /// Cover mode used during the search [default: greedy]
    #[arg(long, value_parser = parse_cover_mode)]
    pub cover_mode: Option<CoverMode>,
    /// Cover mode used to recompute emitted entries, or `none`
    #[arg(long, default_value = "auto")]
    pub report_cover_mode: String,
}

fn parse_bit_order(s: &str) -> std::result::Result<BitOrder, String> {
    s.parse().map_err(|e: ca_core::Error| e.to_string())
}

fn parse_cover_mode(s: &str) -> std::result::Result<CoverMode, String> {
    s.parse().map_err(|e: ca_core::Error| e.to_string())
}

fn parse_dims(s: &str) -> std::result::Result<Dims, String> {
    s.parse().map_err(|e: ca_core::Error| e.to_string())
}

fn parse_sampling(s: &str) -> std::result::Result<Sampling, String> {
    s.parse().map_err(|e: ca_core::Error| e.to_string())
}

/// Parses `args` and runs the command, returning the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn emit(out: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out).map_err(io_err("<stdout>"))
}

fn seed_or_default(seed: Option<u64>, err: &mut dyn Write) -> u64 {
    seed.unwrap_or_else(|| {
        let _ = writeln!(err, "note: no --seed given, using 0");
        0
    })
}

impl DynamicArgs {
    fn params(&self, default_runs: usize, err: &mut dyn Write) -> DynamicParams {
        DynamicParams {
            runs: self.runs.unwrap_or(default_runs),
            dims: self.size,
            max_steps: self.steps,
            density: self.density,
            seed: seed_or_default(self.seed, err),
            sampling: self.sampling,
        }
    }
}

impl CoverArgs {
    fn options(&self) -> MinimizeOptions {
        MinimizeOptions::new(self.cover_mode.unwrap_or_default())
    }
}

fn compile(tt: &TruthTable, opts: &MinimizeOptions) -> CompiledRule {
    CompiledRule::with_options(tt, opts, &HTables::standard())
}

#[derive(Serialize)]
struct StaticOut {
    rule: String,
    arity: usize,
    cover_mode: &'static str,
    exact: bool,
    me: [f64; 4],
}

#[derive(Serialize)]
struct AnalyzeOut {
    rule: String,
    arity: usize,
    cover_mode: &'static str,
    exact: bool,
    expr: String,
    literals: usize,
    me: [f64; 4],
    m_table: Vec<u8>,
}

#[derive(Serialize)]
struct DynamicOut {
    rule: String,
    arity: usize,
    cover_mode: &'static str,
    seed: u64,
    params: ParamsRecord,
    md: [f64; 4],
}

#[derive(Serialize)]
struct Measured {
    rule: String,
    me: [f64; 4],
    md: [f64; 4],
    features: FeatureVector,
    correlation: Option<f64>,
}

#[derive(Serialize)]
struct DistanceOut {
    a: Measured,
    b: Measured,
    distance: f64,
    cover_mode: &'static str,
    seed: u64,
    params: ParamsRecord,
}

#[derive(Serialize)]
struct SimulateOut {
    rule: String,
    size: String,
    steps: usize,
    seed: Option<u64>,
    density: f64,
    seed_pattern: Option<String>,
    live: Vec<usize>,
    files: Vec<String>,
}

#[derive(Serialize)]
struct SearchOut {
    out: String,
    seed: u64,
    population: usize,
    generations: usize,
    evaluated: usize,
    emitted: usize,
    best_fitness: Option<f64>,
    best_history: Vec<f64>,
    params: ParamsRecord,
}

#[derive(Serialize)]
struct CheckOut<'a> {
    name: &'a str,
    passed: bool,
    detail: &'a str,
}

#[derive(Serialize)]
struct ImportOut {
    out: String,
    records: usize,
    diagnostics: usize,
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let order = cli.bit_order;
    match &cli.command {
        Command::Analyze {
            rule,
            cover,
            emit_expr,
            emit_mtable,
        } => {
            let tt = parse_rule_spec(rule, order)?;
            let opts = cover.options();
            let c = compile(&tt, &opts);
            if *emit_expr || *emit_mtable {
                let mut text = String::new();
                if *emit_expr {
                    text.push_str(&c.expr().display(tt.arity()).to_string());
                    text.push('\n');
                }
                if *emit_mtable {
                    for (i, m) in c.codes().iter().enumerate() {
                        text.push_str(&format!("{i} -> {}\n", m.value()));
                    }
                }
                out.write_all(text.as_bytes()).map_err(io_err("<stdout>"))?;
            } else {
                emit(
                    out,
                    &AnalyzeOut {
                        rule: spec_string(&tt, order),
                        arity: tt.arity(),
                        cover_mode: cover_mode_name(opts.mode),
                        exact: c.exact(),
                        expr: c.expr().display(tt.arity()).to_string(),
                        literals: c.expr().literal_count(),
                        me: static_measure_of(&c).to_array(),
                        m_table: c.codes().iter().map(|m| m.value()).collect(),
                    },
                )?;
            }
        }
        Command::Static { rule, cover } => {
            let tt = parse_rule_spec(rule, order)?;
            let opts = cover.options();
            let c = compile(&tt, &opts);
            emit(
                out,
                &StaticOut {
                    rule: spec_string(&tt, order),
                    arity: tt.arity(),
                    cover_mode: cover_mode_name(opts.mode),
                    exact: c.exact(),
                    me: static_measure_of(&c).to_array(),
                },
            )?;
        }
        Command::Dynamic { rule, dynamic, cover } => {
            let tt = parse_rule_spec(rule, order)?;
            let params = dynamic.params(30, err);
            let opts = cover.options();
            let c = compile(&tt, &opts);
            let md = crate::parallel::dynamic_measure(&c, &params)?;
            emit(
                out,
                &DynamicOut {
                    rule: spec_string(&tt, order),
                    arity: tt.arity(),
                    cover_mode: cover_mode_name(opts.mode),
                    seed: params.seed,
                    params: ParamsRecord::new(&params, tt.arity())?,
                    md: md.to_array(),
                },
            )?;
        }
        Command::Distance { a, b, dynamic, cover } => {
            let params = dynamic.params(30, err);
            let opts = cover.options();
            let ta = parse_rule_spec(a, order)?;
            let tb = parse_rule_spec(b, order)?;
            if ta.arity() != tb.arity() {
                return Err(ca_core::Error::ArityMismatch {
                    expected: ta.arity(),
                    got: tb.arity(),
                }
                .into());
            }
            let measure = |tt: &TruthTable| -> Result<Measured> {
                let c = compile(tt, &opts);
                let me = static_measure_of(&c);
                let md = crate::parallel::dynamic_measure(&c, &params)?;
                Ok(Measured {
                    rule: spec_string(tt, order),
                    me: me.to_array(),
                    md: md.to_array(),
                    features: feature_vector(&me, &md),
                    correlation: correlation(&me, &md).ok(),
                })
            };
            let (ma, mb) = (measure(&ta)?, measure(&tb)?);
            emit(
                out,
                &DistanceOut {
                    distance: distance(&ma.features, &mb.features),
                    a: ma,
                    b: mb,
                    cover_mode: cover_mode_name(opts.mode),
                    seed: params.seed,
                    params: ParamsRecord::new(&params, ta.arity())?,
                },
            )?;
        }
        Command::Simulate {
            rule,
            size,
            steps,
            seed,
            density,
            seed_pattern,
            out: dir,
            cover,
        } => {
            let tt = parse_rule_spec(rule, order)?;
            let dims = match size {
                Some(d) if d.arity() != tt.arity() => {
                    return Err(ca_core::Error::DimsMismatch { arity: tt.arity() }.into())
                }
                Some(d) => *d,
                None => Dims::default_for_arity(tt.arity())?,
            };
            let (c0, seed) = match seed_pattern {
                Some(p) => (pattern::centered(&pattern::read_pattern(p)?, dims)?, None),
                None => {
                    if !(0.0..=1.0).contains(density) {
                        return Err(ToolError::Invalid(format!("density {density} outside [0, 1]")));
                    }
                    let seed = seed_or_default(*seed, err);
                    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                    (Lattice::random(dims, *density, &mut rng)?, Some(seed))
                }
            };
            let c = compile(&tt, &cover.options());
            let history = evolve(&c0, &c, *steps, true)?;
            let files = write_simulation(dir, &history)?;
            emit(
                out,
                &SimulateOut {
                    rule: spec_string(&tt, order),
                    size: dims.to_string(),
                    steps: *steps,
                    seed,
                    density: *density,
                    seed_pattern: seed_pattern.as_ref().map(|p| p.display().to_string()),
                    live: history.frames.iter().map(Lattice::count_ones).collect(),
                    files,
                },
            )?;
        }
        Command::Search(args) => search(args, order, out, err)?,
        Command::ValidateH => {
            let report = validate_h(&HTables::standard());
            let mut text = String::from("{\"checks\":[\n");
            for (i, c) in report.checks.iter().enumerate() {
                let row = serde_json::to_string(&CheckOut {
                    name: &c.name,
                    passed: c.passed,
                    detail: &c.detail,
                })?;
                text.push_str(&row);
                text.push_str(if i + 1 < report.checks.len() { ",\n" } else { "\n" });
            }
            text.push_str(&format!("],\"passed\":{}}}\n", report.passed()));
            out.write_all(text.as_bytes()).map_err(io_err("<stdout>"))?;
            if !report.passed() {
                for c in report.checks.iter().filter(|c| !c.passed) {
                    let _ = writeln!(err, "failed: {} ({})", c.name, c.detail);
                }
                return Ok(1);
            }
        }
        Command::Import {
            path,
            dynamic,
            dynamic_args,
            cover,
            out: dest,
        } => {
            let text = fs::read_to_string(path).map_err(io_err(path))?;
            let opts = ImportOptions {
                order,
                cover: cover.options(),
                dynamic: dynamic.then(|| dynamic_args.params(30, err)),
                target: gol_target(),
            };
            let imported = import_published_rules(&text, &opts);
            for d in &imported.diagnostics {
                let _ = writeln!(err, "{}:{}: {}", path.display(), d.line, d.message);
            }
            match dest {
                Some(dest) => {
                    save_catalog(dest, &imported.records)?;
                    emit(
                        out,
                        &ImportOut {
                            out: dest.display().to_string(),
                            records: imported.records.len(),
                            diagnostics: imported.diagnostics.len(),
                        },
                    )?;
                }
                None => write_catalog(&mut *out, &imported.records).map_err(io_err("<stdout>"))?,
            }
            if !imported.diagnostics.is_empty() {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn write_simulation(dir: &Path, h: &ca_core::EvolutionHistory) -> Result<Vec<String>> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mut files = Vec::new();
    let mut put = |name: String, bytes: Vec<u8>| -> Result<()> {
        ppm::write(&dir.join(&name), &bytes)?;
        files.push(name);
        Ok(())
    };
    match h.frames[0].dims() {
        Dims::Line(_) => {
            put("spacetime.ppm".into(), ppm::encode_lattice_rows(&h.frames))?;
            if !h.mfields.is_empty() {
                let rows: Vec<&[MCode]> = h.mfields.iter().map(|f| f.codes()).collect();
                put("mfield.ppm".into(), ppm::encode_code_rows(&rows))?;
            }
        }
        Dims::Grid { .. } => {
            for (t, f) in h.frames.iter().enumerate() {
                put(format!("frame-{t}.ppm"), ppm::encode_lattice(f))?;
            }
            for (i, f) in h.mfields.iter().enumerate() {
                put(format!("mfield-{}.ppm", i + 1), ppm::encode_mfield(f))?;
            }
            put("spacetime.ppm".into(), ppm::encode_grayscale(&averaged_spacetime(h)?))?;
        }
    }
    Ok(files)
}

/// Parses a search target: 8 features in feature order, or
/// `{"me": [...], "md": [...]}` with vectors ordered (stability, decrease,
/// growth, chaoticity). Text not starting with `[` or `{` is a file path.
pub fn parse_target(text: &str) -> Result<FeatureVector> {
    let body = match text.trim_start().chars().next() {
        Some('[') | Some('{') => text.to_string(),
        _ => fs::read_to_string(text).map_err(io_err(text))?,
    };
    #[derive(serde::Deserialize)]
    #[serde(untagged)]
    enum Target {
        Features(FeatureVector),
        Measures { me: [f64; 4], md: [f64; 4] },
    }
    Ok(match serde_json::from_str::<Target>(&body)? {
        Target::Features(f) => f,
        Target::Measures { me, md } => feature_vector(&BehaviorVector::from_array(me), &BehaviorVector::from_array(md)),
    })
}

fn search(args: &SearchArgs, order: BitOrder, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let dynamic = args.dynamic.params(10, err);
    let target = match &args.target {
        Some(t) => parse_target(t)?,
        None => gol_target(),
    };
    let report_cover = match args.report_cover_mode.as_str() {
        "none" => None,
        m => Some(MinimizeOptions::new(m.parse()?)),
    };
    let cfg = GaConfig {
        population: args.pop,
        generations: args.gens,
        mutation: args.mutation,
        elitism: args.elitism,
        tournament: args.tournament,
        seed: dynamic.seed,
        keep: args.keep,
        eval: EvalConfig {
            dynamic,
            target,
            cover: MinimizeOptions::new(args.cover_mode.unwrap_or(CoverMode::Greedy)),
        },
        report_cover,
    };
    let outcome = run_ga(&cfg, &crate::parallel::Parallel)?;
    let records = outcome
        .catalog
        .iter()
        .map(|e| CatalogRecord::from_entry(e, order, &cfg.eval.dynamic))
        .collect::<Result<Vec<_>>>()?;
    save_catalog(&args.out, &records)?;
    emit(
        out,
        &SearchOut {
            out: args.out.display().to_string(),
            seed: cfg.seed,
            population: cfg.population,
            generations: cfg.generations,
            evaluated: outcome.evaluated,
            emitted: records.len(),
            best_fitness: outcome.catalog.first().map(|e| e.fitness),
            best_history: outcome.best_history,
            params: ParamsRecord::new(&cfg.eval.dynamic, ca_core::rule::MOORE_ARITY)?,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("ca").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_str(&["nonsense"]).0, 2);
        assert_eq!(run_str(&["static"]).0, 2);
        assert_eq!(run_str(&["dynamic", "elem:30", "--runs", "x"]).0, 2);
        assert_eq!(run_str(&["static", "elem:30", "--bit-order", "middle"]).0, 2);
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("validate-h"));
    }

    #[test]
    fn domain_errors_exit_one() {
        let (code, out, err) = run_str(&["static", "elem:256"]);
        assert_eq!(code, 1);
        assert!(out.is_empty());
        assert!(err.starts_with("error:"));
        assert_eq!(run_str(&["dynamic", "elem:30", "--size", "10x10", "--seed", "1"]).0, 1);
    }

    #[test]
    fn targets() {
        let f = parse_target("[1,2,3,4,5,6,7,8]").unwrap();
        assert_eq!(f, [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
        let g = parse_target(r#"{"me":[0,4.68,27.34,67.96],"md":[0,75.23,11.37,13.38]}"#).unwrap();
        assert_eq!(g, gol_target());
        assert!(parse_target("[1,2]").is_err());
    }
}
