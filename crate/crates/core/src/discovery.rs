//! The discovery driver: experiments, compactness-ordered enumeration,
//! sub-theory pruning, validation, speed extraction, and reporting.
//!
//! One run marches candidate levels q = 1..q_max with rank-homogeneity
//! pruning, skips candidates that contain an already-found theory as a
//! subset, validates the rest, and appends newly found theories only
//! between levels. For a fixed configuration (including the seed) the
//! resulting JSON report is byte-identical apart from its timing fields.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::enumerator::{self, Prune, SubsetMask, TheoryLevels};
use crate::theory_lang::{physics_alphabet, term_weights, Candidate, Term};
use crate::validator::{self, FitError, ValidatedTheory};
use crate::virtual_lab::{make_experiments, ExperimentConfig, OmegaMode, MIN_EXPERIMENTS};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: expected 'key = value', got '{text}'")]
    Malformed { line: usize, text: String },
    #[error("line {line}: unknown key '{key}'")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key '{key}'")]
    DuplicateKey { line: usize, key: String },
    #[error("line {line}: invalid value for '{key}': {value}")]
    BadValue { line: usize, key: String, value: String },
    #[error("experiment_count {0} is below the minimum of {MIN_EXPERIMENTS}")]
    TooFewExperiments(usize),
    #[error("q_max {0} leaves nothing discoverable; the smallest theory level is 4")]
    QMaxTooSmall(u32),
    #[error("eps_sv {0} must lie in (0, 1)")]
    BadThreshold(f64),
    #[error(transparent)]
    Experiment(#[from] crate::virtual_lab::ConfigError),
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Enumeration(#[from] enumerator::EnumError),
    #[error(transparent)]
    Fit(#[from] FitError),
    #[error("cannot write report to {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("report serialization failed: {0}")]
    Serialize(#[from] serde_json::Error),
}

/// Full configuration of a discovery run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub mode: OmegaMode,
    pub experiment_count: usize,
    pub seed: u64,
    pub q_max: u32,
    pub eps_sv: f64,
    pub p0: f64,
    pub omega_range: (f64, f64),
    pub r_range_lambda: (f64, f64),
    pub output_path: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        let ve = ExperimentConfig::default();
        RunConfig {
            mode: ve.mode,
            experiment_count: ve.count,
            seed: 42,
            q_max: 14,
            eps_sv: 1.0e-6,
            p0: ve.p0,
            omega_range: ve.omega_range,
            r_range_lambda: ve.r_range_lambda,
            output_path: PathBuf::from("discovery_report.json"),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.experiment_count < MIN_EXPERIMENTS {
            return Err(ConfigError::TooFewExperiments(self.experiment_count));
        }
        if self.q_max < 4 {
            return Err(ConfigError::QMaxTooSmall(self.q_max));
        }
        if !(self.eps_sv > 0.0 && self.eps_sv < 1.0) {
            return Err(ConfigError::BadThreshold(self.eps_sv));
        }
        self.experiment_config().validate()?;
        Ok(())
    }

    pub fn experiment_config(&self) -> ExperimentConfig {
        ExperimentConfig {
            count: self.experiment_count,
            mode: self.mode,
            p0: self.p0,
            omega_range: self.omega_range,
            r_range_lambda: self.r_range_lambda,
            ..ExperimentConfig::default()
        }
    }
}

/// Parses the flat `key = value` config format. Unknown keys are errors.
pub fn parse_config_str(text: &str) -> Result<RunConfig, ConfigError> {
    let mut config = RunConfig::default();
    let mut seen: Vec<String> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| ConfigError::Malformed { line, text: content.to_string() })?;
        let key = key.trim();
        let value = value.trim();
        if seen.iter().any(|k| k == key) {
            return Err(ConfigError::DuplicateKey { line, key: key.to_string() });
        }
        seen.push(key.to_string());

        let bad = |k: &str, v: &str| ConfigError::BadValue {
            line,
            key: k.to_string(),
            value: v.to_string(),
        };
        match key {
            "mode" => {
                config.mode = OmegaMode::parse(value).ok_or_else(|| bad(key, value))?;
            }
            "experiment_count" => {
                config.experiment_count = value.parse().map_err(|_| bad(key, value))?;
            }
            "seed" => config.seed = value.parse().map_err(|_| bad(key, value))?,
            "q_max" => config.q_max = value.parse().map_err(|_| bad(key, value))?,
            "eps_sv" => config.eps_sv = value.parse().map_err(|_| bad(key, value))?,
            "p0" => config.p0 = value.parse().map_err(|_| bad(key, value))?,
            "omega_min" => config.omega_range.0 = value.parse().map_err(|_| bad(key, value))?,
            "omega_max" => config.omega_range.1 = value.parse().map_err(|_| bad(key, value))?,
            "r_min_lambda" => {
                config.r_range_lambda.0 = value.parse().map_err(|_| bad(key, value))?;
            }
            "r_max_lambda" => {
                config.r_range_lambda.1 = value.parse().map_err(|_| bad(key, value))?;
            }
            "output_path" => config.output_path = PathBuf::from(value),
            _ => return Err(ConfigError::UnknownKey { line, key: key.to_string() }),
        }
    }
    config.validate()?;
    Ok(config)
}

pub fn load_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config_str(&text)
}

/// Config echo embedded in reports.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ConfigEcho {
    pub mode: String,
    pub experiment_count: usize,
    pub seed: u64,
    pub q_max: u32,
    pub eps_sv: f64,
    pub p0: f64,
    pub omega_min: f64,
    pub omega_max: f64,
    pub r_min_lambda: f64,
    pub r_max_lambda: f64,
    pub output_path: String,
}

impl ConfigEcho {
    fn new(config: &RunConfig) -> Self {
        ConfigEcho {
            mode: config.mode.as_str().to_string(),
            experiment_count: config.experiment_count,
            seed: config.seed,
            q_max: config.q_max,
            eps_sv: config.eps_sv,
            p0: config.p0,
            omega_min: config.omega_range.0,
            omega_max: config.omega_range.1,
            r_min_lambda: config.r_range_lambda.0,
            r_max_lambda: config.r_range_lambda.1,
            output_path: config.output_path.display().to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct TermDescriptor {
    pub letter: String,
    pub field: String,
    pub operator: String,
}

impl TermDescriptor {
    fn new(term: Term) -> Self {
        TermDescriptor {
            letter: term.letter().to_string(),
            field: term.field.name().to_string(),
            operator: term.op.name().to_string(),
        }
    }

    pub fn to_term(&self) -> Option<Term> {
        let mut chars = self.letter.chars();
        let letter = chars.next()?;
        if chars.next().is_some() {
            return None;
        }
        Term::from_letter(letter).ok()
    }
}

/// One discovered theory as it appears in the JSON report.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct FoundTheory {
    pub terms: Vec<TermDescriptor>,
    pub q: u32,
    pub coefficients: Vec<f64>,
    pub sv_ratio: f64,
    pub residual: f64,
}

impl FoundTheory {
    fn new(theory: &ValidatedTheory) -> Self {
        FoundTheory {
            terms: theory.candidate.terms().iter().copied().map(TermDescriptor::new).collect(),
            q: theory.q(),
            coefficients: theory.coefficients.clone(),
            sv_ratio: theory.sv_ratio,
            residual: theory.residual,
        }
    }

    pub fn candidate(&self) -> Option<Candidate> {
        let terms: Option<Vec<Term>> = self.terms.iter().map(TermDescriptor::to_term).collect();
        Some(Candidate::new(terms?))
    }

    pub fn equation(&self) -> String {
        match self.candidate().and_then(|c| c.render(&self.coefficients).ok()) {
            Some(text) => text,
            None => "<malformed theory entry>".to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CEstimate {
    pub source: String,
    pub value: f64,
}

/// Per-level accounting: candidates handled by the driver and how many of
/// them reached validation (the rest were skip-marked supersets of found
/// theories). `wall_seconds` is a timing field.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct LevelReport {
    pub q: u32,
    pub count: usize,
    pub validated: usize,
    pub wall_seconds: f64,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct DiscoveryReport {
    pub config: ConfigEcho,
    pub found: Vec<FoundTheory>,
    pub c_estimates: Vec<CEstimate>,
    pub candidates_examined: Vec<LevelReport>,
    pub runtime_seconds: f64,
}

/// True when the candidate contains some already-found theory as a subset
/// and should therefore be skipped.
pub fn subtheory_filter(candidate: &Candidate, found: &[ValidatedTheory]) -> bool {
    found.iter().any(|t| candidate.contains(&t.candidate))
}

struct RankTable {
    scalar_mask: SubsetMask,
    vector_mask: SubsetMask,
}

impl RankTable {
    fn new(alphabet: &[Term]) -> Self {
        let mut scalar_mask = 0;
        let mut vector_mask = 0;
        for (i, term) in alphabet.iter().enumerate() {
            match term.rank() {
                crate::theory_lang::TensorRank::Scalar => scalar_mask |= 1 << i,
                crate::theory_lang::TensorRank::Vector3 => vector_mask |= 1 << i,
            }
        }
        RankTable { scalar_mask, vector_mask }
    }

    fn homogeneous(&self, mask: SubsetMask) -> bool {
        mask & self.scalar_mask == 0 || mask & self.vector_mask == 0
    }
}

/// Runs the full pipeline. Deterministic for a fixed config apart from
/// the timing fields in the report.
pub fn run_discovery(config: &RunConfig) -> Result<DiscoveryReport, RunError> {
    config.validate()?;
    let start = Instant::now();
    let experiments = make_experiments(&config.experiment_config(), config.seed)
        .map_err(ConfigError::Experiment)?;

    let alphabet = physics_alphabet();
    let weights = term_weights(&alphabet).expect("physics alphabet is duplicate-free");
    let ranks = RankTable::new(&alphabet);
    let mut levels = TheoryLevels::new(&weights)?;

    let mut found: Vec<ValidatedTheory> = Vec::new();
    let mut found_masks: Vec<SubsetMask> = Vec::new();
    let mut level_reports = Vec::with_capacity(config.q_max as usize);

    for q in 1..=config.q_max {
        let level_start = Instant::now();
        if q >= 2 {
            levels.squeeze(q, &mut |mask| {
                if !ranks.homogeneous(mask) {
                    Prune::Drop
                } else if found_masks.iter().any(|f| mask & f == *f) {
                    Prune::SkipValidation
                } else {
                    Prune::Keep
                }
            })?;
        }

        let entries: Vec<_> = levels.level(q).to_vec();
        let mut validated = 0usize;
        let mut new_found = Vec::new();
        for entry in &entries {
            if entry.skip_validation {
                continue;
            }
            validated += 1;
            let candidate = Candidate::from_mask(entry.mask, &alphabet);
            if let Some(theory) = validator::fit(&candidate, &experiments, config.eps_sv)? {
                new_found.push((entry.mask, theory));
            }
        }
        // Found theories only prune levels above their own; the list is
        // extended strictly between levels.
        for (mask, theory) in new_found {
            found_masks.push(mask);
            found.push(theory);
        }
        level_reports.push(LevelReport {
            q,
            count: entries.len(),
            validated,
            wall_seconds: level_start.elapsed().as_secs_f64(),
        });
    }

    let mut c_estimates = Vec::new();
    for theory in &found {
        if let Some(value) = validator::derive_c(theory)? {
            c_estimates.push(CEstimate {
                source: theory.candidate.letter_label(),
                value,
            });
        }
    }

    Ok(DiscoveryReport {
        config: ConfigEcho::new(config),
        found: found.iter().map(FoundTheory::new).collect(),
        c_estimates,
        candidates_examined: level_reports,
        runtime_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Human-readable rendering of a report: one equation per line with its
/// level and diagnostics, then the speed estimates.
pub fn render_text(report: &DiscoveryReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "Discovered theories (mode {}, seed {}, eps_sv {:e}):",
        report.config.mode, report.config.seed, report.config.eps_sv
    );
    if report.found.is_empty() {
        let _ = writeln!(out, "  (none up to q_max = {})", report.config.q_max);
    }
    for theory in &report.found {
        let _ = writeln!(
            out,
            "  q={:<3} {}   [sv_ratio {:.2e}, residual {:.2e}]",
            theory.q,
            theory.equation(),
            theory.sv_ratio,
            theory.residual
        );
    }
    if !report.c_estimates.is_empty() {
        let _ = writeln!(out, "Wave-speed estimates:");
        for estimate in &report.c_estimates {
            let _ = writeln!(out, "  {}  c = {:.6e} m/s", estimate.source, estimate.value);
        }
    }
    let total_examined: usize = report.candidates_examined.iter().map(|l| l.count).sum();
    let total_validated: usize = report.candidates_examined.iter().map(|l| l.validated).sum();
    let _ = writeln!(
        out,
        "Levels 1..{}: {} candidates handled, {} validated, {:.3} s total",
        report.config.q_max, total_examined, total_validated, report.runtime_seconds
    );
    out
}

/// Writes the JSON report to `path` and the text rendering next to it
/// (same name, `.txt` extension).
pub fn write_report(report: &DiscoveryReport, path: &Path) -> Result<(), RunError> {
    let json = serde_json::to_string_pretty(report)?;
    std::fs::write(path, json.as_bytes()).map_err(|source| RunError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let text_path = path.with_extension("txt");
    std::fs::write(&text_path, render_text(report).as_bytes()).map_err(|source| RunError::Io {
        path: text_path.clone(),
        source,
    })?;
    Ok(())
}

/// One row of the enumeration benchmark: cumulative distinct candidates
/// emitted up to `depth` and the cumulative wall time to build them.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct BenchRow {
    pub mode: String,
    pub depth: u32,
    pub cumulative_candidates: u64,
    pub wall_seconds: f64,
}

/// Fast-versus-slow benchmark outcome. `examined` counts are the
/// machine-independent work units (base cases plus every union attempt);
/// the emitted counts land in the CSV rows.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub fast_examined: u64,
    pub slow_examined: u64,
    pub fast_emitted: u64,
    pub slow_emitted: u64,
}

impl BenchReport {
    /// Enumeration-work ratio: how many times fewer candidate formations
    /// the weighted march examines.
    pub fn examined_ratio(&self) -> f64 {
        self.slow_examined as f64 / self.fast_examined.max(1) as f64
    }
}

fn bench_side(mode: &str, weights: &[u32], q_max: u32) -> Result<Vec<BenchRow>, RunError> {
    let mut levels = TheoryLevels::new(weights)?;
    let mut rows = Vec::with_capacity(q_max as usize);
    let mut cumulative = 0u64;
    let started = Instant::now();
    for q in 1..=q_max {
        if q >= 2 {
            levels.squeeze(q, &mut enumerator::no_prune)?;
        }
        cumulative += levels.level(q).len() as u64;
        rows.push(BenchRow {
            mode: mode.to_string(),
            depth: q,
            cumulative_candidates: cumulative,
            wall_seconds: started.elapsed().as_secs_f64(),
        });
    }
    Ok(rows)
}

/// Runs the weighted march (to `config.q_max`) against the unit-weight
/// brute-force march (to set size 12, where it exhausts the powerset) and
/// tabulates candidate counts and wall times per depth.
pub fn bench_fast_slow(config: &RunConfig) -> Result<BenchReport, RunError> {
    config.validate()?;
    let alphabet = physics_alphabet();
    let weights = term_weights(&alphabet).expect("physics alphabet is duplicate-free");
    let fast_rows = bench_side("fast", &weights, config.q_max)?;

    let unit_weights = vec![1u32; alphabet.len()];
    let slow_depth = alphabet.len() as u32;
    let slow_rows = bench_side("slow", &unit_weights, slow_depth)?;

    let fast = enumerator::march(&weights, config.q_max, &mut enumerator::no_prune)?;
    let slow = enumerator::march(&unit_weights, slow_depth, &mut enumerator::no_prune)?;

    let mut rows = fast_rows;
    rows.extend(slow_rows);
    Ok(BenchReport {
        rows,
        fast_examined: fast.total_examined(),
        slow_examined: slow.total_examined(),
        fast_emitted: fast.total_emitted(),
        slow_emitted: slow.total_emitted(),
    })
}

/// Writes the benchmark table as CSV with the fixed column set.
pub fn write_bench_csv(report: &BenchReport, path: &Path) -> Result<(), RunError> {
    let mut out = String::from("mode,depth,cumulative_candidates,wall_seconds\n");
    for row in &report.rows {
        let _ = writeln!(
            out,
            "{},{},{},{:.9}",
            row.mode, row.depth, row.cumulative_candidates, row.wall_seconds
        );
    }
    std::fs::write(path, out.as_bytes()).map_err(|source| RunError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory_lang::Candidate;

    fn letters(s: &str) -> Candidate {
        Candidate::from_letters(s).unwrap()
    }

    fn found_labels(report: &DiscoveryReport) -> Vec<(u32, String)> {
        report
            .found
            .iter()
            .map(|f| (f.q, f.candidate().unwrap().letter_label()))
            .collect()
    }

    #[test]
    fn default_run_finds_the_six_theories() {
        let report = run_discovery(&RunConfig::default()).unwrap();
        assert_eq!(
            found_labels(&report),
            vec![
                (4, "[C]".to_string()),
                (4, "[D]".to_string()),
                (11, "[G, F]".to_string()),
                (11, "[E, H]".to_string()),
                (14, "[I, K]".to_string()),
                (14, "[J, L]".to_string()),
            ]
        );
        assert_eq!(report.c_estimates.len(), 3);
    }

    #[test]
    fn q_max_four_stops_at_the_divergence_pair() {
        let config = RunConfig { q_max: 4, ..RunConfig::default() };
        let report = run_discovery(&config).unwrap();
        assert_eq!(
            found_labels(&report),
            vec![(4, "[C]".to_string()), (4, "[D]".to_string())]
        );
        assert!(report.c_estimates.is_empty());
    }

    #[test]
    fn subtheory_filter_examples() {
        let found = |labels: &[&str]| -> Vec<ValidatedTheory> {
            labels
                .iter()
                .map(|l| ValidatedTheory {
                    candidate: letters(l),
                    coefficients: vec![1.0; letters(l).len()],
                    sv_ratio: 0.0,
                    residual: 0.0,
                })
                .collect()
        };
        assert!(subtheory_filter(&letters("CD"), &found(&["C"])));
        assert!(!subtheory_filter(&letters("IK"), &found(&["C", "D", "GF", "HE"])));
        assert!(subtheory_filter(&letters("GFA"), &found(&["GF"])));
    }

    #[test]
    fn config_parsing_round_trip_and_errors() {
        let text = "\
# run configuration
mode = paper-fixed-omega
experiment_count = 7
seed = 9
q_max = 8
eps_sv = 1e-7
p0 = 2.5
omega_min = 5e8
omega_max = 9e8
r_min_lambda = 2e9
r_max_lambda = 3e9
output_path = out/report.json
";
        let config = parse_config_str(text).unwrap();
        assert_eq!(config.mode, OmegaMode::PaperFixedOmega);
        assert_eq!(config.experiment_count, 7);
        assert_eq!(config.seed, 9);
        assert_eq!(config.q_max, 8);
        assert_eq!(config.eps_sv, 1e-7);
        assert_eq!(config.omega_range, (5e8, 9e8));
        assert_eq!(config.output_path, PathBuf::from("out/report.json"));

        assert!(matches!(
            parse_config_str("bogus_key = 1").unwrap_err(),
            ConfigError::UnknownKey { .. }
        ));
        assert!(matches!(
            parse_config_str("seed = notanumber").unwrap_err(),
            ConfigError::BadValue { .. }
        ));
        assert!(matches!(
            parse_config_str("seed = 1\nseed = 2").unwrap_err(),
            ConfigError::DuplicateKey { .. }
        ));
        assert!(matches!(
            parse_config_str("q_max = 3").unwrap_err(),
            ConfigError::QMaxTooSmall(3)
        ));
        assert!(matches!(
            parse_config_str("experiment_count = 4").unwrap_err(),
            ConfigError::TooFewExperiments(4)
        ));
    }

    #[test]
    fn report_text_contains_the_curl_coupling_line() {
        let report = run_discovery(&RunConfig::default()).unwrap();
        let text = render_text(&report);
        assert!(text.contains("∇×E + ∂t B = 0"), "text was:\n{text}");
        assert!(text.contains("∇·E = 0"));
    }

    #[test]
    fn empty_report_serializes_cleanly() {
        // Constructed directly: a run config would reject q_max = 3.
        let config = RunConfig { q_max: 3, ..RunConfig::default() };
        let report = DiscoveryReport {
            config: ConfigEcho::new(&config),
            found: vec![],
            c_estimates: vec![],
            candidates_examined: vec![],
            runtime_seconds: 0.0,
        };
        let json = serde_json::to_string(&report).unwrap();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(value["found"].as_array().unwrap().is_empty());
        assert!(value["c_estimates"].as_array().unwrap().is_empty());
        let text = render_text(&report);
        assert!(text.contains("(none up to q_max = 3)"));
    }

    #[test]
    fn write_report_produces_json_and_text_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("report.json");
        let report = run_discovery(&RunConfig { q_max: 4, ..RunConfig::default() }).unwrap();
        write_report(&report, &path).unwrap();
        let json: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(json["found"].as_array().unwrap().len(), 2);
        let text = std::fs::read_to_string(dir.path().join("report.txt")).unwrap();
        assert!(text.contains("∇·B = 0"));
    }

    #[test]
    fn bench_emits_the_full_slow_powerset_and_orders_fast_levels() {
        let report = bench_fast_slow(&RunConfig::default()).unwrap();
        assert_eq!(report.slow_emitted, 4095);
        let slow_last = report.rows.iter().rfind(|r| r.mode == "slow").unwrap();
        assert_eq!(slow_last.cumulative_candidates, 4095);
        assert!(report.examined_ratio() >= 100.0);

        // The curl coupling {G, F} first appears exactly at depth 11.
        let alphabet = physics_alphabet();
        let weights = term_weights(&alphabet).unwrap();
        let march = enumerator::march(&weights, 14, &mut enumerator::no_prune).unwrap();
        let gf = letters("GF").mask_in(&alphabet).unwrap();
        let hits: Vec<u32> =
            march.entries.iter().filter(|e| e.mask == gf).map(|e| e.q).collect();
        assert_eq!(hits, vec![11]);
    }

    #[test]
    fn bench_csv_has_the_fixed_header() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bench.csv");
        let report = bench_fast_slow(&RunConfig::default()).unwrap();
        write_bench_csv(&report, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "mode,depth,cumulative_candidates,wall_seconds");
        assert_eq!(text.lines().count(), 1 + 14 + 12);
    }
}
