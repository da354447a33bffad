use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::svg::Scatter;
use crate::corpus::{
    clean_text, discover, section_file, CompiledRules, Provenance, Section, SectionRules,
    SectionedPatent, Stopwords,
};
use crate::error::{Error, Result};
use crate::keywords::{default_registry, Registry};
use crate::model::{
    analytic_cost, ensemble_mean, integrate_cost_ode, tail_exponent, CostModelParams,
    DesignSearch,
};
use crate::reference::{check_rows, records_from_rows, KwMode, ReferenceDataset, RATES_CSV};
use crate::stats::{linear_trend, p_value_two_tailed, pearson, robustness, t_statistic, DomainRecord};
use crate::textmine::{
    aggregate_domain, count_patent, default_exclusions, read_count_table, read_rates,
    write_count_table, CountRow, DomainCounts,
};

pub const DEFAULT_SEED: u64 = 20_160_601;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum OutputFormat {
    Table,
    JsonSummary,
    Svg,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "table" => Some(OutputFormat::Table),
            "json" | "json-summary" => Some(OutputFormat::JsonSummary),
            "svg" => Some(OutputFormat::Svg),
            _ => None,
        }
    }
}

/// Options shared by every command.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input: Option<PathBuf>,
    pub bundled: bool,
    pub rules: Option<PathBuf>,
    pub registry: Option<PathBuf>,
    pub stopwords: Option<PathBuf>,
    pub rates: Option<PathBuf>,
    pub exclusions: Vec<String>,
    pub seed: u64,
    pub out: PathBuf,
    pub formats: BTreeSet<OutputFormat>,
    /// `None` picks published values for bundled data and full precision
    /// for mined counts.
    pub kw_mode: Option<KwMode>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            input: None,
            bundled: false,
            rules: None,
            registry: None,
            stopwords: None,
            rates: None,
            exclusions: default_exclusions(),
            seed: DEFAULT_SEED,
            out: PathBuf::from("out"),
            formats: [OutputFormat::Table, OutputFormat::JsonSummary].into(),
            kw_mode: None,
        }
    }
}

impl RunConfig {
    fn wants(&self, f: OutputFormat) -> bool {
        self.formats.contains(&f)
    }

    fn rules(&self) -> Result<CompiledRules> {
        match &self.rules {
            Some(p) => SectionRules::load(p)?.compile(),
            None => SectionRules::default().compile(),
        }
    }

    fn registry(&self) -> Result<Registry> {
        match &self.registry {
            Some(p) => Registry::load(p),
            None => Ok(default_registry()),
        }
    }

    fn stopwords(&self) -> Result<Stopwords> {
        match &self.stopwords {
            Some(p) => Stopwords::load(p),
            None => Ok(Stopwords::default()),
        }
    }

    fn rates(&self) -> Result<BTreeMap<String, f64>> {
        match &self.rates {
            Some(p) => read_rates(&read_file(p)?),
            None => read_rates(RATES_CSV),
        }
    }

    fn input_dir(&self) -> Result<&Path> {
        self.input.as_deref().ok_or_else(|| Error::BadTable {
            name: "config".into(),
            message: "--input is required unless --bundled is given".into(),
        })
    }
}

/// What a command produced.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CommandReport {
    pub files: Vec<PathBuf>,
    pub warnings: Vec<String>,
    /// One-paragraph human summary.
    pub summary: String,
}

fn read_file(p: &Path) -> Result<String> {
    std::fs::read_to_string(p).map_err(|source| Error::FileUnreadable {
        path: p.to_path_buf(),
        source,
    })
}

fn write_out(report: &mut CommandReport, path: PathBuf, contents: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(&path, contents)?;
    report.files.push(path);
    Ok(())
}

fn json_bytes<T: Serialize>(v: &T) -> Result<Vec<u8>> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s.into_bytes())
}

fn file_safe(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

// ---------------------------------------------------------------- sections

pub const SECTIONS_DIR: &str = "sections";
pub const PROVENANCE_SUMMARY: &str = "provenance_summary.csv";

/// Sections every patent under `--input` and writes one JSON record per
/// patent plus counts of provenance tags per section.
pub fn cmd_sections(cfg: &RunConfig) -> Result<CommandReport> {
    let dir = cfg.input_dir()?;
    let rules = cfg.rules()?;
    let files = discover(dir)?;
    let results: Vec<Result<SectionedPatent>> =
        files.par_iter().map(|f| section_file(f, &rules)).collect();

    let mut report = CommandReport::default();
    let mut patents = Vec::new();
    for r in results {
        patents.push(r?);
    }

    let mut tally: BTreeMap<(Section, Provenance), usize> = BTreeMap::new();
    for sp in &patents {
        for s in Section::ALL {
            let prov = sp.section(s).provenance;
            *tally.entry((s, prov)).or_default() += 1;
            if prov == Provenance::Absent && matches!(s, Section::Background | Section::Summary) {
                report
                    .warnings
                    .push(format!("{}: no {} section found", sp.patent_id, s));
            }
        }
        let path = cfg
            .out
            .join(SECTIONS_DIR)
            .join(file_safe(&sp.domain_id))
            .join(format!("{}.json", file_safe(&sp.patent_id)));
        write_out(&mut report, path, &json_bytes(sp)?)?;
    }

    let mut table = String::from("section");
    for p in Provenance::ALL {
        table.push(',');
        table.push_str(p.as_str());
    }
    table.push('\n');
    for s in Section::ALL {
        table.push_str(s.as_str());
        for p in Provenance::ALL {
            let _ = write!(table, ",{}", tally.get(&(s, p)).copied().unwrap_or(0));
        }
        table.push('\n');
    }
    write_out(&mut report, cfg.out.join(PROVENANCE_SUMMARY), table.as_bytes())?;

    if cfg.wants(OutputFormat::JsonSummary) {
        let summary: BTreeMap<String, BTreeMap<String, usize>> = Section::ALL
            .iter()
            .map(|&s| {
                (
                    s.to_string(),
                    Provenance::ALL
                        .iter()
                        .map(|&p| (p.to_string(), tally.get(&(s, p)).copied().unwrap_or(0)))
                        .collect(),
                )
            })
            .collect();
        let v = json!({ "patents": patents.len(), "provenance": summary });
        write_out(&mut report, cfg.out.join("sections_summary.json"), &json_bytes(&v)?)?;
    }
    report.summary = format!("sectioned {} patents from {}", patents.len(), dir.display());
    Ok(report)
}

/// Reads the per-patent records written by [`cmd_sections`].
pub fn load_sectioned(dir: &Path) -> Result<Vec<SectionedPatent>> {
    let root = dir.join(SECTIONS_DIR);
    let mut paths = Vec::new();
    let mut stack = vec![root];
    while let Some(d) = stack.pop() {
        for entry in std::fs::read_dir(&d).map_err(|source| Error::FileUnreadable {
            path: d.clone(),
            source,
        })? {
            let p = entry?.path();
            if p.is_dir() {
                stack.push(p);
            } else if p.extension().is_some_and(|e| e == "json") {
                paths.push(p);
            }
        }
    }
    paths.sort();
    paths
        .iter()
        .map(|p| Ok(serde_json::from_str(&read_file(p)?)?))
        .collect()
}

// ---------------------------------------------------------------- count

pub const COUNTS_FILE: &str = "counts.csv";

/// Mines keyword counts per domain. Drops domains without words, with a
/// warning.
pub fn mine_counts(
    patents: &[SectionedPatent],
    registry: &Registry,
    stopwords: &Stopwords,
    rates: &BTreeMap<String, f64>,
) -> (Vec<CountRow>, Vec<String>) {
    let counted: Vec<_> = patents
        .par_iter()
        .map(|sp| count_patent(&clean_text(sp, stopwords), registry))
        .collect();
    let mut by_domain: BTreeMap<String, Vec<_>> = BTreeMap::new();
    for pc in counted {
        by_domain.entry(pc.domain_id.clone()).or_default().push(pc);
    }
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    for (domain, pcs) in by_domain {
        match aggregate_domain(&pcs) {
            Ok(counts) => rows.push(counts),
            Err(e) => warnings.push(format!("domain {domain} dropped: {e}")),
        }
    }
    let rows = rows
        .into_iter()
        .enumerate()
        .map(|(i, counts): (usize, DomainCounts)| CountRow {
            number: format!("Domain_{}", i + 1),
            kw_display: counts.kw_display(),
            k_percent: rates.get(&counts.domain_id).copied(),
            counts,
        })
        .collect();
    (rows, warnings)
}

pub fn cmd_count(cfg: &RunConfig) -> Result<CommandReport> {
    let mut report = CommandReport::default();
    let (rows, source) = if cfg.bundled {
        (ReferenceDataset::bundled().rows, "bundled reference data".to_string())
    } else {
        let dir = cfg.input_dir()?;
        let patents = if dir.join(PROVENANCE_SUMMARY).is_file() {
            load_sectioned(dir)?
        } else {
            let rules = cfg.rules()?;
            let files = discover(dir)?;
            files
                .par_iter()
                .map(|f| section_file(f, &rules))
                .collect::<Result<Vec<_>>>()?
        };
        let (rows, warnings) = mine_counts(&patents, &cfg.registry()?, &cfg.stopwords()?, &cfg.rates()?);
        report.warnings.extend(warnings);
        (rows, format!("{} patents in {}", patents.len(), dir.display()))
    };
    check_rows(&rows)?;

    let mut buf = Vec::new();
    write_count_table(&rows, &mut buf)?;
    write_out(&mut report, cfg.out.join(COUNTS_FILE), &buf)?;
    if cfg.wants(OutputFormat::JsonSummary) {
        let v: Vec<_> = rows
            .iter()
            .map(|r| {
                json!({
                    "domain_number": r.number,
                    "domain": r.counts.domain_id,
                    "n_patents": r.counts.n_patents,
                    "keywords": r.counts.keyword_totals.iter().map(|(k, c)| json!({ "keyword": k, "count": c })).collect::<Vec<_>>(),
                    "kw_total": r.counts.kw_total,
                    "word_total": r.counts.word_total,
                    "kw_normalized": r.counts.kw_normalized,
                    "kw_display": r.kw_display,
                    "k_percent": r.k_percent,
                })
            })
            .collect();
        let stop_version = if cfg.bundled {
            None
        } else {
            Some(cfg.stopwords()?.version)
        };
        let v = json!({ "stopwords_version": stop_version, "domains": v });
        write_out(&mut report, cfg.out.join("counts.json"), &json_bytes(&v)?)?;
    }
    report.summary = format!("{} domains counted from {source}", rows.len());
    Ok(report)
}

// ---------------------------------------------------------------- records

/// Records for correlation: the bundled table, or a count table given as
/// `--input` (a file, or a directory holding `counts.csv`).
pub fn load_records(cfg: &RunConfig) -> Result<(Vec<DomainRecord>, KwMode)> {
    if cfg.bundled {
        let mode = cfg.kw_mode.unwrap_or(KwMode::Published);
        let ds = ReferenceDataset::bundled();
        return Ok((ds.records(mode, &cfg.exclusions)?, mode));
    }
    let input = cfg.input_dir()?;
    let path = if input.is_dir() {
        input.join(COUNTS_FILE)
    } else {
        input.to_path_buf()
    };
    let rows = read_count_table(&read_file(&path)?)?;
    let mode = cfg.kw_mode.unwrap_or(KwMode::FullPrecision);
    Ok((records_from_rows(&rows, &cfg.rates()?, mode, &cfg.exclusions)?, mode))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Predictor {
    #[default]
    InvKw,
    Kw,
}

impl Predictor {
    fn value(self, r: &DomainRecord) -> f64 {
        match self {
            Predictor::InvKw => r.inv_kw,
            Predictor::Kw => r.kw,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Predictor::InvKw => "inv_kw",
            Predictor::Kw => "kw",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrelationReport {
    pub n: usize,
    pub r: f64,
    pub p: f64,
    pub t: Option<f64>,
    pub trend_slope: f64,
    pub trend_intercept: f64,
}

// ---------------------------------------------------------------- correlate

pub fn correlate(records: &[DomainRecord], predictor: Predictor) -> Result<CorrelationReport> {
    if records.len() < 3 {
        return Err(Error::TooFewRecords(records.len()));
    }
    let x: Vec<f64> = records.iter().map(|r| predictor.value(r)).collect();
    let y: Vec<f64> = records.iter().map(DomainRecord::rate_percent).collect();
    let r = pearson(&x, &y)?;
    let (t, p) = match t_statistic(r, x.len()) {
        Ok(t) => (Some(t), p_value_two_tailed(r, x.len())?),
        Err(Error::DegenerateR) => (None, 0.0),
        Err(e) => return Err(e),
    };
    let (trend_slope, trend_intercept) = linear_trend(&x, &y)?;
    Ok(CorrelationReport {
        n: x.len(),
        r,
        p,
        t,
        trend_slope,
        trend_intercept,
    })
}

pub fn cmd_correlate(cfg: &RunConfig, predictor: Predictor) -> Result<CommandReport> {
    let (records, mode) = load_records(cfg)?;
    let res = correlate(&records, predictor)?;
    let mut report = CommandReport::default();

    let mode_name = match mode {
        KwMode::Published => "published",
        KwMode::FullPrecision => "full-precision",
    };
    let mut table = String::from("metric,value\n");
    let _ = writeln!(table, "n,{}", res.n);
    let _ = writeln!(table, "r,{}", res.r);
    let _ = writeln!(table, "p,{}", res.p);
    let _ = writeln!(table, "t,{}", res.t.map(|t| t.to_string()).unwrap_or_default());
    let _ = writeln!(table, "trend_slope,{}", res.trend_slope);
    let _ = writeln!(table, "trend_intercept,{}", res.trend_intercept);
    let _ = writeln!(table, "predictor,{}", predictor.name());
    let _ = writeln!(table, "kw_mode,{mode_name}");
    write_out(&mut report, cfg.out.join("correlation.csv"), table.as_bytes())?;

    let mut rec_table = String::from("domain,k_percent,kw,inv_kw\n");
    for r in &records {
        let _ = writeln!(
            rec_table,
            "{},{},{},{}",
            csv_field(&r.domain_id),
            fmt_percent(r.rate_percent()),
            r.kw,
            r.inv_kw
        );
    }
    write_out(&mut report, cfg.out.join("records.csv"), rec_table.as_bytes())?;

    if cfg.wants(OutputFormat::JsonSummary) {
        let v = json!({
            "n": res.n, "r": res.r, "p": res.p, "t": res.t,
            "trend_slope": res.trend_slope, "trend_intercept": res.trend_intercept,
            "predictor": predictor.name(), "kw_mode": mode_name,
            "excluded": cfg.exclusions,
        });
        write_out(&mut report, cfg.out.join("correlation.json"), &json_bytes(&v)?)?;
    }
    if cfg.wants(OutputFormat::Svg) {
        let pts: Vec<(f64, f64)> = records
            .iter()
            .map(|r| (predictor.value(r), r.rate_percent()))
            .collect();
        let svg = Scatter {
            title: &format!("K vs {} (r = {:.2}, n = {})", predictor.name(), res.r, res.n),
            x_label: predictor.name(),
            y_label: "K (%/yr)",
            points: &pts,
            trend: Some((res.trend_slope, res.trend_intercept)),
            y_range: None,
        }
        .render();
        write_out(&mut report, cfg.out.join("correlation.svg"), svg.as_bytes())?;
    }
    report.summary = format!("r = {:.4}, p = {:.4}, n = {}", res.r, res.p, res.n);
    Ok(report)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Percent values are stored as fractions; print them without the binary
/// round-off the conversion back introduces.
fn fmt_percent(v: f64) -> String {
    let rounded = (v * 1e9).round() / 1e9;
    rounded.to_string()
}

// ---------------------------------------------------------------- robustness

pub fn cmd_robustness(cfg: &RunConfig, group_size: usize, n_groups: usize) -> Result<CommandReport> {
    let (records, _) = load_records(cfg)?;
    let res = robustness(&records, group_size, n_groups, cfg.seed)?;
    let mut report = CommandReport::default();

    let mut groups = String::from("group,r,members\n");
    for (i, g) in res.groups.iter().enumerate() {
        let _ = writeln!(groups, "{},{},{}", i + 1, g.r, csv_field(&g.members.join(";")));
    }
    write_out(&mut report, cfg.out.join("robustness_groups.csv"), groups.as_bytes())?;
    let summary = format!(
        "group_size,n_groups,seed,mean,sd,min,max\n{},{},{},{},{},{},{}\n",
        res.group_size, res.n_groups, res.seed, res.mean, res.sd, res.min, res.max
    );
    write_out(&mut report, cfg.out.join("robustness_summary.csv"), summary.as_bytes())?;

    if cfg.wants(OutputFormat::JsonSummary) {
        let v = json!({
            "group_size": res.group_size, "n_groups": res.n_groups, "seed": res.seed,
            "mean": res.mean, "sd": res.sd, "min": res.min, "max": res.max,
            "r": res.rs(),
        });
        write_out(&mut report, cfg.out.join("robustness.json"), &json_bytes(&v)?)?;
    }
    if cfg.wants(OutputFormat::Svg) {
        let pts: Vec<(f64, f64)> = res
            .rs()
            .into_iter()
            .enumerate()
            .map(|(i, r)| ((i + 1) as f64, r))
            .collect();
        let svg = Scatter {
            title: &format!("r for {} groups of {}", res.n_groups, res.group_size),
            x_label: "group",
            y_label: "r",
            points: &pts,
            trend: Some((0.0, res.mean)),
            y_range: Some((-1.0, 1.0)),
        }
        .render();
        write_out(&mut report, cfg.out.join("robustness.svg"), svg.as_bytes())?;
    }
    report.summary = format!(
        "mean r = {:.4} (sd {:.4}, range {:.4} to {:.4}) over {} groups of {}, seed {}",
        res.mean, res.sd, res.min, res.max, res.n_groups, res.group_size, res.seed
    );
    Ok(report)
}

// ---------------------------------------------------------------- simulate

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateOptions {
    pub ds: Vec<usize>,
    pub b: f64,
    pub m_max: f64,
    pub step: f64,
    pub n_components: usize,
    pub attempts: usize,
    pub replicas: usize,
    /// Only the closed-form curve; no ODE or Monte Carlo.
    pub analytic_only: bool,
    /// Tail fit uses `m ≥ tail_from · attempts`.
    pub tail_from: f64,
}

impl Default for SimulateOptions {
    fn default() -> Self {
        SimulateOptions {
            ds: vec![1, 2, 3],
            b: 1.0,
            m_max: 1000.0,
            step: 1e-3,
            n_components: 50,
            attempts: 100_000,
            replicas: 100,
            analytic_only: false,
            tail_from: 0.1,
        }
    }
}

/// Roughly 100 sample points on the integrator's step grid, plus `m_max`.
fn report_grid(m_max: f64, step: f64) -> Vec<(usize, f64)> {
    let steps = (m_max / step).floor() as usize;
    let stride = (steps / 100).max(1);
    let mut grid: Vec<(usize, f64)> = (0..=steps)
        .step_by(stride)
        .map(|i| (i, i as f64 * step))
        .collect();
    if grid.last().is_none_or(|&(_, m)| m < m_max) {
        grid.push((usize::MAX, m_max));
    }
    grid
}

/// Log-spaced attempt numbers, 20 per decade, always including the last.
fn log_grid(attempts: usize) -> Vec<usize> {
    let mut out = BTreeSet::new();
    let decades = (attempts as f64).log10();
    let n = (decades * 20.0).ceil() as usize;
    for k in 0..=n {
        let m = 10f64.powf(k as f64 / 20.0).round() as usize;
        if (1..=attempts).contains(&m) {
            out.insert(m);
        }
    }
    out.insert(attempts);
    out.into_iter().collect()
}

fn two_column(rows: impl Iterator<Item = (f64, f64)>) -> String {
    let mut s = String::from("m,C\n");
    for (m, c) in rows {
        let _ = writeln!(s, "{m},{c}");
    }
    s
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub d: usize,
    pub b: f64,
    pub replicas: usize,
    pub n_components: usize,
    pub attempts: usize,
    pub seed: u64,
    pub ode_max_abs_error: Option<f64>,
    pub fitted_exponent: Option<f64>,
    pub expected_exponent: f64,
}

pub fn cmd_simulate(cfg: &RunConfig, opts: &SimulateOptions) -> Result<CommandReport> {
    if !(opts.m_max > 0.0) || !opts.m_max.is_finite() {
        return Err(Error::BadRange(opts.m_max));
    }
    if !(opts.step > 0.0) || !opts.step.is_finite() {
        return Err(Error::BadStep(opts.step));
    }
    if opts.ds.is_empty() {
        return Err(Error::BadParams("no interaction parameters given".into()));
    }
    for &d in &opts.ds {
        CostModelParams::new(d as f64, opts.b)?;
        if !opts.analytic_only {
            DesignSearch::new(opts.n_components, d, opts.attempts)?;
        }
    }

    let mut report = CommandReport::default();
    let mut sweep = Vec::new();
    let grid = report_grid(opts.m_max, opts.step);
    for &d in &opts.ds {
        let params = CostModelParams::new(d as f64, opts.b)?;
        let analytic = grid.iter().map(|&(_, m)| (m, analytic_cost(m, &params)));
        write_out(
            &mut report,
            cfg.out.join(format!("analytic_d{d}.csv")),
            two_column(analytic).as_bytes(),
        )?;
        if opts.analytic_only {
            sweep.push(SweepRow {
                d,
                b: opts.b,
                replicas: 0,
                n_components: opts.n_components,
                attempts: 0,
                seed: cfg.seed,
                ode_max_abs_error: None,
                fitted_exponent: None,
                expected_exponent: -1.0 / d as f64,
            });
            continue;
        }

        let ode = integrate_cost_ode(&params, opts.m_max, opts.step)?;
        let max_err = ode
            .samples
            .iter()
            .map(|&(m, c)| (c - analytic_cost(m, &params)).abs())
            .fold(0.0, f64::max);
        let ode_rows = grid.iter().map(|&(i, m)| {
            let c = if i == usize::MAX {
                ode.last().map(|s| s.1).unwrap_or(1.0)
            } else {
                ode.samples[i].1
            };
            (m, c)
        });
        write_out(
            &mut report,
            cfg.out.join(format!("ode_d{d}.csv")),
            two_column(ode_rows).as_bytes(),
        )?;

        let search = DesignSearch::new(opts.n_components, d, opts.attempts)?;
        let mean = ensemble_mean(&search, opts.replicas, cfg.seed)?;
        let exponent = tail_exponent(&mean, opts.tail_from * opts.attempts as f64)?;
        let mc_rows = log_grid(opts.attempts).into_iter().map(|m| mean.samples[m - 1]);
        write_out(
            &mut report,
            cfg.out.join(format!("mc_d{d}.csv")),
            two_column(mc_rows).as_bytes(),
        )?;
        sweep.push(SweepRow {
            d,
            b: opts.b,
            replicas: opts.replicas,
            n_components: opts.n_components,
            attempts: opts.attempts,
            seed: cfg.seed,
            ode_max_abs_error: Some(max_err),
            fitted_exponent: Some(exponent),
            expected_exponent: -1.0 / d as f64,
        });
    }

    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    let mut table = String::from(
        "d,b,replicas,n_components,attempts,seed,ode_max_abs_error,fitted_exponent,expected_exponent\n",
    );
    for r in &sweep {
        let _ = writeln!(
            table,
            "{},{},{},{},{},{},{},{},{}",
            r.d,
            r.b,
            r.replicas,
            r.n_components,
            r.attempts,
            r.seed,
            opt(r.ode_max_abs_error),
            opt(r.fitted_exponent),
            r.expected_exponent
        );
    }
    write_out(&mut report, cfg.out.join("sweep.csv"), table.as_bytes())?;
    if cfg.wants(OutputFormat::JsonSummary) {
        write_out(&mut report, cfg.out.join("sweep.json"), &json_bytes(&sweep)?)?;
    }
    report.summary = sweep
        .iter()
        .map(|r| match r.fitted_exponent {
            Some(e) => format!("d={}: tail exponent {:.4} (expected {:.4})", r.d, e, r.expected_exponent),
            None => format!("d={}: analytic curve written", r.d),
        })
        .collect::<Vec<_>>()
        .join("; ");
    Ok(report)
}
