//! Reproducible, parallel Monte Carlo engine estimating the type-I error
//! and power of the three two-sample testing strategies over a grid of
//! distributions and per-group sample sizes.
//!
//! Every replicate owns a derived random stream, so the tallies (and hence
//! the report) are byte-identical whether cells and replicates run serially
//! or on any number of threads.

use crate::error::{Error, Result};
use crate::randgen::{mix64, DistributionSpec, RngState, Sample};
use crate::special::Probability;
use crate::stattests::{pooled_residuals, shapiro_wilk, t_test_two_sample, wilcoxon_rank_sum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::{Duration, Instant};

/// Simulation grid and estimation parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimConfig {
    pub distributions: Vec<DistributionSpec>,
    pub sizes_per_group: Vec<usize>,
    pub replications: usize,
    /// Location shift applied to the second sample under the alternative,
    /// in units of the distribution's true standard deviation.
    pub shift_in_sd: f64,
    /// Rejection level of the two-sample tests.
    pub alpha: Probability,
    /// Rejection level of the normality gate inside the combined test.
    pub normality_alpha: Probability,
    pub master_seed: u64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            distributions: DistributionSpec::canonical_six(),
            sizes_per_group: vec![5, 10, 25, 50, 100],
            replications: 20_000,
            shift_in_sd: 0.5,
            alpha: Probability::new(0.05).expect("valid"),
            normality_alpha: Probability::new(0.05).expect("valid"),
            master_seed: 42,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.distributions.is_empty() {
            return Err(Error::Usage("no distributions selected".into()));
        }
        if self.sizes_per_group.is_empty() {
            return Err(Error::Usage("no per-group sizes selected".into()));
        }
        if let Some(bad) = self.sizes_per_group.iter().find(|&&n| n < 2) {
            return Err(Error::Usage(format!(
                "per-group sizes must be at least 2, got {bad}"
            )));
        }
        if self.replications == 0 {
            return Err(Error::Usage("replications must be at least 1".into()));
        }
        if self.replications > u32::MAX as usize {
            return Err(Error::Usage("replications must fit in 32 bits".into()));
        }
        if !self.shift_in_sd.is_finite() {
            return Err(Error::Usage("shift must be finite".into()));
        }
        for (name, level) in [("alpha", self.alpha), ("normality alpha", self.normality_alpha)] {
            let v = level.value();
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::Usage(format!(
                    "{name} must lie strictly inside (0, 1), got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// A Monte Carlo rate with its binomial standard error
/// sqrt(rate * (1 - rate) / replications).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateEstimate {
    pub rate: Probability,
    pub se: f64,
}

impl RateEstimate {
    fn from_count(count: u64, reps: usize) -> RateEstimate {
        let r = count as f64 / reps as f64;
        RateEstimate {
            rate: Probability::clamped(r),
            se: (r * (1.0 - r) / reps as f64).sqrt(),
        }
    }
}

/// Rejection-rate estimates for one (distribution, n) grid point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimCell {
    pub dist: String,
    pub n: usize,
    pub reps: usize,
    /// Shapiro-Wilk rejection rate on the pooled residuals, null pass.
    pub sw_reject: RateEstimate,
    /// Same gate measured on the alternative pass; the group-mean centering
    /// absorbs the location shift, so this should agree with `sw_reject`
    /// up to Monte Carlo noise.
    pub sw_reject_alt: RateEstimate,
    pub t_type1: RateEstimate,
    pub w_type1: RateEstimate,
    pub c_type1: RateEstimate,
    pub t_power: RateEstimate,
    pub w_power: RateEstimate,
    pub c_power: RateEstimate,
}

/// Full simulation output: configuration echo plus one cell per grid point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimulationReport {
    pub config: SimConfig,
    pub cells: Vec<SimCell>,
    /// Wall-clock time of the run; deliberately excluded from serialized
    /// output so that reports are byte-identical across machines and
    /// thread counts.
    #[serde(skip, default)]
    pub elapsed: Duration,
}

#[derive(Debug, Default, Clone, Copy)]
struct Tally {
    sw_null: u64,
    t_null: u64,
    w_null: u64,
    c_null: u64,
    sw_alt: u64,
    t_alt: u64,
    w_alt: u64,
    c_alt: u64,
}

impl Tally {
    fn add(self, other: Tally) -> Tally {
        Tally {
            sw_null: self.sw_null + other.sw_null,
            t_null: self.t_null + other.t_null,
            w_null: self.w_null + other.w_null,
            c_null: self.c_null + other.c_null,
            sw_alt: self.sw_alt + other.sw_alt,
            t_alt: self.t_alt + other.t_alt,
            w_alt: self.w_alt + other.w_alt,
            c_alt: self.c_alt + other.c_alt,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Rejections {
    sw: bool,
    t: bool,
    w: bool,
    c: bool,
}

/// Runs the three tests plus the normality gate on one sample pair.
fn evaluate_pair(
    x: &Sample,
    y: &Sample,
    alpha: Probability,
    normality_alpha: Probability,
) -> Result<Rejections> {
    let t = t_test_two_sample(x, y)?.p_value < alpha;
    let w = wilcoxon_rank_sum(x, y)?.p_value < alpha;
    let sw = shapiro_wilk(&pooled_residuals(x, y))?.p_value < normality_alpha;
    // the combined test rejects exactly when its selected branch rejects
    let c = if sw { w } else { t };
    Ok(Rejections { sw, t, w, c })
}

/// The derived stream id of one replicate within one cell.
pub fn replicate_stream(cell_index: usize, replicate: usize) -> u64 {
    // the packing is injective for any grid below 2^32 cells/replicates,
    // and mix64 is a bijection, so streams never collide within a run
    mix64(((cell_index as u64) << 32) | replicate as u64)
}

fn run_replicate(
    spec: &DistributionSpec,
    n: usize,
    config: &SimConfig,
    shift: f64,
    cell_index: usize,
    replicate: usize,
) -> Result<Tally> {
    let mut rng = RngState::new(config.master_seed, replicate_stream(cell_index, replicate));

    // null pass: both samples from the same distribution
    let x = spec.sample(n, &mut rng)?;
    let y = spec.sample(n, &mut rng)?;
    let null = evaluate_pair(&x, &y, config.alpha, config.normality_alpha)?;

    // alternative pass: fresh samples, second one shifted
    let x = spec.sample(n, &mut rng)?;
    let shifted: Vec<f64> = spec
        .sample(n, &mut rng)?
        .values()
        .iter()
        .map(|v| v + shift)
        .collect();
    let y = Sample::new(shifted)?;
    let alt = evaluate_pair(&x, &y, config.alpha, config.normality_alpha)?;

    Ok(Tally {
        sw_null: null.sw as u64,
        t_null: null.t as u64,
        w_null: null.w as u64,
        c_null: null.c as u64,
        sw_alt: alt.sw as u64,
        t_alt: alt.t as u64,
        w_alt: alt.w as u64,
        c_alt: alt.c as u64,
    })
}

/// Estimates all rates for one (distribution, n) grid point.
pub fn run_cell(
    spec: &DistributionSpec,
    n: usize,
    config: &SimConfig,
    cell_index: usize,
) -> Result<SimCell> {
    config.validate()?;
    if n < 2 {
        return Err(Error::Usage(format!(
            "per-group size must be at least 2, got {n}"
        )));
    }
    let shift = spec.standardized_shift(config.shift_in_sd);
    let reps = config.replications;
    let tally = (0..reps)
        .into_par_iter()
        .map(|r| {
            run_replicate(spec, n, config, shift, cell_index, r).map_err(|e| {
                augment(e, &format!("cell {} n={n} replicate {r}", spec.name()))
            })
        })
        .try_reduce(Tally::default, |a, b| Ok(a.add(b)))?;
    Ok(SimCell {
        dist: spec.name().to_string(),
        n,
        reps,
        sw_reject: RateEstimate::from_count(tally.sw_null, reps),
        sw_reject_alt: RateEstimate::from_count(tally.sw_alt, reps),
        t_type1: RateEstimate::from_count(tally.t_null, reps),
        w_type1: RateEstimate::from_count(tally.w_null, reps),
        c_type1: RateEstimate::from_count(tally.c_null, reps),
        t_power: RateEstimate::from_count(tally.t_alt, reps),
        w_power: RateEstimate::from_count(tally.w_alt, reps),
        c_power: RateEstimate::from_count(tally.c_alt, reps),
    })
}

/// Evaluates the whole grid; cells are independent and run in parallel on
/// the ambient rayon pool.
pub fn run_table1(config: &SimConfig) -> Result<SimulationReport> {
    config.validate()?;
    let start = Instant::now();
    let grid: Vec<(DistributionSpec, usize)> = config
        .distributions
        .iter()
        .flat_map(|spec| config.sizes_per_group.iter().map(|&n| (*spec, n)))
        .collect();
    let cells = grid
        .par_iter()
        .enumerate()
        .map(|(cell_index, (spec, n))| run_cell(spec, *n, config, cell_index))
        .collect::<Result<Vec<_>>>()?;
    Ok(SimulationReport {
        config: config.clone(),
        cells,
        elapsed: start.elapsed(),
    })
}

fn augment(e: Error, context: &str) -> Error {
    match e {
        Error::Domain(m) => Error::Domain(format!("{context}: {m}")),
        Error::InsufficientData(m) => Error::InsufficientData(format!("{context}: {m}")),
        Error::DegenerateData(m) => Error::DegenerateData(format!("{context}: {m}")),
        Error::UnsupportedSize(m) => Error::UnsupportedSize(format!("{context}: {m}")),
        Error::Usage(m) => Error::Usage(format!("{context}: {m}")),
        Error::Load(m) => Error::Load(format!("{context}: {m}")),
        Error::Io(e) => Error::Io(e),
    }
}

/// Output formats of [`report_render`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Markdown,
    Csv,
    Json,
}

/// Renders a report: a table with rates rounded to 2 decimals (Markdown),
/// full-precision rates with standard errors (CSV), or the whole report
/// (JSON, which round-trips through serde).
pub fn report_render(report: &SimulationReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Markdown => render_markdown(report),
        ReportFormat::Csv => render_csv(report),
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
    }
}

fn render_markdown(report: &SimulationReport) -> String {
    let mut out = String::new();
    out.push_str(
        "| distribution | n | rej norm | T type I | W type I | C type I | T power | W power | C power |\n",
    );
    out.push_str(
        "|--------------|---|----------|----------|----------|----------|---------|---------|---------|\n",
    );
    let mut last_dist = "";
    for cell in &report.cells {
        let label = if cell.dist == last_dist { "" } else { &cell.dist };
        last_dist = &cell.dist;
        out.push_str(&format!(
            "| {} | {} | {:.2} | {:.2} | {:.2} | {:.2} | {:.2} | {:.2} | {:.2} |\n",
            label,
            cell.n,
            cell.sw_reject.rate.value(),
            cell.t_type1.rate.value(),
            cell.w_type1.rate.value(),
            cell.c_type1.rate.value(),
            cell.t_power.rate.value(),
            cell.w_power.rate.value(),
            cell.c_power.rate.value(),
        ));
    }
    out
}

fn render_csv(report: &SimulationReport) -> String {
    let mut out = String::from(
        "dist,n,reps,sw_reject,sw_reject_se,sw_reject_alt,sw_reject_alt_se,\
         t_type1,t_type1_se,w_type1,w_type1_se,c_type1,c_type1_se,\
         t_power,t_power_se,w_power,w_power_se,c_power,c_power_se\n",
    );
    for c in &report.cells {
        let rate = |r: &RateEstimate| format!("{},{}", r.rate.value(), r.se);
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            c.dist,
            c.n,
            c.reps,
            rate(&c.sw_reject),
            rate(&c.sw_reject_alt),
            rate(&c.t_type1),
            rate(&c.w_type1),
            rate(&c.c_type1),
            rate(&c.t_power),
            rate(&c.w_power),
            rate(&c.c_power),
        ));
    }
    out
}
