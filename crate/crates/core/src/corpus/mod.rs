//! Corpus screening: read numeric variables out of CSV files as described
//! by a JSON manifest, clean them (stratification, transforms, filters),
//! run the Shapiro-Wilk test on each, and summarize how the p-values relate
//! to sample size.

mod svg;

pub use svg::{scatter_svg, scatter_svg_string};

use crate::error::{Error, Result};
use crate::randgen::{mix64, DistributionSpec, RngState, Sample};
use crate::special::Probability;
use crate::stattests::shapiro_wilk;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub const DEFAULT_MIN_N: usize = 3;
pub const DEFAULT_MIN_DISTINCT: usize = 10;
/// Default n-bin upper edges: n <= 30, 30 < n <= 50, 50 < n <= 250, n > 250.
pub const DEFAULT_BIN_EDGES: [usize; 3] = [30, 50, 250];

/// Value transform applied to each stratum of a manifest entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transform {
    #[default]
    None,
    /// Natural log; a stratum containing a non-positive value is skipped.
    Log,
    /// Consecutive differences; turns a length-k series into k-1 values.
    FirstDifference,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub path: PathBuf,
    pub value_column: String,
    /// Stratification factors: one variable is emitted per distinct
    /// combination of these columns' values.
    #[serde(default)]
    pub group_columns: Vec<String>,
    #[serde(default)]
    pub transform: Transform,
    /// Additionally emit ln(values) as a second variable wherever the
    /// (post-transform) values are all positive.
    #[serde(default)]
    pub include_log_twin: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub entries: Vec<ManifestEntry>,
    /// Variables with fewer observations than this are dropped.
    #[serde(default = "default_min_n")]
    pub min_n: usize,
    /// Variables with fewer distinct values than this are dropped; the
    /// cutoff that operationalizes "counts too small to be continuous".
    #[serde(default = "default_min_distinct")]
    pub min_distinct: usize,
}

fn default_min_n() -> usize {
    DEFAULT_MIN_N
}

fn default_min_distinct() -> usize {
    DEFAULT_MIN_DISTINCT
}

/// Loads and validates a manifest: the JSON must parse, every referenced
/// file must exist, and every named column must be present in its header.
pub fn load_manifest(path: &Path) -> Result<CorpusManifest> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Error::Load(format!("cannot read manifest {}: {e}", path.display()))
    })?;
    let manifest: CorpusManifest = serde_json::from_str(&text)
        .map_err(|e| Error::Load(format!("manifest {} is malformed: {e}", path.display())))?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    for (index, entry) in manifest.entries.iter().enumerate() {
        let file = resolve(base, &entry.path);
        if !file.exists() {
            return Err(Error::Load(format!(
                "entry {index}: file {} does not exist",
                file.display()
            )));
        }
        let mut reader = csv::Reader::from_path(&file).map_err(|e| {
            Error::Load(format!("entry {index}: cannot open {}: {e}", file.display()))
        })?;
        let headers = reader
            .headers()
            .map_err(|e| Error::Load(format!("entry {index}: bad header: {e}")))?;
        for column in std::iter::once(&entry.value_column).chain(&entry.group_columns) {
            if !headers.iter().any(|h| h == column) {
                return Err(Error::Load(format!(
                    "entry {index}: column '{column}' not found in {}",
                    file.display()
                )));
            }
        }
    }
    Ok(manifest)
}

fn resolve(base: &Path, path: &Path) -> PathBuf {
    if path.is_absolute() {
        path.to_path_buf()
    } else {
        base.join(path)
    }
}

/// One screened variable.
#[derive(Debug, Clone, Serialize)]
pub struct CorpusRecord {
    pub variable_id: String,
    pub n: usize,
    pub sw_w: f64,
    pub sw_p: Probability,
}

/// Everything `extract_variables` produced, including what it had to skip.
#[derive(Debug, Default)]
pub struct Extraction {
    pub variables: Vec<(String, Sample)>,
    /// Per-variable skips and value drops.
    pub warnings: Vec<String>,
    /// Entries that could not be processed at all; other entries proceed.
    pub entry_errors: Vec<String>,
}

/// Walks the manifest and materializes the cleaned variables: parse each
/// CSV, stratify by the group columns, apply the transform, optionally emit
/// the log twin, and apply the size/distinctness filters.
pub fn extract_variables(manifest: &CorpusManifest, base: &Path) -> Extraction {
    let mut out = Extraction::default();
    for (index, entry) in manifest.entries.iter().enumerate() {
        if let Err(e) = extract_entry(manifest, entry, index, base, &mut out) {
            out.entry_errors.push(format!("entry {index}: {e}"));
        }
    }
    out
}

fn extract_entry(
    manifest: &CorpusManifest,
    entry: &ManifestEntry,
    index: usize,
    base: &Path,
    out: &mut Extraction,
) -> Result<()> {
    let file = resolve(base, &entry.path);
    let mut reader = csv::Reader::from_path(&file)
        .map_err(|e| Error::Load(format!("cannot open {}: {e}", file.display())))?;
    let headers = reader
        .headers()
        .map_err(|e| Error::Load(format!("bad header: {e}")))?
        .clone();
    let value_idx = headers
        .iter()
        .position(|h| h == entry.value_column)
        .ok_or_else(|| Error::Load(format!("column '{}' missing", entry.value_column)))?;
    let group_idx: Vec<usize> = entry
        .group_columns
        .iter()
        .map(|g| {
            headers
                .iter()
                .position(|h| h == g)
                .ok_or_else(|| Error::Load(format!("group column '{g}' missing")))
        })
        .collect::<Result<_>>()?;

    let stem = file
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| file.display().to_string());
    let base_id = format!("{stem}:{}", entry.value_column);

    // stratify; BTreeMap fixes the stratum order independent of row order
    let mut strata: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    let mut dropped_missing = 0usize;
    for (row_number, record) in reader.records().enumerate() {
        let record =
            record.map_err(|e| Error::Load(format!("row {}: {e}", row_number + 2)))?;
        let cell = record.get(value_idx).unwrap_or("").trim();
        if cell.is_empty() || cell.eq_ignore_ascii_case("na") {
            dropped_missing += 1;
            continue;
        }
        let value: f64 = cell.parse().map_err(|_| {
            Error::Load(format!(
                "row {}: non-numeric value '{cell}' in column '{}'",
                row_number + 2,
                entry.value_column
            ))
        })?;
        if !value.is_finite() {
            dropped_missing += 1;
            continue;
        }
        let stratum = entry
            .group_columns
            .iter()
            .zip(&group_idx)
            .map(|(name, &g)| format!("{name}={}", record.get(g).unwrap_or("").trim()))
            .collect::<Vec<_>>()
            .join(",");
        strata.entry(stratum).or_default().push(value);
    }
    if dropped_missing > 0 {
        out.warnings.push(format!(
            "entry {index} ({base_id}): dropped {dropped_missing} missing/non-finite values"
        ));
    }

    for (stratum, values) in strata {
        let mut id = base_id.clone();
        if !stratum.is_empty() {
            let _ = write!(id, "[{stratum}]");
        }
        let transformed = match entry.transform {
            Transform::None => values,
            Transform::Log => {
                id.push_str("|log");
                if values.iter().any(|v| *v <= 0.0) {
                    out.warnings.push(format!(
                        "{id}: skipped, log transform requires positive values"
                    ));
                    continue;
                }
                values.iter().map(|v| v.ln()).collect()
            }
            Transform::FirstDifference => {
                id.push_str("|diff");
                values.windows(2).map(|w| w[1] - w[0]).collect()
            }
        };
        emit_filtered(manifest, &mut out.variables, &mut out.warnings, &id, &transformed);
        if entry.include_log_twin
            && entry.transform != Transform::Log
            && !transformed.is_empty()
            && transformed.iter().all(|v| *v > 0.0)
        {
            let twin: Vec<f64> = transformed.iter().map(|v| v.ln()).collect();
            emit_filtered(
                manifest,
                &mut out.variables,
                &mut out.warnings,
                &format!("{id}|log"),
                &twin,
            );
        }
    }
    Ok(())
}

fn emit_filtered(
    manifest: &CorpusManifest,
    variables: &mut Vec<(String, Sample)>,
    warnings: &mut Vec<String>,
    id: &str,
    values: &[f64],
) {
    if values.len() < manifest.min_n.max(DEFAULT_MIN_N) {
        warnings.push(format!(
            "{id}: dropped, {} observations is below the minimum {}",
            values.len(),
            manifest.min_n.max(DEFAULT_MIN_N)
        ));
        return;
    }
    let mut distinct = values.to_vec();
    distinct.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    distinct.dedup();
    if distinct.len() < manifest.min_distinct {
        warnings.push(format!(
            "{id}: dropped, {} distinct values is below the minimum {} (too discrete \
             to treat as continuous)",
            distinct.len(),
            manifest.min_distinct
        ));
        return;
    }
    variables.push((
        id.to_string(),
        Sample::new(values.to_vec()).expect("filtered values are finite and non-empty"),
    ));
}

/// Rejection proportions per sample-size bin.
#[derive(Debug, Clone, Serialize)]
pub struct BinSummary {
    pub label: String,
    pub count: usize,
    pub rejected: usize,
    pub proportion: Probability,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusSummary {
    pub total_variables: usize,
    pub skipped: usize,
    pub alpha: Probability,
    pub bins: Vec<BinSummary>,
    pub count_n_gt_250: usize,
    pub count_n_gt_250_passing: usize,
}

/// Runs Shapiro-Wilk on every variable. Variables outside the supported
/// size range or with degenerate data are skipped (with a warning) and
/// counted in the summary.
pub fn screen_corpus(
    variables: &[(String, Sample)],
    alpha: Probability,
) -> (Vec<CorpusRecord>, CorpusSummary, Vec<String>) {
    screen_corpus_with_bins(variables, alpha, &DEFAULT_BIN_EDGES)
}

pub fn screen_corpus_with_bins(
    variables: &[(String, Sample)],
    alpha: Probability,
    bin_edges: &[usize],
) -> (Vec<CorpusRecord>, CorpusSummary, Vec<String>) {
    let mut records = Vec::with_capacity(variables.len());
    let mut warnings = Vec::new();
    for (id, sample) in variables {
        match shapiro_wilk(sample) {
            Ok(outcome) => records.push(CorpusRecord {
                variable_id: id.clone(),
                n: sample.len(),
                sw_w: outcome.statistic,
                sw_p: outcome.p_value,
            }),
            Err(e) => warnings.push(format!("{id}: skipped, {e}")),
        }
    }
    let summary = summarize(&records, alpha, bin_edges, warnings.len());
    (records, summary, warnings)
}

fn summarize(
    records: &[CorpusRecord],
    alpha: Probability,
    bin_edges: &[usize],
    skipped: usize,
) -> CorpusSummary {
    let mut bins: Vec<BinSummary> = Vec::with_capacity(bin_edges.len() + 1);
    let mut lower = 0usize;
    for &edge in bin_edges {
        let label = if lower == 0 {
            format!("n <= {edge}")
        } else {
            format!("{lower} < n <= {edge}")
        };
        bins.push(BinSummary {
            label,
            count: 0,
            rejected: 0,
            proportion: Probability::ZERO,
        });
        lower = edge;
    }
    bins.push(BinSummary {
        label: format!("n > {lower}"),
        count: 0,
        rejected: 0,
        proportion: Probability::ZERO,
    });

    let bin_of = |n: usize| {
        bin_edges
            .iter()
            .position(|&edge| n <= edge)
            .unwrap_or(bin_edges.len())
    };
    let last_edge = bin_edges.last().copied().unwrap_or(0);
    let mut count_gt = 0usize;
    let mut count_gt_passing = 0usize;
    for record in records {
        let bin = &mut bins[bin_of(record.n)];
        bin.count += 1;
        if record.sw_p < alpha {
            bin.rejected += 1;
        }
        if record.n > last_edge {
            count_gt += 1;
            if !(record.sw_p < alpha) {
                count_gt_passing += 1;
            }
        }
    }
    for bin in &mut bins {
        if bin.count > 0 {
            bin.proportion = Probability::clamped(bin.rejected as f64 / bin.count as f64);
        }
    }
    CorpusSummary {
        total_variables: records.len(),
        skipped,
        alpha,
        bins,
        count_n_gt_250: count_gt,
        count_n_gt_250_passing: count_gt_passing,
    }
}

/// Proportion of records with p below `alpha` among those whose size
/// satisfies `range`; `None` when no record qualifies.
pub fn rejection_proportion(
    records: &[CorpusRecord],
    alpha: Probability,
    range: impl Fn(usize) -> bool,
) -> Option<f64> {
    let selected: Vec<_> = records.iter().filter(|r| range(r.n)).collect();
    if selected.is_empty() {
        return None;
    }
    let rejected = selected.iter().filter(|r| r.sw_p < alpha).count();
    Some(rejected as f64 / selected.len() as f64)
}

/// Renders the records as CSV with header `variable_id,n,w,p`.
pub fn records_csv(records: &[CorpusRecord]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(["variable_id", "n", "w", "p"])
        .expect("writing to memory");
    for r in records {
        writer
            .write_record([
                r.variable_id.as_str(),
                &r.n.to_string(),
                &r.sw_w.to_string(),
                &r.sw_p.value().to_string(),
            ])
            .expect("writing to memory");
    }
    String::from_utf8(writer.into_inner().expect("writing to memory")).expect("utf-8")
}

/// Writes a self-contained synthetic corpus (gamma(2,1) variables in long
/// format, one file per sample size) plus a manifest describing it, and
/// returns the manifest path. Useful for exercising the pipeline without
/// any external data.
pub fn write_synthetic_corpus(
    dir: &Path,
    sizes: &[usize],
    variables_per_size: usize,
    seed: u64,
) -> Result<PathBuf> {
    if sizes.is_empty() || variables_per_size == 0 {
        return Err(Error::Usage(
            "synthetic corpus needs at least one size and one variable per size".into(),
        ));
    }
    std::fs::create_dir_all(dir)?;
    let gamma = DistributionSpec::gamma(2, 1.0).expect("valid spec");
    let mut entries = Vec::with_capacity(sizes.len());
    for (size_index, &n) in sizes.iter().enumerate() {
        let file_name = format!("gamma_n{n}.csv");
        let mut body = String::from("var,value\n");
        for v in 0..variables_per_size {
            let stream = mix64(((size_index as u64) << 32) | v as u64);
            let mut rng = RngState::new(seed, stream);
            let sample = gamma.sample(n, &mut rng)?;
            for value in sample.values() {
                let _ = writeln!(body, "v{v:03},{value}");
            }
        }
        std::fs::write(dir.join(&file_name), body)?;
        entries.push(ManifestEntry {
            path: PathBuf::from(&file_name),
            value_column: "value".into(),
            group_columns: vec!["var".into()],
            transform: Transform::None,
            include_log_twin: false,
        });
    }
    let manifest = CorpusManifest {
        entries,
        min_n: DEFAULT_MIN_N,
        min_distinct: DEFAULT_MIN_DISTINCT,
    };
    let manifest_path = dir.join("manifest.json");
    std::fs::write(
        &manifest_path,
        serde_json::to_string_pretty(&manifest).expect("manifest serializes"),
    )?;
    Ok(manifest_path)
}
