//! The two-sample testing strategies: pooled-variance t-test, Wilcoxon
//! rank-sum test, and the combined procedure that applies the Wilcoxon test
//! when a Shapiro-Wilk check on the pooled residuals rejects normality and
//! the t-test otherwise. Also hosts descriptive diagnostics and a
//! rule-based test-choice advisor.
//!
//! A caveat worth keeping in mind when reading results: the t-test compares
//! means while the rank-sum test compares stochastic ordering, so the two
//! do not address the same null hypothesis. This crate reports both and
//! leaves the choice of estimand to the caller.

mod shapiro;
mod wilcoxon;

pub use shapiro::shapiro_wilk;
pub use wilcoxon::{wilcoxon_rank_sum, wilcoxon_rank_sum_with_limit, DEFAULT_EXACT_LIMIT};

use crate::error::{Error, Result};
use crate::randgen::Sample;
use crate::special::{student_t_cdf, Probability};
use serde::{Deserialize, Serialize};

/// Which test produced a [`TestOutcome`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TestMethod {
    TTest,
    Wilcoxon,
    ShapiroWilk,
    Combined,
}

/// The branch a combined test settled on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BranchTest {
    TTest,
    Wilcoxon,
}

/// Universal result of every test in this module.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TestOutcome {
    pub method: TestMethod,
    pub statistic: f64,
    pub p_value: Probability,
    pub n1: usize,
    /// Zero for one-sample procedures (Shapiro-Wilk).
    pub n2: usize,
    /// True only on the small-sample exact Wilcoxon path and at
    /// Shapiro-Wilk n = 3.
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch_taken: Option<BranchTest>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub df: Option<f64>,
}

/// Arithmetic mean and sample standard deviation (denominator n - 1).
pub fn mean_sd(x: &Sample) -> Result<(f64, f64)> {
    if x.len() < 2 {
        return Err(Error::InsufficientData(
            "standard deviation needs at least 2 observations".into(),
        ));
    }
    let n = x.len() as f64;
    let mean = x.values().iter().sum::<f64>() / n;
    let ss: f64 = x.values().iter().map(|v| (v - mean) * (v - mean)).sum();
    Ok((mean, (ss / (n - 1.0)).sqrt()))
}

/// Fisher-Pearson skewness g1 = m3 / m2^(3/2) with population moments
/// m_k = sum((x - mean)^k) / n.
pub fn skewness(x: &Sample) -> Result<f64> {
    if x.len() < 3 {
        return Err(Error::InsufficientData(
            "skewness needs at least 3 observations".into(),
        ));
    }
    let (m2, m3, _) = central_moments(x.values());
    if m2 == 0.0 {
        return Err(Error::DegenerateData(
            "skewness is undefined for a constant sample".into(),
        ));
    }
    Ok(m3 / m2.powf(1.5))
}

/// Excess kurtosis g2 = m4 / m2^2 - 3 with population moments.
pub fn excess_kurtosis(x: &Sample) -> Result<f64> {
    if x.len() < 3 {
        return Err(Error::InsufficientData(
            "kurtosis needs at least 3 observations".into(),
        ));
    }
    let (m2, _, m4) = central_moments(x.values());
    if m2 == 0.0 {
        return Err(Error::DegenerateData(
            "kurtosis is undefined for a constant sample".into(),
        ));
    }
    Ok(m4 / (m2 * m2) - 3.0)
}

fn central_moments(values: &[f64]) -> (f64, f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for v in values {
        let d = v - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    (m2 / n, m3 / n, m4 / n)
}

/// Two-sample t-test assuming equal variances.
pub fn t_test_two_sample(x: &Sample, y: &Sample) -> Result<TestOutcome> {
    let (n1, n2) = (x.len(), y.len());
    if n1 < 2 || n2 < 2 {
        return Err(Error::InsufficientData(
            "the t-test needs at least 2 observations per group".into(),
        ));
    }
    let (mean_x, sd_x) = mean_sd(x)?;
    let (mean_y, sd_y) = mean_sd(y)?;
    let df = (n1 + n2 - 2) as f64;
    let pooled_var =
        ((n1 as f64 - 1.0) * sd_x * sd_x + (n2 as f64 - 1.0) * sd_y * sd_y) / df;
    if pooled_var <= 0.0 {
        return Err(Error::DegenerateData(
            "pooled variance is zero; the t statistic is undefined".into(),
        ));
    }
    let se = (pooled_var * (1.0 / n1 as f64 + 1.0 / n2 as f64)).sqrt();
    let t = (mean_x - mean_y) / se;
    let p = Probability::clamped((2.0 * student_t_cdf(-t.abs(), df)?.value()).min(1.0));
    Ok(TestOutcome {
        method: TestMethod::TTest,
        statistic: t,
        p_value: p,
        n1,
        n2,
        exact: false,
        branch_taken: None,
        df: Some(df),
    })
}

/// Concatenated group-mean-centered observations of both samples; the
/// input to the normality gate of the combined test.
pub fn pooled_residuals(x: &Sample, y: &Sample) -> Sample {
    let center = |s: &Sample| {
        let mean = s.values().iter().sum::<f64>() / s.len() as f64;
        s.values().iter().map(move |v| v - mean).collect::<Vec<_>>()
    };
    let mut values = center(x);
    values.extend(center(y));
    Sample::new(values).expect("residuals of finite samples are finite")
}

/// The combined procedure: Shapiro-Wilk on the pooled residuals decides the
/// branch; Wilcoxon when normality is rejected at `normality_alpha`, the
/// t-test otherwise. Statistic and p-value are bit-identical to the branch
/// test run standalone.
pub fn combined_test(
    x: &Sample,
    y: &Sample,
    normality_alpha: Probability,
) -> Result<TestOutcome> {
    let gate = shapiro_wilk(&pooled_residuals(x, y))?;
    let (mut outcome, branch) = if gate.p_value < normality_alpha {
        (wilcoxon_rank_sum(x, y)?, BranchTest::Wilcoxon)
    } else {
        (t_test_two_sample(x, y)?, BranchTest::TTest)
    };
    outcome.method = TestMethod::Combined;
    outcome.branch_taken = Some(branch);
    Ok(outcome)
}

/// Which rule set [`advise`] should apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdviceMode {
    /// Qualitative guidance: nonparametric unless the groups are tiny or
    /// the data are symmetric, short-tailed, and outlier-free.
    Guidelines,
    /// The fixed cutoff |skewness| < 4.8/sqrt(n) or n <= 12. Deliberately
    /// arbitrary; reported with a disclaimer.
    Footnote8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Recommendation {
    Parametric,
    Nonparametric,
    TooFewObservations,
}

/// Thresholds for [`AdviceMode::Guidelines`]. The qualifiers they encode
/// ("sufficiently symmetric", "short tails") have no canonical numeric
/// definition, so these defaults are conventions of this crate and every
/// report carries a note saying so.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct AdvisorConfig {
    /// Per-group |skewness| at or below this counts as symmetric.
    pub symmetric_threshold: f64,
    /// Per-group excess kurtosis at or below this counts as short-tailed.
    pub tail_threshold: f64,
    /// Observations beyond this many IQRs from the quartiles are outliers.
    pub outlier_k: f64,
}

impl Default for AdvisorConfig {
    fn default() -> Self {
        AdvisorConfig {
            symmetric_threshold: 0.5,
            tail_threshold: 1.0,
            outlier_k: 3.0,
        }
    }
}

const FOOTNOTE8_COEFF: f64 = 4.8;
const FOOTNOTE8_SMALL_N: usize = 12;
const GUIDELINES_SMALL_N: usize = 10;
const GUIDELINES_MIN_N: usize = 5;

/// Rule-based recommendation for choosing between the parametric and the
/// nonparametric test.
#[derive(Debug, Clone, Serialize)]
pub struct AdviceReport {
    pub mode: AdviceMode,
    pub n_min: usize,
    /// Fisher-Pearson g1 per group; empty when the groups are too small to
    /// estimate it.
    pub skewness_per_group: Vec<f64>,
    pub outlier_count: usize,
    pub recommendation: Recommendation,
    /// The clause that decided the recommendation.
    pub rule_fired: String,
    /// Caveats about the rule set itself.
    pub notes: Vec<String>,
}

pub fn advise(x: &Sample, y: &Sample, mode: AdviceMode) -> Result<AdviceReport> {
    advise_with(x, y, mode, &AdvisorConfig::default())
}

pub fn advise_with(
    x: &Sample,
    y: &Sample,
    mode: AdviceMode,
    config: &AdvisorConfig,
) -> Result<AdviceReport> {
    let n_min = x.len().min(y.len());
    match mode {
        AdviceMode::Guidelines => {
            if n_min < GUIDELINES_MIN_N {
                return Ok(AdviceReport {
                    mode,
                    n_min,
                    skewness_per_group: Vec::new(),
                    outlier_count: 0,
                    recommendation: Recommendation::TooFewObservations,
                    rule_fired: format!(
                        "fewer than {GUIDELINES_MIN_N} observations in a group; collect more data"
                    ),
                    notes: guidelines_notes(config),
                });
            }
            let skews = vec![skewness(x)?, skewness(y)?];
            let kurts = [excess_kurtosis(x)?, excess_kurtosis(y)?];
            let outlier_count = count_outliers(x.values(), config.outlier_k)
                + count_outliers(y.values(), config.outlier_k);
            let (recommendation, rule_fired) = if n_min < GUIDELINES_SMALL_N {
                (
                    Recommendation::Parametric,
                    format!("n extremely small (less than {GUIDELINES_SMALL_N} per group)"),
                )
            } else if skews
                .iter()
                .any(|s| s.abs() > config.symmetric_threshold)
            {
                (
                    Recommendation::Nonparametric,
                    format!(
                        "asymmetric data (per-group |skewness| above {})",
                        config.symmetric_threshold
                    ),
                )
            } else if kurts.iter().any(|k| *k > config.tail_threshold) {
                (
                    Recommendation::Nonparametric,
                    format!(
                        "long tails (per-group excess kurtosis above {})",
                        config.tail_threshold
                    ),
                )
            } else if outlier_count > 0 {
                (
                    Recommendation::Nonparametric,
                    format!(
                        "outliers present beyond {} IQRs from the quartiles",
                        config.outlier_k
                    ),
                )
            } else {
                (
                    Recommendation::Parametric,
                    "sufficiently symmetric, short tails, and no outliers".into(),
                )
            };
            Ok(AdviceReport {
                mode,
                n_min,
                skewness_per_group: skews,
                outlier_count,
                recommendation,
                rule_fired,
                notes: guidelines_notes(config),
            })
        }
        AdviceMode::Footnote8 => {
            let skews = vec![skewness(x)?, skewness(y)?];
            let outlier_count = count_outliers(x.values(), config.outlier_k)
                + count_outliers(y.values(), config.outlier_k);
            let n = x.len() + y.len();
            let pooled_skew = skewness(&pooled_residuals(x, y))?;
            let cutoff = FOOTNOTE8_COEFF / (n as f64).sqrt();
            let (recommendation, rule_fired) = if n <= FOOTNOTE8_SMALL_N {
                (
                    Recommendation::Parametric,
                    format!("combined n = {n} is at most {FOOTNOTE8_SMALL_N}"),
                )
            } else if pooled_skew.abs() < cutoff {
                (
                    Recommendation::Parametric,
                    format!(
                        "|pooled-residual skewness| = {:.4} is below {FOOTNOTE8_COEFF}/sqrt(n) = {:.4}",
                        pooled_skew.abs(),
                        cutoff
                    ),
                )
            } else {
                (
                    Recommendation::Nonparametric,
                    format!(
                        "|pooled-residual skewness| = {:.4} is at least {FOOTNOTE8_COEFF}/sqrt(n) = {:.4}",
                        pooled_skew.abs(),
                        cutoff
                    ),
                )
            };
            Ok(AdviceReport {
                mode,
                n_min,
                skewness_per_group: skews,
                outlier_count,
                recommendation,
                rule_fired,
                notes: vec![
                    "the footnote8 rule (|skewness| < 4.8/sqrt(n) or n <= 12) is an arbitrary \
                     illustrative heuristic, not a validated decision procedure"
                        .into(),
                ],
            })
        }
    }
}

fn guidelines_notes(config: &AdvisorConfig) -> Vec<String> {
    vec![format!(
        "the numeric thresholds (symmetric <= {}, excess kurtosis <= {}, outliers beyond {} IQRs) \
         are conventions of this tool; 'sufficiently symmetric' and 'short tails' have no \
         canonical definition",
        config.symmetric_threshold, config.tail_threshold, config.outlier_k
    )]
}

/// Observations beyond `k` IQRs outside the quartiles (type-7 linear
/// interpolation quantiles).
fn count_outliers(values: &[f64], k: f64) -> usize {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let q1 = quantile_type7(&sorted, 0.25);
    let q3 = quantile_type7(&sorted, 0.75);
    let iqr = q3 - q1;
    let (lo, hi) = (q1 - k * iqr, q3 + k * iqr);
    values.iter().filter(|v| **v < lo || **v > hi).count()
}

fn quantile_type7(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() as f64 - 1.0) * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randgen::{DistributionSpec, RngState};

    fn sample(values: &[f64]) -> Sample {
        Sample::new(values.to_vec()).unwrap()
    }

    #[test]
    fn mean_sd_examples() {
        assert_eq!(mean_sd(&sample(&[1.0, 2.0, 3.0])).unwrap(), (2.0, 1.0));
        assert_eq!(mean_sd(&sample(&[5.0; 4])).unwrap(), (5.0, 0.0));
        let (mean, sd) = mean_sd(&sample(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0])).unwrap();
        assert_eq!(mean, 3.5);
        assert!((sd - 1.8708286933869707).abs() <= 1e-12);
        assert!(matches!(
            mean_sd(&sample(&[1.0])),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn skewness_examples() {
        assert_eq!(skewness(&sample(&[1.0, 2.0, 3.0])).unwrap(), 0.0);
        assert_eq!(skewness(&sample(&[-2.0, -1.0, 0.0, 1.0, 2.0])).unwrap(), 0.0);
        // g1 of [0,0,0,1] is 2/sqrt(3)
        let g1 = skewness(&sample(&[0.0, 0.0, 0.0, 1.0])).unwrap();
        assert!((g1 - 1.1547005383792517).abs() <= 1e-12);
        assert!(matches!(
            skewness(&sample(&[3.0, 3.0, 3.0])),
            Err(Error::DegenerateData(_))
        ));
    }

    #[test]
    fn t_test_identical_samples() {
        let x = sample(&[1.0, 2.0, 3.0]);
        let out = t_test_two_sample(&x, &x).unwrap();
        assert_eq!(out.statistic, 0.0);
        assert_eq!(out.p_value.value(), 1.0);
        assert_eq!(out.df, Some(4.0));
    }

    #[test]
    fn t_test_hand_worked_example() {
        // means 3 and 4, pooled variance 2.5, se = 1 => t = -1, df = 8
        let x = sample(&[1.0, 2.0, 3.0, 4.0, 5.0]);
        let y = sample(&[2.0, 3.0, 4.0, 5.0, 6.0]);
        let out = t_test_two_sample(&x, &y).unwrap();
        assert!((out.statistic + 1.0).abs() <= 1e-12);
        assert_eq!(out.df, Some(8.0));
        assert!((out.p_value.value() - 0.3465935070873342).abs() <= 1e-10);
    }

    #[test]
    fn t_test_error_paths() {
        assert!(matches!(
            t_test_two_sample(&sample(&[1.0]), &sample(&[1.0, 2.0])),
            Err(Error::InsufficientData(_))
        ));
        assert!(matches!(
            t_test_two_sample(&sample(&[2.0, 2.0]), &sample(&[2.0, 2.0])),
            Err(Error::DegenerateData(_))
        ));
    }

    #[test]
    fn pooled_residuals_examples() {
        let r = pooled_residuals(&sample(&[1.0, 3.0]), &sample(&[10.0, 20.0]));
        assert_eq!(r.values(), &[-1.0, 1.0, -5.0, 5.0]);
        let r = pooled_residuals(&sample(&[7.0]), &sample(&[9.0]));
        assert_eq!(r.values(), &[0.0, 0.0]);
    }

    #[test]
    fn pooled_residuals_absorb_shift() {
        let x = sample(&[0.3, 1.9, 2.2, 4.0]);
        let y = sample(&[5.0, 5.5, 7.5]);
        let shifted = Sample::new(y.values().iter().map(|v| v + 123.0).collect()).unwrap();
        let a = pooled_residuals(&x, &y);
        let b = pooled_residuals(&x, &shifted);
        for (u, v) in a.values().iter().zip(b.values()) {
            assert!((u - v).abs() <= 1e-10);
        }
    }

    #[test]
    fn pooled_residuals_sum_to_zero_per_group() {
        let mut rng = RngState::new(5, 5);
        let spec = DistributionSpec::gamma(2, 1.0).unwrap();
        let x = spec.sample(40, &mut rng).unwrap();
        let y = spec.sample(25, &mut rng).unwrap();
        let r = pooled_residuals(&x, &y);
        let sum_x: f64 = r.values()[..40].iter().sum();
        let sum_y: f64 = r.values()[40..].iter().sum();
        let bound = |s: &Sample| {
            1e-10
                * s.len() as f64
                * s.values().iter().fold(0.0f64, |m, v| m.max(v.abs()))
        };
        assert!(sum_x.abs() <= bound(&x));
        assert!(sum_y.abs() <= bound(&y));
    }

    #[test]
    fn combined_test_takes_t_branch_on_normal_looking_data() {
        let x = sample(&[4.8, 5.1, 5.6, 4.2, 5.0, 4.6, 5.3, 4.9, 5.2, 4.7]);
        let y = sample(&[5.0, 5.4, 4.9, 5.5, 4.6, 5.1, 5.3, 4.8, 5.2, 5.6]);
        let gate = shapiro_wilk(&pooled_residuals(&x, &y)).unwrap();
        assert!(gate.p_value.value() >= 0.05);
        let combined = combined_test(&x, &y, Probability::new(0.05).unwrap()).unwrap();
        let standalone = t_test_two_sample(&x, &y).unwrap();
        assert_eq!(combined.method, TestMethod::Combined);
        assert_eq!(combined.branch_taken, Some(BranchTest::TTest));
        assert_eq!(combined.statistic, standalone.statistic);
        assert_eq!(combined.p_value, standalone.p_value);
        assert_eq!(combined.df, standalone.df);
        assert_eq!(combined.exact, standalone.exact);
    }

    #[test]
    fn combined_test_takes_wilcoxon_branch_on_skewed_data() {
        let mut rng = RngState::new(11, 3);
        let spec = DistributionSpec::exponential(1.0).unwrap();
        let x = spec.sample(30, &mut rng).unwrap();
        let y = spec.sample(30, &mut rng).unwrap();
        let gate = shapiro_wilk(&pooled_residuals(&x, &y)).unwrap();
        assert!(gate.p_value.value() < 0.05, "exponential residuals should reject");
        let combined = combined_test(&x, &y, Probability::new(0.05).unwrap()).unwrap();
        let standalone = wilcoxon_rank_sum(&x, &y).unwrap();
        assert_eq!(combined.branch_taken, Some(BranchTest::Wilcoxon));
        assert_eq!(combined.statistic, standalone.statistic);
        assert_eq!(combined.p_value, standalone.p_value);
        assert_eq!(combined.exact, standalone.exact);
    }

    #[test]
    fn test_symmetry_in_arguments() {
        let mut rng = RngState::new(21, 0);
        let spec = DistributionSpec::logistic(0.0, 1.0).unwrap();
        let x = spec.sample(12, &mut rng).unwrap();
        let y = spec.sample(17, &mut rng).unwrap();
        let t_xy = t_test_two_sample(&x, &y).unwrap();
        let t_yx = t_test_two_sample(&y, &x).unwrap();
        assert_eq!(t_xy.p_value, t_yx.p_value);
        assert!((t_xy.statistic + t_yx.statistic).abs() <= 1e-12);
        let w_xy = wilcoxon_rank_sum(&x, &y).unwrap();
        let w_yx = wilcoxon_rank_sum(&y, &x).unwrap();
        assert_eq!(w_xy.p_value, w_yx.p_value);
        // U statistics of the two orderings sum to n1 * n2
        assert_eq!(w_xy.statistic + w_yx.statistic, (12 * 17) as f64);
    }

    #[test]
    fn advise_tiny_groups() {
        let x = sample(&[1.0, 2.0, 3.0, 4.0]);
        let y = sample(&[2.0, 3.0, 4.0, 5.0]);
        let report = advise(&x, &y, AdviceMode::Guidelines).unwrap();
        assert_eq!(report.recommendation, Recommendation::TooFewObservations);
        assert_eq!(report.n_min, 4);
    }

    #[test]
    fn advise_small_groups_go_parametric() {
        // 8 per group, wildly skewed: size overrides shape
        let x = sample(&[0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 50.0]);
        let y = sample(&[0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 60.0]);
        let report = advise(&x, &y, AdviceMode::Guidelines).unwrap();
        assert_eq!(report.recommendation, Recommendation::Parametric);
        assert!(report.rule_fired.contains("extremely small"));
    }

    #[test]
    fn advise_skewed_data_goes_nonparametric() {
        let mut rng = RngState::new(8, 2);
        let spec = DistributionSpec::exponential(1.0).unwrap();
        let x = spec.sample(25, &mut rng).unwrap();
        let y = spec.sample(25, &mut rng).unwrap();
        let report = advise(&x, &y, AdviceMode::Guidelines).unwrap();
        assert_eq!(report.recommendation, Recommendation::Nonparametric);
    }

    #[test]
    fn advise_symmetric_short_tailed_goes_parametric() {
        let mut rng = RngState::new(8, 4);
        let spec = DistributionSpec::uniform(0.0, 1.0).unwrap();
        let x = spec.sample(40, &mut rng).unwrap();
        let y = spec.sample(40, &mut rng).unwrap();
        let report = advise(&x, &y, AdviceMode::Guidelines).unwrap();
        assert_eq!(report.recommendation, Recommendation::Parametric);
        assert_eq!(report.outlier_count, 0);
    }

    #[test]
    fn advise_footnote8_modes() {
        // exactly symmetric data, combined n = 100: |skew| = 0 < 4.8/10
        let x = Sample::new((0..50).map(|i| i as f64).collect()).unwrap();
        let y = Sample::new((0..50).map(|i| i as f64 + 0.25).collect()).unwrap();
        let report = advise(&x, &y, AdviceMode::Footnote8).unwrap();
        assert_eq!(report.recommendation, Recommendation::Parametric);
        assert!(report.rule_fired.contains("below"));
        assert!(!report.notes.is_empty());

        // tiny combined n: parametric regardless of shape
        let x = sample(&[1.0, 2.0, 30.0, 2.5, 1.5, 2.2]);
        let y = sample(&[1.1, 2.1, 40.0, 2.6, 1.6, 2.3]);
        let report = advise(&x, &y, AdviceMode::Footnote8).unwrap();
        assert_eq!(report.recommendation, Recommendation::Parametric);
        assert!(report.rule_fired.contains("at most 12"));

        // skewed data, large combined n: nonparametric
        let mut rng = RngState::new(14, 2);
        let spec = DistributionSpec::exponential(1.0).unwrap();
        let x = spec.sample(50, &mut rng).unwrap();
        let y = spec.sample(50, &mut rng).unwrap();
        let report = advise(&x, &y, AdviceMode::Footnote8).unwrap();
        assert_eq!(report.recommendation, Recommendation::Nonparametric);
    }

    #[test]
    fn advise_degenerate_group_errors() {
        let x = sample(&[3.0; 12]);
        let y = sample(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0, 11.0, 12.0]);
        assert!(matches!(
            advise(&x, &y, AdviceMode::Guidelines),
            Err(Error::DegenerateData(_))
        ));
    }

    #[test]
    fn outcome_serializes_with_kebab_case_methods() {
        let out = t_test_two_sample(
            &sample(&[1.0, 2.0, 3.0]),
            &sample(&[1.0, 2.0, 4.0]),
        )
        .unwrap();
        let json = serde_json::to_string(&out).unwrap();
        assert!(json.contains("\"t-test\""), "{json}");
        assert!(json.contains("\"df\":"), "{json}");
        assert!(!json.contains("branch_taken"), "{json}");
    }
}
