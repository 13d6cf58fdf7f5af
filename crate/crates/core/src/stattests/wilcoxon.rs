//! Wilcoxon rank-sum (Mann-Whitney U) test.
//!
//! The statistic is U for the first sample (midranks for ties). For small
//! tie-free samples the p-value comes from the exact null distribution of U,
//! counted once per `(n1, n2)` pair and cached process-wide; otherwise a
//! normal approximation with tie-corrected variance and continuity
//! correction 0.5 is used, mirroring the convention of the widely used
//! reference implementations.

use crate::error::{Error, Result};
use crate::randgen::Sample;
use crate::special::{std_normal_cdf, Probability};
use crate::stattests::{TestMethod, TestOutcome};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Largest per-group size for which the exact path is taken by default.
pub const DEFAULT_EXACT_LIMIT: usize = 50;

/// Exact null distribution of U for one `(n1, n2)` pair.
///
/// `cumulative[u]` counts the rank subsets with statistic at most `u`;
/// counts are held in f64 (exact integers up to 2^53, the relevant range
/// for bit-reproducible small-sample p-values).
struct ExactTable {
    cumulative: Vec<f64>,
    total: f64,
}

impl ExactTable {
    fn build(n1: usize, n2: usize) -> ExactTable {
        let n = n1 + n2;
        let min_sum = n1 * (n1 + 1) / 2;
        let max_sum: usize = (n - n1 + 1..=n).sum();
        // ways[j][s]: subsets of size j with rank sum s, over ranks seen so far
        let mut ways = vec![vec![0.0f64; max_sum + 1]; n1 + 1];
        ways[0][0] = 1.0;
        for rank in 1..=n {
            let j_hi = rank.min(n1);
            for j in (1..=j_hi).rev() {
                let s_lo = j * (j + 1) / 2;
                let s_hi: usize = (rank - j + 1..=rank).sum::<usize>().min(max_sum);
                for s in (s_lo.max(rank)..=s_hi).rev() {
                    let add = ways[j - 1][s - rank];
                    if add != 0.0 {
                        ways[j][s] += add;
                    }
                }
            }
        }
        let counts = &ways[n1];
        let u_max = n1 * n2;
        let mut cumulative = Vec::with_capacity(u_max + 1);
        let mut acc = 0.0;
        for u in 0..=u_max {
            acc += counts[u + min_sum];
            cumulative.push(acc);
        }
        ExactTable {
            total: acc,
            cumulative,
        }
    }

    /// P(U <= u) and P(U >= u) as (numerator, denominator) pairs kept exact.
    fn tail_counts(&self, u: usize) -> (f64, f64) {
        let le = self.cumulative[u];
        let ge = if u == 0 {
            self.total
        } else {
            self.total - self.cumulative[u - 1]
        };
        (le, ge)
    }
}

fn exact_table(n1: usize, n2: usize) -> Arc<ExactTable> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<ExactTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().expect("exact-table cache poisoned");
    map.entry((n1, n2))
        .or_insert_with(|| Arc::new(ExactTable::build(n1, n2)))
        .clone()
}

/// Midranks of the combined sample plus the tie-group sizes.
fn combined_midranks(x: &[f64], y: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let n = x.len() + y.len();
    let mut order: Vec<usize> = (0..n).collect();
    let value = |i: usize| {
        if i < x.len() {
            x[i]
        } else {
            y[i - x.len()]
        }
    };
    order.sort_by(|&a, &b| value(a).partial_cmp(&value(b)).expect("finite values"));
    let mut ranks = vec![0.0; n];
    let mut tie_sizes = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && value(order[j]) == value(order[i]) {
            j += 1;
        }
        let midrank = (i + 1 + j) as f64 / 2.0;
        for &idx in &order[i..j] {
            ranks[idx] = midrank;
        }
        tie_sizes.push(j - i);
        i = j;
    }
    (ranks, tie_sizes)
}

pub fn wilcoxon_rank_sum(x: &Sample, y: &Sample) -> Result<TestOutcome> {
    wilcoxon_rank_sum_with_limit(x, y, DEFAULT_EXACT_LIMIT)
}

/// Wilcoxon rank-sum test with an explicit exact-path size limit.
pub fn wilcoxon_rank_sum_with_limit(
    x: &Sample,
    y: &Sample,
    exact_limit: usize,
) -> Result<TestOutcome> {
    let (n1, n2) = (x.len(), y.len());
    if n1 + n2 < 3 {
        return Err(Error::InsufficientData(
            "wilcoxon rank-sum needs at least 3 observations in total".into(),
        ));
    }
    let (ranks, tie_sizes) = combined_midranks(x.values(), y.values());
    if tie_sizes.len() == 1 {
        return Err(Error::DegenerateData(
            "all observations are tied across both samples".into(),
        ));
    }
    let rank_sum: f64 = ranks[..n1].iter().sum();
    let u = rank_sum - (n1 * (n1 + 1)) as f64 / 2.0;

    let has_ties = tie_sizes.iter().any(|&t| t > 1);
    let exact = !has_ties && n1 <= exact_limit && n2 <= exact_limit;
    let p = if exact {
        // u is integral when there are no ties
        let table = exact_table(n1, n2);
        let (le, ge) = table.tail_counts(u as usize);
        Probability::clamped((2.0 * (le.min(ge) / table.total)).min(1.0))
    } else {
        let n = (n1 + n2) as f64;
        let mean = (n1 * n2) as f64 / 2.0;
        let tie_term: f64 = tie_sizes
            .iter()
            .map(|&t| {
                let t = t as f64;
                t * t * t - t
            })
            .sum();
        let var = ((n1 * n2) as f64 / 12.0) * (n + 1.0 - tie_term / (n * (n - 1.0)));
        if var <= 0.0 {
            return Err(Error::DegenerateData(
                "rank variance is zero; observations are effectively constant".into(),
            ));
        }
        let centered = u - mean;
        let z = (centered - 0.5 * centered.signum()) / var.sqrt();
        let lower = std_normal_cdf(z)?.value();
        Probability::clamped((2.0 * lower.min(1.0 - lower)).min(1.0))
    };

    Ok(TestOutcome {
        method: TestMethod::Wilcoxon,
        statistic: u,
        p_value: p,
        n1,
        n2,
        exact,
        branch_taken: None,
        df: None,
    })
}
