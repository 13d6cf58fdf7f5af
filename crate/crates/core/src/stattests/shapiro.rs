//! Shapiro-Wilk test for normality.
//!
//! Implements the Royston construction (algorithm AS R94, Applied
//! Statistics 44, 1995) for complete samples with 3 <= n <= 5000: expected
//! normal order-statistic scores m_i = Phi^-1((i - 0.375) / (n + 0.25)),
//! the published polynomial corrections to the two outermost weights, the
//! exact arcsine p-value at n = 3, and the log-based normalizing transforms
//! for 4 <= n <= 11 and n >= 12.

use crate::error::{Error, Result};
use crate::randgen::Sample;
use crate::special::{std_normal_cdf, std_normal_quantile, Probability};
use crate::stattests::{TestMethod, TestOutcome};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub const MIN_N: usize = 3;
pub const MAX_N: usize = 5000;

// Royston 1995 polynomial coefficients, ascending powers.
const C1: [f64; 6] = [0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056];
const C2: [f64; 6] = [0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633];
const C3: [f64; 4] = [0.5440, -0.39978, 0.025054, -6.714e-4];
const C4: [f64; 4] = [1.3822, -0.77857, 0.062767, -0.0020322];
const C5: [f64; 4] = [-1.5861, -0.31082, -0.083751, 0.0038915];
const C6: [f64; 3] = [-0.4803, -0.082676, 0.0030302];
const G: [f64; 2] = [-2.273, 0.459];

fn poly(coef: &[f64], x: f64) -> f64 {
    coef.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// Weight magnitudes for the lower half of the order statistics; the full
/// weight vector is antisymmetric (w_i = -a_i, w_{n-1-i} = +a_i).
fn build_weights(n: usize) -> Vec<f64> {
    debug_assert!(n >= 4);
    let half = n / 2;
    let an25 = n as f64 + 0.25;
    let mut m: Vec<f64> = (0..half)
        .map(|i| {
            let p = Probability::new((i as f64 + 1.0 - 0.375) / an25).expect("in (0,1)");
            std_normal_quantile(p).expect("p strictly inside (0,1)")
        })
        .collect();
    let summ2 = 2.0 * m.iter().map(|v| v * v).sum::<f64>();
    let ssumm2 = summ2.sqrt();
    let rsn = 1.0 / (n as f64).sqrt();
    let a1 = poly(&C1, rsn) - m[0] / ssumm2;
    let (start, fac) = if n > 5 {
        let a2 = poly(&C2, rsn) - m[1] / ssumm2;
        let fac = ((summ2 - 2.0 * m[0] * m[0] - 2.0 * m[1] * m[1])
            / (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2))
            .sqrt();
        m[1] = a2;
        (2, fac)
    } else {
        let fac = ((summ2 - 2.0 * m[0] * m[0]) / (1.0 - 2.0 * a1 * a1)).sqrt();
        (1, fac)
    };
    m[0] = a1;
    for v in m.iter_mut().skip(start) {
        *v = -*v / fac;
    }
    m
}

fn weights(n: usize) -> Arc<Vec<f64>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<f64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().expect("weight cache poisoned");
    map.entry(n)
        .or_insert_with(|| Arc::new(build_weights(n)))
        .clone()
}

pub fn shapiro_wilk(x: &Sample) -> Result<TestOutcome> {
    let n = x.len();
    if !(MIN_N..=MAX_N).contains(&n) {
        return Err(Error::UnsupportedSize(format!(
            "shapiro-wilk supports 3 <= n <= 5000, got n = {n}"
        )));
    }
    let mut sorted = x.values().to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    if sorted[n - 1] == sorted[0] {
        return Err(Error::DegenerateData(
            "all observations are equal; W is undefined".into(),
        ));
    }

    let mean = sorted.iter().sum::<f64>() / n as f64;
    let sse: f64 = sorted.iter().map(|v| (v - mean) * (v - mean)).sum();
    let numerator_root: f64 = if n == 3 {
        std::f64::consts::FRAC_1_SQRT_2 * (sorted[2] - sorted[0])
    } else {
        let a = weights(n);
        a.iter()
            .enumerate()
            .map(|(i, ai)| ai * (sorted[n - 1 - i] - sorted[i]))
            .sum()
    };
    let w = (numerator_root * numerator_root / sse).min(1.0);

    let p = if n == 3 {
        // exact: (6/pi) * (asin(sqrt(W)) - asin(sqrt(3/4))), W in [3/4, 1]
        let w = w.max(0.75);
        let p = (6.0 / std::f64::consts::PI) * (w.sqrt().asin() - 0.75f64.sqrt().asin());
        Probability::clamped(p.clamp(0.0, 1.0))
    } else {
        let y = (1.0 - w).ln();
        let an = n as f64;
        let z = if n <= 11 {
            let gamma = poly(&G, an);
            if y >= gamma {
                // W so close to 1 that the transform degenerates
                return Ok(outcome(n, w, Probability::clamped(1.0)));
            }
            let y = -(gamma - y).ln();
            (y - poly(&C3, an)) / poly(&C4, an).exp()
        } else {
            let ln_n = an.ln();
            (y - poly(&C5, ln_n)) / poly(&C6, ln_n).exp()
        };
        Probability::clamped(1.0 - std_normal_cdf(z)?.value())
    };
    Ok(outcome(n, w, p))
}

fn outcome(n: usize, w: f64, p: Probability) -> TestOutcome {
    TestOutcome {
        method: TestMethod::ShapiroWilk,
        statistic: w,
        p_value: p,
        n1: n,
        n2: 0,
        exact: n == 3,
        branch_taken: None,
        df: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(values: &[f64]) -> Sample {
        Sample::new(values.to_vec()).unwrap()
    }

    #[test]
    fn three_equispaced_points_are_perfectly_normal() {
        let out = shapiro_wilk(&sample(&[1.0, 2.0, 3.0])).unwrap();
        assert!((out.statistic - 1.0).abs() <= 1e-12);
        assert!((out.p_value.value() - 1.0).abs() <= 1e-12);
        assert!(out.exact);
        assert_eq!(out.n1, 3);
        assert_eq!(out.n2, 0);
    }

    #[test]
    fn n3_skewed_case() {
        // W for [0, 1, 10]: (range^2 / 2) / sse with sse = 101 - 121/3
        let out = shapiro_wilk(&sample(&[0.0, 1.0, 10.0])).unwrap();
        let sse = 101.0 - 121.0 / 3.0;
        let expect_w = 0.5 * 100.0 / sse;
        assert!(
            (out.statistic - expect_w).abs() <= 1e-12,
            "{} vs {expect_w}",
            out.statistic
        );
        let expect_p = (6.0 / std::f64::consts::PI)
            * (expect_w.sqrt().asin() - 0.75f64.sqrt().asin());
        assert!((out.p_value.value() - expect_p).abs() <= 1e-12);
    }

    #[test]
    fn constant_sample_is_degenerate() {
        assert!(matches!(
            shapiro_wilk(&sample(&[5.0; 5])),
            Err(Error::DegenerateData(_))
        ));
    }

    #[test]
    fn size_limits_are_enforced() {
        assert!(matches!(
            shapiro_wilk(&sample(&[1.0, 2.0])),
            Err(Error::UnsupportedSize(_))
        ));
        let big: Vec<f64> = (0..5001).map(|i| i as f64).collect();
        assert!(matches!(
            shapiro_wilk(&sample(&big)),
            Err(Error::UnsupportedSize(_))
        ));
    }

    // Reference W and p from an independent AS R94 implementation
    // (scipy.stats.shapiro, which mirrors R's shapiro.test).
    #[test]
    fn matches_reference_implementation() {
        let n8 = sample(&[148.0, 154.0, 158.0, 160.0, 161.0, 162.0, 166.0, 170.0]);
        let out = shapiro_wilk(&n8).unwrap();
        assert!((out.statistic - 0.9822817035169561).abs() <= 1e-5);
        assert!((out.p_value.value() - 0.9733029149412554).abs() <= 1e-4);

        let n11 = sample(&[6.0, 1.0, -4.0, 8.0, -2.0, 5.0, 0.0, 7.0, 2.0, 9.0, 3.0]);
        let out = shapiro_wilk(&n11).unwrap();
        assert!((out.statistic - 0.9665377266499028).abs() <= 1e-5);
        assert!((out.p_value.value() - 0.8495993959383286).abs() <= 1e-4);

        let n20 = sample(&[
            3.024413, 3.727892, 1.92336, -0.270407, -0.376773, 2.161754, 5.47096, 6.968075,
            5.736355, 3.367937, 2.500029, 4.390281, 7.760501, 9.971822, 9.450864, 7.13629,
            5.615808, 6.747038, 9.949632, 12.738836,
        ]);
        let out = shapiro_wilk(&n20).unwrap();
        assert!((out.statistic - 0.9767583274936599).abs() <= 1e-5);
        assert!((out.p_value.value() - 0.8857673731806588).abs() <= 1e-3);

        // heavily skewed: expected exponential order statistics, n = 50
        let n50: Vec<f64> = (1..=50)
            .map(|i| -(((i as f64) - 0.375) / 50.25).ln())
            .collect();
        let out = shapiro_wilk(&sample(&n50)).unwrap();
        assert!((out.statistic - 0.846111638458278).abs() <= 1e-5);
        assert!(
            (out.p_value.value() - 1.216111736917033e-5).abs() <= 1e-6,
            "p = {}",
            out.p_value
        );
        assert!(!out.exact);
    }

    #[test]
    fn outlier_drags_w_down() {
        let base: Vec<f64> = (1..=20)
            .map(|i| {
                std_normal_quantile(Probability::new(i as f64 / 21.0).unwrap()).unwrap()
            })
            .collect();
        let w_clean = shapiro_wilk(&sample(&base)).unwrap().statistic;
        let mut spiked = base.clone();
        spiked[19] = 40.0;
        let w_spiked = shapiro_wilk(&sample(&spiked)).unwrap().statistic;
        assert!(w_spiked < w_clean, "{w_spiked} !< {w_clean}");
        assert!(w_spiked < 0.5);
    }

    #[test]
    fn ties_are_accepted() {
        let out = shapiro_wilk(&sample(&[1.0, 1.0, 2.0, 2.0, 3.0, 3.0, 4.0])).unwrap();
        assert!(out.statistic > 0.0 && out.statistic <= 1.0);
    }

    #[test]
    fn w_stays_in_unit_interval_for_awkward_shapes() {
        for n in [4usize, 5, 6, 11, 12, 13, 100, 500] {
            let values: Vec<f64> = (0..n).map(|i| (i as f64).sqrt().exp()).collect();
            let out = shapiro_wilk(&sample(&values)).unwrap();
            assert!(out.statistic > 0.0 && out.statistic <= 1.0, "n = {n}");
        }
    }
}
