//! Small statistics and formatting helpers shared by the experiment
//! reports.

use serde::Serialize;

/// Formats a float with 17 significant digits, enough for a lossless
/// decimal round-trip of an `f64`.
pub fn fmt_g17(x: f64) -> String {
    format!("{x:.16e}")
}

/// A 95% Wilson score interval for a binomial proportion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WilsonInterval {
    /// Lower endpoint.
    pub lo: f64,
    /// Upper endpoint.
    pub hi: f64,
}

/// Wilson score interval at the 95% level. With zero trials the interval
/// is the uninformative `[0, 1]`.
pub fn wilson(successes: usize, trials: usize) -> WilsonInterval {
    if trials == 0 {
        return WilsonInterval { lo: 0.0, hi: 1.0 };
    }
    let z = 1.959_963_984_540_054f64;
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    WilsonInterval {
        lo: (center - half).max(0.0),
        hi: (center + half).min(1.0),
    }
}

/// Ordinary least squares for `y = slope * x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinearFit {
    /// Fitted slope.
    pub slope: f64,
    /// Fitted intercept.
    pub intercept: f64,
    /// Standard error of the slope (NaN with fewer than 3 points).
    pub slope_se: f64,
}

/// Least-squares line through `(x, y)` pairs. With a single point the
/// slope is NaN.
pub fn linear_fit(x: &[f64], y: &[f64]) -> LinearFit {
    assert_eq!(x.len(), y.len(), "mismatched fit inputs");
    let n = x.len() as f64;
    if x.len() < 2 {
        return LinearFit {
            slope: f64::NAN,
            intercept: if x.is_empty() { f64::NAN } else { y[0] },
            slope_se: f64::NAN,
        };
    }
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|&v| (v - mx) * (v - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(&a, &b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let slope_se = if x.len() >= 3 {
        let ss_res: f64 = x
            .iter()
            .zip(y)
            .map(|(&a, &b)| {
                let r = b - (slope * a + intercept);
                r * r
            })
            .sum();
        (ss_res / (n - 2.0) / sxx).sqrt()
    } else {
        f64::NAN
    };
    LinearFit {
        slope,
        intercept,
        slope_se,
    }
}

/// Quantile of a sample by linear interpolation of order statistics
/// (the common "type 7" rule). `p` in `[0, 1]`; the input need not be
/// sorted.
pub fn quantile(values: &[f64], p: f64) -> f64 {
    assert!(!values.is_empty(), "quantile of empty sample");
    assert!((0.0..=1.0).contains(&p), "quantile level out of range");
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let frac = h - lo as f64;
    if lo + 1 < sorted.len() {
        sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
    } else {
        sorted[lo]
    }
}
