//! Boxplot summaries and a small Welch t helper.

use serde::{Deserialize, Serialize};

/// Five-number summary plus mean, Tukey whiskers and outliers.
///
/// Quartiles use linear interpolation between order statistics (the
/// "type 7" rule). Whiskers reach the most extreme data points within
/// `1.5 IQR` of the nearer quartile; anything beyond is an outlier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxplotStats {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub mean: f64,
    pub whisker_low: f64,
    pub whisker_high: f64,
    /// Ascending.
    pub outliers: Vec<f64>,
}

impl BoxplotStats {
    /// `None` for an empty sample.
    pub fn from_sample(data: &[f64]) -> Option<Self> {
        if data.is_empty() {
            return None;
        }
        let mut sorted = data.to_vec();
        sorted.sort_by(f64::total_cmp);

        let q1 = quantile_sorted(&sorted, 0.25);
        let q3 = quantile_sorted(&sorted, 0.75);
        let iqr = q3 - q1;
        let (lo_fence, hi_fence) = (q1 - 1.5 * iqr, q3 + 1.5 * iqr);

        let inside = || sorted.iter().copied().filter(|&x| x >= lo_fence && x <= hi_fence);
        // the quartiles lie inside the fences, so at least one datum does too
        let whisker_low = inside().next().unwrap_or(q1);
        let whisker_high = inside().next_back().unwrap_or(q3);
        let outliers = sorted
            .iter()
            .copied()
            .filter(|&x| x < whisker_low || x > whisker_high)
            .collect();

        Some(BoxplotStats {
            min: sorted[0],
            q1,
            median: quantile_sorted(&sorted, 0.5),
            q3,
            max: sorted[sorted.len() - 1],
            mean: mean(&sorted),
            whisker_low,
            whisker_high,
            outliers,
        })
    }

    pub fn from_counts(data: &[usize]) -> Option<Self> {
        Self::from_sample(&data.iter().map(|&x| x as f64).collect::<Vec<_>>())
    }

    pub fn iqr(&self) -> f64 {
        self.q3 - self.q1
    }
}

/// Type-7 quantile of an ascending, non-empty sample.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty());
    let h = (sorted.len() - 1) as f64 * p.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn mean(data: &[f64]) -> f64 {
    data.iter().sum::<f64>() / data.len() as f64
}

/// Unbiased sample variance (`n - 1` denominator).
pub fn sample_variance(data: &[f64]) -> f64 {
    let m = mean(data);
    data.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (data.len() as f64 - 1.0)
}

/// Welch's unequal-variance t statistic for `mean(a) - mean(b)` and its
/// Welch–Satterthwaite degrees of freedom.
///
/// When both samples are constant the statistic is `±inf` (or `0` for equal
/// means) and the degrees of freedom are `inf`.
pub fn welch_t(a: &[f64], b: &[f64]) -> (f64, f64) {
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (va, vb) = (sample_variance(a) / na, sample_variance(b) / nb);
    let diff = mean(a) - mean(b);
    let se2 = va + vb;
    if se2 == 0.0 {
        let t = if diff == 0.0 { 0.0 } else { diff.signum() * f64::INFINITY };
        return (t, f64::INFINITY);
    }
    let df = se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
    (diff / se2.sqrt(), df)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_sample() {
        let s = BoxplotStats::from_sample(&[1.0; 7]).unwrap();
        assert_eq!((s.min, s.q1, s.median, s.q3, s.max, s.mean), (1.0, 1.0, 1.0, 1.0, 1.0, 1.0));
        assert_eq!((s.whisker_low, s.whisker_high), (1.0, 1.0));
        assert!(s.outliers.is_empty());
    }

    #[test]
    fn type7_quartiles() {
        // numpy.percentile([1, 2, 3, 4], [25, 50, 75]) == [1.75, 2.5, 3.25]
        let s = BoxplotStats::from_sample(&[4.0, 1.0, 3.0, 2.0]).unwrap();
        assert_eq!((s.q1, s.median, s.q3), (1.75, 2.5, 3.25));
        assert_eq!(s.mean, 2.5);
    }

    #[test]
    fn whiskers_and_outliers() {
        let data = [1.0, 2.0, 3.0, 3.0, 4.0, 5.0, 8.0, 20.0, 2.0];
        let s = BoxplotStats::from_sample(&data).unwrap();
        assert_eq!((s.q1, s.q3), (2.0, 5.0));
        // q1 = 2, q3 = 5, IQR = 3 -> fences -2.5 and 9.5
        assert_eq!((s.whisker_low, s.whisker_high), (1.0, 8.0));
        assert_eq!(s.outliers, [20.0]);
    }

    #[test]
    fn empty_sample() {
        assert!(BoxplotStats::from_sample(&[]).is_none());
    }

    #[test]
    fn welch_matches_hand_computation() {
        let a = [1.0, 2.0, 3.0, 4.0];
        let b = [2.0, 4.0, 6.0, 8.0, 10.0];
        // var(a)/4 = 5/12, var(b)/5 = 2; t = (2.5 - 6) / sqrt(29/12)
        let (t, df) = welch_t(&a, &b);
        assert!((t - (-3.5 / (29.0f64 / 12.0).sqrt())).abs() < 1e-12);
        let expected_df = (29.0f64 / 12.0).powi(2) / ((5.0f64 / 12.0).powi(2) / 3.0 + 4.0 / 4.0);
        assert!((df - expected_df).abs() < 1e-12);
        assert_eq!(welch_t(&[3.0, 3.0], &[3.0, 3.0]).0, 0.0);
    }
}
