//! Replicate statistics: mean, n−1 standard deviation, five-number summary
//! (linearly interpolated quartiles) and sample skewness.

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Summary {
    pub mean: f64,
    /// `None` for a single value.
    pub std: Option<f64>,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub count: usize,
}

pub fn mean(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        None
    } else {
        Some(values.iter().sum::<f64>() / values.len() as f64)
    }
}

/// Standard deviation with the `n − 1` denominator.
pub fn sample_std(values: &[f64]) -> Option<f64> {
    if values.len() < 2 {
        return None;
    }
    let m = mean(values)?;
    let ss: f64 = values.iter().map(|v| (v - m) * (v - m)).sum();
    Some((ss / (values.len() - 1) as f64).sqrt())
}

/// Quantile of sorted data by linear interpolation between closest ranks.
pub fn quantile(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty());
    let pos = p * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

/// Moment skewness `m3 / m2^{3/2}`; `None` for fewer than 3 values or zero spread.
pub fn skewness(values: &[f64]) -> Option<f64> {
    if values.len() < 3 {
        return None;
    }
    let m = mean(values)?;
    let n = values.len() as f64;
    let m2 = values.iter().map(|v| (v - m).powi(2)).sum::<f64>() / n;
    let m3 = values.iter().map(|v| (v - m).powi(3)).sum::<f64>() / n;
    if m2 == 0.0 {
        return None;
    }
    Some(m3 / m2.powf(1.5))
}

pub fn summarize_values(values: &[f64]) -> Option<Summary> {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Some(Summary {
        mean: mean(values)?,
        std: sample_std(values),
        min: sorted[0],
        q1: quantile(&sorted, 0.25),
        median: quantile(&sorted, 0.5),
        q3: quantile(&sorted, 0.75),
        max: *sorted.last().unwrap(),
        count: values.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::rng_for;
    use rand::Rng;

    #[test]
    fn one_two_three() {
        let s = summarize_values(&[3.0, 1.0, 2.0]).unwrap();
        assert_eq!(s.mean, 2.0);
        assert_eq!(s.std, Some(1.0));
        assert_eq!(s.median, 2.0);
        assert_eq!((s.min, s.q1, s.q3, s.max), (1.0, 1.5, 2.5, 3.0));
        assert_eq!(s.count, 3);
    }

    #[test]
    fn single_value_has_no_std() {
        let s = summarize_values(&[4.5]).unwrap();
        assert_eq!(s.std, None);
        assert_eq!((s.min, s.q1, s.median, s.q3, s.max), (4.5, 4.5, 4.5, 4.5, 4.5));
    }

    #[test]
    fn empty_has_no_summary() {
        assert_eq!(summarize_values(&[]), None);
    }

    #[test]
    fn uniform_draws_center_on_half() {
        let mut rng = rng_for(2024);
        let values: Vec<f64> = (0..100).map(|_| rng.random::<f64>()).collect();
        let s = summarize_values(&values).unwrap();
        assert!((s.mean - 0.5).abs() < 0.1);
        assert!(s.min <= s.q1 && s.q1 <= s.median && s.median <= s.q3 && s.q3 <= s.max);
    }

    #[test]
    fn skewness_signs() {
        assert!(skewness(&[1.0, 2.0, 3.0]).unwrap().abs() < 1e-15);
        assert!(skewness(&[0.0, 0.0, 0.0, 10.0]).unwrap() > 0.0);
        assert_eq!(skewness(&[1.0, 1.0, 1.0]), None);
    }
}
