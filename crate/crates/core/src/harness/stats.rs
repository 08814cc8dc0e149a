use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{decode, InjectionSequence, Instance, LoadProfile};

/// Left-closed bins of `bin_width` starting at the smallest value, empty bins
/// included. Frequencies sum to `values.len()`.
pub fn histogram(values: &[i64], bin_width: u64) -> Vec<(i64, usize)> {
    assert!(bin_width >= 1, "bin width must be positive");
    let (Some(&lo), Some(&hi)) = (values.iter().min(), values.iter().max()) else {
        return Vec::new();
    };
    let width = bin_width as i64;
    let bins = ((hi - lo) / width + 1) as usize;
    let mut freq = vec![0usize; bins];
    for &v in values {
        freq[((v - lo) / width) as usize] += 1;
    }
    freq.into_iter()
        .enumerate()
        .map(|(i, f)| (lo + i as i64 * width, f))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub points: Vec<(f64, f64)>,
}

impl LinearFit {
    pub fn predict(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }
}

/// Ordinary least squares line through `points`.
pub fn fit_least_squares(points: &[(f64, f64)]) -> Result<LinearFit> {
    if points.len() < 2 {
        return Err(Error::DegenerateInput(format!(
            "need at least 2 points, got {}",
            points.len()
        )));
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateInput("all x values coincide".into()));
    }
    let slope = sxy / sxx;
    Ok(LinearFit {
        slope,
        intercept: mean_y - slope * mean_x,
        points: points.to_vec(),
    })
}

/// Moulds on the belt per round for the schedule `seq` induces.
pub fn load_series(inst: &Instance, seq: &InjectionSequence) -> Result<LoadProfile> {
    Ok(decode(inst, seq)?.load_profile())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn histogram_examples() {
        assert_eq!(histogram(&[0, 0, 5], 5), [(0, 2), (5, 1)]);
        assert_eq!(histogram(&[], 3), []);
        assert_eq!(histogram(&[7, 7, 9, 12], 2), [(7, 2), (9, 1), (11, 1)]);
        assert_eq!(histogram(&[-3, 4], 3), [(-3, 1), (0, 0), (3, 1)]);
    }

    #[test]
    fn fit_examples() {
        let f = fit_least_squares(&[(0.0, 0.0), (1.0, 1.0)]).unwrap();
        assert!((f.slope - 1.0).abs() < 1e-12 && f.intercept.abs() < 1e-12);
        let f = fit_least_squares(&[(0.0, 1.0), (1.0, 1.0)]).unwrap();
        assert!(f.slope.abs() < 1e-12 && (f.intercept - 1.0).abs() < 1e-12);
        let f = fit_least_squares(&[(0.0, 0.0), (1.0, 2.0), (2.0, 2.0)]).unwrap();
        assert!((f.slope - 1.0).abs() < 1e-12);
        assert!((f.intercept - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn fit_rejects_degenerate_input() {
        assert!(matches!(fit_least_squares(&[(1.0, 1.0)]), Err(Error::DegenerateInput(_))));
        assert!(matches!(
            fit_least_squares(&[(1.0, 1.0), (1.0, 3.0)]),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn load_series_examples() {
        let inst = Instance::new(3, [("A", 4, 2), ("B", 3, 1)]).unwrap();
        let seq = InjectionSequence::from_ids(&inst, &["B", "A", "A"]).unwrap();
        assert_eq!(load_series(&inst, &seq).unwrap().per_round, [3, 3, 1]);

        let inst = Instance::new(4, [("A", 2, 2), ("B", 2, 2)]).unwrap();
        let seq = InjectionSequence::all_moulds(&inst);
        assert_eq!(load_series(&inst, &seq).unwrap().per_round, [4]);

        // fewer moulds than slots: the belt never fills up
        let inst = Instance::new(20, [("A", 120, 10), ("B", 119, 8)]).unwrap();
        let seq = InjectionSequence::all_moulds(&inst);
        assert!(load_series(&inst, &seq).unwrap().peak() < 20);
    }
}
