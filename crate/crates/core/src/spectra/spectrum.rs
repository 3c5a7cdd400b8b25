use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::SpectraError;

/// Absolute tolerance used when matching eigenvalues.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Real multiset kept sorted in descending order, with a matching tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    values: Vec<f64>,
    tol: f64,
}

impl Spectrum {
    pub fn new(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Self {
            values,
            tol: DEFAULT_TOL,
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Number of values within `tol` of `x`.
    pub fn multiplicity(&self, x: f64) -> usize {
        self.values.iter().filter(|v| (*v - x).abs() <= self.tol).count()
    }

    /// Number of values with `v >= x - tol`.
    pub fn count_at_least(&self, x: f64) -> usize {
        self.values.iter().filter(|&&v| v >= x - self.tol).count()
    }

    /// Removes, for each element of `other` (largest first), the nearest
    /// remaining element of `self`. Never fails: the second component is the
    /// largest distance used in any pairing, infinite when `self` runs out.
    pub fn remove_nearest(&self, other: &Spectrum) -> (Spectrum, f64) {
        let mut rest = self.values.clone();
        let mut worst = 0.0_f64;
        for &d in &other.values {
            let nearest = rest
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| (*a - d).abs().total_cmp(&(*b - d).abs()));
            match nearest {
                Some((idx, &v)) => {
                    worst = worst.max((v - d).abs());
                    rest.remove(idx);
                }
                None => worst = f64::INFINITY,
            }
        }
        (
            Spectrum {
                values: rest,
                tol: self.tol,
            },
            worst,
        )
    }

    /// Multiset difference `self \ other`; every element of `other` must
    /// match some element of `self` within `tol`.
    pub fn remove(&self, other: &Spectrum) -> Result<Spectrum, SpectraError> {
        let mut rest = self.clone();
        for &d in &other.values {
            let (next, dist) = rest.remove_nearest(&Spectrum::new(vec![d]));
            if dist > self.tol {
                return Err(SpectraError::Unmatched {
                    value: d,
                    distance: dist,
                });
            }
            rest = next;
        }
        Ok(rest)
    }

    /// Multiset union.
    pub fn union(&self, other: &Spectrum) -> Spectrum {
        let mut values = self.values.clone();
        values.extend_from_slice(&other.values);
        Spectrum::new(values).with_tol(self.tol)
    }

    /// Largest pointwise gap after sorting, or `None` when sizes differ.
    pub fn max_deviation(&self, other: &Spectrum) -> Option<f64> {
        (self.len() == other.len()).then(|| {
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
    }

    /// Values rounded to `decimals` places, for display.
    pub fn rounded(&self, decimals: i32) -> Vec<f64> {
        let scale = 10f64.powi(decimals);
        self.values
            .iter()
            .map(|v| {
                let r = (v * scale).round() / scale;
                // avoid printing -0
                if r == 0.0 { 0.0 } else { r }
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.values).expect("finite floats serialize")
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("index,eigenvalue\n");
        for (i, v) in self.values.iter().enumerate() {
            let _ = writeln!(s, "{},{v:?}", i + 1);
        }
        s
    }
}

/// Multiset difference with the tolerance of `s`.
pub fn multiset_remove(s: &Spectrum, d: &Spectrum) -> Result<Spectrum, SpectraError> {
    s.remove(d)
}

/// Same size and pairwise within the looser of the two tolerances after a
/// descending sort.
pub fn cospectral(s1: &Spectrum, s2: &Spectrum) -> bool {
    let tol = s1.tol.max(s2.tol);
    s1.max_deviation(s2).is_some_and(|d| d <= tol)
}
