//! Cyclic Jacobi eigenvalue iteration for dense symmetric matrices.

use super::{SpectraError, Spectrum};
use crate::matrix::SymmetricMatrix;

/// Iteration stops once the off-diagonal Frobenius norm drops to this
/// fraction of the norm of the input.
pub const OFF_DIAGONAL_THRESHOLD: f64 = 1e-14;

/// Upper bound on full sweeps over the upper triangle.
pub const MAX_SWEEPS: usize = 100;

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            sum += a[p * n + q] * a[p * n + q];
        }
    }
    (2.0 * sum).sqrt()
}

/// All eigenvalues of `m` with multiplicity, sorted descending.
///
/// Works on a private copy. Each sweep applies one plane rotation per
/// nonzero upper-triangle entry, in row-major order.
pub fn sym_eigenvalues(m: &SymmetricMatrix) -> Result<Spectrum, SpectraError> {
    let target = OFF_DIAGONAL_THRESHOLD * m.frobenius_norm();
    let (n, mut a) = m.clone().into_raw();

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a, n) <= target {
            return Ok(Spectrum::new((0..n).map(|i| a[i * n + i]).collect()));
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_kp = c * akp - s * akq;
                    let new_kq = s * akp + c * akq;
                    a[k * n + p] = new_kp;
                    a[p * n + k] = new_kp;
                    a[k * n + q] = new_kq;
                    a[q * n + k] = new_kq;
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }

    Err(SpectraError::NoConvergence {
        sweeps: MAX_SWEEPS,
        off_diagonal: off_diagonal_norm(&a, n),
    })
}
