//! Closed-form spectra of tridiagonal Toeplitz matrices with one perturbed
//! corner.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{SpectraError, Spectrum};
use crate::matrix::SymmetricMatrix;

/// Order-`order` matrix with `b` on the diagonal, `a` below, `c` above,
/// and corner entries `b - alpha` (top left) and `b - beta` (bottom right).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TridiagonalSpec {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub alpha: f64,
    pub beta: f64,
    pub order: usize,
}

impl TridiagonalSpec {
    /// The shape shared by `D_k` and `F_k`: `a = c = -1`, `b = 2`, `beta = 0`.
    pub fn laplacian_like(alpha: f64, order: usize) -> Self {
        Self {
            a: -1.0,
            b: 2.0,
            c: -1.0,
            alpha,
            beta: 0.0,
            order,
        }
    }

    fn check(&self) -> Result<(), SpectraError> {
        let product = self.a * self.c;
        if self.order == 0 {
            return Err(SpectraError::ClosedForm("order must be positive".into()));
        }
        if product <= 0.0 {
            return Err(SpectraError::ClosedForm(format!(
                "a*c = {product} must be positive"
            )));
        }
        let root = product.sqrt();
        if (self.alpha.abs() - root).abs() > 1e-12 * root {
            return Err(SpectraError::ClosedForm(format!(
                "|alpha| = {} differs from sqrt(a*c) = {root}",
                self.alpha.abs()
            )));
        }
        if self.beta != 0.0 {
            return Err(SpectraError::ClosedForm(format!(
                "beta = {} must be zero",
                self.beta
            )));
        }
        Ok(())
    }

    /// `{ b + 2 alpha cos(2 j pi / (2s + 1)) : j = 1..=s }`.
    pub fn closed_form(&self) -> Result<Spectrum, SpectraError> {
        self.check()?;
        let s = self.order as f64;
        Ok(Spectrum::new(
            (1..=self.order)
                .map(|j| self.b + 2.0 * self.alpha * (2.0 * j as f64 * PI / (2.0 * s + 1.0)).cos())
                .collect(),
        ))
    }

    /// Explicit matrix; only the symmetric case `a == c` is representable.
    pub fn assemble(&self) -> Result<SymmetricMatrix, SpectraError> {
        if self.a != self.c {
            return Err(SpectraError::ClosedForm(format!(
                "assembly needs a == c, got a = {}, c = {}",
                self.a, self.c
            )));
        }
        let n = self.order;
        let mut m = SymmetricMatrix::zeros(n)?;
        for i in 0..n {
            m.set(i, i, self.b);
            if i + 1 < n {
                m.set(i, i + 1, self.a);
            }
        }
        m.add(0, 0, -self.alpha);
        m.add(n - 1, n - 1, -self.beta);
        Ok(m)
    }
}

pub fn tridiagonal_spectrum(t: &TridiagonalSpec) -> Result<Spectrum, SpectraError> {
    t.closed_form()
}

/// `(D_k, F_k)`: the eigenvalues `2 ± 2 cos(2 j pi / (2k + 1))`, `j = 1..=k`.
///
/// `D_k` is the spectrum of `L(P_k) + E_{e_k}` and `F_k` that of
/// `L(P_k) + E_{e_k} + 2 E_{e_1}`.
pub fn dk_fk(k: usize) -> (Spectrum, Spectrum) {
    assert!(k >= 1, "dk_fk needs k >= 1");
    let d = TridiagonalSpec::laplacian_like(1.0, k)
        .closed_form()
        .expect("valid parameters");
    let f = TridiagonalSpec::laplacian_like(-1.0, k)
        .closed_form()
        .expect("valid parameters");
    (d, f)
}
