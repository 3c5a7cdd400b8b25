//! Laplacian spectra, Laplacian energy and the matrices that govern how the
//! mirror-edge operation changes a spectrum.

mod jacobi;
mod spectrum;
mod tridiagonal;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use jacobi::{sym_eigenvalues, MAX_SWEEPS, OFF_DIAGONAL_THRESHOLD};
pub use spectrum::{cospectral, multiset_remove, Spectrum, DEFAULT_TOL};
pub use tridiagonal::{dk_fk, tridiagonal_spectrum, TridiagonalSpec};

use crate::graph::Graph;
use crate::matrix::{laplacian, MatrixError, SymmetricMatrix};

/// An eigenvalue counts as at least the average degree when it is no more
/// than this far below it.
pub const SIGMA_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum SpectraError {
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_diagonal:e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },
    #[error("no eigenvalue within tolerance of {value} (nearest at distance {distance:e})")]
    Unmatched { value: f64, distance: f64 },
    #[error("closed form not applicable: {0}")]
    ClosedForm(String),
    #[error("graphs have {0} and {1} vertices")]
    OrderMismatch(usize, usize),
    #[error("sigma differs between the graphs ({0} vs {1})")]
    SigmaMismatch(usize, usize),
    #[error("0/1 vector has length {got}, expected {expected}")]
    VectorLength { got: usize, expected: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

pub fn laplacian_spectrum(g: &Graph) -> Result<Spectrum, SpectraError> {
    sym_eigenvalues(&laplacian(g))
}

fn average_degree_f64(g: &Graph) -> f64 {
    2.0 * g.size() as f64 / g.order() as f64
}

/// `sum_i |mu_i - d|` with `d` the average degree.
pub fn laplacian_energy(g: &Graph) -> Result<f64, SpectraError> {
    let spec = laplacian_spectrum(g)?;
    Ok(energy_from_spectrum(&spec, average_degree_f64(g)))
}

pub fn energy_from_spectrum(spec: &Spectrum, avg_degree: f64) -> f64 {
    spec.values().iter().map(|mu| (mu - avg_degree).abs()).sum()
}

/// `2 sum_{i <= sigma} mu_i - 2 sigma d`, the same quantity written through
/// the eigenvalues that reach the average degree.
pub fn energy_sigma_form(spec: &Spectrum, avg_degree: f64) -> f64 {
    let sigma = sigma_from_spectrum(spec, avg_degree);
    let top: f64 = spec.values()[..sigma].iter().sum();
    2.0 * top - 2.0 * sigma as f64 * avg_degree
}

/// Number of eigenvalues `mu >= avg_degree - SIGMA_TOL`.
pub fn sigma_from_spectrum(spec: &Spectrum, avg_degree: f64) -> usize {
    spec.values()
        .iter()
        .filter(|&&mu| mu >= avg_degree - SIGMA_TOL)
        .count()
}

/// Dense sigma of any graph.
pub fn sigma_dense(g: &Graph) -> Result<usize, SpectraError> {
    Ok(sigma_from_spectrum(
        &laplacian_spectrum(g)?,
        average_degree_f64(g),
    ))
}

/// Energy change from `g` to `g2` through their top-`sigma` eigenvalues:
/// `2 sum_{i <= sigma} (mu_i(g2) - mu_i(g)) - 4 sigma (e(g2) - e(g)) / n`.
///
/// Both graphs must have the same order and the same sigma.
pub fn delta_le(g: &Graph, g2: &Graph) -> Result<f64, SpectraError> {
    let n = g.order();
    if g2.order() != n {
        return Err(SpectraError::OrderMismatch(n, g2.order()));
    }
    let s1 = laplacian_spectrum(g)?;
    let s2 = laplacian_spectrum(g2)?;
    let sigma1 = sigma_from_spectrum(&s1, average_degree_f64(g));
    let sigma2 = sigma_from_spectrum(&s2, average_degree_f64(g2));
    if sigma1 != sigma2 {
        return Err(SpectraError::SigmaMismatch(sigma1, sigma2));
    }
    let sigma = sigma1;
    let top: f64 = s2.values()[..sigma]
        .iter()
        .zip(&s1.values()[..sigma])
        .map(|(a, b)| a - b)
        .sum();
    let delta_e = g2.size() as f64 - g.size() as f64;
    Ok(2.0 * top - 4.0 * sigma as f64 * delta_e / n as f64)
}

fn check_len(v: &[bool], expected: usize) -> Result<(), SpectraError> {
    if v.len() != expected {
        return Err(SpectraError::VectorLength {
            got: v.len(),
            expected,
        });
    }
    Ok(())
}

/// `H = L(G*) + E_y`: the Laplacian of the block graph with one extra unit
/// on the diagonal for every vertex joined to the root.
pub fn block_matrix(gstar: &Graph, y: &[bool]) -> Result<SymmetricMatrix, SpectraError> {
    check_len(y, gstar.order())?;
    let mut h = laplacian(gstar);
    for (i, _) in y.iter().enumerate().filter(|(_, &b)| b) {
        h.add(i, i, 1.0);
    }
    Ok(h)
}

/// `H + 2 E_z`.
pub fn perturbed_block(h: &SymmetricMatrix, z: &[bool]) -> Result<SymmetricMatrix, SpectraError> {
    check_len(z, h.order())?;
    let mut out = h.clone();
    for (i, _) in z.iter().enumerate().filter(|(_, &b)| b) {
        out.add(i, i, 2.0);
    }
    Ok(out)
}

/// Summary written by the `spectrum` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    pub n: usize,
    pub edges: usize,
    pub avg_degree: f64,
    pub sigma: usize,
    pub energy: f64,
}

impl EnergyReport {
    pub fn new(g: &Graph, spec: &Spectrum, sigma: usize) -> Self {
        let avg = average_degree_f64(g);
        Self {
            n: g.order(),
            edges: g.size(),
            avg_degree: avg,
            sigma,
            energy: energy_from_spectrum(spec, avg),
        }
    }
}
