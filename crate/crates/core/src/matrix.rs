//! Dense symmetric matrices.
//!
//! Indices here are 0-based; graph vertices are 1-based and are shifted by
//! one when a Laplacian is assembled.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq)]
pub enum MatrixError {
    #[error("matrix order must be positive")]
    EmptyMatrix,
    #[error("row {row} has {len} entries, expected {order}")]
    Ragged { row: usize, len: usize, order: usize },
    #[error("entries ({i}, {j}) and ({j}, {i}) differ")]
    NotSymmetric { i: usize, j: usize },
}

/// Square real matrix whose symmetry is enforced on every write.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetricMatrix {
    order: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(order: usize) -> Result<Self, MatrixError> {
        if order == 0 {
            return Err(MatrixError::EmptyMatrix);
        }
        Ok(Self {
            order,
            data: vec![0.0; order * order],
        })
    }

    pub fn identity(order: usize) -> Result<Self, MatrixError> {
        let mut m = Self::zeros(order)?;
        for i in 0..order {
            m.set(i, i, 1.0);
        }
        Ok(m)
    }

    /// Builds a matrix from explicit rows, rejecting anything that is not
    /// exactly symmetric.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self, MatrixError> {
        let order = rows.len();
        let mut m = Self::zeros(order)?;
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != order {
                return Err(MatrixError::Ragged {
                    row: i,
                    len: row.len(),
                    order,
                });
            }
            for (j, &v) in row.iter().enumerate() {
                m.data[i * order + j] = v;
            }
        }
        for i in 0..order {
            for j in (i + 1)..order {
                if m.data[i * order + j] != m.data[j * order + i] {
                    return Err(MatrixError::NotSymmetric { i, j });
                }
            }
        }
        Ok(m)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.order + j]
    }

    /// Writes `(i, j)` and its mirror `(j, i)`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.order + j] = value;
        self.data[j * self.order + i] = value;
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, delta: f64) {
        let v = self.get(i, j) + delta;
        self.set(i, j, v);
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.order).map(<[f64]>::to_vec).collect()
    }

    pub(crate) fn into_raw(self) -> (usize, Vec<f64>) {
        (self.order, self.data)
    }
}

/// Laplacian `L = D - A` of a graph; vertex `v` maps to row `v - 1`.
pub fn laplacian(g: &Graph) -> SymmetricMatrix {
    let n = g.order();
    let mut m = SymmetricMatrix::zeros(n).expect("graphs have at least one vertex");
    for (i, j) in g.edges() {
        m.set(i - 1, j - 1, -1.0);
        m.add(i - 1, i - 1, 1.0);
        m.add(j - 1, j - 1, 1.0);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex_laplacian_is_zero() {
        let g = Graph::empty(1).unwrap();
        assert_eq!(laplacian(&g).rows(), vec![vec![0.0]]);
    }

    #[test]
    fn path_and_triangle_laplacians() {
        let p3 = laplacian(&Graph::path(3).unwrap());
        assert_eq!(
            p3.rows(),
            vec![
                vec![1.0, -1.0, 0.0],
                vec![-1.0, 2.0, -1.0],
                vec![0.0, -1.0, 1.0]
            ]
        );
        let c3 = laplacian(&Graph::cycle(3).unwrap());
        assert_eq!(
            c3.rows(),
            vec![
                vec![2.0, -1.0, -1.0],
                vec![-1.0, 2.0, -1.0],
                vec![-1.0, -1.0, 2.0]
            ]
        );
    }

    #[test]
    fn from_rows_rejects_asymmetry() {
        let err = SymmetricMatrix::from_rows(&[[1.0, 2.0], [3.0, 1.0]]).unwrap_err();
        assert_eq!(err, MatrixError::NotSymmetric { i: 0, j: 1 });
        assert!(matches!(
            SymmetricMatrix::from_rows(&[vec![1.0], vec![1.0, 2.0]]),
            Err(MatrixError::Ragged { .. })
        ));
        let empty: [[f64; 0]; 0] = [];
        assert_eq!(
            SymmetricMatrix::from_rows(&empty),
            Err(MatrixError::EmptyMatrix)
        );
    }

    #[test]
    fn set_mirrors_entry() {
        let mut m = SymmetricMatrix::zeros(3).unwrap();
        m.set(0, 2, 5.0);
        assert_eq!(m.get(2, 0), 5.0);
        assert_eq!(m.trace(), 0.0);
    }
}
