//! Laplacian spectra and Laplacian energy of graphs built by mirroring
//! edges between two copies of a rooted block, with exact eigenvalue
//! location on trees and executable checks of the resulting identities.

pub mod constructions;
pub mod graph;
pub mod matrix;
pub mod random;
pub mod spectra;
pub mod tree_count;
pub mod verify;
