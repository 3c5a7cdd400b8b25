//! Seeded random instances for the property sweeps.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::{build_w, BinaryVector, CharacteristicVector, WStructure};
use crate::graph::Graph;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi graph: every pair is an edge with probability `p`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, edges).expect("pairs are distinct and in range")
}

/// Uniform labeled tree decoded from a random Prüfer sequence.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Graph {
    if n <= 2 {
        return Graph::path(n).expect("n >= 1");
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(1..=n)).collect();
    let mut degree = vec![1usize; n + 1];
    for &c in &code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut leaves: std::collections::BTreeSet<usize> =
        (1..=n).filter(|&v| degree[v] == 1).collect();
    for &c in &code {
        let leaf = leaves.pop_first().expect("a Prüfer step always has a leaf");
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.insert(c);
        }
    }
    let last: Vec<usize> = leaves.into_iter().collect();
    edges.push((last[0], last[1]));
    Graph::new(n, edges).expect("Prüfer decoding yields a tree")
}

fn random_bits<R: Rng>(rng: &mut R, k: usize) -> BinaryVector {
    BinaryVector::new((0..k).map(|_| rng.gen_bool(0.5)).collect())
}

/// Random `G(G*, Ğ, y)` with `|G*| <= max_k`, `|Ğ| <= max_breve`, plus a
/// random characteristic vector.
pub fn random_wstructure<R: Rng>(
    rng: &mut R,
    max_k: usize,
    max_breve: usize,
) -> (WStructure, CharacteristicVector) {
    let k = rng.gen_range(1..=max_k);
    let m = rng.gen_range(1..=max_breve);
    let p_star = rng.gen_range(0.2..0.8);
    let gstar = random_graph(rng, k, p_star);
    let p_breve = rng.gen_range(0.2..0.8);
    let gbreve = random_graph(rng, m, p_breve);
    let root = rng.gen_range(1..=m);
    let y = random_bits(rng, k);
    let z = random_bits(rng, k);
    let w = build_w(&gstar, &gbreve, root, &y).expect("dimensions agree");
    (w, z)
}

/// Random rational `p/q` in `[0, max]` with `q <= 12`.
pub fn random_rational<R: Rng>(rng: &mut R, max: usize) -> BigRational {
    let q: i64 = *[1, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12]
        .choose(rng)
        .expect("nonempty");
    let p = rng.gen_range(0..=max as i64 * q);
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphClass;

    #[test]
    fn trees_are_trees() {
        let mut rng = seeded(3);
        for n in 1..60 {
            assert_eq!(random_tree(&mut rng, n).classify(), GraphClass::Tree);
        }
    }

    #[test]
    fn deterministic_for_seed() {
        let a = random_graph(&mut seeded(11), 20, 0.3);
        let b = random_graph(&mut seeded(11), 20, 0.3);
        assert_eq!(a, b);
        let (w1, z1) = random_wstructure(&mut seeded(5), 6, 10);
        let (w2, z2) = random_wstructure(&mut seeded(5), 6, 10);
        assert_eq!((w1, z1), (w2, z2));
    }
}
