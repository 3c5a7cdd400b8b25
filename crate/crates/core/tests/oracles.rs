//! Exact characteristic-polynomial oracles.
//!
//! Integer matrices get their characteristic polynomial by Faddeev-LeVerrier
//! over `BigInt`. Laplacian polynomials are real-rooted, so Descartes' rule
//! applied to `p(x + alpha)` counts the eigenvalues above `alpha` exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

use equilap::constructions::{apply_ez, generate_family, Placement};
use equilap::graph::Graph;
use equilap::matrix::{laplacian, SymmetricMatrix};
use equilap::random::{random_graph, random_rational, random_tree, random_wstructure, seeded};
use equilap::spectra::{
    block_matrix, cospectral, dk_fk, laplacian_spectrum, perturbed_block, Spectrum,
};
use equilap::tree_count::{jt_locate, RootedTree};

type Poly = Vec<BigInt>;

fn to_int(m: &SymmetricMatrix) -> Vec<Vec<BigInt>> {
    m.rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| {
                    assert_eq!(x.fract(), 0.0);
                    BigInt::from(x as i64)
                })
                .collect()
        })
        .collect()
}

/// Coefficients of `det(xI - A)`, lowest degree first.
fn charpoly(a: &[Vec<BigInt>]) -> Poly {
    let n = a.len();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::from(1);
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigInt::zero();
                for l in 0..n {
                    s += &a[i][l] * &m[l][j];
                }
                next[i][j] = s;
            }
            next[i][i] += &coeffs[n - k + 1];
        }
        m = next;
        let mut tr = BigInt::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &a[i][l] * &m[l][i];
            }
        }
        coeffs[n - k] = -tr / BigInt::from(k);
    }
    coeffs
}

fn mul(p: &Poly, q: &Poly) -> Poly {
    let mut out = vec![BigInt::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

fn lap_poly(g: &Graph) -> Poly {
    charpoly(&to_int(&laplacian(g)))
}

/// `(above, equal, below)` for the roots of a real-rooted `p` against `alpha`.
fn root_counts(p: &Poly, alpha: &BigRational) -> (usize, usize, usize) {
    // Taylor shift by alpha
    let mut c: Vec<BigRational> = p.iter().cloned().map(BigRational::from_integer).collect();
    let n = c.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = &c[j + 1] * alpha;
            c[j] += t;
        }
    }
    let equal = c.iter().take_while(|x| x.is_zero()).count();
    let signs: Vec<bool> = c.iter().filter(|x| !x.is_zero()).map(|x| x.is_positive()).collect();
    let above = signs.windows(2).filter(|w| w[0] != w[1]).count();
    (above, equal, n - 1 - above - equal)
}

#[test]
fn faddeev_leverrier_small_cases() {
    // P_3: x^3 - 4x^2 + 3x
    let p = lap_poly(&Graph::path(3).unwrap());
    assert_eq!(p, [0, 3, -4, 1].map(BigInt::from).to_vec());
    let alpha = BigRational::from_integer(BigInt::from(1));
    assert_eq!(root_counts(&p, &alpha), (1, 1, 1));
}

#[test]
fn replacement_identity_holds_exactly() {
    let mut rng = seeded(101);
    for _ in 0..150 {
        let (w, z) = random_wstructure(&mut rng, 5, 7);
        let h = block_matrix(w.gstar(), w.y().bits()).unwrap();
        let hz = perturbed_block(&h, z.bits()).unwrap();
        let gz = apply_ez(&w, &z).unwrap();
        let lhs = mul(&lap_poly(&gz), &charpoly(&to_int(&h)));
        let rhs = mul(&lap_poly(w.assembled()), &charpoly(&to_int(&hz)));
        assert_eq!(lhs, rhs, "y = {}, z = {}", w.y(), z);
    }
}

#[test]
fn small_families_are_noncospectral_exactly() {
    for gamma in 1..=4 {
        let mut placements = vec![Placement::even_pairs(gamma)];
        if gamma > 1 {
            placements.push(Placement::GrowOddBranch);
        }
        for placement in placements {
            let fam = generate_family(2, gamma, &placement).unwrap();
            assert!(fam.n() <= 20);
            let polys: Vec<Poly> = fam.members.iter().map(|m| lap_poly(&m.graph)).collect();
            let spectra: Vec<Spectrum> = fam
                .members
                .iter()
                .map(|m| laplacian_spectrum(&m.graph).unwrap())
                .collect();
            for i in 0..polys.len() {
                for j in (i + 1)..polys.len() {
                    assert_ne!(polys[i], polys[j], "gamma {gamma} {placement}");
                    assert!(!cospectral(&spectra[i], &spectra[j]));
                }
            }
        }
    }
}

#[test]
fn cospectral_agrees_with_exact_polynomials() {
    let mut rng = seeded(5);
    for _ in 0..100 {
        let n = rng.gen_range(2..=8);
        let a = random_graph(&mut rng, n, 0.4);
        let b = random_graph(&mut rng, n, 0.4);
        let exact = lap_poly(&a) == lap_poly(&b);
        let numeric = cospectral(&laplacian_spectrum(&a).unwrap(), &laplacian_spectrum(&b).unwrap());
        assert_eq!(exact, numeric);
        // a relabeled copy is always cospectral
        let relabeled = Graph::new(n, a.edges().map(|(i, j)| (n + 1 - i, n + 1 - j))).unwrap();
        assert!(cospectral(&laplacian_spectrum(&a).unwrap(), &laplacian_spectrum(&relabeled).unwrap()));
    }
}

#[test]
fn closed_form_roots_expand_to_exact_polynomial() {
    for k in 1..=12 {
        let path = Graph::path(k).unwrap();
        let mut y = vec![false; k];
        y[k - 1] = true;
        let h = block_matrix(&path, &y).unwrap();
        let mut z = vec![false; k];
        z[0] = true;
        let hz = perturbed_block(&h, &z).unwrap();
        let (d, f) = dk_fk(k);
        for (roots, m) in [(d, h), (f, hz)] {
            let exact = charpoly(&to_int(&m));
            // expand prod (x - r) in floating point
            let mut prod = vec![1.0_f64];
            for &r in roots.values() {
                let mut next = vec![0.0; prod.len() + 1];
                for (i, c) in prod.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= r * c;
                }
                prod = next;
            }
            for (e, p) in exact.iter().zip(&prod) {
                let e = e.to_f64().unwrap();
                assert!((e - p).abs() <= 1e-9 * e.abs().max(1.0), "k = {k}: {e} vs {p}");
            }
        }
    }
}

#[test]
fn tree_counts_match_descartes() {
    let mut rng = seeded(77);
    for _ in 0..200 {
        let n = rng.gen_range(1..=14);
        let tree = random_tree(&mut rng, n);
        // integer shifts hit eigenvalues (0, 1, n, ...) often
        let alpha = if rng.gen_bool(0.3) {
            BigRational::from_integer(BigInt::from(rng.gen_range(0..=4)))
        } else {
            random_rational(&mut rng, n)
        };
        let root = rng.gen_range(1..=n);
        let r = jt_locate(&RootedTree::new(tree.clone(), root).unwrap(), &alpha);
        assert_eq!(
            (r.above, r.equal, r.below),
            root_counts(&lap_poly(&tree), &alpha),
            "tree {:?}, alpha {alpha}",
            tree.edges().collect::<Vec<_>>()
        );
    }
}
