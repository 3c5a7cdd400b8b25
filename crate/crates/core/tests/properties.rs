use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use equilap::constructions::{
    apply_ez, build_starlike, build_w, s_as_w, BinaryVector, StarlikeSpec,
};
use equilap::graph::{Graph, GraphClass};
use equilap::matrix::laplacian;
use equilap::spectra::{
    energy_from_spectrum, energy_sigma_form, laplacian_spectrum, sigma_dense, Spectrum,
};
use equilap::tree_count::{jt_locate, sigma_tree, RootedTree};
use equilap::verify::check_spectral_replacement;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> =
            (1..=n).flat_map(|i| ((i + 1)..=n).map(move |j| (i, j))).collect();
        let m = pairs.len();
        proptest::collection::vec(any::<bool>(), m).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
            Graph::new(n, edges).unwrap()
        })
    })
}

fn tree(max_n: usize) -> impl Strategy<Value = Graph> {
    // vertex v > 1 hangs off a random earlier vertex
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<prop::sample::Index>(), n.saturating_sub(1)).prop_map(
            move |picks| {
                let edges = picks.iter().enumerate().map(|(i, p)| (p.index(i + 1) + 1, i + 2));
                Graph::new(n, edges).unwrap()
            },
        )
    })
}

fn starlike_spec() -> impl Strategy<Value = StarlikeSpec> {
    (
        1usize..=3,
        proptest::collection::vec(1usize..=3, 0..3),
        0usize..=2,
    )
        .prop_filter_map("odd branch too long", |(k2, extra, odd)| {
            let mut branches = vec![2 * k2, 2 * k2];
            branches.extend(extra.iter().map(|e| 2 * e));
            branches.sort_unstable();
            branches.push(2 * odd + 1);
            StarlikeSpec::new(branches).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spectrum_sum_and_kernel(g in graph(12)) {
        let s = laplacian_spectrum(&g).unwrap();
        prop_assert!((s.sum() - 2.0 * g.size() as f64).abs() < 1e-9);
        prop_assert!((s.sum() - laplacian(&g).trace()).abs() < 1e-9);
        prop_assert_eq!(s.multiplicity(0.0), g.component_count());
        prop_assert!(s.values().iter().all(|&v| v > -1e-9));
    }

    #[test]
    fn energy_forms_agree(g in graph(12)) {
        let s = laplacian_spectrum(&g).unwrap();
        let d = 2.0 * g.size() as f64 / g.order() as f64;
        prop_assert!((energy_from_spectrum(&s, d) - energy_sigma_form(&s, d)).abs() < 1e-9);
    }

    #[test]
    fn mirror_edges_add_popcount(
        gstar in graph(5),
        gbreve in graph(6),
        seed in any::<u64>(),
    ) {
        let k = gstar.order();
        let ybits: Vec<bool> = (0..k).map(|i| (seed >> i) & 1 == 1).collect();
        let zbits: Vec<bool> = (0..k).map(|i| (seed >> (i + 8)) & 1 == 1).collect();
        let root = (seed as usize % gbreve.order()) + 1;
        let w = build_w(&gstar, &gbreve, root, &BinaryVector::new(ybits)).unwrap();
        let z = BinaryVector::new(zbits);
        let gz = apply_ez(&w, &z).unwrap();
        prop_assert_eq!(gz.size() - w.assembled().size(), z.popcount());
        prop_assert!(check_spectral_replacement(&w, &z).passed());
    }

    #[test]
    fn starlike_round_trip(spec in starlike_spec()) {
        let g = build_starlike(&spec);
        prop_assert_eq!(g.classify(), GraphClass::Tree);
        let star = g.starlike().unwrap();
        prop_assert_eq!(&star.branches, &{
            let mut b = spec.branches().to_vec();
            b.sort_unstable();
            b
        });
        for k in spec.admissible_ks() {
            let w = s_as_w(&g, k).unwrap();
            let mut a = w.assembled().degree_sequence();
            let mut b = g.degree_sequence();
            a.sort_unstable();
            b.sort_unstable();
            prop_assert_eq!(a, b);
            let sa = laplacian_spectrum(w.assembled()).unwrap();
            let sb = laplacian_spectrum(&g).unwrap();
            prop_assert!(sa.max_deviation(&sb).unwrap() < 1e-9);
        }
    }

    #[test]
    fn sigma_is_half_the_order(spec in starlike_spec()) {
        let g = build_starlike(&spec);
        let n = g.order();
        prop_assert_eq!(2 * sigma_tree(&g).unwrap(), n);
        prop_assert_eq!(2 * sigma_dense(&g).unwrap(), n);
        let k = spec.k();
        let g1 = apply_ez(&s_as_w(&g, k).unwrap(), &BinaryVector::unit(k, 1)).unwrap();
        prop_assert_eq!(2 * sigma_dense(&g1).unwrap(), n);
    }

    #[test]
    fn tree_counts_ignore_root(t in tree(25), p in 0i64..120, q in 1i64..7, r in any::<prop::sample::Index>()) {
        let alpha = BigRational::new(BigInt::from(p), BigInt::from(q));
        let n = t.order();
        let a = jt_locate(&RootedTree::new(t.clone(), 1).unwrap(), &alpha);
        let b = jt_locate(&RootedTree::new(t.clone(), r.index(n) + 1).unwrap(), &alpha);
        prop_assert_eq!((a.above, a.equal, a.below), (b.above, b.equal, b.below));
        prop_assert_eq!(a.above + a.equal + a.below, n);
    }

    #[test]
    fn multiset_union_then_remove(xs in proptest::collection::vec(0.0f64..10.0, 0..12), ys in proptest::collection::vec(0.0f64..10.0, 0..12)) {
        let a = Spectrum::new(xs);
        let b = Spectrum::new(ys);
        let back = a.union(&b).remove(&b).unwrap();
        prop_assert!(back.max_deviation(&a).unwrap_or(0.0) < 1e-12);
    }
}
