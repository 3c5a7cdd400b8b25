//! Locating Laplacian eigenvalues of a tree relative to a shift.
//!
//! A bottom-up diagonalization of `L - alpha I` over a rooted tree: every
//! vertex starts at `d(v) - alpha`, and each vertex absorbs `-1/a(c)` from
//! its children. The signs of the final values count the eigenvalues above,
//! at and below `alpha`. Everything runs in exact rational arithmetic, so the
//! zero test is exact.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::json;
use thiserror::Error;

use crate::graph::{Graph, GraphClass};
use crate::spectra::{sigma_dense, SpectraError};

#[derive(Debug, Error, PartialEq)]
pub enum TreeCountError {
    #[error("graph is not a tree (classified as {0:?})")]
    NotATree(GraphClass),
    #[error("root {root} is not a vertex of a {order}-vertex tree")]
    InvalidRoot { root: usize, order: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

/// A tree with a chosen root and a processing order in which every vertex
/// comes after all of its children.
#[derive(Debug, Clone)]
pub struct RootedTree {
    tree: Graph,
    root: usize,
    parent: Vec<Option<usize>>,
    order: Vec<usize>,
}

impl RootedTree {
    pub fn new(tree: Graph, root: usize) -> Result<Self, TreeCountError> {
        let class = tree.classify();
        if class != GraphClass::Tree {
            return Err(TreeCountError::NotATree(class));
        }
        let n = tree.order();
        if root == 0 || root > n {
            return Err(TreeCountError::InvalidRoot { root, order: n });
        }
        // preorder by explicit stack, reversed at the end to get children first
        let mut parent = vec![None; n + 1];
        let mut preorder = Vec::with_capacity(n);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            preorder.push(v);
            for &w in tree.neighbors(v).iter().rev() {
                if Some(w) != parent[v] {
                    parent[w] = Some(v);
                    stack.push(w);
                }
            }
        }
        preorder.reverse();
        Ok(Self {
            tree,
            root,
            parent,
            order: preorder,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.tree
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// Vertices in processing order, ending with the root.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Children of `v`, ascending.
    pub fn children(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.tree
            .neighbors(v)
            .iter()
            .copied()
            .filter(move |&w| self.parent[v] != Some(w))
    }
}

/// Final diagonal values and the sign counts they imply.
#[derive(Debug, Clone, PartialEq)]
pub struct JTResult {
    /// `final_values[v - 1]` is `a(v)`.
    pub final_values: Vec<BigRational>,
    pub above: usize,
    pub equal: usize,
    pub below: usize,
    /// Edges `(child, parent)` removed after a zero child was absorbed.
    pub cut_edges: BTreeSet<(usize, usize)>,
}

impl JTResult {
    pub fn value(&self, v: usize) -> &BigRational {
        &self.final_values[v - 1]
    }

    pub fn to_json(&self, alpha: &BigRational, with_values: bool) -> serde_json::Value {
        let mut out = json!({
            "alpha": alpha.to_string(),
            "above": self.above,
            "equal": self.equal,
            "below": self.below,
            "cut_edges": self.cut_edges.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
        });
        if with_values {
            out["values"] = self
                .final_values
                .iter()
                .enumerate()
                .map(|(i, v)| json!({ "vertex": i + 1, "value": v.to_string() }))
                .collect();
        }
        out
    }
}

/// Counts the Laplacian eigenvalues of `t` above, equal to and below
/// `alpha`.
///
/// When several children of a vertex end at zero, the lowest-labeled one is
/// the one reset to `2`.
pub fn jt_locate(t: &RootedTree, alpha: &BigRational) -> JTResult {
    let n = t.tree.order();
    let mut a: Vec<BigRational> = (1..=n)
        .map(|v| BigRational::from_integer(BigInt::from(t.tree.degree(v))) - alpha)
        .collect();
    let mut cut = vec![false; n + 1];
    let mut cut_edges = BTreeSet::new();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let two = BigRational::from_integer(BigInt::from(2));

    for &v in &t.order {
        let mut children = t.children(v).filter(|&c| !cut[c]).peekable();
        if children.peek().is_none() {
            continue;
        }
        let children: Vec<usize> = children.collect();
        if let Some(&zero_child) = children.iter().find(|&&c| a[c - 1].is_zero()) {
            a[zero_child - 1] = two.clone();
            a[v - 1] = -half.clone();
            if let Some(p) = t.parent[v] {
                cut[v] = true;
                cut_edges.insert((v, p));
            }
        } else {
            let mut sum = BigRational::zero();
            for &c in &children {
                sum += a[c - 1].recip();
            }
            a[v - 1] -= sum;
        }
    }

    let (mut above, mut equal, mut below) = (0, 0, 0);
    for x in &a {
        if x.is_zero() {
            equal += 1;
        } else if x.is_positive() {
            above += 1;
        } else {
            below += 1;
        }
    }
    JTResult {
        final_values: a,
        above,
        equal,
        below,
        cut_edges,
    }
}

pub fn to_big(r: num_rational::Rational64) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Number of Laplacian eigenvalues of a tree that are at least its average
/// degree `2 - 2/n`, computed exactly.
pub fn sigma_tree(g: &Graph) -> Result<usize, TreeCountError> {
    let t = RootedTree::new(g.clone(), 1)?;
    let r = jt_locate(&t, &to_big(g.average_degree()));
    Ok(r.above + r.equal)
}

/// Sigma of a connected graph: exact for trees, dense spectrum otherwise
/// (an eigenvalue counts when `mu >= d - 1e-9`).
pub fn sigma_graph(g: &Graph) -> Result<usize, TreeCountError> {
    if !g.is_connected() {
        return Err(TreeCountError::Disconnected);
    }
    match g.classify() {
        GraphClass::Tree => sigma_tree(g),
        _ => Ok(sigma_dense(g)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_starlike, StarlikeSpec};

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn counts(g: &Graph, root: usize, alpha: BigRational) -> (usize, usize, usize) {
        let r = jt_locate(&RootedTree::new(g.clone(), root).unwrap(), &alpha);
        (r.above, r.equal, r.below)
    }

    #[test]
    fn p2_at_zero() {
        let g = Graph::path(2).unwrap();
        for root in [1, 2] {
            let r = jt_locate(&RootedTree::new(g.clone(), root).unwrap(), &rat(0, 1));
            assert_eq!((r.above, r.equal, r.below), (1, 1, 0));
            let mut vals: Vec<String> = r.final_values.iter().map(ToString::to_string).collect();
            vals.sort();
            assert_eq!(vals, vec!["0", "1"]);
        }
    }

    #[test]
    fn p4_at_one() {
        // spectrum {0, 2 - sqrt 2, 2, 2 + sqrt 2}
        assert_eq!(counts(&Graph::path(4).unwrap(), 1, rat(1, 1)), (2, 0, 2));
        assert_eq!(counts(&Graph::path(4).unwrap(), 1, rat(2, 1)), (1, 1, 2));
    }

    #[test]
    fn zero_child_branch_cuts_edge() {
        // P_3 rooted at an end, alpha = 1: leaf value 0 triggers the reset
        let t = RootedTree::new(Graph::path(3).unwrap(), 1).unwrap();
        let r = jt_locate(&t, &rat(1, 1));
        assert_eq!(r.cut_edges.iter().copied().collect::<Vec<_>>(), vec![(2, 1)]);
        assert_eq!(r.value(3), &rat(2, 1));
        assert_eq!(r.value(2), &rat(-1, 2));
        // spectrum {3, 1, 0}
        assert_eq!((r.above, r.equal, r.below), (1, 1, 1));
    }

    #[test]
    fn lowest_zero_child_is_chosen() {
        // star K_{1,3} at alpha = 1: all three leaves hit zero
        let t = RootedTree::new(Graph::star(3).unwrap(), 1).unwrap();
        let r = jt_locate(&t, &rat(1, 1));
        assert_eq!(r.value(2), &rat(2, 1));
        assert_eq!(r.value(3), &rat(0, 1));
        assert_eq!(r.value(4), &rat(0, 1));
        assert!(r.cut_edges.is_empty());
        // spectrum {4, 1, 1, 0}
        assert_eq!((r.above, r.equal, r.below), (1, 2, 1));
    }

    #[test]
    fn single_vertex() {
        assert_eq!(counts(&Graph::empty(1).unwrap(), 1, rat(0, 1)), (0, 1, 0));
        assert_eq!(counts(&Graph::empty(1).unwrap(), 1, rat(-1, 3)), (1, 0, 0));
    }

    #[test]
    fn starlike_at_two_reaches_half() {
        let spec = StarlikeSpec::new(vec![2, 2, 4, 4, 6, 6, 8, 8, 2, 1]).unwrap();
        let g = build_starlike(&spec);
        let (above, equal, _) = counts(&g, 1, rat(2, 1));
        assert_eq!(above + equal, 22);
        assert_eq!(sigma_tree(&g).unwrap(), 22);
    }

    #[test]
    fn sigma_small_cases() {
        assert_eq!(sigma_tree(&Graph::path(2).unwrap()).unwrap(), 1);
        assert_eq!(sigma_graph(&Graph::path(2).unwrap()).unwrap(), 1);
        assert_eq!(sigma_graph(&Graph::cycle(5).unwrap()).unwrap(), 2);
        assert!(matches!(
            sigma_tree(&Graph::cycle(5).unwrap()),
            Err(TreeCountError::NotATree(GraphClass::Unicyclic))
        ));
        assert_eq!(
            sigma_graph(&Graph::new(4, [(1, 2), (3, 4)]).unwrap()),
            Err(TreeCountError::Disconnected)
        );
    }

    #[test]
    fn processing_order_is_bottom_up() {
        let g = Graph::new(6, [(1, 2), (1, 3), (2, 4), (2, 5), (3, 6)]).unwrap();
        let t = RootedTree::new(g, 2).unwrap();
        let pos = |v: usize| t.order().iter().position(|&w| w == v).unwrap();
        for v in 1..=6 {
            if let Some(p) = t.parent(v) {
                assert!(pos(v) < pos(p));
            }
        }
        assert_eq!(*t.order().last().unwrap(), 2);
        assert!(matches!(
            RootedTree::new(Graph::path(3).unwrap(), 4),
            Err(TreeCountError::InvalidRoot { .. })
        ));
    }

    #[test]
    fn report_json() {
        let t = RootedTree::new(Graph::path(2).unwrap(), 1).unwrap();
        let r = jt_locate(&t, &rat(0, 1));
        let j = r.to_json(&rat(0, 1), true);
        assert_eq!(j["above"], 1);
        assert_eq!(j["values"][0]["value"], "0");
        assert_eq!(j["values"][1]["value"], "1");
    }
}
