//! Graphs built from two mirrored copies of a block joined to a rooted
//! graph, the mirror-edge operation on them, and the starlike trees and
//! equienergetic families derived from that operation.

use std::fmt;
use std::fs;
use std::io;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("0/1 vector has length {got}, expected {expected}")]
    VectorLength { got: usize, expected: usize },
    #[error("root {root} is not a vertex of a {order}-vertex graph")]
    InvalidRoot { root: usize, order: usize },
    #[error("edge ({0}, {1}) is already present")]
    EdgeExists(usize, usize),
    #[error("invalid starlike spec: {0}")]
    Starlike(#[from] StarlikeViolation),
    #[error("graph is not a starlike tree")]
    NotStarlike,
    #[error("need two branches with {k} vertices, found {found}")]
    MissingBranches { k: usize, found: usize },
    #[error("invalid placement: {0}")]
    Placement(String),
    #[error("family needs ell >= 2 and gamma >= 1, got ell = {ell}, gamma = {gamma}")]
    FamilyParameters { ell: usize, gamma: usize },
    #[error("invalid 0/1 vector {0:?}")]
    ParseVector(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The specific constraint a branch list failed.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum StarlikeViolation {
    #[error("need at least 3 branches, got {0}")]
    TooFewBranches(usize),
    #[error("branch {index} has length {len}; all but the last branch must be even and positive")]
    OddInner { index: usize, len: usize },
    #[error("last branch has length {0}; it must be odd")]
    EvenLast(usize),
    #[error("no even length appears on two branches")]
    NoRepeatedBranch,
    #[error("k = {0} must be an even length of at least two branches")]
    BadK(usize),
    #[error("odd branch length {len} must be below n/2 (n = {n})")]
    OddTooLong { len: usize, n: usize },
}

/// A 0/1 vector indexed from 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinaryVector(Vec<bool>);

/// The vector `z` selecting which mirror edges the operation inserts.
pub type CharacteristicVector = BinaryVector;

impl BinaryVector {
    pub fn new(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn zeros(k: usize) -> Self {
        Self(vec![false; k])
    }

    /// Canonical vector `e_i` of length `k` (`1 <= i <= k`).
    pub fn unit(k: usize, i: usize) -> Self {
        assert!((1..=k).contains(&i), "e_{i} out of range for length {k}");
        let mut v = vec![false; k];
        v[i - 1] = true;
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn popcount(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    /// 1-based positions holding a one.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i + 1)
    }
}

impl FromStr for BinaryVector {
    type Err = ConstructionError;

    /// Accepts `"110"` or `"1,1,0"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits: Option<Vec<bool>> = s
            .chars()
            .filter(|c| !matches!(c, ',' | ' '))
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect();
        match bits {
            Some(b) if !b.is_empty() => Ok(Self(b)),
            _ => Err(ConstructionError::ParseVector(s.to_string())),
        }
    }
}

impl fmt::Display for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A graph `G(G*, Ğ, y)` together with the decomposition it was built from.
///
/// The assembled graph uses the canonical labeling: the copies of `G*` take
/// labels `1..=k` and `k+1..=2k`, the root of `Ğ` is `2k+1`, and the other
/// vertices of `Ğ` follow in increasing order of their original labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WStructure {
    gstar: Graph,
    gbreve: Graph,
    root: usize,
    y: BinaryVector,
    assembled: Graph,
}

impl WStructure {
    pub fn gstar(&self) -> &Graph {
        &self.gstar
    }

    pub fn gbreve(&self) -> &Graph {
        &self.gbreve
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn y(&self) -> &BinaryVector {
        &self.y
    }

    pub fn assembled(&self) -> &Graph {
        &self.assembled
    }

    /// Order of `G*`.
    pub fn k(&self) -> usize {
        self.gstar.order()
    }

    pub fn n(&self) -> usize {
        self.assembled.order()
    }
}

/// Assembles `G(G*, Ğ, y)`: two copies of `gstar`, one of `gbreve`, and the
/// root joined to both copies of vertex `i` whenever `y_i = 1`.
pub fn build_w(
    gstar: &Graph,
    gbreve: &Graph,
    root: usize,
    y: &BinaryVector,
) -> Result<WStructure, ConstructionError> {
    let k = gstar.order();
    let m = gbreve.order();
    if y.len() != k {
        return Err(ConstructionError::VectorLength {
            got: y.len(),
            expected: k,
        });
    }
    if root == 0 || root > m {
        return Err(ConstructionError::InvalidRoot { root, order: m });
    }
    let relabel = |v: usize| -> usize {
        if v == root {
            2 * k + 1
        } else if v < root {
            2 * k + 1 + v
        } else {
            2 * k + v
        }
    };
    let root_label = 2 * k + 1;
    let mut edges = Vec::with_capacity(2 * gstar.size() + gbreve.size() + 2 * y.popcount());
    for (i, j) in gstar.edges() {
        edges.push((i, j));
        edges.push((k + i, k + j));
    }
    edges.extend(gbreve.edges().map(|(i, j)| (relabel(i), relabel(j))));
    for i in y.ones() {
        edges.push((i, root_label));
        edges.push((k + i, root_label));
    }
    let assembled = Graph::new(2 * k + m, edges)?;
    Ok(WStructure {
        gstar: gstar.clone(),
        gbreve: gbreve.clone(),
        root,
        y: y.clone(),
        assembled,
    })
}

/// Inserts the edge `{i, k+i}` for every `z_i = 1`.
pub fn apply_ez(w: &WStructure, z: &CharacteristicVector) -> Result<Graph, ConstructionError> {
    let k = w.k();
    if z.len() != k {
        return Err(ConstructionError::VectorLength {
            got: z.len(),
            expected: k,
        });
    }
    if let Some(i) = z.ones().find(|&i| w.assembled.has_edge(i, k + i)) {
        return Err(ConstructionError::EdgeExists(i, k + i));
    }
    Ok(w.assembled.with_edges(z.ones().map(|i| (i, k + i)))?)
}

/// Branch lengths of a starlike tree in the family with one odd branch.
///
/// `branches` is the attachment order; the odd branch is last. `k` is an even
/// length carried by at least two branches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarlikeSpec {
    branches: Vec<usize>,
    k: usize,
    bounded: bool,
}

impl StarlikeSpec {
    /// Validates a branch list. `k` is `a_1` when `a_1 = a_2`, otherwise the
    /// smallest even length that occurs twice.
    pub fn new(branches: Vec<usize>) -> Result<Self, StarlikeViolation> {
        Self::validate(branches, None, true)
    }

    pub fn with_k(branches: Vec<usize>, k: usize) -> Result<Self, StarlikeViolation> {
        Self::validate(branches, Some(k), true)
    }

    /// Same checks except the bound on the odd branch, for probing trees
    /// outside the proven range.
    pub fn unbounded(branches: Vec<usize>) -> Result<Self, StarlikeViolation> {
        Self::validate(branches, None, false)
    }

    fn validate(
        branches: Vec<usize>,
        k: Option<usize>,
        bounded: bool,
    ) -> Result<Self, StarlikeViolation> {
        let h = branches.len();
        if h < 3 {
            return Err(StarlikeViolation::TooFewBranches(h));
        }
        let (odd, evens) = branches.split_last().expect("h >= 3");
        if let Some((index, &len)) = evens
            .iter()
            .enumerate()
            .find(|(_, &a)| a == 0 || a % 2 == 1)
        {
            return Err(StarlikeViolation::OddInner {
                index: index + 1,
                len,
            });
        }
        if odd % 2 == 0 {
            return Err(StarlikeViolation::EvenLast(*odd));
        }
        let repeated = |len: usize| evens.iter().filter(|&&a| a == len).count() >= 2;
        let k = match k {
            Some(k) if k >= 2 && k % 2 == 0 && repeated(k) => k,
            Some(k) => return Err(StarlikeViolation::BadK(k)),
            None if evens[0] == evens[1] => evens[0],
            None => {
                let mut sorted = evens.to_vec();
                sorted.sort_unstable();
                sorted
                    .windows(2)
                    .find(|w| w[0] == w[1])
                    .map(|w| w[0])
                    .ok_or(StarlikeViolation::NoRepeatedBranch)?
            }
        };
        let n = 1 + branches.iter().sum::<usize>();
        if bounded && 2 * odd >= n {
            return Err(StarlikeViolation::OddTooLong {
                len: *odd,
                n,
            });
        }
        Ok(Self {
            branches,
            k,
            bounded,
        })
    }

    pub fn branches(&self) -> &[usize] {
        &self.branches
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        1 + self.branches.iter().sum::<usize>()
    }

    pub fn odd_branch(&self) -> usize {
        *self.branches.last().expect("validated")
    }

    /// Whether the odd branch is shorter than `n/2`; false only for specs
    /// built with [`StarlikeSpec::unbounded`] that exceed it.
    pub fn within_bound(&self) -> bool {
        2 * self.odd_branch() < self.order()
    }

    pub fn is_bounded(&self) -> bool {
        self.bounded
    }

    /// Every even length carried by at least two branches, ascending.
    pub fn admissible_ks(&self) -> Vec<usize> {
        let evens = &self.branches[..self.branches.len() - 1];
        let mut ks: Vec<usize> = evens
            .iter()
            .copied()
            .filter(|&a| evens.iter().filter(|&&b| b == a).count() >= 2)
            .collect();
        ks.sort_unstable();
        ks.dedup();
        ks
    }

    /// All valid specs with at most `max_n` vertices, one per isomorphism
    /// class: even branches ascending, odd branch last.
    pub fn enumerate(max_n: usize) -> Vec<StarlikeSpec> {
        fn partitions(rest: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rest == 0 {
                out.push(cur.clone());
                return;
            }
            let mut part = min;
            while part <= rest {
                cur.push(part);
                partitions(rest - part, part, cur, out);
                cur.pop();
                part += 2;
            }
        }
        let mut out = Vec::new();
        let mut n = 4;
        while n <= max_n {
            let mut odd = 1;
            while 2 * odd < n {
                let mut parts = Vec::new();
                partitions(n - 1 - odd, 2, &mut Vec::new(), &mut parts);
                for mut branches in parts {
                    branches.push(odd);
                    if let Ok(spec) = StarlikeSpec::new(branches) {
                        out.push(spec);
                    }
                }
                odd += 2;
            }
            n += 2;
        }
        out
    }
}

/// Starlike tree with center `1`; branch `i` occupies the next `a_i` labels,
/// starting at the vertex adjacent to the center.
pub fn build_starlike(spec: &StarlikeSpec) -> Graph {
    let mut edges = Vec::with_capacity(spec.order() - 1);
    let mut next = 2;
    for &len in spec.branches() {
        let mut prev = 1;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Graph::new(spec.order(), edges).expect("branch paths form a tree")
}

/// Views a starlike tree as `G(P_k, Ğ, e_k)`.
///
/// The first two branches (by label of their vertex next to the center)
/// with exactly `k` vertices become the two copies of `P_k`, labeled from the
/// leaf inward so that vertex `k` is the one adjacent to the center.
pub fn s_as_w(g: &Graph, k: usize) -> Result<WStructure, ConstructionError> {
    let center = g.starlike().ok_or(ConstructionError::NotStarlike)?.center;
    let branch_vertices = |first: usize| {
        let mut path = vec![first];
        let mut prev = center;
        while let Some(&next) = g.neighbors(*path.last().unwrap()).iter().find(|&&w| w != prev) {
            prev = *path.last().unwrap();
            path.push(next);
        }
        path
    };
    let chosen: Vec<Vec<usize>> = g
        .neighbors(center)
        .iter()
        .map(|&v| branch_vertices(v))
        .filter(|p| p.len() == k)
        .take(2)
        .collect();
    if chosen.len() < 2 {
        return Err(ConstructionError::MissingBranches {
            k,
            found: chosen.len(),
        });
    }
    let mut removed = vec![false; g.order() + 1];
    for v in chosen.iter().flatten() {
        removed[*v] = true;
    }
    let mut new_label = vec![0; g.order() + 1];
    let mut next = 1;
    for v in 1..=g.order() {
        if !removed[v] {
            new_label[v] = next;
            next += 1;
        }
    }
    let gbreve = Graph::new(
        next - 1,
        g.edges()
            .filter(|&(i, j)| !removed[i] && !removed[j])
            .map(|(i, j)| (new_label[i], new_label[j])),
    )?;
    build_w(
        &Graph::path(k)?,
        &gbreve,
        new_label[center],
        &BinaryVector::unit(k, k),
    )
}

/// How the `2(gamma - 1)` vertices beyond the minimal family tree are added.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "policy", content = "lengths", rename_all = "kebab-case")]
pub enum Placement {
    /// Lengthen the odd branch from 1 to `2 gamma - 1`.
    GrowOddBranch,
    /// Attach new even branches with these lengths; they must sum to
    /// `2(gamma - 1)`.
    AddEvenBranches(Vec<usize>),
}

impl Placement {
    /// `gamma - 1` extra copies of `P_2`.
    pub fn even_pairs(gamma: usize) -> Self {
        Placement::AddEvenBranches(vec![2; gamma.saturating_sub(1)])
    }
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Placement::GrowOddBranch => f.write_str("grow-odd-branch"),
            Placement::AddEvenBranches(l) => {
                let parts: Vec<String> = l.iter().map(ToString::to_string).collect();
                write!(f, "add-even-branches[{}]", parts.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMember {
    /// Order of the path block the operation was applied to (`2i`).
    pub k: usize,
    pub graph: Graph,
    pub cycle_length: usize,
}

/// A starlike base tree and the unicyclic graphs `G_1, ..., G_ell` obtained
/// by closing a cycle through each pair of `2i`-vertex branches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub ell: usize,
    pub gamma: usize,
    pub placement: Placement,
    pub spec: StarlikeSpec,
    pub base: Graph,
    pub members: Vec<FamilyMember>,
}

impl Family {
    pub fn n(&self) -> usize {
        self.base.order()
    }

    /// `[G, G_1, ..., G_ell]`.
    pub fn graphs(&self) -> Vec<&Graph> {
        std::iter::once(&self.base)
            .chain(self.members.iter().map(|m| &m.graph))
            .collect()
    }

    pub fn manifest(&self) -> FamilyManifest {
        let mut graphs = vec![ManifestEntry {
            file: "base.edges".into(),
            kind: "tree".into(),
            k: None,
            edges: self.base.size(),
            cycle_length: None,
        }];
        graphs.extend(self.members.iter().enumerate().map(|(i, m)| ManifestEntry {
            file: format!("g{}.edges", i + 1),
            kind: "unicyclic".into(),
            k: Some(m.k),
            edges: m.graph.size(),
            cycle_length: Some(m.cycle_length),
        }));
        FamilyManifest {
            ell: self.ell,
            gamma: self.gamma,
            placement: self.placement.clone(),
            n: self.n(),
            branches: self.spec.branches().to_vec(),
            graphs,
        }
    }

    /// Writes every graph as an edge-list file plus `manifest.json` into `dir`.
    pub fn write_to(&self, dir: &Path) -> io::Result<FamilyManifest> {
        fs::create_dir_all(dir)?;
        let manifest = self.manifest();
        for (entry, g) in manifest.graphs.iter().zip(self.graphs()) {
            fs::write(dir.join(&entry.file), g.to_edge_list())?;
        }
        let json = serde_json::to_string_pretty(&manifest).map_err(io::Error::other)?;
        fs::write(dir.join("manifest.json"), json + "\n")?;
        Ok(manifest)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyManifest {
    pub ell: usize,
    pub gamma: usize,
    pub placement: Placement,
    pub n: usize,
    pub branches: Vec<usize>,
    pub graphs: Vec<ManifestEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub file: String,
    pub kind: String,
    pub k: Option<usize>,
    pub edges: usize,
    pub cycle_length: Option<usize>,
}

/// Base tree on `n = 2 ell^2 + 2 ell + 2 gamma` vertices with two branches of
/// each length `2, 4, ..., 2 ell`, and the `ell` unicyclic graphs obtained by
/// applying `E_{e_1}` to each of its decompositions.
pub fn generate_family(
    ell: usize,
    gamma: usize,
    placement: &Placement,
) -> Result<Family, ConstructionError> {
    if ell < 2 || gamma < 1 {
        return Err(ConstructionError::FamilyParameters { ell, gamma });
    }
    let extra = 2 * (gamma - 1);
    let mut evens: Vec<usize> = (1..=ell).flat_map(|i| [2 * i, 2 * i]).collect();
    let odd = match placement {
        Placement::GrowOddBranch => 1 + extra,
        Placement::AddEvenBranches(lengths) => {
            if let Some(bad) = lengths.iter().find(|&&a| a == 0 || a % 2 == 1) {
                return Err(ConstructionError::Placement(format!(
                    "extra branch length {bad} is not a positive even number"
                )));
            }
            let total: usize = lengths.iter().sum();
            if total != extra {
                return Err(ConstructionError::Placement(format!(
                    "extra branches hold {total} vertices, expected 2(gamma - 1) = {extra}"
                )));
            }
            evens.extend_from_slice(lengths);
            1
        }
    };
    evens.sort_unstable();
    let mut branches = evens;
    branches.push(odd);
    let spec = StarlikeSpec::new(branches).map_err(|e| match e {
        StarlikeViolation::OddTooLong { .. } => ConstructionError::Placement(e.to_string()),
        other => ConstructionError::Starlike(other),
    })?;
    let base = build_starlike(&spec);
    let members = (1..=ell)
        .map(|i| {
            let k = 2 * i;
            let w = s_as_w(&base, k)?;
            let graph = apply_ez(&w, &BinaryVector::unit(k, 1))?;
            let cycle_length = graph.cycle_length().expect("closing a cycle through two branches");
            Ok(FamilyMember {
                k,
                graph,
                cycle_length,
            })
        })
        .collect::<Result<Vec<_>, ConstructionError>>()?;
    Ok(Family {
        ell,
        gamma,
        placement: placement.clone(),
        spec,
        base,
        members,
    })
}
