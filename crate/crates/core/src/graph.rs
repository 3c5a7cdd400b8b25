//! Labeled simple undirected graphs.
//!
//! Vertices are numbered `1..=n`. Edges are kept as normalized `(min, max)`
//! pairs in a sorted set so that equality, hashing and every text export are
//! deterministic.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    NoVertices,
    #[error("edge ({0}, {1}) has an endpoint outside 1..={2}")]
    OutOfRange(usize, usize, usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge ({0}, {1})")]
    Duplicate(usize, usize),
    #[error("{0} needs at least {1} vertices")]
    TooSmall(&'static str, usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphClass {
    Tree,
    Unicyclic,
    Forest,
    Other,
}

/// Center and branch lengths of a starlike tree.
///
/// `branches` lists the number of vertices on each path hanging off the
/// center, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Starlike {
    pub center: usize,
    pub branches: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut g = Graph {
            n,
            edges: BTreeSet::new(),
            adj: vec![Vec::new(); n],
        };
        for (i, j) in edges {
            g.insert(i, j)?;
        }
        Ok(g)
    }

    fn insert(&mut self, i: usize, j: usize) -> Result<(), GraphError> {
        if i == 0 || j == 0 || i > self.n || j > self.n {
            return Err(GraphError::OutOfRange(i, j, self.n));
        }
        if i == j {
            return Err(GraphError::Loop(i));
        }
        let e = (i.min(j), i.max(j));
        if !self.edges.insert(e) {
            return Err(GraphError::Duplicate(e.0, e.1));
        }
        for (a, b) in [(i, j), (j, i)] {
            let list = &mut self.adj[a - 1];
            let pos = list.binary_search(&b).unwrap_err();
            list.insert(pos, b);
        }
        Ok(())
    }

    pub fn empty(n: usize) -> Result<Self, GraphError> {
        Self::new(n, [])
    }

    /// Path `P_k` labeled `1 - 2 - ... - k`.
    pub fn path(k: usize) -> Result<Self, GraphError> {
        Self::new(k, (1..k).map(|i| (i, i + 1)))
    }

    /// Cycle `C_k` labeled `1 - 2 - ... - k - 1`.
    pub fn cycle(k: usize) -> Result<Self, GraphError> {
        if k < 3 {
            return Err(GraphError::TooSmall("cycle", 3));
        }
        Self::new(k, (1..k).map(|i| (i, i + 1)).chain([(1, k)]))
    }

    /// Star `K_{1,leaves}` with center 1.
    pub fn star(leaves: usize) -> Result<Self, GraphError> {
        Self::new(leaves + 1, (2..=leaves + 1).map(|v| (1, v)))
    }

    /// Copy of `self` with extra edges; fails if any of them already exists.
    pub fn with_edges<I>(&self, extra: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = self.clone();
        for (i, j) in extra {
            g.insert(i, j)?;
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].len()
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v - 1]
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Average degree `2e / n` in lowest terms.
    pub fn average_degree(&self) -> Rational64 {
        Rational64::new(2 * self.size() as i64, self.n as i64)
    }

    /// Connected components, each as a sorted vertex list; ordered by their
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 1..=self.n {
            if seen[start - 1] {
                continue;
            }
            seen[start - 1] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in self.neighbors(v) {
                    if !seen[w - 1] {
                        seen[w - 1] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    pub fn classify(&self) -> GraphClass {
        let c = self.component_count();
        let (n, e) = (self.n, self.size());
        if c == 1 && e + 1 == n {
            GraphClass::Tree
        } else if c == 1 && e == n {
            GraphClass::Unicyclic
        } else if e + c == n {
            GraphClass::Forest
        } else {
            GraphClass::Other
        }
    }

    /// Center and branch lengths when `self` is a tree with exactly one
    /// vertex of degree at least three.
    pub fn starlike(&self) -> Option<Starlike> {
        if self.classify() != GraphClass::Tree {
            return None;
        }
        let mut hubs = (1..=self.n).filter(|&v| self.degree(v) >= 3);
        let center = hubs.next()?;
        if hubs.next().is_some() {
            return None;
        }
        let mut branches: Vec<usize> = self
            .neighbors(center)
            .iter()
            .map(|&first| {
                let (mut prev, mut cur, mut len) = (center, first, 1);
                while let Some(&next) = self.neighbors(cur).iter().find(|&&w| w != prev) {
                    prev = cur;
                    cur = next;
                    len += 1;
                }
                len
            })
            .collect();
        branches.sort_unstable();
        Some(Starlike { center, branches })
    }

    /// Length of the unique cycle of a unicyclic graph.
    pub fn cycle_length(&self) -> Option<usize> {
        if self.classify() != GraphClass::Unicyclic {
            return None;
        }
        let mut deg: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (1..=self.n).filter(|&v| deg[v - 1] == 1).collect();
        let mut removed = 0;
        while let Some(v) = queue.pop_front() {
            removed += 1;
            deg[v - 1] = 0;
            for &w in self.neighbors(v) {
                if deg[w - 1] > 0 {
                    deg[w - 1] -= 1;
                    if deg[w - 1] == 1 {
                        queue.push_back(w);
                    }
                }
            }
        }
        Some(self.n - removed)
    }

    /// Edge-list text: a line holding `n`, then one `i j` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (i, j) in self.edges() {
            let _ = writeln!(s, "{i} {j}");
        }
        s
    }

    /// Parses the edge-list format. Blank lines and lines starting with `#`
    /// are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(GraphError::Parse {
            line: 1,
            msg: "missing vertex-count header".into(),
        })?;
        let n: usize = header.parse().map_err(|_| GraphError::Parse {
            line: hline,
            msg: format!("expected vertex count, found {header:?}"),
        })?;
        if n == 0 {
            return Err(GraphError::Parse {
                line: hline,
                msg: "vertex count must be positive".into(),
            });
        }
        let mut g = Graph::empty(n)?;
        for (line, l) in lines {
            let parts: Vec<&str> = l.split_whitespace().collect();
            let parsed = match parts.as_slice() {
                [a, b] => a.parse::<usize>().ok().zip(b.parse::<usize>().ok()),
                _ => None,
            };
            let (i, j) = parsed.ok_or_else(|| GraphError::Parse {
                line,
                msg: format!("expected two vertex indices, found {l:?}"),
            })?;
            g.insert(i, j).map_err(|e| GraphError::Parse {
                line,
                msg: e.to_string(),
            })?;
        }
        Ok(g)
    }

    /// Graphviz rendering.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph {name} {{\n");
        for v in 1..=self.n {
            let _ = writeln!(s, "  {v};");
        }
        for (i, j) in self.edges() {
            let _ = writeln!(s, "  {i} -- {j};");
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::new(3, [(1, 4)]), Err(GraphError::OutOfRange(1, 4, 3)));
        assert_eq!(Graph::new(3, [(0, 1)]), Err(GraphError::OutOfRange(0, 1, 3)));
        assert_eq!(Graph::new(3, [(2, 2)]), Err(GraphError::Loop(2)));
        assert_eq!(
            Graph::new(3, [(1, 2), (2, 1)]),
            Err(GraphError::Duplicate(1, 2))
        );
        assert_eq!(Graph::empty(0), Err(GraphError::NoVertices));
    }

    #[test]
    fn average_degree_is_exact() {
        assert_eq!(Graph::path(2).unwrap().average_degree(), Rational64::from(1));
        assert_eq!(
            Graph::path(7).unwrap().average_degree(),
            Rational64::new(12, 7)
        );
        assert_eq!(Graph::cycle(9).unwrap().average_degree(), Rational64::from(2));
    }

    #[test]
    fn classification() {
        assert_eq!(Graph::path(4).unwrap().classify(), GraphClass::Tree);
        assert_eq!(Graph::cycle(5).unwrap().classify(), GraphClass::Unicyclic);
        let two_p2 = Graph::new(4, [(1, 2), (3, 4)]).unwrap();
        assert_eq!(two_p2.classify(), GraphClass::Forest);
        let two_c3 = Graph::new(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]).unwrap();
        assert_eq!(two_c3.classify(), GraphClass::Other);
        assert_eq!(Graph::empty(1).unwrap().classify(), GraphClass::Tree);
    }

    #[test]
    fn starlike_detection() {
        let s = Graph::star(3).unwrap().starlike().unwrap();
        assert_eq!(s, Starlike { center: 1, branches: vec![1, 1, 1] });
        assert_eq!(Graph::path(5).unwrap().starlike(), None);
        // two hubs
        let double = Graph::new(6, [(1, 2), (1, 3), (1, 4), (4, 5), (4, 6)]).unwrap();
        assert_eq!(double.starlike(), None);
        // 5-vertex spider with branches 1, 1, 2 centered at 3
        let spider = Graph::new(5, [(3, 1), (3, 2), (3, 4), (4, 5)]).unwrap();
        assert_eq!(
            spider.starlike(),
            Some(Starlike { center: 3, branches: vec![1, 1, 2] })
        );
    }

    #[test]
    fn unicyclic_cycle_length() {
        let g = Graph::new(6, [(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 6)]).unwrap();
        assert_eq!(g.cycle_length(), Some(3));
        assert_eq!(Graph::cycle(7).unwrap().cycle_length(), Some(7));
        assert_eq!(Graph::path(3).unwrap().cycle_length(), None);
    }

    #[test]
    fn edge_list_round_trip_and_diagnostics() {
        let g = Graph::cycle(4).unwrap();
        let text = g.to_edge_list();
        assert_eq!(text, "4\n1 2\n1 4\n2 3\n3 4\n");
        assert_eq!(Graph::parse_edge_list(&text).unwrap(), g);
        let commented = "# a triangle\n3\n\n1 2\n2 3\n3 1\n";
        assert_eq!(
            Graph::parse_edge_list(commented).unwrap(),
            Graph::cycle(3).unwrap()
        );
        match Graph::parse_edge_list("3\n1 2\n1 x\n") {
            Err(GraphError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        match Graph::parse_edge_list("3\n1 2\n2 1\n") {
            Err(GraphError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Graph::parse_edge_list("").is_err());
        assert!(Graph::parse_edge_list("0\n").is_err());
    }

    #[test]
    fn dot_output() {
        let dot = Graph::path(2).unwrap().to_dot("P2");
        assert_eq!(dot, "graph P2 {\n  1;\n  2;\n  1 -- 2;\n}\n");
    }
}
