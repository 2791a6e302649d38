//! Simple undirected graphs with dense vertex ids.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("repeated edge {0}-{1}")]
    RepeatedEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
}

/// A simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are kept sorted; edges are stored as `(min, max)` pairs in
/// lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edges: Vec<(Vertex, Vertex)>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], edges: Vec::new() }
    }

    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            let e = (u.min(v), u.max(v));
            if !set.insert(e) {
                return Err(GraphError::RepeatedEdge(e.0, e.1));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &set {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { adj, edges: set.into_iter().collect() })
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn complete(n: usize) -> Self {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    /// The 3-dimensional cube.
    pub fn cube() -> Self {
        let mut edges = Vec::new();
        for u in 0..8usize {
            for bit in 0..3 {
                let v = u ^ (1 << bit);
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(8, edges).unwrap()
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adj.iter().map(Vec::len).min()
    }

    /// Connected components, each sorted ascending, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
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

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Subgraph induced by `vertices` (given in any order, duplicates ignored).
    /// Returns the subgraph and the local-to-global vertex map, which is
    /// ascending so edge order is preserved.
    pub fn induced(&self, vertices: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let keep: BTreeSet<Vertex> = vertices.iter().copied().collect();
        let map: Vec<Vertex> = keep.iter().copied().collect();
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            local[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|(u, v)| local[*u] != usize::MAX && local[*v] != usize::MAX)
            .map(|&(u, v)| (local[u], local[v]));
        (Graph::new(map.len(), edges).expect("induced subgraph of a simple graph"), map)
    }

    /// BFS parent array from `root`; `None` for the root and unreachable vertices.
    pub fn bfs_parents(&self, root: Vertex) -> Vec<Option<Vertex>> {
        let mut parent = vec![None; self.n()];
        let mut seen = vec![false; self.n()];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        parent
    }

    /// Edges of the BFS spanning tree from `root`, as `(min, max)` pairs, sorted.
    pub fn bfs_tree(&self, root: Vertex) -> Vec<(Vertex, Vertex)> {
        let mut tree: Vec<_> = self
            .bfs_parents(root)
            .into_iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (p.min(v), p.max(v))))
            .collect();
        tree.sort_unstable();
        tree
    }

    /// BFS distances from `s`; `usize::MAX` marks unreachable vertices.
    pub fn distances_from(&self, s: Vertex) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Degeneracy: the largest minimum degree over all subgraphs.
    pub fn degeneracy(&self) -> usize {
        let mut deg: Vec<usize> = (0..self.n()).map(|v| self.degree(v)).collect();
        let mut removed = vec![false; self.n()];
        let mut best = 0;
        for _ in 0..self.n() {
            let v = (0..self.n()).filter(|&v| !removed[v]).min_by_key(|&v| deg[v]).unwrap();
            best = best.max(deg[v]);
            removed[v] = true;
            for &w in &self.adj[v] {
                if !removed[w] {
                    deg[w] -= 1;
                }
            }
        }
        best
    }

    /// Vertices of the `k`-core (maximal subgraph of minimum degree at least `k`), ascending.
    pub fn k_core(&self, k: usize) -> Vec<Vertex> {
        let mut deg: Vec<usize> = (0..self.n()).map(|v| self.degree(v)).collect();
        let mut removed = vec![false; self.n()];
        let mut stack: Vec<Vertex> = (0..self.n()).filter(|&v| deg[v] < k).collect();
        for &v in &stack {
            removed[v] = true;
        }
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !removed[w] {
                    deg[w] -= 1;
                    if deg[w] < k {
                        removed[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        (0..self.n()).filter(|&v| !removed[v]).collect()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges)
    }
}
