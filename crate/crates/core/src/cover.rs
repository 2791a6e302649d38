//! List assignments, matching assignments, cover graphs and transversals.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// Colors are positive integers; `1..=k` for DP-k instances.
pub type Color = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("invalid matching on {u}-{v}: {reason}")]
    InvalidMatching { u: Vertex, v: Vertex, reason: String },
    #[error("list assignment covers {got} vertices, graph has {n}")]
    WrongListCount { got: usize, n: usize },
    #[error("edge set is not a spanning tree")]
    NotATree,
    #[error("matching on {u}-{v} is not a permutation of 1..={k}")]
    NotFull { u: Vertex, v: Vertex, k: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListAssignment {
    lists: Vec<BTreeSet<Color>>,
}

impl ListAssignment {
    pub fn new(lists: Vec<BTreeSet<Color>>) -> Self {
        ListAssignment { lists }
    }

    /// Every vertex gets `{1, ..., k}`.
    pub fn uniform(n: usize, k: usize) -> Self {
        ListAssignment { lists: vec![(1..=k as Color).collect(); n] }
    }

    pub fn list(&self, v: Vertex) -> &BTreeSet<Color> {
        &self.lists[v]
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }
}

/// Per-edge matchings, stored from the lower endpoint's colors to the higher
/// endpoint's colors. Edges without an entry carry the empty matching.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatchingAssignment {
    map: BTreeMap<(Vertex, Vertex), Vec<(Color, Color)>>,
}

impl MatchingAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// The identity matching on `1..=k` for every edge of `g`.
    pub fn identity(g: &Graph, k: usize) -> Self {
        let id: Vec<_> = (1..=k as Color).map(|c| (c, c)).collect();
        MatchingAssignment { map: g.edges().iter().map(|&e| (e, id.clone())).collect() }
    }

    /// Sets the matching on `uv` given as pairs `(color at u, color at v)`.
    pub fn set(&mut self, u: Vertex, v: Vertex, pairs: impl IntoIterator<Item = (Color, Color)>) {
        let mut pairs: Vec<_> = pairs.into_iter().map(|(a, b)| if u < v { (a, b) } else { (b, a) }).collect();
        pairs.sort_unstable();
        self.map.insert((u.min(v), u.max(v)), pairs);
    }

    /// Sets a full matching from a permutation: color `i + 1` at `u` is matched
    /// to `perm[i]` at `v`.
    pub fn set_permutation(&mut self, u: Vertex, v: Vertex, perm: &[Color]) {
        self.set(u, v, perm.iter().enumerate().map(|(i, &c)| (i as Color + 1, c)));
    }

    /// Pairs oriented from `u` to `v`.
    pub fn pairs(&self, u: Vertex, v: Vertex) -> Vec<(Color, Color)> {
        let stored = self.map.get(&(u.min(v), u.max(v))).map(Vec::as_slice).unwrap_or(&[]);
        if u < v {
            stored.to_vec()
        } else {
            let mut p: Vec<_> = stored.iter().map(|&(a, b)| (b, a)).collect();
            p.sort_unstable();
            p
        }
    }

    /// The color at `v` matched to color `c` at `u`, if any.
    pub fn matched(&self, u: Vertex, v: Vertex, c: Color) -> Option<Color> {
        let stored = self.map.get(&(u.min(v), u.max(v)))?;
        if u < v {
            stored.iter().find(|p| p.0 == c).map(|p| p.1)
        } else {
            stored.iter().find(|p| p.1 == c).map(|p| p.0)
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.map.keys().copied()
    }

    /// The matching on `uv` as a permutation of `1..=k` (oriented `u` to `v`),
    /// if it is full.
    pub fn permutation(&self, u: Vertex, v: Vertex, k: usize) -> Option<Vec<Color>> {
        let pairs = self.pairs(u, v);
        if pairs.len() != k {
            return None;
        }
        let mut perm = vec![0; k];
        for (a, b) in pairs {
            if a == 0 || a as usize > k || b == 0 || b as usize > k || perm[a as usize - 1] != 0 {
                return None;
            }
            perm[a as usize - 1] = b;
        }
        let distinct: BTreeSet<_> = perm.iter().collect();
        (distinct.len() == k).then_some(perm)
    }
}

impl fmt::Display for MatchingAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (&(u, v), pairs) in &self.map {
            let body: Vec<String> = pairs.iter().map(|(a, b)| format!("{a}->{b}")).collect();
            writeln!(f, "{u} {v}: {}", body.join(", "))?;
        }
        Ok(())
    }
}

impl FromStr for MatchingAssignment {
    type Err = CoverError;

    fn from_str(s: &str) -> Result<Self, CoverError> {
        let mut m = MatchingAssignment::new();
        for (i, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| CoverError::Parse { line: i + 1, msg: msg.to_string() };
            let (head, body) = line.split_once(':').ok_or_else(|| err("expected `u v: a->b, ...`"))?;
            let ends: Vec<Vertex> = head
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| err("bad vertex id")))
                .collect::<Result<_, _>>()?;
            let [u, v] = ends[..] else { return Err(err("expected two endpoints")) };
            let mut pairs = Vec::new();
            for item in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let (a, b) = item.split_once("->").ok_or_else(|| err("expected `a->b`"))?;
                let a = a.trim().parse().map_err(|_| err("bad color"))?;
                let b = b.trim().parse().map_err(|_| err("bad color"))?;
                pairs.push((a, b));
            }
            m.set(u, v, pairs);
        }
        Ok(m)
    }
}

/// The cover graph `H_L`: one clique per vertex list plus the matching edges.
#[derive(Debug, Clone)]
pub struct CoverGraph {
    lists: ListAssignment,
    // conflicts[v][c] = nodes (w, c') matched to (v, c)
    conflicts: Vec<BTreeMap<Color, Vec<(Vertex, Color)>>>,
    cross_edges: usize,
}

impl CoverGraph {
    pub fn n(&self) -> usize {
        self.lists.len()
    }

    pub fn lists(&self) -> &ListAssignment {
        &self.lists
    }

    pub fn node_count(&self) -> usize {
        self.lists.lists.iter().map(BTreeSet::len).sum()
    }

    pub fn nodes(&self) -> impl Iterator<Item = (Vertex, Color)> + '_ {
        self.lists.lists.iter().enumerate().flat_map(|(v, l)| l.iter().map(move |&c| (v, c)))
    }

    pub fn cross_edge_count(&self) -> usize {
        self.cross_edges
    }

    pub fn clique_edge_count(&self) -> usize {
        self.lists.lists.iter().map(|l| l.len() * l.len().saturating_sub(1) / 2).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.cross_edges + self.clique_edge_count()
    }

    pub fn conflicts(&self, v: Vertex, c: Color) -> &[(Vertex, Color)] {
        self.conflicts[v].get(&c).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn has_edge(&self, a: (Vertex, Color), b: (Vertex, Color)) -> bool {
        if a.0 == b.0 {
            return a.1 != b.1 && self.lists.list(a.0).contains(&a.1) && self.lists.list(a.0).contains(&b.1);
        }
        self.conflicts(a.0, a.1).contains(&b)
    }

    /// Checks that `t` picks one listed color per vertex and is independent.
    pub fn verify(&self, t: &Transversal) -> bool {
        t.choice.len() == self.n()
            && t.choice.iter().enumerate().all(|(v, c)| self.lists.list(v).contains(c))
            && t.choice.iter().enumerate().all(|(v, &c)| self.conflicts(v, c).iter().all(|&(w, d)| t.choice[w] != d))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transversal {
    pub choice: Vec<Color>,
}

pub fn build_cover(g: &Graph, lists: &ListAssignment, m: &MatchingAssignment) -> Result<CoverGraph, CoverError> {
    if lists.len() != g.n() {
        return Err(CoverError::WrongListCount { got: lists.len(), n: g.n() });
    }
    let mut conflicts = vec![BTreeMap::<Color, Vec<(Vertex, Color)>>::new(); g.n()];
    let mut cross_edges = 0;
    for (u, v) in m.edges() {
        let bad = |reason: String| CoverError::InvalidMatching { u, v, reason };
        if !g.has_edge(u, v) {
            return Err(bad("not an edge of the graph".into()));
        }
        let pairs = m.pairs(u, v);
        let mut left = BTreeSet::new();
        let mut right = BTreeSet::new();
        for &(a, b) in &pairs {
            if !lists.list(u).contains(&a) || !lists.list(v).contains(&b) {
                return Err(bad(format!("pair {a}->{b} leaves the lists")));
            }
            if !left.insert(a) || !right.insert(b) {
                return Err(bad(format!("pair {a}->{b} breaks injectivity")));
            }
            conflicts[u].entry(a).or_default().push((v, b));
            conflicts[v].entry(b).or_default().push((u, a));
            cross_edges += 1;
        }
    }
    for per_vertex in &mut conflicts {
        for list in per_vertex.values_mut() {
            list.sort_unstable();
        }
    }
    Ok(CoverGraph { lists: lists.clone(), conflicts, cross_edges })
}

/// Searches for an independent transversal by backtracking with forward
/// checking, branching on the vertex with fewest remaining colors (least id
/// on ties) and trying colors in increasing order.
pub fn find_transversal(cover: &CoverGraph) -> Option<Transversal> {
    let n = cover.n();
    let mut domains: Vec<BTreeSet<Color>> = (0..n).map(|v| cover.lists.list(v).clone()).collect();
    let mut choice: Vec<Option<Color>> = vec![None; n];
    if !search(cover, &mut domains, &mut choice) {
        return None;
    }
    let t = Transversal { choice: choice.into_iter().map(Option::unwrap).collect() };
    assert!(cover.verify(&t), "transversal search returned a dependent set");
    Some(t)
}

fn search(cover: &CoverGraph, domains: &mut [BTreeSet<Color>], choice: &mut [Option<Color>]) -> bool {
    let next = (0..choice.len()).filter(|&v| choice[v].is_none()).min_by_key(|&v| domains[v].len());
    let Some(v) = next else { return true };
    let colors: Vec<Color> = domains[v].iter().copied().collect();
    for c in colors {
        let mut removed = Vec::new();
        let mut dead = false;
        for &(w, d) in cover.conflicts(v, c) {
            if choice[w].is_none() && domains[w].remove(&d) {
                removed.push((w, d));
                dead |= domains[w].is_empty();
            }
        }
        if !dead {
            choice[v] = Some(c);
            if search(cover, domains, choice) {
                return true;
            }
            choice[v] = None;
        }
        for (w, d) in removed {
            domains[w].insert(d);
        }
    }
    false
}

/// Encodes list coloring as DP-coloring: lists are kept and each edge matches
/// equal colors, so transversals are exactly the proper `L'`-colorings.
pub fn from_lists(g: &Graph, lists: &[BTreeSet<Color>]) -> (ListAssignment, MatchingAssignment) {
    let mut m = MatchingAssignment::new();
    for &(u, v) in g.edges() {
        m.set(u, v, lists[u].intersection(&lists[v]).map(|&c| (c, c)));
    }
    (ListAssignment::new(lists.to_vec()), m)
}

/// Relabels colors per vertex so that every matching on `tree` becomes the
/// identity. All matchings must be full permutations of `1..=k`. Returns the
/// new assignment and the relabeling, where `sigma[v][c - 1]` is the new name
/// of color `c` at `v`.
pub fn normalize_with_relabeling(
    g: &Graph,
    m: &MatchingAssignment,
    tree: &[(Vertex, Vertex)],
) -> Result<(MatchingAssignment, Vec<Vec<Color>>), CoverError> {
    let n = g.n();
    if n == 0 {
        return Ok((m.clone(), Vec::new()));
    }
    if tree.len() + 1 != n || !tree.iter().all(|&(u, v)| g.has_edge(u, v)) {
        return Err(CoverError::NotATree);
    }
    let k = match g.edges().first() {
        Some(&(u, v)) => m.pairs(u, v).len(),
        None => 0,
    };
    let mut perms = BTreeMap::new();
    for &(u, v) in g.edges() {
        let p = m.permutation(u, v, k).ok_or(CoverError::NotFull { u, v, k })?;
        perms.insert((u, v), p);
    }
    let mut tree_adj = vec![Vec::new(); n];
    for &(u, v) in tree {
        tree_adj[u].push(v);
        tree_adj[v].push(u);
    }
    let identity: Vec<Color> = (1..=k as Color).collect();
    let mut sigma: Vec<Option<Vec<Color>>> = vec![None; n];
    sigma[0] = Some(identity);
    let mut stack = vec![0];
    let mut reached = 1;
    while let Some(p) = stack.pop() {
        for &c in &tree_adj[p] {
            if sigma[c].is_some() {
                continue;
            }
            // sigma_c = sigma_p after the inverse of the matching p -> c
            let mpc = m.permutation(p, c, k).expect("checked full above");
            let sp = sigma[p].as_ref().unwrap();
            let mut sc = vec![0; k];
            for a in 0..k {
                sc[mpc[a] as usize - 1] = sp[a];
            }
            sigma[c] = Some(sc);
            reached += 1;
            stack.push(c);
        }
    }
    if reached != n {
        return Err(CoverError::NotATree);
    }
    let sigma: Vec<Vec<Color>> = sigma.into_iter().map(Option::unwrap).collect();
    let mut out = MatchingAssignment::new();
    for (&(u, v), p) in &perms {
        out.set(u, v, (0..k).map(|a| (sigma[u][a], sigma[v][p[a] as usize - 1])));
    }
    Ok((out, sigma))
}

pub fn normalize(
    g: &Graph,
    m: &MatchingAssignment,
    tree: &[(Vertex, Vertex)],
) -> Result<MatchingAssignment, CoverError> {
    normalize_with_relabeling(g, m, tree).map(|(out, _)| out)
}
