//! Cycle-length queries, triangle distance and the five cycle-exclusion
//! graph classes.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex};
use crate::planarity::is_planar;

/// Default cap for cycle enumeration.
pub const DEFAULT_MAX_CYCLE_LEN: usize = 10;

/// Lengths `l` in `3..=max_len` such that `g` has a cycle of length exactly `l`.
pub fn cycle_lengths_present(g: &Graph, max_len: usize) -> BTreeSet<usize> {
    assert!(max_len >= 3, "max_len must be at least 3");
    let mut found = BTreeSet::new();
    let mut on_path = vec![false; g.n()];
    let mut path = Vec::new();
    for s in 0..g.n() {
        on_path[s] = true;
        path.push(s);
        extend_paths(g, s, max_len, &mut on_path, &mut path, &mut found);
        path.pop();
        on_path[s] = false;
        if found.len() == max_len - 2 {
            break;
        }
    }
    found
}

// Paths start at their least vertex `s` and only visit vertices above it.
fn extend_paths(
    g: &Graph,
    s: Vertex,
    max_len: usize,
    on_path: &mut [bool],
    path: &mut Vec<Vertex>,
    found: &mut BTreeSet<usize>,
) {
    let u = *path.last().unwrap();
    for &w in g.neighbors(u) {
        if w == s && path.len() >= 3 {
            found.insert(path.len());
        } else if w > s && !on_path[w] && path.len() < max_len {
            on_path[w] = true;
            path.push(w);
            extend_paths(g, s, max_len, on_path, path, found);
            path.pop();
            on_path[w] = false;
        }
    }
}

/// Lengths of cycles through the edge `uv` (which need not be present in `g`),
/// i.e. one more than the lengths of `u`-`v` paths, capped at `max_len`.
pub fn cycle_lengths_through(g: &Graph, u: Vertex, v: Vertex, max_len: usize) -> BTreeSet<usize> {
    fn walk(
        g: &Graph,
        x: Vertex,
        v: Vertex,
        max_len: usize,
        depth: usize,
        on_path: &mut [bool],
        found: &mut BTreeSet<usize>,
    ) {
        for &w in g.neighbors(x) {
            if w == v {
                if depth + 1 >= 2 {
                    found.insert(depth + 2);
                }
            } else if !on_path[w] && depth + 2 < max_len {
                on_path[w] = true;
                walk(g, w, v, max_len, depth + 1, on_path, found);
                on_path[w] = false;
            }
        }
    }
    let mut found = BTreeSet::new();
    let mut on_path = vec![false; g.n()];
    on_path[u] = true;
    walk(g, u, v, max_len, 0, &mut on_path, &mut found);
    found.retain(|&l| l >= 3 && l <= max_len);
    found
}

/// All triangles as sorted vertex triples.
pub fn triangles(g: &Graph) -> Vec<[Vertex; 3]> {
    let mut out = Vec::new();
    for &(u, v) in g.edges() {
        for &w in g.neighbors(v) {
            if w > v && g.has_edge(u, w) {
                out.push([u, v, w]);
            }
        }
    }
    out
}

/// Minimum vertex distance between two distinct triangles; `None` when `g`
/// has fewer than two triangles. Triangles sharing a vertex are at distance 0.
pub fn triangle_distance(g: &Graph) -> Option<usize> {
    let tris = triangles(g);
    if tris.len() < 2 {
        return None;
    }
    let dist: Vec<Vec<usize>> = (0..g.n()).map(|s| g.distances_from(s)).collect();
    let mut best = usize::MAX;
    for (i, a) in tris.iter().enumerate() {
        for b in &tris[i + 1..] {
            for &x in a {
                for &y in b {
                    best = best.min(dist[x][y]);
                }
            }
        }
    }
    Some(best)
}

/// The five planar graph families, named by their excluded cycle lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GraphClass {
    C3678,
    C356,
    C4569,
    C4579,
    /// No 5-, 6- or 7-cycles, and triangles at distance at least two.
    C567T,
}

impl GraphClass {
    pub const ALL: [GraphClass; 5] =
        [GraphClass::C3678, GraphClass::C356, GraphClass::C4569, GraphClass::C4579, GraphClass::C567T];

    pub fn excluded_lengths(self) -> &'static [usize] {
        match self {
            GraphClass::C3678 => &[3, 6, 7, 8],
            GraphClass::C356 => &[3, 5, 6],
            GraphClass::C4569 => &[4, 5, 6, 9],
            GraphClass::C4579 => &[4, 5, 7, 9],
            GraphClass::C567T => &[5, 6, 7],
        }
    }

    /// Required minimum triangle distance, if any.
    pub fn triangle_distance_threshold(self) -> Option<usize> {
        match self {
            GraphClass::C567T => Some(2),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GraphClass::C3678 => "C3678",
            GraphClass::C356 => "C356",
            GraphClass::C4569 => "C4569",
            GraphClass::C4579 => "C4579",
            GraphClass::C567T => "C567T",
        }
    }

    /// Checks only the cycle and distance exclusions, not planarity.
    pub fn admits_cycles(self, present: &BTreeSet<usize>, tri_dist: Option<usize>) -> bool {
        if self.excluded_lengths().iter().any(|l| present.contains(l)) {
            return false;
        }
        match (self.triangle_distance_threshold(), tri_dist) {
            (Some(t), Some(d)) => d >= t,
            _ => true,
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim_start_matches(['C', 'c']);
        match t {
            "3678" => Ok(GraphClass::C3678),
            "356" => Ok(GraphClass::C356),
            "4569" => Ok(GraphClass::C4569),
            "4579" => Ok(GraphClass::C4579),
            "567" | "567T" | "567t" => Ok(GraphClass::C567T),
            _ => Err(format!("unknown graph class {s:?}")),
        }
    }
}

pub fn in_class(g: &Graph, cls: GraphClass) -> bool {
    let present = cycle_lengths_present(g, DEFAULT_MAX_CYCLE_LEN);
    cls.admits_cycles(&present, triangle_distance(g)) && is_planar(g)
}

/// Membership in every class at once, sharing the cycle enumeration.
pub fn class_memberships(g: &Graph) -> Vec<(GraphClass, bool)> {
    let present = cycle_lengths_present(g, DEFAULT_MAX_CYCLE_LEN);
    let td = triangle_distance(g);
    let planar = is_planar(g);
    GraphClass::ALL.iter().map(|&c| (c, planar && c.admits_cycles(&present, td))).collect()
}
