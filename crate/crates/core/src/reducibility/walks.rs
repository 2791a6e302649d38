//! Walk statistics on faces: controlled faces, richness, maximal walks and
//! special paths.

use std::collections::BTreeSet;

use serde::Serialize;

use super::ReduceError;
use crate::embedding::{FaceId, PlaneGraph};
use crate::graph::Vertex;

/// True when the edge at position `pos` of `f` controls a 4⁻-face.
pub fn controls_small_face(p: &PlaneGraph, f: FaceId, pos: usize) -> bool {
    p.face_len(p.across(f, pos)) <= 4
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Richness {
    Rich,
    SemiRich,
    Poor,
}

/// Richness of the corner at position `pos` of `f`.
pub fn richness_at(p: &PlaneGraph, f: FaceId, pos: usize) -> Result<Richness, ReduceError> {
    let d = p.face_len(f);
    let v = p.vertex_at(f, pos);
    if p.degree(v) < 4 {
        return Err(ReduceError::DegreeTooLow(v));
    }
    let small = controls_small_face(p, f, (pos + d - 1) % d) as usize + controls_small_face(p, f, pos % d) as usize;
    Ok(match small {
        0 => Richness::Rich,
        1 => Richness::SemiRich,
        _ => Richness::Poor,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalWalk {
    /// Face position of the first vertex.
    pub start: usize,
    /// Vertices along the walk, first to last.
    pub vertices: Vec<Vertex>,
    /// Faces controlled by the consecutive edges.
    pub controlled: Vec<FaceId>,
    /// Internal vertex count; `d(f) - 2` when the walk is the whole face.
    pub internal: usize,
}

impl MaximalWalk {
    pub fn is_closed(&self) -> bool {
        self.controlled.len() == self.vertices.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceProfile {
    pub face: FaceId,
    pub s0: usize,
    pub s1: usize,
    /// `t[i]` counts maximal walks with `i` internal vertices.
    pub t: Vec<usize>,
    pub walks: Vec<MaximalWalk>,
    /// `(position, vertex, richness)` for every corner with a 4⁺-vertex.
    pub richness: Vec<(usize, Vertex, Richness)>,
}

impl FaceProfile {
    pub fn t(&self, i: usize) -> usize {
        self.t.get(i).copied().unwrap_or(0)
    }
}

fn distinct_big(p: &PlaneGraph, f: FaceId) -> usize {
    p.face_vertex_set(f).into_iter().filter(|&v| p.degree(v) >= 4).count()
}

/// Decomposes `f` into maximal 4⁻-controlling walks and computes the face
/// statistics.
pub fn maximal_walks(p: &PlaneGraph, f: FaceId) -> FaceProfile {
    let d = p.face_len(f);
    let ctl: Vec<bool> = (0..d).map(|i| controls_small_face(p, f, i)).collect();
    let mut walks = Vec::new();
    if d > 0 && ctl.iter().all(|&c| c) {
        walks.push(MaximalWalk {
            start: 0,
            vertices: (0..d).map(|i| p.vertex_at(f, i)).collect(),
            controlled: (0..d).map(|i| p.across(f, i)).collect(),
            internal: d - 2,
        });
    } else if let Some(anchor) = ctl.iter().position(|&c| !c) {
        // scan once around the face starting just after a non-controlling edge
        let mut i = 1;
        while i <= d {
            let e = (anchor + i) % d;
            if !ctl[e] {
                i += 1;
                continue;
            }
            let mut r = 0;
            while ctl[(e + r) % d] {
                r += 1;
            }
            walks.push(MaximalWalk {
                start: e,
                vertices: (0..=r).map(|j| p.vertex_at(f, e + j)).collect(),
                controlled: (0..r).map(|j| p.across(f, (e + j) % d)).collect(),
                internal: r - 1,
            });
            i += r;
        }
    }
    let on_walk: usize = walks.iter().map(|w| if w.is_closed() { d } else { w.vertices.len() }).sum();
    let s0 = d - on_walk;
    let mut t = vec![0; walks.iter().map(|w| w.internal + 1).max().unwrap_or(0)];
    for w in &walks {
        t[w.internal] += 1;
    }

    let mut richness = Vec::new();
    for pos in 0..d {
        let v = p.vertex_at(f, pos);
        if let Ok(r) = richness_at(p, f, pos) {
            richness.push((pos, v, r));
        }
    }
    let mut s1 = richness.iter().filter(|r| r.2 == Richness::SemiRich).count();
    for (i, _) in ctl.iter().enumerate().filter(|c| *c.1) {
        let (a, b) = (p.degree(p.vertex_at(f, i)), p.degree(p.vertex_at(f, i + 1)));
        let big = distinct_big(p, p.across(f, i));
        let three_four = (a == 3 && b >= 4) || (a >= 4 && b == 3);
        if (three_four && big >= 2) || (a >= 4 && b >= 4 && big >= 3) {
            s1 += 1;
        }
    }

    let weighted: usize = t.iter().enumerate().map(|(i, n)| (i + 2) * n).sum();
    assert_eq!(s0 + weighted, d, "walk decomposition of face {f} does not account for its length");
    FaceProfile { face: f, s0, s1, t, walks, richness }
}

/// A special path on a face, with one witness path per spine edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialPath {
    pub face: FaceId,
    /// `u_1 .. u_t`, starting at the 4⁻ end and ending at the 3-vertex.
    pub spine: Vec<Vertex>,
    /// Face positions of the spine vertices.
    pub positions: Vec<usize>,
    /// `witnesses[i]` runs from `spine[i]` to `spine[i + 1]`.
    pub witnesses: Vec<Vec<Vertex>>,
    /// Face controlled by each spine edge.
    pub controlled: Vec<FaceId>,
}

impl SpecialPath {
    pub fn degrees(&self, p: &PlaneGraph) -> Vec<usize> {
        self.spine.iter().map(|&v| p.degree(v)).collect()
    }

    /// Length of the longest face controlled by a spine edge.
    pub fn max_controlled_len(&self, p: &PlaneGraph) -> usize {
        self.controlled.iter().map(|&g| p.face_len(g)).max().unwrap_or(0)
    }
}

/// The boundary of the face controlled by the edge at `pos` of `f`, walked
/// from the edge's first vertex around to its second.
pub fn controlled_path(p: &PlaneGraph, f: FaceId, pos: usize) -> Vec<Vertex> {
    let (a, b) = p.face(f).walk[pos];
    let (g, q) = p.face_of_dart((b, a));
    (1..=p.face_len(g)).map(|j| p.vertex_at(g, q + j)).collect()
}

/// Checks the special-path definition directly: degree pattern
/// `(4⁻, 4, ..., 4, 3)`, consecutive spine vertices adjacent along the cycle
/// `cycle`, and each witness a path between consecutive spine vertices whose
/// interior is non-empty, off the cycle and of degree 3.
pub fn is_special_path(p: &PlaneGraph, cycle: &[Vertex], spine: &[Vertex], witnesses: &[Vec<Vertex>]) -> bool {
    let g = p.graph();
    let t = spine.len();
    if t < 2 || witnesses.len() != t - 1 {
        return false;
    }
    let on_cycle: BTreeSet<Vertex> = cycle.iter().copied().collect();
    let distinct: BTreeSet<Vertex> = spine.iter().copied().collect();
    if distinct.len() != t || !spine.iter().all(|v| on_cycle.contains(v)) {
        return false;
    }
    let dg = |v: Vertex| g.degree(v);
    if dg(spine[0]) > 4 || dg(spine[t - 1]) != 3 || spine[1..t - 1].iter().any(|&v| dg(v) != 4) {
        return false;
    }
    let n = cycle.len();
    let adjacent_on_cycle = |a: Vertex, b: Vertex| {
        (0..n).any(|i| {
            let (x, y) = (cycle[i], cycle[(i + 1) % n]);
            (x, y) == (a, b) || (x, y) == (b, a)
        })
    };
    for (i, w) in witnesses.iter().enumerate() {
        if !adjacent_on_cycle(spine[i], spine[i + 1]) {
            return false;
        }
        if w.len() < 3 || w[0] != spine[i] || w[w.len() - 1] != spine[i + 1] {
            return false;
        }
        let wset: BTreeSet<Vertex> = w.iter().copied().collect();
        if wset.len() != w.len() || !w.windows(2).all(|e| g.has_edge(e[0], e[1])) {
            return false;
        }
        let interior = &w[1..w.len() - 1];
        if interior.iter().any(|v| on_cycle.contains(v) || dg(*v) != 3) {
            return false;
        }
    }
    true
}

/// All special paths of `f` whose witnesses run along the faces controlled by
/// the spine edges, including sub-paths of longer ones. Each path is reported
/// once, in the orientation given by its degree pattern (a path readable both
/// ways is reported in face order). Empty unless `f` is bounded by a cycle.
pub fn find_special_paths(p: &PlaneGraph, f: FaceId) -> Vec<SpecialPath> {
    let face = p.face(f);
    if face.is_empty() || !face.is_cycle() {
        return Vec::new();
    }
    let d = face.len();
    let cycle = face.vertices();
    let forward: Vec<Vec<Vertex>> = (0..d).map(|pos| controlled_path(p, f, pos)).collect();
    let mut seen: BTreeSet<Vec<Vertex>> = BTreeSet::new();
    let mut out = Vec::new();
    for dir in [1isize, -1] {
        for start in 0..d {
            for t in 2..=d {
                let positions: Vec<usize> =
                    (0..t).map(|j| (start as isize + dir * j as isize).rem_euclid(d as isize) as usize).collect();
                let spine: Vec<Vertex> = positions.iter().map(|&q| cycle[q]).collect();
                let mut witnesses = Vec::new();
                let mut controlled = Vec::new();
                for j in 0..t - 1 {
                    let (a, b) = (positions[j], positions[j + 1]);
                    let edge = if dir == 1 { a } else { b };
                    let mut w = forward[edge].clone();
                    if dir == -1 {
                        w.reverse();
                    }
                    witnesses.push(w);
                    controlled.push(p.across(f, edge));
                }
                if !is_special_path(p, &cycle, &spine, &witnesses) {
                    continue;
                }
                let mut key = spine.clone();
                let mut rev = spine.clone();
                rev.reverse();
                if rev < key {
                    key = rev;
                }
                if seen.insert(key) {
                    out.push(SpecialPath { face: f, spine, positions, witnesses, controlled });
                }
            }
        }
    }
    out
}
