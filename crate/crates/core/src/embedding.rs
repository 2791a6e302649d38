//! Combinatorial embeddings: rotation systems, facial walks and the plane
//! graph view used by the reducibility and discharging code.

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub type FaceId = usize;
/// A directed edge `(tail, head)`.
pub type Dart = (Vertex, Vertex);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("rotation has {got} entries for a graph on {n} vertices")]
    WrongVertexCount { got: usize, n: usize },
    #[error("rotation at vertex {0} is not a cyclic order of its neighbors")]
    BadRotation(Vertex),
    #[error("embedding is not planar: component containing vertex {vertex} has V - E + F = {euler}")]
    NonPlanarEmbedding { vertex: Vertex, euler: i64 },
    #[error("graph is disconnected")]
    Disconnected,
}

/// Per-vertex cyclic order of neighbors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    rot: Vec<Vec<Vertex>>,
}

impl RotationSystem {
    pub fn new(rot: Vec<Vec<Vertex>>) -> Self {
        RotationSystem { rot }
    }

    /// Rotation read off a straight-line drawing: neighbors sorted by angle.
    /// The result is only planar if the drawing has no crossings; callers
    /// should validate through [`PlaneGraph::new`].
    pub fn from_coordinates(g: &Graph, coords: &[(f64, f64)]) -> Self {
        let rot = (0..g.n())
            .map(|v| {
                let (x0, y0) = coords[v];
                let mut nbrs: Vec<(f64, Vertex)> =
                    g.neighbors(v).iter().map(|&w| ((coords[w].1 - y0).atan2(coords[w].0 - x0), w)).collect();
                nbrs.sort_by(|a, b| a.0.total_cmp(&b.0));
                nbrs.into_iter().map(|(_, w)| w).collect()
            })
            .collect();
        RotationSystem { rot }
    }

    pub fn at(&self, v: Vertex) -> &[Vertex] {
        &self.rot[v]
    }

    pub fn as_slice(&self) -> &[Vec<Vertex>] {
        &self.rot
    }

    pub fn mirrored(&self) -> Self {
        RotationSystem { rot: self.rot.iter().map(|r| r.iter().rev().copied().collect()).collect() }
    }

    pub fn validate(&self, g: &Graph) -> Result<(), EmbeddingError> {
        if self.rot.len() != g.n() {
            return Err(EmbeddingError::WrongVertexCount { got: self.rot.len(), n: g.n() });
        }
        for v in 0..g.n() {
            let mut sorted = self.rot[v].clone();
            sorted.sort_unstable();
            if sorted != g.neighbors(v) {
                return Err(EmbeddingError::BadRotation(v));
            }
        }
        Ok(())
    }

    /// Successor of `u` in the cyclic order at `v`.
    fn next_after(&self, v: Vertex, u: Vertex) -> Vertex {
        let r = &self.rot[v];
        let i = r.iter().position(|&w| w == u).expect("u adjacent to v");
        r[(i + 1) % r.len()]
    }
}

/// A facial walk, stored as its cyclic sequence of darts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub walk: Vec<Dart>,
}

impl Face {
    /// Length of the face, counting repeated vertices.
    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }

    /// Vertex at each walk position (the tail of each dart).
    pub fn vertices(&self) -> Vec<Vertex> {
        self.walk.iter().map(|d| d.0).collect()
    }

    /// True when the walk visits no vertex twice.
    pub fn is_cycle(&self) -> bool {
        let mut vs = self.vertices();
        vs.sort_unstable();
        vs.windows(2).all(|w| w[0] != w[1])
    }
}

/// Traverses all faces of `g` under `rot`.
///
/// After dart `(u, v)` the walk continues with `(v, w)` where `w` follows `u`
/// in the rotation at `v`. Faces are numbered in discovery order (vertices
/// ascending, darts in rotation order). Each isolated vertex contributes one
/// face of length zero. The Euler relation is checked per component.
pub fn faces(g: &Graph, rot: &RotationSystem) -> Result<Vec<Face>, EmbeddingError> {
    rot.validate(g)?;
    let mut used: HashMap<Dart, bool> = HashMap::with_capacity(2 * g.m());
    let mut out = Vec::new();
    for v in 0..g.n() {
        if g.degree(v) == 0 {
            out.push(Face { walk: Vec::new() });
            continue;
        }
        for &w in rot.at(v) {
            if used.contains_key(&(v, w)) {
                continue;
            }
            let mut walk = Vec::new();
            let mut dart = (v, w);
            while !used.contains_key(&dart) {
                used.insert(dart, true);
                walk.push(dart);
                let (a, b) = dart;
                dart = (b, rot.next_after(b, a));
            }
            out.push(Face { walk });
        }
    }
    let mut comp_of = vec![0; g.n()];
    let comps = g.components();
    for (ci, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = ci;
        }
    }
    let mut face_count = vec![0i64; comps.len()];
    for f in &out {
        let c = match f.walk.first() {
            Some(d) => comp_of[d.0],
            None => continue,
        };
        face_count[c] += 1;
    }
    for (ci, comp) in comps.iter().enumerate() {
        let vcount = comp.len() as i64;
        if vcount == 1 {
            continue;
        }
        let ecount = comp.iter().map(|&v| g.degree(v)).sum::<usize>() as i64 / 2;
        let euler = vcount - ecount + face_count[ci];
        if euler != 2 {
            return Err(EmbeddingError::NonPlanarEmbedding { vertex: comp[0], euler });
        }
    }
    debug_assert_eq!(out.iter().map(Face::len).sum::<usize>(), 2 * g.m());
    Ok(out)
}

/// A graph together with a validated genus-0 rotation system and its faces.
#[derive(Debug, Clone)]
pub struct PlaneGraph {
    graph: Graph,
    rotation: RotationSystem,
    faces: Vec<Face>,
    dart_face: HashMap<Dart, (FaceId, usize)>,
}

impl PlaneGraph {
    pub fn new(graph: Graph, rotation: RotationSystem) -> Result<Self, EmbeddingError> {
        let faces = faces(&graph, &rotation)?;
        let mut dart_face = HashMap::with_capacity(2 * graph.m());
        for (fi, f) in faces.iter().enumerate() {
            for (pos, &d) in f.walk.iter().enumerate() {
                dart_face.insert(d, (fi, pos));
            }
        }
        Ok(PlaneGraph { graph, rotation, faces, dart_face })
    }

    /// Embeds `graph` with a computed planar rotation system, if one exists.
    pub fn planar(graph: Graph) -> Option<Self> {
        let rot = crate::planarity::planar_embedding(&graph)?;
        Some(PlaneGraph::new(graph, rot).expect("planarity routine returns a genus-0 rotation"))
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self) -> &RotationSystem {
        &self.rotation
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f]
    }

    pub fn face_len(&self, f: FaceId) -> usize {
        self.faces[f].len()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.graph.degree(v)
    }

    /// Face containing dart `d`, with the dart's position in that face's walk.
    pub fn face_of_dart(&self, d: Dart) -> (FaceId, usize) {
        self.dart_face[&d]
    }

    /// Vertex at position `pos` (cyclic) of face `f`.
    pub fn vertex_at(&self, f: FaceId, pos: usize) -> Vertex {
        let w = &self.faces[f].walk;
        w[pos % w.len()].0
    }

    /// The face on the other side of the edge at position `pos` of `f`;
    /// this is the face that edge controls.
    pub fn across(&self, f: FaceId, pos: usize) -> FaceId {
        let (a, b) = self.faces[f].walk[pos];
        self.dart_face[&(b, a)].0
    }

    /// Faces incident to `v`, one entry per corner, in rotation order.
    pub fn faces_at(&self, v: Vertex) -> Vec<FaceId> {
        self.rotation.at(v).iter().map(|&w| self.dart_face[&(v, w)].0).collect()
    }

    /// Distinct vertices on face `f`.
    pub fn face_vertex_set(&self, f: FaceId) -> Vec<Vertex> {
        let mut vs = self.faces[f].vertices();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// The face whose boundary walk is the cyclic sequence `cycle`, read in
    /// either direction.
    pub fn find_face(&self, cycle: &[Vertex]) -> Option<FaceId> {
        let n = cycle.len();
        let matches = |walk: &[Vertex]| {
            (0..n).any(|r| (0..n).all(|i| walk[(r + i) % n] == cycle[i]))
                || (0..n).any(|r| (0..n).all(|i| walk[(r + n - i) % n] == cycle[i]))
        };
        (0..self.faces.len()).find(|&f| self.face_len(f) == n && n > 0 && matches(&self.faces[f].vertices()))
    }

    /// Canonical code of the embedding, invariant under relabeling and
    /// reflection. Two embeddings are isomorphic iff their codes are equal.
    pub fn canonical_code(&self) -> Vec<usize> {
        let g = &self.graph;
        let comps = g.components();
        let mut codes: Vec<Vec<usize>> = comps
            .iter()
            .map(|comp| {
                if comp.len() == 1 {
                    return vec![1];
                }
                let mut best: Option<Vec<usize>> = None;
                for rot in [self.rotation.clone(), self.rotation.mirrored()] {
                    for &u in comp {
                        for &w in rot.at(u) {
                            let code = bfs_code(g, &rot, u, w, comp.len());
                            if best.as_ref().is_none_or(|b| code < *b) {
                                best = Some(code);
                            }
                        }
                    }
                }
                best.unwrap()
            })
            .collect();
        codes.sort();
        let mut out = vec![codes.len()];
        for c in codes {
            out.push(c.len());
            out.extend(c);
        }
        out
    }
}

fn bfs_code(g: &Graph, rot: &RotationSystem, start: Vertex, first: Vertex, size: usize) -> Vec<usize> {
    let mut label = vec![usize::MAX; g.n()];
    let mut entry = vec![usize::MAX; g.n()];
    let mut order = vec![start];
    label[start] = 0;
    entry[start] = first;
    let mut code = vec![size];
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        let r = rot.at(v);
        let s = r.iter().position(|&w| w == entry[v]).unwrap();
        for j in 0..r.len() {
            let w = r[(s + j) % r.len()];
            if label[w] == usize::MAX {
                label[w] = order.len();
                entry[w] = v;
                order.push(w);
            }
            code.push(label[w] + 1);
        }
        code.push(0);
        i += 1;
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_plane(n: usize) -> PlaneGraph {
        let g = Graph::cycle(n);
        let rot = (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect();
        PlaneGraph::new(g, RotationSystem::new(rot)).unwrap()
    }

    fn k4_plane() -> PlaneGraph {
        let g = Graph::complete(4);
        let coords = [(0.0, 0.0), (10.0, 0.0), (5.0, 9.0), (5.0, 3.0)];
        let rot = RotationSystem::from_coordinates(&g, &coords);
        PlaneGraph::new(g, rot).unwrap()
    }

    #[test]
    fn cycle_faces() {
        for n in [4, 9] {
            let p = cycle_plane(n);
            assert_eq!(p.faces().len(), 2);
            assert!(p.faces().iter().all(|f| f.len() == n && f.is_cycle()));
        }
    }

    #[test]
    fn k4_has_four_triangles() {
        let p = k4_plane();
        assert_eq!(p.faces().len(), 4);
        assert!(p.faces().iter().all(|f| f.len() == 3));
    }

    #[test]
    fn non_planar_rotation_rejected() {
        // K4 with a rotation that puts it on the torus
        let g = Graph::complete(4);
        let rot = RotationSystem::new(vec![vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]]);
        let res = faces(&g, &rot);
        assert!(matches!(res, Err(EmbeddingError::NonPlanarEmbedding { .. })), "{res:?}");
    }

    #[test]
    fn bad_rotation_rejected() {
        let g = Graph::cycle(3);
        let rot = RotationSystem::new(vec![vec![1], vec![0, 2], vec![0, 1]]);
        assert_eq!(faces(&g, &rot), Err(EmbeddingError::BadRotation(0)));
    }

    #[test]
    fn tree_has_one_face_with_repeats() {
        let g = Graph::path(3);
        let rot = RotationSystem::new(vec![vec![1], vec![0, 2], vec![1]]);
        let fs = faces(&g, &rot).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].len(), 4);
        assert!(!fs[0].is_cycle());
    }

    #[test]
    fn across_and_canonical_code() {
        let p = cycle_plane(5);
        assert_eq!(p.across(0, 0), 1);
        let q = {
            let g = Graph::new(5, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]).unwrap();
            let order = [0, 2, 4, 1, 3];
            let mut rot = vec![Vec::new(); 5];
            for i in 0..5 {
                rot[order[i]] = vec![order[(i + 4) % 5], order[(i + 1) % 5]];
            }
            PlaneGraph::new(g, RotationSystem::new(rot)).unwrap()
        };
        assert_eq!(p.canonical_code(), q.canonical_code());
        assert_ne!(p.canonical_code(), cycle_plane(6).canonical_code());
    }
}
