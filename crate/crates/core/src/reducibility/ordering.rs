//! Orderings for the extension conditions: the face construction around a special
//! path, and a generic search.

use std::collections::BTreeSet;
use std::fmt;

use super::walks::{controlled_path, controls_small_face, find_special_paths};
use super::{check_extension_conditions, worst_case_sizes, ReduceError};
use crate::embedding::{FaceId, PlaneGraph};
use crate::graph::{Graph, Vertex};

pub const DEFAULT_BUDGET_ORDERINGS: u64 = 1_000_000;

/// The hypothesis of the face construction that failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    NotACycle,
    NoSpecialPath,
    /// A vertex of a controlled 4⁻-face off the face has no neighbor outside
    /// the face and its controlled 4⁻-faces.
    OutsideNeighbor(Vertex),
    RepeatedVertex(Vertex),
    LastVertexNoOutsideNeighbor(Vertex),
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::NotACycle => write!(f, "face is not bounded by a cycle"),
            Hypothesis::NoSpecialPath => write!(f, "face has no special (3,4,...,4,3)-path"),
            Hypothesis::OutsideNeighbor(v) => write!(f, "vertex {v} has no neighbor outside the face neighborhood"),
            Hypothesis::RepeatedVertex(v) => write!(f, "vertex {v} repeats in the list"),
            Hypothesis::LastVertexNoOutsideNeighbor(v) => write!(f, "last vertex {v} has no neighbor outside the list"),
        }
    }
}

fn violated(h: Hypothesis) -> ReduceError {
    ReduceError::HypothesisViolated(h)
}

/// Builds the vertex list for a face bounded by a cycle that carries a
/// special `(3, 4, ..., 4, 3)`-path.
///
/// The list walks the face starting just after a `(3, 4⁻)`-edge `u_k u_1`
/// of the special path, inserts the far side of each controlled 4⁻-face after
/// `u_i` (skipping edges between two 3-vertices), and ends with the far side
/// of the face controlled by `u_k u_1`. Every admissible choice of path and
/// end is tried; the first list meeting the extension conditions for `k`
/// under worst-case residuals is returned, else the first well-formed one.
pub fn build_face_ordering(p: &PlaneGraph, f: FaceId, k: usize) -> Result<Vec<Vertex>, ReduceError> {
    let g = p.graph();
    let face = p.face(f);
    if face.is_empty() || !face.is_cycle() {
        return Err(violated(Hypothesis::NotACycle));
    }
    let d = face.len();
    let cycle = face.vertices();

    let small: Vec<usize> = (0..d).filter(|&i| controls_small_face(p, f, i)).collect();
    let mut region: BTreeSet<Vertex> = cycle.iter().copied().collect();
    for &i in &small {
        region.extend(p.face_vertex_set(p.across(f, i)));
    }
    let on_face: BTreeSet<Vertex> = cycle.iter().copied().collect();
    for &i in &small {
        for v in p.face_vertex_set(p.across(f, i)) {
            if !on_face.contains(&v) && g.neighbors(v).iter().all(|u| region.contains(u)) {
                return Err(violated(Hypothesis::OutsideNeighbor(v)));
            }
        }
    }

    let mut candidates = Vec::new();
    for sp in find_special_paths(p, f) {
        let t = sp.spine.len();
        if g.degree(sp.spine[0]) != 3 {
            continue;
        }
        for (last, first) in [(sp.positions[0], sp.positions[1]), (sp.positions[t - 1], sp.positions[t - 2])] {
            let dir = if (last + 1) % d == first { 1 } else { d - 1 };
            let closing = if dir == 1 { last } else { first };
            if controls_small_face(p, f, closing) {
                candidates.push((last, dir));
            }
        }
    }
    if candidates.is_empty() {
        return Err(violated(Hypothesis::NoSpecialPath));
    }

    let mut fallback = None;
    let mut first_err = None;
    for (last, dir) in candidates {
        match face_list(p, f, last, dir) {
            Ok(order) => {
                let h: Vec<Vertex> = order.clone();
                let a = worst_case_sizes(g, &h, k);
                if check_extension_conditions(g, &h, &order, &a, k).passes() {
                    return Ok(order);
                }
                fallback.get_or_insert(order);
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    fallback.ok_or_else(|| first_err.unwrap())
}

// Positions `last + dir, last + 2 dir, ..., last` with the controlled paths inserted.
fn face_list(p: &PlaneGraph, f: FaceId, last: usize, dir: usize) -> Result<Vec<Vertex>, ReduceError> {
    let g = p.graph();
    let d = p.face_len(f);
    let pos = |j: usize| (last + j * dir) % d;
    // path on the face controlled by the edge between positions a and b, from a to b
    let path_between = |a: usize, b: usize| -> Vec<Vertex> {
        if (a + 1) % d == b {
            controlled_path(p, f, a)
        } else {
            let mut w = controlled_path(p, f, b);
            w.reverse();
            w
        }
    };
    let mut order = Vec::new();
    for j in 1..=d {
        let (a, b) = (pos(j), pos(j + 1));
        order.push(p.vertex_at(f, a));
        if j == d {
            break;
        }
        let edge = if dir == 1 { a } else { b };
        let (da, db) = (g.degree(p.vertex_at(f, a)), g.degree(p.vertex_at(f, b)));
        if controls_small_face(p, f, edge) && !(da == 3 && db == 3) {
            let w = path_between(a, b);
            order.extend_from_slice(&w[1..w.len() - 1]);
        }
    }
    let w = path_between(last, pos(1));
    order.extend_from_slice(&w[1..w.len() - 1]);

    let mut seen = BTreeSet::new();
    for &v in &order {
        if !seen.insert(v) {
            return Err(violated(Hypothesis::RepeatedVertex(v)));
        }
    }
    let tail = *order.last().unwrap();
    if g.neighbors(tail).iter().all(|u| seen.contains(u)) {
        return Err(violated(Hypothesis::LastVertexNoOutsideNeighbor(tail)));
    }
    Ok(order)
}

/// Searches for an ordering of `h` meeting the extension conditions under
/// worst-case residual sizes. Pairs `(v_1, v_l)` are tried in increasing id
/// order; the interior is then found by peeling from the back, which
/// succeeds whenever any interior order exists. Each pair tried and each
/// peeled vertex counts against `budget`.
pub fn search_extension_ordering(
    g: &Graph,
    h: &[Vertex],
    k: usize,
    budget: u64,
) -> Result<Option<Vec<Vertex>>, ReduceError> {
    let inside: BTreeSet<Vertex> = h.iter().copied().collect();
    if inside.is_empty() {
        return Err(ReduceError::EmptySubgraph);
    }
    if inside.len() < 2 {
        return Ok(None);
    }
    let a = worst_case_sizes(g, h, k);
    let outside = |v: Vertex| g.neighbors(v).iter().filter(|u| !inside.contains(u)).count();
    let mut spent = 0u64;
    let mut tick = |n: u64| {
        spent += n;
        if spent > budget {
            Err(ReduceError::SearchBudgetExceeded { budget })
        } else {
            Ok(())
        }
    };
    for &last in &inside {
        if g.degree(last) > k || outside(last) == 0 || a[&last] == 0 {
            continue;
        }
        for &first in &inside {
            if !g.has_edge(first, last) || a[&first] <= a[&last] {
                continue;
            }
            tick(1)?;
            let mut rest: BTreeSet<Vertex> = inside.clone();
            rest.remove(&first);
            rest.remove(&last);
            let mut tail = Vec::new();
            while !rest.is_empty() {
                let pick = rest.iter().rev().copied().find(|&v| {
                    let back = g.neighbors(v).iter().filter(|u| **u == first || rest.contains(u)).count();
                    back + outside(v) < k
                });
                let Some(v) = pick else { break };
                tick(1)?;
                rest.remove(&v);
                tail.push(v);
            }
            if rest.is_empty() {
                let mut order = vec![first];
                order.extend(tail.into_iter().rev());
                order.push(last);
                debug_assert!(check_extension_conditions(g, h, &order, &a, k).passes());
                return Ok(Some(order));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lone_vertex_has_no_ordering() {
        // a 3-vertex with three outside neighbors
        let g = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(search_extension_ordering(&g, &[0], 3, 100), Ok(None));
        assert_eq!(search_extension_ordering(&g, &[], 3, 100), Err(ReduceError::EmptySubgraph));
    }

    #[test]
    fn chorded_cycle_of_three_vertices() {
        // 4-cycle 0-1-2-3 with chord 0-2, vertices 1 and 3 each with one outside neighbor
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 4), (3, 5)]).unwrap();
        let order = search_extension_ordering(&g, &[0, 1, 2, 3], 3, 1000).unwrap().unwrap();
        let a = worst_case_sizes(&g, &[0, 1, 2, 3], 3);
        assert!(check_extension_conditions(&g, &[0, 1, 2, 3], &order, &a, 3).passes());
        // K4 admits none
        let k4 = Graph::complete(4);
        assert_eq!(search_extension_ordering(&k4, &[0, 1, 2, 3], 3, 1000), Ok(None));
    }

    #[test]
    fn budget_exhaustion() {
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 4), (3, 5)]).unwrap();
        assert!(matches!(
            search_extension_ordering(&g, &[0, 1, 2, 3], 3, 1),
            Err(ReduceError::SearchBudgetExceeded { .. })
        ));
    }
}
