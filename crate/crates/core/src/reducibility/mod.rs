//! Extension of partial DP-colorings into near-degenerate subgraphs.

mod ordering;
mod walks;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::cover::{Color, MatchingAssignment};
use crate::graph::{Graph, Vertex};

pub use ordering::{build_face_ordering, search_extension_ordering, Hypothesis, DEFAULT_BUDGET_ORDERINGS};
pub use walks::{
    controls_small_face, find_special_paths, is_special_path, maximal_walks, richness_at, FaceProfile, MaximalWalk,
    Richness, SpecialPath,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error("no color available for vertex {0}")]
    Infeasible(Vertex),
    #[error("vertex {0} has degree below 4")]
    DegreeTooLow(Vertex),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(Hypothesis),
    #[error("ordering search exceeded {budget} expansions")]
    SearchBudgetExceeded { budget: u64 },
    #[error("the vertex set H is empty")]
    EmptySubgraph,
    #[error("ordering does not list V(H) exactly once")]
    NotAnOrdering,
}

/// Colors of the already colored vertices; `None` means uncolored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialColoring {
    pub colors: Vec<Option<Color>>,
}

impl PartialColoring {
    pub fn uncolored(n: usize) -> Self {
        PartialColoring { colors: vec![None; n] }
    }

    pub fn get(&self, v: Vertex) -> Option<Color> {
        self.colors[v]
    }

    pub fn set(&mut self, v: Vertex, c: Color) {
        self.colors[v] = Some(c);
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    /// True when colors lie in `1..=k` and no edge joins two matched colors.
    pub fn is_valid(&self, g: &Graph, m: &MatchingAssignment, k: usize) -> bool {
        self.colors.iter().flatten().all(|&c| c >= 1 && c as usize <= k)
            && g.edges().iter().all(|&(u, v)| match (self.colors[u], self.colors[v]) {
                (Some(a), Some(b)) => m.matched(u, v, a) != Some(b),
                _ => true,
            })
    }
}

/// Residual lists `A(v)` for the vertices of `H`.
pub type ResidualColors = BTreeMap<Vertex, BTreeSet<Color>>;

/// Residual list sizes, either actual or worst-case bounds.
pub type ResidualSizes = BTreeMap<Vertex, usize>;

/// `A(v)` for each `v` in `h`: colors of `1..=k` not matched to the color of
/// a colored neighbor outside `h`.
pub fn residual_colors(
    g: &Graph,
    h: &[Vertex],
    pc: &PartialColoring,
    m: &MatchingAssignment,
    k: usize,
) -> ResidualColors {
    let inside: BTreeSet<Vertex> = h.iter().copied().collect();
    inside
        .iter()
        .map(|&v| {
            let mut a: BTreeSet<Color> = (1..=k as Color).collect();
            for &u in g.neighbors(v) {
                if inside.contains(&u) {
                    continue;
                }
                if let Some(cu) = pc.get(u) {
                    if let Some(cv) = m.matched(u, v, cu) {
                        a.remove(&cv);
                    }
                }
            }
            (v, a)
        })
        .collect()
}

pub fn sizes(a: &ResidualColors) -> ResidualSizes {
    a.iter().map(|(&v, s)| (v, s.len())).collect()
}

/// Lower bounds `k - #(neighbors outside h)` that hold for every coloring of
/// the rest of the graph.
pub fn worst_case_sizes(g: &Graph, h: &[Vertex], k: usize) -> ResidualSizes {
    let inside: BTreeSet<Vertex> = h.iter().copied().collect();
    inside
        .iter()
        .map(|&v| {
            let out = g.neighbors(v).iter().filter(|u| !inside.contains(u)).count();
            (v, k.saturating_sub(out))
        })
        .collect()
}

/// Colors `v` with the least color not blocked by its colored neighbors.
pub fn min_degree_extend(
    g: &Graph,
    v: Vertex,
    pc: &PartialColoring,
    m: &MatchingAssignment,
    k: usize,
) -> Result<PartialColoring, ReduceError> {
    let a = residual_colors(g, &[v], pc, m, k);
    let c = *a[&v].first().ok_or(ReduceError::Infeasible(v))?;
    let mut out = pc.clone();
    out.set(v, c);
    Ok(out)
}

/// Which of the three extension conditions an ordering meets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    /// The ordering lists every vertex of `H` exactly once and has length at least 2.
    pub well_formed: bool,
    /// First and last vertex adjacent, and `|A(v1)| > |A(vl)| >= 1`.
    pub first_last: bool,
    /// `d(vl) <= k` and `vl` has a neighbor outside `H`.
    pub last_vertex: bool,
    /// Interior vertices with more than `k - 1` earlier or outside neighbors.
    pub overloaded: Vec<Vertex>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Condition {
    WellFormed,
    FirstLast,
    LastVertex,
    Degenerate,
}

impl ConditionReport {
    pub fn passes(&self) -> bool {
        self.failed().is_empty()
    }

    pub fn failed(&self) -> Vec<Condition> {
        let mut out = Vec::new();
        if !self.well_formed {
            out.push(Condition::WellFormed);
        }
        if !self.first_last {
            out.push(Condition::FirstLast);
        }
        if !self.last_vertex {
            out.push(Condition::LastVertex);
        }
        if !self.overloaded.is_empty() {
            out.push(Condition::Degenerate);
        }
        out
    }
}

/// Checks an ordering of `H` against the extension conditions, with residual
/// list sizes `a` (actual or worst-case).
pub fn check_extension_conditions(
    g: &Graph,
    h: &[Vertex],
    order: &[Vertex],
    a: &ResidualSizes,
    k: usize,
) -> ConditionReport {
    let inside: BTreeSet<Vertex> = h.iter().copied().collect();
    let listed: BTreeSet<Vertex> = order.iter().copied().collect();
    let well_formed = order.len() >= 2 && listed.len() == order.len() && listed == inside;
    if order.len() < 2 {
        return ConditionReport { well_formed, first_last: false, last_vertex: false, overloaded: Vec::new() };
    }
    let first = order[0];
    let last = *order.last().unwrap();
    let size = |v: Vertex| a.get(&v).copied().unwrap_or(0);
    let first_last = g.has_edge(first, last) && size(first) > size(last) && size(last) >= 1;
    let outside = |v: Vertex| g.neighbors(v).iter().filter(|u| !inside.contains(u)).count();
    let last_vertex = g.degree(last) <= k && outside(last) >= 1;
    let mut earlier = BTreeSet::from([first]);
    let mut overloaded = Vec::new();
    for &v in &order[1..order.len() - 1] {
        let back = g.neighbors(v).iter().filter(|u| earlier.contains(u)).count();
        if back + outside(v) > k - 1 {
            overloaded.push(v);
        }
        earlier.insert(v);
    }
    ConditionReport { well_formed, first_last, last_vertex, overloaded }
}

/// Extends a coloring of `G - H` to all of `G` along `order`: the first
/// vertex takes a color whose partner at the last vertex is already blocked
/// (or has no partner), then the rest are colored greedily with least colors.
pub fn extend_coloring(
    g: &Graph,
    h: &[Vertex],
    order: &[Vertex],
    pc: &PartialColoring,
    m: &MatchingAssignment,
    k: usize,
) -> Result<PartialColoring, ReduceError> {
    let inside: BTreeSet<Vertex> = h.iter().copied().collect();
    let listed: BTreeSet<Vertex> = order.iter().copied().collect();
    if order.len() < 2 || listed != inside || listed.len() != order.len() {
        return Err(ReduceError::NotAnOrdering);
    }
    let mut out = pc.clone();
    for &v in order {
        out.colors[v] = None;
    }
    let a = residual_colors(g, h, &out, m, k);
    let (first, last) = (order[0], *order.last().unwrap());
    let avail_first = &a[&first];
    let c1 = avail_first
        .iter()
        .copied()
        .find(|&c| m.matched(first, last, c).is_none_or(|d| !a[&last].contains(&d)))
        .or_else(|| avail_first.first().copied())
        .ok_or(ReduceError::Infeasible(first))?;
    out.set(first, c1);
    for &v in &order[1..] {
        out = min_degree_extend(g, v, &out, m, k)?;
    }
    debug_assert!(out.is_valid(g, m, k));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residuals() {
        let g = Graph::path(3);
        let m = MatchingAssignment::identity(&g, 3);
        let mut pc = PartialColoring::uncolored(3);
        assert_eq!(residual_colors(&g, &[1], &pc, &m, 3)[&1].len(), 3);
        pc.set(0, 1);
        assert_eq!(residual_colors(&g, &[1], &pc, &m, 3)[&1].len(), 2);
        // two neighbors whose colors both map to color 2 at the middle vertex
        let mut m2 = MatchingAssignment::identity(&g, 3);
        m2.set_permutation(1, 2, &[1, 3, 2]);
        pc.set(0, 2);
        pc.set(2, 3);
        let a = residual_colors(&g, &[1], &pc, &m2, 3);
        assert_eq!(a[&1], BTreeSet::from([1, 3]));
    }

    #[test]
    fn least_color_extension() {
        let g = Graph::path(3);
        let m = MatchingAssignment::identity(&g, 3);
        let mut pc = PartialColoring::uncolored(3);
        pc.set(0, 1);
        pc.set(2, 2);
        assert_eq!(min_degree_extend(&g, 1, &pc, &m, 3).unwrap().get(1), Some(3));
        pc.set(2, 1);
        assert_eq!(min_degree_extend(&g, 1, &pc, &m, 3).unwrap().get(1), Some(2));
        let lone = PartialColoring::uncolored(1);
        assert_eq!(
            min_degree_extend(&Graph::empty(1), 0, &lone, &MatchingAssignment::new(), 3).unwrap().get(0),
            Some(1)
        );
    }

    #[test]
    fn edge_conditions() {
        // H = {0, 1}; vertex 1 has an outside neighbor 2
        let g = Graph::path(3);
        let a: ResidualSizes = [(0, 3), (1, 2)].into();
        let r = check_extension_conditions(&g, &[0, 1], &[0, 1], &a, 3);
        assert!(r.passes(), "{r:?}");
        let a: ResidualSizes = [(0, 2), (1, 2)].into();
        let r = check_extension_conditions(&g, &[0, 1], &[0, 1], &a, 3);
        assert_eq!(r.failed(), vec![Condition::FirstLast]);
    }
}
