//! Exact DP-k-colorability.
//!
//! Matchings on a BFS spanning tree are fixed to the identity, so a transversal
//! is a proper coloring of the tree. The search enumerates permutations on the
//! remaining edges in lexicographic order while tracking the set of tree
//! colorings that survive every chosen permutation; an empty set is a witness.

use thiserror::Error;

use crate::cover::{Color, MatchingAssignment};
use crate::graph::{Graph, Vertex};

pub const DEFAULT_BUDGET_NODES: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DpError {
    #[error("search budget of {budget} nodes exceeded")]
    SearchBudgetExceeded { budget: u64 },
    #[error("k must be at least 1")]
    ZeroColors,
}

#[derive(Debug, Clone, Copy)]
pub struct DpOptions {
    pub budget_nodes: u64,
    /// Restrict to the k-core and accept outright when `k > degeneracy`.
    pub reductions: bool,
}

impl Default for DpOptions {
    fn default() -> Self {
        DpOptions { budget_nodes: DEFAULT_BUDGET_NODES, reductions: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpOutcome {
    pub colorable: bool,
    /// A matching assignment on all of `g` with lists `1..=k` and no transversal.
    pub witness: Option<MatchingAssignment>,
    pub nodes: u64,
}

pub fn is_dp_k_colorable(g: &Graph, k: usize, opts: &DpOptions) -> Result<DpOutcome, DpError> {
    if k == 0 {
        return Err(DpError::ZeroColors);
    }
    let mut nodes = 0;
    let core: Vec<Vertex> = if opts.reductions {
        if k > g.degeneracy() {
            return Ok(DpOutcome { colorable: true, witness: None, nodes });
        }
        g.k_core(k)
    } else {
        (0..g.n()).collect()
    };
    let (h, map) = g.induced(&core);
    for comp in h.components() {
        let (c, cmap) = h.induced(&comp);
        let mut search = Search::new(&c, k, opts.budget_nodes.saturating_sub(nodes));
        let found = search.run();
        nodes += search.nodes;
        match found? {
            None => {}
            Some(local) => {
                let mut witness = MatchingAssignment::identity(g, k);
                for (u, v) in local.edges() {
                    let (gu, gv) = (map[cmap[u]], map[cmap[v]]);
                    witness.set(gu, gv, local.pairs(u, v));
                }
                return Ok(DpOutcome { colorable: false, witness: Some(witness), nodes });
            }
        }
    }
    Ok(DpOutcome { colorable: true, witness: None, nodes })
}

/// Least `k` with `g` DP-k-colorable.
pub fn chi_dp(g: &Graph, opts: &DpOptions) -> Result<usize, DpError> {
    chi_dp_with_witness(g, opts).map(|(k, _)| k)
}

/// `chi_dp` together with a witness for `k - 1` (none when `k <= 1`).
pub fn chi_dp_with_witness(g: &Graph, opts: &DpOptions) -> Result<(usize, Option<MatchingAssignment>), DpError> {
    if g.n() == 0 {
        return Ok((0, None));
    }
    let mut last = None;
    let mut budget = opts.budget_nodes;
    for k in 1.. {
        let o = is_dp_k_colorable(g, k, &DpOptions { budget_nodes: budget, ..*opts })?;
        budget = budget.saturating_sub(o.nodes);
        if o.colorable {
            return Ok((k, last));
        }
        last = o.witness;
    }
    unreachable!()
}

/// All permutations of `1..=k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<Color>> {
    let mut cur: Vec<Color> = (1..=k as Color).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else { return out };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

struct Search {
    k: usize,
    non_tree: Vec<(Vertex, Vertex)>,
    perms: Vec<Vec<u8>>,
    // conj[s][p] = index of s p s^-1
    conj: Vec<Vec<usize>>,
    colorings: Vec<Vec<u8>>,
    chosen: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search {
    fn new(g: &Graph, k: usize, budget: u64) -> Self {
        let tree = g.bfs_tree(0);
        let non_tree: Vec<_> = g.edges().iter().copied().filter(|e| tree.binary_search(e).is_err()).collect();
        let perms: Vec<Vec<u8>> =
            permutations(k).into_iter().map(|p| p.into_iter().map(|c| c as u8 - 1).collect()).collect();
        let index = |p: &[u8]| perms.iter().position(|q| q == p).unwrap();
        let conj = perms
            .iter()
            .map(|s| {
                let mut inv = vec![0u8; k];
                for (a, &b) in s.iter().enumerate() {
                    inv[b as usize] = a as u8;
                }
                perms
                    .iter()
                    .map(|p| {
                        let q: Vec<u8> = (0..k).map(|a| s[p[inv[a] as usize] as usize]).collect();
                        index(&q)
                    })
                    .collect()
            })
            .collect();
        Search { k, non_tree, conj, colorings: tree_colorings(g, k), perms, chosen: Vec::new(), nodes: 0, budget }
    }

    /// Returns the lexicographically least witness on this component.
    fn run(&mut self) -> Result<Option<MatchingAssignment>, DpError> {
        let all: Vec<u32> = (0..self.colorings.len() as u32).collect();
        if self.dfs(&all)? {
            let mut m = MatchingAssignment::new();
            for (i, &(u, v)) in self.non_tree.iter().enumerate() {
                let p = self.chosen.get(i).map_or(0, |&p| p);
                let perm: Vec<Color> = self.perms[p].iter().map(|&c| c as Color + 1).collect();
                m.set_permutation(u, v, &perm);
            }
            Ok(Some(m))
        } else {
            Ok(None)
        }
    }

    fn dfs(&mut self, alive: &[u32]) -> Result<bool, DpError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(DpError::SearchBudgetExceeded { budget: self.budget });
        }
        if alive.is_empty() {
            return Ok(true);
        }
        let depth = self.chosen.len();
        if depth == self.non_tree.len() || self.kill_bound(alive, depth) < alive.len() {
            return Ok(false);
        }
        let (u, v) = self.non_tree[depth];
        let stabilizers: Vec<usize> =
            (0..self.perms.len()).filter(|&s| self.chosen.iter().all(|&p| self.conj[s][p] == p)).collect();
        for p in 0..self.perms.len() {
            if stabilizers.iter().any(|&s| self.conj[s][p] < p) {
                continue;
            }
            let perm = &self.perms[p];
            let next: Vec<u32> = alive
                .iter()
                .copied()
                .filter(|&i| {
                    let c = &self.colorings[i as usize];
                    perm[c[u] as usize] != c[v]
                })
                .collect();
            self.chosen.push(p);
            if self.dfs(&next)? {
                return Ok(true);
            }
            self.chosen.pop();
        }
        Ok(false)
    }

    // Upper bound on how many alive colorings the remaining edges can kill.
    fn kill_bound(&self, alive: &[u32], depth: usize) -> usize {
        let k = self.k;
        let mut total = 0;
        let mut counts = vec![0usize; k * k];
        for &(u, v) in &self.non_tree[depth..] {
            counts.iter_mut().for_each(|c| *c = 0);
            for &i in alive {
                let c = &self.colorings[i as usize];
                counts[c[u] as usize * k + c[v] as usize] += 1;
            }
            let rows: usize = (0..k).map(|a| (0..k).map(|b| counts[a * k + b]).max().unwrap()).sum();
            let cols: usize = (0..k).map(|b| (0..k).map(|a| counts[a * k + b]).max().unwrap()).sum();
            total += rows.min(cols);
            if total >= alive.len() {
                break;
            }
        }
        total
    }
}

// Proper colorings of the BFS tree from vertex 0 (colors 0-based).
fn tree_colorings(g: &Graph, k: usize) -> Vec<Vec<u8>> {
    let parents = g.bfs_parents(0);
    let mut order = vec![0];
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        for &w in g.neighbors(u) {
            if parents[w] == Some(u) {
                order.push(w);
            }
        }
        i += 1;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u8; g.n()];
    fn rec(
        pos: usize,
        order: &[Vertex],
        parents: &[Option<Vertex>],
        k: usize,
        cur: &mut Vec<u8>,
        out: &mut Vec<Vec<u8>>,
    ) {
        if pos == order.len() {
            out.push(cur.clone());
            return;
        }
        let v = order[pos];
        for c in 0..k as u8 {
            if parents[v].is_some_and(|p| cur[p] == c) {
                continue;
            }
            cur[v] = c;
            rec(pos + 1, order, parents, k, cur, out);
        }
    }
    rec(0, &order, &parents, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{build_cover, find_transversal, ListAssignment};

    #[test]
    fn lexicographic_permutations() {
        assert_eq!(
            permutations(3),
            vec![vec![1, 2, 3], vec![1, 3, 2], vec![2, 1, 3], vec![2, 3, 1], vec![3, 1, 2], vec![3, 2, 1]]
        );
    }

    #[test]
    fn four_cycle_twist() {
        let g = Graph::cycle(4);
        let out = is_dp_k_colorable(&g, 2, &DpOptions::default()).unwrap();
        assert!(!out.colorable);
        let w = out.witness.unwrap();
        assert_eq!(w.permutation(2, 3, 2), Some(vec![2, 1]));
        for e in [(0, 1), (0, 3), (1, 2)] {
            assert_eq!(w.permutation(e.0, e.1, 2), Some(vec![1, 2]));
        }
        let cover = build_cover(&g, &ListAssignment::uniform(4, 2), &w).unwrap();
        assert!(find_transversal(&cover).is_none());
        assert!(is_dp_k_colorable(&g, 3, &DpOptions::default()).unwrap().colorable);
    }

    #[test]
    fn small_chromatic_numbers() {
        let o = DpOptions::default();
        assert_eq!(chi_dp(&Graph::empty(1), &o), Ok(1));
        assert_eq!(chi_dp(&Graph::path(2), &o), Ok(2));
        assert_eq!(chi_dp(&Graph::cycle(4), &o), Ok(3));
        assert_eq!(chi_dp(&Graph::complete(4), &o), Ok(4));
        let raw = DpOptions { reductions: false, ..o };
        assert_eq!(chi_dp(&Graph::cycle(5), &raw), Ok(3));
        assert_eq!(chi_dp(&Graph::complete(4), &raw), Ok(4));
    }

    #[test]
    fn budget_is_reported() {
        let o = DpOptions { budget_nodes: 1, reductions: false };
        assert_eq!(is_dp_k_colorable(&Graph::complete(4), 3, &o), Err(DpError::SearchBudgetExceeded { budget: 1 }));
    }
}
