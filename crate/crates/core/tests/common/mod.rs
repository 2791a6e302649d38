//! Shared test support: brute-force oracles, small graph enumeration and the
//! seeded class corpus.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use dplab::cover::{Color, MatchingAssignment};
use dplab::cycles::{in_class, GraphClass};
use dplab::dp::permutations;
use dplab::embedding::PlaneGraph;
use dplab::gadget::{Ear, Ring};
use dplab::graph::{Graph, Vertex};
use dplab::io::{parse_planar_code, write_planar_code};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

/// True when some color choice `c` avoids every matched pair of `m`.
pub fn brute_transversal(g: &Graph, m: &MatchingAssignment, k: usize) -> bool {
    let n = g.n();
    let mut c = vec![1 as Color; n];
    loop {
        if g.edges().iter().all(|&(u, v)| m.matched(u, v, c[u]) != Some(c[v])) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            if (c[i] as usize) < k {
                c[i] += 1;
                break;
            }
            c[i] = 1;
            i += 1;
        }
    }
}

/// DP-k-colorability by enumerating a permutation on every edge, with no
/// normalization, reductions or pruning.
pub fn raw_dp_colorable(g: &Graph, k: usize) -> bool {
    let perms = permutations(k);
    let edges = g.edges().to_vec();
    let mut idx = vec![0usize; edges.len()];
    loop {
        let mut m = MatchingAssignment::new();
        for (e, &(u, v)) in edges.iter().enumerate() {
            m.set_permutation(u, v, &perms[idx[e]]);
        }
        if !brute_transversal(g, &m, k) {
            return false;
        }
        let mut i = 0;
        loop {
            if i == edges.len() {
                return true;
            }
            idx[i] += 1;
            if idx[i] < perms.len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

pub fn raw_chi_dp(g: &Graph) -> usize {
    if g.n() == 0 {
        return 0;
    }
    (1..).find(|&k| raw_dp_colorable(g, k)).unwrap()
}

/// Chromatic number by trying every coloring with `k` colors.
pub fn brute_chromatic(g: &Graph) -> usize {
    if g.n() == 0 {
        return 0;
    }
    (1..=g.n())
        .find(|&k| {
            let m = MatchingAssignment::identity(g, k);
            brute_transversal(g, &m, k)
        })
        .unwrap()
}

/// Lengths of all cycles, by extending simple paths from their least vertex.
pub fn naive_cycle_lengths(g: &Graph) -> BTreeSet<usize> {
    fn walk(g: &Graph, start: Vertex, v: Vertex, on: &mut Vec<bool>, len: usize, out: &mut BTreeSet<usize>) {
        for &w in g.neighbors(v) {
            if w == start && len >= 3 {
                out.insert(len);
            } else if w > start && !on[w] {
                on[w] = true;
                walk(g, start, w, on, len + 1, out);
                on[w] = false;
            }
        }
    }
    let mut out = BTreeSet::new();
    for s in 0..g.n() {
        let mut on = vec![false; g.n()];
        on[s] = true;
        walk(g, s, s, &mut on, 1, &mut out);
    }
    out
}

fn edge_index(n: usize) -> Vec<(Vertex, Vertex)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn graph_from_mask(n: usize, pairs: &[(Vertex, Vertex)], mask: u64) -> Graph {
    Graph::new(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e)).unwrap()
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(p: &mut Vec<usize>, i: usize, out: &mut Vec<Vec<usize>>) {
        if i == p.len() {
            out.push(p.clone());
            return;
        }
        for j in i..p.len() {
            p.swap(i, j);
            rec(p, i + 1, out);
            p.swap(i, j);
        }
    }
    rec(&mut p, 0, &mut out);
    out
}

/// One representative of every isomorphism class of graphs on `n <= 6` vertices.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 6);
    let pairs = edge_index(n);
    let pos: BTreeMap<(Vertex, Vertex), usize> = pairs.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let perms = all_perms(n);
    let images: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            pairs
                .iter()
                .map(|&(u, v)| {
                    let (a, b) = (p[u].min(p[v]), p[u].max(p[v]));
                    pos[&(a, b)]
                })
                .collect()
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let canon = images
            .iter()
            .map(|img| img.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &j)| 1u64 << j).sum::<u64>())
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(graph_from_mask(n, &pairs, mask));
        }
    }
    out
}

fn tree_code(g: &Graph, v: Vertex, parent: Option<Vertex>) -> String {
    let mut kids: Vec<String> =
        g.neighbors(v).iter().filter(|&&w| Some(w) != parent).map(|&w| tree_code(g, w, Some(v))).collect();
    kids.sort();
    format!("({})", kids.concat())
}

fn tree_centers(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = n;
    let mut layer: Vec<Vertex> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let mut removed = vec![false; n];
    while alive > 2 {
        let mut next = Vec::new();
        for &v in &layer {
            removed[v] = true;
            alive -= 1;
            for &w in g.neighbors(v) {
                if !removed[w] {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    (0..n).filter(|&v| !removed[v]).collect()
}

/// Non-isomorphic trees on `n` vertices, from Prüfer sequences.
pub fn all_trees(n: usize) -> Vec<Graph> {
    if n <= 2 {
        return vec![Graph::path(n)];
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        let g = prufer_tree(n, &seq);
        let code = tree_centers(&g).iter().map(|&c| tree_code(&g, c, None)).min().unwrap();
        if seen.insert(code) {
            out.push(g);
        }
        let mut i = 0;
        loop {
            if i == seq.len() {
                return out;
            }
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
    }
}

pub fn prufer_tree(n: usize, seq: &[usize]) -> Graph {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::new();
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<Vertex> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::new(n, edges).unwrap()
}

pub fn random_tree(rng: &mut StdRng, n: usize) -> Vec<(Vertex, Vertex)> {
    (1..n).map(|v| (rng.gen_range(0..v), v)).collect()
}

/// A random connected graph in `class`: a random tree grown by random edges
/// while planarity and class membership hold, stopping after a random number
/// of insertions (half of the graphs are grown until maximal).
pub fn random_class_graph(rng: &mut StdRng, n: usize, class: GraphClass) -> Graph {
    let mut edges = random_tree(rng, n);
    let mut candidates: Vec<(Vertex, Vertex)> =
        edge_index(n).into_iter().filter(|&(u, v)| !edges.contains(&(u, v)) && !edges.contains(&(v, u))).collect();
    candidates.shuffle(rng);
    let limit = if rng.gen_bool(0.5) { usize::MAX } else { rng.gen_range(0..=n) };
    let mut added = 0;
    for e in candidates {
        if added >= limit {
            break;
        }
        edges.push(e);
        let g = Graph::new(n, edges.iter().copied()).unwrap();
        if in_class(&g, class) {
            added += 1;
        } else {
            edges.pop();
        }
    }
    Graph::new(n, edges).unwrap()
}

/// The sweep corpus: for every class and every `n` in `3..=max_n`, `per`
/// random class graphs, embedded and round-tripped through planar_code.
pub fn class_corpus(seed: u64, per: usize, max_n: usize) -> Vec<PlaneGraph> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut embedded = Vec::new();
    for class in GraphClass::ALL {
        for n in 3..=max_n {
            for _ in 0..per {
                let g = random_class_graph(&mut rng, n, class);
                embedded.push(PlaneGraph::planar(g).expect("class graphs are planar"));
            }
        }
    }
    let bytes = write_planar_code(&embedded);
    parse_planar_code(&bytes).expect("planar_code round trip")
}

pub fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    Graph::new(n, edge_index(n).into_iter().filter(|_| rng.gen_bool(p))).unwrap()
}

pub fn random_assignment(rng: &mut StdRng, g: &Graph, k: usize) -> MatchingAssignment {
    let perms = permutations(k);
    let mut m = MatchingAssignment::new();
    for &(u, v) in g.edges() {
        m.set_permutation(u, v, &perms[rng.gen_range(0..perms.len())]);
    }
    m
}

/// A random in-class ring: a 9⁺-cycle with square and pentagon ears on
/// random edges and all degrees at least 3 apart from padding leaves.
pub fn random_girth_four_ring(rng: &mut StdRng) -> Ring {
    let d = rng.gen_range(9..=14);
    let ears: Vec<Option<Ear>> = (0..d)
        .map(|_| match rng.gen_range(0..3) {
            0 => None,
            1 => Some(Ear::Square { near: rng.gen_range(3..=4), far: rng.gen_range(3..=4) }),
            _ => Some(Ear::Pentagon { degrees: [rng.gen_range(3..=4), rng.gen_range(3..=4), rng.gen_range(3..=4)] }),
        })
        .collect();
    let degrees: Vec<usize> = (0..d)
        .map(|i| {
            let forced = 2 + ears[i].is_some() as usize + ears[(i + d - 1) % d].is_some() as usize;
            forced.max(3) + rng.gen_range(0..=1)
        })
        .collect();
    let mut ring = Ring::new("random_ring", &degrees);
    for (i, e) in ears.into_iter().enumerate() {
        if let Some(e) = e {
            ring = ring.ear(i, e);
        }
    }
    ring
}
