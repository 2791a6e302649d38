//! Planarity testing with embedding output.
//!
//! Each biconnected block is embedded by repeatedly routing a path of some
//! fragment through a face that contains all of the fragment's attachment
//! vertices (the face-splitting method of Demoucron, Malgrange and
//! Pertuiset). Block rotations are concatenated at cut vertices.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::embedding::RotationSystem;
use crate::graph::{Graph, Vertex};

/// Returns a genus-0 rotation system for `g`, or `None` if `g` is not planar.
pub fn planar_embedding(g: &Graph) -> Option<RotationSystem> {
    // Euler bound: a simple planar graph with n >= 3 has at most 3n - 6 edges.
    if g.n() >= 3 && g.m() > 3 * g.n() - 6 {
        return None;
    }
    let mut rot: Vec<Vec<Vertex>> = vec![Vec::new(); g.n()];
    for block in biconnected_blocks(g) {
        let block_rot = embed_block(&block)?;
        for (v, r) in block_rot {
            rot[v].extend(r);
        }
    }
    Some(RotationSystem::new(rot))
}

pub fn is_planar(g: &Graph) -> bool {
    planar_embedding(g).is_some()
}

/// Edge sets of the biconnected blocks (bridges are blocks of one edge).
fn biconnected_blocks(g: &Graph) -> Vec<Vec<(Vertex, Vertex)>> {
    struct State<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(Vertex, Vertex)>,
        blocks: Vec<Vec<(Vertex, Vertex)>>,
    }
    fn dfs(st: &mut State, u: Vertex, parent: Option<Vertex>) {
        st.time += 1;
        st.disc[u] = st.time;
        st.low[u] = st.time;
        for &w in st.g.neighbors(u) {
            if st.disc[w] == 0 {
                st.stack.push((u, w));
                dfs(st, w, Some(u));
                st.low[u] = st.low[u].min(st.low[w]);
                if st.low[w] >= st.disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = st.stack.pop() {
                        block.push(e);
                        if e == (u, w) {
                            break;
                        }
                    }
                    st.blocks.push(block);
                }
            } else if Some(w) != parent && st.disc[w] < st.disc[u] {
                st.stack.push((u, w));
                st.low[u] = st.low[u].min(st.disc[w]);
            }
        }
    }
    let mut st = State { g, disc: vec![0; g.n()], low: vec![0; g.n()], time: 0, stack: Vec::new(), blocks: Vec::new() };
    for v in 0..g.n() {
        if st.disc[v] == 0 {
            dfs(&mut st, v, None);
        }
    }
    st.blocks
}

fn embed_block(block: &[(Vertex, Vertex)]) -> Option<HashMap<Vertex, Vec<Vertex>>> {
    let mut adj: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
    for &(u, v) in block {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    for list in adj.values_mut() {
        list.sort_unstable();
    }
    if block.len() == 1 {
        return Some(adj);
    }
    let mut verts: Vec<Vertex> = adj.keys().copied().collect();
    verts.sort_unstable();

    let cycle = find_cycle(&adj, verts[0]);
    let mut faces: Vec<Vec<Vertex>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];
    let mut emb_v: HashSet<Vertex> = cycle.iter().copied().collect();
    let mut emb_e: HashSet<(Vertex, Vertex)> = HashSet::new();
    for i in 0..cycle.len() {
        emb_e.insert(key(cycle[i], cycle[(i + 1) % cycle.len()]));
    }

    while emb_e.len() < block.len() {
        let fragments = fragments(&adj, &verts, &emb_v, &emb_e);
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, face)| frag.attachments.iter().all(|a| face.contains(a)))
                .map(|(i, _)| i)
                .collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("at least one fragment while edges remain");
        let path = fragment_path(&adj, &fragments[fi]);
        let face = faces.swap_remove(face_idx);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
        for w in path.windows(2) {
            emb_e.insert(key(w[0], w[1]));
        }
        emb_v.extend(path.iter().copied());
    }

    let mut succ: HashMap<Vertex, HashMap<Vertex, Vertex>> = HashMap::new();
    for face in &faces {
        let l = face.len();
        for i in 0..l {
            let a = face[(i + l - 1) % l];
            let b = face[i];
            let c = face[(i + 1) % l];
            succ.entry(b).or_default().insert(a, c);
        }
    }
    let mut out = HashMap::new();
    for &v in &verts {
        let s = &succ[&v];
        let start = adj[&v][0];
        let mut r = vec![start];
        let mut cur = s[&start];
        while cur != start {
            r.push(cur);
            cur = s[&cur];
        }
        debug_assert_eq!(r.len(), adj[&v].len());
        out.insert(v, r);
    }
    Some(out)
}

fn key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    (u.min(v), u.max(v))
}

fn find_cycle(adj: &HashMap<Vertex, Vec<Vertex>>, root: Vertex) -> Vec<Vertex> {
    // iterative DFS until the first back edge
    let mut parent: HashMap<Vertex, Vertex> = HashMap::new();
    let mut depth: HashMap<Vertex, usize> = HashMap::new();
    let mut stack = vec![(root, 0usize)];
    depth.insert(root, 0);
    while let Some((u, idx)) = stack.pop() {
        let nbrs = &adj[&u];
        if idx >= nbrs.len() {
            continue;
        }
        stack.push((u, idx + 1));
        let w = nbrs[idx];
        if parent.get(&u) == Some(&w) {
            continue;
        }
        if let Some(&dw) = depth.get(&w) {
            if dw < depth[&u] {
                let mut cyc = vec![u];
                let mut x = u;
                while x != w {
                    x = parent[&x];
                    cyc.push(x);
                }
                return cyc;
            }
            continue;
        }
        parent.insert(w, u);
        depth.insert(w, depth[&u] + 1);
        stack.push((w, 0));
    }
    unreachable!("a biconnected block with at least two edges contains a cycle")
}

struct Fragment {
    attachments: Vec<Vertex>,
    /// Interior vertices; empty for a single-edge fragment.
    interior: Vec<Vertex>,
}

fn fragments(
    adj: &HashMap<Vertex, Vec<Vertex>>,
    verts: &[Vertex],
    emb_v: &HashSet<Vertex>,
    emb_e: &HashSet<(Vertex, Vertex)>,
) -> Vec<Fragment> {
    let mut out = Vec::new();
    for &u in verts {
        if !emb_v.contains(&u) {
            continue;
        }
        for &w in &adj[&u] {
            if u < w && emb_v.contains(&w) && !emb_e.contains(&key(u, w)) {
                out.push(Fragment { attachments: vec![u, w], interior: Vec::new() });
            }
        }
    }
    let mut seen: HashSet<Vertex> = HashSet::new();
    for &s in verts {
        if emb_v.contains(&s) || seen.contains(&s) {
            continue;
        }
        let mut interior = vec![s];
        let mut att: Vec<Vertex> = Vec::new();
        seen.insert(s);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[&u] {
                if emb_v.contains(&w) {
                    if !att.contains(&w) {
                        att.push(w);
                    }
                } else if seen.insert(w) {
                    interior.push(w);
                    queue.push_back(w);
                }
            }
        }
        att.sort_unstable();
        out.push(Fragment { attachments: att, interior });
    }
    out
}

fn fragment_path(adj: &HashMap<Vertex, Vec<Vertex>>, frag: &Fragment) -> Vec<Vertex> {
    if frag.interior.is_empty() {
        return frag.attachments.clone();
    }
    let a = frag.attachments[0];
    let b = frag.attachments[1];
    let inside: HashSet<Vertex> = frag.interior.iter().copied().collect();
    let mut prev: HashMap<Vertex, Vertex> = HashMap::new();
    let mut queue = VecDeque::new();
    for &x in &adj[&a] {
        if inside.contains(&x) && !prev.contains_key(&x) {
            prev.insert(x, a);
            queue.push_back(x);
        }
    }
    while let Some(x) = queue.pop_front() {
        if adj[&x].contains(&b) {
            let mut path = vec![b, x];
            let mut y = x;
            while prev[&y] != a {
                y = prev[&y];
                path.push(y);
            }
            path.push(a);
            path.reverse();
            return path;
        }
        for &w in &adj[&x] {
            if inside.contains(&w) && !prev.contains_key(&w) {
                prev.insert(w, x);
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragment interior is connected and touches both attachments")
}

/// Splits an oriented face along `path` (whose ends lie on the face).
fn split_face(face: &[Vertex], path: &[Vertex]) -> (Vec<Vertex>, Vec<Vertex>) {
    let l = face.len();
    let a = path[0];
    let b = *path.last().unwrap();
    let i = face.iter().position(|&x| x == a).unwrap();
    let j = face.iter().position(|&x| x == b).unwrap();
    let inner = &path[1..path.len() - 1];
    let mut f1 = Vec::new();
    let mut k = i;
    loop {
        f1.push(face[k]);
        if k == j {
            break;
        }
        k = (k + 1) % l;
    }
    f1.extend(inner.iter().rev());
    let mut f2 = Vec::new();
    let mut k = j;
    loop {
        f2.push(face[k]);
        if k == i {
            break;
        }
        k = (k + 1) % l;
    }
    f2.extend(inner.iter());
    (f1, f2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::PlaneGraph;

    fn k33() -> Graph {
        Graph::new(6, (0..3).flat_map(|u| (3..6).map(move |v| (u, v)))).unwrap()
    }

    #[test]
    fn kuratowski_graphs_rejected() {
        assert!(!is_planar(&Graph::complete(5)));
        assert!(!is_planar(&k33()));
        // subdivided K3,3
        let mut edges: Vec<_> = k33().edges().to_vec();
        edges.retain(|&e| e != (0, 3));
        edges.push((0, 6));
        edges.push((6, 3));
        assert!(!is_planar(&Graph::new(7, edges).unwrap()));
    }

    #[test]
    fn planar_graphs_embedded() {
        for g in [
            Graph::complete(4),
            Graph::cube(),
            Graph::cycle(7),
            Graph::path(5),
            Graph::empty(3),
            // bowtie: two triangles sharing a vertex
            Graph::new(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap(),
            // K5 minus an edge
            Graph::new(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]).unwrap(),
        ] {
            let p = PlaneGraph::planar(g.clone()).unwrap_or_else(|| panic!("{g:?} is planar"));
            assert_eq!(p.faces().iter().map(|f| f.len()).sum::<usize>(), 2 * g.m());
        }
    }

    #[test]
    fn octahedron_faces_are_triangles() {
        // K6 minus a perfect matching
        let edges = (0..6usize).flat_map(|u| (u + 1..6).map(move |v| (u, v))).filter(|&(u, v)| v != u + 3);
        let p = PlaneGraph::planar(Graph::new(6, edges).unwrap()).unwrap();
        assert_eq!(p.faces().len(), 8);
        assert!(p.faces().iter().all(|f| f.len() == 3));
    }
}
