//! Text and binary graph formats.
//!
//! * edge list: first line `n m`, then `m` lines `u v` (0-based);
//! * rotation: one line `v: a b c ...` per vertex giving the cyclic order;
//! * planar_code: optional `>>planar_code<<` header, then per graph one byte
//!   `n` followed by each vertex's rotation as 1-based neighbor bytes, each
//!   list terminated by `0`;
//! * gadget fixtures: see [`Fixture`].
//!
//! Blank lines and lines starting with `#` are ignored in the text formats.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::embedding::{EmbeddingError, PlaneGraph, RotationSystem};
use crate::graph::{Graph, GraphError, Vertex};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("byte {offset}: {msg}")]
    Byte { offset: usize, msg: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

fn line_err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Line { line, msg: msg.into() }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T, ParseError> {
    tok.parse().map_err(|_| line_err(line, format!("expected a non-negative integer, found {tok:?}")))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| line_err(1, "missing header `n m`"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(line_err(hl, "header must be `n m`"));
    }
    let n: usize = parse_num(toks[0], hl)?;
    let m: usize = parse_num(toks[1], hl)?;
    let mut edges = Vec::with_capacity(m);
    let mut last_line = hl;
    for (ln, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(line_err(ln, "edge line must be `u v`"));
        }
        edges.push((parse_num(toks[0], ln)?, parse_num(toks[1], ln)?));
        last_line = ln;
    }
    if edges.len() != m {
        return Err(line_err(last_line, format!("header announces {m} edges, found {}", edges.len())));
    }
    Graph::new(n, edges).map_err(|source| ParseError::Graph { line: last_line, source })
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

/// Parses rotation text into a validated plane graph. Vertices not listed
/// are isolated; the vertex count is one more than the largest id seen.
pub fn parse_rotation(text: &str) -> Result<PlaneGraph, ParseError> {
    let mut rows: BTreeMap<Vertex, (usize, Vec<Vertex>)> = BTreeMap::new();
    let mut max_id = None;
    for (ln, l) in content_lines(text) {
        let (head, tail) = l.split_once(':').ok_or_else(|| line_err(ln, "expected `v: a b c ...`"))?;
        let v: Vertex = parse_num(head.trim(), ln)?;
        let nbrs: Vec<Vertex> = tail.split_whitespace().map(|t| parse_num(t, ln)).collect::<Result<_, _>>()?;
        max_id = nbrs.iter().copied().chain([v]).max().max(max_id);
        if rows.insert(v, (ln, nbrs)).is_some() {
            return Err(line_err(ln, format!("vertex {v} listed twice")));
        }
    }
    let n = max_id.map_or(0, |m| m + 1);
    let mut rot = vec![Vec::new(); n];
    let mut edges = Vec::new();
    for (&v, (ln, nbrs)) in &rows {
        for &w in nbrs {
            if w == v {
                return Err(line_err(*ln, format!("loop at vertex {v}")));
            }
            if v < w {
                edges.push((v, w));
            }
        }
        rot[v] = nbrs.clone();
    }
    let g = Graph::new(n, edges).map_err(|source| ParseError::Graph { line: 0, source })?;
    Ok(PlaneGraph::new(g, RotationSystem::new(rot))?)
}

pub fn write_rotation(p: &PlaneGraph) -> String {
    let mut s = String::new();
    for (v, r) in p.rotation().as_slice().iter().enumerate() {
        let _ = write!(s, "{v}:");
        for w in r {
            let _ = write!(s, " {w}");
        }
        s.push('\n');
    }
    s
}

const PLANAR_CODE_HEADERS: [&[u8]; 2] = [b">>planar_code<<", b">>planar_code le<<"];

/// Reads every graph of a planar_code stream.
pub fn parse_planar_code(bytes: &[u8]) -> Result<Vec<PlaneGraph>, ParseError> {
    let mut pos = 0;
    for h in PLANAR_CODE_HEADERS {
        if bytes.starts_with(h) {
            pos = h.len();
            break;
        }
    }
    let mut out = Vec::new();
    while pos < bytes.len() {
        let start = pos;
        let n = bytes[pos] as usize;
        pos += 1;
        let mut rot = vec![Vec::new(); n];
        for (v, r) in rot.iter_mut().enumerate() {
            loop {
                let b = *bytes.get(pos).ok_or_else(|| ParseError::Byte {
                    offset: pos,
                    msg: format!("truncated rotation of vertex {} in graph at byte {start}", v + 1),
                })?;
                pos += 1;
                if b == 0 {
                    break;
                }
                if b as usize > n {
                    return Err(ParseError::Byte {
                        offset: pos - 1,
                        msg: format!("neighbor {b} exceeds vertex count {n}"),
                    });
                }
                r.push(b as usize - 1);
            }
        }
        let mut edges = Vec::new();
        for (v, r) in rot.iter().enumerate() {
            for &w in r {
                if v < w {
                    edges.push((v, w));
                }
            }
        }
        let g = Graph::new(n, edges).map_err(|e| ParseError::Byte { offset: start, msg: e.to_string() })?;
        let p = PlaneGraph::new(g, RotationSystem::new(rot))
            .map_err(|e| ParseError::Byte { offset: start, msg: e.to_string() })?;
        out.push(p);
    }
    Ok(out)
}

/// Writes graphs as planar_code with the header. Panics if a graph has more
/// than 255 vertices.
pub fn write_planar_code<'a>(graphs: impl IntoIterator<Item = &'a PlaneGraph>) -> Vec<u8> {
    let mut out = PLANAR_CODE_HEADERS[0].to_vec();
    for p in graphs {
        let n = p.graph().n();
        assert!(n <= 255, "planar_code stores at most 255 vertices");
        out.push(n as u8);
        for r in p.rotation().as_slice() {
            out.extend(r.iter().map(|&w| (w + 1) as u8));
            out.push(0);
        }
    }
    out
}

/// A named gadget: a graph (optionally embedded), a vertex subset `H`, an
/// optional expected extension ordering and an optional designated face.
///
/// Grammar (keys start in column 0; block bodies are indented):
///
/// ```text
/// name: <identifier>
/// k: <integer>                  # default 3
/// vertices: <name> ...          # optional fixed vertex order
/// edges:                        # block of `a b` lines
/// rotation:                     # alternative block of `a: b c d` lines
/// coords:                       # optional block of `a: x y` (straight-line drawing)
/// h: <name> ...
/// order: <name> ...
/// face: <name> ...              # cyclic vertex sequence of a face
/// ```
///
/// Vertex names are arbitrary tokens; ids are assigned by first appearance
/// unless `vertices:` is given.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub k: usize,
    pub names: Vec<String>,
    pub graph: Graph,
    pub plane: Option<PlaneGraph>,
    pub h: Vec<Vertex>,
    pub order: Option<Vec<Vertex>>,
    pub face: Option<Vec<Vertex>>,
}

impl Fixture {
    pub fn id(&self, name: &str) -> Option<Vertex> {
        self.names.iter().position(|n| n == name)
    }

    pub fn name_of(&self, v: Vertex) -> &str {
        &self.names[v]
    }
}

pub fn parse_fixture(text: &str) -> Result<Fixture, ParseError> {
    let mut name = String::new();
    let mut k = 3;
    let mut ids: HashMap<String, Vertex> = HashMap::new();
    let mut names: Vec<String> = Vec::new();
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut rotation: Vec<(Vertex, Vec<Vertex>)> = Vec::new();
    let mut coords: Vec<(Vertex, (f64, f64))> = Vec::new();
    let mut h_names: Vec<(usize, String)> = Vec::new();
    let mut order_names: Option<Vec<(usize, String)>> = None;
    let mut face_names: Option<Vec<(usize, String)>> = None;
    let mut block: Option<String> = None;

    let intern = |s: &str, ids: &mut HashMap<String, Vertex>, names: &mut Vec<String>| -> Vertex {
        *ids.entry(s.to_string()).or_insert_with(|| {
            names.push(s.to_string());
            names.len() - 1
        })
    };

    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let indented = raw.starts_with(' ') || raw.starts_with('\t');
        if indented {
            let b = block.as_deref().ok_or_else(|| line_err(ln, "indented line outside a block"))?;
            match b {
                "edges" => {
                    let t: Vec<&str> = trimmed.split_whitespace().collect();
                    if t.len() != 2 {
                        return Err(line_err(ln, "edge line must be `a b`"));
                    }
                    let u = intern(t[0], &mut ids, &mut names);
                    let v = intern(t[1], &mut ids, &mut names);
                    edges.push((u, v));
                }
                "rotation" => {
                    let (head, tail) = trimmed.split_once(':').ok_or_else(|| line_err(ln, "expected `a: b c ...`"))?;
                    let v = intern(head.trim(), &mut ids, &mut names);
                    let r: Vec<Vertex> = tail.split_whitespace().map(|t| intern(t, &mut ids, &mut names)).collect();
                    rotation.push((v, r));
                }
                "coords" => {
                    let (head, tail) = trimmed.split_once(':').ok_or_else(|| line_err(ln, "expected `a: x y`"))?;
                    let v = intern(head.trim(), &mut ids, &mut names);
                    let t: Vec<f64> = tail
                        .split_whitespace()
                        .map(|x| x.parse().map_err(|_| line_err(ln, format!("bad coordinate {x:?}"))))
                        .collect::<Result<_, _>>()?;
                    if t.len() != 2 {
                        return Err(line_err(ln, "expected two coordinates"));
                    }
                    coords.push((v, (t[0], t[1])));
                }
                other => return Err(line_err(ln, format!("key {other:?} takes no block"))),
            }
            continue;
        }
        let (key, value) = trimmed.split_once(':').ok_or_else(|| line_err(ln, "expected `key: value`"))?;
        let value = value.trim();
        let listed = |v: &str| v.split_whitespace().map(|s| (ln, s.to_string())).collect::<Vec<_>>();
        block = None;
        match key.trim() {
            "name" => name = value.to_string(),
            "k" => k = parse_num(value, ln)?,
            "vertices" => {
                for tok in value.split_whitespace() {
                    intern(tok, &mut ids, &mut names);
                }
            }
            "h" => h_names.extend(listed(value)),
            "order" => order_names = Some(listed(value)),
            "face" => face_names = Some(listed(value)),
            b @ ("edges" | "rotation" | "coords") => {
                if !value.is_empty() {
                    return Err(line_err(ln, format!("`{b}:` starts an indented block")));
                }
                block = Some(b.to_string());
            }
            other => return Err(line_err(ln, format!("unknown key {other:?}"))),
        }
    }

    let resolve = |list: &[(usize, String)]| -> Result<Vec<Vertex>, ParseError> {
        list.iter()
            .map(|(ln, s)| ids.get(s).copied().ok_or_else(|| line_err(*ln, format!("unknown vertex {s:?}"))))
            .collect()
    };
    let h = resolve(&h_names)?;
    let order = order_names.as_deref().map(resolve).transpose()?;
    let face = face_names.as_deref().map(resolve).transpose()?;

    let n = names.len();
    if !rotation.is_empty() {
        for (v, r) in &rotation {
            for &w in r {
                if *v < w {
                    edges.push((*v, w));
                }
            }
        }
    }
    let graph = Graph::new(n, edges).map_err(|source| ParseError::Graph { line: 0, source })?;
    let plane = if !rotation.is_empty() {
        let mut rot = vec![Vec::new(); n];
        for (v, r) in rotation {
            rot[v] = r;
        }
        Some(PlaneGraph::new(graph.clone(), RotationSystem::new(rot))?)
    } else if !coords.is_empty() {
        let mut xy = vec![(f64::NAN, f64::NAN); n];
        for (v, c) in coords {
            xy[v] = c;
        }
        if let Some(v) = xy.iter().position(|c| c.0.is_nan()) {
            return Err(line_err(0, format!("vertex {:?} has no coordinates", names[v])));
        }
        let rot = RotationSystem::from_coordinates(&graph, &xy);
        Some(PlaneGraph::new(graph.clone(), rot)?)
    } else {
        None
    };
    Ok(Fixture { name, k, names, graph, plane, h, order, face })
}

/// Serializes a fixture; embedded fixtures are written with a rotation block.
pub fn write_fixture(f: &Fixture) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "name: {}", f.name);
    let _ = writeln!(s, "k: {}", f.k);
    let _ = writeln!(s, "vertices: {}", f.names.join(" "));
    match &f.plane {
        Some(p) => {
            s.push_str("rotation:\n");
            for (v, r) in p.rotation().as_slice().iter().enumerate() {
                let nbrs: Vec<&str> = r.iter().map(|&w| f.names[w].as_str()).collect();
                let _ = writeln!(s, "  {}: {}", f.names[v], nbrs.join(" "));
            }
        }
        None => {
            s.push_str("edges:\n");
            for &(u, v) in f.graph.edges() {
                let _ = writeln!(s, "  {} {}", f.names[u], f.names[v]);
            }
        }
    }
    let join = |vs: &[Vertex]| vs.iter().map(|&v| f.names[v].as_str()).collect::<Vec<_>>().join(" ");
    if !f.h.is_empty() {
        let _ = writeln!(s, "h: {}", join(&f.h));
    }
    if let Some(o) = &f.order {
        let _ = writeln!(s, "order: {}", join(o));
    }
    if let Some(fc) = &f.face {
        let _ = writeln!(s, "face: {}", join(fc));
    }
    s
}
