use std::fmt;
use std::io::Read;
use std::path::Path;

use clap::ValueEnum;
use dplab::embedding::PlaneGraph;
use dplab::graph::{Graph, Vertex};
use dplab::io::{parse_edge_list, parse_fixture, parse_planar_code, parse_rotation, Fixture};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// `n m` header, then one `u v` edge per line.
    Edges,
    /// One `v: a b c` line per vertex, neighbors in clockwise order.
    Rotation,
    /// Binary plantri planar_code; may hold many graphs.
    #[value(name = "planar_code")]
    PlanarCode,
    /// Named-vertex gadget fixture.
    Fixture,
}

impl Format {
    fn detect(path: &Path, bytes: &[u8]) -> Format {
        if bytes.starts_with(b">>planar_code") {
            return Format::PlanarCode;
        }
        match path.extension().and_then(|e| e.to_str()) {
            Some("pc" | "plc" | "planar_code") => Format::PlanarCode,
            Some("fix") => Format::Fixture,
            Some("rot") => Format::Rotation,
            _ => Format::Edges,
        }
    }
}

/// One graph to process, with whatever extra structure its format carried.
#[derive(Debug, Clone)]
pub struct Job {
    pub source: String,
    pub graph: Graph,
    pub plane: Option<PlaneGraph>,
    pub fixture: Option<Fixture>,
}

impl Job {
    fn plain(source: String, graph: Graph) -> Self {
        Job { source, graph, plane: None, fixture: None }
    }

    fn embedded(source: String, plane: PlaneGraph) -> Self {
        Job { source, graph: plane.graph().clone(), plane: Some(plane), fixture: None }
    }

    pub fn name(&self, v: Vertex) -> String {
        match &self.fixture {
            Some(f) => f.name_of(v).to_string(),
            None => v.to_string(),
        }
    }

    pub fn names(&self, vs: &[Vertex]) -> Vec<String> {
        vs.iter().map(|&v| self.name(v)).collect()
    }

    /// Resolves a vertex given by fixture name or numeric id.
    pub fn vertex(&self, token: &str) -> Option<Vertex> {
        if let Some(v) = self.fixture.as_ref().and_then(|f| f.id(token)) {
            return Some(v);
        }
        token.parse().ok().filter(|&v| v < self.graph.n())
    }
}

#[derive(Debug)]
pub struct InputError {
    pub source: String,
    pub msg: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.source, self.msg)
    }
}

/// Reads every graph in `path` (`-` is standard input).
pub fn load(path: &Path, format: Option<Format>) -> Result<Vec<Job>, InputError> {
    let source = path.display().to_string();
    let err = |msg: String| InputError { source: source.clone(), msg };
    let mut bytes = Vec::new();
    if path == Path::new("-") {
        std::io::stdin().read_to_end(&mut bytes).map_err(|e| err(e.to_string()))?;
    } else {
        bytes = std::fs::read(path).map_err(|e| err(e.to_string()))?;
    }
    let format = format.unwrap_or_else(|| Format::detect(path, &bytes));
    if format == Format::PlanarCode {
        let graphs = parse_planar_code(&bytes).map_err(|e| err(e.to_string()))?;
        return Ok(graphs
            .into_iter()
            .enumerate()
            .map(|(i, p)| Job::embedded(format!("{source}#{}", i + 1), p))
            .collect());
    }
    let text = String::from_utf8(bytes).map_err(|e| err(format!("not UTF-8 text: {e}")))?;
    let job = match format {
        Format::Edges => Job::plain(source.clone(), parse_edge_list(&text).map_err(|e| err(e.to_string()))?),
        Format::Rotation => Job::embedded(source.clone(), parse_rotation(&text).map_err(|e| err(e.to_string()))?),
        Format::Fixture => {
            let fx = parse_fixture(&text).map_err(|e| err(e.to_string()))?;
            let label = if fx.name.is_empty() { source.clone() } else { format!("{source} ({})", fx.name) };
            Job { source: label, graph: fx.graph.clone(), plane: fx.plane.clone(), fixture: Some(fx) }
        }
        Format::PlanarCode => unreachable!(),
    };
    Ok(vec![job])
}
