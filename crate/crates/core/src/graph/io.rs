//! Text and JSON encodings.
//!
//! Text: a header line `n m`, then `m` lines `u v` with `u < v`, sorted
//! ascending. JSON: `{"n":..,"edges":[[u,v],..],"labels":[..]}` with
//! `labels` omitted for unlabelled graphs. Both writers are canonical, so
//! reading and rewriting reproduces the input bytes.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{Graph, GraphError};

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl Graph {
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.edge_count());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Parses the text format. Edges may appear in any order and either
    /// orientation, but not twice.
    pub fn from_text(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line, header) = lines.next().ok_or(GraphError::Parse {
            line: 1,
            message: "missing `n m` header".into(),
        })?;
        let [n, m] = parse_pair(line, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, body) in lines.by_ref() {
            let [u, v] = parse_pair(line, body)?;
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(GraphError::Parse {
                line,
                message: format!("header announces {m} edges, found {}", edges.len()),
            });
        }
        let mut seen = std::collections::HashSet::with_capacity(m);
        for &(u, v) in &edges {
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GraphError::DuplicateEdge { u: u.min(v), v: u.max(v) });
            }
        }
        Graph::from_edges(n, edges)
    }

    pub fn to_json(&self) -> String {
        let repr = GraphJson {
            n: self.n(),
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
            labels: self.labels.clone(),
        };
        serde_json::to_string(&repr).expect("graph serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Graph, GraphError> {
        let repr: GraphJson =
            serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        let mut seen = std::collections::HashSet::with_capacity(repr.edges.len());
        for &[u, v] in &repr.edges {
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GraphError::DuplicateEdge { u: u.min(v), v: u.max(v) });
            }
        }
        let g = Graph::from_edges(repr.n, repr.edges.iter().map(|&[u, v]| (u, v)))?;
        match repr.labels {
            Some(labels) => g.with_labels(labels),
            None => Ok(g),
        }
    }

    /// Reads either format, choosing JSON when the first non-blank byte is `{`.
    pub fn parse_any(text: &str) -> Result<Graph, GraphError> {
        if text.trim_start().starts_with('{') {
            Graph::from_json(text)
        } else {
            Graph::from_text(text)
        }
    }

    /// Hex SHA-256 of the text encoding; labels do not contribute.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_text().as_bytes()))
    }
}

fn parse_pair(line: usize, body: &str) -> Result<[usize; 2], GraphError> {
    let fields: Vec<&str> = body.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(GraphError::Parse {
            line,
            message: format!("expected two integers, found {:?}", body),
        });
    }
    let parse = |s: &str| {
        s.parse::<usize>().map_err(|e| GraphError::Parse {
            line,
            message: format!("{s:?}: {e}"),
        })
    };
    Ok([parse(fields[0])?, parse(fields[1])?])
}
