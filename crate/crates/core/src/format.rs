//! JSON instance file format.
//!
//! ```json
//! { "num_vertices": 3, "edges": [[0, 1], [0, 2], [1, 2]] }
//! ```
//!
//! Vertex ids are integers in `0..num_vertices`. Edges must be non-empty;
//! repeated ids inside one edge are collapsed.

use crate::hypergraph::{BuildError, Hypergraph};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use thiserror::Error;

/// Largest vertex universe accepted from a file.
pub const MAX_VERTICES: usize = 1 << 28;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub num_vertices: usize,
    pub edges: Vec<Vec<u64>>,
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed instance: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{location}: {source}")]
    Invalid {
        location: String,
        source: BuildError,
    },
}

impl InstanceFile {
    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance serializes")
    }

    pub fn to_hypergraph(&self) -> Result<Hypergraph, FormatError> {
        if self.num_vertices > MAX_VERTICES {
            return Err(FormatError::Invalid {
                location: "num_vertices".into(),
                source: BuildError::TooLarge,
            });
        }
        Hypergraph::build(
            self.num_vertices,
            self.edges.iter().map(|e| e.iter().copied()),
        )
        .map_err(|source| {
            let location = match &source {
                BuildError::EmptyEdge { edge } => format!("edges[{edge}]"),
                BuildError::VertexOutOfRange { edge, position, .. } => {
                    format!("edges[{edge}][{position}]")
                }
                BuildError::TooLarge => "edges".into(),
            };
            FormatError::Invalid { location, source }
        })
    }

    /// Active part of `inst`, keeping the original vertex numbering.
    pub fn from_hypergraph(inst: &Hypergraph) -> Self {
        Self {
            num_vertices: inst.num_vertices_total(),
            edges: inst
                .edges()
                .map(|f| inst.edge(f).map(u64::from).collect())
                .collect(),
        }
    }
}

/// Parses and validates an instance document.
pub fn parse_instance(text: &str) -> Result<Hypergraph, FormatError> {
    InstanceFile::from_json(text)?.to_hypergraph()
}

pub fn read_instance(path: &Path) -> Result<Hypergraph, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_instance(&text)
}

/// Whether `solution` hits every edge of `inst`.
pub fn verify(inst: &Hypergraph, solution: &[u32]) -> bool {
    inst.is_hitting_set(solution)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_triangle() {
        let h = parse_instance(r#"{"num_vertices": 3, "edges": [[0,1],[0,2],[1,2]]}"#).unwrap();
        assert_eq!((h.num_vertices(), h.num_edges()), (3, 3));
    }

    #[test]
    fn empty_edge_is_rejected() {
        let err = parse_instance(r#"{"num_vertices": 3, "edges": [[0,1],[]]}"#).unwrap_err();
        assert_eq!(
            err.to_string(),
            "edges[1]: empty edge: instance infeasible (edge 1)"
        );
    }

    #[test]
    fn out_of_range_is_rejected() {
        let err = parse_instance(r#"{"num_vertices": 3, "edges": [[0,3]]}"#).unwrap_err();
        let msg = err.to_string();
        assert!(
            msg.starts_with("edges[0][1]: vertex id out of range"),
            "{msg}"
        );
    }

    #[test]
    fn syntax_errors_carry_line_and_column() {
        let err = parse_instance("{\n  \"num_vertices\": 3,\n  \"edges\": [[0,1],\n}").unwrap_err();
        assert!(matches!(err, FormatError::Syntax(_)));
        assert!(err.to_string().contains("line 4"), "{err}");
        let err = parse_instance(r#"{"num_vertices": 3, "edges": [], "extra": 1}"#).unwrap_err();
        assert!(err.to_string().contains("unknown field"));
        let err = parse_instance(r#"{"num_vertices": -1, "edges": []}"#).unwrap_err();
        assert!(matches!(err, FormatError::Syntax(_)));
    }

    #[test]
    fn oversized_universe_is_rejected() {
        let text = format!(r#"{{"num_vertices": {}, "edges": []}}"#, MAX_VERTICES + 1);
        assert!(parse_instance(&text).is_err());
    }

    #[test]
    fn verify_examples() {
        let h = parse_instance(r#"{"num_vertices": 3, "edges": [[0,1],[0,2],[1,2]]}"#).unwrap();
        assert!(verify(&h, &[0, 1]));
        assert!(!verify(&h, &[0]));
        assert!(!verify(&h, &[7]));
    }
}
