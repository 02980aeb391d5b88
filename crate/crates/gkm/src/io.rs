//! The on-disk graph format: a small JSON document with `torus_rank`,
//! `vertices` (id plus moment coordinates as `"p/q"` strings, `/1` omitted)
//! and `edges` (endpoint ids plus an integer weight vector). Unknown fields
//! are rejected and writing is canonical, so `write(read(t))` is a stable
//! reformatting of `t` and rationals survive exactly.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, MomentGraph, Vertex};
use crate::poly::{format_rational, parse_rational, LinearForm, PolyError, Rational};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("parse error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("vertex `{vertex}`, coordinate {coord}: {source}")]
    BadMoment {
        vertex: String,
        coord: usize,
        source: PolyError,
    },
    #[error("edge {index} (`{src}` -> `{dst}`): weight must have a nonzero entry")]
    ZeroWeight {
        index: usize,
        src: String,
        dst: String,
    },
    #[error("polytope point {point}, coordinate {coord}: {source}")]
    BadPoint {
        point: usize,
        coord: usize,
        source: PolyError,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    torus_rank: usize,
    vertices: Vec<VertexFile>,
    edges: Vec<EdgeFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexFile {
    id: String,
    moment: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeFile {
    src: String,
    dst: String,
    weight: Vec<i64>,
}

/// Parse a graph document. Errors carry serde_json's line/column positions
/// for malformed JSON and field-level context for bad values.
pub fn read_graph(text: &str) -> Result<MomentGraph, IoError> {
    let file: GraphFile = serde_json::from_str(text)?;
    let vertices = file
        .vertices
        .into_iter()
        .map(|v| {
            let moment = v
                .moment
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    parse_rational(s).map_err(|source| IoError::BadMoment {
                        vertex: v.id.clone(),
                        coord: i,
                        source,
                    })
                })
                .collect::<Result<Vec<Rational>, IoError>>()?;
            Ok(Vertex::new(v.id, moment))
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    let edges = file
        .edges
        .into_iter()
        .enumerate()
        .map(|(i, e)| {
            let weight = LinearForm::new(e.weight).map_err(|_| IoError::ZeroWeight {
                index: i,
                src: e.src.clone(),
                dst: e.dst.clone(),
            })?;
            Ok(Edge::new(e.src, e.dst, weight))
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    Ok(MomentGraph::new(file.torus_rank, vertices, edges))
}

/// Canonical text of a graph: fixed field order, two-space indentation,
/// trailing newline. Byte-identical across runs for the same graph.
pub fn write_graph(graph: &MomentGraph) -> String {
    let file = GraphFile {
        torus_rank: graph.torus_rank(),
        vertices: graph
            .vertices()
            .iter()
            .map(|v| VertexFile {
                id: v.id.clone(),
                moment: v.moment.iter().map(format_rational).collect(),
            })
            .collect(),
        edges: graph
            .edges()
            .iter()
            .map(|e| EdgeFile {
                src: e.src.clone(),
                dst: e.dst.clone(),
                weight: e.weight.coeffs().to_vec(),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("graph serializes");
    text.push('\n');
    text
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolytopeFile {
    points: Vec<Vec<String>>,
    edges: Vec<(usize, usize)>,
}

/// Vertex coordinates plus the edge index pairs of a polytope.
pub type PolytopeData = (Vec<Vec<Rational>>, Vec<(usize, usize)>);

/// Polytope input for the Delzant builder: rational vertex coordinates (same
/// `"p/q"` conventions as the graph format) and an edge list of index pairs.
pub fn read_polytope(text: &str) -> Result<PolytopeData, IoError> {
    let file: PolytopeFile = serde_json::from_str(text)?;
    let points = file
        .points
        .iter()
        .enumerate()
        .map(|(pi, coords)| {
            coords
                .iter()
                .enumerate()
                .map(|(ci, s)| {
                    parse_rational(s).map_err(|source| IoError::BadPoint {
                        point: pi,
                        coord: ci,
                        source,
                    })
                })
                .collect::<Result<Vec<Rational>, IoError>>()
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    Ok((points, file.edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::projective_space;

    #[test]
    fn cp2_round_trips_to_canonical_text() {
        let g = projective_space(2);
        let text = write_graph(&g);
        let back = read_graph(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(write_graph(&back), text);
    }

    #[test]
    fn rationals_survive_exactly() {
        let text = r#"{
            "torus_rank": 1,
            "vertices": [
                {"id": "a", "moment": ["1/3"]},
                {"id": "b", "moment": ["4/3"]}
            ],
            "edges": [{"src": "a", "dst": "b", "weight": [1]}]
        }"#;
        let g = read_graph(text).unwrap();
        assert_eq!(
            g.vertex("a").unwrap().moment[0],
            Rational::new(1.into(), 3.into())
        );
        // canonical reformatting is stable
        let canonical = write_graph(&g);
        assert_eq!(write_graph(&read_graph(&canonical).unwrap()), canonical);
        assert!(canonical.contains("\"1/3\""));
    }

    #[test]
    fn fractional_weights_are_rejected() {
        let text = r#"{
            "torus_rank": 1,
            "vertices": [],
            "edges": [{"src": "a", "dst": "b", "weight": [1.5]}]
        }"#;
        let err = read_graph(text).unwrap_err();
        assert!(matches!(err, IoError::Json(_)));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{
            "torus_rank": 1,
            "vertices": [],
            "edges": [],
            "extra": true
        }"#;
        assert!(read_graph(text).is_err());
        let text = r#"{
            "torus_rank": 1,
            "vertices": [{"id": "a", "moment": ["0"], "color": "red"}],
            "edges": []
        }"#;
        assert!(read_graph(text).is_err());
    }

    #[test]
    fn zero_weight_is_rejected() {
        let text = r#"{
            "torus_rank": 1,
            "vertices": [
                {"id": "a", "moment": ["0"]},
                {"id": "b", "moment": ["1"]}
            ],
            "edges": [{"src": "a", "dst": "b", "weight": [0]}]
        }"#;
        assert!(matches!(
            read_graph(text).unwrap_err(),
            IoError::ZeroWeight { index: 0, .. }
        ));
    }

    #[test]
    fn malformed_moment_names_the_field() {
        let text = r#"{
            "torus_rank": 1,
            "vertices": [{"id": "a", "moment": ["1/0"]}],
            "edges": []
        }"#;
        let err = read_graph(text).unwrap_err();
        assert!(matches!(err, IoError::BadMoment { coord: 0, .. }));
    }

    #[test]
    fn polytope_files_parse() {
        let text = r#"{
            "points": [["0", "0"], ["1", "0"], ["0", "1"]],
            "edges": [[0, 1], [0, 2], [1, 2]]
        }"#;
        let (points, edges) = read_polytope(text).unwrap();
        assert_eq!(points.len(), 3);
        assert_eq!(edges, vec![(0, 1), (0, 2), (1, 2)]);
    }
}
