//! Text and JSON encodings of bicolored graphs.
//!
//! The text format has one statement per line; `#` starts a comment:
//!
//! ```text
//! bicolored-graph v1
//! v a b
//! v c w
//! e a c
//! e c c
//! ```
//!
//! `v <name> <b|w>` declares a vertex and `e <name> <name>` an edge. Repeating
//! an edge line adds multiplicity and `e x x` is a loop. The header line is
//! optional.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{BicoloredGraph, Color, GraphError};

pub const HEADER: &str = "bicolored-graph v1";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed statement `{text}`")]
    Malformed { line: usize, text: String },
    #[error("line {line}: unknown vertex `{name}`")]
    UnknownVertex { line: usize, name: String },
    #[error("line {line}: unknown color `{token}` (expected b or w)")]
    UnknownColor { line: usize, token: String },
    #[error("line {line}: vertex `{name}` declared twice")]
    DuplicateVertex { line: usize, name: String },
    #[error("invalid JSON graph: {0}")]
    Json(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Strips comments and blank lines, yielding `(line number, tokens)`.
pub(crate) fn statements(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

pub fn parse_graph(text: &str) -> Result<BicoloredGraph, ParseError> {
    parse_graph_named(text).map(|(g, _)| g)
}

/// Like [`parse_graph`], also returning the vertex names in index order.
pub fn parse_graph_named(text: &str) -> Result<(BicoloredGraph, Vec<String>), ParseError> {
    let mut order = Vec::new();
    let mut names: HashMap<String, usize> = HashMap::new();
    let mut colors = Vec::new();
    let mut edges = Vec::new();
    let mut first = true;
    for (line, tokens) in statements(text) {
        let malformed = || ParseError::Malformed {
            line,
            text: tokens.join(" "),
        };
        if first && tokens.len() == 2 && tokens[0] == "bicolored-graph" {
            if tokens[1] != "v1" {
                return Err(malformed());
            }
            first = false;
            continue;
        }
        first = false;
        match tokens[0] {
            "v" => {
                if tokens.len() != 3 {
                    return Err(malformed());
                }
                let color = match tokens[2] {
                    "b" => Color::Black,
                    "w" => Color::White,
                    other => {
                        return Err(ParseError::UnknownColor {
                            line,
                            token: other.to_string(),
                        })
                    }
                };
                if names.contains_key(tokens[1]) {
                    return Err(ParseError::DuplicateVertex {
                        line,
                        name: tokens[1].to_string(),
                    });
                }
                names.insert(tokens[1].to_string(), colors.len());
                order.push(tokens[1].to_string());
                colors.push(color);
            }
            "e" => {
                if tokens.len() != 3 {
                    return Err(malformed());
                }
                let lookup = |name: &str| {
                    names
                        .get(name)
                        .copied()
                        .ok_or_else(|| ParseError::UnknownVertex {
                            line,
                            name: name.to_string(),
                        })
                };
                edges.push((lookup(tokens[1])?, lookup(tokens[2])?));
            }
            _ => return Err(malformed()),
        }
    }
    Ok((BicoloredGraph::from_edges(colors, edges)?, order))
}

/// Text encoding with vertices named by index. Parsing the output gives back
/// an equal graph.
pub fn write_graph(g: &BicoloredGraph) -> String {
    let mut out = format!("{HEADER}\n");
    for (v, c) in g.colors().iter().enumerate() {
        out.push_str(&format!("v {v} {c}\n"));
    }
    for ((u, v), m) in g.edges() {
        for _ in 0..m {
            out.push_str(&format!("e {u} {v}\n"));
        }
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonVertex {
    id: String,
    color: Color,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonGraph {
    vertices: Vec<JsonVertex>,
    edges: Vec<[String; 2]>,
}

pub fn parse_graph_json(text: &str) -> Result<BicoloredGraph, ParseError> {
    parse_graph_json_named(text).map(|(g, _)| g)
}

pub fn parse_graph_json_named(text: &str) -> Result<(BicoloredGraph, Vec<String>), ParseError> {
    let raw: JsonGraph = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    let mut names = HashMap::new();
    for (i, v) in raw.vertices.iter().enumerate() {
        if names.insert(v.id.clone(), i).is_some() {
            return Err(ParseError::Json(format!("vertex `{}` declared twice", v.id)));
        }
    }
    let mut edges = Vec::with_capacity(raw.edges.len());
    for [a, b] in &raw.edges {
        let find = |name: &String| {
            names
                .get(name)
                .copied()
                .ok_or_else(|| ParseError::Json(format!("unknown vertex `{name}`")))
        };
        edges.push((find(a)?, find(b)?));
    }
    let colors = raw.vertices.iter().map(|v| v.color).collect();
    let order = raw.vertices.into_iter().map(|v| v.id).collect();
    Ok((BicoloredGraph::from_edges(colors, edges)?, order))
}

pub fn write_graph_json(g: &BicoloredGraph) -> String {
    let raw = JsonGraph {
        vertices: g
            .colors()
            .iter()
            .enumerate()
            .map(|(v, &color)| JsonVertex {
                id: v.to_string(),
                color,
            })
            .collect(),
        edges: g
            .edges()
            .flat_map(|((u, v), m)| std::iter::repeat_n([u.to_string(), v.to_string()], m))
            .collect(),
    };
    serde_json::to_string(&raw).expect("graph serializes")
}

/// Parses either encoding, choosing JSON when the text starts with `{`.
pub fn parse_any(text: &str) -> Result<BicoloredGraph, ParseError> {
    parse_any_named(text).map(|(g, _)| g)
}

pub fn parse_any_named(text: &str) -> Result<(BicoloredGraph, Vec<String>), ParseError> {
    if text.trim_start().starts_with('{') {
        parse_graph_json_named(text)
    } else {
        parse_graph_named(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn two_vertices_one_edge() {
        let g = parse_graph("v a b\nv c w\ne a c").unwrap();
        assert_eq!(g.colors(), &[Color::Black, Color::White]);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.multiplicity(0, 1), 1);
    }

    #[test]
    fn loop_syntax() {
        let g = parse_graph("v a b\ne a a").unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert!(g.has_loop(0));
    }

    #[test]
    fn names_are_kept() {
        let (_, names) = parse_any_named("v x b\nv y w\ne x y").unwrap();
        assert_eq!(names, vec!["x", "y"]);
    }

    #[test]
    fn header_and_comments() {
        let g = parse_graph("# hi\nbicolored-graph v1\n\nv a b # black\nv c w\ne a c\ne c a\n").unwrap();
        assert_eq!(g.multiplicity(0, 1), 2);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(
            parse_graph("e a c"),
            Err(ParseError::UnknownVertex {
                line: 1,
                name: "a".into()
            })
        );
        assert_eq!(
            parse_graph("v a b\nv c x"),
            Err(ParseError::UnknownColor {
                line: 2,
                token: "x".into()
            })
        );
        assert!(matches!(
            parse_graph("v a b\n\nq a"),
            Err(ParseError::Malformed { line: 3, .. })
        ));
        assert!(matches!(
            parse_graph("v a b\nv a w"),
            Err(ParseError::DuplicateVertex { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("v a b\ne a"),
            Err(ParseError::Malformed { line: 2, .. })
        ));
        assert_eq!(parse_graph("# nothing"), Err(ParseError::Graph(GraphError::Empty)));
    }

    #[test]
    fn json_form() {
        let g = parse_graph_json(
            r#"{"vertices":[{"id":"a","color":"black"},{"id":"b","color":"white"}],"edges":[["a","b"],["b","b"]]}"#,
        )
        .unwrap();
        assert_eq!(g, parse_graph("v a b\nv b w\ne a b\ne b b").unwrap());
        assert!(parse_graph_json(r#"{"vertices":[],"edges":[["a","b"]]}"#).is_err());
        assert_eq!(parse_any(&write_graph_json(&g)).unwrap(), g);
    }

    fn arb_graph() -> impl Strategy<Value = BicoloredGraph> {
        (1usize..=10).prop_flat_map(|n| {
            (
                proptest::collection::vec(any::<bool>(), n),
                proptest::collection::vec((0..n, 0..n), 0..25),
            )
                .prop_map(|(colors, edges)| {
                    let colors = colors
                        .into_iter()
                        .map(|b| if b { Color::Black } else { Color::White })
                        .collect();
                    BicoloredGraph::from_edges(colors, edges).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(g in arb_graph()) {
            prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        }

        #[test]
        fn json_round_trip(g in arb_graph()) {
            prop_assert_eq!(parse_graph_json(&write_graph_json(&g)).unwrap(), g);
        }
    }
}
