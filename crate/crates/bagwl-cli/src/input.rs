//! Graph inputs for the command line: generator specs and edge-list files.
//!
//! A graph argument is either an inline generator spec, `gen:<family>` or
//! `gen:<family>:<params...>` (for example `gen:cycle:6`, `gen:csl:12:3`,
//! `gen:2c3`), or a path to a file in the edge-list text format. The `gen`
//! subcommand accepts the same families as space-separated words.

use std::fmt;
use std::fs;

use bagwl::generators::{
    complete, csl, cycle, disjoint_cycles, path, rooks4, shrikhande, star, GeneratorError,
};
use bagwl::graph::{parse_edge_list, ParseError};
use bagwl::Graph;

// ============================================================================
// Errors
// ============================================================================

/// Errors from turning a command-line graph argument into a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputError {
    /// The generator family name is not one of the built-ins.
    UnknownFamily { family: String },
    /// The family exists but the parameter list has the wrong shape.
    BadParams { family: &'static str, expected: &'static str },
    /// A parameter is not a non-negative integer.
    BadNumber { token: String },
    /// The family rejected its parameters.
    Generator(GeneratorError),
    /// The file exists but is not valid edge-list text.
    Parse { path: String, error: ParseError },
    /// The file could not be read.
    Io { path: String, message: String },
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::UnknownFamily { family } => {
                write!(
                    f,
                    "unknown generator family {family:?}; known: cycle, path, star, \
                     complete, csl, cycles, 2c3, rooks4, shrikhande"
                )
            }
            InputError::BadParams { family, expected } => {
                write!(f, "generator {family} expects {expected}")
            }
            InputError::BadNumber { token } => {
                write!(f, "cannot parse {token:?} as a non-negative integer")
            }
            InputError::Generator(e) => write!(f, "{e}"),
            InputError::Parse { path, error } => write!(f, "{path}: {error}"),
            InputError::Io { path, message } => write!(f, "{path}: {message}"),
        }
    }
}

impl std::error::Error for InputError {}

impl From<GeneratorError> for InputError {
    fn from(e: GeneratorError) -> Self {
        InputError::Generator(e)
    }
}

// ============================================================================
// Generator specs
// ============================================================================

fn number(token: &str) -> Result<usize, InputError> {
    token.parse().map_err(|_| InputError::BadNumber { token: token.to_string() })
}

fn one_number(family: &'static str, params: &[&str]) -> Result<usize, InputError> {
    match params {
        [token] => number(token),
        _ => Err(InputError::BadParams { family, expected: "one size parameter" }),
    }
}

/// Builds a graph from family words, e.g. `["csl", "12", "3"]`.
pub fn generate(parts: &[&str]) -> Result<Graph, InputError> {
    let (family, params) = parts.split_first().ok_or(InputError::BadParams {
        family: "gen",
        expected: "a family name",
    })?;
    let g = match *family {
        "cycle" => cycle(one_number("cycle", params)?)?,
        "path" => path(one_number("path", params)?)?,
        "star" => star(one_number("star", params)?)?,
        "complete" => complete(one_number("complete", params)?)?,
        "csl" => match params {
            [n, k] => csl(number(n)?, number(k)?)?,
            _ => {
                return Err(InputError::BadParams {
                    family: "csl",
                    expected: "two parameters: nodes and skip width",
                })
            }
        },
        "cycles" => {
            if params.is_empty() {
                return Err(InputError::BadParams {
                    family: "cycles",
                    expected: "one or more cycle sizes",
                });
            }
            let sizes: Vec<usize> =
                params.iter().map(|p| number(p)).collect::<Result<_, _>>()?;
            disjoint_cycles(&sizes)?
        }
        "2c3" if params.is_empty() => disjoint_cycles(&[3, 3])?,
        "rooks4" if params.is_empty() => rooks4(),
        "shrikhande" if params.is_empty() => shrikhande(),
        // Families that take no parameters fall through here when given some.
        "2c3" | "rooks4" | "shrikhande" => {
            return Err(InputError::BadParams {
                family: "2c3/rooks4/shrikhande",
                expected: "no parameters",
            })
        }
        _ => return Err(InputError::UnknownFamily { family: family.to_string() }),
    };
    Ok(g)
}

/// Builds a graph from a colon-joined generator spec body, e.g. `csl:12:3`.
pub fn generate_spec(spec: &str) -> Result<Graph, InputError> {
    let parts: Vec<&str> = spec.split(':').collect();
    generate(&parts)
}

/// Resolves a command-line graph argument: `gen:<family>:<params...>` inline,
/// anything else as an edge-list file path.
pub fn graph_from_spec(spec: &str) -> Result<Graph, InputError> {
    if let Some(rest) = spec.strip_prefix("gen:") {
        return generate_spec(rest);
    }
    let text = fs::read_to_string(spec).map_err(|e| InputError::Io {
        path: spec.to_string(),
        message: e.to_string(),
    })?;
    parse_edge_list(&text).map_err(|error| InputError::Parse { path: spec.to_string(), error })
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use bagwl::graph::format_edge_list;

    #[test]
    fn inline_specs_build_the_expected_families() {
        assert_eq!(generate_spec("cycle:6").unwrap().num_edges(), 6);
        assert_eq!(generate_spec("path:5").unwrap().num_edges(), 4);
        assert_eq!(generate_spec("star:3").unwrap().num_nodes(), 4);
        assert_eq!(generate_spec("complete:5").unwrap().num_edges(), 10);
        assert_eq!(generate_spec("csl:12:3").unwrap().num_edges(), 24);
        assert_eq!(generate_spec("2c3").unwrap().num_nodes(), 6);
        assert_eq!(generate_spec("cycles:3:4").unwrap().num_nodes(), 7);
        assert_eq!(generate_spec("rooks4").unwrap().num_nodes(), 16);
        assert_eq!(generate_spec("shrikhande").unwrap().num_edges(), 48);
    }

    #[test]
    fn word_form_and_spec_form_agree() {
        assert_eq!(generate(&["csl", "12", "3"]).unwrap(), generate_spec("csl:12:3").unwrap());
    }

    #[test]
    fn bad_specs_are_rejected_with_the_right_reason() {
        assert!(matches!(
            generate_spec("dodecahedron"),
            Err(InputError::UnknownFamily { .. })
        ));
        assert!(matches!(generate_spec("csl:12"), Err(InputError::BadParams { .. })));
        assert!(matches!(generate_spec("cycle:six"), Err(InputError::BadNumber { .. })));
        assert!(matches!(generate_spec("cycle:2"), Err(InputError::Generator(_))));
        assert!(matches!(generate_spec("rooks4:1"), Err(InputError::BadParams { .. })));
    }

    #[test]
    fn gen_prefix_routes_to_the_generator() {
        let g = graph_from_spec("gen:cycle:6").unwrap();
        assert_eq!(g.num_nodes(), 6);
    }

    #[test]
    fn missing_files_report_io_errors() {
        assert!(matches!(
            graph_from_spec("/nonexistent/graph.txt"),
            Err(InputError::Io { .. })
        ));
    }

    #[test]
    fn generated_graphs_round_trip_through_the_text_format() {
        let g = generate_spec("csl:9:3").unwrap();
        let parsed = parse_edge_list(&format_edge_list(&g)).unwrap();
        assert_eq!(parsed, g);
    }
}
