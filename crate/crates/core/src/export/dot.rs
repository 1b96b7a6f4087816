use std::fmt::Write;

use super::graph::{DominanceGraph, GraphScope};
use crate::error::{Error, Result};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT digraph with one node statement per node and one edge statement per
/// edge, in graph order. Edge labels are exact rationals.
pub fn to_dot(graph: &DominanceGraph) -> String {
    let mut out = String::from("digraph dominance {\n");
    let scope = match graph.scope {
        GraphScope::Level(m) => format!("level {m}"),
        GraphScope::Full => "full".to_string(),
    };
    let _ = writeln!(out, "  // {scope}");
    for n in &graph.nodes {
        let _ = writeln!(out, "  {} [label={}];", quote(&n.id), quote(&n.label));
    }
    for e in &graph.edges {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(&e.from),
            quote(&e.to),
            quote(&e.probability.to_string())
        );
    }
    out.push_str("}\n");
    out
}

/// What [`parse_dot`] recovers: node ids and `(from, to, label)` edges.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DotGraph {
    pub nodes: Vec<String>,
    pub edges: Vec<(String, String, String)>,
}

/// Reads a quoted string starting at `s[0] == '"'`; returns it and the rest.
fn take_quoted(s: &str) -> Option<(String, &str)> {
    let body = s.strip_prefix('"')?;
    let mut out = String::new();
    let mut chars = body.char_indices();
    while let Some((i, c)) = chars.next() {
        match c {
            '\\' => out.push(chars.next()?.1),
            '"' => return Some((out, &body[i + 1..])),
            _ => out.push(c),
        }
    }
    None
}

fn label_of(attrs: &str) -> Option<String> {
    let rest = attrs.trim().strip_prefix('[')?;
    let rest = rest.trim_start().strip_prefix("label")?;
    let rest = rest.trim_start().strip_prefix('=')?;
    take_quoted(rest.trim_start()).map(|(l, _)| l)
}

/// A reader for the subset of DOT that [`to_dot`] writes: quoted ids, one
/// statement per line, `//` comments.
pub fn parse_dot(text: &str) -> Result<DotGraph> {
    let mut graph = DotGraph::default();
    let mut lines = text.lines().enumerate().filter_map(|(n, l)| {
        let l = l.trim();
        (!l.is_empty() && !l.starts_with("//")).then_some((n, l))
    });
    let bad = |n: usize, msg: &str| Error::parse(n + 1, format!("line {}: {msg}", n + 1));

    match lines.next() {
        Some((_, l)) if l.starts_with("digraph") && l.ends_with('{') => {}
        Some((n, _)) => return Err(bad(n, "expected `digraph ... {`")),
        None => return Err(Error::parse(0, "empty input")),
    }
    let mut closed = false;
    for (n, line) in lines {
        if closed {
            return Err(bad(n, "content after closing brace"));
        }
        if line == "}" {
            closed = true;
            continue;
        }
        let stmt = line
            .strip_suffix(';')
            .ok_or_else(|| bad(n, "missing `;`"))?;
        let (first, rest) = take_quoted(stmt).ok_or_else(|| bad(n, "expected quoted id"))?;
        let rest = rest.trim_start();
        if let Some(rest) = rest.strip_prefix("->") {
            let (second, attrs) =
                take_quoted(rest.trim_start()).ok_or_else(|| bad(n, "expected quoted id"))?;
            let label = label_of(attrs).unwrap_or_default();
            graph.edges.push((first, second, label));
        } else {
            graph.nodes.push(first);
        }
    }
    if !closed {
        return Err(Error::parse(text.len(), "missing closing brace"));
    }
    Ok(graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::export::graph::{build_graph, GraphNode};
    use crate::hierarchy::generate;
    use crate::loshu::Preset;

    #[test]
    fn three_cycle() {
        let f = generate(&Preset::Paper1.stack().unwrap(), 2).unwrap();
        let dot = to_dot(&build_graph(&f, 1).unwrap());
        assert_eq!(dot.matches("->").count(), 3);
        assert!(dot.contains("\"D1\" -> \"D2\" [label=\"5/9\"];"));
        let parsed = parse_dot(&dot).unwrap();
        assert_eq!(parsed.nodes, ["D1", "D2", "D3"]);
        assert_eq!(parsed.edges.len(), 3);
    }

    #[test]
    fn single_node_without_edges() {
        let g = DominanceGraph {
            scope: GraphScope::Level(1),
            nodes: vec![GraphNode {
                id: "a \"b\"".into(),
                label: "x".into(),
            }],
            edges: vec![],
        };
        let dot = to_dot(&g);
        assert!(!dot.contains("->"));
        let parsed = parse_dot(&dot).unwrap();
        assert_eq!(parsed.nodes, ["a \"b\""]);
        assert!(parsed.edges.is_empty());
    }

    #[test]
    fn reader_rejects_garbage() {
        assert!(parse_dot("").is_err());
        assert!(parse_dot("graph g {\n}").is_err());
        assert!(parse_dot("digraph g {\n \"a\"\n}").is_err());
        assert!(parse_dot("digraph g {\n \"a\";").is_err());
    }
}
