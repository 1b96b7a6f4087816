//! Dominance graphs, serialization formats, and normalized face values.
//!
//! Every writer here is byte-deterministic: the same family always produces
//! the same DOT, JSON, CSV, and table text.

mod dot;
mod graph;
mod json;
mod points;
mod tables;

pub use dot::{parse_dot, to_dot, DotGraph};
pub use graph::{build_full_graph, build_graph, DominanceGraph, GraphEdge, GraphNode, GraphScope};
pub use json::{family_from_json, family_to_json, DieEntry, FamilyDocument};
pub use points::{normalized_values, points_to_csv, NormalizedPoint};
pub use tables::{parse_tables, render_tables};
