use serde::Serialize;

use crate::dice::{duel_counts, Rational};
use crate::error::{Error, Result};
use crate::hierarchy::{DiceFamily, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "level")]
pub enum GraphScope {
    /// Sibling edges between the prefixes of one length.
    Level(usize),
    /// One edge per pair of dice.
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphNode {
    pub id: String,
    pub label: String,
}

/// Points from winner to loser.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphEdge {
    pub from: String,
    pub to: String,
    /// Smallest win probability over every die pair the edge stands for.
    #[serde(serialize_with = "crate::dice::ser_ratio")]
    pub probability: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DominanceGraph {
    pub scope: GraphScope,
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
}

fn die_node(word: &Word) -> GraphNode {
    GraphNode {
        id: format!("D{}", word.paper_number()),
        label: format!("D{} w={word}", word.paper_number()),
    }
}

fn prefix_id(prefix: &[u8]) -> String {
    prefix.iter().map(|t| char::from(b'0' + t)).collect()
}

/// Nodes are the `3^level` prefixes of length `level` (single dice at full
/// depth). Each group of three siblings gets the edges `s → s+1 (mod 3)`.
pub fn build_graph(family: &DiceFamily, level: usize) -> Result<DominanceGraph> {
    let depth = family.depth();
    if level == 0 || level > depth {
        return Err(Error::LevelOutOfRange { level, depth });
    }
    let prefixes: Vec<Word> = Word::all(level).collect();
    let nodes = prefixes
        .iter()
        .map(|p| {
            if level == depth {
                die_node(p)
            } else {
                GraphNode {
                    id: prefix_id(p.trits()),
                    label: format!("w={p}*"),
                }
            }
        })
        .collect::<Vec<_>>();

    let mut edges = Vec::with_capacity(prefixes.len());
    for (i, p) in prefixes.iter().enumerate() {
        let s = p.trits()[level - 1];
        let mut target = p.trits().to_vec();
        target[level - 1] = (s + 1) % 3;
        let j = i - s as usize + target[level - 1] as usize;
        let g = family.group_duel(p.trits(), &target)?;
        edges.push(GraphEdge {
            from: nodes[i].id.clone(),
            to: nodes[j].id.clone(),
            probability: g.min_win,
        });
    }
    Ok(DominanceGraph {
        scope: GraphScope::Level(level),
        nodes,
        edges,
    })
}

/// Every pair of dice, edge from the die that wins more often. A pair that
/// splits evenly points from the lower die number.
pub fn build_full_graph(family: &DiceFamily) -> Result<DominanceGraph> {
    let entries: Vec<(Word, &crate::dice::Die)> = family.iter().collect();
    let nodes: Vec<GraphNode> = entries.iter().map(|(w, _)| die_node(w)).collect();
    let mut edges = Vec::new();
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            let r = duel_counts(entries[i].1, entries[j].1)?.to_result();
            let (from, to, probability) = if r.p_win >= r.p_loss {
                (i, j, r.p_win)
            } else {
                (j, i, r.p_loss)
            };
            edges.push(GraphEdge {
                from: nodes[from].id.clone(),
                to: nodes[to].id.clone(),
                probability,
            });
        }
    }
    Ok(DominanceGraph {
        scope: GraphScope::Full,
        nodes,
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hierarchy::generate;
    use crate::loshu::Preset;

    fn family(p: Preset) -> DiceFamily {
        generate(&p.stack().unwrap(), 2).unwrap()
    }

    fn pairs(g: &DominanceGraph) -> Vec<(&str, &str)> {
        g.edges
            .iter()
            .map(|e| (e.from.as_str(), e.to.as_str()))
            .collect()
    }

    #[test]
    fn base_cycle() {
        let g = build_graph(&family(Preset::Paper1), 1).unwrap();
        assert_eq!(g.nodes.len(), 3);
        assert_eq!(pairs(&g), [("D1", "D2"), ("D2", "D3"), ("D3", "D1")]);
        assert!(g.edges.iter().all(|e| e.probability == Rational::new(5, 9)));
    }

    #[test]
    fn large_circles() {
        let g = build_graph(&family(Preset::Paper3), 1).unwrap();
        assert_eq!(pairs(&g), [("0", "1"), ("1", "2"), ("2", "0")]);
        assert!(g.edges.iter().all(|e| e.probability == Rational::new(5, 9)));
    }

    #[test]
    fn nine_dice_sibling_graph() {
        let g = build_graph(&family(Preset::Paper2), 2).unwrap();
        assert_eq!(g.nodes.len(), 9);
        assert_eq!(g.edges.len(), 9);
        assert_eq!(&pairs(&g)[3..6], [("D4", "D5"), ("D5", "D6"), ("D6", "D4")]);
    }

    #[test]
    fn edge_counts() {
        let f = family(Preset::Paper3);
        for m in 1..=3 {
            assert_eq!(
                build_graph(&f, m).unwrap().edges.len(),
                3usize.pow(m as u32)
            );
        }
        assert_eq!(build_full_graph(&f).unwrap().edges.len(), 351);
        assert!(build_graph(&f, 0).is_err());
        assert!(build_graph(&f, 4).is_err());
    }

    #[test]
    fn full_graph_points_at_losers() {
        let g = build_full_graph(&family(Preset::Paper1)).unwrap();
        assert_eq!(pairs(&g), [("D1", "D2"), ("D3", "D1"), ("D2", "D3")]);
    }
}
