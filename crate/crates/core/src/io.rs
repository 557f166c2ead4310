//! Text formats for graphs, triplets, and imsets.
//!
//! Graphs are written one declaration per line:
//!
//! ```text
//! # an undirected square
//! vertex a
//! vertex b
//! vertex c
//! vertex d
//! edge a -- b
//! edge b -- c
//! edge c -- d
//! edge d -- a
//! ```
//!
//! `--` is an undirected edge, `->` a directed one. Blank lines and `#`
//! comments are ignored. Labels are sorted lexicographically to fix the
//! vertex numbering, so a graph's internal indices do not depend on
//! declaration order.
//!
//! Triplets are written `A | B | C` with comma-separated labels per part and
//! a possibly-empty third part; imsets are written one `coefficient {labels}`
//! line per nonzero coefficient under a `universe` header.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{MixedGraph, Triplet};
use crate::imset::Imset;
use crate::set::VertexSet;

/// A fixed assignment of string labels to vertex indices.
///
/// Labels are unique and stored in lexicographic order; index `i` is the
/// `i`-th smallest label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labels {
    names: Vec<String>,
}

impl Labels {
    /// Builds a table from the given labels, sorting them. Fails on
    /// duplicates.
    pub fn new(mut names: Vec<String>) -> Result<Self> {
        names.sort_unstable();
        for w in names.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("duplicate vertex label {:?}", w[0]),
                });
            }
        }
        Ok(Labels { names })
    }

    /// Synthetic labels `x0, x1, …` for an unlabeled universe.
    pub fn numbered(n: usize) -> Self {
        Labels {
            names: (0..n).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.binary_search_by(|x| x.as_str().cmp(name)).ok()
    }

    /// Renders a vertex set as `{a,c}` in label order.
    pub fn set_to_string(&self, s: VertexSet) -> String {
        let mut out = String::from("{");
        for (k, i) in s.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(self.name(i));
        }
        out.push('}');
        out
    }

    fn parse_label_list(&self, text: &str, line: usize) -> Result<VertexSet> {
        let mut s = VertexSet::EMPTY;
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Ok(s);
        }
        for part in trimmed.split(',') {
            let lbl = part.trim();
            if lbl.is_empty() {
                return Err(Error::Parse {
                    line,
                    msg: "empty label in list".into(),
                });
            }
            let i = self.index_of(lbl).ok_or_else(|| Error::Parse {
                line,
                msg: format!("unknown vertex label {lbl:?}"),
            })?;
            s = s.with(i);
        }
        Ok(s)
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(p) => &line[..p],
        None => line,
    }
}

/// Parses the graph text format. Returns the graph together with its label
/// table.
pub fn parse_graph(text: &str) -> Result<(MixedGraph, Labels)> {
    // First pass: collect vertex declarations.
    let mut names: Vec<String> = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        match it.next() {
            Some("vertex") => {
                let name = it.next().ok_or_else(|| Error::Parse {
                    line: no + 1,
                    msg: "vertex declaration needs a label".into(),
                })?;
                if it.next().is_some() {
                    return Err(Error::Parse {
                        line: no + 1,
                        msg: "vertex declaration takes exactly one label".into(),
                    });
                }
                if names.iter().any(|x| x == name) {
                    return Err(Error::Parse {
                        line: no + 1,
                        msg: format!("duplicate vertex label {name:?}"),
                    });
                }
                names.push(name.to_string());
            }
            Some("edge") => {}
            Some(other) => {
                return Err(Error::Parse {
                    line: no + 1,
                    msg: format!("expected `vertex` or `edge`, found {other:?}"),
                });
            }
            None => unreachable!(),
        }
    }
    let labels = Labels::new(names)?;
    let mut g = MixedGraph::new(labels.len())?;
    // Second pass: edges.
    for (no, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() || !line.starts_with("edge") {
            continue;
        }
        let rest = line["edge".len()..].trim();
        let mut it = rest.split_whitespace();
        let (a, op, b) = match (it.next(), it.next(), it.next(), it.next()) {
            (Some(a), Some(op), Some(b), None) => (a, op, b),
            _ => {
                return Err(Error::Parse {
                    line: no + 1,
                    msg: "edge declaration must be `edge A -- B` or `edge A -> B`".into(),
                });
            }
        };
        let look = |lbl: &str| {
            labels.index_of(lbl).ok_or_else(|| Error::Parse {
                line: no + 1,
                msg: format!("unknown vertex label {lbl:?}"),
            })
        };
        let (ia, ib) = (look(a)?, look(b)?);
        let add = match op {
            "--" => MixedGraph::add_undirected(&mut g, ia, ib),
            "->" => MixedGraph::add_directed(&mut g, ia, ib),
            "<-" => MixedGraph::add_directed(&mut g, ib, ia),
            _ => {
                return Err(Error::Parse {
                    line: no + 1,
                    msg: format!("unknown edge operator {op:?} (use -- or ->)"),
                });
            }
        };
        add.map_err(|e| Error::Parse {
            line: no + 1,
            msg: e.to_string(),
        })?;
    }
    Ok((g, labels))
}

/// Renders a graph in the text format; `parse_graph` round-trips it.
pub fn format_graph(g: &MixedGraph, labels: &Labels) -> String {
    let mut out = String::new();
    for i in g.vertices().iter() {
        let _ = writeln!(out, "vertex {}", labels.name(i));
    }
    for i in g.vertices().iter() {
        for j in g.neighbours(i).iter() {
            if i < j {
                let _ = writeln!(out, "edge {} -- {}", labels.name(i), labels.name(j));
            }
        }
    }
    for i in g.vertices().iter() {
        for j in g.children(i).iter() {
            let _ = writeln!(out, "edge {} -> {}", labels.name(i), labels.name(j));
        }
    }
    out
}

/// Parses a triplet `A | B | C`; `C` may be empty, `A` and `B` may not.
pub fn parse_triplet(text: &str, labels: &Labels) -> Result<Triplet> {
    let parts: Vec<&str> = text.split('|').collect();
    if parts.len() != 3 {
        return Err(Error::Parse {
            line: 0,
            msg: "triplet must have three |-separated parts".into(),
        });
    }
    let a = labels.parse_label_list(parts[0], 0)?;
    let b = labels.parse_label_list(parts[1], 0)?;
    let c = labels.parse_label_list(parts[2], 0)?;
    Triplet::new(a, b, c)
}

/// Renders a triplet as `A | B | C`.
pub fn format_triplet(t: &Triplet, labels: &Labels) -> String {
    let flat = |s: VertexSet| {
        s.iter()
            .map(|i| labels.name(i).to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    format!("{} | {} | {}", flat(t.a()), flat(t.b()), flat(t.c()))
}

/// Renders an imset, one coefficient per line after a `universe` header.
pub fn format_imset(u: &Imset, labels: &Labels) -> String {
    let mut out = String::new();
    let universe = u
        .universe()
        .iter()
        .map(|i| labels.name(i).to_string())
        .collect::<Vec<_>>()
        .join(",");
    let _ = writeln!(out, "universe {universe}");
    for (s, c) in u.iter() {
        let _ = writeln!(out, "{c} {}", labels.set_to_string(s));
    }
    out
}

/// Parses the imset format produced by [`format_imset`].
pub fn parse_imset(text: &str) -> Result<(Imset, Labels)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(no, raw)| (no + 1, strip_comment(raw).trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| Error::Parse {
        line: 0,
        msg: "empty imset text".into(),
    })?;
    let rest = header.strip_prefix("universe").ok_or_else(|| Error::Parse {
        line: hline,
        msg: "imset text must start with a `universe` line".into(),
    })?;
    let names: Vec<String> = rest
        .trim()
        .split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| s.to_string())
        .collect();
    let labels = Labels::new(names)?;
    let mut u = Imset::zero(VertexSet::full(labels.len()));
    for (no, line) in lines {
        let (coef_text, set_text) = line.split_once('{').ok_or_else(|| Error::Parse {
            line: no,
            msg: "expected `coefficient {labels}`".into(),
        })?;
        let set_text = set_text.strip_suffix('}').ok_or_else(|| Error::Parse {
            line: no,
            msg: "unterminated set".into(),
        })?;
        let coef: i64 = coef_text.trim().parse().map_err(|_| Error::Parse {
            line: no,
            msg: format!("bad coefficient {:?}", coef_text.trim()),
        })?;
        let s = labels.parse_label_list(set_text, no)?;
        u.add_to(s, coef)?;
    }
    Ok((u, labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let text = "\
# a small chain graph
vertex b
vertex a
vertex d
vertex c
edge a -> c
edge b -> d
edge c -- d
";
        let (g, labels) = parse_graph(text).unwrap();
        assert_eq!(labels.name(0), "a");
        assert_eq!(labels.name(3), "d");
        assert!(g.has_directed(0, 2));
        assert!(g.has_directed(1, 3));
        assert!(g.has_undirected(2, 3));
        assert_eq!(g.edge_count(), 3);
        let (g2, labels2) = parse_graph(&format_graph(&g, &labels)).unwrap();
        assert_eq!(g, g2);
        assert_eq!(labels, labels2);
    }

    #[test]
    fn labels_are_sorted_not_declaration_ordered() {
        let (g1, _) = parse_graph("vertex a\nvertex b\nedge a -> b\n").unwrap();
        let (g2, _) = parse_graph("vertex b\nvertex a\nedge a -> b\n").unwrap();
        assert_eq!(g1, g2);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = parse_graph("vertex a\nedge a -- z\n");
        match bad {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 2);
                assert!(msg.contains("z"), "{msg}");
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
        assert!(parse_graph("vertex a\nvertex a\n").is_err());
        assert!(parse_graph("vertex a\nedge a -- a\n").is_err());
        assert!(parse_graph("hello\n").is_err());
        assert!(parse_graph("vertex a\nvertex b\nedge a -- b\nedge a -- b\n").is_err());
    }

    #[test]
    fn triplet_round_trip() {
        let labels = Labels::new(vec!["a".into(), "b".into(), "c".into(), "d".into()]).unwrap();
        let t = parse_triplet("a,b | d | c", &labels).unwrap();
        assert_eq!(t.a(), VertexSet::from_indices([0, 1]));
        assert_eq!(t.b(), VertexSet::from_indices([3]));
        assert_eq!(t.c(), VertexSet::from_indices([2]));
        assert_eq!(format_triplet(&t, &labels), "a,b | d | c");
        let empty_c = parse_triplet("a| b |", &labels).unwrap();
        assert!(empty_c.c().is_empty());
        assert!(parse_triplet("a | | c", &labels).is_err());
        assert!(parse_triplet("a | b", &labels).is_err());
        assert!(parse_triplet("a | a | c", &labels).is_err());
    }

    #[test]
    fn imset_round_trip() {
        let labels = Labels::new(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let n = VertexSet::full(3);
        let mut u = Imset::zero(n);
        u.add_to(n, 1).unwrap();
        u.add_to(VertexSet::EMPTY, -2).unwrap();
        u.add_to(VertexSet::from_indices([1]), 1).unwrap();
        let text = format_imset(&u, &labels);
        assert!(text.starts_with("universe a,b,c\n"));
        assert!(text.contains("-2 {}"));
        assert!(text.contains("1 {b}"));
        let (u2, labels2) = parse_imset(&text).unwrap();
        assert_eq!(u, u2);
        assert_eq!(labels, labels2);
    }
}
