use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::flagmap::{EdgeSubset, FlagMap};

use super::BouquetError;

/// One half-edge position in a vertex's cyclic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slot {
    pub edge: usize,
    pub marked: bool,
}

/// A ribbon graph given by a cyclic order of half-edge slots at each vertex.
///
/// Edge `e` is twisted iff exactly one of its two slots is marked. Vertices
/// with an empty order are isolated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    vertices: Vec<Vec<Slot>>,
    labels: Vec<String>,
}

impl RotationSystem {
    /// Validates that every edge index in `0..labels.len()` occurs exactly twice.
    pub fn new(vertices: Vec<Vec<Slot>>, labels: Vec<String>) -> Result<Self, BouquetError> {
        let mut seen = vec![0usize; labels.len()];
        for slot in vertices.iter().flatten() {
            match seen.get_mut(slot.edge) {
                Some(c) => *c += 1,
                None => {
                    return Err(BouquetError::LabelCountNotTwo {
                        label: format!("#{}", slot.edge),
                        count: 1,
                    })
                }
            }
        }
        if let Some((e, &count)) = seen.iter().enumerate().find(|(_, &c)| c != 2) {
            return Err(BouquetError::LabelCountNotTwo {
                label: labels[e].clone(),
                count,
            });
        }
        Ok(Self { vertices, labels })
    }

    /// Builds a system from labelled tokens per vertex; `true` marks a token.
    pub fn from_tokens(vertices: Vec<Vec<(String, bool)>>) -> Result<Self, BouquetError> {
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut labels = Vec::new();
        let mut counts = Vec::new();
        let mut out = Vec::with_capacity(vertices.len());
        for tokens in vertices {
            let mut slots = Vec::with_capacity(tokens.len());
            for (label, marked) in tokens {
                let edge = *index.entry(label.clone()).or_insert_with(|| {
                    labels.push(label);
                    counts.push(0usize);
                    labels.len() - 1
                });
                counts[edge] += 1;
                slots.push(Slot { edge, marked });
            }
            out.push(slots);
        }
        if let Some(e) = counts.iter().position(|&c| c != 2) {
            return Err(BouquetError::LabelCountNotTwo {
                label: labels[e].clone(),
                count: counts[e],
            });
        }
        Ok(Self {
            vertices: out,
            labels,
        })
    }

    /// Parses the line-oriented graph format: one `v<i>: tok tok ...` line per vertex.
    ///
    /// Blank lines and lines starting with `#` are skipped. A token is a label
    /// optionally prefixed by `-`.
    pub fn parse_graph(text: &str) -> Result<Self, BouquetError> {
        let mut vertices = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad_line = || BouquetError::BadVertexLine {
                line: lineno + 1,
                text: raw.to_string(),
            };
            let (head, body) = line.split_once(':').ok_or_else(bad_line)?;
            let head = head.trim();
            let valid_head = head
                .strip_prefix('v')
                .is_some_and(|n| !n.is_empty() && n.chars().all(|c| c.is_ascii_digit()));
            if !valid_head {
                return Err(bad_line());
            }
            let tokens = body
                .split_whitespace()
                .map(parse_token)
                .collect::<Result<Vec<_>, _>>()?;
            vertices.push(tokens);
        }
        Self::from_tokens(vertices)
    }

    pub fn vertices(&self) -> &[Vec<Slot>] {
        &self.vertices
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edge_count(&self) -> usize {
        self.labels.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn slot_count(&self) -> usize {
        self.vertices.iter().map(Vec::len).sum()
    }

    pub fn edge_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn twisted_edges(&self) -> Vec<bool> {
        let mut marks = vec![0u8; self.labels.len()];
        for slot in self.vertices.iter().flatten() {
            if slot.marked {
                marks[slot.edge] += 1;
            }
        }
        marks.into_iter().map(|m| m == 1).collect()
    }

    /// Resolves a list of labels into an edge subset.
    pub fn subset(&self, labels: &[&str]) -> Result<EdgeSubset, BouquetError> {
        let mut mask = EdgeSubset::empty();
        for &l in labels {
            let e = self
                .edge_index(l)
                .ok_or_else(|| BouquetError::NoSuchEdge { label: l.to_string() })?;
            mask = mask.with(e);
        }
        Ok(mask)
    }

    /// Spanning sub-ribbon-graph on `keep`: all vertices stay, other edges are
    /// deleted, and surviving edges are renumbered in ascending order.
    pub fn restrict(&self, keep: EdgeSubset) -> RotationSystem {
        let mut new_index = vec![usize::MAX; self.labels.len()];
        let mut labels = Vec::new();
        for (e, label) in self.labels.iter().enumerate() {
            if keep.contains(e) {
                new_index[e] = labels.len();
                labels.push(label.clone());
            }
        }
        let vertices = self
            .vertices
            .iter()
            .map(|slots| {
                slots
                    .iter()
                    .filter(|s| keep.contains(s.edge))
                    .map(|s| Slot {
                        edge: new_index[s.edge],
                        marked: s.marked,
                    })
                    .collect()
            })
            .collect();
        RotationSystem { vertices, labels }
    }

    pub fn to_map(&self) -> FlagMap {
        FlagMap::from_rotation(self)
    }
}

pub(crate) fn parse_token(tok: &str) -> Result<(String, bool), BouquetError> {
    let (label, marked) = match tok.strip_prefix('-') {
        Some(rest) => (rest, true),
        None => (tok, false),
    };
    if label.is_empty() || label.starts_with('-') || label.contains(char::is_whitespace) {
        return Err(BouquetError::BadToken {
            token: tok.to_string(),
        });
    }
    Ok((label.to_string(), marked))
}

impl FromStr for RotationSystem {
    type Err = BouquetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_graph(s)
    }
}

impl fmt::Display for RotationSystem {
    /// Writes the graph file format, one vertex per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, slots) in self.vertices.iter().enumerate() {
            write!(f, "v{i}:")?;
            for s in slots {
                let sign = if s.marked { "-" } else { "" };
                write!(f, " {sign}{}", self.labels[s.edge])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
