//! One-vertex ribbon graphs (bouquets) given by signed rotations.
//!
//! A signed rotation lists the `2n` half-edges around the single vertex in
//! cyclic order; a twisted loop carries a `-` on one of its two half-edges.
//! Internally edges are numbered by first occurrence and the `-` always sits
//! on the second occurrence.

mod rotation;
mod sequence;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::flagmap::{EdgeSubset, FlagMap};

pub use rotation::{RotationSystem, Slot};
pub use sequence::{SignedEntry, SignedSequence};

use sequence::strip_parens;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BouquetError {
    #[error("edge {label:?} occurs {count} time(s); every edge must occur exactly twice")]
    LabelCountNotTwo { label: String, count: usize },
    #[error("edge {label:?} is negated at both occurrences")]
    DoubleNegative { label: String },
    #[error("malformed token {token:?}")]
    BadToken { token: String },
    #[error("line {line}: expected `v<i>: tok tok ...`, got {text:?}")]
    BadVertexLine { line: usize, text: String },
    #[error("no edge labelled {label:?}")]
    NoSuchEdge { label: String },
}

/// Signed rotation of a bouquet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedRotation {
    /// Edge index at each cyclic position.
    seq: Vec<usize>,
    twisted: Vec<bool>,
    labels: Vec<String>,
}

impl SignedRotation {
    pub fn empty() -> Self {
        Self {
            seq: Vec::new(),
            twisted: Vec::new(),
            labels: Vec::new(),
        }
    }

    /// Builds a rotation from edge ids per position and a twist flag per id.
    ///
    /// Ids may be arbitrary; they are renumbered by first occurrence and
    /// labelled `1, 2, ...` in that order.
    pub fn from_ids(ids: &[usize], twisted: &[bool]) -> Result<Self, BouquetError> {
        let max = ids.iter().copied().max().map_or(0, |m| m + 1);
        let mut counts = vec![0usize; max];
        for &id in ids {
            counts[id] += 1;
        }
        if let Some(id) = counts.iter().position(|&c| c != 0 && c != 2) {
            return Err(BouquetError::LabelCountNotTwo {
                label: (id + 1).to_string(),
                count: counts[id],
            });
        }
        let mut r = Self::renumbered(ids, |id| twisted.get(id).copied().unwrap_or(false), |_| None);
        r.labels = (1..=r.twisted.len()).map(|i| i.to_string()).collect();
        Ok(r)
    }

    /// Renumbers edges by first occurrence, pulling twist and label from the
    /// old ids. `ids` must already be a valid double occurrence word.
    fn renumbered(
        ids: &[usize],
        twisted_of: impl Fn(usize) -> bool,
        label_of: impl Fn(usize) -> Option<String>,
    ) -> Self {
        let max = ids.iter().copied().max().map_or(0, |m| m + 1);
        let mut new_id = vec![usize::MAX; max];
        let mut twisted = Vec::new();
        let mut labels = Vec::new();
        let seq = ids
            .iter()
            .map(|&id| {
                if new_id[id] == usize::MAX {
                    new_id[id] = twisted.len();
                    twisted.push(twisted_of(id));
                    labels.push(label_of(id).unwrap_or_else(|| twisted.len().to_string()));
                }
                new_id[id]
            })
            .collect();
        Self {
            seq,
            twisted,
            labels,
        }
    }

    fn sub_rotation(&self, ids: &[usize]) -> Self {
        Self::renumbered(ids, |e| self.twisted[e], |e| Some(self.labels[e].clone()))
    }

    pub fn edge_count(&self) -> usize {
        self.twisted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// Edge index at each cyclic position.
    pub fn positions(&self) -> &[usize] {
        &self.seq
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_twisted(&self, edge: usize) -> bool {
        self.twisted[edge]
    }

    pub fn twisted_edges(&self) -> &[bool] {
        &self.twisted
    }

    pub fn edge_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// A bouquet is orientable iff it has no twisted loop.
    pub fn is_orientable(&self) -> bool {
        !self.twisted.iter().any(|&t| t)
    }

    /// The two positions of every edge, first occurrence first.
    pub fn occurrences(&self) -> Vec<(usize, usize)> {
        let mut occ = vec![(usize::MAX, usize::MAX); self.edge_count()];
        for (pos, &e) in self.seq.iter().enumerate() {
            if occ[e].0 == usize::MAX {
                occ[e].0 = pos;
            } else {
                occ[e].1 = pos;
            }
        }
        occ
    }

    /// Slots with the `-` placed on the second occurrence of each twisted edge.
    pub fn slots(&self) -> Vec<Slot> {
        let mut seen = vec![false; self.edge_count()];
        self.seq
            .iter()
            .map(|&e| {
                let second = std::mem::replace(&mut seen[e], true);
                Slot {
                    edge: e,
                    marked: second && self.twisted[e],
                }
            })
            .collect()
    }

    pub fn to_rotation_system(&self) -> RotationSystem {
        RotationSystem::new(vec![self.slots()], self.labels.clone())
            .expect("signed rotation is a valid double occurrence word")
    }

    pub fn to_map(&self) -> FlagMap {
        FlagMap::from_rotation(&self.to_rotation_system())
    }

    pub fn edge_subset(&self, labels: &[&str]) -> Result<EdgeSubset, BouquetError> {
        self.to_rotation_system().subset(labels)
    }

    /// Interlace number of every edge: how many edges alternate with it.
    pub fn interlace_numbers(&self) -> Vec<usize> {
        let occ = self.occurrences();
        let n = occ.len();
        let mut alpha = vec![0usize; n];
        for e in 0..n {
            for f in (e + 1)..n {
                if interlaced(occ[e], occ[f]) {
                    alpha[e] += 1;
                    alpha[f] += 1;
                }
            }
        }
        alpha
    }

    pub fn signed_sequence(&self) -> SignedSequence {
        SignedSequence::new(
            self.interlace_numbers()
                .into_iter()
                .zip(&self.twisted)
                .map(|(alpha, &twisted)| SignedEntry { alpha, twisted })
                .collect(),
        )
    }

    pub fn delete(&self, label: &str) -> Result<Self, BouquetError> {
        let e = self
            .edge_index(label)
            .ok_or_else(|| BouquetError::NoSuchEdge {
                label: label.to_string(),
            })?;
        Ok(self.delete_edges(EdgeSubset::empty().with(e)))
    }

    /// Removes every edge in `drop`, keeping the cyclic order of the rest.
    pub fn delete_edges(&self, drop: EdgeSubset) -> Self {
        let ids: Vec<usize> = self
            .seq
            .iter()
            .copied()
            .filter(|&e| !drop.contains(e))
            .collect();
        self.sub_rotation(&ids)
    }

    /// Repeatedly removes trivial loops (interlace number 0).
    ///
    /// Returns `(i, j, reduced)` with `i` twisted and `j` untwisted loops removed.
    pub fn strip_trivial(&self) -> (usize, usize, Self) {
        let mut current = self.clone();
        let (mut i, mut j) = (0, 0);
        loop {
            let alpha = current.interlace_numbers();
            let mut drop = EdgeSubset::empty();
            for (e, &a) in alpha.iter().enumerate() {
                if a == 0 {
                    drop = drop.with(e);
                    if current.twisted[e] {
                        i += 1;
                    } else {
                        j += 1;
                    }
                }
            }
            if drop.is_empty() {
                return (i, j, current);
            }
            current = current.delete_edges(drop);
        }
    }

    /// Ribbon join at the vertex: the two cyclic orders concatenated.
    ///
    /// Labels of `other` that clash with ours get primes appended.
    pub fn join(&self, other: &Self) -> Self {
        let mut used: HashSet<String> = self.labels.iter().cloned().collect();
        let mut labels = self.labels.clone();
        for l in &other.labels {
            let mut fresh = l.clone();
            while used.contains(&fresh) {
                fresh.push('\'');
            }
            used.insert(fresh.clone());
            labels.push(fresh);
        }
        let offset = self.edge_count();
        let mut twisted = self.twisted.clone();
        twisted.extend_from_slice(&other.twisted);
        let ids: Vec<usize> = self
            .seq
            .iter()
            .copied()
            .chain(other.seq.iter().map(|&e| e + offset))
            .collect();
        Self::renumbered(&ids, |e| twisted[e], |e| Some(labels[e].clone()))
    }

    /// First proper cyclic arc `(start, len)` that contains both occurrences
    /// of every edge it touches.
    fn closed_arc(&self) -> Option<(usize, usize)> {
        let m = self.seq.len();
        let mut inside = vec![0u8; self.edge_count()];
        for start in 0..m {
            inside.iter_mut().for_each(|c| *c = 0);
            let mut open = 0usize;
            for len in 1..m {
                let e = self.seq[(start + len - 1) % m];
                inside[e] += 1;
                if inside[e] == 1 {
                    open += 1;
                } else {
                    open -= 1;
                }
                if open == 0 {
                    return Some((start, len));
                }
            }
        }
        None
    }

    /// Splits into prime bouquets along closed cyclic arcs.
    ///
    /// The join is not unique, so only the multiset of factors' polynomials is
    /// meaningful; the product of their partial-dual polynomials equals ours.
    pub fn factor(&self) -> Vec<Self> {
        if self.is_empty() {
            return Vec::new();
        }
        match self.closed_arc() {
            None => vec![self.clone()],
            Some((start, len)) => {
                let m = self.seq.len();
                let arc: Vec<usize> = (0..len).map(|k| self.seq[(start + k) % m]).collect();
                let rest: Vec<usize> = (len..m).map(|k| self.seq[(start + k) % m]).collect();
                let mut out = self.sub_rotation(&arc).factor();
                out.extend(self.sub_rotation(&rest).factor());
                out
            }
        }
    }

    /// Non-empty and not a join of two non-empty bouquets.
    pub fn is_prime(&self) -> bool {
        !self.is_empty() && self.closed_arc().is_none()
    }

    /// Lexicographically least encoding over rotations, reflection,
    /// relabelling and sign placement. Entry `2k` is edge `k`, `2k+1` its
    /// negated second occurrence.
    fn canonical_code(&self) -> Vec<u16> {
        let m = self.seq.len();
        let mut best: Vec<u16> = Vec::new();
        let mut code: Vec<u16> = Vec::with_capacity(m);
        let mut relabel = vec![u16::MAX; self.edge_count()];
        for reflect in [false, true] {
            for shift in 0..m {
                relabel.iter_mut().for_each(|x| *x = u16::MAX);
                code.clear();
                let mut next = 0u16;
                for k in 0..m {
                    let pos = if reflect {
                        (shift + m - k) % m
                    } else {
                        (shift + k) % m
                    };
                    let e = self.seq[pos];
                    if relabel[e] == u16::MAX {
                        relabel[e] = next;
                        next += 1;
                        code.push(2 * relabel[e]);
                    } else {
                        code.push(2 * relabel[e] + u16::from(self.twisted[e]));
                    }
                }
                if best.is_empty() || code < best {
                    best.clone_from(&code);
                }
            }
        }
        best
    }

    /// Canonical form as a compact string such as `(1,2,-1,2)`.
    pub fn canonical(&self) -> String {
        let code = self.canonical_code();
        let body: Vec<String> = code
            .iter()
            .map(|&c| {
                let label = c / 2 + 1;
                if c % 2 == 1 {
                    format!("-{label}")
                } else {
                    label.to_string()
                }
            })
            .collect();
        format!("({})", body.join(","))
    }

    /// The canonical representative, labelled `1..n`.
    pub fn canonical_rotation(&self) -> Self {
        let code = self.canonical_code();
        let ids: Vec<usize> = code.iter().map(|&c| usize::from(c / 2)).collect();
        let mut twisted = vec![false; self.edge_count()];
        for &c in &code {
            if c % 2 == 1 {
                twisted[usize::from(c / 2)] = true;
            }
        }
        Self::from_ids(&ids, &twisted).expect("canonical code is a double occurrence word")
    }

    /// Equality as ribbon graphs under the canonical moves.
    pub fn iso(&self, other: &Self) -> bool {
        self.edge_count() == other.edge_count() && self.canonical_code() == other.canonical_code()
    }
}

fn interlaced(a: (usize, usize), b: (usize, usize)) -> bool {
    let inside = |p: usize| a.0 < p && p < a.1;
    inside(b.0) != inside(b.1)
}

impl Default for SignedRotation {
    fn default() -> Self {
        Self::empty()
    }
}

impl FromStr for SignedRotation {
    type Err = BouquetError;

    /// Parses `(a, b, -a, b)`; outer parentheses and whitespace are optional.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let inner = strip_parens(text.trim());
        if inner.trim().is_empty() {
            return Ok(Self::empty());
        }
        let tokens = inner
            .split(',')
            .map(|t| rotation::parse_token(t.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        let mut labels: Vec<String> = Vec::new();
        let mut counts: Vec<usize> = Vec::new();
        let mut marks: Vec<usize> = Vec::new();
        let mut ids = Vec::with_capacity(tokens.len());
        for (label, marked) in tokens {
            let id = match labels.iter().position(|l| *l == label) {
                Some(id) => id,
                None => {
                    labels.push(label);
                    counts.push(0);
                    marks.push(0);
                    labels.len() - 1
                }
            };
            counts[id] += 1;
            marks[id] += usize::from(marked);
            ids.push(id);
        }
        if let Some(id) = counts.iter().position(|&c| c != 2) {
            return Err(BouquetError::LabelCountNotTwo {
                label: labels[id].clone(),
                count: counts[id],
            });
        }
        if let Some(id) = marks.iter().position(|&m| m == 2) {
            return Err(BouquetError::DoubleNegative {
                label: labels[id].clone(),
            });
        }
        Ok(Self::renumbered(
            &ids,
            |id| marks[id] == 1,
            |id| Some(labels[id].clone()),
        ))
    }
}

impl fmt::Display for SignedRotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, slot) in self.slots().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if slot.marked {
                f.write_str("-")?;
            }
            f.write_str(&self.labels[slot.edge])?;
        }
        f.write_str(")")
    }
}
