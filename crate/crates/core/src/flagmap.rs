//! Graph-encoded maps: ribbon graphs as three involutions on flags.
//!
//! Every edge owns four flags. Each half-edge slot in a vertex's cyclic order
//! carries a left flag `2g` and a right flag `2g + 1`, where `g` is the slot's
//! global index. The involutions are
//!
//! * `a2`: swap left and right at the same slot,
//! * `a1`: pair `(slot i, R)` with `(slot i+1, L)` around the vertex,
//! * `a0`: cross to the other end of the edge; an untwisted edge pairs
//!   `L ↔ R`, a twisted edge pairs `L ↔ L` and `R ↔ R`.
//!
//! Vertices are `⟨a1, a2⟩` orbits, edges `⟨a0, a2⟩` orbits and faces
//! `⟨a0, a1⟩` orbits. Isolated vertices have no flags and are kept as a count.

use std::fmt;

use thiserror::Error;

use crate::bouquet::{RotationSystem, Slot};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Involution {
    A0,
    A1,
    A2,
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Involution::A0 => "a0",
            Involution::A1 => "a1",
            Involution::A2 => "a2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlagMapError {
    #[error("flag arrays have different lengths")]
    LengthMismatch,
    #[error("{which} is not an involution at flag {flag}")]
    NotInvolution { which: Involution, flag: usize },
    #[error("{which} fixes flag {flag}")]
    FixedPoint { which: Involution, flag: usize },
    #[error("edge orbit through flag {flag} is not four flags of one edge")]
    BadEdgeOrbit { flag: usize },
    #[error("edge subset {mask:#b} does not fit in {edges} edges")]
    MaskOutOfRange { mask: u64, edges: usize },
    #[error("map is not orientable")]
    NonOrientable,
}

/// A set of edges as a bitmask over edge indices.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSubset(u64);

impl EdgeSubset {
    pub const fn empty() -> Self {
        Self(0)
    }

    pub const fn from_mask(mask: u64) -> Self {
        Self(mask)
    }

    /// All of `0..edges`.
    pub fn full(edges: usize) -> Self {
        Self(low_bits(edges))
    }

    pub fn from_edges<I: IntoIterator<Item = usize>>(edges: I) -> Self {
        edges.into_iter().fold(Self::empty(), Self::with)
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    #[must_use]
    pub fn with(self, edge: usize) -> Self {
        Self(self.0 | 1u64 << edge)
    }

    pub fn contains(self, edge: usize) -> bool {
        edge < 64 && self.0 >> edge & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Complement within `0..edges`.
    pub fn complement(self, edges: usize) -> Self {
        Self(!self.0 & low_bits(edges))
    }

    pub fn fits(self, edges: usize) -> bool {
        self.0 & !low_bits(edges) == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&e| self.contains(e))
    }
}

fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Counts {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub components: usize,
}

impl Counts {
    /// `2c - (v - e + f)`, the Euler genus summed over components.
    pub fn euler_genus(&self) -> usize {
        2 * self.components + self.edges - self.vertices - self.faces
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagMap {
    a0: Vec<usize>,
    a1: Vec<usize>,
    a2: Vec<usize>,
    edge_of: Vec<usize>,
    isolated_vertices: usize,
}

impl FlagMap {
    /// Validates raw involution data.
    pub fn build(
        a0: Vec<usize>,
        a1: Vec<usize>,
        a2: Vec<usize>,
        edge_of: Vec<usize>,
        isolated_vertices: usize,
    ) -> Result<Self, FlagMapError> {
        let n = a0.len();
        if a1.len() != n || a2.len() != n || edge_of.len() != n {
            return Err(FlagMapError::LengthMismatch);
        }
        for (which, inv) in [
            (Involution::A0, &a0),
            (Involution::A1, &a1),
            (Involution::A2, &a2),
        ] {
            for (flag, &image) in inv.iter().enumerate() {
                if image == flag {
                    return Err(FlagMapError::FixedPoint { which, flag });
                }
                if image >= n || inv[image] != flag {
                    return Err(FlagMapError::NotInvolution { which, flag });
                }
            }
        }
        if n % 4 != 0 {
            return Err(FlagMapError::BadEdgeOrbit { flag: 0 });
        }
        let edges = n / 4;
        let mut owner = vec![usize::MAX; edges];
        for flag in 0..n {
            let e = edge_of[flag];
            let orbit = [flag, a0[flag], a2[flag], a0[a2[flag]]];
            let distinct = orbit[3] == a2[a0[flag]]
                && orbit
                    .iter()
                    .enumerate()
                    .all(|(i, x)| orbit[..i].iter().all(|y| y != x));
            if e >= edges || !distinct || orbit.iter().any(|&x| edge_of[x] != e) {
                return Err(FlagMapError::BadEdgeOrbit { flag });
            }
            let rep = *orbit.iter().min().unwrap();
            if owner[e] == usize::MAX {
                owner[e] = rep;
            } else if owner[e] != rep {
                return Err(FlagMapError::BadEdgeOrbit { flag });
            }
        }
        Ok(Self {
            a0,
            a1,
            a2,
            edge_of,
            isolated_vertices,
        })
    }

    pub fn from_rotation(r: &RotationSystem) -> Self {
        let flags = 2 * r.slot_count();
        let mut a0 = vec![0; flags];
        let mut a1 = vec![0; flags];
        let mut a2 = vec![0; flags];
        let mut edge_of = vec![0; flags];
        let mut ends: Vec<Vec<usize>> = vec![Vec::with_capacity(2); r.edge_count()];
        let mut isolated = 0;
        let mut base = 0;
        for slots in r.vertices() {
            let deg = slots.len();
            if deg == 0 {
                isolated += 1;
            }
            for (i, slot) in slots.iter().enumerate() {
                let g = base + i;
                let next = base + (i + 1) % deg;
                a2[2 * g] = 2 * g + 1;
                a2[2 * g + 1] = 2 * g;
                a1[2 * g + 1] = 2 * next;
                a1[2 * next] = 2 * g + 1;
                edge_of[2 * g] = slot.edge;
                edge_of[2 * g + 1] = slot.edge;
                ends[slot.edge].push(g);
            }
            base += deg;
        }
        let twisted = r.twisted_edges();
        for (e, end) in ends.iter().enumerate() {
            let (s, t) = (end[0], end[1]);
            let (sl, sr, tl, tr) = (2 * s, 2 * s + 1, 2 * t, 2 * t + 1);
            let pairs = if twisted[e] {
                [(sl, tl), (sr, tr)]
            } else {
                [(sl, tr), (sr, tl)]
            };
            for (x, y) in pairs {
                a0[x] = y;
                a0[y] = x;
            }
        }
        Self {
            a0,
            a1,
            a2,
            edge_of,
            isolated_vertices: isolated,
        }
    }

    pub fn flag_count(&self) -> usize {
        self.a0.len()
    }

    pub fn edge_count(&self) -> usize {
        self.a0.len() / 4
    }

    pub fn isolated_vertices(&self) -> usize {
        self.isolated_vertices
    }

    pub fn involution(&self, which: Involution) -> &[usize] {
        match which {
            Involution::A0 => &self.a0,
            Involution::A1 => &self.a1,
            Involution::A2 => &self.a2,
        }
    }

    pub fn edge_of(&self) -> &[usize] {
        &self.edge_of
    }

    fn orbits(&self, gens: &[&[usize]], label: &mut [usize]) -> usize {
        label.iter_mut().for_each(|l| *l = usize::MAX);
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..self.flag_count() {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            stack.push(start);
            while let Some(x) = stack.pop() {
                for g in gens {
                    let y = g[x];
                    if label[y] == usize::MAX {
                        label[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        count
    }

    pub fn counts(&self) -> Counts {
        let mut scratch = vec![0; self.flag_count()];
        let iso = self.isolated_vertices;
        Counts {
            vertices: self.orbits(&[&self.a1, &self.a2], &mut scratch) + iso,
            edges: self.orbits(&[&self.a0, &self.a2], &mut scratch),
            faces: self.orbits(&[&self.a0, &self.a1], &mut scratch) + iso,
            components: self.orbits(&[&self.a0, &self.a1, &self.a2], &mut scratch) + iso,
        }
    }

    /// Counts for every connected component; isolated vertices come last.
    pub fn component_counts(&self) -> Vec<Counts> {
        let n = self.flag_count();
        let mut comp = vec![0; n];
        let c = self.orbits(&[&self.a0, &self.a1, &self.a2], &mut comp);
        let mut out = vec![Counts::default(); c];
        let mut label = vec![0; n];
        let kinds: [(&[&[usize]], fn(&mut Counts)); 3] = [
            (&[&self.a1, &self.a2], |k| k.vertices += 1),
            (&[&self.a0, &self.a2], |k| k.edges += 1),
            (&[&self.a0, &self.a1], |k| k.faces += 1),
        ];
        for (gens, bump) in kinds {
            let m = self.orbits(gens, &mut label);
            let mut seen = vec![false; m];
            for flag in 0..n {
                if !std::mem::replace(&mut seen[label[flag]], true) {
                    bump(&mut out[comp[flag]]);
                }
            }
        }
        for k in &mut out {
            k.components = 1;
        }
        out.extend((0..self.isolated_vertices).map(|_| Counts {
            vertices: 1,
            edges: 0,
            faces: 1,
            components: 1,
        }));
        out
    }

    pub fn euler_genus(&self) -> usize {
        self.counts().euler_genus()
    }

    /// Bipartiteness of the flag graph spanned by all three involutions.
    pub fn orientable(&self) -> bool {
        let n = self.flag_count();
        let mut side = vec![u8::MAX; n];
        let mut stack = Vec::new();
        for start in 0..n {
            if side[start] != u8::MAX {
                continue;
            }
            side[start] = 0;
            stack.push(start);
            while let Some(x) = stack.pop() {
                for g in [&self.a0, &self.a1, &self.a2] {
                    let y = g[x];
                    if side[y] == u8::MAX {
                        side[y] = 1 - side[x];
                        stack.push(y);
                    } else if side[y] == side[x] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Orientable genus, half the Euler genus.
    pub fn genus(&self) -> Result<usize, FlagMapError> {
        if !self.orientable() {
            return Err(FlagMapError::NonOrientable);
        }
        let eg = self.euler_genus();
        assert!(eg % 2 == 0, "orientable map with odd Euler genus {eg}");
        Ok(eg / 2)
    }

    /// Partial dual along `subset`: `a0` and `a2` trade places on the flags of
    /// every edge in the subset.
    pub fn partial_dual(&self, subset: EdgeSubset) -> Result<FlagMap, FlagMapError> {
        self.check_subset(subset)?;
        let mut out = self.clone();
        for flag in 0..self.flag_count() {
            if subset.contains(self.edge_of[flag]) {
                out.a0[flag] = self.a2[flag];
                out.a2[flag] = self.a0[flag];
            }
        }
        Ok(out)
    }

    fn check_subset(&self, subset: EdgeSubset) -> Result<(), FlagMapError> {
        if subset.fits(self.edge_count()) {
            Ok(())
        } else {
            Err(FlagMapError::MaskOutOfRange {
                mask: subset.mask(),
                edges: self.edge_count(),
            })
        }
    }

    /// A genus evaluator for many partial duals of this map that reuses its
    /// buffers between calls.
    pub fn dual_genus_evaluator(&self) -> DualGenusEvaluator<'_> {
        DualGenusEvaluator::new(self)
    }

    /// Rotation system of this map with edges labelled `1..=e`.
    pub fn extract_rotation(&self) -> (RotationSystem, Vec<usize>) {
        let labels: Vec<String> = (1..=self.edge_count()).map(|i| i.to_string()).collect();
        self.extract_rotation_labeled(&labels)
    }

    /// Reads off a rotation system together with the flag bijection
    /// `rebuilt flag -> flag of self` that commutes with all three involutions.
    ///
    /// `labels[e]` names edge `e`; edge indices are preserved.
    pub fn extract_rotation_labeled(&self, labels: &[String]) -> (RotationSystem, Vec<usize>) {
        let n = self.flag_count();
        let mut visited = vec![false; n];
        let mut vertices: Vec<Vec<Slot>> = Vec::new();
        // rebuilt flag index -> original flag
        let mut bijection: Vec<usize> = Vec::with_capacity(n);
        // Vertices are read in breadth-first order; a newly reached vertex
        // starts at the flag that makes its tree edge untwisted, so an
        // orientable map comes back with no marks at all.
        let mut queue = std::collections::VecDeque::new();
        for root in 0..n {
            if visited[root] {
                continue;
            }
            queue.push_back(root);
            while let Some(start) = queue.pop_front() {
                if visited[start] {
                    continue;
                }
                let mut slots = Vec::new();
                let mut f = start;
                loop {
                    let r = self.a2[f];
                    visited[f] = true;
                    visited[r] = true;
                    bijection.push(f);
                    bijection.push(r);
                    slots.push(Slot {
                        edge: self.edge_of[f],
                        marked: false,
                    });
                    let across = self.a2[self.a0[f]];
                    if !visited[across] {
                        queue.push_back(across);
                    }
                    f = self.a1[r];
                    if f == start {
                        break;
                    }
                }
                vertices.push(slots);
            }
        }
        vertices.extend((0..self.isolated_vertices).map(|_| Vec::new()));
        let mut position = vec![0; n];
        for (rebuilt, &orig) in bijection.iter().enumerate() {
            position[orig] = rebuilt;
        }
        // Twist: the left flag of an edge's first slot meets a left flag.
        let mut slot_ref: Vec<(usize, usize)> = Vec::new();
        for (v, slots) in vertices.iter().enumerate() {
            for i in 0..slots.len() {
                slot_ref.push((v, i));
            }
        }
        let mut done = vec![false; self.edge_count()];
        for g in 0..slot_ref.len() {
            let (v, i) = slot_ref[g];
            let e = vertices[v][i].edge;
            if std::mem::replace(&mut done[e], true) {
                continue;
            }
            let partner = position[self.a0[bijection[2 * g]]];
            if partner % 2 == 0 {
                let (pv, pi) = slot_ref[partner / 2];
                vertices[pv][pi].marked = true;
            }
        }
        let labels = (0..self.edge_count())
            .map(|e| labels.get(e).cloned().unwrap_or_else(|| (e + 1).to_string()))
            .collect();
        let r = RotationSystem::new(vertices, labels).expect("extracted edges occur twice");
        (r, bijection)
    }
}

/// Computes the Euler genus of `partial_dual(subset)` without building the dual.
///
/// The component count is unchanged by partial duality (the generated group
/// is the same), so only vertex and face orbits are recounted.
pub struct DualGenusEvaluator<'a> {
    map: &'a FlagMap,
    base_components: usize,
    stamp: Vec<u32>,
    generation: u32,
}

impl<'a> DualGenusEvaluator<'a> {
    fn new(map: &'a FlagMap) -> Self {
        let base_components = map.counts().components;
        Self {
            map,
            base_components,
            stamp: vec![0; map.flag_count()],
            generation: 0,
        }
    }

    pub fn euler_genus(&mut self, subset: EdgeSubset) -> Result<usize, FlagMapError> {
        self.map.check_subset(subset)?;
        let m = self.map;
        let in_subset = |f: usize| subset.contains(m.edge_of[f]);
        let a0 = |f: usize| if in_subset(f) { m.a2[f] } else { m.a0[f] };
        let a2 = |f: usize| if in_subset(f) { m.a0[f] } else { m.a2[f] };
        let vertices = self.alternating_cycles(|f| m.a1[f], a2) + m.isolated_vertices;
        let faces = self.alternating_cycles(a0, |f| m.a1[f]) + m.isolated_vertices;
        let counts = Counts {
            vertices,
            edges: m.edge_count(),
            faces,
            components: self.base_components,
        };
        Ok(counts.euler_genus())
    }

    /// Orbits of the group generated by two fixed-point-free involutions.
    fn alternating_cycles(&mut self, p: impl Fn(usize) -> usize, q: impl Fn(usize) -> usize) -> usize {
        self.generation += 1;
        let gen = self.generation;
        let mut count = 0;
        for start in 0..self.stamp.len() {
            if self.stamp[start] == gen {
                continue;
            }
            count += 1;
            let mut f = start;
            loop {
                self.stamp[f] = gen;
                let g = p(f);
                self.stamp[g] = gen;
                f = q(g);
                if f == start {
                    break;
                }
            }
        }
        count
    }
}
