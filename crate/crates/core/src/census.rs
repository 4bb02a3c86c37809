//! Isomorph-free enumeration of bouquets and searches over the result.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::thread;

use thiserror::Error;

use crate::bouquet::{SignedRotation, SignedSequence};
use crate::genuspoly::GenusPolynomial;
use crate::pdengine::{pde_bouquet, pdg};

pub const DEFAULT_ENUMERATION_CAP: usize = 6;
pub const DEFAULT_SEARCH_CAP: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("{requested} edges exceeds the census cap of {cap} (raise it explicitly)")]
    CapExceeded { requested: usize, cap: usize },
}

/// One isomorphism class of bouquets with its invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BouquetClass {
    pub canonical: String,
    pub rotation: SignedRotation,
    pub sequence: SignedSequence,
    pub prime: bool,
    pub orientable: bool,
    pub pde: GenusPolynomial,
    pub pdg: Option<GenusPolynomial>,
}

impl BouquetClass {
    pub fn from_rotation(r: &SignedRotation) -> Self {
        let rotation = r.canonical_rotation();
        let pde = pde_bouquet(&rotation).expect("census sizes are far below the edge limit");
        let orientable = rotation.is_orientable();
        let pdg = orientable.then(|| {
            pde.halve_exponents()
                .expect("orientable bouquets have even Euler genera")
        });
        Self {
            canonical: rotation.canonical(),
            sequence: rotation.signed_sequence(),
            prime: rotation.is_prime(),
            orientable,
            rotation,
            pde,
            pdg,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.rotation.edge_count()
    }

    pub fn faces(&self) -> usize {
        self.rotation.to_map().counts().faces
    }
}

impl fmt::Display for BouquetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.canonical,
            self.sequence,
            if self.prime { "prime" } else { "non-prime" },
            if self.orientable {
                "orientable"
            } else {
                "non-orientable"
            },
            self.pde,
            self.pdg
                .as_ref()
                .map_or_else(|| "-".to_string(), ToString::to_string),
        )
    }
}

/// Enumeration settings: edge cap and worker count.
#[derive(Debug, Clone, Copy)]
pub struct Census {
    pub cap: usize,
    pub threads: usize,
}

impl Default for Census {
    fn default() -> Self {
        Self {
            cap: DEFAULT_ENUMERATION_CAP,
            threads: 1,
        }
    }
}

/// The bouquet `(1, 2, ..., t, 1, 2, ..., t)`.
pub fn theta(t: usize) -> SignedRotation {
    let ids: Vec<usize> = (0..t).chain(0..t).collect();
    SignedRotation::from_ids(&ids, &[]).expect("each edge appears twice")
}

/// Orientable genus of `theta(t)`: `(t-1)/2` for odd `t`, `t/2` for even `t`.
pub fn theta_genus_closed_form(t: usize) -> usize {
    if t % 2 == 1 {
        (t - 1) / 2
    } else {
        t / 2
    }
}

/// Closed form of the partial-dual orientable genus polynomial of `theta(t)`.
pub fn theta_pdg_closed_form(t: usize) -> GenusPolynomial {
    use num_bigint::BigUint;
    let pow = |k: usize| BigUint::from(1u32) << k;
    if t == 0 {
        GenusPolynomial::one()
    } else if t % 2 == 1 {
        GenusPolynomial::monomial(pow(t), ((t - 1) / 2) as u32)
    } else {
        GenusPolynomial::from_terms([
            ((t / 2) as u32, pow(t - 1)),
            (((t - 2) / 2) as u32, pow(t - 1)),
        ])
    }
}

/// Brute-force `pdg(theta(t))` against the closed form.
pub fn check_theta_formula(t: usize) -> bool {
    pdg(&theta(t).to_rotation_system()).is_ok_and(|p| p == theta_pdg_closed_form(t))
}

/// All perfect matchings of `0..2n`, as edge ids per position, where the
/// first free position is always paired with some later free position.
fn matchings_with_first(n: usize, first_partner: usize) -> Vec<Vec<usize>> {
    fn go(slots: &mut [usize], next: usize, out: &mut Vec<Vec<usize>>) {
        let Some(i) = slots.iter().position(|&s| s == usize::MAX) else {
            out.push(slots.to_vec());
            return;
        };
        for j in (i + 1)..slots.len() {
            if slots[j] == usize::MAX {
                slots[i] = next;
                slots[j] = next;
                go(slots, next + 1, out);
                slots[i] = usize::MAX;
                slots[j] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut slots = vec![usize::MAX; 2 * n];
    slots[0] = 0;
    slots[first_partner] = 0;
    go(&mut slots, 1, &mut out);
    out
}

/// Every labelled bouquet with `n` edges, before any identification.
pub fn raw_bouquets(n: usize, orientable_only: bool) -> Vec<SignedRotation> {
    let partners: Vec<usize> = if n == 0 { vec![0] } else { (1..2 * n).collect() };
    partners
        .into_iter()
        .flat_map(|p| raw_shard(n, p, orientable_only))
        .collect()
}

fn raw_shard(n: usize, first_partner: usize, orientable_only: bool) -> Vec<SignedRotation> {
    let twist_masks: u64 = if orientable_only { 1 } else { 1 << n };
    let mut out = Vec::new();
    for ids in matchings_with_first(n, first_partner) {
        for mask in 0..twist_masks {
            let twisted: Vec<bool> = (0..n).map(|e| mask >> e & 1 == 1).collect();
            out.push(SignedRotation::from_ids(&ids, &twisted).expect("matching is valid"));
        }
    }
    out
}

impl Census {
    pub fn with_cap(cap: usize) -> Self {
        Self {
            cap,
            ..Self::default()
        }
    }

    #[must_use]
    pub fn threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    fn check_cap(&self, n: usize) -> Result<(), CensusError> {
        if n > self.cap {
            Err(CensusError::CapExceeded {
                requested: n,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    /// Canonical representatives of all classes with exactly `n` edges.
    fn canonical_set(&self, n: usize, orientable_only: bool) -> BTreeMap<String, SignedRotation> {
        let shard = |p: usize| -> BTreeMap<String, SignedRotation> {
            raw_shard(n, p, orientable_only)
                .into_iter()
                .map(|r| (r.canonical(), r))
                .collect()
        };
        let partners: Vec<usize> = if n == 0 { vec![0] } else { (1..2 * n).collect() };
        let mut merged = BTreeMap::new();
        if self.threads <= 1 {
            for p in partners {
                merged.extend(shard(p));
            }
        } else {
            let groups: Vec<Vec<usize>> = (0..self.threads)
                .map(|w| partners.iter().copied().skip(w).step_by(self.threads).collect())
                .collect();
            let parts: Vec<BTreeMap<String, SignedRotation>> = thread::scope(|s| {
                let handles: Vec<_> = groups
                    .iter()
                    .map(|g| {
                        s.spawn(move || {
                            let mut m = BTreeMap::new();
                            for &p in g {
                                m.extend(shard(p));
                            }
                            m
                        })
                    })
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("census worker panicked"))
                    .collect()
            });
            for part in parts {
                for (k, v) in part {
                    merged.entry(k).or_insert(v);
                }
            }
        }
        merged
    }

    /// Isomorphism classes of bouquets with exactly `n` edges, sorted by
    /// canonical string.
    pub fn enumerate(
        &self,
        n: usize,
        orientable_only: bool,
        prime_only: bool,
    ) -> Result<Vec<BouquetClass>, CensusError> {
        self.check_cap(n)?;
        Ok(self
            .canonical_set(n, orientable_only)
            .values()
            .filter(|r| !prime_only || r.is_prime())
            .map(BouquetClass::from_rotation)
            .collect())
    }

    /// Classes with `1..=n` edges.
    pub fn enumerate_up_to(
        &self,
        n: usize,
        orientable_only: bool,
        prime_only: bool,
    ) -> Result<Vec<BouquetClass>, CensusError> {
        self.check_cap(n)?;
        let mut out = Vec::new();
        for k in 1..=n {
            out.extend(self.enumerate(k, orientable_only, prime_only)?);
        }
        Ok(out)
    }

    /// Orientable classes whose orientable polynomial has a single term of
    /// positive degree.
    pub fn search_conjecture_31(&self, n: usize) -> Result<Vec<BouquetClass>, CensusError> {
        Ok(self
            .enumerate_up_to(n, true, false)?
            .into_iter()
            .filter(|c| c.pdg.as_ref().is_some_and(GenusPolynomial::is_singleton_nonconstant))
            .collect())
    }

    /// Non-orientable classes whose Euler polynomial has a gap in its support.
    pub fn search_conjecture_53(&self, n: usize) -> Result<Vec<BouquetClass>, CensusError> {
        Ok(self
            .enumerate_up_to(n, false, false)?
            .into_iter()
            .filter(|c| !c.orientable && !c.pde.is_interpolating())
            .collect())
    }

    /// Checks how far the signed sequence determines the class and its
    /// polynomials: over all bouquets with at most `n_all` edges and over
    /// orientable ones with at most `n_orientable` edges.
    pub fn verify_classification(
        &self,
        n_all: usize,
        n_orientable: usize,
    ) -> Result<ClassificationReport, CensusError> {
        let all = self.enumerate_up_to(n_all, false, false)?;
        let orientable = self.enumerate_up_to(n_orientable, true, false)?;

        let mut report = ClassificationReport {
            n_all,
            n_orientable,
            ..Default::default()
        };
        for c in all.iter().filter(|c| c.prime) {
            *report.prime_counts_all.entry(c.edge_count()).or_default() += 1;
        }
        for c in orientable.iter().filter(|c| c.prime) {
            *report.prime_counts_orientable.entry(c.edge_count()).or_default() += 1;
        }

        let primes: Vec<&BouquetClass> = all
            .iter()
            .chain(orientable.iter().filter(|c| c.edge_count() > n_all))
            .filter(|c| c.prime)
            .collect();
        for group in group_by_sequence(primes).values() {
            report.sequence_collisions.extend(all_pairs(group));
        }

        for group in group_by_sequence(all.iter().collect()).values() {
            report
                .pde_violations
                .extend(all_pairs(group).into_iter().filter(|p| p.0.pde != p.1.pde));
        }
        for group in group_by_sequence(orientable.iter().collect()).values() {
            report
                .pdg_violations
                .extend(all_pairs(group).into_iter().filter(|p| p.0.pdg != p.1.pdg));
        }
        Ok(report)
    }
}

fn group_by_sequence(classes: Vec<&BouquetClass>) -> BTreeMap<SignedSequence, Vec<&BouquetClass>> {
    let mut groups: BTreeMap<SignedSequence, Vec<&BouquetClass>> = BTreeMap::new();
    for c in classes {
        groups.entry(c.sequence.clone()).or_default().push(c);
    }
    groups
}

fn all_pairs(group: &[&BouquetClass]) -> Vec<ClassPair> {
    let mut out = Vec::new();
    for (i, a) in group.iter().enumerate() {
        for b in &group[i + 1..] {
            out.push(ClassPair((*a).clone(), (*b).clone()));
        }
    }
    out
}

/// Two distinct classes sharing a signed sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPair(pub BouquetClass, pub BouquetClass);

impl ClassPair {
    pub fn involves(&self, a: &SignedRotation, b: &SignedRotation) -> bool {
        let (x, y) = (&self.0.rotation, &self.1.rotation);
        (x.iso(a) && y.iso(b)) || (x.iso(b) && y.iso(a))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClassificationReport {
    pub n_all: usize,
    pub n_orientable: usize,
    /// Prime classes per edge count, all bouquets.
    pub prime_counts_all: BTreeMap<usize, usize>,
    /// Prime classes per edge count, orientable bouquets.
    pub prime_counts_orientable: BTreeMap<usize, usize>,
    /// Non-isomorphic prime classes with equal signed sequences.
    pub sequence_collisions: Vec<ClassPair>,
    /// Equal sequences, different Euler polynomials.
    pub pde_violations: Vec<ClassPair>,
    /// Equal sequences, different orientable polynomials (orientable classes).
    pub pdg_violations: Vec<ClassPair>,
}

impl ClassificationReport {
    pub fn is_clean(&self) -> bool {
        self.sequence_collisions.is_empty()
            && self.pde_violations.is_empty()
            && self.pdg_violations.is_empty()
    }

    /// Smallest edge count with a Euler polynomial violation.
    pub fn first_pde_violation(&self) -> Option<usize> {
        self.pde_violations.iter().map(|p| p.0.edge_count()).min()
    }

    pub fn first_pdg_violation(&self) -> Option<usize> {
        self.pdg_violations.iter().map(|p| p.0.edge_count()).min()
    }

    pub fn first_collision(&self) -> Option<usize> {
        self.sequence_collisions.iter().map(|p| p.0.edge_count()).min()
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "classification: all bouquets e<={}, orientable e<={}",
            self.n_all, self.n_orientable
        );
        let counts = |m: &BTreeMap<usize, usize>| {
            m.iter()
                .map(|(e, c)| format!("e={e}:{c}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let _ = writeln!(s, "prime classes (all): {}", counts(&self.prime_counts_all));
        let _ = writeln!(
            s,
            "prime classes (orientable): {}",
            counts(&self.prime_counts_orientable)
        );
        let sections: [(&str, &Vec<ClassPair>, fn(&BouquetClass) -> String); 3] = [
            ("sequence collisions", &self.sequence_collisions, |c| {
                format!("f={}", c.faces())
            }),
            ("pDe violations", &self.pde_violations, |c| c.pde.to_string()),
            ("pDg violations", &self.pdg_violations, |c| {
                c.pdg.as_ref().map_or_else(String::new, ToString::to_string)
            }),
        ];
        for (title, pairs, detail) in sections {
            let _ = writeln!(s, "{title}: {}", pairs.len());
            for ClassPair(a, b) in pairs {
                let _ = writeln!(
                    s,
                    "  {} {} [{}] vs {} [{}]",
                    a.sequence,
                    a.canonical,
                    detail(a),
                    b.canonical,
                    detail(b)
                );
            }
        }
        s
    }
}

/// Sets of canonical strings, with and without deduplication, for closure checks.
pub fn canonical_strings(classes: &[BouquetClass]) -> BTreeSet<String> {
    classes.iter().map(|c| c.canonical.clone()).collect()
}
