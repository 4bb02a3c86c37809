//! Partial-dual Euler-genus and orientable-genus polynomials.
//!
//! [`pde_direct`] sums over all `2^e` partial duals of the flag map and is the
//! ground truth. [`pde_bouquet`] is the fast path for bouquets: it strips
//! trivial loops, factors into prime joins, and for each prime factor adds the
//! Euler genera of the spanning sub-bouquets on `A` and on its complement.

use std::thread;

use thiserror::Error;

use crate::bouquet::{RotationSystem, SignedRotation};
use crate::flagmap::{EdgeSubset, FlagMap, FlagMapError};
use crate::genuspoly::{GenusPolynomial, PolyError};

/// Largest edge count accepted by direct enumeration.
pub const MAX_DIRECT_EDGES: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("{edges} edges exceeds the enumeration limit of {MAX_DIRECT_EDGES}")]
    TooManyEdges { edges: usize },
    #[error("ribbon graph is not orientable")]
    NonOrientable,
    #[error(transparent)]
    FlagMap(#[from] FlagMapError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `Σ_{A ⊆ E} z^{ε(G^A)}` by explicit enumeration, single-threaded.
pub fn pde_direct(r: &RotationSystem) -> Result<GenusPolynomial, EngineError> {
    pde_of_map(&r.to_map(), 1)
}

/// As [`pde_direct`], sharding the subset range over `threads` workers.
pub fn pde_direct_threads(
    r: &RotationSystem,
    threads: usize,
) -> Result<GenusPolynomial, EngineError> {
    pde_of_map(&r.to_map(), threads)
}

pub fn pde_of_map(m: &FlagMap, threads: usize) -> Result<GenusPolynomial, EngineError> {
    let e = m.edge_count();
    if e > MAX_DIRECT_EDGES {
        return Err(EngineError::TooManyEdges { edges: e });
    }
    let total: u64 = 1 << e;
    let workers = (threads.max(1) as u64).min(total);
    let chunk = total.div_ceil(workers);
    let histogram = |lo: u64, hi: u64| -> Vec<u64> {
        let mut hist = vec![0u64; e + 1];
        let mut ev = m.dual_genus_evaluator();
        for mask in lo..hi {
            let g = ev
                .euler_genus(EdgeSubset::from_mask(mask))
                .expect("mask below 2^e");
            hist[g] += 1;
        }
        hist
    };
    let hist = if workers == 1 {
        histogram(0, total)
    } else {
        thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let lo = w * chunk;
                    let hi = ((w + 1) * chunk).min(total);
                    s.spawn(move || histogram(lo, hi))
                })
                .collect();
            let mut acc = vec![0u64; e + 1];
            for h in handles {
                for (a, b) in acc.iter_mut().zip(h.join().expect("worker panicked")) {
                    *a += b;
                }
            }
            acc
        })
    };
    Ok(GenusPolynomial::from_histogram(&hist))
}

/// Fast path for bouquets; always equal to [`pde_direct`] on the same input.
pub fn pde_bouquet(r: &SignedRotation) -> Result<GenusPolynomial, EngineError> {
    if r.edge_count() > MAX_DIRECT_EDGES {
        return Err(EngineError::TooManyEdges {
            edges: r.edge_count(),
        });
    }
    let (twisted_trivial, untwisted_trivial, reduced) = r.strip_trivial();
    let prefactor = GenusPolynomial::monomial(
        num_bigint::BigUint::from(1u32) << (twisted_trivial + untwisted_trivial),
        twisted_trivial as u32,
    );
    let product: GenusPolynomial = reduced.factor().iter().map(prime_pde).product();
    Ok(&prefactor * &product)
}

/// `Σ_A z^{ε(A) + ε(A^c)}` over the subsets of a single bouquet.
fn prime_pde(p: &SignedRotation) -> GenusPolynomial {
    let rs = p.to_rotation_system();
    let e = p.edge_count();
    let genus: Vec<usize> = (0..1u64 << e)
        .map(|mask| rs.restrict(EdgeSubset::from_mask(mask)).to_map().euler_genus())
        .collect();
    let mut hist = vec![0u64; 2 * e + 1];
    for mask in 0..1u64 << e {
        let comp = EdgeSubset::from_mask(mask).complement(e).mask();
        hist[genus[mask as usize] + genus[comp as usize]] += 1;
    }
    GenusPolynomial::from_histogram(&hist)
}

/// `Σ_{A ⊆ E} z^{γ(G^A)}`, obtained by halving the exponents of the Euler version.
pub fn pdg(r: &RotationSystem) -> Result<GenusPolynomial, EngineError> {
    pdg_threads(r, 1)
}

pub fn pdg_threads(r: &RotationSystem, threads: usize) -> Result<GenusPolynomial, EngineError> {
    let m = r.to_map();
    if !m.orientable() {
        return Err(EngineError::NonOrientable);
    }
    Ok(pde_of_map(&m, threads)?.halve_exponents()?)
}

pub fn pdg_bouquet(r: &SignedRotation) -> Result<GenusPolynomial, EngineError> {
    if !r.is_orientable() {
        return Err(EngineError::NonOrientable);
    }
    Ok(pde_bouquet(r)?.halve_exponents()?)
}

/// Compares the polynomial of `r` with that of its partial dual along `subset`.
pub fn check_invariance(r: &RotationSystem, subset: EdgeSubset) -> Result<bool, EngineError> {
    let dual = r.to_map().partial_dual(subset)?;
    let (rotated, _) = dual.extract_rotation_labeled(r.labels());
    Ok(pde_direct(r)? == pde_direct(&rotated)?)
}
