//! Partial-dual genus polynomials of ribbon graphs.
//!
//! Ribbon graphs are held as flag maps ([`FlagMap`]); bouquets additionally
//! have a signed-rotation front end ([`SignedRotation`]) with interlacement,
//! signed sequences, trivial-loop stripping, join factorisation and a
//! canonical form. [`pdengine`] computes the partial-dual Euler-genus and
//! orientable-genus polynomials, and [`census`] enumerates small bouquets up
//! to isomorphism.

pub mod audit;
pub mod bouquet;
pub mod census;
pub mod flagmap;
pub mod genuspoly;
pub mod pdengine;

pub use bouquet::{
    BouquetError, RotationSystem, SignedEntry, SignedRotation, SignedSequence, Slot,
};
pub use census::{BouquetClass, Census, CensusError, ClassificationReport};
pub use flagmap::{Counts, EdgeSubset, FlagMap, FlagMapError};
pub use genuspoly::{GenusPolynomial, PolyError};
pub use pdengine::{
    check_invariance, pde_bouquet, pde_direct, pde_direct_threads, pdg, pdg_bouquet, EngineError,
};
