//! Canonical extensions of finite frames.
//!
//! The extension of a frame `L` is built as the concept lattice of the
//! polarity between its Scott-open filters and its elements, and every
//! structural claim about it (density, compactness, the basic preservation
//! properties, uniqueness against the saturated-set model of the spectrum,
//! lifting of maps, sublocale and proximity variants) is available as an
//! executable check that runs the definitions literally on finite carriers.
//!
//! Modules, bottom-up:
//!
//! - [`bits`]: `u64` bit sets and the NextClosure enumerator
//! - [`order`]: finite lattices, order predicates, way-below, isomorphism
//! - [`polarity`]: polarities, Galois-closed sets, concept lattices
//! - [`filters`]: filters, ideals, Scott-open filters
//! - [`spaces`]: finite spaces, points of a frame, saturated sets
//! - [`canext`]: the canonical extension and its verifiers
//! - [`maps`]: σ/π extensions of maps and the lemmas about them
//! - [`sublocales`]: nuclei, open/closed/fitted sublocales, `Sc(L)`
//! - [`proximity`]: join-strong proximity lattices and round ideals
//! - [`report`], [`suite`]: verification reports and the per-frame suite

pub mod bits;
pub mod canext;
pub mod corpus;
pub mod error;
pub mod filters;
pub mod maps;
pub mod order;
pub mod polarity;
pub mod proximity;
pub mod report;
pub mod spaces;
pub mod sublocales;
pub mod suite;

pub use bits::Bits;
pub use error::{Error, Result};
pub use order::{build_lattice, find_isomorphism, FiniteLattice, RelationMode};
