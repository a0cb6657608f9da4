//! The canonical extension `e: L → L^δ` of a finite frame.
//!
//! [`canonical_extension`] builds `L^δ` as the concept lattice of the
//! polarity `(L_SO, L, ∋)`; `e` is the polarity's `g` and `e_SO` its `f`.
//! Other constructions of the same object (the saturated-set model of the
//! spectrum, intersections of Scott-open filters) produce bundles of the
//! same shape so that every verifier runs against any of them.

mod dlat;
mod repr;
mod verify;

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::filters::{scott_open_poset, ScottOpenFilterPoset};
use crate::order::FiniteLattice;
use crate::polarity::Polarity;

pub use dlat::{dlat_canonical_extension, DlatExtension};
pub use repr::{bundle_isomorphism, intersection_filter_representation, reindex_space_bundle};
pub use verify::{
    compact_plus_witness, compact_witness, dense_witness, frame_coframe_check, sup_lemma_check,
    verify_basic_properties, verify_compact, verify_compact_plus, verify_dense, DEFAULT_SEED,
    SUP_LEMMA_TRIALS,
};

/// Where a bundle came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Polarity,
    SpaceOracle,
    FilterRepresentation,
    /// Built by hand or read from a document.
    Supplied,
}

/// `L`, `L^δ`, the Scott-open filters of `L`, and the maps `e`, `e_SO`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanExtBundle {
    pub source: FiniteLattice,
    pub extension: FiniteLattice,
    pub scott_open: ScottOpenFilterPoset,
    /// `e(a)` for each element `a` of the source.
    pub e: Vec<usize>,
    /// `e_SO(F)` for each Scott-open filter, indexed as in `scott_open`.
    pub e_so: Vec<usize>,
    pub provenance: Provenance,
}

impl CanExtBundle {
    /// `⋀ e[F]` computed in the extension.
    pub fn meet_of_image(&self, f: Bits) -> usize {
        self.extension
            .meet_all(f.iter().map(|a| self.e[a]).collect())
    }

    /// Whether `e_SO(F) = ⋀ e[F]` for every Scott-open `F`.
    pub fn e_so_consistent(&self) -> bool {
        self.scott_open
            .filters
            .iter()
            .zip(&self.e_so)
            .all(|(&f, &v)| self.meet_of_image(f) == v)
    }

    /// Checks table lengths and ranges.
    pub fn validate_shape(&self) -> Result<()> {
        let n = self.extension.size();
        if self.e.len() != self.source.size() || self.e_so.len() != self.scott_open.len() {
            return Err(Error::SourceTargetMismatch(format!(
                "e has {} entries for {} elements, e_SO has {} for {} filters",
                self.e.len(),
                self.source.size(),
                self.e_so.len(),
                self.scott_open.len()
            )));
        }
        if let Some(&v) = self.e.iter().chain(&self.e_so).find(|&&v| v >= n) {
            return Err(Error::SourceTargetMismatch(format!(
                "map value {v} outside an extension of size {n}"
            )));
        }
        Ok(())
    }

    /// Replaces `e` and recomputes `e_SO` as `⋀ e[F]`.
    pub fn with_e(&self, e: Vec<usize>) -> CanExtBundle {
        let mut b = CanExtBundle {
            e,
            e_so: Vec::new(),
            provenance: Provenance::Supplied,
            ..self.clone()
        };
        b.e_so = b
            .scott_open
            .filters
            .iter()
            .map(|&f| b.meet_of_image(f))
            .collect();
        b
    }
}

fn require_frame(l: &FiniteLattice) -> Result<()> {
    match l.frame_law_witness() {
        None => Ok(()),
        Some(v) => Err(Error::NotAFrame(format!(
            "frame law fails for family {} and b={}",
            v.family, v.b
        ))),
    }
}

/// The polarity `(L_SO, L, Z)` with `F Z a` iff `a ∈ F`.
pub fn membership_polarity(so: &ScottOpenFilterPoset, l: &FiniteLattice) -> Polarity {
    Polarity::from_rows(l.size(), so.filters.clone()).expect("filters lie inside L")
}

/// `L^δ = 𝒢(L_SO, L, ∋)` with `e = g` and `e_SO = f`.
pub fn canonical_extension(l: &FiniteLattice) -> Result<CanExtBundle> {
    require_frame(l)?;
    let so = scott_open_poset(l)?;
    let concept = membership_polarity(&so, l).concept_lattice()?;
    let names = concept.closed_sets.iter().map(|m| m.to_string()).collect();
    Ok(CanExtBundle {
        source: l.clone(),
        extension: concept.lattice.with_names(names),
        scott_open: so,
        e: concept.g_map,
        e_so: concept.f_map,
        provenance: Provenance::Polarity,
    })
}

/// `id: L → L` packaged as a bundle, `e_SO(F) = ⋀F`.
pub fn identity_bundle(l: &FiniteLattice) -> Result<CanExtBundle> {
    require_frame(l)?;
    let so = scott_open_poset(l)?;
    let e_so = so.filters.iter().map(|&f| l.meet_all(f)).collect();
    Ok(CanExtBundle {
        source: l.clone(),
        extension: l.clone(),
        scott_open: so,
        e: l.elements().collect(),
        e_so,
        provenance: Provenance::Supplied,
    })
}

/// The three corrupted bundles used to show the axiom verifiers can fail:
/// `e` constantly top, `e` constantly bottom, and `e` sending the bottom to
/// the top and everything else to the bottom. `e_SO` is recomputed as
/// `⋀ e[F]` in each.
pub fn fault_injected(b: &CanExtBundle) -> [(&'static str, CanExtBundle); 3] {
    let ext = &b.extension;
    let n = b.source.size();
    let bottom = b.source.bottom();
    [
        ("e constant top", b.with_e(vec![ext.top(); n])),
        ("e constant bottom", b.with_e(vec![ext.bottom(); n])),
        (
            "e swaps bottom to top, rest to bottom",
            b.with_e(
                (0..n)
                    .map(|a| if a == bottom { ext.top() } else { ext.bottom() })
                    .collect(),
            ),
        ),
    ]
}
