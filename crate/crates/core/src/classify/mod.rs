//! Decomposition, labelling and isomorphism testing.

pub mod census;
mod decompose;
mod iso;
mod label;
mod split;

pub use decompose::{decompose, decompose_traced, neg_to_dual_pos, smith_labels, Decomposition, Extraction, Trace};
pub use iso::{exhaustive_search, iso, iso_with, Invariants, IsoConfig};
pub use label::{label_of, lambda0_labels, lambda0_labels_of};
pub use split::{kernel_of, split_off, strip_free, Split};
