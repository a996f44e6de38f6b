//! Krull-Schmidt machinery: endomorphism algebras and their radicals,
//! Fitting splitting, decomposition into indecomposables, isomorphism
//! testing with explicit witnesses, and the registry of isomorphism classes.

mod decompose;
mod endo;
mod iso;
mod registry;
mod split;

pub use decompose::{decompose, Decomposition, Summand};
pub use endo::{certify_indecomposable, EndoAlgebra};
pub use iso::{is_isomorphic, iso_by_decomposition, ISO_SAMPLES};
pub use registry::{
    indecomposable_iso, ClassId, Fingerprint, IsoRegistry, RegistryEntry, RegistryRecord,
};
pub use split::{fitting_split, Split};

/// Default number of random endomorphisms tried per Fitting split.
pub const DEFAULT_ATTEMPTS: usize = 32;
