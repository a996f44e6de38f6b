//! The Grothendieck-style group on indecomposable non-injective classes,
//! the cosyzygy map it induces, and the Igusa-Todorov function.

mod engine;
mod vector;

pub use engine::{stabilization_onset, Engine, PhiReport, PhiRoute, PhiStatus, DEFAULT_HORIZON};
pub use vector::ClassVector;

#[cfg(test)]
mod tests;
