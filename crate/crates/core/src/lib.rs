//! Exact computations with finite-dimensional comodules over path-truncated
//! quiver coalgebras: socles, tops, injective envelopes and cosyzygies,
//! Krull-Schmidt decompositions, the Igusa-Todorov function, and structural
//! checks (semiperfect, quasi-co-Frobenius, Nakayama permutations).
//!
//! All arithmetic is exact, over a prime field GF(p) or over the integers.

pub mod checks;
pub mod coalg;
pub mod comod;
pub mod error;
pub mod exactlin;
pub mod io;
pub mod itfunc;
pub mod kschmidt;
pub mod sample;

pub use coalg::{Coalgebra, Side, SimpleLabel, TemplateKind};
pub use comod::{Comodule, Morphism};
pub use error::{Error, Result};
pub use exactlin::{Field, Matrix};
