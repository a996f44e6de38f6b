//! Exact dense linear algebra over prime fields and over the integers.

mod field;
mod intmat;
mod matrix;
pub mod poly;

pub use field::Field;
pub use intmat::{rank_int, IntegerMatrix};
pub use matrix::{Matrix, Rref};

/// Rank over GF(p).
pub fn rank_ff(m: &Matrix) -> usize {
    m.rank()
}

/// Columns form a basis of `{v : m v = 0}`.
pub fn kernel_basis(m: &Matrix) -> Matrix {
    m.kernel()
}
