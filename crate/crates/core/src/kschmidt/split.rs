use std::collections::BTreeMap;

use rand::Rng;

use super::endo::EndoAlgebra;
use crate::coalg::Vertex;
use crate::comod::{Comodule, Subquotient};
use crate::exactlin::poly::{charpoly, proper_factor, radical, Poly};
use crate::exactlin::Matrix;

#[derive(Clone, Debug)]
pub enum Split {
    /// `m ≅ a ⊕ b`; the maps are the inclusions into `m`.
    Split(Box<Subquotient>, Box<Subquotient>),
    NoSplitFound,
}

/// Randomized Fitting decomposition.
///
/// For a random endomorphism `f`, the squarefree part `r` of its
/// characteristic polynomial is factored as `g · h` with both factors
/// nonconstant; then `m = ker g(f)^N ⊕ im g(f)^N` with both parts nonzero.
/// Factoring instead of using `f` itself also splits when every sample is
/// invertible, e.g. `f = α ⊕ β` on a sum of two bricks.
pub fn fitting_split<R: Rng + ?Sized>(
    m: &Comodule,
    attempts: usize,
    rng: &mut R,
) -> crate::error::Result<Split> {
    if m.is_zero() {
        return Ok(Split::NoSplitFound);
    }
    let end = EndoAlgebra::new(m)?;
    Ok(fitting_split_with(&end, attempts, rng))
}

pub(crate) fn fitting_split_with<R: Rng + ?Sized>(
    end: &EndoAlgebra,
    attempts: usize,
    rng: &mut R,
) -> Split {
    let m = end.module();
    if end.dim() <= 1 {
        return Split::NoSplitFound;
    }
    let field = m.field();
    let n = m.total_dim();
    for _ in 0..attempts {
        let f = end.hom().random(rng);
        let mut chi = Poly::one();
        for c in f.components().values() {
            chi = chi.mul(&charpoly(c), field);
        }
        let r = radical(&chi, field);
        let Some(g) = proper_factor(&r, field, rng) else {
            continue;
        };
        let mut kernel = BTreeMap::new();
        let mut image = BTreeMap::new();
        for (&v, fv) in f.components() {
            let h = g.eval_matrix(fv).pow(n);
            kernel.insert(v, h.kernel());
            image.insert(v, h.column_basis());
        }
        let (Ok(a), Ok(b)) = (m.restrict(&kernel), m.restrict(&image)) else {
            continue;
        };
        if a.module.is_zero() || b.module.is_zero() {
            continue;
        }
        debug_assert!(complementary(m, &kernel, &image));
        return Split::Split(Box::new(a), Box::new(b));
    }
    Split::NoSplitFound
}

fn complementary(m: &Comodule, a: &BTreeMap<Vertex, Matrix>, b: &BTreeMap<Vertex, Matrix>) -> bool {
    m.dims().iter().all(|(v, &d)| {
        let joined = Matrix::hstack(m.field(), d, &[&a[v], &b[v]]);
        joined.is_invertible()
    })
}
