use std::collections::BTreeMap;

use rand::Rng;

use super::{Comodule, Morphism};
use crate::coalg::{SimpleLabel, Vertex};
use crate::error::{Error, Result};
use crate::exactlin::Matrix;

/// A subcomodule with its inclusion, or a quotient with its projection.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub module: Comodule,
    pub map: Morphism,
}

/// `E(M)` as a sum of indecomposable injectives, with the embedding.
#[derive(Clone, Debug)]
pub struct Envelope {
    pub module: Comodule,
    pub embedding: Morphism,
    /// Socle vertex of each indecomposable summand, in block order.
    pub summands: Vec<Vertex>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdProbe {
    Finite(usize),
    NoWitness(usize),
}

impl Comodule {
    /// Per vertex, a basis (as columns) of the common kernel of the maps
    /// leaving that vertex.
    pub fn socle_basis(&self) -> BTreeMap<Vertex, Matrix> {
        let f = self.field();
        self.dims()
            .iter()
            .map(|(&v, &d)| {
                let outs: Vec<Matrix> = self
                    .coalgebra()
                    .arrows_out(v)
                    .into_iter()
                    .filter(|a| self.dim(a.tgt) > 0)
                    .map(|a| self.action(a))
                    .collect();
                let refs: Vec<&Matrix> = outs.iter().collect();
                (v, Matrix::vstack(f, d, &refs).kernel())
            })
            .collect()
    }

    /// Per vertex, a basis of the sum of the images of the maps entering it.
    pub fn radical_basis(&self) -> BTreeMap<Vertex, Matrix> {
        let f = self.field();
        self.dims()
            .iter()
            .map(|(&v, &d)| {
                let ins: Vec<Matrix> = self
                    .coalgebra()
                    .arrows_in(v)
                    .into_iter()
                    .filter(|a| self.dim(a.src) > 0)
                    .map(|a| self.action(a))
                    .collect();
                let refs: Vec<&Matrix> = ins.iter().collect();
                (v, Matrix::hstack(f, d, &refs).column_basis())
            })
            .collect()
    }

    pub fn socle(&self) -> Subquotient {
        self.restrict(&self.socle_basis())
            .expect("the socle is a subcomodule")
    }

    pub fn top(&self) -> Subquotient {
        self.quotient(&self.radical_basis())
            .expect("the radical is a subcomodule")
    }

    pub fn socle_dims(&self) -> BTreeMap<Vertex, usize> {
        nonzero_cols(&self.socle_basis())
    }

    pub fn top_dims(&self) -> BTreeMap<Vertex, usize> {
        self.radical_basis()
            .iter()
            .map(|(&v, b)| (v, self.dim(v) - b.cols()))
            .filter(|&(_, d)| d > 0)
            .collect()
    }

    /// The subcomodule spanned by the columns of `basis` (independent columns
    /// per vertex, missing vertices meaning zero), with its inclusion.
    pub fn restrict(&self, basis: &BTreeMap<Vertex, Matrix>) -> Result<Subquotient> {
        let f = self.field();
        let mut lefts = BTreeMap::new();
        for (&v, b) in basis {
            if b.cols() == 0 {
                continue;
            }
            let l = b
                .left_inverse()
                .ok_or_else(|| Error::Verification(format!("dependent basis at vertex {v}")))?;
            lefts.insert(v, l);
        }
        let dims: BTreeMap<Vertex, usize> = nonzero_cols(basis);
        let mut maps = BTreeMap::new();
        for (a, m) in self.inner_arrows() {
            let Some(bs) = basis.get(&a.src).filter(|b| b.cols() > 0) else {
                continue;
            };
            let image = m.mul(bs);
            match (
                basis.get(&a.tgt).filter(|b| b.cols() > 0),
                lefts.get(&a.tgt),
            ) {
                (Some(bt), Some(lt)) => {
                    let coords = lt.mul(&image);
                    if bt.mul(&coords) != image {
                        return Err(Error::NotSubcomodule(a.src));
                    }
                    maps.insert(a.id, coords);
                }
                _ if image.is_zero() => {}
                _ => return Err(Error::NotSubcomodule(a.src)),
            }
        }
        // arrows leaving the support of `self` act as zero already
        let module = Comodule::assemble(self.coalgebra().clone(), self.side(), f, dims, maps);
        let map = Morphism::from_components(
            basis
                .iter()
                .filter(|(_, b)| b.cols() > 0)
                .map(|(&v, b)| (v, b.clone()))
                .collect(),
        );
        Ok(Subquotient { module, map })
    }

    /// `self / sub` for a subcomodule given by column bases, with the projection.
    pub fn quotient(&self, sub: &BTreeMap<Vertex, Matrix>) -> Result<Subquotient> {
        let f = self.field();
        let mut projs = BTreeMap::new();
        let mut sections = BTreeMap::new();
        for (&v, &d) in self.dims() {
            let q = match sub.get(&v) {
                Some(b) if b.cols() > 0 => b.left_kernel(),
                _ => Matrix::identity(f, d),
            };
            if q.rows() == 0 {
                continue;
            }
            sections.insert(
                v,
                q.right_inverse().expect("left kernel rows are independent"),
            );
            projs.insert(v, q);
        }
        let dims: BTreeMap<Vertex, usize> = projs.iter().map(|(&v, q)| (v, q.rows())).collect();
        let mut maps = BTreeMap::new();
        for (a, m) in self.inner_arrows() {
            if let Some(b) = sub.get(&a.src).filter(|b| b.cols() > 0) {
                let leak = m.mul(b);
                let stays = match projs.get(&a.tgt) {
                    Some(qt) => qt.mul(&leak).is_zero(),
                    None => true,
                };
                if !stays {
                    return Err(Error::NotSubcomodule(a.src));
                }
            }
            if let (Some(qt), Some(ss)) = (projs.get(&a.tgt), sections.get(&a.src)) {
                maps.insert(a.id, qt.mul(m).mul(ss));
            }
        }
        let module = Comodule::assemble(self.coalgebra().clone(), self.side(), f, dims, maps);
        Ok(Subquotient {
            module,
            map: Morphism::from_components(projs),
        })
    }

    /// Column bases of the smallest subcomodule containing the given vectors.
    pub fn generated(&self, gens: &BTreeMap<Vertex, Matrix>) -> BTreeMap<Vertex, Matrix> {
        let f = self.field();
        let mut span: BTreeMap<Vertex, Matrix> = self
            .dims()
            .iter()
            .map(|(&v, &d)| (v, Matrix::zeros(f, d, 0)))
            .collect();
        let mut pending: Vec<(Vertex, Matrix)> =
            gens.iter().map(|(&v, g)| (v, g.clone())).collect();
        while let Some((v, vecs)) = pending.pop() {
            let Some(cur) = span.get(&v) else { continue };
            let joined = Matrix::hstack(f, cur.rows(), &[cur, &vecs]).column_basis();
            if joined.cols() == cur.cols() {
                continue;
            }
            for a in self.coalgebra().arrows_out(v) {
                if self.dim(a.tgt) > 0 {
                    pending.push((a.tgt, self.action(a).mul(&joined)));
                }
            }
            span.insert(v, joined);
        }
        span.retain(|_, b| b.cols() > 0);
        span
    }

    /// Decides injectivity from the socle: `M` is injective iff its envelope
    /// has the same dimension.
    pub fn is_injective(&self) -> Result<bool> {
        let soc = self.socle_dims();
        let support: Vec<Vertex> = self.support();
        let c = self
            .coalgebra()
            .covering(&support, self.coalgebra().truncation() + 1);
        let mut total = 0;
        for (&w, &s) in &soc {
            total += s * c
                .injective_basis(SimpleLabel {
                    vertex: w,
                    side: self.side(),
                })?
                .len();
        }
        Ok(total == self.total_dim())
    }
}

fn nonzero_cols(basis: &BTreeMap<Vertex, Matrix>) -> BTreeMap<Vertex, usize> {
    basis
        .iter()
        .filter(|(_, b)| b.cols() > 0)
        .map(|(&v, b)| (v, b.cols()))
        .collect()
}

/// The canonical envelope: the socle functionals are the left inverse of the
/// socle basis, chosen by deterministic elimination.
pub fn injective_envelope(m: &Comodule) -> Result<Envelope> {
    envelope_with(m, |s| {
        s.left_inverse()
            .expect("socle basis has independent columns")
    })
}

/// An envelope built from randomly chosen socle functionals: any `X` with
/// `X S` invertible on the socle basis `S` gives an essential embedding.
pub fn injective_envelope_randomized<R: Rng + ?Sized>(
    m: &Comodule,
    rng: &mut R,
) -> Result<Envelope> {
    let f = m.field();
    envelope_with(m, |s| {
        let base = s
            .left_inverse()
            .expect("socle basis has independent columns");
        let annihilator = s.left_kernel();
        let shift = Matrix::random(f, s.cols(), annihilator.rows(), rng).mul(&annihilator);
        Matrix::random_invertible(f, s.cols(), rng).mul(&base.add(&shift))
    })
}

/// Builds `m -> ⊕ E(S_w)`, sending `x` at vertex `u` to the vector whose
/// coordinate at the dual of a path `p: u -> w` is `ξ_w(M_p x)`.
fn envelope_with(m: &Comodule, mut functionals: impl FnMut(&Matrix) -> Matrix) -> Result<Envelope> {
    let f = m.field();
    let side = m.side();
    let coalg = m
        .coalgebra()
        .covering(&m.support(), m.coalgebra().truncation() + 1);
    let socle = m.socle_basis();
    let mut parts = Vec::new();
    let mut summands = Vec::new();
    // rows of the embedding at each vertex, in block order
    let mut rows: BTreeMap<Vertex, Vec<Vec<u32>>> =
        m.dims().keys().map(|&v| (v, Vec::new())).collect();
    for (&w, s) in &socle {
        if s.cols() == 0 {
            continue;
        }
        let xi = functionals(s);
        let inj = Comodule::injective_indecomposable(coalg.clone(), side, f, w)?;
        let paths = coalg.injective_basis(SimpleLabel { vertex: w, side })?;
        for j in 0..s.cols() {
            let xi_j = xi.select_rows(&[j]);
            for p in &paths {
                let Some(block) = rows.get_mut(&p.start) else {
                    continue;
                };
                // ξ_j M_p, accumulated from the end of the path backwards
                let mut acc = xi_j.clone();
                for &id in p.arrows.iter().rev() {
                    let a = coalg.arrow(id).unwrap();
                    acc = acc.mul(&m.action(a));
                }
                block.push(acc.row(0).to_vec());
            }
            parts.push(inj.clone());
            summands.push(w);
        }
    }
    let refs: Vec<&Comodule> = parts.iter().collect();
    let module = if refs.is_empty() {
        Comodule::zero(coalg, side, f)
    } else {
        Comodule::direct_sum(&refs)?
    };
    let components = rows
        .into_iter()
        .map(|(v, r)| {
            let cols = m.dim(v);
            let mat = Matrix::from_fn(f, r.len(), cols, |i, j| r[i][j]);
            (v, mat)
        })
        .collect();
    let embedding = Morphism::from_components(components);
    debug_assert!(embedding.is_morphism(m, &module));
    if !embedding.is_injective(m) {
        return Err(Error::Verification(
            "envelope embedding is not injective".into(),
        ));
    }
    Ok(Envelope {
        module,
        embedding,
        summands,
    })
}

impl Envelope {
    /// `E / image`, the first cosyzygy.
    pub fn cokernel(&self) -> Result<Comodule> {
        let image: BTreeMap<Vertex, Matrix> = self
            .embedding
            .components()
            .iter()
            .filter(|(_, e)| e.cols() > 0)
            .map(|(&v, e)| (v, e.clone()))
            .collect();
        Ok(self.module.quotient(&image)?.module)
    }
}

/// `Ω^{-k}(m)`.
pub fn cosyzygy(m: &Comodule, k: usize) -> Result<Comodule> {
    let mut cur = m.clone();
    for _ in 0..k {
        if cur.is_zero() {
            break;
        }
        cur = injective_envelope(&cur)?.cokernel()?;
    }
    Ok(cur)
}

/// Least `d <= horizon` with `Ω^{-d}(m)` injective.
pub fn injective_dimension_probe(m: &Comodule, horizon: usize) -> Result<IdProbe> {
    let mut cur = m.clone();
    for d in 0..=horizon {
        if cur.is_injective()? {
            return Ok(IdProbe::Finite(d));
        }
        if d < horizon {
            cur = injective_envelope(&cur)?.cokernel()?;
        }
    }
    Ok(IdProbe::NoWitness(horizon))
}
