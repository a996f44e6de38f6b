use std::collections::BTreeMap;

use rand::Rng;

use super::endo::EndoAlgebra;
use super::registry::{ClassId, IsoRegistry};
use super::split::{fitting_split_with, Split};
use crate::coalg::Vertex;
use crate::comod::{Comodule, Morphism};
use crate::error::{Error, Result};
use crate::exactlin::Matrix;

/// One indecomposable summand of a decomposition.
#[derive(Clone, Debug)]
pub struct Summand {
    pub class: ClassId,
    pub module: Comodule,
    /// Inclusion into the decomposed comodule.
    pub embedding: Morphism,
    /// Isomorphism onto the registry representative of `class`.
    pub to_representative: Morphism,
}

/// `m ≅ ⊕ summands`, verified: the inclusions together are invertible.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// Per vertex, the inverse of the stacked inclusions; the rows of block
    /// `k` give the projection onto summand `k`.
    projections: BTreeMap<Vertex, Matrix>,
}

impl Decomposition {
    /// Class multiplicities.
    pub fn multiset(&self) -> BTreeMap<ClassId, usize> {
        let mut out = BTreeMap::new();
        for s in &self.summands {
            *out.entry(s.class).or_insert(0) += 1;
        }
        out
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Projection from the decomposed comodule onto summand `k`.
    pub fn projection(&self, k: usize) -> Morphism {
        let target = &self.summands[k].module;
        let mut comps = BTreeMap::new();
        for (&v, p) in &self.projections {
            let offset: usize = self.summands[..k].iter().map(|s| s.module.dim(v)).sum();
            let d = target.dim(v);
            if d > 0 {
                comps.insert(v, p.block(offset, 0, d, p.cols()));
            }
        }
        Morphism::from_components(comps)
    }
}

/// Splits `m` into indecomposables and files each under its registry class.
///
/// Pieces are first separated by the connected components of the support;
/// then a piece is a leaf when its endomorphism ring is local, and is split
/// by [`fitting_split`](super::fitting_split) otherwise.
pub fn decompose<R: Rng + ?Sized>(
    m: &Comodule,
    registry: &mut IsoRegistry,
    attempts: usize,
    rng: &mut R,
) -> Result<Decomposition> {
    let f = m.field();
    let mut stack: Vec<(Comodule, BTreeMap<Vertex, Matrix>)> = Vec::new();
    for part in support_components(m) {
        let basis: BTreeMap<Vertex, Matrix> = part
            .iter()
            .map(|&v| (v, Matrix::identity(f, m.dim(v))))
            .collect();
        let sub = m.restrict(&basis)?;
        stack.push((sub.module, basis));
    }
    let mut leaves = Vec::new();
    while let Some((piece, embed)) = stack.pop() {
        let end = EndoAlgebra::new(&piece)?;
        let leaf = if end.dim() == 1 {
            true
        } else if (f.p() as usize) > end.dim() {
            end.is_local()?
        } else {
            false
        };
        if leaf {
            leaves.push((piece, embed));
            continue;
        }
        match fitting_split_with(&end, attempts, rng) {
            Split::Split(a, b) => {
                for part in [a, b] {
                    let nested = part
                        .map
                        .components()
                        .iter()
                        .map(|(&v, inner)| (v, embed[&v].mul(inner)))
                        .collect();
                    stack.push((part.module, nested));
                }
            }
            Split::NoSplitFound if (f.p() as usize) <= end.dim() => {
                return Err(Error::FieldTooSmall {
                    p: f.p(),
                    needed: end.dim(),
                });
            }
            Split::NoSplitFound => {
                return Err(Error::DecompositionStuck {
                    dims: piece.dims_string(),
                    end_dim: end.dim(),
                });
            }
        }
    }
    // deterministic order: by support, then dimension vector
    leaves.sort_by(|a, b| a.0.dims().iter().cmp(b.0.dims().iter()));
    let mut summands = Vec::with_capacity(leaves.len());
    for (module, embed) in leaves {
        let (class, to_representative) = registry.classify(&module)?;
        summands.push(Summand {
            class,
            module,
            embedding: Morphism::from_components(embed),
            to_representative,
        });
    }
    let mut projections = BTreeMap::new();
    for (&v, &d) in m.dims() {
        let blocks: Vec<&Matrix> = summands
            .iter()
            .filter_map(|s| s.embedding.component(v))
            .collect();
        let stacked = Matrix::hstack(f, d, &blocks);
        let inv = stacked
            .inverse()
            .ok_or_else(|| Error::Verification(format!("summands do not span vertex {v}")))?;
        projections.insert(v, inv);
    }
    Ok(Decomposition {
        summands,
        projections,
    })
}

/// Vertex sets of the connected components of the support, joined along
/// arrows that act nontrivially.
fn support_components(m: &Comodule) -> Vec<Vec<Vertex>> {
    let verts = m.support();
    let pos: BTreeMap<Vertex, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (a, map) in m.inner_arrows() {
        if map.is_zero() {
            continue;
        }
        let (x, y) = (
            find(&mut parent, pos[&a.src]),
            find(&mut parent, pos[&a.tgt]),
        );
        parent[x] = y;
    }
    let mut groups: BTreeMap<usize, Vec<Vertex>> = BTreeMap::new();
    for (i, &v) in verts.iter().enumerate() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(v);
    }
    groups.into_values().collect()
}
