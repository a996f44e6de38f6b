use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::endo::EndoAlgebra;
use crate::coalg::Vertex;
use crate::comod::{hom_basis, Comodule, Morphism};
use crate::error::Result;

pub type ClassId = usize;

/// Isomorphism invariants used to narrow down candidates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub total_dim: usize,
    pub dims: Vec<(Vertex, usize)>,
    pub end_dim: usize,
    pub socle: Vec<(Vertex, usize)>,
    pub top: Vec<(Vertex, usize)>,
}

impl Fingerprint {
    pub fn of(m: &Comodule, end_dim: usize) -> Self {
        let flat = |d: &BTreeMap<Vertex, usize>| d.iter().map(|(&v, &n)| (v, n)).collect();
        Fingerprint {
            total_dim: m.total_dim(),
            dims: flat(m.dims()),
            end_dim,
            socle: flat(&m.socle_dims()),
            top: flat(&m.top_dims()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RegistryEntry {
    pub id: ClassId,
    pub representative: Comodule,
    pub fingerprint: Fingerprint,
    pub injective: bool,
}

/// One record per class, for reports.
#[derive(Clone, Debug, Serialize)]
pub struct RegistryRecord {
    pub id: ClassId,
    pub fingerprint: Fingerprint,
    pub dims: BTreeMap<String, usize>,
    pub injective: bool,
}

/// Representatives of the isomorphism classes of indecomposables met so
/// far. Ids are assigned in insertion order.
#[derive(Clone, Debug, Default)]
pub struct IsoRegistry {
    entries: Vec<RegistryEntry>,
    index: HashMap<Fingerprint, Vec<ClassId>>,
}

impl IsoRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, id: ClassId) -> &RegistryEntry {
        &self.entries[id]
    }

    pub fn entries(&self) -> &[RegistryEntry] {
        &self.entries
    }

    pub fn is_injective(&self, id: ClassId) -> bool {
        self.entries[id].injective
    }

    /// Finds the class of an indecomposable `m` or registers it. Returns the
    /// id and an isomorphism from `m` to the stored representative.
    pub fn classify(&mut self, m: &Comodule) -> Result<(ClassId, Morphism)> {
        let end_dim = EndoAlgebra::new(m)?.dim();
        let fp = Fingerprint::of(m, end_dim);
        if let Some(ids) = self.index.get(&fp) {
            for &id in ids {
                if let Some(w) = indecomposable_iso(m, &self.entries[id].representative)? {
                    return Ok((id, w));
                }
            }
        }
        let id = self.entries.len();
        self.entries.push(RegistryEntry {
            id,
            representative: m.clone(),
            fingerprint: fp.clone(),
            injective: m.is_injective()?,
        });
        self.index.entry(fp).or_default().push(id);
        Ok((id, Morphism::identity(m)))
    }

    pub fn lookup(&self, m: &Comodule) -> Result<Option<(ClassId, Morphism)>> {
        let end_dim = EndoAlgebra::new(m)?.dim();
        let fp = Fingerprint::of(m, end_dim);
        if let Some(ids) = self.index.get(&fp) {
            for &id in ids {
                if let Some(w) = indecomposable_iso(m, &self.entries[id].representative)? {
                    return Ok(Some((id, w)));
                }
            }
        }
        Ok(None)
    }

    pub fn dump(&self) -> Vec<RegistryRecord> {
        self.entries
            .iter()
            .map(|e| RegistryRecord {
                id: e.id,
                fingerprint: e.fingerprint.clone(),
                dims: e
                    .representative
                    .dims()
                    .iter()
                    .map(|(&v, &d)| (e.representative.coalgebra().vertex_label(v), d))
                    .collect(),
                injective: e.injective,
            })
            .collect()
    }
}

/// Deterministic isomorphism test for indecomposables.
///
/// If `X ≅ Y` with `End(X)` local, the products `h ∘ g` over basis elements
/// `g ∈ Hom(X, Y)`, `h ∈ Hom(Y, X)` span an ideal of `End(X)` containing the
/// identity, so one of them is a unit, and then `g` is an isomorphism. It
/// is therefore enough to test the basis of `Hom(X, Y)`.
pub fn indecomposable_iso(x: &Comodule, y: &Comodule) -> Result<Option<Morphism>> {
    if x.dims() != y.dims() {
        return Ok(None);
    }
    let there = hom_basis(x, y)?;
    Ok(there.basis().iter().find(|g| g.is_iso(x, y)).cloned())
}
