use std::collections::BTreeMap;

use rand::Rng;

use super::decompose::decompose;
use super::registry::{Fingerprint, IsoRegistry};
use crate::comod::{hom_basis, Comodule, Morphism};
use crate::error::Result;
use crate::exactlin::Matrix;

/// Random samples from `Hom(m, n)` tried before falling back to decomposing.
pub const ISO_SAMPLES: usize = 16;

/// Returns an explicit isomorphism `m -> n`, or `None` if there is none.
///
/// Cheap invariants are compared first. Random elements of `Hom(m, n)`
/// usually find an isomorphism at once; if they do not, both sides are
/// decomposed against a shared registry and the class multisets compared,
/// and on a match the witness is assembled summand by summand.
pub fn is_isomorphic<R: Rng + ?Sized>(
    m: &Comodule,
    n: &Comodule,
    attempts: usize,
    rng: &mut R,
) -> Result<Option<Morphism>> {
    if m.compatible(n).is_err() || m.dims() != n.dims() {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(Morphism::zero()));
    }
    let there = hom_basis(m, n)?;
    let back = hom_basis(n, m)?;
    let ends = (hom_basis(m, m)?.dim(), hom_basis(n, n)?.dim());
    if ends.0 != ends.1 || there.dim() != ends.0 || back.dim() != ends.0 {
        return Ok(None);
    }
    if Fingerprint::of(m, ends.0) != Fingerprint::of(n, ends.1) {
        return Ok(None);
    }
    for _ in 0..ISO_SAMPLES {
        let f = there.random(rng);
        if f.is_iso(m, n) {
            return Ok(Some(f));
        }
    }
    iso_by_decomposition(m, n, attempts, rng)
}

/// Isomorphism test by comparing Krull-Schmidt decompositions; on success
/// the witness is assembled from the summand isomorphisms.
pub fn iso_by_decomposition<R: Rng + ?Sized>(
    m: &Comodule,
    n: &Comodule,
    attempts: usize,
    rng: &mut R,
) -> Result<Option<Morphism>> {
    if m.compatible(n).is_err() || m.dims() != n.dims() {
        return Ok(None);
    }
    let mut registry = IsoRegistry::new();
    let dm = decompose(m, &mut registry, attempts, rng)?;
    let dn = decompose(n, &mut registry, attempts, rng)?;
    if dm.multiset() != dn.multiset() {
        return Ok(None);
    }
    // pair summands class by class
    let mut unused: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, s) in dn.summands.iter().enumerate() {
        unused.entry(s.class).or_default().push(k);
    }
    let field = m.field();
    let mut comps: BTreeMap<_, Matrix> = m
        .dims()
        .iter()
        .map(|(&v, &d)| (v, Matrix::zeros(field, n.dim(v), d)))
        .collect();
    for (k, s) in dm.summands.iter().enumerate() {
        let j = unused
            .get_mut(&s.class)
            .and_then(Vec::pop)
            .expect("multisets agree");
        let t = &dn.summands[j];
        let rep_to_t = t
            .to_representative
            .inverse(&t.module, &representative(&registry, t.class))
            .expect("registry witnesses are isomorphisms");
        let piece = dm
            .projection(k)
            .then(&s.to_representative)
            .then(&rep_to_t)
            .then(&t.embedding);
        for (v, c) in piece.components() {
            let acc = comps.get_mut(v).unwrap();
            *acc = acc.add(c);
        }
    }
    let witness = Morphism::from_components(comps);
    if witness.is_morphism(m, n) && witness.is_iso(m, n) {
        Ok(Some(witness))
    } else {
        Err(crate::error::Error::Verification(
            "assembled isomorphism witness failed verification".into(),
        ))
    }
}

fn representative(registry: &IsoRegistry, class: usize) -> Comodule {
    registry.get(class).representative.clone()
}
