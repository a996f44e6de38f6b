//! Structural checks of a coalgebra on one side: semiperfectness,
//! quasi-co-Frobenius (qcF), the Nakayama permutation and its inverse,
//! simple injectives, and a consistency check between qcF and the vanishing
//! of the Igusa-Todorov function.
//!
//! Verdicts are only asserted for simples whose envelopes and covers are
//! faithful to the infinite quiver, i.e. at distance more than `L + 1` from
//! the window boundary; the others are reported as skipped.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use crate::coalg::{Coalgebra, Side, Vertex};
use crate::comod::Comodule;
use crate::error::{Error, Result};
use crate::exactlin::Field;
use crate::itfunc::{Engine, PhiStatus};
use crate::kschmidt::indecomposable_iso;
use crate::sample::Sampler;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CheckStatus {
    Ok,
    Fail,
    Skipped,
}

fn label(c: &Coalgebra, v: Vertex) -> String {
    format!("S_{}", c.vertex_label(v))
}

fn dims_of(c: &Coalgebra, d: &BTreeMap<Vertex, usize>) -> BTreeMap<String, usize> {
    d.iter().map(|(&v, &n)| (c.vertex_label(v), n)).collect()
}

fn margin(c: &Coalgebra) -> usize {
    c.truncation() + 1
}

fn envelope(c: &Coalgebra, side: Side, field: Field, v: Vertex) -> Result<Comodule> {
    Comodule::injective_indecomposable(c.covering(&[v], margin(c)), side, field, v)
}

fn cover(c: &Coalgebra, side: Side, field: Field, v: Vertex) -> Result<Comodule> {
    Comodule::projective_indecomposable(c.covering(&[v], margin(c)), side, field, v)
}

#[derive(Clone, Debug, Serialize)]
pub struct EnvelopeEntry {
    pub simple: String,
    pub status: CheckStatus,
    pub envelope_dim: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SemiperfectReport {
    pub side: Side,
    pub holds: bool,
    pub margin: usize,
    pub simples: Vec<EnvelopeEntry>,
}

/// Every envelope of an interior simple is constructed and its dimension
/// recorded. Envelopes over these presentations are always finite, so the
/// check confirms constructibility.
pub fn check_semiperfect(c: &Coalgebra, side: Side, field: Field) -> Result<SemiperfectReport> {
    let mut simples = Vec::new();
    for v in c.window_vertices() {
        let entry = if c.is_interior(v, margin(c)) {
            let e = envelope(c, side, field, v)?;
            EnvelopeEntry {
                simple: label(c, v),
                status: CheckStatus::Ok,
                envelope_dim: Some(e.total_dim()),
            }
        } else {
            EnvelopeEntry {
                simple: label(c, v),
                status: CheckStatus::Skipped,
                envelope_dim: None,
            }
        };
        simples.push(entry);
    }
    Ok(SemiperfectReport {
        side,
        holds: true,
        margin: margin(c),
        simples,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct QcfEntry {
    pub simple: String,
    pub status: CheckStatus,
    pub envelope_dims: Option<BTreeMap<String, usize>>,
    /// `S'` with `E(S) ≅ P(S')`, when there is one.
    pub projective_cover_of: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QcfReport {
    pub side: Side,
    pub holds: bool,
    pub margin: usize,
    pub simples: Vec<QcfEntry>,
    /// First failing simple.
    pub witness: Option<String>,
}

/// Whether the envelope of every interior simple is projective. An
/// indecomposable projective is the cover of its (simple) top, so `E(S)` is
/// projective iff its top is a simple `S'` and `E(S) ≅ P(S')`.
pub fn check_qcf(c: &Coalgebra, side: Side, field: Field) -> Result<QcfReport> {
    let mut simples = Vec::new();
    let mut witness = None;
    for v in c.window_vertices() {
        if !c.is_interior(v, margin(c)) {
            simples.push(QcfEntry {
                simple: label(c, v),
                status: CheckStatus::Skipped,
                envelope_dims: None,
                projective_cover_of: None,
            });
            continue;
        }
        let e = envelope(c, side, field, v)?;
        let top = e.top_dims();
        let matched = match single_vertex(&top) {
            Some(w) => {
                let p = cover(c, side, field, w)?;
                indecomposable_iso(&e, &p)?.map(|_| w)
            }
            None => None,
        };
        let status = if matched.is_some() {
            CheckStatus::Ok
        } else {
            CheckStatus::Fail
        };
        if status == CheckStatus::Fail && witness.is_none() {
            witness = Some(label(c, v));
        }
        simples.push(QcfEntry {
            simple: label(c, v),
            status,
            envelope_dims: Some(dims_of(c, e.dims())),
            projective_cover_of: matched.map(|w| label(c, w)),
        });
    }
    Ok(QcfReport {
        side,
        holds: witness.is_none(),
        margin: margin(c),
        simples,
        witness,
    })
}

fn single_vertex(d: &BTreeMap<Vertex, usize>) -> Option<Vertex> {
    match d.iter().collect::<Vec<_>>().as_slice() {
        [(&v, &1)] => Some(v),
        _ => None,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NakayamaEntry {
    pub simple: String,
    pub nu: String,
    pub mu: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NakayamaTable {
    pub side: Side,
    pub margin: usize,
    pub entries: Vec<NakayamaEntry>,
    /// No two interior simples share `ν`.
    pub nu_injective: bool,
    /// Projective covers exist on the opposite side as well.
    pub opposite_semiperfect: Option<bool>,
    /// `μ(ν(S)) = S` wherever both sides are defined.
    pub mu_inverts_nu: Option<bool>,
}

/// `ν(S) = Top(E(S))` and, optionally, `μ(S) = soc(P(S))` over the interior.
pub fn nakayama_nu(
    c: &Coalgebra,
    side: Side,
    field: Field,
    with_mu: bool,
) -> Result<NakayamaTable> {
    let interior = c.interior_vertices(margin(c));
    let mut nu = BTreeMap::new();
    for &v in &interior {
        let e = envelope(c, side, field, v)?;
        let top = e.top_dims();
        let w = single_vertex(&top).ok_or_else(|| Error::TopNotSimple {
            vertex: v,
            dims: format!("{:?}", dims_of(c, &top)),
        })?;
        nu.insert(v, w);
    }
    let mut mu = BTreeMap::new();
    let mut opposite_semiperfect = None;
    if with_mu {
        opposite_semiperfect = Some(check_semiperfect(&c.opposite(), side, field)?.holds);
        for &v in &interior {
            let p = cover(c, side, field, v)?;
            let soc = p.socle_dims();
            let w = single_vertex(&soc).ok_or_else(|| Error::SocleNotSimple {
                vertex: v,
                dims: format!("{:?}", dims_of(c, &soc)),
            })?;
            mu.insert(v, w);
        }
    }
    let mut images: Vec<Vertex> = nu.values().copied().collect();
    images.sort_unstable();
    images.dedup();
    let nu_injective = images.len() == nu.len();
    let mu_inverts_nu = with_mu.then(|| {
        nu.iter()
            .filter(|(_, w)| mu.contains_key(w))
            .all(|(v, w)| mu[w] == *v)
    });
    let entries = interior
        .iter()
        .map(|&v| NakayamaEntry {
            simple: label(c, v),
            nu: label(c, nu[&v]),
            mu: mu.get(&v).map(|&w| label(c, w)),
        })
        .collect();
    Ok(NakayamaTable {
        side,
        margin: margin(c),
        entries,
        nu_injective,
        opposite_semiperfect,
        mu_inverts_nu,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SimpleInjectivesReport {
    pub side: Side,
    pub margin: usize,
    pub simples: Vec<String>,
}

/// Interior simples that are their own envelope.
pub fn simple_injectives(
    c: &Coalgebra,
    side: Side,
    field: Field,
) -> Result<SimpleInjectivesReport> {
    let mut simples = Vec::new();
    for v in c.interior_vertices(margin(c)) {
        if envelope(c, side, field, v)?.total_dim() == 1 {
            simples.push(label(c, v));
        }
    }
    Ok(SimpleInjectivesReport {
        side,
        margin: margin(c),
        simples,
    })
}

/// A labelled family of comodules to evaluate the Igusa-Todorov function on.
#[derive(Clone, Debug)]
pub struct Family {
    pub members: Vec<(String, Comodule)>,
    /// Every comodule of total dimension at most `dim_cap` supported on
    /// interior simples has the same generator set as some member.
    pub exhaustive: bool,
    pub dim_cap: usize,
}

/// For quivers with at most one arrow in and out of each vertex every
/// indecomposable is a string, and the value of the function depends only
/// on the set of distinct non-injective summands. Sums of distinct
/// non-injective strings of total dimension at most `dim_cap` therefore
/// cover all comodules up to that dimension. Random samples are appended.
pub fn theorem_family<R: Rng + ?Sized>(
    c: &Coalgebra,
    side: Side,
    field: Field,
    dim_cap: usize,
    samples: usize,
    rng: &mut R,
) -> Result<Family> {
    let interior = c.interior_vertices(margin(c));
    let sampler =
        Sampler::new(c.clone(), side, field, interior.clone()).with_dim_cap(dim_cap.max(8));
    let mut members = Vec::new();
    let exhaustive = c.is_nakayama_type() && !interior.is_empty();
    if exhaustive {
        let mut strings = Vec::new();
        for s in sampler.strings() {
            if !s.is_injective()? {
                strings.push(s);
            }
        }
        let mut chosen = Vec::new();
        subsets(
            &strings,
            0,
            dim_cap,
            &mut chosen,
            &mut |picked: &[usize]| {
                let parts: Vec<&Comodule> = picked.iter().map(|&i| &strings[i]).collect();
                let m = Comodule::direct_sum(&parts).expect("same coalgebra");
                let name = picked
                    .iter()
                    .map(|&i| describe(&strings[i]))
                    .collect::<Vec<_>>()
                    .join(" + ");
                members.push((name, m));
            },
        );
    }
    for k in 0..samples {
        let m = sampler.comodule(rng)?;
        members.push((format!("sample {k}"), m));
    }
    Ok(Family {
        members,
        exhaustive,
        dim_cap,
    })
}

fn subsets(
    items: &[Comodule],
    from: usize,
    budget: usize,
    chosen: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    for i in from..items.len() {
        let d = items[i].total_dim();
        if d > budget {
            continue;
        }
        chosen.push(i);
        emit(chosen);
        subsets(items, i + 1, budget - d, chosen, emit);
        chosen.pop();
    }
}

fn describe(m: &Comodule) -> String {
    let c = m.coalgebra();
    let verts: Vec<String> = m.dims().keys().map(|&v| c.vertex_label(v)).collect();
    if verts.len() == 1 && m.total_dim() == 1 {
        format!("S_{}", verts[0])
    } else {
        format!("U[{}]", verts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Consistency {
    Consistent,
    Inconsistent,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiEvidence {
    pub comodule: String,
    pub dims: BTreeMap<String, usize>,
    pub value: usize,
    pub status: PhiStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub side: Side,
    pub semiperfect: bool,
    pub qcf: bool,
    pub qcf_witness: Option<String>,
    pub exhaustive: bool,
    pub dim_cap: usize,
    pub evaluated: usize,
    /// Largest certified value and the comodule attaining it.
    pub max_certified_phi: Option<(usize, String)>,
    pub evidence: Vec<PhiEvidence>,
    pub verdict: Consistency,
    pub reason: String,
}

/// qcF should hold exactly when the coalgebra is semiperfect and every
/// value of the function vanishes. Flags a certified positive value on a
/// qcF side, or an exhaustive all-zero table on a semiperfect non-qcF side.
pub fn cross_validate_theorem(
    engine: &mut Engine,
    family: &Family,
    horizon: usize,
) -> Result<TheoremReport> {
    let c = engine.coalgebra().clone();
    let (side, field) = (engine.side(), engine.field());
    let semi = check_semiperfect(&c, side, field)?;
    let qcf = check_qcf(&c, side, field)?;
    let mut evidence = Vec::new();
    let mut best: Option<(usize, String)> = None;
    let mut all_zero_exact = true;
    for (name, m) in &family.members {
        let r = engine.phi(m, horizon)?;
        if r.status.is_certified() && best.as_ref().is_none_or(|(v, _)| r.value > *v) {
            best = Some((r.value, name.clone()));
        }
        if r.value != 0 || r.status != PhiStatus::Exact {
            all_zero_exact = false;
        }
        evidence.push(PhiEvidence {
            comodule: name.clone(),
            dims: dims_of(m.coalgebra(), m.dims()),
            value: r.value,
            status: r.status,
        });
    }
    let positive = best.as_ref().is_some_and(|(v, _)| *v > 0);
    let (verdict, reason) = if qcf.holds && positive {
        let (v, name) = best.clone().unwrap();
        (
            Consistency::Inconsistent,
            format!("qcF holds but {name} has certified value {v}"),
        )
    } else if semi.holds
        && family.exhaustive
        && !family.members.is_empty()
        && all_zero_exact
        && !qcf.holds
    {
        (
            Consistency::Inconsistent,
            format!(
                "semiperfect with all values 0 up to dimension {} but qcF fails at {}",
                family.dim_cap,
                qcf.witness.clone().unwrap_or_default()
            ),
        )
    } else if qcf.holds {
        (
            Consistency::Consistent,
            "qcF holds and no certified value is positive".into(),
        )
    } else if positive {
        let (v, name) = best.clone().unwrap();
        (
            Consistency::Consistent,
            format!("qcF fails and {name} has certified value {v}"),
        )
    } else {
        (
            Consistency::Consistent,
            "qcF fails and no positive value was certified in the evaluated family".into(),
        )
    };
    Ok(TheoremReport {
        side,
        semiperfect: semi.holds,
        qcf: qcf.holds,
        qcf_witness: qcf.witness,
        exhaustive: family.exhaustive,
        dim_cap: family.dim_cap,
        evaluated: family.members.len(),
        max_certified_phi: best,
        evidence,
        verdict,
        reason,
    })
}
