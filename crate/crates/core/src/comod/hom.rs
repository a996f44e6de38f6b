use std::collections::BTreeMap;

use rand::Rng;

use super::Comodule;
use crate::coalg::Vertex;
use crate::error::Result;
use crate::exactlin::{Field, Matrix};

/// A comodule map, one matrix per vertex of `dim(target) x dim(source)`.
///
/// Only vertices in both supports carry a component; every other component
/// is an empty matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    components: BTreeMap<Vertex, Matrix>,
}

impl Morphism {
    pub fn from_components(components: BTreeMap<Vertex, Matrix>) -> Self {
        Morphism { components }
    }

    pub fn zero() -> Self {
        Morphism {
            components: BTreeMap::new(),
        }
    }

    pub fn identity(m: &Comodule) -> Self {
        Morphism {
            components: m
                .dims()
                .iter()
                .map(|(&v, &d)| (v, Matrix::identity(m.field(), d)))
                .collect(),
        }
    }

    pub fn components(&self) -> &BTreeMap<Vertex, Matrix> {
        &self.components
    }

    pub fn component(&self, v: Vertex) -> Option<&Matrix> {
        self.components.get(&v)
    }

    /// The component at `v` as a full `dim_tgt x dim_src` matrix.
    pub fn component_or_zero(&self, v: Vertex, src: &Comodule, tgt: &Comodule) -> Matrix {
        self.components
            .get(&v)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(src.field(), tgt.dim(v), src.dim(v)))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Morphism) -> Morphism {
        let components = self
            .components
            .iter()
            .filter_map(|(v, f)| other.components.get(v).map(|g| (*v, g.mul(f))))
            .collect();
        Morphism { components }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        let mut components = self.components.clone();
        for (v, g) in &other.components {
            match components.get_mut(v) {
                Some(f) => *f = f.add(g),
                None => {
                    components.insert(*v, g.clone());
                }
            }
        }
        Morphism { components }
    }

    pub fn scale(&self, c: u32) -> Morphism {
        Morphism {
            components: self
                .components
                .iter()
                .map(|(&v, f)| (v, f.scale(c)))
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.components.values().map(Matrix::rank).sum()
    }

    pub fn is_injective(&self, src: &Comodule) -> bool {
        self.rank() == src.total_dim()
    }

    pub fn is_surjective(&self, tgt: &Comodule) -> bool {
        self.rank() == tgt.total_dim()
    }

    pub fn is_iso(&self, src: &Comodule, tgt: &Comodule) -> bool {
        src.dims() == tgt.dims()
            && self.components.values().all(Matrix::is_invertible)
            && self.is_injective(src)
    }

    pub fn inverse(&self, src: &Comodule, tgt: &Comodule) -> Option<Morphism> {
        if !self.is_iso(src, tgt) {
            return None;
        }
        let components = self
            .components
            .iter()
            .map(|(&v, f)| f.inverse().map(|g| (v, g)))
            .collect::<Option<_>>()?;
        Some(Morphism { components })
    }

    /// Checks shapes and `f_t M_a = N_a f_s` for every arrow.
    pub fn is_morphism(&self, src: &Comodule, tgt: &Comodule) -> bool {
        for (&v, f) in &self.components {
            if f.rows() != tgt.dim(v) || f.cols() != src.dim(v) {
                return false;
            }
        }
        for &s in src.dims().keys() {
            for a in src.coalgebra().arrows_out(s) {
                if tgt.dim(a.tgt) == 0 {
                    continue;
                }
                let lhs = self.component_or_zero(a.tgt, src, tgt).mul(&src.action(a));
                let rhs = tgt.action(a).mul(&self.component_or_zero(a.src, src, tgt));
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(Matrix::is_zero)
    }
}

/// A basis of `Hom(M, N)` together with the coordinates it is normalized on.
#[derive(Clone, Debug)]
pub struct HomSpace {
    field: Field,
    basis: Vec<Morphism>,
    /// `(vertex, offset, rows, cols)` of each unknown block.
    layout: Vec<(Vertex, usize, usize, usize)>,
    free: Vec<usize>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Morphism] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<Morphism> {
        self.basis
    }

    pub fn combination(&self, coeffs: &[u32]) -> Morphism {
        assert_eq!(coeffs.len(), self.basis.len());
        let mut components: BTreeMap<Vertex, Matrix> = self
            .layout
            .iter()
            .map(|&(v, _, r, c)| (v, Matrix::zeros(self.field, r, c)))
            .collect();
        for (f, &c) in self.basis.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            for (v, m) in &f.components {
                components.get_mut(v).unwrap().add_scaled(m, c);
            }
        }
        Morphism { components }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Morphism {
        let p = self.field.p();
        let coeffs: Vec<u32> = (0..self.dim()).map(|_| rng.gen_range(0..p)).collect();
        self.combination(&coeffs)
    }

    /// Coordinates of a morphism lying in this space.
    pub fn coordinates(&self, f: &Morphism) -> Vec<u32> {
        let mut flat = vec![0u32; self.layout.last().map_or(0, |&(_, o, r, c)| o + r * c)];
        for &(v, off, r, c) in &self.layout {
            if let Some(m) = f.components.get(&v) {
                for i in 0..r {
                    for j in 0..c {
                        flat[off + i * c + j] = m.get(i, j);
                    }
                }
            }
        }
        self.free.iter().map(|&k| flat[k]).collect()
    }
}

/// Solves the intertwining system `F_t M_a = N_a F_s` over all arrows.
pub fn hom_basis(m: &Comodule, n: &Comodule) -> Result<HomSpace> {
    m.compatible(n)?;
    let field = m.field();
    let mut layout = Vec::new();
    let mut offset_of = BTreeMap::new();
    let mut unknowns = 0;
    for (&v, &dm) in m.dims() {
        let dn = n.dim(v);
        if dn > 0 {
            offset_of.insert(v, unknowns);
            layout.push((v, unknowns, dn, dm));
            unknowns += dn * dm;
        }
    }
    let mut rows: Vec<Vec<(usize, u32)>> = Vec::new();
    for &s in m.dims().keys() {
        for a in m.coalgebra().arrows_out(s) {
            let t = a.tgt;
            let (dms, dnt) = (m.dim(s), n.dim(t));
            if dnt == 0 {
                continue;
            }
            let ma = m.action(a);
            let na = n.action(a);
            let (dmt, dns) = (m.dim(t), n.dim(s));
            for i in 0..dnt {
                for j in 0..dms {
                    let mut row = Vec::new();
                    // (F_t M_a)[i, j] = sum_k F_t[i, k] M_a[k, j]
                    if let Some(&ot) = offset_of.get(&t) {
                        for k in 0..dmt {
                            let c = ma.get(k, j);
                            if c != 0 {
                                row.push((ot + i * dmt + k, c));
                            }
                        }
                    }
                    // -(N_a F_s)[i, j] = -sum_k N_a[i, k] F_s[k, j]
                    if let Some(&os) = offset_of.get(&s) {
                        for k in 0..dns {
                            let c = na.get(i, k);
                            if c != 0 {
                                row.push((os + k * dms + j, field.neg(c)));
                            }
                        }
                    }
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let mut system = Matrix::zeros(field, rows.len(), unknowns);
    for (r, entries) in rows.iter().enumerate() {
        for &(c, x) in entries {
            system.set(r, c, field.add(system.get(r, c), x));
        }
    }
    let (kernel, free) = system.kernel_with_free();
    let basis = (0..kernel.cols())
        .map(|k| {
            let components = layout
                .iter()
                .map(|&(v, off, r, c)| {
                    (
                        v,
                        Matrix::from_fn(field, r, c, |i, j| kernel.get(off + i * c + j, k)),
                    )
                })
                .collect();
            Morphism { components }
        })
        .collect();
    Ok(HomSpace {
        field,
        basis,
        layout,
        free,
    })
}
