//! Finite-dimensional comodules, stored as representations of the acting
//! quiver in which every path of length `L + 1` acts as zero.

mod hom;
mod structure;

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::coalg::{Arrow, ArrowId, Coalgebra, Path, Side, SimpleLabel, Vertex};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix};

pub use hom::{hom_basis, HomSpace, Morphism};
pub use structure::{
    cosyzygy, injective_dimension_probe, injective_envelope, injective_envelope_randomized,
    Envelope, IdProbe, Subquotient,
};

/// A comodule: vertex dimensions plus one matrix per arrow between support
/// vertices, of shape `dim(target) x dim(source)`, acting on columns.
#[derive(Clone, PartialEq, Eq)]
pub struct Comodule {
    coalg: Coalgebra,
    side: Side,
    field: Field,
    dims: BTreeMap<Vertex, usize>,
    maps: BTreeMap<ArrowId, Matrix>,
}

impl Comodule {
    /// Validates shapes and the truncation constraint. Maps for arrows not
    /// listed are zero; zero-dimensional vertices are dropped.
    pub fn new(
        coalg: Coalgebra,
        side: Side,
        field: Field,
        dims: BTreeMap<Vertex, usize>,
        maps: BTreeMap<ArrowId, Matrix>,
    ) -> Result<Self> {
        for &v in dims.keys() {
            if !coalg.has_vertex(v) {
                return Err(Error::UnknownVertex(v.to_string()));
            }
        }
        let dims: BTreeMap<Vertex, usize> = dims.into_iter().filter(|&(_, d)| d > 0).collect();
        let dim = |v: Vertex| dims.get(&v).copied().unwrap_or(0);
        for (&id, m) in &maps {
            let a = coalg
                .arrow(id)
                .ok_or_else(|| Error::UnknownArrow(id.to_string()))?;
            if m.field() != field {
                return Err(Error::CoalgebraMismatch);
            }
            if m.rows() != dim(a.tgt) || m.cols() != dim(a.src) {
                return Err(Error::Shape {
                    arrow: coalg.arrow_label(id),
                    rows: dim(a.tgt),
                    cols: dim(a.src),
                    got_rows: m.rows(),
                    got_cols: m.cols(),
                });
            }
        }
        let m = Self::assemble(coalg, side, field, dims, maps);
        m.check_truncation()?;
        Ok(m)
    }

    /// Builds without the truncation check; callers guarantee it holds.
    pub(crate) fn assemble(
        coalg: Coalgebra,
        side: Side,
        field: Field,
        dims: BTreeMap<Vertex, usize>,
        mut maps: BTreeMap<ArrowId, Matrix>,
    ) -> Self {
        let dims: BTreeMap<Vertex, usize> = dims.into_iter().filter(|&(_, d)| d > 0).collect();
        let mut full = BTreeMap::new();
        for (&v, &dv) in &dims {
            for a in coalg.arrows_out(v) {
                if let Some(&dt) = dims.get(&a.tgt) {
                    let m = maps
                        .remove(&a.id)
                        .unwrap_or_else(|| Matrix::zeros(field, dt, dv));
                    full.insert(a.id, m);
                }
            }
        }
        Comodule {
            coalg,
            side,
            field,
            dims,
            maps: full,
        }
    }

    pub fn zero(coalg: Coalgebra, side: Side, field: Field) -> Self {
        Self::assemble(coalg, side, field, BTreeMap::new(), BTreeMap::new())
    }

    pub fn simple(coalg: Coalgebra, side: Side, field: Field, v: Vertex) -> Result<Self> {
        Self::semisimple(coalg, side, field, &BTreeMap::from([(v, 1)]))
    }

    /// All structure maps zero.
    pub fn semisimple(
        coalg: Coalgebra,
        side: Side,
        field: Field,
        dims: &BTreeMap<Vertex, usize>,
    ) -> Result<Self> {
        for &v in dims.keys() {
            if !coalg.has_vertex(v) {
                return Err(Error::UnknownVertex(v.to_string()));
            }
        }
        Ok(Self::assemble(
            coalg,
            side,
            field,
            dims.clone(),
            BTreeMap::new(),
        ))
    }

    /// The indecomposable injective `E(S_v)`: dual basis of the paths of
    /// length at most `L` ending at `v`, each placed at its start. An arrow
    /// `a` sends the dual of `a q` to the dual of `q`.
    pub fn injective_indecomposable(
        coalg: Coalgebra,
        side: Side,
        field: Field,
        v: Vertex,
    ) -> Result<Self> {
        let paths = coalg.injective_basis(SimpleLabel { vertex: v, side })?;
        Ok(Self::from_paths(
            coalg,
            side,
            field,
            &paths,
            PathRule::Injective,
        ))
    }

    /// The projective cover `P(S_v)`: paths of length at most `L` starting at
    /// `v`, each placed at its end. An arrow `a` sends `p` to `p a`.
    pub fn projective_indecomposable(
        coalg: Coalgebra,
        side: Side,
        field: Field,
        v: Vertex,
    ) -> Result<Self> {
        let paths = coalg.projective_basis(SimpleLabel { vertex: v, side })?;
        Ok(Self::from_paths(
            coalg,
            side,
            field,
            &paths,
            PathRule::Projective,
        ))
    }

    /// The uniserial comodule with one basis vector per vertex along a path,
    /// every arrow of the path acting as `1`.
    pub fn string(coalg: Coalgebra, side: Side, field: Field, path: &Path) -> Result<Self> {
        if path.len() > coalg.truncation() {
            return Err(Error::NotNilpotent(describe_path(&coalg, path)));
        }
        let mut vertices = vec![path.start];
        for &a in &path.arrows {
            let arrow = coalg
                .arrow(a)
                .ok_or_else(|| Error::UnknownArrow(a.to_string()))?;
            vertices.push(arrow.tgt);
        }
        let mut dims: BTreeMap<Vertex, usize> = BTreeMap::new();
        let mut pos = Vec::with_capacity(vertices.len());
        for &v in &vertices {
            let d = dims.entry(v).or_insert(0);
            pos.push(*d);
            *d += 1;
        }
        let mut maps: BTreeMap<ArrowId, Matrix> = BTreeMap::new();
        for (k, &a) in path.arrows.iter().enumerate() {
            let arrow = coalg.arrow(a).unwrap();
            let m = maps
                .entry(a)
                .or_insert_with(|| Matrix::zeros(field, dims[&arrow.tgt], dims[&arrow.src]));
            m.set(pos[k + 1], pos[k], 1);
        }
        Self::new(coalg, side, field, dims, maps)
    }

    fn from_paths(
        coalg: Coalgebra,
        side: Side,
        field: Field,
        paths: &[Path],
        rule: PathRule,
    ) -> Self {
        let place = |p: &Path| match rule {
            PathRule::Injective => p.start,
            PathRule::Projective => p.end,
        };
        let mut dims: BTreeMap<Vertex, usize> = BTreeMap::new();
        let mut slot = Vec::with_capacity(paths.len());
        for p in paths {
            let d = dims.entry(place(p)).or_insert(0);
            slot.push(*d);
            *d += 1;
        }
        let lookup: BTreeMap<&Path, usize> =
            paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut edges: Vec<(Arrow, usize, usize)> = Vec::new();
        for (i, p) in paths.iter().enumerate() {
            match rule {
                PathRule::Injective => {
                    if let Some(&id) = p.arrows.first() {
                        let a = coalg.arrow(id).unwrap();
                        let q = Path {
                            start: a.tgt,
                            arrows: p.arrows[1..].to_vec(),
                            end: p.end,
                        };
                        edges.push((a, i, lookup[&q]));
                    }
                }
                PathRule::Projective if p.len() < coalg.truncation() => {
                    for a in coalg.arrows_out(p.end) {
                        let mut arrows = p.arrows.clone();
                        arrows.push(a.id);
                        let q = Path {
                            start: p.start,
                            arrows,
                            end: a.tgt,
                        };
                        edges.push((a, i, lookup[&q]));
                    }
                }
                PathRule::Projective => {}
            }
        }
        let mut maps: BTreeMap<ArrowId, Matrix> = BTreeMap::new();
        for (a, i, j) in edges {
            maps.entry(a.id)
                .or_insert_with(|| Matrix::zeros(field, dims[&a.tgt], dims[&a.src]))
                .set(slot[j], slot[i], 1);
        }
        Self::assemble(coalg, side, field, dims, maps)
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.coalg
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &BTreeMap<Vertex, usize> {
        &self.dims
    }

    pub fn dim(&self, v: Vertex) -> usize {
        self.dims.get(&v).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn support(&self) -> Vec<Vertex> {
        self.dims.keys().copied().collect()
    }

    /// Structure maps for every arrow with both ends in the support.
    pub fn maps(&self) -> &BTreeMap<ArrowId, Matrix> {
        &self.maps
    }

    /// The action of an arrow; a zero matrix of the right shape when either
    /// end lies outside the support.
    pub fn action(&self, a: Arrow) -> Matrix {
        self.maps
            .get(&a.id)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field, self.dim(a.tgt), self.dim(a.src)))
    }

    /// Arrows with both ends in the support.
    pub fn inner_arrows(&self) -> impl Iterator<Item = (Arrow, &Matrix)> + '_ {
        self.maps
            .iter()
            .map(|(&id, m)| (self.coalg.arrow(id).unwrap(), m))
    }

    pub fn is_semisimple(&self) -> bool {
        self.maps.values().all(Matrix::is_zero)
    }

    /// Composite of the structure maps along `arrows`, starting at `from`.
    pub fn path_action(&self, from: Vertex, arrows: &[ArrowId]) -> Matrix {
        let mut acc = Matrix::identity(self.field, self.dim(from));
        let mut at = from;
        for &id in arrows {
            let a = self.coalg.arrow(id).expect("arrow of the quiver");
            debug_assert_eq!(a.src, at);
            acc = self.action(a).mul(&acc);
            at = a.tgt;
        }
        acc
    }

    pub fn dims_string(&self) -> String {
        let parts: Vec<String> = self
            .dims
            .iter()
            .map(|(&v, d)| format!("{}:{}", self.coalg.vertex_label(v), d))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// Same comodule over a coalgebra with a different window.
    pub fn with_coalgebra(&self, coalg: Coalgebra) -> Result<Comodule> {
        if !coalg.same_algebra(&self.coalg) {
            return Err(Error::CoalgebraMismatch);
        }
        let mut m = self.clone();
        m.coalg = coalg;
        Ok(m)
    }

    pub(crate) fn compatible(&self, other: &Comodule) -> Result<()> {
        if self.side != other.side {
            return Err(Error::SideMismatch(self.side, other.side));
        }
        if self.field != other.field || !self.coalg.same_algebra(&other.coalg) {
            return Err(Error::CoalgebraMismatch);
        }
        Ok(())
    }

    /// Every path of length `L + 1` must act as zero.
    pub fn check_truncation(&self) -> Result<()> {
        let limit = self.coalg.truncation() + 1;
        for (&v, &d) in &self.dims {
            let mut stack = vec![(v, Vec::<ArrowId>::new(), Matrix::identity(self.field, d))];
            while let Some((at, arrows, acc)) = stack.pop() {
                if acc.is_zero() {
                    continue;
                }
                if arrows.len() == limit {
                    let path = Path {
                        start: v,
                        end: at,
                        arrows,
                    };
                    return Err(Error::NotNilpotent(describe_path(&self.coalg, &path)));
                }
                for a in self.coalg.arrows_out(at) {
                    if let Some(m) = self.maps.get(&a.id) {
                        let mut next = arrows.clone();
                        next.push(a.id);
                        stack.push((a.tgt, next, m.mul(&acc)));
                    }
                }
            }
        }
        Ok(())
    }

    /// Block-diagonal sum. Parts may use different windows of the same
    /// template; the result uses the widest.
    pub fn direct_sum(parts: &[&Comodule]) -> Result<Comodule> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidPresentation("direct sum of no parts".into()))?;
        let mut coalg = first.coalg.clone();
        for p in &parts[1..] {
            first.compatible(p)?;
            if let (Some(a), Some(b)) = (coalg.window(), p.coalg.window()) {
                if b > a {
                    coalg = p.coalg.clone();
                }
            }
        }
        let mut dims: BTreeMap<Vertex, usize> = BTreeMap::new();
        for p in parts {
            for (&v, &d) in &p.dims {
                *dims.entry(v).or_insert(0) += d;
            }
        }
        let field = first.field;
        let mut maps = BTreeMap::new();
        for (&v, &dv) in &dims {
            for a in coalg.arrows_out(v) {
                let Some(&dt) = dims.get(&a.tgt) else {
                    continue;
                };
                let mut m = Matrix::zeros(field, dt, dv);
                let (mut r0, mut c0) = (0, 0);
                for p in parts {
                    let (pt, ps) = (p.dim(a.tgt), p.dim(a.src));
                    if let Some(block) = p.maps.get(&a.id) {
                        for i in 0..pt {
                            for j in 0..ps {
                                m.set(r0 + i, c0 + j, block.get(i, j));
                            }
                        }
                    }
                    r0 += pt;
                    c0 += ps;
                }
                maps.insert(a.id, m);
            }
        }
        Ok(Self::assemble(coalg, first.side, field, dims, maps))
    }

    /// `k` copies of `self`.
    pub fn power(&self, k: usize) -> Comodule {
        if k == 0 {
            return Comodule::zero(self.coalg.clone(), self.side, self.field);
        }
        let parts: Vec<&Comodule> = std::iter::repeat_n(self, k).collect();
        Self::direct_sum(&parts).expect("copies are compatible")
    }

    /// Transports the structure along invertible vertex matrices `g`
    /// (identity where missing): the new maps are `g_t M_a g_s^{-1}`, and the
    /// returned morphism `self -> new` has components `g_v`.
    pub fn change_basis(&self, g: &BTreeMap<Vertex, Matrix>) -> Result<(Comodule, Morphism)> {
        let mut comps = BTreeMap::new();
        let mut invs = BTreeMap::new();
        for (&v, &d) in &self.dims {
            let gv = g
                .get(&v)
                .cloned()
                .unwrap_or_else(|| Matrix::identity(self.field, d));
            let inv = gv.inverse().ok_or_else(|| {
                Error::Verification(format!("basis change at vertex {v} is singular"))
            })?;
            comps.insert(v, gv);
            invs.insert(v, inv);
        }
        let maps = self
            .inner_arrows()
            .map(|(a, m)| (a.id, comps[&a.tgt].mul(m).mul(&invs[&a.src])))
            .collect();
        let new = Self::assemble(
            self.coalg.clone(),
            self.side,
            self.field,
            self.dims.clone(),
            maps,
        );
        Ok((new, Morphism::from_components(comps)))
    }

    /// Random vertexwise basis change.
    pub fn scramble<R: Rng + ?Sized>(&self, rng: &mut R) -> (Comodule, Morphism) {
        let g = self
            .dims
            .iter()
            .map(|(&v, &d)| (v, Matrix::random_invertible(self.field, d, rng)))
            .collect();
        self.change_basis(&g).expect("random invertible matrices")
    }
}

#[derive(Clone, Copy)]
enum PathRule {
    Injective,
    Projective,
}

pub(crate) fn describe_path(c: &Coalgebra, p: &Path) -> String {
    if p.arrows.is_empty() {
        return format!("e_{}", c.vertex_label(p.start));
    }
    let labels: Vec<String> = p.arrows.iter().map(|&a| c.arrow_label(a)).collect();
    format!(
        "{} ({} -> {})",
        labels.join("."),
        c.vertex_label(p.start),
        c.vertex_label(p.end)
    )
}

impl fmt::Debug for Comodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Comodule<{} over {}> dims {}",
            self.side,
            self.coalg.describe(),
            self.dims_string()
        )?;
        for (a, m) in self.inner_arrows() {
            if !m.is_zero() {
                write!(f, "\n  {}: {:?}", self.coalg.arrow_label(a.id), m)?;
            }
        }
        Ok(())
    }
}
