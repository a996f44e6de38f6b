//! Random and enumerated comodules for property checks and evidence tables.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::coalg::{Coalgebra, Path, Side, Vertex};
use crate::comod::{injective_envelope, Comodule};
use crate::error::Result;
use crate::exactlin::{Field, Matrix};

/// Default cap on the total dimension of sampled comodules.
pub const DEFAULT_DIM_CAP: usize = 24;

#[derive(Clone, Debug)]
pub struct Sampler {
    pub coalg: Coalgebra,
    pub side: Side,
    pub field: Field,
    /// Vertices where socles may be placed.
    pub vertices: Vec<Vertex>,
    pub dim_cap: usize,
}

impl Sampler {
    pub fn new(coalg: Coalgebra, side: Side, field: Field, vertices: Vec<Vertex>) -> Self {
        Sampler {
            coalg,
            side,
            field,
            vertices,
            dim_cap: DEFAULT_DIM_CAP,
        }
    }

    pub fn with_dim_cap(mut self, cap: usize) -> Self {
        self.dim_cap = cap;
        self
    }

    pub fn simple(&self, v: Vertex) -> Comodule {
        Comodule::simple(self.coalg.clone(), self.side, self.field, v).expect("sampler vertex")
    }

    /// Random semisimple comodule with multiplicities in `0..=max_mult`,
    /// never zero.
    pub fn semisimple<R: Rng + ?Sized>(&self, max_mult: usize, rng: &mut R) -> Comodule {
        loop {
            let dims: BTreeMap<Vertex, usize> = self
                .vertices
                .iter()
                .map(|&v| (v, rng.gen_range(0..=max_mult)))
                .filter(|&(_, d)| d > 0)
                .collect();
            if !dims.is_empty() {
                return Comodule::semisimple(self.coalg.clone(), self.side, self.field, &dims)
                    .expect("sampler vertex");
            }
        }
    }

    /// A random nonzero comodule: the subcomodule generated by a few random
    /// vectors of a random sum of indecomposable injectives, sometimes
    /// divided by the subcomodule generated by a random vector of it.
    pub fn comodule<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Comodule> {
        loop {
            let k = rng.gen_range(1..=3);
            let mut parts = Vec::with_capacity(k);
            for _ in 0..k {
                let v = *self.vertices.choose(rng).expect("sampler needs vertices");
                parts.push(Comodule::injective_indecomposable(
                    self.coalg.covering(&[v], self.coalg.truncation() + 1),
                    self.side,
                    self.field,
                    v,
                )?);
            }
            let refs: Vec<&Comodule> = parts.iter().collect();
            let big = Comodule::direct_sum(&refs)?;
            let gens = random_vectors(&big, rng.gen_range(1..=3), rng);
            let sub = big.restrict(&big.generated(&gens))?.module;
            let m = if rng.gen_bool(0.4) && sub.total_dim() > 1 {
                let inner = random_vectors(&sub, 1, rng);
                sub.quotient(&sub.generated(&inner))?.module
            } else {
                sub
            };
            if !m.is_zero() && m.total_dim() <= self.dim_cap {
                return Ok(m);
            }
        }
    }

    /// A random non-injective comodule, taken as a random quotient of the
    /// envelope of a random comodule when necessary.
    pub fn non_injective<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Comodule> {
        for _ in 0..64 {
            let m = self.comodule(rng)?;
            if !m.is_injective()? {
                return Ok(m);
            }
        }
        let v = *self.vertices.choose(rng).expect("sampler needs vertices");
        let env = injective_envelope(&self.simple(v))?;
        env.cokernel()
    }

    /// Strings (uniserial comodules along a path) of every length up to the
    /// truncation, starting at the sampler vertices.
    pub fn strings(&self) -> Vec<Comodule> {
        let mut out = Vec::new();
        for &v in &self.vertices {
            for p in self.coalg.paths_from(v, self.coalg.truncation()) {
                if let Ok(m) = Comodule::string(self.coalg.clone(), self.side, self.field, &p) {
                    out.push(m);
                }
            }
        }
        out
    }
}

/// `count` random vectors at random support vertices.
fn random_vectors<R: Rng + ?Sized>(
    m: &Comodule,
    count: usize,
    rng: &mut R,
) -> BTreeMap<Vertex, Matrix> {
    let support = m.support();
    let mut out: BTreeMap<Vertex, Matrix> = BTreeMap::new();
    for _ in 0..count {
        let v = *support.choose(rng).expect("nonzero comodule");
        let col = Matrix::random(m.field(), m.dim(v), 1, rng);
        let entry = out
            .entry(v)
            .or_insert_with(|| Matrix::zeros(m.field(), m.dim(v), 0));
        *entry = Matrix::hstack(m.field(), m.dim(v), &[entry, &col]);
    }
    out
}

/// The path with the given arrows from `start`, if they compose.
pub fn path_along(c: &Coalgebra, start: Vertex, arrows: &[usize]) -> Option<Path> {
    let mut end = start;
    for &a in arrows {
        let arrow = c.arrow(a)?;
        if arrow.src != end {
            return None;
        }
        end = arrow.tgt;
    }
    Some(Path {
        start,
        arrows: arrows.to_vec(),
        end,
    })
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn samples_are_valid() {
        let f = Field::new(101).unwrap();
        let cases = [
            (
                Coalgebra::a_infinity_toward_zero(20, 1).unwrap(),
                Side::Left,
            ),
            (
                Coalgebra::a_infinity_away_from_zero(20, 2).unwrap(),
                Side::Right,
            ),
            (Coalgebra::cycle(3, 2).unwrap(), Side::Right),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (c, side) in cases {
            let s = Sampler::new(
                c.clone(),
                side,
                f,
                c.interior_vertices(4).into_iter().take(8).collect(),
            );
            for _ in 0..20 {
                let m = s.comodule(&mut rng).unwrap();
                assert!(!m.is_zero() && m.total_dim() <= DEFAULT_DIM_CAP);
                m.check_truncation().unwrap();
                assert!(!s.non_injective(&mut rng).unwrap().is_injective().unwrap());
            }
            assert!(s
                .strings()
                .iter()
                .all(|m| m.total_dim() <= c.truncation() + 1));
        }
    }

    #[test]
    fn strings_on_a_cycle() {
        let f = Field::new(101).unwrap();
        let c = Coalgebra::cycle(3, 1).unwrap();
        let s = Sampler::new(c.clone(), Side::Right, f, vec![0, 1, 2]);
        let strings = s.strings();
        assert_eq!(strings.len(), 6);
        assert_eq!(strings.iter().filter(|m| m.total_dim() == 2).count(), 3);
        assert_eq!(path_along(&c, 2, &[2, 0]).map(|p| p.end), Some(1));
        assert_eq!(path_along(&c, 2, &[1]), None);
    }
}
