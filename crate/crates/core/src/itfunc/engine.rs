use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use super::vector::ClassVector;
use crate::coalg::{Coalgebra, Side};
use crate::comod::{cosyzygy, Comodule};
use crate::error::{Error, Result};
use crate::exactlin::{rank_int, Field, IntegerMatrix};
use crate::kschmidt::{decompose, ClassId, Decomposition, IsoRegistry, DEFAULT_ATTEMPTS};

pub const DEFAULT_HORIZON: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PhiStatus {
    /// Certified from a finite orbit closure, or trivially (no generators).
    Exact,
    /// Equal to a finite injective dimension.
    FiniteId,
    /// Ranks were constant from `value` up to the horizon; not a proof.
    StableUpToHorizon,
}

impl PhiStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            PhiStatus::Exact => "EXACT",
            PhiStatus::FiniteId => "FINITE_ID",
            PhiStatus::StableUpToHorizon => "STABLE_UP_TO_HORIZON",
        }
    }

    pub fn is_certified(self) -> bool {
        !matches!(self, PhiStatus::StableUpToHorizon)
    }
}

/// Which certificates `phi` may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PhiRoute {
    /// Injective-dimension probe first, then the orbit closure.
    #[default]
    Auto,
    /// Orbit closure only.
    ClosureOnly,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiReport {
    pub value: usize,
    pub status: PhiStatus,
    /// Rank of the subgroup generated by `Ω̄^n` of the generators, `n = 0, 1, ...`.
    pub rank_sequence: Vec<usize>,
    /// Size of the orbit closure; `None` when it outgrew the horizon.
    #[serde(serialize_with = "closure_size")]
    pub closure_size: Option<usize>,
    pub generators: Vec<ClassId>,
    pub injective_dimension: Option<usize>,
    pub horizon: usize,
    pub seed: u64,
    pub field: u32,
    pub window: Option<usize>,
}

fn closure_size<S: Serializer>(v: &Option<usize>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(n) => s.serialize_u64(*n as u64),
        None => s.serialize_str("UNBOUNDED_AT_HORIZON"),
    }
}

/// Least `n` from which the (non-increasing) sequence stays at its last value.
pub fn stabilization_onset(ranks: &[usize]) -> usize {
    match ranks.last() {
        None => 0,
        Some(&last) => ranks.iter().position(|&r| r == last).unwrap_or(0),
    }
}

/// Stateful evaluator: owns the class registry, the cached cosyzygy table
/// and a seeded random source. One engine serves one coalgebra and side.
#[derive(Clone, Debug)]
pub struct Engine {
    coalg: Coalgebra,
    side: Side,
    field: Field,
    registry: IsoRegistry,
    omega: BTreeMap<ClassId, ClassVector>,
    rng: ChaCha8Rng,
    seed: u64,
    attempts: usize,
}

impl Engine {
    pub fn new(coalg: Coalgebra, side: Side, field: Field, seed: u64) -> Self {
        Engine {
            coalg,
            side,
            field,
            registry: IsoRegistry::new(),
            omega: BTreeMap::new(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            seed,
            attempts: DEFAULT_ATTEMPTS,
        }
    }

    pub fn with_attempts(mut self, attempts: usize) -> Self {
        self.attempts = attempts.max(1);
        self
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

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn attempts(&self) -> usize {
        self.attempts
    }

    pub fn registry(&self) -> &IsoRegistry {
        &self.registry
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Cached `Ω̄` values computed so far.
    pub fn omega_table(&self) -> &BTreeMap<ClassId, ClassVector> {
        &self.omega
    }

    fn check(&self, m: &Comodule) -> Result<()> {
        if m.side() != self.side {
            return Err(Error::SideMismatch(m.side(), self.side));
        }
        if m.field() != self.field || !m.coalgebra().same_algebra(&self.coalg) {
            return Err(Error::CoalgebraMismatch);
        }
        Ok(())
    }

    pub fn decompose(&mut self, m: &Comodule) -> Result<Decomposition> {
        self.check(m)?;
        decompose(m, &mut self.registry, self.attempts, &mut self.rng)
    }

    /// `[m]`: multiplicities of the non-injective indecomposable summands.
    pub fn class_of(&mut self, m: &Comodule) -> Result<ClassVector> {
        let d = self.decompose(m)?;
        let mut v = ClassVector::zero();
        for (id, k) in d.multiset() {
            if !self.registry.is_injective(id) {
                v.insert(id, k as i64)?;
            }
        }
        Ok(v)
    }

    /// `Ω̄[X]` for a registered class, computed once.
    pub fn omega_of(&mut self, id: ClassId) -> Result<ClassVector> {
        if let Some(v) = self.omega.get(&id) {
            return Ok(v.clone());
        }
        let v = if self.registry.is_injective(id) {
            ClassVector::zero()
        } else {
            let rep = self.registry.get(id).representative.clone();
            let om = cosyzygy(&rep, 1)?;
            self.class_of(&om)?
        };
        self.omega.insert(id, v.clone());
        Ok(v)
    }

    /// Linear extension of the table.
    pub fn omega_bar(&mut self, v: &ClassVector) -> Result<ClassVector> {
        let mut out = ClassVector::zero();
        for (&id, &c) in v.coords() {
            let image = self.omega_of(id)?;
            out.add_scaled(&image, c)?;
        }
        Ok(out)
    }

    pub fn phi(&mut self, m: &Comodule, horizon: usize) -> Result<PhiReport> {
        self.phi_with(m, horizon, PhiRoute::Auto)
    }

    /// The Igusa-Todorov value of `m`.
    ///
    /// The zero comodule has value 0 (`EXACT`). With a finite injective
    /// dimension `d <= horizon` the value is `d`. Otherwise the orbit closure `R` of the generators under
    /// `Ω̄` is grown; if it closes within the horizon, the image chain of a
    /// single endomorphism of `Z^R` is constant from step `|R|` on, so the
    /// least `n` with `rank(n) = rank(|R|)` is exact. If it does not close,
    /// the ranks are only observed up to the horizon.
    pub fn phi_with(&mut self, m: &Comodule, horizon: usize, route: PhiRoute) -> Result<PhiReport> {
        self.check(m)?;
        let horizon = horizon.max(1);
        let gens = self.class_of(m)?;
        let generators: Vec<ClassId> = gens.support().collect();
        let mut report = PhiReport {
            value: 0,
            status: PhiStatus::Exact,
            rank_sequence: vec![0],
            closure_size: Some(0),
            generators: generators.clone(),
            injective_dimension: None,
            horizon,
            seed: self.seed,
            field: self.field.p(),
            window: self.coalg.window(),
        };
        if m.is_zero() {
            report.injective_dimension = Some(0);
            return Ok(report);
        }
        if route == PhiRoute::Auto {
            // Ω⁻¹ is additive and kills injectives, so Ω^{-d}(m) is injective
            // exactly when Ω̄^d[m] = 0, i.e. when the rank drops to zero.
            let ranks = self.rank_sequence(&generators, horizon)?;
            if let Some(d) = ranks.iter().position(|&r| r == 0) {
                report.value = d;
                report.status = PhiStatus::FiniteId;
                report.injective_dimension = Some(d);
                report.rank_sequence = ranks[..=d].to_vec();
                report.closure_size = self.closure(&generators, horizon)?.map(|r| r.len());
                return Ok(report);
            }
        }
        if generators.is_empty() {
            return Ok(report);
        }
        match self.closure(&generators, horizon)? {
            Some(closure) => {
                let ranks = self.rank_sequence(&generators, closure.len())?;
                report.value = stabilization_onset(&ranks);
                report.rank_sequence = ranks;
                report.closure_size = Some(closure.len());
                report.status = PhiStatus::Exact;
            }
            None => {
                let ranks = self.rank_sequence(&generators, horizon)?;
                report.value = stabilization_onset(&ranks);
                report.rank_sequence = ranks;
                report.closure_size = None;
                report.status = PhiStatus::StableUpToHorizon;
            }
        }
        Ok(report)
    }

    /// The `Ω̄`-orbit closure of the generators, or `None` once it exceeds
    /// `budget` classes.
    pub fn closure(
        &mut self,
        generators: &[ClassId],
        budget: usize,
    ) -> Result<Option<BTreeSet<ClassId>>> {
        let mut seen: BTreeSet<ClassId> = generators.iter().copied().collect();
        let mut queue: VecDeque<ClassId> = generators.iter().copied().collect();
        while let Some(id) = queue.pop_front() {
            if seen.len() > budget {
                return Ok(None);
            }
            let image = self.omega_of(id)?;
            for next in image.support() {
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        Ok((seen.len() <= budget).then_some(seen))
    }

    /// Ranks of `{Ω̄^n [g] : g ∈ generators}` for `n = 0..=steps`.
    pub fn rank_sequence(&mut self, generators: &[ClassId], steps: usize) -> Result<Vec<usize>> {
        let mut current: Vec<ClassVector> =
            generators.iter().map(|&g| ClassVector::unit(g)).collect();
        let mut ranks = Vec::with_capacity(steps + 1);
        for n in 0..=steps {
            let rank = integer_rank(&current);
            ranks.push(rank);
            if rank == 0 {
                ranks.resize(steps + 1, 0);
                break;
            }
            if n < steps {
                current = current
                    .iter()
                    .map(|v| self.omega_bar(v))
                    .collect::<Result<_>>()?;
            }
        }
        Ok(ranks)
    }

    /// Lower bound for the supremum of certified values over a family,
    /// with the index of a witness.
    pub fn phi_dim_estimate(
        &mut self,
        family: &[Comodule],
        horizon: usize,
    ) -> Result<(usize, Option<usize>)> {
        let mut best = (0, None);
        for (i, m) in family.iter().enumerate() {
            let r = self.phi(m, horizon)?;
            if r.status.is_certified() && (best.1.is_none() || r.value > best.0) {
                best = (r.value, Some(i));
            }
        }
        Ok(best)
    }
}

fn integer_rank(vectors: &[ClassVector]) -> usize {
    let cols: BTreeSet<ClassId> = vectors.iter().flat_map(|v| v.support()).collect();
    let cols: Vec<ClassId> = cols.into_iter().collect();
    let rows: Vec<Vec<num_bigint::BigInt>> = vectors
        .iter()
        .map(|v| cols.iter().map(|&c| v.get(c).into()).collect())
        .collect();
    rank_int(&IntegerMatrix::from_big_rows(rows, cols.len()))
}
