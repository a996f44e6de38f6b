//! Acceptance criteria, one PASS/FAIL line each, with wall-clock budgets.
//!
//! Runs without the libtest harness so the lines are always printed.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cophi_core::checks::{
    check_qcf, check_semiperfect, cross_validate_theorem, nakayama_nu, simple_injectives,
    theorem_family, Consistency,
};
use cophi_core::coalg::Vertex;
use cophi_core::comod::{
    injective_dimension_probe, injective_envelope, injective_envelope_randomized, IdProbe,
};
use cophi_core::exactlin::{rank_int, IntegerMatrix};
use cophi_core::itfunc::{Engine, PhiRoute, PhiStatus};
use cophi_core::kschmidt::{decompose, is_isomorphic, IsoRegistry, DEFAULT_ATTEMPTS};
use cophi_core::sample::Sampler;
use cophi_core::{Coalgebra, Comodule, Field, Side};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn gf() -> Field {
    Field::new(101).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s(e: cophi_core::Error) -> String {
    e.to_string()
}

fn right_ainf() -> Coalgebra {
    Coalgebra::a_infinity_away_from_zero(20, 1).unwrap()
}

fn left_ainf() -> Coalgebra {
    Coalgebra::a_infinity_toward_zero(20, 1).unwrap()
}

fn simple(c: &Coalgebra, side: Side, v: Vertex) -> Comodule {
    Comodule::simple(c.clone(), side, gf(), v).unwrap()
}

fn phi_of_simples_on_the_right() -> Outcome {
    let c = right_ainf();
    let mut engine = Engine::new(c.clone(), Side::Right, gf(), 1);
    for n in 0..=15 {
        let r = engine.phi(&simple(&c, Side::Right, n), 64).map_err(e2s)?;
        ensure(r.value == n && r.status == PhiStatus::FiniteId, || {
            format!("M_{n}: got {} {}", r.value, r.status.as_str())
        })?;
    }
    Ok("phi(M_n) = n, FINITE_ID for n = 0..15".into())
}

fn cosemisimple_on_the_left() -> Outcome {
    let c = left_ainf();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut engine = Engine::new(c.clone(), Side::Left, gf(), 2);
    for k in 0..100 {
        let mut dims = BTreeMap::new();
        while dims.is_empty() {
            for v in 0..=12 {
                let d = rng.gen_range(0..=2usize);
                if d > 0 && rng.gen_bool(0.35) {
                    dims.insert(v, d);
                }
            }
        }
        let m = Comodule::semisimple(c.clone(), Side::Left, gf(), &dims).map_err(e2s)?;
        let r = engine.phi(&m, 50).map_err(e2s)?;
        let constant =
            r.rank_sequence.len() == 51 && r.rank_sequence.iter().all(|&x| x == r.rank_sequence[0]);
        ensure(
            r.value == 0 && r.status == PhiStatus::StableUpToHorizon && constant,
            || {
                format!(
                    "sample {k} {:?}: {} {} {:?}",
                    dims,
                    r.value,
                    r.status.as_str(),
                    r.rank_sequence
                )
            },
        )?;
    }
    Ok("100 cosemisimple comodules: value 0, constant ranks to 50, STABLE_UP_TO_HORIZON".into())
}

/// The five listed properties of the function, on random comodules.
fn property_suite() -> Outcome {
    let horizon = 32;
    let families = [
        (right_ainf(), Side::Right),
        (
            Coalgebra::a_infinity_away_from_zero(20, 2).unwrap(),
            Side::Right,
        ),
        (left_ainf(), Side::Left),
        (Coalgebra::cycle(2, 1).unwrap(), Side::Right),
        (Coalgebra::cycle(3, 2).unwrap(), Side::Left),
        (Coalgebra::cycle(5, 1).unwrap(), Side::Right),
        (Coalgebra::cycle(3, 1).unwrap(), Side::Right),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut evaluated = 0;
    let mut checks = [0usize; 5];
    for (c, side) in families {
        let vertices: Vec<Vertex> = c
            .interior_vertices(c.truncation() + 1)
            .into_iter()
            .take(10)
            .collect();
        let sampler = Sampler::new(c.clone(), side, gf(), vertices).with_dim_cap(10);
        let mut engine = Engine::new(c.clone(), side, gf(), 3);
        for _ in 0..40 {
            let m = sampler.comodule(&mut rng).map_err(e2s)?;
            let r = engine.phi(&m, horizon).map_err(e2s)?;
            if !r.status.is_certified() {
                continue;
            }
            evaluated += 1;
            let tag = || format!("{} on {}", m.dims_string(), c.describe());

            // finite injective dimension equals the value
            let closure = engine
                .phi_with(&m, horizon, PhiRoute::ClosureOnly)
                .map_err(e2s)?;
            if let IdProbe::Finite(d) = injective_dimension_probe(&m, horizon).map_err(e2s)? {
                checks[0] += 1;
                ensure(
                    r.value == d && (!closure.status.is_certified() || closure.value == d),
                    || format!("(1) {}: id {d}, phi {} / {}", tag(), r.value, closure.value),
                )?;
            }
            // indecomposable of infinite injective dimension has value 0
            let parts = engine.decompose(&m).map_err(e2s)?;
            let infinite = closure.status == PhiStatus::Exact
                && closure.rank_sequence.last().is_some_and(|&x| x > 0);
            if parts.len() == 1 && infinite {
                checks[1] += 1;
                ensure(r.value == 0, || format!("(2) {}: phi {}", tag(), r.value))?;
            }
            // monotone under adding summands
            let n = sampler.comodule(&mut rng).map_err(e2s)?;
            let sum = Comodule::direct_sum(&[&n, &m]).map_err(e2s)?;
            let rs = engine.phi(&sum, horizon).map_err(e2s)?;
            if rs.status.is_certified() {
                checks[2] += 1;
                ensure(rs.value >= r.value, || {
                    format!("(3) {}: {} < {}", tag(), rs.value, r.value)
                })?;
            }
            // insensitive to multiplicities
            let k = rng.gen_range(2..=3);
            let rk = engine.phi(&m.power(k), horizon).map_err(e2s)?;
            if rk.status.is_certified() {
                checks[3] += 1;
                ensure(rk.value == r.value, || {
                    format!("(4) {} ^{k}: {} != {}", tag(), rk.value, r.value)
                })?;
            }
            // drops by at most one under a cosyzygy
            let om = cophi_core::comod::cosyzygy(&m, 1).map_err(e2s)?;
            let ro = engine.phi(&om, horizon).map_err(e2s)?;
            if ro.status.is_certified() {
                checks[4] += 1;
                ensure(r.value <= ro.value + 1, || {
                    format!("(5) {}: {} > {} + 1", tag(), r.value, ro.value)
                })?;
            }
        }
    }
    ensure(evaluated >= 200, || {
        format!("only {evaluated} certified samples")
    })?;
    Ok(format!(
        "{evaluated} certified samples, property checks {:?}, zero violations",
        checks
    ))
}

fn cycles_are_qcf_with_zero_values() -> Outcome {
    let mut total = 0;
    for n in [2usize, 3, 5] {
        let c = Coalgebra::cycle(n, 1).unwrap();
        let side = Side::Right;
        ensure(check_qcf(&c, side, gf()).map_err(e2s)?.holds, || {
            format!("cycle({n}) not qcF")
        })?;
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut family = theorem_family(&c, side, gf(), 6, 0, &mut rng).map_err(e2s)?;
        ensure(family.exhaustive, || "family not exhaustive".into())?;
        // hand enumeration: the non-injective indecomposables are the n
        // simples (two-dimensional intervals are injective), so every set of
        // distinct ones fits under the cap when n <= 6
        ensure(family.members.len() == (1 << n) - 1, || {
            format!(
                "cycle({n}): {} sets, expected {}",
                family.members.len(),
                (1 << n) - 1
            )
        })?;
        let sampler = Sampler::new(c.clone(), side, gf(), (0..n).collect()).with_dim_cap(6);
        for k in 0..20 {
            family.members.push((
                format!("sample {k}"),
                sampler.comodule(&mut rng).map_err(e2s)?,
            ));
        }
        let mut engine = Engine::new(c.clone(), side, gf(), 4);
        // the class map is the index shift S_i -> S_{i-1}
        for i in 0..n {
            let om = engine
                .class_of(&cophi_core::comod::cosyzygy(&simple(&c, side, i), 1).map_err(e2s)?)
                .map_err(e2s)?;
            let expected = engine
                .class_of(&simple(&c, side, (i + n - 1) % n))
                .map_err(e2s)?;
            ensure(om == expected, || {
                format!("cycle({n}): cosyzygy of S_{i} is {om}")
            })?;
        }
        for (name, m) in &family.members {
            let r = engine.phi(m, 64).map_err(e2s)?;
            // injective members are reported with FINITE_ID 0
            let certified = r.status == PhiStatus::Exact
                || (r.status == PhiStatus::FiniteId && m.is_injective().unwrap_or(false));
            ensure(r.value == 0 && certified, || {
                format!("cycle({n}) {name}: {} {}", r.value, r.status.as_str())
            })?;
            total += 1;
        }
    }
    Ok(format!(
        "qcF on cycle(2,3,5); {total} comodules up to dimension 6 all have value 0"
    ))
}

fn right_linear_quiver_witness() -> Outcome {
    let c = right_ainf();
    let semi = check_semiperfect(&c, Side::Right, gf()).map_err(e2s)?;
    ensure(semi.holds, || "not semiperfect".into())?;
    let mut engine = Engine::new(c.clone(), Side::Right, gf(), 5);
    let r = engine.phi(&simple(&c, Side::Right, 1), 64).map_err(e2s)?;
    ensure(r.value == 1 && r.status.is_certified(), || {
        format!("phi(M_1) = {}", r.value)
    })?;
    let q = check_qcf(&c, Side::Right, gf()).map_err(e2s)?;
    ensure(!q.holds && q.witness.as_deref() == Some("S_0"), || {
        format!("qcf {:?}", q.witness)
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let family = theorem_family(&c, Side::Right, gf(), 2, 4, &mut rng).map_err(e2s)?;
    let t = cross_validate_theorem(&mut engine, &family, 64).map_err(e2s)?;
    ensure(t.verdict == Consistency::Consistent, || t.reason.clone())?;
    Ok("semiperfect, phi(M_1) = 1, qcF fails at S_0, CONSISTENT".into())
}

fn nakayama_on_cycle3() -> Outcome {
    let t = nakayama_nu(&Coalgebra::cycle(3, 1).unwrap(), Side::Right, gf(), true).map_err(e2s)?;
    for (i, e) in t.entries.iter().enumerate() {
        let nu = format!("S_{}", (i + 2) % 3);
        let mu = format!("S_{}", (i + 1) % 3);
        ensure(e.nu == nu && e.mu.as_deref() == Some(mu.as_str()), || {
            format!("{:?}", e)
        })?;
    }
    ensure(t.mu_inverts_nu == Some(true), || {
        "mu does not invert nu".into()
    })?;
    Ok("nu: i -> i-1, mu: i -> i+1, mu.nu = id".into())
}

fn simple_injective_scans() -> Outcome {
    let cyc =
        simple_injectives(&Coalgebra::cycle(3, 1).unwrap(), Side::Right, gf()).map_err(e2s)?;
    ensure(cyc.simples.is_empty(), || {
        format!("cycle(3): {:?}", cyc.simples)
    })?;
    let lin = simple_injectives(&right_ainf(), Side::Right, gf()).map_err(e2s)?;
    ensure(lin.simples == ["S_0"], || {
        format!("A-infinity: {:?}", lin.simples)
    })?;
    ensure(
        !check_qcf(&right_ainf(), Side::Right, gf())
            .map_err(e2s)?
            .holds,
        || "qcF holds".into(),
    )?;
    Ok("cycle(3): none; right A-infinity: {S_0}, qcF false".into())
}

fn krull_schmidt_round_trip() -> Outcome {
    let cases = [
        (Coalgebra::cycle(3, 2).unwrap(), Side::Right),
        (
            Coalgebra::a_infinity_away_from_zero(12, 2).unwrap(),
            Side::Right,
        ),
        (
            Coalgebra::a_infinity_toward_zero(12, 1).unwrap(),
            Side::Left,
        ),
    ];
    let run = |seed: u64| -> Result<Vec<BTreeMap<usize, usize>>, String> {
        let mut build = ChaCha8Rng::seed_from_u64(8);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        for (c, side) in &cases {
            let mut known = Vec::new();
            let starts: Vec<Vertex> = if c.window().is_some() {
                (0..6).collect()
            } else {
                c.window_vertices()
            };
            for &v in &starts {
                for p in c.paths_from(v, c.truncation()) {
                    known.push(Comodule::string(c.clone(), *side, gf(), &p).map_err(e2s)?);
                }
            }
            let mut registry = IsoRegistry::new();
            let mut ids = Vec::new();
            for k in &known {
                ids.push(registry.classify(k).map_err(e2s)?.0);
            }
            let mut distinct = ids.clone();
            distinct.sort_unstable();
            distinct.dedup();
            ensure(distinct.len() == known.len(), || {
                "known pieces collide".into()
            })?;
            for _ in 0..34 {
                let mut expected = BTreeMap::new();
                let mut parts = Vec::new();
                for _ in 0..build.gen_range(2..=4) {
                    let j = build.gen_range(0..known.len());
                    let mult = build.gen_range(1..=2);
                    for _ in 0..mult {
                        parts.push(&known[j]);
                    }
                    *expected.entry(ids[j]).or_insert(0) += mult;
                }
                parts.shuffle(&mut build);
                let sum = Comodule::direct_sum(&parts).map_err(e2s)?;
                let (scrambled, _) = sum.scramble(&mut rng);
                let d = decompose(&scrambled, &mut registry, DEFAULT_ATTEMPTS, &mut rng)
                    .map_err(e2s)?;
                let got = d.multiset();
                ensure(got == expected, || {
                    format!("expected {expected:?}, got {got:?}")
                })?;
                out.push(got);
            }
        }
        Ok(out)
    };
    let a = run(11)?;
    let b = run(12)?;
    ensure(a == b, || "seeds disagree".into())?;
    Ok(format!(
        "{} scrambled sums decomposed to the constructed multisets under two seeds",
        a.len()
    ))
}

fn cosyzygy_well_defined() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let cases = [
        (Coalgebra::cycle(3, 2).unwrap(), Side::Right),
        (
            Coalgebra::a_infinity_away_from_zero(20, 2).unwrap(),
            Side::Right,
        ),
        (
            Coalgebra::a_infinity_toward_zero(20, 1).unwrap(),
            Side::Left,
        ),
        (Coalgebra::cycle(2, 3).unwrap(), Side::Left),
        (Coalgebra::cycle(5, 1).unwrap(), Side::Right),
    ];
    let mut count = 0;
    for (c, side) in cases {
        let vertices: Vec<Vertex> = c
            .interior_vertices(c.truncation() + 1)
            .into_iter()
            .take(8)
            .collect();
        let sampler = Sampler::new(c.clone(), side, gf(), vertices).with_dim_cap(12);
        for _ in 0..10 {
            let m = sampler.comodule(&mut rng).map_err(e2s)?;
            let a = injective_envelope(&m)
                .map_err(e2s)?
                .cokernel()
                .map_err(e2s)?;
            let b = injective_envelope_randomized(&m, &mut rng)
                .map_err(e2s)?
                .cokernel()
                .map_err(e2s)?;
            let w = is_isomorphic(&a, &b, DEFAULT_ATTEMPTS, &mut rng)
                .map_err(e2s)?
                .ok_or_else(|| format!("cosyzygies of {} differ", m.dims_string()))?;
            ensure(w.is_morphism(&a, &b) && w.is_iso(&a, &b), || {
                "witness is not an isomorphism".into()
            })?;
            count += 1;
        }
    }
    Ok(format!(
        "{count} pairs of cosyzygies isomorphic with checked witnesses"
    ))
}

fn integer_rank_of_classes() -> Outcome {
    let c = right_ainf();
    let mut engine = Engine::new(c.clone(), Side::Right, gf(), 10);
    let rows_of =
        |engine: &mut Engine, x: &Comodule, y: &Comodule| -> Result<IntegerMatrix, String> {
            let sum = Comodule::direct_sum(&[x, y]).map_err(e2s)?;
            let vs = [
                engine.class_of(x).map_err(e2s)?,
                engine.class_of(y).map_err(e2s)?,
                engine.class_of(&sum).map_err(e2s)?,
            ];
            let cols: Vec<usize> = engine.registry().entries().iter().map(|e| e.id).collect();
            let rows: Vec<Vec<i64>> = vs
                .iter()
                .map(|v| cols.iter().map(|&k| v.get(k)).collect())
                .collect();
            Ok(IntegerMatrix::from_rows(&rows))
        };
    let s1 = simple(&c, Side::Right, 1);
    let s2 = simple(&c, Side::Right, 2);
    let distinct = rank_int(&rows_of(&mut engine, &s1, &s2)?);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (s1_copy, _) = s1.scramble(&mut rng);
    let same = rank_int(&rows_of(&mut engine, &s1, &s1_copy)?);
    ensure(distinct == 2 && same == 1, || {
        format!("ranks {distinct} and {same}")
    })?;
    Ok("rank 2 for non-isomorphic simples, 1 for isomorphic ones".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "1 right-side simples have phi = n",
            5,
            phi_of_simples_on_the_right,
        ),
        (
            "2 left-side cosemisimple comodules have phi = 0",
            10,
            cosemisimple_on_the_left,
        ),
        ("3 property suite", 60, property_suite),
        (
            "4 cycles: qcF and phi = 0 up to dimension 6",
            60,
            cycles_are_qcf_with_zero_values,
        ),
        (
            "5 right A-infinity: semiperfect, not qcF, consistent",
            5,
            right_linear_quiver_witness,
        ),
        ("6 Nakayama permutation on cycle(3)", 5, nakayama_on_cycle3),
        ("7 simple injectives", 5, simple_injective_scans),
        ("8 Krull-Schmidt round trip", 60, krull_schmidt_round_trip),
        (
            "9 cosyzygy independent of the envelope",
            30,
            cosyzygy_well_defined,
        ),
        (
            "10 integer rank of class vectors",
            1,
            integer_rank_of_classes,
        ),
    ];
    let mut failed = 0;
    for (name, budget, f) in criteria {
        let start = Instant::now();
        let result = f();
        let took = start.elapsed();
        let over = took > Duration::from_secs(budget);
        match (&result, over) {
            (Ok(detail), false) => println!(
                "PASS  criterion {name} ({:.2}s): {detail}",
                took.as_secs_f64()
            ),
            (Ok(detail), true) => {
                failed += 1;
                println!(
                    "FAIL  criterion {name} ({:.2}s, budget {budget}s exceeded): {detail}",
                    took.as_secs_f64()
                );
            }
            (Err(msg), _) => {
                failed += 1;
                println!("FAIL  criterion {name} ({:.2}s): {msg}", took.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
