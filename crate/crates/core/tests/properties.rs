use cophi_core::comod::{cosyzygy, hom_basis, injective_envelope, injective_envelope_randomized};
use cophi_core::itfunc::{Engine, PhiRoute};
use cophi_core::kschmidt::{decompose, is_isomorphic, IsoRegistry, DEFAULT_ATTEMPTS};
use cophi_core::sample::Sampler;
use cophi_core::{Coalgebra, Comodule, Field, Side};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gf() -> Field {
    Field::new(101).unwrap()
}

fn coalgebra(kind: u8, l: usize) -> (Coalgebra, Side) {
    match kind % 4 {
        0 => (
            Coalgebra::a_infinity_away_from_zero(20, l).unwrap(),
            Side::Right,
        ),
        1 => (
            Coalgebra::a_infinity_toward_zero(20, l).unwrap(),
            Side::Left,
        ),
        2 => (Coalgebra::cycle(3, l).unwrap(), Side::Right),
        _ => (Coalgebra::cycle(2, l).unwrap(), Side::Left),
    }
}

fn sample(kind: u8, l: usize, seed: u64) -> Comodule {
    let (c, side) = coalgebra(kind, l);
    let vertices = c.interior_vertices(l + 1).into_iter().take(6).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Sampler::new(c, side, gf(), vertices)
        .with_dim_cap(10)
        .comodule(&mut rng)
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn envelopes_are_essential_and_injective(kind in 0u8..4, l in 1usize..3, seed in any::<u64>()) {
        let m = sample(kind, l, seed);
        let env = injective_envelope(&m).unwrap();
        prop_assert!(env.embedding.is_morphism(&m, &env.module));
        prop_assert!(env.embedding.is_injective(&m));
        prop_assert_eq!(env.module.socle_dims(), m.socle_dims());
        prop_assert!(env.module.is_injective().unwrap());
        let om = env.cokernel().unwrap();
        prop_assert_eq!(om.total_dim() + m.total_dim(), env.module.total_dim());
    }

    #[test]
    fn decompositions_reassemble(kind in 0u8..4, l in 1usize..3, seed in any::<u64>()) {
        let m = sample(kind, l, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let mut reg = IsoRegistry::new();
        let d = decompose(&m, &mut reg, DEFAULT_ATTEMPTS, &mut rng).unwrap();
        let total: usize = d.summands.iter().map(|s| s.module.total_dim()).sum();
        prop_assert_eq!(total, m.total_dim());
        for (k, s) in d.summands.iter().enumerate() {
            prop_assert!(s.embedding.is_morphism(&s.module, &m));
            let p = d.projection(k);
            prop_assert!(p.is_morphism(&m, &s.module));
            prop_assert!(s.embedding.then(&p).is_iso(&s.module, &s.module));
        }
        let parts: Vec<&Comodule> = d.summands.iter().map(|s| &s.module).collect();
        let sum = Comodule::direct_sum(&parts).unwrap();
        prop_assert!(is_isomorphic(&m, &sum, DEFAULT_ATTEMPTS, &mut rng).unwrap().is_some());
    }

    #[test]
    fn hom_dimension_is_basis_invariant(kind in 0u8..4, seed in any::<u64>()) {
        let m = sample(kind, 1, seed);
        let n = sample(kind, 1, seed.wrapping_add(1));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (m2, _) = m.scramble(&mut rng);
        let (n2, _) = n.scramble(&mut rng);
        prop_assert_eq!(hom_basis(&m, &n).unwrap().dim(), hom_basis(&m2, &n2).unwrap().dim());
    }

    #[test]
    fn cosyzygy_classes_do_not_depend_on_the_envelope(kind in 0u8..4, l in 1usize..3, seed in any::<u64>()) {
        let m = sample(kind, l, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = cosyzygy(&m, 1).unwrap();
        let b = injective_envelope_randomized(&m, &mut rng).unwrap().cokernel().unwrap();
        let (c, side) = coalgebra(kind, l);
        let mut e = Engine::new(c, side, gf(), seed);
        prop_assert_eq!(e.class_of(&a).unwrap(), e.class_of(&b).unwrap());
    }

    #[test]
    fn routes_agree_when_both_certify(kind in 0u8..4, l in 1usize..3, seed in any::<u64>()) {
        let m = sample(kind, l, seed);
        let (c, side) = coalgebra(kind, l);
        let mut e = Engine::new(c, side, gf(), seed);
        let auto = e.phi(&m, 32).unwrap();
        let closure = e.phi_with(&m, 32, PhiRoute::ClosureOnly).unwrap();
        if auto.status.is_certified() && closure.status.is_certified() {
            prop_assert_eq!(auto.value, closure.value);
        }
    }
}
