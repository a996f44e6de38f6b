use std::collections::BTreeMap;

use super::*;
use crate::coalg::{Coalgebra, Path, Quiver, Side, Vertex};
use crate::comod::Comodule;
use crate::exactlin::Field;

fn gf() -> Field {
    Field::new(101).unwrap()
}

fn right() -> Coalgebra {
    Coalgebra::a_infinity_away_from_zero(20, 1).unwrap()
}

fn left() -> Coalgebra {
    Coalgebra::a_infinity_toward_zero(20, 1).unwrap()
}

fn simple(c: &Coalgebra, side: Side, v: Vertex) -> Comodule {
    Comodule::simple(c.clone(), side, gf(), v).unwrap()
}

#[test]
fn classes_drop_injectives() {
    let c = left();
    let mut e = Engine::new(c.clone(), Side::Left, gf(), 1);
    let inj = Comodule::injective_indecomposable(c.clone(), Side::Left, gf(), 1).unwrap();
    assert!(e.class_of(&inj).unwrap().is_zero());
    let s1 = simple(&c, Side::Left, 1);
    let twice = e.class_of(&s1.power(2)).unwrap();
    let (id1, _) = e.registry().lookup(&s1).unwrap().unwrap();
    assert_eq!(twice.coords(), &BTreeMap::from([(id1, 2)]));
    let s0 = simple(&c, Side::Left, 0);
    let mixed = e
        .class_of(&Comodule::direct_sum(&[&inj, &s0]).unwrap())
        .unwrap();
    let (id0, _) = e.registry().lookup(&s0).unwrap().unwrap();
    assert_eq!(mixed, ClassVector::unit(id0));
}

#[test]
fn omega_bar_shifts_simples_on_the_right() {
    let c = right();
    let mut e = Engine::new(c.clone(), Side::Right, gf(), 1);
    for n in 2..6 {
        let m = e.class_of(&simple(&c, Side::Right, n)).unwrap();
        let prev = e.class_of(&simple(&c, Side::Right, n - 1)).unwrap();
        assert_eq!(e.omega_bar(&m).unwrap(), prev);
    }
    let m1 = e.class_of(&simple(&c, Side::Right, 1)).unwrap();
    assert!(e.omega_bar(&m1).unwrap().is_zero());
    assert!(e.omega_bar(&ClassVector::zero()).unwrap().is_zero());
}

#[test]
fn simples_on_the_right_have_phi_equal_to_their_vertex() {
    let c = right();
    let mut e = Engine::new(c.clone(), Side::Right, gf(), 1);
    for n in 0..=15 {
        let r = e.phi(&simple(&c, Side::Right, n), DEFAULT_HORIZON).unwrap();
        assert_eq!((r.value, r.status), (n, PhiStatus::FiniteId));
        let closed = e
            .phi_with(
                &simple(&c, Side::Right, n),
                DEFAULT_HORIZON,
                PhiRoute::ClosureOnly,
            )
            .unwrap();
        assert_eq!(closed.value, n);
        if n > 0 {
            assert_eq!(closed.status, PhiStatus::Exact);
            assert_eq!(closed.closure_size, Some(n));
        }
    }
}

#[test]
fn cosemisimple_on_the_left_is_stable() {
    let c = left();
    let mut e = Engine::new(c.clone(), Side::Left, gf(), 1);
    let dims = BTreeMap::from([(0, 1), (3, 2), (7, 1)]);
    let m = Comodule::semisimple(c, Side::Left, gf(), &dims).unwrap();
    let r = e.phi(&m, 50).unwrap();
    assert_eq!(r.value, 0);
    assert_eq!(r.status, PhiStatus::StableUpToHorizon);
    assert_eq!(r.closure_size, None);
    assert_eq!(r.rank_sequence, vec![3; 51]);
}

#[test]
fn zero_and_injectives() {
    let c = left();
    let mut e = Engine::new(c.clone(), Side::Left, gf(), 1);
    let zero = Comodule::zero(c.clone(), Side::Left, gf());
    let r = e.phi(&zero, 10).unwrap();
    assert_eq!((r.value, r.status), (0, PhiStatus::Exact));
    let inj = Comodule::injective_indecomposable(c, Side::Left, gf(), 2).unwrap();
    let r = e.phi(&inj, 10).unwrap();
    assert_eq!((r.value, r.injective_dimension), (0, Some(0)));
    assert!(r.generators.is_empty());
}

/// Vertices 0, 1, 2 with arrows 1 -> 0, 0 -> 1, 2 -> 0 and `L = 1`. For
/// `X` the string on `2 -> 0`: `Ω̄X = S_1`, `Ω̄S_1 = S_0`, `Ω̄S_0 = S_1`
/// (the summand `S_2` of `E(S_0)/S_0` is injective). So `φ(X ⊕ S_0) = 1`
/// while the injective dimension is infinite.
#[test]
fn closure_certifies_value_one() {
    let q = Quiver::new(
        vec!["0".into(), "1".into(), "2".into()],
        vec![
            ("a".into(), "1".into(), "0".into()),
            ("b".into(), "0".into(), "1".into()),
            ("c".into(), "2".into(), "0".into()),
        ],
    )
    .unwrap();
    let c = Coalgebra::finite(q, 1).unwrap();
    let x = Comodule::string(
        c.clone(),
        Side::Right,
        gf(),
        &Path {
            start: 2,
            arrows: vec![2],
            end: 0,
        },
    )
    .unwrap();
    let m = Comodule::direct_sum(&[&x, &simple(&c, Side::Right, 0)]).unwrap();
    let mut e = Engine::new(c, Side::Right, gf(), 3);
    let r = e.phi(&m, 16).unwrap();
    assert_eq!(r.value, 1);
    assert_eq!(r.status, PhiStatus::Exact);
    assert_eq!(r.injective_dimension, None);
    assert_eq!(r.closure_size, Some(3));
    assert_eq!(r.rank_sequence, vec![2, 1, 1, 1]);
}

#[test]
fn onset_ignores_early_plateaus() {
    // a plateau followed by a later drop must not be mistaken for stability
    assert_eq!(stabilization_onset(&[2, 1, 1, 0, 0]), 3);
    assert_eq!(stabilization_onset(&[4, 4, 4]), 0);
    assert_eq!(stabilization_onset(&[]), 0);
}

#[test]
fn dimension_estimate_on_the_right() {
    let c = right();
    let family: Vec<Comodule> = (0..=10).map(|n| simple(&c, Side::Right, n)).collect();
    let mut e = Engine::new(c, Side::Right, gf(), 1);
    assert_eq!(e.phi_dim_estimate(&family, 64).unwrap(), (10, Some(10)));
}

#[test]
fn cycle_simples_have_phi_zero() {
    let c = Coalgebra::cycle(3, 1).unwrap();
    let mut e = Engine::new(c.clone(), Side::Right, gf(), 1);
    for i in 0..3 {
        let r = e.phi(&simple(&c, Side::Right, i), 64).unwrap();
        assert_eq!((r.value, r.status), (0, PhiStatus::Exact));
        assert_eq!(r.closure_size, Some(3));
    }
}

#[test]
fn engine_rejects_other_sides() {
    let c = left();
    let mut e = Engine::new(c.clone(), Side::Right, gf(), 1);
    assert!(e.phi(&simple(&c, Side::Left, 0), 4).is_err());
}
