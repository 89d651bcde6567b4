use quasivar::comma::{
    check_functoriality, epireflect, find_split_structure, left_adjoint, left_adjoint_check, right_adjoint,
    split_coequalizer_check, unit_gamma, unit_gamma_check, verify_reflection_universal, CommaObject, IdentityFunctor,
    PointedSets, PowerFunctor, Variety,
};
use quasivar::{FinAlgebra, FiniteMap};

fn map(target: usize, image: &[usize]) -> FiniteMap {
    FiniteMap::new(target, image.to_vec()).unwrap()
}

fn pointed() -> IdentityFunctor<PointedSets> {
    IdentityFunctor(PointedSets)
}

fn lattices() -> IdentityFunctor<Variety> {
    IdentityFunctor(Variety::bounded_distributive_lattices())
}

/// `g: {0, a, b, 1} → 2` sending `0, a` to `0` and `b, 1` to `1`.
fn boolean_algebra_to_two() -> CommaObject<FinAlgebra, FinAlgebra> {
    CommaObject {
        a: FinAlgebra::powerset_lattice(2),
        b: FinAlgebra::two_element_frame(),
        g: map(2, &[0, 0, 1, 1]),
    }
}

#[test]
fn right_adjoint_is_the_second_projection() {
    let (r, product) = right_adjoint(&pointed(), &2, &1).unwrap();
    assert_eq!(r.a, 2);
    assert_eq!(r.b, 1);
    assert_eq!(r.g, product.second);
    assert_eq!(r.g.image(), [0, 0]);

    let (r, _) = right_adjoint(&pointed(), &1, &3).unwrap();
    assert_eq!(r.a, 3);
    assert!(r.g.is_injective() && r.g.is_surjective());

    let (r, _) = right_adjoint(&pointed(), &3, &1).unwrap();
    assert_eq!(r.g.image(), [0, 0, 0]);
}

#[test]
fn gamma_pairs_identity_with_the_structure_map() {
    let oracle = pointed();
    for g in [
        CommaObject {
            a: 1,
            b: 2,
            g: map(2, &[0]),
        },
        CommaObject {
            a: 2,
            b: 2,
            g: map(2, &[0, 1]),
        },
        CommaObject {
            a: 3,
            b: 2,
            g: map(2, &[0, 1, 0]),
        },
    ] {
        assert!(unit_gamma_check(&oracle, &g).unwrap().is_ok());
        let gamma = unit_gamma(&oracle, &g).unwrap();
        assert!(gamma.h.is_identity());
        assert!(gamma.f.is_injective());
    }
}

#[test]
fn left_adjoint_is_the_wedge_coprojection() {
    let oracle = pointed();
    let (l, coproduct) = left_adjoint(&oracle, &2, &3).unwrap();
    assert_eq!(l.b, 4);
    assert_eq!(l.g, coproduct.first);
    assert!(l.g.is_injective());

    let (l, _) = left_adjoint(&oracle, &3, &1).unwrap();
    assert_eq!(l.b, 3);
    assert!(l.g.is_identity());

    let (l, _) = left_adjoint(&oracle, &1, &2).unwrap();
    assert_eq!(l.g.image(), [0]);

    let g = CommaObject {
        a: 3,
        b: 2,
        g: map(2, &[0, 1, 1]),
    };
    assert!(left_adjoint_check(&oracle, &g).unwrap().is_ok());
}

#[test]
fn boolean_algebra_reflects_onto_two() {
    let oracle = lattices();
    let g = boolean_algebra_to_two();
    let r = epireflect(&oracle, &g).unwrap();
    assert_eq!(r.reflected.a.size(), 2);
    assert!(r.reflected.g.is_injective() && r.reflected.g.is_surjective());
    assert_eq!(r.unit.f.image(), [0, 0, 1, 1]);
    assert!(r.unit.h.is_identity());

    let target = CommaObject {
        a: FinAlgebra::two_element_frame(),
        b: FinAlgebra::two_element_frame(),
        g: FiniteMap::identity(2),
    };
    let report = verify_reflection_universal(&oracle, &g, &target).unwrap();
    assert!(report.is_ok());
    assert!(report.checked > 0);
}

#[test]
fn monic_objects_reflect_to_themselves() {
    let oracle = lattices();
    let g = CommaObject {
        a: FinAlgebra::chain(3),
        b: FinAlgebra::powerset_lattice(2),
        g: map(4, &[0, 1, 3]),
    };
    let r = epireflect(&oracle, &g).unwrap();
    assert_eq!(r.reflected, g);
    assert!(r.unit.f.is_identity());
    assert!(verify_reflection_universal(&oracle, &g, &g).unwrap().is_ok());
}

#[test]
fn constant_structure_map_reflects_to_a_point() {
    let r = epireflect(
        &pointed(),
        &CommaObject {
            a: 4,
            b: 3,
            g: map(3, &[0, 0, 0, 0]),
        },
    )
    .unwrap();
    assert_eq!(r.reflected.a, 1);
    assert_eq!(r.unit.f.image(), [0, 0, 0, 0]);
}

#[test]
fn reflection_against_unreachable_target_is_vacuous() {
    let oracle = pointed();
    let g = CommaObject {
        a: 2,
        b: 2,
        g: map(2, &[0, 1]),
    };
    let target = CommaObject {
        a: 1,
        b: 1,
        g: map(1, &[0]),
    };
    let report = verify_reflection_universal(&oracle, &g, &target).unwrap();
    assert!(report.is_ok());
}

#[test]
fn identity_pair_splits_trivially() {
    let id = FiniteMap::identity(2);
    let w = find_split_structure(&id, &id).unwrap().unwrap();
    assert_eq!(w.z, 2);
    assert!(w.h.is_identity() && w.k.is_identity() && w.s.is_identity());
    assert!(split_coequalizer_check(&w, &id, &id, 2).unwrap().is_ok());
}

#[test]
fn identity_and_swap_do_not_split() {
    let id = FiniteMap::identity(2);
    let swap = map(2, &[1, 0]);
    assert!(find_split_structure(&id, &swap).unwrap().is_none());
}

#[test]
fn pair_into_a_point_splits() {
    let f = map(1, &[0, 0]);
    let w = find_split_structure(&f, &f).unwrap().unwrap();
    assert_eq!(w.z, 1);
    assert!(w.h.is_identity());
    assert_eq!(w.k, w.s.then(&f));
    for v in 2..=3 {
        assert!(split_coequalizer_check(&w, &f, &f, v).unwrap().is_ok());
    }
}

#[test]
fn non_parallel_maps_are_rejected() {
    assert!(find_split_structure(&map(2, &[0]), &map(3, &[0])).is_err());
}

#[test]
fn builtin_oracles_are_functorial() {
    assert!(check_functoriality(&pointed(), &[1, 2, 3]).unwrap().is_ok());
    let objects = [
        FinAlgebra::two_element_frame(),
        FinAlgebra::chain(3),
        FinAlgebra::powerset_lattice(2),
    ];
    assert!(check_functoriality(&lattices(), &objects).unwrap().is_ok());
    let power = PowerFunctor::new(FinAlgebra::two_element_frame());
    assert!(check_functoriality(&power, &[0, 1, 2]).unwrap().is_ok());
}
