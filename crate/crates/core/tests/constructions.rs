mod common;

use maniplex::constructions::{
    corpus, cube_stack, cube_stack_poset, polygon, prism_over, shift_stg_iterate, toroid_44, trivial_extension,
    two_power, ShiftStep, ToroidParams, DEFAULT_FLAG_BUDGET,
};
use maniplex::flaggraph::isomorphic;
use maniplex::poset::{is_polytopal, poset_of_flag_graph};
use maniplex::symmetry::{automorphism_group, flag_orbits, symmetry_type_graph};
use maniplex::Error;

#[test]
fn polygons() {
    for p in 2..=12 {
        let g = polygon(p).unwrap();
        assert_eq!(g.flag_count(), 2 * p);
        assert_eq!(automorphism_group(&g).order_u64(), Some(2 * p as u64));
    }
    assert_eq!(polygon(1).unwrap_err(), Error::TooSmall { value: 1, min: 2 });
}

#[test]
fn prisms() {
    for p in 3..=8 {
        let g = prism_over(&polygon(p).unwrap()).unwrap();
        assert_eq!(g.flag_count(), 12 * p);
        assert_eq!(poset_of_flag_graph(&g).face_counts(), vec![1, 2 * p, 3 * p, p + 2, 1]);
        let expected_orbits = if p == 4 { 1 } else { 3 };
        assert_eq!(flag_orbits(&g).count(), expected_orbits, "p = {p}");
    }
    let prism4 = prism_over(&polygon(4).unwrap()).unwrap();
    assert!(isomorphic(&prism4, &cube_stack(1).unwrap()).unwrap());
    assert!(matches!(prism_over(&cube_stack(1).unwrap()), Err(Error::RankMismatch { left: 3, right: 2 })));
}

#[test]
fn toroids() {
    for b in 0..=10i64 {
        for c in 0..=10i64 {
            let n = b * b + c * c;
            if !(5..=100).contains(&n) {
                continue;
            }
            let g = toroid_44(ToroidParams { b, c }).unwrap();
            assert_eq!(g.flag_count() as i64, 8 * n);
            let chiral = b * c * (b - c) != 0;
            assert_eq!(flag_orbits(&g).count(), if chiral { 2 } else { 1 }, "({b},{c})");
            assert_eq!(poset_of_flag_graph(&g).face_counts(), vec![1, n as usize, 2 * n as usize, n as usize, 1]);
        }
    }
    assert_eq!(toroid_44(ToroidParams { b: 0, c: 0 }).unwrap_err(), Error::DegenerateLattice { b: 0, c: 0 });
    // enantiomorphs are isomorphic as unrooted maps
    let (l, r) = (toroid_44(ToroidParams { b: 1, c: 2 }).unwrap(), toroid_44(ToroidParams { b: 2, c: 1 }).unwrap());
    assert!(isomorphic(&l, &r).unwrap());
}

#[test]
fn cube_stacks() {
    for m in 1..=8usize {
        let g = cube_stack(m).unwrap();
        assert_eq!(g.flag_count(), 32 * m + 16);
        let faces = cube_stack_poset(m).unwrap().face_counts();
        assert_eq!(faces, vec![1, 4 * m + 4, 8 * m + 4, 4 * m + 2, 1]);
        let orbits = flag_orbits(&g).count();
        assert_eq!(orbits, if m == 1 { 1 } else { 2 * m + 1 }, "m = {m}");
        assert!(is_polytopal(&g).polytopal);
    }
    assert_eq!(cube_stack(0).unwrap_err(), Error::TooSmall { value: 0, min: 1 });
}

#[test]
fn trivial_extensions() {
    for e in corpus() {
        if e.graph.flag_count() > 500 {
            continue;
        }
        let t = trivial_extension(&e.graph);
        assert_eq!(t.rank(), e.graph.rank() + 1);
        assert_eq!(t.flag_count(), 2 * e.graph.flag_count());
        assert_eq!(flag_orbits(&t).count(), flag_orbits(&e.graph).count(), "{}", e.name);
        assert_eq!(is_polytopal(&t).polytopal, is_polytopal(&e.graph).polytopal, "{}", e.name);
    }
}

#[test]
fn two_powers() {
    let triangle = polygon(3).unwrap();
    let p = two_power(&triangle, DEFAULT_FLAG_BUDGET).unwrap();
    assert_eq!(p.flag_count(), 48);
    assert!(isomorphic(&p, &cube_stack(1).unwrap()).unwrap());
    let prism = prism_over(&polygon(3).unwrap()).unwrap();
    let q = two_power(&prism, DEFAULT_FLAG_BUDGET).unwrap();
    assert_eq!(q.flag_count(), 2304);
    assert_eq!(flag_orbits(&q).count(), 3);
    assert!(matches!(two_power(&prism, 1000), Err(Error::BudgetExceeded { needed: 2304, budget: 1000 })));
    for e in corpus().into_iter().filter(|e| e.graph.flag_count() <= 48) {
        let q = two_power(&e.graph, DEFAULT_FLAG_BUDGET).unwrap();
        let vertices = poset_of_flag_graph(&e.graph).face_counts()[1];
        assert_eq!(q.flag_count(), e.graph.flag_count() << vertices, "{}", e.name);
        assert!(symmetry_type_graph(&q).isomorphic(&symmetry_type_graph(&e.graph).shifted()), "{}", e.name);
    }
}

#[test]
fn shift_iterations() {
    let prism = prism_over(&polygon(3).unwrap()).unwrap();
    let r = shift_stg_iterate(&prism, &[ShiftStep::TrivialExtension, ShiftStep::TrivialExtension], DEFAULT_FLAG_BUDGET)
        .unwrap();
    assert_eq!(r.stg_shifted, vec![true, true]);
    assert_eq!(r.graph.rank(), 5);
    assert_eq!(r.graph.flag_count(), 36 * 4);
    let r = shift_stg_iterate(&polygon(4).unwrap(), &[ShiftStep::TwoPower, ShiftStep::TrivialExtension], DEFAULT_FLAG_BUDGET)
        .unwrap();
    assert_eq!(r.stg_shifted, vec![true, true]);
    assert!(matches!(
        shift_stg_iterate(&prism, &[ShiftStep::TwoPower, ShiftStep::TwoPower], DEFAULT_FLAG_BUDGET),
        Err(Error::BudgetExceeded { .. })
    ));
}

#[test]
fn duals() {
    let cube = cube_stack(1).unwrap();
    let octahedron = cube.dual();
    assert_eq!(poset_of_flag_graph(&octahedron).face_counts(), vec![1, 6, 12, 8, 1]);
    assert!(isomorphic(&octahedron.dual(), &cube).unwrap());
    let t = toroid_44(ToroidParams { b: 1, c: 2 }).unwrap();
    assert!(isomorphic(&t.dual(), &t).unwrap());
}
