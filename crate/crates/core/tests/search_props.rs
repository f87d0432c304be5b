mod common;

use common::num;
use equicut::dissect::{cmp_dissections, same_piece_multiset, standard_dissection, verify_dissection, Dissection};
use equicut::search::*;
use equicut::trispace::Triangle;

fn tri(a: &str, b: &str) -> Triangle {
    Triangle::exact(num(a), num(b)).unwrap()
}

fn instances() -> Vec<(&'static str, Triangle, usize)> {
    let scalene = tri("7/8", "3/4");
    let right = tri("1/2*sqrt(2)", "1/2*sqrt(2)");
    let half_equilateral = tri("1/2", "1/2*sqrt(3)");
    let equilateral = tri("1", "1");
    vec![
        ("scalene", scalene.clone(), 2),
        ("scalene", scalene.clone(), 3),
        ("scalene", scalene, 4),
        ("right", right.clone(), 2),
        ("right", right, 4),
        ("30-60-90", half_equilateral, 3),
        ("equilateral", equilateral, 4),
    ]
}

fn sorted(mut v: Vec<Dissection>) -> Vec<Dissection> {
    v.sort_by(cmp_dissections);
    v
}

fn same_sets(a: &[Dissection], b: &[Dissection]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| same_piece_multiset(&x.pieces, &y.pieces))
}

#[test]
fn pruning_never_loses_dissections() {
    let off = Pruning {
        angle_fit: false,
        remainder: false,
        dead_corner: false,
    };
    let variants = [
        Pruning {
            angle_fit: false,
            ..Pruning::default()
        },
        Pruning {
            remainder: false,
            ..Pruning::default()
        },
        Pruning {
            dead_corner: false,
            ..Pruning::default()
        },
        off,
    ];
    for (name, t, m) in instances() {
        let pruned = SearchSpec::new(t.clone(), similar_tile(&t, m).unwrap(), m);
        let a = search_dissections(&pruned).unwrap();
        assert!(a.complete, "{name} m={m}");
        let a = sorted(a.dissections);
        for v in variants {
            let spec = SearchSpec {
                pruning: v,
                ..pruned.clone()
            };
            let b = search_dissections(&spec).unwrap();
            assert!(b.complete, "{name} m={m} {v:?}");
            assert!(
                same_sets(&a, &sorted(b.dissections)),
                "{name} m={m} {v:?}: pruning changed the result set"
            );
        }
        let plain = search_dissections(&SearchSpec {
            pruning: off,
            ..pruned.clone()
        })
        .unwrap();
        let full = search_dissections(&pruned).unwrap();
        assert!(full.nodes <= plain.nodes, "{name} m={m}: pruning visited more nodes");
    }
}

#[test]
fn standard_dissection_is_always_found() {
    let triangles = [
        tri("7/8", "3/4"),
        tri("1/2*sqrt(2)", "1/2*sqrt(2)"),
        tri("1/2", "1/2*sqrt(3)"),
        tri("1", "1"),
        tri("2/5*sqrt(5)", "1/5*sqrt(5)"),
    ];
    for t in &triangles {
        for n in 1..=3 {
            let template = SearchSpec::new(t.clone(), similar_tile(t, n * n).unwrap(), n * n);
            let outcomes = search_for_count(t, n * n, &[], &template).unwrap();
            let std = standard_dissection(t, n).unwrap();
            let r = outcomes[0].result.as_ref().unwrap();
            assert!(r.complete);
            assert!(
                r.dissections
                    .iter()
                    .any(|d| same_piece_multiset(&d.pieces, &std.pieces)),
                "n={n}: standard dissection missing"
            );
        }
    }
}

#[test]
fn results_independent_of_threads() {
    for (name, t, m) in instances() {
        let mut spec = SearchSpec::new(t.clone(), similar_tile(&t, m).unwrap(), m);
        spec.parallel_depth = 0;
        let serial = search_dissections(&spec).unwrap();
        spec.parallel_depth = 3;
        let pool = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let parallel = pool.install(|| search_dissections(&spec).unwrap());
        assert_eq!(serial.nodes, parallel.nodes, "{name} m={m}");
        assert_eq!(serial.dissections.len(), parallel.dissections.len(), "{name} m={m}");
        for (x, y) in serial.dissections.iter().zip(&parallel.dissections) {
            assert_eq!(
                cmp_dissections(x, y),
                std::cmp::Ordering::Equal,
                "{name} m={m}: order differs"
            );
        }
    }
}

#[test]
fn every_result_verifies_and_is_distinct() {
    for (name, t, m) in instances() {
        let spec = SearchSpec::new(t.clone(), similar_tile(&t, m).unwrap(), m);
        let r = search_dissections(&spec).unwrap();
        for d in &r.dissections {
            assert!(verify_dissection(d).valid, "{name} m={m}");
            assert_eq!(d.pieces.len(), m);
        }
        for (k, x) in r.dissections.iter().enumerate() {
            for y in &r.dissections[k + 1..] {
                assert!(!same_piece_multiset(&x.pieces, &y.pieces), "{name} m={m}: duplicate");
            }
        }
    }
}

#[test]
fn quotient_keeps_one_per_orbit() {
    let t = tri("1/2*sqrt(2)", "1/2*sqrt(2)");
    let mut spec = SearchSpec::new(t.clone(), similar_tile(&t, 4).unwrap(), 4);
    let all = search_dissections(&spec).unwrap();
    spec.symmetry_quotient = true;
    let reduced = search_dissections(&spec).unwrap();
    assert!(!reduced.dissections.is_empty());
    assert!(reduced.dissections.len() <= all.dissections.len());
    let syms = region_symmetries(&all.dissections[0].region);
    // every full result is the image of a kept one under a region symmetry
    for d in &all.dissections {
        let hit = reduced.dissections.iter().any(|k| {
            syms.iter().any(|s| {
                let img: Vec<_> = k.pieces.iter().map(|p| p.transformed(s)).collect();
                same_piece_multiset(&img, &d.pieces)
            })
        });
        assert!(hit);
    }
}

#[test]
fn limits_mark_incomplete() {
    let t = tri("1", "1");
    let mut spec = SearchSpec::new(t.clone(), similar_tile(&t, 9).unwrap(), 9);
    spec.limits.max_nodes = Some(3);
    let r = search_dissections(&spec).unwrap();
    assert!(!r.complete);
    assert!(r.nodes <= 3 + 1);
}
