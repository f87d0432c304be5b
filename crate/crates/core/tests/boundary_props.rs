mod common;

use std::f64::consts::PI;

use common::{boundary_edge_count, grow_cells, loop_length, num};
use equicut::boundary::*;
use equicut::trispace::Triangle;
use proptest::prelude::*;

fn region() -> impl Strategy<Value = LatticeRegion> {
    (3usize..=8)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::sample::select(all_cells(n)),
                prop::collection::vec(any::<usize>(), 0..30),
            )
        })
        .prop_map(|(n, start, picks)| LatticeRegion::new(n, grow_cells(n, start, &picks)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn loops_are_consistent(r in region()) {
        let loops = extract_boundary(&r);
        let outer: Vec<_> = loops.iter().filter(|l| l.is_outer()).collect();
        prop_assert_eq!(outer.len(), 1);
        prop_assert!(loops[0].is_outer());
        let area: i64 = loops.iter().map(|l| l.double_area).sum();
        prop_assert_eq!(area, r.cells().len() as i64);
        let length: usize = loops.iter().map(loop_length).sum();
        prop_assert_eq!(length, boundary_edge_count(r.n(), r.cells()));
        for l in &loops {
            for a in &l.angles {
                prop_assert!(matches!(a.step, -2 | -1 | 1 | 2));
                prop_assert_eq!(a.class == AngleClass::Convex, a.step > 0);
                let expected = PI - a.step as f64 * PI / 3.0;
                prop_assert!((a.angle.to_radians_f64() - expected).abs() < 1e-9);
            }
            prop_assert_eq!(clock_turning(l).unwrap(), if l.is_outer() { 6 } else { -6 });
        }
        prop_assert!(find_lemma_pattern(&loops[0]).is_some());
    }

    #[test]
    fn text_round_trip(r in region()) {
        let back = LatticeRegion::parse(&r.to_text()).unwrap();
        prop_assert_eq!(back.cells(), r.cells());
        prop_assert_eq!(back.n(), r.n());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    /// On a scalene frame the steps are unchanged and the exact interior
    /// angles of the outer loop sum to (V − 2)π.
    #[test]
    fn scalene_frame_angles(r in region()) {
        let frame = Triangle::exact(num("7/8"), num("3/4")).unwrap();
        let s = LatticeRegion::with_frame(r.n(), r.cells().iter().copied(), frame).unwrap();
        let (la, lb) = (extract_boundary(&r), extract_boundary(&s));
        prop_assert_eq!(la.len(), lb.len());
        for (x, y) in la.iter().zip(&lb) {
            prop_assert_eq!(&x.vertices, &y.vertices);
            let sx: Vec<i8> = x.angles.iter().map(|a| a.step).collect();
            let sy: Vec<i8> = y.angles.iter().map(|a| a.step).collect();
            prop_assert_eq!(sx, sy);
        }
        let outer = &lb[0];
        let total: f64 = outer.angles.iter().map(|a| a.angle.to_radians_f64()).sum();
        prop_assert!((total - (outer.len() as f64 - 2.0) * PI).abs() < 1e-6);
    }
}
