#![allow(dead_code)]

use equicut::exact::{parse_number, KElement, Rational, TowerReal};
use proptest::prelude::*;

pub fn num(s: &str) -> TowerReal {
    parse_number(s).unwrap()
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

pub fn kelement() -> impl Strategy<Value = KElement> {
    let radicands = vec![1u64, 2, 3, 5, 6, 7, 10, 15, 30];
    prop::collection::vec((rational(), prop::sample::select(radicands)), 0..4).prop_map(|terms| {
        terms.into_iter().fold(KElement::zero(), |acc, (c, d)| {
            acc.add(&KElement::sqrt_term(c, d).unwrap())
        })
    })
}

/// `p + q·√r` with `p, q` in the square-root field and `r` possibly nested.
pub fn tower() -> impl Strategy<Value = TowerReal> {
    let radicands = vec!["2", "7", "1 + sqrt(2)", "2 + sqrt(3)"];
    (kelement(), kelement(), prop::sample::select(radicands)).prop_map(|(p, q, r)| {
        let root = num(r).sqrt().unwrap();
        p.to_tower().unwrap() + q.to_tower().unwrap() * root
    })
}

use std::collections::{BTreeMap, BTreeSet};

use equicut::boundary::{BoundaryLoop, Cell};

/// Edge-connected cell set grown from `start`; each pick selects the next
/// cell among the current neighbours.
pub fn grow_cells(n: usize, start: Cell, picks: &[usize]) -> BTreeSet<Cell> {
    let mut cells = BTreeSet::from([start]);
    for &p in picks {
        let frontier: BTreeSet<Cell> = cells
            .iter()
            .flat_map(|c| c.neighbours(n))
            .filter(|c| !cells.contains(c))
            .collect();
        if frontier.is_empty() {
            break;
        }
        cells.insert(*frontier.iter().nth(p % frontier.len()).unwrap());
    }
    cells
}

type LatticePoint = (i64, i64);

/// Unit lattice edges lying on exactly one cell.
pub fn boundary_edge_count(n: usize, cells: &BTreeSet<Cell>) -> usize {
    let mut seen: BTreeMap<(LatticePoint, LatticePoint), usize> = BTreeMap::new();
    for c in cells {
        let k = c.corners(n);
        for e in 0..3 {
            let (a, b) = (k[e], k[(e + 1) % 3]);
            *seen.entry((a.min(b), a.max(b))).or_default() += 1;
        }
    }
    seen.values().filter(|&&v| v == 1).count()
}

pub fn loop_length(l: &BoundaryLoop) -> usize {
    let m = l.vertices.len();
    (0..m)
        .map(|k| {
            let (a, b) = (l.vertices[k], l.vertices[(k + 1) % m]);
            (b.0 - a.0).abs().max((b.1 - a.1).abs()) as usize
        })
        .sum()
}
