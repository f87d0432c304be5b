//! Dissections of a canonically placed region triangle into congruent pieces.

mod io;

use std::cmp::Ordering;

use rayon::prelude::*;
use thiserror::Error;

use crate::exact::{ExactError, TowerReal};
use crate::geom::{interiors_disjoint, Bounds, Containment, GeomError, PlacedTriangle};
use crate::trispace::{Triangle, TriangleError};

pub use io::{from_json, svg, svg_polygons, to_json, DissectionFile};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DissectError {
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("region must be an exact-tier triangle")]
    NotExact,
    #[error(transparent)]
    Triangle(#[from] TriangleError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("malformed dissection file: {0}")]
    Format(String),
}

#[derive(Clone, Debug)]
pub struct Dissection {
    pub triangle: Triangle,
    pub region: PlacedTriangle,
    pub pieces: Vec<PlacedTriangle>,
    /// Sorted side lengths of the tile.
    pub declared_tile: [TowerReal; 3],
}

impl Dissection {
    /// Places `triangle` canonically and attaches the given pieces.
    pub fn new(
        triangle: Triangle,
        pieces: Vec<PlacedTriangle>,
        mut declared_tile: [TowerReal; 3],
    ) -> Result<Self, DissectError> {
        let region = canonical_region(&triangle)?;
        declared_tile.sort();
        Ok(Dissection {
            triangle,
            region,
            pieces,
            declared_tile,
        })
    }

    /// Pieces sorted by canonical vertex order, independent of input order.
    pub fn sorted_pieces(&self) -> Vec<PlacedTriangle> {
        let mut v = self.pieces.clone();
        v.sort_by(|a, b| a.cmp_canonical(b));
        v
    }

    pub fn same_pieces(&self, other: &Dissection) -> bool {
        same_piece_multiset(&self.pieces, &other.pieces)
    }
}

pub fn same_piece_multiset(a: &[PlacedTriangle], b: &[PlacedTriangle]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(|x, y| x.cmp_canonical(y));
    b.sort_by(|x, y| x.cmp_canonical(y));
    a.iter().zip(&b).all(|(x, y)| x.same_point_set(y))
}

pub fn canonical_region(t: &Triangle) -> Result<PlacedTriangle, DissectError> {
    let sides = t.exact_sides().ok_or(DissectError::NotExact)?;
    let [a, b, c] = t.canonical_vertices()?;
    // edges AB, BC, CA have lengths c, a, b
    Ok(PlacedTriangle::from_parts(
        [a, b, c],
        [sides[2].clone(), sides[0].clone(), sides[1].clone()],
    ))
}

/// Lattice cell address: `i` steps along AB, `j` steps along AC.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellIndex {
    pub i: usize,
    pub j: usize,
    pub up: bool,
}

/// Standard n-grid cell: upward cells are `1/n`-scaled translates of the
/// region, downward cells their half-turns.
pub fn lattice_cell(region: &PlacedTriangle, sides: &[TowerReal; 3], n: usize, cell: CellIndex) -> PlacedTriangle {
    let [a, b, c] = region.vertices();
    let inv = TowerReal::ratio(1, n as i64);
    let u = b.sub(a).scale(&inv);
    let v = c.sub(a).scale(&inv);
    let p = a
        .add(&u.scale(&TowerReal::from_int(cell.i as i64)))
        .add(&v.scale(&TowerReal::from_int(cell.j as i64)));
    let [sa, sb, sc] = sides.clone().map(|s| s * &inv);
    if cell.up {
        let (q, r) = (p.add(&u), p.add(&v));
        PlacedTriangle::from_parts([p, q, r], [sc, sa, sb])
    } else {
        let q = p.add(&u);
        let (r, s) = (q.add(&v), p.add(&v));
        PlacedTriangle::from_parts([q, r, s], [sb, sc, sa])
    }
}

pub fn standard_cells(n: usize) -> Vec<CellIndex> {
    let mut out = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n - j {
            out.push(CellIndex { i, j, up: true });
            if i + j + 2 <= n {
                out.push(CellIndex { i, j, up: false });
            }
        }
    }
    out
}

pub fn standard_dissection(t: &Triangle, n: usize) -> Result<Dissection, DissectError> {
    if n == 0 {
        return Err(DissectError::ZeroOrder);
    }
    let sides = t.exact_sides().ok_or(DissectError::NotExact)?;
    let region = canonical_region(t)?;
    let pieces = standard_cells(n)
        .into_iter()
        .map(|c| lattice_cell(&region, &sides, n, c))
        .collect();
    let inv = TowerReal::ratio(1, n as i64);
    let tile = sides.clone().map(|s| s * &inv);
    Dissection::new(t.clone(), pieces, tile)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Failure {
    Overlap {
        first: usize,
        second: usize,
    },
    OutsideRegion {
        piece: usize,
    },
    /// Twice the summed piece area against twice the region area.
    AreaMismatch {
        pieces: TowerReal,
        region: TowerReal,
    },
    CongruenceMismatch {
        piece: usize,
        mirrored: bool,
    },
}

impl Failure {
    pub fn category(&self) -> FailureKind {
        match self {
            Failure::Overlap { .. } => FailureKind::Overlap,
            Failure::OutsideRegion { .. } => FailureKind::OutsideRegion,
            Failure::AreaMismatch { .. } => FailureKind::AreaMismatch,
            Failure::CongruenceMismatch { .. } => FailureKind::CongruenceMismatch,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FailureKind {
    Overlap,
    OutsideRegion,
    AreaMismatch,
    CongruenceMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub valid: bool,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn kinds(&self) -> Vec<FailureKind> {
        let mut k: Vec<_> = self.failures.iter().map(Failure::category).collect();
        k.dedup();
        k
    }

    pub fn has(&self, kind: FailureKind) -> bool {
        self.failures.iter().any(|f| f.category() == kind)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Reject pieces that are only mirror-congruent to the first piece.
    pub direct_only: bool,
}

pub fn verify_dissection(d: &Dissection) -> VerificationReport {
    verify_dissection_with(d, VerifyOptions::default())
}

pub fn verify_dissection_with(d: &Dissection, opts: VerifyOptions) -> VerificationReport {
    let mut failures = Vec::new();

    let reference = d.pieces.first().map(PlacedTriangle::squared_edges);
    for (k, p) in d.pieces.iter().enumerate() {
        if p.tile_edge_lengths() != &d.declared_tile {
            failures.push(Failure::CongruenceMismatch {
                piece: k,
                mirrored: false,
            });
        } else if opts.direct_only && !same_cyclic(reference.as_ref().unwrap(), &p.squared_edges()) {
            failures.push(Failure::CongruenceMismatch {
                piece: k,
                mirrored: true,
            });
        }
    }

    for (k, p) in d.pieces.iter().enumerate() {
        if p.vertices()
            .iter()
            .any(|v| d.region.contains(v) == Containment::Outside)
        {
            failures.push(Failure::OutsideRegion { piece: k });
        }
    }

    let boxes: Vec<Bounds> = d.pieces.iter().map(Bounds::of).collect();
    let mut order: Vec<usize> = (0..d.pieces.len()).collect();
    order.sort_by(|&x, &y| boxes[x].x.0.cmp(&boxes[y].x.0));
    let mut pairs = Vec::new();
    for (pos, &x) in order.iter().enumerate() {
        for &y in &order[pos + 1..] {
            if boxes[y].x.0 > boxes[x].x.1 {
                break;
            }
            if boxes[x].meets(&boxes[y]) {
                pairs.push((x.min(y), x.max(y)));
            }
        }
    }
    let mut overlaps: Vec<Failure> = pairs
        .par_iter()
        .filter(|&&(x, y)| !interiors_disjoint(&d.pieces[x], &d.pieces[y]))
        .map(|&(first, second)| Failure::Overlap { first, second })
        .collect();
    failures.append(&mut overlaps);

    let total = d.pieces.iter().fold(TowerReal::zero(), |acc, p| acc + p.double_area());
    let region = d.region.double_area();
    if total != region {
        failures.push(Failure::AreaMismatch { pieces: total, region });
    }

    failures.sort();
    VerificationReport {
        valid: failures.is_empty(),
        failures,
    }
}

fn same_cyclic(a: &[TowerReal; 3], b: &[TowerReal; 3]) -> bool {
    (0..3).any(|s| (0..3).all(|i| a[i] == b[(i + s) % 3]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonStandard {
    NotPerfectSquare(usize),
    PiecesDiffer,
}

/// `Ok(n)` when the pieces are exactly the standard n-grid of the region.
pub fn standard_check(d: &Dissection) -> Result<usize, NonStandard> {
    let m = d.pieces.len();
    let n = (m as f64).sqrt().round() as usize;
    if n == 0 || n * n != m {
        return Err(NonStandard::NotPerfectSquare(m));
    }
    let std = standard_dissection(&d.triangle, n).map_err(|_| NonStandard::PiecesDiffer)?;
    if d.same_pieces(&std) {
        Ok(n)
    } else {
        Err(NonStandard::PiecesDiffer)
    }
}

pub fn is_standard(d: &Dissection) -> bool {
    standard_check(d).is_ok()
}

/// Squared linear ratio of tile to region when they are similar.
pub fn similarity_ratio_squared(d: &Dissection) -> Option<TowerReal> {
    let mut region = d.region.tile_edge_lengths().clone();
    region.sort();
    let k = d.declared_tile[0].checked_div(&region[0]).ok()?;
    let similar = (1..3).all(|i| d.declared_tile[i] == &region[i] * &k);
    similar.then(|| k.square())
}

pub fn cmp_dissections(a: &Dissection, b: &Dissection) -> Ordering {
    let (pa, pb) = (a.sorted_pieces(), b.sorted_pieces());
    pa.len().cmp(&pb.len()).then_with(|| {
        pa.iter()
            .zip(&pb)
            .map(|(x, y)| x.cmp_canonical(y))
            .find(|o| *o != Ordering::Equal)
            .unwrap_or(Ordering::Equal)
    })
}
