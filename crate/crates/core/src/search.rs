//! Exhaustive search for dissections of a region triangle into `m` congruent
//! copies of a tile.
//!
//! The uncovered part of the region is never stored. At each node every
//! vertex of the region or of a placed piece is inspected, the directions
//! covered around it (by pieces or by the region's exterior) are collected,
//! and the remaining open sectors are the uncovered corners. The narrowest
//! convex corner is filled next: whichever piece covers the directions just
//! counterclockwise of the corner's first ray must have a vertex there and a
//! side along that ray, so trying every tile corner in both chiralities on
//! that ray is exhaustive, and distinct placements lead to disjoint subtrees.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering as AtomicOrdering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::dissect::{canonical_region, cmp_dissections, DissectError, Dissection};
use crate::exact::{ExactError, TowerReal};
use crate::geom::{
    interiors_disjoint, isometry_mapping_segment, orientation, Bounds, Containment, Isometry, PlacedTriangle, Point,
    Rotation, Segment,
};
use crate::trispace::Triangle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("piece count must be at least 1")]
    ZeroPieces,
    #[error("tile sides do not form a triangle")]
    BadTile,
    #[error(transparent)]
    Dissect(#[from] DissectError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Limits {
    pub max_nodes: Option<u64>,
    pub max_results: Option<usize>,
    pub time_budget: Option<Duration>,
}

/// Sound pruning rules; each can be switched off for differential testing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pruning {
    /// The tile corner must fit inside the uncovered corner.
    pub angle_fit: bool,
    /// What is left of the corner is zero or at least the smallest tile angle.
    pub remainder: bool,
    /// Every convex uncovered corner must be a sum of tile angles.
    pub dead_corner: bool,
}

impl Default for Pruning {
    fn default() -> Self {
        Pruning {
            angle_fit: true,
            remainder: true,
            dead_corner: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub region: Triangle,
    pub tile: [TowerReal; 3],
    pub m: usize,
    pub allow_reflections: bool,
    pub symmetry_quotient: bool,
    pub limits: Limits,
    pub pruning: Pruning,
    /// Depth down to which subtrees are explored in parallel; 0 is serial.
    pub parallel_depth: usize,
}

impl SearchSpec {
    pub fn new(region: Triangle, tile: [TowerReal; 3], m: usize) -> Self {
        SearchSpec {
            region,
            tile,
            m,
            allow_reflections: true,
            symmetry_quotient: false,
            limits: Limits::default(),
            pruning: Pruning::default(),
            parallel_depth: 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub dissections: Vec<Dissection>,
    pub complete: bool,
    pub nodes: u64,
    /// The tile area times `m` differs from the region area.
    pub area_mismatch: bool,
}

/// Tile with counterclockwise corners `t0, t1, t2`; `lengths[k] = |t_k t_{k+1}|`
/// and `angles[k]` is the interior angle at `t_k`.
#[derive(Clone, Debug)]
struct Shape {
    lengths: [TowerReal; 3],
    angles: [Rotation; 3],
}

impl Shape {
    fn mirrored(&self) -> Shape {
        let [l0, l1, l2] = self.lengths.clone();
        let [a0, a1, a2] = self.angles.clone();
        Shape {
            lengths: [l2, l1, l0],
            angles: [a0, a2, a1],
        }
    }
}

/// Twice the area of the triangle with the given sides (Heron).
fn double_area(s: &[TowerReal; 3]) -> Result<TowerReal, ExactError> {
    let [x, y, z] = s;
    let p = (x + y + z) * (-x + y + z) * (x - y + z) * (x + y - z);
    Ok(p.sqrt()? * TowerReal::ratio(1, 2))
}

fn shape_of(sides: &[TowerReal; 3]) -> Result<Shape, SearchError> {
    let [l0, l1, l2] = sides.clone();
    if [&l0, &l1, &l2].iter().any(|s| s.sign() <= 0) {
        return Err(SearchError::BadTile);
    }
    let d = double_area(sides)?;
    if d.sign() <= 0 {
        return Err(SearchError::BadTile);
    }
    let two = TowerReal::from_int(2);
    // corner k lies between sides lengths[k] and lengths[k-1]
    let corner = |near: &TowerReal, far: &TowerReal, opposite: &TowerReal| {
        let cos = (near.square() + far.square() - opposite.square()) / (&two * near * far);
        let sin = &d / (near * far);
        Rotation::new_unchecked(cos, sin)
    };
    let angles = [corner(&l0, &l2, &l1), corner(&l1, &l0, &l2), corner(&l2, &l1, &l0)];
    Ok(Shape {
        lengths: [l0, l1, l2],
        angles,
    })
}

#[derive(Clone, Debug)]
struct Piece {
    tri: PlacedTriangle,
    /// `edges[k]` is the unit direction from vertex `k` to `k + 1`.
    edges: [Rotation; 3],
    bounds: Bounds,
}

#[derive(Clone, Debug)]
struct Corner {
    point: Point,
    start: Rotation,
    width: Rotation,
}

impl Corner {
    fn cmp_priority(&self, o: &Corner) -> Ordering {
        self.width
            .cmp_angle(&o.width)
            .then_with(|| self.point.lex_cmp(&o.point))
            .then_with(|| self.start.cmp_angle(&o.start))
    }
}

enum Cover {
    Free,
    Arc(Rotation, Rotation),
    Full,
}

/// How a triangle with unit edge directions covers directions around `p`.
fn cover(vs: &[Point; 3], edges: &[Rotation; 3], p: &Point) -> Cover {
    let o = [0, 1, 2].map(|k| orientation(&vs[k], &vs[(k + 1) % 3], p));
    if o.iter().any(|&s| s < 0) {
        return Cover::Free;
    }
    match o.iter().filter(|&&s| s == 0).count() {
        0 => Cover::Full,
        1 => {
            let k = o.iter().position(|&s| s == 0).unwrap();
            Cover::Arc(edges[k].clone(), edges[k].neg())
        }
        _ => {
            // a vertex: the two zero edges meet at v_k with k the shared index
            let k = (0..3).find(|&k| o[k] == 0 && o[(k + 2) % 3] == 0).unwrap();
            Cover::Arc(edges[k].clone(), edges[(k + 2) % 3].neg())
        }
    }
}

struct Ctx {
    region: PlacedTriangle,
    region_edges: [Rotation; 3],
    shapes: Vec<Shape>,
    min_angle: Rotation,
    corner_sums: Vec<Rotation>,
    m: usize,
    pruning: Pruning,
    limits: Limits,
    parallel_depth: usize,
    deadline: Option<Instant>,
    nodes: AtomicU64,
    found: AtomicUsize,
    stopped: AtomicBool,
    truncated: AtomicBool,
}

impl Ctx {
    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, AtomicOrdering::Relaxed) + 1;
        if self.stopped.load(AtomicOrdering::Relaxed) {
            self.truncated.store(true, AtomicOrdering::Relaxed);
            return false;
        }
        let over_nodes = self.limits.max_nodes.is_some_and(|max| n > max);
        let over_time = self.deadline.is_some_and(|d| Instant::now() >= d);
        if over_nodes || over_time {
            self.stopped.store(true, AtomicOrdering::Relaxed);
            self.truncated.store(true, AtomicOrdering::Relaxed);
            return false;
        }
        true
    }

    fn candidate_points(&self, pieces: &[Piece]) -> Vec<Point> {
        let mut pts: Vec<Point> = self
            .region
            .vertices()
            .iter()
            .chain(pieces.iter().flat_map(|p| p.tri.vertices().iter()))
            .cloned()
            .collect();
        pts.sort_by(|a, b| a.lex_cmp(b));
        pts.dedup();
        pts
    }

    /// Uncovered open sectors around `p`, or `None` if `p` is interior to a piece.
    fn sectors(&self, pieces: &[Piece], p: &Point) -> Option<Vec<(Rotation, Rotation)>> {
        let mut arcs = Vec::new();
        match cover(self.region.vertices(), &self.region_edges, p) {
            Cover::Arc(s, e) => arcs.push((e, s)),
            Cover::Free => return Some(Vec::new()),
            Cover::Full => {}
        }
        let probe = Bounds::of_points(std::slice::from_ref(p));
        for piece in pieces {
            if !piece.bounds.meets(&probe) {
                continue;
            }
            match cover(piece.tri.vertices(), &piece.edges, p) {
                Cover::Free => {}
                Cover::Arc(s, e) => arcs.push((s, e)),
                Cover::Full => return None,
            }
        }
        if arcs.is_empty() {
            return Some(vec![(Rotation::identity(), Rotation::identity())]);
        }
        let mut dirs: Vec<Rotation> = arcs.iter().flat_map(|(s, e)| [s.clone(), e.clone()]).collect();
        dirs.sort_by(|a, b| a.cmp_angle(b));
        dirs.dedup();
        let k = dirs.len();
        let covered: Vec<bool> = (0..k)
            .map(|i| {
                arcs.iter().any(|(s, e)| {
                    let w = s.angle_to(e);
                    let at = s.angle_to(&dirs[i]);
                    at.cmp_angle(&w) == Ordering::Less
                })
            })
            .collect();
        let Some(first_covered) = covered.iter().position(|&c| c) else {
            return Some(vec![(Rotation::identity(), Rotation::identity())]);
        };
        let mut out = Vec::new();
        let mut i = 0;
        while i < k {
            let idx = (first_covered + i) % k;
            if covered[idx] {
                i += 1;
                continue;
            }
            let start = dirs[idx].clone();
            let mut j = i;
            while !covered[(first_covered + j) % k] {
                j += 1;
            }
            out.push((start, dirs[(first_covered + j) % k].clone()));
            i = j;
        }
        Some(out)
    }

    /// Narrowest convex uncovered corner, or `None` for a dead node.
    fn pick_corner(&self, pieces: &[Piece]) -> Option<Corner> {
        let mut best: Option<Corner> = None;
        for p in self.candidate_points(pieces) {
            let Some(sectors) = self.sectors(pieces, &p) else {
                continue;
            };
            for (s, e) in sectors {
                let width = s.angle_to(&e);
                if !width.is_convex() {
                    continue;
                }
                if self.pruning.dead_corner && !self.corner_sums.contains(&width) {
                    return None;
                }
                let c = Corner {
                    point: p.clone(),
                    start: s,
                    width,
                };
                if best.as_ref().is_none_or(|b| c.cmp_priority(b) == Ordering::Less) {
                    best = Some(c);
                }
            }
        }
        best
    }

    fn placements(&self, corner: &Corner, pieces: &[Piece]) -> Vec<Piece> {
        let mut out: Vec<Piece> = Vec::new();
        for shape in &self.shapes {
            for k in 0..3 {
                let angle = &shape.angles[k];
                if self.pruning.angle_fit && angle.cmp_angle(&corner.width) == Ordering::Greater {
                    continue;
                }
                if self.pruning.remainder {
                    let rest = angle.angle_to(&corner.width);
                    let ok =
                        rest.is_zero_angle() || (rest.is_convex() && rest.cmp_angle(&self.min_angle) != Ordering::Less);
                    if !ok {
                        continue;
                    }
                }
                let piece = place(shape, k, &corner.point, &corner.start);
                if out.iter().any(|q| q.tri.same_point_set(&piece.tri)) {
                    continue;
                }
                if self.fits(&piece, pieces) {
                    out.push(piece);
                }
            }
        }
        out
    }

    fn fits(&self, piece: &Piece, pieces: &[Piece]) -> bool {
        if piece
            .tri
            .vertices()
            .iter()
            .any(|v| self.region.contains(v) == Containment::Outside)
        {
            return false;
        }
        pieces
            .iter()
            .filter(|q| q.bounds.meets(&piece.bounds))
            .all(|q| interiors_disjoint(&q.tri, &piece.tri))
    }

    fn explore(&self, pieces: &mut Vec<Piece>, depth: usize) -> Vec<Vec<PlacedTriangle>> {
        if !self.tick() {
            return Vec::new();
        }
        if pieces.len() == self.m {
            let n = self.found.fetch_add(1, AtomicOrdering::Relaxed) + 1;
            if self.limits.max_results.is_some_and(|max| n >= max) {
                self.stopped.store(true, AtomicOrdering::Relaxed);
            }
            return vec![pieces.iter().map(|p| p.tri.clone()).collect()];
        }
        let Some(corner) = self.pick_corner(pieces) else {
            return Vec::new();
        };
        let children = self.placements(&corner, pieces);
        if depth < self.parallel_depth && children.len() > 1 {
            let base = pieces.clone();
            children
                .into_par_iter()
                .flat_map_iter(|child| {
                    let mut state = base.clone();
                    state.push(child);
                    self.explore(&mut state, depth + 1)
                })
                .collect()
        } else {
            let mut out = Vec::new();
            for child in children {
                pieces.push(child);
                out.extend(self.explore(pieces, depth + 1));
                pieces.pop();
            }
            out
        }
    }
}

/// Tile corner `k` at `p`, with side `k → k+1` along `dir`.
fn place(shape: &Shape, k: usize, p: &Point, dir: &Rotation) -> Piece {
    let (k1, k2) = ((k + 1) % 3, (k + 2) % 3);
    let side_out = dir.clone();
    let side_back = dir.compose(&shape.angles[k]);
    let vk = p.clone();
    let vk1 = p.add(&side_out.as_point().scale(&shape.lengths[k]));
    let vk2 = p.add(&side_back.as_point().scale(&shape.lengths[k2]));
    let e_k1 = side_out.neg().compose(&shape.angles[k1].inverse());
    let mut vertices = [vk.clone(), vk.clone(), vk];
    let mut edges = [side_out.clone(), side_out.clone(), side_out];
    vertices[k1] = vk1;
    vertices[k2] = vk2;
    edges[k1] = e_k1;
    edges[k2] = side_back.neg();
    let tri = PlacedTriangle::from_parts(vertices, shape.lengths.clone());
    let bounds = Bounds::of(&tri);
    Piece { tri, edges, bounds }
}

fn unit_edges(t: &PlacedTriangle) -> [Rotation; 3] {
    let v = t.vertices();
    let mut l = [TowerReal::zero(), TowerReal::zero(), TowerReal::zero()];
    let sq = t.squared_edges();
    for k in 0..3 {
        l[k] = sq[k].sqrt().expect("squared lengths are nonnegative");
    }
    [0, 1, 2].map(|k| Rotation::along(&v[(k + 1) % 3].sub(&v[k]), &l[k]))
}

/// All sums of tile angles strictly below π.
fn angle_sums(angles: &[Rotation; 3]) -> Vec<Rotation> {
    let mut out: Vec<Rotation> = Vec::new();
    let mut frontier = vec![Rotation::identity()];
    while let Some(s) = frontier.pop() {
        for a in angles {
            // s and a are both below π, so t is below π iff it is convex
            let t = s.compose(a);
            if t.is_convex() && !out.contains(&t) {
                out.push(t.clone());
                frontier.push(t);
            }
        }
    }
    out
}

/// Exact isometries of the placed region onto itself.
pub fn region_symmetries(region: &PlacedTriangle) -> Vec<Isometry> {
    let v = region.vertices();
    let mut out = Vec::new();
    for perm in [[0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1], [2, 1, 0], [1, 0, 2]] {
        let reflect = perm[1] != (perm[0] + 1) % 3;
        let src = Segment::new(v[0].clone(), v[1].clone());
        let dst = Segment::new(v[perm[0]].clone(), v[perm[1]].clone());
        if let Ok(iso) = isometry_mapping_segment(&src, &dst, reflect) {
            if iso.apply(&v[2]) == v[perm[2]] {
                out.push(iso);
            }
        }
    }
    out
}

pub fn search_dissections(spec: &SearchSpec) -> Result<SearchResult, SearchError> {
    if spec.m == 0 {
        return Err(SearchError::ZeroPieces);
    }
    let region = canonical_region(&spec.region)?;
    let mut tile = spec.tile.clone();
    tile.sort();
    let shape = shape_of(&tile)?;
    let tile_area = double_area(&tile)?;
    if &tile_area * &TowerReal::from_int(spec.m as i64) != region.double_area() {
        return Ok(SearchResult {
            dissections: Vec::new(),
            complete: true,
            nodes: 0,
            area_mismatch: true,
        });
    }
    let mut shapes = vec![shape.clone()];
    if spec.allow_reflections {
        shapes.push(shape.mirrored());
    }
    let min_angle = shape
        .angles
        .iter()
        .min_by(|a, b| a.cmp_angle(b))
        .cloned()
        .expect("three angles");
    let ctx = Ctx {
        region_edges: unit_edges(&region),
        region: region.clone(),
        corner_sums: angle_sums(&shape.angles),
        shapes,
        min_angle,
        m: spec.m,
        pruning: spec.pruning,
        limits: spec.limits,
        parallel_depth: spec.parallel_depth,
        deadline: spec.limits.time_budget.map(|d| Instant::now() + d),
        nodes: AtomicU64::new(0),
        found: AtomicUsize::new(0),
        stopped: AtomicBool::new(false),
        truncated: AtomicBool::new(false),
    };
    let raw = ctx.explore(&mut Vec::new(), 0);
    let complete = !ctx.truncated.load(AtomicOrdering::Relaxed);
    let mut dissections: Vec<Dissection> = raw
        .into_iter()
        .map(|pieces| Dissection::new(spec.region.clone(), pieces, tile.clone()))
        .collect::<Result<_, _>>()?;
    dissections.sort_by(cmp_dissections);
    if spec.symmetry_quotient {
        dissections = quotient(&region, dissections);
    }
    let nodes = ctx.nodes.load(AtomicOrdering::Relaxed);
    let nodes = spec.limits.max_nodes.map_or(nodes, |max| nodes.min(max));
    Ok(SearchResult {
        dissections,
        complete,
        nodes,
        area_mismatch: false,
    })
}

/// Keeps the smallest representative of each orbit under the region's
/// symmetries; the input must be sorted.
fn quotient(region: &PlacedTriangle, sorted: Vec<Dissection>) -> Vec<Dissection> {
    let syms = region_symmetries(region);
    let mut kept: Vec<Dissection> = Vec::new();
    for d in sorted {
        let seen = kept.iter().any(|k| {
            syms.iter().any(|s| {
                let image: Vec<PlacedTriangle> = d.pieces.iter().map(|p| p.transformed(s)).collect();
                crate::dissect::same_piece_multiset(&image, &k.pieces)
            })
        });
        if !seen {
            kept.push(d);
        }
    }
    kept
}

/// The region's sides scaled by `1/√m`.
pub fn similar_tile(region: &Triangle, m: usize) -> Result<[TowerReal; 3], SearchError> {
    let sides = region.exact_sides().ok_or(DissectError::NotExact)?;
    let k = TowerReal::ratio(1, m as i64).sqrt()?;
    let mut t = sides.map(|s| s * &k);
    t.sort();
    Ok(t)
}

#[derive(Clone, Debug)]
pub struct TileOutcome {
    pub tile: [TowerReal; 3],
    pub similar: bool,
    /// `None` when the tile was skipped.
    pub result: Option<SearchResult>,
    pub notice: Option<String>,
}

/// Searches with the similar tile and every extra tile of the right area.
pub fn search_for_count(
    region: &Triangle,
    m: usize,
    extra_tiles: &[[TowerReal; 3]],
    template: &SearchSpec,
) -> Result<Vec<TileOutcome>, SearchError> {
    if m == 0 {
        return Err(SearchError::ZeroPieces);
    }
    let mut out = Vec::new();
    let similar = similar_tile(region, m)?;
    let mut tiles = vec![(similar, true)];
    tiles.extend(extra_tiles.iter().map(|t| (t.clone(), false)));
    for (tile, is_similar) in tiles {
        let spec = SearchSpec {
            region: region.clone(),
            tile: tile.clone(),
            m,
            ..template.clone()
        };
        let r = search_dissections(&spec)?;
        if r.area_mismatch {
            out.push(TileOutcome {
                tile,
                similar: is_similar,
                result: None,
                notice: Some(format!("tile area does not divide the region into {m} pieces; skipped")),
            });
        } else {
            out.push(TileOutcome {
                tile,
                similar: is_similar,
                result: Some(r),
                notice: None,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dissect::{is_standard, verify_dissection};
    use crate::exact::parse_number;

    fn num(s: &str) -> TowerReal {
        parse_number(s).unwrap()
    }

    fn scalene() -> Triangle {
        Triangle::exact(num("7/8"), num("3/4")).unwrap()
    }

    fn right_isoceles() -> Triangle {
        Triangle::exact(num("1/2*sqrt(2)"), num("1/2*sqrt(2)")).unwrap()
    }

    fn run(t: &Triangle, m: usize) -> SearchResult {
        let spec = SearchSpec::new(t.clone(), similar_tile(t, m).unwrap(), m);
        search_dissections(&spec).unwrap()
    }

    #[test]
    fn shape_angles_sum_to_pi() {
        let s = shape_of(&[num("3/4"), num("7/8"), num("1")]).unwrap();
        let total = s.angles[0].compose(&s.angles[1]).compose(&s.angles[2]);
        assert!(total.is_straight());
        let m = s.mirrored();
        let total = m.angles[0].compose(&m.angles[1]).compose(&m.angles[2]);
        assert!(total.is_straight());
    }

    #[test]
    fn placement_matches_tile() {
        let tile = [num("3/4"), num("7/8"), num("1")];
        let s = shape_of(&tile).unwrap();
        for shape in [s.clone(), s.mirrored()] {
            for k in 0..3 {
                let dir = Rotation::new(num("3/5"), num("4/5")).unwrap();
                let p = place(&shape, k, &Point::ints(1, 2), &dir);
                assert_eq!(p.tri.tile_edge_lengths(), &tile);
                assert_eq!(unit_edges(&p.tri), p.edges);
            }
        }
    }

    #[test]
    fn single_piece() {
        let r = run(&scalene(), 1);
        assert_eq!(r.dissections.len(), 1);
        assert!(r.complete);
    }

    #[test]
    fn scalene_four_is_standard_only() {
        let r = run(&scalene(), 4);
        assert!(r.complete);
        assert_eq!(r.dissections.len(), 1);
        assert!(is_standard(&r.dissections[0]));
    }

    #[test]
    fn right_isoceles_two() {
        let r = run(&right_isoceles(), 2);
        assert!(r.complete);
        assert_eq!(r.dissections.len(), 1);
        assert!(verify_dissection(&r.dissections[0]).valid);
    }

    #[test]
    fn area_mismatch_is_vacuous() {
        let spec = SearchSpec::new(scalene(), [num("1"), num("1"), num("1")], 2);
        let r = search_dissections(&spec).unwrap();
        assert!(r.area_mismatch && r.dissections.is_empty());
    }

    #[test]
    fn symmetries() {
        let eq = Triangle::exact(num("1"), num("1")).unwrap();
        assert_eq!(region_symmetries(&canonical_region(&eq).unwrap()).len(), 6);
        assert_eq!(
            region_symmetries(&canonical_region(&right_isoceles()).unwrap()).len(),
            2
        );
        assert_eq!(region_symmetries(&canonical_region(&scalene()).unwrap()).len(), 1);
    }

    #[test]
    fn corner_sums_below_pi() {
        let s = shape_of(&[num("1/2*sqrt(2)"), num("1/2*sqrt(2)"), num("1")]).unwrap();
        assert_eq!(angle_sums(&s.angles).len(), 3);
    }
}
