//! Unions of standard-grid cells and their oriented boundary loops.
//!
//! Lattice points are integer pairs `(i, j)` meaning `A + i·u + j·v` with
//! `u = AB/n`, `v = AC/n`. Cells are addressed by `(row, col)` with row 0 at
//! the apex `C`, so `j = n − 1 − row` and `i = col`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::exact::TowerReal;
use crate::geom::{Point, Rotation};
use crate::trispace::{Triangle, TriangleError};

/// The six lattice directions, counterclockwise.
pub const DIRECTIONS: [(i64, i64); 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundaryError {
    #[error("empty region")]
    Empty,
    #[error("cell ({row}, {col}, {}) outside the order-{n} grid", if *up { "up" } else { "down" })]
    OutOfGrid { row: usize, col: usize, up: bool, n: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("direction step {0} at a boundary vertex")]
    MalformedStep(i8),
    #[error(transparent)]
    Triangle(#[from] TriangleError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
    pub up: bool,
}

impl Cell {
    pub fn new(row: usize, col: usize, up: bool) -> Self {
        Cell { row, col, up }
    }

    fn fits(&self, n: usize) -> bool {
        self.row < n
            && if self.up {
                self.col <= self.row
            } else {
                self.col < self.row
            }
    }

    /// Counterclockwise lattice corners.
    pub fn corners(&self, n: usize) -> [(i64, i64); 3] {
        let (i, j) = (self.col as i64, (n - 1 - self.row) as i64);
        if self.up {
            [(i, j), (i + 1, j), (i, j + 1)]
        } else {
            [(i + 1, j), (i + 1, j + 1), (i, j + 1)]
        }
    }

    /// Cells sharing an edge with this one.
    pub fn neighbours(&self, n: usize) -> Vec<Cell> {
        let (r, c) = (self.row as i64, self.col as i64);
        let cand: Vec<(i64, i64, bool)> = if self.up {
            vec![(r, c - 1, false), (r, c, false), (r + 1, c, false)]
        } else {
            vec![(r, c, true), (r, c + 1, true), (r - 1, c, true)]
        };
        cand.into_iter()
            .filter(|&(r, c, _)| r >= 0 && c >= 0)
            .map(|(r, c, up)| Cell::new(r as usize, c as usize, up))
            .filter(|cell| cell.fits(n))
            .collect()
    }
}

pub fn all_cells(n: usize) -> Vec<Cell> {
    let mut out = Vec::new();
    for row in 0..n {
        for col in 0..=row {
            out.push(Cell::new(row, col, true));
            if col < row {
                out.push(Cell::new(row, col, false));
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct LatticeRegion {
    n: usize,
    cells: BTreeSet<Cell>,
    frame: Triangle,
}

impl LatticeRegion {
    /// Region on the grid of the equilateral triangle.
    pub fn new(n: usize, cells: impl IntoIterator<Item = Cell>) -> Result<Self, BoundaryError> {
        let frame = Triangle::exact(TowerReal::one(), TowerReal::one())?;
        LatticeRegion::with_frame(n, cells, frame)
    }

    /// Region on the grid of an arbitrary exact triangle, which only affects
    /// the exact vertex angles.
    pub fn with_frame(n: usize, cells: impl IntoIterator<Item = Cell>, frame: Triangle) -> Result<Self, BoundaryError> {
        let cells: BTreeSet<Cell> = cells.into_iter().collect();
        if cells.is_empty() {
            return Err(BoundaryError::Empty);
        }
        if let Some(c) = cells.iter().find(|c| !c.fits(n)) {
            return Err(BoundaryError::OutOfGrid {
                row: c.row,
                col: c.col,
                up: c.up,
                n,
            });
        }
        frame.canonical_vertices()?;
        Ok(LatticeRegion { n, cells, frame })
    }

    pub fn full(n: usize) -> Result<Self, BoundaryError> {
        LatticeRegion::new(n, all_cells(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn frame(&self) -> &Triangle {
        &self.frame
    }

    /// Parses lines `row col up|down`; `#` starts a comment and an optional
    /// `n <order>` line fixes the grid order (default: rows used).
    pub fn parse(text: &str) -> Result<Self, BoundaryError> {
        let mut n = None;
        let mut cells = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: &str| BoundaryError::Parse {
                line: k + 1,
                message: message.to_string(),
            };
            let words: Vec<&str> = line.split_whitespace().collect();
            match words.as_slice() {
                ["n", v] => n = Some(v.parse::<usize>().map_err(|_| err("bad order"))?),
                [r, c, o] => {
                    let row = r.parse().map_err(|_| err("bad row"))?;
                    let col = c.parse().map_err(|_| err("bad column"))?;
                    let up = match *o {
                        "up" => true,
                        "down" => false,
                        _ => return Err(err("orientation must be up or down")),
                    };
                    cells.push(Cell::new(row, col, up));
                }
                _ => return Err(err("expected `row col up|down`")),
            }
        }
        let n = n.unwrap_or_else(|| cells.iter().map(|c| c.row + 1).max().unwrap_or(0));
        LatticeRegion::new(n, cells)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for c in &self.cells {
            s.push_str(&format!("{} {} {}\n", c.row, c.col, if c.up { "up" } else { "down" }));
        }
        s
    }

    fn frame_vectors(&self) -> (Point, Point) {
        let [a, b, c] = self.frame.canonical_vertices().expect("checked at construction");
        (b.sub(&a), c.sub(&a))
    }

    pub fn lattice_point_f64(&self, p: (i64, i64)) -> (f64, f64) {
        let (u, v) = self.frame_vectors();
        let (u, v) = (u.to_f64(), v.to_f64());
        let s = 1.0 / self.n as f64;
        (
            (p.0 as f64 * u.0 + p.1 as f64 * v.0) * s,
            (p.0 as f64 * u.1 + p.1 as f64 * v.1) * s,
        )
    }

    /// Exact unit vectors of the six lattice directions.
    fn unit_directions(&self) -> [Rotation; 6] {
        let sides = self.frame.exact_sides().expect("exact frame");
        let (u, v) = self.frame_vectors();
        let lengths = [&sides[2], &sides[1], &sides[0]];
        let base = [
            Rotation::along(&u, lengths[0]),
            Rotation::along(&v, lengths[1]),
            Rotation::along(&v.sub(&u), lengths[2]),
        ];
        [
            base[0].clone(),
            base[1].clone(),
            base[2].clone(),
            base[0].neg(),
            base[1].neg(),
            base[2].neg(),
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AngleClass {
    Convex,
    Reflex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexAngle {
    pub class: AngleClass,
    /// Signed number of clock units turned at the vertex.
    pub step: i8,
    /// Interior angle as the rotation taking the outgoing edge to the
    /// reversed incoming edge.
    pub angle: Rotation,
}

/// Boundary component traversed with the region on the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryLoop {
    pub vertices: Vec<(i64, i64)>,
    /// `edge_directions[k]` is the direction from vertex `k` to `k + 1`.
    pub edge_directions: Vec<u8>,
    pub angles: Vec<VertexAngle>,
    /// Twice the signed area in lattice units; positive for outer loops.
    pub double_area: i64,
}

impl BoundaryLoop {
    pub fn is_outer(&self) -> bool {
        self.double_area > 0
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

fn dir_index(d: (i64, i64)) -> u8 {
    DIRECTIONS.iter().position(|&x| x == d).expect("unit lattice step") as u8
}

fn step_of(d_in: u8, d_out: u8) -> i8 {
    match (6 + d_out - d_in) % 6 {
        1 => 1,
        2 => 2,
        4 => -2,
        5 => -1,
        0 => 0,
        _ => 3,
    }
}

/// Boundary loops, outer (counterclockwise) loops first.
pub fn extract_boundary(r: &LatticeRegion) -> Vec<BoundaryLoop> {
    let mut edges: BTreeSet<((i64, i64), (i64, i64))> = BTreeSet::new();
    for cell in &r.cells {
        let c = cell.corners(r.n);
        for k in 0..3 {
            edges.insert((c[k], c[(k + 1) % 3]));
        }
    }
    let mut outgoing: BTreeMap<(i64, i64), Vec<u8>> = BTreeMap::new();
    for &(a, b) in &edges {
        if !edges.contains(&(b, a)) {
            outgoing.entry(a).or_default().push(dir_index((b.0 - a.0, b.1 - a.1)));
        }
    }
    let mut unused: BTreeSet<((i64, i64), u8)> = outgoing
        .iter()
        .flat_map(|(&v, ds)| ds.iter().map(move |&d| (v, d)))
        .collect();

    let units = r.unit_directions();
    let mut loops = Vec::new();
    while let Some(&(start, d0)) = unused.iter().next() {
        let mut points = vec![start];
        let mut dirs = vec![d0];
        unused.remove(&(start, d0));
        let mut at = step(start, d0);
        let mut d_in = d0;
        loop {
            // first boundary edge clockwise from the reversed incoming edge
            let next = [2u8, 1, 0, 5, 4]
                .iter()
                .map(|off| (d_in + off) % 6)
                .find(|d| outgoing.get(&at).is_some_and(|v| v.contains(d)))
                .expect("boundary edges form closed walks");
            if at == start && next == d0 {
                break;
            }
            unused.remove(&(at, next));
            points.push(at);
            dirs.push(next);
            at = step(at, next);
            d_in = next;
        }
        loops.push(compress(&points, &dirs, &units));
    }
    loops.sort_by(|a, b| {
        b.is_outer()
            .cmp(&a.is_outer())
            .then_with(|| key(a.vertices[0]).cmp(&key(b.vertices[0])))
    });
    loops
}

fn step(p: (i64, i64), d: u8) -> (i64, i64) {
    let (di, dj) = DIRECTIONS[d as usize];
    (p.0 + di, p.1 + dj)
}

fn key(p: (i64, i64)) -> (i64, i64) {
    (p.1, p.0)
}

fn compress(points: &[(i64, i64)], dirs: &[u8], units: &[Rotation; 6]) -> BoundaryLoop {
    let len = points.len();
    let corners: Vec<usize> = (0..len).filter(|&k| dirs[(k + len - 1) % len] != dirs[k]).collect();
    let first = *corners
        .iter()
        .min_by_key(|&&k| key(points[k]))
        .expect("a closed lattice walk turns");
    let pos = corners.iter().position(|&k| k == first).unwrap();
    let corners: Vec<usize> = corners[pos..].iter().chain(&corners[..pos]).copied().collect();

    let vertices: Vec<(i64, i64)> = corners.iter().map(|&k| points[k]).collect();
    let edge_directions: Vec<u8> = corners.iter().map(|&k| dirs[k]).collect();
    let m = vertices.len();
    let angles = (0..m)
        .map(|k| {
            let d_in = edge_directions[(k + m - 1) % m];
            let d_out = edge_directions[k];
            let s = step_of(d_in, d_out);
            VertexAngle {
                class: if s > 0 { AngleClass::Convex } else { AngleClass::Reflex },
                step: s,
                angle: units[d_out as usize].angle_to(&units[((d_in + 3) % 6) as usize]),
            }
        })
        .collect();
    let double_area = (0..m)
        .map(|k| {
            let (a, b) = (vertices[k], vertices[(k + 1) % m]);
            a.0 * b.1 - a.1 * b.0
        })
        .sum();
    BoundaryLoop {
        vertices,
        edge_directions,
        angles,
        double_area,
    }
}

/// Sum of signed clock units over the loop.
pub fn clock_turning(l: &BoundaryLoop) -> Result<i32, BoundaryError> {
    let mut total = 0i32;
    for a in &l.angles {
        if !matches!(a.step, -2 | -1 | 1 | 2) {
            return Err(BoundaryError::MalformedStep(a.step));
        }
        total += a.step as i32;
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemmaPattern {
    TwoConvexAdjacent(usize),
    ConvexReflexConvex(usize),
}

impl fmt::Display for LemmaPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LemmaPattern::TwoConvexAdjacent(k) => write!(f, "two convex corners at {k}, {}", k + 1),
            LemmaPattern::ConvexReflexConvex(k) => write!(f, "reflex corner {k} between convex corners"),
        }
    }
}

/// First convex pair, or reflex corner flanked by convex ones, in
/// traversal order.
pub fn find_lemma_pattern(l: &BoundaryLoop) -> Option<LemmaPattern> {
    let m = l.angles.len();
    let convex = |k: usize| l.angles[k % m].class == AngleClass::Convex;
    (0..m).find_map(|k| {
        if convex(k) && convex(k + 1) {
            Some(LemmaPattern::TwoConvexAdjacent(k))
        } else if !convex(k) && convex(k + m - 1) && convex(k + 1) {
            Some(LemmaPattern::ConvexReflexConvex(k))
        } else {
            None
        }
    })
}

/// Cells as filled polygons and loops as outlines.
pub fn region_svg(r: &LatticeRegion, loops: &[BoundaryLoop]) -> String {
    let cells: Vec<Vec<(f64, f64)>> = r
        .cells
        .iter()
        .map(|c| c.corners(r.n).iter().map(|&p| r.lattice_point_f64(p)).collect())
        .collect();
    let outlines: Vec<Vec<(f64, f64)>> = loops
        .iter()
        .map(|l| l.vertices.iter().map(|&p| r.lattice_point_f64(p)).collect())
        .collect();
    crate::dissect::svg_polygons(&cells, &outlines)
}
