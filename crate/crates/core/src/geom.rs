//! Exact planar primitives over tower coordinates.
//!
//! Angles never appear as radians here. A direction or a rotation is a pair
//! of exact unit-vector components `(cos, sin)`, compared by half-plane and
//! cosine.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exact::{ExactError, TowerReal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("degenerate segment")]
    DegenerateSegment,
    #[error("degenerate triangle")]
    DegenerateTriangle,
    #[error("segment lengths differ")]
    LengthMismatch,
    #[error("rotation pair is not a unit vector")]
    NotUnit,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Point {
    pub x: TowerReal,
    pub y: TowerReal,
}

impl Point {
    pub fn new(x: TowerReal, y: TowerReal) -> Self {
        Point { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Self {
        Point::new(x.into(), y.into())
    }

    pub fn origin() -> Self {
        Point::ints(0, 0)
    }

    pub fn add(&self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn scale(&self, k: &TowerReal) -> Point {
        Point::new(&self.x * k, &self.y * k)
    }

    pub fn dot(&self, o: &Point) -> TowerReal {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn cross(&self, o: &Point) -> TowerReal {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn norm2(&self) -> TowerReal {
        self.dot(self)
    }

    pub fn dist2(&self, o: &Point) -> TowerReal {
        self.sub(o).norm2()
    }

    /// Lexicographic (x, y) order on exact values.
    pub fn lex_cmp(&self, o: &Point) -> Ordering {
        self.x.cmp(&o.x).then_with(|| self.y.cmp(&o.y))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Sign of `(q − p) × (r − p)`.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> i8 {
    q.sub(p).cross(&r.sub(p)).sign()
}

/// A unit vector, read either as a direction or as a rotation by its angle.
#[derive(Clone, PartialEq, Eq)]
pub struct Rotation {
    pub cos: TowerReal,
    pub sin: TowerReal,
}

impl Rotation {
    pub fn new(cos: TowerReal, sin: TowerReal) -> Result<Self, GeomError> {
        if (cos.square() + sin.square()) != TowerReal::one() {
            return Err(GeomError::NotUnit);
        }
        Ok(Rotation { cos, sin })
    }

    pub(crate) fn new_unchecked(cos: TowerReal, sin: TowerReal) -> Self {
        Rotation { cos, sin }
    }

    pub fn identity() -> Self {
        Rotation::new_unchecked(TowerReal::one(), TowerReal::zero())
    }

    pub fn half_turn() -> Self {
        Rotation::new_unchecked(TowerReal::from_int(-1), TowerReal::zero())
    }

    /// Unit vector of `v` given its exact length.
    pub fn along(v: &Point, length: &TowerReal) -> Self {
        let inv = TowerReal::one() / length;
        Rotation::new_unchecked(&v.x * &inv, &v.y * &inv)
    }

    pub fn as_point(&self) -> Point {
        Point::new(self.cos.clone(), self.sin.clone())
    }

    pub fn compose(&self, o: &Rotation) -> Rotation {
        Rotation::new_unchecked(
            &self.cos * &o.cos - &self.sin * &o.sin,
            &self.sin * &o.cos + &self.cos * &o.sin,
        )
    }

    pub fn inverse(&self) -> Rotation {
        Rotation::new_unchecked(self.cos.clone(), -&self.sin)
    }

    pub fn neg(&self) -> Rotation {
        Rotation::new_unchecked(-&self.cos, -&self.sin)
    }

    /// Counterclockwise angle from `self` to `to`, as a rotation.
    pub fn angle_to(&self, to: &Rotation) -> Rotation {
        Rotation::new_unchecked(
            &self.cos * &to.cos + &self.sin * &to.sin,
            &self.cos * &to.sin - &self.sin * &to.cos,
        )
    }

    pub fn rotate(&self, p: &Point) -> Point {
        Point::new(&self.cos * &p.x - &self.sin * &p.y, &self.sin * &p.x + &self.cos * &p.y)
    }

    fn half(&self) -> u8 {
        match self.sin.sign() {
            1 => 0,
            -1 => 1,
            _ => {
                if self.cos.sign() > 0 {
                    0
                } else {
                    1
                }
            }
        }
    }

    /// Compares angles in `[0, 2π)`.
    pub fn cmp_angle(&self, o: &Rotation) -> Ordering {
        let (h1, h2) = (self.half(), o.half());
        if h1 != h2 {
            return h1.cmp(&h2);
        }
        if h1 == 0 {
            o.cos.cmp(&self.cos)
        } else {
            self.cos.cmp(&o.cos)
        }
    }

    pub fn is_zero_angle(&self) -> bool {
        self.sin.sign() == 0 && self.cos.sign() > 0
    }

    /// Angle strictly between 0 and π.
    pub fn is_convex(&self) -> bool {
        self.sin.sign() > 0
    }

    pub fn is_straight(&self) -> bool {
        self.sin.sign() == 0 && self.cos.sign() < 0
    }

    pub fn to_radians_f64(&self) -> f64 {
        self.sin
            .to_f64()
            .atan2(self.cos.to_f64())
            .rem_euclid(std::f64::consts::TAU)
    }
}

impl fmt::Debug for Rotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rot({:.4} rad)", self.to_radians_f64())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }

    pub fn length2(&self) -> TowerReal {
        self.a.dist2(&self.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegmentRelation {
    Disjoint,
    /// Common points are endpoints of at least one segment, no overlap.
    TouchAtEndpoint,
    OverlapCollinear,
    Cross,
}

/// Exact classification of how two nondegenerate segments meet.
pub fn segment_interior_intersects(s1: &Segment, s2: &Segment) -> Result<SegmentRelation, GeomError> {
    if s1.a == s1.b || s2.a == s2.b {
        return Err(GeomError::DegenerateSegment);
    }
    let o1 = orientation(&s1.a, &s1.b, &s2.a);
    let o2 = orientation(&s1.a, &s1.b, &s2.b);
    let o3 = orientation(&s2.a, &s2.b, &s1.a);
    let o4 = orientation(&s2.a, &s2.b, &s1.b);

    if o1 == 0 && o2 == 0 {
        // collinear: project onto the direction of s1
        let d = s1.b.sub(&s1.a);
        let t = |p: &Point| p.sub(&s1.a).dot(&d);
        let (a0, a1) = (TowerReal::zero(), d.norm2());
        let (mut b0, mut b1) = (t(&s2.a), t(&s2.b));
        if b0 > b1 {
            std::mem::swap(&mut b0, &mut b1);
        }
        let lo = if a0 > b0 { a0 } else { b0 };
        let hi = if a1 < b1 { a1 } else { b1 };
        return Ok(match lo.cmp(&hi) {
            Ordering::Less => SegmentRelation::OverlapCollinear,
            Ordering::Equal => SegmentRelation::TouchAtEndpoint,
            Ordering::Greater => SegmentRelation::Disjoint,
        });
    }
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return Ok(SegmentRelation::Cross);
    }
    let on = |o: i8, p: &Point, s: &Segment| o == 0 && within_box(p, s);
    if on(o1, &s2.a, s1) || on(o2, &s2.b, s1) || on(o3, &s1.a, s2) || on(o4, &s1.b, s2) {
        return Ok(SegmentRelation::TouchAtEndpoint);
    }
    Ok(SegmentRelation::Disjoint)
}

fn within_box(p: &Point, s: &Segment) -> bool {
    let between = |v: &TowerReal, a: &TowerReal, b: &TowerReal| {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        lo <= v && v <= hi
    };
    between(&p.x, &s.a.x, &s.b.x) && between(&p.y, &s.a.y, &s.b.y)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    Inside,
    OnBoundary,
    Outside,
}

/// Rigid motion `x ↦ R·F(x) + t` with `F` the optional reflection across the
/// x-axis, applied before the rotation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isometry {
    pub rotation: Rotation,
    pub reflect: bool,
    pub translation: Point,
}

impl Isometry {
    pub fn identity() -> Self {
        Isometry {
            rotation: Rotation::identity(),
            reflect: false,
            translation: Point::origin(),
        }
    }

    pub fn new(rotation: Rotation, reflect: bool, translation: Point) -> Result<Self, GeomError> {
        let rotation = Rotation::new(rotation.cos, rotation.sin)?;
        Ok(Isometry {
            rotation,
            reflect,
            translation,
        })
    }

    pub fn apply(&self, p: &Point) -> Point {
        let f = if self.reflect {
            Point::new(p.x.clone(), -&p.y)
        } else {
            p.clone()
        };
        self.rotation.rotate(&f).add(&self.translation)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        // F·R = R⁻¹·F for the x-axis reflection F
        let inner = if self.reflect {
            other.rotation.inverse()
        } else {
            other.rotation.clone()
        };
        Isometry {
            rotation: self.rotation.compose(&inner),
            reflect: self.reflect ^ other.reflect,
            translation: self.apply(&other.translation),
        }
    }
}

/// The isometry of the given chirality taking `src.a → dst.a`, `src.b → dst.b`.
pub fn isometry_mapping_segment(src: &Segment, dst: &Segment, reflect: bool) -> Result<Isometry, GeomError> {
    let l2 = src.length2();
    if l2.is_zero() || dst.length2().is_zero() {
        return Err(GeomError::DegenerateSegment);
    }
    if l2 != dst.length2() {
        return Err(GeomError::LengthMismatch);
    }
    let mut s = src.b.sub(&src.a);
    if reflect {
        s.y = -&s.y;
    }
    let d = dst.b.sub(&dst.a);
    let inv = TowerReal::one() / &l2;
    let rotation = Rotation::new_unchecked(s.dot(&d) * &inv, s.cross(&d) * &inv);
    let partial = Isometry {
        rotation,
        reflect,
        translation: Point::origin(),
    };
    let translation = dst.a.sub(&partial.apply(&src.a));
    Ok(Isometry { translation, ..partial })
}

/// A triangle with exact vertices in counterclockwise order.
#[derive(Clone, PartialEq, Eq)]
pub struct PlacedTriangle {
    vertices: [Point; 3],
    tile_edge_lengths: [TowerReal; 3],
}

impl PlacedTriangle {
    /// Reorders to counterclockwise; collinear input is rejected.
    pub fn new(a: Point, b: Point, c: Point) -> Result<Self, GeomError> {
        let vertices = match orientation(&a, &b, &c) {
            1 => [a, b, c],
            -1 => [a, c, b],
            _ => return Err(GeomError::DegenerateTriangle),
        };
        let mut lengths = [
            vertices[0].dist2(&vertices[1]).sqrt()?,
            vertices[1].dist2(&vertices[2]).sqrt()?,
            vertices[2].dist2(&vertices[0]).sqrt()?,
        ];
        lengths.sort();
        Ok(PlacedTriangle {
            vertices,
            tile_edge_lengths: lengths,
        })
    }

    /// Builds from counterclockwise vertices with known edge lengths
    /// `|v0v1|, |v1v2|, |v2v0|`, skipping the square roots.
    pub(crate) fn from_parts(vertices: [Point; 3], edge_lengths: [TowerReal; 3]) -> Self {
        debug_assert_eq!(orientation(&vertices[0], &vertices[1], &vertices[2]), 1);
        let mut lengths = edge_lengths;
        lengths.sort();
        PlacedTriangle {
            vertices,
            tile_edge_lengths: lengths,
        }
    }

    pub fn vertices(&self) -> &[Point; 3] {
        &self.vertices
    }

    pub fn tile_edge_lengths(&self) -> &[TowerReal; 3] {
        &self.tile_edge_lengths
    }

    /// Squared edge lengths in counterclockwise edge order.
    pub fn squared_edges(&self) -> [TowerReal; 3] {
        let v = &self.vertices;
        [v[0].dist2(&v[1]), v[1].dist2(&v[2]), v[2].dist2(&v[0])]
    }

    /// Twice the (positive) area.
    pub fn double_area(&self) -> TowerReal {
        let v = &self.vertices;
        v[1].sub(&v[0]).cross(&v[2].sub(&v[0]))
    }

    pub fn centroid(&self) -> Point {
        let v = &self.vertices;
        v[0].add(&v[1]).add(&v[2]).scale(&TowerReal::ratio(1, 3))
    }

    pub fn contains(&self, p: &Point) -> Containment {
        point_in_triangle(p, self)
    }

    pub fn transformed(&self, iso: &Isometry) -> PlacedTriangle {
        let [a, b, c] = &self.vertices;
        let (a, b, c) = (iso.apply(a), iso.apply(b), iso.apply(c));
        let vertices = if iso.reflect { [a, c, b] } else { [a, b, c] };
        PlacedTriangle {
            vertices,
            tile_edge_lengths: self.tile_edge_lengths.clone(),
        }
    }

    /// Vertex triple rotated to start at the lexicographically smallest vertex.
    pub fn canonical_vertices(&self) -> [Point; 3] {
        let v = &self.vertices;
        let start = (0..3).min_by(|&i, &j| v[i].lex_cmp(&v[j])).expect("three vertices");
        [v[start].clone(), v[(start + 1) % 3].clone(), v[(start + 2) % 3].clone()]
    }

    pub fn cmp_canonical(&self, o: &PlacedTriangle) -> Ordering {
        let (a, b) = (self.canonical_vertices(), o.canonical_vertices());
        a.iter()
            .zip(&b)
            .map(|(p, q)| p.lex_cmp(q))
            .find(|c| *c != Ordering::Equal)
            .unwrap_or(Ordering::Equal)
    }

    pub fn same_point_set(&self, o: &PlacedTriangle) -> bool {
        self.cmp_canonical(o) == Ordering::Equal
    }
}

impl fmt::Debug for PlacedTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<(f64, f64)> = self.vertices.iter().map(Point::to_f64).collect();
        write!(f, "Tri{v:?}")
    }
}

pub fn point_in_triangle(p: &Point, t: &PlacedTriangle) -> Containment {
    let v = &t.vertices;
    let o = [
        orientation(&v[0], &v[1], p),
        orientation(&v[1], &v[2], p),
        orientation(&v[2], &v[0], p),
    ];
    if o.iter().any(|&s| s < 0) {
        Containment::Outside
    } else if o.contains(&0) {
        Containment::OnBoundary
    } else {
        Containment::Inside
    }
}

/// Sorted side lengths; equal triples mean congruent triangles (SSS).
pub fn congruence_class(t: &PlacedTriangle) -> [TowerReal; 3] {
    t.tile_edge_lengths.clone()
}

const BOUNDS_BITS: u32 = 48;

/// Outward-rounded bounding box at fixed precision. Boxes that do not meet
/// certify disjointness without exact arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub x: (BigInt, BigInt),
    pub y: (BigInt, BigInt),
}

impl Bounds {
    pub fn of_points(points: &[Point]) -> Bounds {
        let span = |f: &dyn Fn(&Point) -> &TowerReal| {
            let iv: Vec<_> = points
                .iter()
                .map(|p| f(p).enclose(BOUNDS_BITS).at_prec(BOUNDS_BITS))
                .collect();
            let lo = iv.iter().map(|i| i.lo_scaled().clone()).min().expect("nonempty");
            let hi = iv.iter().map(|i| i.hi_scaled().clone()).max().expect("nonempty");
            (lo, hi)
        };
        Bounds {
            x: span(&|p| &p.x),
            y: span(&|p| &p.y),
        }
    }

    pub fn of(t: &PlacedTriangle) -> Bounds {
        Bounds::of_points(&t.vertices)
    }

    pub fn meets(&self, o: &Bounds) -> bool {
        self.x.0 <= o.x.1 && o.x.0 <= self.x.1 && self.y.0 <= o.y.1 && o.y.0 <= self.y.1
    }
}

/// Interiors of two triangles are disjoint iff one of the six edge lines
/// separates them.
pub fn interiors_disjoint(s: &PlacedTriangle, t: &PlacedTriangle) -> bool {
    let separated_by = |a: &PlacedTriangle, b: &PlacedTriangle| {
        (0..3).any(|i| {
            let (p, q) = (&a.vertices[i], &a.vertices[(i + 1) % 3]);
            b.vertices.iter().all(|r| orientation(p, q, r) <= 0)
        })
    };
    separated_by(s, t) || separated_by(t, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_number;

    fn pt(x: &str, y: &str) -> Point {
        Point::new(parse_number(x).unwrap(), parse_number(y).unwrap())
    }

    fn seg(a: (i64, i64), b: (i64, i64)) -> Segment {
        Segment::new(Point::ints(a.0, a.1), Point::ints(b.0, b.1))
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(
            orientation(&Point::ints(0, 0), &Point::ints(1, 0), &Point::ints(0, 1)),
            1
        );
        assert_eq!(
            orientation(&Point::ints(0, 0), &Point::ints(1, 1), &Point::ints(2, 2)),
            0
        );
        let r = pt("1", "1414213/1000000 - sqrt(2)");
        assert_eq!(orientation(&Point::ints(0, 0), &Point::ints(1, 0), &r), -1);
    }

    #[test]
    fn segment_examples() {
        use SegmentRelation::*;
        assert_eq!(
            segment_interior_intersects(&seg((0, 0), (1, 0)), &seg((0, 1), (1, 1))).unwrap(),
            Disjoint
        );
        assert_eq!(
            segment_interior_intersects(&seg((0, 0), (1, 0)), &seg((1, 0), (1, 1))).unwrap(),
            TouchAtEndpoint
        );
        assert_eq!(
            segment_interior_intersects(&seg((0, 0), (2, 0)), &seg((1, 0), (3, 0))).unwrap(),
            OverlapCollinear
        );
        assert_eq!(
            segment_interior_intersects(&seg((0, 0), (2, 2)), &seg((0, 2), (2, 0))).unwrap(),
            Cross
        );
        assert_eq!(
            segment_interior_intersects(&seg((0, 0), (2, 0)), &seg((1, 0), (1, 3))).unwrap(),
            TouchAtEndpoint
        );
        assert_eq!(
            segment_interior_intersects(&seg((0, 0), (1, 0)), &seg((2, 0), (3, 0))).unwrap(),
            Disjoint
        );
        assert_eq!(
            segment_interior_intersects(&seg((0, 0), (0, 0)), &seg((2, 0), (3, 0))),
            Err(GeomError::DegenerateSegment)
        );
    }

    #[test]
    fn containment_examples() {
        let t = PlacedTriangle::new(pt("0", "0"), pt("1", "0"), pt("1/2", "1/2*sqrt(3)")).unwrap();
        assert_eq!(point_in_triangle(&t.centroid(), &t), Containment::Inside);
        assert_eq!(point_in_triangle(&t.vertices()[1], &t), Containment::OnBoundary);
        // reflect the centroid across edge v0v1 (the x-axis)
        let c = t.centroid();
        let mirrored = Point::new(c.x.clone(), -&c.y);
        assert_eq!(point_in_triangle(&mirrored, &t), Containment::Outside);
    }

    #[test]
    fn isometry_examples() {
        let id = isometry_mapping_segment(&seg((0, 0), (1, 0)), &seg((0, 0), (1, 0)), false).unwrap();
        assert_eq!(id, Isometry::identity());
        let quarter = isometry_mapping_segment(&seg((0, 0), (1, 0)), &seg((0, 0), (0, 1)), false).unwrap();
        assert_eq!(quarter.rotation, Rotation::new(0.into(), 1.into()).unwrap());
        let half = isometry_mapping_segment(&seg((0, 0), (1, 0)), &seg((1, 0), (0, 0)), false).unwrap();
        assert_eq!(half.rotation, Rotation::half_turn());
        // half-turn about (1/2, 0) fixes that point
        let centre = pt("1/2", "0");
        assert_eq!(half.apply(&centre), centre);
        assert_eq!(
            isometry_mapping_segment(&seg((0, 0), (1, 0)), &seg((0, 0), (2, 0)), false),
            Err(GeomError::LengthMismatch)
        );
    }

    #[test]
    fn congruence_examples() {
        let t = PlacedTriangle::new(Point::ints(0, 0), Point::ints(1, 0), Point::ints(0, 1)).unwrap();
        let c = congruence_class(&t);
        assert_eq!(c[0], TowerReal::one());
        assert_eq!(c[1], TowerReal::one());
        assert_eq!(c[2], parse_number("sqrt(2)").unwrap());
        let eq = PlacedTriangle::new(pt("0", "0"), pt("1", "0"), pt("1/2", "1/2*sqrt(3)")).unwrap();
        assert!(congruence_class(&eq).iter().all(|s| *s == TowerReal::one()));
    }

    #[test]
    fn rotation_order() {
        let dirs = [
            Rotation::new(1.into(), 0.into()).unwrap(),
            Rotation::new(0.into(), 1.into()).unwrap(),
            Rotation::new((-1).into(), 0.into()).unwrap(),
            Rotation::new(0.into(), (-1).into()).unwrap(),
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(dirs[i].cmp_angle(&dirs[j]), i.cmp(&j));
            }
        }
    }

    #[test]
    fn disjointness() {
        let a = PlacedTriangle::new(Point::ints(0, 0), Point::ints(1, 0), Point::ints(0, 1)).unwrap();
        let b = PlacedTriangle::new(Point::ints(1, 0), Point::ints(1, 1), Point::ints(0, 1)).unwrap();
        let c = PlacedTriangle::new(pt("1/2", "0"), pt("3/2", "0"), pt("1/2", "1")).unwrap();
        assert!(interiors_disjoint(&a, &b));
        assert!(!interiors_disjoint(&a, &c));
        assert!(!interiors_disjoint(&a, &a));
    }
}
