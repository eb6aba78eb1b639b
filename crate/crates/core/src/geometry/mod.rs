//! Exact planar primitives.
//!
//! Every coordinate is a [`Rational`]; sign decisions never touch floating
//! point. Objects are closed point sets, so boundary contact counts as
//! intersection.

mod intersect;
mod predicates;
mod quad;
mod reach;
mod st;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

pub use intersect::{intersection_witness, objects_intersect};
pub(crate) use intersect::{atom_witness, atoms, Atom};
pub use predicates::{
    closest_point_on_segment, orientation, point_in_disk, point_in_polygon, point_on_segment,
    segment_intersection, SegmentIntersection,
};
pub(crate) use predicates::point_strictly_in_polygon;
pub use quad::{Quad, QuadPoint};
pub(crate) use reach::{edge_region_hits, region_pair_reaches, EdgeClip, LinearForm};
pub use st::{crossing_parity_polyline, st_interval, UnitInterval};
pub(crate) use st::param_along;

pub type Rational = num_rational::BigRational;

pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("object is not convex")]
    NotConvex,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(rat(x), rat(y))
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn add(&self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn scale(&self, k: &Rational) -> Point {
        Point::new(&self.x * k, &self.y * k)
    }

    pub fn dot(&self, o: &Point) -> Rational {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn cross(&self, o: &Point) -> Rational {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn norm2(&self) -> Rational {
        self.dot(self)
    }

    /// `a + (b - a) * t`
    pub fn lerp(a: &Point, b: &Point, t: &Rational) -> Point {
        a.add(&b.sub(a).scale(t))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.x), to_f64(&self.y))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    pub fn is_axis_parallel(&self) -> bool {
        self.a.x == self.b.x || self.a.y == self.b.y
    }

    pub fn at(&self, t: &Rational) -> Point {
        Point::lerp(&self.a, &self.b, t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Disk {
    pub center: Point,
    pub radius: Rational,
}

impl Disk {
    pub fn new(center: Point, radius: Rational) -> Self {
        Disk { center, radius }
    }
}

/// Strictly convex polygon, counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConvexPolygon {
    pub vertices: Vec<Point>,
    pub filled: bool,
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<Point>, filled: bool) -> Result<Self, GeometryError> {
        let p = ConvexPolygon { vertices, filled };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        let n = self.vertices.len();
        if n < 3 {
            return Err(GeometryError::DegenerateConfiguration(
                "polygon needs at least 3 vertices".into(),
            ));
        }
        for i in 0..n {
            let o = orientation(
                &self.vertices[i],
                &self.vertices[(i + 1) % n],
                &self.vertices[(i + 2) % n],
            );
            if o <= 0 {
                return Err(GeometryError::NotConvex);
            }
        }
        // Strict left turns everywhere still admits star polygons; the total
        // turning must be exactly one revolution.
        let v0 = &self.vertices[0];
        for i in 1..n - 1 {
            if orientation(v0, &self.vertices[i], &self.vertices[i + 1]) <= 0 {
                return Err(GeometryError::NotConvex);
            }
        }
        Ok(())
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| {
            Segment::new(self.vertices[i].clone(), self.vertices[(i + 1) % n].clone())
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polyline {
    pub vertices: Vec<Point>,
}

/// Default cap on polyline vertex count.
pub const DEFAULT_POLYLINE_CAP: usize = 16;

impl Polyline {
    pub fn new(vertices: Vec<Point>) -> Result<Self, GeometryError> {
        let p = Polyline { vertices };
        p.validate(DEFAULT_POLYLINE_CAP)?;
        Ok(p)
    }

    pub fn validate(&self, cap: usize) -> Result<(), GeometryError> {
        if self.vertices.len() < 2 {
            return Err(GeometryError::DegenerateConfiguration(
                "polyline needs at least 2 vertices".into(),
            ));
        }
        if self.vertices.len() > cap {
            return Err(GeometryError::DegenerateConfiguration(format!(
                "polyline has {} vertices, cap is {cap}",
                self.vertices.len()
            )));
        }
        if self.vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(GeometryError::DegenerateConfiguration(
                "polyline has repeated consecutive vertices".into(),
            ));
        }
        Ok(())
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        self.vertices
            .windows(2)
            .map(|w| Segment::new(w[0].clone(), w[1].clone()))
    }

    /// True when two non-adjacent edges meet, or adjacent edges fold back.
    pub fn is_self_intersecting(&self) -> bool {
        let edges: Vec<Segment> = self.edges().collect();
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                match segment_intersection(&edges[i], &edges[j]) {
                    SegmentIntersection::None => {}
                    SegmentIntersection::Point(p) => {
                        if j != i + 1 || p != edges[i].b {
                            return true;
                        }
                    }
                    SegmentIntersection::Overlap(..) => return true,
                }
            }
        }
        false
    }
}

/// A planar input object.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GeometricObject {
    Disk(Disk),
    Segment(Segment),
    Polygon(ConvexPolygon),
    Polyline(Polyline),
}

impl GeometricObject {
    pub fn disk(cx: i64, cy: i64, r: i64) -> Self {
        GeometricObject::Disk(Disk::new(Point::from_ints(cx, cy), rat(r)))
    }

    pub fn segment(ax: i64, ay: i64, bx: i64, by: i64) -> Self {
        GeometricObject::Segment(Segment::new(Point::from_ints(ax, ay), Point::from_ints(bx, by)))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            GeometricObject::Disk(_) => "disk",
            GeometricObject::Segment(_) => "segment",
            GeometricObject::Polygon(_) => "polygon",
            GeometricObject::Polyline(_) => "polyline",
        }
    }

    /// Disk or filled polygon.
    pub fn is_region(&self) -> bool {
        match self {
            GeometricObject::Disk(_) => true,
            GeometricObject::Polygon(p) => p.filled,
            _ => false,
        }
    }

    /// Disks, segments, polygons (a closed convex boundary is treated through
    /// the region it encloses), and two-vertex polylines.
    pub fn is_convex(&self) -> bool {
        match self {
            GeometricObject::Polyline(p) => p.vertices.len() == 2,
            _ => true,
        }
    }

    /// Segments and polylines whose every edge is axis-parallel, plus
    /// unfilled polygons with axis-parallel boundaries.
    pub fn is_rectilinear(&self) -> bool {
        match self {
            GeometricObject::Segment(s) => s.is_axis_parallel(),
            GeometricObject::Polyline(p) => p.edges().all(|e| e.is_axis_parallel()),
            GeometricObject::Polygon(p) => !p.filled && p.edges().all(|e| e.is_axis_parallel()),
            GeometricObject::Disk(_) => false,
        }
    }

    /// Vertex chain for curve objects. Closed rings repeat the first vertex.
    pub fn chain(&self) -> Option<Vec<Point>> {
        match self {
            GeometricObject::Segment(s) => Some(vec![s.a.clone(), s.b.clone()]),
            GeometricObject::Polyline(p) => Some(p.vertices.clone()),
            GeometricObject::Polygon(p) if !p.filled => {
                let mut v = p.vertices.clone();
                v.push(p.vertices[0].clone());
                Some(v)
            }
            _ => None,
        }
    }

    pub fn bbox(&self) -> (Point, Point) {
        match self {
            GeometricObject::Disk(d) => (
                Point::new(&d.center.x - &d.radius, &d.center.y - &d.radius),
                Point::new(&d.center.x + &d.radius, &d.center.y + &d.radius),
            ),
            GeometricObject::Segment(s) => bbox_of([&s.a, &s.b]),
            GeometricObject::Polygon(p) => bbox_of(p.vertices.iter()),
            GeometricObject::Polyline(p) => bbox_of(p.vertices.iter()),
        }
    }

    /// Point-in-object test on the closed set.
    pub fn contains(&self, p: &Point) -> bool {
        match self {
            GeometricObject::Disk(d) => point_in_disk(p, d),
            GeometricObject::Segment(s) => point_on_segment(p, s),
            GeometricObject::Polygon(poly) if poly.filled => point_in_polygon(p, poly),
            GeometricObject::Polygon(poly) => poly.edges().any(|e| point_on_segment(p, &e)),
            GeometricObject::Polyline(pl) => pl.edges().any(|e| point_on_segment(p, &e)),
        }
    }
}

pub(crate) fn bbox_of<'a>(pts: impl IntoIterator<Item = &'a Point>) -> (Point, Point) {
    let mut it = pts.into_iter();
    let first = it.next().expect("nonempty point set");
    let (mut lo, mut hi) = (first.clone(), first.clone());
    for p in it {
        if p.x < lo.x {
            lo.x = p.x.clone();
        }
        if p.y < lo.y {
            lo.y = p.y.clone();
        }
        if p.x > hi.x {
            hi.x = p.x.clone();
        }
        if p.y > hi.y {
            hi.y = p.y.clone();
        }
    }
    (lo, hi)
}

pub(crate) fn bboxes_overlap(a: &(Point, Point), b: &(Point, Point)) -> bool {
    a.0.x <= b.1.x && b.0.x <= a.1.x && a.0.y <= b.1.y && b.0.y <= a.1.y
}

pub(crate) fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}
