//! Intersection tests restricted by a half-plane. Used to decide whether two
//! pieces of objects cut along the barrier segment still meet.

use num_traits::{One, Zero};

use super::intersect::Atom;
use super::predicates::{segment_intersection, SegmentIntersection};
use super::quad::{Quad, QuadPoint};
use super::{sign, ConvexPolygon, Disk, Point, Rational, Segment};

/// `g(p) = side * cross(dir, p - origin)`, i.e. the oriented side of `p`
/// relative to the directed line through `origin` along `dir`.
#[derive(Clone, Debug)]
pub(crate) struct LinearForm {
    pub origin: Point,
    pub dir: Point,
    pub side: i8,
    /// `true` keeps only `g > 0`, `false` keeps `g >= 0`.
    pub strict: bool,
}

impl LinearForm {
    fn eval(&self, p: &Point) -> Rational {
        let v = self.dir.cross(&p.sub(&self.origin));
        if self.side < 0 {
            -v
        } else {
            v
        }
    }

    fn eval_quad(&self, p: &QuadPoint) -> Quad {
        let tip = self.origin.add(&self.dir);
        let v = p.orient_from(&self.origin, &tip);
        if self.side < 0 {
            v.scale(&-Rational::one())
        } else {
            v
        }
    }

    fn admits(&self, p: &QuadPoint) -> bool {
        let s = self.eval_quad(p).signum();
        if self.strict {
            s > 0
        } else {
            s >= 0
        }
    }

    /// Gradient direction of `g`.
    fn normal(&self) -> Point {
        let n = Point::new(-&self.dir.y, self.dir.x.clone());
        if self.side < 0 {
            n.scale(&-Rational::one())
        } else {
            n
        }
    }
}

fn in_atom(p: &QuadPoint, a: &Atom<'_>) -> bool {
    match a {
        Atom::Disk(d) => p.dist2_minus(&d.center, &(&d.radius * &d.radius)).signum() <= 0,
        Atom::Region(poly) => {
            let n = poly.vertices.len();
            (0..n).all(|i| p.orient_from(&poly.vertices[i], &poly.vertices[(i + 1) % n]).signum() >= 0)
        }
        Atom::Edge(..) => unreachable!("regions only"),
    }
}

fn extremes(a: &Atom<'_>, form: &LinearForm) -> Vec<QuadPoint> {
    match a {
        Atom::Region(poly) => poly.vertices.iter().map(QuadPoint::rational).collect(),
        Atom::Disk(d) => {
            let n = form.normal();
            let l2 = n.norm2();
            // c + r * n / |n| = c + n * (r / l2) * sqrt(l2)
            vec![QuadPoint::offset(&d.center, &n, &(&d.radius / &l2), &l2)]
        }
        Atom::Edge(..) => unreachable!("regions only"),
    }
}

fn circle_circle(d1: &Disk, d2: &Disk) -> Vec<QuadPoint> {
    let d = d2.center.sub(&d1.center);
    let dd = d.norm2();
    if dd.is_zero() {
        return vec![];
    }
    let r1s = &d1.radius * &d1.radius;
    let r2s = &d2.radius * &d2.radius;
    let a = (&dd + &r1s - &r2s) / (Rational::from_integer(2.into()) * &dd);
    let h2 = &r1s - &a * &a * &dd;
    if h2 < Rational::zero() {
        return vec![];
    }
    let m = d1.center.add(&d.scale(&a));
    let perp = Point::new(-&d.y, d.x.clone());
    let q = h2 / &dd;
    vec![
        QuadPoint::offset(&m, &perp, &Rational::one(), &q),
        QuadPoint::offset(&m, &perp, &-Rational::one(), &q),
    ]
}

fn circle_segment(d: &Disk, s: &Segment) -> Vec<QuadPoint> {
    let dir = s.b.sub(&s.a);
    let f = s.a.sub(&d.center);
    let a = dir.norm2();
    let b = Rational::from_integer(2.into()) * dir.dot(&f);
    let c = f.norm2() - &d.radius * &d.radius;
    let disc = &b * &b - Rational::from_integer(4.into()) * &a * &c;
    if disc < Rational::zero() {
        return vec![];
    }
    let two_a = Rational::from_integer(2.into()) * &a;
    let mut out = Vec::new();
    for sgn in [1i64, -1] {
        let tau = Quad::new(-&b / &two_a, Rational::from_integer(sgn.into()) / &two_a, disc.clone());
        let zero = Quad::rational(Rational::zero());
        let one = Quad::rational(Rational::one());
        if tau.cmp_exact(&zero).is_lt() || tau.cmp_exact(&one).is_gt() {
            continue;
        }
        out.push(QuadPoint {
            x: tau.scale(&dir.x).add_rational(&s.a.x),
            y: tau.scale(&dir.y).add_rational(&s.a.y),
        });
    }
    out
}

fn boundary_crossings(a: &Atom<'_>, b: &Atom<'_>) -> Vec<QuadPoint> {
    match (a, b) {
        (Atom::Disk(d1), Atom::Disk(d2)) => circle_circle(d1, d2),
        (Atom::Disk(d), Atom::Region(p)) | (Atom::Region(p), Atom::Disk(d)) => {
            p.edges().flat_map(|e| circle_segment(d, &e)).collect()
        }
        (Atom::Region(p1), Atom::Region(p2)) => {
            let mut out = Vec::new();
            for e1 in p1.edges() {
                for e2 in p2.edges() {
                    match segment_intersection(&e1, &e2) {
                        SegmentIntersection::None => {}
                        SegmentIntersection::Point(p) => out.push(QuadPoint::rational(&p)),
                        SegmentIntersection::Overlap(p, q) => {
                            out.push(QuadPoint::rational(&p));
                            out.push(QuadPoint::rational(&q));
                        }
                    }
                }
            }
            out
        }
        _ => unreachable!("regions only"),
    }
}

/// Whether the convex regions `a` and `b` share a point admitted by `form`.
///
/// The maximum of a linear function over `a ∩ b` is attained at an extreme
/// point of one region lying inside the other, or at a boundary crossing,
/// so checking those candidates is exact.
pub(crate) fn region_pair_reaches(a: &Atom<'_>, b: &Atom<'_>, form: &LinearForm) -> bool {
    let check = |p: &QuadPoint| form.admits(p) && in_atom(p, a) && in_atom(p, b);
    extremes(a, form).iter().any(check)
        || extremes(b, form).iter().any(check)
        || boundary_crossings(a, b).iter().any(check)
}

/// Open/closed flags for the ends of a chain edge.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct EdgeClip {
    pub open_start: bool,
    pub open_end: bool,
}

#[derive(Clone, Debug)]
struct ParamInterval {
    lo: Rational,
    lo_open: bool,
    hi: Rational,
    hi_open: bool,
}

impl ParamInterval {
    fn unit(clip: EdgeClip) -> Self {
        ParamInterval {
            lo: Rational::zero(),
            lo_open: clip.open_start,
            hi: Rational::one(),
            hi_open: clip.open_end,
        }
    }

    fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && (self.lo_open || self.hi_open))
    }

    /// Keep `alpha + beta * tau >= 0` (or `> 0` when strict).
    fn restrict(&mut self, alpha: Rational, beta: Rational, strict: bool) {
        match sign(&beta) {
            0 => {
                let s = sign(&alpha);
                if s < 0 || (strict && s == 0) {
                    self.lo = Rational::one();
                    self.hi = Rational::zero();
                }
            }
            1 => {
                let v = -alpha / beta;
                if v > self.lo {
                    self.lo = v;
                    self.lo_open = strict;
                } else if v == self.lo {
                    self.lo_open |= strict;
                }
            }
            _ => {
                let v = -alpha / beta;
                if v < self.hi {
                    self.hi = v;
                    self.hi_open = strict;
                } else if v == self.hi {
                    self.hi_open |= strict;
                }
            }
        }
    }

    fn contains(&self, t: &Rational) -> bool {
        let above = if self.lo_open { t > &self.lo } else { t >= &self.lo };
        let below = if self.hi_open { t < &self.hi } else { t <= &self.hi };
        above && below
    }
}

/// Whether edge `e` (with possibly excluded ends) meets region `r` at a
/// point admitted by `form`.
pub(crate) fn edge_region_hits(
    e: &Segment,
    clip: EdgeClip,
    r: &Atom<'_>,
    form: Option<&LinearForm>,
) -> bool {
    let mut j = ParamInterval::unit(clip);
    if let Some(f) = form {
        let ga = f.eval(&e.a);
        let gb = f.eval(&e.b);
        j.restrict(ga.clone(), gb - ga, f.strict);
    }
    match r {
        Atom::Region(poly) => {
            restrict_to_polygon(&mut j, e, poly);
            !j.is_empty()
        }
        Atom::Disk(d) => {
            if j.is_empty() {
                return false;
            }
            let dir = e.b.sub(&e.a);
            let f = e.a.sub(&d.center);
            let a = dir.norm2();
            let b = Rational::from_integer(2.into()) * dir.dot(&f);
            let c = f.norm2() - &d.radius * &d.radius;
            let mut t = -&b / (Rational::from_integer(2.into()) * &a);
            if t < j.lo {
                t = j.lo.clone();
            }
            if t > j.hi {
                t = j.hi.clone();
            }
            let val = &a * &t * &t + &b * &t + &c;
            match sign(&val) {
                -1 => true,
                0 => j.contains(&t),
                _ => false,
            }
        }
        Atom::Edge(..) => unreachable!("regions only"),
    }
}

fn restrict_to_polygon(j: &mut ParamInterval, e: &Segment, poly: &ConvexPolygon) {
    let n = poly.vertices.len();
    for i in 0..n {
        let (u, v) = (&poly.vertices[i], &poly.vertices[(i + 1) % n]);
        let d = v.sub(u);
        let oa = d.cross(&e.a.sub(u));
        let ob = d.cross(&e.b.sub(u));
        j.restrict(oa.clone(), ob - oa, false);
        if j.is_empty() {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rat;

    fn upper() -> LinearForm {
        LinearForm {
            origin: Point::from_ints(0, 0),
            dir: Point::from_ints(10, 0),
            side: 1,
            strict: true,
        }
    }

    fn lower_closed() -> LinearForm {
        LinearForm { side: -1, strict: false, ..upper() }
    }

    #[test]
    fn lens_across_line_reaches_both_sides() {
        let d1 = Disk::new(Point::from_ints(4, 0), rat(2));
        let d2 = Disk::new(Point::from_ints(6, 0), rat(2));
        assert!(region_pair_reaches(&Atom::Disk(&d1), &Atom::Disk(&d2), &upper()));
        assert!(region_pair_reaches(&Atom::Disk(&d1), &Atom::Disk(&d2), &lower_closed()));
    }

    #[test]
    fn lens_touching_line_from_below() {
        // lens of two disks whose top-most common point has y = 0 exactly
        let d1 = Disk::new(Point::from_ints(0, -3), rat(5)); // top at (0,2)
        let d2 = Disk::new(Point::from_ints(8, -3), rat(5)); // circles cross at (4,0),(4,-6)
        assert!(!region_pair_reaches(&Atom::Disk(&d1), &Atom::Disk(&d2), &upper()));
        assert!(region_pair_reaches(&Atom::Disk(&d1), &Atom::Disk(&d2), &lower_closed()));
    }

    #[test]
    fn edge_tangent_to_disk_at_excluded_end() {
        let d = Disk::new(Point::from_ints(0, 1), rat(1));
        let e = Segment::new(Point::from_ints(0, 0), Point::from_ints(3, -3));
        assert!(edge_region_hits(&e, EdgeClip::default(), &Atom::Disk(&d), None));
        let clip = EdgeClip { open_start: true, open_end: false };
        assert!(!edge_region_hits(&e, clip, &Atom::Disk(&d), None));
    }
}
