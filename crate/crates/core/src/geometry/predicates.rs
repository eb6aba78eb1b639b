use super::{sign, ConvexPolygon, Disk, Point, Rational, Segment};
use num_traits::{One, Zero};

/// Sign of the signed area of triangle `pqr`: +1 counterclockwise, -1
/// clockwise, 0 collinear.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> i8 {
    sign(&q.sub(p).cross(&r.sub(p)))
}

pub fn point_in_disk(p: &Point, d: &Disk) -> bool {
    p.sub(&d.center).norm2() <= &d.radius * &d.radius
}

/// Closed containment in a counterclockwise convex polygon's region.
pub fn point_in_polygon(p: &Point, poly: &ConvexPolygon) -> bool {
    let n = poly.vertices.len();
    (0..n).all(|i| orientation(&poly.vertices[i], &poly.vertices[(i + 1) % n], p) >= 0)
}

pub(crate) fn point_strictly_in_polygon(p: &Point, poly: &ConvexPolygon) -> bool {
    let n = poly.vertices.len();
    (0..n).all(|i| orientation(&poly.vertices[i], &poly.vertices[(i + 1) % n], p) > 0)
}

pub fn point_on_segment(p: &Point, s: &Segment) -> bool {
    orientation(&s.a, &s.b, p) == 0 && in_box(p, &s.a, &s.b)
}

fn in_box(p: &Point, a: &Point, b: &Point) -> bool {
    let (xl, xh) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (yl, yh) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    &p.x >= xl && &p.x <= xh && &p.y >= yl && &p.y <= yh
}

/// Parameter of the point of `s` nearest to `p`, clamped to `[0, 1]`.
pub(crate) fn closest_param(p: &Point, s: &Segment) -> Rational {
    let d = s.b.sub(&s.a);
    let len2 = d.norm2();
    if len2.is_zero() {
        return Rational::zero();
    }
    let t = p.sub(&s.a).dot(&d) / len2;
    clamp01(t)
}

pub(crate) fn clamp01(t: Rational) -> Rational {
    if t < Rational::zero() {
        Rational::zero()
    } else if t > Rational::one() {
        Rational::one()
    } else {
        t
    }
}

pub fn closest_point_on_segment(p: &Point, s: &Segment) -> Point {
    s.at(&closest_param(p, s))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentIntersection {
    None,
    Point(Point),
    /// Collinear overlap, endpoints ordered along the first segment.
    Overlap(Point, Point),
}

/// Exact intersection of two closed segments.
pub fn segment_intersection(s1: &Segment, s2: &Segment) -> SegmentIntersection {
    let o1 = orientation(&s1.a, &s1.b, &s2.a);
    let o2 = orientation(&s1.a, &s1.b, &s2.b);
    let o3 = orientation(&s2.a, &s2.b, &s1.a);
    let o4 = orientation(&s2.a, &s2.b, &s1.b);

    if o1 == 0 && o2 == 0 {
        // collinear: project onto s1's direction
        let d = s1.b.sub(&s1.a);
        let len2 = d.norm2();
        let param = |p: &Point| p.sub(&s1.a).dot(&d) / &len2;
        let (mut lo, mut hi) = (param(&s2.a), param(&s2.b));
        if lo > hi {
            std::mem::swap(&mut lo, &mut hi);
        }
        let lo = if lo < Rational::zero() { Rational::zero() } else { lo };
        let hi = if hi > Rational::one() { Rational::one() } else { hi };
        return match lo.cmp(&hi) {
            std::cmp::Ordering::Greater => SegmentIntersection::None,
            std::cmp::Ordering::Equal => SegmentIntersection::Point(s1.at(&lo)),
            std::cmp::Ordering::Less => SegmentIntersection::Overlap(s1.at(&lo), s1.at(&hi)),
        };
    }
    if o1 * o2 > 0 || o3 * o4 > 0 {
        return SegmentIntersection::None;
    }
    // Lines cross at a single point inside both segments.
    let d1 = s1.b.sub(&s1.a);
    let d2 = s2.b.sub(&s2.a);
    let denom = d1.cross(&d2);
    let t = s2.a.sub(&s1.a).cross(&d2) / denom;
    SegmentIntersection::Point(s1.at(&t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orientation(&p(0, 0), &p(1, 0), &p(0, 1)), 1);
        assert_eq!(orientation(&p(0, 0), &p(1, 1), &p(2, 2)), 0);
        assert_eq!(orientation(&p(0, 0), &p(0, 1), &p(1, 0)), -1);
    }

    #[test]
    fn crossing_segments_meet_at_center() {
        let s1 = Segment::new(p(0, 0), p(2, 2));
        let s2 = Segment::new(p(0, 2), p(2, 0));
        assert_eq!(segment_intersection(&s1, &s2), SegmentIntersection::Point(p(1, 1)));
    }

    #[test]
    fn collinear_overlap_and_touch() {
        let s1 = Segment::new(p(0, 0), p(4, 0));
        let s2 = Segment::new(p(6, 0), p(2, 0));
        assert_eq!(
            segment_intersection(&s1, &s2),
            SegmentIntersection::Overlap(p(2, 0), p(4, 0))
        );
        let s3 = Segment::new(p(4, 0), p(5, 0));
        assert_eq!(segment_intersection(&s1, &s3), SegmentIntersection::Point(p(4, 0)));
        let s4 = Segment::new(p(5, 0), p(6, 0));
        assert_eq!(segment_intersection(&s1, &s4), SegmentIntersection::None);
    }

    #[test]
    fn t_junction_counts() {
        let s1 = Segment::new(p(0, 0), p(4, 0));
        let s2 = Segment::new(p(2, 0), p(2, 3));
        assert_eq!(segment_intersection(&s1, &s2), SegmentIntersection::Point(p(2, 0)));
    }
}
