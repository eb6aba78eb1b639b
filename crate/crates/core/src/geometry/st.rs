use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::predicates::{point_on_segment, segment_intersection, SegmentIntersection};
use super::quad::Quad;
use super::{sign, GeometricObject, GeometryError, Point, Polyline, Rational, Segment};

/// Sub-interval of `[0, 1]` along the barrier `s -> t`. Disk chords have
/// quadratic-irrational endpoints, so both ends are [`Quad`]s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitInterval {
    pub lo: Quad,
    pub hi: Quad,
}

impl UnitInterval {
    pub fn rational(lo: Rational, hi: Rational) -> Self {
        UnitInterval { lo: Quad::rational(lo), hi: Quad::rational(hi) }
    }

    pub fn overlaps(&self, o: &UnitInterval) -> bool {
        self.lo.cmp_exact(&o.hi) != Ordering::Greater && o.lo.cmp_exact(&self.hi) != Ordering::Greater
    }

    /// Order by `lo`, then `hi`.
    pub fn cmp_exact(&self, o: &UnitInterval) -> Ordering {
        self.lo.cmp_exact(&o.lo).then_with(|| self.hi.cmp_exact(&o.hi))
    }
}

/// Proper crossings of `path` with the open `barrier`, mod 2.
pub fn crossing_parity_polyline(path: &Polyline, barrier: &Segment) -> Result<u8, GeometryError> {
    let mut parity = 0u8;
    for v in &path.vertices {
        if point_on_segment(v, barrier) {
            return Err(GeometryError::DegenerateConfiguration(format!(
                "vertex {v:?} lies on the barrier"
            )));
        }
    }
    for e in path.edges() {
        if point_on_segment(&barrier.a, &e) || point_on_segment(&barrier.b, &e) {
            return Err(GeometryError::DegenerateConfiguration(
                "path passes through a barrier endpoint".into(),
            ));
        }
        match segment_intersection(&e, barrier) {
            SegmentIntersection::None => {}
            SegmentIntersection::Overlap(..) => {
                return Err(GeometryError::DegenerateConfiguration(
                    "path overlaps the barrier".into(),
                ))
            }
            SegmentIntersection::Point(_) => parity ^= 1,
        }
    }
    Ok(parity)
}

/// Parameter of `p` along `s -> t` (exact projection).
pub(crate) fn param_along(p: &Point, s: &Point, t: &Point) -> Rational {
    let d = t.sub(s);
    p.sub(s).dot(&d) / d.norm2()
}

/// Parameter interval of `o ∩ st` inside `[0, 1]`. Polygons are measured
/// through the region they bound.
pub fn st_interval(
    o: &GeometricObject,
    s: &Point,
    t: &Point,
) -> Result<Option<UnitInterval>, GeometryError> {
    let st = Segment::new(s.clone(), t.clone());
    match o {
        GeometricObject::Polyline(p) if p.vertices.len() > 2 => Err(GeometryError::NotConvex),
        GeometricObject::Polyline(p) => {
            segment_interval(&Segment::new(p.vertices[0].clone(), p.vertices[1].clone()), &st)
        }
        GeometricObject::Segment(seg) => segment_interval(seg, &st),
        GeometricObject::Disk(d) => {
            let dir = t.sub(s);
            let f = s.sub(&d.center);
            let a = dir.norm2();
            let b = Rational::from_integer(2.into()) * dir.dot(&f);
            let c = f.norm2() - &d.radius * &d.radius;
            let disc = &b * &b - Rational::from_integer(4.into()) * &a * &c;
            if disc < Rational::zero() {
                return Ok(None);
            }
            let two_a = Rational::from_integer(2.into()) * &a;
            let mid = -&b / &two_a;
            let half = Rational::one() / &two_a;
            let lo = Quad::new(mid.clone(), -&half, disc.clone());
            let hi = Quad::new(mid, half, disc);
            let zero = Quad::rational(Rational::zero());
            let one = Quad::rational(Rational::one());
            if hi.cmp_exact(&zero) == Ordering::Less || lo.cmp_exact(&one) == Ordering::Greater {
                return Ok(None);
            }
            let lo = if lo.cmp_exact(&zero) == Ordering::Less { zero } else { lo };
            let hi = if hi.cmp_exact(&one) == Ordering::Greater { one } else { hi };
            Ok(Some(UnitInterval { lo, hi }))
        }
        GeometricObject::Polygon(poly) => {
            let (mut lo, mut hi) = (Rational::zero(), Rational::one());
            let n = poly.vertices.len();
            for i in 0..n {
                let (u, v) = (&poly.vertices[i], &poly.vertices[(i + 1) % n]);
                let d = v.sub(u);
                let alpha = d.cross(&s.sub(u));
                let beta = d.cross(&t.sub(u)) - &alpha;
                match sign(&beta) {
                    0 => {
                        if alpha < Rational::zero() {
                            return Ok(None);
                        }
                    }
                    1 => lo = lo.max(-alpha / beta),
                    _ => hi = hi.min(-alpha / beta),
                }
            }
            Ok((lo <= hi).then(|| UnitInterval::rational(lo, hi)))
        }
    }
}

fn segment_interval(seg: &Segment, st: &Segment) -> Result<Option<UnitInterval>, GeometryError> {
    Ok(match segment_intersection(seg, st) {
        SegmentIntersection::None => None,
        SegmentIntersection::Point(p) => {
            let l = param_along(&p, &st.a, &st.b);
            Some(UnitInterval::rational(l.clone(), l))
        }
        SegmentIntersection::Overlap(p, q) => {
            let (a, b) = (param_along(&p, &st.a, &st.b), param_along(&q, &st.a, &st.b));
            Some(UnitInterval::rational(a.clone().min(b.clone()), a.max(b)))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ratio, ConvexPolygon};

    fn pt(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn poly(v: &[(i64, i64)]) -> Polyline {
        Polyline::new(v.iter().map(|&(x, y)| pt(x, y)).collect()).unwrap()
    }

    #[test]
    fn parity_examples() {
        let barrier = Segment::new(pt(0, 0), pt(10, 0));
        assert_eq!(crossing_parity_polyline(&poly(&[(5, 2), (5, -2)]), &barrier), Ok(1));
        assert_eq!(crossing_parity_polyline(&poly(&[(5, 2), (6, 2), (5, 3)]), &barrier), Ok(0));
        assert_eq!(
            crossing_parity_polyline(&poly(&[(5, 2), (5, -2), (6, -2), (6, 2)]), &barrier),
            Ok(0)
        );
        assert!(crossing_parity_polyline(&poly(&[(5, 0), (5, 2)]), &barrier).is_err());
        assert!(crossing_parity_polyline(&poly(&[(-1, 0), (3, 0)]), &barrier).is_err());
    }

    #[test]
    fn interval_examples() {
        let (s, t) = (pt(0, 0), pt(10, 0));
        let iv = st_interval(&GeometricObject::disk(5, 0, 1), &s, &t).unwrap().unwrap();
        assert_eq!(iv.lo.as_rational(), Some(ratio(2, 5)));
        assert_eq!(iv.hi.as_rational(), Some(ratio(3, 5)));
        assert_eq!(st_interval(&GeometricObject::disk(5, 3, 1), &s, &t).unwrap(), None);
        let iv = st_interval(&GeometricObject::segment(5, -2, 5, 2), &s, &t).unwrap().unwrap();
        assert_eq!(iv, UnitInterval::rational(ratio(1, 2), ratio(1, 2)));
        let tri = GeometricObject::Polygon(
            ConvexPolygon::new(vec![pt(8, -2), pt(12, -2), pt(9, 3)], true).unwrap(),
        );
        let iv = st_interval(&tri, &pt(0, 0), &pt(20, 0)).unwrap().unwrap();
        assert!(iv.lo.as_rational().unwrap() > ratio(2, 5));
        let bent = GeometricObject::Polyline(poly(&[(4, 1), (5, -1), (6, 1)]));
        assert_eq!(st_interval(&bent, &s, &t), Err(GeometryError::NotConvex));
    }

    #[test]
    fn irrational_chord() {
        let (s, t) = (pt(0, 0), pt(10, 0));
        let iv = st_interval(&GeometricObject::disk(5, 1, 2), &s, &t).unwrap().unwrap();
        let sqrt3 = 3f64.sqrt();
        assert!((iv.lo.to_f64() - (5.0 - sqrt3) / 10.0).abs() < 1e-12);
        assert!((iv.hi.to_f64() - (5.0 + sqrt3) / 10.0).abs() < 1e-12);
    }
}
