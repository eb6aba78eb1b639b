use super::predicates::{
    closest_param, point_in_disk, point_in_polygon, segment_intersection, SegmentIntersection,
};
use super::{bboxes_overlap, ConvexPolygon, Disk, GeometricObject, Point, Segment};

/// Convex building block of an object. Every object is the union of its
/// atoms, and any two atoms meet in a convex (hence connected) set.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub(crate) enum Atom<'a> {
    Disk(&'a Disk),
    Region(&'a ConvexPolygon),
    /// Edge `index` of the object's vertex chain.
    Edge(usize, Segment),
}

pub(crate) fn atoms(o: &GeometricObject) -> Vec<Atom<'_>> {
    match o {
        GeometricObject::Disk(d) => vec![Atom::Disk(d)],
        GeometricObject::Polygon(p) if p.filled => vec![Atom::Region(p)],
        _ => {
            let chain = o.chain().expect("curve object");
            chain
                .windows(2)
                .enumerate()
                .map(|(i, w)| Atom::Edge(i, Segment::new(w[0].clone(), w[1].clone())))
                .collect()
        }
    }
}

fn disk_segment_witness(d: &Disk, s: &Segment) -> Option<Point> {
    let p = s.at(&closest_param(&d.center, s));
    point_in_disk(&p, d).then_some(p)
}

fn region_segment_witness(poly: &ConvexPolygon, s: &Segment) -> Option<Point> {
    if point_in_polygon(&s.a, poly) {
        return Some(s.a.clone());
    }
    if point_in_polygon(&s.b, poly) {
        return Some(s.b.clone());
    }
    poly.edges().find_map(|e| match segment_intersection(s, &e) {
        SegmentIntersection::None => None,
        SegmentIntersection::Point(p) | SegmentIntersection::Overlap(p, _) => Some(p),
    })
}

fn disk_region_witness(d: &Disk, poly: &ConvexPolygon) -> Option<Point> {
    if point_in_polygon(&d.center, poly) {
        return Some(d.center.clone());
    }
    poly.edges().find_map(|e| disk_segment_witness(d, &e))
}

/// A common point of two atoms, if any.
pub(crate) fn atom_witness(a: &Atom<'_>, b: &Atom<'_>) -> Option<Point> {
    match (a, b) {
        (Atom::Disk(d1), Atom::Disk(d2)) => {
            let diff = d2.center.sub(&d1.center);
            let rs = &d1.radius + &d2.radius;
            if diff.norm2() > &rs * &rs {
                return None;
            }
            Some(d1.center.add(&diff.scale(&(&d1.radius / rs))))
        }
        (Atom::Disk(d), Atom::Region(p)) | (Atom::Region(p), Atom::Disk(d)) => {
            disk_region_witness(d, p)
        }
        (Atom::Disk(d), Atom::Edge(_, s)) | (Atom::Edge(_, s), Atom::Disk(d)) => {
            disk_segment_witness(d, s)
        }
        (Atom::Region(p1), Atom::Region(p2)) => p1
            .vertices
            .iter()
            .find(|v| point_in_polygon(v, p2))
            .or_else(|| p2.vertices.iter().find(|v| point_in_polygon(v, p1)))
            .cloned()
            .or_else(|| p1.edges().find_map(|e| region_segment_witness(p2, &e))),
        (Atom::Region(p), Atom::Edge(_, s)) | (Atom::Edge(_, s), Atom::Region(p)) => {
            region_segment_witness(p, s)
        }
        (Atom::Edge(_, s1), Atom::Edge(_, s2)) => match segment_intersection(s1, s2) {
            SegmentIntersection::None => None,
            SegmentIntersection::Point(p) | SegmentIntersection::Overlap(p, _) => Some(p),
        },
    }
}

/// One exact common point of two objects (respecting filled flags).
pub fn intersection_witness(o1: &GeometricObject, o2: &GeometricObject) -> Option<Point> {
    if !bboxes_overlap(&o1.bbox(), &o2.bbox()) {
        return None;
    }
    let (a1, a2) = (atoms(o1), atoms(o2));
    a1.iter()
        .find_map(|x| a2.iter().find_map(|y| atom_witness(x, y)))
}

pub fn objects_intersect(o1: &GeometricObject, o2: &GeometricObject) -> bool {
    intersection_witness(o1, o2).is_some()
}
