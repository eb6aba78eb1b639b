use crate::geometry::{
    point_on_segment, point_strictly_in_polygon, st_interval, GeometricObject, Point,
    Segment, DEFAULT_POLYLINE_CAP,
};

use super::LiftError;

/// Points `s`, `t` and the objects that survived normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub s: Point,
    pub t: Point,
    pub objects: Vec<GeometricObject>,
    /// Position of each object in the raw input.
    pub original_index: Vec<usize>,
}

impl Instance {
    pub fn n(&self) -> usize {
        self.objects.len()
    }

    /// Map instance indices back to raw input indices, sorted.
    pub fn to_original(&self, indices: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = indices.iter().map(|&i| self.original_index[i]).collect();
        out.sort_unstable();
        out
    }

    /// Copy in which every unfilled polygon meeting `st` is filled. Such a
    /// polygon encloses neither `s` nor `t`, so separating sets are the same.
    pub fn filled_view(&self) -> Instance {
        let mut out = self.clone();
        for o in &mut out.objects {
            let meets = matches!(st_interval(o, &self.s, &self.t), Ok(Some(_)));
            if let GeometricObject::Polygon(p) = o {
                p.filled |= meets;
            }
        }
        out
    }
}

/// What `normalize_instance` removed or noticed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalizationReport {
    pub input_count: usize,
    /// Raw indices of objects that separate `s` from `t` on their own.
    pub trivial_separators: Vec<usize>,
    /// `Some(1)` when a single object already separates.
    pub trivial_opt: Option<usize>,
    /// Instance indices of unfilled polygons that could be filled without
    /// changing any optimum (they enclose neither `s` nor `t`).
    pub fillable: Vec<usize>,
}

impl NormalizationReport {
    pub fn notes(&self) -> Vec<String> {
        let mut out: Vec<String> =
            self.trivial_separators.iter().map(|i| format!("trivial separator: object {i}")).collect();
        if !self.fillable.is_empty() {
            out.push(format!("{} polygon(s) may be treated as filled", self.fillable.len()));
        }
        out
    }
}

/// Deterministic point of `o`.
pub fn canonical_point(o: &GeometricObject) -> Point {
    match o {
        GeometricObject::Disk(d) => d.center.clone(),
        GeometricObject::Segment(s) => s.a.clone(),
        GeometricObject::Polygon(p) => p.vertices[0].clone(),
        GeometricObject::Polyline(p) => p.vertices[0].clone(),
    }
}

fn on_boundary(o: &GeometricObject, p: &Point) -> bool {
    match o {
        GeometricObject::Disk(d) => p.sub(&d.center).norm2() == &d.radius * &d.radius,
        GeometricObject::Polygon(poly) => poly.edges().any(|e| point_on_segment(p, &e)),
        _ => o.contains(p),
    }
}

/// Whether `o` alone separates `s` from `t`.
pub fn single_object_separates(o: &GeometricObject, s: &Point, t: &Point) -> Result<bool, LiftError> {
    for (name, p) in [("s", s), ("t", t)] {
        if on_boundary(o, p) {
            return Err(LiftError::PointOnObject(format!("{name} = {p:?}")));
        }
    }
    Ok(match o {
        GeometricObject::Disk(_) => o.contains(s) || o.contains(t),
        GeometricObject::Polygon(p) if p.filled => o.contains(s) || o.contains(t),
        GeometricObject::Polygon(p) => point_strictly_in_polygon(s, p) != point_strictly_in_polygon(t, p),
        _ => false,
    })
}

fn validate(o: &GeometricObject) -> Result<(), String> {
    match o {
        GeometricObject::Disk(d) => {
            if d.radius <= crate::geometry::rat(0) {
                return Err("radius must be positive".into());
            }
        }
        GeometricObject::Segment(s) => {
            if s.is_degenerate() {
                return Err("segment endpoints coincide".into());
            }
        }
        GeometricObject::Polygon(p) => p.validate().map_err(|e| e.to_string())?,
        GeometricObject::Polyline(p) => {
            p.validate(DEFAULT_POLYLINE_CAP).map_err(|e| e.to_string())?;
            if p.is_self_intersecting() {
                return Err("polyline is self-intersecting".into());
            }
        }
    }
    Ok(())
}

fn vertices(o: &GeometricObject) -> Vec<&Point> {
    match o {
        GeometricObject::Disk(_) => vec![],
        GeometricObject::Segment(s) => vec![&s.a, &s.b],
        GeometricObject::Polygon(p) => p.vertices.iter().collect(),
        GeometricObject::Polyline(p) => p.vertices.iter().collect(),
    }
}

/// Reasons `o` breaks general position relative to `st`.
fn general_position(o: &GeometricObject, st: &Segment) -> Result<(), String> {
    for v in vertices(o) {
        if point_on_segment(v, st) {
            return Err(format!("vertex {v:?} lies on st"));
        }
    }
    Ok(())
}

/// Validate raw objects, drop single-object separators and build the
/// immutable instance.
pub fn normalize_instance(
    objects: Vec<GeometricObject>,
    s: Point,
    t: Point,
) -> Result<(Instance, NormalizationReport), LiftError> {
    if s == t {
        return Err(LiftError::DegenerateConfiguration("s and t coincide".into()));
    }
    let st = Segment::new(s.clone(), t.clone());
    let mut report = NormalizationReport { input_count: objects.len(), ..Default::default() };
    let mut problems = Vec::new();
    let mut kept = Vec::new();
    let mut original_index = Vec::new();
    for (i, o) in objects.into_iter().enumerate() {
        if let Err(e) = validate(&o) {
            problems.push(format!("object {i}: {e}"));
            continue;
        }
        match single_object_separates(&o, &s, &t) {
            Err(e) => {
                problems.push(format!("object {i}: {e}"));
                continue;
            }
            Ok(true) => {
                report.trivial_separators.push(i);
                continue;
            }
            Ok(false) => {}
        }
        if let Err(e) = general_position(&o, &st) {
            problems.push(format!("object {i}: {e}"));
            continue;
        }
        kept.push(o);
        original_index.push(i);
    }
    if !problems.is_empty() {
        return Err(LiftError::DegenerateConfiguration(problems.join("; ")));
    }
    if !report.trivial_separators.is_empty() {
        report.trivial_opt = Some(1);
    }
    for (i, o) in kept.iter().enumerate() {
        if let GeometricObject::Polygon(p) = o {
            if !p.filled && !point_strictly_in_polygon(&s, p) && !point_strictly_in_polygon(&t, p) {
                report.fillable.push(i);
            }
        }
    }
    Ok((Instance { s, t, objects: kept, original_index }, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ConvexPolygon;

    fn st() -> (Point, Point) {
        (Point::from_ints(0, 0), Point::from_ints(10, 0))
    }

    #[test]
    fn single_object_examples() {
        let (s, t) = st();
        assert_eq!(single_object_separates(&GeometricObject::disk(0, 0, 1), &s, &t), Ok(true));
        assert_eq!(single_object_separates(&GeometricObject::segment(5, -2, 5, 2), &s, &t), Ok(false));
        let square = GeometricObject::Polygon(
            ConvexPolygon::new(
                vec![
                    Point::from_ints(-1, -1),
                    Point::from_ints(1, -1),
                    Point::from_ints(1, 1),
                    Point::from_ints(-1, 1),
                ],
                true,
            )
            .unwrap(),
        );
        assert_eq!(single_object_separates(&square, &s, &t), Ok(true));
        assert!(matches!(
            single_object_separates(&GeometricObject::disk(1, 0, 1), &s, &t),
            Err(LiftError::PointOnObject(_))
        ));
    }

    #[test]
    fn canonical_points() {
        assert_eq!(canonical_point(&GeometricObject::disk(5, 3, 1)), Point::from_ints(5, 3));
        assert_eq!(canonical_point(&GeometricObject::segment(5, -2, 5, 2)), Point::from_ints(5, -2));
    }

    #[test]
    fn removes_trivial_separator() {
        let (s, t) = st();
        let (inst, report) = normalize_instance(
            vec![GeometricObject::disk(0, 0, 1), GeometricObject::disk(5, 3, 1)],
            s,
            t,
        )
        .unwrap();
        assert_eq!(inst.n(), 1);
        assert_eq!(inst.original_index, vec![1]);
        assert_eq!(report.trivial_separators, vec![0]);
        assert_eq!(report.trivial_opt, Some(1));
        assert_eq!(report.notes()[0], "trivial separator: object 0");
    }

    #[test]
    fn generic_disks_unchanged() {
        let (s, t) = st();
        let objs = vec![
            GeometricObject::disk(3, 3, 1),
            GeometricObject::disk(5, -4, 2),
            GeometricObject::disk(7, 1, 2),
        ];
        let (inst, report) = normalize_instance(objs.clone(), s, t).unwrap();
        assert_eq!(inst.objects, objs);
        assert!(report.trivial_separators.is_empty());
    }

    #[test]
    fn endpoint_on_st_is_rejected() {
        let (s, t) = st();
        let err = normalize_instance(vec![GeometricObject::segment(5, 0, 5, 3)], s, t).unwrap_err();
        assert!(matches!(err, LiftError::DegenerateConfiguration(_)));
    }

    #[test]
    fn segment_through_s_is_rejected() {
        let (s, t) = st();
        assert!(normalize_instance(vec![GeometricObject::segment(0, -1, 0, 1)], s, t).is_err());
    }
}
