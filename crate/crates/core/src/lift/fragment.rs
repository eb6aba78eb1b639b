use num_traits::Zero;

use crate::geometry::{
    atom_witness, edge_region_hits, param_along, region_pair_reaches, segment_intersection, sign,
    st_interval, Atom, EdgeClip, GeometricObject, LinearForm, Point, Rational, Segment,
    SegmentIntersection,
};

use super::{canonical_point, LiftError, LiftedVertex, Sheet};

/// Sub-segment of a curve piece. An open end is excluded from the piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainEdge {
    pub seg: Segment,
    pub open_start: bool,
    pub open_end: bool,
}

impl ChainEdge {
    fn clip(&self) -> EdgeClip {
        EdgeClip { open_start: self.open_start, open_end: self.open_end }
    }

    fn excludes(&self, p: &Point) -> bool {
        (self.open_start && *p == self.seg.a) || (self.open_end && *p == self.seg.b)
    }
}

/// Planar piece of one object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Piece {
    /// The whole region (disk or filled polygon).
    Whole,
    /// Region points on or right of the directed line `s -> t`.
    Lower,
    /// Region points strictly left of it.
    Upper,
    /// Connected part of a curve.
    Chain(Vec<ChainEdge>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fragment {
    pub owner: LiftedVertex,
    pub piece: Piece,
    pub sheet: Sheet,
}

/// Pieces of an object with their sheet relative to the canonical point.
#[derive(Clone, Debug)]
pub(crate) struct ObjectLift {
    pub pieces: Vec<(Piece, Sheet)>,
}

impl ObjectLift {
    pub fn fragments(&self, owner: LiftedVertex) -> Vec<Fragment> {
        self.pieces
            .iter()
            .map(|(piece, rel)| Fragment { owner, piece: piece.clone(), sheet: owner.sheet * *rel })
            .collect()
    }
}

fn side_value(p: &Point, s: &Point, t: &Point) -> Rational {
    t.sub(s).cross(&p.sub(s))
}

fn region_atom(o: &GeometricObject) -> Option<Atom<'_>> {
    match o {
        GeometricObject::Disk(d) => Some(Atom::Disk(d)),
        GeometricObject::Polygon(p) if p.filled => Some(Atom::Region(p)),
        _ => None,
    }
}

fn upper_nonempty(o: &GeometricObject, s: &Point, t: &Point) -> bool {
    match o {
        GeometricObject::Disk(d) => {
            let fc = side_value(&d.center, s, t);
            fc >= Rational::zero() || &fc * &fc < &d.radius * &d.radius * t.sub(s).norm2()
        }
        GeometricObject::Polygon(p) => p.vertices.iter().any(|v| side_value(v, s, t) > Rational::zero()),
        _ => unreachable!("regions only"),
    }
}

fn chain_pieces(chain: &[Point], closed: bool, s: &Point, t: &Point) -> Vec<(Piece, Sheet)> {
    let mut pieces: Vec<Vec<ChainEdge>> = vec![Vec::new()];
    let mut start = chain[0].clone();
    let mut start_open = false;
    for w in chain.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let (fa, fb) = (side_value(a, s, t), side_value(b, s, t));
        let crossing = if sign(&fa) * sign(&fb) < 0 {
            let x = Point::lerp(a, b, &(&fa / (&fa - &fb)));
            let lam = param_along(&x, s, t);
            (lam > Rational::zero() && lam < Rational::from_integer(1.into())).then_some(x)
        } else {
            None
        };
        if let Some(x) = crossing {
            // the crossing point belongs to whichever side is lower
            let a_above = fa > Rational::zero();
            pieces.last_mut().unwrap().push(ChainEdge {
                seg: Segment::new(start, x.clone()),
                open_start: start_open,
                open_end: a_above,
            });
            pieces.push(Vec::new());
            start = x;
            start_open = !a_above;
        }
        pieces.last_mut().unwrap().push(ChainEdge {
            seg: Segment::new(start, b.clone()),
            open_start: start_open,
            open_end: false,
        });
        start = b.clone();
        start_open = false;
    }
    if closed && pieces.len() > 1 {
        debug_assert!(pieces.len() % 2 == 1, "closed curve crossing st an odd number of times");
        let mut last = pieces.pop().unwrap();
        last.append(&mut pieces[0]);
        pieces[0] = last;
    }
    pieces
        .into_iter()
        .enumerate()
        .map(|(k, edges)| (Piece::Chain(edges), if k % 2 == 0 { Sheet::Plus } else { Sheet::Minus }))
        .collect()
}

pub(crate) fn object_lift(o: &GeometricObject, s: &Point, t: &Point) -> Result<ObjectLift, LiftError> {
    if o.is_region() {
        let meets = st_interval(o, s, t)?.is_some();
        if !meets {
            return Ok(ObjectLift { pieces: vec![(Piece::Whole, Sheet::Plus)] });
        }
        let canon_lower = side_value(&canonical_point(o), s, t) <= Rational::zero();
        let lower = if canon_lower { Sheet::Plus } else { Sheet::Minus };
        let mut pieces = vec![(Piece::Lower, lower)];
        if upper_nonempty(o, s, t) {
            pieces.push((Piece::Upper, lower.flip()));
        }
        return Ok(ObjectLift { pieces });
    }
    let chain = o.chain().expect("curve object");
    let closed = matches!(o, GeometricObject::Polygon(_));
    Ok(ObjectLift { pieces: chain_pieces(&chain, closed, s, t) })
}

/// Pieces of `owner`'s copy of `o`, each tagged with its absolute sheet.
pub fn lift_fragments(
    o: &GeometricObject,
    owner: LiftedVertex,
    s: &Point,
    t: &Point,
) -> Result<Vec<Fragment>, LiftError> {
    Ok(object_lift(o, s, t)?.fragments(owner))
}

fn region_part<'a, 'f>(
    o: &'a GeometricObject,
    p: &Piece,
    lower: &'f LinearForm,
    upper: &'f LinearForm,
) -> Option<(Atom<'a>, Option<&'f LinearForm>)> {
    let form = match p {
        Piece::Whole => None,
        Piece::Lower => Some(lower),
        Piece::Upper => Some(upper),
        Piece::Chain(_) => return None,
    };
    Some((region_atom(o).expect("region piece of a region"), form))
}

fn chain_edges(p: &Piece) -> &[ChainEdge] {
    match p {
        Piece::Chain(e) => e,
        _ => unreachable!("curve piece"),
    }
}

fn chain_edges_meet(x: &ChainEdge, y: &ChainEdge) -> bool {
    match segment_intersection(&x.seg, &y.seg) {
        SegmentIntersection::None => false,
        SegmentIntersection::Point(p) => !x.excludes(&p) && !y.excludes(&p),
        SegmentIntersection::Overlap(..) => true,
    }
}

/// Whether piece `pa` of `oa` and piece `pb` of `ob` share a point.
pub(crate) fn pieces_meet(
    oa: &GeometricObject,
    pa: &Piece,
    ob: &GeometricObject,
    pb: &Piece,
    lower: &LinearForm,
    upper: &LinearForm,
) -> bool {
    match (region_part(oa, pa, lower, upper), region_part(ob, pb, lower, upper)) {
        (Some((a, fa)), Some((b, fb))) => match (fa, fb) {
            (Some(x), Some(y)) if x.side != y.side => false,
            (x, y) => match x.or(y) {
                None => atom_witness(&a, &b).is_some(),
                Some(form) => region_pair_reaches(&a, &b, form),
            },
        },
        (Some((a, fa)), None) => chain_edges(pb).iter().any(|e| edge_region_hits(&e.seg, e.clip(), &a, fa)),
        (None, Some((b, fb))) => chain_edges(pa).iter().any(|e| edge_region_hits(&e.seg, e.clip(), &b, fb)),
        (None, None) => chain_edges(pa)
            .iter()
            .any(|x| chain_edges(pb).iter().any(|y| chain_edges_meet(x, y))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Polyline, ConvexPolygon};

    fn st() -> (Point, Point) {
        (Point::from_ints(0, 0), Point::from_ints(10, 0))
    }

    fn pt(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn sheets(f: &[Fragment]) -> Vec<i8> {
        f.iter().map(|x| x.sheet.sign()).collect()
    }

    #[test]
    fn segment_splits_at_crossing() {
        let (s, t) = st();
        let owner = LiftedVertex::new(0, Sheet::Plus);
        let f = lift_fragments(&GeometricObject::segment(5, -2, 5, 2), owner, &s, &t).unwrap();
        assert_eq!(sheets(&f), vec![1, -1]);
        assert_eq!(
            f[0].piece,
            Piece::Chain(vec![ChainEdge { seg: Segment::new(pt(5, -2), pt(5, 0)), open_start: false, open_end: false }])
        );
        assert_eq!(
            f[1].piece,
            Piece::Chain(vec![ChainEdge { seg: Segment::new(pt(5, 0), pt(5, 2)), open_start: true, open_end: false }])
        );
    }

    #[test]
    fn disjoint_disk_is_one_piece() {
        let (s, t) = st();
        let f = lift_fragments(&GeometricObject::disk(5, 3, 1), LiftedVertex::new(0, Sheet::Minus), &s, &t)
            .unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].piece, Piece::Whole);
        assert_eq!(f[0].sheet, Sheet::Minus);
    }

    #[test]
    fn polyline_alternates() {
        let (s, t) = st();
        let o = GeometricObject::Polyline(Polyline::new(vec![pt(4, 1), pt(5, -1), pt(6, 1)]).unwrap());
        let f = lift_fragments(&o, LiftedVertex::new(0, Sheet::Plus), &s, &t).unwrap();
        assert_eq!(sheets(&f), vec![1, -1, 1]);
    }

    #[test]
    fn crossing_disk_has_two_halves() {
        let (s, t) = st();
        let f = lift_fragments(&GeometricObject::disk(5, 1, 2), LiftedVertex::new(0, Sheet::Plus), &s, &t)
            .unwrap();
        assert_eq!(f.len(), 2);
        // the center is above the cut, so the upper half carries the owner's sheet
        assert_eq!(f[0].piece, Piece::Lower);
        assert_eq!(f[0].sheet, Sheet::Minus);
        assert_eq!(f[1].sheet, Sheet::Plus);
    }

    #[test]
    fn ring_merges_wraparound_piece() {
        let (s, t) = st();
        let square = GeometricObject::Polygon(
            ConvexPolygon::new(vec![pt(4, -1), pt(6, -1), pt(6, 1), pt(4, 1)], false).unwrap(),
        );
        let f = lift_fragments(&square, LiftedVertex::new(0, Sheet::Plus), &s, &t).unwrap();
        assert_eq!(sheets(&f), vec![1, -1]);
        let Piece::Chain(first) = &f[0].piece else { panic!() };
        assert_eq!(first.len(), 3);
    }

    #[test]
    fn crossing_point_belongs_to_lower_piece() {
        let (s, t) = st();
        let lower = LinearForm { origin: s.clone(), dir: t.sub(&s), side: -1, strict: false };
        let upper = LinearForm { side: 1, strict: true, ..lower.clone() };
        let seg = GeometricObject::segment(5, -2, 5, 2);
        let other = GeometricObject::segment(3, 0 - 2, 7, 2);
        let lift = object_lift(&seg, &s, &t).unwrap();
        let lift2 = object_lift(&other, &s, &t).unwrap();
        // they meet at (5, 0) exactly: both lower pieces contain it
        assert!(pieces_meet(&seg, &lift.pieces[0].0, &other, &lift2.pieces[0].0, &lower, &upper));
        assert!(!pieces_meet(&seg, &lift.pieces[1].0, &other, &lift2.pieces[1].0, &lower, &upper));
    }
}
