//! Two-sheet cover of the plane punctured at `s` and `t`.
//!
//! The cut is the segment `st`. A point is "lower" when it lies on or to the
//! right of the directed line `s -> t` and "upper" otherwise, so points of the
//! cut itself belong to the lower side. Every object splits into pieces along
//! the cut; walking across the cut flips the sheet.

mod fragment;
mod normalize;
mod witness;

use std::fmt;
use std::ops::Mul;
use std::sync::OnceLock;

use thiserror::Error;

use crate::geometry::{bboxes_overlap, GeometricObject, GeometryError, LinearForm, Point};
use crate::sssp::RectIndex;

pub use fragment::{lift_fragments, ChainEdge, Fragment, Piece};
pub(crate) use fragment::{object_lift, pieces_meet, ObjectLift};
pub use normalize::{
    canonical_point, normalize_instance, single_object_separates, Instance, NormalizationReport,
};
pub use witness::witness_adjacent;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiftError {
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("{0} lies on the boundary of the object")]
    PointOnObject(String),
}

impl From<GeometryError> for LiftError {
    fn from(e: GeometryError) -> Self {
        LiftError::DegenerateConfiguration(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sheet {
    Minus,
    Plus,
}

impl Sheet {
    pub const BOTH: [Sheet; 2] = [Sheet::Minus, Sheet::Plus];

    pub fn sign(self) -> i8 {
        match self {
            Sheet::Minus => -1,
            Sheet::Plus => 1,
        }
    }

    pub fn from_sign(s: i8) -> Sheet {
        if s < 0 {
            Sheet::Minus
        } else {
            Sheet::Plus
        }
    }

    pub fn flip(self) -> Sheet {
        match self {
            Sheet::Minus => Sheet::Plus,
            Sheet::Plus => Sheet::Minus,
        }
    }
}

impl Mul for Sheet {
    type Output = Sheet;

    fn mul(self, o: Sheet) -> Sheet {
        if self == o {
            Sheet::Plus
        } else {
            Sheet::Minus
        }
    }
}

/// The copy `c^b` of object `c` on sheet `b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LiftedVertex {
    pub object: usize,
    pub sheet: Sheet,
}

impl LiftedVertex {
    pub fn new(object: usize, sheet: Sheet) -> Self {
        LiftedVertex { object, sheet }
    }

    /// Dense id: `2 * object + (sheet == Plus)`.
    pub fn id(self) -> usize {
        2 * self.object + usize::from(self.sheet == Sheet::Plus)
    }

    pub fn from_id(id: usize) -> Self {
        let sheet = if id % 2 == 1 { Sheet::Plus } else { Sheet::Minus };
        LiftedVertex { object: id / 2, sheet }
    }

    pub fn flip(self) -> Self {
        LiftedVertex { object: self.object, sheet: self.sheet.flip() }
    }
}

impl fmt::Debug for LiftedVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.object, if self.sheet == Sheet::Plus { "+" } else { "-" })
    }
}

/// Bit set over sheet products `b1 * b2` for which two objects' copies meet.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ProductMask(u8);

impl ProductMask {
    pub const EMPTY: ProductMask = ProductMask(0);

    fn bit(p: Sheet) -> u8 {
        if p == Sheet::Plus {
            1
        } else {
            2
        }
    }

    pub fn contains(self, p: Sheet) -> bool {
        self.0 & Self::bit(p) != 0
    }

    pub fn insert(&mut self, p: Sheet) {
        self.0 |= Self::bit(p);
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn count(self) -> u32 {
        self.0.count_ones()
    }
}

/// An instance together with its lifted objects.
pub struct LiftedInstance {
    instance: Instance,
    lifts: Vec<ObjectLift>,
    bboxes: Vec<(Point, Point)>,
    lower: LinearForm,
    upper: LinearForm,
    adjacency: OnceLock<Vec<Vec<u32>>>,
    pub(crate) rect: OnceLock<Result<RectIndex, String>>,
}

impl LiftedInstance {
    pub fn new(instance: Instance) -> Result<Self, LiftError> {
        let lifts = instance
            .objects
            .iter()
            .map(|o| object_lift(o, &instance.s, &instance.t))
            .collect::<Result<Vec<_>, _>>()?;
        let bboxes = instance.objects.iter().map(GeometricObject::bbox).collect();
        let dir = instance.t.sub(&instance.s);
        let lower = LinearForm { origin: instance.s.clone(), dir: dir.clone(), side: -1, strict: false };
        let upper = LinearForm { origin: instance.s.clone(), dir, side: 1, strict: true };
        Ok(LiftedInstance {
            instance,
            lifts,
            bboxes,
            lower,
            upper,
            adjacency: OnceLock::new(),
            rect: OnceLock::new(),
        })
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn n(&self) -> usize {
        self.instance.objects.len()
    }

    pub fn object(&self, i: usize) -> &GeometricObject {
        &self.instance.objects[i]
    }

    pub(crate) fn lift(&self, i: usize) -> &ObjectLift {
        &self.lifts[i]
    }

    pub fn fragments(&self, v: LiftedVertex) -> Vec<Fragment> {
        self.lifts[v.object].fragments(v)
    }

    /// Sheet products under which copies of `a` and `b` meet.
    pub fn products(&self, a: usize, b: usize) -> ProductMask {
        let mut mask = ProductMask::EMPTY;
        if a == b || !bboxes_overlap(&self.bboxes[a], &self.bboxes[b]) {
            return mask;
        }
        let (oa, ob) = (&self.instance.objects[a], &self.instance.objects[b]);
        for (pa, sa) in &self.lifts[a].pieces {
            for (pb, sb) in &self.lifts[b].pieces {
                let p = *sa * *sb;
                if !mask.contains(p) && pieces_meet(oa, pa, ob, pb, &self.lower, &self.upper) {
                    mask.insert(p);
                }
            }
        }
        mask
    }

    /// Sorted neighbor ids of every lifted vertex. Built once, on demand.
    pub fn adjacency(&self) -> &[Vec<u32>] {
        self.adjacency.get_or_init(|| {
            let n = self.n();
            let mut adj = vec![Vec::new(); 2 * n];
            for a in 0..n {
                for b in a + 1..n {
                    let mask = self.products(a, b);
                    for sa in Sheet::BOTH {
                        for sb in Sheet::BOTH {
                            if mask.contains(sa * sb) {
                                let (u, v) = (LiftedVertex::new(a, sa).id(), LiftedVertex::new(b, sb).id());
                                adj[u].push(v as u32);
                                adj[v].push(u as u32);
                            }
                        }
                    }
                }
            }
            for list in &mut adj {
                list.sort_unstable();
            }
            adj
        })
    }

    pub(crate) fn has_adjacency(&self) -> bool {
        self.adjacency.get().is_some()
    }
}

/// Whether `u` and `v` share a point of equal sheet.
pub fn lifted_adjacent(li: &LiftedInstance, u: LiftedVertex, v: LiftedVertex) -> bool {
    if u.object == v.object {
        return false;
    }
    if li.has_adjacency() {
        return li.adjacency()[u.id()].binary_search(&(v.id() as u32)).is_ok();
    }
    li.products(u.object, v.object).contains(u.sheet * v.sheet)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lifted(objects: Vec<GeometricObject>) -> LiftedInstance {
        let (inst, _) =
            normalize_instance(objects, Point::from_ints(0, 0), Point::from_ints(10, 0)).unwrap();
        LiftedInstance::new(inst).unwrap()
    }

    #[test]
    fn vertex_ids_round_trip() {
        for id in 0..10 {
            assert_eq!(LiftedVertex::from_id(id).id(), id);
        }
        assert_eq!(LiftedVertex::new(3, Sheet::Plus).id(), 7);
    }

    #[test]
    fn adjacency_examples() {
        let li = lifted(vec![GeometricObject::segment(5, -2, 5, 2), GeometricObject::segment(4, 1, 6, 1)]);
        let u = LiftedVertex::new(0, Sheet::Plus);
        let v = LiftedVertex::new(1, Sheet::Minus);
        assert!(lifted_adjacent(&li, u, v));
        assert!(witness_adjacent(&li, u, v));
        assert!(!lifted_adjacent(&li, u, v.flip()));

        let li = lifted(vec![GeometricObject::disk(5, 3, 1), GeometricObject::disk(5, 6, 1)]);
        assert!(!lifted_adjacent(&li, LiftedVertex::new(0, Sheet::Plus), LiftedVertex::new(1, Sheet::Minus)));

        let li = lifted(vec![GeometricObject::disk(5, 3, 1), GeometricObject::disk(5, 4, 1)]);
        assert!(lifted_adjacent(&li, LiftedVertex::new(0, Sheet::Plus), LiftedVertex::new(1, Sheet::Plus)));
        assert!(!lifted_adjacent(&li, LiftedVertex::new(0, Sheet::Plus), LiftedVertex::new(1, Sheet::Minus)));
    }

    #[test]
    fn copies_of_one_object_never_touch() {
        let li = lifted(vec![GeometricObject::disk(5, 0, 2)]);
        assert!(!lifted_adjacent(&li, LiftedVertex::new(0, Sheet::Minus), LiftedVertex::new(0, Sheet::Plus)));
    }

    #[test]
    fn table_matches_direct_products() {
        let li = lifted(vec![
            GeometricObject::disk(3, 0, 2),
            GeometricObject::segment(4, -3, 4, 3),
            GeometricObject::segment(2, 1, 6, 1),
            GeometricObject::disk(5, -2, 1),
        ]);
        let mut direct = Vec::new();
        for a in 0..8 {
            for b in 0..8 {
                direct.push(lifted_adjacent(&li, LiftedVertex::from_id(a), LiftedVertex::from_id(b)));
            }
        }
        li.adjacency();
        let mut cached = Vec::new();
        for a in 0..8 {
            for b in 0..8 {
                cached.push(lifted_adjacent(&li, LiftedVertex::from_id(a), LiftedVertex::from_id(b)));
            }
        }
        assert_eq!(direct, cached);
    }
}
