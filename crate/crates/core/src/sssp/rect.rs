//! Decremental intersection reporting for axis-parallel pieces.
//!
//! Coordinates are replaced by "doubled ranks": a value of rank `r` becomes
//! `2r`, an excluded lower end `2r + 1` and an excluded upper end `2r - 1`.
//! Open and closed endpoints then compare correctly as plain integers.
//!
//! Per sheet, horizontal pieces are found from a vertical query by an outer
//! segment tree over their `y`, whose nodes hold the pieces sorted by left end
//! with a max tree over right ends (a stabbing structure). Deleting a piece
//! sets its right end to `DEAD`. Collinear overlaps are looked up in groups
//! keyed by the shared coordinate.

use std::borrow::Cow;

use crate::geometry::Rational;
use crate::lift::{LiftedInstance, LiftedVertex, Piece, Sheet};

use super::{NeighborOracle, ObjectSet, SsspError};

const DEAD: i32 = i32::MIN;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Item {
    sheet: Sheet,
    horizontal: bool,
    fixed: i32,
    lo: i32,
    hi: i32,
}

/// Entries sorted by `lo` with a max tree over `hi` living in shared state.
/// `lo` and owners are stored in the shared [`Keys`] arrays at `off`.
#[derive(Clone, Copy, Debug, Default)]
struct Stab {
    off: u32,
    len: u32,
    base: u32,
    /// Start of this node's prefix counts in [`Keys::left`], for [`Cross`].
    left: u32,
}

/// Flat storage for every stab's sorted `lo` values and owners.
#[derive(Clone, Debug, Default)]
struct Keys {
    lo: Vec<i32>,
    owner: Vec<u32>,
    left: Vec<u32>,
}

/// Mutable query context: the max trees, alive flags and the output buffer.
struct Ctx<'s> {
    keys: &'s Keys,
    st: &'s mut [i32],
    alive: &'s mut [bool],
    out: &'s mut Vec<u32>,
}

impl Stab {
    fn off(&self) -> usize {
        self.off as usize
    }

    fn len(&self) -> usize {
        self.len as usize
    }

    fn base(&self) -> usize {
        self.base as usize
    }

    fn build(mut entries: Vec<(i32, i32, u32)>, keys: &mut Keys, state: &mut Vec<i32>) -> Stab {
        if entries.is_empty() {
            return Stab::default();
        }
        entries.sort_unstable();
        let base = state.len();
        state.resize(base + 2 * entries.len() - 1, DEAD);
        fill(&mut state[base..], &entries);
        let off = keys.lo.len();
        keys.lo.extend(entries.iter().map(|e| e.0));
        keys.owner.extend(entries.iter().map(|e| e.2));
        Stab { off: off as u32, len: entries.len() as u32, base: base as u32, left: 0 }
    }

    /// Remove every entry with `lo <= lo_max` and `hi >= hi_min`, reporting
    /// owners that were still alive.
    fn report(&self, cx: &mut Ctx, lo_max: i32, hi_min: i32) {
        if self.len() == 0 || cx.st[self.base()] < hi_min {
            return;
        }
        let lo = &cx.keys.lo[self.off()..self.off() + self.len()];
        if lo[0] > lo_max {
            return;
        }
        let k = lo.partition_point(|&x| x <= lo_max);
        self.visit(cx, self.base(), 0, self.len(), k, hi_min);
    }

    /// Nodes are in preorder: the left child of `[l, r)` follows it and the
    /// right child starts after the `2 * (mid - l) - 1` slots of the left.
    fn visit(&self, cx: &mut Ctx, node: usize, l: usize, r: usize, k: usize, hi_min: i32) {
        if l >= k || cx.st[node] < hi_min {
            return;
        }
        if r - l == 1 {
            cx.st[node] = DEAD;
            let o = cx.keys.owner[self.off() + l];
            if cx.alive[o as usize] {
                cx.alive[o as usize] = false;
                cx.out.push(o);
            }
            return;
        }
        let mid = (l + r) / 2;
        let (left, right) = (node + 1, node + 2 * (mid - l));
        self.visit(cx, left, l, mid, k, hi_min);
        self.visit(cx, right, mid, r, k, hi_min);
        cx.st[node] = cx.st[left].max(cx.st[right]);
    }
}

fn fill(st: &mut [i32], entries: &[(i32, i32, u32)]) -> i32 {
    if entries.len() == 1 {
        st[0] = entries[0].1;
        return st[0];
    }
    let mid = entries.len() / 2;
    let (_, rest) = st.split_at_mut(1);
    let (left, right) = rest.split_at_mut(2 * mid - 1);
    st[0] = fill(left, &entries[..mid]).max(fill(right, &entries[mid..]));
    st[0]
}

/// Pieces with a fixed coordinate, queried by a range of that coordinate
/// and a point on the other axis. Every node's stab holds the merge of its
/// children, and `left` maps a prefix of a node's entries to the length of
/// the matching prefix in its left child, so only the root is searched.
#[derive(Clone, Debug, Default)]
struct Cross {
    fixed: Vec<i32>,
    size: usize,
    nodes: Vec<Stab>,
}

impl Cross {
    fn build(mut entries: Vec<(i32, i32, i32, u32)>, keys: &mut Keys, state: &mut Vec<i32>) -> Cross {
        entries.sort_unstable();
        let m = entries.len();
        if m == 0 {
            return Cross::default();
        }
        let size = m.next_power_of_two();
        let mut lists: Vec<Vec<(i32, i32, u32)>> = vec![Vec::new(); 2 * size];
        for (i, e) in entries.iter().enumerate() {
            lists[size + i].push((e.1, e.2, e.3));
        }
        let mut left = vec![0; size];
        for node in (1..size).rev() {
            let mut tagged: Vec<_> = lists[2 * node].iter().map(|&e| (e, 0usize)).collect();
            tagged.extend(lists[2 * node + 1].iter().map(|&e| (e, 1)));
            tagged.sort_unstable();
            left[node] = keys.left.len();
            keys.left.push(0);
            let mut count = 0;
            for &(_, side) in &tagged {
                count += 1 - side;
                keys.left.push(count as u32);
            }
            lists[node] = tagged.into_iter().map(|(e, _)| e).collect();
        }
        let mut nodes: Vec<Stab> = lists.into_iter().map(|l| Stab::build(l, keys, state)).collect();
        for (node, &start) in left.iter().enumerate() {
            nodes[node].left = start as u32;
        }
        Cross { fixed: entries.iter().map(|e| e.0).collect(), size, nodes }
    }

    fn report(&self, cx: &mut Ctx, f1: i32, f2: i32, lo_max: i32, hi_min: i32) {
        if self.size == 0 {
            return;
        }
        let l = self.fixed.partition_point(|&x| x < f1);
        let r = self.fixed.partition_point(|&x| x <= f2);
        if l >= r {
            return;
        }
        let root = &self.nodes[1];
        let k = cx.keys.lo[root.off()..root.off() + root.len()].partition_point(|&x| x <= lo_max);
        self.descend(cx, 1, 0, self.size, (l, r), k, hi_min);
    }

    #[allow(clippy::too_many_arguments)]
    fn descend(&self, cx: &mut Ctx, node: usize, a: usize, b: usize, range: (usize, usize), k: usize, hi_min: i32) {
        let stab = &self.nodes[node];
        if k == 0 || b <= range.0 || range.1 <= a || cx.st[stab.base()] < hi_min {
            return;
        }
        if range.0 <= a && b <= range.1 {
            stab.visit(cx, stab.base(), 0, stab.len(), k, hi_min);
            return;
        }
        let kl = cx.keys.left[stab.left as usize + k] as usize;
        let mid = (a + b) / 2;
        self.descend(cx, 2 * node, a, mid, range, kl, hi_min);
        self.descend(cx, 2 * node + 1, mid, b, range, k - kl, hi_min);
    }
}

/// Pieces grouped by their fixed coordinate, for collinear overlaps.
#[derive(Clone, Debug, Default)]
struct Groups {
    keys: Vec<i32>,
    stabs: Vec<Stab>,
}

impl Groups {
    fn build(mut entries: Vec<(i32, i32, i32, u32)>, keys: &mut Keys, state: &mut Vec<i32>) -> Groups {
        entries.sort_unstable();
        let mut g = Groups::default();
        for chunk in entries.chunk_by(|a, b| a.0 == b.0) {
            g.keys.push(chunk[0].0);
            g.stabs.push(Stab::build(chunk.iter().map(|e| (e.1, e.2, e.3)).collect(), keys, state));
        }
        g
    }

    fn report(&self, cx: &mut Ctx, key: i32, lo_max: i32, hi_min: i32) {
        if let Ok(i) = self.keys.binary_search(&key) {
            self.stabs[i].report(cx, lo_max, hi_min);
        }
    }
}

#[derive(Clone, Debug, Default)]
struct SheetPart {
    hcross: Cross,
    vcross: Cross,
    hgroups: Groups,
    vgroups: Groups,
}

/// Static layout plus the initial deletion state.
#[derive(Clone, Debug)]
struct Structure {
    parts: [SheetPart; 2],
    keys: Keys,
    init: Vec<i32>,
}

fn sheet_slot(s: Sheet) -> usize {
    usize::from(s == Sheet::Plus)
}

impl Structure {
    fn build(items: &[Vec<Item>], active: impl Fn(usize) -> bool) -> Structure {
        let mut state = Vec::new();
        let mut keys = Keys::default();
        let mut parts: [SheetPart; 2] = Default::default();
        for sheet in Sheet::BOTH {
            let (mut hor, mut ver) = (Vec::new(), Vec::new());
            for (id, list) in items.iter().enumerate() {
                if !active(id) {
                    continue;
                }
                for it in list.iter().filter(|it| it.sheet == sheet) {
                    let e = (it.fixed, it.lo, it.hi, id as u32);
                    if it.horizontal {
                        hor.push(e);
                    } else {
                        ver.push(e);
                    }
                }
            }
            let part = &mut parts[sheet_slot(sheet)];
            part.hcross = Cross::build(hor.clone(), &mut keys, &mut state);
            part.vcross = Cross::build(ver.clone(), &mut keys, &mut state);
            part.hgroups = Groups::build(hor, &mut keys, &mut state);
            part.vgroups = Groups::build(ver, &mut keys, &mut state);
        }
        Structure { parts, keys, init: state }
    }
}

/// Ranked pieces of every lifted vertex, plus the structure over all of them.
#[derive(Debug)]
pub(crate) struct RectIndex {
    items: Vec<Vec<Item>>,
    full: Structure,
}

struct RawEdge {
    rel: Sheet,
    horizontal: bool,
    fixed: Rational,
    lo: (Rational, bool),
    hi: (Rational, bool),
}

impl RectIndex {
    fn build(li: &LiftedInstance) -> Result<RectIndex, String> {
        let n = li.n();
        let mut raw: Vec<Vec<RawEdge>> = Vec::with_capacity(n);
        for i in 0..n {
            let o = li.object(i);
            if !o.is_rectilinear() {
                return Err(format!("object {i} ({}) is not rectilinear", o.kind()));
            }
            let mut edges = Vec::new();
            for (piece, rel) in &li.lift(i).pieces {
                let Piece::Chain(chain) = piece else {
                    return Err(format!("object {i} has a region piece"));
                };
                for e in chain {
                    let (a, b) = (&e.seg.a, &e.seg.b);
                    let horizontal = a.y == b.y;
                    let (fixed, pa, pb) =
                        if horizontal { (a.y.clone(), &a.x, &b.x) } else { (a.x.clone(), &a.y, &b.y) };
                    let (lo, hi) = if pa <= pb {
                        ((pa.clone(), e.open_start), (pb.clone(), e.open_end))
                    } else {
                        ((pb.clone(), e.open_end), (pa.clone(), e.open_start))
                    };
                    edges.push(RawEdge { rel: *rel, horizontal, fixed, lo, hi });
                }
            }
            raw.push(edges);
        }
        let (mut xs, mut ys): (Vec<&Rational>, Vec<&Rational>) = (Vec::new(), Vec::new());
        for e in raw.iter().flatten() {
            let (fixed_axis, span_axis) = if e.horizontal { (&mut ys, &mut xs) } else { (&mut xs, &mut ys) };
            fixed_axis.push(&e.fixed);
            span_axis.push(&e.lo.0);
            span_axis.push(&e.hi.0);
        }
        for v in [&mut xs, &mut ys] {
            v.sort_unstable();
            v.dedup();
        }
        let rank = |axis: &[&Rational], v: &Rational| 2 * axis.binary_search(&v).expect("ranked value") as i32;
        let mut items = vec![Vec::new(); 2 * n];
        for (i, edges) in raw.iter().enumerate() {
            for e in edges {
                let (fa, sa) = if e.horizontal { (&ys, &xs) } else { (&xs, &ys) };
                let fixed = rank(fa, &e.fixed);
                let lo = rank(sa, &e.lo.0) + i32::from(e.lo.1);
                let hi = rank(sa, &e.hi.0) - i32::from(e.hi.1);
                for sheet in Sheet::BOTH {
                    let v = LiftedVertex::new(i, sheet);
                    items[v.id()].push(Item { sheet: sheet * e.rel, horizontal: e.horizontal, fixed, lo, hi });
                }
            }
        }
        let full = Structure::build(&items, |_| true);
        Ok(RectIndex { items, full })
    }
}

/// Oracle over axis-parallel segments, rectilinear polylines and unfilled
/// axis-parallel rectangles.
pub struct RectilinearOracle<'a> {
    structure: Cow<'a, Structure>,
    items: &'a [Vec<Item>],
    state: Vec<i32>,
    alive: Vec<bool>,
}

impl<'a> RectilinearOracle<'a> {
    pub fn new(li: &'a LiftedInstance, active: &ObjectSet) -> Result<Self, SsspError> {
        let index = li
            .rect
            .get_or_init(|| RectIndex::build(li))
            .as_ref()
            .map_err(|e| SsspError::UnsupportedObjects(e.clone()))?;
        let structure = if active.len() == li.n() {
            Cow::Borrowed(&index.full)
        } else {
            Cow::Owned(Structure::build(&index.items, |id| active.contains(id / 2)))
        };
        let state = structure.init.clone();
        let alive = (0..2 * li.n()).map(|id| active.contains(id / 2)).collect();
        Ok(RectilinearOracle { structure, items: &index.items, state, alive })
    }
}

impl NeighborOracle for RectilinearOracle<'_> {
    fn remove(&mut self, v: LiftedVertex) {
        self.alive[v.id()] = false;
    }

    fn extract_adjacent(&mut self, u: LiftedVertex) -> Vec<LiftedVertex> {
        let mut out = Vec::new();
        let mut cx = Ctx { keys: &self.structure.keys, st: &mut self.state, alive: &mut self.alive, out: &mut out };
        for q in &self.items[u.id()] {
            let part = &self.structure.parts[sheet_slot(q.sheet)];
            if q.horizontal {
                part.vcross.report(&mut cx, q.lo, q.hi, q.fixed, q.fixed);
                part.hgroups.report(&mut cx, q.fixed, q.hi, q.lo);
            } else {
                part.hcross.report(&mut cx, q.lo, q.hi, q.fixed, q.fixed);
                part.vgroups.report(&mut cx, q.fixed, q.hi, q.lo);
            }
        }
        out.sort_unstable();
        out.into_iter().map(|id| LiftedVertex::from_id(id as usize)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::GeometricObject;
    use crate::sssp::tests::lifted;

    #[test]
    fn crossing_on_same_sheet_is_reported() {
        // vertical piece x=5, y in [-2,0] lies on the + sheet of copy 0+
        let li = lifted(vec![GeometricObject::segment(5, -2, 5, 2), GeometricObject::segment(4, -1, 6, -1)]);
        let mut o = RectilinearOracle::new(&li, &ObjectSet::all(2)).unwrap();
        let u = LiftedVertex::new(0, Sheet::Plus);
        o.remove(u);
        assert_eq!(o.extract_adjacent(u), vec![LiftedVertex::new(1, Sheet::Plus)]);
    }

    #[test]
    fn sheet_mismatch_is_not_reported() {
        let li = lifted(vec![GeometricObject::segment(5, -2, 5, 2), GeometricObject::segment(4, -1, 6, -1)]);
        let mut o = RectilinearOracle::new(&li, &ObjectSet::all(2)).unwrap();
        let u = LiftedVertex::new(0, Sheet::Plus);
        o.remove(u);
        o.remove(LiftedVertex::new(1, Sheet::Plus));
        assert!(o.extract_adjacent(u).is_empty());
    }

    #[test]
    fn upper_piece_has_flipped_sheet() {
        let li = lifted(vec![GeometricObject::segment(5, -2, 5, 2), GeometricObject::segment(4, 1, 6, 1)]);
        let mut o = RectilinearOracle::new(&li, &ObjectSet::all(2)).unwrap();
        let u = LiftedVertex::new(0, Sheet::Plus);
        o.remove(u);
        assert_eq!(o.extract_adjacent(u), vec![LiftedVertex::new(1, Sheet::Minus)]);
    }

    #[test]
    fn collinear_overlap_is_found() {
        let li = lifted(vec![GeometricObject::segment(1, 2, 4, 2), GeometricObject::segment(4, 2, 7, 2)]);
        let mut o = RectilinearOracle::new(&li, &ObjectSet::all(2)).unwrap();
        let u = LiftedVertex::new(0, Sheet::Minus);
        o.remove(u);
        assert_eq!(o.extract_adjacent(u), vec![LiftedVertex::new(1, Sheet::Minus)]);
    }

    #[test]
    fn disks_are_unsupported() {
        let li = lifted(vec![GeometricObject::disk(5, 3, 1)]);
        assert!(RectilinearOracle::new(&li, &ObjectSet::all(1)).is_err());
    }
}
