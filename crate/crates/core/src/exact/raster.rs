//! Floating-point rasterization used only as an independent check.

use std::collections::VecDeque;

use crate::geometry::{atom_witness, atoms, to_f64, Atom, GeometricObject, Point};
use crate::lift::Instance;

use super::ExactError;

type P = (f64, f64);

const MAX_CELLS: usize = 1 << 24;

/// Clearance required between unrelated features, in cells.
pub const CLEARANCE_CELLS: f64 = 3.0;

#[derive(Clone, Debug)]
enum Shape {
    Disk(P, f64),
    Seg(P, P),
    Poly(Vec<P>),
}

fn fp(p: &Point) -> P {
    p.to_f64()
}

fn shape(a: &Atom<'_>) -> Shape {
    match a {
        Atom::Disk(d) => Shape::Disk(fp(&d.center), to_f64(&d.radius)),
        Atom::Region(p) => Shape::Poly(p.vertices.iter().map(fp).collect()),
        Atom::Edge(_, s) => Shape::Seg(fp(&s.a), fp(&s.b)),
    }
}

fn sub(a: P, b: P) -> P {
    (a.0 - b.0, a.1 - b.1)
}

fn cross(a: P, b: P) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

fn point_seg(p: P, a: P, b: P) -> f64 {
    let d = sub(b, a);
    let len2 = d.0 * d.0 + d.1 * d.1;
    let t = if len2 == 0.0 { 0.0 } else { (((p.0 - a.0) * d.0 + (p.1 - a.1) * d.1) / len2).clamp(0.0, 1.0) };
    (p.0 - a.0 - t * d.0).hypot(p.1 - a.1 - t * d.1)
}

fn segs_cross(a: P, b: P, c: P, d: P) -> bool {
    let d1 = cross(sub(b, a), sub(c, a));
    let d2 = cross(sub(b, a), sub(d, a));
    let d3 = cross(sub(d, c), sub(a, c));
    let d4 = cross(sub(d, c), sub(b, c));
    d1 * d2 <= 0.0 && d3 * d4 <= 0.0
}

fn seg_seg(a: P, b: P, c: P, d: P) -> f64 {
    if segs_cross(a, b, c, d) {
        return 0.0;
    }
    point_seg(a, c, d).min(point_seg(b, c, d)).min(point_seg(c, a, b)).min(point_seg(d, a, b))
}

fn edges(v: &[P]) -> impl Iterator<Item = (P, P)> + '_ {
    (0..v.len()).map(move |i| (v[i], v[(i + 1) % v.len()]))
}

fn inside(p: P, v: &[P]) -> bool {
    let signs: Vec<f64> = edges(v).map(|(a, b)| cross(sub(b, a), sub(p, a))).collect();
    signs.iter().all(|&s| s >= 0.0) || signs.iter().all(|&s| s <= 0.0)
}

fn point_shape(p: P, s: &Shape) -> f64 {
    match s {
        Shape::Disk(c, r) => ((p.0 - c.0).hypot(p.1 - c.1) - r).max(0.0),
        Shape::Seg(a, b) => point_seg(p, *a, *b),
        Shape::Poly(v) if inside(p, v) => 0.0,
        Shape::Poly(v) => edges(v).map(|(a, b)| point_seg(p, a, b)).fold(f64::INFINITY, f64::min),
    }
}

fn seg_shape(a: P, b: P, s: &Shape) -> f64 {
    match s {
        Shape::Disk(c, r) => (point_seg(*c, a, b) - r).max(0.0),
        Shape::Seg(c, d) => seg_seg(a, b, *c, *d),
        Shape::Poly(v) if inside(a, v) || inside(b, v) => 0.0,
        Shape::Poly(v) => edges(v).map(|(c, d)| seg_seg(a, b, c, d)).fold(f64::INFINITY, f64::min),
    }
}

fn shape_dist(x: &Shape, y: &Shape) -> f64 {
    match (x, y) {
        (Shape::Disk(c, r), o) | (o, Shape::Disk(c, r)) => (point_shape(*c, o) - r).max(0.0),
        (Shape::Seg(a, b), o) | (o, Shape::Seg(a, b)) => seg_shape(*a, *b, o),
        (Shape::Poly(v), Shape::Poly(w)) => {
            if v.iter().any(|&p| inside(p, w)) || w.iter().any(|&p| inside(p, v)) {
                return 0.0;
            }
            edges(v).flat_map(|(a, b)| edges(w).map(move |(c, d)| seg_seg(a, b, c, d))).fold(f64::INFINITY, f64::min)
        }
    }
}

/// Smallest gap between disjoint building blocks of the subset, and between
/// `s`, `t` and the subset.
pub fn clearance(inst: &Instance, subset: &[usize]) -> f64 {
    let blocks: Vec<Atom<'_>> = subset.iter().flat_map(|&i| atoms(&inst.objects[i])).collect();
    let shapes: Vec<Shape> = blocks.iter().map(shape).collect();
    let mut best = f64::INFINITY;
    for p in [fp(&inst.s), fp(&inst.t)] {
        for s in &shapes {
            best = best.min(point_shape(p, s));
        }
    }
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            if atom_witness(&blocks[i], &blocks[j]).is_none() {
                best = best.min(shape_dist(&shapes[i], &shapes[j]));
            }
        }
    }
    best
}

/// `y` extent of a shape over the vertical slab `[xa, xb]`.
fn column_span(s: &Shape, xa: f64, xb: f64) -> Option<(f64, f64)> {
    match s {
        Shape::Disk(c, r) => {
            if c.0 + r < xa || c.0 - r > xb {
                return None;
            }
            let x = c.0.clamp(xa, xb);
            let dy = (r * r - (x - c.0) * (x - c.0)).max(0.0).sqrt();
            Some((c.1 - dy, c.1 + dy))
        }
        Shape::Seg(a, b) => seg_span(*a, *b, xa, xb),
        Shape::Poly(v) => edges(v).filter_map(|(a, b)| seg_span(a, b, xa, xb)).reduce(|x, y| (x.0.min(y.0), x.1.max(y.1))),
    }
}

fn seg_span(a: P, b: P, xa: f64, xb: f64) -> Option<(f64, f64)> {
    if a.0.max(b.0) < xa || a.0.min(b.0) > xb {
        return None;
    }
    if a.0 == b.0 {
        return Some((a.1.min(b.1), a.1.max(b.1)));
    }
    let at = |x: f64| {
        let t = ((x - a.0) / (b.0 - a.0)).clamp(0.0, 1.0);
        a.1 + t * (b.1 - a.1)
    };
    let (y1, y2) = (at(xa), at(xb));
    Some((y1.min(y2), y1.max(y2)))
}

fn bbox(o: &GeometricObject) -> (P, P) {
    let (lo, hi) = o.bbox();
    (fp(&lo), fp(&hi))
}

/// Rasterize the subset and flood-fill from `s`; `true` when `t` is not reached.
pub fn flood_fill_check(inst: &Instance, subset: &[usize], resolution: f64) -> Result<bool, ExactError> {
    if subset.is_empty() {
        return Ok(false);
    }
    let h = resolution;
    let gap = clearance(inst, subset);
    if h.is_nan() || h <= 0.0 || gap <= CLEARANCE_CELLS * h {
        return Err(ExactError::ResolutionTooCoarse { clearance: gap, resolution: h });
    }
    let (s, t) = (fp(&inst.s), fp(&inst.t));
    let (mut lo, mut hi) = ((s.0.min(t.0), s.1.min(t.1)), (s.0.max(t.0), s.1.max(t.1)));
    for &i in subset {
        let (a, b) = bbox(&inst.objects[i]);
        lo = (lo.0.min(a.0), lo.1.min(a.1));
        hi = (hi.0.max(b.0), hi.1.max(b.1));
    }
    let pad = 3.0 * h;
    let origin = (lo.0 - pad, lo.1 - pad);
    let nx = ((hi.0 + pad - origin.0) / h).ceil() as usize + 1;
    let ny = ((hi.1 + pad - origin.1) / h).ceil() as usize + 1;
    if nx.saturating_mul(ny) > MAX_CELLS {
        return Err(ExactError::GridTooLarge { cells: nx.saturating_mul(ny) });
    }
    let mut blocked = vec![false; nx * ny];
    let eps = h * 1e-6;
    let shapes: Vec<Shape> = subset.iter().flat_map(|&i| atoms(&inst.objects[i])).map(|a| shape(&a)).collect();
    for sh in &shapes {
        for cx in 0..nx {
            let xa = origin.0 + cx as f64 * h - eps;
            let Some((ya, yb)) = column_span(sh, xa, xa + h + 2.0 * eps) else { continue };
            let r0 = ((ya - eps - origin.1) / h).floor().max(0.0) as usize;
            let r1 = (((yb + eps - origin.1) / h).floor().max(0.0) as usize).min(ny - 1);
            for cy in r0..=r1 {
                blocked[cx * ny + cy] = true;
            }
        }
    }
    let cell = |p: P| (((p.0 - origin.0) / h) as usize, ((p.1 - origin.1) / h) as usize);
    let (sc, tc) = (cell(s), cell(t));
    let mut seen = blocked;
    let mut queue = VecDeque::from([sc]);
    seen[sc.0 * ny + sc.1] = true;
    while let Some((x, y)) = queue.pop_front() {
        if (x, y) == tc {
            return Ok(false);
        }
        let mut push = |x: usize, y: usize| {
            if !seen[x * ny + y] {
                seen[x * ny + y] = true;
                queue.push_back((x, y));
            }
        };
        if x > 0 {
            push(x - 1, y);
        }
        if x + 1 < nx {
            push(x + 1, y);
        }
        if y > 0 {
            push(x, y - 1);
        }
        if y + 1 < ny {
            push(x, y + 1);
        }
    }
    Ok(true)
}
