use std::fmt;
use std::str::FromStr;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::geometry::{orientation, ConvexPolygon, Disk, GeometricObject, Point, Polyline, Rational, Segment};
use crate::lift::normalize_instance;

use super::{InstanceFile, Metadata};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Disks,
    Segments,
    Rectilinear,
    ConvexPolygons,
    Mixed,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Disks, Family::Segments, Family::Rectilinear, Family::ConvexPolygons, Family::Mixed];

    pub fn name(self) -> &'static str {
        match self {
            Family::Disks => "disks",
            Family::Segments => "segments",
            Family::Rectilinear => "rectilinear",
            Family::ConvexPolygons => "convex_polygons",
            Family::Mixed => "mixed",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family {s:?}; expected one of disks, segments, rectilinear, convex_polygons, mixed"))
    }
}

/// Placement parameters. Lengths are in whole units; every coordinate is a
/// multiple of `1 / denominator`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenParams {
    /// `s = (0, 0)` and `t = (length, 0)`.
    pub length: i64,
    /// Objects are anchored in `[-margin, length + margin] x [-half_height, half_height]`.
    pub half_height: i64,
    pub margin: i64,
    pub min_size: i64,
    pub max_size: i64,
    /// Share of objects placed across `st`, per mille.
    pub cross_permille: u32,
    /// Share of objects anchored at evenly spaced slots of the annulus
    /// `[ring_inner, ring_outer]` around `t`, per mille.
    pub ring_permille: u32,
    pub ring_inner: i64,
    pub ring_outer: i64,
    /// Share of polylines and rings in the rectilinear and mixed families,
    /// per mille.
    pub polyline_permille: u32,
    pub denominator: i64,
}

impl GenParams {
    /// Defaults that keep the density roughly constant as `n` grows.
    pub fn for_size(n: usize) -> Self {
        let root = (n as u64).isqrt() as i64;
        let side = (2 * root).max(6);
        let ring_outer = (side / 2 - 1).max(3);
        GenParams {
            length: side,
            half_height: side / 2,
            margin: 2,
            min_size: 1,
            max_size: 4,
            cross_permille: 200,
            ring_permille: (1000 * (6 + root) as usize / n.max(1)).min(750) as u32,
            ring_inner: (ring_outer - 2).max(2),
            ring_outer,
            polyline_permille: 300,
            denominator: 2,
        }
    }
}

struct Gen<'p> {
    rng: SplitMix64,
    p: &'p GenParams,
    /// Ring offset from `t` the next object is anchored at, if any.
    slot: Option<(i64, i64)>,
    /// Least size on the ring, enough to reach the neighboring slots.
    ring_reach: i64,
}

impl Gen<'_> {
    /// Uniform in `[lo, hi]`.
    fn range(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u128;
        lo + ((u128::from(self.rng.next_u64()) * span) >> 64) as i64
    }

    fn chance(&mut self, permille: u32) -> bool {
        self.range(0, 999) < i64::from(permille)
    }

    fn pt(&self, x: i64, y: i64) -> Point {
        let d = self.p.denominator;
        Point::new(Rational::new(x.into(), d.into()), Rational::new(y.into(), d.into()))
    }

    /// Size of the next object, in grid steps.
    fn size(&mut self) -> i64 {
        let l = self.range(self.p.min_size, self.p.max_size) * self.p.denominator;
        if self.slot.is_some() { l.max(self.ring_reach) } else { l }
    }

    /// Size of a region, capped on the ring so the box around the anchor
    /// stays clear of t.
    fn region_size(&mut self) -> i64 {
        let l = self.size();
        match self.slot {
            Some((x, y)) => l.min(x.abs().max(y.abs()) - 1).max(1),
            None => l,
        }
    }

    /// Grid anchor; crossing anchors sit within `reach` of the open segment st.
    fn anchor(&mut self, crossing: bool, reach: i64) -> (i64, i64) {
        let d = self.p.denominator;
        if let Some((x, y)) = self.slot {
            (self.p.length * d + x, y)
        } else if crossing {
            (self.range(1, self.p.length * d - 1), self.range(-reach + 1, reach - 1))
        } else {
            let m = self.p.margin * d;
            let h = self.p.half_height * d;
            (self.range(-m, self.p.length * d + m), self.range(-h, h))
        }
    }

    fn nonzero(&mut self, r: i64) -> i64 {
        let v = self.range(1, r.max(1));
        if self.chance(500) { v } else { -v }
    }

    /// Half of a chord of length about `2l` roughly tangent to the ring at `a`.
    fn tangent(&mut self, (ax, ay): (i64, i64), l: i64) -> (i64, i64) {
        let r = ax.abs().max(ay.abs());
        (-ay * l / r + self.range(-1, 1), ax * l / r + self.range(-1, 1))
    }

    fn disk(&mut self, crossing: bool) -> GeometricObject {
        let r = self.region_size();
        let (x, y) = self.anchor(crossing, r);
        GeometricObject::Disk(Disk::new(self.pt(x, y), Rational::new(r.into(), self.p.denominator.into())))
    }

    fn segment(&mut self, crossing: bool) -> GeometricObject {
        let l = self.size();
        let (x, y) = self.anchor(crossing, 1);
        let (dx, dy) = match self.slot {
            Some(a) => self.tangent(a, l),
            None => (self.range(-l, l), if crossing { self.nonzero(l) } else { self.range(-l, l) }),
        };
        GeometricObject::Segment(Segment::new(self.pt(x - dx, y - dy), self.pt(x + dx, y + dy)))
    }

    fn axis_segment(&mut self, crossing: bool) -> GeometricObject {
        let l = self.size();
        if let Some((ax, ay)) = self.slot {
            // project the slot radially onto the square of the outer radius
            let r = self.p.ring_outer * self.p.denominator;
            let (lo, hi) = (self.range(l, 3 * l / 2), self.range(l, 3 * l / 2));
            let tx = self.p.length * self.p.denominator;
            let (a, b) = if ax.abs() >= ay.abs() {
                let (x, y) = (tx + ax.signum() * r, ay * r / ax.abs());
                (self.pt(x, y - lo), self.pt(x, y + hi))
            } else {
                let (x, y) = (tx + ax * r / ay.abs(), ay.signum() * r);
                (self.pt(x - lo, y), self.pt(x + hi, y))
            };
            return GeometricObject::Segment(Segment::new(a, b));
        }
        let (x, y) = self.anchor(crossing, 1);
        let (lo, hi) = (self.range(1, l), self.range(1, l));
        let (a, b) = if crossing || self.chance(500) {
            (self.pt(x, y - lo), self.pt(x, y + hi))
        } else {
            (self.pt(x - lo, y), self.pt(x + hi, y))
        };
        GeometricObject::Segment(Segment::new(a, b))
    }

    fn rect_polyline(&mut self, crossing: bool) -> GeometricObject {
        let l = self.size();
        let (mut x, mut y) = self.anchor(crossing, l);
        let mut horizontal = self.chance(500);
        let count = self.range(3, 4);
        let mut v = vec![self.pt(x, y)];
        for _ in 1..count {
            let step = self.nonzero(l);
            if horizontal {
                x += step;
            } else {
                y += step;
            }
            horizontal = !horizontal;
            v.push(self.pt(x, y));
        }
        GeometricObject::Polyline(Polyline { vertices: v })
    }

    fn rectangle(&mut self, crossing: bool) -> GeometricObject {
        let l = self.region_size();
        let (x, y) = self.anchor(crossing, l);
        let (w, h) = (self.range(1, l), self.range(1, l));
        let v = vec![self.pt(x - w, y - h), self.pt(x + w, y - h), self.pt(x + w, y + h), self.pt(x - w, y + h)];
        GeometricObject::Polygon(ConvexPolygon { vertices: v, filled: false })
    }

    fn polyline(&mut self, crossing: bool) -> GeometricObject {
        let l = self.size();
        let (mut x, mut y) = self.anchor(crossing, l);
        if let Some(a) = self.slot {
            let (dx, dy) = self.tangent(a, l);
            let (jx, jy) = (self.range(-1, 1), self.range(-1, 1));
            let v = vec![self.pt(x - dx, y - dy), self.pt(x + jx, y + jy), self.pt(x + dx, y + dy)];
            return GeometricObject::Polyline(Polyline { vertices: v });
        }
        let count = self.range(3, 4);
        let mut v = vec![self.pt(x, y)];
        for _ in 1..count {
            x += self.range(-l, l);
            y += self.range(-l, l);
            v.push(self.pt(x, y));
        }
        GeometricObject::Polyline(Polyline { vertices: v })
    }

    fn polygon(&mut self, crossing: bool, filled: bool) -> Option<GeometricObject> {
        let l = self.region_size();
        let (x, y) = self.anchor(crossing, l);
        let k = self.range(3, 6);
        let mut pts: Vec<(i64, i64)> = Vec::with_capacity(k as usize);
        if let Some(a) = self.slot {
            let half = self.size();
            let (dx, dy) = self.tangent(a, half);
            pts.extend([(x - dx, y - dy), (x + dx, y + dy)]);
        }
        while pts.len() < k as usize {
            pts.push((x + self.range(-l, l), y + self.range(-l, l)));
        }
        let hull = convex_hull(pts);
        if hull.len() < 3 {
            return None;
        }
        let v = hull.into_iter().map(|(a, b)| self.pt(a, b)).collect();
        ConvexPolygon::new(v, filled).ok().map(GeometricObject::Polygon)
    }

    fn object(&mut self, family: Family) -> Option<GeometricObject> {
        let crossing = self.chance(self.p.cross_permille);
        let curvy = self.chance(self.p.polyline_permille);
        Some(match family {
            Family::Disks => self.disk(crossing),
            Family::Segments => self.segment(crossing),
            Family::Rectilinear if self.slot.is_some() => self.axis_segment(crossing),
            Family::Rectilinear if curvy && self.chance(500) => self.rectangle(crossing),
            Family::Rectilinear if curvy => self.rect_polyline(crossing),
            Family::Rectilinear => self.axis_segment(crossing),
            Family::ConvexPolygons => {
                let filled = self.chance(500);
                return self.polygon(crossing, filled);
            }
            Family::Mixed => match self.range(0, 3) {
                0 => self.disk(crossing),
                1 => self.segment(crossing),
                2 if curvy => self.polyline(crossing),
                _ => {
                    let filled = self.chance(500);
                    return self.polygon(crossing, filled);
                }
            },
        })
    }
}

/// Strictly convex hull, counterclockwise (monotone chain).
fn convex_hull(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort_unstable();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut hull: Vec<(i64, i64)> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &(i64, i64)>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Lattice points with `r0 <= |p| <= r1`, sorted by angle.
fn ring_lattice(r0: i64, r1: i64) -> Vec<(i64, i64)> {
    let mut pts: Vec<(i64, i64)> = (-r1..=r1)
        .flat_map(|x| (-r1..=r1).map(move |y| (x, y)))
        .filter(|&(x, y)| r1 > 0 && (r0 * r0..=r1 * r1).contains(&(x * x + y * y)) && (x, y) != (0, 0))
        .collect();
    let half = |&(x, y): &(i64, i64)| y < 0 || (y == 0 && x < 0);
    pts.sort_by(|a, b| half(a).cmp(&half(b)).then_with(|| (b.0 * a.1 - b.1 * a.0).cmp(&0)).then_with(|| a.cmp(b)));
    pts
}

/// Object that normalizes on its own without being dropped.
fn acceptable(o: &GeometricObject, s: &Point, t: &Point) -> bool {
    if let GeometricObject::Polygon(p) = o {
        let n = p.vertices.len();
        if (0..n).any(|i| orientation(&p.vertices[i], &p.vertices[(i + 1) % n], &p.vertices[(i + 2) % n]) <= 0) {
            return false;
        }
    }
    matches!(normalize_instance(vec![o.clone()], s.clone(), t.clone()), Ok((inst, _)) if inst.n() == 1)
}

/// Deterministic instance of `n` objects from `family`.
pub fn generate(family: Family, n: usize, seed: u64, params: &GenParams) -> InstanceFile {
    assert!(params.denominator >= 1 && params.min_size >= 1 && params.max_size >= params.min_size && params.length >= 1);
    assert!(0 <= params.ring_inner && params.ring_inner <= params.ring_outer);
    let mut g = Gen { rng: SplitMix64::seed_from_u64(seed), p: params, slot: None, ring_reach: 0 };
    let (s, t) = (g.pt(0, 0), g.pt(params.length * params.denominator, 0));
    let ring = ring_lattice(params.ring_inner * params.denominator, params.ring_outer * params.denominator);
    let on_ring = if ring.is_empty() { 0 } else { n * params.ring_permille as usize / 1000 };
    if on_ring > 0 {
        g.ring_reach = (6 * params.ring_outer * params.denominator + on_ring as i64 - 1) / on_ring as i64;
    }
    let phase = g.range(0, (ring.len() as i64 - 1).max(0)) as usize;
    let mut objects = Vec::with_capacity(n);
    let mut tries = 0;
    while objects.len() < n {
        let i = objects.len();
        g.slot = (i < on_ring && tries < 50).then(|| {
            let jitter = g.range(0, (ring.len() / (2 * on_ring)).max(1) as i64 - 1) as usize;
            ring[(phase + i * ring.len() / on_ring + jitter) % ring.len()]
        });
        tries += 1;
        if let Some(o) = g.object(family) {
            if acceptable(&o, &s, &t) {
                objects.push(o);
                tries = 0;
            }
        }
    }
    InstanceFile {
        s,
        t,
        objects,
        metadata: Some(Metadata {
            name: Some(format!("{family}-{n}-{seed}")),
            family: Some(family.name().into()),
            seed: Some(seed),
            params: serde_json::to_value(params).ok(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance_io::serialize_instance;

    #[test]
    fn deterministic() {
        let p = GenParams::for_size(10);
        let a = serialize_instance(&generate(Family::Disks, 10, 42, &p));
        let b = serialize_instance(&generate(Family::Disks, 10, 42, &p));
        assert_eq!(a, b);
        assert_ne!(a, serialize_instance(&generate(Family::Disks, 10, 43, &p)));
    }

    #[test]
    fn every_family_normalizes() {
        for family in Family::ALL {
            for seed in 0..20 {
                let f = generate(family, 12, seed, &GenParams::for_size(12));
                let (inst, rep) = f.normalize().unwrap();
                assert_eq!(inst.n(), 12);
                assert!(rep.trivial_separators.is_empty());
            }
        }
    }

    #[test]
    fn rectilinear_is_axis_parallel() {
        let f = generate(Family::Rectilinear, 50, 3, &GenParams::for_size(50));
        assert!(f.objects.iter().all(GeometricObject::is_rectilinear));
    }

    #[test]
    fn hull_drops_collinear_points() {
        assert_eq!(convex_hull(vec![(0, 0), (2, 0), (1, 0), (2, 2), (0, 2)]), vec![(0, 0), (2, 0), (2, 2), (0, 2)]);
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>(), Ok(f));
        }
    }
}
