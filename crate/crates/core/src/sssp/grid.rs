use std::collections::HashMap;

use crate::geometry::{to_f64, GeometricObject};
use crate::lift::{LiftedInstance, LiftedVertex, ProductMask, Sheet};

use super::{NeighborOracle, ObjectSet, SsspError};

type Cell = (i64, i64);

/// Buckets disks by the grid cell of their center. A query scans the cells
/// that could hold an overlapping disk and confirms candidates exactly.
pub struct DiskGridOracle<'a> {
    li: &'a LiftedInstance,
    cell: f64,
    max_r: f64,
    geom: Vec<(f64, f64, f64)>,
    buckets: HashMap<Cell, Vec<u32>>,
    alive: Vec<bool>,
    masks: HashMap<(u32, u32), ProductMask>,
}

impl<'a> DiskGridOracle<'a> {
    pub fn new(li: &'a LiftedInstance, active: &ObjectSet, cell_size: Option<f64>) -> Result<Self, SsspError> {
        let mut geom = Vec::with_capacity(li.n());
        for i in 0..li.n() {
            let GeometricObject::Disk(d) = li.object(i) else {
                return Err(SsspError::UnsupportedObjects(format!("object {i} ({}) is not a disk", li.object(i).kind())));
            };
            let (x, y) = d.center.to_f64();
            geom.push((x, y, to_f64(&d.radius)));
        }
        let cell = match cell_size {
            Some(c) if c.is_finite() && c > 0.0 => c,
            Some(c) => return Err(SsspError::UnsupportedObjects(format!("cell size {c} is not positive"))),
            None => {
                let mut diam: Vec<f64> = active.indices().iter().map(|&i| 2.0 * geom[i].2).collect();
                diam.sort_by(f64::total_cmp);
                diam.get(diam.len() / 2).copied().unwrap_or(1.0)
            }
        };
        let max_r = active.indices().iter().map(|&i| geom[i].2).fold(0.0, f64::max);
        let mut oracle = DiskGridOracle {
            li,
            cell,
            max_r,
            geom,
            buckets: HashMap::new(),
            alive: (0..2 * li.n()).map(|id| active.contains(id / 2)).collect(),
            masks: HashMap::new(),
        };
        for &i in active.indices() {
            let c = oracle.cell_of(i);
            oracle.buckets.entry(c).or_default().push(i as u32);
        }
        Ok(oracle)
    }

    fn cell_of(&self, i: usize) -> Cell {
        let (x, y, _) = self.geom[i];
        ((x / self.cell).floor() as i64, (y / self.cell).floor() as i64)
    }

    fn adjacent(&mut self, u: LiftedVertex, v: LiftedVertex) -> bool {
        if self.li.has_adjacency() {
            return self.li.adjacency()[u.id()].binary_search(&(v.id() as u32)).is_ok();
        }
        let key = (u.object.min(v.object) as u32, u.object.max(v.object) as u32);
        let li = self.li;
        let mask = *self.masks.entry(key).or_insert_with(|| li.products(key.0 as usize, key.1 as usize));
        mask.contains(u.sheet * v.sheet)
    }
}

impl NeighborOracle for DiskGridOracle<'_> {
    fn remove(&mut self, v: LiftedVertex) {
        self.alive[v.id()] = false;
    }

    fn extract_adjacent(&mut self, u: LiftedVertex) -> Vec<LiftedVertex> {
        let a = u.object;
        let (ux, uy, ur) = self.geom[a];
        let reach = ((ur + self.max_r) / self.cell).ceil() as i64 + 1;
        let (cx, cy) = self.cell_of(a);
        let mut out = Vec::new();
        for gx in cx - reach..=cx + reach {
            for gy in cy - reach..=cy + reach {
                let Some(bucket) = self.buckets.get(&(gx, gy)) else { continue };
                let candidates: Vec<u32> = bucket.clone();
                let mut keep = Vec::with_capacity(candidates.len());
                for b in candidates {
                    let b = b as usize;
                    let copies = [LiftedVertex::new(b, Sheet::Minus), LiftedVertex::new(b, Sheet::Plus)];
                    if copies.iter().all(|v| !self.alive[v.id()]) {
                        continue;
                    }
                    keep.push(b as u32);
                    if b == a {
                        continue;
                    }
                    let (bx, by, br) = self.geom[b];
                    let slack = 1e-9 * (1.0 + ux.abs() + uy.abs() + bx.abs() + by.abs() + ur + br);
                    if (ux - bx).hypot(uy - by) > ur + br + slack {
                        continue;
                    }
                    for v in copies {
                        if self.alive[v.id()] && self.adjacent(u, v) {
                            self.alive[v.id()] = false;
                            out.push(v);
                        }
                    }
                }
                self.buckets.insert((gx, gy), keep);
            }
        }
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sssp::tests::lifted;
    use crate::sssp::ExplicitOracle;

    #[test]
    fn matches_explicit_on_a_chain() {
        let disks: Vec<_> = (0..8).map(|i| GeometricObject::disk(1 + i, (i % 3) - 1, 1)).collect();
        let li = lifted(disks);
        for id in 0..2 * li.n() {
            let u = LiftedVertex::from_id(id);
            let mut g = DiskGridOracle::new(&li, &ObjectSet::all(li.n()), None).unwrap();
            let mut e = ExplicitOracle::new(&li, &ObjectSet::all(li.n()));
            g.remove(u);
            e.remove(u);
            assert_eq!(g.extract_adjacent(u), e.extract_adjacent(u), "vertex {u:?}");
        }
    }

    #[test]
    fn rejects_segments() {
        let li = lifted(vec![GeometricObject::segment(1, 1, 2, 2)]);
        assert!(DiskGridOracle::new(&li, &ObjectSet::all(1), None).is_err());
    }
}
