//! Ground truth: the exact solver, separation checking and two independent
//! brute-force oracles.

mod raster;

use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::lift::{witness_adjacent, LiftedInstance, LiftedVertex, ProductMask, Sheet};
use crate::sssp::{shortest_lift_path, OracleKind, SeparatingSet, SsspError};

pub use raster::{clearance, flood_fill_check, CLEARANCE_CELLS};

pub const EXHAUSTIVE_MAX_N: usize = 14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExactError {
    #[error("{n} objects exceed the exhaustive limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("resolution {resolution} too coarse for clearance {clearance}")]
    ResolutionTooCoarse { clearance: f64, resolution: f64 },
    #[error("raster of {cells} cells is too large")]
    GridTooLarge { cells: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactResult {
    pub optimum: Option<SeparatingSet>,
    /// `|F_c|` per object, `None` when the copies of `c` are not connected
    /// (or, for the exhaustive oracle, when `c` is not in the optimum).
    pub per_object_sizes: Vec<Option<usize>>,
}

impl ExactResult {
    pub fn is_feasible(&self) -> bool {
        self.optimum.is_some()
    }

    pub fn size(&self) -> Option<usize> {
        self.optimum.as_ref().map(SeparatingSet::len)
    }
}

fn better(a: &SeparatingSet, b: &SeparatingSet) -> bool {
    (a.len(), &a.objects) < (b.len(), &b.objects)
}

/// Smallest `F_c` over all objects, ties broken by the sorted index list.
pub fn exact_solve(li: &LiftedInstance, kind: OracleKind) -> Result<ExactResult, SsspError> {
    let mut optimum: Option<SeparatingSet> = None;
    let mut sizes = Vec::with_capacity(li.n());
    for c in 0..li.n() {
        let found = shortest_lift_path(li, c, kind)?;
        sizes.push(found.as_ref().map(|(_, f)| f.len()));
        if let Some((_, f)) = found {
            if optimum.as_ref().is_none_or(|o| better(&f, o)) {
                optimum = Some(f);
            }
        }
    }
    Ok(ExactResult { optimum, per_object_sizes: sizes })
}

/// Whether some object's two copies are connected using only the subset.
fn copies_joined(n: usize, subset: &[usize], mask: impl Fn(usize, usize) -> ProductMask) -> bool {
    let mut uf = UnionFind::<usize>::new(2 * n);
    for (k, &a) in subset.iter().enumerate() {
        for &b in &subset[k + 1..] {
            let m = mask(a, b);
            for sa in Sheet::BOTH {
                for sb in Sheet::BOTH {
                    if m.contains(sa * sb) {
                        uf.union(LiftedVertex::new(a, sa).id(), LiftedVertex::new(b, sb).id());
                    }
                }
            }
        }
    }
    subset
        .iter()
        .any(|&a| uf.equiv(LiftedVertex::new(a, Sheet::Minus).id(), LiftedVertex::new(a, Sheet::Plus).id()))
}

/// Union-find over the lifted copies of `subset`, joined by fragment contact.
pub fn separation_check(li: &LiftedInstance, subset: &[usize]) -> bool {
    copies_joined(li.n(), subset, |a, b| li.products(a, b))
}

fn witness_products(li: &LiftedInstance, a: usize, b: usize) -> ProductMask {
    let mut m = ProductMask::EMPTY;
    let u = LiftedVertex::new(a, Sheet::Plus);
    for sb in Sheet::BOTH {
        if witness_adjacent(li, u, LiftedVertex::new(b, sb)) {
            m.insert(sb);
        }
    }
    m
}

/// Smallest separating subset by enumeration, using parity witnesses rather
/// than fragments for adjacency.
pub fn exhaustive_oracle(li: &LiftedInstance, max_n: usize) -> Result<ExactResult, ExactError> {
    let n = li.n();
    if n > max_n {
        return Err(ExactError::TooLarge { n, max: max_n });
    }
    let mut masks = vec![ProductMask::EMPTY; n * n];
    for a in 0..n {
        for b in a + 1..n {
            let m = witness_products(li, a, b);
            masks[a * n + b] = m;
            masks[b * n + a] = m;
        }
    }
    let mut sizes = vec![None; n];
    for k in 1..=n {
        let mut comb: Vec<usize> = (0..k).collect();
        loop {
            if copies_joined(n, &comb, |a, b| masks[a * n + b]) {
                for &c in &comb {
                    sizes[c] = Some(k);
                }
                return Ok(ExactResult { optimum: Some(SeparatingSet::new(comb)), per_object_sizes: sizes });
            }
            let Some(i) = (0..k).rev().find(|&i| comb[i] < n - k + i) else { break };
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
        }
    }
    Ok(ExactResult { optimum: None, per_object_sizes: sizes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::GeometricObject;
    use crate::sssp::tests::{e1, lifted};

    #[test]
    fn e1_optimum() {
        let li = e1();
        let r = exact_solve(&li, OracleKind::Explicit).unwrap();
        assert_eq!(r.optimum, Some(SeparatingSet::new([2, 3, 4])));
        let x = exhaustive_oracle(&li, EXHAUSTIVE_MAX_N).unwrap();
        assert_eq!(x.optimum, r.optimum);
    }

    #[test]
    fn e1_subsets() {
        let li = e1();
        assert!(separation_check(&li, &[2, 3, 4]));
        assert!(!separation_check(&li, &[3, 4]));
        assert!(!separation_check(&li, &[]));
        assert_eq!(flood_fill_check(li.instance(), &[2, 3, 4], 0.05), Ok(true));
        assert_eq!(flood_fill_check(li.instance(), &[0, 1], 0.05), Ok(false));
        assert_eq!(flood_fill_check(li.instance(), &[], 0.05), Ok(false));
    }

    #[test]
    fn infeasible_instances() {
        let li = lifted(vec![GeometricObject::disk(2, 3, 1), GeometricObject::disk(5, 3, 1), GeometricObject::disk(8, 3, 1)]);
        assert_eq!(exact_solve(&li, OracleKind::Explicit).unwrap().optimum, None);
        assert_eq!(exhaustive_oracle(&li, EXHAUSTIVE_MAX_N).unwrap().optimum, None);
        let single = lifted(vec![GeometricObject::segment(5, -2, 5, 2)]);
        assert_eq!(exact_solve(&single, OracleKind::Explicit).unwrap().optimum, None);
    }

    #[test]
    fn two_crossing_objects_close_a_cycle() {
        // two arcs over t that cross st on both sides of it
        let li = lifted(vec![GeometricObject::segment(9, -3, 13, 3), GeometricObject::segment(9, 3, 13, -3)]);
        assert!(exact_solve(&li, OracleKind::Explicit).unwrap().optimum.is_none());
        let v = |pts: &[(i64, i64)]| {
            GeometricObject::Polyline(
                crate::geometry::Polyline::new(pts.iter().map(|&(x, y)| crate::geometry::Point::from_ints(x, y)).collect())
                    .unwrap(),
            )
        };
        let li = lifted(vec![v(&[(8, -2), (8, 2), (12, 2)]), v(&[(12, 3), (12, -2), (7, -2)])]);
        let r = exhaustive_oracle(&li, EXHAUSTIVE_MAX_N).unwrap();
        assert_eq!(r.size(), Some(2));
        assert_eq!(exact_solve(&li, OracleKind::Explicit).unwrap().optimum, r.optimum);
        assert_eq!(flood_fill_check(li.instance(), &[0, 1], 0.1), Ok(true));
    }

    #[test]
    fn witness_masks_match_fragments() {
        let li = e1();
        for a in 0..li.n() {
            for b in 0..li.n() {
                if a != b {
                    assert_eq!(witness_products(&li, a, b), li.products(a, b), "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn too_large() {
        let li = lifted((0..15).map(|i| GeometricObject::disk(i, 20, 1)).collect());
        assert!(matches!(exhaustive_oracle(&li, EXHAUSTIVE_MAX_N), Err(ExactError::TooLarge { .. })));
    }
}
