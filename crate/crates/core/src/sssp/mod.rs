//! Breadth-first search over the lifted intersection graph.
//!
//! Edges are never listed explicitly by the search itself. Each step asks a
//! [`NeighborOracle`] for every undiscovered copy adjacent to the vertex being
//! expanded, and the oracle forgets whatever it reports.

mod explicit;
mod grid;
mod rect;

use std::fmt;

use thiserror::Error;

use crate::geometry::GeometricObject;
use crate::lift::{LiftedInstance, LiftedVertex, Sheet};

pub use explicit::ExplicitOracle;
pub use grid::DiskGridOracle;
pub use rect::RectilinearOracle;
pub(crate) use rect::RectIndex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SsspError {
    #[error("oracle cannot index these objects: {0}")]
    UnsupportedObjects(String),
}

/// Decremental neighbor reporting over the lifted vertices of an instance.
pub trait NeighborOracle {
    /// Forget `v` without reporting it.
    fn remove(&mut self, v: LiftedVertex);

    /// Report every remaining vertex adjacent to `u` in ascending id order and
    /// forget all of them.
    fn extract_adjacent(&mut self, u: LiftedVertex) -> Vec<LiftedVertex>;
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OracleKind {
    Explicit,
    Rectilinear,
    /// Grid buckets keyed by disk center. `None` uses the median diameter.
    DiskGrid { cell_size: Option<f64> },
    Auto,
}

impl OracleKind {
    /// Concrete kind for `li`: rectilinear when every object is, disk grid
    /// for all-disk inputs, explicit otherwise.
    pub fn resolve(self, li: &LiftedInstance) -> OracleKind {
        self.resolve_for(&li.instance().objects)
    }

    pub fn resolve_for(self, objs: &[GeometricObject]) -> OracleKind {
        if self != OracleKind::Auto {
            return self;
        }
        if objs.is_empty() {
            OracleKind::Explicit
        } else if objs.iter().all(GeometricObject::is_rectilinear) {
            OracleKind::Rectilinear
        } else if objs.iter().all(|o| matches!(o, GeometricObject::Disk(_))) {
            OracleKind::DiskGrid { cell_size: None }
        } else {
            OracleKind::Explicit
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            OracleKind::Explicit => "explicit",
            OracleKind::Rectilinear => "rectilinear",
            OracleKind::DiskGrid { .. } => "diskgrid",
            OracleKind::Auto => "auto",
        }
    }
}

impl fmt::Display for OracleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Subset of object indices that are still present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectSet {
    mask: Vec<bool>,
    list: Vec<usize>,
}

impl ObjectSet {
    pub fn all(n: usize) -> Self {
        ObjectSet { mask: vec![true; n], list: (0..n).collect() }
    }

    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut mask = vec![false; n];
        for i in indices {
            mask[i] = true;
        }
        let list = (0..n).filter(|&i| mask[i]).collect();
        ObjectSet { mask, list }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.mask[i]
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn universe(&self) -> usize {
        self.mask.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.list
    }

    /// Copy without the given objects.
    pub fn without(&self, drop: impl IntoIterator<Item = usize>) -> Self {
        let mut mask = self.mask.clone();
        for i in drop {
            mask[i] = false;
        }
        let list = self.list.iter().copied().filter(|&i| mask[i]).collect();
        ObjectSet { mask, list }
    }
}

/// Build the oracle of the requested kind over the copies of `active`.
pub fn make_oracle<'a>(
    li: &'a LiftedInstance,
    active: &ObjectSet,
    kind: OracleKind,
) -> Result<Box<dyn NeighborOracle + 'a>, SsspError> {
    Ok(match kind.resolve(li) {
        OracleKind::Explicit | OracleKind::Auto => Box::new(ExplicitOracle::new(li, active)),
        OracleKind::Rectilinear => Box::new(RectilinearOracle::new(li, active)?),
        OracleKind::DiskGrid { cell_size } => Box::new(DiskGridOracle::new(li, active, cell_size)?),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfsResult {
    pub source: LiftedVertex,
    /// Indexed by lifted vertex id.
    pub dist: Vec<Option<u32>>,
    pub parent: Vec<Option<LiftedVertex>>,
}

impl BfsResult {
    pub fn dist_to(&self, v: LiftedVertex) -> Option<u32> {
        self.dist[v.id()]
    }

    /// Source-to-`v` path along parent pointers.
    pub fn path_to(&self, v: LiftedVertex) -> Option<Vec<LiftedVertex>> {
        self.dist[v.id()]?;
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur.id()] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        Some(path)
    }
}

/// Full BFS from `source` over all lifted vertices.
pub fn bfs(li: &LiftedInstance, source: LiftedVertex, kind: OracleKind) -> Result<BfsResult, SsspError> {
    bfs_in(li, &ObjectSet::all(li.n()), source, kind, None)
}

/// BFS restricted to copies of `active`, stopping once `target` is found.
///
/// Frontiers are expanded in ascending id order, so the parent of every
/// vertex is its smallest-id neighbor in the previous layer whatever the
/// oracle.
pub fn bfs_in(
    li: &LiftedInstance,
    active: &ObjectSet,
    source: LiftedVertex,
    kind: OracleKind,
    target: Option<LiftedVertex>,
) -> Result<BfsResult, SsspError> {
    let mut oracle = make_oracle(li, active, kind)?;
    Ok(run_bfs(oracle.as_mut(), 2 * li.n(), source, target))
}

pub(crate) fn run_bfs(
    oracle: &mut dyn NeighborOracle,
    vertex_count: usize,
    source: LiftedVertex,
    target: Option<LiftedVertex>,
) -> BfsResult {
    let mut dist = vec![None; vertex_count];
    let mut parent = vec![None; vertex_count];
    dist[source.id()] = Some(0);
    oracle.remove(source);
    let mut frontier = vec![source];
    let mut d = 0u32;
    while !frontier.is_empty() {
        d += 1;
        let mut next = Vec::new();
        for &u in &frontier {
            for v in oracle.extract_adjacent(u) {
                dist[v.id()] = Some(d);
                parent[v.id()] = Some(u);
                if Some(v) == target {
                    return BfsResult { source, dist, parent };
                }
                next.push(v);
            }
        }
        next.sort_unstable();
        frontier = next;
    }
    BfsResult { source, dist, parent }
}

/// Walk `c^-1 -> c^+1` in the lifted graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftPath {
    pub vertices: Vec<LiftedVertex>,
}

impl LiftPath {
    pub fn edge_count(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn project(&self) -> SeparatingSet {
        SeparatingSet::new(self.vertices.iter().map(|v| v.object))
    }
}

/// Sorted, duplicate-free object indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeparatingSet {
    pub objects: Vec<usize>,
}

impl SeparatingSet {
    pub fn new(objects: impl IntoIterator<Item = usize>) -> Self {
        let mut objects: Vec<usize> = objects.into_iter().collect();
        objects.sort_unstable();
        objects.dedup();
        SeparatingSet { objects }
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.objects.binary_search(&i).is_ok()
    }
}

/// `D_c` and its projection `F_c`, or `None` when the copies of `c` are not
/// connected.
pub fn shortest_lift_path(
    li: &LiftedInstance,
    c: usize,
    kind: OracleKind,
) -> Result<Option<(LiftPath, SeparatingSet)>, SsspError> {
    shortest_lift_path_in(li, &ObjectSet::all(li.n()), c, kind)
}

pub fn shortest_lift_path_in(
    li: &LiftedInstance,
    active: &ObjectSet,
    c: usize,
    kind: OracleKind,
) -> Result<Option<(LiftPath, SeparatingSet)>, SsspError> {
    let source = LiftedVertex::new(c, Sheet::Minus);
    let target = LiftedVertex::new(c, Sheet::Plus);
    let res = bfs_in(li, active, source, kind, Some(target))?;
    Ok(res.path_to(target).map(|vertices| {
        let path = LiftPath { vertices };
        let set = path.project();
        (path, set)
    }))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::geometry::{GeometricObject, Point};
    use crate::lift::normalize_instance;

    pub(crate) fn lifted(objects: Vec<GeometricObject>) -> LiftedInstance {
        let (inst, _) =
            normalize_instance(objects, Point::from_ints(0, 0), Point::from_ints(10, 0)).unwrap();
        LiftedInstance::new(inst).unwrap()
    }

    pub(crate) fn e1() -> LiftedInstance {
        use crate::geometry::{ratio, Segment};
        let seg = |ax, ay, bx, by| {
            GeometricObject::Segment(Segment::new(Point::new(ratio(ax, 5), ratio(ay, 5)), Point::new(ratio(bx, 5), ratio(by, 5))))
        };
        lifted(vec![
            GeometricObject::disk(3, 2, 1),
            GeometricObject::segment(4, -1, 5, -3),
            GeometricObject::segment(8, -4, 8, 4),
            seg(35, -18, 70, 3),
            seg(35, 18, 70, -3),
        ])
    }

    #[test]
    fn e1_distances() {
        let li = e1();
        let w = LiftedVertex::new(2, Sheet::Minus);
        let r = bfs(&li, w, OracleKind::Explicit).unwrap();
        assert_eq!(r.dist_to(w.flip()), Some(3));
        let (path, set) = shortest_lift_path(&li, 2, OracleKind::Explicit).unwrap().unwrap();
        assert_eq!(path.edge_count(), 3);
        assert_eq!(set.objects, vec![2, 3, 4]);
        let rect = bfs(&li, w, OracleKind::Rectilinear);
        assert!(rect.is_err(), "disk A is not rectilinear");
    }

    #[test]
    fn isolated_object_is_unreachable() {
        let li = lifted(vec![GeometricObject::disk(5, 3, 1)]);
        let r = bfs(&li, LiftedVertex::new(0, Sheet::Minus), OracleKind::Explicit).unwrap();
        assert_eq!(r.dist, vec![Some(0), None]);
        assert_eq!(shortest_lift_path(&li, 0, OracleKind::Explicit).unwrap(), None);
    }

    #[test]
    fn object_set_ops() {
        let s = ObjectSet::all(5).without([1, 3]);
        assert_eq!(s.indices(), &[0, 2, 4]);
        assert!(!s.contains(3));
        assert_eq!(ObjectSet::from_indices(4, [2, 0]).indices(), &[0, 2]);
    }

    #[test]
    fn separating_set_is_sorted_and_unique() {
        assert_eq!(SeparatingSet::new([3, 1, 3, 2]).objects, vec![1, 2, 3]);
    }
}
