use crate::lift::{LiftedInstance, LiftedVertex};

use super::{NeighborOracle, ObjectSet};

/// Scans precomputed adjacency lists and filters out discovered vertices.
pub struct ExplicitOracle<'a> {
    adj: &'a [Vec<u32>],
    alive: Vec<bool>,
}

impl<'a> ExplicitOracle<'a> {
    pub fn new(li: &'a LiftedInstance, active: &ObjectSet) -> Self {
        let alive = (0..2 * li.n()).map(|id| active.contains(id / 2)).collect();
        ExplicitOracle { adj: li.adjacency(), alive }
    }
}

impl NeighborOracle for ExplicitOracle<'_> {
    fn remove(&mut self, v: LiftedVertex) {
        self.alive[v.id()] = false;
    }

    fn extract_adjacent(&mut self, u: LiftedVertex) -> Vec<LiftedVertex> {
        let mut out = Vec::new();
        for &w in &self.adj[u.id()] {
            let w = w as usize;
            if self.alive[w] {
                self.alive[w] = false;
                out.push(LiftedVertex::from_id(w));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::GeometricObject;
    use crate::lift::Sheet;
    use crate::sssp::tests::lifted;

    #[test]
    fn never_reports_twice() {
        let li = lifted(vec![
            GeometricObject::disk(3, 3, 1),
            GeometricObject::disk(4, 3, 1),
            GeometricObject::disk(5, 3, 1),
        ]);
        let mut o = ExplicitOracle::new(&li, &ObjectSet::all(3));
        let u = LiftedVertex::new(1, Sheet::Plus);
        o.remove(u);
        let first = o.extract_adjacent(u);
        assert_eq!(first, vec![LiftedVertex::new(0, Sheet::Plus), LiftedVertex::new(2, Sheet::Plus)]);
        assert!(o.extract_adjacent(u).is_empty());
        assert!(o.extract_adjacent(LiftedVertex::new(0, Sheet::Plus)).is_empty());
    }
}
