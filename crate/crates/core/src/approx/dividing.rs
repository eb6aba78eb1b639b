use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::One;

use crate::geometry::Rational;
use crate::lift::{LiftedInstance, LiftedVertex, Sheet};
use crate::sssp::{LiftPath, ObjectSet, OracleKind, SeparatingSet};

use super::{ApproxError, Ctx};

/// Thresholds `f2`, `f3`, `f4` as functions of `m = |F_c|`.
#[derive(Clone, Debug, PartialEq)]
pub enum PathParams {
    /// `f2 = f4 = 2 f1`, `f3 = f1`.
    PlusOne { f1: usize },
    /// `f3 = max(1, eps m / (3 (1 + eps)))`, `f2 = f4 = m / sqrt(1 + eps) + 3`.
    MultAdd { epsilon: Rational },
}

fn int(v: usize) -> Rational {
    Rational::from_integer(v.into())
}

impl PathParams {
    /// `v <= m / sqrt(1 + eps) + 3`, decided exactly.
    fn within_f4(eps: &Rational, m: usize, v: usize) -> bool {
        v <= 3 || int(v - 3) * int(v - 3) * (Rational::one() + eps) <= int(m) * int(m)
    }

    pub fn is_case_two(&self, m: usize) -> bool {
        match self {
            PathParams::PlusOne { f1 } => m > 2 * f1,
            PathParams::MultAdd { epsilon } => !Self::within_f4(epsilon, m, m),
        }
    }

    /// Maximum gap between samples, `ceil(f3)`.
    pub fn gap(&self, m: usize) -> usize {
        match self {
            PathParams::PlusOne { f1 } => *f1,
            PathParams::MultAdd { epsilon } => {
                let f3 = epsilon * int(m) / (int(3) * (Rational::one() + epsilon));
                let (q, r) = f3.numer().div_rem(f3.denom());
                let ceil = if r > 0.into() { q + 1 } else { q };
                usize::try_from(ceil).unwrap_or(usize::MAX).max(1)
            }
        }
    }

    /// `v <= f4(m)`.
    pub fn is_small(&self, m: usize, v: usize) -> bool {
        match self {
            PathParams::PlusOne { f1 } => v <= 2 * f1,
            PathParams::MultAdd { epsilon } => Self::within_f4(epsilon, m, v),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DividingPathResult {
    /// Walk from `(c, -1)` to `(c, +1)`.
    pub path: Vec<LiftedVertex>,
    pub computed_sets: BTreeMap<usize, SeparatingSet>,
    /// Lower bounds on `|F|` for on-path objects without a computed set.
    pub certified_bounds: BTreeMap<usize, usize>,
}

/// Dividing path through `c` within `active`.
pub fn dividing_path(
    li: &LiftedInstance,
    active: &ObjectSet,
    c: usize,
    params: &PathParams,
    kind: OracleKind,
) -> Result<DividingPathResult, ApproxError> {
    run(&mut Ctx::new(li, kind), active, c, params, None)
}

/// Sample positions `1, 1 + g, 1 + 2g, ...` and `len - 1` on a path with
/// `len` edges.
pub fn sample_positions(len: usize, g: usize) -> Vec<usize> {
    let mut pos: Vec<usize> = (1..len).step_by(g.max(1)).collect();
    if len >= 2 && pos.last() != Some(&(len - 1)) {
        pos.push(len - 1);
    }
    pos
}

pub(super) fn run(
    ctx: &mut Ctx<'_>,
    active: &ObjectSet,
    c: usize,
    params: &PathParams,
    found: Option<(LiftPath, SeparatingSet)>,
) -> Result<DividingPathResult, ApproxError> {
    let (d, f) = match found {
        Some(x) => x,
        None => ctx.shortest(active, c)?.ok_or(ApproxError::Disconnected(c))?,
    };
    let m = f.len();
    let mut computed = BTreeMap::from([(c, f.clone())]);
    if !params.is_case_two(m) {
        for &o in &f.objects {
            if o != c {
                let (_, fo) = ctx.shortest(active, o)?.expect("objects on a separating path are separable");
                computed.insert(o, fo);
            }
        }
        return Ok(finish(d.vertices, computed));
    }
    let len = d.edge_count();
    let mut paths: BTreeMap<usize, LiftPath> = BTreeMap::new();
    let mut chosen = None;
    for i in sample_positions(len, params.gap(m)) {
        let o = d.vertices[i].object;
        if let Entry::Vacant(slot) = computed.entry(o) {
            let (po, fo) = ctx.shortest(active, o)?.expect("objects on a separating path are separable");
            paths.insert(o, po);
            slot.insert(fo);
        }
        if chosen.is_none() && params.is_small(m, computed[&o].len()) {
            chosen = Some(i);
        }
    }
    let Some(i) = chosen else {
        return Ok(finish(d.vertices, computed));
    };
    let v = d.vertices[i];
    let sub_found = paths.remove(&v.object).map(|p| (p, computed[&v.object].clone()));
    let sub = run(ctx, active, v.object, params, sub_found)?;
    let mut inner = sub.path;
    if v.sheet == Sheet::Plus {
        inner.iter_mut().for_each(|u| *u = u.flip());
    }
    let mut path = d.vertices[..=i].to_vec();
    path.extend_from_slice(&inner[1..]);
    path.extend(d.vertices[..i].iter().rev().map(|u| u.flip()));
    computed.extend(sub.computed_sets);
    Ok(finish(path, computed))
}

/// Walk distance bounds graph distance, so a computed `|F|` at position `p`
/// gives `|F| - |p - j|` at position `j`.
fn finish(path: Vec<LiftedVertex>, computed: BTreeMap<usize, SeparatingSet>) -> DividingPathResult {
    let val: Vec<i64> = path.iter().map(|v| computed.get(&v.object).map_or(i64::MIN / 2, |f| f.len() as i64)).collect();
    let mut reach = val.clone();
    for j in 1..reach.len() {
        reach[j] = reach[j].max(reach[j - 1] - 1);
    }
    for j in (0..reach.len().saturating_sub(1)).rev() {
        reach[j] = reach[j].max(reach[j + 1] - 1);
    }
    let mut bounds = BTreeMap::new();
    for (v, &r) in path.iter().zip(&reach) {
        if !computed.contains_key(&v.object) {
            let b = r.max(0) as usize;
            let e = bounds.entry(v.object).or_insert(b);
            *e = (*e).max(b);
        }
    }
    DividingPathResult { path, computed_sets: computed, certified_bounds: bounds }
}
