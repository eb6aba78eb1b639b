//! Approximation schemes built on repeated shortest-path computations in the
//! lifted graph.

mod dividing;
mod probe;

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::geometry::{segment_intersection, st_interval, GeometricObject, GeometryError, Rational, Segment, SegmentIntersection};
use crate::lift::{Instance, LiftError, LiftedInstance, LiftedVertex, Sheet};
use crate::sssp::{make_oracle, shortest_lift_path_in, LiftPath, NeighborOracle, ObjectSet, OracleKind, SeparatingSet, SsspError};

pub use dividing::{dividing_path, DividingPathResult, PathParams};
pub use probe::{monte_carlo_probe, probe_count, ProbeMode, ProbeResult};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ApproxError {
    #[error("no subset of the objects separates s from t")]
    Infeasible,
    #[error("object {0} meets st but is not convex")]
    NotConvex(usize),
    #[error("the copies of object {0} are not connected")]
    Disconnected(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error(transparent)]
    Sssp(#[from] SsspError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ApproxParams {
    pub alpha: f64,
    pub epsilon: f64,
    pub k: usize,
    pub seed: u64,
    pub probe: ProbeMode,
    /// Constant in the probe count `ceil((n / f1) * c * ln n)`.
    pub probe_constant: f64,
}

impl Default for ApproxParams {
    fn default() -> Self {
        ApproxParams { alpha: 1.0, epsilon: 1.0, k: 1, seed: 0, probe: ProbeMode::Random, probe_constant: 3.0 }
    }
}

/// Shortest-path computations and component sweeps performed by a run.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CallStats {
    pub shortest_paths: usize,
    pub sweeps: usize,
    /// Every call weighted by the size of the object set it ran on,
    /// divided by `n`.
    pub weighted: f64,
}

impl CallStats {
    pub fn raw(&self) -> usize {
        self.shortest_paths + self.sweeps
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ApproxOutcome {
    pub set: SeparatingSet,
    pub stats: CallStats,
    pub probe: Option<ProbeResult>,
    /// The +1 scheme stopped after probing certified a large optimum.
    pub halted_after_probe: bool,
}

/// Shared state of one run: call counters and the best set seen so far.
pub(crate) struct Ctx<'a> {
    pub li: &'a LiftedInstance,
    pub kind: OracleKind,
    pub stats: CallStats,
    pub best: Option<SeparatingSet>,
}

fn better(a: &SeparatingSet, b: &SeparatingSet) -> bool {
    (a.len(), &a.objects) < (b.len(), &b.objects)
}

impl<'a> Ctx<'a> {
    pub fn new(li: &'a LiftedInstance, kind: OracleKind) -> Self {
        Ctx { li, kind, stats: CallStats::default(), best: None }
    }

    fn weight(&self, active: &ObjectSet) -> f64 {
        active.len() as f64 / self.li.n().max(1) as f64
    }

    pub fn offer(&mut self, f: &SeparatingSet) {
        if self.best.as_ref().is_none_or(|b| better(f, b)) {
            self.best = Some(f.clone());
        }
    }

    pub fn shortest(&mut self, active: &ObjectSet, c: usize) -> Result<Option<(LiftPath, SeparatingSet)>, SsspError> {
        self.stats.shortest_paths += 1;
        self.stats.weighted += self.weight(active);
        let r = shortest_lift_path_in(self.li, active, c, self.kind)?;
        if let Some((_, f)) = &r {
            self.offer(f);
        }
        Ok(r)
    }

    fn oracle(&mut self, active: &ObjectSet) -> Result<Box<dyn NeighborOracle + 'a>, SsspError> {
        self.stats.sweeps += 1;
        self.stats.weighted += self.weight(active);
        make_oracle(self.li, active, self.kind)
    }
}

/// Breadth-first sweep from `root` inside a shared oracle. Returns the
/// reached vertices in visiting order.
fn sweep(
    oracle: &mut dyn NeighborOracle,
    seen: &mut [bool],
    parent: &mut [Option<LiftedVertex>],
    root: LiftedVertex,
) -> Vec<LiftedVertex> {
    seen[root.id()] = true;
    oracle.remove(root);
    let mut order = vec![root];
    let mut head = 0;
    while head < order.len() {
        let end = order.len();
        let mut layer = Vec::new();
        for &u in &order[head..end] {
            for v in oracle.extract_adjacent(u) {
                seen[v.id()] = true;
                parent[v.id()] = Some(u);
                layer.push(v);
            }
        }
        layer.sort_unstable();
        head = end;
        order.extend(layer);
    }
    order
}

/// Object sets of the connected components of the intersection graph
/// restricted to `active`, ordered by smallest member.
pub fn object_components(li: &LiftedInstance, active: &ObjectSet, kind: OracleKind) -> Result<Vec<Vec<usize>>, SsspError> {
    Ctx::new(li, kind).components(active)
}

/// Objects of `active` outside `objects` that meet some member of `objects`.
pub fn one_hop(li: &LiftedInstance, active: &ObjectSet, objects: &[usize], kind: OracleKind) -> Result<Vec<usize>, SsspError> {
    Ctx::new(li, kind).one_hop(active, objects)
}

impl Ctx<'_> {
    pub fn components(&mut self, active: &ObjectSet) -> Result<Vec<Vec<usize>>, SsspError> {
        let n2 = 2 * self.li.n();
        let mut oracle = self.oracle(active)?;
        let (mut seen, mut parent) = (vec![false; n2], vec![None; n2]);
        let mut out = Vec::new();
        for &o in active.indices() {
            let minus = LiftedVertex::new(o, Sheet::Minus);
            if seen[minus.id()] {
                continue;
            }
            let mut comp = sweep(oracle.as_mut(), &mut seen, &mut parent, minus);
            let plus = minus.flip();
            if !seen[plus.id()] {
                comp.extend(sweep(oracle.as_mut(), &mut seen, &mut parent, plus));
            }
            let mut objs: Vec<usize> = comp.iter().map(|v| v.object).collect();
            objs.sort_unstable();
            objs.dedup();
            out.push(objs);
        }
        Ok(out)
    }

    pub fn one_hop(&mut self, active: &ObjectSet, objects: &[usize]) -> Result<Vec<usize>, SsspError> {
        let mut oracle = self.oracle(active)?;
        let inside = |o: usize| objects.binary_search(&o).is_ok();
        for &o in objects {
            for b in Sheet::BOTH {
                oracle.remove(LiftedVertex::new(o, b));
            }
        }
        let mut out = Vec::new();
        for &o in objects {
            for b in Sheet::BOTH {
                out.extend(oracle.extract_adjacent(LiftedVertex::new(o, b)).into_iter().map(|v| v.object));
            }
        }
        out.retain(|&o| !inside(o));
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

/// Objects meeting `st`, ordered by the left end of their chord, then the
/// right end, then index.
pub fn st_crossing_order(inst: &Instance) -> Result<Vec<usize>, ApproxError> {
    let st = Segment::new(inst.s.clone(), inst.t.clone());
    let mut keyed = Vec::new();
    for (i, o) in inst.objects.iter().enumerate() {
        match st_interval(o, &inst.s, &inst.t) {
            Ok(Some(iv)) => keyed.push((iv, i)),
            Ok(None) => {}
            Err(GeometryError::NotConvex) => {
                let GeometricObject::Polyline(p) = o else { return Err(ApproxError::NotConvex(i)) };
                if p.edges().any(|e| !matches!(segment_intersection(&e, &st), SegmentIntersection::None)) {
                    return Err(ApproxError::NotConvex(i));
                }
            }
            Err(_) => return Err(ApproxError::NotConvex(i)),
        }
    }
    keyed.sort_by(|a, b| a.0.cmp_exact(&b.0).then(a.1.cmp(&b.1)));
    Ok(keyed.into_iter().map(|(_, i)| i).collect())
}

/// Dividing paths through the middle crossing object of each component,
/// deleting each path with its neighborhood and recursing on what is left.
fn divide_and_conquer(ctx: &mut Ctx<'_>, order: &[usize], params: &PathParams) -> Result<(), ApproxError> {
    let n = ctx.li.n();
    let mut pending = vec![ObjectSet::all(n)];
    while let Some(active) = pending.pop() {
        for comp in ctx.components(&active)?.into_iter().rev() {
            if comp.len() < 2 {
                continue;
            }
            let members = ObjectSet::from_indices(n, comp);
            let crossing: Vec<usize> = order.iter().copied().filter(|&o| members.contains(o)).collect();
            if crossing.is_empty() {
                continue;
            }
            let c = crossing[crossing.len() / 2];
            let Some(found) = ctx.shortest(&members, c)? else { continue };
            let res = dividing::run(ctx, &members, c, params, Some(found))?;
            let on_path = SeparatingSet::new(res.path.iter().map(|v| v.object)).objects;
            let hop = ctx.one_hop(&members, &on_path)?;
            let rest = members.without(on_path.into_iter().chain(hop));
            if rest.len() >= 2 {
                pending.push(rest);
            }
        }
    }
    Ok(())
}

fn finish(ctx: Ctx<'_>, probe: Option<ProbeResult>, halted: bool) -> Result<ApproxOutcome, ApproxError> {
    let set = ctx.best.ok_or(ApproxError::Infeasible)?;
    Ok(ApproxOutcome { set, stats: ctx.stats, probe, halted_after_probe: halted })
}

/// `ceil(alpha * sqrt(n))`, at least 1.
pub fn plus_one_threshold(alpha: f64, n: usize) -> usize {
    ((alpha * (n as f64).sqrt()).ceil() as usize).max(1)
}

/// Additive +1 scheme: probing, then divide and conquer over dividing paths.
pub fn approx_plus_one(inst: &Instance, params: &ApproxParams, kind: OracleKind) -> Result<ApproxOutcome, ApproxError> {
    if !(params.alpha > 0.0 && params.alpha.is_finite()) {
        return Err(ApproxError::InvalidParameter(format!("alpha must be positive, got {}", params.alpha)));
    }
    let li = LiftedInstance::new(inst.filled_view())?;
    let order = st_crossing_order(li.instance())?;
    let n = li.n();
    let mut ctx = Ctx::new(&li, kind);
    let f1 = plus_one_threshold(params.alpha, n);
    let mut probe = None;
    if n > 0 && params.probe != ProbeMode::Skip {
        let iterations = probe_count(n, f1, params.probe_constant);
        let r = probe::run(&mut ctx, iterations, params.seed, params.probe, f1)?;
        let halt = r.certified_large && r.best_set.is_some();
        probe = Some(r);
        if halt {
            return finish(ctx, probe, true);
        }
    }
    divide_and_conquer(&mut ctx, &order, &PathParams::PlusOne { f1 })?;
    finish(ctx, probe, false)
}

/// Multiplicative-additive scheme: `(1 + epsilon) OPT + 1`, deterministic.
pub fn approx_mult_add(inst: &Instance, epsilon: f64, kind: OracleKind) -> Result<ApproxOutcome, ApproxError> {
    let eps = Rational::from_float(epsilon)
        .filter(|e| *e > Rational::zero() && *e <= Rational::one() + Rational::one())
        .ok_or_else(|| ApproxError::InvalidParameter(format!("epsilon must lie in (0, 2], got {epsilon}")))?;
    let li = LiftedInstance::new(inst.filled_view())?;
    let order = st_crossing_order(li.instance())?;
    let mut ctx = Ctx::new(&li, kind);
    divide_and_conquer(&mut ctx, &order, &PathParams::MultAdd { epsilon: eps })?;
    finish(ctx, None, false)
}

/// Euler tour of a rooted tree given by children lists.
fn euler_tour(root: LiftedVertex, children: &[Vec<LiftedVertex>]) -> Vec<LiftedVertex> {
    let mut tour = vec![root];
    let mut stack = vec![(root, 0usize)];
    while let Some((v, i)) = stack.last_mut() {
        if let Some(&c) = children[v.id()].get(*i) {
            *i += 1;
            tour.push(c);
            stack.push((c, 0));
        } else {
            stack.pop();
            if let Some((p, _)) = stack.last() {
                tour.push(*p);
            }
        }
    }
    tour
}

/// 1-based positions `1, 1 + (2k + 1), ...` of a sequence of length `len`,
/// plus `len` itself.
pub fn net_positions(len: usize, k: usize) -> Vec<usize> {
    let mut pos: Vec<usize> = (1..=len).step_by(2 * k + 1).collect();
    if pos.last() != Some(&len) && len > 0 {
        pos.push(len);
    }
    pos
}

/// Additive +k scheme: shortest paths from a net over an Euler tour of a
/// spanning forest of the lifted graph.
pub fn approx_plus_k(inst: &Instance, k: usize, kind: OracleKind) -> Result<ApproxOutcome, ApproxError> {
    if k == 0 {
        return Err(ApproxError::InvalidParameter("k must be at least 1".into()));
    }
    let li = LiftedInstance::new(inst.clone())?;
    let n = li.n();
    let mut ctx = Ctx::new(&li, kind);
    let all = ObjectSet::all(n);
    let mut picks = Vec::new();
    {
        let mut oracle = ctx.oracle(&all)?;
        let (mut seen, mut parent) = (vec![false; 2 * n], vec![None; 2 * n]);
        let mut children = vec![Vec::new(); 2 * n];
        for id in 0..2 * n {
            if seen[id] {
                continue;
            }
            let root = LiftedVertex::from_id(id);
            let order = sweep(oracle.as_mut(), &mut seen, &mut parent, root);
            for v in &order[1..] {
                let p: LiftedVertex = parent[v.id()].expect("non-root vertex");
                children[p.id()].push(*v);
            }
            let tour = euler_tour(root, &children);
            picks.extend(net_positions(tour.len(), k).into_iter().map(|p| tour[p - 1].object));
        }
    }
    let mut done = vec![false; n];
    for o in picks {
        if !std::mem::replace(&mut done[o], true) {
            ctx.shortest(&all, o)?;
        }
    }
    finish(ctx, None, false)
}

impl fmt::Display for CallStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} shortest paths, {} sweeps, weighted {:.2}", self.shortest_paths, self.sweeps, self.weighted)
    }
}
