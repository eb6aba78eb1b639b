use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::lift::LiftedInstance;
use crate::sssp::{ObjectSet, OracleKind, SeparatingSet, SsspError};

use super::Ctx;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeMode {
    /// Uniform samples with replacement.
    Random,
    /// Every object once, in a seed-shuffled order.
    Derandomized,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeResult {
    pub best_set: Option<SeparatingSet>,
    pub probes_used: usize,
    pub threshold: usize,
    /// No probe produced a set smaller than `threshold`.
    pub certified_large: bool,
}

/// `ceil((n / f1) * c * ln n)`, at least 1.
pub fn probe_count(n: usize, f1: usize, c: f64) -> usize {
    let n_f = n as f64;
    ((n_f / f1 as f64 * c * n_f.ln()).ceil() as usize).max(1)
}

fn below(rng: &mut SplitMix64, n: usize) -> usize {
    ((u128::from(rng.next_u64()) * n as u128) >> 64) as usize
}

/// Shortest lifted paths from sampled objects; keeps the smallest set.
pub fn monte_carlo_probe(
    li: &LiftedInstance,
    iterations: usize,
    seed: u64,
    mode: ProbeMode,
    threshold: usize,
    kind: OracleKind,
) -> Result<ProbeResult, SsspError> {
    run(&mut Ctx::new(li, kind), iterations, seed, mode, threshold)
}

pub(super) fn run(
    ctx: &mut Ctx<'_>,
    iterations: usize,
    seed: u64,
    mode: ProbeMode,
    threshold: usize,
) -> Result<ProbeResult, SsspError> {
    let n = ctx.li.n();
    let mut rng = SplitMix64::seed_from_u64(seed);
    let picks: Vec<usize> = match mode {
        ProbeMode::Skip => Vec::new(),
        ProbeMode::Random => (0..iterations).map(|_| below(&mut rng, n)).collect(),
        ProbeMode::Derandomized => {
            let mut p: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                p.swap(i, below(&mut rng, i + 1));
            }
            p
        }
    };
    let all = ObjectSet::all(n);
    let mut cache: Vec<Option<Option<SeparatingSet>>> = vec![None; n];
    let mut best: Option<SeparatingSet> = None;
    for &c in &picks {
        if cache[c].is_none() {
            cache[c] = Some(ctx.shortest(&all, c)?.map(|(_, f)| f));
        }
        if let Some(Some(f)) = &cache[c] {
            if best.as_ref().is_none_or(|b| (f.len(), &f.objects) < (b.len(), &b.objects)) {
                best = Some(f.clone());
            }
        }
    }
    let certified_large = best.as_ref().is_none_or(|b| b.len() >= threshold);
    Ok(ProbeResult { best_set: best, probes_used: picks.len(), threshold, certified_large })
}
