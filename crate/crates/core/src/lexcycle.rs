//! Multi-sweep dynamics of the LBFS⁺ map.
//!
//! The map `f(π) = lbfs_plus(G, π)` is a deterministic function on the
//! finite set of orderings, so every orbit `f(π), f²(π), ...` ends in a
//! cycle. LexCycle is the longest such cycle over all starting orderings.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::certify::{is_umbrella_free, Witness};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ordering::Ordering;
use crate::search::{lbfs, lbfs_plus, TieBreak};

/// Largest graph accepted by [`lexcycle_exact`].
pub const EXACT_MAX_N: usize = 8;

pub fn default_sweep_budget(n: usize) -> usize {
    4 * n + 4
}

/// `[σ₀, ..., σ_{k-1}]` with `σ₀ = lbfs_plus(pi)` and `σᵢ = lbfs_plus(σᵢ₋₁)`.
pub fn sweep_sequence(g: &Graph, pi: &Ordering, k: usize) -> Result<Vec<Ordering>> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "sweep count must be at least 1".into(),
        ));
    }
    let mut out = Vec::with_capacity(k);
    let mut current = lbfs_plus(g, pi)?;
    for _ in 1..k {
        let next = lbfs_plus(g, &current)?;
        out.push(std::mem::replace(&mut current, next));
    }
    out.push(current);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitResult {
    pub preperiod: usize,
    pub period: usize,
    /// Orderings on the terminal cycle, in visit order.
    pub cycle: Vec<Ordering>,
    /// `σ₀ ..= σ_{preperiod + period}`; the last entry repeats `σ_preperiod`.
    #[serde(skip)]
    pub trace: Vec<Ordering>,
}

/// Iterates the map from `σ₀ = lbfs_plus(pi)` until an ordering repeats.
///
/// `max_sweeps` bounds the number of distinct orderings visited; running out
/// yields [`Error::NoConvergence`] with the trace so far.
pub fn detect_orbit(g: &Graph, pi: &Ordering, max_sweeps: usize) -> Result<OrbitResult> {
    if max_sweeps == 0 {
        return Err(Error::InvalidParameter(
            "sweep budget must be at least 1".into(),
        ));
    }
    let mut seen: HashMap<Ordering, usize> = HashMap::new();
    let mut trace = Vec::new();
    let mut current = lbfs_plus(g, pi)?;
    loop {
        if let Some(&first) = seen.get(&current) {
            let period = trace.len() - first;
            let cycle = trace[first..].to_vec();
            trace.push(current);
            return Ok(OrbitResult {
                preperiod: first,
                period,
                cycle,
                trace,
            });
        }
        if seen.len() == max_sweeps {
            return Err(Error::NoConvergence {
                budget: max_sweeps,
                trace,
            });
        }
        seen.insert(current.clone(), trace.len());
        let next = lbfs_plus(g, &current)?;
        trace.push(std::mem::replace(&mut current, next));
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimateMode {
    Exact,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LexCycleEstimate {
    pub value: usize,
    pub mode: EstimateMode,
    pub starts_examined: usize,
    /// The first start (in the mode's fixed start order) reaching `value`.
    pub argmax_start: Ordering,
}

/// LexCycle over all `n!` starting orderings.
///
/// Rather than walking each orbit separately, the map is tabulated once on
/// every permutation and the resulting functional graph is labelled with the
/// length of the cycle each node drains into. The maximum over starts equals
/// the longest cycle; the reported start is the lexicographically smallest
/// permutation whose orbit ends on such a cycle.
pub fn lexcycle_exact(g: &Graph) -> Result<LexCycleEstimate> {
    let n = g.n();
    if n > EXACT_MAX_N {
        return Err(Error::SizeGuard {
            what: "exact LexCycle",
            n,
            max: EXACT_MAX_N,
            hint: "; use the sampled estimator instead",
        });
    }
    let perms = permutations(n);
    let image: Vec<usize> = perms
        .par_iter()
        .map(|p| {
            let next = lbfs_plus(g, &Ordering::from_seq_unchecked(p.clone()))
                .expect("permutation covers the graph");
            permutation_rank(next.as_slice())
        })
        .collect();

    let cycle_len = terminal_cycle_lengths(&image);
    let value = cycle_len.iter().copied().max().unwrap_or(1);
    let best = cycle_len.iter().position(|&c| c == value).unwrap_or(0);
    Ok(LexCycleEstimate {
        value,
        mode: EstimateMode::Exact,
        starts_examined: perms.len(),
        argmax_start: Ordering::from_seq_unchecked(perms[best].clone()),
    })
}

/// Lower bound on LexCycle from `trials` seeded random starts followed by
/// the `n` canonical starts `lbfs(g, v, min-index)`.
pub fn lexcycle_sampled(g: &Graph, trials: usize, seed: u64) -> Result<LexCycleEstimate> {
    if trials == 0 {
        return Err(Error::InvalidParameter(
            "at least one trial is required".into(),
        ));
    }
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut starts = Vec::with_capacity(trials + n);
    for _ in 0..trials {
        let mut seq: Vec<usize> = (0..n).collect();
        seq.shuffle(&mut rng);
        starts.push(Ordering::from_seq_unchecked(seq));
    }
    for v in 0..n {
        starts.push(lbfs(g, v, &TieBreak::MinIndex)?);
    }
    // every orbit repeats within n! + 1 sweeps, so no budget is imposed here
    let periods = starts
        .par_iter()
        .map(|s| detect_orbit(g, s, usize::MAX).map(|o| o.period))
        .collect::<Result<Vec<_>>>()?;
    let value = periods.iter().copied().max().unwrap_or(1);
    let best = periods.iter().position(|&p| p == value).unwrap_or(0);
    Ok(LexCycleEstimate {
        value,
        mode: EstimateMode::Sampled,
        starts_examined: starts.len(),
        argmax_start: starts.swap_remove(best),
    })
}

/// A cocomparability ordering reached from a seeded random ordering: sweeps
/// LBFS⁺ up to `n + 1` times and returns the first umbrella-free sweep.
pub fn random_cocomp_ordering(g: &Graph, seed: u64) -> Option<Ordering> {
    let n = g.n();
    let mut seq: Vec<usize> = (0..n).collect();
    seq.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut sigma = Ordering::from_seq_unchecked(seq);
    for _ in 0..=n {
        sigma = lbfs_plus(g, &sigma).expect("sweep covers the graph");
        if is_umbrella_free(g, &sigma).passed() {
            return Some(sigma);
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremVerdict {
    Pass,
    Fail,
    NotApplicable,
}

/// Leftmost position where `σ₁` and `σ₃` differ, with the vertices there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub position: usize,
    /// Vertex of `σ₁` at `position`.
    pub a1: usize,
    /// Vertex of `σ₃` at `position`.
    pub b1: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub verdict: TheoremVerdict,
    /// `σ₀ ..= σ₃`, empty when not applicable.
    pub sweeps: Vec<Ordering>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divergence: Option<Divergence>,
    /// Umbrella witness showing `pi` is not a cocomparability ordering.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Checks `σ₁ = σ₃` for the sweeps `σ₀ = lbfs_plus(pi)`, `σᵢ₊₁ =
/// lbfs_plus(σᵢ)`. `pi` must be a cocomparability ordering; otherwise the
/// report is not-applicable.
pub fn theorem_check(g: &Graph, pi: &Ordering) -> Result<TheoremReport> {
    if pi.len() != g.n() {
        return Err(Error::NotAPermutation {
            len: pi.len(),
            n: g.n(),
        });
    }
    let premise = is_umbrella_free(g, pi);
    if !premise.passed() {
        return Ok(TheoremReport {
            verdict: TheoremVerdict::NotApplicable,
            sweeps: Vec::new(),
            divergence: None,
            witness: premise.witness,
        });
    }
    let sweeps = sweep_sequence(g, pi, 4)?;
    let divergence = sweeps[1]
        .iter()
        .zip(sweeps[3].iter())
        .position(|(a, b)| a != b)
        .map(|position| Divergence {
            position,
            a1: sweeps[1].vertex_at(position),
            b1: sweeps[3].vertex_at(position),
        });
    Ok(TheoremReport {
        verdict: if divergence.is_none() {
            TheoremVerdict::Pass
        } else {
            TheoremVerdict::Fail
        },
        sweeps,
        divergence,
        witness: None,
    })
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n)
            .rev()
            .find(|&j| p[j] > p[i - 1])
            .expect("pivot has a successor");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Index of `p` in the lexicographic list of permutations (Lehmer code).
fn permutation_rank(p: &[usize]) -> usize {
    let n = p.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller_after = p[i + 1..].iter().filter(|&&q| q < p[i]).count();
        rank = rank * (n - i) + smaller_after;
    }
    rank
}

/// For a functional graph `i -> image[i]`, the length of the cycle each node
/// eventually reaches.
fn terminal_cycle_lengths(image: &[usize]) -> Vec<usize> {
    const UNSEEN: usize = 0;
    const ON_PATH: usize = usize::MAX;
    let mut len = vec![UNSEEN; image.len()];
    let mut path = Vec::new();
    for start in 0..image.len() {
        let mut v = start;
        while len[v] == UNSEEN {
            len[v] = ON_PATH;
            path.push(v);
            v = image[v];
        }
        let terminal = if len[v] == ON_PATH {
            // closed a new cycle at v
            let at = path.iter().position(|&u| u == v).expect("v is on the path");
            let cycle = path.len() - at;
            for &u in &path[at..] {
                len[u] = cycle;
            }
            path.truncate(at);
            cycle
        } else {
            len[v]
        };
        for &u in &path {
            len[u] = terminal;
        }
        path.clear();
    }
    len
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(seq: &[usize]) -> Ordering {
        Ordering::from_seq(seq.to_vec()).unwrap()
    }

    fn p4() -> Graph {
        Graph::from_edge_list(4, [(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn sweep_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(
            sweep_sequence(&k3, &ord(&[0, 1, 2]), 3).unwrap(),
            vec![ord(&[2, 1, 0]), ord(&[0, 1, 2]), ord(&[2, 1, 0])]
        );
        assert_eq!(
            sweep_sequence(&Graph::empty(1), &ord(&[0]), 2).unwrap(),
            vec![ord(&[0]), ord(&[0])]
        );
        assert_eq!(
            sweep_sequence(&p4(), &ord(&[0, 1, 2, 3]), 2).unwrap(),
            vec![ord(&[3, 2, 1, 0]), ord(&[0, 1, 2, 3])]
        );
        assert!(sweep_sequence(&p4(), &ord(&[0, 1, 2, 3]), 0).is_err());
        assert!(sweep_sequence(&p4(), &ord(&[0, 1, 2]), 1).is_err());
    }

    #[test]
    fn orbit_examples() {
        let o = detect_orbit(&Graph::complete(3), &ord(&[0, 1, 2]), 16).unwrap();
        assert_eq!((o.preperiod, o.period), (0, 2));
        assert_eq!(o.cycle, vec![ord(&[2, 1, 0]), ord(&[0, 1, 2])]);
        assert_eq!(o.trace.len(), 3);

        let o = detect_orbit(&Graph::empty(1), &ord(&[0]), 1).unwrap();
        assert_eq!(o.period, 1);

        let o = detect_orbit(&p4(), &ord(&[0, 1, 2, 3]), default_sweep_budget(4)).unwrap();
        assert_eq!(o.period, 2);
    }

    #[test]
    fn budget_exhaustion_carries_trace() {
        match detect_orbit(&Graph::complete(3), &ord(&[0, 1, 2]), 1) {
            Err(Error::NoConvergence { budget: 1, trace }) => {
                assert_eq!(trace, vec![ord(&[2, 1, 0])])
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(detect_orbit(&Graph::complete(3), &ord(&[0, 1, 2]), 0).is_err());
    }

    #[test]
    fn exact_examples() {
        assert_eq!(lexcycle_exact(&Graph::empty(1)).unwrap().value, 1);
        let k3 = lexcycle_exact(&Graph::complete(3)).unwrap();
        assert_eq!((k3.value, k3.starts_examined), (2, 6));
        assert_eq!(k3.argmax_start, ord(&[0, 1, 2]));
        assert_eq!(lexcycle_exact(&p4()).unwrap().value, 2);
        assert!(matches!(
            lexcycle_exact(&Graph::empty(9)),
            Err(Error::SizeGuard { n: 9, max: 8, .. })
        ));
    }

    #[test]
    fn sampled_examples() {
        let est = lexcycle_sampled(&Graph::complete(5), 10, 7).unwrap();
        assert_eq!(est.value, 2);
        assert_eq!(est.mode, EstimateMode::Sampled);
        assert_eq!(est.starts_examined, 15);
        assert_eq!(lexcycle_sampled(&Graph::empty(1), 1, 3).unwrap().value, 1);
        assert!(lexcycle_sampled(&Graph::empty(1), 0, 3).is_err());
    }

    #[test]
    fn theorem_examples() {
        let r = theorem_check(&p4(), &ord(&[0, 1, 2, 3])).unwrap();
        assert_eq!(r.verdict, TheoremVerdict::Pass);
        assert_eq!(r.sweeps.len(), 4);

        let c4 = Graph::from_edge_list(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(
            theorem_check(&c4, &ord(&[0, 1, 3, 2])).unwrap().verdict,
            TheoremVerdict::Pass
        );

        let r = theorem_check(&p4(), &ord(&[1, 3, 0, 2])).unwrap();
        assert_eq!(r.verdict, TheoremVerdict::NotApplicable);
        assert!(r.witness.is_some());
    }

    #[test]
    fn random_cocomp_orderings() {
        let c4 = Graph::from_edge_list(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        for seed in 0..10 {
            let o = random_cocomp_ordering(&c4, seed).unwrap();
            assert!(is_umbrella_free(&c4, &o).passed());
        }
        let c5 = Graph::from_edge_list(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(random_cocomp_ordering(&c5, 1), None);
    }

    #[test]
    fn permutation_ranking() {
        let perms = permutations(4);
        assert_eq!(perms.len(), 24);
        for (i, p) in perms.iter().enumerate() {
            assert_eq!(permutation_rank(p), i);
        }
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn functional_graph_labels() {
        // 0 -> 1 -> 2 -> 1, 3 -> 3, 4 -> 0
        assert_eq!(
            terminal_cycle_lengths(&[1, 2, 1, 3, 0]),
            vec![2, 2, 2, 1, 2]
        );
    }
}
