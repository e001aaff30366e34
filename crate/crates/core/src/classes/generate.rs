//! Seeded generators for cocomparability and interval graphs.
//!
//! Every sample carries the object that proves its membership: a linear
//! extension of the poset whose comparability graph is the complement, or
//! an interval model.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::recognize::{classify, ClassTag};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ordering::Ordering;

/// A strict partial order on `0..n` given by its full (transitively closed)
/// relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetSpec {
    pub n: usize,
    pub relation: BTreeSet<(usize, usize)>,
}

impl PosetSpec {
    /// Irreflexive, antisymmetric (hence acyclic once transitive) and
    /// transitive.
    pub fn is_valid(&self) -> bool {
        let rel = &self.relation;
        rel.iter()
            .all(|&(a, b)| a < self.n && b < self.n && a != b && !rel.contains(&(b, a)))
            && rel.iter().all(|&(a, b)| {
                rel.range((b, 0)..(b + 1, 0))
                    .all(|&(_, c)| rel.contains(&(a, c)))
            })
    }

    pub fn comparability_graph(&self) -> Graph {
        Graph::from_edge_list(self.n, self.relation.iter().copied())
            .expect("a valid poset relation is loop-free and in range")
    }
}

/// Samples a uniform linear order of `0..n`, adds each forward pair as an
/// arc with probability `p`, and closes transitively. Returns the poset and
/// the linear order, which is a linear extension of it.
pub fn random_poset(n: usize, p: f64, seed: u64) -> Result<(PosetSpec, Ordering)> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "probability {p} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);

    // reach[i]: positions j > i reachable from position i, as a bitset
    let words = n.div_ceil(64);
    let mut arcs = vec![vec![false; n]; n];
    for (i, row) in arcs.iter_mut().enumerate() {
        for slot in row.iter_mut().skip(i + 1) {
            *slot = rng.gen_bool(p);
        }
    }
    let mut reach = vec![vec![0u64; words]; n];
    for i in (0..n).rev() {
        for j in i + 1..n {
            if arcs[i][j] && reach[i][j / 64] & (1 << (j % 64)) == 0 {
                reach[i][j / 64] |= 1 << (j % 64);
                let (head, tail) = reach.split_at_mut(j);
                for (dst, src) in head[i].iter_mut().zip(&tail[0]) {
                    *dst |= src;
                }
            }
        }
    }
    let mut relation = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            if reach[i][j / 64] & (1 << (j % 64)) != 0 {
                relation.insert((order[i], order[j]));
            }
        }
    }
    Ok((
        PosetSpec { n, relation },
        Ordering::from_seq_unchecked(order),
    ))
}

/// A closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }
}

/// Intersection graph of closed intervals.
pub fn interval_graph(model: &[Interval]) -> Graph {
    let n = model.len();
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| model[u].intersects(&model[v]));
    Graph::from_edge_list(n, edges).expect("pairs are in range and loop-free")
}

/// Vertices by left endpoint, ties by id.
pub fn interval_order(model: &[Interval]) -> Ordering {
    let mut seq: Vec<usize> = (0..model.len()).collect();
    seq.sort_by(|&a, &b| model[a].lo.total_cmp(&model[b].lo).then(a.cmp(&b)));
    Ordering::from_seq_unchecked(seq)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum Provenance {
    CocompOrdering(Ordering),
    IntervalModel(Vec<Interval>),
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassSample {
    pub graph: Graph,
    pub witness: Provenance,
}

impl ClassSample {
    /// A cocomparability ordering certified by the provenance, if any.
    pub fn witness_ordering(&self) -> Option<Ordering> {
        match &self.witness {
            Provenance::CocompOrdering(o) => Some(o.clone()),
            Provenance::IntervalModel(model) => Some(interval_order(model)),
            Provenance::None => None,
        }
    }

    /// Sidecar text: space-separated ids for an ordering, one `lo hi` line
    /// per vertex for an interval model.
    pub fn witness_sidecar(&self) -> Option<String> {
        match &self.witness {
            Provenance::CocompOrdering(o) => Some(format!("{o}\n")),
            Provenance::IntervalModel(model) => {
                let mut out = String::new();
                for iv in model {
                    let _ = writeln!(out, "{} {}", iv.lo, iv.hi);
                }
                Some(out)
            }
            Provenance::None => None,
        }
    }
}

/// Complement of the comparability graph of a random poset, witnessed by
/// the sampled linear order.
pub fn gen_poset_cocomp(n: usize, p: f64, seed: u64) -> Result<ClassSample> {
    let (poset, order) = random_poset(n, p, seed)?;
    Ok(ClassSample {
        graph: poset.comparability_graph().complement(),
        witness: Provenance::CocompOrdering(order),
    })
}

/// Random interval graph: a random permutation of `0..2n` is cut into
/// consecutive pairs, each pair spanning one interval, so all endpoints are
/// distinct.
pub fn gen_interval(n: usize, seed: u64) -> ClassSample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ends: Vec<usize> = (0..2 * n).collect();
    ends.shuffle(&mut rng);
    let model: Vec<Interval> = ends
        .chunks(2)
        .map(|pair| Interval {
            lo: pair[0].min(pair[1]) as f64,
            hi: pair[0].max(pair[1]) as f64,
        })
        .collect();
    ClassSample {
        graph: interval_graph(&model),
        witness: Provenance::IntervalModel(model),
    }
}

/// Draws [`gen_poset_cocomp`] samples until one is classified with
/// `predicate`. Draw seeds come from a stream seeded by `seed`. Returns the
/// sample and the number of draws used.
pub fn gen_rejection(
    n: usize,
    p: f64,
    seed: u64,
    predicate: ClassTag,
    budget: usize,
) -> Result<(ClassSample, usize)> {
    let mut seeds = ChaCha8Rng::seed_from_u64(seed);
    for draw in 1..=budget {
        let sample = gen_poset_cocomp(n, p, seeds.next_u64())?;
        if classify(&sample.graph).contains(&predicate) {
            return Ok((sample, draw));
        }
    }
    Err(Error::RejectionExhausted {
        draws: budget,
        predicate: predicate.name().to_string(),
    })
}
