//! Lexicographic breadth-first search.
//!
//! Two engines share one contract. [`lbfs`] runs in `O(n + m)` by partition
//! refinement; [`lbfs_naive`] keeps the literal label sequences and compares
//! them, and serves as the reference the fast engine is tested against.
//!
//! Every tie-break rule is expressed as a strict preference order over the
//! vertices: among the tied vertices, the most preferred one is visited.

use std::borrow::Cow;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ordering::Ordering;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieBreak {
    /// Smallest vertex id wins.
    MinIndex,
    /// The vertex rightmost in the carried ordering wins (the LBFS⁺ rule).
    PriorRightmost(Ordering),
    /// A seeded uniformly random preference order, fixed for the whole sweep.
    Seeded(u64),
}

impl TieBreak {
    /// Vertices from most to least preferred.
    pub fn preference(&self, n: usize) -> Result<Cow<'_, [usize]>> {
        Ok(match self {
            TieBreak::MinIndex => Cow::Owned((0..n).collect()),
            TieBreak::PriorRightmost(prior) => {
                if prior.len() != n {
                    return Err(Error::NotAPermutation {
                        len: prior.len(),
                        n,
                    });
                }
                Cow::Owned(prior.iter().rev().collect())
            }
            TieBreak::Seeded(seed) => {
                let mut order: Vec<usize> = (0..n).collect();
                order.shuffle(&mut ChaCha8Rng::seed_from_u64(*seed));
                Cow::Owned(order)
            }
        })
    }
}

/// LBFS from `start`, breaking ties with `tb`.
pub fn lbfs(g: &Graph, start: usize, tb: &TieBreak) -> Result<Ordering> {
    let n = g.n();
    if start >= n {
        return Err(Error::VertexOutOfRange { vertex: start, n });
    }
    let preference = tb.preference(n)?;
    Ok(refine(g, start, &preference))
}

/// One LBFS⁺ sweep: LBFS from the last vertex of `prior`, ties broken toward
/// the vertex rightmost in `prior`.
pub fn lbfs_plus(g: &Graph, prior: &Ordering) -> Result<Ordering> {
    let n = g.n();
    if prior.len() != n {
        return Err(Error::NotAPermutation {
            len: prior.len(),
            n,
        });
    }
    let Some(start) = prior.last() else {
        return Ok(Ordering::identity(0));
    };
    let preference: Vec<usize> = prior.iter().rev().collect();
    Ok(refine(g, start, &preference))
}

/// Reference LBFS with explicit label sequences.
pub fn lbfs_naive(g: &Graph, start: usize, tb: &TieBreak) -> Result<Ordering> {
    let n = g.n();
    if start >= n {
        return Err(Error::VertexOutOfRange { vertex: start, n });
    }
    let preference = tb.preference(n)?;
    let mut rank = vec![0; n];
    for (r, &v) in preference.iter().enumerate() {
        rank[v] = r;
    }

    let mut labels: Vec<Vec<usize>> = vec![Vec::new(); n];
    labels[start].push(n);
    let mut numbered = vec![false; n];
    let mut seq = Vec::with_capacity(n);
    for i in 1..=n {
        let u = (0..n)
            .filter(|&v| !numbered[v])
            .max_by(|&a, &b| labels[a].cmp(&labels[b]).then(rank[b].cmp(&rank[a])))
            .expect("an unnumbered vertex remains");
        numbered[u] = true;
        seq.push(u);
        for &w in g.neighbors(u) {
            if !numbered[w] {
                labels[w].push(n - i);
            }
        }
    }
    Ok(Ordering::from_seq_unchecked(seq))
}

/// The leftmost vertex of `sigma` adjacent to `y` and not to `z` (with
/// `w != z`), if any.
pub fn lmpn(g: &Graph, sigma: &Ordering, y: usize, z: usize) -> Option<usize> {
    g.neighbors(y)
        .iter()
        .copied()
        .filter(|&w| w != z && !g.has_edge(w, z))
        .min_by_key(|&w| sigma.position(w))
}

const NIL: usize = usize::MAX;

struct Class {
    first: usize,
    size: usize,
    split: usize,
    stamp: usize,
}

/// Partition refinement over a doubly linked list of unnumbered vertices.
///
/// Classes are contiguous runs of the list, ordered by decreasing label, and
/// each run is kept sorted by preference. Neighbours are moved in preference
/// order, so the run they form in front of their old class stays sorted and
/// the next vertex to visit is always the list head.
fn refine(g: &Graph, start: usize, preference: &[usize]) -> Ordering {
    let n = g.n();

    // adjacency rows re-sorted by preference, built by a counting pass
    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0);
    for v in 0..n {
        offsets.push(offsets[v] + g.degree(v));
    }
    let mut fill = offsets[..n].to_vec();
    let mut rows = vec![0; offsets[n]];
    for &v in preference {
        for &w in g.neighbors(v) {
            rows[fill[w]] = v;
            fill[w] += 1;
        }
    }

    let mut next = vec![NIL; n];
    let mut prev = vec![NIL; n];
    for pair in preference.windows(2) {
        next[pair[0]] = pair[1];
        prev[pair[1]] = pair[0];
    }
    let mut head = preference.first().copied().unwrap_or(NIL);

    let mut class_of = vec![0; n];
    let mut classes = vec![Class {
        first: head,
        size: n,
        split: NIL,
        stamp: 0,
    }];
    let mut numbered = vec![false; n];
    let mut seq = Vec::with_capacity(n);

    for step in 1..=n {
        let u = if step == 1 { start } else { head };

        let c = class_of[u];
        if classes[c].first == u {
            classes[c].first = next[u];
        }
        classes[c].size -= 1;
        unlink(u, &mut head, &mut next, &mut prev);
        numbered[u] = true;
        seq.push(u);

        for &w in &rows[offsets[u]..offsets[u + 1]] {
            if numbered[w] {
                continue;
            }
            let c = class_of[w];
            if classes[c].stamp != step {
                classes[c].stamp = step;
                classes[c].split = classes.len();
                classes.push(Class {
                    first: NIL,
                    size: 0,
                    split: NIL,
                    stamp: 0,
                });
            }
            let x = classes[c].split;
            let anchor = classes[c].first;
            if anchor == w {
                classes[c].first = next[w];
            } else {
                unlink(w, &mut head, &mut next, &mut prev);
                // insert w right before the anchor, i.e. at the tail of x
                let before = prev[anchor];
                prev[w] = before;
                next[w] = anchor;
                prev[anchor] = w;
                if before == NIL {
                    head = w;
                } else {
                    next[before] = w;
                }
            }
            if classes[x].size == 0 {
                classes[x].first = w;
            }
            classes[x].size += 1;
            classes[c].size -= 1;
            class_of[w] = x;
        }
    }
    Ordering::from_seq_unchecked(seq)
}

fn unlink(v: usize, head: &mut usize, next: &mut [usize], prev: &mut [usize]) {
    let (p, q) = (prev[v], next[v]);
    if p == NIL {
        *head = q;
    } else {
        next[p] = q;
    }
    if q != NIL {
        prev[q] = p;
    }
    prev[v] = NIL;
    next[v] = NIL;
}
