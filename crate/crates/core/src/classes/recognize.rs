use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::catalog::Pattern;
use crate::certify::is_umbrella_free;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ordering::Ordering;
use crate::pattern::{find_induced, Embedding};
use crate::search::{lbfs, lbfs_plus, TieBreak};

/// Largest graph accepted by the ordering-scan oracle.
pub const ORDERING_ORACLE_MAX_N: usize = 9;
/// Largest complement edge count accepted by the orientation-scan oracle.
pub const ORIENTATION_ORACLE_MAX_EDGES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Recognition {
    pub cocomparability: bool,
    /// First umbrella-free sweep, when one was found.
    pub witness: Option<Ordering>,
    /// Number of sweeps examined.
    pub sweeps: usize,
}

/// Repeated LBFS⁺ recognition: `lbfs(g, 0, min-index)` followed by `n`
/// LBFS⁺ sweeps; the graph is accepted as soon as one sweep is
/// umbrella-free.
pub fn is_cocomparability(g: &Graph) -> Recognition {
    let n = g.n();
    if n == 0 {
        return Recognition {
            cocomparability: true,
            witness: Some(Ordering::identity(0)),
            sweeps: 0,
        };
    }
    let mut sigma = lbfs(g, 0, &TieBreak::MinIndex).expect("vertex 0 exists");
    for sweep in 1..=n + 1 {
        if is_umbrella_free(g, &sigma).passed() {
            return Recognition {
                cocomparability: true,
                witness: Some(sigma),
                sweeps: sweep,
            };
        }
        if sweep <= n {
            sigma = lbfs_plus(g, &sigma).expect("sweep covers the graph");
        }
    }
    Recognition {
        cocomparability: false,
        witness: None,
        sweeps: n + 1,
    }
}

/// Brute-force cocomparability test: the ordering scan when `n` is small
/// enough, otherwise the orientation scan of the complement.
pub fn cocomp_oracle(g: &Graph) -> Result<bool> {
    if g.n() <= ORDERING_ORACLE_MAX_N {
        cocomp_oracle_by_orderings(g).map(|o| o.is_some())
    } else {
        cocomp_oracle_by_orientation(g)
    }
}

/// Searches all orderings for an umbrella-free one, extending prefixes and
/// pruning a prefix as soon as its newest vertex closes an umbrella.
pub fn cocomp_oracle_by_orderings(g: &Graph) -> Result<Option<Ordering>> {
    let n = g.n();
    if n > ORDERING_ORACLE_MAX_N {
        return Err(Error::SizeGuard {
            what: "ordering-scan oracle",
            n,
            max: ORDERING_ORACLE_MAX_N,
            hint: "",
        });
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | 1 << w))
        .collect();
    let mut seq = Vec::with_capacity(n);
    let found = place(&adj, &mut seq, 0);
    Ok(found.then(|| Ordering::from_seq_unchecked(seq)))
}

fn place(adj: &[u64], seq: &mut Vec<usize>, used: u64) -> bool {
    let n = adj.len();
    if seq.len() == n {
        return true;
    }
    for z in 0..n {
        if used & (1 << z) != 0 {
            continue;
        }
        // an umbrella x ≺ y ≺ z: xz an edge, y between, y adjacent to neither
        let mut after = 0u64;
        let mut umbrella = false;
        for &x in seq.iter().rev() {
            if adj[x] & (1 << z) != 0 && after & !adj[x] & !adj[z] != 0 {
                umbrella = true;
                break;
            }
            after |= 1 << x;
        }
        if umbrella {
            continue;
        }
        seq.push(z);
        if place(adj, seq, used | 1 << z) {
            return true;
        }
        seq.pop();
    }
    false
}

/// Searches orientations of the complement for a transitive one, assigning
/// one edge at a time and backtracking on the first violated implication.
pub fn cocomp_oracle_by_orientation(g: &Graph) -> Result<bool> {
    let comp = g.complement();
    let edges: Vec<(usize, usize)> = comp.edges().collect();
    if edges.len() > ORIENTATION_ORACLE_MAX_EDGES {
        return Err(Error::SizeGuard {
            what: "orientation-scan oracle (complement edges)",
            n: edges.len(),
            max: ORIENTATION_ORACLE_MAX_EDGES,
            hint: "",
        });
    }
    let n = comp.n();
    let mut arc = vec![false; n * n];
    Ok(orient(&comp, &edges, &mut arc))
}

fn orient(comp: &Graph, edges: &[(usize, usize)], arc: &mut [bool]) -> bool {
    let Some((&(a, b), rest)) = edges.split_first() else {
        return true;
    };
    let n = comp.n();
    for (u, v) in [(a, b), (b, a)] {
        arc[u * n + v] = true;
        if consistent(comp, arc, u, v) && orient(comp, rest, arc) {
            return true;
        }
        arc[u * n + v] = false;
    }
    false
}

/// Transitivity constraints that involve the arc `u -> v`.
fn consistent(comp: &Graph, arc: &[bool], u: usize, v: usize) -> bool {
    let n = comp.n();
    (0..n).all(|c| {
        let forward = !arc[v * n + c] || (c != u && comp.has_edge(u, c) && !arc[c * n + u]);
        let backward = !arc[c * n + u] || (c != v && comp.has_edge(c, v) && !arc[v * n + c]);
        forward && backward
    })
}

/// `None` when `g` has no induced copy of `which`, otherwise the
/// lexicographically least embedding.
pub fn pattern_free(g: &Graph, which: Pattern) -> Option<Embedding> {
    find_induced(g, &which.graph()).expect("catalog patterns are within the size guard")
}

/// Cocomparability and C4-free.
pub fn is_interval(g: &Graph) -> bool {
    pattern_free(g, Pattern::C4).is_none() && is_cocomparability(g).cocomparability
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassTag {
    Cocomparability,
    P2p3barFree,
    DiamondFree,
    Girth4,
    Interval,
    Theorem31Applicable,
}

impl ClassTag {
    pub const ALL: [ClassTag; 6] = [
        ClassTag::Cocomparability,
        ClassTag::P2p3barFree,
        ClassTag::DiamondFree,
        ClassTag::Girth4,
        ClassTag::Interval,
        ClassTag::Theorem31Applicable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassTag::Cocomparability => "cocomparability",
            ClassTag::P2p3barFree => "p2p3bar-free",
            ClassTag::DiamondFree => "diamond-free",
            ClassTag::Girth4 => "girth>=4",
            ClassTag::Interval => "interval",
            ClassTag::Theorem31Applicable => "theorem-3.1-applicable",
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "girth≥4" | "girth4" => return Ok(ClassTag::Girth4),
            "theorem-applicable" => return Ok(ClassTag::Theorem31Applicable),
            _ => {}
        }
        ClassTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::UnknownTag(s.to_string()))
    }
}

impl Serialize for ClassTag {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// Runs every detector. `theorem-3.1-applicable` is cocomparability together
/// with p2p3bar-freeness.
pub fn classify(g: &Graph) -> BTreeSet<ClassTag> {
    let mut tags = BTreeSet::new();
    let cocomp = is_cocomparability(g).cocomparability;
    let p2p3bar_free = pattern_free(g, Pattern::P2p3bar).is_none();
    if cocomp {
        tags.insert(ClassTag::Cocomparability);
    }
    if p2p3bar_free {
        tags.insert(ClassTag::P2p3barFree);
    }
    if pattern_free(g, Pattern::Diamond).is_none() {
        tags.insert(ClassTag::DiamondFree);
    }
    if g.girth().is_none_or(|len| len >= 4) {
        tags.insert(ClassTag::Girth4);
    }
    if cocomp && pattern_free(g, Pattern::C4).is_none() {
        tags.insert(ClassTag::Interval);
    }
    if cocomp && p2p3bar_free {
        tags.insert(ClassTag::Theorem31Applicable);
    }
    tags
}
