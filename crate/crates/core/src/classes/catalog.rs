use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Forbidden induced subgraphs with pinned labelings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pattern {
    /// Complement of an edge plus a two-edge path: vertices 0..5 with
    /// non-edges {01, 23, 34}.
    P2p3bar,
    /// K4 minus the edge 23.
    Diamond,
    C4,
    /// The C4s 0-1-2-3 and 2-3-4-5 sharing edge 23.
    Domino,
    Triangle,
}

impl Pattern {
    pub const ALL: [Pattern; 5] = [
        Pattern::P2p3bar,
        Pattern::Diamond,
        Pattern::C4,
        Pattern::Domino,
        Pattern::Triangle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Pattern::P2p3bar => "p2p3bar",
            Pattern::Diamond => "diamond",
            Pattern::C4 => "c4",
            Pattern::Domino => "domino",
            Pattern::Triangle => "triangle",
        }
    }

    pub fn graph(self) -> Graph {
        let edges: &[(usize, usize)] = match self {
            Pattern::P2p3bar => &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 4)],
            Pattern::Diamond => &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)],
            Pattern::C4 => &[(0, 1), (1, 2), (2, 3), (3, 0)],
            Pattern::Domino => &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 2)],
            Pattern::Triangle => &[(0, 1), (1, 2), (2, 0)],
        };
        let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        Graph::from_edge_list(n, edges.iter().copied()).expect("catalog edges are valid")
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Pattern::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownPattern(s.to_string()))
    }
}

/// Catalog graphs. `k` parameterizes `path` (vertex count), `cycle` (vertex
/// count, at least 3), `complete` and `k_ladder` (rung count, at least 1);
/// the fixed patterns ignore it.
pub fn named(name: &str, k: usize) -> Result<Graph> {
    let invalid = |why: &str| Err(Error::InvalidParameter(format!("{name}: {why}")));
    match name {
        "path" => Graph::from_edge_list(k, (1..k).map(|i| (i - 1, i))),
        "cycle" => {
            if k < 3 {
                return invalid("a cycle needs at least 3 vertices");
            }
            Graph::from_edge_list(k, (0..k).map(|i| (i, (i + 1) % k)))
        }
        "complete" => Ok(Graph::complete(k)),
        "k_ladder" => {
            if k < 1 {
                return invalid("a ladder needs at least one rung");
            }
            k_ladder(k)
        }
        other => other
            .parse::<Pattern>()
            .map(Pattern::graph)
            .map_err(|_| Error::UnknownName(other.to_string())),
    }
}

/// Vertices `a = 0`, `a_j = j`, `b = k + 1`, `b_j = k + 1 + j` for `1 <= j <= k`.
fn k_ladder(k: usize) -> Result<Graph> {
    let a = |j: usize| j;
    let b = |j: usize| k + 1 + j;
    let mut edges = vec![(a(0), b(0)), (a(0), a(1)), (b(0), b(1))];
    edges.extend((1..=k).map(|j| (a(j), b(j))));
    for j in 1..k {
        edges.push((a(j), a(j + 1)));
        edges.push((b(j), b(j + 1)));
    }
    Graph::from_edge_list(2 * k + 2, edges)
}
