//! Certificates over (graph, ordering) pairs.
//!
//! Every checker is total: it accepts any graph and any ordering of the same
//! length and, on failure, returns a witness that can be replayed with
//! [`Witness::violates`]. Triple witnesses are the first violating triple in
//! lexicographic order of positions `(pos x, pos y, pos z)`.

use serde::Serialize;

use crate::graph::Graph;
use crate::ordering::Ordering;

/// Three vertices with `x` left of `y` left of `z`, `xz` an edge and `xy`
/// a non-edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BadTriple {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl BadTriple {
    /// Position order plus `xz ∈ E`, `xy ∉ E`.
    pub fn is_bad(&self, g: &Graph, sigma: &Ordering) -> bool {
        let BadTriple { x, y, z } = *self;
        sigma.precedes(x, y) && sigma.precedes(y, z) && g.has_edge(x, z) && !g.has_edge(x, y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Umbrella,
    Lbfs,
    Flip,
    C4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// A bad triple whose `yz` is also a non-edge.
    Umbrella(BadTriple),
    /// A bad triple with no private neighbour of `y` over `z` left of `x`.
    FourPoint(BadTriple),
    /// A non-edge `uv` with `u` left of `v` in both orderings.
    Unflipped { u: usize, v: usize },
    /// A bad triple with no vertex left of `x` closing an induced C4.
    NoC4(BadTriple),
}

impl Witness {
    /// Replays the witness: true iff it really violates its clause.
    /// `tau` is only consulted for [`Witness::Unflipped`].
    pub fn violates(&self, g: &Graph, sigma: &Ordering, tau: Option<&Ordering>) -> bool {
        match *self {
            Witness::Umbrella(t) => t.is_bad(g, sigma) && !g.has_edge(t.y, t.z),
            Witness::FourPoint(t) => {
                t.is_bad(g, sigma)
                    && !sigma
                        .iter()
                        .take(sigma.position(t.x))
                        .any(|w| g.has_edge(w, t.y) && !g.has_edge(w, t.z))
            }
            Witness::Unflipped { u, v } => tau.is_some_and(|tau| {
                u != v && !g.has_edge(u, v) && sigma.precedes(u, v) && tau.precedes(u, v)
            }),
            Witness::NoC4(t) => {
                t.is_bad(g, sigma)
                    && !sigma
                        .iter()
                        .take(sigma.position(t.x))
                        .any(|w| closes_c4(g, w, t))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: CheckKind,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckReport {
    fn from_witness(check: CheckKind, witness: Option<Witness>) -> Self {
        let verdict = if witness.is_some() {
            Verdict::Fail
        } else {
            Verdict::Pass
        };
        CheckReport {
            check,
            verdict,
            witness,
        }
    }

    /// The ordering does not cover the graph; there is nothing to witness.
    fn mismatch(check: CheckKind) -> Self {
        CheckReport {
            check,
            verdict: Verdict::NotApplicable,
            witness: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Umbrella-freeness: no `x ≺ y ≺ z` with `xz ∈ E` and `xy, yz ∉ E`.
pub fn is_umbrella_free(g: &Graph, sigma: &Ordering) -> CheckReport {
    if sigma.len() != g.n() {
        return CheckReport::mismatch(CheckKind::Umbrella);
    }
    let witness = first_umbrella(g, sigma).map(Witness::Umbrella);
    CheckReport::from_witness(CheckKind::Umbrella, witness)
}

fn first_umbrella(g: &Graph, sigma: &Ordering) -> Option<BadTriple> {
    bad_triples(g, sigma).find(|t| !g.has_edge(t.y, t.z))
}

/// The 4-point condition: every bad triple `(x, y, z)` has some `w ≺ x`
/// adjacent to `y` and not to `z`.
pub fn is_lbfs_ordering(g: &Graph, sigma: &Ordering) -> CheckReport {
    if sigma.len() != g.n() {
        return CheckReport::mismatch(CheckKind::Lbfs);
    }
    let witness = first_four_point_violation(g, sigma).map(Witness::FourPoint);
    CheckReport::from_witness(CheckKind::Lbfs, witness)
}

fn first_four_point_violation(g: &Graph, sigma: &Ordering) -> Option<BadTriple> {
    let n = g.n();
    // leftmost[y * n + z]: position of the leftmost private neighbour of y over z
    let mut leftmost = vec![usize::MAX; n * n];
    for y in 0..n {
        for &w in g.neighbors(y) {
            let pw = sigma.position(w);
            for z in 0..n {
                if z != w && z != y && !g.has_edge(w, z) && pw < leftmost[y * n + z] {
                    leftmost[y * n + z] = pw;
                }
            }
        }
    }
    bad_triples(g, sigma).find(|t| leftmost[t.y * n + t.z] >= sigma.position(t.x))
}

/// Flip check: every non-edge appears in opposite relative order in `sigma`
/// and `tau`. The witness is the first unflipped non-edge by `sigma`
/// positions.
pub fn check_flip_pair(g: &Graph, sigma: &Ordering, tau: &Ordering) -> CheckReport {
    let n = g.n();
    if sigma.len() != n || tau.len() != n {
        return CheckReport::mismatch(CheckKind::Flip);
    }
    let mut witness = None;
    'scan: for i in 0..n {
        let u = sigma.vertex_at(i);
        for j in i + 1..n {
            let v = sigma.vertex_at(j);
            if !g.has_edge(u, v) && tau.precedes(u, v) {
                witness = Some(Witness::Unflipped { u, v });
                break 'scan;
            }
        }
    }
    CheckReport::from_witness(CheckKind::Flip, witness)
}

/// The C4 property of LBFS cocomparability orderings: every bad triple
/// `(x, y, z)` has some `w ≺ x` with `{w, x, y, z}` inducing the cycle
/// `w-x-z-y-w`.
///
/// Requires `sigma` to be umbrella-free and an LBFS ordering; otherwise the
/// verdict is not-applicable and the witness names the violated premise.
pub fn check_c4_property(g: &Graph, sigma: &Ordering) -> CheckReport {
    if sigma.len() != g.n() {
        return CheckReport::mismatch(CheckKind::C4);
    }
    let premise = first_umbrella(g, sigma)
        .map(Witness::Umbrella)
        .or_else(|| first_four_point_violation(g, sigma).map(Witness::FourPoint));
    if premise.is_some() {
        return CheckReport {
            check: CheckKind::C4,
            verdict: Verdict::NotApplicable,
            witness: premise,
        };
    }
    let witness = bad_triples(g, sigma)
        .find(|&t| {
            !sigma
                .iter()
                .take(sigma.position(t.x))
                .any(|w| closes_c4(g, w, t))
        })
        .map(Witness::NoC4);
    CheckReport::from_witness(CheckKind::C4, witness)
}

fn closes_c4(g: &Graph, w: usize, t: BadTriple) -> bool {
    g.has_edge(w, t.x) && g.has_edge(w, t.y) && g.has_edge(t.y, t.z) && !g.has_edge(w, t.z)
}

/// Bad triples in lexicographic order of positions.
fn bad_triples<'a>(g: &'a Graph, sigma: &'a Ordering) -> impl Iterator<Item = BadTriple> + 'a {
    let n = sigma.len();
    (0..n).flat_map(move |px| {
        let x = sigma.vertex_at(px);
        let mut right: Vec<usize> = g
            .neighbors(x)
            .iter()
            .map(|&z| sigma.position(z))
            .filter(|&pz| pz > px)
            .collect();
        right.sort_unstable();
        (px + 1..n).flat_map(move |py| {
            let y = sigma.vertex_at(py);
            let tail: Vec<usize> = if g.has_edge(x, y) {
                Vec::new()
            } else {
                right.iter().copied().filter(|&pz| pz > py).collect()
            };
            tail.into_iter().map(move |pz| BadTriple {
                x,
                y,
                z: sigma.vertex_at(pz),
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edge_list(n, edges.iter().copied()).unwrap()
    }

    fn ord(seq: &[usize]) -> Ordering {
        Ordering::from_seq(seq.to_vec()).unwrap()
    }

    fn p4() -> Graph {
        graph(4, &[(0, 1), (1, 2), (2, 3)])
    }

    #[test]
    fn umbrella_examples() {
        let p3 = graph(3, &[(0, 1), (1, 2)]);
        assert!(is_umbrella_free(&p3, &ord(&[0, 2, 1])).passed());
        assert!(is_umbrella_free(&Graph::complete(5), &ord(&[4, 1, 3, 0, 2])).passed());

        let sigma = ord(&[1, 3, 0, 2]);
        let r = is_umbrella_free(&p4(), &sigma);
        assert_eq!(r.verdict, Verdict::Fail);
        // (1, 3, 0) sits at positions (0, 1, 2) and precedes (3, 0, 2)
        assert_eq!(
            r.witness,
            Some(Witness::Umbrella(BadTriple { x: 1, y: 3, z: 0 }))
        );
        assert!(r.witness.unwrap().violates(&p4(), &sigma, None));
        let later = Witness::Umbrella(BadTriple { x: 3, y: 0, z: 2 });
        assert!(later.violates(&p4(), &sigma, None));
    }

    #[test]
    fn lbfs_examples() {
        assert!(is_lbfs_ordering(&p4(), &ord(&[0, 1, 2, 3])).passed());
        let sigma = ord(&[0, 2, 1, 3]);
        let r = is_lbfs_ordering(&p4(), &sigma);
        assert_eq!(
            r.witness,
            Some(Witness::FourPoint(BadTriple { x: 0, y: 2, z: 1 }))
        );
        assert!(r.witness.unwrap().violates(&p4(), &sigma, None));
    }

    #[test]
    fn flip_examples() {
        let k4 = Graph::complete(4);
        let pi = ord(&[2, 0, 3, 1]);
        assert!(check_flip_pair(&k4, &pi, &pi.reversed()).passed());

        let two_k2 = graph(4, &[(0, 1), (2, 3)]);
        let sigma = ord(&[0, 1, 2, 3]);
        assert!(check_flip_pair(&two_k2, &sigma, &ord(&[3, 2, 1, 0])).passed());
        let tau = ord(&[0, 1, 3, 2]);
        let r = check_flip_pair(&two_k2, &sigma, &tau);
        assert_eq!(r.witness, Some(Witness::Unflipped { u: 0, v: 2 }));
        assert!(r.witness.unwrap().violates(&two_k2, &sigma, Some(&tau)));
    }

    #[test]
    fn c4_examples() {
        let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let sigma = ord(&[0, 1, 3, 2]);
        assert_eq!(bad_triples(&c4, &sigma).count(), 1);
        assert!(check_c4_property(&c4, &sigma).passed());
        assert!(check_c4_property(&Graph::complete(3), &ord(&[1, 2, 0])).passed());

        let r = check_c4_property(&p4(), &ord(&[1, 3, 0, 2]));
        assert_eq!(r.verdict, Verdict::NotApplicable);
        assert_eq!(
            r.witness,
            Some(Witness::Umbrella(BadTriple { x: 1, y: 3, z: 0 }))
        );

        // umbrella-free but not LBFS: the other premise is reported
        let r = check_c4_property(&p4(), &ord(&[0, 2, 1, 3]));
        assert_eq!(r.verdict, Verdict::NotApplicable);
        assert!(matches!(r.witness, Some(Witness::FourPoint(_))));
    }

    #[test]
    fn mismatched_lengths_are_not_panics() {
        let r = check_flip_pair(&p4(), &ord(&[0, 1]), &ord(&[0, 1, 2, 3]));
        assert_eq!((r.verdict, r.witness), (Verdict::NotApplicable, None));
        let r = is_umbrella_free(&p4(), &ord(&[0, 1, 2]));
        assert_eq!(r.verdict, Verdict::NotApplicable);
    }
}
