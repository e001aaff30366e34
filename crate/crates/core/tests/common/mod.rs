//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the code paths it is used to check.

#![allow(dead_code)]

use std::collections::HashSet;

use lexcycle::{Graph, Ordering};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every labeled graph on `n` vertices, indexed by the bitmask over pairs
/// `(i, j)`, `i < j`, in row order.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e);
        Graph::from_edge_list(n, edges).unwrap()
    })
}

pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edge_list(n, edges).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn ord(seq: &[usize]) -> Ordering {
    Ordering::from_seq(seq.to_vec()).unwrap()
}

fn adjacent(g: &Graph, u: usize, v: usize) -> bool {
    g.neighbors(u).contains(&v)
}

/// Every ordering some LBFS run can produce, exploring all start vertices
/// and every tie choice, with literal label sequences.
pub fn all_lbfs_orderings(g: &Graph) -> HashSet<Vec<usize>> {
    fn go(
        g: &Graph,
        labels: &mut Vec<Vec<usize>>,
        seq: &mut Vec<usize>,
        out: &mut HashSet<Vec<usize>>,
    ) {
        let n = g.n();
        if seq.len() == n {
            out.insert(seq.clone());
            return;
        }
        let open: Vec<usize> = (0..n).filter(|v| !seq.contains(v)).collect();
        let best = open.iter().map(|&v| labels[v].clone()).max().unwrap();
        let tied: Vec<usize> = open
            .iter()
            .copied()
            .filter(|&v| labels[v] == best)
            .collect();
        for u in tied {
            let stamp = n - seq.len() - 1;
            let touched: Vec<usize> = open
                .iter()
                .copied()
                .filter(|&w| w != u && adjacent(g, u, w))
                .collect();
            for &w in &touched {
                labels[w].push(stamp);
            }
            seq.push(u);
            go(g, labels, seq, out);
            seq.pop();
            for &w in &touched {
                labels[w].pop();
            }
        }
    }
    let mut out = HashSet::new();
    go(g, &mut vec![Vec::new(); g.n()], &mut Vec::new(), &mut out);
    out
}

/// Shortest cycle by enumerating simple paths that return to their
/// smallest vertex.
pub fn brute_girth(g: &Graph) -> Option<usize> {
    fn extend(g: &Graph, root: usize, path: &mut Vec<usize>, best: &mut Option<usize>) {
        let last = *path.last().unwrap();
        for &w in g.neighbors(last) {
            if w == root && path.len() >= 3 {
                let len = path.len();
                *best = Some(best.map_or(len, |b: usize| b.min(len)));
            } else if w > root && !path.contains(&w) {
                path.push(w);
                extend(g, root, path, best);
                path.pop();
            }
        }
    }
    let mut best = None;
    for root in 0..g.n() {
        extend(g, root, &mut vec![root], &mut best);
    }
    best
}

/// Whether some injection of the pattern into the host preserves edges and
/// non-edges, trying every injection.
pub fn brute_has_induced(host: &Graph, pattern: &Graph) -> bool {
    fn go(host: &Graph, pattern: &Graph, img: &mut Vec<usize>) -> bool {
        let a = img.len();
        if a == pattern.n() {
            return (0..a).all(|i| {
                (i + 1..a).all(|j| adjacent(pattern, i, j) == adjacent(host, img[i], img[j]))
            });
        }
        for v in 0..host.n() {
            if !img.contains(&v) {
                img.push(v);
                if go(host, pattern, img) {
                    return true;
                }
                img.pop();
            }
        }
        false
    }
    go(host, pattern, &mut Vec::new())
}

pub fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n()
        && a.m() == b.m()
        && permutations(a.n()).iter().any(|p| {
            (0..a.n()).all(|i| (0..a.n()).all(|j| adjacent(a, i, j) == adjacent(b, p[i], p[j])))
        })
}

/// One representative per isomorphism class of graphs on `n` vertices.
pub fn iso_representatives(n: usize) -> Vec<Graph> {
    let mut reps: Vec<Graph> = Vec::new();
    for g in all_graphs(n) {
        if !reps.iter().any(|r| brute_isomorphic(r, &g)) {
            reps.push(g);
        }
    }
    reps
}

/// Umbrella-freeness straight from the definition, over all triples.
pub fn brute_umbrella_free(g: &Graph, seq: &[usize]) -> bool {
    let n = seq.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (x, y, z) = (seq[i], seq[j], seq[k]);
                if adjacent(g, x, z) && !adjacent(g, x, y) && !adjacent(g, y, z) {
                    return false;
                }
            }
        }
    }
    true
}
