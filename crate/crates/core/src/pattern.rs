//! Induced-subgraph search for small patterns.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_PATTERN_VERTICES: usize = 10;

/// Injective map from pattern vertices to host vertices that preserves both
/// edges and non-edges. `image()[i]` is the host vertex of pattern vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Embedding(Vec<usize>);

impl Embedding {
    pub fn image(&self) -> &[usize] {
        &self.0
    }

    /// Re-checks injectivity and every pattern pair against the host.
    pub fn is_valid(&self, host: &Graph, pattern: &Graph) -> bool {
        let img = &self.0;
        if img.len() != pattern.n() || img.iter().any(|&v| v >= host.n()) {
            return false;
        }
        for a in 0..img.len() {
            for b in a + 1..img.len() {
                if img[a] == img[b] || pattern.has_edge(a, b) != host.has_edge(img[a], img[b]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Finds the lexicographically least induced embedding of `pattern` into
/// `host`, if any.
pub fn find_induced(host: &Graph, pattern: &Graph) -> Result<Option<Embedding>> {
    let k = pattern.n();
    if k > MAX_PATTERN_VERTICES {
        return Err(Error::PatternTooLarge {
            size: k,
            max: MAX_PATTERN_VERTICES,
        });
    }
    if k > host.n() {
        return Ok(None);
    }
    let mut search = Search {
        host,
        pattern,
        image: Vec::with_capacity(k),
        used: vec![false; host.n()],
    };
    Ok(search.extend().then_some(Embedding(search.image)))
}

struct Search<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    image: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self) -> bool {
        let a = self.image.len();
        if a == self.pattern.n() {
            return true;
        }
        let need = self.pattern.degree(a);
        for v in 0..self.host.n() {
            if self.used[v] || self.host.degree(v) < need {
                continue;
            }
            let consistent = self
                .image
                .iter()
                .enumerate()
                .all(|(b, &w)| self.pattern.has_edge(a, b) == self.host.has_edge(v, w));
            if !consistent {
                continue;
            }
            self.image.push(v);
            self.used[v] = true;
            if self.extend() {
                return true;
            }
            self.used[v] = false;
            self.image.pop();
        }
        false
    }
}
