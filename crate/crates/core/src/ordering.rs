use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A vertex ordering: a bijection between vertices `0..n` and positions
/// `0..n`, indexable both ways. Position 0 is the leftmost vertex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(into = "Vec<usize>")]
pub struct Ordering {
    seq: Vec<usize>,
    pos: Vec<usize>,
}

impl Ordering {
    pub fn from_seq(seq: Vec<usize>) -> Result<Self> {
        let n = seq.len();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in seq.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(Error::NotAPermutation { len: n, n });
            }
            pos[v] = i;
        }
        Ok(Ordering { seq, pos })
    }

    /// Like [`Ordering::from_seq`] but also checks the length against `n`.
    pub fn for_graph(seq: Vec<usize>, n: usize) -> Result<Self> {
        if seq.len() != n {
            return Err(Error::NotAPermutation { len: seq.len(), n });
        }
        Self::from_seq(seq)
    }

    /// Parses whitespace-separated 0-based vertex ids.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let seq = text
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::InvalidParameter(format!("`{t}` is not a vertex id")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::for_graph(seq, n)
    }

    pub(crate) fn from_seq_unchecked(seq: Vec<usize>) -> Self {
        let mut pos = vec![0; seq.len()];
        for (i, &v) in seq.iter().enumerate() {
            pos[v] = i;
        }
        Ordering { seq, pos }
    }

    pub fn identity(n: usize) -> Self {
        Ordering {
            seq: (0..n).collect(),
            pos: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.seq
    }

    pub fn vertex_at(&self, position: usize) -> usize {
        self.seq[position]
    }

    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }

    /// `u` strictly left of `v`.
    pub fn precedes(&self, u: usize, v: usize) -> bool {
        self.pos[u] < self.pos[v]
    }

    pub fn first(&self) -> Option<usize> {
        self.seq.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.seq.last().copied()
    }

    pub fn reversed(&self) -> Self {
        let mut seq = self.seq.clone();
        seq.reverse();
        Self::from_seq_unchecked(seq)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = usize> + ExactSizeIterator + '_ {
        self.seq.iter().copied()
    }
}

impl From<Ordering> for Vec<usize> {
    fn from(o: Ordering) -> Self {
        o.seq
    }
}

impl fmt::Debug for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.seq)
    }
}

impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.seq {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_maps() {
        let o = Ordering::from_seq(vec![2, 0, 3, 1]).unwrap();
        assert_eq!(o.position(2), 0);
        assert_eq!(o.vertex_at(3), 1);
        assert!(o.precedes(0, 1));
        assert_eq!(o.reversed().as_slice(), &[1, 3, 0, 2]);
        assert_eq!(o.to_string(), "2 0 3 1");
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Ordering::from_seq(vec![0, 0]).is_err());
        assert!(Ordering::from_seq(vec![0, 2]).is_err());
        assert!(Ordering::for_graph(vec![0, 1], 3).is_err());
        assert!(Ordering::parse("0 1 x", 3).is_err());
        assert_eq!(
            Ordering::parse(" 1 0 2 ", 3).unwrap().as_slice(),
            &[1, 0, 2]
        );
    }
}
