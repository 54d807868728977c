//! j-tight paths as explicit vertex sequences.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vset::{KSet, VertexId, VertexSet};

/// A j-tight path in a k-uniform hypergraph.
///
/// The vertex sequence `v_1 .. v_{(k-j)l + j}` determines the edges: the
/// i-th edge is the window of `k` consecutive vertices starting at offset
/// `(i-1)(k-j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JTightPath {
    pub k: usize,
    pub j: usize,
    pub vertices: Vec<VertexId>,
}

impl JTightPath {
    /// Wraps a vertex sequence, checking its length and distinctness.
    pub fn new(k: usize, j: usize, vertices: Vec<VertexId>) -> Result<Self> {
        if j == 0 || j >= k {
            return Err(Error::InvalidTightness { k, j });
        }
        let n = vertices.len();
        if n < j || (n - j) % (k - j) != 0 {
            return Err(Error::MalformedPath { got: n });
        }
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex);
        }
        Ok(JTightPath { k, j, vertices })
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        (self.vertices.len() - self.j) / (self.k - self.j)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The i-th edge window (0-based) as a canonical set.
    pub fn edge(&self, i: usize) -> KSet {
        let start = i * (self.k - self.j);
        VertexSet::new(&self.vertices[start..start + self.k]).expect("path vertices are distinct")
    }

    pub fn edges(&self) -> Vec<KSet> {
        (0..self.len()).map(|i| self.edge(i)).collect()
    }

    /// The last `j` vertices, from which the path can be extended.
    pub fn last_jset(&self) -> VertexSet {
        VertexSet::new(&self.vertices[self.vertices.len() - self.j..]).expect("distinct")
    }
}
