//! Simple undirected graphs on dense vertex ids `0..n`.

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// A finite simple undirected graph stored as sorted adjacency lists.
///
/// Graphs are immutable once built; every constructor enforces simplicity,
/// symmetry and range of the adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) are collapsed; self-loops and out-of-range ids are errors.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted neighbor list of `v`. Panics if `v` is out of range.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Degree of `v`. Panics if `v` is out of range; see [`Graph::try_degree`].
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn try_degree(&self, v: Vertex) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adj[v].len())
    }

    pub fn max_degree(&self) -> Result<usize> {
        self.adj.iter().map(Vec::len).max().ok_or(Error::EmptyGraph)
    }

    pub fn min_degree(&self) -> Result<usize> {
        self.adj.iter().map(Vec::len).min().ok_or(Error::EmptyGraph)
    }

    /// Maximum degree, or 0 for the graph on no vertices.
    pub fn max_degree_or_zero(&self) -> usize {
        self.max_degree().unwrap_or(0)
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    /// Length of a shortest cycle, or `None` for forests.
    ///
    /// Runs a BFS from every vertex; a non-tree edge `(u, w)` met from root
    /// `s` closes a closed walk of length `d(u) + d(w) + 1`, and the minimum
    /// over all roots is exactly the girth.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s] = 0;
            parent[s] = usize::MAX;
            queue.clear();
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    // nothing shorter can be found below this depth
                    if 2 * dist[u] + 1 >= b {
                        break;
                    }
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Subgraph induced by `subset`. Returns the graph together with the
    /// remap table: vertex `i` of the result is vertex `remap[i]` of `self`.
    /// The subset is taken in increasing id order; duplicates are ignored.
    pub fn induced_subgraph(&self, subset: &[Vertex]) -> Result<(Graph, Vec<Vertex>)> {
        let mut remap: Vec<Vertex> = subset.to_vec();
        remap.sort_unstable();
        remap.dedup();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in remap.iter().enumerate() {
            self.check_vertex(v)?;
            index[v] = i;
        }
        let adj = remap
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect()
            })
            .collect();
        Ok((Graph { adj }, remap))
    }

    /// Checks the structural invariants (range, simplicity, sortedness,
    /// symmetry). Always true for graphs built through this API.
    pub fn is_valid(&self) -> bool {
        let n = self.n();
        self.adj.iter().enumerate().all(|(u, list)| {
            list.windows(2).all(|w| w[0] < w[1])
                && list.iter().all(|&v| v < n && v != u && self.adj[v].binary_search(&u).is_ok())
        })
    }

    /// Number of edges with both endpoints in the vertex set given by `mask`.
    pub(crate) fn edges_within(&self, member: &[bool]) -> usize {
        self.edges().filter(|&(u, v)| member[u] && member[v]).count()
    }
}
