//! Named graph families used for corpora and the `gen` subcommand.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Cycle { n: usize },
    Path { n: usize },
    /// `K_{1,leaves}` with the center at vertex 0.
    Star { leaves: usize },
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
    Petersen,
    /// Uniform random labelled tree (Prüfer decoding), deterministic per seed.
    RandomTree { n: usize, seed: u64 },
    /// Every edge of `base` replaced by a path with `t` internal vertices.
    Subdivision { base: Box<FamilySpec>, t: usize },
}

pub fn generate(spec: &FamilySpec) -> Result<Graph> {
    let invalid = |what: &str| Err(Error::InvalidParameter(what.to_string()));
    match *spec {
        FamilySpec::Cycle { n } => {
            if n < 3 {
                return invalid("cycle needs n >= 3");
            }
            Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        FamilySpec::Path { n } => {
            if n == 0 {
                return invalid("path needs n >= 1");
            }
            Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
        }
        FamilySpec::Star { leaves } => {
            if leaves == 0 {
                return invalid("star needs at least one leaf");
            }
            Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i)))
        }
        FamilySpec::Complete { n } => {
            if n == 0 {
                return invalid("complete graph needs n >= 1");
            }
            Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        }
        FamilySpec::CompleteBipartite { a, b } => {
            if a == 0 || b == 0 {
                return invalid("complete bipartite graph needs both sides nonempty");
            }
            Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
        }
        FamilySpec::Petersen => {
            let outer = (0..5).map(|i| (i, (i + 1) % 5));
            let spokes = (0..5).map(|i| (i, i + 5));
            let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
            Graph::from_edges(10, outer.chain(spokes).chain(inner))
        }
        FamilySpec::RandomTree { n, seed } => {
            if n == 0 {
                return invalid("random tree needs n >= 1");
            }
            Ok(random_tree(n, &mut ChaCha8Rng::seed_from_u64(seed)))
        }
        FamilySpec::Subdivision { ref base, t } => Ok(subdivide(&generate(base)?, t)),
    }
}

/// Uniform labelled tree on `n` vertices via a random Prüfer sequence.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    if n <= 2 {
        return Graph::from_edges(n, (1..n).map(|i| (0, i))).expect("valid tree");
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut leaves: std::collections::BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    for &c in &code {
        let leaf = *leaves.iter().next().expect("a leaf always exists");
        leaves.remove(&leaf);
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.insert(c);
        }
    }
    let mut rest = leaves.into_iter();
    let (a, b) = (rest.next().unwrap(), rest.next().unwrap());
    edges.push((a, b));
    Graph::from_edges(n, edges).expect("valid tree")
}

/// Replaces each edge by a path with `t` new internal vertices. Original
/// vertices keep their ids; new vertices follow in edge order.
pub fn subdivide(g: &Graph, t: usize) -> Graph {
    if t == 0 {
        return g.clone();
    }
    let mut next = g.n();
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        let mut prev = u;
        for _ in 0..t {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, v));
    }
    Graph::from_edges(next, edges).expect("subdivision is simple")
}

/// Subdivides each listed edge once (edges absent from `g` are ignored).
pub fn subdivide_edges(g: &Graph, which: &[(usize, usize)]) -> Graph {
    let mut next = g.n();
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        if which.contains(&(u, v)) || which.contains(&(v, u)) {
            edges.push((u, next));
            edges.push((next, v));
            next += 1;
        } else {
            edges.push((u, v));
        }
    }
    Graph::from_edges(next, edges).expect("subdivision is simple")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families() {
        let c5 = generate(&FamilySpec::Cycle { n: 5 }).unwrap();
        assert_eq!((c5.n(), c5.edge_count(), c5.girth()), (5, 5, Some(5)));

        let star = generate(&FamilySpec::Star { leaves: 6 }).unwrap();
        assert_eq!((star.n(), star.degree(0)), (7, 6));

        let pet = generate(&FamilySpec::Petersen).unwrap();
        assert!((0..10).all(|v| pet.degree(v) == 3));
        assert_eq!(pet.girth(), Some(5));

        let k33 = generate(&FamilySpec::CompleteBipartite { a: 3, b: 3 }).unwrap();
        assert_eq!((k33.edge_count(), k33.girth()), (9, Some(4)));

        assert!(generate(&FamilySpec::Cycle { n: 2 }).is_err());
        assert!(generate(&FamilySpec::Star { leaves: 0 }).is_err());
        assert!(generate(&FamilySpec::CompleteBipartite { a: 0, b: 2 }).is_err());
    }

    #[test]
    fn subdivided_k4_counts() {
        let spec = FamilySpec::Subdivision { base: Box::new(FamilySpec::Complete { n: 4 }), t: 1 };
        let g = generate(&spec).unwrap();
        assert_eq!((g.n(), g.edge_count()), (10, 12));
        assert_eq!(g.girth(), Some(6));
    }

    #[test]
    fn subdivision_scales_girth() {
        for t in 0..4 {
            let c = subdivide(&generate(&FamilySpec::Cycle { n: 5 }).unwrap(), t);
            assert_eq!(c.girth(), Some(5 * (t + 1)));
            let k = subdivide(&generate(&FamilySpec::Complete { n: 4 }).unwrap(), t);
            assert_eq!(k.girth(), Some(3 * (t + 1)));
        }
    }

    #[test]
    fn random_trees_are_trees_and_reproducible() {
        for seed in 0..20 {
            let spec = FamilySpec::RandomTree { n: 12, seed };
            let t = generate(&spec).unwrap();
            assert_eq!(t.edge_count(), 11);
            assert_eq!(t.girth(), None);
            assert!(t.is_valid());
            assert_eq!(t, generate(&spec).unwrap());
        }
    }

    #[test]
    fn spec_json_shape() {
        let spec = FamilySpec::Subdivision { base: Box::new(FamilySpec::Cycle { n: 4 }), t: 2 };
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<FamilySpec>(&json).unwrap(), spec);
    }
}
