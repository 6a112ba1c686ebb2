//! Test corpora: every connected graph up to isomorphism on few vertices,
//! one-vertex extensions of those, and seeded random sparse graphs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::generate::random_tree;
use crate::graph::Graph;
use crate::mad::mad;
use crate::rational::Rational;

/// Largest order for which [`connected_graphs`] deduplicates up to
/// isomorphism.
pub const ISOMORPHISM_CAP: usize = 8;

fn masks(g: &Graph) -> Vec<u16> {
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u16, |m, &w| m | 1 << w)).collect()
}

fn from_masks(adj: &[u16]) -> Graph {
    let n = adj.len();
    let edges = (0..n).flat_map(|u| (u + 1..n).filter(move |&v| adj[u] >> v & 1 == 1).map(move |v| (u, v)));
    Graph::from_edges(n, edges).expect("masks describe a simple graph")
}

/// Upper-triangle adjacency bits of `adj` read in the vertex order `order`.
fn code(adj: &[u16], order: &[usize]) -> u64 {
    let mut bits = 0u64;
    for j in 1..order.len() {
        for i in 0..j {
            bits = bits << 1 | u64::from(adj[order[i]] >> order[j] & 1);
        }
    }
    bits
}

/// Splits cells by neighbor counts into every cell until stable. New
/// cells are ordered by their count signature, so the result depends only
/// on the isomorphism type of (graph, partition).
fn refine(adj: &[u16], cells: &mut Vec<Vec<usize>>) {
    loop {
        let cell_masks: Vec<u16> = cells.iter().map(|c| c.iter().fold(0, |m, &v| m | 1 << v)).collect();
        let signature = |v: usize| -> Vec<u32> { cell_masks.iter().map(|&m| (adj[v] & m).count_ones()).collect() };
        let mut next = Vec::with_capacity(cells.len());
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell.iter().map(|&v| (signature(v), v)).collect();
            keyed.sort();
            for group in keyed.chunk_by(|a, b| a.0 == b.0) {
                next.push(group.iter().map(|&(_, v)| v).collect());
            }
        }
        if next.len() == cells.len() {
            return;
        }
        *cells = next;
    }
}

fn search(adj: &[u16], cells: Vec<Vec<usize>>, best: &mut Option<u64>) {
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let c = code(adj, &order);
        if best.is_none_or(|b| c < b) {
            *best = Some(c);
        }
        return;
    };
    for &v in &cells[target] {
        let mut split = cells[..target].to_vec();
        split.push(vec![v]);
        split.push(cells[target].iter().copied().filter(|&w| w != v).collect());
        split.extend_from_slice(&cells[target + 1..]);
        refine(adj, &mut split);
        search(adj, split, best);
    }
}

/// A canonical code: two graphs of the same order get the same code iff
/// they are isomorphic. Exponential in the worst case; meant for `n <= 9`.
pub fn canonical_code(g: &Graph) -> u64 {
    assert!(g.n() <= 11, "canonical codes are limited to 11 vertices");
    let adj = masks(g);
    let mut cells = vec![(0..g.n()).collect::<Vec<_>>()];
    if g.n() == 0 {
        return 0;
    }
    refine(&adj, &mut cells);
    let mut best = None;
    search(&adj, cells, &mut best);
    best.expect("at least one leaf")
}

fn is_connected(adj: &[u16]) -> bool {
    let n = adj.len();
    if n == 0 {
        return true;
    }
    let full = (1u32 << n) - 1;
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let next = adj.iter().enumerate().filter(|&(v, _)| frontier >> v & 1 == 1).fold(0u32, |m, (_, &a)| m | u32::from(a));
        frontier = next & !seen;
        seen |= next;
    }
    seen & full == full
}

/// Adds a vertex adjacent to exactly the vertices in `subset`.
fn extend_by(adj: &[u16], subset: u16) -> Vec<u16> {
    let n = adj.len();
    let mut out: Vec<u16> = adj.iter().enumerate().map(|(v, &m)| m | (subset >> v & 1) << n).collect();
    out.push(subset);
    out
}

/// Connected graphs on `1..=n_max` vertices, one per isomorphism class,
/// grouped by order: `layers[i]` holds the graphs on `i + 1` vertices.
pub fn connected_graph_layers(n_max: usize) -> Vec<Vec<Graph>> {
    assert!(n_max <= ISOMORPHISM_CAP, "isomorphism classes are enumerated up to {ISOMORPHISM_CAP} vertices");
    let mut layers: Vec<Vec<Graph>> = Vec::new();
    if n_max == 0 {
        return layers;
    }
    layers.push(vec![Graph::empty(1)]);
    for n in 2..=n_max {
        let prev = &layers[n - 2];
        let found = crate::par::map(prev, |g| {
            let adj = masks(g);
            (1..1u16 << (n - 1)).map(|s| extend_by(&adj, s)).map(|a| (canonical_code(&from_masks(&a)), a)).collect::<Vec<_>>()
        });
        let mut all: Vec<(u64, Vec<u16>)> = found.into_iter().flatten().collect();
        all.sort_by_key(|(c, _)| *c);
        all.dedup_by_key(|(c, _)| *c);
        layers.push(all.into_iter().map(|(_, a)| from_masks(&a)).collect());
    }
    layers
}

/// All connected graphs on `1..=n_max` vertices up to isomorphism.
pub fn connected_graphs(n_max: usize) -> Vec<Graph> {
    connected_graph_layers(n_max).into_iter().flatten().collect()
}

/// Every labeled one-vertex extension of `g` by a nonempty neighborhood.
/// Applied to all connected graphs on n vertices this reaches every
/// connected graph on `n + 1` vertices (remove a non-cut vertex), with
/// repetitions.
pub fn extensions(g: &Graph) -> impl Iterator<Item = Graph> + '_ {
    assert!(g.n() < 16, "extensions are limited to 15 base vertices");
    let adj = masks(g);
    (1..1u16 << g.n()).map(move |s| from_masks(&extend_by(&adj, s)))
}

/// Whether `g` is connected.
pub fn connected(g: &Graph) -> bool {
    if g.n() <= 16 {
        return is_connected(&masks(g));
    }
    let mut seen = vec![false; g.n()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// A random tree on `core` vertices plus `extra` random chords, then each
/// edge subdivided once with probability `subdivide`.
pub fn random_sparse<R: Rng>(rng: &mut R, core: usize, extra: usize, subdivide: f64) -> Graph {
    let tree = random_tree(core, rng);
    let mut edges: Vec<(usize, usize)> = tree.edges().collect();
    let mut non_edges: Vec<(usize, usize)> =
        (0..core).flat_map(|u| (u + 1..core).map(move |v| (u, v))).filter(|&(u, v)| !tree.has_edge(u, v)).collect();
    non_edges.shuffle(rng);
    edges.extend(non_edges.into_iter().take(extra));

    let mut n = core;
    let mut out = Vec::with_capacity(edges.len() * 2);
    for (u, v) in edges {
        if rng.gen_bool(subdivide) {
            out.push((u, n));
            out.push((n, v));
            n += 1;
        } else {
            out.push((u, v));
        }
    }
    Graph::from_edges(n, out).expect("construction is simple")
}

/// Draws from `random_sparse` until the exact mad is below `threshold`,
/// giving up after `attempts` draws. Returns the graph and its mad.
pub fn random_sparse_below<R: Rng>(
    rng: &mut R,
    threshold: &Rational,
    core: usize,
    extra: usize,
    subdivide: f64,
    attempts: usize,
) -> Option<(Graph, Rational)> {
    (0..attempts).find_map(|_| {
        let g = random_sparse(rng, core, extra, subdivide);
        let m = mad(&g).expect("nonempty");
        (&m < threshold).then_some((g, m))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, FamilySpec};
    use crate::rational::ratio;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn known_counts() {
        // connected graphs up to isomorphism, OEIS A001349
        let counts: Vec<usize> = connected_graph_layers(7).iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112, 853]);
    }

    #[test]
    fn canonical_code_is_relabeling_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = generate(&FamilySpec::Petersen).unwrap();
        let base = canonical_code(&g);
        for _ in 0..5 {
            let mut perm: Vec<usize> = (0..10).collect();
            perm.shuffle(&mut rng);
            let h = Graph::from_edges(10, g.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap();
            assert_eq!(canonical_code(&h), base);
        }
        let c6 = generate(&FamilySpec::Cycle { n: 6 }).unwrap();
        let two_triangles = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_ne!(canonical_code(&c6), canonical_code(&two_triangles));
    }

    #[test]
    fn extensions_cover_next_layer() {
        let mut codes: Vec<u64> = connected_graph_layers(5)[4 - 1]
            .iter()
            .flat_map(|g| extensions(g).collect::<Vec<_>>())
            .map(|h| canonical_code(&h))
            .collect();
        codes.sort_unstable();
        codes.dedup();
        assert_eq!(codes.len(), 21);
    }

    #[test]
    fn layers_are_connected_and_valid() {
        for (i, layer) in connected_graph_layers(6).iter().enumerate() {
            for g in layer {
                assert_eq!(g.n(), i + 1);
                assert!(connected(g) && g.is_valid());
            }
        }
        assert!(!connected(&Graph::empty(2)));
    }

    #[test]
    fn random_sparse_respects_threshold() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t = ratio(12, 5);
        for _ in 0..20 {
            let (g, m) = random_sparse_below(&mut rng, &t, 12, 3, 0.5, 1000).unwrap();
            assert!(m < t && connected(&g) && g.is_valid());
        }
        assert!(random_sparse_below(&mut rng, &t, 6, 9, 0.0, 20).is_none());
    }
}
