//! Maximum average degree, computed exactly.
//!
//! `mad(G) = 2 * max |E(H)| / |V(H)|`. The maximum is attained on an induced
//! subgraph, so the search runs over vertex sets only.

use num::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::{Graph, Vertex};
use crate::rational::{self, Rational};

/// Largest vertex count accepted by the exhaustive oracle.
pub const BRUTE_FORCE_CAP: usize = 20;

/// A densest induced subgraph: `density = |E(H)| / |V(H)|` for `H` induced
/// by `witness`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensestResult {
    #[serde(with = "rational::serde_str")]
    pub density: Rational,
    pub witness: Vec<Vertex>,
}

fn density_of(g: &Graph, member: &[bool]) -> (usize, usize) {
    let size = member.iter().filter(|&&b| b).count();
    (g.edges_within(member), size)
}

/// Densest subgraph by parametric minimum cut.
///
/// Guesses live on the grid `t / n²`. For a guess `g = t / D` the network
/// `s -> v` (cap `D m`), `v -> sink` (cap `D m + 2t - D d(v)`), `u <-> v`
/// (cap `D` each way) has a cut of value `D m n + 2(t|S| - D|E(S)|)` for
/// source side `S`, so a cut below `D m n` exists iff some `S` has density
/// above `g`. Two distinct densities `a/b`, `c/d` with `b, d <= n` differ by
/// more than `1/n²`, so once the bracket `(lo/D, hi/D]` has width one grid
/// step the best witness found is exact.
pub fn densest_subgraph(g: &Graph) -> Result<DensestResult> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let m = g.edge_count();
    if m == 0 {
        return Ok(DensestResult { density: rational::integer(0), witness: vec![0] });
    }
    let too_large = || Error::InvalidParameter(format!("graph with n={n}, m={m} overflows exact flow capacities"));
    let grid = (n as i64).checked_mul(n as i64).ok_or_else(too_large)?;
    let cap_total = grid
        .checked_mul(m as i64)
        .and_then(|x| x.checked_mul(n as i64 + 2))
        .ok_or_else(too_large)?;
    debug_assert!(cap_total > 0);

    let mut witness: Vec<Vertex> = (0..n).collect();
    // m/n is attained by the whole graph: largest t with t/D < m/n.
    let mut lo = (m * n) as i64 - 1;
    let mut hi = ((n as i64 - 1) * grid + 1) / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match denser_than(g, mid, grid) {
            Some(found) => {
                let member = membership(n, &found);
                let (e, s) = density_of(g, &member);
                // largest t with t/D < e/s
                lo = ((e as i64) * grid + s as i64 - 1) / s as i64 - 1;
                debug_assert!(lo >= mid);
                witness = found;
            }
            None => hi = mid,
        }
    }
    let (e, s) = density_of(g, &membership(n, &witness));
    Ok(DensestResult {
        density: Rational::new(BigInt::from(e), BigInt::from(s)),
        witness,
    })
}

fn membership(n: usize, set: &[Vertex]) -> Vec<bool> {
    let mut member = vec![false; n];
    set.iter().for_each(|&v| member[v] = true);
    member
}

/// Returns a vertex set of density strictly above `t / grid`, if any.
fn denser_than(g: &Graph, t: i64, grid: i64) -> Option<Vec<Vertex>> {
    let n = g.n();
    let m = g.edge_count() as i64;
    let (source, sink) = (n, n + 1);
    let mut net = FlowNetwork::new(n + 2);
    for v in 0..n {
        net.add_edge(source, v, grid * m, 0);
        net.add_edge(v, sink, grid * m + 2 * t - grid * g.degree(v) as i64, 0);
    }
    for (u, v) in g.edges() {
        net.add_edge(u, v, grid, grid);
    }
    let cut = net.max_flow(source, sink);
    if cut >= grid * m * n as i64 {
        return None;
    }
    let side = net.source_side(source);
    let set: Vec<Vertex> = (0..n).filter(|&v| side[v]).collect();
    debug_assert!(!set.is_empty());
    Some(set)
}

/// Exact maximum average degree.
pub fn mad(g: &Graph) -> Result<Rational> {
    Ok(densest_subgraph(g)?.density * rational::integer(2))
}

/// Exhaustive densest subgraph over all nonempty vertex subsets (`n <= 20`).
pub fn densest_subgraph_brute(g: &Graph) -> Result<DensestResult> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > BRUTE_FORCE_CAP {
        return Err(Error::TooLarge { n, cap: BRUTE_FORCE_CAP });
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |acc, &w| acc | 1 << w))
        .collect();
    let (mut best_e, mut best_s, mut best_mask) = (0u64, 1u64, 1u32);
    for mask in 1u32..(1u32 << n) {
        let s = mask.count_ones() as u64;
        let twice: u64 = (0..n)
            .filter(|&v| mask & (1 << v) != 0)
            .map(|v| (adj[v] & mask).count_ones() as u64)
            .sum();
        let e = twice / 2;
        if e * best_s > best_e * s {
            (best_e, best_s, best_mask) = (e, s, mask);
        }
    }
    Ok(DensestResult {
        density: Rational::new(BigInt::from(best_e), BigInt::from(best_s)),
        witness: (0..n).filter(|&v| best_mask & (1 << v) != 0).collect(),
    })
}

/// Exhaustive-search maximum average degree (`n <= 20`).
pub fn mad_brute(g: &Graph) -> Result<Rational> {
    Ok(densest_subgraph_brute(g)?.density * rational::integer(2))
}

/// `2g / (g - 2)`: strict upper bound on mad for planar (and
/// projective-planar) graphs of girth `g`.
pub fn girth_mad_bound(girth: usize) -> Result<Rational> {
    if girth < 3 {
        return Err(Error::InvalidParameter(format!("girth must be at least 3, got {girth}")));
    }
    Ok(rational::ratio(2 * girth as i64, girth as i64 - 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, FamilySpec};
    use crate::rational::{integer, ratio};

    fn fam(spec: FamilySpec) -> Graph {
        generate(&spec).unwrap()
    }

    #[test]
    fn named_values() {
        let c5 = fam(FamilySpec::Cycle { n: 5 });
        let d = densest_subgraph(&c5).unwrap();
        assert_eq!(d.density, integer(1));
        assert_eq!(d.witness, vec![0, 1, 2, 3, 4]);
        assert_eq!(mad(&c5).unwrap(), integer(2));

        let k4 = fam(FamilySpec::Complete { n: 4 });
        assert_eq!(densest_subgraph(&k4).unwrap().density, ratio(3, 2));
        assert_eq!(mad(&k4).unwrap(), integer(3));

        let p4 = fam(FamilySpec::Path { n: 4 });
        assert_eq!(densest_subgraph(&p4).unwrap().density, ratio(3, 4));
        assert_eq!(mad(&p4).unwrap(), ratio(3, 2));
        assert_eq!(mad_brute(&p4).unwrap(), ratio(3, 2));

        assert_eq!(mad_brute(&fam(FamilySpec::Petersen)).unwrap(), integer(3));
        assert_eq!(mad_brute(&fam(FamilySpec::Star { leaves: 6 })).unwrap(), ratio(12, 7));
        assert_eq!(mad_brute(&fam(FamilySpec::Path { n: 2 })).unwrap(), integer(1));
    }

    #[test]
    fn witness_is_denser_part() {
        // K4 with a long pendant path: the K4 is densest
        let g = Graph::from_edges(8, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)]).unwrap();
        let d = densest_subgraph(&g).unwrap();
        assert_eq!(d.density, ratio(3, 2));
        assert_eq!(d.witness, vec![0, 1, 2, 3]);
        let (h, _) = g.induced_subgraph(&d.witness).unwrap();
        assert_eq!(ratio(h.edge_count() as i64, h.n() as i64), d.density);
    }

    #[test]
    fn edgeless_and_empty() {
        assert_eq!(mad(&Graph::empty(3)).unwrap(), integer(0));
        assert_eq!(mad(&Graph::empty(0)), Err(Error::EmptyGraph));
        assert_eq!(mad_brute(&Graph::empty(0)), Err(Error::EmptyGraph));
        assert!(matches!(mad_brute(&Graph::empty(21)), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn girth_bounds() {
        assert_eq!(girth_mad_bound(12).unwrap(), ratio(12, 5));
        assert_eq!(girth_mad_bound(8).unwrap(), ratio(8, 3));
        assert_eq!(girth_mad_bound(6).unwrap(), integer(3));
        assert_eq!(girth_mad_bound(3).unwrap(), integer(6));
        assert!(girth_mad_bound(2).is_err());
    }
}
