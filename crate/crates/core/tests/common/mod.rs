//! Oracles shared by the integration tests. They are written straight from
//! the definitions and share no code with the library's checkers.

#![allow(dead_code)]

use kforest::Graph;

/// k-forested by definition: proper, and for every pair of colors the
/// union of the two classes is a forest of maximum degree below `k`.
pub fn naive_k_forested(g: &Graph, colors: &[u32], k: usize) -> bool {
    let n = g.n();
    if g.edges().any(|(u, v)| colors[u] == colors[v]) {
        return false;
    }
    let mut palette: Vec<u32> = colors.to_vec();
    palette.sort_unstable();
    palette.dedup();
    for (i, &a) in palette.iter().enumerate() {
        for &b in &palette[i + 1..] {
            let inside: Vec<bool> = colors.iter().map(|&c| c == a || c == b).collect();
            let vertices = inside.iter().filter(|&&x| x).count();
            let edges: Vec<(usize, usize)> = g.edges().filter(|&(u, v)| inside[u] && inside[v]).collect();
            let mut degree = vec![0usize; n];
            for &(u, v) in &edges {
                degree[u] += 1;
                degree[v] += 1;
            }
            if degree.iter().any(|&d| d >= k) {
                return false;
            }
            // a forest has exactly |V| - (components) edges
            let mut comp = vec![usize::MAX; n];
            let mut components = 0;
            for s in 0..n {
                if !inside[s] || comp[s] != usize::MAX {
                    continue;
                }
                components += 1;
                comp[s] = s;
                let mut stack = vec![s];
                while let Some(x) = stack.pop() {
                    for &(u, v) in &edges {
                        let y = if u == x { v } else if v == x { u } else { continue };
                        if comp[y] == usize::MAX {
                            comp[y] = s;
                            stack.push(y);
                        }
                    }
                }
            }
            if edges.len() != vertices - components {
                return false;
            }
        }
    }
    true
}

/// `2|E(H)| / |V(H)|` maximized over all nonempty vertex subsets, as a
/// reduced `(numerator, denominator)` pair.
pub fn naive_mad(g: &Graph) -> (u64, u64) {
    let n = g.n();
    assert!(n <= 16);
    let mut best = (0u64, 1u64);
    for mask in 1u32..1 << n {
        let size = u64::from(mask.count_ones());
        let edges = g.edges().filter(|&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1).count() as u64;
        if 2 * edges * best.1 > best.0 * size {
            best = (2 * edges, size);
        }
    }
    let gcd = |mut a: u64, mut b: u64| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    let d = gcd(best.0, best.1).max(1);
    (best.0 / d, best.1 / d)
}
