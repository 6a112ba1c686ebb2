//! Detection of the reducible configurations C1–C5.
//!
//! With `p` the part index and `k` the frugality threshold:
//!
//! * C1: a 1-vertex.
//! * C2: a 2-vertex adjacent to a `(<= p)`-vertex.
//! * C3: a 2-vertex adjacent to a `(<= p+1)`-vertex and a `(<= 2p+1)`-vertex.
//! * C4: a 4-vertex adjacent to three or more 2-vertices.
//! * C5: a 5-vertex adjacent to five 2-vertices.
//!
//! Detection can run on an induced subgraph given by an `alive` mask, which
//! is how the constructive colorer peels configurations off one at a time.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConfigKind {
    C1,
    C2,
    C3,
    C4,
    C5,
}

impl ConfigKind {
    pub const ALL: [ConfigKind; 5] = [ConfigKind::C1, ConfigKind::C2, ConfigKind::C3, ConfigKind::C4, ConfigKind::C5];
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A matched configuration with its named vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Configuration {
    /// `v` has degree 1, `u` is its neighbor.
    C1 { v: Vertex, u: Vertex },
    /// `v` has degree 2 with neighbors `u` (degree `<= p`) and `w`.
    C2 { v: Vertex, u: Vertex, w: Vertex },
    /// `v` has degree 2 with neighbors `u` (`<= p+1`) and `w` (`<= 2p+1`).
    C3 { v: Vertex, u: Vertex, w: Vertex },
    /// `v` has degree 4; `x, y, z` are 2-vertex neighbors with other
    /// neighbors `x_prime, y_prime, z_prime`; `w` is `v`'s fourth neighbor.
    C4 {
        v: Vertex,
        x: Vertex,
        y: Vertex,
        z: Vertex,
        w: Vertex,
        x_prime: Vertex,
        y_prime: Vertex,
        z_prime: Vertex,
    },
    /// `v` has degree 5 and all neighbors `x[0..5]` are 2-vertices whose
    /// other neighbors are `x_prime[0..5]`.
    C5 { v: Vertex, x: [Vertex; 5], x_prime: [Vertex; 5] },
}

impl Configuration {
    pub fn kind(&self) -> ConfigKind {
        match self {
            Configuration::C1 { .. } => ConfigKind::C1,
            Configuration::C2 { .. } => ConfigKind::C2,
            Configuration::C3 { .. } => ConfigKind::C3,
            Configuration::C4 { .. } => ConfigKind::C4,
            Configuration::C5 { .. } => ConfigKind::C5,
        }
    }

    /// The central vertex `v`.
    pub fn anchor(&self) -> Vertex {
        match *self {
            Configuration::C1 { v, .. }
            | Configuration::C2 { v, .. }
            | Configuration::C3 { v, .. }
            | Configuration::C4 { v, .. }
            | Configuration::C5 { v, .. } => v,
        }
    }

    /// Vertices removed before the rest of the graph is colored. For C5 the
    /// last 2-vertex `x[4]` stays in the graph.
    pub fn deletion_set(&self) -> Vec<Vertex> {
        match *self {
            Configuration::C1 { v, .. } | Configuration::C2 { v, .. } | Configuration::C3 { v, .. } => vec![v],
            Configuration::C4 { v, x, y, z, .. } => vec![v, x, y, z],
            Configuration::C5 { v, x, .. } => vec![v, x[0], x[1], x[2], x[3]],
        }
    }

    /// Re-checks the degree pattern against the subgraph induced by `alive`.
    pub fn holds_in(&self, g: &Graph, alive: &[bool], p: usize) -> bool {
        let view = View::new(g, alive);
        let adj = |a: Vertex, b: Vertex| alive[a] && alive[b] && g.has_edge(a, b);
        match *self {
            Configuration::C1 { v, u } => view.deg(v) == 1 && adj(v, u),
            Configuration::C2 { v, u, w } => view.deg(v) == 2 && adj(v, u) && adj(v, w) && u != w && view.deg(u) <= p,
            Configuration::C3 { v, u, w } => {
                view.deg(v) == 2 && adj(v, u) && adj(v, w) && u != w && view.deg(u) <= p + 1 && view.deg(w) <= 2 * p + 1
            }
            Configuration::C4 { v, x, y, z, w, x_prime, y_prime, z_prime } => {
                let inner = [x, y, z];
                view.deg(v) == 4
                    && [x, y, z, w].iter().all(|&a| adj(v, a))
                    && distinct(&[v, x, y, z, w])
                    && inner.iter().zip([x_prime, y_prime, z_prime]).all(|(&a, b)| {
                        view.deg(a) == 2 && adj(a, b) && b != v && !inner.contains(&b)
                    })
            }
            Configuration::C5 { v, x, x_prime } => {
                view.deg(v) == 5
                    && distinct(&[v, x[0], x[1], x[2], x[3], x[4]])
                    && x.iter().zip(x_prime).all(|(&a, b)| {
                        adj(v, a) && view.deg(a) == 2 && adj(a, b) && b != v && !x.contains(&b)
                    })
            }
        }
    }
}

fn distinct(vs: &[Vertex]) -> bool {
    vs.iter().enumerate().all(|(i, a)| !vs[..i].contains(a))
}

/// Whether a configuration kind may be used for part `p` with threshold `k`.
pub fn applicable(kind: ConfigKind, p: usize, k: usize) -> bool {
    match kind {
        ConfigKind::C1 => k >= 2,
        ConfigKind::C2 => k > p,
        ConfigKind::C3 => k >= (p + 2).max(4),
        ConfigKind::C4 => k >= 3 && p >= 3,
        ConfigKind::C5 => k >= 4 && p >= 3,
    }
}

struct View<'a> {
    g: &'a Graph,
    alive: &'a [bool],
    degree: Vec<usize>,
}

impl<'a> View<'a> {
    fn new(g: &'a Graph, alive: &'a [bool]) -> Self {
        let degree = (0..g.n())
            .map(|v| if alive[v] { g.neighbors(v).iter().filter(|&&w| alive[w]).count() } else { 0 })
            .collect();
        View { g, alive, degree }
    }

    fn deg(&self, v: Vertex) -> usize {
        self.degree[v]
    }

    fn nbrs(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.g.neighbors(v).iter().copied().filter(|&w| self.alive[w])
    }

    fn vertices_of_degree(&self, d: usize) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.g.n()).filter(move |&v| self.alive[v] && self.degree[v] == d)
    }

    fn other_neighbor(&self, two_vertex: Vertex, not: Vertex) -> Vertex {
        self.nbrs(two_vertex).find(|&w| w != not).expect("2-vertex has a second neighbor")
    }
}

/// First configuration present in `g`, scanning C1..C5 and, within a kind,
/// anchors by increasing id.
pub fn find_configuration(g: &Graph, p: usize, k: usize) -> Option<Configuration> {
    find_configuration_in(g, &vec![true; g.n()], p, k)
}

/// [`find_configuration`] on the subgraph induced by `alive`.
pub fn find_configuration_in(g: &Graph, alive: &[bool], p: usize, k: usize) -> Option<Configuration> {
    let view = View::new(g, alive);
    ConfigKind::ALL
        .into_iter()
        .filter(|&kind| applicable(kind, p, k))
        .find_map(|kind| match kind {
            ConfigKind::C1 => find_c1(&view),
            ConfigKind::C2 => find_c2(&view, p),
            ConfigKind::C3 => find_c3(&view, p),
            ConfigKind::C4 => find_c4(&view),
            ConfigKind::C5 => find_c5(&view),
        })
}

fn find_c1(view: &View) -> Option<Configuration> {
    view.vertices_of_degree(1).next().map(|v| Configuration::C1 { v, u: view.nbrs(v).next().unwrap() })
}

fn two_neighbors(view: &View, v: Vertex) -> (Vertex, Vertex) {
    let mut it = view.nbrs(v);
    (it.next().unwrap(), it.next().unwrap())
}

fn find_c2(view: &View, p: usize) -> Option<Configuration> {
    view.vertices_of_degree(2).find_map(|v| {
        let (a, b) = two_neighbors(view, v);
        if view.deg(a) <= p {
            Some(Configuration::C2 { v, u: a, w: b })
        } else if view.deg(b) <= p {
            Some(Configuration::C2 { v, u: b, w: a })
        } else {
            None
        }
    })
}

fn find_c3(view: &View, p: usize) -> Option<Configuration> {
    view.vertices_of_degree(2).find_map(|v| {
        let (a, b) = two_neighbors(view, v);
        [(a, b), (b, a)]
            .into_iter()
            .find(|&(u, w)| view.deg(u) <= p + 1 && view.deg(w) <= 2 * p + 1)
            .map(|(u, w)| Configuration::C3 { v, u, w })
    })
}

/// Triples of 2-neighbors are tried in lexicographic order; a triple is
/// skipped when the other neighbor of one of its vertices lies inside it.
fn find_c4(view: &View) -> Option<Configuration> {
    view.vertices_of_degree(4).find_map(|v| {
        let nbrs: Vec<Vertex> = view.nbrs(v).collect();
        let twos: Vec<Vertex> = nbrs.iter().copied().filter(|&a| view.deg(a) == 2).collect();
        if twos.len() < 3 {
            return None;
        }
        for i in 0..twos.len() {
            for j in i + 1..twos.len() {
                for l in j + 1..twos.len() {
                    let (x, y, z) = (twos[i], twos[j], twos[l]);
                    let w = *nbrs.iter().find(|&&a| a != x && a != y && a != z).unwrap();
                    let [x_prime, y_prime, z_prime] = [x, y, z].map(|a| view.other_neighbor(a, v));
                    let inner = [x, y, z];
                    if [x_prime, y_prime, z_prime].iter().any(|b| inner.contains(b)) {
                        continue;
                    }
                    return Some(Configuration::C4 { v, x, y, z, w, x_prime, y_prime, z_prime });
                }
            }
        }
        None
    })
}

fn find_c5(view: &View) -> Option<Configuration> {
    view.vertices_of_degree(5).find_map(|v| {
        let nbrs: Vec<Vertex> = view.nbrs(v).collect();
        if nbrs.iter().any(|&a| view.deg(a) != 2) {
            return None;
        }
        let x: [Vertex; 5] = nbrs.try_into().unwrap();
        let x_prime = x.map(|a| view.other_neighbor(a, v));
        if x_prime.iter().any(|b| x.contains(b)) {
            return None;
        }
        Some(Configuration::C5 { v, x, x_prime })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, subdivide_edges, FamilySpec};

    fn fam(spec: FamilySpec) -> Graph {
        generate(&spec).unwrap()
    }

    #[test]
    fn applicability_table() {
        assert!(applicable(ConfigKind::C3, 1, 4));
        assert!(!applicable(ConfigKind::C4, 1, 4));
        assert!(applicable(ConfigKind::C2, 3, 4));
        assert!(!applicable(ConfigKind::C2, 3, 3));
        assert!(!applicable(ConfigKind::C3, 3, 4));
        assert!(applicable(ConfigKind::C3, 3, 5));
        assert!(applicable(ConfigKind::C4, 3, 3));
        assert!(!applicable(ConfigKind::C5, 3, 3));
        assert!(applicable(ConfigKind::C5, 3, 4));
        assert!(applicable(ConfigKind::C1, 1, 2));
    }

    #[test]
    fn single_edge_is_c1() {
        let k2 = fam(FamilySpec::Path { n: 2 });
        assert_eq!(find_configuration(&k2, 1, 4), Some(Configuration::C1 { v: 0, u: 1 }));
    }

    #[test]
    fn five_cycle_is_c3_at_zero() {
        let c5 = fam(FamilySpec::Cycle { n: 5 });
        let cfg = find_configuration(&c5, 1, 4).unwrap();
        assert_eq!(cfg, Configuration::C3 { v: 0, u: 1, w: 4 });
        // p = 2: the neighbors are 2-vertices, so C2 comes first
        assert_eq!(find_configuration(&c5, 2, 4).unwrap().kind(), ConfigKind::C2);
    }

    #[test]
    fn complete_graph_has_none() {
        assert_eq!(find_configuration(&fam(FamilySpec::Complete { n: 4 }), 3, 4), None);
    }

    #[test]
    fn c4_binds_three_smallest() {
        // v = 0 with 2-vertices 1, 2, 3 (other neighbors 5, 6, 7) and w = 4,
        // all outside vertices joined in a K5 so nothing else matches
        let mut edges = vec![(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (2, 6), (3, 7)];
        let outside = [4, 5, 6, 7, 8];
        for (i, &a) in outside.iter().enumerate() {
            for &b in &outside[i + 1..] {
                edges.push((a, b));
            }
        }
        let g = Graph::from_edges(9, edges).unwrap();
        let cfg = find_configuration(&g, 3, 4).unwrap();
        assert_eq!(
            cfg,
            Configuration::C4 { v: 0, x: 1, y: 2, z: 3, w: 4, x_prime: 5, y_prime: 6, z_prime: 7 }
        );
        assert_eq!(cfg.deletion_set().len(), 4);
        assert!(cfg.holds_in(&g, &[true; 9], 3));
        // not available for p < 3
        assert_eq!(find_configuration(&g, 2, 4), None);
    }

    #[test]
    fn c5_detection() {
        // a 5-vertex hub whose spokes run to a K6
        let mut edges: Vec<(usize, usize)> = (1..=5).map(|i| (0, i)).collect();
        edges.extend((1..=5).map(|i| (i, 5 + i)));
        for a in 6..=11 {
            for b in a + 1..=11 {
                edges.push((a, b));
            }
        }
        let g = Graph::from_edges(12, edges).unwrap();
        let cfg = find_configuration(&g, 3, 4).unwrap();
        assert_eq!(cfg, Configuration::C5 { v: 0, x: [1, 2, 3, 4, 5], x_prime: [6, 7, 8, 9, 10] });
        assert_eq!(cfg.deletion_set(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn subdivided_k4_has_none_for_p1() {
        let k4 = fam(FamilySpec::Complete { n: 4 });
        let g = subdivide_edges(&k4, &[(0, 1)]);
        assert_eq!(find_configuration(&g, 1, 4), None);
    }

    #[test]
    fn alive_mask_restricts_degrees() {
        let c5 = fam(FamilySpec::Cycle { n: 5 });
        let alive = [false, true, true, true, true];
        assert_eq!(find_configuration_in(&c5, &alive, 1, 4), Some(Configuration::C1 { v: 1, u: 2 }));
    }

    #[test]
    fn trees_always_have_c1() {
        for seed in 0..10 {
            let t = fam(FamilySpec::RandomTree { n: 9, seed });
            for p in 1..=3 {
                assert_eq!(find_configuration(&t, p, 4).unwrap().kind(), ConfigKind::C1);
            }
        }
    }

    #[test]
    fn json_bindings() {
        let cfg = Configuration::C2 { v: 3, u: 1, w: 4 };
        let json = serde_json::to_value(&cfg).unwrap();
        assert_eq!(json, serde_json::json!({"kind": "C2", "v": 3, "u": 1, "w": 4}));
    }
}
