//! Colorings, list assignments, and the k-forested verifier.
//!
//! A proper coloring is *k-forested* when the subgraph induced by any two
//! color classes is a forest of maximum degree below `k`. For a proper
//! coloring the degree condition is per vertex: no color other than `c(v)`
//! may appear on `k` or more neighbors of `v`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Color ids are positive integers.
pub type Color = u32;

/// Per-vertex optional color. JSON form: `{"colors": [1, null, 2]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ColoringRepr")]
pub struct Coloring {
    colors: Vec<Option<Color>>,
}

#[derive(Deserialize)]
struct ColoringRepr {
    colors: Vec<Option<Color>>,
}

impl TryFrom<ColoringRepr> for Coloring {
    type Error = Error;
    fn try_from(repr: ColoringRepr) -> Result<Self> {
        Coloring::new(repr.colors)
    }
}

impl Coloring {
    pub fn new(colors: Vec<Option<Color>>) -> Result<Self> {
        if let Some(v) = colors.iter().position(|&c| c == Some(0)) {
            return Err(Error::InvalidParameter(format!("vertex {v} has color 0; colors are positive")));
        }
        Ok(Coloring { colors })
    }

    /// A total coloring from plain color ids.
    pub fn total(colors: Vec<Color>) -> Result<Self> {
        Coloring::new(colors.into_iter().map(Some).collect())
    }

    pub fn uncolored(n: usize) -> Self {
        Coloring { colors: vec![None; n] }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn get(&self, v: Vertex) -> Option<Color> {
        self.colors[v]
    }

    pub fn set(&mut self, v: Vertex, color: Color) {
        assert!(color > 0, "colors are positive");
        self.colors[v] = Some(color);
    }

    pub fn clear(&mut self, v: Vertex) {
        self.colors[v] = None;
    }

    pub fn as_slice(&self) -> &[Option<Color>] {
        &self.colors
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    pub fn colored_count(&self) -> usize {
        self.colors.iter().filter(|c| c.is_some()).count()
    }

    fn check_len(&self, g: &Graph) -> Result<()> {
        if self.colors.len() != g.n() {
            return Err(Error::Mismatch(format!(
                "coloring has {} entries, graph has {} vertices",
                self.colors.len(),
                g.n()
            )));
        }
        Ok(())
    }
}

/// The lists `L(v)`. JSON form: `{"lists": [[1, 2], [2, 3]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ListRepr")]
pub struct ListAssignment {
    lists: Vec<Vec<Color>>,
}

#[derive(Deserialize)]
struct ListRepr {
    lists: Vec<Vec<Color>>,
}

impl TryFrom<ListRepr> for ListAssignment {
    type Error = Error;
    fn try_from(repr: ListRepr) -> Result<Self> {
        ListAssignment::new(repr.lists)
    }
}

impl ListAssignment {
    /// Lists are stored sorted and deduplicated; each must be nonempty and
    /// contain only positive colors.
    pub fn new(mut lists: Vec<Vec<Color>>) -> Result<Self> {
        for (v, list) in lists.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            if list.is_empty() {
                return Err(Error::InvalidParameter(format!("list of vertex {v} is empty")));
            }
            if list[0] == 0 {
                return Err(Error::InvalidParameter(format!("list of vertex {v} contains color 0")));
            }
        }
        Ok(ListAssignment { lists })
    }

    /// Every vertex gets `{1, ..., q}`.
    pub fn uniform(n: usize, q: usize) -> Self {
        ListAssignment { lists: vec![(1..=q as Color).collect(); n] }
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn list(&self, v: Vertex) -> &[Color] {
        &self.lists[v]
    }

    pub fn lists(&self) -> &[Vec<Color>] {
        &self.lists
    }

    /// `Some(q)` when every list has exactly `q` colors.
    pub fn uniform_size(&self) -> Option<usize> {
        let q = self.lists.first()?.len();
        self.lists.iter().all(|l| l.len() == q).then_some(q)
    }

    pub fn min_size(&self) -> usize {
        self.lists.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Lists restricted to `remap` (vertex `i` takes the list of `remap[i]`).
    pub fn restrict(&self, remap: &[Vertex]) -> ListAssignment {
        ListAssignment { lists: remap.iter().map(|&v| self.lists[v].clone()).collect() }
    }

    pub fn check_against(&self, g: &Graph) -> Result<()> {
        if self.lists.len() != g.n() {
            return Err(Error::Mismatch(format!(
                "list assignment has {} lists, graph has {} vertices",
                self.lists.len(),
                g.n()
            )));
        }
        Ok(())
    }

    /// Whether `c` is total and picks every color from its own list.
    pub fn respected_by(&self, c: &Coloring) -> bool {
        c.len() == self.lists.len()
            && c.as_slice()
                .iter()
                .zip(&self.lists)
                .all(|(col, list)| col.is_some_and(|a| list.binary_search(&a).is_ok()))
    }
}

/// One reason a coloring fails to be k-forested.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Adjacent vertices share a color.
    ImproperEdge { u: Vertex, v: Vertex },
    /// `color` appears on `count >= k` neighbors of `vertex`.
    Frugality { vertex: Vertex, color: Color, count: usize },
    /// A cycle alternating between the two colors.
    BicoloredCycle { colors: [Color; 2], cycle: Vec<Vertex> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        VerificationReport { valid: violations.is_empty(), violations }
    }
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k must be at least 2, got {k}")));
    }
    Ok(())
}

/// Verifies a total coloring.
pub fn verify(g: &Graph, c: &Coloring, k: usize) -> Result<VerificationReport> {
    check_k(k)?;
    c.check_len(g)?;
    if let Some(v) = c.as_slice().iter().position(Option::is_none) {
        return Err(Error::PartialColoring(v));
    }
    Ok(check_colored(g, c.as_slice(), k))
}

/// Verifies the subgraph induced by the colored vertices.
pub fn verify_partial(g: &Graph, c: &Coloring, k: usize) -> Result<VerificationReport> {
    check_k(k)?;
    c.check_len(g)?;
    Ok(check_colored(g, c.as_slice(), k))
}

fn check_colored(g: &Graph, colors: &[Option<Color>], k: usize) -> VerificationReport {
    let mut violations = Vec::new();

    for (u, v) in g.edges() {
        if let (Some(a), Some(b)) = (colors[u], colors[v]) {
            if a == b {
                violations.push(Violation::ImproperEdge { u, v });
            }
        }
    }

    for v in 0..g.n() {
        let Some(own) = colors[v] else { continue };
        let mut counts: BTreeMap<Color, usize> = BTreeMap::new();
        for &w in g.neighbors(v) {
            if let Some(a) = colors[w] {
                *counts.entry(a).or_default() += 1;
            }
        }
        for (color, count) in counts {
            if color != own && count >= k {
                violations.push(Violation::Frugality { vertex: v, color, count });
            }
        }
    }

    // Bichromatic edges grouped by color pair; a union-find per pair finds
    // the first edge that closes a cycle.
    let mut by_pair: BTreeMap<(Color, Color), Vec<(Vertex, Vertex)>> = BTreeMap::new();
    for (u, v) in g.edges() {
        if let (Some(a), Some(b)) = (colors[u], colors[v]) {
            if a != b {
                by_pair.entry((a.min(b), a.max(b))).or_default().push((u, v));
            }
        }
    }
    for ((a, b), edges) in by_pair {
        if let Some(cycle) = first_cycle(&edges) {
            violations.push(Violation::BicoloredCycle { colors: [a, b], cycle });
        }
    }

    VerificationReport::from_violations(violations)
}

/// Vertex cycle closed by the first edge of `edges` joining two vertices
/// that are already connected, if any.
fn first_cycle(edges: &[(Vertex, Vertex)]) -> Option<Vec<Vertex>> {
    let mut index: HashMap<Vertex, usize> = HashMap::new();
    for &(u, v) in edges {
        for x in [u, v] {
            let next = index.len();
            index.entry(x).or_insert(next);
        }
    }
    let mut dsu = Dsu::new(index.len());
    for (i, &(u, v)) in edges.iter().enumerate() {
        if !dsu.union(index[&u], index[&v]) {
            return Some(tree_path(&edges[..i], v, u));
        }
    }
    None
}

/// Path from `from` to `to` through the forest `edges`.
fn tree_path(edges: &[(Vertex, Vertex)], from: Vertex, to: Vertex) -> Vec<Vertex> {
    let mut adj: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
    for &(u, v) in edges {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    let mut parent: HashMap<Vertex, Vertex> = HashMap::from([(from, from)]);
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &y in adj.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(y) {
                e.insert(x);
                queue.push_back(y);
            }
        }
    }
    let mut path = vec![to];
    let mut x = to;
    while x != from {
        x = parent[&x];
        path.push(x);
    }
    path
}

struct Dsu {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect(), rank: vec![0; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Colors on the colored neighbors of `v`, with multiplicities.
pub fn neighbor_colors(g: &Graph, c: &Coloring, v: Vertex) -> BTreeMap<Color, usize> {
    let mut counts = BTreeMap::new();
    for &w in g.neighbors(v) {
        if let Some(a) = c.get(w) {
            *counts.entry(a).or_default() += 1;
        }
    }
    counts
}

/// The set of colors on the colored neighbors of `v` (no multiplicities).
pub fn neighbor_color_set(g: &Graph, c: &Coloring, v: Vertex) -> BTreeSet<Color> {
    g.neighbors(v).iter().filter_map(|&w| c.get(w)).collect()
}

/// `C_{k-1}(v)`: colors used on exactly `k - 1` colored neighbors of `v`.
/// One more neighbor in such a color would break frugality at `v`.
pub fn c_k_minus_1(g: &Graph, c: &Coloring, v: Vertex, k: usize) -> BTreeSet<Color> {
    neighbor_colors(g, c, v)
        .into_iter()
        .filter(|&(_, count)| count + 1 == k)
        .map(|(a, _)| a)
        .collect()
}
