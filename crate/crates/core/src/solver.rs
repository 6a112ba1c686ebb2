//! Exact desk-scale solvers: k-forested chromatic number, list coloring,
//! choosability and choice number.
//!
//! All searches are exhaustive backtracking. A search that runs out of
//! budget reports [`SolveError::Exhausted`]; it never guesses.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::lower_bound;
use crate::coloring::{Color, Coloring, ListAssignment};
use crate::error::Error;
use crate::graph::{Graph, Vertex};
use crate::par;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveBudget {
    /// Cap on color assignments tried by one backtracking search.
    pub max_nodes: u64,
    /// Wall-clock cap for a whole solver call.
    pub max_time: Option<Duration>,
    /// Cap on `q * n` for choosability enumeration.
    pub max_universe: usize,
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget { max_nodes: 50_000_000, max_time: None, max_universe: 64 }
    }
}

impl SolveBudget {
    pub fn with_max_nodes(self, max_nodes: u64) -> Self {
        SolveBudget { max_nodes, ..self }
    }
}

/// Progress at the point a budget ran out.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Exhausted {
    pub reason: String,
    pub nodes: u64,
    pub assignments_checked: u64,
    /// Best bounds established before stopping, where meaningful.
    pub lower: Option<usize>,
    pub upper: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("budget exhausted ({}) after {} nodes", .0.reason, .0.nodes)]
    Exhausted(Exhausted),
    #[error(transparent)]
    Input(#[from] Error),
}

impl SolveError {
    fn exhausted(reason: &str, nodes: u64) -> Self {
        SolveError::Exhausted(Exhausted { reason: reason.into(), nodes, ..Default::default() })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChromaticResult {
    pub number: usize,
    pub coloring: Coloring,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Choosability {
    pub choosable: bool,
    /// A `q`-list assignment with no k-forested coloring, when not choosable.
    pub counterexample: Option<ListAssignment>,
    pub assignments_checked: u64,
}

/// Backtracking state for one list-coloring search.
struct Search<'a> {
    g: &'a Graph,
    k: usize,
    lists: &'a [Vec<Color>],
    colors: Vec<Option<Color>>,
    /// Lists are all `{1..t}`: unused colors are interchangeable.
    interchangeable: bool,
    max_used: Color,
    nodes: u64,
    max_nodes: u64,
    deadline: Option<Instant>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, k: usize, lists: &'a [Vec<Color>], max_nodes: u64, deadline: Option<Instant>) -> Self {
        Search {
            g,
            k,
            lists,
            colors: vec![None; g.n()],
            interchangeable: false,
            max_used: 0,
            nodes: 0,
            max_nodes,
            deadline,
        }
    }

    fn run(&mut self) -> Result<Option<Coloring>, SolveError> {
        if self.solve(0)? {
            Ok(Some(Coloring::new(self.colors.clone()).expect("positive colors")))
        } else {
            Ok(None)
        }
    }

    /// Uncolored vertex with the most distinct colors among its neighbors;
    /// ties broken by smallest id.
    fn pick(&self) -> Option<Vertex> {
        let mut best: Option<(usize, Vertex)> = None;
        let mut seen: Vec<Color> = Vec::new();
        for v in 0..self.g.n() {
            if self.colors[v].is_some() {
                continue;
            }
            seen.clear();
            seen.extend(self.g.neighbors(v).iter().filter_map(|&w| self.colors[w]));
            seen.sort_unstable();
            seen.dedup();
            if best.is_none_or(|(s, _)| seen.len() > s) {
                best = Some((seen.len(), v));
            }
        }
        best.map(|(_, v)| v)
    }

    fn solve(&mut self, colored: usize) -> Result<bool, SolveError> {
        if colored == self.g.n() {
            return Ok(true);
        }
        let v = self.pick().expect("an uncolored vertex remains");
        let lists = self.lists;
        for &a in &lists[v] {
            if self.interchangeable && a > self.max_used + 1 {
                break;
            }
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Err(SolveError::exhausted("node cap", self.nodes));
            }
            if self.nodes.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() >= d) {
                return Err(SolveError::exhausted("time cap", self.nodes));
            }
            if !self.feasible(v, a) {
                continue;
            }
            let saved = self.max_used;
            self.colors[v] = Some(a);
            self.max_used = self.max_used.max(a);
            if self.solve(colored + 1)? {
                return Ok(true);
            }
            self.colors[v] = None;
            self.max_used = saved;
        }
        Ok(false)
    }

    fn count_around(&self, x: Vertex, color: Color) -> usize {
        self.g.neighbors(x).iter().filter(|&&w| self.colors[w] == Some(color)).count()
    }

    /// Whether coloring `v` with `a` keeps the partial coloring k-forested,
    /// and leaves no neighbor of `v` seeing `a` on `k` of its neighbors.
    fn feasible(&self, v: Vertex, a: Color) -> bool {
        let g = self.g;
        let mut around: Vec<(Color, Vertex)> = Vec::new();
        for &w in g.neighbors(v) {
            if let Some(b) = self.colors[w] {
                if b == a {
                    return false;
                }
                around.push((b, w));
            }
            // v becomes one more a-colored neighbor of w
            if self.count_around(w, a) + 1 >= self.k {
                return false;
            }
        }
        around.sort_unstable();
        for group in around.chunk_by(|x, y| x.0 == y.0) {
            if group.len() >= self.k {
                return false;
            }
            if group.len() >= 2 && self.joined(a, group[0].0, group) {
                return false;
            }
        }
        true
    }

    /// Whether two of the `b`-colored vertices in `group` are already
    /// connected inside the `{a, b}`-colored subgraph.
    fn joined(&self, a: Color, b: Color, group: &[(Color, Vertex)]) -> bool {
        let n = self.g.n();
        let mut label = vec![usize::MAX; n];
        for (i, &(_, start)) in group.iter().enumerate() {
            if label[start] != usize::MAX {
                return true;
            }
            label[start] = i;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &y in self.g.neighbors(x) {
                    let cy = self.colors[y];
                    if (cy == Some(a) || cy == Some(b)) && label[y] != i {
                        if label[y] != usize::MAX {
                            return true;
                        }
                        label[y] = i;
                        stack.push(y);
                    }
                }
            }
        }
        false
    }
}

fn check_k(k: usize) -> Result<(), SolveError> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k must be at least 2, got {k}")).into());
    }
    Ok(())
}

fn deadline(budget: &SolveBudget) -> Option<Instant> {
    budget.max_time.map(|d| Instant::now() + d)
}

/// A k-forested coloring with `c(v) ∈ L(v)`, or `None` if none exists.
pub fn kf_list_color(
    g: &Graph,
    lists: &ListAssignment,
    k: usize,
    budget: &SolveBudget,
) -> Result<Option<Coloring>, SolveError> {
    check_k(k)?;
    lists.check_against(g)?;
    Search::new(g, k, lists.lists(), budget.max_nodes, deadline(budget)).run()
}

/// The k-forested chromatic number with a witness coloring, by iterative
/// deepening from `ceil(Δ/(k-1)) + 1`.
pub fn kf_chromatic(g: &Graph, k: usize, budget: &SolveBudget) -> Result<ChromaticResult, SolveError> {
    check_k(k)?;
    let n = g.n();
    if n == 0 {
        return Ok(ChromaticResult { number: 0, coloring: Coloring::uncolored(0) });
    }
    let deadline = deadline(budget);
    let mut spent = 0u64;
    let start = lower_bound(g.max_degree_or_zero(), k).min(n);
    for t in start..=n {
        let lists = vec![(1..=t as Color).collect::<Vec<_>>(); n];
        let mut search = Search::new(g, k, &lists, budget.max_nodes.saturating_sub(spent), deadline);
        search.interchangeable = true;
        match search.run() {
            Ok(Some(coloring)) => return Ok(ChromaticResult { number: t, coloring }),
            Ok(None) => spent += search.nodes,
            Err(SolveError::Exhausted(mut e)) => {
                e.nodes += spent;
                e.lower = Some(t);
                e.upper = Some(n);
                return Err(SolveError::Exhausted(e));
            }
            Err(e) => return Err(e),
        }
    }
    unreachable!("n distinct colors always give a k-forested coloring")
}

/// Whether every assignment of `q`-lists admits a k-forested coloring.
///
/// A color that lies in only one list can always be given to its vertex
/// last, so any assignment reduces (by repeatedly deleting such vertices) to
/// an induced subgraph carrying an assignment in which every color occurs in
/// at least two lists. Up to renaming colors such an assignment is a
/// multiset of *supports* (vertex sets of size >= 2) covering each vertex
/// exactly `q` times, and a disconnected subgraph reduces further to one of
/// its components. So `G` is `q`-choosable iff every connected induced
/// subgraph is colorable under every such support multiset; that is what is
/// enumerated, one subgraph per parallel task.
pub fn kf_choosable(g: &Graph, k: usize, q: usize, budget: &SolveBudget) -> Result<Choosability, SolveError> {
    check_k(k)?;
    if q == 0 {
        return Err(Error::InvalidParameter("q must be at least 1".into()).into());
    }
    let n = g.n();
    if q * n > budget.max_universe {
        return Err(SolveError::Exhausted(Exhausted {
            reason: format!("universe q*n = {} exceeds cap {}", q * n, budget.max_universe),
            ..Default::default()
        }));
    }
    if n > 20 {
        return Err(SolveError::exhausted("more than 20 vertices", 0));
    }
    let deadline = deadline(budget);

    let mut subsets: Vec<u32> = (1u32..1 << n)
        .filter(|&mask| mask.count_ones() >= 2 && is_connected_subset(g, mask))
        .collect();
    subsets.sort_by_key(|&mask| (std::cmp::Reverse(mask.count_ones()), std::cmp::Reverse(mask)));

    let outcomes = par::map(&subsets, |&mask| {
        let vertices: Vec<Vertex> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        let (h, remap) = g.induced_subgraph(&vertices).expect("vertices in range");
        let mut walk = SupportWalk::new(&h, k, q, budget.max_nodes, deadline);
        let found = walk.run();
        (found.map(|lists| lists.map(|l| lift(n, q, &remap, l))), walk.checked)
    });

    let mut checked = 0;
    for (found, count) in outcomes {
        checked += count;
        match found {
            Ok(Some(lists)) => {
                return Ok(Choosability { choosable: false, counterexample: Some(lists), assignments_checked: checked })
            }
            Ok(None) => {}
            Err(SolveError::Exhausted(mut e)) => {
                e.assignments_checked = checked;
                return Err(SolveError::Exhausted(e));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Choosability { choosable: true, counterexample: None, assignments_checked: checked })
}

/// Extends a bad assignment on an induced subgraph to all of `G`, giving
/// each outside vertex `q` fresh colors.
fn lift(n: usize, q: usize, remap: &[Vertex], sub: Vec<Vec<Color>>) -> ListAssignment {
    let mut next = sub.iter().flatten().copied().max().unwrap_or(0) + 1;
    let mut lists = vec![Vec::new(); n];
    for (i, list) in sub.into_iter().enumerate() {
        lists[remap[i]] = list;
    }
    for list in lists.iter_mut().filter(|l| l.is_empty()) {
        *list = (next..next + q as Color).collect();
        next += q as Color;
    }
    ListAssignment::new(lists).expect("nonempty positive lists")
}

fn is_connected_subset(g: &Graph, mask: u32) -> bool {
    let start = mask.trailing_zeros() as usize;
    let mut seen = 1u32 << start;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &y in g.neighbors(x) {
            let bit = 1u32 << y;
            if mask & bit != 0 && seen & bit == 0 {
                seen |= bit;
                stack.push(y);
            }
        }
    }
    seen == mask
}

/// Enumerates support multisets on one connected subgraph, grouped by the
/// smallest vertex of each support; vertex `v` must reach exactly `q`
/// before supports with larger minimum are considered.
struct SupportWalk<'a> {
    h: &'a Graph,
    k: usize,
    q: usize,
    /// `groups[v]`: supports whose smallest vertex is `v`, as bitmasks.
    groups: Vec<Vec<u32>>,
    counts: Vec<usize>,
    chosen: Vec<u32>,
    checked: u64,
    max_nodes: u64,
    deadline: Option<Instant>,
}

impl<'a> SupportWalk<'a> {
    fn new(h: &'a Graph, k: usize, q: usize, max_nodes: u64, deadline: Option<Instant>) -> Self {
        let n = h.n();
        let mut groups = vec![Vec::new(); n];
        for mask in (1u32..1 << n).rev() {
            if mask.count_ones() >= 2 {
                groups[mask.trailing_zeros() as usize].push(mask);
            }
        }
        SupportWalk { h, k, q, groups, counts: vec![0; n], chosen: Vec::new(), checked: 0, max_nodes, deadline }
    }

    fn run(&mut self) -> Result<Option<Vec<Vec<Color>>>, SolveError> {
        self.vertex(0)
    }

    fn vertex(&mut self, v: usize) -> Result<Option<Vec<Vec<Color>>>, SolveError> {
        if v == self.h.n() {
            return self.leaf();
        }
        let need = self.q - self.counts[v];
        self.pick(v, need, 0)
    }

    /// Adds `need` more supports from `groups[v]`, indices non-decreasing
    /// from `from`.
    fn pick(&mut self, v: usize, need: usize, from: usize) -> Result<Option<Vec<Vec<Color>>>, SolveError> {
        if need == 0 {
            return self.vertex(v + 1);
        }
        for i in from..self.groups[v].len() {
            let mask = self.groups[v][i];
            if !self.fits(mask) {
                continue;
            }
            self.apply(mask, true);
            self.chosen.push(mask);
            let found = self.pick(v, need - 1, i)?;
            self.chosen.pop();
            self.apply(mask, false);
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    fn fits(&self, mask: u32) -> bool {
        (0..self.h.n()).all(|u| mask & (1 << u) == 0 || self.counts[u] < self.q)
    }

    fn apply(&mut self, mask: u32, add: bool) {
        for u in 0..self.h.n() {
            if mask & (1 << u) != 0 {
                if add {
                    self.counts[u] += 1;
                } else {
                    self.counts[u] -= 1;
                }
            }
        }
    }

    fn leaf(&mut self) -> Result<Option<Vec<Vec<Color>>>, SolveError> {
        self.checked += 1;
        if self.checked.is_multiple_of(256) && self.deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(SolveError::exhausted("time cap", 0));
        }
        let n = self.h.n();
        let mut lists = vec![Vec::with_capacity(self.q); n];
        for (i, &mask) in self.chosen.iter().enumerate() {
            for (u, list) in lists.iter_mut().enumerate() {
                if mask & (1 << u) != 0 {
                    list.push(i as Color + 1);
                }
            }
        }
        let colorable = Search::new(self.h, self.k, &lists, self.max_nodes, self.deadline).run()?;
        Ok(colorable.is_none().then_some(lists))
    }
}

/// The k-forested choice number: least `q` with [`kf_choosable`] true,
/// searched upward from the chromatic number.
pub fn kf_choice_number(g: &Graph, k: usize, budget: &SolveBudget) -> Result<usize, SolveError> {
    let n = g.n();
    if n == 0 {
        return Ok(0);
    }
    let chromatic = kf_chromatic(g, k, budget)?.number;
    for q in chromatic..n {
        match kf_choosable(g, k, q, budget) {
            Ok(r) if r.choosable => return Ok(q),
            Ok(_) => {}
            Err(SolveError::Exhausted(mut e)) => {
                e.lower = Some(q);
                e.upper = Some(n);
                return Err(SolveError::Exhausted(e));
            }
            Err(e) => return Err(e),
        }
    }
    // lists of size n always admit pairwise distinct colors
    Ok(n.max(chromatic))
}
