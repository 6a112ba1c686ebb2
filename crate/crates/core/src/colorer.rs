//! Constructive k-forested list coloring by peeling and extending.
//!
//! The colorer repeatedly removes the deletion set of a reducible
//! configuration (or an isolated vertex), colors what remains, and then
//! puts the removed vertices back one at a time. Each vertex receives the
//! smallest color of its list outside a forbidden set `F` built from the
//! current partial coloring; `C_{k-1}` sets are recomputed at every step
//! because earlier extensions change them.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{params, ParamMode};
use crate::coloring::{c_k_minus_1, neighbor_color_set, verify, verify_partial, Color, Coloring, ListAssignment};
use crate::config::{find_configuration_in, Configuration};
use crate::error::Error;
use crate::graph::{Graph, Vertex};
use crate::mad::mad;
use crate::rational::Rational;
use crate::solver::{kf_list_color, SolveBudget, SolveError};

/// One vertex colored during extension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    /// The configuration being extended; `None` for an isolated vertex.
    pub configuration: Option<Configuration>,
    pub vertex: Vertex,
    pub forbidden: Vec<Color>,
    pub chosen: Color,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum FallbackReason {
    /// The remaining graph had no configuration and no isolated vertex.
    NoConfiguration,
    /// An extension recipe ran out of candidates.
    EmptyCandidates { vertex: Vertex },
    /// An extension step produced an invalid partial coloring.
    InvalidStep { vertex: Vertex },
}

/// The exact solver recolored `vertices` from scratch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FallbackEvent {
    #[serde(flatten)]
    pub reason: FallbackReason,
    pub vertices: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ExtensionTrace {
    pub steps: Vec<Step>,
    pub fallbacks: Vec<FallbackEvent>,
    /// mad of the whole graph, computed only once a fallback happens.
    #[serde(skip_serializing_if = "Option::is_none", with = "crate::rational::serde_opt_str", default)]
    pub mad_at_fallback: Option<Rational>,
}

/// An extension recipe could not proceed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtendError {
    #[error("no color left for vertex {vertex}: list minus forbidden set {forbidden:?} is empty")]
    EmptyCandidates { vertex: Vertex, forbidden: Vec<Color> },
    #[error("vertex {0} must already be colored")]
    Uncolored(Vertex),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ColorError {
    #[error(transparent)]
    Input(#[from] Error),
    #[error("no coloring found: {reason}")]
    Failure { reason: String, trace: Box<ExtensionTrace> },
    #[error("produced coloring failed verification")]
    Unsound { coloring: Coloring, trace: Box<ExtensionTrace> },
}

#[derive(Debug, Clone, Default)]
pub struct ColorOptions {
    /// Verify the partial coloring after every single extension step.
    pub check_each_step: bool,
    pub budget: SolveBudget,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorOutcome {
    pub coloring: Coloring,
    pub trace: ExtensionTrace,
}

fn colored(c: &Coloring, x: Vertex) -> Result<Color, ExtendError> {
    c.get(x).ok_or(ExtendError::Uncolored(x))
}

/// Colors `v` with the smallest color of `L(v) \ F` and records the step.
fn assign(
    c: &mut Coloring,
    lists: &ListAssignment,
    cfg: &Configuration,
    v: Vertex,
    forbidden: BTreeSet<Color>,
    steps: &mut Vec<Step>,
) -> Result<(), ExtendError> {
    let forbidden: Vec<Color> = forbidden.into_iter().collect();
    let chosen = lists
        .list(v)
        .iter()
        .copied()
        .find(|a| forbidden.binary_search(a).is_err())
        .ok_or_else(|| ExtendError::EmptyCandidates { vertex: v, forbidden: forbidden.clone() })?;
    c.set(v, chosen);
    steps.push(Step { configuration: Some(cfg.clone()), vertex: v, forbidden, chosen });
    Ok(())
}

fn wrong_kind(expected: &str, cfg: &Configuration) -> ! {
    panic!("{expected} extension called with {:?}", cfg.kind())
}

/// C1: `F(v) = {c(u)} ∪ C_{k-1}(u)`.
pub fn extend_c1(
    g: &Graph,
    c: &mut Coloring,
    cfg: &Configuration,
    lists: &ListAssignment,
    k: usize,
) -> Result<Vec<Step>, ExtendError> {
    let Configuration::C1 { v, u } = *cfg else { wrong_kind("C1", cfg) };
    let mut f = c_k_minus_1(g, c, u, k);
    f.insert(colored(c, u)?);
    let mut steps = Vec::new();
    assign(c, lists, cfg, v, f, &mut steps)?;
    Ok(steps)
}

/// C2: if `c(u) = c(w)`, `F(v) = {c(u)} ∪ c(N(u)) ∪ C_{k-1}(w)`;
/// otherwise `F(v) = {c(u), c(w)} ∪ C_{k-1}(w)`.
pub fn extend_c2(
    g: &Graph,
    c: &mut Coloring,
    cfg: &Configuration,
    lists: &ListAssignment,
    k: usize,
) -> Result<Vec<Step>, ExtendError> {
    let Configuration::C2 { v, u, w } = *cfg else { wrong_kind("C2", cfg) };
    let (cu, cw) = (colored(c, u)?, colored(c, w)?);
    let mut f = c_k_minus_1(g, c, w, k);
    f.insert(cu);
    if cu == cw {
        f.extend(neighbor_color_set(g, c, u));
    } else {
        f.insert(cw);
    }
    let mut steps = Vec::new();
    assign(c, lists, cfg, v, f, &mut steps)?;
    Ok(steps)
}

/// C3: if `c(u) = c(w)`, `F(v) = {c(u)} ∪ (c(N(u)) ∩ c(N(w))) ∪ C_{k-1}(w)`;
/// otherwise `F(v) = {c(u), c(w)} ∪ C_{k-1}(w)`.
pub fn extend_c3(
    g: &Graph,
    c: &mut Coloring,
    cfg: &Configuration,
    lists: &ListAssignment,
    k: usize,
) -> Result<Vec<Step>, ExtendError> {
    let Configuration::C3 { v, u, w } = *cfg else { wrong_kind("C3", cfg) };
    let (cu, cw) = (colored(c, u)?, colored(c, w)?);
    let mut f = c_k_minus_1(g, c, w, k);
    f.insert(cu);
    if cu == cw {
        let around_w = neighbor_color_set(g, c, w);
        f.extend(neighbor_color_set(g, c, u).intersection(&around_w));
    } else {
        f.insert(cw);
    }
    let mut steps = Vec::new();
    assign(c, lists, cfg, v, f, &mut steps)?;
    Ok(steps)
}

/// C4, in the order z, v, y, x:
///
/// * `F(z) = {c(w), c(z')} ∪ C_{k-1}(z')`
/// * `F(v) = {c(w), c(z), c(x')} ∪ C_{k-1}(w)`
/// * `F(y) = {c(v), c(w), c(z)} ∪ C_{k-1}(y')` if `c(v) = c(y')`,
///   else `{c(v), c(y')} ∪ C_{k-1}(y')`
/// * `F(x) = {c(v), c(x')} ∪ C_{k-1}(v) ∪ C_{k-1}(x')`
pub fn extend_c4(
    g: &Graph,
    c: &mut Coloring,
    cfg: &Configuration,
    lists: &ListAssignment,
    k: usize,
) -> Result<Vec<Step>, ExtendError> {
    let Configuration::C4 { v, x, y, z, w, x_prime, y_prime, z_prime } = *cfg else { wrong_kind("C4", cfg) };
    let mut steps = Vec::new();

    let mut f = c_k_minus_1(g, c, z_prime, k);
    f.extend([colored(c, w)?, colored(c, z_prime)?]);
    assign(c, lists, cfg, z, f, &mut steps)?;

    let mut f = c_k_minus_1(g, c, w, k);
    f.extend([colored(c, w)?, colored(c, z)?, colored(c, x_prime)?]);
    assign(c, lists, cfg, v, f, &mut steps)?;

    let (cv, cy) = (colored(c, v)?, colored(c, y_prime)?);
    let mut f = c_k_minus_1(g, c, y_prime, k);
    if cv == cy {
        f.extend([cv, colored(c, w)?, colored(c, z)?]);
    } else {
        f.extend([cv, cy]);
    }
    assign(c, lists, cfg, y, f, &mut steps)?;

    let mut f = c_k_minus_1(g, c, v, k);
    f.extend(c_k_minus_1(g, c, x_prime, k));
    f.extend([colored(c, v)?, colored(c, x_prime)?]);
    assign(c, lists, cfg, x, f, &mut steps)?;

    Ok(steps)
}

/// C5, in the order x1, v, x2, x3, x4 (x5 is already colored):
///
/// * `F(x1) = {c(x1'), c(x5)} ∪ C_{k-1}(x1')`
/// * `F(v) = {c(x1), c(x5), c(x2'), c(x3')}`
/// * `F(xi) = {c(v), c(xi')} ∪ C_{k-1}(xi')` for i = 2, 3
/// * `F(x4) = {c(v), c(x1), c(x5)} ∪ C_{k-1}(x4')` if `c(v) = c(x4')`,
///   else `{c(v), c(x4')} ∪ C_{k-1}(v) ∪ C_{k-1}(x4')`
pub fn extend_c5(
    g: &Graph,
    c: &mut Coloring,
    cfg: &Configuration,
    lists: &ListAssignment,
    k: usize,
) -> Result<Vec<Step>, ExtendError> {
    let Configuration::C5 { v, x, x_prime } = *cfg else { wrong_kind("C5", cfg) };
    let mut steps = Vec::new();
    let x5 = x[4];

    let mut f = c_k_minus_1(g, c, x_prime[0], k);
    f.extend([colored(c, x_prime[0])?, colored(c, x5)?]);
    assign(c, lists, cfg, x[0], f, &mut steps)?;

    let f = BTreeSet::from([colored(c, x[0])?, colored(c, x5)?, colored(c, x_prime[1])?, colored(c, x_prime[2])?]);
    assign(c, lists, cfg, v, f, &mut steps)?;

    for i in [1, 2] {
        let mut f = c_k_minus_1(g, c, x_prime[i], k);
        f.extend([colored(c, v)?, colored(c, x_prime[i])?]);
        assign(c, lists, cfg, x[i], f, &mut steps)?;
    }

    let (cv, c4) = (colored(c, v)?, colored(c, x_prime[3])?);
    let mut f = c_k_minus_1(g, c, x_prime[3], k);
    if cv == c4 {
        f.extend([cv, colored(c, x[0])?, colored(c, x5)?]);
    } else {
        f.extend(c_k_minus_1(g, c, v, k));
        f.extend([cv, c4]);
    }
    assign(c, lists, cfg, x[3], f, &mut steps)?;

    Ok(steps)
}

/// Dispatches to the recipe matching `cfg`.
pub fn extend(
    g: &Graph,
    c: &mut Coloring,
    cfg: &Configuration,
    lists: &ListAssignment,
    k: usize,
) -> Result<Vec<Step>, ExtendError> {
    match cfg {
        Configuration::C1 { .. } => extend_c1(g, c, cfg, lists, k),
        Configuration::C2 { .. } => extend_c2(g, c, cfg, lists, k),
        Configuration::C3 { .. } => extend_c3(g, c, cfg, lists, k),
        Configuration::C4 { .. } => extend_c4(g, c, cfg, lists, k),
        Configuration::C5 { .. } => extend_c5(g, c, cfg, lists, k),
    }
}

enum Frame {
    Peel(Configuration),
    Isolated(Vertex),
    Solved(Vec<Vertex>, Coloring),
}

/// Colors `g` from `lists` by peeling configurations for part `p`.
///
/// Requires `M >= k >= 4`, `Δ(G) <= M` and lists of size at least
/// `ceil(M / (k-1)) + p`. The result always passes [`verify`].
pub fn color(
    g: &Graph,
    lists: &ListAssignment,
    k: usize,
    p: usize,
    max_degree: usize,
    options: &ColorOptions,
) -> Result<ColorOutcome, ColorError> {
    let prm = params(max_degree, k, p, ParamMode::Strict)?;
    lists.check_against(g)?;
    let delta = g.max_degree_or_zero();
    if delta > max_degree {
        return Err(Error::InvalidParameter(format!("maximum degree {delta} exceeds M = {max_degree}")).into());
    }
    if lists.min_size() < prm.q && !g.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "lists need at least q = {} colors, smallest has {}",
            prm.q,
            lists.min_size()
        ))
        .into());
    }

    let n = g.n();
    let mut trace = ExtensionTrace::default();
    let mut alive = vec![true; n];
    let mut remaining = n;
    let mut frames = Vec::new();
    while remaining > 0 {
        if let Some(cfg) = find_configuration_in(g, &alive, p, k) {
            for v in cfg.deletion_set() {
                alive[v] = false;
                remaining -= 1;
            }
            frames.push(Frame::Peel(cfg));
        } else if let Some(v) = (0..n).find(|&v| alive[v] && g.neighbors(v).iter().all(|&w| !alive[w])) {
            alive[v] = false;
            remaining -= 1;
            frames.push(Frame::Isolated(v));
        } else {
            let rest: Vec<Vertex> = (0..n).filter(|&v| alive[v]).collect();
            note_fallback(g, &mut trace);
            trace.fallbacks.push(FallbackEvent { reason: FallbackReason::NoConfiguration, vertices: rest.clone() });
            let sub = solve_subset(g, lists, k, &rest, &options.budget, &trace)?;
            frames.push(Frame::Solved(rest, sub));
            break;
        }
    }

    let mut c = Coloring::uncolored(n);
    while let Some(frame) = frames.pop() {
        match frame {
            Frame::Solved(vertices, sub) => {
                for (i, &v) in vertices.iter().enumerate() {
                    c.set(v, sub.get(i).expect("solver colors every vertex"));
                }
            }
            Frame::Isolated(v) => {
                let chosen = lists.list(v)[0];
                c.set(v, chosen);
                trace.steps.push(Step { configuration: None, vertex: v, forbidden: Vec::new(), chosen });
            }
            Frame::Peel(cfg) => {
                let before = c.clone();
                let outcome = extend(g, &mut c, &cfg, lists, k);
                let failure = match &outcome {
                    Err(ExtendError::EmptyCandidates { vertex, .. }) => Some(FallbackReason::EmptyCandidates { vertex: *vertex }),
                    Err(ExtendError::Uncolored(v)) => panic!("vertex {v} uncolored while extending {cfg:?}"),
                    Ok(steps) if options.check_each_step => first_bad_step(g, &before, steps, k)
                        .map(|vertex| FallbackReason::InvalidStep { vertex }),
                    Ok(_) => None,
                };
                match (failure, outcome) {
                    (None, Ok(steps)) => trace.steps.extend(steps),
                    (Some(reason), _) => {
                        // recolor everything colored so far plus the deletion set
                        let mut subset: Vec<Vertex> = (0..n).filter(|&v| before.get(v).is_some()).collect();
                        subset.extend(cfg.deletion_set());
                        subset.sort_unstable();
                        note_fallback(g, &mut trace);
                        trace.fallbacks.push(FallbackEvent { reason, vertices: subset.clone() });
                        let sub = solve_subset(g, lists, k, &subset, &options.budget, &trace)?;
                        c = Coloring::uncolored(n);
                        for (i, &v) in subset.iter().enumerate() {
                            c.set(v, sub.get(i).expect("solver colors every vertex"));
                        }
                    }
                    (None, Err(_)) => unreachable!(),
                }
            }
        }
    }

    let report = verify(g, &c, k)?;
    if !report.valid || !lists.respected_by(&c) {
        return Err(ColorError::Unsound { coloring: c, trace: Box::new(trace) });
    }
    Ok(ColorOutcome { coloring: c, trace })
}

/// Replays `steps` on top of `before`, verifying after each one. Returns
/// the vertex of the first step that leaves an invalid partial coloring.
fn first_bad_step(g: &Graph, before: &Coloring, steps: &[Step], k: usize) -> Option<Vertex> {
    let mut c = before.clone();
    for step in steps {
        c.set(step.vertex, step.chosen);
        if !verify_partial(g, &c, k).map(|r| r.valid).unwrap_or(false) {
            return Some(step.vertex);
        }
    }
    None
}

fn note_fallback(g: &Graph, trace: &mut ExtensionTrace) {
    if trace.mad_at_fallback.is_none() && !g.is_empty() {
        trace.mad_at_fallback = Some(mad(g).expect("nonempty graph"));
    }
}

fn solve_subset(
    g: &Graph,
    lists: &ListAssignment,
    k: usize,
    subset: &[Vertex],
    budget: &SolveBudget,
    trace: &ExtensionTrace,
) -> Result<Coloring, ColorError> {
    let (h, remap) = g.induced_subgraph(subset)?;
    let sub_lists = lists.restrict(&remap);
    match kf_list_color(&h, &sub_lists, k, budget) {
        Ok(Some(c)) => Ok(c),
        Ok(None) => Err(ColorError::Failure {
            reason: "the exact solver proved the remaining graph has no list coloring".into(),
            trace: Box::new(trace.clone()),
        }),
        Err(SolveError::Exhausted(e)) => Err(ColorError::Failure {
            reason: format!("solver budget exhausted ({})", e.reason),
            trace: Box::new(trace.clone()),
        }),
        Err(SolveError::Input(e)) => Err(e.into()),
    }
}
