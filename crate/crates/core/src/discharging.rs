//! Degree-based discharging: every vertex starts with charge `d(v)`, rules
//! move fixed amounts along edges, and the final charges bound mad from
//! below on graphs with no reducible configuration.

use std::fmt;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::bounds::mad_threshold;
use crate::config::{find_configuration, Configuration};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{self, serde_str, Rational};

/// A vertex of degree in `[giver_lo, giver_hi]` gives `amount` to each
/// adjacent vertex of degree `receiver`. `giver_hi = None` is unbounded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rule {
    pub giver_lo: usize,
    pub giver_hi: Option<usize>,
    pub receiver: usize,
    #[serde(with = "serde_str")]
    pub amount: Rational,
}

impl Rule {
    pub fn new(giver_lo: usize, giver_hi: Option<usize>, receiver: usize, amount: Rational) -> Result<Self> {
        let rule = Rule { giver_lo, giver_hi, receiver, amount };
        rule.validate()?;
        Ok(rule)
    }

    fn validate(&self) -> Result<()> {
        if self.amount <= Rational::zero() {
            return Err(Error::InvalidRuleSet(format!("amount must be positive, got {}", rational::to_string(&self.amount))));
        }
        if self.giver_hi.is_some_and(|hi| hi < self.giver_lo) {
            return Err(Error::InvalidRuleSet(format!("empty giver range {}..{:?}", self.giver_lo, self.giver_hi)));
        }
        if self.receiver == 0 {
            return Err(Error::InvalidRuleSet("receiver degree must be at least 1".into()));
        }
        Ok(())
    }

    pub fn fires(&self, giver_degree: usize, receiver_degree: usize) -> bool {
        receiver_degree == self.receiver
            && giver_degree >= self.giver_lo
            && self.giver_hi.is_none_or(|hi| giver_degree <= hi)
    }

    fn overlaps(&self, other: &Rule) -> bool {
        let below = |hi: Option<usize>, lo: usize| hi.is_some_and(|hi| hi < lo);
        self.receiver == other.receiver
            && !below(self.giver_hi, other.giver_lo)
            && !below(other.giver_hi, self.giver_lo)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hi = self.giver_hi.map_or("inf".to_string(), |h| h.to_string());
        write!(f, "{}..{} -> {}: {}", self.giver_lo, hi, self.receiver, rational::to_string(&self.amount))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RuleSetName {
    R1,
    R2,
    R3,
    #[serde(rename = "custom")]
    Custom,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct RuleSetRepr {
    name: RuleSetName,
    rules: Vec<Rule>,
    #[serde(with = "serde_str")]
    bound: Rational,
    p: Option<usize>,
}

/// A validated list of rules with the bound they are meant to establish.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RuleSetRepr", into = "RuleSetRepr")]
pub struct RuleSet {
    name: RuleSetName,
    rules: Vec<Rule>,
    bound: Rational,
    p: Option<usize>,
}

impl TryFrom<RuleSetRepr> for RuleSet {
    type Error = Error;

    fn try_from(r: RuleSetRepr) -> Result<Self> {
        RuleSet::new(r.name, r.rules, r.bound, r.p)
    }
}

impl From<RuleSet> for RuleSetRepr {
    fn from(r: RuleSet) -> Self {
        RuleSetRepr { name: r.name, rules: r.rules, bound: r.bound, p: r.p }
    }
}

impl RuleSet {
    /// Rejects invalid rules and any two rules that could both fire for the
    /// same (giver degree, receiver degree) pair.
    pub fn new(name: RuleSetName, rules: Vec<Rule>, bound: Rational, p: Option<usize>) -> Result<Self> {
        for (i, rule) in rules.iter().enumerate() {
            rule.validate()?;
            if let Some(other) = rules[..i].iter().find(|o| o.overlaps(rule)) {
                return Err(Error::InvalidRuleSet(format!("rules `{other}` and `{rule}` overlap")));
            }
        }
        Ok(RuleSet { name, rules, bound, p })
    }

    fn builtin(name: RuleSetName, p: usize, rules: &[(usize, Option<usize>, i64, i64)]) -> Self {
        let rules = rules
            .iter()
            .map(|&(lo, hi, n, d)| Rule::new(lo, hi, 2, rational::ratio(n, d)).expect("built-in rule"))
            .collect();
        RuleSet::new(name, rules, mad_threshold(p).expect("p in range"), Some(p)).expect("built-in rules are disjoint")
    }

    pub fn r1() -> Self {
        Self::builtin(RuleSetName::R1, 1, &[(3, Some(3), 1, 5), (4, None, 2, 5)])
    }

    pub fn r2() -> Self {
        Self::builtin(RuleSetName::R2, 2, &[(3, Some(3), 1, 9), (4, Some(5), 1, 3), (6, None, 5, 9)])
    }

    pub fn r3() -> Self {
        Self::builtin(RuleSetName::R3, 3, &[(4, None, 1, 2)])
    }

    /// The built-in rule set for part `p`.
    pub fn for_part(p: usize) -> Result<Self> {
        match p {
            1 => Ok(Self::r1()),
            2 => Ok(Self::r2()),
            3 => Ok(Self::r3()),
            _ => Err(Error::InvalidParameter(format!("p must be 1, 2 or 3, got {p}"))),
        }
    }

    pub fn name(&self) -> RuleSetName {
        self.name
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn bound(&self) -> &Rational {
        &self.bound
    }

    pub fn p(&self) -> Option<usize> {
        self.p
    }

    /// The amount a vertex of degree `giver` sends to an adjacent vertex of
    /// degree `receiver`, if any rule fires.
    pub fn transfer(&self, giver: usize, receiver: usize) -> Option<&Rational> {
        self.rules.iter().find(|r| r.fires(giver, receiver)).map(|r| &r.amount)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexCharge {
    #[serde(with = "serde_str")]
    pub initial: Rational,
    #[serde(rename = "final", with = "serde_str")]
    pub final_charge: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeState {
    pub charges: Vec<VertexCharge>,
}

impl ChargeState {
    pub fn initial_total(&self) -> Rational {
        exact_sum(self.charges.iter().map(|c| &c.initial))
    }

    pub fn final_total(&self) -> Rational {
        exact_sum(self.charges.iter().map(|c| &c.final_charge))
    }
}

/// Sums over a common denominator in `i128` while everything fits, and
/// falls back to big rationals otherwise.
fn exact_sum<'a>(values: impl Iterator<Item = &'a Rational> + Clone) -> Rational {
    use num::integer::lcm;
    use num::{BigInt, ToPrimitive};

    let fast = || -> Option<Rational> {
        let mut denom: i128 = 1;
        for v in values.clone() {
            denom = lcm(denom, i128::from(v.denom().to_i64()?));
            if denom > i128::from(i64::MAX) {
                return None;
            }
        }
        let mut numer: i128 = 0;
        for v in values.clone() {
            let scale = denom / i128::from(v.denom().to_i64()?);
            numer = numer.checked_add(i128::from(v.numer().to_i64()?).checked_mul(scale)?)?;
        }
        Some(Rational::new(BigInt::from(numer), BigInt::from(denom)))
    };
    fast().unwrap_or_else(|| values.sum())
}

/// Applies `rules` to `g`. Each vertex's final charge is computed on its
/// own from what it sends and receives, so conservation is a real check.
pub fn apply(g: &Graph, rules: &RuleSet) -> ChargeState {
    if let Some(state) = apply_scaled(g, rules) {
        return state;
    }
    let charges = (0..g.n())
        .map(|v| {
            let dv = g.degree(v);
            let initial = rational::integer(dv as i64);
            let mut final_charge = initial.clone();
            for &w in g.neighbors(v) {
                let dw = g.degree(w);
                if let Some(out) = rules.transfer(dv, dw) {
                    final_charge -= out;
                }
                if let Some(inc) = rules.transfer(dw, dv) {
                    final_charge += inc;
                }
            }
            VertexCharge { initial, final_charge }
        })
        .collect();
    ChargeState { charges }
}

/// Same as the rational loop in [`apply`], over integers scaled by the
/// common denominator of the amounts. `None` if that does not fit in i64.
fn apply_scaled(g: &Graph, rules: &RuleSet) -> Option<ChargeState> {
    use num::{BigInt, Integer, ToPrimitive};

    let denom = rules.rules.iter().fold(BigInt::from(1), |acc, r| acc.lcm(r.amount.denom())).to_i64()?;
    let scaled: Vec<i64> = rules
        .rules
        .iter()
        .map(|r| (r.amount.numer() * (BigInt::from(denom) / r.amount.denom())).to_i64())
        .collect::<Option<_>>()?;
    let transfer = |giver: usize, receiver: usize| -> i64 {
        rules.rules.iter().position(|r| r.fires(giver, receiver)).map_or(0, |i| scaled[i])
    };
    let mut charges = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let dv = g.degree(v);
        let mut total = i128::from(denom) * dv as i128;
        for &w in g.neighbors(v) {
            let dw = g.degree(w);
            total += i128::from(transfer(dw, dv)) - i128::from(transfer(dv, dw));
        }
        charges.push(VertexCharge {
            initial: rational::integer(dv as i64),
            final_charge: Rational::new(BigInt::from(total), BigInt::from(denom)),
        });
    }
    Some(ChargeState { charges })
}

pub fn min_final_charge(state: &ChargeState) -> Result<Rational> {
    state.charges.iter().map(|c| &c.final_charge).min().cloned().ok_or(Error::EmptyGraph)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub configs_found: Vec<Configuration>,
    /// Minimum final charge under the rule set for `p`; absent for the
    /// empty graph.
    #[serde(with = "rational::serde_opt_str")]
    pub min_charge: Option<Rational>,
    #[serde(with = "serde_str")]
    pub bound: Rational,
    pub consistent: bool,
}

/// Looks for a configuration; when there is none, every final charge under
/// the rule set for `p` must reach the bound for `p`. A report with
/// `consistent = false` is a counterexample to the discharging argument.
pub fn check_bound(g: &Graph, p: usize, k: usize) -> Result<BoundReport> {
    if k < 4 {
        return Err(Error::InvalidParameter(format!("k must be at least 4, got {k}")));
    }
    let rules = RuleSet::for_part(p)?;
    let configs_found: Vec<Configuration> = find_configuration(g, p, k).into_iter().collect();
    let min_charge = if g.is_empty() { None } else { Some(min_final_charge(&apply(g, &rules))?) };
    let consistent = !configs_found.is_empty() || min_charge.as_ref().is_none_or(|m| m >= rules.bound());
    Ok(BoundReport { configs_found, min_charge, bound: rules.bound().clone(), consistent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, subdivide_edges, FamilySpec};
    use crate::rational::{integer, ratio};

    fn fam(spec: FamilySpec) -> Graph {
        generate(&spec).unwrap()
    }

    fn subdivided_k4() -> Graph {
        // a, b, c, d = 0..4, m = 4 on edge ab
        subdivide_edges(&fam(FamilySpec::Complete { n: 4 }), &[(0, 1)])
    }

    fn finals(state: &ChargeState) -> Vec<Rational> {
        state.charges.iter().map(|c| c.final_charge.clone()).collect()
    }

    #[test]
    fn scaled_and_rational_paths_agree() {
        let g = generate(&FamilySpec::Subdivision { base: Box::new(FamilySpec::Petersen), t: 1 }).unwrap();
        let g = crate::graph::Graph::from_edges(g.n() + 1, g.edges().chain([(0, g.n()), (1, 2)])).unwrap();
        for rules in [RuleSet::r1(), RuleSet::r2(), RuleSet::r3()] {
            let fast = apply(&g, &rules);
            let slow = ChargeState {
                charges: (0..g.n())
                    .map(|v| {
                        let dv = g.degree(v);
                        let mut c = integer(dv as i64);
                        for &w in g.neighbors(v) {
                            let dw = g.degree(w);
                            for r in rules.rules() {
                                if r.fires(dv, dw) {
                                    c -= &r.amount;
                                }
                                if r.fires(dw, dv) {
                                    c += &r.amount;
                                }
                            }
                        }
                        VertexCharge { initial: integer(dv as i64), final_charge: c }
                    })
                    .collect(),
            };
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn huge_denominators_fall_back() {
        let big = i64::MAX - 1;
        let rules = RuleSet::new(
            RuleSetName::Custom,
            vec![Rule::new(3, Some(3), 2, ratio(1, big)).unwrap(), Rule::new(4, None, 2, ratio(1, big - 2)).unwrap()],
            integer(2),
            None,
        )
        .unwrap();
        let g = generate(&FamilySpec::Subdivision { base: Box::new(FamilySpec::Complete { n: 5 }), t: 1 }).unwrap();
        let g = crate::graph::Graph::from_edges(g.n(), g.edges().chain([(0, 1)])).unwrap();
        let state = apply(&g, &rules);
        assert_eq!(state.final_total(), integer(2 * g.edge_count() as i64));
        assert_eq!(state.final_total(), state.charges.iter().map(|c| &c.final_charge).sum::<Rational>());
    }

    #[test]
    fn cycle_keeps_charge_two() {
        let c5 = fam(FamilySpec::Cycle { n: 5 });
        let state = apply(&c5, &RuleSet::r1());
        assert!(finals(&state).iter().all(|c| *c == integer(2)));
        assert_eq!(min_final_charge(&state).unwrap(), integer(2));
    }

    #[test]
    fn subdivided_k4_under_r1() {
        let g = subdivided_k4();
        let state = apply(&g, &RuleSet::r1());
        assert_eq!(
            finals(&state),
            vec![ratio(14, 5), ratio(14, 5), integer(3), integer(3), ratio(12, 5)]
        );
        assert_eq!(min_final_charge(&state).unwrap(), ratio(12, 5));
        assert_eq!(state.final_total(), integer(2 * g.edge_count() as i64));
    }

    #[test]
    fn four_vertex_with_two_2_neighbors_under_r3() {
        // center 0 adjacent to 2-vertices 1, 2 and to 3, 4 inside a K4
        let edges = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (2, 6), (5, 6), (3, 4), (3, 7), (3, 8), (4, 7), (4, 8), (7, 8)];
        let g = Graph::from_edges(9, edges).unwrap();
        let state = apply(&g, &RuleSet::r3());
        assert_eq!(state.charges[0].final_charge, integer(3));
        assert_eq!(state.charges[1].final_charge, ratio(5, 2));
    }

    #[test]
    fn complete_graph_has_no_transfers() {
        let k4 = fam(FamilySpec::Complete { n: 4 });
        assert_eq!(min_final_charge(&apply(&k4, &RuleSet::r3())).unwrap(), integer(3));
        assert!(min_final_charge(&apply(&Graph::empty(0), &RuleSet::r1())).is_err());
    }

    #[test]
    fn builtins_are_exact() {
        let r2 = RuleSet::r2();
        assert_eq!(r2.transfer(3, 2), Some(&ratio(1, 9)));
        assert_eq!(r2.transfer(5, 2), Some(&ratio(1, 3)));
        assert_eq!(r2.transfer(60, 2), Some(&ratio(5, 9)));
        assert_eq!(r2.transfer(2, 2), None);
        assert_eq!(r2.transfer(6, 3), None);
        assert_eq!(RuleSet::r1().bound(), &ratio(12, 5));
        assert_eq!(RuleSet::r3().bound(), &integer(3));
        assert!(RuleSet::for_part(4).is_err());
    }

    #[test]
    fn overlapping_rules_rejected() {
        let a = Rule::new(3, Some(5), 2, ratio(1, 5)).unwrap();
        let b = Rule::new(5, None, 2, ratio(1, 5)).unwrap();
        let c = Rule::new(5, None, 3, ratio(1, 5)).unwrap();
        let d = Rule::new(6, None, 2, ratio(1, 5)).unwrap();
        assert!(RuleSet::new(RuleSetName::Custom, vec![a.clone(), b], integer(2), None).is_err());
        assert!(RuleSet::new(RuleSetName::Custom, vec![a, c, d], integer(2), None).is_ok());
        assert!(Rule::new(3, Some(2), 2, ratio(1, 5)).is_err());
        assert!(Rule::new(3, None, 0, ratio(1, 5)).is_err());
        assert!(Rule::new(3, None, 2, integer(0)).is_err());
    }

    #[test]
    fn ruleset_json_validates() {
        let json = serde_json::to_string(&RuleSet::r1()).unwrap();
        assert!(json.contains("\"amount\":\"1/5\""));
        assert_eq!(serde_json::from_str::<RuleSet>(&json).unwrap(), RuleSet::r1());
        let bad = json.replace("\"giver_lo\":4", "\"giver_lo\":3");
        assert!(serde_json::from_str::<RuleSet>(&bad).is_err());
    }

    #[test]
    fn charge_state_json() {
        let state = apply(&subdivided_k4(), &RuleSet::r1());
        let v: serde_json::Value = serde_json::to_value(&state).unwrap();
        assert_eq!(v["charges"][4]["initial"], "2/1");
        assert_eq!(v["charges"][4]["final"], "12/5");
        assert_eq!(serde_json::from_value::<ChargeState>(v).unwrap(), state);
    }

    #[test]
    fn check_bound_examples() {
        let c5 = fam(FamilySpec::Cycle { n: 5 });
        let r = check_bound(&c5, 1, 4).unwrap();
        assert!(matches!(r.configs_found.as_slice(), [Configuration::C3 { .. }]));
        assert!(r.consistent);

        let r = check_bound(&subdivided_k4(), 1, 4).unwrap();
        assert!(r.configs_found.is_empty());
        assert_eq!(r.min_charge, Some(ratio(12, 5)));
        assert!(r.consistent);

        let tree = fam(FamilySpec::RandomTree { n: 12, seed: 3 });
        for p in 1..=3 {
            let r = check_bound(&tree, p, 4).unwrap();
            assert!(matches!(r.configs_found.as_slice(), [Configuration::C1 { .. }]));
        }
        assert!(check_bound(&c5, 1, 3).is_err());
    }

    #[test]
    fn high_degree_keeps_half_under_r3() {
        // a 7-star with every edge subdivided: the center gives 1/2 to each
        let g = generate(&FamilySpec::Subdivision { base: Box::new(FamilySpec::Star { leaves: 7 }), t: 1 }).unwrap();
        let state = apply(&g, &RuleSet::r3());
        assert_eq!(state.charges[0].final_charge, ratio(7, 2));
        assert!(state.charges[0].final_charge >= integer(3));
    }
}
