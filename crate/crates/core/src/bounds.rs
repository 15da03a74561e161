// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Density and clique bounds on the chromatic index, and verdicts for the
//! inequalities they enter.

use serde::{Deserialize, Serialize};

use crate::clique::{Bits, SimpleGraph};
use crate::error::{invalid, precondition, Error, Result};
use crate::multigraph::{Multigraph, Vertex};
use crate::rational::Rational;

/// Largest vertex count for which [`goldberg_density`] enumerates subsets.
pub const DENSITY_VERTEX_GATE: usize = 22;
/// Largest edge count of `Q` for which all-subgraphs mode runs.
pub const ALL_SUBGRAPHS_EDGE_GATE: usize = 20;
/// Smaller gate for the field filled in by [`bound_report`].
pub const REPORT_ALL_SUBGRAPHS_EDGE_GATE: usize = 12;
/// Largest number of cliques visited by induced mode with unbounded rank.
pub const CLIQUE_VISIT_CAP: u64 = 1_000_000;

/// `max ceil(||G[S]|| / floor(|S|/2))` over vertex sets `S` with `|S| >= 2`.
pub fn goldberg_density(g: &Multigraph) -> Result<usize> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(invalid("density needs at least two vertices"));
    }
    if n > DENSITY_VERTEX_GATE {
        return Err(Error::Budget(format!(
            "density enumeration is limited to {DENSITY_VERTEX_GATE} vertices, graph has {n}"
        )));
    }
    let mut row = vec![0u32; n * n];
    for (u, v, m) in g.pairs() {
        row[u * n + v] = m as u32;
        row[v * n + u] = m as u32;
    }
    let full = 1usize << n;
    let mut inside = vec![0u32; full];
    let mut best = 0;
    for s in 1..full {
        let v = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        let mut add = 0;
        let mut r = rest;
        while r != 0 {
            let u = r.trailing_zeros() as usize;
            add += row[v * n + u];
            r &= r - 1;
        }
        inside[s] = inside[rest] + add;
        let size = s.count_ones() as usize;
        if size >= 2 {
            let half = (size / 2) as u32;
            best = best.max(inside[s].div_ceil(half) as usize);
        }
    }
    Ok(best)
}

/// Clique number of the line graph: the largest star or triangle edge set.
pub fn omega_line_graph(g: &Multigraph) -> Result<usize> {
    if g.edge_count() == 0 {
        return Err(invalid("line graph of an edgeless graph has no cliques"));
    }
    let mut best = g.max_degree();
    let n = g.vertex_count();
    for u in 0..n {
        for v in u + 1..n {
            let uv = g.mu(u, v);
            if uv == 0 {
                continue;
            }
            for w in v + 1..n {
                let (uw, vw) = (g.mu(u, w), g.mu(v, w));
                if uw > 0 && vw > 0 {
                    best = best.max(uv + uw + vw);
                }
            }
        }
    }
    Ok(best)
}

/// Claw-degree of `x`; zero when `x` has at most two neighbors.
pub fn claw_degree_at(g: &Multigraph, x: Vertex) -> Rational {
    let mut nb: Vec<usize> = g.neighbors(x).iter().map(|&v| g.deg(v)).collect();
    if nb.len() < 3 {
        return Rational::ZERO;
    }
    nb.sort_unstable_by(|a, b| b.cmp(a));
    Rational::new((g.deg(x) + nb[0] + nb[1] + nb[2]) as i64, 4)
}

pub fn claw_degree(g: &Multigraph) -> Rational {
    (0..g.vertex_count())
        .map(|x| claw_degree_at(g, x))
        .max()
        .unwrap_or(Rational::ZERO)
}

/// Clique-size cap for the `gamma` family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rank {
    Finite(usize),
    Infinite,
}

impl Rank {
    fn admits_smaller(self, size: usize) -> bool {
        match self {
            Rank::Finite(r) => size < r,
            Rank::Infinite => true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubgraphMode {
    Induced,
    AllSubgraphs,
}

fn check_simple_nonempty(q: &Multigraph) -> Result<()> {
    if q.vertex_count() == 0 {
        return Err(invalid("gamma needs a nonempty graph"));
    }
    if !q.is_simple() {
        return Err(invalid("gamma is defined on simple graphs"));
    }
    Ok(())
}

// (d(v) + omega(v) + 1) per vertex, under the current adjacency.
fn vertex_weights(h: &SimpleGraph) -> Vec<i64> {
    let all = Bits::full(h.vertex_count());
    (0..h.vertex_count())
        .map(|v| (h.degree(v) + h.max_clique_containing(v, &all) + 1) as i64)
        .collect()
}

fn clique_value(weights: &[i64], xs: &[Vertex]) -> Rational {
    let sum: i64 = xs.iter().map(|&v| weights[v]).sum();
    Rational::new(sum, 2 * xs.len() as i64)
}

/// `gamma_r` of a simple graph given as bitsets.
pub fn gamma_of(h: &SimpleGraph, r: Rank) -> Rational {
    let weights = vertex_weights(h);
    let mut best = Rational::ZERO;
    let mut consider = |xs: &[Vertex]| {
        let val = clique_value(&weights, xs);
        if val > best {
            best = val;
        }
    };
    match r {
        Rank::Infinite => {
            for c in h.maximal_cliques() {
                consider(&c);
            }
        }
        Rank::Finite(r) => {
            for c in h.cliques_of_size(r) {
                consider(&c);
            }
            if r > 1 {
                h.for_each_clique(r - 1, &mut |xs| {
                    if h.common_neighbors(xs).is_empty() {
                        consider(xs);
                    }
                });
            }
        }
    }
    best
}

/// `gamma_r(Q)` as an exact rational.
pub fn gamma_r(q: &Multigraph, r: Rank) -> Result<Rational> {
    check_simple_nonempty(q)?;
    if r == Rank::Finite(0) {
        return Err(invalid("rank must be positive"));
    }
    Ok(gamma_of(&SimpleGraph::from_multigraph(q), r))
}

/// Maximum of `gamma_r` over subgraphs of `Q`.
pub fn gamma_tilde_r(q: &Multigraph, r: Rank, mode: SubgraphMode) -> Result<Rational> {
    check_simple_nonempty(q)?;
    if r == Rank::Finite(0) {
        return Err(invalid("rank must be positive"));
    }
    match mode {
        SubgraphMode::Induced => gamma_tilde_induced(&SimpleGraph::from_multigraph(q), r),
        SubgraphMode::AllSubgraphs => gamma_tilde_all(q, r),
    }
}

// A clique X of size r scores best in Q itself. A smaller clique X must be
// maximal, so the best host is Q minus the common neighbors of X.
fn gamma_tilde_induced(q: &SimpleGraph, r: Rank) -> Result<Rational> {
    let weights = vertex_weights(q);
    let mut best = Rational::ZERO;
    let mut visited = 0u64;
    let max = match r {
        Rank::Finite(r) => r,
        Rank::Infinite => usize::MAX,
    };
    let mut over = false;
    q.for_each_clique(max, &mut |xs| {
        visited += 1;
        if visited > CLIQUE_VISIT_CAP {
            over = true;
            return;
        }
        let val = if r.admits_smaller(xs.len()) {
            let cn = q.common_neighbors(xs);
            if cn.is_empty() {
                clique_value(&weights, xs)
            } else {
                let h = q.without(&cn);
                let alive = Bits::full(q.vertex_count()).and_not(&cn);
                let sum: i64 = xs
                    .iter()
                    .map(|&v| (h.degree(v) + h.max_clique_containing(v, &alive) + 1) as i64)
                    .sum();
                Rational::new(sum, 2 * xs.len() as i64)
            }
        } else {
            clique_value(&weights, xs)
        };
        if val > best {
            best = val;
        }
    });
    if over {
        return Err(Error::Budget(format!(
            "induced gamma enumeration exceeded {CLIQUE_VISIT_CAP} cliques"
        )));
    }
    Ok(best)
}

// Spanning subgraphs suffice: an isolated vertex scores exactly 1, which
// every nonempty graph already reaches.
fn gamma_tilde_all(q: &Multigraph, r: Rank) -> Result<Rational> {
    let m = q.edge_count();
    if m > ALL_SUBGRAPHS_EDGE_GATE {
        return Err(Error::Budget(format!(
            "all-subgraphs mode is limited to {ALL_SUBGRAPHS_EDGE_GATE} edges, graph has {m}"
        )));
    }
    let mut best = Rational::ZERO;
    for mask in 0u32..(1 << m) {
        let mut h = Multigraph::new(q.vertex_count());
        for (e, &(u, v)) in q.edges().iter().enumerate() {
            if mask >> e & 1 == 1 {
                h.add_edge(u, v)?;
            }
        }
        best = best.max(gamma_of(&SimpleGraph::from_multigraph(&h), r));
    }
    Ok(best)
}

/// `max(Δ, ceil(X / t))` for a thickened cycle of length `2t + 1` with
/// total multiplicity `X`.
pub fn chi_prime_thickened_odd_cycle(multiplicities: &[usize]) -> Result<usize> {
    let len = multiplicities.len();
    if len < 3 || len.is_multiple_of(2) {
        return Err(invalid(format!(
            "thickened odd cycle needs odd length at least 3, got {len}"
        )));
    }
    if multiplicities.contains(&0) {
        return Err(invalid("multiplicities must be positive"));
    }
    let t = (len - 1) / 2;
    let total: usize = multiplicities.iter().sum();
    let delta = (0..len)
        .map(|i| multiplicities[i] + multiplicities[(i + len - 1) % len])
        .max()
        .unwrap_or(0);
    Ok(delta.max(total.div_ceil(t)))
}

/// The literal parity-and-size test: `||G||` odd and
/// `k (|G| - 1) = 2 (||G|| - 1)`.
pub fn easy_prop_check(g: &Multigraph, k: usize) -> bool {
    let (n, m) = (g.vertex_count(), g.edge_count());
    m % 2 == 1 && n >= 1 && k * (n - 1) == 2 * (m.max(1) - 1)
}

/// Same size identity with the parity condition on `|G|` instead.
pub fn easy_prop_vertex_parity_check(g: &Multigraph, k: usize) -> bool {
    let (n, m) = (g.vertex_count(), g.edge_count());
    n % 2 == 1 && n >= 1 && m >= 1 && k * (n - 1) == 2 * (m - 1)
}

/// Both sides of the neighborhood-size identity at `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SlackedTerms {
    pub s1: Rational,
    pub s2: Rational,
    pub s3: Rational,
    pub neighbors: usize,
    pub numerator: Rational,
    pub denominator: Rational,
}

impl SlackedTerms {
    /// Recomputes numerator and denominator from the slack terms.
    pub fn with_terms(
        self,
        g: &Multigraph,
        x: Vertex,
        eps: Rational,
        beta: Rational,
    ) -> SlackedTerms {
        let n = Rational::from(g.vertex_count());
        let delta = Rational::from(g.max_degree());
        let dx = Rational::from(g.deg(x));
        let one = Rational::integer(1);
        let numerator = eps * (n - delta - dx - one + self.s1 + self.s2 + self.s3 * (n - one));
        let denominator = (one - eps) * delta - eps * dx + one - beta + self.s3;
        SlackedTerms {
            numerator,
            denominator,
            ..self
        }
    }

    pub fn holds(&self) -> bool {
        self.denominator != Rational::ZERO
            && Rational::from(self.neighbors) == self.numerator / self.denominator
    }
}

/// Evaluates the slack terms at `x` without checking preconditions.
pub fn slacked_terms(
    g: &Multigraph,
    k: usize,
    x: Vertex,
    eps: Rational,
    beta: Rational,
) -> SlackedTerms {
    let q = g.line_graph();
    let delta_q = q.max_degree() as i64;
    let delta = g.max_degree() as i64;
    let nb = g.neighbors(x);
    let s1: i64 = nb
        .iter()
        .map(|&v| delta_q - (g.deg(x) + g.deg(v) - g.mu(x, v) - 1) as i64)
        .sum();
    let s2: i64 = 2
        + (0..g.vertex_count())
            .filter(|v| !nb.contains(v))
            .map(|v| delta - g.deg(v) as i64)
            .sum::<i64>();
    let s3 = k as i64 - (delta + 1);
    SlackedTerms {
        s1: s1.into(),
        s2: s2.into(),
        s3: s3.into(),
        neighbors: nb.len(),
        numerator: Rational::ZERO,
        denominator: Rational::ZERO,
    }
    .with_terms(g, x, eps, beta)
}

/// Checks the identity at `x` after verifying its preconditions against an
/// oracle certification.
pub fn slacked_identity_check(
    g: &Multigraph,
    k: usize,
    x: Vertex,
    eps: Rational,
    beta: Rational,
    cert: &crate::oracle::Certification,
) -> Result<bool> {
    if x >= g.vertex_count() {
        return Err(invalid(format!("vertex {x} out of range")));
    }
    if cert.critical != Some(true) || !cert.elementary() {
        return Err(precondition(
            "graph is not certified critical and elementary",
        ));
    }
    if cert.chi_prime != k + 1 || k < g.max_degree() + 1 {
        return Err(precondition(format!(
            "need chi' = k + 1 and k >= Δ + 1, have chi' = {}, k = {k}, Δ = {}",
            cert.chi_prime,
            g.max_degree()
        )));
    }
    let delta_q = g.line_graph().max_degree();
    if Rational::from(k) != eps * Rational::from(delta_q + 1) + beta {
        return Err(precondition(format!(
            "k = {k} differs from eps (Δ(Q) + 1) + beta = {}",
            eps * Rational::from(delta_q + 1) + beta
        )));
    }
    let terms = slacked_terms(g, k, x, eps, beta);
    if terms.denominator == Rational::ZERO {
        return Err(precondition("identity denominator vanishes"));
    }
    Ok(terms.holds())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    HoldsWithEquality,
    Violated,
    NotApplicable,
}

impl Verdict {
    pub fn of(value: usize, bound: Rational) -> Verdict {
        let v = Rational::from(value);
        if v == bound {
            Verdict::HoldsWithEquality
        } else if v < bound {
            Verdict::Holds
        } else {
            Verdict::Violated
        }
    }

    pub fn is_violation(self) -> bool {
        self == Verdict::Violated
    }
}

/// Every invariant and verdict computed for one instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    pub mu: usize,
    pub delta_q: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_q: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<usize>,
    pub d_claw: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_1: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_2: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_3: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_tilde_3: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_tilde_3_all_subgraphs: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_prime: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub critical: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub main_theorem: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weak_theorem: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub goldberg_seymour: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem_10: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claw_critical: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_1_bound: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_2_bound: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_tilde_3_bound: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_3_critical: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub critical_mu_bound: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub critical_mu_bound_other_way: Option<Verdict>,
}

impl BoundReport {
    /// Names and values of every computed verdict.
    pub fn verdict_list(&self) -> Vec<(&'static str, Verdict)> {
        [
            ("main_theorem", self.main_theorem),
            ("weak_theorem", self.weak_theorem),
            ("goldberg_seymour", self.goldberg_seymour),
            ("theorem_10", self.theorem_10),
            ("claw_critical", self.claw_critical),
            ("gamma_1_bound", self.gamma_1_bound),
            ("gamma_2_bound", self.gamma_2_bound),
            ("gamma_tilde_3_bound", self.gamma_tilde_3_bound),
            ("gamma_3_critical", self.gamma_3_critical),
            ("critical_mu_bound", self.critical_mu_bound),
            (
                "critical_mu_bound_other_way",
                self.critical_mu_bound_other_way,
            ),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect()
    }

    pub fn violations(&self) -> Vec<&'static str> {
        self.verdict_list()
            .into_iter()
            .filter(|(_, v)| v.is_violation())
            .map(|(k, _)| k)
            .collect()
    }
}

/// All oracle-free invariants of `g`.
pub fn bound_report(g: &Multigraph) -> Result<BoundReport> {
    let q = g.line_graph();
    let nonempty = g.edge_count() > 0;
    let sq = SimpleGraph::from_multigraph(&q);
    let gamma = |r| nonempty.then(|| gamma_of(&sq, r));
    let gamma_tilde_3 = if nonempty {
        Some(gamma_tilde_induced(&sq, Rank::Finite(3))?)
    } else {
        None
    };
    let gamma_tilde_3_all_subgraphs =
        if nonempty && q.edge_count() <= REPORT_ALL_SUBGRAPHS_EDGE_GATE {
            Some(gamma_tilde_all(&q, Rank::Finite(3))?)
        } else {
            None
        };
    Ok(BoundReport {
        n: g.vertex_count(),
        m: g.edge_count(),
        delta: g.max_degree(),
        mu: g.max_multiplicity(),
        delta_q: q.max_degree(),
        omega_q: omega_line_graph(g).ok(),
        w: if g.vertex_count() >= 2 {
            Some(goldberg_density(g)?)
        } else {
            None
        },
        d_claw: claw_degree(g),
        gamma_1: gamma(Rank::Finite(1)),
        gamma_2: gamma(Rank::Finite(2)),
        gamma_3: gamma(Rank::Finite(3)),
        gamma_tilde_3,
        gamma_tilde_3_all_subgraphs,
        chi_prime: None,
        critical: None,
        main_theorem: None,
        weak_theorem: None,
        goldberg_seymour: None,
        theorem_10: None,
        claw_critical: None,
        gamma_1_bound: None,
        gamma_2_bound: None,
        gamma_tilde_3_bound: None,
        gamma_3_critical: None,
        critical_mu_bound: None,
        critical_mu_bound_other_way: None,
    })
}

/// Bound report plus every verdict, given the exact chromatic index and,
/// optionally, certified criticality.
pub fn verdicts(g: &Multigraph, chi_prime: usize, critical: Option<bool>) -> Result<BoundReport> {
    let mut r = bound_report(g)?;
    let w = r.w.unwrap_or(0);
    if chi_prime < w || chi_prime < r.delta {
        return Err(Error::Consistency(format!(
            "chi' = {chi_prime} is below a lower bound (W = {w}, Δ = {})",
            r.delta
        )));
    }
    r.chi_prime = Some(chi_prime);
    r.critical = critical;
    if g.edge_count() == 0 {
        return Ok(r);
    }
    let int = |v: usize| Rational::from(v);
    let omega = r.omega_q.unwrap_or(0);
    let dq = r.delta_q;
    let delta = r.delta;
    let mu = r.mu;
    r.main_theorem = Some(Verdict::of(
        chi_prime,
        int(omega.max((5 * dq + 3).div_ceil(6))),
    ));
    r.weak_theorem = Some(Verdict::of(
        chi_prime,
        int(w.max(delta + 1).max((5 * dq + 8) / 6)),
    ));
    r.goldberg_seymour = Some(Verdict::of(chi_prime, int(w.max(delta + 1))));
    let claw = (Rational::new(4, 3) * r.d_claw).ceil().max(0) as usize;
    r.theorem_10 = Some(Verdict::of(chi_prime, int(w.max(delta + 1).max(claw))));
    let ceil = |x: Option<Rational>| int(x.map(|x| x.ceil().max(0) as usize).unwrap_or(0));
    r.gamma_1_bound = Some(Verdict::of(chi_prime, ceil(r.gamma_1)));
    r.gamma_2_bound = Some(Verdict::of(chi_prime, ceil(r.gamma_2)));
    r.gamma_tilde_3_bound = Some(Verdict::of(chi_prime, ceil(r.gamma_tilde_3)));
    let crit_non_cycle = critical == Some(true) && !g.is_thickened_cycle();
    r.claw_critical = Some(if crit_non_cycle {
        Verdict::of(chi_prime, int((delta + 1).max(claw)))
    } else {
        Verdict::NotApplicable
    });
    r.gamma_3_critical = Some(if crit_non_cycle {
        Verdict::of(chi_prime, ceil(r.gamma_3))
    } else {
        Verdict::NotApplicable
    });
    if critical == Some(true) {
        let half = Rational::new(mu as i64 - 1, 2);
        let b4 = int(omega).max(Rational::from(dq + 1) - half);
        r.critical_mu_bound = Some(Verdict::of(chi_prime, b4));
        let b8 = (dq as i64 + 1 + 2 * mu as i64 - delta as i64).max(delta as i64);
        r.critical_mu_bound_other_way = Some(Verdict::of(chi_prime, Rational::integer(b8)));
    } else {
        r.critical_mu_bound = Some(Verdict::NotApplicable);
        r.critical_mu_bound_other_way = Some(Verdict::NotApplicable);
    }
    Ok(r)
}
