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

//! Seeded corpora and the verification suites run over them.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    easy_prop_check, easy_prop_vertex_parity_check, gamma_r, gamma_tilde_r, slacked_identity_check,
    verdicts, Rank, SubgraphMode, Verdict,
};
use crate::error::{invalid, Error, Result};
use crate::generate::{
    fig_nonmonotone, random_multigraph, thickened_cycle, GraphFamilySpec, FIG_NONMONOTONE_APEX,
};
use crate::lemma::{
    check_freecolors, check_parallel_edge_lemma, check_tashkinov_elementary, check_tau_escape,
    LemmaRunReport,
};
use crate::multigraph::Multigraph;
use crate::oracle::{
    certify, chromatic_index_exact, critical_subgraph, vertex_chromatic_number, DEFAULT_NODE_BUDGET,
};
use crate::rational::Rational;
use crate::tashkinov::derive_seed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    MainTheorem,
    WeakTheorem,
    GoldbergSeymour,
    #[serde(rename = "theorem-10")]
    Theorem10,
    GammaBounds,
    TashkinovElementary,
    ParallelEdge,
    SlackedIdentity,
    EasyProp,
    TauEscape,
    FreeColors,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::MainTheorem,
        Suite::WeakTheorem,
        Suite::GoldbergSeymour,
        Suite::Theorem10,
        Suite::GammaBounds,
        Suite::TashkinovElementary,
        Suite::ParallelEdge,
        Suite::SlackedIdentity,
        Suite::EasyProp,
        Suite::TauEscape,
        Suite::FreeColors,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::MainTheorem => "main-theorem",
            Suite::WeakTheorem => "weak-theorem",
            Suite::GoldbergSeymour => "goldberg-seymour",
            Suite::Theorem10 => "theorem-10",
            Suite::GammaBounds => "gamma-bounds",
            Suite::TashkinovElementary => "tashkinov-elementary",
            Suite::ParallelEdge => "parallel-edge",
            Suite::SlackedIdentity => "slacked-identity",
            Suite::EasyProp => "easy-prop",
            Suite::TauEscape => "tau-escape",
            Suite::FreeColors => "free-colors",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
                invalid(format!("unknown suite `{s}` (known: {})", names.join(", ")))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusConfig {
    pub count: usize,
    pub seed: u64,
    pub max_n: usize,
    pub max_mu: usize,
    /// Sampled colorings per instance in lemma suites.
    pub samples: usize,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            count: 100,
            seed: 0,
            max_n: 7,
            max_mu: 4,
            samples: 20,
        }
    }
}

/// Instance `i` of the random corpus: `n` uniform in `2..=max_n`, edge
/// probability in `[0.3, 0.9]`, multiplicity cap in `1..=max_mu`. Edgeless
/// draws are redrawn.
pub fn corpus_instance(cfg: &CorpusConfig, i: usize) -> Result<(GraphFamilySpec, Multigraph)> {
    if cfg.max_n < 2 || cfg.max_mu < 1 {
        return Err(invalid("corpus needs max_n >= 2 and max_mu >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, i as u64));
    loop {
        let spec = GraphFamilySpec::Random {
            n: rng.gen_range(2..=cfg.max_n),
            p: rng.gen_range(0.3..=0.9),
            max_mu: rng.gen_range(1..=cfg.max_mu),
            seed: rng.gen(),
        };
        let GraphFamilySpec::Random { n, p, max_mu, seed } = spec else {
            unreachable!()
        };
        let g = random_multigraph(n, p, max_mu, seed)?;
        if g.edge_count() > 0 {
            return Ok((spec, g));
        }
    }
}

/// Instance `i` of the thickened-cycle corpus: length 3, 5 or 7 with
/// multiplicities in `1..=max_mu`.
pub fn cycle_instance(cfg: &CorpusConfig, i: usize) -> Result<(GraphFamilySpec, Multigraph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed ^ 0xc1c1e, i as u64));
    let len = [3, 5, 7][rng.gen_range(0..3)];
    let multiplicities: Vec<usize> = (0..len)
        .map(|_| rng.gen_range(1..=cfg.max_mu.max(1)))
        .collect();
    let g = thickened_cycle(&multiplicities)?;
    Ok((GraphFamilySpec::ThickenedCycle { multiplicities }, g))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Vacuous,
    Violation,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub index: usize,
    pub instance: GraphFamilySpec,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "serde_json::Value::is_null", default)]
    pub detail: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub graph: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub suite: Suite,
    pub config: CorpusConfig,
    pub instances: usize,
    pub passes: usize,
    pub vacuous: usize,
    pub violations: usize,
    pub errors: usize,
    /// Merged lemma report, for lemma suites.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lemma: Option<LemmaRunReport>,
    #[serde(skip_serializing_if = "serde_json::Value::is_null", default)]
    pub extras: serde_json::Value,
    pub records: Vec<InstanceRecord>,
}

impl SuiteSummary {
    pub fn is_clean(&self) -> bool {
        self.violations == 0 && self.errors == 0
    }
}

struct Checked {
    outcome: Outcome,
    detail: serde_json::Value,
    lemma: Option<LemmaRunReport>,
}

impl Checked {
    fn plain(outcome: Outcome, detail: serde_json::Value) -> Checked {
        Checked {
            outcome,
            detail,
            lemma: None,
        }
    }
}

fn verdict_outcome(v: Verdict) -> Outcome {
    match v {
        Verdict::Holds | Verdict::HoldsWithEquality => Outcome::Pass,
        Verdict::Violated => Outcome::Violation,
        Verdict::NotApplicable => Outcome::Vacuous,
    }
}

fn theorem_check(suite: Suite, g: &Multigraph) -> Result<Checked> {
    let chi = chromatic_index_exact(g, DEFAULT_NODE_BUDGET)?;
    let r = verdicts(g, chi, None)?;
    let v = match suite {
        Suite::MainTheorem => r.main_theorem,
        Suite::WeakTheorem => r.weak_theorem,
        Suite::GoldbergSeymour => r.goldberg_seymour,
        _ => r.theorem_10,
    }
    .unwrap_or(Verdict::NotApplicable);
    Ok(Checked::plain(
        verdict_outcome(v),
        serde_json::json!({
            "chi_prime": chi, "w": r.w, "delta": r.delta, "delta_q": r.delta_q,
            "omega_q": r.omega_q, "d_claw": r.d_claw, "verdict": v,
        }),
    ))
}

const GAMMA_RANKS: [Rank; 4] = [
    Rank::Finite(1),
    Rank::Finite(2),
    Rank::Finite(3),
    Rank::Infinite,
];

fn gamma_check(g: &Multigraph) -> Result<Checked> {
    let q = g.line_graph();
    let mut failed = Vec::new();
    let gammas = GAMMA_RANKS
        .iter()
        .map(|&r| gamma_r(&q, r))
        .collect::<Result<Vec<_>>>()?;
    for w in gammas.windows(2) {
        if w[0] < w[1] {
            failed.push("rank-order".to_string());
        }
    }
    for x in 0..q.vertex_count() {
        let h = q.without_vertex(x);
        if h.vertex_count() == 0 {
            continue;
        }
        for (r, full) in gammas.iter().take(2).enumerate() {
            if gamma_r(&h, Rank::Finite(r + 1))? > *full {
                failed.push(format!("gamma_{} increases without vertex {x}", r + 1));
            }
        }
    }
    let chi = vertex_chromatic_number(&q, DEFAULT_NODE_BUDGET)?;
    let tilde = gamma_tilde_r(&q, Rank::Finite(3), SubgraphMode::Induced)?;
    for (name, b) in [
        ("gamma_1", gammas[0]),
        ("gamma_2", gammas[1]),
        ("gamma_tilde_3", tilde),
    ] {
        if Rational::from(chi) > Rational::integer(b.ceil()) {
            failed.push(format!("chi(Q) exceeds ceil({name})"));
        }
    }
    let outcome = if failed.is_empty() {
        Outcome::Pass
    } else {
        Outcome::Violation
    };
    Ok(Checked::plain(
        outcome,
        serde_json::json!({
            "chi_q": chi, "gamma_1": gammas[0], "gamma_2": gammas[1], "gamma_3": gammas[2],
            "gamma_inf": gammas[3], "gamma_tilde_3": tilde, "failed": failed,
        }),
    ))
}

/// The two exact values on the non-monotone example.
pub fn nonmonotone_pair() -> Result<(Rational, Rational)> {
    let q = fig_nonmonotone();
    let full = gamma_r(&q, Rank::Finite(3))?;
    let minus = gamma_r(&q.without_vertex(FIG_NONMONOTONE_APEX), Rank::Finite(3))?;
    Ok((full, minus))
}

fn lemma_outcome(r: &LemmaRunReport) -> Outcome {
    if !r.violations.is_empty() {
        Outcome::Violation
    } else if r.vacuous || r.not_applicable {
        Outcome::Vacuous
    } else {
        Outcome::Pass
    }
}

fn lemma_check(suite: Suite, g: &Multigraph, cfg: &CorpusConfig, i: usize) -> Result<Checked> {
    let h = critical_subgraph(g, DEFAULT_NODE_BUDGET)?;
    let cert = certify(&h, true, DEFAULT_NODE_BUDGET)?;
    let base = serde_json::json!({
        "critical_subgraph": h.to_text(), "chi_prime": cert.chi_prime,
        "w": cert.w, "delta": cert.delta,
    });
    let seed = derive_seed(cfg.seed, i as u64);
    let k = cert.chi_prime.saturating_sub(1);
    let report = match suite {
        Suite::FreeColors if cert.is_lemma_instance(1) => check_freecolors(&h, k)?,
        Suite::FreeColors => return Ok(Checked::plain(Outcome::Vacuous, base)),
        _ if !cert.is_lemma_instance(1) => return Ok(Checked::plain(Outcome::Vacuous, base)),
        Suite::TashkinovElementary => check_tashkinov_elementary(&h, k, cfg.samples, seed)?,
        Suite::ParallelEdge => check_parallel_edge_lemma(&h, k, cfg.samples, seed)?,
        _ => check_tau_escape(&h, k, cfg.samples, seed)?,
    };
    Ok(Checked {
        outcome: lemma_outcome(&report),
        detail: base,
        lemma: Some(report),
    })
}

// Vertex identity and size identity on critical elementary instances.
fn elementary_check(suite: Suite, g: &Multigraph) -> Result<Checked> {
    let h = critical_subgraph(g, DEFAULT_NODE_BUDGET)?;
    let cert = certify(&h, true, DEFAULT_NODE_BUDGET)?;
    let base = serde_json::json!({
        "critical_subgraph": h.to_text(), "chi_prime": cert.chi_prime, "w": cert.w,
    });
    let slack = if suite == Suite::SlackedIdentity {
        1
    } else {
        0
    };
    if !cert.elementary() || !cert.is_lemma_instance(slack) {
        return Ok(Checked::plain(Outcome::Vacuous, base));
    }
    let k = cert.chi_prime - 1;
    if suite == Suite::EasyProp {
        let literal = easy_prop_check(&h, k);
        let parity = easy_prop_vertex_parity_check(&h, k);
        let mut detail = base;
        detail["literal"] = literal.into();
        detail["vertex_parity"] = parity.into();
        detail["n"] = h.vertex_count().into();
        detail["m"] = h.edge_count().into();
        let outcome = if literal {
            Outcome::Pass
        } else {
            Outcome::Violation
        };
        return Ok(Checked::plain(outcome, detail));
    }
    let eps = Rational::new(5, 6);
    let beta = Rational::from(k) - eps * Rational::from(h.line_graph().max_degree() + 1);
    let mut failed = Vec::new();
    for x in 0..h.vertex_count() {
        if !slacked_identity_check(&h, k, x, eps, beta, &cert)? {
            failed.push(x);
        }
    }
    let mut detail = base;
    detail["beta"] = serde_json::to_value(beta).expect("rational serializes");
    detail["failed_vertices"] = serde_json::to_value(&failed).expect("vec serializes");
    let outcome = if failed.is_empty() {
        Outcome::Pass
    } else {
        Outcome::Violation
    };
    Ok(Checked::plain(outcome, detail))
}

fn run_one(
    suite: Suite,
    cfg: &CorpusConfig,
    i: usize,
) -> Result<(GraphFamilySpec, Multigraph, Checked)> {
    let (spec, g) = match suite {
        Suite::ParallelEdge => cycle_instance(cfg, i)?,
        Suite::TashkinovElementary
        | Suite::TauEscape
        | Suite::SlackedIdentity
        | Suite::EasyProp
            if i % 2 == 1 =>
        {
            cycle_instance(cfg, i)?
        }
        _ => corpus_instance(cfg, i)?,
    };
    let checked = match suite {
        Suite::MainTheorem | Suite::WeakTheorem | Suite::GoldbergSeymour | Suite::Theorem10 => {
            theorem_check(suite, &g)?
        }
        Suite::GammaBounds => gamma_check(&g)?,
        Suite::SlackedIdentity | Suite::EasyProp => elementary_check(suite, &g)?,
        _ => lemma_check(suite, &g, cfg, i)?,
    };
    Ok((spec, g, checked))
}

/// Runs `suite` over `cfg.count` instances on the current rayon pool.
/// Records are ordered by instance index.
pub fn run_suite(suite: Suite, cfg: &CorpusConfig) -> Result<SuiteSummary> {
    let results: Vec<_> = (0..cfg.count)
        .into_par_iter()
        .map(|i| (i, run_one(suite, cfg, i)))
        .collect();
    let mut records = Vec::with_capacity(results.len());
    let mut lemma: Option<LemmaRunReport> = None;
    for (index, res) in results {
        let record = match res {
            Ok((instance, g, c)) => {
                if let Some(r) = c.lemma {
                    lemma = Some(match lemma {
                        Some(acc) => acc.merge(r),
                        None => r,
                    });
                }
                InstanceRecord {
                    index,
                    instance,
                    outcome: c.outcome,
                    detail: c.detail,
                    graph: (c.outcome == Outcome::Violation).then(|| g.to_text()),
                }
            }
            Err(e) => {
                let (instance, _) = corpus_instance(cfg, index).unwrap_or((
                    GraphFamilySpec::Named {
                        name: "unavailable".into(),
                    },
                    Multigraph::new(0),
                ));
                InstanceRecord {
                    index,
                    instance,
                    outcome: Outcome::Error,
                    detail: serde_json::json!({ "error": e.to_string() }),
                    graph: None,
                }
            }
        };
        records.push(record);
    }
    let count = |o: Outcome| records.iter().filter(|r| r.outcome == o).count();
    let extras = if suite == Suite::GammaBounds {
        let (full, minus) = nonmonotone_pair()?;
        serde_json::json!({ "nonmonotone": { "gamma_3": full, "gamma_3_minus_apex": minus } })
    } else {
        serde_json::Value::Null
    };
    Ok(SuiteSummary {
        suite,
        config: cfg.clone(),
        instances: records.len(),
        passes: count(Outcome::Pass),
        vacuous: count(Outcome::Vacuous),
        violations: count(Outcome::Violation),
        errors: count(Outcome::Error),
        lemma,
        extras,
        records,
    })
}
