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

//! Lemma checkers over sampled configurations. A checker counts the
//! configurations whose hypotheses it could certify and tests the
//! conclusion on each; failures are kept as replayable bundles.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coloring::{ComponentShape, KempeComponent, PartialEdgeColoring};
use crate::colorset::Color;
use crate::error::{invalid, precondition, Error, Result};
use crate::multigraph::{EdgeId, Multigraph, Vertex};
use crate::oracle::{
    certify, enumerate_colorings, sample_coloring, Certification, EnumerationMode,
    DEFAULT_NODE_BUDGET,
};
use crate::tashkinov::{
    classify_vertex, derive_seed, grow_tashkinov_tree, grow_tashkinov_tree_random, t_lower_bound,
    ShortLong,
};

/// Colorings inspected per vertex when certifying shortness.
pub const CLASSIFY_BUDGET: u64 = 200_000;

/// Graph, coloring and parameters of one failed configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct ViolationBundle {
    pub graph: Multigraph,
    pub palette: usize,
    pub coloring: Vec<Option<Color>>,
    pub params: serde_json::Value,
}

const MARKER: &str = "---\n";

impl ViolationBundle {
    pub fn new(
        g: &Multigraph,
        phi: &PartialEdgeColoring,
        lemma: &str,
        mut params: serde_json::Value,
    ) -> ViolationBundle {
        if let Some(obj) = params.as_object_mut() {
            obj.insert("lemma".into(), lemma.into());
            obj.insert("k".into(), phi.palette_size().into());
        }
        ViolationBundle {
            graph: g.clone(),
            palette: phi.palette_size(),
            coloring: phi.assignment().to_vec(),
            params,
        }
    }

    pub fn to_text(&self) -> String {
        let phi = PartialEdgeColoring::from_assignment_unchecked(
            &self.graph,
            self.palette,
            self.coloring.clone(),
        );
        format!(
            "{}{MARKER}{}{MARKER}{}\n",
            self.graph.to_text(),
            phi.dump(),
            self.params
        )
    }

    pub fn parse_text(text: &str) -> Result<ViolationBundle> {
        let sep = format!("\n{MARKER}");
        let mut parts = text.splitn(3, sep.as_str());
        let (Some(graph), Some(dump), Some(header)) = (parts.next(), parts.next(), parts.next())
        else {
            return Err(invalid("bundle needs three sections separated by ---"));
        };
        let graph = Multigraph::parse_text(&format!("{graph}\n"))?;
        let params: serde_json::Value = serde_json::from_str(header.trim_end())
            .map_err(|e| invalid(format!("bad bundle header: {e}")))?;
        let palette = params
            .get("k")
            .and_then(|k| k.as_u64())
            .ok_or_else(|| invalid("bundle header lacks k"))? as usize;
        let coloring = PartialEdgeColoring::parse_dump(&format!("{dump}\n"), graph.edge_count())?;
        Ok(ViolationBundle {
            graph,
            palette,
            coloring,
            params,
        })
    }

    /// The stored coloring, validated for properness.
    pub fn coloring(&self) -> Result<PartialEdgeColoring> {
        PartialEdgeColoring::from_assignment(&self.graph, self.palette, &self.coloring)
    }
}

impl Serialize for ViolationBundle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for ViolationBundle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        ViolationBundle::parse_text(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct LemmaRunReport {
    pub lemma: String,
    pub configurations: u64,
    pub satisfied: u64,
    pub verified: u64,
    pub violations: Vec<ViolationBundle>,
    pub vacuous: bool,
    /// Preconditions could not be certified; counts carry no evidence.
    #[serde(default)]
    pub not_applicable: bool,
    /// Side counters: skipped hypotheses, degenerate shapes and the like.
    #[serde(default)]
    pub notes: BTreeMap<String, u64>,
}

impl LemmaRunReport {
    pub fn new(lemma: &str) -> LemmaRunReport {
        LemmaRunReport {
            lemma: lemma.into(),
            vacuous: true,
            ..LemmaRunReport::default()
        }
    }

    fn not_applicable(lemma: &str, reason: &str) -> LemmaRunReport {
        let mut r = LemmaRunReport::new(lemma);
        r.not_applicable = true;
        r.note(reason, 1);
        r
    }

    pub fn note(&mut self, key: &str, by: u64) {
        *self.notes.entry(key.into()).or_default() += by;
    }

    fn pass(&mut self) {
        self.satisfied += 1;
        self.verified += 1;
        self.vacuous = false;
    }

    fn fail(&mut self, bundle: ViolationBundle) {
        self.satisfied += 1;
        self.violations.push(bundle);
        self.vacuous = false;
    }

    /// Associative merge of two runs of the same lemma.
    pub fn merge(mut self, other: LemmaRunReport) -> LemmaRunReport {
        self.configurations += other.configurations;
        self.satisfied += other.satisfied;
        self.verified += other.verified;
        self.violations.extend(other.violations);
        self.vacuous = self.satisfied == 0;
        self.not_applicable &= other.not_applicable;
        for (k, v) in other.notes {
            *self.notes.entry(k).or_default() += v;
        }
        self
    }

    /// `satisfied = verified + violations` and `vacuous` iff nothing was
    /// satisfied.
    pub fn is_consistent(&self) -> bool {
        self.satisfied == self.verified + self.violations.len() as u64
            && self.vacuous == (self.satisfied == 0)
    }
}

/// Certifies `chi' = k + 1`, `k >= Δ + 1` and criticality.
pub fn require_critical(g: &Multigraph, k: usize) -> Result<Certification> {
    let cert = certify(g, true, DEFAULT_NODE_BUDGET)?;
    if cert.chi_prime != k + 1 {
        return Err(precondition(format!(
            "chi' = {}, expected k + 1 = {}",
            cert.chi_prime,
            k + 1
        )));
    }
    if k < g.max_degree() + 1 {
        return Err(precondition(format!(
            "k = {k} is below Δ + 1 = {}",
            g.max_degree() + 1
        )));
    }
    if cert.critical != Some(true) {
        return Err(precondition("graph is not critical"));
    }
    Ok(cert)
}

/// Lazily certified shortness: at most two neighbors suffices, otherwise
/// exhaustive classification must certify it.
pub struct Shortness<'a> {
    g: &'a Multigraph,
    k: usize,
    cache: Vec<Option<bool>>,
}

impl<'a> Shortness<'a> {
    pub fn new(g: &'a Multigraph, k: usize) -> Shortness<'a> {
        Shortness {
            g,
            k,
            cache: vec![None; g.vertex_count()],
        }
    }

    pub fn is_short(&mut self, v: Vertex) -> Result<bool> {
        if let Some(s) = self.cache[v] {
            return Ok(s);
        }
        let s = self.g.neighbor_count(v) <= 2
            || classify_vertex(self.g, self.k, v, CLASSIFY_BUDGET)?.verdict
                == ShortLong::ShortCertified;
        self.cache[v] = Some(s);
        Ok(s)
    }

    /// Every vertex not certified short.
    pub fn long_over_approximation(&mut self) -> Result<Vec<Vertex>> {
        let mut out = Vec::new();
        for v in 0..self.g.vertex_count() {
            if !self.is_short(v)? {
                out.push(v);
            }
        }
        Ok(out)
    }
}

fn sampled_coloring(
    g: &Multigraph,
    k: usize,
    seed: u64,
    i: u64,
) -> Result<(EdgeId, PartialEdgeColoring)> {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, i));
    let e = rng.gen_range(0..g.edge_count());
    let phi = sample_coloring(g, k, Some(e), &mut rng, DEFAULT_NODE_BUDGET)?.ok_or_else(|| {
        Error::Consistency(format!(
            "critical graph has no {k}-coloring of G - e for edge {e}"
        ))
    })?;
    phi.validate(g)?;
    Ok((e, phi))
}

// P_{v1}(alpha, beta) from v1 up to, not including, v0.
fn path_before_v0(
    g: &Multigraph,
    phi: &PartialEdgeColoring,
    v0: Vertex,
    v1: Vertex,
    alpha: Color,
    beta: Color,
) -> Result<KempeComponent> {
    let p = phi.kempe_component(g, v1, alpha, beta)?;
    if p.shape != ComponentShape::Path || p.vertices.last() != Some(&v0) {
        return Err(Error::Consistency(
            "chain from v1 avoids v0, so G itself is k-colorable".into(),
        ));
    }
    Ok(p)
}

/// Parallel edge checker. For each sampled `(v0 v1, phi, alpha, beta)`
/// the path `v1 .. vr` is the chain from `v1` stopped before `v0`; when
/// every odd-indexed vertex on it is certified short, each `tau` missing at
/// `v0` must appear on an edge `v_i v_{i+1}` for every odd `i < r`.
pub fn check_parallel_edge_lemma(
    g: &Multigraph,
    k: usize,
    samples: usize,
    seed: u64,
) -> Result<LemmaRunReport> {
    require_critical(g, k)?;
    let mut report = LemmaRunReport::new("parallel-edge");
    let mut short = Shortness::new(g, k);
    for i in 0..samples {
        let (e, phi) = sampled_coloring(g, k, seed, i as u64)?;
        let (a, b) = g.endpoints(e);
        for (v0, v1) in [(a, b), (b, a)] {
            for alpha in phi.missing(v0) {
                for beta in phi.missing(v1) {
                    report.configurations += 1;
                    let p = path_before_v0(g, &phi, v0, v1, alpha, beta)?;
                    // path[j] is v_{j+1}
                    let path = &p.vertices[..p.vertices.len() - 1];
                    let mut hyp = true;
                    for j in (0..path.len()).step_by(2) {
                        if !short.is_short(path[j])? {
                            hyp = false;
                            break;
                        }
                    }
                    if !hyp {
                        report.note("hypothesis_unsatisfied", 1);
                        continue;
                    }
                    if path.len() < 2 {
                        report.note("no_odd_index", 1);
                    }
                    let mut failure = None;
                    'check: for tau in phi.missing(v0) {
                        for j in (0..path.len().saturating_sub(1)).step_by(2) {
                            let (x, y) = (path[j], path[j + 1]);
                            let ok = phi
                                .edge_with_color(x, tau)
                                .is_some_and(|f| g.other_end(f, x) == y);
                            if !ok {
                                failure = Some((tau, j + 1));
                                break 'check;
                            }
                        }
                    }
                    match failure {
                        None => report.pass(),
                        Some((tau, idx)) => report.fail(ViolationBundle::new(
                            g,
                            &phi,
                            "parallel-edge",
                            serde_json::json!({
                                "edge": e, "v0": v0, "v1": v1,
                                "alpha": alpha, "beta": beta, "tau": tau, "i": idx,
                            }),
                        )),
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Outcome of one Tashkinov-tree configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeCheck {
    pub elementary: bool,
    pub unique: bool,
    pub size: usize,
}

/// Validates `phi`, grows the tree deterministically and by a random order,
/// and tests elementarity and vertex-set agreement.
pub fn check_tree_configuration(
    g: &Multigraph,
    e: EdgeId,
    phi: &PartialEdgeColoring,
    rng: &mut ChaCha8Rng,
) -> Result<TreeCheck> {
    phi.validate(g)?;
    let t = grow_tashkinov_tree(phi, g, e)?;
    t.check(g, phi)?;
    let r = grow_tashkinov_tree_random(phi, g, e, rng)?;
    r.check(g, phi)?;
    Ok(TreeCheck {
        elementary: phi.is_elementary_set(&t.vertices),
        unique: t.sorted_vertices() == r.sorted_vertices(),
        size: t.len(),
    })
}

pub fn check_tashkinov_elementary(
    g: &Multigraph,
    k: usize,
    samples: usize,
    seed: u64,
) -> Result<LemmaRunReport> {
    require_critical(g, k)?;
    let mut report = LemmaRunReport::new("tashkinov-elementary");
    for i in 0..samples {
        let (e, phi) = sampled_coloring(g, k, seed, i as u64)?;
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed ^ 0x5eed, i as u64));
        report.configurations += 1;
        let c = check_tree_configuration(g, e, &phi, &mut rng)?;
        if c.elementary && c.unique {
            report.pass();
        } else {
            report.fail(ViolationBundle::new(
                g,
                &phi,
                "tashkinov-elementary",
                serde_json::json!({
                    "edge": e, "elementary": c.elementary, "unique": c.unique,
                }),
            ));
        }
    }
    Ok(report)
}

/// The subpath produced by the escape scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EscapeSubpath {
    /// From `z2` through `x` to `z1`.
    pub vertices: Vec<Vertex>,
    pub z1: Vertex,
    pub z2: Vertex,
    pub d1: usize,
    pub d2: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum EscapeScan {
    Found(EscapeSubpath),
    /// Both scans stop at the same vertex.
    Coincident {
        z: Vertex,
        d1: usize,
        d2: usize,
    },
    /// The two scans pass each other before stopping.
    Overlapping {
        d1: usize,
        d2: usize,
    },
    /// Some direction wraps around the cycle without stopping.
    NotFound,
}

/// Runs the odd-distance scan on `C = P_{v1}(alpha, beta) + v0 v1`, where
/// `path` is that chain extracted at `v1` and `uncolored = v0 v1`.
pub fn find_tau_escape_subpath(
    phi: &PartialEdgeColoring,
    g: &Multigraph,
    path: &KempeComponent,
    uncolored: EdgeId,
    tau: Color,
    x: Vertex,
    y: Vertex,
) -> Result<EscapeScan> {
    let cyc = &path.vertices;
    let len = cyc.len();
    let (a, b) = g.endpoints(uncolored);
    let v1 = path.anchor;
    let v0 = if a == v1 { b } else { a };
    if path.shape != ComponentShape::Path || cyc.first() != Some(&v1) || cyc.last() != Some(&v0) {
        return Err(precondition(
            "C must be P_{v1}(alpha, beta) ending at v0 plus v0 v1",
        ));
    }
    if phi.color(uncolored).is_some() {
        return Err(precondition("v0 v1 must be uncolored"));
    }
    let pos = |v: Vertex| cyc.iter().position(|&w| w == v);
    let px = pos(x).ok_or_else(|| precondition(format!("x = {x} is not on C")))?;
    if !phi.missing(x).contains(tau) {
        return Err(precondition(format!(
            "tau = {tau} is not missing at x = {x}"
        )));
    }
    let py = pos(y).ok_or_else(|| precondition(format!("y = {y} is not on C")))?;
    let leaves = phi
        .edge_with_color(y, tau)
        .is_some_and(|f| pos(g.other_end(f, y)).is_none());
    if !leaves {
        return Err(precondition(format!(
            "no tau-colored edge leaves C at y = {y}"
        )));
    }
    // tau edge at w parallel to one of its two C-edges
    let guarded = |w_pos: usize| {
        let w = cyc[w_pos];
        phi.edge_with_color(w, tau).is_some_and(|f| {
            let o = g.other_end(f, w);
            o == cyc[(w_pos + 1) % len] || o == cyc[(w_pos + len - 1) % len]
        })
    };
    let scan = |forward: bool| -> Option<usize> {
        (1..len).step_by(2).find(|&d| {
            let p = if forward {
                (px + d) % len
            } else {
                (px + len - d % len) % len
            };
            !guarded(p)
        })
    };
    let (Some(d1), Some(d2)) = (scan(true), scan(false)) else {
        return Ok(EscapeScan::NotFound);
    };
    if d1 + d2 == len {
        return Ok(EscapeScan::Coincident {
            z: cyc[(px + d1) % len],
            d1,
            d2,
        });
    }
    if d1 + d2 > len {
        return Ok(EscapeScan::Overlapping { d1, d2 });
    }
    let vertices: Vec<Vertex> = (0..=d1 + d2)
        .map(|s| cyc[(px + len - d2 + s) % len])
        .collect();
    let _ = py;
    Ok(EscapeScan::Found(EscapeSubpath {
        z1: cyc[(px + d1) % len],
        z2: cyc[(px + len - d2) % len],
        vertices,
        d1,
        d2,
    }))
}

/// Independent checks of a found subpath: `x` on it, `y` not interior,
/// odd distances, unguarded ends, long ends.
#[allow(clippy::too_many_arguments)]
pub fn escape_conclusion_holds(
    q: &EscapeSubpath,
    phi: &PartialEdgeColoring,
    g: &Multigraph,
    cycle: &[Vertex],
    tau: Color,
    x: Vertex,
    y: Vertex,
    long: &[Vertex],
) -> bool {
    let n = q.vertices.len();
    let Some(ix) = q.vertices.iter().position(|&v| v == x) else {
        return false;
    };
    let interior_y = q.vertices[1..n - 1].contains(&y);
    let odd = ix % 2 == 1 && (n - 1 - ix) % 2 == 1;
    let len = cycle.len();
    let unguarded = [q.z1, q.z2].iter().all(|&z| {
        let p = cycle.iter().position(|&w| w == z).expect("z on cycle");
        let nb = [cycle[(p + 1) % len], cycle[(p + len - 1) % len]];
        g.incident(z)
            .iter()
            .all(|&f| phi.color(f) != Some(tau) || !nb.contains(&g.other_end(f, z)))
    });
    let ends_long = long.contains(&q.z1) && long.contains(&q.z2);
    !interior_y && odd && unguarded && ends_long
}

/// Escape checker over sampled configurations: every `x` on `C`, every
/// `tau` missing at `x`, every `y` where a `tau` edge leaves `C`.
pub fn check_tau_escape(
    g: &Multigraph,
    k: usize,
    samples: usize,
    seed: u64,
) -> Result<LemmaRunReport> {
    require_critical(g, k)?;
    let mut report = LemmaRunReport::new("tau-escape");
    let long = Shortness::new(g, k).long_over_approximation()?;
    for i in 0..samples {
        let (e, phi) = sampled_coloring(g, k, seed, i as u64)?;
        let (a, b) = g.endpoints(e);
        for (v0, v1) in [(a, b), (b, a)] {
            for alpha in phi.missing(v0) {
                for beta in phi.missing(v1) {
                    let p = path_before_v0(g, &phi, v0, v1, alpha, beta)?;
                    let on: Vec<bool> = (0..g.vertex_count())
                        .map(|v| p.vertices.contains(&v))
                        .collect();
                    for &x in &p.vertices {
                        for tau in phi.missing(x) {
                            for &y in &p.vertices {
                                report.configurations += 1;
                                let leaves = phi
                                    .edge_with_color(y, tau)
                                    .is_some_and(|f| !on[g.other_end(f, y)]);
                                if !leaves {
                                    report.note("hypothesis_unsatisfied", 1);
                                    continue;
                                }
                                let params = serde_json::json!({
                                    "edge": e, "v0": v0, "v1": v1, "alpha": alpha,
                                    "beta": beta, "tau": tau, "x": x, "y": y,
                                });
                                match find_tau_escape_subpath(&phi, g, &p, e, tau, x, y)? {
                                    EscapeScan::Found(q) => {
                                        if escape_conclusion_holds(
                                            &q,
                                            &phi,
                                            g,
                                            &p.vertices,
                                            tau,
                                            x,
                                            y,
                                            &long,
                                        ) {
                                            report.pass();
                                        } else {
                                            report.fail(ViolationBundle::new(
                                                g,
                                                &phi,
                                                "tau-escape",
                                                params,
                                            ));
                                        }
                                    }
                                    EscapeScan::Coincident { .. } => report.note("z1_equals_z2", 1),
                                    EscapeScan::Overlapping { .. } => {
                                        report.note("scans_overlap", 1)
                                    }
                                    EscapeScan::NotFound => report.fail(ViolationBundle::new(
                                        g,
                                        &phi,
                                        "tau-escape",
                                        params,
                                    )),
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Chain length bound against the exact `t(G)` on a non-elementary critical
/// instance. Elementary instances produce a not-applicable report.
pub fn check_freecolors(g: &Multigraph, k: usize) -> Result<LemmaRunReport> {
    const LEMMA: &str = "free-colors";
    let cert = match require_critical(g, k) {
        Ok(c) => c,
        Err(Error::Precondition(m)) => return Ok(LemmaRunReport::not_applicable(LEMMA, &m)),
        Err(e) => return Err(e),
    };
    if cert.elementary() {
        return Ok(LemmaRunReport::not_applicable(LEMMA, "elementary"));
    }
    let t = match t_lower_bound(g, k, 1, 0) {
        Ok(t) if t.exact => t.value,
        Ok(_) => return Ok(LemmaRunReport::not_applicable(LEMMA, "t(G) not exact")),
        Err(Error::Budget(_)) => {
            return Ok(LemmaRunReport::not_applicable(LEMMA, "t(G) over budget"))
        }
        Err(e) => return Err(e),
    };
    let mut report = LemmaRunReport::new(LEMMA);
    for e in 0..g.edge_count() {
        let (a, b) = g.endpoints(e);
        let mut err = None;
        enumerate_colorings(g, Some(e), k, EnumerationMode::Raw, |phi| {
            for (v0, v1) in [(a, b), (b, a)] {
                for alpha in phi.missing(v0) {
                    for beta in phi.missing(v1) {
                        report.configurations += 1;
                        match phi.kempe_component(g, v1, alpha, beta) {
                            Ok(p) if p.vertices.len() < t => report.pass(),
                            Ok(p) => report.fail(ViolationBundle::new(
                                g,
                                phi,
                                LEMMA,
                                serde_json::json!({
                                    "edge": e, "v0": v0, "v1": v1, "alpha": alpha,
                                    "beta": beta, "t": t, "path": p.vertices.len(),
                                }),
                            )),
                            Err(x) => {
                                err = Some(x);
                                return ControlFlow::Break(());
                            }
                        }
                    }
                }
            }
            ControlFlow::Continue(())
        })?;
        if let Some(x) = err {
            return Err(x);
        }
    }
    Ok(report)
}
