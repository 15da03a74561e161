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

//! Tashkinov trees, Vizing fans, `t(G)`, and short/long classification.

use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coloring::PartialEdgeColoring;
use crate::colorset::{Color, ColorSet};
use crate::error::{invalid, precondition, Error, Result};
use crate::multigraph::{EdgeId, Multigraph, Vertex};
use crate::oracle::{enumerate_colorings, sample_coloring, EnumerationMode, ENUMERATION_EDGE_GATE};

/// `vertices[0] vertices[1]` is joined by the uncolored root `edges[0]`;
/// `edges[i]` attaches `vertices[i + 1]` to an earlier vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TashkinovTree {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<EdgeId>,
}

impl TashkinovTree {
    pub fn root(&self) -> EdgeId {
        self.edges[0]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn sorted_vertices(&self) -> Vec<Vertex> {
        let mut v = self.vertices.clone();
        v.sort_unstable();
        v
    }

    /// Number of tree vertices in `long`.
    pub fn long_count(&self, long: &[Vertex]) -> usize {
        self.vertices.iter().filter(|v| long.contains(v)).count()
    }

    /// Replays the growth condition against `phi`.
    pub fn check(&self, g: &Multigraph, phi: &PartialEdgeColoring) -> Result<()> {
        let bad = |m: String| Err(Error::Consistency(m));
        if self.vertices.len() != self.edges.len() + 1 || self.vertices.len() < 2 {
            return bad("tree must have one more vertex than edges".into());
        }
        let mut sorted = self.sorted_vertices();
        sorted.dedup();
        if sorted.len() != self.vertices.len() {
            return bad("tree vertices repeat".into());
        }
        let (a, b) = g.endpoints(self.edges[0]);
        let (v0, v1) = (self.vertices[0], self.vertices[1]);
        if phi.color(self.edges[0]).is_some() || !((a, b) == (v0, v1) || (a, b) == (v1, v0)) {
            return bad("root must be the uncolored edge v0 v1".into());
        }
        let mut missing = phi.missing(v0).union(phi.missing(v1));
        for i in 1..self.edges.len() {
            let e = self.edges[i];
            let new = self.vertices[i + 1];
            let (x, y) = g.endpoints(e);
            let other = if x == new {
                y
            } else if y == new {
                x
            } else {
                return bad(format!("edge {e} misses vertex {new}"));
            };
            if !self.vertices[..=i].contains(&other) {
                return bad(format!("edge {e} does not reach an earlier vertex"));
            }
            match phi.color(e) {
                Some(c) if missing.contains(c) => {}
                _ => {
                    return bad(format!(
                        "edge {e} has no color missing at an earlier vertex"
                    ))
                }
            }
            missing = missing.union(phi.missing(new));
        }
        Ok(())
    }
}

fn check_tree_input(g: &Multigraph, phi: &PartialEdgeColoring, e: EdgeId) -> Result<()> {
    if e >= g.edge_count() {
        return Err(invalid(format!("edge {e} out of range")));
    }
    phi.validate(g)?;
    if phi.color(e).is_some() {
        return Err(precondition(format!("root edge {e} is colored")));
    }
    if phi.colored_count() + 1 != g.edge_count() {
        return Err(precondition(
            "every edge other than the root must be colored",
        ));
    }
    Ok(())
}

// Picks one of the eligible `(color, edge)` extensions.
type Chooser<'a> = &'a mut dyn FnMut(&[(Color, EdgeId)]) -> usize;

/// Grows a maximal tree from `e`, choosing among eligible `(color, edge)`
/// extensions with `choose`. Restricting extensions to edges at `center`
/// grows a fan instead.
fn grow_by(
    g: &Multigraph,
    phi: &PartialEdgeColoring,
    e: EdgeId,
    center: Option<Vertex>,
    choose: Chooser<'_>,
) -> TashkinovTree {
    let (v0, v1) = g.endpoints(e);
    let mut vertices = vec![v0, v1];
    let mut edges = vec![e];
    let mut inside = vec![false; g.vertex_count()];
    inside[v0] = true;
    inside[v1] = true;
    let mut missing: ColorSet = phi.missing(v0).union(phi.missing(v1));
    loop {
        let mut options = Vec::new();
        for &x in &vertices {
            if center.is_some_and(|c| c != x) {
                continue;
            }
            for &f in g.incident(x) {
                let y = g.other_end(f, x);
                if inside[y] {
                    continue;
                }
                if let Some(c) = phi.color(f) {
                    if missing.contains(c) {
                        options.push((c, f));
                    }
                }
            }
        }
        if options.is_empty() {
            break;
        }
        options.sort_unstable();
        options.dedup();
        let (_, f) = options[choose(&options)];
        let (a, b) = g.endpoints(f);
        let y = if inside[a] { b } else { a };
        inside[y] = true;
        vertices.push(y);
        edges.push(f);
        missing = missing.union(phi.missing(y));
    }
    TashkinovTree { vertices, edges }
}

/// Maximal tree from the uncolored edge `e`, extending by the smallest
/// `(color, edge id)` at each step.
pub fn grow_tashkinov_tree(
    phi: &PartialEdgeColoring,
    g: &Multigraph,
    e: EdgeId,
) -> Result<TashkinovTree> {
    check_tree_input(g, phi, e)?;
    Ok(grow_by(g, phi, e, None, &mut |_| 0))
}

/// Maximal tree grown with uniformly random extension choices.
pub fn grow_tashkinov_tree_random(
    phi: &PartialEdgeColoring,
    g: &Multigraph,
    e: EdgeId,
    rng: &mut ChaCha8Rng,
) -> Result<TashkinovTree> {
    check_tree_input(g, phi, e)?;
    Ok(grow_by(g, phi, e, None, &mut |opts| {
        rng.gen_range(0..opts.len())
    }))
}

/// A maximal Vizing fan and the endpoints of the root it is centered at.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VizingFan {
    pub tree: TashkinovTree,
    pub centers: Vec<Vertex>,
}

/// The maximal fans centered at each endpoint of `e`; fans with equal
/// vertex sets are merged and carry both centers.
pub fn enumerate_fans(
    phi: &PartialEdgeColoring,
    g: &Multigraph,
    e: EdgeId,
) -> Result<Vec<VizingFan>> {
    check_tree_input(g, phi, e)?;
    let (v0, v1) = g.endpoints(e);
    let mut out: Vec<VizingFan> = Vec::new();
    for c in [v0, v1] {
        let tree = grow_by(g, phi, e, Some(c), &mut |_| 0);
        match out
            .iter_mut()
            .find(|f| f.tree.sorted_vertices() == tree.sorted_vertices())
        {
            Some(f) => f.centers.push(c),
            None => out.push(VizingFan {
                tree,
                centers: vec![c],
            }),
        }
    }
    Ok(out)
}

/// Maximal fan centered at `center`, an endpoint of `e`.
pub fn fan_at(
    phi: &PartialEdgeColoring,
    g: &Multigraph,
    e: EdgeId,
    center: Vertex,
) -> Result<TashkinovTree> {
    check_tree_input(g, phi, e)?;
    let (a, b) = g.endpoints(e);
    if center != a && center != b {
        return Err(invalid(format!("{center} is not an endpoint of edge {e}")));
    }
    Ok(grow_by(g, phi, e, Some(center), &mut |_| 0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TEstimate {
    pub value: usize,
    pub exact: bool,
}

/// Node budget for each sampled coloring.
const SAMPLE_BUDGET: u64 = 2_000_000;

/// Seed for sample `i` of a run seeded with `seed`.
pub fn derive_seed(seed: u64, i: u64) -> u64 {
    seed ^ (i.wrapping_add(1)).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Largest tree over (edge, coloring) pairs: every pair when each `G - e`
/// is within the enumeration gate, otherwise `samples` random pairs.
pub fn t_lower_bound(g: &Multigraph, k: usize, samples: usize, seed: u64) -> Result<TEstimate> {
    if g.edge_count() == 0 {
        return Err(invalid("graph has no edges"));
    }
    let mut best = 0;
    let mut any = false;
    if g.edge_count() - 1 <= ENUMERATION_EDGE_GATE {
        for e in 0..g.edge_count() {
            enumerate_colorings(g, Some(e), k, EnumerationMode::ColorQuotient, |phi| {
                any = true;
                best = best.max(grow_by(g, phi, e, None, &mut |_| 0).len());
                ControlFlow::Continue(())
            })?;
        }
        if !any {
            return Err(invalid(format!("no G - e admits a proper {k}-coloring")));
        }
        return Ok(TEstimate {
            value: best,
            exact: true,
        });
    }
    if samples == 0 {
        return Err(invalid("samples must be positive"));
    }
    for i in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, i as u64));
        let e = rng.gen_range(0..g.edge_count());
        if let Some(phi) = sample_coloring(g, k, Some(e), &mut rng, SAMPLE_BUDGET)? {
            any = true;
            best = best.max(grow_by(g, &phi, e, None, &mut |_| 0).len());
        }
    }
    if !any {
        return Err(invalid(format!(
            "no sampled G - e admits a proper {k}-coloring"
        )));
    }
    Ok(TEstimate {
        value: best,
        exact: false,
    })
}

/// A fan on at least four vertices and the coloring it lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanWitness {
    pub edge: EdgeId,
    pub coloring: PartialEdgeColoring,
    pub fan: TashkinovTree,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShortLong {
    Long(Box<FanWitness>),
    ShortCertified,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexClassification {
    pub vertex: Vertex,
    pub verdict: ShortLong,
    /// Colorings inspected.
    pub budget_used: u64,
}

/// Classifies `v` by enumerating `k`-colorings of `G - e` for one edge `e`
/// per neighbor of `v` and growing the maximal fan at `v`. `budget` caps
/// the colorings inspected.
pub fn classify_vertex(
    g: &Multigraph,
    k: usize,
    v: Vertex,
    budget: u64,
) -> Result<VertexClassification> {
    if v >= g.vertex_count() {
        return Err(invalid(format!("vertex {v} out of range")));
    }
    if k < g.max_degree() + 1 {
        return Err(precondition(format!(
            "k = {k} is below Δ + 1 = {}",
            g.max_degree() + 1
        )));
    }
    let mut used = 0u64;
    if budget == 0 {
        return Ok(VertexClassification {
            vertex: v,
            verdict: ShortLong::Unknown,
            budget_used: 0,
        });
    }
    let exhaustive = g.edge_count() - usize::from(g.edge_count() > 0) <= ENUMERATION_EDGE_GATE;
    let mut complete = true;
    for u in g.neighbors(v) {
        let e = g.edges_between(v, u)[0];
        let mut witness = None;
        let mut out_of_budget = false;
        let summary = enumerate_colorings(g, Some(e), k, EnumerationMode::ColorQuotient, |phi| {
            if used >= budget {
                out_of_budget = true;
                return ControlFlow::Break(());
            }
            used += 1;
            let fan = grow_by(g, phi, e, Some(v), &mut |_| 0);
            if fan.len() >= 4 {
                witness = Some(FanWitness {
                    edge: e,
                    coloring: phi.clone(),
                    fan,
                });
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        match summary {
            Ok(_) => {}
            Err(Error::Budget(_)) => complete = false,
            Err(err) => return Err(err),
        }
        if let Some(w) = witness {
            return Ok(VertexClassification {
                vertex: v,
                verdict: ShortLong::Long(Box::new(w)),
                budget_used: used,
            });
        }
        if out_of_budget {
            complete = false;
            break;
        }
    }
    let verdict = if complete && exhaustive {
        ShortLong::ShortCertified
    } else {
        ShortLong::Unknown
    };
    Ok(VertexClassification {
        vertex: v,
        verdict,
        budget_used: used,
    })
}

/// `μ(G) < 2k - d(x) - d(y)` for all distinct `x, y` in `long`.
pub fn is_k_thin(g: &Multigraph, k: usize, long: &[Vertex]) -> bool {
    let mu = g.max_multiplicity() as i64;
    let mut set = long.to_vec();
    set.sort_unstable();
    set.dedup();
    set.iter().enumerate().all(|(i, &x)| {
        set[i + 1..]
            .iter()
            .all(|&y| mu < 2 * k as i64 - g.deg(x) as i64 - g.deg(y) as i64)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{named, thickened_cycle};
    use crate::oracle::DEFAULT_NODE_BUDGET;

    fn sample(g: &Multigraph, k: usize, e: EdgeId, seed: u64) -> PartialEdgeColoring {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        sample_coloring(g, k, Some(e), &mut rng, DEFAULT_NODE_BUDGET)
            .unwrap()
            .unwrap()
    }

    #[test]
    fn root_is_always_in_the_tree() {
        let g = named("k2").unwrap();
        let phi = PartialEdgeColoring::new(&g, 1).unwrap();
        let t = grow_tashkinov_tree(&phi, &g, 0).unwrap();
        assert_eq!(t.vertices, vec![0, 1]);
        t.check(&g, &phi).unwrap();
    }

    #[test]
    fn colored_root_is_rejected() {
        let g = named("k2").unwrap();
        let phi = PartialEdgeColoring::from_assignment(&g, 1, &[Some(0)]).unwrap();
        assert!(matches!(
            grow_tashkinov_tree(&phi, &g, 0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn tree_on_c5_cubed_spans_and_is_elementary() {
        let g = thickened_cycle(&[3; 5]).unwrap();
        for seed in 0..5 {
            let phi = sample(&g, 7, 0, seed);
            let t = grow_tashkinov_tree(&phi, &g, 0).unwrap();
            t.check(&g, &phi).unwrap();
            assert!(phi.is_elementary_set(&t.vertices));
            let mut rng = ChaCha8Rng::seed_from_u64(seed + 100);
            let r = grow_tashkinov_tree_random(&phi, &g, 0, &mut rng).unwrap();
            assert_eq!(r.sorted_vertices(), t.sorted_vertices());
        }
    }

    #[test]
    fn k2_has_one_fan() {
        let g = named("k2").unwrap();
        let phi = PartialEdgeColoring::new(&g, 2).unwrap();
        let fans = enumerate_fans(&phi, &g, 0).unwrap();
        assert_eq!(fans.len(), 1);
        assert_eq!(fans[0].centers, vec![0, 1]);
    }

    #[test]
    fn fans_are_stars_and_small_on_cycles() {
        let g = thickened_cycle(&[2, 3, 2, 3, 2]).unwrap();
        let k = g.max_degree() + 1;
        for seed in 0..5 {
            let phi = sample(&g, k, 3, seed);
            for f in enumerate_fans(&phi, &g, 3).unwrap() {
                assert!(f.tree.len() <= 3);
                let c = f.centers[0];
                assert!(f.tree.edges.iter().all(|&e| {
                    let (a, b) = g.endpoints(e);
                    a == c || b == c
                }));
            }
        }
    }

    #[test]
    fn t_bound_exhaustive_on_tiny_graph() {
        let g = thickened_cycle(&[2, 1, 1]).unwrap();
        let est = t_lower_bound(&g, 3, 10, 1).unwrap();
        assert!(est.exact);
        assert!(est.value >= 2);
    }

    #[test]
    fn claw_center_is_long() {
        let g = named("claw").unwrap();
        let c = classify_vertex(&g, 4, 0, 1000).unwrap();
        match c.verdict {
            ShortLong::Long(w) => {
                assert!(w.fan.len() >= 4);
                w.fan.check(&g, &w.coloring).unwrap();
            }
            other => panic!("expected long, got {other:?}"),
        }
    }

    #[test]
    fn cycle_vertices_are_never_long() {
        let g = thickened_cycle(&[1, 2, 1]).unwrap();
        let c = classify_vertex(&g, 4, 0, 1_000_000).unwrap();
        assert_eq!(c.verdict, ShortLong::ShortCertified);
        assert_eq!(
            classify_vertex(&g, 4, 0, 0).unwrap().verdict,
            ShortLong::Unknown
        );
    }

    #[test]
    fn thinness_examples() {
        let g = named("k4").unwrap();
        assert!(is_k_thin(&g, 4, &[0]));
        assert!(is_k_thin(&g, 4, &[0, 1, 2]));
        // μ = 2 and 2k − d(x) − d(y) = 8 − 3 − 3
        let c = thickened_cycle(&[2, 1, 1]).unwrap();
        assert!(!is_k_thin(&c, 4, &[0, 1]));
        assert!(is_k_thin(&c, 5, &[0, 1]));
    }
}
