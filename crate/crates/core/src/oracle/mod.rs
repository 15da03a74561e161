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

//! Exact ground truth: chromatic index, criticality, elementarity, coloring
//! enumeration and sampling.

mod constructive;
mod enumerate;
mod search;

use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{goldberg_density, DENSITY_VERTEX_GATE};
use crate::clique::SimpleGraph;
use crate::coloring::PartialEdgeColoring;
use crate::colorset::{Color, MAX_COLORS};
use crate::error::{invalid, Error, Result};
use crate::multigraph::{EdgeId, Multigraph, Vertex};

pub use constructive::color_constructive;
pub use enumerate::{
    enumerate_colorings, EnumerationMode, EnumerationSummary, ENUMERATION_EDGE_GATE,
    ENUMERATION_LEAF_CAP,
};

/// Default node budget for one exact search.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

/// Lower bound `max(Δ, W)` used to seed the exact search.
pub fn chromatic_lower_bound(g: &Multigraph) -> usize {
    let w = if (2..=DENSITY_VERTEX_GATE).contains(&g.vertex_count()) {
        goldberg_density(g).unwrap_or(0)
    } else {
        0
    };
    g.max_degree().max(w)
}

/// Searches for a proper `k`-edge-coloring of `g`, leaving `skip`
/// uncolored. `Ok(None)` means none exists.
pub fn find_coloring(
    g: &Multigraph,
    k: usize,
    skip: Option<EdgeId>,
    budget: u64,
) -> Result<Option<PartialEdgeColoring>> {
    if k > MAX_COLORS {
        return Err(invalid(format!("palette size {k} exceeds {MAX_COLORS}")));
    }
    let rest = match skip {
        Some(e) if e >= g.edge_count() => return Err(invalid(format!("edge {e} out of range"))),
        Some(e) => g.without_edge(e),
        None => g.clone(),
    };
    if chromatic_lower_bound(&rest) > k {
        return Ok(None);
    }
    let (found, _) = search::EdgeSearch::new(g, k, skip, budget, None).run()?;
    found
        .map(|colors| PartialEdgeColoring::from_assignment(g, k, &colors))
        .transpose()
}

/// Exact chromatic index together with an optimal coloring. The edgeless
/// graph has index 0.
pub fn solve(g: &Multigraph, budget: u64) -> Result<(usize, PartialEdgeColoring)> {
    if g.edge_count() == 0 {
        return Ok((0, PartialEdgeColoring::new(g, 0)?));
    }
    let lb = chromatic_lower_bound(g);
    let ub = g.max_degree() + g.max_multiplicity();
    let upper = color_constructive(g, ub).ok_or_else(|| {
        Error::Consistency(format!(
            "constructive colorer failed with Δ + μ = {ub} colors"
        ))
    })?;
    for k in lb..ub {
        if let Some(phi) = color_constructive(g, k) {
            return Ok((k, phi));
        }
        if let Some(phi) = find_coloring(g, k, None, budget)? {
            return Ok((k, phi));
        }
    }
    Ok((ub, upper))
}

/// Exact chromatic index; a budget error is returned rather than a guess.
pub fn chromatic_index_exact(g: &Multigraph, budget: u64) -> Result<usize> {
    solve(g, budget).map(|(k, _)| k)
}

/// True iff deleting any single edge lowers the chromatic index. Checks
/// every edge, including each copy within a parallel class.
pub fn is_critical(g: &Multigraph, budget: u64) -> Result<bool> {
    let chi = chromatic_index_exact(g, budget)?;
    is_critical_at(g, chi, budget, 0..g.edge_count())
}

/// Same answer as [`is_critical`], deleting one representative per
/// parallel class.
pub fn is_critical_by_class(g: &Multigraph, budget: u64) -> Result<bool> {
    let chi = chromatic_index_exact(g, budget)?;
    let reps: Vec<EdgeId> = g
        .pairs()
        .iter()
        .map(|&(u, v, _)| g.edges_between(u, v)[0])
        .collect();
    is_critical_at(g, chi, budget, reps)
}

fn is_critical_at(
    g: &Multigraph,
    chi: usize,
    budget: u64,
    edges: impl IntoIterator<Item = EdgeId>,
) -> Result<bool> {
    if chi == 0 {
        return Ok(false);
    }
    for e in edges {
        if find_coloring(g, chi - 1, Some(e), budget)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_elementary_graph(g: &Multigraph, budget: u64) -> Result<bool> {
    let chi = chromatic_index_exact(g, budget)?;
    Ok(chi == goldberg_density(g)?)
}

/// Oracle facts about one instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certification {
    pub chi_prime: usize,
    pub w: usize,
    pub delta: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub critical: Option<bool>,
}

impl Certification {
    pub fn elementary(&self) -> bool {
        self.chi_prime == self.w
    }

    /// Critical with `chi' = k + 1` and `k >= Δ + slack`.
    pub fn is_lemma_instance(&self, slack: usize) -> bool {
        self.critical == Some(true) && self.chi_prime >= 1 && self.chi_prime > self.delta + slack
    }
}

pub fn certify(g: &Multigraph, with_criticality: bool, budget: u64) -> Result<Certification> {
    let chi = chromatic_index_exact(g, budget)?;
    let critical = if with_criticality {
        Some(is_critical_at(g, chi, budget, 0..g.edge_count())?)
    } else {
        None
    };
    Ok(Certification {
        chi_prime: chi,
        w: goldberg_density(g)?,
        delta: g.max_degree(),
        critical,
    })
}

/// Deletes edges greedily while the chromatic index stays put, then drops
/// isolated vertices. The result is critical with the same index.
pub fn critical_subgraph(g: &Multigraph, budget: u64) -> Result<Multigraph> {
    let chi = chromatic_index_exact(g, budget)?;
    let mut h = g.clone();
    let mut e = 0;
    while e < h.edge_count() {
        if chi >= 1 && find_coloring(&h, chi - 1, Some(e), budget)?.is_none() {
            h = h.without_edge(e);
        } else {
            e += 1;
        }
    }
    Ok(h.without_isolated_vertices())
}

/// A coloring of `G - uv` and a set containing `u, v` that is elementary
/// and strongly closed.
#[derive(Clone, Debug)]
pub struct ElementaryWitness {
    pub edge: EdgeId,
    pub coloring: PartialEdgeColoring,
    pub set: Vec<Vertex>,
}

#[derive(Clone, Debug)]
pub enum WitnessSearch {
    Found(ElementaryWitness),
    NotFound { complete: bool },
}

/// Largest vertex count for which witness sets are enumerated.
pub const WITNESS_VERTEX_GATE: usize = 16;

/// Searches colorings of `G - e` for an elementary strongly closed set
/// through both ends of `e`; `budget` caps the number of sets tested.
pub fn find_elementary_witness(g: &Multigraph, k: usize, budget: u64) -> Result<WitnessSearch> {
    let n = g.vertex_count();
    if n > WITNESS_VERTEX_GATE {
        return Err(Error::Budget(format!(
            "witness search is limited to {WITNESS_VERTEX_GATE} vertices"
        )));
    }
    if k < g.max_degree() {
        return Err(invalid(format!("k = {k} is below Δ = {}", g.max_degree())));
    }
    let mut tested = 0u64;
    let mut over = false;
    for e in 0..g.edge_count() {
        let (u, v) = g.endpoints(e);
        let rest: Vec<Vertex> = (0..n).filter(|&w| w != u && w != v).collect();
        let mut found: Option<ElementaryWitness> = None;
        enumerate_colorings(g, Some(e), k, EnumerationMode::ColorQuotient, |phi| {
            // larger sets first
            let full = (1u32 << rest.len()) - 1;
            for inv in 0..=full {
                tested += 1;
                if tested > budget {
                    over = true;
                    return ControlFlow::Break(());
                }
                let mask = full ^ inv;
                let mut set = vec![u, v];
                set.extend(
                    (0..rest.len())
                        .filter(|&i| mask >> i & 1 == 1)
                        .map(|i| rest[i]),
                );
                if phi.is_elementary_set(&set) && phi.is_strongly_closed(g, &set) {
                    set.sort_unstable();
                    found = Some(ElementaryWitness {
                        edge: e,
                        coloring: phi.clone(),
                        set,
                    });
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        })?;
        if over {
            return Ok(WitnessSearch::NotFound { complete: false });
        }
        if let Some(w) = found {
            w.coloring.validate(g)?;
            if !w.coloring.is_elementary_set(&w.set) || !w.coloring.is_strongly_closed(g, &w.set) {
                return Err(Error::Consistency("witness failed revalidation".into()));
            }
            return Ok(WitnessSearch::Found(w));
        }
    }
    Ok(WitnessSearch::NotFound { complete: true })
}

/// A random proper `k`-coloring of `g` with `skip` uncolored, found by a
/// randomized search and then scrambled by a palette permutation and
/// random Kempe swaps.
pub fn sample_coloring(
    g: &Multigraph,
    k: usize,
    skip: Option<EdgeId>,
    rng: &mut ChaCha8Rng,
    budget: u64,
) -> Result<Option<PartialEdgeColoring>> {
    if k > MAX_COLORS {
        return Err(invalid(format!("palette size {k} exceeds {MAX_COLORS}")));
    }
    let (found, _) = search::EdgeSearch::new(g, k, skip, budget, Some(rng)).run()?;
    let Some(colors) = found else {
        return Ok(None);
    };
    let mut perm: Vec<Color> = (0..k).collect();
    perm.shuffle(rng);
    let colors: Vec<Option<Color>> = colors.iter().map(|c| c.map(|c| perm[c])).collect();
    let mut phi = PartialEdgeColoring::from_assignment(g, k, &colors)?;
    if k >= 2 && g.vertex_count() > 0 {
        for _ in 0..2 * g.edge_count() {
            let v = rng.gen_range(0..g.vertex_count());
            let a = rng.gen_range(0..k);
            let mut b = rng.gen_range(0..k - 1);
            if b >= a {
                b += 1;
            }
            let comp = phi.kempe_component(g, v, a, b)?;
            phi.kempe_swap(g, &comp)?;
        }
    }
    Ok(Some(phi))
}

/// Vertex chromatic number of a simple graph by plain backtracking over
/// vertices in degree order. Independent of the edge search; used to cross
/// check it on line graphs.
pub fn vertex_chromatic_number(q: &Multigraph, budget: u64) -> Result<usize> {
    let n = q.vertex_count();
    if n == 0 {
        return Ok(0);
    }
    let sg = SimpleGraph::from_multigraph(q);
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(sg.degree(v)));
    let start = sg.clique_number().max(1);
    for k in start..=n {
        let mut colors = vec![usize::MAX; n];
        let mut nodes = 0u64;
        if vc_rec(&sg, &order, 0, k, 0, &mut colors, &mut nodes, budget)? {
            return Ok(k);
        }
    }
    Ok(n)
}

#[allow(clippy::too_many_arguments)]
fn vc_rec(
    g: &SimpleGraph,
    order: &[Vertex],
    i: usize,
    k: usize,
    used: usize,
    colors: &mut [usize],
    nodes: &mut u64,
    budget: u64,
) -> Result<bool> {
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::Budget(format!(
            "vertex coloring exceeded {budget} nodes"
        )));
    }
    if i == order.len() {
        return Ok(true);
    }
    let v = order[i];
    for c in 0..k.min(used + 1) {
        if g.neighbors(v).iter().all(|u| colors[u] != c) {
            colors[v] = c;
            if vc_rec(g, order, i + 1, k, used.max(c + 1), colors, nodes, budget)? {
                return Ok(true);
            }
            colors[v] = usize::MAX;
        }
    }
    Ok(false)
}
