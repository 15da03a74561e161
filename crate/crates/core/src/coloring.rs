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

//! Proper partial edge-colorings and the Kempe-chain recoloring kernel.
//!
//! A [`PartialEdgeColoring`] assigns each edge id either a color in
//! `0..k` or nothing. Every mutation goes through a properness check, so a
//! value obtained from the safe constructors is always proper. Each
//! mutation also draws a fresh stamp; [`KempeComponent`] snapshots remember
//! the stamp of the coloring they were extracted from and are rejected once
//! it changes.

use std::fmt::Write as _;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::colorset::{Color, ColorSet, MAX_COLORS};
use crate::error::{invalid, precondition, Error, Result};
use crate::multigraph::{EdgeId, Multigraph, Vertex};

static NEXT_STAMP: AtomicU64 = AtomicU64::new(1);

fn fresh_stamp() -> u64 {
    NEXT_STAMP.fetch_add(1, Ordering::Relaxed)
}

#[derive(Clone, Debug)]
pub struct PartialEdgeColoring {
    k: usize,
    n: usize,
    colors: Vec<Option<Color>>,
    seen: Vec<ColorSet>,
    // at[v * k + c]: the edge at v colored c
    at: Vec<Option<EdgeId>>,
    stamp: u64,
}

impl PartialEq for PartialEdgeColoring {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.colors == other.colors
    }
}

impl Eq for PartialEdgeColoring {}

impl PartialEdgeColoring {
    /// The all-uncolored coloring of `g` with palette `0..k`.
    pub fn new(g: &Multigraph, k: usize) -> Result<PartialEdgeColoring> {
        if k > MAX_COLORS {
            return Err(invalid(format!("palette size {k} exceeds {MAX_COLORS}")));
        }
        Ok(PartialEdgeColoring {
            k,
            n: g.vertex_count(),
            colors: vec![None; g.edge_count()],
            seen: vec![ColorSet::EMPTY; g.vertex_count()],
            at: vec![None; g.vertex_count() * k],
            stamp: fresh_stamp(),
        })
    }

    /// Builds a coloring from a per-edge assignment, rejecting improper or
    /// out-of-palette assignments.
    pub fn from_assignment(
        g: &Multigraph,
        k: usize,
        colors: &[Option<Color>],
    ) -> Result<PartialEdgeColoring> {
        if colors.len() != g.edge_count() {
            return Err(invalid(format!(
                "assignment covers {} edges, graph has {}",
                colors.len(),
                g.edge_count()
            )));
        }
        let mut phi = PartialEdgeColoring::new(g, k)?;
        for (e, &c) in colors.iter().enumerate() {
            if c.is_some() {
                phi.set_color(g, e, c)?;
            }
        }
        Ok(phi)
    }

    /// Stores an assignment without checking it. The result may be improper;
    /// callers that accept external colorings must run [`validate`] before
    /// relying on any other method.
    ///
    /// [`validate`]: PartialEdgeColoring::validate
    pub fn from_assignment_unchecked(
        g: &Multigraph,
        k: usize,
        colors: Vec<Option<Color>>,
    ) -> PartialEdgeColoring {
        let n = g.vertex_count();
        let k = k.min(MAX_COLORS);
        let mut seen = vec![ColorSet::EMPTY; n];
        let mut at = vec![None; n * k];
        for (e, &c) in colors.iter().enumerate() {
            if let Some(c) = c.filter(|&c| c < k) {
                if e < g.edge_count() {
                    let (u, v) = g.endpoints(e);
                    for w in [u, v] {
                        seen[w].insert(c);
                        at[w * k + c] = Some(e);
                    }
                }
            }
        }
        PartialEdgeColoring {
            k,
            n,
            colors,
            seen,
            at,
            stamp: fresh_stamp(),
        }
    }

    pub fn palette_size(&self) -> usize {
        self.k
    }

    pub fn color(&self, e: EdgeId) -> Option<Color> {
        self.colors[e]
    }

    pub fn assignment(&self) -> &[Option<Color>] {
        &self.colors
    }

    pub fn stamp(&self) -> u64 {
        self.stamp
    }

    pub fn seen(&self, v: Vertex) -> ColorSet {
        self.seen[v]
    }

    /// Colors of the palette not used on any edge at `v`.
    pub fn missing(&self, v: Vertex) -> ColorSet {
        ColorSet::full(self.k).difference(self.seen[v])
    }

    /// The edge at `v` colored `c`, if any.
    pub fn edge_with_color(&self, v: Vertex, c: Color) -> Option<EdgeId> {
        if c >= self.k {
            return None;
        }
        self.at[v * self.k + c]
    }

    pub fn colored_count(&self) -> usize {
        self.colors.iter().filter(|c| c.is_some()).count()
    }

    pub fn uncolored_edges(&self) -> Vec<EdgeId> {
        (0..self.colors.len())
            .filter(|&e| self.colors[e].is_none())
            .collect()
    }

    /// Assigns or clears the color of `e`, refusing assignments that would
    /// make the coloring improper.
    pub fn set_color(&mut self, g: &Multigraph, e: EdgeId, c: Option<Color>) -> Result<()> {
        let (u, v) = g.endpoints(e);
        if let Some(c) = c {
            if c >= self.k {
                return Err(invalid(format!("color {c} outside palette 0..{}", self.k)));
            }
            for w in [u, v] {
                if let Some(f) = self.at[w * self.k + c] {
                    if f != e {
                        return Err(precondition(format!(
                            "coloring edge {e} with {c} conflicts with edge {f} at vertex {w}"
                        )));
                    }
                }
            }
        }
        if let Some(old) = self.colors[e] {
            for w in [u, v] {
                self.seen[w].remove(old);
                self.at[w * self.k + old] = None;
            }
        }
        if let Some(c) = c {
            for w in [u, v] {
                self.seen[w].insert(c);
                self.at[w * self.k + c] = Some(e);
            }
        }
        self.colors[e] = c;
        self.stamp = fresh_stamp();
        Ok(())
    }

    /// Independent properness scan over the raw assignment.
    pub fn validate(&self, g: &Multigraph) -> Result<()> {
        if self.colors.len() != g.edge_count() || self.n != g.vertex_count() {
            return Err(invalid("coloring does not belong to this graph"));
        }
        for v in 0..g.vertex_count() {
            let mut used = Vec::new();
            for &e in g.incident(v) {
                if let Some(c) = self.colors[e] {
                    if c >= self.k {
                        return Err(precondition(format!(
                            "edge {e} has color {c} outside 0..{}",
                            self.k
                        )));
                    }
                    if used.contains(&c) {
                        return Err(precondition(format!(
                            "color {c} appears twice at vertex {v}"
                        )));
                    }
                    used.push(c);
                }
            }
        }
        Ok(())
    }

    /// True iff the missing sets of distinct vertices of `w` are pairwise
    /// disjoint.
    pub fn is_elementary_set(&self, w: &[Vertex]) -> bool {
        let mut acc = ColorSet::EMPTY;
        let mut distinct: Vec<Vertex> = w.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        for &v in &distinct {
            let m = self.missing(v);
            if !acc.is_disjoint(m) {
                return false;
            }
            acc = acc.union(m);
        }
        true
    }

    /// Colors used on at least two edges leaving `x`.
    pub fn defective_colors(&self, g: &Multigraph, x: &[Vertex]) -> ColorSet {
        let mut inside = vec![false; g.vertex_count()];
        for &v in x {
            inside[v] = true;
        }
        let mut once = ColorSet::EMPTY;
        let mut twice = ColorSet::EMPTY;
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if inside[u] != inside[v] {
                if let Some(c) = self.colors[e] {
                    if once.contains(c) {
                        twice.insert(c);
                    }
                    once.insert(c);
                }
            }
        }
        twice
    }

    pub fn is_strongly_closed(&self, g: &Multigraph, x: &[Vertex]) -> bool {
        self.defective_colors(g, x).is_empty()
    }

    /// The maximal connected subgraph through `v` induced by edges colored
    /// `alpha` or `beta`.
    pub fn kempe_component(
        &self,
        g: &Multigraph,
        v: Vertex,
        alpha: Color,
        beta: Color,
    ) -> Result<KempeComponent> {
        if alpha == beta || alpha >= self.k || beta >= self.k {
            return Err(invalid(format!(
                "kempe colors ({alpha}, {beta}) must be distinct members of 0..{}",
                self.k
            )));
        }
        let starts: Vec<EdgeId> = [alpha, beta]
            .iter()
            .filter_map(|&c| self.edge_with_color(v, c))
            .collect();
        let mut comp = KempeComponent {
            anchor: v,
            alpha,
            beta,
            shape: ComponentShape::Path,
            vertices: vec![v],
            edges: Vec::new(),
            stamp: self.stamp,
        };
        let Some(&first) = starts.first() else {
            return Ok(comp);
        };
        let (verts, edges, closed) = self.walk(g, v, first, alpha, beta);
        if closed {
            comp.shape = ComponentShape::Cycle;
            comp.vertices = verts;
            comp.edges = edges;
            return Ok(comp);
        }
        if let Some(&second) = starts.get(1) {
            // v is interior: stitch the two half-walks at v
            let (verts2, edges2, _) = self.walk(g, v, second, alpha, beta);
            let mut vertices: Vec<Vertex> = verts2.into_iter().rev().collect();
            vertices.extend_from_slice(&verts[1..]);
            let mut all_edges: Vec<EdgeId> = edges2.into_iter().rev().collect();
            all_edges.extend(edges);
            comp.vertices = vertices;
            comp.edges = all_edges;
        } else {
            comp.vertices = verts;
            comp.edges = edges;
        }
        Ok(comp)
    }

    // Follows the alternating walk from `v` through `first`. Returns the
    // visited vertices (starting with v), the edges, and whether the walk
    // closed back at v.
    fn walk(
        &self,
        g: &Multigraph,
        v: Vertex,
        first: EdgeId,
        alpha: Color,
        beta: Color,
    ) -> (Vec<Vertex>, Vec<EdgeId>, bool) {
        let mut verts = vec![v];
        let mut edges = Vec::new();
        let mut cur = v;
        let mut e = first;
        loop {
            let w = g.other_end(e, cur);
            edges.push(e);
            if w == v {
                return (verts, edges, true);
            }
            verts.push(w);
            let c = self.colors[e].expect("walk follows colored edges");
            let next = if c == alpha { beta } else { alpha };
            match self.edge_with_color(w, next) {
                Some(f) => {
                    e = f;
                    cur = w;
                }
                None => return (verts, edges, false),
            }
        }
    }

    /// Exchanges the two colors of `comp` on its edges.
    pub fn kempe_swap(&mut self, g: &Multigraph, comp: &KempeComponent) -> Result<()> {
        if comp.stamp != self.stamp {
            return Err(Error::StaleComponent);
        }
        let (a, b) = (comp.alpha, comp.beta);
        for &e in &comp.edges {
            let (u, v) = g.endpoints(e);
            let c = self.colors[e].expect("component edges are colored");
            for w in [u, v] {
                self.at[w * self.k + c] = None;
            }
        }
        for &e in &comp.edges {
            let (u, v) = g.endpoints(e);
            let c = if self.colors[e] == Some(a) { b } else { a };
            self.colors[e] = Some(c);
            for w in [u, v] {
                self.at[w * self.k + c] = Some(e);
            }
        }
        for &v in &comp.vertices {
            for c in [a, b] {
                if self.at[v * self.k + c].is_some() {
                    self.seen[v].insert(c);
                } else {
                    self.seen[v].remove(c);
                }
            }
        }
        self.stamp = fresh_stamp();
        Ok(())
    }

    /// Functional form of [`kempe_swap`](Self::kempe_swap).
    pub fn swapped(&self, g: &Multigraph, comp: &KempeComponent) -> Result<PartialEdgeColoring> {
        let mut out = self.clone();
        out.kempe_swap(g, comp)?;
        Ok(out)
    }

    /// Rotates the `alpha, beta` coloring of `path + uncolored` by `j` steps
    /// and returns the edge that is uncolored afterwards.
    ///
    /// `path` must be `P_{v1}(alpha, beta)` extracted at `v1`, with `alpha`
    /// missing at `v0`, `beta` missing at `v1`, and its far end at `v0`,
    /// where `uncolored = v0 v1`. One step uncolors the next edge of the path
    /// and moves its color onto the currently uncolored edge.
    pub fn rotate(
        &mut self,
        g: &Multigraph,
        path: &KempeComponent,
        uncolored: EdgeId,
        j: usize,
    ) -> Result<EdgeId> {
        if path.stamp != self.stamp {
            return Err(Error::StaleComponent);
        }
        if self.colors[uncolored].is_some() {
            return Err(precondition(format!("edge {uncolored} is colored")));
        }
        let v1 = path.anchor;
        let (a, b) = g.endpoints(uncolored);
        let v0 = match (a == v1, b == v1) {
            (true, _) => b,
            (_, true) => a,
            _ => {
                return Err(precondition(format!(
                    "path anchor {v1} is not an endpoint of edge {uncolored}"
                )))
            }
        };
        if !self.missing(v0).contains(path.alpha) || !self.missing(v1).contains(path.beta) {
            return Err(precondition(
                "rotation needs alpha missing at v0 and beta missing at v1",
            ));
        }
        if path.shape != ComponentShape::Path || path.vertices.last() != Some(&v0) {
            return Err(precondition(
                "P does not end at v0; swap alpha and beta on P and color v0v1 instead",
            ));
        }
        let r = path.edges.len();
        if j == 0 || j > r {
            return Err(invalid(format!("rotation amount {j} outside 1..={r}")));
        }
        let mut hole = uncolored;
        for &f in &path.edges[..j] {
            let c = self.colors[f];
            self.set_color(g, f, None)?;
            self.set_color(g, hole, c)
                .map_err(|e| Error::Consistency(format!("rotation step broke properness: {e}")))?;
            hole = f;
        }
        Ok(hole)
    }

    /// One line per edge: `<edge-id> <color|->`, colors 1-indexed.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (e, c) in self.colors.iter().enumerate() {
            match c {
                Some(c) => {
                    let _ = writeln!(out, "{e} {}", c + 1);
                }
                None => {
                    let _ = writeln!(out, "{e} -");
                }
            }
        }
        out
    }

    /// Parses a [`dump`](Self::dump) into a raw assignment over `m` edges.
    pub fn parse_dump(text: &str, m: usize) -> Result<Vec<Option<Color>>> {
        let mut colors = vec![None; m];
        let mut expected = 0;
        for (i, line) in text.lines().enumerate() {
            let err = |message: String| Error::Parse {
                line: i + 1,
                message,
            };
            let (id, c) = line
                .split_once(' ')
                .ok_or_else(|| err(format!("expected `<edge-id> <color|->`, found `{line}`")))?;
            let id: usize = id.parse().map_err(|_| err(format!("bad edge id `{id}`")))?;
            if id != expected || id >= m {
                return Err(err(format!("edge id {id} out of order")));
            }
            expected += 1;
            colors[id] = match c {
                "-" => None,
                s => {
                    let c: usize = s.parse().map_err(|_| err(format!("bad color `{s}`")))?;
                    if c == 0 {
                        return Err(err("colors are 1-indexed".into()));
                    }
                    Some(c - 1)
                }
            };
        }
        if expected != m {
            return Err(Error::Parse {
                line: expected + 1,
                message: format!("dump lists {expected} edges, expected {m}"),
            });
        }
        Ok(colors)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentShape {
    Path,
    Cycle,
}

/// Snapshot of a two-colored component.
///
/// For a path, `vertices` runs from one end to the other and `edges[i]`
/// joins `vertices[i]` and `vertices[i + 1]`; when the anchor is an end it
/// comes first. For a cycle, `vertices[0]` is the anchor and the last edge
/// closes the cycle.
#[derive(Clone, Debug)]
pub struct KempeComponent {
    pub anchor: Vertex,
    pub alpha: Color,
    pub beta: Color,
    pub shape: ComponentShape,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<EdgeId>,
    stamp: u64,
}

impl KempeComponent {
    pub fn is_trivial(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}
