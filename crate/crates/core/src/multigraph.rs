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

//! Loopless multigraphs with stable edge identities.
//!
//! Edge `i` is the `i`-th edge inserted; colorings, line-graph vertices and
//! every other per-edge map in the crate are indexed by this id. Parallel
//! edges are distinct edges that happen to share both endpoints.

use std::fmt::Write as _;

use crate::error::{invalid, Error, Result};

pub type Vertex = usize;
pub type EdgeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    incident: Vec<Vec<EdgeId>>,
    // row-major n x n multiplicity table
    mult: Vec<u32>,
}

impl Multigraph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Multigraph {
        Multigraph {
            n,
            edges: Vec::new(),
            incident: vec![Vec::new(); n],
            mult: vec![0; n * n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Multigraph> {
        let mut g = Multigraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Appends an edge and returns its id.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<EdgeId> {
        if u >= self.n || v >= self.n {
            return Err(invalid(format!(
                "edge ({u}, {v}) has an endpoint outside 0..{}",
                self.n
            )));
        }
        if u == v {
            return Err(invalid(format!("loop at vertex {u}")));
        }
        let id = self.edges.len();
        self.edges.push((u, v));
        self.incident[u].push(id);
        self.incident[v].push(id);
        self.mult[u * self.n + v] += 1;
        self.mult[v * self.n + u] += 1;
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    /// The endpoint of `e` that is not `v`.
    pub fn other_end(&self, e: EdgeId, v: Vertex) -> Vertex {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    pub fn incident(&self, v: Vertex) -> &[EdgeId] {
        &self.incident[v]
    }

    /// Degree of `v`, counting parallel edges.
    pub fn degree(&self, v: Vertex) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.incident[v].len())
    }

    /// Unchecked degree; panics on an out-of-range vertex.
    pub fn deg(&self, v: Vertex) -> usize {
        self.incident[v].len()
    }

    /// Number of parallel edges between `u` and `v`.
    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(invalid("multiplicity of a vertex with itself"));
        }
        Ok(self.mu(u, v))
    }

    /// Unchecked multiplicity; 0 when `u == v`.
    pub fn mu(&self, u: Vertex, v: Vertex) -> usize {
        self.mult[u * self.n + v] as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.deg(v)).max().unwrap_or(0)
    }

    pub fn max_multiplicity(&self) -> usize {
        self.mult.iter().copied().max().unwrap_or(0) as usize
    }

    /// Distinct neighbors of `v`, ascending.
    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        (0..self.n).filter(|&u| self.mu(v, u) > 0).collect()
    }

    pub fn neighbor_count(&self, v: Vertex) -> usize {
        (0..self.n).filter(|&u| self.mu(v, u) > 0).count()
    }

    pub fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.mu(u, v) > 0
    }

    pub fn is_simple(&self) -> bool {
        self.mult.iter().all(|&m| m <= 1)
    }

    /// Parallel classes as `(u, v, multiplicity)` with `u < v`, in
    /// lexicographic order.
    pub fn pairs(&self) -> Vec<(Vertex, Vertex, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                let m = self.mu(u, v);
                if m > 0 {
                    out.push((u, v, m));
                }
            }
        }
        out
    }

    /// Ids of the edges joining `u` and `v`, ascending.
    pub fn edges_between(&self, u: Vertex, v: Vertex) -> Vec<EdgeId> {
        self.incident[u]
            .iter()
            .copied()
            .filter(|&e| self.other_end(e, u) == v)
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &e in &self.incident[v] {
                let w = self.other_end(e, v);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// The simple graph on `||G||` vertices in which two vertices are
    /// adjacent iff the corresponding edges of `G` share an endpoint.
    pub fn line_graph(&self) -> Multigraph {
        let m = self.edges.len();
        let mut q = Multigraph::new(m);
        for e in 0..m {
            let (a, b) = self.edges[e];
            let mut nbrs: Vec<EdgeId> = self.incident[a]
                .iter()
                .chain(self.incident[b].iter())
                .copied()
                .filter(|&f| f > e)
                .collect();
            nbrs.sort_unstable();
            nbrs.dedup();
            for f in nbrs {
                q.add_edge(e, f).expect("line graph edges are valid");
            }
        }
        q
    }

    /// Same vertices, one edge per adjacent pair.
    pub fn underlying_simple_graph(&self) -> Multigraph {
        let mut h = Multigraph::new(self.n);
        for (u, v, _) in self.pairs() {
            h.add_edge(u, v).expect("valid pair");
        }
        h
    }

    /// True iff the underlying simple graph is a single cycle through every
    /// vertex.
    pub fn is_thickened_cycle(&self) -> bool {
        self.n >= 3 && (0..self.n).all(|v| self.neighbor_count(v) == 2) && self.is_connected()
    }

    /// A copy with edge `e` deleted. Ids above `e` shift down by one.
    pub fn without_edge(&self, e: EdgeId) -> Multigraph {
        let mut h = Multigraph::new(self.n);
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if i != e {
                h.add_edge(u, v).expect("valid edge");
            }
        }
        h
    }

    /// Subgraph induced by `keep`; vertex `keep[i]` becomes vertex `i`.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> Multigraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut h = Multigraph::new(keep.len());
        for &(u, v) in &self.edges {
            if index[u] != usize::MAX && index[v] != usize::MAX {
                h.add_edge(index[u], index[v]).expect("valid edge");
            }
        }
        h
    }

    pub fn without_vertex(&self, x: Vertex) -> Multigraph {
        let keep: Vec<Vertex> = (0..self.n).filter(|&v| v != x).collect();
        self.induced_subgraph(&keep)
    }

    pub fn without_isolated_vertices(&self) -> Multigraph {
        let keep: Vec<Vertex> = (0..self.n).filter(|&v| self.deg(v) > 0).collect();
        self.induced_subgraph(&keep)
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v >= self.n {
            Err(invalid(format!("vertex {v} outside 0..{}", self.n)))
        } else {
            Ok(())
        }
    }

    /// Serializes to the `p multigraph` text format.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(16 + 12 * self.edges.len());
        let _ = writeln!(out, "p multigraph {} {}", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        out
    }

    /// Parses the `p multigraph` text format.
    ///
    /// The first non-comment line must be `p multigraph <n> <m>`, followed by
    /// exactly `m` lines `e <u> <v>` with 1-indexed endpoints. Lines starting
    /// with `c` are comments. Only LF line endings are accepted.
    pub fn parse_text(text: &str) -> Result<Multigraph> {
        let parse_err = |line: usize, message: String| Error::Parse { line, message };
        let mut graph: Option<(Multigraph, usize)> = None;
        let mut lines = text.split('\n').enumerate().peekable();
        while let Some((i, raw)) = lines.next() {
            let lineno = i + 1;
            if raw.is_empty() && lines.peek().is_none() {
                break;
            }
            if raw.contains('\r') {
                return Err(parse_err(lineno, "CR line ending".into()));
            }
            if raw.starts_with('c') {
                continue;
            }
            let fields: Vec<&str> = raw.split(' ').collect();
            match &mut graph {
                None => {
                    if fields.len() != 4 || fields[0] != "p" || fields[1] != "multigraph" {
                        return Err(parse_err(
                            lineno,
                            format!("expected `p multigraph <n> <m>`, found `{raw}`"),
                        ));
                    }
                    let n = parse_count(fields[2]).map_err(|m| parse_err(lineno, m))?;
                    let m = parse_count(fields[3]).map_err(|m| parse_err(lineno, m))?;
                    graph = Some((Multigraph::new(n), m));
                }
                Some((g, m)) => {
                    if fields.len() != 3 || fields[0] != "e" {
                        return Err(parse_err(
                            lineno,
                            format!("expected `e <u> <v>`, found `{raw}`"),
                        ));
                    }
                    if g.edge_count() == *m {
                        return Err(parse_err(lineno, format!("more than {m} edge lines")));
                    }
                    let u = parse_count(fields[1]).map_err(|m| parse_err(lineno, m))?;
                    let v = parse_count(fields[2]).map_err(|m| parse_err(lineno, m))?;
                    if u == 0 || v == 0 {
                        return Err(parse_err(lineno, "endpoints are 1-indexed".into()));
                    }
                    g.add_edge(u - 1, v - 1)
                        .map_err(|e| parse_err(lineno, e.to_string()))?;
                }
            }
        }
        match graph {
            None => Err(parse_err(1, "missing `p multigraph` header".into())),
            Some((g, m)) if g.edge_count() != m => Err(parse_err(
                text.lines().count(),
                format!("header declares {m} edges, found {}", g.edge_count()),
            )),
            Some((g, _)) => Ok(g),
        }
    }
}

fn parse_count(s: &str) -> std::result::Result<usize, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("`{s}` is not a decimal integer"));
    }
    s.parse().map_err(|_| format!("`{s}` is out of range"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn thick_c5(m: [usize; 5]) -> Multigraph {
        let mut g = Multigraph::new(5);
        for (i, &k) in m.iter().enumerate() {
            for _ in 0..k {
                g.add_edge(i, (i + 1) % 5).unwrap();
            }
        }
        g
    }

    #[test]
    fn degree_examples() {
        let g = Multigraph::new(3);
        assert_eq!(g.degree(1), Ok(0));
        let c = thick_c5([3; 5]);
        for v in 0..5 {
            assert_eq!(c.degree(v), Ok(6));
        }
        assert!(matches!(c.degree(5), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn multiplicity_examples() {
        let k3 = Multigraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3.multiplicity(0, 2), Ok(1));
        let c = thick_c5([3; 5]);
        assert_eq!(c.multiplicity(1, 2), Ok(3));
        assert_eq!(c.multiplicity(0, 2), Ok(0));
        assert!(c.multiplicity(2, 2).is_err());
    }

    #[test]
    fn loops_rejected() {
        let mut g = Multigraph::new(2);
        assert!(g.add_edge(1, 1).is_err());
        assert!(g.add_edge(0, 2).is_err());
    }

    #[test]
    fn line_graph_examples() {
        let p3 = Multigraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let q = p3.line_graph();
        assert_eq!((q.vertex_count(), q.edge_count()), (2, 1));

        let c5 = thick_c5([1; 5]);
        let q = c5.line_graph();
        assert_eq!(q.edge_count(), 5);
        assert!(q.is_thickened_cycle() && q.is_simple());

        let c = thick_c5([2; 5]);
        let q = c.line_graph();
        for v in 0..q.vertex_count() {
            assert_eq!(q.deg(v), 5);
        }
        assert_eq!(q.max_degree(), 3 * 2 - 1);
    }

    #[test]
    fn underlying_simple_examples() {
        let c = thick_c5([3, 1, 2, 1, 1]);
        let h = c.underlying_simple_graph();
        assert_eq!(h.pairs(), thick_c5([1; 5]).pairs());
        assert_eq!(h.underlying_simple_graph(), h);
        assert_eq!(
            Multigraph::new(0).underlying_simple_graph(),
            Multigraph::new(0)
        );
    }

    #[test]
    fn thickened_cycle_examples() {
        let mut c7 = Multigraph::new(7);
        for i in 0..7 {
            for _ in 0..=(i % 3) {
                c7.add_edge(i, (i + 1) % 7).unwrap();
            }
        }
        assert!(c7.is_thickened_cycle());
        let mut k4 = Multigraph::new(4);
        for u in 0..4 {
            for v in u + 1..4 {
                k4.add_edge(u, v).unwrap();
            }
        }
        assert!(!k4.is_thickened_cycle());
        let two =
            Multigraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!two.is_thickened_cycle());
    }

    #[test]
    fn text_format_is_exact() {
        let g = Multigraph::from_edges(3, &[(0, 1), (0, 1), (1, 2)]).unwrap();
        let text = g.to_text();
        assert_eq!(text, "p multigraph 3 3\ne 1 2\ne 1 2\ne 2 3\n");
        assert_eq!(Multigraph::parse_text(&text).unwrap(), g);
        let commented = "c hello\np multigraph 3 3\nc between\ne 1 2\ne 1 2\ne 2 3\n";
        assert_eq!(Multigraph::parse_text(commented).unwrap(), g);
    }

    #[test]
    fn text_format_errors() {
        for bad in [
            "",
            "p graph 3 1\ne 1 2\n",
            "p multigraph 3 2\ne 1 2\n",
            "p multigraph 3 1\ne 1 2\ne 2 3\n",
            "p multigraph 3 1\ne 1 1\n",
            "p multigraph 3 1\ne 0 1\n",
            "p multigraph 3 1\r\ne 1 2\r\n",
            "p multigraph 3 1\ne 1 +2\n",
        ] {
            assert!(
                matches!(Multigraph::parse_text(bad), Err(Error::Parse { .. })),
                "accepted {bad:?}"
            );
        }
    }
}
