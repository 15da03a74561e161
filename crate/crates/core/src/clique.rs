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

//! Bitset cliques on simple graphs.

use crate::multigraph::{Multigraph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bits {
    words: Vec<u64>,
}

impl Bits {
    pub fn empty(n: usize) -> Bits {
        Bits {
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Bits {
        let mut b = Bits::empty(n);
        for v in 0..n {
            b.insert(v);
        }
        b
    }

    pub fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        self.words[v / 64] &= !(1 << (v % 64));
    }

    pub fn contains(&self, v: usize) -> bool {
        self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .position(|&w| w != 0)
            .map(|i| i * 64 + self.words[i].trailing_zeros() as usize)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn and(&self, other: &Bits) -> Bits {
        Bits {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn and_not(&self, other: &Bits) -> Bits {
        Bits {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }
}

/// Adjacency-bitset view of a graph, multiplicities ignored.
#[derive(Clone, Debug)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<Bits>,
}

impl SimpleGraph {
    pub fn from_multigraph(g: &Multigraph) -> SimpleGraph {
        let n = g.vertex_count();
        let mut adj = vec![Bits::empty(n); n];
        for &(u, v) in g.edges() {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        SimpleGraph { n, adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: Vertex) -> &Bits {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].contains(v)
    }

    pub fn is_clique(&self, xs: &[Vertex]) -> bool {
        xs.iter().enumerate().all(|(i, &a)| {
            xs[i + 1..]
                .iter()
                .all(|&b| a != b && self.is_adjacent(a, b))
        })
    }

    /// Common neighbors of every vertex of `xs`, excluding `xs` itself.
    pub fn common_neighbors(&self, xs: &[Vertex]) -> Bits {
        let mut c = Bits::full(self.n);
        for &x in xs {
            c = c.and(&self.adj[x]);
        }
        for &x in xs {
            c.remove(x);
        }
        c
    }

    /// Size of a largest clique inside `cand`.
    pub fn max_clique_within(&self, cand: &Bits) -> usize {
        let mut best = 0;
        self.expand(0, cand.clone(), &mut best);
        best
    }

    pub fn clique_number(&self) -> usize {
        self.max_clique_within(&Bits::full(self.n))
    }

    /// Size of a largest clique containing `v` using only vertices of
    /// `allowed` besides `v`.
    pub fn max_clique_containing(&self, v: Vertex, allowed: &Bits) -> usize {
        1 + self.max_clique_within(&self.adj[v].and(allowed))
    }

    fn expand(&self, size: usize, mut p: Bits, best: &mut usize) {
        if p.is_empty() {
            *best = (*best).max(size);
            return;
        }
        let (order, bound) = self.color_sort(&p);
        for i in (0..order.len()).rev() {
            if size + bound[i] <= *best {
                return;
            }
            let v = order[i];
            self.expand(size + 1, p.and(&self.adj[v]), best);
            p.remove(v);
        }
    }

    // Greedy coloring of `p`; bound[i] is the number of color classes used
    // up to order[i].
    fn color_sort(&self, p: &Bits) -> (Vec<Vertex>, Vec<usize>) {
        let mut uncolored = p.clone();
        let mut order = Vec::new();
        let mut bound = Vec::new();
        let mut class = 0;
        while !uncolored.is_empty() {
            class += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.first() {
                q.remove(v);
                q = q.and_not(&self.adj[v]);
                uncolored.remove(v);
                order.push(v);
                bound.push(class);
            }
        }
        (order, bound)
    }

    /// Every clique with exactly `r` vertices, as increasing vertex lists.
    pub fn cliques_of_size(&self, r: usize) -> Vec<Vec<Vertex>> {
        let mut out = Vec::new();
        if r == 0 {
            return out;
        }
        let mut cur = Vec::new();
        self.grow(&Bits::full(self.n), r, &mut cur, &mut |c| {
            out.push(c.to_vec())
        });
        out
    }

    /// Visits every clique with at least one and at most `max` vertices.
    pub fn for_each_clique(&self, max: usize, f: &mut dyn FnMut(&[Vertex])) {
        fn rec(
            g: &SimpleGraph,
            cand: &Bits,
            max: usize,
            cur: &mut Vec<Vertex>,
            f: &mut dyn FnMut(&[Vertex]),
        ) {
            for v in cand.iter() {
                cur.push(v);
                f(cur);
                if cur.len() < max {
                    let mut next = cand.and(&g.adj[v]);
                    for u in 0..=v {
                        next.remove(u);
                    }
                    rec(g, &next, max, cur, f);
                }
                cur.pop();
            }
        }
        let mut cur = Vec::new();
        rec(self, &Bits::full(self.n), max, &mut cur, f);
    }

    fn grow(&self, cand: &Bits, r: usize, cur: &mut Vec<Vertex>, f: &mut dyn FnMut(&[Vertex])) {
        if cur.len() == r {
            f(cur);
            return;
        }
        for v in cand.iter() {
            cur.push(v);
            let mut next = cand.and(&self.adj[v]);
            for u in 0..=v {
                next.remove(u);
            }
            self.grow(&next, r, cur, f);
            cur.pop();
        }
    }

    /// Every maximal clique (Bron–Kerbosch with pivoting).
    pub fn maximal_cliques(&self) -> Vec<Vec<Vertex>> {
        let mut out = Vec::new();
        let mut r = Vec::new();
        self.bk(&mut r, Bits::full(self.n), Bits::empty(self.n), &mut out);
        out
    }

    fn bk(&self, r: &mut Vec<Vertex>, mut p: Bits, mut x: Bits, out: &mut Vec<Vec<Vertex>>) {
        if p.is_empty() {
            if x.is_empty() {
                let mut c = r.clone();
                c.sort_unstable();
                out.push(c);
            }
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .max_by_key(|&u| p.and(&self.adj[u]).len())
            .expect("p is nonempty");
        let branch: Vec<Vertex> = p.and_not(&self.adj[pivot]).iter().collect();
        for v in branch {
            r.push(v);
            self.bk(r, p.and(&self.adj[v]), x.and(&self.adj[v]), out);
            r.pop();
            p.remove(v);
            x.insert(v);
        }
    }

    /// Subgraph induced by the vertices not in `removed`, keeping labels;
    /// removed vertices become isolated and are excluded by the caller.
    pub fn without(&self, removed: &Bits) -> SimpleGraph {
        SimpleGraph {
            n: self.n,
            adj: self.adj.iter().map(|a| a.and_not(removed)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> SimpleGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        SimpleGraph::from_multigraph(&Multigraph::from_edges(n, &edges).unwrap())
    }

    #[test]
    fn complete_graph_cliques() {
        let g = k(5);
        assert_eq!(g.clique_number(), 5);
        assert_eq!(g.cliques_of_size(3).len(), 10);
        assert_eq!(g.maximal_cliques(), vec![vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn five_cycle_cliques() {
        let c5 = Multigraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let g = SimpleGraph::from_multigraph(&c5);
        assert_eq!(g.clique_number(), 2);
        assert_eq!(g.maximal_cliques().len(), 5);
        assert!(g.cliques_of_size(3).is_empty());
        let mut count = 0;
        g.for_each_clique(usize::MAX, &mut |_| count += 1);
        assert_eq!(count, 10);
    }

    #[test]
    fn bits_span_words() {
        let mut b = Bits::empty(130);
        b.insert(3);
        b.insert(64);
        b.insert(129);
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![3, 64, 129]);
        assert_eq!(b.len(), 3);
    }
}
