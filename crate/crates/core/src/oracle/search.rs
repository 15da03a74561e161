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

//! Branch-and-bound k-edge-colorability over parallel classes.
//!
//! Parallel edges between the same pair are interchangeable, so each class
//! receives its colors in increasing order. Globally unused colors are
//! interchangeable too, so only the smallest of them is ever branched on.
//! Nodes are pruned when some class cannot finish, or when a dense vertex
//! set has more uncolored inside edges than its free colors can absorb.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::colorset::{Color, ColorSet};
use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, Multigraph, Vertex};

struct Class {
    u: Vertex,
    v: Vertex,
    edges: Vec<EdgeId>,
}

struct DenseSet {
    members: Vec<Vertex>,
    remaining: usize,
}

pub(crate) struct EdgeSearch<'a> {
    k: usize,
    classes: Vec<Class>,
    done: Vec<usize>,
    last: Vec<Option<Color>>,
    seen: Vec<ColorSet>,
    used: ColorSet,
    colors: Vec<Option<Color>>,
    sets: Vec<DenseSet>,
    class_sets: Vec<Vec<usize>>,
    nodes: u64,
    budget: u64,
    rng: Option<&'a mut ChaCha8Rng>,
}

fn dense_sets(g: &Multigraph) -> Vec<Vec<Vertex>> {
    let n = g.vertex_count();
    let inside = |s: &[Vertex]| {
        let mut e = 0;
        for (i, &a) in s.iter().enumerate() {
            for &b in &s[i + 1..] {
                e += g.mu(a, b);
            }
        }
        e
    };
    let mut out = Vec::new();
    if n <= 10 {
        for mask in 1u32..(1 << n) {
            if mask.count_ones() < 3 {
                continue;
            }
            let s: Vec<Vertex> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if inside(&s) >= s.len() {
                out.push(s);
            }
        }
    } else {
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let s = vec![a, b, c];
                    if g.is_adjacent(a, b) && g.is_adjacent(b, c) && g.is_adjacent(a, c) {
                        out.push(s);
                    }
                }
            }
        }
        out.push((0..n).collect());
    }
    out
}

impl<'a> EdgeSearch<'a> {
    pub(crate) fn new(
        g: &Multigraph,
        k: usize,
        skip: Option<EdgeId>,
        budget: u64,
        rng: Option<&'a mut ChaCha8Rng>,
    ) -> EdgeSearch<'a> {
        let n = g.vertex_count();
        let mut classes: Vec<Class> = Vec::new();
        let mut index = vec![usize::MAX; n * n];
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            if Some(e) == skip {
                continue;
            }
            let (u, v) = (a.min(b), a.max(b));
            let slot = &mut index[u * n + v];
            if *slot == usize::MAX {
                *slot = classes.len();
                classes.push(Class {
                    u,
                    v,
                    edges: Vec::new(),
                });
            }
            classes[*slot].edges.push(e);
        }
        let mut sets = Vec::new();
        let mut class_sets = vec![Vec::new(); classes.len()];
        for members in dense_sets(g) {
            let mut inside = vec![false; n];
            for &v in &members {
                inside[v] = true;
            }
            let mut remaining = 0;
            for (ci, c) in classes.iter().enumerate() {
                if inside[c.u] && inside[c.v] {
                    remaining += c.edges.len();
                    class_sets[ci].push(sets.len());
                }
            }
            sets.push(DenseSet { members, remaining });
        }
        EdgeSearch {
            k,
            done: vec![0; classes.len()],
            last: vec![None; classes.len()],
            classes,
            seen: vec![ColorSet::EMPTY; n],
            used: ColorSet::EMPTY,
            colors: vec![None; g.edge_count()],
            sets,
            class_sets,
            nodes: 0,
            budget,
            rng,
        }
    }

    /// Runs the search; `Some(assignment)` iff a proper k-coloring exists.
    pub(crate) fn run(mut self) -> Result<(Option<Vec<Option<Color>>>, u64)> {
        let found = self.dfs()?;
        let nodes = self.nodes;
        Ok((found.then_some(self.colors), nodes))
    }

    fn avail(&self, ci: usize) -> ColorSet {
        let c = &self.classes[ci];
        let free = ColorSet::full(self.k)
            .difference(self.seen[c.u])
            .difference(self.seen[c.v]);
        match self.last[ci] {
            Some(l) => free.at_least(l + 1),
            None => free,
        }
    }

    fn dense_sets_ok(&self) -> bool {
        let full = ColorSet::full(self.k);
        for s in &self.sets {
            if s.remaining == 0 {
                continue;
            }
            let mut total = 0;
            let mut parity = 0u128;
            for &v in &s.members {
                let m = full.difference(self.seen[v]);
                total += m.len();
                parity ^= m.bits();
            }
            let capacity = (total - parity.count_ones() as usize) / 2;
            if s.remaining > capacity {
                return false;
            }
        }
        true
    }

    fn dfs(&mut self) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Budget(format!(
                "edge-coloring search exceeded {} nodes",
                self.budget
            )));
        }
        let mut best: Option<(usize, isize)> = None;
        let mut ties = 0u32;
        for ci in 0..self.classes.len() {
            let r = self.classes[ci].edges.len() - self.done[ci];
            if r == 0 {
                continue;
            }
            let slack = self.avail(ci).len() as isize - r as isize;
            if slack < 0 {
                return Ok(false);
            }
            match best {
                Some((_, s)) if slack > s => {}
                Some((_, s)) if slack == s => {
                    if let Some(rng) = self.rng.as_deref_mut() {
                        ties += 1;
                        if rng.gen_range(0..ties) == 0 {
                            best = Some((ci, slack));
                        }
                    }
                }
                _ => {
                    best = Some((ci, slack));
                    ties = 1;
                }
            }
        }
        let Some((ci, _)) = best else {
            return Ok(true);
        };
        if !self.dense_sets_ok() {
            return Ok(false);
        }
        let avail = self.avail(ci);
        let mut candidates: Vec<Color> = avail.intersection(self.used).iter().collect();
        if let Some(fresh) = avail.difference(self.used).first() {
            candidates.push(fresh);
        }
        if let Some(rng) = self.rng.as_deref_mut() {
            candidates.shuffle(rng);
        }
        for c in candidates {
            let fresh = !self.used.contains(c);
            self.assign(ci, c);
            if fresh {
                self.used.insert(c);
            }
            if self.dfs()? {
                return Ok(true);
            }
            if fresh {
                self.used.remove(c);
            }
            self.unassign(ci, c);
        }
        Ok(false)
    }

    fn assign(&mut self, ci: usize, c: Color) {
        let class = &self.classes[ci];
        let e = class.edges[self.done[ci]];
        self.colors[e] = Some(c);
        self.seen[class.u].insert(c);
        self.seen[class.v].insert(c);
        self.done[ci] += 1;
        self.last[ci] = Some(c);
        for &s in &self.class_sets[ci] {
            self.sets[s].remaining -= 1;
        }
    }

    fn unassign(&mut self, ci: usize, c: Color) {
        self.done[ci] -= 1;
        let class = &self.classes[ci];
        let e = class.edges[self.done[ci]];
        self.colors[e] = None;
        self.seen[class.u].remove(c);
        self.seen[class.v].remove(c);
        self.last[ci] = if self.done[ci] == 0 {
            None
        } else {
            self.colors[class.edges[self.done[ci] - 1]]
        };
        for &s in &self.class_sets[ci] {
            self.sets[s].remaining += 1;
        }
    }
}
