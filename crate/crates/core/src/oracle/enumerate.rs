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

//! Exhaustive enumeration of proper k-colorings of `G - e`.

use std::ops::ControlFlow;

use crate::coloring::PartialEdgeColoring;
use crate::colorset::ColorSet;
use crate::error::{invalid, Error, Result};
use crate::multigraph::{EdgeId, Multigraph};

/// Edge count up to which enumeration always runs.
pub const ENUMERATION_EDGE_GATE: usize = 8;
/// Leaf cap applied beyond the edge gate.
pub const ENUMERATION_LEAF_CAP: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationMode {
    /// Every assignment of raw color labels.
    Raw,
    /// One representative per orbit under permutations of the palette:
    /// colors appear in first-use order along the edge order.
    ColorQuotient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationSummary {
    pub visited: u64,
    /// False when the visitor stopped early.
    pub complete: bool,
}

/// Visits every proper k-coloring of `g` in which `uncolored` (if given)
/// stays uncolored and every other edge is colored.
pub fn enumerate_colorings<F>(
    g: &Multigraph,
    uncolored: Option<EdgeId>,
    k: usize,
    mode: EnumerationMode,
    mut visitor: F,
) -> Result<EnumerationSummary>
where
    F: FnMut(&PartialEdgeColoring) -> ControlFlow<()>,
{
    if let Some(e) = uncolored {
        if e >= g.edge_count() {
            return Err(invalid(format!("edge {e} out of range")));
        }
    }
    let order: Vec<EdgeId> = edge_order(g, uncolored);
    let cap = if order.len() <= ENUMERATION_EDGE_GATE {
        u64::MAX
    } else {
        ENUMERATION_LEAF_CAP
    };
    let mut phi = PartialEdgeColoring::new(g, k)?;
    let mut state = State {
        g,
        order: &order,
        mode,
        visited: 0,
        cap,
        stopped: false,
    };
    state.go(&mut phi, 0, 0, &mut visitor)?;
    Ok(EnumerationSummary {
        visited: state.visited,
        complete: !state.stopped,
    })
}

// Edges in breadth-first order so that each new edge tends to touch
// already-colored ones, which prunes early.
fn edge_order(g: &Multigraph, skip: Option<EdgeId>) -> Vec<EdgeId> {
    let m = g.edge_count();
    let mut placed = vec![false; m];
    let mut touched = vec![false; g.vertex_count()];
    let mut order = Vec::with_capacity(m);
    if let Some(e) = skip {
        placed[e] = true;
    }
    while order.len() + usize::from(skip.is_some()) < m {
        let next = (0..m)
            .filter(|&e| !placed[e])
            .max_by_key(|&e| {
                let (u, v) = g.endpoints(e);
                (
                    usize::from(touched[u]) + usize::from(touched[v]),
                    std::cmp::Reverse(e),
                )
            })
            .expect("unplaced edge exists");
        placed[next] = true;
        let (u, v) = g.endpoints(next);
        touched[u] = true;
        touched[v] = true;
        order.push(next);
    }
    order
}

struct State<'a> {
    g: &'a Multigraph,
    order: &'a [EdgeId],
    mode: EnumerationMode,
    visited: u64,
    cap: u64,
    stopped: bool,
}

impl State<'_> {
    fn go<F>(
        &mut self,
        phi: &mut PartialEdgeColoring,
        depth: usize,
        used: usize,
        visitor: &mut F,
    ) -> Result<()>
    where
        F: FnMut(&PartialEdgeColoring) -> ControlFlow<()>,
    {
        if self.stopped {
            return Ok(());
        }
        if depth == self.order.len() {
            self.visited += 1;
            if self.visited > self.cap {
                return Err(Error::Budget(format!(
                    "coloring enumeration exceeded {} leaves",
                    self.cap
                )));
            }
            if visitor(phi).is_break() {
                self.stopped = true;
            }
            return Ok(());
        }
        let e = self.order[depth];
        let (u, v) = self.g.endpoints(e);
        let k = phi.palette_size();
        let mut free = phi.missing(u).intersection(phi.missing(v));
        if self.mode == EnumerationMode::ColorQuotient {
            free = free.intersection(ColorSet::full((used + 1).min(k)));
        }
        for c in free {
            phi.set_color(self.g, e, Some(c))
                .expect("free colors keep the coloring proper");
            let used_next = used.max(c + 1);
            self.go(phi, depth + 1, used_next, visitor)?;
            phi.set_color(self.g, e, None)
                .expect("uncoloring is always proper");
            if self.stopped {
                break;
            }
        }
        Ok(())
    }
}
