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

//! Fan-recoloring edge colorer. Always succeeds with at least `Δ + μ`
//! colors; with fewer it may still succeed and otherwise reports failure.

use crate::coloring::PartialEdgeColoring;
use crate::colorset::Color;
use crate::multigraph::{EdgeId, Multigraph, Vertex};

struct Fan {
    // (edge, leaf); entry 0 is the uncolored edge
    spokes: Vec<(EdgeId, Vertex)>,
}

/// Colors every edge of `g` with `k` colors, or returns `None`.
pub fn color_constructive(g: &Multigraph, k: usize) -> Option<PartialEdgeColoring> {
    let mut phi = PartialEdgeColoring::new(g, k).ok()?;
    for e in 0..g.edge_count() {
        let (x, y) = g.endpoints(e);
        let backup = phi.clone();
        if extend(g, &mut phi, e, x) {
            continue;
        }
        phi = backup;
        if !extend(g, &mut phi, e, y) {
            return None;
        }
    }
    debug_assert!(phi.validate(g).is_ok());
    Some(phi)
}

fn extend(g: &Multigraph, phi: &mut PartialEdgeColoring, e: EdgeId, x: Vertex) -> bool {
    let y0 = g.other_end(e, x);
    let direct = phi.missing(x).intersection(phi.missing(y0));
    if let Some(c) = direct.first() {
        return phi.set_color(g, e, Some(c)).is_ok();
    }
    let fan = grow_fan(g, phi, e, x);
    let mx = phi.missing(x);
    let Some(alpha) = mx.first() else {
        return false;
    };
    for j in 0..fan.spokes.len() {
        if phi.missing(fan.spokes[j].1).contains(alpha) {
            return shift(g, phi, &fan.spokes[..=j], alpha);
        }
    }
    // two leaves missing a common color beta
    let mut owner: Vec<Option<usize>> = vec![None; phi.palette_size()];
    let mut pair = None;
    'outer: for (j, &(_, y)) in fan.spokes.iter().enumerate() {
        for c in phi.missing(y) {
            match owner[c] {
                Some(i) => {
                    pair = Some((i, j, c));
                    break 'outer;
                }
                None => owner[c] = Some(j),
            }
        }
    }
    let Some((i, j, beta)) = pair else {
        return false;
    };
    let (yi, yj) = (fan.spokes[i].1, fan.spokes[j].1);
    let Ok(pj) = phi.kempe_component(g, yj, alpha, beta) else {
        return false;
    };
    let path = if pj.vertices.contains(&x) {
        match phi.kempe_component(g, yi, alpha, beta) {
            Ok(p) => p,
            Err(_) => return false,
        }
    } else {
        pj
    };
    if path.vertices.contains(&x) || phi.kempe_swap(g, &path).is_err() {
        return false;
    }
    let Some(s) = fan
        .spokes
        .iter()
        .position(|&(_, y)| phi.missing(y).contains(alpha))
    else {
        return false;
    };
    shift(g, phi, &fan.spokes[..=s], alpha)
}

fn grow_fan(g: &Multigraph, phi: &PartialEdgeColoring, e: EdgeId, x: Vertex) -> Fan {
    let mut spokes = vec![(e, g.other_end(e, x))];
    let mut in_fan = vec![false; g.vertex_count()];
    in_fan[x] = true;
    in_fan[spokes[0].1] = true;
    let mut idx = 0;
    while idx < spokes.len() {
        let y = spokes[idx].1;
        for c in phi.missing(y) {
            if let Some(f) = phi.edge_with_color(x, c) {
                let z = g.other_end(f, x);
                if !in_fan[z] {
                    in_fan[z] = true;
                    spokes.push((f, z));
                }
            }
        }
        idx += 1;
    }
    Fan { spokes }
}

// Recolors the last spoke with alpha and shifts colors down the
// predecessor chain, finally coloring spoke 0.
fn shift(
    g: &Multigraph,
    phi: &mut PartialEdgeColoring,
    spokes: &[(EdgeId, Vertex)],
    alpha: Color,
) -> bool {
    let pred = |phi: &PartialEdgeColoring, i: usize| -> Option<usize> {
        let c = phi.color(spokes[i].0)?;
        (0..i).find(|&l| phi.missing(spokes[l].1).contains(c))
    };
    let mut chain = vec![spokes.len() - 1];
    while let Some(&i) = chain.last() {
        if i == 0 {
            break;
        }
        match pred(phi, i) {
            Some(p) => chain.push(p),
            None => return false,
        }
    }
    let mut carry = alpha;
    for &i in &chain {
        let f = spokes[i].0;
        let old = phi.color(f);
        if phi.set_color(g, f, None).is_err() || phi.set_color(g, f, Some(carry)).is_err() {
            return false;
        }
        match old {
            Some(c) => carry = c,
            None => break,
        }
    }
    true
}
