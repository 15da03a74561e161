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

//! Instance generators: thickened odd cycles, seeded random multigraphs and
//! a handful of named graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::multigraph::Multigraph;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GraphFamilySpec {
    /// Odd cycle `v_0 .. v_{2t}` where `v_i v_{i+1}` has multiplicity
    /// `multiplicities[i]`.
    ThickenedCycle {
        multiplicities: Vec<usize>,
    },
    /// Erdős–Rényi simple skeleton with edge probability `p`, then each
    /// skeleton edge replaced by a uniform number of parallel copies in
    /// `1..=max_mu`.
    Random {
        n: usize,
        p: f64,
        max_mu: usize,
        seed: u64,
    },
    Named {
        name: String,
    },
}

pub const NAMED_GRAPHS: &[&str] = &[
    "fig-nonmonotone",
    "petersen",
    "k2",
    "k3",
    "k4",
    "claw",
    "k3-plus-pendant",
];

pub fn generate(spec: &GraphFamilySpec) -> Result<Multigraph> {
    match spec {
        GraphFamilySpec::ThickenedCycle { multiplicities } => thickened_cycle(multiplicities),
        GraphFamilySpec::Random { n, p, max_mu, seed } => random_multigraph(*n, *p, *max_mu, *seed),
        GraphFamilySpec::Named { name } => named(name),
    }
}

pub fn thickened_cycle(multiplicities: &[usize]) -> Result<Multigraph> {
    let len = multiplicities.len();
    if len < 3 || len.is_multiple_of(2) {
        return Err(invalid(format!(
            "thickened cycle length must be odd and at least 3, got {len}"
        )));
    }
    if let Some(i) = multiplicities.iter().position(|&x| x == 0) {
        return Err(invalid(format!("multiplicity {i} is zero")));
    }
    let mut g = Multigraph::new(len);
    for (i, &x) in multiplicities.iter().enumerate() {
        for _ in 0..x {
            g.add_edge(i, (i + 1) % len)?;
        }
    }
    Ok(g)
}

pub fn random_multigraph(n: usize, p: f64, max_mu: usize, seed: u64) -> Result<Multigraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("edge probability {p} outside [0, 1]")));
    }
    if max_mu == 0 {
        return Err(invalid("max_mu must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Multigraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                for _ in 0..rng.gen_range(1..=max_mu) {
                    g.add_edge(u, v)?;
                }
            }
        }
    }
    Ok(g)
}

pub fn named(name: &str) -> Result<Multigraph> {
    let g = match name {
        "fig-nonmonotone" => fig_nonmonotone(),
        "petersen" => {
            let mut edges = Vec::new();
            for i in 0..5 {
                edges.push((i, (i + 1) % 5));
                edges.push((i, i + 5));
                edges.push((i + 5, (i + 2) % 5 + 5));
            }
            Multigraph::from_edges(10, &edges)?
        }
        "k2" => Multigraph::from_edges(2, &[(0, 1)])?,
        "k3" => Multigraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)])?,
        "k4" => Multigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])?,
        "claw" => Multigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)])?,
        "k3-plus-pendant" => Multigraph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)])?,
        other => {
            return Err(invalid(format!(
                "unknown named graph `{other}` (known: {})",
                NAMED_GRAPHS.join(", ")
            )))
        }
    };
    Ok(g)
}

/// Vertex of [`fig_nonmonotone`] whose deletion raises `gamma_3`.
pub const FIG_NONMONOTONE_APEX: usize = 0;

/// The 17-vertex graph on which `gamma_r` fails to be monotone for r >= 3.
///
/// Vertex 0 is the apex, adjacent to the hubs 1 and 2, which are adjacent to
/// each other. The seven rungs are `{3,4}, {5,6}, .., {15,16}`; hub 1 is
/// adjacent to the odd end of every rung and hub 2 to the even end.
pub fn fig_nonmonotone() -> Multigraph {
    let mut g = Multigraph::new(17);
    let mut add = |u, v| {
        g.add_edge(u, v).expect("static graph");
    };
    add(0, 1);
    add(0, 2);
    add(1, 2);
    for rung in 0..7 {
        let (a, b) = (3 + 2 * rung, 4 + 2 * rung);
        add(a, b);
        add(1, a);
        add(2, b);
    }
    g
}
