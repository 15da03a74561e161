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

//! Acceptance run: one PASS/FAIL line per criterion. Quantities that the
//! library computes are recomputed here by naive independent code wherever
//! that is affordable.

use std::collections::{BTreeSet, VecDeque};
use std::ops::ControlFlow;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kempe_core::bounds::{gamma_r, gamma_tilde_r, goldberg_density, slacked_identity_check};
use kempe_core::generate::{fig_nonmonotone, thickened_cycle, FIG_NONMONOTONE_APEX};
use kempe_core::lemma::{check_parallel_edge_lemma, check_tashkinov_elementary};
use kempe_core::oracle::{
    certify, chromatic_index_exact, critical_subgraph, enumerate_colorings, sample_coloring, solve,
    vertex_chromatic_number, EnumerationMode, DEFAULT_NODE_BUDGET,
};
use kempe_core::suites::{corpus_instance, cycle_instance, CorpusConfig};
use kempe_core::tashkinov::{derive_seed, grow_tashkinov_tree};
use kempe_core::{
    Color, ComponentShape, Error, Multigraph, PartialEdgeColoring, Rank, Rational, SubgraphMode,
    Vertex,
};

const B: u64 = DEFAULT_NODE_BUDGET;

type Q = Ratio<i64>;

// ---- independent oracles ----

fn degrees(g: &Multigraph) -> Vec<usize> {
    let mut d = vec![0; g.vertex_count()];
    for &(u, v) in g.edges() {
        d[u] += 1;
        d[v] += 1;
    }
    d
}

fn mult(g: &Multigraph, a: Vertex, b: Vertex) -> usize {
    g.edges()
        .iter()
        .filter(|&&(u, v)| (u, v) == (a, b) || (u, v) == (b, a))
        .count()
}

fn proper(g: &Multigraph, k: usize, colors: &[Option<Color>]) -> bool {
    let mut used = vec![vec![false; k]; g.vertex_count()];
    for (e, c) in colors.iter().enumerate() {
        let Some(c) = *c else { continue };
        if c >= k {
            return false;
        }
        let (u, v) = g.edges()[e];
        if used[u][c] || used[v][c] {
            return false;
        }
        used[u][c] = true;
        used[v][c] = true;
    }
    true
}

fn density_brute(g: &Multigraph) -> usize {
    let n = g.vertex_count();
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size < 2 {
            continue;
        }
        let inside = g
            .edges()
            .iter()
            .filter(|&&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1)
            .count();
        best = best.max(inside.div_ceil(size / 2));
    }
    best
}

fn delta_q(g: &Multigraph) -> usize {
    let d = degrees(g);
    g.edges()
        .iter()
        .map(|&(u, v)| d[u] + d[v] - mult(g, u, v) - 1)
        .max()
        .unwrap_or(0)
}

// Cliques of a line graph are stars and triangles.
fn omega_lg(g: &Multigraph) -> usize {
    let n = g.vertex_count();
    let mut best = *degrees(g).iter().max().unwrap_or(&0);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let (x, y, z) = (mult(g, a, b), mult(g, b, c), mult(g, a, c));
                if x > 0 && y > 0 && z > 0 {
                    best = best.max(x + y + z);
                }
            }
        }
    }
    best
}

// ceil(4/3 * d_claw).
fn claw_ceil(g: &Multigraph) -> usize {
    let d = degrees(g);
    let mut best = 0;
    for x in 0..g.vertex_count() {
        let nb: Vec<Vertex> = (0..g.vertex_count())
            .filter(|&v| v != x && mult(g, x, v) > 0)
            .collect();
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                for l in j + 1..nb.len() {
                    best = best.max((d[x] + d[nb[i]] + d[nb[j]] + d[nb[l]]).div_ceil(3));
                }
            }
        }
    }
    best
}

fn colorable(g: &Multigraph, k: usize, e: usize, colors: &mut Vec<Option<Color>>) -> bool {
    if e == g.edge_count() {
        return true;
    }
    for c in 0..k {
        colors[e] = Some(c);
        if proper(g, k, &colors[..=e]) && colorable(g, k, e + 1, colors) {
            return true;
        }
    }
    colors[e] = None;
    false
}

fn chi_prime_brute(g: &Multigraph) -> usize {
    let mut k = *degrees(g).iter().max().unwrap_or(&0);
    while !colorable(g, k, 0, &mut vec![None; g.edge_count()]) {
        k += 1;
    }
    k
}

fn count_colorings(
    g: &Multigraph,
    k: usize,
    skip: Option<usize>,
    e: usize,
    colors: &mut Vec<Option<Color>>,
) -> u64 {
    if e == g.edge_count() {
        return 1;
    }
    if Some(e) == skip {
        return count_colorings(g, k, skip, e + 1, colors);
    }
    let mut total = 0;
    for c in 0..k {
        colors[e] = Some(c);
        if proper(g, k, &colors[..=e]) {
            total += count_colorings(g, k, skip, e + 1, colors);
        }
    }
    colors[e] = None;
    total
}

fn bfs_kempe(
    g: &Multigraph,
    colors: &[Option<Color>],
    v: Vertex,
    a: Color,
    b: Color,
) -> BTreeSet<Vertex> {
    let mut seen = BTreeSet::from([v]);
    let mut queue = VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        for (e, &(u, w)) in g.edges().iter().enumerate() {
            if colors[e] != Some(a) && colors[e] != Some(b) {
                continue;
            }
            let y = if u == x {
                w
            } else if w == x {
                u
            } else {
                continue;
            };
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}

fn rat(x: Rational) -> Q {
    Q::new(x.numer(), x.denom())
}

// ---- shared corpus ----

struct Inst {
    g: Multigraph,
    chi: usize,
    w: usize,
    delta: usize,
    dq: usize,
}

fn main_corpus() -> Vec<Inst> {
    let cfg = CorpusConfig {
        count: 500,
        seed: 7,
        max_n: 7,
        max_mu: 4,
        samples: 0,
    };
    (0..cfg.count)
        .map(|i| {
            let (_, g) = corpus_instance(&cfg, i).unwrap();
            let (chi, phi) = solve(&g, B).unwrap();
            assert!(
                proper(&g, chi, phi.assignment()),
                "instance {i}: oracle coloring improper"
            );
            assert!(phi.assignment().iter().all(Option::is_some));
            Inst {
                chi,
                w: density_brute(&g),
                delta: *degrees(&g).iter().max().unwrap(),
                dq: delta_q(&g),
                g,
            }
        })
        .collect()
}

type Outcome = (bool, String);
type Criterion<'a> = Box<dyn FnOnce() -> Outcome + 'a>;

// ---- criteria ----

fn ac1() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for k in 1..=5usize {
        let g = thickened_cycle(&[k; 5]).unwrap();
        let t = Instant::now();
        let (chi, phi) = solve(&g, B).unwrap();
        let secs = t.elapsed().as_secs_f64();
        let expect = (5 * k).div_ceil(2);
        let w = density_brute(&g);
        let mut good =
            chi == expect && w == chi && goldberg_density(&g).unwrap() == chi && secs < 60.0;
        good &= proper(&g, chi, phi.assignment());
        if k % 2 == 1 {
            let dq = delta_q(&g);
            let omega = omega_lg(&g);
            good &=
                dq == 3 * k - 1 && (5 * dq + 3).div_ceil(6) == chi && omega == 2 * k && omega < chi;
        }
        ok &= good;
        notes.push(format!("k={k}: chi'={chi} W={w} ({secs:.2}s)"));
    }
    (ok, notes.join(", "))
}

fn ac2(corpus: &[Inst]) -> Outcome {
    let mut bad = Vec::new();
    let mut brute = 0;
    for (i, x) in corpus.iter().enumerate() {
        let bound = omega_lg(&x.g).max((5 * x.dq + 3).div_ceil(6));
        let lower_ok = x.chi >= x.delta.max(x.w);
        let cross = if x.g.edge_count() <= 12 {
            brute += 1;
            chi_prime_brute(&x.g) == x.chi
        } else {
            true
        };
        if x.chi > bound || !lower_ok || !cross {
            bad.push(i);
        }
    }
    (
        bad.is_empty() && corpus.len() >= 500,
        format!(
            "{} instances, {brute} cross-checked by brute force, violations {bad:?}",
            corpus.len()
        ),
    )
}

fn ac3(corpus: &[Inst]) -> Outcome {
    let mut gs = Vec::new();
    let mut weak = Vec::new();
    for (i, x) in corpus.iter().enumerate() {
        if !(x.w <= x.chi && x.chi <= x.w.max(x.delta + 1)) {
            gs.push(i);
        }
        if x.chi > x.w.max(x.delta + 1).max((5 * x.dq + 8) / 6) {
            weak.push(i);
        }
    }
    let elementary = corpus
        .iter()
        .filter(|x| x.chi == x.w && x.chi > x.delta)
        .count();
    (
        gs.is_empty() && weak.is_empty(),
        format!(
            "{} instances ({elementary} with chi' = W > Δ), density violations {gs:?}, weak violations {weak:?}",
            corpus.len()
        ),
    )
}

// Independent replay of a grown tree: growth rule, maximality, elementarity.
fn tree_ok(g: &Multigraph, k: usize, phi: &PartialEdgeColoring, root: usize) -> bool {
    let t = grow_tashkinov_tree(phi, g, root).unwrap();
    let colors = phi.assignment();
    let missing = |v: Vertex| -> BTreeSet<Color> {
        let mut m: BTreeSet<Color> = (0..k).collect();
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            if a == v || b == v {
                if let Some(c) = colors[e] {
                    m.remove(&c);
                }
            }
        }
        m
    };
    let mut pool: BTreeSet<Color> = missing(t.vertices[0])
        .union(&missing(t.vertices[1]))
        .copied()
        .collect();
    for i in 1..t.edges.len() {
        let (a, b) = g.edges()[t.edges[i]];
        let new = t.vertices[i + 1];
        let old = if a == new { b } else { a };
        if !t.vertices[..=i].contains(&old)
            || !colors[t.edges[i]].is_some_and(|c| pool.contains(&c))
        {
            return false;
        }
        pool.extend(missing(new));
    }
    let inside: BTreeSet<Vertex> = t.vertices.iter().copied().collect();
    let extendable = g.edges().iter().enumerate().any(|(e, &(a, b))| {
        inside.contains(&a) != inside.contains(&b) && colors[e].is_some_and(|c| pool.contains(&c))
    });
    let mut total = 0;
    for &v in &t.vertices {
        total += missing(v).len();
    }
    let union: BTreeSet<Color> = t.vertices.iter().flat_map(|&v| missing(v)).collect();
    !extendable && total == union.len()
}

fn ac4() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for len in [5usize, 7] {
        let mut qualifying = Vec::new();
        for mask in 0u32..(1 << len) {
            let mults: Vec<usize> = (0..len).map(|i| 2 + (mask >> i & 1) as usize).collect();
            let g = thickened_cycle(&mults).unwrap();
            let cert = certify(&g, true, B).unwrap();
            if cert.is_lemma_instance(1) {
                qualifying.push((mults, cert.chi_prime - 1));
            }
        }
        let mut samples = 0;
        let mut violations = 0;
        if let Some((mults, k)) = qualifying.first() {
            let g = thickened_cycle(mults).unwrap();
            let r = check_tashkinov_elementary(&g, *k, 100, 4).unwrap();
            samples += r.satisfied;
            violations += r.violations.len();
            for i in 0..100 {
                let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(40, i));
                let e = rng.gen_range(0..g.edge_count());
                let phi = sample_coloring(&g, *k, Some(e), &mut rng, B)
                    .unwrap()
                    .unwrap();
                if !proper(&g, *k, phi.assignment()) || !tree_ok(&g, *k, &phi, e) {
                    violations += 1;
                }
            }
        }
        let good = samples >= 100 && violations == 0;
        ok &= good;
        notes.push(format!(
            "C{len}: {} of {} multiplicity vectors in {{2,3}} certified with k >= Δ + 1, {samples} samples, {violations} violations",
            qualifying.len(),
            1 << len
        ));
    }
    let c74 = thickened_cycle(&[4; 7]).unwrap();
    let r = check_tashkinov_elementary(&c74, 9, 100, 5).unwrap();
    notes.push(format!(
        "supplementary C7 multiplicity 4: {} samples, {} violations",
        r.satisfied,
        r.violations.len()
    ));
    (ok, notes.join("; "))
}

fn ac5() -> Outcome {
    let cases: [(&[usize], usize); 5] = [
        (&[2, 2, 2], 5),
        (&[3, 3, 3], 8),
        (&[3; 5], 7),
        (&[5; 5], 12),
        (&[4; 7], 9),
    ];
    let (mut sat, mut viol, mut unsat) = (0, 0, 0);
    for (i, (mults, k)) in cases.iter().enumerate() {
        let g = thickened_cycle(mults).unwrap();
        let r = check_parallel_edge_lemma(&g, *k, 60, i as u64).unwrap();
        assert!(r.is_consistent());
        sat += r.satisfied;
        viol += r.violations.len();
        unsat += r.notes.get("hypothesis_unsatisfied").copied().unwrap_or(0);
    }
    (
        sat >= 1000 && viol == 0,
        format!("{sat} satisfied configurations, {unsat} with unsatisfied hypothesis, {viol} violations"),
    )
}

fn slacked_independent(g: &Multigraph, k: usize, x: Vertex, eps: Q, beta: Q) -> bool {
    let n = g.vertex_count();
    let d = degrees(g);
    let delta = *d.iter().max().unwrap();
    let dq = delta_q(g);
    let nb: Vec<Vertex> = (0..n).filter(|&v| v != x && mult(g, x, v) > 0).collect();
    let s1: usize = nb
        .iter()
        .map(|&v| dq - (d[x] + d[v] - mult(g, x, v) - 1))
        .sum();
    let s2: usize = 2
        + (0..n)
            .filter(|v| !nb.contains(v))
            .map(|v| delta - d[v])
            .sum::<usize>();
    let s3 = k as i64 - delta as i64 - 1;
    let i = |v: usize| Q::from_integer(v as i64);
    let num = eps
        * (i(n) - i(delta) - i(d[x]) - Q::from_integer(1)
            + i(s1)
            + i(s2)
            + Q::from_integer(s3 * (n as i64 - 1)));
    let den = (Q::from_integer(1) - eps) * i(delta) - eps * i(d[x]) + Q::from_integer(1) - beta
        + Q::from_integer(s3);
    den != Q::from_integer(0) && num / den == i(nb.len())
}

fn ac6() -> Outcome {
    let cases: [(&[usize], usize, (i64, i64)); 3] = [
        (&[3; 5], 7, (-1, 2)),
        (&[5; 5], 12, (-1, 2)),
        (&[4; 7], 9, (-1, 1)),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    let eps = Q::new(5, 6);
    for (mults, k, (bn, bd)) in cases {
        let g = thickened_cycle(mults).unwrap();
        let cert = certify(&g, true, B).unwrap();
        let beta = Q::new(bn, bd);
        let k_matches =
            Q::from_integer(k as i64) == eps * Q::from_integer(delta_q(&g) as i64 + 1) + beta;
        let mut good = cert.critical == Some(true)
            && cert.elementary()
            && cert.chi_prime == k + 1
            && k_matches;
        for x in 0..g.vertex_count() {
            let lib =
                slacked_identity_check(&g, k, x, Rational::new(5, 6), Rational::new(bn, bd), &cert);
            good &= lib == Ok(true) && slacked_independent(&g, k, x, eps, beta);
        }
        ok &= good;
        notes.push(format!(
            "{mults:?} k={k} beta={beta}: {}",
            if good {
                "equal at every vertex"
            } else {
                "mismatch"
            }
        ));
    }
    (ok, notes.join("; "))
}

fn ac7(corpus: &[Inst]) -> Outcome {
    let cfg = CorpusConfig {
        count: 100,
        seed: 7,
        max_n: 7,
        max_mu: 4,
        samples: 0,
    };
    let mut graphs: Vec<Multigraph> = corpus.iter().map(|x| x.g.clone()).collect();
    graphs.extend((0..cfg.count).map(|i| cycle_instance(&cfg, i).unwrap().1));
    graphs.push(thickened_cycle(&[1, 1, 2]).unwrap());
    graphs.push(thickened_cycle(&[4; 7]).unwrap());
    let mut seen = BTreeSet::new();
    let (mut certified, mut parity_ok) = (0, 0);
    let mut failures = Vec::new();
    for g in graphs {
        let h = critical_subgraph(&g, B).unwrap();
        let cert = certify(&h, true, B).unwrap();
        if cert.critical != Some(true)
            || !cert.elementary()
            || !cert.is_lemma_instance(0)
            || !seen.insert((h.vertex_count(), h.pairs()))
        {
            continue;
        }
        certified += 1;
        let (n, m, k) = (h.vertex_count(), h.edge_count(), cert.chi_prime - 1);
        if n % 2 == 1 && k * (n - 1) == 2 * (m - 1) {
            parity_ok += 1;
        }
        if !(m % 2 == 1 && k * (n - 1) == 2 * (m - 1)) {
            failures.push(format!("n={n} m={m} k={k}"));
        }
    }
    let shown: Vec<_> = failures.iter().take(4).cloned().collect();
    (
        failures.is_empty() && certified > 0,
        format!(
            "{certified} distinct certified instances, {} fail the ||G|| odd form (e.g. {}), {parity_ok} satisfy |G| odd with the same size identity",
            failures.len(),
            shown.join(", ")
        ),
    )
}

fn gamma_independent(g: &Multigraph, q: &Multigraph) -> (Q, Q) {
    // vertex i of q is edge i of g
    let (dg, mq) = (degrees(g), q.vertex_count());
    let dq = degrees(q);
    let omega: Vec<usize> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let tri = (0..g.vertex_count())
                .filter(|&z| z != u && z != v && mult(g, u, z) > 0 && mult(g, v, z) > 0)
                .map(|z| mult(g, u, v) + mult(g, u, z) + mult(g, v, z))
                .max()
                .unwrap_or(0);
            dg[u].max(dg[v]).max(tri)
        })
        .collect();
    let f = |v: usize| Q::new((dq[v] + omega[v] + 1) as i64, 2);
    let g1 = (0..mq).map(f).max().unwrap();
    let mut g2 = Q::from_integer(0);
    for v in (0..mq).filter(|&v| dq[v] == 0) {
        g2 = g2.max(f(v));
    }
    for &(a, b) in q.edges() {
        g2 = g2.max((f(a) + f(b)) / 2);
    }
    (g1, g2)
}

fn ac8() -> Outcome {
    let fig = fig_nonmonotone();
    let full = gamma_r(&fig, Rank::Finite(3)).unwrap();
    let minus = gamma_r(&fig.without_vertex(FIG_NONMONOTONE_APEX), Rank::Finite(3)).unwrap();
    let fig_ok = full == Rational::new(16, 3) && minus == Rational::new(11, 2);
    let cfg = CorpusConfig {
        count: 50,
        seed: 21,
        max_n: 6,
        max_mu: 3,
        samples: 0,
    };
    let mut bad = Vec::new();
    for i in 0..cfg.count {
        let (_, g) = corpus_instance(&cfg, i).unwrap();
        let q = g.line_graph();
        let ranks = [
            Rank::Finite(1),
            Rank::Finite(2),
            Rank::Finite(3),
            Rank::Infinite,
        ];
        let gam: Vec<Rational> = ranks.iter().map(|&r| gamma_r(&q, r).unwrap()).collect();
        let (i1, i2) = gamma_independent(&g, &q);
        let mut good = rat(gam[0]) == i1 && rat(gam[1]) == i2;
        good &= gam.windows(2).all(|w| w[0] >= w[1]);
        for x in 0..q.vertex_count() {
            let h = q.without_vertex(x);
            if h.vertex_count() == 0 {
                continue;
            }
            good &= gamma_r(&h, Rank::Finite(1)).unwrap() <= gam[0];
            good &= gamma_r(&h, Rank::Finite(2)).unwrap() <= gam[1];
        }
        let chi = chromatic_index_exact(&g, B).unwrap();
        good &= vertex_chromatic_number(&q, B).unwrap() == chi;
        let tilde = gamma_tilde_r(&q, Rank::Finite(3), SubgraphMode::Induced).unwrap();
        for b in [gam[0], gam[1], tilde] {
            good &= (chi as i64) <= b.ceil();
        }
        if !good {
            bad.push(i);
        }
    }
    (
        fig_ok && bad.is_empty(),
        format!(
            "gamma_3 = {full}, after deleting the apex {minus}; {} line graphs, violations {bad:?}",
            cfg.count
        ),
    )
}

fn ac9(corpus: &[Inst]) -> Outcome {
    let bad: Vec<usize> = corpus
        .iter()
        .enumerate()
        .filter(|(_, x)| x.chi > x.w.max(x.delta + 1).max(claw_ceil(&x.g)))
        .map(|(i, _)| i)
        .collect();
    (
        bad.is_empty(),
        format!("{} instances, violations {bad:?}", corpus.len()),
    )
}

fn kernel_walk(
    g: &Multigraph,
    k: usize,
    ops: usize,
    seed: u64,
) -> Result<(usize, usize, usize), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e0 = rng.gen_range(0..g.edge_count());
    let mut phi = sample_coloring(g, k, Some(e0), &mut rng, B)
        .map_err(|e| e.to_string())?
        .ok_or("no coloring")?;
    let (mut swaps, mut rotations, mut refused) = (0, 0, 0);
    for step in 0..ops {
        let fail = |m: &str| Err(format!("step {step}: {m}"));
        if rng.gen_bool(0.5) {
            let v = rng.gen_range(0..g.vertex_count());
            let a = rng.gen_range(0..k);
            let b = (a + rng.gen_range(1..k)) % k;
            let comp = phi.kempe_component(g, v, a, b).unwrap();
            let set: BTreeSet<Vertex> = comp.vertices.iter().copied().collect();
            if set != bfs_kempe(g, phi.assignment(), v, a, b) {
                return fail("component differs from BFS");
            }
            let before = phi.clone();
            phi.kempe_swap(g, &comp).unwrap();
            if phi.kempe_swap(g, &comp) != Err(Error::StaleComponent) {
                return fail("stale component accepted");
            }
            if !proper(g, k, phi.assignment()) {
                return fail("swap broke properness");
            }
            let again = phi.kempe_component(g, v, a, b).unwrap();
            if phi.swapped(g, &again).unwrap() != before {
                return fail("swap is not an involution");
            }
            swaps += 1;
        } else {
            let holes = phi.uncolored_edges();
            if holes.len() != 1 {
                return fail("expected one uncolored edge");
            }
            let (mut v0, mut v1) = g.endpoints(holes[0]);
            if rng.gen_bool(0.5) {
                std::mem::swap(&mut v0, &mut v1);
            }
            let ms: Vec<Color> = phi.missing(v0).iter().collect();
            let mt: Vec<Color> = phi.missing(v1).iter().collect();
            let (a, b) = (
                ms[rng.gen_range(0..ms.len())],
                mt[rng.gen_range(0..mt.len())],
            );
            if a == b {
                refused += 1;
                continue;
            }
            let path = phi.kempe_component(g, v1, a, b).unwrap();
            let before = phi.clone();
            if path.shape == ComponentShape::Path && path.vertices.last() == Some(&v0) {
                let j = rng.gen_range(1..=path.edges.len());
                let hole = phi.rotate(g, &path, holes[0], j).unwrap();
                if !proper(g, k, phi.assignment()) || phi.uncolored_edges() != vec![hole] {
                    return fail("rotation broke the coloring");
                }
                rotations += 1;
            } else {
                if !matches!(
                    phi.rotate(g, &path, holes[0], 1),
                    Err(Error::Precondition(_))
                ) || phi != before
                {
                    return fail("rotation accepted a chain that avoids v0");
                }
                refused += 1;
            }
        }
    }
    Ok((swaps, rotations, refused))
}

fn ac10() -> Outcome {
    let t = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;
    let mut total = 0;
    let mut graphs: Vec<(Multigraph, usize)> = vec![
        (thickened_cycle(&[3; 5]).unwrap(), 7),
        (thickened_cycle(&[2, 2, 2]).unwrap(), 5),
        (thickened_cycle(&[4; 7]).unwrap(), 9),
    ];
    let cfg = CorpusConfig {
        count: 0,
        seed: 31,
        max_n: 7,
        max_mu: 3,
        samples: 0,
    };
    for i in 0..5 {
        let (_, g) = corpus_instance(&cfg, i).unwrap();
        let k = chromatic_index_exact(&g, B).unwrap().max(2);
        graphs.push((g, k));
    }
    let (mut s, mut r, mut x) = (0, 0, 0);
    for (i, (g, k)) in graphs.iter().enumerate() {
        match kernel_walk(g, *k, 1250, i as u64) {
            Ok((a, b, c)) => {
                s += a;
                r += b;
                x += c;
                total += 1250;
            }
            Err(m) => {
                ok = false;
                notes.push(format!("instance {i}: {m}"));
            }
        }
    }
    notes.push(format!(
        "{total} operations: {s} swaps, {r} rotations, {x} refused"
    ));
    let cfg = CorpusConfig {
        count: 0,
        seed: 41,
        max_n: 4,
        max_mu: 2,
        samples: 0,
    };
    let mut tiny = 0;
    let mut i = 0;
    while tiny < 20 {
        let (_, g) = corpus_instance(&cfg, i).unwrap();
        i += 1;
        if g.edge_count() > 6 {
            continue;
        }
        tiny += 1;
        let delta = *degrees(&g).iter().max().unwrap();
        for k in [delta, delta + 1] {
            for skip in [None, Some(0)] {
                let mut visited = 0u64;
                let mut proper_all = true;
                enumerate_colorings(&g, skip, k, EnumerationMode::Raw, |phi| {
                    visited += 1;
                    proper_all &= proper(&g, k, phi.assignment());
                    ControlFlow::Continue(())
                })
                .unwrap();
                let naive = count_colorings(&g, k, skip, 0, &mut vec![None; g.edge_count()]);
                if visited != naive || !proper_all {
                    ok = false;
                    notes.push(format!(
                        "tiny {i}: k={k} skip={skip:?} enumerated {visited}, naive {naive}"
                    ));
                }
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    ok &= total >= 10_000 && secs < 300.0;
    notes.push(format!("{tiny} tiny instances enumerated, {secs:.1}s"));
    (ok, notes.join("; "))
}

fn guarded(f: impl FnOnce() -> Outcome) -> Outcome {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(o) => o,
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            (false, format!("panicked: {msg}"))
        }
    }
}

fn main() -> ExitCode {
    let corpus = catch_unwind(main_corpus).ok();
    let with = |f: fn(&[Inst]) -> Outcome| -> Criterion<'_> {
        match &corpus {
            Some(c) => Box::new(move || f(c)),
            None => Box::new(|| (false, "corpus construction failed".into())),
        }
    };
    let criteria: Vec<(&str, &str, Criterion<'_>)> = vec![
        ("AC1", "tight thickened five-cycles", Box::new(ac1)),
        ("AC2", "main theorem on the random corpus", with(ac2)),
        (
            "AC3",
            "density and weak bounds on the random corpus",
            with(ac3),
        ),
        (
            "AC4",
            "Tashkinov trees elementary on five- and seven-cycles",
            Box::new(ac4),
        ),
        (
            "AC5",
            "parallel edge checker on thickened cycles",
            Box::new(ac5),
        ),
        ("AC6", "slacked identity exact equality", Box::new(ac6)),
        (
            "AC7",
            "size and parity of critical elementary instances",
            with(ac7),
        ),
        ("AC8", "gamma machinery", Box::new(ac8)),
        ("AC9", "claw-degree bound on the random corpus", with(ac9)),
        ("AC10", "kernel properties", Box::new(ac10)),
    ];
    let mut failed = 0;
    for (id, what, f) in criteria {
        let t = Instant::now();
        let (pass, detail) = guarded(f);
        failed += usize::from(!pass);
        println!(
            "{id} {} {what} [{:.1}s]: {detail}",
            if pass { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
