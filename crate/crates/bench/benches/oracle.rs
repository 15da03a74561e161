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

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use kempe_bench::{corpus, petersen, tight_cycles};
use kempe_core::bounds::{bound_report, goldberg_density};
use kempe_core::oracle::{
    chromatic_index_exact, is_critical, sample_coloring, DEFAULT_NODE_BUDGET,
};
use kempe_core::tashkinov::grow_tashkinov_tree;

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("chromatic_index");
    for (k, g) in tight_cycles() {
        group.bench_with_input(BenchmarkId::new("c5", k), &g, |b, g| {
            b.iter(|| chromatic_index_exact(black_box(g), DEFAULT_NODE_BUDGET).unwrap())
        });
    }
    let p = petersen();
    group.bench_function("petersen", |b| {
        b.iter(|| chromatic_index_exact(black_box(&p), DEFAULT_NODE_BUDGET).unwrap())
    });
    let graphs = corpus(50, 7);
    group.bench_function("corpus50", |b| {
        b.iter(|| {
            graphs
                .iter()
                .map(|g| chromatic_index_exact(g, DEFAULT_NODE_BUDGET).unwrap())
                .sum::<usize>()
        })
    });
    group.finish();

    let (_, c53) = tight_cycles().swap_remove(2);
    c.bench_function("is_critical/c5^3", |b| {
        b.iter(|| is_critical(black_box(&c53), DEFAULT_NODE_BUDGET).unwrap())
    });
}

fn bounds(c: &mut Criterion) {
    let graphs = corpus(50, 7);
    c.bench_function("goldberg_density/corpus50", |b| {
        b.iter(|| {
            graphs
                .iter()
                .map(|g| goldberg_density(g).unwrap())
                .sum::<usize>()
        })
    });
    c.bench_function("bound_report/corpus50", |b| {
        b.iter(|| {
            graphs
                .iter()
                .map(|g| bound_report(g).unwrap().delta_q)
                .sum::<usize>()
        })
    });
}

fn trees(c: &mut Criterion) {
    let (_, g) = tight_cycles().swap_remove(2);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let phi = sample_coloring(&g, 7, Some(0), &mut rng, DEFAULT_NODE_BUDGET)
        .unwrap()
        .unwrap();
    c.bench_function("tashkinov_tree/c5^3", |b| {
        b.iter(|| grow_tashkinov_tree(black_box(&phi), &g, 0).unwrap())
    });
}

criterion_group!(benches, oracle, bounds, trees);
criterion_main!(benches);
