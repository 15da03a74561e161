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

//! Fixed instances shared by the benchmarks.

use kempe_core::generate::{named, thickened_cycle};
use kempe_core::suites::{corpus_instance, CorpusConfig};
use kempe_core::Multigraph;

/// Thickened five-cycles with every multiplicity `k`.
pub fn tight_cycles() -> Vec<(usize, Multigraph)> {
    (1..=5)
        .map(|k| (k, thickened_cycle(&[k; 5]).expect("valid cycle")))
        .collect()
}

pub fn petersen() -> Multigraph {
    named("petersen").expect("named graph")
}

/// The first `count` instances of the default random corpus.
pub fn corpus(count: usize, seed: u64) -> Vec<Multigraph> {
    let cfg = CorpusConfig {
        count,
        seed,
        ..CorpusConfig::default()
    };
    (0..count)
        .map(|i| corpus_instance(&cfg, i).expect("corpus instance").1)
        .collect()
}
