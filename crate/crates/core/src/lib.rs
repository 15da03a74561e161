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

//! Multigraph edge coloring: Kempe chains, Vizing fans, Tashkinov trees,
//! density and clique bounds, and an exact chromatic-index oracle.

pub mod bounds;
pub mod clique;
pub mod coloring;
pub mod colorset;
pub mod error;
pub mod generate;
pub mod lemma;
pub mod multigraph;
pub mod oracle;
pub mod rational;
pub mod suites;
pub mod tashkinov;

pub use bounds::{BoundReport, Rank, SubgraphMode, Verdict};
pub use coloring::{ComponentShape, KempeComponent, PartialEdgeColoring};
pub use colorset::{Color, ColorSet, MAX_COLORS};
pub use error::{Error, Result};
pub use generate::{generate, GraphFamilySpec};
pub use multigraph::{EdgeId, Multigraph, Vertex};
pub use oracle::Certification;
pub use rational::Rational;
