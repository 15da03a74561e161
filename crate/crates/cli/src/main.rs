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

//! `kempe`: generate instances, compute bounds, query the exact oracle and
//! run verification suites. JSON goes to stdout, diagnostics to stderr.
//!
//! Exit codes: 0 success, 1 a violation was found, 2 bad input, 3 any other
//! failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use kempe_core::bounds::{bound_report, verdicts};
use kempe_core::oracle::{certify, is_critical, solve, DEFAULT_NODE_BUDGET};
use kempe_core::suites::{run_suite, CorpusConfig, Suite};
use kempe_core::{generate, Error, GraphFamilySpec, Multigraph, PartialEdgeColoring};

#[derive(Parser)]
#[command(
    name = "kempe",
    version,
    about = "Exact multigraph edge-coloring toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    ThickenedCycle,
    Random,
    Named,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    ChiPrime,
    Critical,
    Elementary,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph in the text format.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        /// Comma-separated multiplicities for thickened cycles.
        #[arg(long, value_delimiter = ',')]
        mults: Vec<usize>,
        #[arg(long)]
        name: Option<String>,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 3)]
        max_mu: usize,
        #[arg(long, env = "KEMPE_SEED", default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print every bound as JSON.
    Bounds {
        graph: PathBuf,
        /// Also compute the chromatic index and all verdicts.
        #[arg(long)]
        oracle: bool,
        /// Write an optimal coloring (implies --oracle).
        #[arg(long)]
        dump_coloring: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Run a verification suite over a seeded corpus.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, env = "KEMPE_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        #[arg(long, default_value_t = 4)]
        max_mu: usize,
        /// Sampled colorings per instance in lemma suites.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Query the exact oracle.
    Oracle {
        graph: PathBuf,
        #[arg(long, value_enum)]
        what: What,
        #[arg(long)]
        dump_coloring: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
}

fn read_graph(path: &Path) -> Result<Multigraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Multigraph::parse_text(&text).with_context(|| format!("parsing {}", path.display()))
}

fn dump(path: &Path, phi: &PartialEdgeColoring) -> Result<()> {
    fs::write(path, phi.dump()).with_context(|| format!("writing {}", path.display()))
}

fn print(v: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

// Exit code for a successful command: 1 when it found a violation.
fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Gen {
            family,
            mults,
            name,
            n,
            p,
            max_mu,
            seed,
            output,
        } => {
            let spec = match family {
                Family::ThickenedCycle => GraphFamilySpec::ThickenedCycle {
                    multiplicities: mults,
                },
                Family::Random => GraphFamilySpec::Random { n, p, max_mu, seed },
                Family::Named => GraphFamilySpec::Named {
                    name: name.ok_or_else(|| Error::InvalidInput("--name is required".into()))?,
                },
            };
            let g = generate(&spec)?;
            match output {
                Some(path) => {
                    fs::write(&path, g.to_text())
                        .with_context(|| format!("writing {}", path.display()))?;
                    eprintln!("wrote {}", path.display());
                    print(&serde_json::json!({
                        "path": path, "n": g.vertex_count(), "m": g.edge_count(), "spec": spec,
                    }))?;
                }
                None => print!("{}", g.to_text()),
            }
            Ok(0)
        }
        Command::Bounds {
            graph,
            oracle,
            dump_coloring,
            budget,
        } => {
            let g = read_graph(&graph)?;
            let report = if oracle || dump_coloring.is_some() {
                let (chi, phi) = solve(&g, budget)?;
                phi.validate(&g)?;
                if let Some(path) = dump_coloring {
                    dump(&path, &phi)?;
                }
                let critical = is_critical(&g, budget)?;
                verdicts(&g, chi, Some(critical))?
            } else {
                bound_report(&g)?
            };
            print(&report)?;
            Ok(if report.violations().is_empty() { 0 } else { 1 })
        }
        Command::Verify {
            suite,
            count,
            seed,
            max_n,
            max_mu,
            samples,
            jobs,
        } => {
            let suite: Suite = suite.parse()?;
            let cfg = CorpusConfig {
                count,
                seed,
                max_n,
                max_mu,
                samples,
            };
            let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
            eprintln!("running {suite} on {count} instances (seed {seed})");
            let summary = pool.install(|| run_suite(suite, &cfg))?;
            print(&summary)?;
            eprintln!(
                "{suite}: {} passes, {} vacuous, {} violations, {} errors",
                summary.passes, summary.vacuous, summary.violations, summary.errors
            );
            Ok(if summary.errors > 0 {
                3
            } else if summary.violations > 0 {
                1
            } else {
                0
            })
        }
        Command::Oracle {
            graph,
            what,
            dump_coloring,
            budget,
        } => {
            let g = read_graph(&graph)?;
            if let Some(path) = &dump_coloring {
                let (_, phi) = solve(&g, budget)?;
                phi.validate(&g)?;
                dump(path, &phi)?;
            }
            let out = match what {
                What::ChiPrime => {
                    let cert = certify(&g, false, budget)?;
                    serde_json::json!({ "chi_prime": cert.chi_prime })
                }
                What::Critical => serde_json::json!({ "critical": is_critical(&g, budget)? }),
                What::Elementary => {
                    let cert = certify(&g, false, budget)?;
                    serde_json::json!({
                        "elementary": cert.elementary(), "chi_prime": cert.chi_prime, "w": cert.w,
                    })
                }
            };
            print(&out)?;
            Ok(0)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    let input = err.chain().any(|c| {
        c.downcast_ref::<std::io::Error>().is_some()
            || matches!(
                c.downcast_ref::<Error>(),
                Some(Error::InvalidInput(_) | Error::Parse { .. })
            )
    });
    if input {
        2
    } else {
        3
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
