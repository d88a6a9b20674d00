use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use skewrank::classify::{catalog_rank4, classify_applicable, classify_as, CatalogClass};
use skewrank::graph::{generate_family, girth, parse_sgr, Family, FamilySpec, OrientationRule};
use skewrank::harness::{verify, verify_graph, EnumFilter, GraphClass, TheoremId};
use skewrank::linalg::{char_poly_exact, skew_adjacency, CharPoly};
use skewrank::matching::matching_number;
use skewrank::reductions::{delta_class, delta_reduce, twin_reduce};
use skewrank::spectra::coefficients_comb;
use skewrank::{skew_rank, OrientedGraph};

/// Exact skew-rank computations on oriented graphs stored as `.sgr` files.
#[derive(Parser)]
#[command(name = "skewrank", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Skew-rank, matching number and girth.
    Rank { file: PathBuf },
    /// Characteristic polynomial coefficients by elimination and by basic
    /// subgraphs.
    Charpoly { file: PathBuf },
    /// Run one classifier, or every applicable one.
    Classify {
        file: PathBuf,
        #[arg(long)]
        theorem: Option<String>,
    },
    /// Reduction trace.
    Reduce {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "delta")]
        mode: ReduceMode,
    },
    /// Write a named graph as `.sgr`.
    Gen {
        #[arg(long, value_enum)]
        family: FamilyName,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Part sizes for complete multipartite graphs, e.g. `2,3`.
        #[arg(long, value_delimiter = ',')]
        parts: Vec<usize>,
        /// `uniform-cyclic`, `all-from-first-part` or `random:SEED`.
        #[arg(long, default_value = "uniform-cyclic")]
        orient: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a theorem over enumerated graphs, or replay one graph.
    Verify {
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        /// Restrict to connected graphs.
        #[arg(long)]
        connected: bool,
        #[arg(long, value_enum)]
        class: Option<ClassName>,
        /// Random instances per order instead of exhaustive enumeration.
        #[arg(long, requires = "seed")]
        sample: Option<usize>,
        /// Random orientations per underlying graph.
        #[arg(long, requires = "seed", conflicts_with = "sample")]
        per_graph: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Write the full report here; stdout then gets a summary.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Check only the graph in this `.sgr` file.
        #[arg(long)]
        replay: Option<PathBuf>,
    },
    /// Underlying graphs with a skew-rank 4 orientation.
    Catalog {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        class: CatalogName,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceMode {
    Delta,
    Twin,
    /// δ-reduction plus the unicyclic class and its confluence flag.
    Class,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Path,
    Cycle,
    Star,
    CompleteMultipartite,
    Hnk,
    Ustar,
    G1,
    K112,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassName {
    Any,
    Tree,
    Unicyclic,
    Bicyclic,
    HasPendant,
}

#[derive(Clone, Copy, ValueEnum)]
enum CatalogName {
    Unicyclic,
    Bicyclic,
}

fn read_graph(path: &Path) -> Result<OrientedGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_sgr(&text).with_context(|| format!("parsing {}", path.display()))
}

fn print_text(text: &str) -> Result<()> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        // A closed pipe (`| head`) is not an error worth reporting.
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn print_json(v: &impl serde::Serialize) -> Result<()> {
    print_text(&(serde_json::to_string_pretty(v)? + "\n"))
}

fn orientation_rule(s: &str) -> Result<OrientationRule> {
    Ok(match s {
        "uniform-cyclic" => OrientationRule::UniformCyclic,
        "all-from-first-part" => OrientationRule::AllFromFirstPart,
        _ => match s.strip_prefix("random:") {
            Some(seed) => OrientationRule::SeedRandom(seed.parse().context("random seed")?),
            None => bail!("unknown orientation rule `{s}`"),
        },
    })
}

fn family(name: FamilyName, n: Option<usize>, k: Option<usize>, parts: Vec<usize>) -> Result<Family> {
    let need = |v: Option<usize>, flag: &str| v.with_context(|| format!("--{flag} is required"));
    Ok(match name {
        FamilyName::Path => Family::Path { n: need(n, "n")? },
        FamilyName::Cycle => Family::Cycle { n: need(n, "n")? },
        FamilyName::Star => Family::Star { n: need(n, "n")? },
        FamilyName::CompleteMultipartite => {
            if parts.is_empty() {
                bail!("--parts is required");
            }
            Family::CompleteMultipartite { parts }
        }
        FamilyName::Hnk => Family::Hnk {
            n: need(n, "n")?,
            k: need(k, "k")?,
        },
        FamilyName::Ustar => Family::UStar {
            n: need(n, "n")?,
            k: need(k, "k")?,
        },
        FamilyName::G1 => Family::G1,
        FamilyName::K112 => Family::K112,
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Rank { file } => {
            let g = read_graph(&file)?;
            print_json(&json!({
                "order": g.order(),
                "size": g.size(),
                "skew_rank": skew_rank(&g),
                "matching_number": matching_number(&g),
                "girth": girth(&g).length(),
            }))?;
        }
        Command::Charpoly { file } => {
            let g = read_graph(&file)?;
            let exact = char_poly_exact(&skew_adjacency(&g));
            let comb = CharPoly::from_coefficients(coefficients_comb(&g));
            print_json(&json!({
                "exact": exact,
                "combinatorial": comb,
                "match": exact == comb,
            }))?;
        }
        Command::Classify { file, theorem } => {
            let g = read_graph(&file)?;
            match theorem {
                Some(id) => print_json(&classify_as(&g, &id)?)?,
                None => print_json(&classify_applicable(&g))?,
            }
        }
        Command::Reduce { file, mode } => {
            let g = read_graph(&file)?;
            match mode {
                ReduceMode::Delta => print_json(&delta_reduce(&g))?,
                ReduceMode::Twin => print_json(&twin_reduce(&g))?,
                ReduceMode::Class => print_json(&delta_class(&g)?)?,
            }
        }
        Command::Gen {
            family: name,
            n,
            k,
            parts,
            orient,
            output,
        } => {
            let spec = FamilySpec::new(family(name, n, k, parts)?, orientation_rule(&orient)?);
            let text = generate_family(&spec)?.to_sgr();
            match output {
                Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => print_text(&text)?,
            }
        }
        Command::Verify {
            theorem,
            min_n,
            max_n,
            connected,
            class,
            sample,
            per_graph,
            seed,
            json,
            replay,
        } => {
            let id: TheoremId = theorem.parse()?;
            let report = match replay {
                Some(path) => verify_graph(id, &read_graph(&path)?),
                None => {
                    let mut f = EnumFilter::exhaustive(min_n, max_n);
                    if connected {
                        f = f.connected();
                    }
                    if let Some(c) = class {
                        f = f.with_class(match c {
                            ClassName::Any => GraphClass::Any,
                            ClassName::Tree => GraphClass::Tree,
                            ClassName::Unicyclic => GraphClass::Unicyclic,
                            ClassName::Bicyclic => GraphClass::Bicyclic,
                            ClassName::HasPendant => GraphClass::HasPendant,
                        });
                    }
                    let seed = seed.unwrap_or(0);
                    if let Some(count) = sample {
                        f = f.sampled(count, seed);
                    } else if let Some(count) = per_graph {
                        f = f.per_underlying(count, seed);
                    }
                    verify(id, &f)?
                }
            };
            match json {
                Some(path) => {
                    fs::write(&path, serde_json::to_string_pretty(&report)?)
                        .with_context(|| format!("writing {}", path.display()))?;
                    let summary: Value = json!({
                        "theorem_id": report.theorem_id,
                        "instances_checked": report.instances_checked,
                        "applicable": report.applicable,
                        "violation_count": report.violation_count,
                        "passed": report.passed,
                        "documented_discrepancy": report.documented_discrepancy,
                        "elapsed_ms": report.elapsed_ms,
                    });
                    print_json(&summary)?;
                }
                None => print_json(&report)?,
            }
            if !report.ok() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Catalog { n, class } => {
            let class = match class {
                CatalogName::Unicyclic => CatalogClass::Unicyclic,
                CatalogName::Bicyclic => CatalogClass::Bicyclic,
            };
            print_json(&catalog_rank4(n, class)?)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
