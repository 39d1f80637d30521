use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use powergraph::catalog::generate_catalog;
use powergraph::coloring::io::{read_csv, read_json, write_csv, write_json};
use powergraph::coloring::{delta_color, verify_proper, DeltaConfig, RheeConfig, Strategy};
use powergraph::groups::construct_group;
use powergraph::overfull::{core_class1_check, deficiency_report, predict_class};
use powergraph::powergraph::{build_power_graph_labeled, Graph, Labeling};
use powergraph::survey::{run_survey, SurveyOptions};

#[derive(Parser)]
#[command(name = "powergraph", version, about = "Power graphs of finite groups and their edge colorings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum ColoringFormat {
    Csv,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Build the power graph of a group.
    Build {
        /// Group spec, e.g. `cyclic:15`, `product:cyclic:3,cyclic:3`.
        spec: String,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
        /// Label vertices 1..n with the identity as n.
        #[arg(long)]
        paper_labels: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Overfullness, deficiency and core report.
    Analyze { spec: String },
    /// Predicted edge-chromatic class.
    Classify { spec: String },
    /// Produce a verified edge coloring.
    Color {
        spec: String,
        #[arg(long, default_value = "auto")]
        strategy: Strategy,
        #[arg(long, env = "POWERGRAPH_SEED")]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: ColoringFormat,
        #[arg(long)]
        paper_labels: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a coloring against a graph.
    Verify {
        /// Graph JSON file.
        #[arg(long, conflicts_with = "group", required_unless_present = "group")]
        graph: Option<PathBuf>,
        /// Build the graph from a group spec instead.
        #[arg(long)]
        group: Option<String>,
        /// Coloring file, CSV table layout or JSON (by extension).
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Sweep the catalog and check the classification theorems.
    Survey {
        #[arg(long, default_value_t = 33)]
        max_order: usize,
        #[arg(long, default_value_t = 12)]
        oracle_max_order: usize,
        #[arg(long)]
        witness: bool,
        #[arg(long, env = "POWERGRAPH_SEED")]
        seed: Option<u64>,
        /// Extra group specs to survey, e.g. `table:fixtures/c7_c3_order21.table`.
        #[arg(long = "extra")]
        extra: Vec<String>,
        /// Record per-group timings (output no longer reproducible).
        #[arg(long)]
        timing: bool,
        /// Run groups one at a time.
        #[arg(long)]
        sequential: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            let written = stdout.write_all(text.as_bytes()).and_then(|()| {
                if text.ends_with('\n') {
                    Ok(())
                } else {
                    stdout.write_all(b"\n")
                }
            });
            match written {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

fn labeling(paper: bool) -> Labeling {
    if paper {
        Labeling::Paper
    } else {
        Labeling::Names
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Build {
            spec,
            format,
            paper_labels,
            out,
        } => {
            let g = build_power_graph_labeled(&construct_group(&spec)?, labeling(paper_labels));
            let text = match format {
                GraphFormat::Json => g.to_json_string(),
                GraphFormat::Dot => g.to_dot(|_| None),
            };
            emit(&text, out.as_ref())?;
            Ok(true)
        }
        Command::Analyze { spec } => {
            let group = construct_group(&spec)?;
            let g = build_power_graph_labeled(&group, Labeling::Names);
            let (core, _) = g.core_subgraph();
            let doc = json!({
                "spec": spec,
                "order": group.order(),
                "overfull": deficiency_report(&g),
                "full_degree_vertices": g.full_degree_vertices().len(),
                "core": {
                    "vertices": core.n(),
                    "edges": core.edge_count(),
                    "class1_witness": core_class1_check(&g).map(|w| w.to_string()),
                },
            });
            emit(&serde_json::to_string_pretty(&doc)?, None)?;
            Ok(true)
        }
        Command::Classify { spec } => {
            let group = construct_group(&spec)?;
            let doc = json!({ "spec": spec, "prediction": predict_class(&group) });
            emit(&serde_json::to_string_pretty(&doc)?, None)?;
            Ok(true)
        }
        Command::Color {
            spec,
            strategy,
            seed,
            format,
            paper_labels,
            out,
        } => {
            let group = construct_group(&spec)?;
            let mut config = DeltaConfig {
                strategy: Some(strategy),
                ..Default::default()
            };
            if let Some(seed) = seed {
                config.rhee = RheeConfig {
                    seed,
                    ..config.rhee
                };
            }
            let d = delta_color(&group, &config)?;
            let report = verify_proper(&d.graph, &d.coloring)?;
            let predicted = predict_class(&group).class_label.colors(d.graph.max_degree());
            let text = match format {
                ColoringFormat::Csv => write_csv(&d.coloring),
                ColoringFormat::Json => write_json(&d.coloring),
                ColoringFormat::Dot => {
                    let g = build_power_graph_labeled(&group, labeling(paper_labels));
                    g.to_dot(|e| d.coloring.color(e).map(|c| c + 1))
                }
            };
            emit(&text, out.as_ref())?;
            eprintln!(
                "{spec}: {} colors (max degree {}, strategy {}, class {}), verified: {}",
                d.colors_used,
                d.graph.max_degree(),
                d.strategy,
                d.class.map_or("undetermined".to_string(), |c| format!("{c:?}")),
                report.valid
            );
            let consistent = strategy != Strategy::Auto || d.colors_used == predicted;
            if !consistent {
                eprintln!("expected {predicted} colors from the class prediction");
            }
            Ok(report.valid && consistent)
        }
        Command::Verify {
            graph,
            group,
            coloring,
        } => {
            let g = match (graph, group) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                    Graph::from_json_str(&text)?
                }
                (None, Some(spec)) => build_power_graph_labeled(&construct_group(&spec)?, Labeling::Names),
                (None, None) => bail!("one of --graph or --group is required"),
            };
            let text =
                std::fs::read_to_string(&coloring).with_context(|| format!("reading {}", coloring.display()))?;
            let c = match coloring.extension().and_then(|e| e.to_str()) {
                Some("json") => read_json(&text)?,
                _ => read_csv(&text, Some(g.n()))?,
            };
            let report = verify_proper(&g, &c)?;
            emit(&serde_json::to_string_pretty(&report)?, None)?;
            Ok(report.valid)
        }
        Command::Survey {
            max_order,
            oracle_max_order,
            witness,
            seed,
            extra,
            timing,
            sequential,
            out,
        } => {
            let mut options = SurveyOptions {
                max_order,
                oracle_max_order,
                witness,
                timing,
                extra_specs: extra,
                ..Default::default()
            };
            if let Some(seed) = seed {
                options.seed = seed;
            }
            if sequential {
                options.execution = powergraph::par::Execution::Sequential;
            }
            let survey = run_survey(&generate_catalog(max_order), &options);
            emit(&survey.to_json_string(), out.as_ref())?;
            eprintln!(
                "{} groups, {} overfull, {} mismatches",
                survey.summary.groups,
                survey.summary.overfull_groups.len(),
                survey.summary.mismatches.len()
            );
            for m in &survey.summary.mismatches {
                eprintln!("mismatch {} [{}]: {}", m.spec, m.check, m.detail);
            }
            Ok(survey.ok())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
