//! Command-line front end.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use doppelganger_core::baselines::{ba_graph, chung_lu, conf_model, er_graph};
use doppelganger_core::embedding::evaluate_predictor;
use doppelganger_core::gan::sample_embeddings;
use doppelganger_core::graph::{Graph, NodeCorrespondence};
use doppelganger_core::metrics::ReportMetadata;
use doppelganger_core::realization::{havel_hakimi_traced, improved_hh, RealizationError};
use doppelganger_core::rng::derive_seed;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::PipelineConfig;
use crate::error::{CliError, Result};
use crate::formats::edgelist::{read_edge_list, write_edge_list};
use crate::formats::params::{
    critic_params, generator_params, link_model_params, read_generator, read_link_model,
    write_params,
};
use crate::formats::tsv::{
    read_assignment, read_correspondence, read_degrees, read_labels, read_matrix, write_labels,
    write_matrix,
};
use crate::formats::write_file;
use crate::pipeline::{
    self, comparison, comparison_table, format_trace, generate, realization_json, score_pairs,
    write_ingested, write_json,
};
use crate::report::{
    columns, format_table, graph_report, report_distance, value_cells, values_of, Aggregate,
};

#[derive(Debug, Parser)]
#[command(
    name = "doppelganger",
    version,
    about = "Generate graphs that share properties but not edges with an input graph"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Root seed; per-stage and per-trial seeds derive from it.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// JSON pipeline config.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Directory for pipeline artifacts.
    #[arg(long, global = true)]
    pub workdir: Option<PathBuf>,
    /// Number of seeded trials to run and aggregate.
    #[arg(long, global = true, default_value_t = 1)]
    pub repeat: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Read a graph, keep its largest connected component and write it with
    /// aligned features and labels.
    Ingest {
        graph: PathBuf,
        #[arg(long)]
        features: Option<PathBuf>,
        #[arg(long)]
        labels: Option<PathBuf>,
        /// Output directory; defaults to --workdir.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Property report of one or more graphs; several graphs are also
    /// aggregated.
    Metrics {
        #[arg(required = true)]
        graphs: Vec<PathBuf>,
        /// Reference graph for the distribution MMDs.
        #[arg(long)]
        reference: Option<PathBuf>,
    },
    /// Side-by-side reports and edge overlap of an original and a generated
    /// graph.
    Compare {
        original: PathBuf,
        generated: PathBuf,
        /// Map from generated to original nodes (`new<TAB>original` or an
        /// assignment file). Required when the node sets differ.
        #[arg(long)]
        correspondence: Option<PathBuf>,
    },
    /// Classic Havel–Hakimi realization of a degree sequence.
    Hh {
        #[command(flatten)]
        degrees: DegreeSource,
        #[arg(long)]
        out: PathBuf,
        /// Write a per-hub trace to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Realization guided by link probabilities from a predictor applied to
    /// embeddings.
    ImprovedHh {
        #[command(flatten)]
        degrees: DegreeSource,
        /// One embedding row per node, in node order.
        #[arg(long)]
        embeddings: PathBuf,
        /// Link model written by train-embed.
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Classical random graph generators.
    Baseline(BaselineArgs),
    /// Train node embeddings and the link predictor.
    TrainEmbed {
        graph: PathBuf,
        #[arg(long)]
        features: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// Use the short smoke schedule.
        #[arg(long)]
        smoke: bool,
    },
    /// Train the embedding GAN.
    TrainGan {
        embeddings: PathBuf,
        #[arg(long)]
        labels: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        smoke: bool,
    },
    /// Draw embeddings from a trained generator.
    Sample {
        generator: PathBuf,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        out: PathBuf,
        /// Where to write decoded labels of a label-conditioned generator.
        #[arg(long)]
        labels_out: Option<PathBuf>,
    },
    /// Run the whole pipeline.
    Generate {
        /// Input edge list; overrides `graph` in the config.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Node feature table; one-hot identity features when absent.
        #[arg(long)]
        features: Option<PathBuf>,
        /// Node labels; the GAN then learns embeddings jointly with labels.
        #[arg(long)]
        labels: Option<PathBuf>,
        /// Use the short smoke schedule.
        #[arg(long)]
        smoke: bool,
        /// Write the realization trace.
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct DegreeSource {
    /// File with one degree per line.
    #[arg(long)]
    pub degrees: Option<PathBuf>,
    /// Use the degrees of this graph.
    #[arg(long)]
    pub from_graph: Option<PathBuf>,
    /// Use the targets of an assignment file.
    #[arg(long)]
    pub assignment: Option<PathBuf>,
}

impl DegreeSource {
    fn read(&self) -> Result<Vec<usize>> {
        if let Some(p) = &self.degrees {
            read_degrees(p)
        } else if let Some(p) = &self.from_graph {
            Ok(read_edge_list(p)?.graph.degrees())
        } else if let Some(p) = &self.assignment {
            Ok(read_assignment(p)?.0)
        } else {
            Err(CliError::Config("no degree source given".into()))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaselineKind {
    Er,
    Ba,
    ChungLu,
    Conf,
}

#[derive(Debug, Clone, Args)]
pub struct BaselineArgs {
    pub kind: BaselineKind,
    /// Graph whose size and degrees parameterize the model; also the
    /// reference of the emitted reports.
    #[arg(long)]
    pub reference: Option<PathBuf>,
    /// Node count when there is no reference (er, ba).
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Edge probability (er).
    #[arg(long)]
    pub p: Option<f64>,
    /// Edges per arriving node (ba).
    #[arg(long)]
    pub m: Option<usize>,
    /// Share of reference edges kept (conf).
    #[arg(long, default_value_t = 0.424)]
    pub overlap: f64,
    /// Rewiring attempts before giving up (conf).
    #[arg(long, default_value_t = 1000)]
    pub max_retries: usize,
    /// Output edge list; with --repeat, a directory of `trial-<k>.edges`.
    #[arg(long)]
    pub out: PathBuf,
}

fn emit(format: Format, doc: &Value, table: impl FnOnce() -> String) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(doc).expect("json serializes")
        ),
        Format::Table => print!("{}", table()),
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    Ok(read_edge_list(path)?.graph)
}

fn graph_id(path: &Path) -> String {
    path.display().to_string()
}

fn not_graphic(e: RealizationError) -> CliError {
    match e {
        RealizationError::NotGraphic { .. } | RealizationError::NotGraphicSequence => {
            CliError::NotGraphic(e.to_string())
        }
        other => CliError::Config(other.to_string()),
    }
}

/// Config from --config overlaid with command-line flags.
fn base_config(g: &Global) -> Result<PipelineConfig> {
    let mut cfg = match &g.config {
        Some(p) => PipelineConfig::load(p)?,
        None => PipelineConfig::default(),
    };
    if g.seed.is_some() {
        cfg.seed = g.seed;
    }
    if g.workdir.is_some() {
        cfg.workdir.clone_from(&g.workdir);
    }
    Ok(cfg)
}

fn check_repeat(g: &Global) -> Result<()> {
    if g.repeat == 0 {
        return Err(CliError::Config("--repeat must be at least 1".into()));
    }
    Ok(())
}

pub fn run(cli: Cli) -> Result<()> {
    let g = &cli.global;
    check_repeat(g)?;
    let root = g.seed.unwrap_or(0);
    match &cli.command {
        Command::Ingest {
            graph,
            features,
            labels,
            out,
        } => {
            let out = out
                .clone()
                .or_else(|| g.workdir.clone())
                .ok_or_else(|| CliError::Config("ingest needs --out or --workdir".into()))?;
            let ing = pipeline::ingest(graph, features.as_deref(), labels.as_deref())?;
            write_ingested(&out, &ing)?;
            let doc = json!({
                "input_nodes": ing.input_nodes,
                "nodes": ing.graph.node_count(),
                "edges": ing.graph.edge_count(),
                "dropped_self_loops": ing.dropped.self_loops,
                "dropped_duplicates": ing.dropped.duplicates,
                "classes": ing.classes.as_ref().map(|c| c.1.len()),
            });
            emit(g.format, &doc, || {
                format!(
                    "kept {} of {} nodes, {} edges\n",
                    ing.graph.node_count(),
                    ing.input_nodes,
                    ing.graph.edge_count()
                )
            });
            Ok(())
        }
        Command::Metrics { graphs, reference } => metrics(g, graphs, reference.as_deref()),
        Command::Compare {
            original,
            generated,
            correspondence,
        } => {
            let o = read_graph(original)?;
            let n = read_graph(generated)?;
            let corr = match correspondence {
                Some(p) => read_correspondence(p)?,
                None if o.node_count() == n.node_count() => {
                    NodeCorrespondence::identity(n.node_count())
                }
                None => {
                    return Err(CliError::Config(format!(
                        "graphs have {} and {} nodes; a --correspondence is required",
                        o.node_count(),
                        n.node_count()
                    )))
                }
            };
            let doc = comparison(
                &o,
                &n,
                Some(&corr),
                (&graph_id(original), &graph_id(generated)),
                g.seed,
            )?;
            emit(g.format, &doc, || comparison_table(&doc));
            Ok(())
        }
        Command::Hh {
            degrees,
            out,
            trace,
        } => {
            let targets = degrees.read()?;
            let (graph, t) = havel_hakimi_traced(&targets, trace.is_some()).map_err(not_graphic)?;
            write_edge_list(out, &graph, None)?;
            if let (Some(path), Some(t)) = (trace, &t) {
                write_file(path, format_trace(t).as_bytes())?;
            }
            let doc = json!({"nodes": graph.node_count(), "edges": graph.edge_count()});
            emit(g.format, &doc, || {
                format!(
                    "{} nodes, {} edges\n",
                    graph.node_count(),
                    graph.edge_count()
                )
            });
            Ok(())
        }
        Command::ImprovedHh {
            degrees,
            embeddings,
            model,
            out,
            trace,
        } => {
            let targets = degrees.read()?;
            let emb = read_matrix(embeddings)?;
            let model = read_link_model(model)?;
            if emb.rows() != targets.len() || emb.cols() != model.predictor.dim() {
                return Err(CliError::Config(format!(
                    "{} degrees, embeddings {}x{}, predictor expects width {}",
                    targets.len(),
                    emb.rows(),
                    emb.cols(),
                    model.predictor.dim()
                )));
            }
            let scores = score_pairs(&model.predictor, &emb);
            let r = improved_hh(&targets, &scores, trace.is_some()).map_err(not_graphic)?;
            write_edge_list(out, &r.graph, None)?;
            if let (Some(path), Some(t)) = (trace, &r.trace) {
                write_file(path, format_trace(t).as_bytes())?;
            }
            let doc = realization_json(&r, &targets);
            emit(g.format, &doc, || {
                format!(
                    "{} nodes, {} edges, stub deficit {}, {} skipped hubs\n",
                    r.graph.node_count(),
                    r.graph.edge_count(),
                    r.stub_deficit,
                    r.skipped_hubs.len()
                )
            });
            Ok(())
        }
        Command::Baseline(args) => baseline(g, args),
        Command::TrainEmbed {
            graph,
            features,
            out,
            smoke,
        } => {
            let mut cfg = base_config(g)?;
            cfg.smoke |= *smoke;
            cfg.validate()?;
            let seeds = cfg.seeds();
            let graph = read_graph(graph)?;
            let features = features.as_deref().map(read_matrix).transpose()?;
            if let Some(f) = &features {
                if f.rows() != graph.node_count() {
                    return Err(CliError::Config(format!(
                        "{} feature rows for {} nodes",
                        f.rows(),
                        graph.node_count()
                    )));
                }
            }
            let (trained, log) =
                pipeline::train_embeddings(&graph, features, &cfg, seeds.embedding)?;
            write_matrix(
                &out.join(pipeline::EMBEDDINGS),
                &trained.embeddings,
                Some(seeds.embedding),
            )?;
            write_params(
                &out.join(pipeline::LINK_MODEL),
                &link_model_params(&trained.model, Some(seeds.embedding)),
            )?;
            write_file(&out.join(pipeline::EMBED_LOG), log.as_bytes())?;
            let s = evaluate_predictor(
                &trained.model.predictor,
                &trained.embeddings,
                &graph,
                cfg.evaluation.negatives,
                seeds.evaluation,
            );
            let doc = json!({"auc": s.auc, "ap": s.ap, "final_loss": trained.final_loss});
            write_json(&out.join(pipeline::LINK_SCORES), &doc)?;
            emit(g.format, &doc, || {
                format!(
                    "auc {:.4}  ap {:.4}  final loss {:.4}\n",
                    s.auc, s.ap, trained.final_loss
                )
            });
            Ok(())
        }
        Command::TrainGan {
            embeddings,
            labels,
            out,
            smoke,
        } => {
            let mut cfg = base_config(g)?;
            cfg.smoke |= *smoke;
            cfg.validate()?;
            let seed = cfg.seeds().gan;
            let data = read_matrix(embeddings)?;
            let labels = labels.as_deref().map(read_labels).transpose()?;
            let run = pipeline::train_generator(&data, labels.as_deref(), &cfg, seed)?;
            write_params(
                &out.join(pipeline::GENERATOR),
                &generator_params(&run.trained.generator, Some(seed)),
            )?;
            write_params(
                &out.join(pipeline::CRITIC),
                &critic_params(&run.trained.critic, Some(seed)),
            )?;
            write_file(&out.join(pipeline::GAN_LOG), run.log.as_bytes())?;
            write_file(&out.join(pipeline::DISTANCE_CDF), run.cdf.as_bytes())?;
            write_json(&out.join(pipeline::GAN_SUMMARY), &run.summary)?;
            emit(g.format, &run.summary, || {
                format!(
                    "final mmd {}  distance ks {}\n",
                    run.summary["final_mmd"], run.summary["distance_ks"]
                )
            });
            Ok(())
        }
        Command::Sample {
            generator,
            count,
            out,
            labels_out,
        } => {
            let seed = base_config(g)?.seeds().sample;
            let gen = read_generator(generator)?;
            let s = sample_embeddings(&gen, *count, seed);
            write_matrix(out, &s.embeddings, Some(seed))?;
            match (labels_out, &s.labels) {
                (Some(p), Some(l)) => write_labels(p, l, Some(seed))?,
                (Some(_), None) => {
                    return Err(CliError::Config(
                        "generator was trained without labels".into(),
                    ))
                }
                _ => {}
            }
            let doc =
                json!({"rows": s.embeddings.rows(), "cols": s.embeddings.cols(), "seed": seed});
            emit(g.format, &doc, || {
                format!("{} x {}\n", s.embeddings.rows(), s.embeddings.cols())
            });
            Ok(())
        }
        Command::Generate {
            graph,
            features,
            labels,
            smoke,
            trace,
        } => {
            let mut cfg = base_config(g)?;
            if graph.is_some() {
                cfg.graph.clone_from(graph);
            }
            if features.is_some() {
                cfg.features.clone_from(features);
            }
            if labels.is_some() {
                cfg.labels.clone_from(labels);
            }
            cfg.smoke |= *smoke;
            cfg.realization.trace |= *trace;
            let workdir = cfg
                .workdir
                .clone()
                .ok_or_else(|| CliError::Config("generate needs --workdir".into()))?;
            if cfg.graph.is_none() {
                return Err(CliError::Config("generate needs --graph".into()));
            }
            cfg.validate()?;
            if g.repeat == 1 {
                let out = generate(&cfg, &workdir, false)?;
                emit(g.format, &out.report, || comparison_table(&out.report));
                return Ok(());
            }
            let doc = generate_trials(&cfg, &workdir, g.repeat, root)?;
            emit(g.format, &doc, || trials_table(&doc));
            Ok(())
        }
    }
}

fn metrics(g: &Global, graphs: &[PathBuf], reference: Option<&Path>) -> Result<()> {
    let reference_graph = reference.map(read_graph).transpose()?;
    let docs: Vec<Value> = graphs
        .par_iter()
        .map(|p| {
            let graph = read_graph(p)?;
            let meta = ReportMetadata {
                graph_id: graph_id(p),
                reference_id: reference.map(graph_id),
                seed: None,
            };
            Ok(graph_report(&graph, reference_graph.as_ref(), meta, &[]))
        })
        .collect::<Result<_>>()?;
    let names = columns(reference.is_some(), false);
    if docs.len() == 1 {
        let doc = &docs[0];
        emit(g.format, doc, || {
            format_table(
                &names,
                &[(graph_id(&graphs[0]), value_cells(&values_of(doc, &names)))],
            )
        });
        return Ok(());
    }
    let rows: Vec<Vec<f64>> = docs.iter().map(|d| values_of(d, &names)).collect();
    let agg = Aggregate::new(&names, &rows);
    let doc = json!({"graphs": docs, "aggregate": agg.to_json(docs.len())});
    emit(g.format, &doc, || {
        let mut table: Vec<(String, Vec<String>)> = graphs
            .iter()
            .zip(&rows)
            .map(|(p, r)| (graph_id(p), value_cells(r)))
            .collect();
        table.push((format!("mean(sd) over {}", docs.len()), agg.cells()));
        format_table(&names, &table)
    });
    Ok(())
}

fn baseline_graph(args: &BaselineArgs, reference: Option<&Graph>, seed: u64) -> Result<Graph> {
    let nodes = || {
        args.nodes
            .or(reference.map(Graph::node_count))
            .ok_or_else(|| CliError::Config("need --nodes or --reference".into()))
    };
    let need_reference = || reference.ok_or_else(|| CliError::Config("need --reference".into()));
    let failed = |e: doppelganger_core::baselines::BaselineError| CliError::stage("baseline", e);
    match args.kind {
        BaselineKind::Er => {
            let n = nodes()?;
            let p = match (args.p, reference) {
                (Some(p), _) => p,
                (None, Some(r)) if n > 1 => 2.0 * r.edge_count() as f64 / (n * (n - 1)) as f64,
                _ => return Err(CliError::Config("er needs --p or --reference".into())),
            };
            er_graph(n, p, seed).map_err(|e| CliError::Config(e.to_string()))
        }
        BaselineKind::Ba => {
            let n = nodes()?;
            let m = match (args.m, reference) {
                (Some(m), _) => m,
                (None, Some(r)) if n > 0 => {
                    ((r.edge_count() as f64 / n as f64).round() as usize).max(1)
                }
                _ => return Err(CliError::Config("ba needs --m or --reference".into())),
            };
            ba_graph(n, m, seed).map_err(|e| CliError::Config(e.to_string()))
        }
        BaselineKind::ChungLu => Ok(chung_lu(&need_reference()?.degrees(), seed)),
        BaselineKind::Conf => {
            if !(0.0..=1.0).contains(&args.overlap) {
                return Err(CliError::Config(format!(
                    "overlap {} is outside [0, 1]",
                    args.overlap
                )));
            }
            conf_model(need_reference()?, args.overlap, args.max_retries, seed).map_err(failed)
        }
    }
}

fn baseline(g: &Global, args: &BaselineArgs) -> Result<()> {
    let reference = args.reference.as_deref().map(read_graph).transpose()?;
    let root = g.seed.unwrap_or(0);
    let seeds: Vec<u64> = if g.repeat == 1 {
        vec![root]
    } else {
        (0..g.repeat as u64).map(|k| derive_seed(root, k)).collect()
    };
    let outputs: Vec<PathBuf> = if g.repeat == 1 {
        vec![args.out.clone()]
    } else {
        (0..g.repeat)
            .map(|k| args.out.join(format!("trial-{k}.edges")))
            .collect()
    };
    let docs: Vec<Value> = seeds
        .par_iter()
        .zip(&outputs)
        .map(|(&seed, out)| {
            let graph = baseline_graph(args, reference.as_ref(), seed)?;
            write_edge_list(out, &graph, Some(seed))?;
            let meta = ReportMetadata {
                graph_id: graph_id(out),
                reference_id: args.reference.as_deref().map(graph_id),
                seed: Some(seed),
            };
            Ok(graph_report(&graph, reference.as_ref(), meta, &[]))
        })
        .collect::<Result<_>>()?;
    let names = columns(reference.is_some(), false);
    let rows: Vec<Vec<f64>> = docs.iter().map(|d| values_of(d, &names)).collect();
    let agg = Aggregate::new(&names, &rows);
    let doc = if docs.len() == 1 {
        docs[0].clone()
    } else {
        json!({"graphs": docs, "aggregate": agg.to_json(docs.len())})
    };
    emit(g.format, &doc, || {
        let mut table: Vec<(String, Vec<String>)> = outputs
            .iter()
            .zip(&rows)
            .map(|(p, r)| (graph_id(p), value_cells(r)))
            .collect();
        if docs.len() > 1 {
            table.push((format!("mean(sd) over {}", docs.len()), agg.cells()));
        }
        format_table(&names, &table)
    });
    Ok(())
}

/// Runs `repeat` independent pipelines in `workdir/trial-<k>` and ranks
/// them by report distance to the original.
pub fn generate_trials(
    cfg: &PipelineConfig,
    workdir: &Path,
    repeat: usize,
    root: u64,
) -> Result<Value> {
    let results: Vec<(usize, Value, Value)> = (0..repeat)
        .into_par_iter()
        .map(|k| {
            let mut trial = cfg.clone();
            trial.seed = Some(derive_seed(root, k as u64));
            trial.seeds = Default::default();
            let dir = workdir.join(format!("trial-{k}"));
            let out = generate(&trial, &dir, true)?;
            eprintln!("trial {k}: done");
            Ok((k, out.report, out.realization))
        })
        .collect::<Result<_>>()?;
    let mut ranked: Vec<(f64, usize)> = results
        .iter()
        .map(|(k, rep, _)| (report_distance(&rep["generated"], &rep["original"]), *k))
        .collect();
    ranked.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let names = columns(true, true);
    let rows: Vec<Vec<f64>> = results
        .iter()
        .map(|(_, r, _)| values_of(&r["generated"], &names))
        .collect();
    let agg = Aggregate::new(&names, &rows);
    let doc = json!({
        "original": results[0].1["original"],
        "trials": results.iter().map(|(k, r, real)| json!({
            "trial": k,
            "workdir": workdir.join(format!("trial-{k}")),
            "stub_deficit": real["stub_deficit"],
            "report": r["generated"],
        })).collect::<Vec<_>>(),
        "ranking": ranked.iter().map(|(d, k)| json!({"trial": k, "distance": d})).collect::<Vec<_>>(),
        "aggregate": agg.to_json(repeat),
    });
    write_json(&workdir.join("trials.json"), &doc)?;
    Ok(doc)
}

fn trials_table(doc: &Value) -> String {
    let names = columns(true, true);
    let mut rows = vec![(
        "original".to_string(),
        value_cells(&values_of(&doc["original"], &names)),
    )];
    for t in doc["trials"].as_array().into_iter().flatten() {
        rows.push((
            format!("trial {}", t["trial"]),
            value_cells(&values_of(&t["report"], &names)),
        ));
    }
    let mut out = format_table(&names, &rows);
    let best: Vec<String> = doc["ranking"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|r| {
            format!(
                "{} ({:.3})",
                r["trial"],
                r["distance"].as_f64().unwrap_or(f64::NAN)
            )
        })
        .collect();
    out.push_str(&format!("ranking: {}\n", best.join(", ")));
    out
}
