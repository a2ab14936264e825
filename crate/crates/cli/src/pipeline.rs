//! Stages of the generation pipeline. Each stage reads and writes files in
//! a work directory and is recorded in the run manifest; `generate` chains
//! them.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use doppelganger_core::embedding::{
    evaluate_predictor, train, EpochRecord, LinkPredictor, NodeFeatures, TrainedEmbedding,
};
use doppelganger_core::gan::{
    embedding_mmd, empirical_cdf, ks_distance, pairwise_distances, sample_embeddings, train_gan,
    Generator, TrainedGan,
};
use doppelganger_core::graph::{edge_overlap, DropTally, Graph, NodeCorrespondence};
use doppelganger_core::linalg::Matrix;
use doppelganger_core::metrics::ReportMetadata;
use doppelganger_core::nn::sigmoid;
use doppelganger_core::realization::{
    assign_degree_sequence, improved_hh, initial_graph_from_scores, PairScores, Realization,
    RealizationTrace,
};
use doppelganger_core::rng::{derive_seed, seeded};
use rand::seq::index;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{PipelineConfig, ResolvedSeeds};
use crate::error::{CliError, Result};
use crate::formats::edgelist::{read_edge_list, write_edge_list};
use crate::formats::params::{
    critic_params, generator_params, link_model_params, read_generator, read_link_model,
    write_params,
};
use crate::formats::tsv::{
    compact_labels, format_assignment, read_assignment, read_keyed_rows, read_labels, read_matrix,
    read_pairs, write_labels, write_matrix,
};
use crate::formats::write_file;
use crate::manifest::{digest_files, sha256_bytes, RunManifest, StageRecord, StageStatus};
use crate::report::{columns, format_table, graph_report, value_cells, values_of, EDGE_OVERLAP};

pub const GRAPH: &str = "graph.edges";
pub const NODES: &str = "nodes.tsv";
pub const FEATURES: &str = "features.tsv";
pub const LABELS: &str = "labels.tsv";
pub const CLASSES: &str = "classes.tsv";
pub const EMBEDDINGS: &str = "embeddings.tsv";
pub const LINK_MODEL: &str = "link_model.json";
pub const EMBED_LOG: &str = "embed_log.csv";
pub const LINK_SCORES: &str = "link_scores.json";
pub const GENERATOR: &str = "generator.json";
pub const CRITIC: &str = "critic.json";
pub const GAN_LOG: &str = "gan_log.csv";
pub const DISTANCE_CDF: &str = "distance_cdf.csv";
pub const GAN_SUMMARY: &str = "gan_summary.json";
pub const SAMPLED: &str = "sampled.tsv";
pub const SAMPLED_LABELS: &str = "sampled_labels.tsv";
pub const INITIAL: &str = "initial.edges";
pub const ASSIGNMENT: &str = "assignment.tsv";
pub const DOPPELGANGER: &str = "doppelganger.edges";
pub const REALIZATION: &str = "realization.json";
pub const TRACE: &str = "trace.txt";
pub const REPORT: &str = "report.json";
pub const REPORT_TABLE: &str = "report.txt";

pub const STAGES: [&str; 8] = [
    "ingest", "embed", "gan", "sample", "initial", "assign", "realize", "report",
];

fn json_bytes(v: &Value) -> Vec<u8> {
    let mut b = serde_json::to_vec_pretty(v).expect("json serializes");
    b.push(b'\n');
    b
}

pub fn write_json(path: &Path, v: &Value) -> Result<()> {
    write_file(path, &json_bytes(v))
}

pub fn read_json(path: &Path) -> Result<Value> {
    let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_slice(&bytes).map_err(|e| CliError::parse(path, e.line(), e.to_string()))
}

/// Input graph reduced to its largest connected component, with optional
/// per-node features and class labels aligned to the new ids.
#[derive(Debug, Clone)]
pub struct Ingested {
    pub graph: Graph,
    /// Original label of each node.
    pub labels: Vec<String>,
    pub features: Option<Matrix>,
    pub classes: Option<(Vec<usize>, Vec<String>)>,
    pub dropped: DropTally,
    pub input_nodes: usize,
}

pub fn ingest(graph: &Path, features: Option<&Path>, labels: Option<&Path>) -> Result<Ingested> {
    let raw = read_edge_list(graph)?;
    let keep = raw.graph.largest_component_nodes();
    let lcc = raw.graph.induced_subgraph(&keep);
    let names: Vec<String> = keep.iter().map(|&v| raw.labels[v].clone()).collect();
    let features = match features {
        None => None,
        Some(path) => {
            let rows = read_keyed_rows(path)?;
            let width = rows.first().map_or(0, |r| r.1.len());
            let by_name: std::collections::HashMap<&str, &Vec<f64>> =
                rows.iter().map(|(k, v)| (k.as_str(), v)).collect();
            let mut data = Vec::with_capacity(names.len() * width);
            for name in &names {
                let row = by_name.get(name.as_str()).ok_or_else(|| {
                    CliError::parse(path, 0, format!("no features for node `{name}`"))
                })?;
                data.extend_from_slice(row);
            }
            Some(Matrix::from_vec(names.len(), width, data))
        }
    };
    let classes = match labels {
        None => None,
        Some(path) => {
            let pairs = read_pairs(path)?;
            let by_name: std::collections::HashMap<&str, &str> = pairs
                .iter()
                .map(|(k, v)| (k.as_str(), v.as_str()))
                .collect();
            let per_node = names
                .iter()
                .map(|n| {
                    by_name
                        .get(n.as_str())
                        .copied()
                        .ok_or_else(|| CliError::parse(path, 0, format!("no label for node `{n}`")))
                })
                .collect::<Result<Vec<&str>>>()?;
            Some(compact_labels(per_node))
        }
    };
    Ok(Ingested {
        graph: lcc,
        labels: names,
        features,
        classes,
        dropped: raw.dropped,
        input_nodes: raw.graph.node_count(),
    })
}

/// Writes the ingested graph and its side tables into `dir`; returns the
/// files written.
pub fn write_ingested(dir: &Path, ing: &Ingested) -> Result<Vec<PathBuf>> {
    let mut out = vec![PathBuf::from(GRAPH), PathBuf::from(NODES)];
    write_edge_list(&dir.join(GRAPH), &ing.graph, None)?;
    let mut nodes = String::from("# id\tlabel\n");
    for (i, l) in ing.labels.iter().enumerate() {
        let _ = writeln!(nodes, "{i}\t{l}");
    }
    write_file(&dir.join(NODES), nodes.as_bytes())?;
    if let Some(f) = &ing.features {
        write_matrix(&dir.join(FEATURES), f, None)?;
        out.push(FEATURES.into());
    }
    if let Some((ids, names)) = &ing.classes {
        write_labels(&dir.join(LABELS), ids, None)?;
        let mut text = String::from("# class\tname\n");
        for (i, n) in names.iter().enumerate() {
            let _ = writeln!(text, "{i}\t{n}");
        }
        write_file(&dir.join(CLASSES), text.as_bytes())?;
        out.push(LABELS.into());
        out.push(CLASSES.into());
    }
    Ok(out)
}

fn epoch_line(r: &EpochRecord) -> String {
    format!(
        "{},{},{},{:?},{},{}\n",
        r.cycle, r.round, r.epoch, r.loss, r.positives, r.negatives
    )
}

/// Trains embeddings and predictor, returning the model and the CSV
/// training log.
pub fn train_embeddings(
    g: &Graph,
    features: Option<Matrix>,
    cfg: &PipelineConfig,
    seed: u64,
) -> Result<(TrainedEmbedding, String)> {
    let x = match features {
        Some(m) => NodeFeatures::Dense(m),
        None => NodeFeatures::Identity(g.node_count()),
    };
    let mut log = String::from("cycle,round,epoch,loss,positives,negatives\n");
    let started = Instant::now();
    let total = cfg.effective_embedding().schedule.total_epochs();
    let mut done = 0usize;
    let trained = train(g, &x, &cfg.effective_embedding(), seed, |r| {
        log.push_str(&epoch_line(r));
        done += 1;
        if done.is_multiple_of(1000) {
            eprintln!(
                "  embed: epoch {done}/{total}, loss {:.4}, {:.0}s",
                r.loss,
                started.elapsed().as_secs_f64()
            );
        }
    })
    .map_err(|e| CliError::stage("embed", e))?;
    Ok((trained, log))
}

/// All pair probabilities `prob(i, j)`, `i < j`, identical to the
/// predictor oracle's values.
pub fn score_pairs(pred: &LinkPredictor, emb: &Matrix) -> PairScores {
    let n = emb.rows();
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut scratch = vec![0.0; pred.hidden()];
            (i + 1..n)
                .map(|j| sigmoid(pred.logit_with(emb.row(i), emb.row(j), &mut scratch)))
                .collect()
        })
        .collect();
    PairScores::from_upper_triangle(n, rows.concat())
}

/// Uniform subset of at most `k` rows.
fn subsample(m: &Matrix, k: usize, seed: u64) -> Matrix {
    if m.rows() <= k {
        return m.clone();
    }
    let mut idx = index::sample(&mut seeded(seed), m.rows(), k).into_vec();
    idx.sort_unstable();
    m.select_rows(&idx)
}

pub struct GanRun {
    pub trained: TrainedGan,
    pub log: String,
    pub cdf: String,
    pub summary: Value,
}

/// Trains the GAN and computes the diagnostics: MMD to a fixed real
/// subsample every `diagnostics_every` steps, and the pairwise-distance
/// CDFs with their KS distance at the end.
pub fn train_generator(
    data: &Matrix,
    labels: Option<&[usize]>,
    cfg: &PipelineConfig,
    seed: u64,
) -> Result<GanRun> {
    let gan = cfg.effective_gan();
    let ev = &cfg.evaluation;
    let real = subsample(data, ev.diagnostics_rows, derive_seed(seed, 10));
    let mut log = String::from("step,critic_loss,penalty,generator_loss,mmd\n");
    let last = gan.generator_steps.saturating_sub(1);
    let mut mmd_error = None;
    let started = Instant::now();
    let observe = |s: &doppelganger_core::gan::GanStep, g: &Generator| {
        let mmd = if s.step.is_multiple_of(ev.diagnostics_every) || s.step == last {
            let fake = sample_embeddings(g, real.rows(), derive_seed(seed, 1000 + s.step as u64))
                .embeddings;
            match embedding_mmd(&real, &fake) {
                Ok(v) => format!("{v:?}"),
                Err(e) => {
                    mmd_error.get_or_insert(e.to_string());
                    String::new()
                }
            }
        } else {
            String::new()
        };
        if s.step.is_multiple_of(1000) && s.step > 0 {
            eprintln!(
                "  gan: step {}, critic {:.4}, {:.0}s",
                s.step,
                s.critic_loss,
                started.elapsed().as_secs_f64()
            );
        }
        let _ = writeln!(
            log,
            "{},{:?},{:?},{:?},{mmd}",
            s.step, s.critic_loss, s.penalty, s.generator_loss
        );
    };
    let trained =
        train_gan(data, labels, &gan, seed, observe).map_err(|e| CliError::stage("gan", e))?;
    if let Some(e) = mmd_error {
        return Err(CliError::stage("gan", e));
    }
    let fake = sample_embeddings(&trained.generator, real.rows(), derive_seed(seed, 11)).embeddings;
    let real_d = pairwise_distances(&real);
    let fake_d = pairwise_distances(&fake);
    let max = real_d.iter().chain(&fake_d).copied().fold(0.0, f64::max);
    let bins = ev.cdf_bins;
    let thresholds: Vec<f64> = (0..=bins).map(|k| max * k as f64 / bins as f64).collect();
    let cr = empirical_cdf(&real_d, &thresholds);
    let cf = empirical_cdf(&fake_d, &thresholds);
    let mut cdf = String::from("distance,cdf_real,cdf_fake\n");
    for ((t, a), b) in thresholds.iter().zip(&cr).zip(&cf) {
        let _ = writeln!(cdf, "{t:?},{a:?},{b:?}");
    }
    let final_mmd = embedding_mmd(&real, &fake).map_err(|e| CliError::stage("gan", e))?;
    let summary = json!({
        "generator_steps": gan.generator_steps,
        "diagnostic_rows": real.rows(),
        "final_mmd": final_mmd,
        "distance_ks": ks_distance(&real_d, &fake_d),
    });
    Ok(GanRun {
        trained,
        log,
        cdf,
        summary,
    })
}

/// One line per hub: `hub<TAB>attached,...<TAB>snapshot hash`.
pub fn format_trace(t: &RealizationTrace) -> String {
    let mut out = format!(
        "# nodes: {}\n# hub\tattached\tremaining_hash\n",
        t.node_count
    );
    for s in &t.steps {
        let attached: Vec<String> = s.attached.iter().map(usize::to_string).collect();
        let _ = writeln!(
            out,
            "{}\t{}\t{:016x}",
            s.hub,
            attached.join(","),
            s.snapshot_hash
        );
    }
    out
}

pub fn realization_json(r: &Realization, targets: &[usize]) -> Value {
    json!({
        "nodes": r.graph.node_count(),
        "edges": r.graph.edge_count(),
        "target_edges": targets.iter().sum::<usize>() / 2,
        "stub_deficit": r.stub_deficit,
        "skipped_hubs": r.skipped_hubs,
    })
}

/// Report of `generated` against `original` under `corr`, with the
/// original's own report for side-by-side display.
pub fn comparison(
    original: &Graph,
    generated: &Graph,
    corr: Option<&NodeCorrespondence>,
    ids: (&str, &str),
    seed: Option<u64>,
) -> Result<Value> {
    let mut extra = Vec::new();
    if let Some(c) = corr {
        let eo =
            edge_overlap(generated, original, c).map_err(|e| CliError::Config(e.to_string()))?;
        extra.push((EDGE_OVERLAP, eo));
    }
    let meta = |graph: &str, seed| ReportMetadata {
        graph_id: graph.into(),
        reference_id: Some(ids.0.into()),
        seed,
    };
    Ok(json!({
        "original": graph_report(original, Some(original), meta(ids.0, None), &[]),
        "generated": graph_report(generated, Some(original), meta(ids.1, seed), &extra),
    }))
}
pub fn comparison_table(doc: &Value) -> String {
    let with_overlap = doc["generated"].get(EDGE_OVERLAP).is_some();
    let names = columns(true, with_overlap);
    let rows: Vec<(String, Vec<String>)> = ["original", "generated"]
        .iter()
        .map(|k| {
            let label = doc[k]["graph"].as_str().unwrap_or(k).to_string();
            (label, value_cells(&values_of(&doc[k], &names)))
        })
        .collect();
    format_table(&names, &rows)
}

fn stage_failed(stage: &str, e: CliError) -> CliError {
    e.in_stage(stage)
}

/// Runs stages in a work directory, skipping those the manifest shows as
/// up to date.
pub struct Runner {
    pub workdir: PathBuf,
    pub manifest: RunManifest,
    pub quiet: bool,
}

impl Runner {
    pub fn new(workdir: &Path, config: Value) -> Result<Self> {
        std::fs::create_dir_all(workdir).map_err(|e| CliError::io(workdir, e))?;
        Ok(Runner {
            workdir: workdir.to_path_buf(),
            manifest: RunManifest::load_or_new(workdir, config),
            quiet: false,
        })
    }

    fn note(&self, msg: &str) {
        if !self.quiet {
            eprintln!("{msg}");
        }
    }

    /// Runs `body` unless the stage is fresh. `body` returns the output
    /// files, relative to the work directory.
    pub fn stage<F>(&mut self, name: &str, params: &Value, inputs: &[&str], body: F) -> Result<bool>
    where
        F: FnOnce(&Path) -> Result<Vec<PathBuf>>,
    {
        let params = sha256_bytes(&json_bytes(params));
        let inputs: Vec<PathBuf> = inputs.iter().map(PathBuf::from).collect();
        if self
            .manifest
            .is_fresh(&self.workdir, name, &params, &inputs)
        {
            self.note(&format!("stage {name}: up to date"));
            return Ok(false);
        }
        self.note(&format!("stage {name}: running"));
        let started = Instant::now();
        let result =
            digest_files(&self.workdir, &inputs).and_then(|ins| Ok((ins, body(&self.workdir)?)));
        let duration_ms = started.elapsed().as_millis() as u64;
        match result {
            Ok((ins, outs)) => {
                let outputs =
                    digest_files(&self.workdir, &outs).map_err(|e| stage_failed(name, e))?;
                self.manifest.record(StageRecord {
                    name: name.into(),
                    status: StageStatus::Done,
                    params,
                    inputs: ins,
                    outputs,
                    duration_ms,
                    error: None,
                });
                self.manifest.save(&self.workdir)?;
                self.note(&format!(
                    "stage {name}: done in {:.1}s",
                    duration_ms as f64 / 1000.0
                ));
                Ok(true)
            }
            Err(e) => {
                let e = stage_failed(name, e);
                self.manifest.record(StageRecord {
                    name: name.into(),
                    status: StageStatus::Failed,
                    params,
                    inputs: Vec::new(),
                    outputs: Vec::new(),
                    duration_ms,
                    error: Some(e.to_string()),
                });
                self.manifest.save(&self.workdir)?;
                Err(e)
            }
        }
    }
}

/// Outcome of a full pipeline run.
#[derive(Debug, Clone)]
pub struct Generated {
    pub workdir: PathBuf,
    pub report: Value,
    pub realization: Value,
}

/// Runs every stage of the pipeline in `workdir`.
pub fn generate(cfg: &PipelineConfig, workdir: &Path, quiet: bool) -> Result<Generated> {
    cfg.validate()?;
    let graph_path = cfg
        .graph
        .clone()
        .ok_or_else(|| CliError::Config("no input graph given".into()))?;
    let graph_path = std::path::absolute(&graph_path).map_err(|e| CliError::io(&graph_path, e))?;
    let seeds = cfg.seeds();
    let mut runner = Runner::new(
        workdir,
        serde_json::to_value(cfg).expect("config serializes"),
    )?;
    runner.quiet = quiet;
    run_stages(&mut runner, cfg, &graph_path, seeds)?;
    Ok(Generated {
        workdir: workdir.to_path_buf(),
        report: read_json(&workdir.join(REPORT))?,
        realization: read_json(&workdir.join(REALIZATION))?,
    })
}

fn run_stages(
    r: &mut Runner,
    cfg: &PipelineConfig,
    graph_path: &Path,
    seeds: ResolvedSeeds,
) -> Result<()> {
    let has_features = cfg.features.is_some();
    let has_labels = cfg.labels.is_some();

    let sources = json!({
        "graph": crate::manifest::sha256_file(graph_path)?,
        "features": cfg.features.as_deref().map(crate::manifest::sha256_file).transpose()?,
        "labels": cfg.labels.as_deref().map(crate::manifest::sha256_file).transpose()?,
    });
    r.stage("ingest", &sources, &[], |dir| {
        let ing = ingest(graph_path, cfg.features.as_deref(), cfg.labels.as_deref())?;
        if ing.graph.edge_count() == 0 {
            return Err(CliError::stage("ingest", "largest component has no edges"));
        }
        write_ingested(dir, &ing)
    })?;

    let mut embed_inputs = vec![GRAPH];
    if has_features {
        embed_inputs.push(FEATURES);
    }
    let embed_params = json!({
        "embedding": cfg.effective_embedding(),
        "seed": seeds.embedding,
        "evaluation_seed": seeds.evaluation,
        "negatives": cfg.evaluation.negatives,
    });
    r.stage("embed", &embed_params, &embed_inputs, |dir| {
        let g = read_edge_list(&dir.join(GRAPH))?.graph;
        let features = if has_features {
            Some(read_matrix(&dir.join(FEATURES))?)
        } else {
            None
        };
        let (trained, log) = train_embeddings(&g, features, cfg, seeds.embedding)?;
        write_matrix(
            &dir.join(EMBEDDINGS),
            &trained.embeddings,
            Some(seeds.embedding),
        )?;
        write_params(
            &dir.join(LINK_MODEL),
            &link_model_params(&trained.model, Some(seeds.embedding)),
        )?;
        write_file(&dir.join(EMBED_LOG), log.as_bytes())?;
        let scores = evaluate_predictor(
            &trained.model.predictor,
            &trained.embeddings,
            &g,
            cfg.evaluation.negatives,
            seeds.evaluation,
        );
        write_json(
            &dir.join(LINK_SCORES),
            &json!({"auc": scores.auc, "ap": scores.ap, "final_loss": trained.final_loss}),
        )?;
        Ok(vec![
            EMBEDDINGS.into(),
            LINK_MODEL.into(),
            EMBED_LOG.into(),
            LINK_SCORES.into(),
        ])
    })?;

    let mut gan_inputs = vec![EMBEDDINGS];
    if has_labels {
        gan_inputs.push(LABELS);
    }
    let gan_params =
        json!({"gan": cfg.effective_gan(), "evaluation": cfg.evaluation, "seed": seeds.gan});
    r.stage("gan", &gan_params, &gan_inputs, |dir| {
        let data = read_matrix(&dir.join(EMBEDDINGS))?;
        let labels = if has_labels {
            Some(read_labels(&dir.join(LABELS))?)
        } else {
            None
        };
        let run = train_generator(&data, labels.as_deref(), cfg, seeds.gan)?;
        write_params(
            &dir.join(GENERATOR),
            &generator_params(&run.trained.generator, Some(seeds.gan)),
        )?;
        write_params(
            &dir.join(CRITIC),
            &critic_params(&run.trained.critic, Some(seeds.gan)),
        )?;
        write_file(&dir.join(GAN_LOG), run.log.as_bytes())?;
        write_file(&dir.join(DISTANCE_CDF), run.cdf.as_bytes())?;
        write_json(&dir.join(GAN_SUMMARY), &run.summary)?;
        Ok(vec![
            GENERATOR.into(),
            CRITIC.into(),
            GAN_LOG.into(),
            DISTANCE_CDF.into(),
            GAN_SUMMARY.into(),
        ])
    })?;

    r.stage(
        "sample",
        &json!({"seed": seeds.sample}),
        &[GENERATOR, GRAPH],
        |dir| {
            let generator = read_generator(&dir.join(GENERATOR))?;
            let n = read_edge_list(&dir.join(GRAPH))?.graph.node_count();
            let s = sample_embeddings(&generator, n, seeds.sample);
            write_matrix(&dir.join(SAMPLED), &s.embeddings, Some(seeds.sample))?;
            let mut out = vec![PathBuf::from(SAMPLED)];
            if let Some(l) = s.labels {
                write_labels(&dir.join(SAMPLED_LABELS), &l, Some(seeds.sample))?;
                out.push(SAMPLED_LABELS.into());
            }
            Ok(out)
        },
    )?;

    r.stage(
        "initial",
        &json!({}),
        &[SAMPLED, LINK_MODEL, GRAPH],
        |dir| {
            let emb = read_matrix(&dir.join(SAMPLED))?;
            let model = read_link_model(&dir.join(LINK_MODEL))?;
            let target = read_edge_list(&dir.join(GRAPH))?.graph.edge_count();
            check_dims(&emb, &model.predictor)?;
            let scores = score_pairs(&model.predictor, &emb);
            let g = initial_graph_from_scores(&scores, target)
                .map_err(|e| CliError::stage("initial", e))?;
            write_edge_list(&dir.join(INITIAL), &g, None)?;
            Ok(vec![INITIAL.into()])
        },
    )?;

    r.stage("assign", &json!({}), &[INITIAL, GRAPH], |dir| {
        let initial = read_edge_list(&dir.join(INITIAL))?.graph;
        let original = read_edge_list(&dir.join(GRAPH))?.graph;
        let a = assign_degree_sequence(&initial, &original.degrees())
            .map_err(|e| CliError::stage("assign", e))?;
        write_file(
            &dir.join(ASSIGNMENT),
            format_assignment(&a.targets, &a.correspondence).as_bytes(),
        )?;
        Ok(vec![ASSIGNMENT.into()])
    })?;

    let trace = cfg.realization.trace;
    r.stage(
        "realize",
        &json!({"trace": trace}),
        &[ASSIGNMENT, SAMPLED, LINK_MODEL],
        |dir| {
            let (targets, _) = read_assignment(&dir.join(ASSIGNMENT))?;
            let emb = read_matrix(&dir.join(SAMPLED))?;
            let model = read_link_model(&dir.join(LINK_MODEL))?;
            check_dims(&emb, &model.predictor)?;
            let scores = score_pairs(&model.predictor, &emb);
            let real = improved_hh(&targets, &scores, trace)
                .map_err(|e| CliError::NotGraphic(e.to_string()))?;
            write_edge_list(&dir.join(DOPPELGANGER), &real.graph, Some(seeds.root))?;
            write_json(&dir.join(REALIZATION), &realization_json(&real, &targets))?;
            let mut out = vec![PathBuf::from(DOPPELGANGER), PathBuf::from(REALIZATION)];
            if let Some(t) = &real.trace {
                write_file(&dir.join(TRACE), format_trace(t).as_bytes())?;
                out.push(TRACE.into());
            }
            Ok(out)
        },
    )?;

    r.stage(
        "report",
        &json!({"seed": seeds.root}),
        &[DOPPELGANGER, GRAPH, ASSIGNMENT, REALIZATION],
        |dir| {
            let generated = read_edge_list(&dir.join(DOPPELGANGER))?.graph;
            let original = read_edge_list(&dir.join(GRAPH))?.graph;
            let (_, corr) = read_assignment(&dir.join(ASSIGNMENT))?;
            let real = read_json(&dir.join(REALIZATION))?;
            let mut doc = comparison(
                &original,
                &generated,
                Some(&corr),
                ("original", "doppelganger"),
                Some(seeds.root),
            )?;
            doc["generated"]["stub_deficit"] = real["stub_deficit"].clone();
            write_json(&dir.join(REPORT), &doc)?;
            write_file(&dir.join(REPORT_TABLE), comparison_table(&doc).as_bytes())?;
            Ok(vec![REPORT.into(), REPORT_TABLE.into()])
        },
    )?;
    Ok(())
}

fn check_dims(emb: &Matrix, pred: &LinkPredictor) -> Result<()> {
    if emb.cols() != pred.dim() {
        return Err(CliError::Config(format!(
            "embeddings have {} columns but the predictor expects {}",
            emb.cols(),
            pred.dim()
        )));
    }
    Ok(())
}
