//! Acceptance suite. Prints one line per criterion and exits non-zero
//! unless every criterion passes.
//!
//! Dataset-dependent checks read `cora_ml.edges`, `citeseer.edges` and
//! `gene.edges` (plus optional `<name>.features` and `<name>.labels`)
//! from `$DOPPELGANGER_DATA_DIR`, defaulting to `data/` at the workspace
//! root, and report BLOCKED when a file is missing. Set
//! `DOPPELGANGER_ACCEPTANCE_SMOKE=1` to run the end-to-end dataset
//! criteria with the short training preset. Pass criterion numbers as
//! arguments to run a subset.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use doppelganger::config::PipelineConfig;
use doppelganger::pipeline::{self, generate, read_json, Generated};
use doppelganger_core::baselines::{ba_graph, chung_lu, er_graph};
use doppelganger_core::embedding::{EmbeddingConfig, LinkModel, NodeFeatures};
use doppelganger_core::gan::{
    critic_loss, critic_loss_and_grad, embedding_mmd, embedding_mmd_with_bandwidth, generator_loss,
    generator_loss_and_grad, latent_batch, sample_embeddings, train_gan, Critic, GanConfig,
    Generator,
};
use doppelganger_core::graph::{edge_overlap, Graph, NodeCorrespondence};
use doppelganger_core::graphic::is_graphic;
use doppelganger_core::linalg::Matrix;
use doppelganger_core::metrics::report::{
    global_metrics, CHARACTERISTIC_PATH_LENGTH, CLUSTERING_COEFFICIENT, GINI_COEFFICIENT, LCC,
    POWERLAW_EXPONENT, REL_EDGE_DISTR_ENTROPY, SQUARE_COUNT, TRIANGLE_COUNT, WEDGE_COUNT,
};
use doppelganger_core::metrics::{
    degree_distribution, gini_coefficient, mmd, powerlaw_exponent,
    relative_edge_distribution_entropy, square_count, triangle_count, wedge_count,
};
use doppelganger_core::realization::{havel_hakimi, improved_hh, PairScores};
use doppelganger_core::rng::{derive_seed, mix64, seeded};
use rand::Rng;
use rayon::prelude::*;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Blocked,
}

struct Outcome {
    status: Status,
    summary: String,
    details: Vec<String>,
}

impl Outcome {
    fn new(status: Status, summary: impl Into<String>, details: Vec<String>) -> Self {
        Outcome {
            status,
            summary: summary.into(),
            details,
        }
    }
}

/// Fail beats blocked beats pass.
fn combine(parts: &[Status]) -> Status {
    if parts.contains(&Status::Fail) {
        Status::Fail
    } else if parts.contains(&Status::Blocked) {
        Status::Blocked
    } else {
        Status::Pass
    }
}

fn pass_if(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

// ---------------------------------------------------------------- datasets

struct Dataset {
    name: &'static str,
    nodes: usize,
    edges: usize,
}

const CORA_ML: Dataset = Dataset {
    name: "cora_ml",
    nodes: 2810,
    edges: 6783,
};
const CITESEER: Dataset = Dataset {
    name: "citeseer",
    nodes: 2120,
    edges: 3679,
};
const GENE: Dataset = Dataset {
    name: "gene",
    nodes: 814,
    edges: 1436,
};

fn data_dir() -> PathBuf {
    std::env::var_os("DOPPELGANGER_DATA_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"))
}

fn dataset_file(d: &Dataset, ext: &str) -> Option<PathBuf> {
    let p = data_dir().join(format!("{}.{ext}", d.name));
    p.is_file().then_some(p)
}

/// Largest connected component of a dataset, or why it is unusable.
fn load(d: &Dataset) -> Result<Graph, String> {
    let path = dataset_file(d, "edges")
        .ok_or_else(|| format!("{}.edges not found in {}", d.name, data_dir().display()))?;
    let g = pipeline::ingest(&path, None, None)
        .map_err(|e| e.to_string())?
        .graph;
    if (g.node_count(), g.edge_count()) != (d.nodes, d.edges) {
        return Err(format!(
            "{}: largest component has {} nodes and {} edges, expected {} and {}",
            d.name,
            g.node_count(),
            g.edge_count(),
            d.nodes,
            d.edges
        ));
    }
    Ok(g)
}

fn smoke() -> bool {
    std::env::var("DOPPELGANGER_ACCEPTANCE_SMOKE").is_ok_and(|v| v == "1")
}

// ------------------------------------------------------- 1. random graphs

/// A published `mean(sd) x 10^exp` cell, printed with two decimals.
#[derive(Clone, Copy)]
struct Cell {
    metric: &'static str,
    mean: f64,
    sd: f64,
    exp: i32,
}

const fn cell(metric: &'static str, mean: f64, sd: f64, exp: i32) -> Cell {
    Cell {
        metric,
        mean,
        sd,
        exp,
    }
}

const OVERLAP: &str = "edge_overlap";

const ER_ROW: [Cell; 10] = [
    cell(OVERLAP, 4.03, 0.73, -3),
    cell(CLUSTERING_COEFFICIENT, 1.53, 0.16, -3),
    cell(CHARACTERISTIC_PATH_LENGTH, 3.89, 0.02, 0),
    cell(TRIANGLE_COUNT, 8.64, 0.94, 1),
    cell(SQUARE_COUNT, 0.00, 0.00, 0),
    cell(LCC, 2.00, 0.00, 3),
    cell(POWERLAW_EXPONENT, 1.50, 0.00, 0),
    cell(WEDGE_COUNT, 6.38, 0.14, 4),
    cell(REL_EDGE_DISTR_ENTROPY, 9.92, 0.00, -1),
    cell(GINI_COEFFICIENT, 1.96, 0.04, -1),
];

const BA_ROW: [Cell; 10] = [
    cell(OVERLAP, 1.81, 0.14, -2),
    cell(CLUSTERING_COEFFICIENT, 7.38, 0.73, -4),
    cell(CHARACTERISTIC_PATH_LENGTH, 3.41, 0.02, 0),
    cell(TRIANGLE_COUNT, 6.89, 0.53, 2),
    cell(SQUARE_COUNT, 3.44, 1.18, 1),
    cell(LCC, 2.00, 0.00, 3),
    cell(POWERLAW_EXPONENT, 3.13, 0.12, 0),
    cell(WEDGE_COUNT, 1.45, 0.06, 5),
    cell(REL_EDGE_DISTR_ENTROPY, 9.58, 0.01, -1),
    cell(GINI_COEFFICIENT, 3.64, 0.02, -1),
];

/// Square count is listed in the table but is not part of the criterion.
fn in_criterion(metric: &str) -> bool {
    metric != SQUARE_COUNT
}

const TRIALS: usize = 100;

fn model_row(
    name: &str,
    row: &[Cell],
    make: impl Fn(u64) -> Graph + Sync,
) -> (Status, Vec<String>) {
    let per_trial: Vec<BTreeMap<&'static str, f64>> = (0..TRIALS as u64)
        .into_par_iter()
        .map(|k| {
            let g = make(derive_seed(1000, k));
            let partner = make(derive_seed(2000, k));
            let mut m: BTreeMap<&'static str, f64> = global_metrics(&g)
                .into_iter()
                .map(|e| (e.name, e.value.value))
                .collect();
            let eo = edge_overlap(&partner, &g, &NodeCorrespondence::identity(g.node_count()))
                .expect("sample has edges");
            m.insert(OVERLAP, eo);
            m
        })
        .collect();
    let mut details = Vec::new();
    let mut statuses = Vec::new();
    for c in row {
        let xs: Vec<f64> = per_trial.iter().map(|m| m[c.metric]).collect();
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        let sd = (xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (xs.len() - 1) as f64)
            .sqrt();
        let scale = 10f64.powi(c.exp);
        let target = c.mean * scale;
        let half_unit = 0.005 * scale;
        let strict = 3.0 * c.sd * scale;
        let band = strict + half_unit;
        let dev = (mean - target).abs();
        let ok = dev <= band;
        let counted = in_criterion(c.metric);
        if counted {
            statuses.push(pass_if(ok));
        }
        details.push(format!(
            "{name} {:<28} mean {:<12.6e} sd {:<10.3e} table {:.2}({:.2})e{} |dev| {:.3e} band {:.3e} strict {}{}{}",
            c.metric,
            mean,
            sd,
            c.mean,
            c.sd,
            c.exp,
            dev,
            band,
            if dev <= strict { "in" } else { "out" },
            if ok { "" } else { "  <-- outside" },
            if counted { "" } else { "  (not scored)" },
        ));
    }
    (combine(&statuses), details)
}

fn table_reproduction() -> Outcome {
    let (er, mut details) = model_row("ER", &ER_ROW, |s| er_graph(2000, 0.004, s).unwrap());
    let (ba, ba_details) = model_row("BA", &BA_ROW, |s| ba_graph(2000, 4, s).unwrap());
    details.extend(ba_details);
    let status = combine(&[er, ba]);
    Outcome::new(
        status,
        format!("{TRIALS} ER(2000, 0.004) and {TRIALS} BA(2000, 4) graphs, means within 3 published sd at printed precision"),
        details,
    )
}

// ----------------------------------------------- 2. degree-based identity

fn shuffle<T>(v: &mut [T], seed: u64) {
    let mut rng = seeded(seed);
    for i in (1..v.len()).rev() {
        v.swap(i, rng.random_range(0..=i));
    }
}

/// Random graph on at most 200 nodes with shuffled node ids.
fn random_source_graph(seed: u64) -> Graph {
    let mut rng = seeded(seed);
    let n = rng.random_range(2..=200);
    let g = match rng.random_range(0..3) {
        0 => er_graph(n, rng.random_range(0.01..0.5), mix64(seed)).unwrap(),
        1 => {
            let m = rng.random_range(1..n.min(6));
            ba_graph(n, m, mix64(seed)).unwrap()
        }
        _ => {
            let weights: Vec<usize> = (0..n)
                .map(|_| 1 + (rng.random::<f64>().powi(3) * 40.0) as usize)
                .collect();
            chung_lu(&weights, mix64(seed))
        }
    };
    let mut perm: Vec<usize> = (0..n).collect();
    shuffle(&mut perm, seed ^ 0x55);
    g.relabel(&perm)
}

fn random_scores(n: usize, seed: u64) -> PairScores {
    let mut rng = seeded(seed);
    PairScores::from_upper_triangle(
        n,
        (0..PairScores::pair_count(n))
            .map(|_| rng.random::<f64>())
            .collect(),
    )
}

/// Whether `realized` matches `source` on the four degree-based globals
/// and has a zero degree-distribution MMD.
fn degree_metrics_match(realized: &Graph, source: &Graph) -> bool {
    let same = |a: f64, b: f64| a.to_bits() == b.to_bits() || (a.is_nan() && b.is_nan());
    let d = mmd(&degree_distribution(realized), &degree_distribution(source));
    wedge_count(realized) == wedge_count(source)
        && same(
            powerlaw_exponent(realized).value,
            powerlaw_exponent(source).value,
        )
        && relative_edge_distribution_entropy(realized)
            .ok()
            .map(f64::to_bits)
            == relative_edge_distribution_entropy(source)
                .ok()
                .map(f64::to_bits)
        && gini_coefficient(realized).ok().map(f64::to_bits)
            == gini_coefficient(source).ok().map(f64::to_bits)
        && d.is_ok_and(|v| v <= 1e-12)
}

struct Tally {
    classic: usize,
    improved: usize,
    skipped: usize,
    total: usize,
}

fn realize_both(source: &Graph, oracle_seed: u64, t: &mut Tally) {
    let targets = source.degrees();
    t.total += 1;
    if havel_hakimi(&targets).is_ok_and(|g| degree_metrics_match(&g, source)) {
        t.classic += 1;
    }
    let r = improved_hh(&targets, &random_scores(targets.len(), oracle_seed), false).unwrap();
    if !r.skipped_hubs.is_empty() {
        t.skipped += 1;
    }
    if degree_metrics_match(&r.graph, source) {
        t.improved += 1;
    }
}

fn degree_identity() -> Outcome {
    let mut t = Tally {
        classic: 0,
        improved: 0,
        skipped: 0,
        total: 0,
    };
    for k in 0..200 {
        realize_both(
            &random_source_graph(derive_seed(70, k)),
            derive_seed(80, k),
            &mut t,
        );
    }
    let mut details = vec![format!(
        "random sequences: classic {}/{} match, improved {}/{} match ({} with skipped hubs, random link scores)",
        t.classic, t.total, t.improved, t.total, t.skipped
    )];
    let mut statuses = vec![pass_if(t.classic == t.total && t.improved == t.total)];
    for (i, d) in [&CORA_ML, &CITESEER, &GENE].into_iter().enumerate() {
        match load(d) {
            Ok(g) => {
                let mut dt = Tally {
                    classic: 0,
                    improved: 0,
                    skipped: 0,
                    total: 0,
                };
                realize_both(&g, derive_seed(90, i as u64), &mut dt);
                details.push(format!(
                    "{}: classic {}, improved {}{}",
                    d.name,
                    if dt.classic == 1 { "match" } else { "MISMATCH" },
                    if dt.improved == 1 {
                        "match"
                    } else {
                        "MISMATCH"
                    },
                    if dt.skipped == 1 {
                        " (skipped hubs)"
                    } else {
                        ""
                    },
                ));
                statuses.push(pass_if(dt.classic == 1 && dt.improved == 1));
            }
            Err(e) => {
                details.push(format!("{}: blocked, {e}", d.name));
                statuses.push(Status::Blocked);
            }
        }
    }
    Outcome::new(
        combine(&statuses),
        "both realizations keep wedge count, powerlaw exponent, entropy, Gini and degree MMD",
        details,
    )
}

// ------------------------------------------------------ 3. clique forcing

/// Nonincreasing graphic sequence with `d_k - d_{k+1} >= k - 1`.
fn gap_sequence(k: usize, seed: u64) -> Vec<usize> {
    let mut rng = seeded(seed);
    loop {
        let n = rng.random_range(k + 2..=40);
        let mut tail: Vec<usize> = (0..n - k)
            .map(|_| rng.random_range(0..=6.min(n - 1)))
            .collect();
        tail.sort_unstable_by(|a, b| b.cmp(a));
        let floor = tail[0] + k - 1;
        if floor > n - 1 {
            continue;
        }
        let mut head: Vec<usize> = (0..k).map(|_| rng.random_range(floor..n)).collect();
        head.sort_unstable_by(|a, b| b.cmp(a));
        head.extend(tail);
        if is_graphic(&head) {
            return head;
        }
    }
}

fn clique_forcing() -> Outcome {
    let mut built = 0;
    let mut with_clique = 0;
    let mut details = Vec::new();
    'outer: for k in 3..=8usize {
        for t in 0..9 {
            if built == 50 {
                break 'outer;
            }
            let seq = gap_sequence(k, derive_seed(300 + k as u64, t));
            let g = havel_hakimi(&seq).expect("graphic by construction");
            let clique = (0..k).all(|a| (a + 1..k).all(|b| g.has_edge(a, b)));
            if clique {
                with_clique += 1;
            } else {
                details.push(format!("k={k}: no clique on the first nodes of {seq:?}"));
            }
            built += 1;
        }
    }
    details.push(format!(
        "{with_clique}/{built} realizations contain the clique"
    ));
    Outcome::new(
        pass_if(built == 50 && with_clique == built),
        "50 sequences with a degree gap of at least k-1 at position k, k in 3..=8",
        details,
    )
}

// ------------------------------------------------------- 4. metric oracles

fn small_random_graph(seed: u64) -> Graph {
    let mut rng = seeded(seed);
    let n = rng.random_range(1..=12);
    let p: f64 = rng.random_range(0.05..0.95);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    Graph::from_simple_edges(n, edges)
}

/// Triangles, 4-cliques and wedges by enumeration.
fn enumerate_counts(g: &Graph) -> (u64, u64, u64) {
    let n = g.node_count();
    let e = |a, b| g.has_edge(a, b);
    let (mut tri, mut sq, mut wedges) = (0, 0, 0);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if e(a, b) && e(b, c) && e(a, c) {
                    tri += 1;
                    for d in c + 1..n {
                        if e(a, d) && e(b, d) && e(c, d) {
                            sq += 1;
                        }
                    }
                }
            }
        }
    }
    for center in 0..n {
        for a in 0..n {
            for b in a + 1..n {
                if a != center && b != center && e(center, a) && e(center, b) {
                    wedges += 1;
                }
            }
        }
    }
    (tri, sq, wedges)
}

fn metric_oracles() -> Outcome {
    let mut agree = 0;
    let mut details = Vec::new();
    for k in 0..200 {
        let g = small_random_graph(derive_seed(400, k));
        let expected = enumerate_counts(&g);
        let got = (triangle_count(&g), square_count(&g), wedge_count(&g));
        if got == expected {
            agree += 1;
        } else {
            details.push(format!(
                "graph {k}: counted {got:?}, enumerated {expected:?}"
            ));
        }
    }
    details.push(format!("{agree}/200 small graphs agree with enumeration"));
    let mut statuses = vec![pass_if(agree == 200)];
    match load(&CORA_ML) {
        Ok(g) => {
            let (t, s) = (triangle_count(&g), square_count(&g));
            details.push(format!(
                "cora_ml LCC: {} nodes, {} edges, {t} triangles (want 2810), {s} squares (want 517)",
                g.node_count(),
                g.edge_count()
            ));
            statuses.push(pass_if(t == 2810 && s == 517));
        }
        Err(e) => {
            details.push(format!("cora_ml: blocked, {e}"));
            statuses.push(Status::Blocked);
        }
    }
    Outcome::new(
        combine(&statuses),
        "subgraph counts against enumeration and dataset values",
        details,
    )
}

// ---------------------------------------------------------- 5. graphicality

fn multisets(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for d in (0..=max).rev() {
            cur.push(d);
            rec(n, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, n - 1, &mut Vec::new(), &mut out);
    }
    out
}

fn graphicality() -> Outcome {
    let mut checked = 0usize;
    let mut disagreements = Vec::new();
    for n in 1..=8 {
        for (i, seq) in multisets(n).into_iter().enumerate() {
            let mut permuted = seq.clone();
            shuffle(&mut permuted, (n * 100_000 + i) as u64);
            for s in [seq, permuted] {
                checked += 1;
                if is_graphic(&s) != havel_hakimi(&s).is_ok() {
                    disagreements.push(s);
                }
            }
        }
    }
    let mut rng = seeded(500);
    let mut graphic = 0;
    for _ in 0..1000 {
        let n = rng.random_range(9..=60);
        let cap = rng.random_range(1..n);
        let mut seq: Vec<usize> = (0..n).map(|_| rng.random_range(0..=cap)).collect();
        if seq.iter().sum::<usize>() % 2 == 1 {
            seq[0] = if seq[0] > 0 { seq[0] - 1 } else { 1 };
        }
        checked += 1;
        let ok = is_graphic(&seq);
        graphic += usize::from(ok);
        if ok != havel_hakimi(&seq).is_ok() {
            disagreements.push(seq);
        }
    }
    let mut details = vec![format!(
        "{checked} sequences checked, {graphic}/1000 random long sequences graphic"
    )];
    details.extend(
        disagreements
            .iter()
            .take(5)
            .map(|s| format!("disagreement on {s:?}")),
    );
    Outcome::new(
        pass_if(disagreements.is_empty()),
        "graphicality test agrees with realization success",
        details,
    )
}

// -------------------------------------------------------- 6. gradient checks

const FD_STEP: f64 = 1e-5;
const FD_TOLERANCE: f64 = 1e-4;

fn relative_error(fd: f64, analytic: f64) -> f64 {
    (fd - analytic).abs() / fd.abs().max(analytic.abs()).max(1e-8)
}

/// Worst relative error between `analytic` and central differences of
/// `loss`, with `nudge` shifting one parameter.
fn worst_error<M: Clone>(
    model: &M,
    analytic: &[Vec<f64>],
    nudge: impl Fn(&mut M, usize, usize, f64),
    loss: impl Fn(&M) -> f64,
) -> f64 {
    let mut worst: f64 = 0.0;
    for (k, tensor) in analytic.iter().enumerate() {
        for (i, &a) in tensor.iter().enumerate() {
            let mut plus = model.clone();
            nudge(&mut plus, k, i, FD_STEP);
            let mut minus = model.clone();
            nudge(&mut minus, k, i, -FD_STEP);
            let fd = (loss(&plus) - loss(&minus)) / (2.0 * FD_STEP);
            worst = worst.max(relative_error(fd, a));
        }
    }
    worst
}

fn random_matrix(rows: usize, cols: usize, seed: u64) -> Matrix {
    let mut rng = seeded(seed);
    Matrix::from_vec(
        rows,
        cols,
        (0..rows * cols)
            .map(|_| rng.random_range(-1.5..1.5))
            .collect(),
    )
}

fn gradient_checks() -> Outcome {
    let g = er_graph(12, 0.3, 601).unwrap();
    let x = NodeFeatures::Dense(random_matrix(12, 5, 1));
    let cfg = EmbeddingConfig {
        hidden_dim: 4,
        embedding_dim: 8,
        predictor_hidden: 3,
        ..EmbeddingConfig::default()
    };
    let model = LinkModel::init(5, &cfg, 2);
    let pairs: Vec<(usize, usize)> = (0..12)
        .flat_map(|i| (i + 1..12).map(move |j| (i, j)))
        .step_by(5)
        .collect();
    let labels: Vec<f64> = pairs
        .iter()
        .map(|&(i, j)| f64::from(u8::from(g.has_edge(i, j))))
        .collect();
    let (_, grad) = model.loss_and_grad(&g, &x, &pairs, &labels);
    let analytic: Vec<Vec<f64>> = grad.slices().iter().map(|s| s.to_vec()).collect();
    let link = worst_error(
        &model,
        &analytic,
        |m, k, i, h| m.params_mut()[k][i] += h,
        |m| m.loss(&g, &x, &pairs, &labels),
    );

    let gan = GanConfig {
        latent_dim: 4,
        generator_hidden: vec![6, 5],
        critic_hidden: vec![7, 5],
        ..GanConfig::default()
    };
    let mut rng = seeded(3);
    let critic = Critic::init(&gan, 8, &mut rng);
    let real = random_matrix(6, 8, 4);
    let fake = random_matrix(6, 8, 5);
    let t: Vec<f64> = (0..6).map(|_| rng.random::<f64>()).collect();
    let (_, _, cgrad) = critic_loss_and_grad(&critic, &real, &fake, &t, gan.penalty_weight);
    let analytic: Vec<Vec<f64>> = cgrad.slices().iter().map(|s| s.to_vec()).collect();
    let crit = worst_error(
        &critic,
        &analytic,
        |c, k, i, h| c.mlp.params_mut()[k][i] += h,
        |c| critic_loss(c, &real, &fake, &t, gan.penalty_weight),
    );

    let generator = Generator::init(&gan, 8, 0, &mut rng);
    let z = latent_batch(7, gan.latent_dim, &mut rng);
    let (_, ggrad) = generator_loss_and_grad(&generator, &critic, &z);
    let analytic: Vec<Vec<f64>> = ggrad.slices().iter().map(|s| s.to_vec()).collect();
    let gen = worst_error(
        &generator,
        &analytic,
        |g, k, i, h| g.mlp.params_mut()[k][i] += h,
        |g| generator_loss(g, &critic, &z),
    );

    let details = vec![
        format!("encoder + predictor loss on 12 nodes, hidden 4, embedding 8: worst relative error {link:.2e}"),
        format!("critic loss with gradient penalty: worst relative error {crit:.2e}"),
        format!("generator loss: worst relative error {gen:.2e}"),
    ];
    Outcome::new(
        pass_if(link <= FD_TOLERANCE && crit <= FD_TOLERANCE && gen <= FD_TOLERANCE),
        format!("analytic gradients within relative error {FD_TOLERANCE:e} of central differences"),
        details,
    )
}

// ------------------------------------------------- 7-9. dataset pipelines

const PIPELINE_RUNS: u64 = 5;

fn pipeline_dir() -> PathBuf {
    Path::new(env!("CARGO_TARGET_TMPDIR")).join(if smoke() {
        "acceptance-cora-smoke"
    } else {
        "acceptance-cora"
    })
}

/// Seeded end-to-end runs on the dataset, resumable through each run's
/// manifest.
fn dataset_runs(d: &Dataset) -> Result<Vec<Generated>, String> {
    let graph = dataset_file(d, "edges")
        .ok_or_else(|| format!("{}.edges not found in {}", d.name, data_dir().display()))?;
    (0..PIPELINE_RUNS)
        .map(|seed| {
            let cfg = PipelineConfig {
                graph: Some(graph.clone()),
                features: dataset_file(d, "features"),
                labels: dataset_file(d, "labels"),
                seed: Some(seed),
                smoke: smoke(),
                ..PipelineConfig::default()
            };
            let dir = pipeline_dir().join(format!("seed-{seed}"));
            generate(&cfg, &dir, false).map_err(|e| format!("seed {seed}: {e}"))
        })
        .collect()
}

fn number(v: &Value, key: &str) -> f64 {
    v[key].as_f64().unwrap_or(f64::NAN)
}

fn realization_quality(runs: &Result<Vec<Generated>, String>) -> Outcome {
    let runs = match runs {
        Ok(r) => r,
        Err(e) => {
            return Outcome::new(
                Status::Blocked,
                "needs the cora_ml dataset",
                vec![e.clone()],
            )
        }
    };
    let mut details = Vec::new();
    let mut degree_ok = true;
    let mut overlaps = Vec::new();
    let (mut tri, mut sq) = (Vec::new(), Vec::new());
    for (k, r) in runs.iter().enumerate() {
        let (o, g) = (&r.report["original"], &r.report["generated"]);
        let exact = [
            WEDGE_COUNT,
            POWERLAW_EXPONENT,
            REL_EDGE_DISTR_ENTROPY,
            GINI_COEFFICIENT,
        ]
        .iter()
        .all(|m| o[*m] == g[*m]);
        degree_ok &= exact;
        overlaps.push(number(g, OVERLAP));
        tri.push(number(g, TRIANGLE_COUNT));
        sq.push(number(g, SQUARE_COUNT));
        details.push(format!(
            "seed {k}: triangles {} squares {} overlap {:.4}% deficit {} degree globals {}",
            number(g, TRIANGLE_COUNT),
            number(g, SQUARE_COUNT),
            100.0 * number(g, OVERLAP),
            r.realization["stub_deficit"],
            if exact { "exact" } else { "DIFFER" },
        ));
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let worst_overlap = overlaps.iter().copied().fold(0.0, f64::max);
    if smoke() {
        details.push("smoke preset: only exact degree globals and overlap <= 5% are scored".into());
        return Outcome::new(
            pass_if(degree_ok && worst_overlap <= 0.05),
            format!(
                "{} smoke runs, worst overlap {:.3}%",
                runs.len(),
                100.0 * worst_overlap
            ),
            details,
        );
    }
    let (mt, ms) = (mean(&tri), mean(&sq));
    let ok = degree_ok
        && worst_overlap <= 0.01
        && (2500.0..=3700.0).contains(&mt)
        && (800.0..=5000.0).contains(&ms);
    Outcome::new(
        pass_if(ok),
        format!(
            "{} runs: mean triangles {mt:.1} in [2500, 3700], mean squares {ms:.1} in [800, 5000], worst overlap {:.3}% <= 1%",
            runs.len(),
            100.0 * worst_overlap
        ),
        details,
    )
}

fn predictor_floor(runs: &Result<Vec<Generated>, String>) -> Outcome {
    let runs = match runs {
        Ok(r) => r,
        Err(e) => {
            return Outcome::new(
                Status::Blocked,
                "needs the cora_ml dataset",
                vec![e.clone()],
            )
        }
    };
    if smoke() {
        return Outcome::new(
            Status::Blocked,
            "needs the full training schedule",
            Vec::new(),
        );
    }
    let scores = read_json(&runs[0].workdir.join(pipeline::LINK_SCORES)).map_err(|e| e.to_string());
    match scores {
        Ok(s) => {
            let auc = number(&s, "auc");
            Outcome::new(
                pass_if(auc >= 0.90),
                format!("all-pair AUC {auc:.4} >= 0.90"),
                vec![format!("AP {:.4}", number(&s, "ap"))],
            )
        }
        Err(e) => Outcome::new(Status::Fail, "link scores unreadable", vec![e]),
    }
}

fn point_mass_mmd() -> (Status, String) {
    let point = [0.5, -1.0, 2.0, 0.0, 1.5, -0.5, 0.25, 1.0];
    let rows = 500;
    let data = Matrix::from_vec(
        rows,
        point.len(),
        point
            .iter()
            .copied()
            .cycle()
            .take(rows * point.len())
            .collect(),
    );
    let cfg = GanConfig::default();
    let trained = train_gan(&data, None, &cfg, 1, |_, _| {}).expect("training runs");
    let fake = sample_embeddings(&trained.generator, rows, 9).embeddings;
    let v = embedding_mmd(&data, &fake).expect("same width");
    let unit = embedding_mmd_with_bandwidth(&data, &fake, 1.0).expect("same width");
    let spread = fake
        .as_slice()
        .chunks(point.len())
        .map(|r| {
            r.iter()
                .zip(&point)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
        })
        .sum::<f64>()
        / rows as f64;
    (
        pass_if(v < 0.05),
        format!(
            "point mass: MMD {v:.4} (< 0.05 required) after {} generator steps, mean distance to the point {spread:.3e}, MMD at unit bandwidth {unit:.2e} (not scored)",
            cfg.generator_steps
        ),
    )
}

fn gan_sanity(runs: &Result<Vec<Generated>, String>) -> Outcome {
    let (point_status, point_line) = point_mass_mmd();
    let mut details = vec![point_line];
    let dataset = match runs {
        Err(e) => {
            details.push(format!("cora_ml: blocked, {e}"));
            Status::Blocked
        }
        Ok(_) if smoke() => {
            details.push("cora_ml: blocked, needs the full training schedule".into());
            Status::Blocked
        }
        Ok(r) => match read_json(&r[0].workdir.join(pipeline::GAN_SUMMARY)) {
            Ok(s) => {
                let ks = number(&s, "distance_ks");
                details.push(format!(
                    "cora_ml: pairwise-distance KS {ks:.4} (<= 0.1 required)"
                ));
                pass_if(ks <= 0.1)
            }
            Err(e) => {
                details.push(format!("cora_ml: {e}"));
                Status::Fail
            }
        },
    };
    Outcome::new(
        combine(&[point_status, dataset]),
        "generated embeddings match the data distribution",
        details,
    )
}

// ----------------------------------------------------------- 10. determinism

const FAST_CONFIG: &str = r#"{
  "embedding": {"hidden_dim": 32, "embedding_dim": 16, "predictor_hidden": 16},
  "gan": {"generator_hidden": [16, 32], "critic_hidden": [32, 16]},
  "evaluation": {"diagnostics_every": 100, "diagnostics_rows": 50, "cdf_bins": 20}
}"#;

const STAGES: &[&[&str]] = &[
    &[
        "--seed", "7", "baseline", "er", "--nodes", "50", "--p", "0.15", "--out", "g.edges",
    ],
    &["ingest", "g.edges", "--out", "ingested"],
    &[
        "--format",
        "json",
        "metrics",
        "g.edges",
        "--reference",
        "g.edges",
    ],
    &[
        "hh",
        "--from-graph",
        "g.edges",
        "--out",
        "hh.edges",
        "--trace",
        "hh.trace",
    ],
    &[
        "--seed",
        "3",
        "--config",
        "fast.json",
        "train-embed",
        "g.edges",
        "--out",
        "embed",
        "--smoke",
    ],
    &[
        "--seed",
        "3",
        "--config",
        "fast.json",
        "train-gan",
        "embed/embeddings.tsv",
        "--out",
        "gan",
        "--smoke",
    ],
    &[
        "--seed",
        "3",
        "sample",
        "gan/generator.json",
        "--count",
        "50",
        "--out",
        "sampled.tsv",
    ],
    &[
        "improved-hh",
        "--from-graph",
        "g.edges",
        "--embeddings",
        "sampled.tsv",
        "--model",
        "embed/link_model.json",
        "--out",
        "improved.edges",
        "--trace",
        "improved.trace",
    ],
    &["--format", "json", "compare", "g.edges", "improved.edges"],
    &[
        "--seed",
        "5",
        "baseline",
        "ba",
        "--reference",
        "g.edges",
        "--out",
        "ba.edges",
    ],
    &[
        "--seed",
        "5",
        "baseline",
        "chung-lu",
        "--reference",
        "g.edges",
        "--out",
        "cl.edges",
    ],
    &[
        "--seed",
        "5",
        "baseline",
        "conf",
        "--reference",
        "g.edges",
        "--overlap",
        "0.9",
        "--out",
        "conf.edges",
    ],
    &[
        "--seed",
        "5",
        "--repeat",
        "3",
        "baseline",
        "er",
        "--reference",
        "g.edges",
        "--out",
        "er-trials",
    ],
    &[
        "--seed",
        "11",
        "--config",
        "fast.json",
        "--workdir",
        "run",
        "generate",
        "--graph",
        "g.edges",
        "--smoke",
        "--trace",
    ],
];

fn run_stages(dir: &Path) -> Result<(), String> {
    std::fs::write(dir.join("fast.json"), FAST_CONFIG).map_err(|e| e.to_string())?;
    for (i, args) in STAGES.iter().enumerate() {
        let out = Command::new(env!("CARGO_BIN_EXE_doppelganger"))
            .args(*args)
            .current_dir(dir)
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!(
                "{}: {}",
                args.join(" "),
                String::from_utf8_lossy(&out.stderr)
            ));
        }
        std::fs::write(dir.join(format!("stdout-{i:02}.txt")), &out.stdout)
            .map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn files_under(root: &Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in std::fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.push(p.strip_prefix(root).unwrap().to_path_buf());
            }
        }
    }
    out.sort();
    out
}

/// Manifest with wall-clock durations removed.
fn manifest_without_timing(path: &Path) -> Value {
    let mut v: Value = serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap();
    for s in v["stages"].as_array_mut().into_iter().flatten() {
        s.as_object_mut().unwrap().remove("duration_ms");
    }
    v
}

fn determinism() -> Outcome {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [a.path(), b.path()] {
        if let Err(e) = run_stages(d) {
            return Outcome::new(Status::Fail, "a stage failed", vec![e]);
        }
    }
    let fa = files_under(a.path());
    let fb = files_under(b.path());
    let mut details = Vec::new();
    if fa != fb {
        details.push(format!("file sets differ: {fa:?} vs {fb:?}"));
    }
    let mut identical = 0;
    for f in &fa {
        let (pa, pb) = (a.path().join(f), b.path().join(f));
        let same = if f.file_name().is_some_and(|n| n == "manifest.json") {
            manifest_without_timing(&pa) == manifest_without_timing(&pb)
        } else {
            std::fs::read(&pa).ok() == std::fs::read(&pb).ok()
        };
        if same {
            identical += 1;
        } else {
            details.push(format!("{} differs", f.display()));
        }
    }
    details.push(format!(
        "{identical}/{} artifacts identical across two runs of {} commands (manifest compared without durations)",
        fa.len(),
        STAGES.len()
    ));

    let before: Vec<Vec<u8>> = fa
        .iter()
        .map(|f| std::fs::read(a.path().join(f)).unwrap())
        .collect();
    let rerun = Command::new(env!("CARGO_BIN_EXE_doppelganger"))
        .args(STAGES[STAGES.len() - 1])
        .current_dir(a.path())
        .output()
        .unwrap();
    let log = String::from_utf8_lossy(&rerun.stderr);
    let resumed =
        rerun.status.success() && log.matches("up to date").count() == pipeline::STAGES.len();
    let unchanged = fa
        .iter()
        .zip(&before)
        .filter(|(f, _)| f.starts_with("run") && !f.ends_with("manifest.json"))
        .all(|(f, bytes)| std::fs::read(a.path().join(f)).unwrap() == *bytes);
    details.push(format!(
        "rerun in place: {} stages up to date, outputs {}",
        log.matches("up to date").count(),
        if unchanged { "unchanged" } else { "CHANGED" }
    ));
    Outcome::new(
        pass_if(fa == fb && identical == fa.len() && resumed && unchanged),
        "every command reproduces its artifacts byte for byte",
        details,
    )
}

// --------------------------------------------------------------------- main

fn main() {
    let only: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let wanted = |k: usize| only.is_empty() || only.contains(&k);
    let needs_runs = [7, 8, 9].iter().any(|&k| wanted(k));
    let mut results: Vec<(usize, &str, Status)> = Vec::new();
    let mut report = |k: usize, title: &'static str, f: &dyn Fn() -> Outcome| {
        if !wanted(k) {
            return;
        }
        let started = Instant::now();
        let o = f();
        let tag = match o.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Blocked => "BLOCKED",
        };
        println!(
            "[{tag}] {k:>2}. {title}: {} ({:.1}s)",
            o.summary,
            started.elapsed().as_secs_f64()
        );
        for d in &o.details {
            println!("          {d}");
        }
        results.push((k, title, o.status));
    };

    report(1, "random graph properties", &table_reproduction);
    report(
        2,
        "degree-based properties survive realization",
        &degree_identity,
    );
    report(3, "degree gaps force cliques", &clique_forcing);
    report(4, "metric oracles", &metric_oracles);
    report(5, "graphicality cross-check", &graphicality);
    report(6, "gradient checks", &gradient_checks);
    let runs = if needs_runs && load(&CORA_ML).is_ok() {
        dataset_runs(&CORA_ML)
    } else {
        load(&CORA_ML).map(|_| Vec::new())
    };
    report(7, "improved realization on cora_ml", &|| {
        realization_quality(&runs)
    });
    report(8, "link predictor floor", &|| predictor_floor(&runs));
    report(9, "GAN sanity", &|| gan_sanity(&runs));
    report(10, "determinism", &determinism);

    let count = |s: Status| results.iter().filter(|r| r.2 == s).count();
    println!(
        "acceptance: {} passed, {} failed, {} blocked",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Blocked)
    );
    if results.iter().any(|r| r.2 != Status::Pass) {
        std::process::exit(1);
    }
}
