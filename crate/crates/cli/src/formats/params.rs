//! Model parameters as JSON: a list of named tensors with shapes, plus the
//! sizes and constants needed to rebuild the model.

use std::collections::BTreeMap;
use std::path::Path;

use doppelganger_core::embedding::{Encoder, LinkModel, LinkPredictor, SageLayer};
use doppelganger_core::gan::{Critic, Generator};
use doppelganger_core::linalg::Matrix;
use doppelganger_core::nn::{Dense, Mlp};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, Result};

pub const LINK_MODEL: &str = "link_model";
pub const GENERATOR: &str = "generator";
pub const CRITIC: &str = "critic";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tensor {
    pub name: String,
    pub shape: Vec<usize>,
    pub data: Vec<f64>,
}

impl Tensor {
    fn matrix(name: impl Into<String>, m: &Matrix) -> Self {
        Tensor {
            name: name.into(),
            shape: vec![m.rows(), m.cols()],
            data: m.as_slice().to_vec(),
        }
    }

    fn vector(name: impl Into<String>, v: &[f64]) -> Self {
        Tensor {
            name: name.into(),
            shape: vec![v.len()],
            data: v.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamFile {
    pub kind: String,
    pub seed: Option<u64>,
    pub meta: BTreeMap<String, Value>,
    pub tensors: Vec<Tensor>,
}

impl ParamFile {
    fn new(kind: &str, seed: Option<u64>) -> Self {
        ParamFile {
            kind: kind.to_string(),
            seed,
            meta: BTreeMap::new(),
            tensors: Vec::new(),
        }
    }

    fn take(&self, name: &str) -> std::result::Result<&Tensor, String> {
        self.tensors
            .iter()
            .find(|t| t.name == name)
            .ok_or_else(|| format!("missing tensor `{name}`"))
    }

    fn matrix(&self, name: &str) -> std::result::Result<Matrix, String> {
        let t = self.take(name)?;
        match t.shape[..] {
            [r, c] if r * c == t.data.len() => Ok(Matrix::from_vec(r, c, t.data.clone())),
            _ => Err(format!(
                "tensor `{name}` has shape {:?} for {} values",
                t.shape,
                t.data.len()
            )),
        }
    }

    fn vector(&self, name: &str) -> std::result::Result<Vec<f64>, String> {
        let t = self.take(name)?;
        match t.shape[..] {
            [n] if n == t.data.len() => Ok(t.data.clone()),
            _ => Err(format!(
                "tensor `{name}` has shape {:?} for {} values",
                t.shape,
                t.data.len()
            )),
        }
    }

    fn meta_f64(&self, key: &str) -> std::result::Result<f64, String> {
        self.meta
            .get(key)
            .and_then(Value::as_f64)
            .ok_or_else(|| format!("missing meta `{key}`"))
    }

    fn meta_usize(&self, key: &str) -> std::result::Result<usize, String> {
        self.meta
            .get(key)
            .and_then(Value::as_u64)
            .map(|v| v as usize)
            .ok_or_else(|| format!("missing meta `{key}`"))
    }

    fn expect_kind(&self, kind: &str) -> std::result::Result<(), String> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(format!("expected a {kind} file, found {}", self.kind))
        }
    }
}

fn push_sage(out: &mut Vec<Tensor>, prefix: &str, l: &SageLayer) {
    out.push(Tensor::matrix(format!("{prefix}.w_self"), &l.w_self));
    out.push(Tensor::matrix(format!("{prefix}.w_neigh"), &l.w_neigh));
    out.push(Tensor::vector(format!("{prefix}.bias"), &l.bias));
}

fn read_sage(f: &ParamFile, prefix: &str) -> std::result::Result<SageLayer, String> {
    Ok(SageLayer {
        w_self: f.matrix(&format!("{prefix}.w_self"))?,
        w_neigh: f.matrix(&format!("{prefix}.w_neigh"))?,
        bias: f.vector(&format!("{prefix}.bias"))?,
    })
}

pub fn link_model_params(model: &LinkModel, seed: Option<u64>) -> ParamFile {
    let mut f = ParamFile::new(LINK_MODEL, seed);
    let enc = &model.encoder;
    let pred = &model.predictor;
    f.meta
        .insert("input_dim".into(), enc.first.input_dim().into());
    f.meta
        .insert("hidden_dim".into(), enc.first.output_dim().into());
    f.meta
        .insert("embedding_dim".into(), enc.second.output_dim().into());
    f.meta
        .insert("predictor_hidden".into(), pred.hidden().into());
    f.meta.insert("leak".into(), pred.leak.into());
    push_sage(&mut f.tensors, "encoder.first", &enc.first);
    push_sage(&mut f.tensors, "encoder.second", &enc.second);
    f.tensors.push(Tensor::matrix("predictor.w1", &pred.w1));
    f.tensors.push(Tensor::vector("predictor.b1", &pred.b1));
    f.tensors.push(Tensor::vector("predictor.w2", &pred.w2));
    f.tensors.push(Tensor::vector("predictor.b2", &[pred.b2]));
    f
}

pub fn link_model_from(f: &ParamFile) -> std::result::Result<LinkModel, String> {
    f.expect_kind(LINK_MODEL)?;
    let b2 = f.vector("predictor.b2")?;
    let [b2] = b2[..] else {
        return Err("predictor.b2 must hold one value".into());
    };
    let model = LinkModel {
        encoder: Encoder {
            first: read_sage(f, "encoder.first")?,
            second: read_sage(f, "encoder.second")?,
        },
        predictor: LinkPredictor {
            w1: f.matrix("predictor.w1")?,
            b1: f.vector("predictor.b1")?,
            w2: f.vector("predictor.w2")?,
            b2,
            leak: f.meta_f64("leak")?,
        },
    };
    let e = &model.encoder;
    let p = &model.predictor;
    let chained = e.first.output_dim() == e.second.input_dim()
        && e.second.output_dim() == p.dim()
        && p.b1.len() == p.hidden()
        && p.w2.len() == p.hidden();
    if !chained {
        return Err("tensor shapes do not chain".into());
    }
    Ok(model)
}

fn mlp_tensors(out: &mut Vec<Tensor>, mlp: &Mlp) {
    for (k, layer) in mlp.layers.iter().enumerate() {
        out.push(Tensor::matrix(format!("layers.{k}.weight"), &layer.weight));
        out.push(Tensor::vector(format!("layers.{k}.bias"), &layer.bias));
    }
}

fn mlp_from(f: &ParamFile) -> std::result::Result<Mlp, String> {
    let depth = f.meta_usize("layers")?;
    let mut layers = Vec::with_capacity(depth);
    for k in 0..depth {
        let weight = f.matrix(&format!("layers.{k}.weight"))?;
        let bias = f.vector(&format!("layers.{k}.bias"))?;
        if bias.len() != weight.cols() {
            return Err(format!(
                "layer {k}: bias length {} for width {}",
                bias.len(),
                weight.cols()
            ));
        }
        if let Some(prev) = layers.last().map(|l: &Dense| l.weight.cols()) {
            if prev != weight.rows() {
                return Err(format!("layer {k} does not chain"));
            }
        }
        layers.push(Dense { weight, bias });
    }
    if layers.is_empty() {
        return Err("no layers".into());
    }
    Ok(Mlp { layers })
}

pub fn generator_params(g: &Generator, seed: Option<u64>) -> ParamFile {
    let mut f = ParamFile::new(GENERATOR, seed);
    f.meta.insert("layers".into(), g.mlp.layers.len().into());
    f.meta.insert("sizes".into(), g.mlp.sizes().into());
    f.meta
        .insert("label_classes".into(), g.label_classes.into());
    mlp_tensors(&mut f.tensors, &g.mlp);
    f
}

pub fn generator_from(f: &ParamFile) -> std::result::Result<Generator, String> {
    f.expect_kind(GENERATOR)?;
    let mlp = mlp_from(f)?;
    let label_classes = f.meta_usize("label_classes")?;
    if label_classes > mlp.output_dim() {
        return Err("more label classes than outputs".into());
    }
    Ok(Generator { mlp, label_classes })
}

pub fn critic_params(c: &Critic, seed: Option<u64>) -> ParamFile {
    let mut f = ParamFile::new(CRITIC, seed);
    f.meta.insert("layers".into(), c.mlp.layers.len().into());
    f.meta.insert("sizes".into(), c.mlp.sizes().into());
    mlp_tensors(&mut f.tensors, &c.mlp);
    f
}

pub fn critic_from(f: &ParamFile) -> std::result::Result<Critic, String> {
    f.expect_kind(CRITIC)?;
    Ok(Critic { mlp: mlp_from(f)? })
}

pub fn write_params(path: &Path, f: &ParamFile) -> Result<()> {
    let mut bytes = serde_json::to_vec(f).expect("parameter files serialize");
    bytes.push(b'\n');
    super::write_file(path, &bytes)
}

pub fn read_params(path: &Path) -> Result<ParamFile> {
    let text = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_slice(&text).map_err(|e| CliError::parse(path, e.line(), e.to_string()))
}

pub fn read_link_model(path: &Path) -> Result<LinkModel> {
    link_model_from(&read_params(path)?).map_err(|m| CliError::parse(path, 0, m))
}

pub fn read_generator(path: &Path) -> Result<Generator> {
    generator_from(&read_params(path)?).map_err(|m| CliError::parse(path, 0, m))
}
