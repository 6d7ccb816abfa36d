//! TOML model configuration: either an explicit tree/spins/terms triple or
//! a named preset, plus tolerances and an optional second tree.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use spintree_core::model::{gaudin_spec, octahedron_spec, ElementKind, HamiltonianTerm};
use spintree_core::spin::{Spin, SpinConfig, DEFAULT_MAX_DIM};
use spintree_core::tree::{CouplingTree, NodeRef};

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    preset: Option<String>,
    #[serde(default)]
    params: RawParams,
    tree: Option<String>,
    tree2: Option<String>,
    spins: Option<BTreeMap<String, String>>,
    #[serde(default)]
    terms: Vec<RawTerm>,
    #[serde(default)]
    tolerances: RawTolerances,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    #[serde(rename = "J")]
    j: Option<f64>,
    #[serde(rename = "A")]
    a: Option<f64>,
    s: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    node: String,
    op: String,
    coeff: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTolerances {
    commute: Option<f64>,
    spectrum: Option<f64>,
    equality: Option<f64>,
}

impl Default for RawTolerances {
    fn default() -> Self {
        RawTolerances {
            commute: None,
            spectrum: None,
            equality: None,
        }
    }
}

/// Per-check tolerances after defaulting.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    pub commute: f64,
    pub spectrum: f64,
    pub equality: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            commute: 1e-12,
            spectrum: 1e-9,
            equality: 1e-12,
        }
    }
}

/// A fully resolved model: parsed trees, spins, and term list.
#[derive(Debug)]
pub struct ModelConfig {
    pub preset: Option<String>,
    pub tree: CouplingTree,
    pub tree2: Option<CouplingTree>,
    pub spins: SpinConfig,
    pub terms: Vec<HamiltonianTerm>,
    pub tolerances: Tolerances,
}

impl ModelConfig {
    pub fn load(path: &Path, max_dim: Option<usize>) -> Result<ModelConfig, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let raw: RawConfig = toml::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        resolve(raw, max_dim.unwrap_or(DEFAULT_MAX_DIM))
    }
}

fn resolve(raw: RawConfig, max_dim: usize) -> Result<ModelConfig, CliError> {
    let tolerances = Tolerances {
        commute: raw
            .tolerances
            .commute
            .unwrap_or(Tolerances::default().commute),
        spectrum: raw
            .tolerances
            .spectrum
            .unwrap_or(Tolerances::default().spectrum),
        equality: raw
            .tolerances
            .equality
            .unwrap_or(Tolerances::default().equality),
    };

    if let Some(name) = &raw.preset {
        if raw.tree.is_some() || raw.spins.is_some() || !raw.terms.is_empty() {
            return Err(CliError::Config(
                "a preset config cannot also carry explicit tree/spins/terms".into(),
            ));
        }
        let s: Spin = raw
            .params
            .s
            .as_deref()
            .unwrap_or("1/2")
            .parse()
            .map_err(|e| CliError::Config(format!("params.s: {e}")))?;
        let j = raw.params.j.unwrap_or(1.0);
        let a = raw.params.a.unwrap_or(1.0);
        let spec = match name.as_str() {
            "octahedron" => octahedron_spec(j, s),
            "gaudin" => gaudin_spec(a, j, s),
            other => {
                return Err(CliError::Config(format!(
                    "unknown preset `{other}` (available: octahedron, gaudin)"
                )));
            }
        }
        .map_err(CliError::from_core)?;
        let tree2 = raw
            .tree2
            .as_deref()
            .map(CouplingTree::parse)
            .transpose()
            .map_err(|e| CliError::Config(format!("tree2: {e}")))?;
        return Ok(ModelConfig {
            preset: Some(name.clone()),
            tree: spec.tree,
            tree2,
            spins: spec.config.with_max_dim(max_dim),
            terms: spec.terms,
            tolerances,
        });
    }

    let tree_text = raw
        .tree
        .as_deref()
        .ok_or_else(|| CliError::Config("missing `tree` (or a `preset`)".into()))?;
    let tree =
        CouplingTree::parse(tree_text).map_err(|e| CliError::Config(format!("tree: {e}")))?;
    let tree2 = raw
        .tree2
        .as_deref()
        .map(CouplingTree::parse)
        .transpose()
        .map_err(|e| CliError::Config(format!("tree2: {e}")))?;

    let spin_table = raw
        .spins
        .ok_or_else(|| CliError::Config("missing `[spins]` table".into()))?;
    let mut spins = Vec::with_capacity(tree.leaf_count());
    for leaf in 1..=tree.leaf_count() as u32 {
        let text = spin_table
            .get(&leaf.to_string())
            .ok_or_else(|| CliError::Config(format!("spins: no entry for leaf {leaf}")))?;
        let s: Spin = text
            .parse()
            .map_err(|e| CliError::Config(format!("spins.{leaf}: {e}")))?;
        spins.push(s);
    }
    if spin_table.len() != tree.leaf_count() {
        return Err(CliError::Config(format!(
            "spins: {} entries for {} leaves",
            spin_table.len(),
            tree.leaf_count()
        )));
    }
    let spins = SpinConfig::new(spins)
        .map_err(CliError::from_core)?
        .with_max_dim(max_dim);

    let mut terms = Vec::with_capacity(raw.terms.len());
    for t in &raw.terms {
        terms.push(HamiltonianTerm {
            node: parse_node(&tree, &t.node)?,
            kind: parse_kind(&t.op)?,
            coeff: t.coeff,
        });
    }

    Ok(ModelConfig {
        preset: None,
        tree,
        tree2,
        spins,
        terms,
        tolerances,
    })
}

/// Node addresses: the alias `root` or a leaf-set literal like `{3,4}`.
pub fn parse_node(tree: &CouplingTree, text: &str) -> Result<NodeRef, CliError> {
    let node = if text.trim() == "root" {
        tree.root_ref()
    } else {
        text.parse::<NodeRef>()
            .map_err(|e| CliError::Config(format!("node `{text}`: {e}")))?
    };
    if !tree.contains_node(&node) {
        return Err(CliError::Config(format!(
            "node `{text}` does not occur in tree {tree}"
        )));
    }
    Ok(node)
}

fn parse_kind(text: &str) -> Result<ElementKind, CliError> {
    match text {
        "casimir" => Ok(ElementKind::Casimir),
        "X3" | "x3" => Ok(ElementKind::X3),
        other => Err(CliError::Config(format!(
            "op `{other}` is not one of: casimir, X3"
        ))),
    }
}
