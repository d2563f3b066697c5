//! JSON tree documents and DOT export.
//!
//! `{"n": 3, "edges": [[0, 1], [1, 2]], "labels": {"0": 0, "1": 2, "2": 1}}`,
//! with optional `center` and `legs` for spiders. Serialization is canonical:
//! edges as sorted `[min, max]` pairs, labels keyed in vertex order, fixed
//! field order and indentation, so reading and re-writing a document written
//! here reproduces it byte for byte.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::model::{Labeling, Spider, Tree};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeDocument {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<usize, usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub legs: Option<Vec<Vec<usize>>>,
}

impl TreeDocument {
    pub fn from_tree(t: &Tree, labeling: Option<&Labeling>) -> Self {
        TreeDocument {
            n: t.vertex_count(),
            edges: t
                .canonical_edges()
                .into_iter()
                .map(|(a, b)| [a, b])
                .collect(),
            labels: labeling.map(|l| l.values().iter().copied().enumerate().collect()),
            center: None,
            legs: None,
        }
    }

    pub fn from_spider(s: &Spider, labeling: Option<&Labeling>) -> Self {
        TreeDocument {
            center: Some(s.center()),
            legs: Some(s.legs().to_vec()),
            ..Self::from_tree(s.tree(), labeling)
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: TreeDocument =
            serde_json::from_str(text).map_err(|e| invalid!("bad tree document: {e}"))?;
        doc.tree()?;
        Ok(doc)
    }

    pub fn tree(&self) -> Result<Tree> {
        Tree::new(self.n, self.edges.iter().map(|&[a, b]| (a, b)).collect())
    }

    /// The full labeling; `None` if the document is unlabeled, an error if
    /// only some vertices carry labels.
    pub fn labeling(&self) -> Result<Option<Labeling>> {
        let Some(labels) = &self.labels else {
            return Ok(None);
        };
        if let Some((&v, _)) = labels.iter().find(|(&v, _)| v >= self.n) {
            return Err(invalid!("label given for vertex {v}, but n = {}", self.n));
        }
        if labels.len() != self.n {
            return Err(invalid!(
                "partial labeling: {} of {} vertices are labeled",
                labels.len(),
                self.n
            ));
        }
        Ok(Some(Labeling::new(labels.values().copied().collect())))
    }

    pub fn spider(&self) -> Result<Option<Spider>> {
        match (self.center, &self.legs) {
            (Some(c), Some(legs)) => Spider::new(self.tree()?, c, legs.clone()).map(Some),
            (None, None) => Ok(None),
            _ => Err(invalid!("a spider document needs both center and legs")),
        }
    }

    /// Canonical form of the same content.
    pub fn canonical(&self) -> Result<Self> {
        let tree = self.tree()?;
        Ok(TreeDocument {
            edges: tree
                .canonical_edges()
                .into_iter()
                .map(|(a, b)| [a, b])
                .collect(),
            ..self.clone()
        })
    }

    /// One top-level field per line, each value in compact JSON, labels in
    /// vertex order.
    pub fn to_json(&self) -> String {
        let mut lines = vec![
            format!("  \"n\": {}", self.n),
            format!("  \"edges\": {}", serde_json::json!(self.edges)),
        ];
        if let Some(labels) = &self.labels {
            let pairs: Vec<String> = labels.iter().map(|(v, l)| format!("\"{v}\":{l}")).collect();
            lines.push(format!("  \"labels\": {{{}}}", pairs.join(",")));
        }
        if let Some(center) = self.center {
            lines.push(format!("  \"center\": {center}"));
        }
        if let Some(legs) = &self.legs {
            lines.push(format!("  \"legs\": {}", serde_json::json!(legs)));
        }
        format!("{{\n{}\n}}\n", lines.join(",\n"))
    }

    /// Node text is the label (the id when unlabeled); edge text is the
    /// label difference.
    pub fn to_dot(&self) -> String {
        let label_of = |v: usize| self.labels.as_ref().and_then(|l| l.get(&v).copied());
        let mut out = String::from("graph tree {\n");
        for v in 0..self.n {
            let text = label_of(v).map_or_else(|| v.to_string(), |l| l.to_string());
            let _ = writeln!(out, "  {v} [label=\"{text}\"];");
        }
        for &[a, b] in &self.edges {
            match (label_of(a), label_of(b)) {
                (Some(x), Some(y)) => {
                    let _ = writeln!(out, "  {a} -- {b} [label=\"{}\"];", x.abs_diff(y));
                }
                _ => {
                    let _ = writeln!(out, "  {a} -- {b};");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}
