//! Graph carriers, labelings, and the checkers every construction is certified by.
//!
//! Vertex ids are dense `usize` values in `0..n`. A tree on `n` vertices has
//! `m = n - 1` edges, so an injective labeling into `[0, m]` of a tree is a
//! bijection; several constructions below lean on that.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A finite tree with dense vertex ids, validated on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Tree {
    /// Builds a tree, rejecting self-loops, duplicate edges, cycles and disconnected input.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(invalid!("a tree needs at least one vertex"));
        }
        if edges.len() != n - 1 {
            return Err(invalid!(
                "a tree on {n} vertices has {} edges, got {}",
                n - 1,
                edges.len()
            ));
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(invalid!("edge ({a}, {b}) names a vertex outside 0..{n}"));
            }
            if a == b {
                return Err(invalid!("self-loop at vertex {a}"));
            }
            if adj[a].contains(&b) {
                return Err(invalid!("duplicate edge ({a}, {b})"));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        // n - 1 edges plus connectivity rules out cycles.
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        if reached != n {
            return Err(invalid!(
                "graph is disconnected ({reached} of {n} vertices reachable from 0)"
            ));
        }
        Ok(Tree { n, edges, adj })
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Self> {
        Tree::new(n, (1..n).map(|i| (i - 1, i)).collect())
    }

    pub fn single_vertex() -> Self {
        Tree {
            n: 1,
            edges: Vec::new(),
            adj: vec![Vec::new()],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n
    }

    /// Two-colouring with vertex 0 in class `false`.
    pub fn bipartition(&self) -> Vec<bool> {
        let mut side = vec![false; self.n];
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    side[w] = !side[v];
                    stack.push(w);
                }
            }
        }
        side
    }

    /// Edges with endpoints ordered `(min, max)`, sorted.
    pub fn canonical_edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = self
            .edges
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        e.sort_unstable();
        e
    }
}

/// A vertex labeling, indexed by vertex id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Labeling(Vec<usize>);

impl Labeling {
    pub fn new(values: Vec<usize>) -> Self {
        Labeling(values)
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn into_values(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> Option<usize> {
        self.0.get(v).copied()
    }

    /// Vertex carrying `label`, if any.
    pub fn vertex_with(&self, label: usize) -> Option<usize> {
        self.0.iter().position(|&x| x == label)
    }

    /// `x -> top - x` on every vertex. With `top = m` this preserves gracefulness.
    pub fn complement(&self, top: usize) -> Labeling {
        Labeling(self.0.iter().map(|&x| top - x).collect())
    }
}

impl From<Vec<usize>> for Labeling {
    fn from(v: Vec<usize>) -> Self {
        Labeling(v)
    }
}

/// `|f(u) - f(v)|`.
pub fn edge_label(lab: &Labeling, u: usize, v: usize) -> Result<usize> {
    let fu = lab
        .get(u)
        .ok_or_else(|| invalid!("vertex {u} is not labeled"))?;
    let fv = lab
        .get(v)
        .ok_or_else(|| invalid!("vertex {v} is not labeled"))?;
    Ok(fu.abs_diff(fv))
}

/// Edge labels in the tree's edge order.
pub fn edge_labels(t: &Tree, lab: &Labeling) -> Result<Vec<usize>> {
    t.edges()
        .iter()
        .map(|&(a, b)| edge_label(lab, a, b))
        .collect()
}

fn check_total(t: &Tree, lab: &Labeling) -> Result<()> {
    if lab.len() != t.vertex_count() {
        return Err(invalid!(
            "labeling covers {} vertices but the tree has {}",
            lab.len(),
            t.vertex_count()
        ));
    }
    Ok(())
}

/// True iff `lab` is injective into `[0, m]` and the edge labels are exactly `[1, m]`.
///
/// A labeling that does not cover every vertex is an error, not `false`.
pub fn is_graceful(t: &Tree, lab: &Labeling) -> Result<bool> {
    check_total(t, lab)?;
    let m = t.edge_count();
    let mut seen = vec![false; m + 1];
    for &x in lab.values() {
        if x > m || seen[x] {
            return Ok(false);
        }
        seen[x] = true;
    }
    let mut diff_seen = vec![false; m + 1];
    for &(a, b) in t.edges() {
        let d = lab.0[a].abs_diff(lab.0[b]);
        if d == 0 || diff_seen[d] {
            return Ok(false);
        }
        diff_seen[d] = true;
    }
    Ok(true)
}

/// Index of an α-labeling, if `lab` is one.
///
/// Returns the largest low endpoint over all edges, after confirming every
/// edge crosses it. An edgeless tree reports index 0.
pub fn alpha_index(t: &Tree, lab: &Labeling) -> Result<Option<usize>> {
    if !is_graceful(t, lab)? {
        return Err(invalid!("alpha_index needs a graceful labeling"));
    }
    let v = lab.values();
    let alpha = t
        .edges()
        .iter()
        .map(|&(a, b)| v[a].min(v[b]))
        .max()
        .unwrap_or(0);
    let ok = t.edges().iter().all(|&(a, b)| v[a].max(v[b]) > alpha);
    Ok(ok.then_some(alpha))
}

/// A graceful labeling together with its index α.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaLabeling {
    labeling: Labeling,
    alpha: usize,
}

impl AlphaLabeling {
    /// Certifies `labeling` as an α-labeling of `t`.
    pub fn new(t: &Tree, labeling: Labeling) -> Result<Self> {
        match alpha_index(t, &labeling)? {
            Some(alpha) => Ok(AlphaLabeling { labeling, alpha }),
            None => Err(invalid!("labeling is graceful but not an α-labeling")),
        }
    }

    pub fn labeling(&self) -> &Labeling {
        &self.labeling
    }

    pub fn into_labeling(self) -> Labeling {
        self.labeling
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    /// Largest label, which for a tree is its edge count.
    pub fn top(&self) -> usize {
        self.labeling.len().saturating_sub(1)
    }

    /// Reflects each class onto itself: low `x -> α - x`, high `x -> m + α + 1 - x`.
    ///
    /// Keeps the index, swaps labels `0` and `α`, and is an involution.
    pub fn alpha_flip(&self) -> AlphaLabeling {
        let (m, alpha) = (self.top(), self.alpha);
        let values = self
            .labeling
            .values()
            .iter()
            .map(|&x| {
                if x <= alpha {
                    alpha - x
                } else {
                    m + alpha + 1 - x
                }
            })
            .collect();
        AlphaLabeling {
            labeling: Labeling(values),
            alpha,
        }
    }
}

/// Free-function form of [`AlphaLabeling::alpha_flip`].
pub fn alpha_flip(al: &AlphaLabeling) -> AlphaLabeling {
    al.alpha_flip()
}

/// A tree with a designated center and its legs, each listed center-adjacent vertex first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spider {
    tree: Tree,
    center: usize,
    legs: Vec<Vec<usize>>,
}

impl Spider {
    pub fn new(tree: Tree, center: usize, legs: Vec<Vec<usize>>) -> Result<Self> {
        let n = tree.vertex_count();
        if center >= n {
            return Err(invalid!("center {center} is not a vertex"));
        }
        if let Some(v) = (0..n).find(|&v| v != center && tree.degree(v) > 2) {
            return Err(invalid!(
                "vertex {v} has degree {} but is not the center",
                tree.degree(v)
            ));
        }
        let mut owner = vec![false; n];
        owner[center] = true;
        for (i, leg) in legs.iter().enumerate() {
            if leg.is_empty() {
                return Err(invalid!("leg {i} is empty"));
            }
            let mut prev = center;
            for &v in leg {
                if v >= n || owner[v] {
                    return Err(invalid!("leg {i} repeats or leaves the vertex set at {v}"));
                }
                if !tree.neighbors(prev).contains(&v) {
                    return Err(invalid!(
                        "leg {i} is not a path: {prev} and {v} are not adjacent"
                    ));
                }
                owner[v] = true;
                prev = v;
            }
            if tree.degree(prev) != 1 {
                return Err(invalid!("leg {i} does not end at a leaf"));
            }
        }
        if owner.iter().any(|&o| !o) {
            return Err(invalid!("legs do not cover every non-center vertex"));
        }
        Ok(Spider { tree, center, legs })
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn into_tree(self) -> Tree {
        self.tree
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn legs(&self) -> &[Vec<usize>] {
        &self.legs
    }

    pub fn leg_lengths(&self) -> Vec<usize> {
        self.legs.iter().map(Vec::len).collect()
    }
}

/// Canonical spider: center `0`, legs in the given order, each numbered consecutively outward.
pub fn build_spider(leg_lengths: &[usize]) -> Result<Spider> {
    if leg_lengths.is_empty() {
        return Err(invalid!("a spider needs at least one leg"));
    }
    if let Some(i) = leg_lengths.iter().position(|&l| l == 0) {
        return Err(invalid!("leg {i} has length 0"));
    }
    let n = 1 + leg_lengths.iter().sum::<usize>();
    let mut edges = Vec::with_capacity(n - 1);
    let mut legs = Vec::with_capacity(leg_lengths.len());
    let mut next = 1;
    for &len in leg_lengths {
        let leg: Vec<usize> = (next..next + len).collect();
        let mut prev = 0;
        for &v in &leg {
            edges.push((prev, v));
            prev = v;
        }
        next += len;
        legs.push(leg);
    }
    Spider::new(Tree::new(n, edges)?, 0, legs)
}

/// Moves a labeling of a spider described by `center` and `legs` onto the
/// [`build_spider`] numbering of the same leg sequence.
pub fn relabel_onto_canonical(
    center: usize,
    legs: &[Vec<usize>],
    labeling: &Labeling,
) -> Result<(Spider, Labeling)> {
    let lengths: Vec<usize> = legs.iter().map(Vec::len).collect();
    let spider = build_spider(&lengths)?;
    let mut values = Vec::with_capacity(spider.tree().vertex_count());
    let label = |v: usize| {
        labeling
            .get(v)
            .ok_or_else(|| invalid!("vertex {v} has no label"))
    };
    values.push(label(center)?);
    for leg in legs {
        for &v in leg {
            values.push(label(v)?);
        }
    }
    if values.len() != labeling.len() {
        return Err(invalid!(
            "legs cover {} vertices but the labeling has {}",
            values.len(),
            labeling.len()
        ));
    }
    Ok((spider, Labeling(values)))
}

/// One composition step of a construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub operation: String,
    pub params: BTreeMap<String, i64>,
    pub edges: usize,
}

/// Ordered record of the steps a construction took.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionTrace {
    steps: Vec<TraceStep>,
}

impl ConstructionTrace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a step; edge counts must strictly increase.
    pub fn push<K: Into<String>>(
        &mut self,
        operation: impl Into<String>,
        params: impl IntoIterator<Item = (K, i64)>,
        edges: usize,
    ) -> Result<()> {
        if let Some(last) = self.steps.last() {
            if edges <= last.edges {
                return Err(Error::internal(format!(
                    "trace edge counts must increase: {} then {edges}",
                    last.edges
                )));
            }
        }
        self.steps.push(TraceStep {
            operation: operation.into(),
            params: params.into_iter().map(|(k, v)| (k.into(), v)).collect(),
            edges,
        });
        Ok(())
    }

    pub fn steps(&self) -> &[TraceStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}
