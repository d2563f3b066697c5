//! Grafting a path onto a gracefully labeled tree.
//!
//! Given `f` graceful on `G` with `m` edges and a vertex `u`, the path `P_n`
//! is joined to `u` by a new edge at its first endpoint. With `k = ⌊n/2⌋` and
//! an α-labeling `g` of `P_n` of index `k - 1` whose first endpoint is
//! labeled `f(u) + k`, the labeling
//!
//! * `h(w) = f(w) + k` on `G`,
//! * `h(x) = g(x)` if `g(x) < k`, else `g(x) + m + 1`, on the path,
//!
//! is graceful: `G` keeps edge labels `[1, m]`, the bridge gets `m + 1`, and
//! the path edges land on `[m + 2, m + n]`.

use crate::error::{invalid, Error, Result};
use crate::model::{edge_label, is_graceful, Labeling, Tree};
use crate::path::PathProvider;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttachResult {
    pub tree: Tree,
    pub labeling: Labeling,
    /// `⌊n/2⌋`, added to every label of the original tree.
    pub shift: usize,
    /// `m + 1`, the label of the edge joining `u` to the path.
    pub bridge_label: usize,
    /// Path vertex ids in path order; the first one is adjacent to `u`.
    pub path: Vec<usize>,
}

/// The three conditions under which [`attach_path`] applies, checked in order.
pub fn check_attach(f_u: usize, n: usize) -> Result<()> {
    if n < 2 {
        return Err(invalid!("attached path needs n >= 2 vertices, got {n}"));
    }
    if n % 4 == 1 {
        return Err(invalid!("attached path length n = {n} must not be 1 mod 4"));
    }
    if f_u + n / 2 + 1 > n {
        return Err(invalid!(
            "f(u) + floor(n/2) + 1 <= n fails: {f_u} + {} + 1 > {n}",
            n / 2
        ));
    }
    Ok(())
}

/// Attaches `P_n` at `u`; new vertices get ids `m + 1, …, m + n` in path order.
pub fn attach_path(
    t: &Tree,
    f: &Labeling,
    u: usize,
    n: usize,
    provider: &PathProvider,
) -> Result<AttachResult> {
    if !t.contains(u) {
        return Err(invalid!("vertex {u} is not in the tree"));
    }
    if !is_graceful(t, f)? {
        return Err(invalid!("the labeling of G is not graceful"));
    }
    let f_u = f.values()[u];
    check_attach(f_u, n)?;

    let k = n / 2;
    let m = t.edge_count();
    let g = provider.alpha_path_end_label(n, f_u + k, Some(k - 1))?;

    let base = t.vertex_count();
    let mut labels: Vec<usize> = f.values().iter().map(|&x| x + k).collect();
    labels.extend(
        g.labeling()
            .values()
            .iter()
            .map(|&x| if x < k { x } else { x + m + 1 }),
    );

    let mut edges = t.edges().to_vec();
    edges.push((u, base));
    edges.extend((1..n).map(|j| (base + j - 1, base + j)));
    let tree = Tree::new(base + n, edges)?;
    let labeling = Labeling::new(labels);

    if !is_graceful(&tree, &labeling)? {
        return Err(Error::internal(format!(
            "attaching P_{n} at a vertex labeled {f_u} gave a non-graceful labeling"
        )));
    }
    let bridge = edge_label(&labeling, u, base)?;
    if bridge != m + 1 {
        return Err(Error::internal(format!(
            "bridge edge labeled {bridge}, expected {}",
            m + 1
        )));
    }
    Ok(AttachResult {
        tree,
        labeling,
        shift: k,
        bridge_label: m + 1,
        path: (base..base + n).collect(),
    })
}
