//! Spiders whose sorted leg lengths at least double, labeled by repeated path
//! attachment.
//!
//! With legs sorted `ℓ₁ ≤ … ≤ ℓ_s`, the construction starts from the first leg
//! labeled from the center outward with the center at 0, plus one pendant leaf
//! `y_i` at the center for every later leg with `ℓᵢ ≡ 1 (mod 4)`. Leg `i` is
//! then grown by [`attach_path`]: `ℓᵢ` vertices at the center, or `ℓᵢ - 1`
//! vertices at `y_i` when `ℓᵢ ≡ 1 (mod 4)`, so the attached path never has
//! length `1 mod 4`. The growth conditions are what keep each attachment's
//! inequality `f(u) + ⌊n/2⌋ + 1 ≤ n` true; it is re-checked at every step.

use crate::attach::{attach_path, check_attach};
use crate::error::{invalid, Error, Result};
use crate::model::{
    is_graceful, relabel_onto_canonical, ConstructionTrace, Labeling, Spider, Tree,
};
use crate::path::PathProvider;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttachPoint {
    Center,
    /// The pendant leaf created for this leg in the base spider.
    Leaf,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoublingStep {
    /// 1-based index into the sorted lengths.
    pub leg: usize,
    pub at: AttachPoint,
    /// Vertices attached: `ℓᵢ`, or `ℓᵢ - 1` at a leaf.
    pub path_len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoublingPlan {
    pub sorted_lengths: Vec<usize>,
    /// `order[i]` is the input position of the `i`-th sorted leg.
    pub order: Vec<usize>,
    /// 1-based sorted indices `i ≥ 2` with `ℓᵢ ≡ 1 (mod 4)`.
    pub k_indices: Vec<usize>,
    pub steps: Vec<DoublingStep>,
}

/// Sorts the legs and checks `ℓ₂ ≥ 2ℓ₁ + 2` (`+ 4` when `ℓ₂ ≡ 1 mod 4`) and
/// `ℓ_{i+1} ≥ 2ℓᵢ + 2` for `2 ≤ i < s`.
pub fn check_doubling(leg_lengths: &[usize]) -> Result<DoublingPlan> {
    if leg_lengths.is_empty() {
        return Err(invalid!("a spider needs at least one leg"));
    }
    if let Some(i) = leg_lengths.iter().position(|&l| l == 0) {
        return Err(invalid!("leg {i} has length 0"));
    }
    let mut order: Vec<usize> = (0..leg_lengths.len()).collect();
    order.sort_by_key(|&i| (leg_lengths[i], i));
    let sorted: Vec<usize> = order.iter().map(|&i| leg_lengths[i]).collect();

    if sorted.len() >= 2 {
        let extra = if sorted[1] % 4 == 1 { 4 } else { 2 };
        let required = 2 * sorted[0] + extra;
        if sorted[1] < required {
            return Err(Error::Growth {
                index: 2,
                length: sorted[1],
                required,
            });
        }
    }
    for i in 2..sorted.len() {
        let required = 2 * sorted[i - 1] + 2;
        if sorted[i] < required {
            return Err(Error::Growth {
                index: i + 1,
                length: sorted[i],
                required,
            });
        }
    }

    let k_indices: Vec<usize> = (2..=sorted.len())
        .filter(|&i| sorted[i - 1] % 4 == 1)
        .collect();
    let steps = (2..=sorted.len())
        .map(|i| {
            let len = sorted[i - 1];
            if len % 4 == 1 {
                DoublingStep {
                    leg: i,
                    at: AttachPoint::Leaf,
                    path_len: len - 1,
                }
            } else {
                DoublingStep {
                    leg: i,
                    at: AttachPoint::Center,
                    path_len: len,
                }
            }
        })
        .collect();
    Ok(DoublingPlan {
        sorted_lengths: sorted,
        order,
        k_indices,
        steps,
    })
}

/// Labels the spider with the given legs (in the given order, numbered as
/// by [`crate::model::build_spider`]).
pub fn label_doubling_spider(
    leg_lengths: &[usize],
    provider: &PathProvider,
) -> Result<(Spider, Labeling, ConstructionTrace)> {
    let plan = check_doubling(leg_lengths)?;
    let mut trace = ConstructionTrace::new();

    if plan.sorted_lengths.len() <= 2 {
        return label_as_path(leg_lengths, provider, trace);
    }

    let l1 = plan.sorted_lengths[0];
    // Working ids: center 0, first leg 1..=l1, then pendant leaves in k order.
    let base_path = provider.graceful_path_zero_at(l1 + 1, 0)?;
    let mut labels = base_path.into_values();
    let mut edges: Vec<(usize, usize)> = (1..=l1).map(|v| (v - 1, v)).collect();
    let mut leaf_of = vec![usize::MAX; plan.sorted_lengths.len() + 1];
    for (j, &k) in plan.k_indices.iter().enumerate() {
        let id = labels.len();
        labels.push(l1 + j + 1);
        edges.push((0, id));
        leaf_of[k] = id;
    }
    let mut tree = Tree::new(labels.len(), edges)?;
    let mut labeling = Labeling::new(labels);
    let base_vertices = tree.vertex_count();
    if !is_graceful(&tree, &labeling)? {
        return Err(Error::internal("base spider labeling is not graceful"));
    }
    let base_labels = labeling.clone();
    trace.push(
        "base",
        [
            ("leg_length", l1 as i64),
            ("pendant_leaves", plan.k_indices.len() as i64),
        ],
        tree.edge_count(),
    )?;

    // legs[i] for sorted leg i (0-based), outward order, working ids.
    let mut legs: Vec<Vec<usize>> = vec![(1..=l1).collect()];
    let mut total_shift = 0usize;
    for step in &plan.steps {
        let u = match step.at {
            AttachPoint::Center => 0,
            AttachPoint::Leaf => leaf_of[step.leg],
        };
        let f_u = labeling.values()[u];
        if let Err(e) = check_attach(f_u, step.path_len) {
            return Err(Error::internal(format!(
                "step for leg {} breaks the attachment precondition: {e}",
                step.leg
            ))
            .with_trace(&trace));
        }
        let before_center = labeling.values()[0];
        let r = attach_path(&tree, &labeling, u, step.path_len, provider)
            .map_err(|e| e.with_trace(&trace))?;
        total_shift += r.shift;

        let center_gain = r.labeling.values()[0] - before_center;
        if center_gain != step.path_len / 2 {
            return Err(Error::internal(format!(
                "center label rose by {center_gain}, expected {}",
                step.path_len / 2
            ))
            .with_trace(&trace));
        }
        // Every base vertex has moved up by exactly the accumulated shift.
        for w in 0..base_vertices {
            if r.labeling.values()[w] != base_labels.values()[w] + total_shift {
                return Err(Error::internal(format!(
                    "base vertex {w} is labeled {} after leg {}, bound is {}",
                    r.labeling.values()[w],
                    step.leg,
                    base_labels.values()[w] + total_shift
                ))
                .with_trace(&trace));
            }
        }

        let mut leg = Vec::with_capacity(plan.sorted_lengths[step.leg - 1]);
        if step.at == AttachPoint::Leaf {
            leg.push(u);
        }
        leg.extend(&r.path);
        legs.push(leg);
        trace.push(
            "attach",
            [
                ("leg", step.leg as i64),
                ("at_leaf", i64::from(step.at == AttachPoint::Leaf)),
                ("path_len", step.path_len as i64),
                ("attach_label", f_u as i64),
                ("shift", r.shift as i64),
            ],
            r.tree.edge_count(),
        )?;
        tree = r.tree;
        labeling = r.labeling;
    }

    if !is_graceful(&tree, &labeling)? {
        return Err(Error::internal("final spider labeling is not graceful").with_trace(&trace));
    }
    let mut input_legs = vec![Vec::new(); legs.len()];
    for (sorted_pos, leg) in legs.into_iter().enumerate() {
        input_legs[plan.order[sorted_pos]] = leg;
    }
    let (spider, labeling) = relabel_onto_canonical(0, &input_legs, &labeling)?;
    if !is_graceful(spider.tree(), &labeling)? {
        return Err(
            Error::internal("renumbered spider labeling is not graceful").with_trace(&trace),
        );
    }
    Ok((spider, labeling, trace))
}

/// One or two legs: the spider is a path through the center.
fn label_as_path(
    leg_lengths: &[usize],
    provider: &PathProvider,
    mut trace: ConstructionTrace,
) -> Result<(Spider, Labeling, ConstructionTrace)> {
    let spider = crate::model::build_spider(leg_lengths)?;
    let n = spider.tree().vertex_count();
    // Path order: first leg leaf to center, then the second leg outward.
    let mut order: Vec<usize> = spider.legs()[0].iter().rev().copied().collect();
    let position = order.len();
    order.push(spider.center());
    if let Some(second) = spider.legs().get(1) {
        order.extend(second);
    }
    let (position, order) = if leg_lengths.len() == 1 {
        order.reverse();
        (0, order)
    } else {
        (position, order)
    };
    let path_labels = provider.graceful_path_zero_at(n, position)?;
    let mut values = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        values[v] = path_labels.values()[p];
    }
    let labeling = Labeling::new(values);
    if !is_graceful(spider.tree(), &labeling)? {
        return Err(Error::internal("path spider labeling is not graceful"));
    }
    trace.push(
        "path",
        [("vertices", n as i64), ("center_position", position as i64)],
        n - 1,
    )?;
    Ok((spider, labeling, trace))
}
