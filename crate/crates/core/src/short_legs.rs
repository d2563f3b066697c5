//! Spiders with one leg of any length and every other leg of length at most 2,
//! labeled with the center at 0.
//!
//! Vertex names: center `x₀`; the long leg `x₁ … x_ℓ`; the `i`-th length-2
//! leg `uᵢ vᵢ` with `uᵢ` next to the center; length-1 legs `y₁ … y_t`. In the
//! [`build_spider`] numbering used here the legs come in that order, so
//! `x_j = j`, `uᵢ = ℓ + 2i - 1`, `vᵢ = ℓ + 2i`, `yᵢ = ℓ + 2s + i`.
//!
//! For `s ≥ 2` the labels are closed forms in `m = 2s + ℓ`; the length-1 legs
//! are added afterwards with labels `m + 1, …, m + t`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::model::{build_spider, is_graceful, Labeling, Spider, Tree};
use crate::path::PathProvider;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShortLegSpec {
    /// Length of the distinguished leg.
    pub ell: usize,
    /// Number of length-2 legs.
    pub s: usize,
    /// Number of length-1 legs.
    pub t: usize,
}

impl ShortLegSpec {
    pub fn new(ell: usize, s: usize, t: usize) -> Result<Self> {
        if ell == 0 {
            return Err(invalid!("the distinguished leg needs length >= 1"));
        }
        Ok(ShortLegSpec { ell, s, t })
    }

    /// Edge count without the length-1 legs.
    pub fn m_prime(&self) -> usize {
        2 * self.s + self.ell
    }

    pub fn m(&self) -> usize {
        self.m_prime() + self.t
    }

    /// Leg lengths in naming order: long leg, length-2 legs, length-1 legs.
    pub fn leg_lengths(&self) -> Vec<usize> {
        let mut legs = vec![self.ell];
        legs.extend(std::iter::repeat_n(2, self.s));
        legs.extend(std::iter::repeat_n(1, self.t));
        legs
    }
}

/// Closed-form label of `x_i` on the long leg, `0 ≤ i ≤ ℓ`.
fn x_label(ell: usize, s: usize, i: usize) -> usize {
    let m = 2 * s + ell;
    if i == 0 {
        return 0;
    }
    if ell % 2 == 1 {
        match i % 4 {
            0 => i / 2,
            1 => m - (i - 1) / 2,
            2 => 2 * s - 1 + (i + 2) / 2,
            _ => m - (2 * s - 1) - i.div_ceil(2),
        }
    } else {
        match i % 4 {
            0 => i / 2,
            1 => m - 2 * s - (i - 1) / 2,
            2 => 2 * s - 1 + (i + 2) / 2,
            _ => m - 1 - (i - 3) / 2,
        }
    }
}

/// `(uᵢ, vᵢ)` labels, `1 ≤ i ≤ s`.
fn uv_labels(ell: usize, s: usize, i: usize) -> (usize, usize) {
    let m = 2 * s + ell;
    let u = if ell % 2 == 1 {
        m - (2 * i - 1)
    } else {
        m - 2 * (i - 1)
    };
    (u, 2 * i - 1)
}

fn formula_labels(ell: usize, s: usize) -> Labeling {
    let mut values: Vec<usize> = (0..=ell).map(|i| x_label(ell, s, i)).collect();
    for i in 1..=s {
        let (u, v) = uv_labels(ell, s, i);
        values.push(u);
        values.push(v);
    }
    Labeling::new(values)
}

/// Closed-form labeling of the spider with legs `(ℓ, 2, …, 2)`, `s ≥ 2`.
pub fn short_leg_formula(ell: usize, s: usize) -> Result<(Spider, Labeling)> {
    if ell == 0 {
        return Err(invalid!("the distinguished leg needs length >= 1"));
    }
    if s < 2 {
        return Err(invalid!(
            "the closed form needs at least two length-2 legs, got {s}; use label_short_leg_spider"
        ));
    }
    let spider = build_spider(&ShortLegSpec { ell, s, t: 0 }.leg_lengths())?;
    let labeling = formula_labels(ell, s);
    if !is_graceful(spider.tree(), &labeling)? {
        return Err(Error::internal(format!(
            "closed form is not graceful for ell={ell}, s={s}"
        )));
    }
    Ok((spider, labeling))
}

/// Outcome of evaluating the closed form outside its proven range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaExperiment {
    pub ell: usize,
    pub s: usize,
    pub labels: Labeling,
    pub graceful: bool,
}

/// Evaluates the closed form with a single length-2 leg and reports the checker's verdict.
pub fn formula_with_one_two_leg(ell: usize) -> Result<FormulaExperiment> {
    if ell == 0 {
        return Err(invalid!("the distinguished leg needs length >= 1"));
    }
    let spider = build_spider(&[ell, 2])?;
    let labels = formula_labels(ell, 1);
    let in_range = labels
        .values()
        .iter()
        .all(|&x| x <= spider.tree().edge_count());
    let graceful = in_range && is_graceful(spider.tree(), &labels)?;
    Ok(FormulaExperiment {
        ell,
        s: 1,
        labels,
        graceful,
    })
}

/// Adds `t_count` leaves at `center`, labeled `m + 1, …, m + t_count`.
pub fn extend_with_leaves(
    t: &Tree,
    f: &Labeling,
    center: usize,
    t_count: usize,
) -> Result<(Tree, Labeling)> {
    if !t.contains(center) {
        return Err(invalid!("center {center} is not in the tree"));
    }
    if !is_graceful(t, f)? {
        return Err(invalid!("the labeling to extend is not graceful"));
    }
    if f.values()[center] != 0 {
        return Err(invalid!(
            "the center is labeled {}, not 0",
            f.values()[center]
        ));
    }
    let m = t.edge_count();
    let base = t.vertex_count();
    let mut edges = t.edges().to_vec();
    edges.extend((0..t_count).map(|i| (center, base + i)));
    let mut values = f.values().to_vec();
    values.extend((1..=t_count).map(|i| m + i));
    let tree = Tree::new(base + t_count, edges)?;
    let labeling = Labeling::new(values);
    if !is_graceful(&tree, &labeling)? {
        return Err(Error::internal("leaf extension is not graceful"));
    }
    Ok((tree, labeling))
}

/// Labels the spider of `spec` with the center at 0.
pub fn label_short_leg_spider(
    spec: ShortLegSpec,
    provider: &PathProvider,
) -> Result<(Spider, Labeling)> {
    let spec = ShortLegSpec::new(spec.ell, spec.s, spec.t)?;
    let (core_tree, core_labels) = if spec.s >= 2 {
        let (spider, labeling) = short_leg_formula(spec.ell, spec.s)?;
        (spider.into_tree(), labeling)
    } else if spec.s == 0 && spec.ell == 1 {
        // A star: center 0, leaves 1, 2, …
        (Tree::path(2)?, Labeling::new(vec![0, 1]))
    } else {
        // A path: the center is an endpoint (s = 0) or two steps from one (s = 1).
        let spider = build_spider(&ShortLegSpec { t: 0, ..spec }.leg_lengths())?;
        let n = spider.tree().vertex_count();
        let mut order: Vec<usize> = Vec::with_capacity(n);
        if spec.s == 1 {
            let two = &spider.legs()[1];
            order.extend([two[1], two[0]]);
        }
        let position = order.len();
        order.push(spider.center());
        order.extend(&spider.legs()[0]);
        let path = provider.graceful_path_zero_at(n, position)?;
        let mut values = vec![0; n];
        for (p, &v) in order.iter().enumerate() {
            values[v] = path.values()[p];
        }
        (spider.into_tree(), Labeling::new(values))
    };
    let (tree, labeling) = extend_with_leaves(&core_tree, &core_labels, 0, spec.t)?;
    let spider = build_spider(&spec.leg_lengths())?;
    if spider.tree().canonical_edges() != tree.canonical_edges() {
        return Err(Error::internal(
            "short-leg construction built an unexpected tree",
        ));
    }
    if !is_graceful(spider.tree(), &labeling)? || labeling.values()[0] != 0 {
        return Err(Error::internal(
            "short-leg spider labeling is not graceful with center 0",
        ));
    }
    Ok((spider, labeling))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_odd_and_even_goldens() {
        let (_, lab) = short_leg_formula(11, 2).unwrap();
        assert_eq!(
            &lab.values()[..12],
            &[0, 15, 5, 10, 2, 13, 7, 8, 4, 11, 9, 6]
        );
        assert_eq!(&lab.values()[12..], &[14, 1, 12, 3]);
        let (_, lab) = short_leg_formula(10, 2).unwrap();
        assert_eq!(&lab.values()[..11], &[0, 10, 5, 13, 2, 8, 7, 11, 4, 6, 9]);
        assert_eq!(&lab.values()[11..], &[14, 1, 12, 3]);
    }

    #[test]
    fn formula_needs_two_short_legs() {
        assert!(matches!(short_leg_formula(5, 1), Err(Error::Validation(_))));
    }

    #[test]
    fn dispatch_cases() {
        let p = PathProvider::new();
        let (spider, lab) =
            label_short_leg_spider(ShortLegSpec::new(1, 0, 4).unwrap(), &p).unwrap();
        assert_eq!(spider.leg_lengths(), vec![1, 1, 1, 1, 1]);
        assert_eq!(lab.values(), &[0, 1, 2, 3, 4, 5]);
        let (spider, lab) =
            label_short_leg_spider(ShortLegSpec::new(7, 1, 1).unwrap(), &p).unwrap();
        assert!(is_graceful(spider.tree(), &lab).unwrap());
        assert_eq!(lab.values()[0], 0);
        let (spider, lab) =
            label_short_leg_spider(ShortLegSpec::new(8, 2, 0).unwrap(), &p).unwrap();
        assert_eq!(spider.tree().edge_count(), 12);
        assert!(is_graceful(spider.tree(), &lab).unwrap());
    }

    #[test]
    fn leaves_extend_a_single_edge() {
        let (t, f) =
            extend_with_leaves(&Tree::path(2).unwrap(), &Labeling::new(vec![0, 1]), 0, 2).unwrap();
        assert_eq!(f.values(), &[0, 1, 2, 3]);
        assert!(is_graceful(&t, &f).unwrap());
        let err = extend_with_leaves(&Tree::path(2).unwrap(), &Labeling::new(vec![1, 0]), 0, 2)
            .unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }
}
