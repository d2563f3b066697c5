//! Amalgamating an α-labeled tree with a graceful tree, and the spiders with
//! at most three legs of length ≥ 3 that this handles.
//!
//! `G` carries an α-labeling with `u` labeled `α` (flipped first if `u` is
//! labeled 0), `H` a graceful labeling with `v` labeled 0. Identifying `u`
//! with `v`, keep the low labels of `G`, raise its high labels by `|E(H)|`
//! and raise every label of `H` by `α`. Edges of `H` keep labels
//! `[1, |E(H)|]` and edges of `G` move to `[|E(H)| + 1, |E(H)| + |E(G)|]`.

use crate::error::{invalid, Error, Result};
use crate::model::{
    edge_label, is_graceful, relabel_onto_canonical, AlphaLabeling, Labeling, Spider, Tree,
};
use crate::path::PathProvider;
use crate::short_legs::{label_short_leg_spider, ShortLegSpec};

#[derive(Debug, Clone)]
pub struct AmalgamationInput {
    pub g_tree: Tree,
    pub g_labeling: AlphaLabeling,
    pub u: usize,
    pub h_tree: Tree,
    pub h_labeling: Labeling,
    pub v: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Amalgamation {
    pub tree: Tree,
    pub labeling: Labeling,
    /// The vertex formed from `u` and `v`; it keeps `u`'s id.
    pub joined: usize,
    /// Id of each `H` vertex in the result.
    pub h_ids: Vec<usize>,
}

/// Identifies `u` and `v`. `G` keeps its ids; the other `H` vertices follow
/// in their original order.
pub fn amalgamate(input: &AmalgamationInput) -> Result<Amalgamation> {
    let AmalgamationInput {
        g_tree,
        g_labeling,
        u,
        h_tree,
        h_labeling,
        v,
    } = input;
    let (u, v) = (*u, *v);
    if !g_tree.contains(u) {
        return Err(invalid!("u = {u} is not a vertex of G"));
    }
    if !h_tree.contains(v) {
        return Err(invalid!("v = {v} is not a vertex of H"));
    }
    let recomputed = AlphaLabeling::new(g_tree, g_labeling.labeling().clone())
        .map_err(|e| invalid!("G's labeling is not an α-labeling: {e}"))?;
    if recomputed.alpha() != g_labeling.alpha() {
        return Err(invalid!(
            "G's labeling has index {}, not {}",
            recomputed.alpha(),
            g_labeling.alpha()
        ));
    }
    let alpha = g_labeling.alpha();
    let g_u = g_labeling.labeling().values()[u];
    if g_u != 0 && g_u != alpha {
        return Err(invalid!(
            "u must be labeled 0 or α = {alpha} in G, found {g_u}"
        ));
    }
    if !is_graceful(h_tree, h_labeling)? {
        return Err(invalid!("H's labeling is not graceful"));
    }
    if h_labeling.values()[v] != 0 {
        return Err(invalid!(
            "v must be labeled 0 in H, found {}",
            h_labeling.values()[v]
        ));
    }

    let g = if g_u == alpha {
        g_labeling.clone()
    } else {
        g_labeling.alpha_flip()
    };
    let eh = h_tree.edge_count();
    let eg = g_tree.edge_count();

    let mut h_ids = vec![0; h_tree.vertex_count()];
    let mut next = g_tree.vertex_count();
    for (w, id) in h_ids.iter_mut().enumerate() {
        if w == v {
            *id = u;
        } else {
            *id = next;
            next += 1;
        }
    }
    let mut values: Vec<usize> = g
        .labeling()
        .values()
        .iter()
        .map(|&x| if x <= alpha { x } else { x + eh })
        .collect();
    values.resize(next, 0);
    for (w, &id) in h_ids.iter().enumerate() {
        values[id] = h_labeling.values()[w] + alpha;
    }
    let mut edges = g_tree.edges().to_vec();
    edges.extend(h_tree.edges().iter().map(|&(a, b)| (h_ids[a], h_ids[b])));
    let tree = Tree::new(next, edges)?;
    let labeling = Labeling::new(values);

    if !is_graceful(&tree, &labeling)? {
        return Err(Error::internal("amalgamation is not graceful"));
    }
    if labeling.values()[u] != alpha {
        return Err(Error::internal("joined vertex is not labeled α"));
    }
    for (i, &(a, b)) in tree.edges().iter().enumerate() {
        let label = edge_label(&labeling, a, b)?;
        let from_g = i < eg;
        let ok = if from_g { label > eh } else { label <= eh };
        if !ok {
            return Err(Error::internal(format!(
                "edge ({a}, {b}) labeled {label} is in the wrong range"
            )));
        }
    }
    Ok(Amalgamation {
        tree,
        labeling,
        joined: u,
        h_ids,
    })
}

/// Spider with at most three legs of length ≥ 3, center position free.
///
/// The two longest legs (ties by position) form a path through the center,
/// α-labeled with the center at 0; the remaining legs are labeled with the
/// center at 0 as a short-leg spider; the two are amalgamated at the center.
pub fn label_three_long_legs(
    leg_lengths: &[usize],
    provider: &PathProvider,
) -> Result<(Spider, Labeling)> {
    if leg_lengths.is_empty() {
        return Err(invalid!("a spider needs at least one leg"));
    }
    if let Some(i) = leg_lengths.iter().position(|&l| l == 0) {
        return Err(invalid!("leg {i} has length 0"));
    }
    let long: Vec<usize> = (0..leg_lengths.len())
        .filter(|&i| leg_lengths[i] >= 3)
        .collect();
    if long.len() > 3 {
        return Err(invalid!(
            "{} legs have length >= 3; at most three are supported",
            long.len()
        ));
    }
    if long.len() <= 1 {
        return label_short_legs_in_order(leg_lengths, provider);
    }

    let mut by_length: Vec<usize> = (0..leg_lengths.len()).collect();
    by_length.sort_by_key(|&i| (std::cmp::Reverse(leg_lengths[i]), i));
    let (i1, i2) = (by_length[0], by_length[1]);
    let (l1, l2) = (leg_lengths[i1], leg_lengths[i2]);
    let rest: Vec<usize> = (0..leg_lengths.len())
        .filter(|&i| i != i1 && i != i2)
        .collect();

    // G: the path leaf(L1) … x … leaf(L2), positions 0..=l1+l2, x at l1.
    let n = l1 + l2 + 1;
    if n == 5 && l1 == 2 {
        return Err(Error::internal("two legs of length >= 3 cannot form P_5"));
    }
    let g_tree = Tree::path(n)?;
    let g_labeling = provider.alpha_path_zero_at(n, l1)?;

    // H: the remaining legs around the center, or the center alone.
    let (h_tree, h_labeling, h_legs) = if rest.is_empty() {
        (Tree::single_vertex(), Labeling::new(vec![0]), Vec::new())
    } else {
        let lengths: Vec<usize> = rest.iter().map(|&i| leg_lengths[i]).collect();
        let (spider, labeling) = label_short_legs_in_order(&lengths, provider)?;
        let legs = spider.legs().to_vec();
        (spider.into_tree(), labeling, legs)
    };

    let joined = amalgamate(&AmalgamationInput {
        g_tree,
        g_labeling,
        u: l1,
        h_tree,
        h_labeling,
        v: 0,
    })?;

    let mut legs = vec![Vec::new(); leg_lengths.len()];
    legs[i1] = (0..l1).rev().collect();
    legs[i2] = (l1 + 1..n).collect();
    for (k, &i) in rest.iter().enumerate() {
        legs[i] = h_legs[k].iter().map(|&w| joined.h_ids[w]).collect();
    }
    let (spider, labeling) = relabel_onto_canonical(joined.joined, &legs, &joined.labeling)?;
    if !is_graceful(spider.tree(), &labeling)? {
        return Err(Error::internal(
            "renumbered spider labeling is not graceful",
        ));
    }
    Ok((spider, labeling))
}

/// Short-leg spider labeled with center 0, legs kept in the given order.
fn label_short_legs_in_order(
    leg_lengths: &[usize],
    provider: &PathProvider,
) -> Result<(Spider, Labeling)> {
    let long = (0..leg_lengths.len())
        .max_by_key(|&i| (leg_lengths[i], std::cmp::Reverse(i)))
        .ok_or_else(|| invalid!("a spider needs at least one leg"))?;
    if leg_lengths
        .iter()
        .enumerate()
        .any(|(i, &l)| i != long && l > 2)
    {
        return Err(invalid!("more than one leg has length >= 3"));
    }
    let twos: Vec<usize> = (0..leg_lengths.len())
        .filter(|&i| i != long && leg_lengths[i] == 2)
        .collect();
    let ones: Vec<usize> = (0..leg_lengths.len())
        .filter(|&i| i != long && leg_lengths[i] == 1)
        .collect();
    let spec = ShortLegSpec::new(leg_lengths[long], twos.len(), ones.len())?;
    let (spider, labeling) = label_short_leg_spider(spec, provider)?;

    // The short-leg spider lists the long leg, then twos, then ones; map each back to its input position.
    let mut legs = vec![Vec::new(); leg_lengths.len()];
    let spec_order = std::iter::once(long).chain(twos).chain(ones);
    for (k, i) in spec_order.enumerate() {
        legs[i] = spider.legs()[k].clone();
    }
    relabel_onto_canonical(spider.center(), &legs, &labeling)
}
