//! Exhaustive graceful-labeling search on small trees.
//!
//! Vertices are labeled in BFS order from a highest-degree vertex, so every
//! vertex after the first has a labeled parent and is placed by choosing an
//! unused edge difference to it. Used labels and used differences are `u128`
//! masks, which caps trees at 127 edges. With `alpha` set, one colour class
//! is forced low (`≤ α = |class| - 1`) and the other high; both choices are
//! tried.
//!
//! With `parallel` set, the first vertex's candidate labels are searched as
//! independent branches and merged in branch order, so results and node
//! counts match the sequential search.

use std::collections::{BTreeMap, VecDeque};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::model::{Labeling, Tree};

pub const DEFAULT_ORACLE_BUDGET: u64 = 100_000_000;
pub const MAX_ORACLE_EDGES: usize = 127;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: u64,
    pub alpha: bool,
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_ORACLE_BUDGET,
            alpha: false,
            parallel: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub found: Option<Labeling>,
    pub count: Option<u64>,
    pub nodes_explored: u64,
    /// True when the whole space was searched; only then is absence a proof.
    pub exhausted: bool,
    #[serde(serialize_with = "as_secs")]
    pub elapsed: Duration,
}

fn as_secs<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

/// First graceful labeling respecting `fixed`, in search order.
pub fn find_graceful(
    t: &Tree,
    fixed: &BTreeMap<usize, usize>,
    options: SearchOptions,
) -> Result<SearchReport> {
    let start = Instant::now();
    let mut found = None;
    let (nodes, complete) = run(t, fixed, options, Mode::First, &mut |labels| {
        found = Some(Labeling::new(labels.to_vec()));
        true
    })?;
    Ok(SearchReport {
        exhausted: complete && found.is_none(),
        found,
        count: None,
        nodes_explored: nodes,
        elapsed: start.elapsed(),
    })
}

/// Number of graceful labelings respecting `fixed`; a partial count if the
/// budget ran out (`exhausted == false`).
pub fn count_graceful(
    t: &Tree,
    fixed: &BTreeMap<usize, usize>,
    options: SearchOptions,
) -> Result<SearchReport> {
    let start = Instant::now();
    let mut count = 0u64;
    let (nodes, complete) = run(t, fixed, options, Mode::Count, &mut |_| {
        count += 1;
        false
    })?;
    Ok(SearchReport {
        found: None,
        count: Some(count),
        nodes_explored: nodes,
        exhausted: complete,
        elapsed: start.elapsed(),
    })
}

/// Calls `visit` on every graceful labeling respecting `fixed`, in search
/// order, until it returns `true`. Returns `(nodes, searched_everything)`.
///
/// In parallel mode each branch buffers its labelings before the merge.
pub fn for_each_graceful(
    t: &Tree,
    fixed: &BTreeMap<usize, usize>,
    options: SearchOptions,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<(u64, bool)> {
    run(t, fixed, options, Mode::All, visit)
}

/// What a parallel branch keeps for the merge.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// The first labeling only; `visit` is expected to stop there.
    First,
    /// Nothing but the number of labelings; `visit` must never stop.
    Count,
    All,
}

fn run(
    t: &Tree,
    fixed: &BTreeMap<usize, usize>,
    options: SearchOptions,
    mode: Mode,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<(u64, bool)> {
    let m = t.edge_count();
    if m > MAX_ORACLE_EDGES {
        return Err(invalid!(
            "the oracle handles at most {MAX_ORACLE_EDGES} edges, got {m}"
        ));
    }
    let mut seen = 0u128;
    for (&v, &l) in fixed {
        if !t.contains(v) {
            return Err(invalid!("fixed vertex {v} is not in the tree"));
        }
        if l > m {
            return Err(invalid!("fixed label {l} is outside [0, {m}]"));
        }
        if seen & (1 << l) != 0 {
            return Err(invalid!("label {l} is fixed on two vertices"));
        }
        seen |= 1 << l;
    }
    let order = bfs_order(t);
    let mut fixed_at = vec![None; t.vertex_count()];
    for (&v, &l) in fixed {
        fixed_at[v] = Some(l);
    }

    let splits: Vec<Option<Vec<bool>>> = if options.alpha {
        let side = t.bipartition();
        let flipped: Vec<bool> = side.iter().map(|&s| !s).collect();
        vec![Some(side), Some(flipped)]
    } else {
        vec![None]
    };

    let mut total = 0u64;
    for low in splits {
        let alpha = low
            .as_ref()
            .map(|l| l.iter().filter(|&&x| x).count().saturating_sub(1));
        let problem = Problem {
            m,
            order: &order,
            fixed: &fixed_at,
            low: low.as_deref(),
            alpha,
        };
        let remaining = options.budget.saturating_sub(total);
        let (nodes, status) = if options.parallel {
            problem.parallel(remaining, mode, visit)
        } else {
            problem.sequential(remaining, visit)
        };
        total += nodes;
        match status {
            Status::Continue => {}
            Status::Stop => return Ok((total, true)),
            Status::Budget => return Ok((total, false)),
        }
    }
    Ok((total, true))
}

/// BFS from the highest-degree vertex (smallest id on ties), neighbors in id
/// order; each entry is `(vertex, parent)`.
fn bfs_order(t: &Tree) -> Vec<(usize, Option<usize>)> {
    let n = t.vertex_count();
    let root = (0..n)
        .max_by_key(|&v| (t.degree(v), std::cmp::Reverse(v)))
        .unwrap_or(0);
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([(root, None)]);
    seen[root] = true;
    while let Some((v, parent)) = queue.pop_front() {
        order.push((v, parent));
        let mut next: Vec<usize> = t
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| !seen[w])
            .collect();
        next.sort_unstable();
        for w in next {
            seen[w] = true;
            queue.push_back((w, Some(v)));
        }
    }
    order
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Continue,
    Stop,
    Budget,
}

struct Problem<'a> {
    m: usize,
    order: &'a [(usize, Option<usize>)],
    fixed: &'a [Option<usize>],
    low: Option<&'a [bool]>,
    alpha: Option<usize>,
}

impl Problem<'_> {
    fn allowed(&self, v: usize, label: usize) -> bool {
        if let Some(f) = self.fixed[v] {
            if f != label {
                return false;
            }
        }
        match (self.low, self.alpha) {
            (Some(low), Some(alpha)) => (label <= alpha) == low[v],
            _ => true,
        }
    }

    fn root_candidates(&self) -> Vec<usize> {
        let root = self.order[0].0;
        (0..=self.m).filter(|&l| self.allowed(root, l)).collect()
    }

    fn sequential(&self, budget: u64, visit: &mut dyn FnMut(&[usize]) -> bool) -> (u64, Status) {
        let mut total = 0;
        for label in self.root_candidates() {
            let (nodes, status) =
                self.branch(label, budget.saturating_sub(total), &mut |labels, _| {
                    visit(labels)
                });
            total += nodes;
            if status != Status::Continue {
                return (total, status);
            }
        }
        (total, Status::Continue)
    }

    /// Branches run with the full remaining budget each; the merge replays
    /// them in order, charging nodes and calling `visit` exactly as the
    /// sequential search would.
    fn parallel(
        &self,
        budget: u64,
        mode: Mode,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> (u64, Status) {
        struct Branch {
            nodes: u64,
            status: Status,
            /// `(nodes explored when found, labels)`.
            found: Vec<(u64, Vec<usize>)>,
            count: u64,
        }
        let results: Vec<Branch> = self
            .root_candidates()
            .into_par_iter()
            .map(|label| {
                let mut found = Vec::new();
                let mut count = 0;
                let (nodes, status) = self.branch(label, budget, &mut |labels, at| {
                    count += 1;
                    if mode != Mode::Count {
                        found.push((at, labels.to_vec()));
                    }
                    mode == Mode::First
                });
                Branch {
                    nodes,
                    status,
                    found,
                    count,
                }
            })
            .collect();
        let mut total = 0u64;
        for b in results {
            for (at, labels) in &b.found {
                if total + at > budget {
                    return (budget, Status::Budget);
                }
                if visit(labels) {
                    return (total + at, Status::Stop);
                }
            }
            if mode == Mode::Count {
                for _ in 0..b.count {
                    visit(&[]);
                }
            }
            if b.status == Status::Budget || total + b.nodes > budget {
                return (budget, Status::Budget);
            }
            total += b.nodes;
        }
        (total, Status::Continue)
    }

    fn branch(
        &self,
        root_label: usize,
        budget: u64,
        visit: &mut dyn FnMut(&[usize], u64) -> bool,
    ) -> (u64, Status) {
        let mut state = State {
            problem: self,
            labels: vec![usize::MAX; self.order.len()],
            used_labels: 0,
            used_diffs: 0,
            nodes: 0,
            budget,
        };
        let root = self.order[0].0;
        let status = state.place(0, root, root_label, 0, visit);
        (state.nodes, status)
    }
}

struct State<'a> {
    problem: &'a Problem<'a>,
    labels: Vec<usize>,
    used_labels: u128,
    used_diffs: u128,
    nodes: u64,
    budget: u64,
}

impl State<'_> {
    fn place(
        &mut self,
        depth: usize,
        v: usize,
        label: usize,
        diff: usize,
        visit: &mut dyn FnMut(&[usize], u64) -> bool,
    ) -> Status {
        if self.nodes >= self.budget {
            return Status::Budget;
        }
        self.nodes += 1;
        self.labels[v] = label;
        self.used_labels |= 1 << label;
        self.used_diffs |= 1 << diff;
        let status = self.descend(depth + 1, visit);
        self.used_labels &= !(1 << label);
        self.used_diffs &= !(1 << diff);
        self.labels[v] = usize::MAX;
        status
    }

    fn descend(&mut self, depth: usize, visit: &mut dyn FnMut(&[usize], u64) -> bool) -> Status {
        if depth == self.problem.order.len() {
            return if visit(&self.labels, self.nodes) {
                Status::Stop
            } else {
                Status::Continue
            };
        }
        let (v, parent) = self.problem.order[depth];
        let base = self.labels[parent.expect("non-root vertices have a parent")];
        let m = self.problem.m;
        for d in (1..=m).rev() {
            if self.used_diffs & (1 << d) != 0 {
                continue;
            }
            for label in [base + d, base.wrapping_sub(d)] {
                if label > m
                    || self.used_labels & (1 << label) != 0
                    || !self.problem.allowed(v, label)
                {
                    continue;
                }
                match self.place(depth, v, label, d, visit) {
                    Status::Continue => {}
                    other => return other,
                }
            }
        }
        Status::Continue
    }
}
