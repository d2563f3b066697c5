//! Depth-first labeling search on paths.
//!
//! Positions are extended outward from an anchor so every newly placed vertex
//! already has a labeled neighbor; candidates are tried by edge difference,
//! largest first. Used labels and used differences live in `u128` masks, which
//! caps a single search at 128 vertices.

use crate::error::{Error, Result};

pub const MAX_SEARCH_VERTICES: usize = 128;

/// Bipartition constraint for α-labelings: positions of parity `low_parity`
/// take labels `<= alpha`, the others labels `> alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassSplit {
    pub low_parity: usize,
    pub alpha: usize,
}

#[derive(Debug, Clone)]
pub struct PathSearch {
    n: usize,
    fixed: Vec<Option<usize>>,
    split: Option<ClassSplit>,
}

pub enum Outcome {
    Found(Vec<usize>),
    Exhausted,
    OutOfBudget,
}

impl PathSearch {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_SEARCH_VERTICES {
            return Err(Error::Budget {
                what: format!(
                    "path search supports 1..={MAX_SEARCH_VERTICES} vertices, asked for {n}"
                ),
                budget: 0,
            });
        }
        Ok(PathSearch {
            n,
            fixed: vec![None; n],
            split: None,
        })
    }

    pub fn fix(mut self, position: usize, label: usize) -> Self {
        self.fixed[position] = Some(label);
        self
    }

    pub fn split(mut self, split: ClassSplit) -> Self {
        self.split = Some(split);
        self
    }

    fn is_low(&self, pos: usize) -> Option<bool> {
        self.split.map(|s| pos % 2 == s.low_parity)
    }

    fn label_allowed(&self, pos: usize, label: usize) -> bool {
        match (self.split, self.is_low(pos)) {
            (Some(s), Some(true)) => label <= s.alpha,
            (Some(s), Some(false)) => label > s.alpha,
            _ => true,
        }
    }

    /// Visiting order: the anchor, then its two sides interleaved, each
    /// position paired with the already-placed neighbor it hangs off.
    fn order(&self) -> Vec<(usize, Option<usize>)> {
        let anchor = self.fixed.iter().position(Option::is_some).unwrap_or(0);
        let mut order = vec![(anchor, None)];
        let (mut left, mut right) = (anchor, anchor);
        let mut go_right = true;
        while order.len() < self.n {
            let can_right = right + 1 < self.n;
            let can_left = left > 0;
            if (go_right && can_right) || !can_left {
                right += 1;
                order.push((right, Some(right - 1)));
            } else {
                left -= 1;
                order.push((left, Some(left + 1)));
            }
            if can_left && can_right {
                go_right = !go_right;
            }
        }
        order
    }

    /// Runs the search, calling `visit` on each complete labeling (indexed by
    /// position). `visit` returns `true` to stop.
    pub fn run(&self, budget: u64, mut visit: impl FnMut(&[usize]) -> bool) -> (Outcome, u64) {
        let order = self.order();
        let mut state = State {
            search: self,
            order: &order,
            m: self.n - 1,
            labels: vec![usize::MAX; self.n],
            used_labels: 0,
            used_diffs: 0,
            nodes: 0,
            budget,
        };
        let stop = state.descend(0, &mut visit);
        let nodes = state.nodes;
        let outcome = match stop {
            Step::Stop => Outcome::Found(state.labels),
            Step::Continue => Outcome::Exhausted,
            Step::Budget => Outcome::OutOfBudget,
        };
        (outcome, nodes)
    }

    pub fn first(&self, budget: u64) -> (Outcome, u64) {
        self.run(budget, |_| true)
    }
}

enum Step {
    Continue,
    Stop,
    Budget,
}

struct State<'a> {
    search: &'a PathSearch,
    order: &'a [(usize, Option<usize>)],
    m: usize,
    labels: Vec<usize>,
    used_labels: u128,
    used_diffs: u128,
    nodes: u64,
    budget: u64,
}

impl State<'_> {
    fn descend(&mut self, depth: usize, visit: &mut impl FnMut(&[usize]) -> bool) -> Step {
        if depth == self.order.len() {
            return if visit(&self.labels) {
                Step::Stop
            } else {
                Step::Continue
            };
        }
        let (pos, anchor) = self.order[depth];
        match anchor {
            None => {
                let candidates: Vec<usize> = match self.search.fixed[pos] {
                    Some(l) => vec![l],
                    None => (0..=self.m).collect(),
                };
                for label in candidates {
                    if label > self.m || !self.search.label_allowed(pos, label) {
                        continue;
                    }
                    match self.place(depth, pos, label, 0, visit) {
                        Step::Continue => {}
                        other => return other,
                    }
                }
                Step::Continue
            }
            Some(a) => {
                let base = self.labels[a];
                let m = self.m;
                let mut free = !self.used_diffs & mask_upto(m) & !1;
                while free != 0 {
                    let d = 127 - free.leading_zeros() as usize;
                    free &= !(1u128 << d);
                    for label in [base.checked_add(d), base.checked_sub(d)]
                        .into_iter()
                        .flatten()
                    {
                        if label > m || self.used_labels & (1u128 << label) != 0 {
                            continue;
                        }
                        if let Some(f) = self.search.fixed[pos] {
                            if f != label {
                                continue;
                            }
                        }
                        if !self.search.label_allowed(pos, label) {
                            continue;
                        }
                        match self.place(depth, pos, label, d, visit) {
                            Step::Continue => {}
                            other => return other,
                        }
                    }
                }
                Step::Continue
            }
        }
    }

    fn place(
        &mut self,
        depth: usize,
        pos: usize,
        label: usize,
        diff: usize,
        visit: &mut impl FnMut(&[usize]) -> bool,
    ) -> Step {
        if self.used_labels & (1u128 << label) != 0 {
            return Step::Continue;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Step::Budget;
        }
        self.labels[pos] = label;
        self.used_labels |= 1u128 << label;
        if diff > 0 {
            self.used_diffs |= 1u128 << diff;
        }
        let r = self.descend(depth + 1, visit);
        if let Step::Stop = r {
            return r;
        }
        self.used_labels &= !(1u128 << label);
        if diff > 0 {
            self.used_diffs &= !(1u128 << diff);
        }
        self.labels[pos] = usize::MAX;
        r
    }
}

/// Bits `0..=m` set.
fn mask_upto(m: usize) -> u128 {
    if m >= 127 {
        u128::MAX
    } else {
        (1u128 << (m + 1)) - 1
    }
}
