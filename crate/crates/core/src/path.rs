//! Graceful and α-labelings of paths with a prescribed vertex labeled 0 or a
//! prescribed endpoint label.
//!
//! Labelings are indexed by position along the path `0 - 1 - … - (n-1)`.
//! Requests are answered by explicit walk constructions where one applies and
//! by bounded search otherwise; search results are memoized in an optional
//! [`PathCache`]. Every answer is certified before it is returned.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cache::PathCache;
use crate::error::{invalid, Error, Result};
use crate::grid::{self, Walk};
use crate::model::{is_graceful, AlphaLabeling, Labeling, Tree};
use crate::search::{ClassSplit, Outcome, PathSearch};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Largest `n` that [`enumerate_alpha_paths`] accepts by default.
pub const DEFAULT_ENUMERATION_BOUND: usize = 14;

/// The zigzag `0, m, 1, m-1, …`: an α-labeling with the first endpoint at 0.
pub fn zigzag_alpha_path(n: usize) -> Result<AlphaLabeling> {
    if n == 0 {
        return Err(invalid!("a path needs at least one vertex"));
    }
    let labels = (0..n)
        .map(|j| {
            if j % 2 == 0 {
                j / 2
            } else {
                n - 1 - (j - 1) / 2
            }
        })
        .collect();
    AlphaLabeling::new(&Tree::path(n)?, Labeling::new(labels))
}

/// Every α-labeling of `P_n`, sorted lexicographically by label sequence.
pub fn enumerate_alpha_paths(n: usize) -> Result<Vec<AlphaLabeling>> {
    enumerate_alpha_paths_up_to(n, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_alpha_paths_up_to(n: usize, bound: usize) -> Result<Vec<AlphaLabeling>> {
    if n == 0 {
        return Err(invalid!("a path needs at least one vertex"));
    }
    if n > bound {
        return Err(Error::Budget {
            what: format!("exhaustive enumeration of P_{n} exceeds the bound of {bound} vertices"),
            budget: bound as u64,
        });
    }
    let tree = Tree::path(n)?;
    let mut found = Vec::new();
    // The low class is one colour class of the path; each labeling has exactly one.
    for low_parity in 0..2.min(n) {
        let low = (0..n).filter(|p| p % 2 == low_parity).count();
        let search = PathSearch::new(n)?.split(ClassSplit {
            low_parity,
            alpha: low - 1,
        });
        let (outcome, _) = search.run(u64::MAX, |labels| {
            found.push(labels.to_vec());
            false
        });
        debug_assert!(matches!(outcome, Outcome::Exhausted));
    }
    found.sort();
    found.dedup();
    found
        .into_iter()
        .map(|labels| AlphaLabeling::new(&tree, Labeling::new(labels)))
        .collect()
}

/// A single provider request; also the cache key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PathLabelRequest {
    GracefulZeroAt {
        n: usize,
        position: usize,
    },
    AlphaZeroAt {
        n: usize,
        position: usize,
    },
    AlphaEndLabel {
        n: usize,
        end_label: usize,
        required_index: Option<usize>,
    },
}

impl PathLabelRequest {
    pub fn n(&self) -> usize {
        match *self {
            PathLabelRequest::GracefulZeroAt { n, .. }
            | PathLabelRequest::AlphaZeroAt { n, .. }
            | PathLabelRequest::AlphaEndLabel { n, .. } => n,
        }
    }

    pub fn cache_key(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for PathLabelRequest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PathLabelRequest::GracefulZeroAt { n, position } => {
                write!(f, "graceful_zero_at/{n}/{position}/-")
            }
            PathLabelRequest::AlphaZeroAt { n, position } => {
                write!(f, "alpha_zero_at/{n}/{position}/-")
            }
            PathLabelRequest::AlphaEndLabel {
                n,
                end_label,
                required_index,
            } => match required_index {
                Some(i) => write!(f, "alpha_end_label/{n}/{end_label}/{i}"),
                None => write!(f, "alpha_end_label/{n}/{end_label}/-"),
            },
        }
    }
}

/// Answers path labeling requests; see the module docs.
#[derive(Debug)]
pub struct PathProvider {
    budget: u64,
    cache: Option<PathCache>,
}

impl Default for PathProvider {
    fn default() -> Self {
        PathProvider {
            budget: DEFAULT_NODE_BUDGET,
            cache: None,
        }
    }
}

impl PathProvider {
    pub fn new() -> Self {
        Self::default()
    }

    /// Default budget, cache taken from the environment if configured.
    pub fn from_env() -> Result<Self> {
        Ok(PathProvider {
            budget: DEFAULT_NODE_BUDGET,
            cache: PathCache::from_env()?,
        })
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_cache(mut self, cache: PathCache) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn cache(&self) -> Option<&PathCache> {
        self.cache.as_ref()
    }

    /// Dispatches on the request kind. Graceful requests carry no index.
    pub fn provide(&self, request: &PathLabelRequest) -> Result<Labeling> {
        match *request {
            PathLabelRequest::GracefulZeroAt { n, position } => {
                self.graceful_path_zero_at(n, position)
            }
            PathLabelRequest::AlphaZeroAt { n, position } => self
                .alpha_path_zero_at(n, position)
                .map(AlphaLabeling::into_labeling),
            PathLabelRequest::AlphaEndLabel {
                n,
                end_label,
                required_index,
            } => self
                .alpha_path_end_label(n, end_label, required_index)
                .map(AlphaLabeling::into_labeling),
        }
    }

    /// Graceful labeling of `P_n` with the vertex at `position` labeled 0.
    pub fn graceful_path_zero_at(&self, n: usize, position: usize) -> Result<Labeling> {
        check_position(n, position)?;
        if position == 0 || position == n - 1 {
            let mut labels = zigzag_alpha_path(n)?.into_labeling().into_values();
            if position != 0 {
                labels.reverse();
            }
            return Ok(Labeling::new(labels));
        }
        if !(n == 5 && position == 2) {
            return self
                .alpha_path_zero_at(n, position)
                .map(AlphaLabeling::into_labeling);
        }
        let request = PathLabelRequest::GracefulZeroAt { n, position };
        let labels = self.searched(&request, || PathSearch::new(n).map(|s| s.fix(position, 0)))?;
        let tree = Tree::path(n)?;
        if !is_graceful(&tree, &labels)? || labels.get(position) != Some(0) {
            return Err(Error::internal(format!(
                "search returned a bad labeling for {request}"
            )));
        }
        Ok(labels)
    }

    /// α-labeling of `P_n` with the vertex at `position` labeled 0.
    ///
    /// The center of `P_5` is the one position with no such labeling.
    pub fn alpha_path_zero_at(&self, n: usize, position: usize) -> Result<AlphaLabeling> {
        check_position(n, position)?;
        if n == 5 && position == 2 {
            return Err(Error::Infeasible(
                "P_5 has no α-labeling with its central vertex labeled 0".into(),
            ));
        }
        let request = PathLabelRequest::AlphaZeroAt { n, position };
        let labels = match grid::walk_with_zero_at(n, position) {
            Some(walk) => Labeling::new(walk.labels()),
            None => {
                let low = (0..n).filter(|p| p % 2 == position % 2).count();
                self.searched(&request, || {
                    PathSearch::new(n).map(|s| {
                        s.fix(position, 0).split(ClassSplit {
                            low_parity: position % 2,
                            alpha: low - 1,
                        })
                    })
                })?
            }
        };
        let al = certify(n, labels, &request)?;
        if al.labeling().get(position) != Some(0) {
            return Err(Error::internal(format!(
                "{request}: position {position} is not labeled 0"
            )));
        }
        Ok(al)
    }

    /// α-labeling of `P_n` whose first vertex is labeled `end_label`.
    ///
    /// A path's low class is one of its colour classes, so the only possible
    /// indices are `⌊n/2⌋ - 1` and `⌈n/2⌉ - 1`; with `required_index` absent
    /// the former is preferred. For `n = 4s + 1` the end labels `s` and `3s`
    /// are unreachable.
    pub fn alpha_path_end_label(
        &self,
        n: usize,
        end_label: usize,
        required_index: Option<usize>,
    ) -> Result<AlphaLabeling> {
        if n < 2 {
            return Err(invalid!(
                "an end-labeled path needs at least 2 vertices, got {n}"
            ));
        }
        if end_label >= n {
            return Err(invalid!("end label {end_label} is outside [0, {}]", n - 1));
        }
        if n % 4 == 1 && (end_label == n / 4 || end_label == 3 * (n / 4)) {
            let s = n / 4;
            return Err(Error::Infeasible(format!(
                "P_{n} (n = 4·{s} + 1) has no α-labeling with an endpoint labeled {end_label}; \
                 the labels {s} and {} are excluded",
                3 * s
            )));
        }
        let request = PathLabelRequest::AlphaEndLabel {
            n,
            end_label,
            required_index,
        };
        let small = n / 2 - 1;
        let large = n.div_ceil(2) - 1;
        let indices: Vec<usize> = match required_index {
            Some(i) if i == small || i == large => vec![i],
            Some(i) => {
                return Err(Error::Infeasible(format!(
                    "an α-labeling of P_{n} has index {small} or {large}, not {i}"
                )))
            }
            None if small == large => vec![small],
            None => vec![small, large],
        };
        for &index in &indices {
            if let Some(walk) = end_walk(n, end_label, index) {
                let al = certify(n, Labeling::new(walk.labels()), &request)?;
                return check_end(al, end_label, index, &request);
            }
        }
        // Odd n: both endpoints lie in the larger colour class.
        let index = indices[0];
        let low_end = end_label <= index;
        if n % 2 == 1 && low_end != (index == large) {
            return Err(Error::Infeasible(format!(
                "both endpoints of P_{n} lie in the larger colour class, so with index {index} \
                 an endpoint cannot be labeled {end_label}"
            )));
        }
        let labels = self.searched(&request, || {
            let low_parity = if low_end { 0 } else { 1 };
            PathSearch::new(n).map(|s| {
                s.fix(0, end_label).split(ClassSplit {
                    low_parity,
                    alpha: index,
                })
            })
        })?;
        let al = certify(n, labels, &request)?;
        check_end(al, end_label, index, &request)
    }

    /// Cached search; exhaustion is reported as infeasibility, running out of
    /// nodes as a resource error.
    fn searched(
        &self,
        request: &PathLabelRequest,
        search: impl FnOnce() -> Result<PathSearch>,
    ) -> Result<Labeling> {
        let key = request.cache_key();
        if let Some(labels) = self.cache.as_ref().and_then(|c| c.get(&key)) {
            if labels.len() == request.n() {
                return Ok(Labeling::new(labels));
            }
        }
        let (outcome, _) = search()?.first(self.budget);
        match outcome {
            Outcome::Found(labels) => {
                if let Some(cache) = &self.cache {
                    cache.insert(&key, &labels)?;
                }
                Ok(Labeling::new(labels))
            }
            Outcome::Exhausted => Err(Error::Infeasible(format!(
                "exhaustive search found no labeling for {request}"
            ))),
            Outcome::OutOfBudget => Err(Error::Budget {
                what: format!("path search for {request}"),
                budget: self.budget,
            }),
        }
    }
}

fn check_position(n: usize, position: usize) -> Result<()> {
    if n == 0 {
        return Err(invalid!("a path needs at least one vertex"));
    }
    if position >= n {
        return Err(invalid!("position {position} is outside [0, {}]", n - 1));
    }
    Ok(())
}

/// Walk realizing an end label at the given index, if the construction covers it.
fn end_walk(n: usize, end_label: usize, index: usize) -> Option<Walk> {
    let a = n / 2;
    if index + 1 == a {
        if end_label >= a {
            grid::walk_from_high(n, end_label - a)
        } else if n.is_multiple_of(2) {
            // Equal classes: the class swap maps Y(a - 1 - e) to X(e).
            grid::walk_from_high(n, a - 1 - end_label).map(Walk::swap)
        } else {
            None
        }
    } else if n % 2 == 1 && index == a {
        end_walk(n, n - 1 - end_label, a - 1).map(Walk::swap)
    } else {
        None
    }
}

fn certify(n: usize, labels: Labeling, request: &PathLabelRequest) -> Result<AlphaLabeling> {
    let tree = Tree::path(n)?;
    AlphaLabeling::new(&tree, labels).map_err(|e| {
        Error::internal(format!(
            "{request} produced a labeling that fails certification: {e}"
        ))
    })
}

fn check_end(
    al: AlphaLabeling,
    end_label: usize,
    index: usize,
    request: &PathLabelRequest,
) -> Result<AlphaLabeling> {
    if al.labeling().get(0) != Some(end_label) || al.alpha() != index {
        return Err(Error::internal(format!(
            "{request} produced end label {:?} with index {}",
            al.labeling().get(0),
            al.alpha()
        )));
    }
    Ok(al)
}
