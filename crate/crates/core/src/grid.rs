//! Explicit α-labelings of paths, built as walks on a difference grid.
//!
//! An α-labeling of a path with `a` low and `b` high labels is written as a
//! walk alternating between low nodes `X(x)`, `x < a`, carrying label `x`, and
//! high nodes `Y(y)`, `y < b`, carrying label `a + y`. The edge `X(x) Y(y)`
//! gets label `a + y - x`, so the labeling is graceful exactly when the keys
//! `y - x` met along the walk are pairwise distinct; for a walk through all
//! `a + b` nodes they then fill `[1 - a, b - 1]`.
//!
//! Walks are assembled from three zigzag families by gluing, reflection and
//! class swap. Each operation keeps the key set contiguous, so every walk
//! returned here is an α-labeling by construction; callers still certify.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Node {
    X(usize),
    Y(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Walk {
    a: usize,
    b: usize,
    nodes: Vec<Node>,
}

/// Class sizes `(a, b)` of the index `⌊n/2⌋ - 1` split.
pub(crate) fn standard_sizes(n: usize) -> (usize, usize) {
    (n / 2, n - n / 2)
}

/// `n = 4s + 1` with the walk starting at `Y(s)`: the one start no walk reaches.
pub(crate) fn is_forbidden_start(n: usize, y0: usize) -> bool {
    n % 4 == 1 && 2 * y0 == n / 2
}

impl Walk {
    pub(crate) fn len(&self) -> usize {
        self.nodes.len()
    }

    /// Labels in walk order.
    pub(crate) fn labels(&self) -> Vec<usize> {
        self.nodes
            .iter()
            .map(|node| match *node {
                Node::X(x) => x,
                Node::Y(y) => self.a + y,
            })
            .collect()
    }

    fn position(&self, node: Node) -> Option<usize> {
        self.nodes.iter().position(|&n| n == node)
    }

    fn first(&self) -> Node {
        self.nodes[0]
    }

    fn last(&self) -> Node {
        self.nodes[self.nodes.len() - 1]
    }

    /// Reflects each class onto itself; keys map `k -> (b - a) - k`.
    fn flip(mut self) -> Walk {
        let (a, b) = (self.a, self.b);
        for node in &mut self.nodes {
            *node = match *node {
                Node::X(x) => Node::X(a - 1 - x),
                Node::Y(y) => Node::Y(b - 1 - y),
            };
        }
        self
    }

    /// Exchanges the classes; on labels this is the complement `l -> m - l`.
    pub(crate) fn swap(mut self) -> Walk {
        let (a, b) = (self.a, self.b);
        for node in &mut self.nodes {
            *node = match *node {
                Node::X(x) => Node::Y(a - 1 - x),
                Node::Y(y) => Node::X(b - 1 - y),
            };
        }
        self.a = b;
        self.b = a;
        self
    }

    fn reverse(mut self) -> Walk {
        self.nodes.reverse();
        self
    }

    /// Joins `g`, which must end at `X(x)`, to `h`, which must start at `Y(x)`.
    ///
    /// Low labels of `h` stay put and those of `g` move above them; high
    /// labels of `g` stay put and those of `h` move above them. The keys of
    /// `g` and `h` land on either side of the single key the new edge uses.
    fn glue(g: Walk, h: Walk) -> Walk {
        debug_assert!(matches!((g.last(), h.first()), (Node::X(x), Node::Y(y)) if x == y));
        let mut nodes = Vec::with_capacity(g.len() + h.len());
        nodes.extend(g.nodes.iter().map(|node| match *node {
            Node::X(x) => Node::X(x + h.a),
            y => y,
        }));
        nodes.extend(h.nodes.iter().map(|node| match *node {
            Node::Y(y) => Node::Y(y + g.b),
            x => x,
        }));
        Walk {
            a: g.a + h.a,
            b: g.b + h.b,
            nodes,
        }
    }
}

/// `Y(q-1) X(0) Y(q-2) X(1) … Y(0) X(q-1)`: keys fall from `q - 1` to `1 - q`.
fn falling_zigzag(q: usize) -> Walk {
    let nodes = (0..q)
        .flat_map(|i| [Node::Y(q - 1 - i), Node::X(i)])
        .collect();
    Walk { a: q, b: q, nodes }
}

/// `Y(q) X(0) Y(q-1) X(1) … X(q-1) Y(0)`: keys fall from `q` to `1 - q`.
fn odd_zigzag(q: usize) -> Walk {
    let mut nodes: Vec<Node> = (0..q).flat_map(|i| [Node::Y(q - i), Node::X(i)]).collect();
    nodes.push(Node::Y(0));
    Walk {
        a: q,
        b: q + 1,
        nodes,
    }
}

/// Walk on `4c + 2` nodes starting at the middle high node `Y(c)`.
///
/// `Y(c) X(c-1) Y(c+1) … X(0) Y(2c)` climbs through keys `1..=2c`, the jump to
/// `X(2c)` takes key `0`, and `X(2c) Y(0) X(2c-1) … Y(c-1) X(c)` climbs
/// through `-2c..=-1`.
fn split_zigzag(c: usize) -> Walk {
    let mut nodes = Vec::with_capacity(4 * c + 2);
    for i in 0..c {
        nodes.push(Node::Y(c + i));
        nodes.push(Node::X(c - 1 - i));
    }
    nodes.push(Node::Y(2 * c));
    for i in 0..c {
        nodes.push(Node::X(2 * c - i));
        nodes.push(Node::Y(i));
    }
    nodes.push(Node::X(c));
    Walk {
        a: 2 * c + 1,
        b: 2 * c + 1,
        nodes,
    }
}

/// Walk on `n` nodes with the standard split that starts at `Y(y0)`.
///
/// Returns `None` only for the forbidden start or `y0` out of range.
pub(crate) fn walk_from_high(n: usize, y0: usize) -> Option<Walk> {
    let (_, b) = standard_sizes(n);
    if n == 0 || y0 >= b || is_forbidden_start(n, y0) {
        return None;
    }
    from_high(n, y0, true)
}

fn from_high(n: usize, y0: usize, may_flip: bool) -> Option<Walk> {
    let (_, b) = standard_sizes(n);
    if n == 1 {
        return (y0 == 0).then(|| Walk {
            a: 0,
            b: 1,
            nodes: vec![Node::Y(0)],
        });
    }
    if n % 4 == 2 && 2 * y0 == b - 1 {
        return Some(split_zigzag(y0));
    }

    // Falling zigzag on 2(y0+1) nodes, then a walk starting at Y(y0) again.
    let head = 2 * (y0 + 1);
    if head == n {
        return Some(falling_zigzag(y0 + 1));
    }
    if head < n {
        let rest = n - head;
        let (_, rest_b) = standard_sizes(rest);
        if y0 < rest_b {
            if let Some(tail) = from_high(rest, y0, true) {
                return Some(Walk::glue(falling_zigzag(y0 + 1), tail));
            }
        }
    }

    // Odd n: a walk on 2·y0 nodes ending low, then an odd zigzag, read backwards.
    if n % 2 == 1 && y0 >= 1 && n > 2 * y0 + 1 {
        let q = (n - 2 * y0 - 1) / 2;
        if q < y0 {
            let head_n = 2 * y0;
            if let Some(head) = from_high(head_n, y0 - 1 - q, true) {
                let head = head.swap().reverse();
                return Some(Walk::glue(head, odd_zigzag(q)).reverse());
            }
        }
    }

    if may_flip && 2 * y0 != b - 1 {
        return from_high(n, b - 1 - y0, false).map(Walk::flip);
    }
    None
}

/// Walk on `n` nodes with `b` low and `a` high nodes ending at `X(x)`.
fn walk_to_low(n: usize, x: usize) -> Option<Walk> {
    let (_, b) = standard_sizes(n);
    if x >= b {
        return None;
    }
    walk_from_high(n, b - 1 - x).map(|w| w.swap().reverse())
}

/// Walk on `n` nodes (any split) whose node at `position` is `X(0)`.
///
/// Tries the zigzag ends, then every split of the path into a head ending low
/// and a tail starting high, in both orientations. `None` means no such glued
/// walk exists, not that no labeling exists.
pub(crate) fn walk_with_zero_at(n: usize, position: usize) -> Option<Walk> {
    if n == 0 || position >= n {
        return None;
    }
    if n == 1 {
        return Some(Walk {
            a: 1,
            b: 0,
            nodes: vec![Node::X(0)],
        });
    }
    let zigzag = odd_or_even_zigzag(n);
    if position == 0 {
        return Some(zigzag);
    }
    if position == n - 1 {
        return Some(zigzag.reverse());
    }
    glued_zero_at(n, position).or_else(|| glued_zero_at(n, n - 1 - position).map(Walk::reverse))
}

/// The zigzag `X(0) Y(top) X(1) …`, viewed as a walk.
fn odd_or_even_zigzag(n: usize) -> Walk {
    let a = n - n / 2;
    let b = n / 2;
    let nodes = (0..n)
        .map(|j| {
            if j % 2 == 0 {
                Node::X(j / 2)
            } else {
                Node::Y(b - 1 - (j - 1) / 2)
            }
        })
        .collect();
    Walk { a, b, nodes }
}

fn glued_zero_at(n: usize, position: usize) -> Option<Walk> {
    for head_n in 1..n {
        let tail_n = n - head_n;
        let (_, tail_b) = standard_sizes(tail_n);
        for y in 0..tail_b {
            let Some(tail) = walk_from_high(tail_n, y) else {
                continue;
            };
            let Some(head) = walk_to_low(head_n, y) else {
                continue;
            };
            let tail_zero = tail.position(Node::X(0));
            let head_top = head.position(Node::X(head.a - 1));
            if tail_zero.map(|p| head_n + p) == Some(position) {
                return Some(Walk::glue(head, tail));
            }
            if head_top == Some(position) {
                return Some(Walk::glue(head, tail).flip());
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    fn assert_valid(w: &Walk) {
        let mut seen = HashSet::new();
        let mut keys = HashSet::new();
        for node in &w.nodes {
            match *node {
                Node::X(x) => assert!(x < w.a),
                Node::Y(y) => assert!(y < w.b),
            }
            assert!(seen.insert(*node), "repeated node {node:?}");
        }
        assert_eq!(w.nodes.len(), w.a + w.b);
        for pair in w.nodes.windows(2) {
            let key = match (pair[0], pair[1]) {
                (Node::X(x), Node::Y(y)) | (Node::Y(y), Node::X(x)) => y as i64 - x as i64,
                _ => panic!("two nodes of one class are adjacent"),
            };
            assert!(keys.insert(key), "repeated key {key}");
        }
    }

    #[test]
    fn zigzag_families_are_valid() {
        for q in 1..30 {
            assert_valid(&falling_zigzag(q));
            assert_valid(&odd_zigzag(q));
            assert_valid(&split_zigzag(q - 1));
        }
    }

    #[test]
    fn every_allowed_high_start_is_reached() {
        for n in 1..=160 {
            let (_, b) = standard_sizes(n);
            for y0 in 0..b {
                let w = walk_from_high(n, y0);
                if is_forbidden_start(n, y0) {
                    assert!(w.is_none());
                    continue;
                }
                let w = w.unwrap_or_else(|| panic!("no walk for n={n}, y0={y0}"));
                assert_eq!(w.first(), Node::Y(y0));
                assert_eq!(w.a, n / 2);
                assert_valid(&w);
            }
        }
    }

    #[test]
    fn zero_positions_outside_the_odd_center() {
        for n in 1..=60 {
            for p in 0..n {
                let w = walk_with_zero_at(n, p);
                let odd_center = n % 4 == 1 && 2 * p == n - 1;
                match w {
                    Some(w) => {
                        assert_valid(&w);
                        assert_eq!(w.nodes[p], Node::X(0));
                    }
                    None => assert!(
                        odd_center || [(3, 1), (9, 3), (9, 5)].contains(&(n, p)),
                        "n={n}, p={p}"
                    ),
                }
            }
        }
    }

    #[test]
    fn flip_and_swap_are_involutions() {
        let w = walk_from_high(23, 3).unwrap();
        assert_eq!(w.clone().flip().flip(), w);
        assert_eq!(w.clone().swap().swap(), w);
        assert_valid(&w.clone().flip());
        assert_valid(&w.swap());
    }
}
