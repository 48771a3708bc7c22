//! Hamilton cycles in balanced bipartite graphs.
//!
//! [`find_hamilton`] is constructive for the Moon–Moser condition: if every
//! non-edge `(x, y)` has `deg(x) + deg(y) > t`, a Hamilton cycle is returned
//! after O(t) crossing-chord flips of O(t) each.
//!
//! The search first grows an alternating path by rotation–extension, pads it
//! into a cyclic alternating order of all `2t` vertices, then removes "gaps"
//! (consecutive non-adjacent pairs). For a gap `(u, w)` at positions
//! `(p, p+1)` it looks for a position `q` of the same side as `w` with
//! `u ~ order[q]` and `w ~ order[q+1]`; reversing `order[p+1..=q]` replaces
//! the gap by two edges. Under the condition, `N(u)` occupies at least
//! `deg(u)` of the `t` candidate slots and the shifted `N(w)` at least
//! `deg(w)` of them, so the sets meet. Each flip removes at least one gap.
//!
//! [`exact_hamilton`] is an exhaustive backtracking oracle for small `t`.

use std::fmt;

use crate::error::{Error, Result};

/// Balanced bipartite graph: rows are `X = {x_0..x_{t-1}}`, columns are
/// `Y = {y_0..y_{t-1}}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    t: usize,
    adj: Vec<bool>,
}

impl fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BipartiteGraph(t={})", self.t)?;
        for x in 0..self.t {
            let row: String = (0..self.t)
                .map(|y| if self.has_edge(x, y) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

impl BipartiteGraph {
    pub fn empty(t: usize) -> Self {
        BipartiteGraph {
            t,
            adj: vec![false; t * t],
        }
    }

    pub fn complete(t: usize) -> Self {
        BipartiteGraph {
            t,
            adj: vec![true; t * t],
        }
    }

    pub fn from_fn(t: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = BipartiteGraph::empty(t);
        for x in 0..t {
            for y in 0..t {
                g.adj[x * t + y] = edge(x, y);
            }
        }
        g
    }

    /// Bit `x * t + y` of `mask` is the edge `(x_x, y_y)`. Requires `t*t <= 64`.
    pub fn from_mask(t: usize, mask: u64) -> Self {
        assert!(t * t <= 64);
        BipartiteGraph::from_fn(t, |x, y| mask >> (x * t + y) & 1 == 1)
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.adj[x * self.t + y]
    }

    pub fn set_edge(&mut self, x: usize, y: usize, present: bool) {
        self.adj[x * self.t + y] = present;
    }

    pub fn row_degree(&self, x: usize) -> usize {
        self.adj[x * self.t..(x + 1) * self.t]
            .iter()
            .filter(|e| **e)
            .count()
    }

    pub fn col_degree(&self, y: usize) -> usize {
        (0..self.t).filter(|x| self.has_edge(*x, y)).count()
    }

    pub fn row_degrees(&self) -> Vec<usize> {
        (0..self.t).map(|x| self.row_degree(x)).collect()
    }

    pub fn col_degrees(&self) -> Vec<usize> {
        (0..self.t).map(|y| self.col_degree(y)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|e| **e).count()
    }

    // Unified vertex ids: 0..t are rows, t..2t are columns.
    fn adjacent(&self, u: usize, v: usize) -> bool {
        let t = self.t;
        match (u < t, v < t) {
            (true, false) => self.has_edge(u, v - t),
            (false, true) => self.has_edge(v, u - t),
            _ => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OreOutcome {
    Holds,
    /// A non-edge with `deg(x) + deg(y) <= t`, chosen with the smallest
    /// degree sum (ties by smallest `(x, y)`).
    Violated {
        x: usize,
        y: usize,
        degree_sum: usize,
    },
}

impl OreOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, OreOutcome::Holds)
    }
}

fn check_part(g: &BipartiteGraph) -> Result<()> {
    if g.t < 2 {
        return Err(Error::PartTooSmall(g.t));
    }
    Ok(())
}

/// Checks `deg(x) + deg(y) > t` for every non-edge.
pub fn ore_check(g: &BipartiteGraph) -> Result<OreOutcome> {
    check_part(g)?;
    let rows = g.row_degrees();
    let cols = g.col_degrees();
    let mut worst: Option<(usize, usize, usize)> = None;
    for (x, &dx) in rows.iter().enumerate() {
        for (y, &dy) in cols.iter().enumerate() {
            if g.has_edge(x, y) {
                continue;
            }
            let sum = dx + dy;
            if sum <= g.t && worst.is_none_or(|(_, _, s)| sum < s) {
                worst = Some((x, y, sum));
            }
        }
    }
    Ok(match worst {
        None => OreOutcome::Holds,
        Some((x, y, degree_sum)) => OreOutcome::Violated { x, y, degree_sum },
    })
}

/// Hamilton cycle `x_{i1}, y_{j1}, x_{i2}, y_{j2}, ..., x_{it}, y_{jt}`,
/// stored as the pairs `(i_s, j_s)`. The closing edge is `y_{jt} x_{i1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleCert {
    pub steps: Vec<(usize, usize)>,
}

impl CycleCert {
    /// Every edge the cycle uses, as `(x, y)` pairs, in traversal order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let t = self.steps.len();
        let mut out = Vec::with_capacity(2 * t);
        for s in 0..t {
            let (x, y) = self.steps[s];
            out.push((x, y));
            out.push((self.steps[(s + 1) % t].0, y));
        }
        out
    }

    /// Checks alternation, full coverage and edge membership in `g`.
    pub fn validate(&self, g: &BipartiteGraph) -> std::result::Result<(), String> {
        let t = g.t();
        if self.steps.len() != t {
            return Err(format!(
                "cycle has {} steps, expected {t}",
                self.steps.len()
            ));
        }
        let mut seen_x = vec![false; t];
        let mut seen_y = vec![false; t];
        for &(x, y) in &self.steps {
            if x >= t || y >= t {
                return Err(format!("index out of range in ({x}, {y})"));
            }
            if std::mem::replace(&mut seen_x[x], true) {
                return Err(format!("x_{x} visited twice"));
            }
            if std::mem::replace(&mut seen_y[y], true) {
                return Err(format!("y_{y} visited twice"));
            }
        }
        for (x, y) in self.edges() {
            if !g.has_edge(x, y) {
                return Err(format!("(x_{x}, y_{y}) is not an edge"));
            }
        }
        Ok(())
    }

    /// Rotation/reflection-free form: starts at `x_0`, and the `y` after
    /// `x_0` has a smaller index than the `y` before it.
    pub fn canonical(&self) -> CycleCert {
        let t = self.steps.len();
        let mut seq: Vec<usize> = self.steps.iter().flat_map(|&(x, y)| [x, t + y]).collect();
        let start = seq.iter().position(|&v| v == 0).expect("x_0 present");
        seq.rotate_left(start);
        if seq[1] > seq[2 * t - 1] {
            seq[1..].reverse();
        }
        CycleCert {
            steps: seq.chunks(2).map(|c| (c[0], c[1] - t)).collect(),
        }
    }
}

fn order_to_cert(t: usize, order: &[usize]) -> CycleCert {
    let start = order.iter().position(|&v| v < t).expect("rows present");
    let mut seq = order.to_vec();
    seq.rotate_left(start);
    CycleCert {
        steps: seq.chunks(2).map(|c| (c[0], c[1] - t)).collect(),
    }
    .canonical()
}

/// Rotation–extension from `start`; returns a maximal alternating path.
fn grow_path(g: &BipartiteGraph, start: usize) -> Vec<usize> {
    let n = 2 * g.t;
    let mut path = vec![start];
    let mut on_path = vec![false; n];
    on_path[start] = true;
    let free_neighbor =
        |v: usize, on_path: &[bool]| (0..n).find(|&w| !on_path[w] && g.adjacent(v, w));

    loop {
        let end = *path.last().unwrap();
        if let Some(w) = free_neighbor(end, &on_path) {
            path.push(w);
            on_path[w] = true;
            continue;
        }
        if let Some(w) = free_neighbor(path[0], &on_path) {
            path.reverse();
            path.push(w);
            on_path[w] = true;
            continue;
        }
        if path.len() == n {
            return path;
        }
        // Rotate at the end: end ~ path[i] makes path[i+1] the new end.
        let len = path.len();
        let rotated = (0..len.saturating_sub(2))
            .find(|&i| g.adjacent(end, path[i]) && free_neighbor(path[i + 1], &on_path).is_some());
        if let Some(i) = rotated {
            path[i + 1..].reverse();
            continue;
        }
        // Closed even cycle: reopen it next to a vertex with an outside neighbour.
        if len % 2 == 0 && len >= 4 && g.adjacent(end, path[0]) {
            if let Some(j) = (0..len).find(|&j| free_neighbor(path[j], &on_path).is_some()) {
                path.rotate_left(j + 1);
                continue;
            }
        }
        return path;
    }
}

/// Pads a partial alternating path into a cyclic alternating order of all
/// `2t` vertices.
fn pad_to_cyclic_order(t: usize, path: &[usize]) -> Vec<usize> {
    let mut used = vec![false; 2 * t];
    for &v in path {
        used[v] = true;
    }
    let mut rest_x = (0..t).filter(|&v| !used[v]);
    let mut rest_y = (t..2 * t).filter(|&v| !used[v]);
    let mut order = path.to_vec();
    while order.len() < 2 * t {
        let last_is_x = order.last().is_some_and(|&v| v < t);
        let next = if last_is_x {
            rest_y.next()
        } else {
            rest_x.next()
        };
        order.push(next.expect("part sizes balance"));
    }
    if order[0] >= t {
        order.rotate_left(1);
    }
    order
}

/// Removes gaps by crossing-chord flips. Returns false when some gap remains
/// and no flip is available.
fn close_gaps(g: &BipartiteGraph, order: &mut [usize]) -> bool {
    let len = order.len();
    loop {
        let mut any_gap = false;
        let mut flipped = false;
        for p in 0..len {
            let (u, w) = (order[p], order[(p + 1) % len]);
            if g.adjacent(u, w) {
                continue;
            }
            any_gap = true;
            let hit = (3..len).step_by(2).find(|&off| {
                let q = (p + off) % len;
                g.adjacent(u, order[q]) && g.adjacent(w, order[(q + 1) % len])
            });
            if let Some(off) = hit {
                for i in 0..off / 2 {
                    order.swap((p + 1 + i) % len, (p + off - i) % len);
                }
                flipped = true;
                break;
            }
        }
        if !any_gap {
            return true;
        }
        if !flipped {
            return false;
        }
    }
}

/// Finds a Hamilton cycle. Always succeeds when [`ore_check`] holds; on other
/// graphs tries one restart per start vertex (2t in all) before giving up.
pub fn find_hamilton(g: &BipartiteGraph) -> Result<Option<CycleCert>> {
    check_part(g)?;
    let t = g.t;
    for start in 0..2 * t {
        let path = grow_path(g, start);
        let mut order = pad_to_cyclic_order(t, &path);
        if close_gaps(g, &mut order) {
            let cert = order_to_cert(t, &order);
            debug_assert!(cert.validate(g).is_ok());
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactOutcome {
    Found(CycleCert),
    /// Exhaustive search finished without a cycle: a proof of non-Hamiltonicity.
    NoCycle,
    BudgetExceeded,
}

struct Backtrack<'a> {
    g: &'a BipartiteGraph,
    budget: u64,
    nodes: u64,
    seq: Vec<usize>,
    used: Vec<bool>,
    count_all: bool,
    found: Option<CycleCert>,
    count: u64,
}

impl Backtrack<'_> {
    // Returns false when the budget runs out.
    fn extend(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        let t = self.g.t;
        let last = *self.seq.last().unwrap();
        if self.seq.len() == 2 * t {
            // reflection symmetry: y after x_0 below the closing y
            if self.g.adjacent(last, 0) && self.seq[1] < last {
                self.count += 1;
                if self.found.is_none() {
                    self.found = Some(order_to_cert(t, &self.seq));
                }
            }
            return true;
        }
        for v in 0..2 * t {
            if self.used[v] || !self.g.adjacent(last, v) {
                continue;
            }
            self.used[v] = true;
            self.seq.push(v);
            let ok = self.extend();
            self.seq.pop();
            self.used[v] = false;
            if !ok {
                return false;
            }
            if self.found.is_some() && !self.count_all {
                return true;
            }
        }
        true
    }
}

fn backtrack(g: &BipartiteGraph, node_budget: u64, count_all: bool) -> Result<Backtrack<'_>> {
    check_part(g)?;
    let mut used = vec![false; 2 * g.t];
    used[0] = true;
    let mut search = Backtrack {
        g,
        budget: node_budget,
        nodes: 0,
        seq: vec![0],
        used,
        count_all,
        found: None,
        count: 0,
    };
    if !search.extend() {
        search.nodes = u64::MAX;
    }
    Ok(search)
}

/// Exhaustive search from `x_0`, one orientation per cycle.
pub fn exact_hamilton(g: &BipartiteGraph, node_budget: u64) -> Result<ExactOutcome> {
    let search = backtrack(g, node_budget, false)?;
    Ok(match search.found {
        Some(cert) => ExactOutcome::Found(cert),
        None if search.nodes == u64::MAX => ExactOutcome::BudgetExceeded,
        None => ExactOutcome::NoCycle,
    })
}

/// Number of distinct (undirected) Hamilton cycles; `None` if the budget runs out.
pub fn count_hamilton(g: &BipartiteGraph, node_budget: u64) -> Result<Option<u64>> {
    let search = backtrack(g, node_budget, true)?;
    Ok((search.nodes != u64::MAX).then_some(search.count))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn six_cycle() -> BipartiteGraph {
        // x0-y0-x1-y1-x2-y2-x0
        let mut g = BipartiteGraph::empty(3);
        for (x, y) in [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)] {
            g.set_edge(x, y, true);
        }
        g
    }

    fn perfect_matching(t: usize) -> BipartiteGraph {
        BipartiteGraph::from_fn(t, |x, y| x == y)
    }

    fn edge_set(c: &CycleCert) -> Vec<(usize, usize)> {
        let mut e = c.edges();
        e.sort();
        e
    }

    #[test]
    fn ore_examples() {
        assert_eq!(
            ore_check(&BipartiteGraph::complete(3)).unwrap(),
            OreOutcome::Holds
        );
        match ore_check(&perfect_matching(3)).unwrap() {
            OreOutcome::Violated { x, y, degree_sum } => {
                assert_eq!(degree_sum, 2);
                assert_ne!(x, y);
            }
            OreOutcome::Holds => panic!("matching graph passes"),
        }
        assert_eq!(ore_check(&six_cycle()).unwrap(), OreOutcome::Holds);
        assert!(matches!(
            ore_check(&BipartiteGraph::complete(1)),
            Err(Error::PartTooSmall(1))
        ));
    }

    #[test]
    fn find_examples() {
        let k4 = BipartiteGraph::complete(4);
        let c = find_hamilton(&k4).unwrap().unwrap();
        c.validate(&k4).unwrap();

        let g = six_cycle();
        let c = find_hamilton(&g).unwrap().unwrap();
        c.validate(&g).unwrap();
        let mut all: Vec<_> = (0..3)
            .flat_map(|x| (0..3).map(move |y| (x, y)))
            .filter(|&(x, y)| g.has_edge(x, y))
            .collect();
        all.sort();
        assert_eq!(edge_set(&c), all);

        assert_eq!(find_hamilton(&perfect_matching(3)).unwrap(), None);
        assert!(find_hamilton(&BipartiteGraph::complete(1)).is_err());
    }

    #[test]
    fn exact_examples() {
        let k33 = BipartiteGraph::complete(3);
        assert!(matches!(
            exact_hamilton(&k33, 1_000_000).unwrap(),
            ExactOutcome::Found(_)
        ));
        // brute force over all orderings of y's after fixing x-order up to symmetry
        assert_eq!(count_hamilton(&k33, 1_000_000).unwrap(), Some(6));
        assert_eq!(
            exact_hamilton(&perfect_matching(3), 1_000_000).unwrap(),
            ExactOutcome::NoCycle
        );
        let g = six_cycle();
        match exact_hamilton(&g, 1_000_000).unwrap() {
            ExactOutcome::Found(c) => {
                assert_eq!(
                    c.canonical(),
                    find_hamilton(&g).unwrap().unwrap().canonical()
                )
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            exact_hamilton(&BipartiteGraph::complete(6), 3).unwrap(),
            ExactOutcome::BudgetExceeded
        );
    }

    #[test]
    fn complete_bipartite_cycle_counts() {
        // t! (t-1)! / 2
        for (t, expect) in [(2, 1), (3, 6), (4, 72), (5, 1440)] {
            assert_eq!(
                count_hamilton(&BipartiteGraph::complete(t), 10_000_000).unwrap(),
                Some(expect)
            );
        }
    }

    #[test]
    fn cert_validation_rejects_bad_cycles() {
        let g = six_cycle();
        let bad = CycleCert {
            steps: vec![(0, 0), (1, 2), (2, 1)],
        };
        assert!(bad.validate(&g).is_err());
        let dup = CycleCert {
            steps: vec![(0, 0), (0, 1), (2, 2)],
        };
        assert!(dup.validate(&g).is_err());
    }

    #[test]
    fn ore_implies_cycle_all_t3() {
        for mask in 0u64..(1 << 9) {
            let g = BipartiteGraph::from_mask(3, mask);
            let found = find_hamilton(&g).unwrap();
            if ore_check(&g).unwrap().holds() {
                found
                    .as_ref()
                    .expect("Ore graph without cycle")
                    .validate(&g)
                    .unwrap();
            }
            if let Some(c) = &found {
                c.validate(&g).unwrap();
            }
        }
    }

    #[test]
    fn finder_agrees_with_exact_on_all_t3() {
        for mask in 0u64..(1 << 9) {
            let g = BipartiteGraph::from_mask(3, mask);
            let exact = exact_hamilton(&g, u64::MAX).unwrap();
            let found = find_hamilton(&g).unwrap();
            assert_eq!(
                found.is_some(),
                matches!(exact, ExactOutcome::Found(_)),
                "{g:?}"
            );
        }
    }
}
