//! Exhaustive ground truth for Hamilton (a,b)-cycles at small `n`, and
//! instance generators.
//!
//! The oracle places blocks one at a time along the cycle. The first block
//! holds vertex 1 (an A-block, or a B-block when `a != b`); each next block
//! is `e \ S` for an edge `e ⊇ S` of the previous block `S` that avoids all
//! placed vertices. Reflections are removed by requiring the second block to
//! have a smaller minimum than the last one. It shares no code with the
//! sampling finder.

use std::collections::HashSet;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::abfinder::ABCycleCert;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, ProductHypergraph, VertexSet};
use crate::sampling::{sample_ab_partition_with, sample_product_matchings_with, SeedSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub exists: bool,
    pub cert: Option<ABCycleCert>,
    pub nodes_explored: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("oracle exceeded its budget of {budget} nodes")]
pub struct BudgetExceeded {
    pub budget: u64,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error(transparent)]
    Invalid(#[from] Error),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

fn mask_of(s: &VertexSet) -> u64 {
    s.iter().fold(0, |m, v| m | 1 << (v - 1))
}

fn set_of(mask: u64) -> VertexSet {
    let ids = (0..64)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| i + 1)
        .collect();
    VertexSet::from_sorted_unchecked(ids)
}

struct Search {
    edges: Vec<u64>,
    lookup: HashSet<u64>,
    full: u64,
    len: usize,
    budget: u64,
    nodes: u64,
    enumerate: bool,
    seq: Vec<u64>,
    found: Vec<Vec<u64>>,
}

impl Search {
    fn run(&mut self) -> std::result::Result<(), BudgetExceeded> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(BudgetExceeded {
                budget: self.budget,
            });
        }
        let used = self.seq.iter().fold(0, |m, s| m | s);
        let last = *self.seq.last().unwrap();
        if self.seq.len() == self.len {
            let first = self.seq[0];
            let closes = self.lookup.contains(&(last | first));
            // reflection: second block's minimum below the last block's
            let oriented = self.seq[1].trailing_zeros() < last.trailing_zeros();
            if used == self.full && closes && oriented {
                self.found.push(self.seq.clone());
            }
            return Ok(());
        }
        let nexts: Vec<u64> = self
            .edges
            .iter()
            .filter(|&&e| e & last == last && (e & !last) & used == 0)
            .map(|&e| e & !last)
            .collect();
        for next in nexts {
            self.seq.push(next);
            let r = self.run();
            self.seq.pop();
            r?;
            if !self.enumerate && !self.found.is_empty() {
                break;
            }
        }
        Ok(())
    }
}

fn to_cert(a: usize, b: usize, seq: &[u64]) -> ABCycleCert {
    let blocks: Vec<VertexSet> = seq.iter().map(|&m| set_of(m)).collect();
    // sequences may start with a B-block; rotate one step in that case
    let start = if blocks[0].len() == a { 0 } else { 1 };
    let len = blocks.len();
    let ordered: Vec<VertexSet> = (0..len)
        .map(|i| blocks[(start + i) % len].clone())
        .collect();
    ABCycleCert {
        a,
        b,
        a_blocks: ordered.iter().step_by(2).cloned().collect(),
        b_blocks: ordered.iter().skip(1).step_by(2).cloned().collect(),
    }
}

fn search(
    h: &Hypergraph,
    a: usize,
    b: usize,
    node_budget: u64,
    enumerate: bool,
) -> std::result::Result<(Vec<ABCycleCert>, u64), OracleError> {
    if a == 0 || b == 0 {
        return Err(Error::ZeroBlock { a, b }.into());
    }
    if a + b != h.k() {
        return Err(Error::SplitMismatch {
            sum: a + b,
            k: h.k(),
        }
        .into());
    }
    let n = h.n() as usize;
    if n > 64 {
        return Err(Error::GroundSetTooLarge { n, limit: 64 }.into());
    }
    if !n.is_multiple_of(a + b) {
        return Err(Error::NotDivisible { n, k: a + b }.into());
    }
    let t = n / (a + b);
    if t < 2 {
        return Err(Error::TooFewBlocks(t).into());
    }
    let edges: Vec<u64> = h.edges().iter().map(mask_of).collect();
    let mut s = Search {
        lookup: edges.iter().copied().collect(),
        edges,
        full: if n == 64 { u64::MAX } else { (1 << n) - 1 },
        len: 2 * t,
        budget: node_budget,
        nodes: 0,
        enumerate,
        seq: Vec::with_capacity(2 * t),
        found: Vec::new(),
    };
    // first block holds vertex 1; a B-block start only matters when a != b
    let first_sizes: Vec<usize> = if a == b { vec![a] } else { vec![a, b] };
    'outer: for size in first_sizes {
        for rest in (1..n as u32).combinations(size - 1) {
            let first = rest.iter().fold(1u64, |m, v| m | 1 << v);
            s.seq.push(first);
            let r = s.run();
            s.seq.pop();
            r?;
            if !enumerate && !s.found.is_empty() {
                break 'outer;
            }
        }
    }
    let certs = s.found.iter().map(|seq| to_cert(a, b, seq)).collect();
    Ok((certs, s.nodes))
}

/// Exhaustive search: `exists == false` is a proof that no Hamilton
/// (a,b)-cycle exists. Intended for `n <= 12`.
pub fn exhaustive_ab_cycle(
    h: &Hypergraph,
    a: usize,
    b: usize,
    node_budget: u64,
) -> std::result::Result<OracleResult, OracleError> {
    let (certs, nodes) = search(h, a, b, node_budget, false)?;
    let cert = certs.into_iter().next().map(|c| c.canonical());
    Ok(OracleResult {
        exists: cert.is_some(),
        cert,
        nodes_explored: nodes,
    })
}

/// Every Hamilton (a,b)-cycle of `h`, in canonical form, deduplicated.
pub fn enumerate_ab_cycles(
    h: &Hypergraph,
    a: usize,
    b: usize,
    node_budget: u64,
) -> std::result::Result<Vec<ABCycleCert>, OracleError> {
    let (certs, _) = search(h, a, b, node_budget, true)?;
    let mut seen = HashSet::new();
    Ok(certs
        .into_iter()
        .map(|c| c.canonical())
        .filter(|c| seen.insert(c.clone()))
        .collect())
}

/// Each k-subset of `[n]` kept independently with probability `p`, in
/// lexicographic order of subsets.
pub fn random_hypergraph(n: u32, k: usize, p: f64, seed: u64) -> Result<Hypergraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ProbabilityOutOfRange(p));
    }
    let mut rng = SeedSpec::new(seed, 0).rng();
    let edges = (1..=n)
        .combinations(k)
        .filter(|_| rng.gen_bool(p))
        .map(VertexSet::from_sorted_unchecked)
        .collect::<Vec<_>>();
    Hypergraph::new(n, k, edges)
}

pub fn complete_hypergraph(n: u32, k: usize) -> Result<Hypergraph> {
    if k > n as usize {
        return Err(Error::UniformityTooLarge { k, n });
    }
    Hypergraph::new(
        n,
        k,
        (1..=n)
            .combinations(k)
            .map(VertexSet::from_sorted_unchecked),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn matches(self, x: usize) -> bool {
        x.is_multiple_of(2) == (self == Parity::Even)
    }
}

/// All k-sets `e` with `|e ∩ d|` of the given parity.
pub fn parity_family(n: u32, k: usize, d: &VertexSet, parity: Parity) -> Result<Hypergraph> {
    if let Some(v) = d.max_vertex().filter(|&v| v > n) {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    Hypergraph::new(
        n,
        k,
        (1..=n)
            .combinations(k)
            .map(VertexSet::from_sorted_unchecked)
            .filter(|e| parity.matches(e.intersection_len(d))),
    )
}

/// A uniformly random Hamilton (a,b)-cycle on `[n]` and the hypergraph made
/// of exactly its `2t` witness edges. The certificate is canonical.
pub fn planted_cycle(n: usize, a: usize, b: usize, seed: u64) -> Result<(Hypergraph, ABCycleCert)> {
    let p = sample_ab_partition_with(n, a, b, &mut SeedSpec::new(seed, 0).rng())?;
    if p.t() < 2 {
        return Err(Error::TooFewBlocks(p.t()));
    }
    let cert = ABCycleCert {
        a,
        b,
        a_blocks: p.a_blocks,
        b_blocks: p.b_blocks,
    }
    .canonical();
    let h = Hypergraph::new(n as u32, a + b, cert.witness_edges())?;
    Ok((h, cert))
}

/// Planted cycle in the product family: A-blocks in `V1 = {1..a·t}`,
/// B-blocks in `V2 = {a·t+1 .. (a+b)·t}`.
pub fn planted_product_cycle(
    t: usize,
    a: usize,
    b: usize,
    seed: u64,
) -> Result<(ProductHypergraph, ABCycleCert)> {
    if t < 2 {
        return Err(Error::TooFewBlocks(t));
    }
    let mut rng = SeedSpec::new(seed, 0).rng();
    let (x, mut y) = sample_product_matchings_with(a * t, b * t, a, b, &mut rng)?;
    // matchings come sorted; shuffle Y to randomise the cyclic pairing
    y.blocks.shuffle(&mut rng);
    let cert = ABCycleCert {
        a,
        b,
        a_blocks: x.blocks,
        b_blocks: y.blocks,
    }
    .canonical();
    let ph = ProductHypergraph::new((a * t) as u32, (b * t) as u32, a, b, cert.witness_edges())?;
    Ok((ph, cert))
}
