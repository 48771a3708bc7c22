//! Las Vegas search for Hamilton (a,b)-cycles.
//!
//! Each attempt samples a uniform (a,b)-partition `(A_1..A_t, B_1..B_t)`,
//! builds the auxiliary bipartite graph with `A_i ~ B_j` iff `A_i ∪ B_j` is an
//! edge, and looks for a Hamilton cycle in it. A cycle
//! `A_{i1} B_{j1} A_{i2} ... B_{jt}` is a Hamilton (a,b)-cycle of the host.
//! Under the minimum-degree hypotheses the auxiliary graph satisfies the
//! Moon–Moser condition with probability at least `1 - 4/t`, and then the
//! bipartite solver cannot fail. Returned certificates are always verified,
//! so only the number of attempts is random.
//!
//! The retry policy and the behaviour below the degree thresholds (solve even
//! when the condition fails, give up after `max_attempts`) are extensions of
//! the existence argument, not part of it.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::bihamilton::{find_hamilton, ore_check, BipartiteGraph, CycleCert};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, ProductHypergraph, VertexSet};
use crate::sampling::{
    sample_ab_partition_with, sample_product_matchings_with, ABPartition, SeedSpec,
};

/// Cyclic block sequence `A_0, B_0, A_1, B_1, ..., A_{t-1}, B_{t-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ABCycleCert {
    pub a: usize,
    pub b: usize,
    pub a_blocks: Vec<VertexSet>,
    pub b_blocks: Vec<VertexSet>,
}

impl ABCycleCert {
    pub fn t(&self) -> usize {
        self.a_blocks.len()
    }

    /// Blocks in cyclic order, `A_0, B_0, A_1, ...`.
    pub fn blocks(&self) -> Vec<&VertexSet> {
        self.a_blocks
            .iter()
            .zip(&self.b_blocks)
            .flat_map(|(x, y)| [x, y])
            .collect()
    }

    /// `A_0∪B_0, B_0∪A_1, A_1∪B_1, ..., B_{t-1}∪A_0`.
    pub fn witness_edges(&self) -> Vec<VertexSet> {
        let t = self.t();
        let mut out = Vec::with_capacity(2 * t);
        for i in 0..t {
            out.push(self.a_blocks[i].union(&self.b_blocks[i]));
            if let Some(next) = self.a_blocks.get((i + 1) % t.max(1)) {
                out.push(self.b_blocks[i].union(next));
            }
        }
        out
    }

    /// Canonical representative under rotation and reflection (and, when
    /// `a = b`, the A/B role swap): the lexicographically smallest block
    /// sequence. Two certificates describe the same cycle iff their canonical
    /// forms are equal.
    pub fn canonical(&self) -> ABCycleCert {
        let seq: Vec<&VertexSet> = self.blocks();
        let len = seq.len();
        if len == 0 {
            return self.clone();
        }
        let step = if self.a == self.b { 1 } else { 2 };
        let mut best: Option<Vec<&VertexSet>> = None;
        for shift in (0..len).step_by(step) {
            let fwd: Vec<&VertexSet> = (0..len).map(|i| seq[(shift + i) % len]).collect();
            // same front block, opposite direction: A_s, B_{s-1}, A_{s-1}, ...
            let rev: Vec<&VertexSet> = (0..len).map(|i| seq[(shift + len - i) % len]).collect();
            for cand in [fwd, rev] {
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        let best = best.unwrap();
        ABCycleCert {
            a: self.a,
            b: self.b,
            a_blocks: best.iter().step_by(2).map(|s| (*s).clone()).collect(),
            b_blocks: best
                .iter()
                .skip(1)
                .step_by(2)
                .map(|s| (*s).clone())
                .collect(),
        }
    }
}

impl fmt::Display for ABCycleCert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks().iter().map(|b| b.to_string()).collect();
        write!(f, "({})", parts.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    TooFewBlocks(usize),
    BlockCountMismatch { a_blocks: usize, b_blocks: usize },
    BlockSize { block: VertexSet, expected: usize },
    VertexOutOfRange(u32),
    RepeatedVertex(u32),
    Uncovered(u32),
    MissingEdge(VertexSet),
    SplitMismatch { a: usize, b: usize, k: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewBlocks(t) => write!(f, "too few blocks: t={t}"),
            Violation::BlockCountMismatch { a_blocks, b_blocks } => {
                write!(f, "block count: {a_blocks} A-blocks vs {b_blocks} B-blocks")
            }
            Violation::BlockSize { block, expected } => write!(
                f,
                "block size: {block} has {} vertices, expected {expected}",
                block.len()
            ),
            Violation::VertexOutOfRange(v) => write!(f, "vertex out of range: {v}"),
            Violation::RepeatedVertex(v) => write!(f, "vertex repeated: {v}"),
            Violation::Uncovered(v) => write!(f, "vertex not covered: {v}"),
            Violation::MissingEdge(e) => write!(f, "missing edge: {e}"),
            Violation::SplitMismatch { a, b, k } => {
                write!(f, "split mismatch: a={a} b={b} but k={k}")
            }
        }
    }
}

/// Checks block sizes, disjointness, cover and membership of every witness
/// edge. Reports every violation found.
pub fn verify_ab_cycle(
    h: &Hypergraph,
    cert: &ABCycleCert,
) -> std::result::Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    let t = cert.t();
    if cert.a + cert.b != h.k() {
        out.push(Violation::SplitMismatch {
            a: cert.a,
            b: cert.b,
            k: h.k(),
        });
    }
    if cert.b_blocks.len() != t {
        out.push(Violation::BlockCountMismatch {
            a_blocks: t,
            b_blocks: cert.b_blocks.len(),
        });
    }
    if t < 2 {
        out.push(Violation::TooFewBlocks(t));
    }
    let n = h.n();
    let mut seen = vec![false; n as usize + 1];
    let sized = cert
        .a_blocks
        .iter()
        .map(|b| (b, cert.a))
        .chain(cert.b_blocks.iter().map(|b| (b, cert.b)));
    for (block, expected) in sized {
        if block.len() != expected {
            out.push(Violation::BlockSize {
                block: block.clone(),
                expected,
            });
        }
        for v in block.iter() {
            if v == 0 || v > n {
                out.push(Violation::VertexOutOfRange(v));
            } else if std::mem::replace(&mut seen[v as usize], true) {
                out.push(Violation::RepeatedVertex(v));
            }
        }
    }
    out.extend(
        (1..=n)
            .filter(|&v| !seen[v as usize])
            .map(Violation::Uncovered),
    );
    if cert.b_blocks.len() == t {
        for e in cert.witness_edges() {
            if !h.contains(&e) {
                out.push(Violation::MissingEdge(e));
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// Splits a Hamilton (a,b)-cycle into the perfect matchings
/// `M1 = {A_i ∪ B_i}` and `M2 = {B_i ∪ A_{i+1}}`.
pub fn decompose_to_matchings(cert: &ABCycleCert) -> Result<(Vec<VertexSet>, Vec<VertexSet>)> {
    let t = cert.t();
    if t < 2 {
        return Err(Error::TooFewBlocks(t));
    }
    if cert.b_blocks.len() != t {
        return Err(Error::InvalidCertificate(format!(
            "{t} A-blocks but {} B-blocks",
            cert.b_blocks.len()
        )));
    }
    let n = (cert.a + cert.b) * t;
    let mut seen = vec![false; n + 1];
    for block in cert.blocks() {
        for v in block.iter() {
            if v as usize > n || v == 0 || std::mem::replace(&mut seen[v as usize], true) {
                return Err(Error::InvalidCertificate(format!(
                    "blocks do not partition 1..={n}"
                )));
            }
        }
    }
    let witnesses = cert.witness_edges();
    let m1 = witnesses.iter().step_by(2).cloned().collect();
    let m2 = witnesses.iter().skip(1).step_by(2).cloned().collect();
    Ok((m1, m2))
}

/// Auxiliary graph: `A_i ~ B_j` iff `A_i ∪ B_j ∈ H`. Row degree of `i` is the
/// number of B-blocks in the link of `A_i`.
pub fn build_auxiliary(h: &Hypergraph, p: &ABPartition) -> Result<BipartiteGraph> {
    if p.a + p.b != h.k() {
        return Err(Error::SplitMismatch {
            sum: p.a + p.b,
            k: h.k(),
        });
    }
    p.validate(h.n())?;
    Ok(BipartiteGraph::from_fn(p.t(), |i, j| {
        h.contains(&p.a_blocks[i].union(&p.b_blocks[j]))
    }))
}

/// Turns a bipartite Hamilton cycle over the auxiliary graph into blocks.
pub fn cert_from_cycle(p: &ABPartition, cycle: &CycleCert) -> ABCycleCert {
    ABCycleCert {
        a: p.a,
        b: p.b,
        a_blocks: cycle
            .steps
            .iter()
            .map(|&(i, _)| p.a_blocks[i].clone())
            .collect(),
        b_blocks: cycle
            .steps
            .iter()
            .map(|&(_, j)| p.b_blocks[j].clone())
            .collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FindConfig {
    /// `None` means `max(10, 4t)`.
    pub max_attempts: Option<usize>,
    pub seed: u64,
}

impl FindConfig {
    pub fn new(seed: u64) -> Self {
        FindConfig {
            max_attempts: None,
            seed,
        }
    }

    pub fn with_attempts(seed: u64, max_attempts: usize) -> Self {
        FindConfig {
            max_attempts: Some(max_attempts),
            seed,
        }
    }

    pub fn attempts_for(&self, t: usize) -> usize {
        self.max_attempts.unwrap_or(10.max(4 * t))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PhaseTimes {
    pub sample: Duration,
    pub build: Duration,
    pub solve: Duration,
}

/// Outcome accounting for one find call. Attempt `i` (0-based) used the
/// stream `SeedSpec { master_seed, trial_index: i }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunReport {
    pub master_seed: u64,
    pub attempts: usize,
    /// Failed attempts whose auxiliary graph violated the Moon–Moser condition.
    pub ore_failures: usize,
    /// Failed attempts whose auxiliary graph satisfied it.
    pub solver_failures: usize,
    pub succeeded: bool,
    /// Attempt index that produced the certificate.
    pub success_attempt: Option<usize>,
    /// Attempts (successful or not) whose auxiliary graph satisfied the condition.
    pub ore_holds: usize,
    pub elapsed: PhaseTimes,
}

impl RunReport {
    pub const CSV_HEADER: [&'static str; 8] = [
        "master_seed",
        "success_attempt",
        "attempts",
        "ore_failures",
        "solver_failures",
        "ore_holds",
        "succeeded",
        "elapsed_ms",
    ];

    pub fn csv_row(&self) -> Vec<String> {
        let total = self.elapsed.sample + self.elapsed.build + self.elapsed.solve;
        vec![
            self.master_seed.to_string(),
            self.success_attempt
                .map(|a| a.to_string())
                .unwrap_or_default(),
            self.attempts.to_string(),
            self.ore_failures.to_string(),
            self.solver_failures.to_string(),
            self.ore_holds.to_string(),
            self.succeeded.to_string(),
            format!("{:.3}", total.as_secs_f64() * 1e3),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum FindError {
    #[error("invalid input: {0}")]
    InvalidInput(#[from] Error),
    #[error("no Hamilton cycle found in {} attempts", .0.attempts)]
    Exhausted(RunReport),
}

fn run_attempts<S>(
    h: &Hypergraph,
    t: usize,
    config: &FindConfig,
    mut sample: S,
) -> std::result::Result<(ABCycleCert, RunReport), FindError>
where
    S: FnMut(SeedSpec) -> Result<ABPartition>,
{
    let mut report = RunReport {
        master_seed: config.seed,
        attempts: 0,
        ore_failures: 0,
        solver_failures: 0,
        succeeded: false,
        success_attempt: None,
        ore_holds: 0,
        elapsed: PhaseTimes::default(),
    };
    for attempt in 0..config.attempts_for(t) {
        report.attempts += 1;
        let clock = Instant::now();
        let partition = sample(SeedSpec::new(config.seed, attempt as u64))?;
        report.elapsed.sample += clock.elapsed();

        let clock = Instant::now();
        let aux = build_auxiliary(h, &partition)?;
        report.elapsed.build += clock.elapsed();

        let clock = Instant::now();
        let ore = ore_check(&aux)?.holds();
        let cycle = find_hamilton(&aux)?;
        report.elapsed.solve += clock.elapsed();
        if ore {
            report.ore_holds += 1;
        }
        match cycle {
            Some(cycle) => {
                let cert = cert_from_cycle(&partition, &cycle).canonical();
                debug_assert!(verify_ab_cycle(h, &cert).is_ok());
                report.succeeded = true;
                report.success_attempt = Some(attempt);
                return Ok((cert, report));
            }
            None if ore => report.solver_failures += 1,
            None => report.ore_failures += 1,
        }
    }
    Err(FindError::Exhausted(report))
}

fn block_pairs(n: usize, a: usize, b: usize) -> Result<usize> {
    if a == 0 || b == 0 {
        return Err(Error::ZeroBlock { a, b });
    }
    if !n.is_multiple_of(a + b) {
        return Err(Error::NotDivisible { n, k: a + b });
    }
    let t = n / (a + b);
    if t < 2 {
        return Err(Error::TooFewBlocks(t));
    }
    Ok(t)
}

/// Searches for a Hamilton (a,b)-cycle of `h`; the certificate is canonical.
pub fn find_ab_cycle(
    h: &Hypergraph,
    a: usize,
    b: usize,
    config: &FindConfig,
) -> std::result::Result<(ABCycleCert, RunReport), FindError> {
    if a + b != h.k() {
        return Err(Error::SplitMismatch {
            sum: a + b,
            k: h.k(),
        }
        .into());
    }
    let n = h.n() as usize;
    let t = block_pairs(n, a, b)?;
    run_attempts(h, t, config, |seed| {
        sample_ab_partition_with(n, a, b, &mut seed.rng())
    })
}

/// Same search on a product family, sampling independent perfect matchings
/// of `V1` (blocks of size a) and `V2` (blocks of size b).
pub fn find_in_product(
    ph: &ProductHypergraph,
    config: &FindConfig,
) -> std::result::Result<(ABCycleCert, RunReport), FindError> {
    let t = ph.block_count()?;
    if t < 2 {
        return Err(Error::TooFewBlocks(t).into());
    }
    let (n1, n2, a, b) = (ph.n1() as usize, ph.n2() as usize, ph.a(), ph.b());
    run_attempts(ph.as_hypergraph(), t, config, |seed| {
        let (x, y) = sample_product_matchings_with(n1, n2, a, b, &mut seed.rng())?;
        Ok(ABPartition {
            a,
            b,
            a_blocks: x.blocks,
            b_blocks: y.blocks,
        })
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct OreStats {
    pub trials: usize,
    pub t: usize,
    pub alpha: f64,
    /// Trials with every row degree `> alpha·t` and every column degree `> (1-alpha)·t`.
    pub degree_condition_hits: usize,
    pub ore_hits: usize,
}

impl OreStats {
    pub fn degree_condition_freq(&self) -> f64 {
        self.degree_condition_hits as f64 / self.trials as f64
    }

    pub fn ore_freq(&self) -> f64 {
        self.ore_hits as f64 / self.trials as f64
    }
}

/// Per-trial outcome of [`ore_success_probability`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OreTrial {
    pub degree_condition: bool,
    pub ore: bool,
}

pub fn ore_trials(
    h: &Hypergraph,
    a: usize,
    b: usize,
    alpha: f64,
    trials: usize,
    seed: u64,
) -> Result<Vec<OreTrial>> {
    if a + b != h.k() {
        return Err(Error::SplitMismatch {
            sum: a + b,
            k: h.k(),
        });
    }
    let n = h.n() as usize;
    let t = block_pairs(n, a, b)?;
    (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let p = sample_ab_partition_with(n, a, b, &mut SeedSpec::new(seed, i).rng())?;
            let g = build_auxiliary(h, &p)?;
            let rows_ok = g.row_degrees().iter().all(|&d| d as f64 > alpha * t as f64);
            let cols_ok = g
                .col_degrees()
                .iter()
                .all(|&d| d as f64 > (1.0 - alpha) * t as f64);
            Ok(OreTrial {
                degree_condition: rows_ok && cols_ok,
                ore: ore_check(&g)?.holds(),
            })
        })
        .collect()
}

/// Frequency over sampled partitions of (i) the split degree condition and
/// (ii) the Moon–Moser condition on the auxiliary graph.
pub fn ore_success_probability(
    h: &Hypergraph,
    a: usize,
    b: usize,
    alpha: f64,
    trials: usize,
    seed: u64,
) -> Result<OreStats> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let outcomes = ore_trials(h, a, b, alpha, trials, seed)?;
    Ok(OreStats {
        trials,
        t: h.n() as usize / (a + b),
        alpha,
        degree_condition_hits: outcomes.iter().filter(|o| o.degree_condition).count(),
        ore_hits: outcomes.iter().filter(|o| o.ore).count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::complete_hypergraph;

    fn vs(ids: &[u32]) -> VertexSet {
        VertexSet::new(ids.iter().copied()).unwrap()
    }

    fn four_edge() -> Hypergraph {
        Hypergraph::from_lists(6, 3, [[1, 2, 3], [2, 3, 4], [4, 5, 6], [5, 6, 1]]).unwrap()
    }

    fn four_edge_cert() -> ABCycleCert {
        ABCycleCert {
            a: 1,
            b: 2,
            a_blocks: vec![vs(&[1]), vs(&[4])],
            b_blocks: vec![vs(&[2, 3]), vs(&[5, 6])],
        }
    }

    #[test]
    fn auxiliary_examples() {
        let h = four_edge();
        let p = ABPartition {
            a: 1,
            b: 2,
            a_blocks: vec![vs(&[1]), vs(&[4])],
            b_blocks: vec![vs(&[2, 3]), vs(&[5, 6])],
        };
        assert_eq!(
            build_auxiliary(&h, &p).unwrap(),
            BipartiteGraph::complete(2)
        );
        let empty = Hypergraph::empty(6, 3).unwrap();
        assert_eq!(
            build_auxiliary(&empty, &p).unwrap(),
            BipartiteGraph::empty(2)
        );
        let k = complete_hypergraph(6, 3).unwrap();
        assert_eq!(
            build_auxiliary(&k, &p).unwrap(),
            BipartiteGraph::complete(2)
        );
        let wrong = Hypergraph::empty(8, 3).unwrap();
        assert!(build_auxiliary(&wrong, &p).is_err());
    }

    #[test]
    fn auxiliary_row_degree_is_link_count() {
        let h = crate::oracle::random_hypergraph(12, 3, 0.4, 3).unwrap();
        let p = crate::sampling::sample_ab_partition(12, 1, 2, SeedSpec::new(1, 2)).unwrap();
        let g = build_auxiliary(&h, &p).unwrap();
        for (i, a_blk) in p.a_blocks.iter().enumerate() {
            let link = h.link(a_blk).unwrap();
            let eta = p.b_blocks.iter().filter(|b| link.contains(b)).count();
            assert_eq!(g.row_degree(i), eta);
        }
    }

    #[test]
    fn complete_succeeds_first_attempt() {
        let h = complete_hypergraph(15, 3).unwrap();
        let (cert, report) = find_ab_cycle(&h, 1, 2, &FindConfig::new(11)).unwrap();
        assert_eq!(report.attempts, 1);
        assert!(verify_ab_cycle(&h, &cert).is_ok());
    }

    #[test]
    fn empty_exhausts_with_ore_failures() {
        let h = Hypergraph::empty(6, 3).unwrap();
        match find_ab_cycle(&h, 1, 2, &FindConfig::with_attempts(1, 25)) {
            Err(FindError::Exhausted(r)) => {
                assert_eq!(r.attempts, 25);
                assert_eq!(r.ore_failures, 25);
                assert!(!r.succeeded);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn default_attempts() {
        assert_eq!(FindConfig::new(0).attempts_for(2), 10);
        assert_eq!(FindConfig::new(0).attempts_for(7), 28);
    }

    #[test]
    fn four_edge_unique_cycle() {
        let h = four_edge();
        let (cert, report) = find_ab_cycle(&h, 1, 2, &FindConfig::with_attempts(5, 500)).unwrap();
        assert!(report.succeeded);
        assert_eq!(cert, four_edge_cert().canonical());
        assert_eq!(
            report.attempts,
            report.ore_failures + report.solver_failures + 1
        );
    }

    #[test]
    fn invalid_inputs() {
        let h = complete_hypergraph(3, 3).unwrap();
        assert!(matches!(
            find_ab_cycle(&h, 1, 2, &FindConfig::new(0)),
            Err(FindError::InvalidInput(Error::TooFewBlocks(1)))
        ));
        let h = complete_hypergraph(6, 3).unwrap();
        assert!(matches!(
            find_ab_cycle(&h, 1, 1, &FindConfig::new(0)),
            Err(FindError::InvalidInput(Error::SplitMismatch { .. }))
        ));
    }

    #[test]
    fn verify_reports_violations() {
        let h = four_edge();
        assert!(verify_ab_cycle(&h, &four_edge_cert()).is_ok());

        let mut bad = four_edge_cert();
        bad.a_blocks[0] = vs(&[1, 7]);
        let v = verify_ab_cycle(&h, &bad).unwrap_err();
        assert!(v.iter().any(|x| x.to_string().starts_with("block size")));

        let missing = vs(&[1, 5, 6]);
        let v = verify_ab_cycle(&h.without_edge(&missing), &four_edge_cert()).unwrap_err();
        assert_eq!(v, vec![Violation::MissingEdge(missing)]);
    }

    #[test]
    fn decomposition_of_four_edge_cert() {
        let (m1, m2) = decompose_to_matchings(&four_edge_cert()).unwrap();
        assert_eq!(m1, vec![vs(&[1, 2, 3]), vs(&[4, 5, 6])]);
        assert_eq!(m2, vec![vs(&[2, 3, 4]), vs(&[1, 5, 6])]);
        let mut bad = four_edge_cert();
        bad.b_blocks[1] = vs(&[2, 6]);
        assert!(decompose_to_matchings(&bad).is_err());
    }

    #[test]
    fn canonical_collapses_rotations_and_reflections() {
        let c = four_edge_cert();
        let rotated = ABCycleCert {
            a: 1,
            b: 2,
            a_blocks: vec![vs(&[4]), vs(&[1])],
            b_blocks: vec![vs(&[5, 6]), vs(&[2, 3])],
        };
        let reflected = ABCycleCert {
            a: 1,
            b: 2,
            a_blocks: vec![vs(&[1]), vs(&[4])],
            b_blocks: vec![vs(&[5, 6]), vs(&[2, 3])],
        };
        assert_eq!(c.canonical(), rotated.canonical());
        assert_eq!(c.canonical(), reflected.canonical());
        let canon = c.canonical();
        assert!(verify_ab_cycle(&four_edge(), &canon).is_ok());
    }

    #[test]
    fn canonical_role_swap_when_a_equals_b() {
        let c = ABCycleCert {
            a: 1,
            b: 1,
            a_blocks: vec![vs(&[2]), vs(&[4])],
            b_blocks: vec![vs(&[3]), vs(&[1])],
        };
        let canon = c.canonical();
        assert_eq!(canon.a_blocks[0], vs(&[1]));
        let mut w1 = c.witness_edges();
        let mut w2 = canon.witness_edges();
        w1.sort();
        w2.sort();
        assert_eq!(w1, w2);
    }

    #[test]
    fn product_complete_first_attempt() {
        let ph = ProductHypergraph::complete(3, 6, 1, 2).unwrap();
        let (cert, report) = find_in_product(&ph, &FindConfig::new(3)).unwrap();
        assert_eq!(report.attempts, 1);
        assert!(verify_ab_cycle(ph.as_hypergraph(), &cert).is_ok());
        for blk in &cert.a_blocks {
            assert!(blk.iter().all(|v| v <= 3));
        }
        let empty = ProductHypergraph::new(3, 6, 1, 2, []).unwrap();
        assert!(matches!(
            find_in_product(&empty, &FindConfig::new(3)),
            Err(FindError::Exhausted(_))
        ));
    }

    #[test]
    fn ore_probability_extremes() {
        let k = complete_hypergraph(12, 3).unwrap();
        let s = ore_success_probability(&k, 1, 2, 0.5, 50, 1).unwrap();
        assert_eq!((s.ore_freq(), s.degree_condition_freq()), (1.0, 1.0));
        let e = Hypergraph::empty(12, 3).unwrap();
        let s = ore_success_probability(&e, 1, 2, 0.5, 50, 1).unwrap();
        assert_eq!((s.ore_freq(), s.degree_condition_freq()), (0.0, 0.0));
    }
}
