//! Uniform hypergraphs on `[n] = {1, ..., n}`, their degrees and links, and the
//! minimum-degree thresholds for Hamilton (a,b)-cycles.
//!
//! Edges are stored as sorted vertex lists. Every vertex additionally owns a
//! packed bitset over edge positions, so `degree(S)` is the popcount of the
//! intersection of `|S|` bitsets.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Sorted set of distinct 1-based vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(Vec<u32>);

impl VertexSet {
    /// Builds a set from arbitrary ids. Rejects id 0 and repeated ids.
    pub fn new(ids: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut members: Vec<u32> = ids.into_iter().collect();
        members.sort_unstable();
        for w in members.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateVertex(w[0]));
            }
        }
        if members.first() == Some(&0) {
            return Err(Error::VertexOutOfRange { vertex: 0, n: 0 });
        }
        Ok(VertexSet(members))
    }

    pub(crate) fn from_sorted_unchecked(members: Vec<u32>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet(members)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    /// `{lo, lo+1, ..., hi}`; empty when `hi < lo`.
    pub fn range(lo: u32, hi: u32) -> Self {
        VertexSet((lo..=hi).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn min_vertex(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn max_vertex(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        VertexSet(out)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(
            self.0
                .iter()
                .copied()
                .filter(|v| !other.contains(*v))
                .collect(),
        )
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.0.iter().filter(|v| other.contains(**v)).count()
    }

    fn check_range(&self, n: u32) -> Result<()> {
        match self.max_vertex() {
            Some(v) if v > n => Err(Error::VertexOutOfRange { vertex: v, n }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

impl From<VertexSet> for Vec<u32> {
    fn from(s: VertexSet) -> Self {
        s.0
    }
}

/// A k-uniform hypergraph on `[n]`. Immutable once built.
#[derive(Clone, Debug)]
pub struct Hypergraph {
    n: u32,
    k: usize,
    edges: Vec<VertexSet>,
    lookup: HashSet<VertexSet>,
    // incidence[v - 1] is a bitset over edge positions
    incidence: Vec<Vec<u64>>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k && self.lookup == other.lookup
    }
}

impl Eq for Hypergraph {}

impl Hypergraph {
    pub fn new(n: u32, k: usize, edges: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        if k > n as usize {
            return Err(Error::UniformityTooLarge { k, n });
        }
        let mut list = Vec::new();
        let mut lookup = HashSet::new();
        for e in edges {
            if e.len() != k {
                return Err(Error::WrongEdgeSize {
                    got: e.len(),
                    edge: e,
                    expected: k,
                });
            }
            e.check_range(n)?;
            if !lookup.insert(e.clone()) {
                return Err(Error::DuplicateEdge(e));
            }
            list.push(e);
        }
        let words = list.len().div_ceil(64);
        let mut incidence = vec![vec![0u64; words]; n as usize];
        for (pos, e) in list.iter().enumerate() {
            for v in e.iter() {
                incidence[v as usize - 1][pos / 64] |= 1 << (pos % 64);
            }
        }
        Ok(Hypergraph {
            n,
            k,
            edges: list,
            lookup,
            incidence,
        })
    }

    /// Convenience constructor from raw id lists.
    pub fn from_lists<I, E>(n: u32, k: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: IntoIterator<Item = u32>,
    {
        let sets = edges
            .into_iter()
            .map(VertexSet::new)
            .collect::<Result<Vec<_>>>()?;
        Hypergraph::new(n, k, sets)
    }

    pub fn empty(n: u32, k: usize) -> Result<Self> {
        Hypergraph::new(n, k, std::iter::empty())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, edge: &VertexSet) -> bool {
        self.lookup.contains(edge)
    }

    /// Same hypergraph without `edge` (no-op when absent).
    pub fn without_edge(&self, edge: &VertexSet) -> Hypergraph {
        let kept = self.edges.iter().filter(|e| *e != edge).cloned();
        Hypergraph::new(self.n, self.k, kept).expect("subfamily of a valid hypergraph")
    }

    /// Same hypergraph with `edge` added (no-op when already present).
    pub fn with_edge(&self, edge: VertexSet) -> Result<Hypergraph> {
        if self.contains(&edge) {
            return Ok(self.clone());
        }
        let mut all = self.edges.clone();
        all.push(edge);
        Hypergraph::new(self.n, self.k, all)
    }

    fn check_query(&self, s: &VertexSet) -> Result<()> {
        s.check_range(self.n)?;
        if s.len() > self.k {
            return Err(Error::SetTooLarge {
                size: s.len(),
                k: self.k,
            });
        }
        Ok(())
    }

    fn containing(&self, s: &VertexSet) -> Vec<u64> {
        let words = self.edges.len().div_ceil(64);
        let mut acc = vec![u64::MAX; words];
        if let Some(tail) = self.edges.len().checked_rem(64).filter(|r| *r != 0) {
            acc[words - 1] = (1u64 << tail) - 1;
        }
        for v in s.iter() {
            for (a, b) in acc.iter_mut().zip(&self.incidence[v as usize - 1]) {
                *a &= *b;
            }
        }
        acc
    }

    /// Number of edges containing `s`. For `|s| = k` this is 1 or 0.
    pub fn degree(&self, s: &VertexSet) -> Result<usize> {
        self.check_query(s)?;
        Ok(self
            .containing(s)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum())
    }

    /// `{ T : T ∪ s ∈ H }`, each `T` disjoint from `s`.
    pub fn link(&self, s: &VertexSet) -> Result<Vec<VertexSet>> {
        self.check_query(s)?;
        let mask = self.containing(s);
        let mut out = Vec::new();
        for (w, word) in mask.iter().enumerate() {
            let mut bits = *word;
            while bits != 0 {
                let pos = w * 64 + bits.trailing_zeros() as usize;
                out.push(self.edges[pos].difference(s));
                bits &= bits - 1;
            }
        }
        Ok(out)
    }

    fn check_order(&self, d: usize) -> Result<()> {
        if d == 0 || d > self.k {
            return Err(Error::DegreeOrder { d, k: self.k });
        }
        Ok(())
    }

    /// Minimum of `degree(S)` over all d-subsets of `[n]`.
    pub fn min_degree(&self, d: usize) -> Result<usize> {
        self.check_order(d)?;
        Ok(self
            .d_sets(d)
            .map(|s| self.degree(&s).expect("d-set within range"))
            .min()
            .unwrap_or(0))
    }

    /// A d-set attaining the minimum d-degree (lexicographically first).
    pub fn min_degree_witness(&self, d: usize) -> Result<(VertexSet, usize)> {
        self.check_order(d)?;
        let mut best: Option<(VertexSet, usize)> = None;
        for s in self.d_sets(d) {
            let deg = self.degree(&s)?;
            if best.as_ref().is_none_or(|(_, b)| deg < *b) {
                best = Some((s, deg));
            }
        }
        Ok(best.expect("k <= n so at least one d-set exists"))
    }

    /// Degree value -> number of d-sets with that degree.
    pub fn degree_histogram(&self, d: usize) -> Result<BTreeMap<usize, u64>> {
        self.check_order(d)?;
        let mut hist = BTreeMap::new();
        for s in self.d_sets(d) {
            *hist.entry(self.degree(&s)?).or_insert(0) += 1;
        }
        Ok(hist)
    }

    fn d_sets(&self, d: usize) -> impl Iterator<Item = VertexSet> {
        (1..=self.n)
            .combinations(d)
            .map(VertexSet::from_sorted_unchecked)
    }
}

/// The direct product family `C(V1, a) ⊔ C(V2, b)` with `V1 = {1..n1}` and
/// `V2 = {n1+1 .. n1+n2}`: every edge takes `a` vertices from `V1` and `b`
/// from `V2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductHypergraph {
    n1: u32,
    n2: u32,
    a: usize,
    b: usize,
    inner: Hypergraph,
}

impl ProductHypergraph {
    pub fn new(
        n1: u32,
        n2: u32,
        a: usize,
        b: usize,
        edges: impl IntoIterator<Item = VertexSet>,
    ) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::ZeroBlock { a, b });
        }
        let inner = Hypergraph::new(n1 + n2, a + b, edges)?;
        for e in inner.edges() {
            let in_v1 = e.iter().filter(|v| *v <= n1).count();
            if in_v1 != a {
                return Err(Error::NotInProduct {
                    edge: e.clone(),
                    in_v1,
                    a,
                });
            }
        }
        Ok(ProductHypergraph {
            n1,
            n2,
            a,
            b,
            inner,
        })
    }

    /// Every valid `F` with `|F ∩ V1| = a`, `|F ∩ V2| = b`.
    pub fn complete(n1: u32, n2: u32, a: usize, b: usize) -> Result<Self> {
        let left: Vec<Vec<u32>> = (1..=n1).combinations(a).collect();
        let right: Vec<Vec<u32>> = (n1 + 1..=n1 + n2).combinations(b).collect();
        let edges = left
            .iter()
            .cartesian_product(&right)
            .map(|(l, r)| VertexSet::from_sorted_unchecked(l.iter().chain(r).copied().collect()));
        ProductHypergraph::new(n1, n2, a, b, edges)
    }

    pub fn n1(&self) -> u32 {
        self.n1
    }

    pub fn n2(&self) -> u32 {
        self.n2
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn v1(&self) -> VertexSet {
        VertexSet::range(1, self.n1)
    }

    pub fn v2(&self) -> VertexSet {
        VertexSet::range(self.n1 + 1, self.n1 + self.n2)
    }

    pub fn as_hypergraph(&self) -> &Hypergraph {
        &self.inner
    }

    /// The common block count `n1/a = n2/b`.
    pub fn block_count(&self) -> Result<usize> {
        let (n1, n2) = (self.n1 as usize, self.n2 as usize);
        if n1 % self.a != 0 {
            return Err(Error::NotDivisible { n: n1, k: self.a });
        }
        if n2 % self.b != 0 {
            return Err(Error::NotDivisible { n: n2, k: self.b });
        }
        if n1 / self.a != n2 / self.b {
            return Err(Error::PartCountMismatch {
                left: n1 / self.a,
                right: n2 / self.b,
            });
        }
        Ok(n1 / self.a)
    }

    /// Minimum degree over a-subsets of `V1`.
    pub fn min_degree_v1(&self) -> usize {
        (1..=self.n1)
            .combinations(self.a)
            .map(|s| {
                self.inner
                    .degree(&VertexSet::from_sorted_unchecked(s))
                    .expect("in range")
            })
            .min()
            .unwrap_or(0)
    }

    /// Minimum degree over b-subsets of `V2`.
    pub fn min_degree_v2(&self) -> usize {
        (self.n1 + 1..=self.n1 + self.n2)
            .combinations(self.b)
            .map(|s| {
                self.inner
                    .degree(&VertexSet::from_sorted_unchecked(s))
                    .expect("in range")
            })
            .min()
            .unwrap_or(0)
    }
}

/// Exact binomial coefficient. Negative arguments or `k > n` are rejected
/// rather than mapped to zero.
pub fn binom(n: i64, k: i64) -> Result<u128> {
    if n < 0 || k < 0 || k > n {
        return Err(Error::BinomialDomain { n, k });
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc.checked_mul(n - i).ok_or(Error::BinomialOverflow {
            n: n as u64,
            k: k as u64,
        })? / (i + 1);
    }
    Ok(acc)
}

fn binom_f64(n: usize, k: usize) -> Result<f64> {
    Ok(binom(n as i64, k as i64)? as f64)
}

/// `4 * sqrt(k ln n / n)`, the additive slack in the degree hypotheses.
pub fn error_term(n: usize, k: usize) -> f64 {
    4.0 * ((k as f64) * (n as f64).ln() / n as f64).sqrt()
}

/// `4 * sqrt(ln t / t)` with `t = n / k`: the slack the concentration step
/// actually consumes. Since `ln t <= ln n`, it never exceeds [`error_term`].
pub fn proof_error_term(t: usize) -> f64 {
    4.0 * ((t as f64).ln() / t as f64).sqrt()
}

/// Required minimum degrees for a Hamilton (a,b)-cycle at a given `alpha`.
#[derive(Clone, Debug, PartialEq)]
pub struct Thresholds {
    pub n: usize,
    pub k: usize,
    pub a: usize,
    pub b: usize,
    pub alpha: f64,
    pub error_term: f64,
    pub required_delta_a: f64,
    pub required_delta_b: f64,
}

impl Thresholds {
    /// `(alpha + e, 1 - alpha + e)`; the two always sum to `1 + 2e`.
    pub fn coefficients(&self) -> (f64, f64) {
        (
            self.alpha + self.error_term,
            1.0 - self.alpha + self.error_term,
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdReport {
    pub thresholds: Thresholds,
    pub actual_delta_a: usize,
    pub actual_delta_b: usize,
    pub hypothesis_holds: bool,
    /// `actual - required` for the a- and b-degree respectively.
    pub margins: (f64, f64),
}

impl ThresholdReport {
    fn fill(thresholds: Thresholds, actual_delta_a: usize, actual_delta_b: usize) -> Self {
        let margins = (
            actual_delta_a as f64 - thresholds.required_delta_a,
            actual_delta_b as f64 - thresholds.required_delta_b,
        );
        // non-strict, no epsilon
        let hypothesis_holds = actual_delta_a as f64 >= thresholds.required_delta_a
            && actual_delta_b as f64 >= thresholds.required_delta_b;
        ThresholdReport {
            thresholds,
            actual_delta_a,
            actual_delta_b,
            hypothesis_holds,
            margins,
        }
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::AlphaOutOfRange(alpha))
    }
}

/// Degree thresholds for a k-uniform hypergraph on `n` vertices:
/// `δ_a ≥ (alpha + e)·C(n−a, b)` and `δ_b ≥ (1 − alpha + e)·C(n−b, a)`,
/// with `e = 4√(k ln n / n)`.
pub fn threshold_main1(n: usize, k: usize, a: usize, b: usize, alpha: f64) -> Result<Thresholds> {
    if a == 0 || b == 0 {
        return Err(Error::ZeroBlock { a, b });
    }
    if a + b != k {
        return Err(Error::SplitMismatch { sum: a + b, k });
    }
    if !n.is_multiple_of(k) {
        return Err(Error::NotDivisible { n, k });
    }
    check_alpha(alpha)?;
    let e = error_term(n, k);
    Ok(Thresholds {
        n,
        k,
        a,
        b,
        alpha,
        error_term: e,
        required_delta_a: (alpha + e) * binom_f64(n - a, b)?,
        required_delta_b: (1.0 - alpha + e) * binom_f64(n - b, a)?,
    })
}

pub fn check_main1_hypothesis(h: &Hypergraph, a: usize, alpha: f64) -> Result<ThresholdReport> {
    let k = h.k();
    if a == 0 || a >= k {
        return Err(Error::ZeroBlock {
            a,
            b: k.saturating_sub(a),
        });
    }
    let b = k - a;
    let thresholds = threshold_main1(h.n() as usize, k, a, b, alpha)?;
    Ok(ThresholdReport::fill(
        thresholds,
        h.min_degree(a)?,
        h.min_degree(b)?,
    ))
}

/// Thresholds for the product family with block count `n`:
/// `δ_a ≥ (alpha + e)·C(bn, b)` and `δ_b ≥ (1 − alpha + e)·C(an, a)`,
/// with `e = 4√(ln n / n)`.
pub fn threshold_main2(n: usize, a: usize, b: usize, alpha: f64) -> Result<Thresholds> {
    if a == 0 || b == 0 {
        return Err(Error::ZeroBlock { a, b });
    }
    check_alpha(alpha)?;
    let e = error_term(n, 1);
    Ok(Thresholds {
        n,
        k: a + b,
        a,
        b,
        alpha,
        error_term: e,
        required_delta_a: (alpha + e) * binom_f64(b * n, b)?,
        required_delta_b: (1.0 - alpha + e) * binom_f64(a * n, a)?,
    })
}

pub fn check_main2_hypothesis(ph: &ProductHypergraph, alpha: f64) -> Result<ThresholdReport> {
    let n = ph.block_count()?;
    let thresholds = threshold_main2(n, ph.a(), ph.b(), alpha)?;
    Ok(ThresholdReport::fill(
        thresholds,
        ph.min_degree_v1(),
        ph.min_degree_v2(),
    ))
}

/// Lower bound on `δ_a` implied by `δ_b` when `a ≤ b`, by double counting
/// pairs (a-set, b-superset): `C(n−a, b−a)·δ_b / C(b, b−a)`.
pub fn infer_delta_a_lower(n: usize, k: usize, a: usize, b: usize, delta_b: usize) -> Result<f64> {
    if a + b != k {
        return Err(Error::SplitMismatch { sum: a + b, k });
    }
    if a > b {
        return Err(Error::NeedAAtMostB { a, b });
    }
    let num = binom((n - a) as i64, (b - a) as i64)?;
    let den = binom(b as i64, (b - a) as i64)?;
    Ok(num as f64 * delta_b as f64 / den as f64)
}
