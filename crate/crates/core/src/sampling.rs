//! Uniform samplers for (a,b)-partitions, t-matchings and product matchings.
//!
//! Every sampler shuffles a ground set uniformly and cuts it into consecutive
//! chunks. Each target object is the image of the same number of
//! permutations, so the output is exactly uniform:
//!
//! * ordered (a,b)-partitions of `[n]`: `(a!)^t (b!)^t` permutations each;
//! * unordered t-matchings of `C([m], l)`: `t! (l!)^t (m - tl)!` each, once
//!   blocks are sorted by their minimum element.
//!
//! Randomness comes from ChaCha8 keyed by `(master_seed, trial_index)`, which
//! is reproducible on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypergraph::VertexSet;

pub type StreamRng = ChaCha8Rng;

/// Identifies one random stream: a master seed plus a trial (or attempt) index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SeedSpec {
    pub master_seed: u64,
    pub trial_index: u64,
}

impl SeedSpec {
    pub fn new(master_seed: u64, trial_index: u64) -> Self {
        SeedSpec {
            master_seed,
            trial_index,
        }
    }

    pub fn rng(&self) -> StreamRng {
        StreamRng::from_seed(derive_seed(self.master_seed, self.trial_index))
    }
}

/// 256-bit ChaCha key. Injective: the master seed and the trial index occupy
/// disjoint little-endian byte ranges.
pub fn derive_seed(master: u64, trial: u64) -> [u8; 32] {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&master.to_le_bytes());
    key[8..16].copy_from_slice(&trial.to_le_bytes());
    key
}

/// Ordered tuple `(A_1..A_t, B_1..B_t)` of disjoint blocks covering the ground
/// set, `|A_i| = a`, `|B_i| = b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ABPartition {
    pub a: usize,
    pub b: usize,
    pub a_blocks: Vec<VertexSet>,
    pub b_blocks: Vec<VertexSet>,
}

impl ABPartition {
    pub fn t(&self) -> usize {
        self.a_blocks.len()
    }

    /// Checks the partition invariants against the ground set `[n]`.
    pub fn validate(&self, n: u32) -> Result<()> {
        let t = self.t();
        if self.b_blocks.len() != t {
            return Err(Error::PartitionMismatch(format!(
                "{} A-blocks but {} B-blocks",
                t,
                self.b_blocks.len()
            )));
        }
        if t * (self.a + self.b) != n as usize {
            return Err(Error::PartitionMismatch(format!(
                "t(a+b) = {} but n = {n}",
                t * (self.a + self.b)
            )));
        }
        let mut seen = vec![false; n as usize + 1];
        let sized = self
            .a_blocks
            .iter()
            .map(|blk| (blk, self.a))
            .chain(self.b_blocks.iter().map(|blk| (blk, self.b)));
        for (blk, size) in sized {
            if blk.len() != size {
                return Err(Error::PartitionMismatch(format!(
                    "block {blk} has size {} not {size}",
                    blk.len()
                )));
            }
            for v in blk.iter() {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if std::mem::replace(&mut seen[v as usize], true) {
                    return Err(Error::PartitionMismatch(format!("vertex {v} repeated")));
                }
            }
        }
        Ok(())
    }
}

/// A set of pairwise disjoint `l`-subsets, blocks sorted by minimum element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matching {
    pub l: usize,
    pub blocks: Vec<VertexSet>,
}

impl Matching {
    pub fn t(&self) -> usize {
        self.blocks.len()
    }
}

fn chunk(values: &[u32], sizes: impl IntoIterator<Item = usize>) -> Vec<VertexSet> {
    let mut out = Vec::new();
    let mut at = 0;
    for s in sizes {
        let mut blk = values[at..at + s].to_vec();
        blk.sort_unstable();
        out.push(VertexSet::from_sorted_unchecked(blk));
        at += s;
    }
    out
}

fn check_sizes(n: usize, a: usize, b: usize) -> Result<usize> {
    if a == 0 || b == 0 {
        return Err(Error::ZeroBlock { a, b });
    }
    if !n.is_multiple_of(a + b) {
        return Err(Error::NotDivisible { n, k: a + b });
    }
    Ok(n / (a + b))
}

/// Shuffles `ground` and cuts it into `a_count` blocks of size `a` followed by
/// `b_count` blocks of size `b`. Requires `ground.len() == a·a_count + b·b_count`.
pub fn split_shuffled<R: Rng + ?Sized>(
    ground: &[u32],
    a: usize,
    a_count: usize,
    b: usize,
    b_count: usize,
    rng: &mut R,
) -> (Vec<VertexSet>, Vec<VertexSet>) {
    assert_eq!(ground.len(), a * a_count + b * b_count);
    let mut perm = ground.to_vec();
    perm.shuffle(rng);
    let (left, right) = perm.split_at(a * a_count);
    (
        chunk(left, std::iter::repeat_n(a, a_count)),
        chunk(right, std::iter::repeat_n(b, b_count)),
    )
}

pub fn sample_ab_partition_with<R: Rng + ?Sized>(
    n: usize,
    a: usize,
    b: usize,
    rng: &mut R,
) -> Result<ABPartition> {
    let t = check_sizes(n, a, b)?;
    let ground: Vec<u32> = (1..=n as u32).collect();
    let (a_blocks, b_blocks) = split_shuffled(&ground, a, t, b, t, rng);
    Ok(ABPartition {
        a,
        b,
        a_blocks,
        b_blocks,
    })
}

/// Uniform element of the set of ordered (a,b)-partitions of `[n]`.
pub fn sample_ab_partition(n: usize, a: usize, b: usize, seed: SeedSpec) -> Result<ABPartition> {
    sample_ab_partition_with(n, a, b, &mut seed.rng())
}

/// Uniform t-matching in `C(ground, l)`.
pub fn sample_matching_in<R: Rng + ?Sized>(
    ground: &[u32],
    l: usize,
    t: usize,
    rng: &mut R,
) -> Result<Matching> {
    let m = ground.len();
    if t.checked_mul(l).is_none_or(|need| need > m) {
        return Err(Error::MatchingTooLarge { m, l, t });
    }
    let mut perm = ground.to_vec();
    perm.shuffle(rng);
    let mut blocks = chunk(&perm[..t * l], std::iter::repeat_n(l, t));
    blocks.sort_unstable_by_key(|blk| blk.min_vertex());
    Ok(Matching { l, blocks })
}

pub fn sample_matching_with<R: Rng + ?Sized>(
    m: usize,
    l: usize,
    t: usize,
    rng: &mut R,
) -> Result<Matching> {
    let ground: Vec<u32> = (1..=m as u32).collect();
    sample_matching_in(&ground, l, t, rng)
}

/// Uniform unordered t-matching in `C([m], l)`.
pub fn sample_matching(m: usize, l: usize, t: usize, seed: SeedSpec) -> Result<Matching> {
    sample_matching_with(m, l, t, &mut seed.rng())
}

pub fn sample_product_matchings_with<R: Rng + ?Sized>(
    n1: usize,
    n2: usize,
    a: usize,
    b: usize,
    rng: &mut R,
) -> Result<(Matching, Matching)> {
    if a == 0 || b == 0 {
        return Err(Error::ZeroBlock { a, b });
    }
    if !n1.is_multiple_of(a) {
        return Err(Error::NotDivisible { n: n1, k: a });
    }
    if !n2.is_multiple_of(b) {
        return Err(Error::NotDivisible { n: n2, k: b });
    }
    if n1 / a != n2 / b {
        return Err(Error::PartCountMismatch {
            left: n1 / a,
            right: n2 / b,
        });
    }
    let t = n1 / a;
    let v1: Vec<u32> = (1..=n1 as u32).collect();
    let v2: Vec<u32> = (n1 as u32 + 1..=(n1 + n2) as u32).collect();
    let x = sample_matching_in(&v1, a, t, rng)?;
    let y = sample_matching_in(&v2, b, t, rng)?;
    Ok((x, y))
}

/// Independent uniform perfect matchings `X` of `C(V1, a)` and `Y` of
/// `C(V2, b)`, with `V1 = {1..n1}` and `V2 = {n1+1..n1+n2}`.
pub fn sample_product_matchings(
    n1: usize,
    n2: usize,
    a: usize,
    b: usize,
    seed: SeedSpec,
) -> Result<(Matching, Matching)> {
    sample_product_matchings_with(n1, n2, a, b, &mut seed.rng())
}
