//! Monte Carlo checks of the intersection concentration for random matchings:
//! for a family `G ⊆ C([m], l)` of density `θ` and a uniform t-matching `M`,
//! `η = |G ∩ M|` has mean `θt` and `Pr[|η − θt| ≥ 2γ√t] ≤ 2e^{−γ²/2}`.
//!
//! Also the conditioned link experiment: fix an a-set `A` as one A-block of a
//! random (a,b)-partition and count the B-blocks `B_j` with `A ∪ B_j ∈ H`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergraph::{binom, Hypergraph, VertexSet};
use crate::sampling::{sample_matching_with, split_shuffled, SeedSpec};

/// Membership tables above this many subsets are refused.
pub const MAX_UNIVERSE: u128 = 1 << 26;

/// A family of l-subsets of `[m]` together with the matching size `t`.
/// Membership is a table indexed by the colexicographic rank of a subset.
#[derive(Clone, Debug)]
pub struct FKInstance {
    m: usize,
    l: usize,
    t: usize,
    members: Vec<bool>,
    size: usize,
}

/// Colex rank of a sorted 1-based subset: `Σ C(v_i − 1, i + 1)`.
fn colex_rank(set: &[u32], table: &[Vec<usize>]) -> usize {
    set.iter()
        .enumerate()
        .map(|(i, &v)| table[v as usize - 1][i + 1])
        .sum()
}

fn pascal(m: usize, l: usize) -> Vec<Vec<usize>> {
    let mut c = vec![vec![0usize; l + 1]; m + 1];
    for row in 0..=m {
        c[row][0] = 1;
        for j in 1..=l.min(row) {
            c[row][j] = c[row - 1][j - 1] + if j < row { c[row - 1][j] } else { 0 };
        }
    }
    c
}

impl FKInstance {
    fn blank(m: usize, l: usize, t: usize) -> Result<(Self, Vec<Vec<usize>>)> {
        if t.checked_mul(l).is_none_or(|need| need > m) {
            return Err(Error::MatchingTooLarge { m, l, t });
        }
        let universe = binom(m as i64, l as i64)?;
        if universe > MAX_UNIVERSE {
            return Err(Error::GroundSetTooLarge {
                n: m,
                limit: MAX_UNIVERSE as usize,
            });
        }
        Ok((
            FKInstance {
                m,
                l,
                t,
                members: vec![false; universe as usize],
                size: 0,
            },
            pascal(m, l),
        ))
    }

    /// Family given explicitly. Sets must be l-subsets of `[m]`.
    pub fn from_family(
        m: usize,
        l: usize,
        t: usize,
        family: impl IntoIterator<Item = VertexSet>,
    ) -> Result<Self> {
        let (mut inst, table) = FKInstance::blank(m, l, t)?;
        for s in family {
            if s.len() != l {
                return Err(Error::WrongEdgeSize {
                    got: s.len(),
                    edge: s,
                    expected: l,
                });
            }
            if let Some(v) = s.max_vertex().filter(|&v| v as usize > m) {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: m as u32,
                });
            }
            let r = colex_rank(s.as_slice(), &table);
            if std::mem::replace(&mut inst.members[r], true) {
                return Err(Error::DuplicateEdge(s));
            }
            inst.size += 1;
        }
        Ok(inst)
    }

    /// `round(theta · C(m, l))` distinct l-subsets drawn without replacement.
    /// The realised density is [`FKInstance::theta`].
    pub fn with_target_theta(m: usize, l: usize, t: usize, theta: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&theta) {
            return Err(Error::ProbabilityOutOfRange(theta));
        }
        let (mut inst, _) = FKInstance::blank(m, l, t)?;
        let universe = inst.members.len();
        let target = (theta * universe as f64).round() as usize;
        let mut rng = SeedSpec::new(seed, 0).rng();
        let picked: Vec<usize> = rand::seq::index::sample(&mut rng, universe, target).into_vec();
        for r in picked {
            inst.members[r] = true;
        }
        inst.size = target;
        Ok(inst)
    }

    pub fn full(m: usize, l: usize, t: usize) -> Result<Self> {
        let (mut inst, _) = FKInstance::blank(m, l, t)?;
        inst.members.iter_mut().for_each(|x| *x = true);
        inst.size = inst.members.len();
        Ok(inst)
    }

    pub fn empty(m: usize, l: usize, t: usize) -> Result<Self> {
        Ok(FKInstance::blank(m, l, t)?.0)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn family_size(&self) -> usize {
        self.size
    }

    /// `|G| / C(m, l)`.
    pub fn theta(&self) -> f64 {
        self.size as f64 / self.members.len() as f64
    }

    pub fn expected_eta(&self) -> f64 {
        self.theta() * self.t as f64
    }
}

/// `2e^{−γ²/2}`, clamped to 1.
pub fn fk_bound(gamma: f64) -> Result<f64> {
    if gamma < 0.0 || gamma.is_nan() {
        return Err(Error::NegativeGamma(gamma));
    }
    Ok((2.0 * (-gamma * gamma / 2.0).exp()).min(1.0))
}

/// Deviation radius `2γ√t` at which [`fk_bound`] applies.
pub fn fk_radius(gamma: f64, t: usize) -> f64 {
    2.0 * gamma * (t as f64).sqrt()
}

#[derive(Clone, Debug, PartialEq)]
pub struct TailEstimate {
    pub gamma: f64,
    pub radius: f64,
    pub exceed: usize,
    pub freq: f64,
    pub bound: f64,
}

impl TailEstimate {
    /// `3·sqrt(bound(1−bound)/trials)`: three binomial standard errors at the bound.
    pub fn noise_allowance(&self, trials: usize) -> f64 {
        3.0 * (self.bound * (1.0 - self.bound) / trials as f64).sqrt()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialStats {
    pub trials: usize,
    pub t: usize,
    /// Exact `θt` (or `α_A·t` in the link experiment).
    pub expected: f64,
    pub mean_eta: f64,
    /// Sorted by increasing gamma.
    pub tails: Vec<TailEstimate>,
    /// `etas[i]` is the count seen in trial `i`.
    pub etas: Vec<usize>,
}

fn summarize(t: usize, expected: f64, etas: Vec<usize>, gammas: &[f64]) -> Result<TrialStats> {
    let trials = etas.len();
    let mut gammas = gammas.to_vec();
    gammas.sort_by(f64::total_cmp);
    let tails = gammas
        .into_iter()
        .map(|gamma| {
            let bound = fk_bound(gamma)?;
            let radius = fk_radius(gamma, t);
            let exceed = etas
                .iter()
                .filter(|&&e| (e as f64 - expected).abs() >= radius)
                .count();
            Ok(TailEstimate {
                gamma,
                radius,
                exceed,
                freq: exceed as f64 / trials as f64,
                bound,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TrialStats {
        trials,
        t,
        expected,
        mean_eta: etas.iter().sum::<usize>() as f64 / trials as f64,
        tails,
        etas,
    })
}

/// Samples `trials` uniform t-matchings and records `η = |G ∩ M|` for each.
pub fn run_fk(inst: &FKInstance, gammas: &[f64], trials: usize, seed: u64) -> Result<TrialStats> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let table = pascal(inst.m, inst.l);
    let etas = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = SeedSpec::new(seed, i).rng();
            let matching = sample_matching_with(inst.m, inst.l, inst.t, &mut rng)?;
            Ok(matching
                .blocks
                .iter()
                .filter(|blk| inst.members[colex_rank(blk.as_slice(), &table)])
                .count())
        })
        .collect::<Result<Vec<_>>>()?;
    summarize(inst.t, inst.expected_eta(), etas, gammas)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Anchor an a-set, count B-blocks completing it to an edge.
    A,
    /// Anchor a b-set, count A-blocks completing it to an edge.
    B,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinkConfig {
    pub a: usize,
    pub side: Side,
    /// Defaults to `{1..a}` (or `{1..b}` on side B).
    pub anchor: Option<VertexSet>,
    pub alpha_ref: f64,
    /// Extra radii reported for information, as gammas.
    pub gammas: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinkStats {
    pub anchor: VertexSet,
    pub t: usize,
    /// `degree(H, anchor) / C(n − |anchor|, k − |anchor|)`.
    pub link_density: f64,
    /// `4√(t ln t)`, i.e. radius `2γ√t` at `γ = 2√(ln t)`.
    pub radius: f64,
    pub deviation_freq: f64,
    /// `2/t²`.
    pub bound: f64,
    /// Frequency of `η ≤ alpha_ref·t`.
    pub below_alpha_ref_freq: f64,
    pub stats: TrialStats,
}

/// Conditions the random partition on the anchor being one of its blocks
/// and measures how tightly the anchor's auxiliary degree concentrates.
pub fn link_concentration_experiment(h: &Hypergraph, cfg: &LinkConfig) -> Result<LinkStats> {
    if cfg.trials == 0 {
        return Err(Error::NoTrials);
    }
    let k = h.k();
    let (a, n) = (cfg.a, h.n() as usize);
    if a == 0 || a >= k {
        return Err(Error::ZeroBlock {
            a,
            b: k.saturating_sub(a),
        });
    }
    let b = k - a;
    if n % k != 0 {
        return Err(Error::NotDivisible { n, k });
    }
    let t = n / k;
    if t < 2 {
        return Err(Error::TooFewBlocks(t));
    }
    let (anchor_size, other_size) = match cfg.side {
        Side::A => (a, b),
        Side::B => (b, a),
    };
    let anchor = match &cfg.anchor {
        Some(s) => s.clone(),
        None => VertexSet::range(1, anchor_size as u32),
    };
    if anchor.len() != anchor_size {
        return Err(Error::WrongEdgeSize {
            got: anchor.len(),
            edge: anchor,
            expected: anchor_size,
        });
    }
    let degree = h.degree(&anchor)?;
    let link_density = degree as f64 / binom((n - anchor_size) as i64, other_size as i64)? as f64;
    let rest: Vec<u32> = (1..=n as u32).filter(|v| !anchor.contains(*v)).collect();

    let etas: Vec<usize> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = SeedSpec::new(cfg.seed, i).rng();
            // t−1 more anchor-side blocks, t opposite blocks
            let (_, opposite) = split_shuffled(&rest, anchor_size, t - 1, other_size, t, &mut rng);
            opposite
                .iter()
                .filter(|blk| h.contains(&anchor.union(blk)))
                .count()
        })
        .collect();

    let expected = link_density * t as f64;
    let radius = 4.0 * (t as f64 * (t as f64).ln()).sqrt();
    let deviation = etas
        .iter()
        .filter(|&&e| (e as f64 - expected).abs() >= radius)
        .count();
    let below = etas
        .iter()
        .filter(|&&e| e as f64 <= cfg.alpha_ref * t as f64)
        .count();
    let trials = etas.len() as f64;
    Ok(LinkStats {
        anchor,
        t,
        link_density,
        radius,
        deviation_freq: deviation as f64 / trials,
        bound: 2.0 / (t * t) as f64,
        below_alpha_ref_freq: below as f64 / trials,
        stats: summarize(t, expected, etas, &cfg.gammas)?,
    })
}

/// The sets of [`FKInstance::with_target_theta`], in lexicographic order.
pub fn sample_family(m: usize, l: usize, theta: f64, seed: u64) -> Result<Vec<VertexSet>> {
    let inst = FKInstance::with_target_theta(m, l, 0, theta, seed)?;
    let table = pascal(m, l);
    let mut out = Vec::with_capacity(inst.size);
    for combo in itertools::Itertools::combinations(1..=m as u32, l) {
        if inst.members[colex_rank(&combo, &table)] {
            out.push(VertexSet::from_sorted_unchecked(combo));
        }
    }
    Ok(out)
}
