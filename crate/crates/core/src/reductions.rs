//! Instance generators: hardness gadgets and seeded random instances.
//!
//! The three gadget families make the hardness landscape executable:
//!
//! - [`gen_from_partition`] encodes an equal-sum bipartition question into a
//!   2-agent instance where an exactly fair allocation exists iff the
//!   bipartition does;
//! - [`gen_ef_embedding`] pads a binary envy-freeness instance with
//!   worthless items and an exact quota so that one-removal average
//!   fairness on the padded instance decides classic envy-freeness;
//! - [`gen_from_eqcard_partition`] encodes an equal-cardinality equal-sum
//!   bipartition question into a 3-agent quota instance.
//!
//! Each generator reports the derived constants a consumer needs to reason
//! about the gadget, plus a flag for the size assumptions
//! (`k >= 4`, `T >= 4`) under which the constructions' proofs operate;
//! smaller inputs still generate, which exhaustive tests rely on.

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::allocation::Allocation;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::quota::Quota;
use crate::rational::{integer, ratio, Rational};

/// A multiset of positive integers — the raw material of both partition
/// gadgets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionInput {
    values: Vec<u64>,
}

impl PartitionInput {
    /// Wraps a multiset, rejecting zero elements (the encodings need every
    /// element to carry weight). The empty multiset is representable; the
    /// generators that cannot use it reject it themselves.
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if let Some(index) = values.iter().position(|&x| x == 0) {
            return Err(Error::ZeroPartitionElement { index });
        }
        Ok(PartitionInput { values })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.values.iter().sum()
    }

    /// Half the total, exact — a fraction when the total is odd (in which
    /// case no equal split exists and the encoded question is trivially NO).
    pub fn half_sum(&self) -> Rational {
        ratio(self.sum() as i64, 2)
    }

    pub fn has_even_sum(&self) -> bool {
        self.sum().is_multiple_of(2)
    }
}

fn meets_size_assumptions(k: usize, half_sum: &Rational) -> bool {
    k >= 4 && half_sum >= &integer(4)
}

/// Output of [`gen_from_partition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionGadget {
    /// 2 agents with identical valuations over `2k` items.
    pub instance: Instance,
    /// Number of multiset elements `k`.
    pub element_count: usize,
    /// Half the multiset total `T`.
    pub half_sum: Rational,
    /// Whether the input satisfies the size assumptions (`k >= 4`,
    /// `T >= 4`) the gadget's correctness argument assumes. Generation
    /// works regardless.
    pub meets_size_assumptions: bool,
}

/// Encodes an equal-sum bipartition question. For a multiset of `k`
/// elements with half-sum `T`, the instance has two agents with identical
/// values over `2k` items: for each element `x_j` (1-based position `j`), a
/// "small" item worth `base^j` and a "large" item worth `base^j + x_j`,
/// where `base = T^2 k^2`. Item order is small₁, large₁, small₂, large₂, …
/// An exactly fair allocation exists iff the multiset splits into two
/// halves of equal sum: the geometric weights force any fair allocation to
/// separate each small/large pair, and the leftover `x_j`'s must then
/// balance.
pub fn gen_from_partition(input: &PartitionInput) -> Result<PartitionGadget> {
    if input.is_empty() {
        return Err(Error::EmptyPartition);
    }
    let k = input.len();
    let half_sum = input.half_sum();
    let base = &half_sum * &half_sum * integer((k * k) as i64);
    let mut values = Vec::with_capacity(2 * k);
    let mut labels = Vec::with_capacity(2 * k);
    let mut weight = Rational::one();
    for (j, &x) in input.values().iter().enumerate() {
        weight *= &base;
        values.push(weight.clone());
        values.push(&weight + integer(x as i64));
        labels.push(format!("gs{}", j + 1));
        labels.push(format!("gl{}", j + 1));
    }
    let instance = Instance::with_labels(vec![values.clone(), values], labels)?;
    Ok(PartitionGadget {
        instance,
        element_count: k,
        meets_size_assumptions: meets_size_assumptions(k, &half_sum),
        half_sum,
    })
}

/// The forward construction for a partition witness: agent 0 takes the
/// large item for every multiset position in `chosen` (0-based) and the
/// small item otherwise; agent 1 takes the complement. When `chosen` indexes
/// a half-sum subset, the result is exactly fair: both bundles have `k`
/// items, one per position, and totals that differ only by the balanced
/// `x_j` contributions.
pub fn partition_witness_allocation(element_count: usize, chosen: &[usize]) -> Allocation {
    let mut alloc = Allocation::unassigned(2 * element_count);
    for j in 0..element_count {
        let takes_large = chosen.contains(&j);
        let (small, large) = (2 * j, 2 * j + 1);
        if takes_large {
            alloc.assign(large, 0);
            alloc.assign(small, 1);
        } else {
            alloc.assign(small, 0);
            alloc.assign(large, 1);
        }
    }
    alloc
}

/// Output of [`gen_ef_embedding`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EfEmbedding {
    /// Original items followed by `(n-1)*m` worthless dummy items.
    pub instance: Instance,
    /// Exactly `m` items per agent (`m` = original item count).
    pub quota: Quota,
    /// True iff every agent values at least two items. Only then is the
    /// encoding's NO answer transferable: an agent valuing at most one item
    /// can shed all its envy through a removal that empties the comparison
    /// (post-removal averages 0 >= 0), so the padded instance may admit a
    /// one-removal-fair allocation even though the source has no envy-free
    /// one. The YES direction holds regardless.
    pub faithful_for_no: bool,
}

/// Embeds a binary envy-freeness question into a quota question: append
/// `(n-1)*m` zero-valued dummy items and require every agent to take
/// exactly `m` items. Equal bundle sizes turn average comparisons back into
/// sum comparisons, so the padded instance admits a one-removal-fair
/// allocation under the quota iff the original admits an envy-free
/// allocation — provided every agent values at least two items (see
/// [`EfEmbedding::faithful_for_no`]) — and any such allocation is in fact
/// exactly fair.
pub fn gen_ef_embedding(ef_inst: &Instance) -> Result<EfEmbedding> {
    if let Some((agent, item)) = ef_inst.first_non_binary() {
        return Err(Error::NotBinary {
            agent,
            item,
            value: ef_inst.value(agent, item).clone(),
        });
    }
    let n = ef_inst.agents();
    let m = ef_inst.items();
    let dummies = (n - 1) * m;
    let mut labels: Vec<String> = match ef_inst.item_labels() {
        Some(l) => l.to_vec(),
        None => (1..=m).map(|j| format!("g{j}")).collect(),
    };
    labels.extend((1..=dummies).map(|j| format!("d{j}")));
    let values: Vec<Vec<Rational>> = ef_inst
        .values()
        .iter()
        .map(|row| {
            let mut padded = row.clone();
            padded.extend(std::iter::repeat_n(Rational::zero(), dummies));
            padded
        })
        .collect();
    let faithful_for_no = values
        .iter()
        .all(|row| row.iter().filter(|v| !v.is_zero()).count() >= 2);
    Ok(EfEmbedding {
        instance: Instance::with_labels(values, labels)?,
        quota: Quota::exact(vec![m; n]),
        faithful_for_no,
    })
}

/// Output of [`gen_from_eqcard_partition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqcardGadget {
    pub instance: Instance,
    /// Exactly `k + 2` items for each of the three real agents, exactly 0
    /// for every padding agent.
    pub quota: Quota,
    /// Half the element count: the input has `2k` elements.
    pub pair_count: usize,
    /// Half the multiset total `T`.
    pub half_sum: Rational,
    /// Half the total main-item value `T' = T + k^3 T^2`.
    pub main_half_value: Rational,
    /// Value of each filler item, `(k+2) T' / (k+1)^2`.
    pub filler_value: Rational,
    /// Whether the input satisfies the size assumptions (`k >= 4`,
    /// `T >= 4`) the gadget's correctness argument assumes.
    pub meets_size_assumptions: bool,
}

/// Encodes an equal-cardinality equal-sum bipartition question into a
/// 3-agent quota instance. For a multiset of `2k` elements with half-sum
/// `T`: main items `g_j` worth `x_j + k^2 T^2` (so any `k` of them total
/// `T' = T + k^3 T^2` exactly when their elements sum to `T`), `k + 1`
/// filler items worth `(k+2) T' / (k+1)^2` each, five worthless items, and
/// an exact quota of `k + 2` per agent. Two agents must split the main
/// items `k`-and-`k`; the third lives off the fillers. If `n_target > 3`,
/// padding agents valuing everything at zero (quota exactly 0) are
/// appended.
pub fn gen_from_eqcard_partition(input: &PartitionInput, n_target: usize) -> Result<EqcardGadget> {
    if input.is_empty() {
        return Err(Error::EmptyPartition);
    }
    if !input.len().is_multiple_of(2) {
        return Err(Error::OddPartition { len: input.len() });
    }
    if n_target < 3 {
        return Err(Error::TooFewAgents {
            needed: 3,
            got: n_target,
        });
    }
    let k = input.len() / 2;
    let half_sum = input.half_sum();
    let k_rat = integer(k as i64);
    let main_bonus = &k_rat * &k_rat * &half_sum * &half_sum;
    let main_half_value = &half_sum + &k_rat * &main_bonus;
    let filler_value =
        integer((k + 2) as i64) * &main_half_value / integer(((k + 1) * (k + 1)) as i64);
    let mut values = Vec::with_capacity(2 * k + (k + 1) + 5);
    let mut labels = Vec::with_capacity(values.capacity());
    for (j, &x) in input.values().iter().enumerate() {
        values.push(integer(x as i64) + &main_bonus);
        labels.push(format!("g{}", j + 1));
    }
    for j in 1..=(k + 1) {
        values.push(filler_value.clone());
        labels.push(format!("b{j}"));
    }
    for j in 1..=5 {
        values.push(Rational::zero());
        labels.push(format!("z{j}"));
    }
    let mut rows = vec![values; 3];
    let mut sizes = vec![k + 2; 3];
    for _ in 3..n_target {
        rows.push(vec![Rational::zero(); rows[0].len()]);
        sizes.push(0);
    }
    Ok(EqcardGadget {
        instance: Instance::with_labels(rows, labels)?,
        quota: Quota::exact(sizes),
        pair_count: k,
        meets_size_assumptions: meets_size_assumptions(k, &half_sum),
        half_sum,
        main_half_value,
        filler_value,
    })
}

/// The forward construction for an equal-cardinality witness: agent 0 takes
/// the main items at the `k` positions in `chosen` plus two worthless
/// items, agent 1 takes the other `k` main items plus two worthless items,
/// and agent 2 takes all `k + 1` fillers plus the last worthless item.
/// Padding agents take nothing. When `chosen` indexes an equal-sum half,
/// agents 0 and 1 average exactly `T'/(k+2)` and agent 2 averages
/// `T'/(k+1)`.
pub fn eqcard_witness_allocation(gadget: &EqcardGadget, chosen: &[usize]) -> Allocation {
    let k = gadget.pair_count;
    let m = gadget.instance.items();
    let mut alloc = Allocation::unassigned(m);
    for j in 0..2 * k {
        alloc.assign(j, if chosen.contains(&j) { 0 } else { 1 });
    }
    for j in 0..(k + 1) {
        alloc.assign(2 * k + j, 2);
    }
    let zeros = 2 * k + (k + 1);
    alloc.assign(zeros, 0);
    alloc.assign(zeros + 1, 0);
    alloc.assign(zeros + 2, 1);
    alloc.assign(zeros + 3, 1);
    alloc.assign(zeros + 4, 2);
    alloc
}

/// How random instance values are drawn.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValueModel {
    /// Each value is 1 with probability `p`, else 0.
    Binary { p: Rational },
    /// Each value is a uniform integer in `lo..=hi`.
    UniformInt { lo: u64, hi: u64 },
    /// Each value is `num/den` with `den` uniform in `1..=max_denominator`
    /// and `num` uniform in `0..=den` (so values lie in `[0, 1]`).
    UniformRational { max_denominator: u64 },
}

impl ValueModel {
    fn validate(&self) -> Result<()> {
        match self {
            ValueModel::Binary { p } => {
                if p < &Rational::zero() || p > &Rational::one() {
                    return Err(Error::ModelParams(format!(
                        "binary probability must lie in [0, 1], got {p}"
                    )));
                }
                let fits = |x: &num::BigInt| u32::try_from(x.clone()).is_ok();
                if !fits(p.numer()) || !fits(p.denom()) {
                    return Err(Error::ModelParams(
                        "binary probability is too fine-grained to sample".to_string(),
                    ));
                }
            }
            ValueModel::UniformInt { lo, hi } => {
                if lo > hi {
                    return Err(Error::ModelParams(format!(
                        "uniform_int bounds are crossed: {lo} > {hi}"
                    )));
                }
            }
            ValueModel::UniformRational { max_denominator } => {
                if *max_denominator == 0 {
                    return Err(Error::ModelParams(
                        "uniform_rational needs a positive denominator bound".to_string(),
                    ));
                }
            }
        }
        Ok(())
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Rational {
        match self {
            ValueModel::Binary { p } => {
                let num = u32::try_from(p.numer().clone()).expect("validated");
                let den = u32::try_from(p.denom().clone()).expect("validated");
                if num == den || (num > 0 && rng.gen_ratio(num, den)) {
                    integer(1)
                } else {
                    integer(0)
                }
            }
            ValueModel::UniformInt { lo, hi } => {
                Rational::from_integer(rng.gen_range(*lo..=*hi).into())
            }
            ValueModel::UniformRational { max_denominator } => {
                let den = rng.gen_range(1..=*max_denominator);
                let num = rng.gen_range(0..=den);
                Rational::new(num.into(), den.into())
            }
        }
    }
}

/// Generates a random instance: `agents x items` values drawn row by row
/// (agent-major) from the model, using a counter-based RNG so a fixed seed
/// always reproduces the same instance on every platform.
pub fn gen_random(agents: usize, items: usize, model: &ValueModel, seed: u64) -> Result<Instance> {
    model.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..agents)
        .map(|_| (0..items).map(|_| model.sample(&mut rng)).collect())
        .collect();
    Instance::new(values)
}
