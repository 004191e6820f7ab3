//! Independent oracles for differential testing.
//!
//! Everything here is written as a literal, unoptimized expansion of the
//! definitions — quantifiers become loops, existence becomes exhaustive
//! enumeration — sharing no code with the library's decision procedures,
//! so agreement between the two is evidence rather than tautology.

#![allow(dead_code)]
// Index loops are the point here: the oracles mirror the quantifier
// structure of the definitions, not idiomatic iterator style.
#![allow(clippy::needless_range_loop)]

use aef_core::{Allocation, Instance, Quota, Rational, RemovingMatrix};
use num::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Average value of a bundle given by an item mask, straight from the
/// definition: sum divided by cardinality, zero for the empty bundle.
fn avg_of_mask(inst: &Instance, agent: usize, mask: &[bool]) -> Rational {
    let mut sum = Rational::zero();
    let mut count = 0i64;
    for (item, &inside) in mask.iter().enumerate() {
        if inside {
            sum += inst.value(agent, item);
            count += 1;
        }
    }
    if count == 0 {
        Rational::zero()
    } else {
        sum / Rational::from_integer(count.into())
    }
}

fn bundle_masks(inst: &Instance, alloc: &Allocation) -> Vec<Vec<bool>> {
    let mut masks = vec![vec![false; inst.items()]; inst.agents()];
    for item in 0..inst.items() {
        let owner = alloc
            .owner(item)
            .expect("oracle needs complete allocations");
        masks[owner][item] = true;
    }
    masks
}

/// Literal expansion of exact average fairness: every ordered pair.
pub fn naive_is_aef(inst: &Instance, alloc: &Allocation) -> bool {
    let masks = bundle_masks(inst, alloc);
    for i in 0..inst.agents() {
        for h in 0..inst.agents() {
            if i == h {
                continue;
            }
            if avg_of_mask(inst, i, &masks[i]) < avg_of_mask(inst, i, &masks[h]) {
                return false;
            }
        }
    }
    true
}

/// Literal expansion of one-removal fairness with additive slack and
/// multiplicative factor folded in: for each ordered pair, try every item
/// of the union (plus no removal only via items — the definition requires
/// an item to exist, and an already-satisfied pair always has a removal
/// that keeps it satisfied only when the union is non-empty; an empty
/// union means both bundles are empty and the pair holds with 0 >= 0).
fn naive_pair_ok(
    inst: &Instance,
    i: usize,
    h: usize,
    masks: &[Vec<bool>],
    eps: &Rational,
    alpha: &Rational,
) -> bool {
    let union: Vec<usize> = (0..inst.items())
        .filter(|&g| masks[i][g] || masks[h][g])
        .collect();
    if union.is_empty() {
        return Rational::zero() >= alpha * Rational::zero() - eps;
    }
    for &g in &union {
        let mut own = masks[i].clone();
        let mut other = masks[h].clone();
        own[g] = false;
        other[g] = false;
        let lhs = avg_of_mask(inst, i, &own);
        let rhs = avg_of_mask(inst, i, &other);
        if lhs >= alpha * rhs - eps {
            return true;
        }
    }
    false
}

fn naive_all_pairs(inst: &Instance, alloc: &Allocation, eps: &Rational, alpha: &Rational) -> bool {
    let masks = bundle_masks(inst, alloc);
    for i in 0..inst.agents() {
        for h in 0..inst.agents() {
            if i != h && !naive_pair_ok(inst, i, h, &masks, eps, alpha) {
                return false;
            }
        }
    }
    true
}

pub fn naive_is_aef1(inst: &Instance, alloc: &Allocation) -> bool {
    naive_all_pairs(
        inst,
        alloc,
        &Rational::zero(),
        &Rational::from_integer(1.into()),
    )
}

pub fn naive_is_eps_aef1(inst: &Instance, alloc: &Allocation, eps: &Rational) -> bool {
    naive_all_pairs(inst, alloc, eps, &Rational::from_integer(1.into()))
}

pub fn naive_is_alpha_aef1(inst: &Instance, alloc: &Allocation, alpha: &Rational) -> bool {
    naive_all_pairs(inst, alloc, &Rational::zero(), alpha)
}

/// Does any subset of the multiset sum to exactly half the total? Decided
/// by enumerating all 2^k subsets; the half must be integral.
pub fn subset_sum_partition_exists(values: &[u64]) -> bool {
    let total: u64 = values.iter().sum();
    if !total.is_multiple_of(2) {
        return false;
    }
    let half = total / 2;
    for mask in 0u64..(1 << values.len()) {
        let sum: u64 = values
            .iter()
            .enumerate()
            .filter(|(j, _)| mask >> j & 1 == 1)
            .map(|(_, &x)| x)
            .sum();
        if sum == half {
            return true;
        }
    }
    false
}

/// Does the 2k-element multiset split into two k-element halves of equal
/// sum? Exhaustive over subsets of the right cardinality.
pub fn eqcard_partition_exists(values: &[u64]) -> bool {
    if !values.len().is_multiple_of(2) {
        return false;
    }
    let k = values.len() / 2;
    let total: u64 = values.iter().sum();
    if !total.is_multiple_of(2) {
        return false;
    }
    let half = total / 2;
    for mask in 0u64..(1 << values.len()) {
        if (mask.count_ones() as usize) != k {
            continue;
        }
        let sum: u64 = values
            .iter()
            .enumerate()
            .filter(|(j, _)| mask >> j & 1 == 1)
            .map(|(_, &x)| x)
            .sum();
        if sum == half {
            return true;
        }
    }
    false
}

/// Classic (sum-based) envy-freeness by exhaustive enumeration of all
/// complete allocations: exists A with v_i(A_i) >= v_i(A_h) for all pairs.
pub fn ef_exists_by_enumeration(inst: &Instance) -> bool {
    let n = inst.agents();
    let m = inst.items();
    let mut owners = vec![0usize; m];
    loop {
        let mut sums = vec![vec![Rational::zero(); n]; n];
        for (item, &owner) in owners.iter().enumerate() {
            for i in 0..n {
                sums[i][owner] += inst.value(i, item);
            }
        }
        let envy_free = (0..n).all(|i| (0..n).all(|h| sums[i][i] >= sums[i][h]));
        if envy_free {
            return true;
        }
        // Advance the base-n odometer over owner vectors.
        let mut pos = m;
        loop {
            if pos == 0 {
                return false;
            }
            pos -= 1;
            owners[pos] += 1;
            if owners[pos] < n {
                break;
            }
            owners[pos] = 0;
        }
    }
}

/// A uniformly random complete allocation.
pub fn random_allocation(agents: usize, items: usize, rng: &mut ChaCha8Rng) -> Allocation {
    Allocation::from_owners((0..items).map(|_| rng.gen_range(0..agents)).collect())
}

/// A random quota that is feasible for `items` (lower sums to at most the
/// item count, upper at least): lower bounds are drawn by splitting a
/// random portion of the items, uppers extend each lower by a random slack.
pub fn random_feasible_quota(agents: usize, items: usize, rng: &mut ChaCha8Rng) -> Quota {
    let mut lower = vec![0usize; agents];
    let mut budget = rng.gen_range(0..=items);
    for bound in lower.iter_mut().take(agents - 1) {
        let take = rng.gen_range(0..=budget);
        *bound = take;
        budget -= take;
    }
    lower[agents - 1] = budget;
    let mut upper: Vec<usize> = lower
        .iter()
        .map(|&lo| lo + rng.gen_range(0..=items))
        .collect();
    // Ensure the uppers can absorb every item.
    while upper.iter().sum::<usize>() < items {
        let j = rng.gen_range(0..agents);
        upper[j] += 1;
    }
    Quota::new(lower, upper).expect("constructed bounds are ordered")
}

/// A random valid removing matrix: each ordered pair independently gets no
/// designation or a random (item, side) one; retried a few times if the
/// draw reuses an item across entries, falling back to the all-none matrix.
pub fn random_removing_matrix(agents: usize, items: usize, rng: &mut ChaCha8Rng) -> RemovingMatrix {
    for _ in 0..16 {
        let mut matrix = RemovingMatrix::all_none(agents);
        for i in 0..agents {
            for h in 0..agents {
                if i == h {
                    continue;
                }
                let designation = if items == 0 || rng.gen_bool(0.5) {
                    None
                } else {
                    let item = rng.gen_range(0..items);
                    let owner = if rng.gen_bool(0.5) { i } else { h };
                    Some((item, owner))
                };
                matrix
                    .set_entry(i, h, designation)
                    .expect("entry indices are in range");
            }
        }
        if matrix.is_valid() {
            return matrix;
        }
    }
    RemovingMatrix::all_none(agents)
}
