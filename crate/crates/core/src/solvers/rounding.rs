//! Value rounding for the approximate DP.
//!
//! Rounding snaps each agent's values onto a coarse grid so the DP state
//! space stays polynomial: with grid step `a_i / r` every rounded value is
//! one of at most `r + 1` multiples, at the cost of inflating each value by
//! less than one step. Items designated by the removing matrix keep their
//! exact values — the acceptance check needs those exactly — hence the grid
//! bound `a_i` is the largest value among the items that actually get
//! rounded.

use num::Zero;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::rational::{integer, Rational};
use crate::solvers::removing::RemovingMatrix;

/// Smallest multiple of `bound / steps` that is at least `value`, with zero
/// staying exactly zero. Requires `bound > 0` and `steps >= 1`; `value` is
/// expected in `[0, bound]`, making the result at most `bound`.
pub fn round_up_to_step(value: &Rational, bound: &Rational, steps: u64) -> Rational {
    if value.is_zero() {
        return Rational::zero();
    }
    let step = bound / integer(steps as i64);
    (value / &step).ceil() * step
}

/// An instance with per-agent rounded values, together with everything the
/// approximate DP needs to interpret them: the removing matrix that fixed
/// which items stay exact, the grid resolution, and each agent's grid bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundedProfile {
    base: Instance,
    rounded: Instance,
    matrix: RemovingMatrix,
    step_count: u64,
    bounds: Vec<Rational>,
}

impl RoundedProfile {
    /// The original instance.
    pub fn base(&self) -> &Instance {
        &self.base
    }

    /// The instance with rounded values. Item labels are preserved.
    pub fn rounded(&self) -> &Instance {
        &self.rounded
    }

    /// The removing matrix the profile was built for.
    pub fn matrix(&self) -> &RemovingMatrix {
        &self.matrix
    }

    /// Grid resolution `r = (m * n)^2`: every rounded value of agent `i` is
    /// a multiple of `bound(i) / r`.
    pub fn step_count(&self) -> u64 {
        self.step_count
    }

    /// Agent `i`'s grid bound: the largest original value among the items
    /// that get rounded for `i`. Zero when nothing (positive) gets rounded.
    pub fn bound(&self, agent: usize) -> &Rational {
        &self.bounds[agent]
    }

    /// Rounding error ceiling `bound(i) / r` for agent `i` — also the envy
    /// tolerance the approximate DP grants that agent. Exactly zero in the
    /// degenerate cases (`bound = 0` or no items).
    pub fn tolerance(&self, agent: usize) -> Rational {
        if self.step_count == 0 || self.bounds[agent].is_zero() {
            return Rational::zero();
        }
        &self.bounds[agent] / integer(self.step_count as i64)
    }

    /// Items whose values stay exact for `agent` (the agent's removing
    /// items), sorted.
    pub fn exact_items(&self, agent: usize) -> Vec<usize> {
        self.matrix.removal_items(agent)
    }

    /// Items subject to rounding for `agent`: the complement of
    /// [`RoundedProfile::exact_items`], sorted.
    pub fn rounded_items(&self, agent: usize) -> Vec<usize> {
        let exact = self.exact_items(agent);
        (0..self.base.items())
            .filter(|g| exact.binary_search(g).is_err())
            .collect()
    }
}

/// Builds the rounded valuation profile for a valid removing matrix: for
/// each agent, values of the matrix-designated items are kept exact and all
/// other values are rounded up to the next multiple of `bound / r` (zeros
/// stay zero). When an agent's roundable values are all zero the rounding is
/// a no-op for that agent and its tolerance is zero.
pub fn round_valuations(inst: &Instance, matrix: &RemovingMatrix) -> Result<RoundedProfile> {
    let n = inst.agents();
    let m = inst.items();
    if matrix.agents() != n {
        return Err(Error::InvalidRemovingMatrix {
            reason: format!("matrix covers {} agents, instance has {n}", matrix.agents()),
        });
    }
    if let Some(item) = matrix.max_item() {
        if item >= m {
            return Err(Error::InvalidRemovingMatrix {
                reason: format!("matrix designates item {item}, instance has {m} items"),
            });
        }
    }
    if !matrix.is_valid() {
        return Err(Error::InvalidRemovingMatrix {
            reason: "an item is designated with two different owners".to_string(),
        });
    }
    let step_count = (m as u64 * n as u64).pow(2);
    let mut bounds = Vec::with_capacity(n);
    let mut rounded_rows = Vec::with_capacity(n);
    for i in 0..n {
        let exact = matrix.removal_items(i);
        let bound = (0..m)
            .filter(|g| exact.binary_search(g).is_err())
            .map(|g| inst.value(i, g))
            .max()
            .cloned()
            .unwrap_or_else(Rational::zero);
        let row: Vec<Rational> = (0..m)
            .map(|g| {
                let v = inst.value(i, g);
                if bound.is_zero() || exact.binary_search(&g).is_ok() {
                    v.clone()
                } else {
                    round_up_to_step(v, &bound, step_count)
                }
            })
            .collect();
        bounds.push(bound);
        rounded_rows.push(row);
    }
    let rounded = match inst.item_labels() {
        Some(labels) => Instance::with_labels(rounded_rows, labels.to_vec()),
        None => Instance::new(rounded_rows),
    }
    .expect("rounding preserves shape and non-negativity");
    Ok(RoundedProfile {
        base: inst.clone(),
        rounded,
        matrix: matrix.clone(),
        step_count,
        bounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn rounds_two_fifths_to_fifteen_thirty_sixths() {
        // Three items, two agents: grid resolution 36. 2/5 of the way to a
        // unit bound lands strictly between 14/36 and 15/36, so it snaps up.
        let inst = Instance::new(vec![
            vec![ratio(2, 5), integer(1), integer(0)],
            vec![integer(1), integer(1), integer(1)],
        ])
        .unwrap();
        let profile = round_valuations(&inst, &RemovingMatrix::all_none(2)).unwrap();
        assert_eq!(profile.step_count(), 36);
        assert_eq!(profile.bound(0), &integer(1));
        assert_eq!(profile.rounded().value(0, 0), &ratio(15, 36));
        // Boundary cases: an exact multiple stays put, zero stays zero.
        assert_eq!(profile.rounded().value(0, 1), &integer(1));
        assert_eq!(profile.rounded().value(0, 2), &integer(0));
    }

    #[test]
    fn designated_items_keep_exact_values() {
        let inst = Instance::new(vec![
            vec![ratio(2, 5), integer(1)],
            vec![ratio(3, 7), integer(1)],
        ])
        .unwrap();
        let mut matrix = RemovingMatrix::all_none(2);
        matrix.set_entry(0, 1, Some((0, 0))).unwrap();
        let profile = round_valuations(&inst, &matrix).unwrap();
        // Item 0 is agent 0's removing item: exact for agent 0, rounded for
        // agent 1 (whose row does not designate it).
        assert_eq!(profile.rounded().value(0, 0), &ratio(2, 5));
        assert_ne!(profile.rounded().value(1, 0), &ratio(3, 7));
        assert_eq!(profile.exact_items(0), vec![0]);
        assert_eq!(profile.rounded_items(0), vec![1]);
    }

    #[test]
    fn all_zero_roundable_values_make_rounding_a_no_op() {
        // A single agent has no ordered pairs, so nothing stays exact and
        // the bound is the global maximum.
        let inst = Instance::new(vec![vec![integer(5), integer(0)]]).unwrap();
        let profile = round_valuations(&inst, &RemovingMatrix::all_none(1)).unwrap();
        assert_eq!(profile.bound(0), &integer(5));
        // Degenerate bound: every roundable value zero makes rounding the
        // identity and the tolerance exactly zero.
        let zero = Instance::new(vec![vec![integer(0), integer(0)]]).unwrap();
        let zero_profile = round_valuations(&zero, &RemovingMatrix::all_none(1)).unwrap();
        assert_eq!(zero_profile.bound(0), &integer(0));
        assert_eq!(zero_profile.tolerance(0), integer(0));
        assert_eq!(zero_profile.rounded(), &zero);
    }

    #[test]
    fn mismatched_matrices_are_rejected() {
        let inst = Instance::new(vec![vec![integer(1)]; 2]).unwrap();
        let wrong_agents = RemovingMatrix::all_none(3);
        assert!(matches!(
            round_valuations(&inst, &wrong_agents),
            Err(Error::InvalidRemovingMatrix { .. })
        ));
        let mut out_of_range = RemovingMatrix::all_none(2);
        out_of_range.set_entry(0, 1, Some((5, 0))).unwrap();
        assert!(matches!(
            round_valuations(&inst, &out_of_range),
            Err(Error::InvalidRemovingMatrix { .. })
        ));
        let mut conflicted = RemovingMatrix::all_none(2);
        conflicted.set_entry(0, 1, Some((0, 0))).unwrap();
        conflicted.set_entry(1, 0, Some((0, 1))).unwrap();
        assert!(matches!(
            round_valuations(&inst, &conflicted),
            Err(Error::InvalidRemovingMatrix { .. })
        ));
    }

    #[test]
    fn rounding_contract_holds_on_a_dense_grid_of_values() {
        // v <= v_rounded <= v + bound/steps, and the result is an exact
        // multiple of the step.
        let bound = integer(1);
        for num in 0..=40 {
            let v = ratio(num, 40);
            let rounded = round_up_to_step(&v, &bound, 36);
            assert!(rounded >= v);
            assert!(rounded <= &v + ratio(1, 36));
            let quotient = &rounded / ratio(1, 36);
            assert!(quotient.is_integer());
        }
    }
}
