//! Exact dynamic program for binary valuations under cardinality quotas.
//!
//! With 0/1 values, whether an allocation is one-removal fair depends only
//! on the bundle sizes `W` and the cross counts `H[i][h]` (how many of
//! agent `h`'s items agent `i` values at 1) — any two bundles with the same
//! size and count look identical to every average comparison. The DP walks
//! items in input order, branches on the receiving agent, merges equal
//! `(W, H)` states, and at the end keeps any state that passes the
//! state-computable fairness test and the quota. For fixed `n` the state
//! space is polynomial in `m`, so this decides exactly what the exponential
//! brute force decides.

use crate::allocation::Allocation;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::quota::Quota;
use crate::solvers::dp::{run_allocation_dp, DpRun, StateKey};

/// Budget and toggles for the dynamic programs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpConfig {
    /// Cap on distinct states per DP run, across all levels.
    pub max_states: u64,
    /// Drop states that can no longer satisfy the quota. Pure optimization:
    /// the verdict is identical with or without it (the final filter checks
    /// the quota anyway), so the unpruned mode serves as a reference for
    /// differential tests.
    pub quota_pruning: bool,
}

impl Default for DpConfig {
    fn default() -> Self {
        DpConfig {
            max_states: 1_000_000,
            quota_pruning: true,
        }
    }
}

/// A reached DP state: bundle sizes, row-major cross-valuation matrix, and
/// the number of items processed so far. For the binary DP the cross values
/// are counts (`cross_values[i*n + h]` = number of items in bundle `h` that
/// agent `i` values at 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpState<V> {
    pub bundle_sizes: Vec<u32>,
    pub cross_values: Vec<V>,
    pub prefix_len: usize,
}

impl<V> DpState<V> {
    pub fn agents(&self) -> usize {
        self.bundle_sizes.len()
    }

    /// Cross value `H[i][h]`: bundle `h` through agent `i`'s valuation.
    pub fn cross(&self, i: usize, h: usize) -> &V {
        &self.cross_values[i * self.agents() + h]
    }
}

/// Average comparison `a/wa >= b/wb` on counts, where a zero-size bundle
/// averages to zero. Exact via cross-multiplication; counts stay far below
/// the `u64` overflow line.
fn avg_ge(a: u32, wa: u32, b: u32, wb: u32) -> bool {
    match (wa, wb) {
        (_, 0) => true,
        (0, _) => b == 0,
        _ => u64::from(a) * u64::from(wb) >= u64::from(b) * u64::from(wa),
    }
}

/// One-removal fairness for the ordered pair `(i, h)` given sizes and
/// counts. Each arm mirrors one class of removable item; an arm is only
/// available when the state proves such an item exists in the bundle.
fn pair_ok(own: u32, w_i: u32, other: u32, w_h: u32) -> bool {
    // No removal needed.
    if avg_ge(own, w_i, other, w_h) {
        return true;
    }
    // Remove a worthless item from the own bundle (exists iff own < w_i).
    if own < w_i && avg_ge(own, w_i - 1, other, w_h) {
        return true;
    }
    // Remove a valued item from the other bundle (exists iff other > 0).
    if other > 0 && avg_ge(own, w_i, other - 1, w_h.saturating_sub(1)) {
        return true;
    }
    // Remove a worthless item from the other bundle (exists iff other < w_h).
    if other < w_h && avg_ge(own, w_i, other, w_h - 1) {
        return true;
    }
    // Remove a valued item from the own bundle (exists iff own > 0).
    if own > 0 && avg_ge(own - 1, w_i.saturating_sub(1), other, w_h) {
        return true;
    }
    false
}

fn sizes_within(sizes: &[u32], quota: &Quota) -> bool {
    sizes
        .iter()
        .enumerate()
        .all(|(i, &w)| quota.lower(i) <= w as usize && w as usize <= quota.upper(i))
}

fn state_is_aef1(sizes: &[u32], cross: &[u32], agents: usize) -> bool {
    for i in 0..agents {
        for h in 0..agents {
            if i != h
                && !pair_ok(
                    cross[i * agents + i],
                    sizes[i],
                    cross[i * agents + h],
                    sizes[h],
                )
            {
                return false;
            }
        }
    }
    true
}

/// Decides from a final state alone whether the allocations reaching it are
/// one-removal fair and fit the quota. Sound and complete for binary
/// valuations: every removal class distinguishable by averages is covered by
/// one arm of the case analysis. The state must describe a full-length
/// prefix (`prefix_len == item_count`).
pub fn check_state_aef1_binary(
    state: &DpState<u32>,
    quota: &Quota,
    item_count: usize,
) -> Result<bool> {
    if state.prefix_len != item_count {
        return Err(Error::PrefixLength {
            expected: item_count,
            got: state.prefix_len,
        });
    }
    if quota.agents() != state.agents() {
        return Err(Error::QuotaAgents {
            expected: state.agents(),
            got: quota.agents(),
        });
    }
    Ok(sizes_within(&state.bundle_sizes, quota)
        && state_is_aef1(&state.bundle_sizes, &state.cross_values, state.agents()))
}

fn binary_item_values(inst: &Instance) -> Result<Vec<Vec<u32>>> {
    if let Some((agent, item)) = inst.first_non_binary() {
        return Err(Error::NotBinary {
            agent,
            item,
            value: inst.value(agent, item).clone(),
        });
    }
    use num::Zero;
    Ok((0..inst.items())
        .map(|g| {
            (0..inst.agents())
                .map(|i| if inst.value(i, g).is_zero() { 0 } else { 1 })
                .collect()
        })
        .collect())
}

fn run(inst: &Instance, quota: &Quota, cfg: &DpConfig) -> Result<DpRun<u32>> {
    if quota.agents() != inst.agents() {
        return Err(Error::QuotaAgents {
            expected: inst.agents(),
            got: quota.agents(),
        });
    }
    let item_values = binary_item_values(inst)?;
    run_allocation_dp(
        inst.agents(),
        &item_values,
        StateKey::empty(inst.agents()),
        Some(quota),
        cfg.quota_pruning,
        cfg.max_states,
    )
}

/// Exact solver: returns an allocation that is one-removal fair and
/// satisfies the quota, or `None` when no such allocation exists. The
/// returned allocation is the one reconstructed from the first acceptable
/// final state in deterministic insertion order.
pub fn dp_binary_quota(
    inst: &Instance,
    quota: &Quota,
    cfg: &DpConfig,
) -> Result<Option<Allocation>> {
    let dp = run(inst, quota, cfg)?;
    let agents = inst.agents();
    let last = dp.final_level();
    for pos in 0..last.len() {
        let key = &last.keys[pos];
        if sizes_within(&key.sizes, quota) && state_is_aef1(&key.sizes, &key.cross, agents) {
            return Ok(Some(Allocation::from_owners(dp.reconstruct(pos))));
        }
    }
    Ok(None)
}

/// A full trace of the binary DP for inspection and differential testing:
/// every reached state per level, plus the solver's answer.
#[derive(Debug, Clone)]
pub struct BinaryDpTrace {
    /// `level_states[k]` = states reached after processing `k` items, in
    /// first-insertion order.
    pub level_states: Vec<Vec<DpState<u32>>>,
    pub result: Option<Allocation>,
}

/// As [`dp_binary_quota`], additionally exposing the reached-state sets.
pub fn dp_binary_quota_trace(
    inst: &Instance,
    quota: &Quota,
    cfg: &DpConfig,
) -> Result<BinaryDpTrace> {
    let dp = run(inst, quota, cfg)?;
    let agents = inst.agents();
    let mut result = None;
    {
        let last = dp.final_level();
        for pos in 0..last.len() {
            let key = &last.keys[pos];
            if sizes_within(&key.sizes, quota) && state_is_aef1(&key.sizes, &key.cross, agents) {
                result = Some(Allocation::from_owners(dp.reconstruct(pos)));
                break;
            }
        }
    }
    let level_states = dp
        .levels
        .iter()
        .enumerate()
        .map(|(k, level)| {
            level
                .keys
                .iter()
                .map(|key| DpState {
                    bundle_sizes: key.sizes.clone(),
                    cross_values: key.cross.clone(),
                    prefix_len: k,
                })
                .collect()
        })
        .collect();
    Ok(BinaryDpTrace {
        level_states,
        result,
    })
}
