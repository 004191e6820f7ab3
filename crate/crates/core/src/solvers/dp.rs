//! Shared reached-state machinery for the allocation dynamic programs.
//!
//! A state after processing a prefix of items is `(W, H)`: per-agent bundle
//! sizes plus the full cross-valuation matrix (`H[i][h]` = how agent `i`
//! values agent `h`'s bundle so far). Distinct allocation prefixes that land
//! on the same state are merged — that collapse is the whole point of the
//! DP. States are stored sparsely (hash-keyed) in insertion order, one level
//! per prefix length, with a predecessor record per state so any final state
//! can be rebuilt into a concrete allocation.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::quota::Quota;

/// Sparse state key: bundle sizes plus the row-major `n x n` cross matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct StateKey<V> {
    pub sizes: Vec<u32>,
    pub cross: Vec<V>,
}

impl<V: num::Zero + Clone> StateKey<V> {
    pub fn empty(agents: usize) -> Self {
        StateKey {
            sizes: vec![0; agents],
            cross: vec![V::zero(); agents * agents],
        }
    }
}

/// How a state was first reached: predecessor position in the previous
/// level, and the agent who received the item processed at this level.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Step {
    pub prev: usize,
    pub agent: usize,
}

/// All states reached at one prefix length, in first-insertion order.
pub(crate) struct Level<V> {
    pub keys: Vec<StateKey<V>>,
    pub steps: Vec<Option<Step>>,
    index: HashMap<StateKey<V>, usize>,
}

impl<V: Clone + Eq + Hash> Level<V> {
    fn new() -> Self {
        Level {
            keys: Vec::new(),
            steps: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// Records a state unless an equal one is already present (first
    /// predecessor wins, keeping reconstruction deterministic).
    fn insert_if_new(&mut self, key: StateKey<V>, step: Option<Step>) -> bool {
        if self.index.contains_key(&key) {
            return false;
        }
        self.index.insert(key.clone(), self.keys.len());
        self.keys.push(key);
        self.steps.push(step);
        true
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }
}

/// A complete DP run: level `k` holds the states reachable after processing
/// the first `k` items.
pub(crate) struct DpRun<V> {
    pub levels: Vec<Level<V>>,
}

impl<V: Clone + Eq + Hash> DpRun<V> {
    pub fn final_level(&self) -> &Level<V> {
        self.levels.last().expect("a run always has level 0")
    }

    /// Walks predecessor records backward from a final-level position and
    /// returns the receiving agent per processed item, in processing order.
    pub fn reconstruct(&self, final_position: usize) -> Vec<usize> {
        let mut owners = vec![0usize; self.levels.len() - 1];
        let mut pos = final_position;
        for level in (1..self.levels.len()).rev() {
            let step = self.levels[level].steps[pos].expect("non-root states record a step");
            owners[level - 1] = step.agent;
            pos = step.prev;
        }
        owners
    }
}

/// Runs the DP: from `initial`, assign each processed item (whose per-agent
/// values are `item_values[t]`) to every agent in turn, merging equal
/// states. With `prune` set, successors that already overshoot a quota
/// upper bound, or leave more unmet lower bound than remaining items, are
/// dropped — that cannot change which complete states are reachable at the
/// final level with a satisfiable quota. The total number of distinct states
/// across all levels is capped by `max_states`.
pub(crate) fn run_allocation_dp<V>(
    agents: usize,
    item_values: &[Vec<V>],
    initial: StateKey<V>,
    quota: Option<&Quota>,
    prune: bool,
    max_states: u64,
) -> Result<DpRun<V>>
where
    V: Clone + Eq + Hash + for<'a> std::ops::AddAssign<&'a V>,
{
    let total_items = item_values.len();
    let mut state_count: u64 = 1;
    let mut root = Level::new();
    root.insert_if_new(initial, None);
    let mut levels = vec![root];
    for t in 0..total_items {
        let values = &item_values[t];
        debug_assert_eq!(values.len(), agents);
        let remaining_after = (total_items - t - 1) as u64;
        let mut next = Level::new();
        let current = &levels[t];
        for pos in 0..current.keys.len() {
            for agent in 0..agents {
                let key = &current.keys[pos];
                if prune {
                    if let Some(q) = quota {
                        if key.sizes[agent] as usize + 1 > q.upper(agent) {
                            continue;
                        }
                    }
                }
                let mut succ = key.clone();
                succ.sizes[agent] += 1;
                for (j, value) in values.iter().enumerate() {
                    succ.cross[j * agents + agent] += value;
                }
                if prune {
                    if let Some(q) = quota {
                        let unmet: u64 = (0..agents)
                            .map(|i| q.lower(i).saturating_sub(succ.sizes[i] as usize) as u64)
                            .sum();
                        if unmet > remaining_after {
                            continue;
                        }
                    }
                }
                if next.insert_if_new(succ, Some(Step { prev: pos, agent })) {
                    state_count += 1;
                    if state_count > max_states {
                        return Err(Error::ResourceCap {
                            what: "reached states",
                            limit: max_states,
                        });
                    }
                }
            }
        }
        levels.push(next);
    }
    Ok(DpRun { levels })
}
