//! Removing matrices: per-pair removal designations for the approximate DP.
//!
//! For every ordered pair of distinct agents `(i, h)`, a removing matrix
//! commits in advance to the single item (if any) that will be deleted when
//! agent `i` compares its bundle with agent `h`'s, and to which of the two
//! bundles that item belongs. A matrix is *valid* when no item is claimed
//! for two different owners — a valid matrix therefore induces a forced
//! pre-allocation of every mentioned item to its designated owner.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Removal designations for all ordered pairs. `entry(i, h)` is `None`
/// (no removal for that pair) or `Some((item, owner))` with
/// `owner ∈ {i, h}` naming whose bundle the item is deleted from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovingMatrix {
    agents: usize,
    entries: Vec<Option<(usize, usize)>>,
}

impl RemovingMatrix {
    /// The matrix that designates no removal for any pair. Always valid.
    pub fn all_none(agents: usize) -> Self {
        RemovingMatrix {
            agents,
            entries: vec![None; agents * agents],
        }
    }

    pub fn agents(&self) -> usize {
        self.agents
    }

    /// Designation for the ordered pair `(i, h)`, `i != h`.
    pub fn entry(&self, i: usize, h: usize) -> Option<(usize, usize)> {
        self.entries[i * self.agents + h]
    }

    /// Sets the designation for pair `(i, h)`. Rejects the diagonal, agent
    /// indices out of range, and owners other than `i` or `h`; item indices
    /// are validated later against a concrete instance.
    pub fn set_entry(
        &mut self,
        i: usize,
        h: usize,
        designation: Option<(usize, usize)>,
    ) -> Result<()> {
        if i == h || i >= self.agents || h >= self.agents {
            return Err(Error::InvalidRemovingMatrix {
                reason: format!("({i}, {h}) is not an ordered pair of distinct agents"),
            });
        }
        if let Some((_, owner)) = designation {
            if owner != i && owner != h {
                return Err(Error::InvalidRemovingMatrix {
                    reason: format!("pair ({i}, {h}) names owner {owner}, expected {i} or {h}"),
                });
            }
        }
        self.entries[i * self.agents + h] = designation;
        Ok(())
    }

    /// Valid iff no item appears in two entries with different owners.
    pub fn is_valid(&self) -> bool {
        self.owner_map().is_some()
    }

    /// Item -> designated owner for every mentioned item, or `None` when two
    /// entries disagree on an item's owner.
    fn owner_map(&self) -> Option<HashMap<usize, usize>> {
        let mut owners = HashMap::new();
        for entry in self.entries.iter().flatten() {
            let (item, owner) = *entry;
            if *owners.entry(item).or_insert(owner) != owner {
                return None;
            }
        }
        Some(owners)
    }

    /// The forced pre-allocation of a valid matrix: every mentioned item
    /// with its designated owner, sorted by item. Errors on invalid
    /// matrices.
    pub fn preallocated(&self) -> Result<Vec<(usize, usize)>> {
        let owners = self
            .owner_map()
            .ok_or_else(|| Error::InvalidRemovingMatrix {
                reason: "an item is designated with two different owners".to_string(),
            })?;
        let mut pairs: Vec<(usize, usize)> = owners.into_iter().collect();
        pairs.sort_unstable();
        Ok(pairs)
    }

    /// Agent `i`'s removing items: every item named in row `i` (the items
    /// deleted in `i`'s own comparisons), deduplicated and sorted. At most
    /// `agents - 1` of them.
    pub fn removal_items(&self, agent: usize) -> Vec<usize> {
        let mut items: Vec<usize> = (0..self.agents)
            .filter_map(|h| self.entries[agent * self.agents + h])
            .map(|(item, _)| item)
            .collect();
        items.sort_unstable();
        items.dedup();
        items
    }

    /// Largest item index mentioned anywhere, if any item is mentioned.
    pub fn max_item(&self) -> Option<usize> {
        self.entries.iter().flatten().map(|&(item, _)| item).max()
    }
}

/// Enumerates every valid removing matrix for `agents >= 2` agents and
/// `items` items, in a fixed deterministic order: the `n(n-1)` ordered pairs
/// are ranked row-major (pair `(0,1)` most significant), and each pair walks
/// its options as no-removal, then item 0 owned by `i`, item 0 owned by `h`,
/// item 1 owned by `i`, and so on. The all-none matrix always comes first.
/// Invalid combinations are skipped, never yielded.
pub fn enumerate_removing_matrices(agents: usize, items: usize) -> RemovingMatrixIter {
    let pairs: Vec<(usize, usize)> = (0..agents)
        .flat_map(|i| (0..agents).filter(move |&h| h != i).map(move |h| (i, h)))
        .collect();
    RemovingMatrixIter {
        agents,
        options: 2 * items + 1,
        odometer: Some(vec![0; pairs.len()]),
        pairs,
    }
}

pub struct RemovingMatrixIter {
    agents: usize,
    options: usize,
    pairs: Vec<(usize, usize)>,
    odometer: Option<Vec<usize>>,
}

impl RemovingMatrixIter {
    fn build(&self, digits: &[usize]) -> RemovingMatrix {
        let mut matrix = RemovingMatrix::all_none(self.agents);
        for (&(i, h), &digit) in self.pairs.iter().zip(digits) {
            let designation = match digit {
                0 => None,
                d => {
                    let item = (d - 1) / 2;
                    let owner = if (d - 1) % 2 == 0 { i } else { h };
                    Some((item, owner))
                }
            };
            matrix
                .set_entry(i, h, designation)
                .expect("enumerated designations are well-formed");
        }
        matrix
    }

    /// Advances the odometer (last pair is the least significant digit);
    /// `false` when the enumeration is exhausted.
    fn advance(digits: &mut [usize], options: usize) -> bool {
        for digit in digits.iter_mut().rev() {
            *digit += 1;
            if *digit < options {
                return true;
            }
            *digit = 0;
        }
        false
    }
}

impl Iterator for RemovingMatrixIter {
    type Item = RemovingMatrix;

    fn next(&mut self) -> Option<RemovingMatrix> {
        loop {
            let matrix = {
                let digits = self.odometer.as_ref()?;
                self.build(digits)
            };
            let digits = self.odometer.as_mut().expect("checked above");
            if !Self::advance(digits, self.options) {
                self.odometer = None;
            }
            if matrix.is_valid() {
                return Some(matrix);
            }
        }
    }
}
