//! Allocations: a (possibly partial) assignment of items to agents.

use crate::error::{Error, Result};
use crate::instance::Instance;

/// An assignment of items to agents. Entry `g` holds the owner of item `g`,
/// or `None` while the item is still unassigned (solvers build allocations
/// incrementally). Bundles are disjoint by construction: an item has at most
/// one owner. A *complete* allocation assigns every item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Allocation {
    owner: Vec<Option<usize>>,
}

impl Allocation {
    /// An allocation of `m` items with nothing assigned yet.
    pub fn unassigned(items: usize) -> Self {
        Allocation {
            owner: vec![None; items],
        }
    }

    /// A complete allocation from an owner vector (`owners[g]` = agent that
    /// holds item `g`). Range checks happen against a concrete instance in
    /// [`validate_allocation`].
    pub fn from_owners(owners: Vec<usize>) -> Self {
        Allocation {
            owner: owners.into_iter().map(Some).collect(),
        }
    }

    /// Number of items this allocation covers.
    pub fn items(&self) -> usize {
        self.owner.len()
    }

    /// Owner of item `g`, or `None` if unassigned.
    pub fn owner(&self, item: usize) -> Option<usize> {
        self.owner[item]
    }

    /// Assigns item `g` to `agent`, replacing any previous owner.
    pub fn assign(&mut self, item: usize, agent: usize) {
        self.owner[item] = Some(agent);
    }

    /// True when every item has an owner.
    pub fn is_complete(&self) -> bool {
        self.owner.iter().all(Option::is_some)
    }

    /// The owner vector of a complete allocation.
    pub fn owners(&self) -> Result<Vec<usize>> {
        self.owner
            .iter()
            .enumerate()
            .map(|(g, o)| o.ok_or(Error::Unassigned { item: g }))
            .collect()
    }

    /// Splits a complete allocation into per-agent bundles (item indices in
    /// increasing order). Requires every owner to be `< agents`.
    pub fn bundles(&self, agents: usize) -> Result<Vec<Vec<usize>>> {
        let mut bundles = vec![Vec::new(); agents];
        for (g, o) in self.owner.iter().enumerate() {
            match *o {
                None => return Err(Error::Unassigned { item: g }),
                Some(i) if i < agents => bundles[i].push(g),
                Some(i) => {
                    return Err(Error::OwnerRange {
                        item: g,
                        owner: i,
                        agents,
                    })
                }
            }
        }
        Ok(bundles)
    }

    /// Bundle sizes `|A_i|` of a complete allocation.
    pub fn bundle_sizes(&self, agents: usize) -> Result<Vec<usize>> {
        Ok(self.bundles(agents)?.iter().map(Vec::len).collect())
    }
}

/// A reason an allocation does not fit an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AllocationViolation {
    /// Allocation covers a different number of items than the instance has.
    Length { expected: usize, got: usize },
    /// An item's owner is not a valid agent index.
    OwnerRange { item: usize, owner: usize },
    /// An item has no owner.
    Unassigned { item: usize },
}

/// Checks an allocation against an instance: right item count, every owner a
/// valid agent, every item assigned. Returns all violations (empty = valid
/// and complete). Disjointness needs no check — each item has one owner slot.
pub fn validate_allocation(inst: &Instance, alloc: &Allocation) -> Vec<AllocationViolation> {
    let mut violations = Vec::new();
    if alloc.items() != inst.items() {
        violations.push(AllocationViolation::Length {
            expected: inst.items(),
            got: alloc.items(),
        });
        return violations;
    }
    for g in 0..alloc.items() {
        match alloc.owner(g) {
            None => violations.push(AllocationViolation::Unassigned { item: g }),
            Some(i) if i >= inst.agents() => {
                violations.push(AllocationViolation::OwnerRange { item: g, owner: i })
            }
            Some(_) => {}
        }
    }
    violations
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::integer;

    fn inst_2x3() -> Instance {
        Instance::new(vec![
            vec![integer(1), integer(2), integer(3)],
            vec![integer(3), integer(2), integer(1)],
        ])
        .unwrap()
    }

    #[test]
    fn builds_bundles_in_item_order() {
        let alloc = Allocation::from_owners(vec![0, 1, 0]);
        assert!(alloc.is_complete());
        assert_eq!(alloc.bundles(2).unwrap(), vec![vec![0, 2], vec![1]]);
        assert_eq!(alloc.bundle_sizes(2).unwrap(), vec![2, 1]);
    }

    #[test]
    fn incremental_assignment() {
        let mut alloc = Allocation::unassigned(2);
        assert!(!alloc.is_complete());
        assert_eq!(alloc.bundles(1), Err(Error::Unassigned { item: 0 }));
        alloc.assign(0, 0);
        alloc.assign(1, 0);
        assert_eq!(alloc.owners().unwrap(), vec![0, 0]);
    }

    #[test]
    fn validation_reports_every_problem() {
        let inst = inst_2x3();
        let ok = Allocation::from_owners(vec![0, 1, 1]);
        assert!(validate_allocation(&inst, &ok).is_empty());

        let short = Allocation::from_owners(vec![0, 1]);
        assert_eq!(
            validate_allocation(&inst, &short),
            vec![AllocationViolation::Length {
                expected: 3,
                got: 2
            }]
        );

        let mut gaps = Allocation::unassigned(3);
        gaps.assign(1, 5);
        assert_eq!(
            validate_allocation(&inst, &gaps),
            vec![
                AllocationViolation::Unassigned { item: 0 },
                AllocationViolation::OwnerRange { item: 1, owner: 5 },
                AllocationViolation::Unassigned { item: 2 },
            ]
        );
    }

    #[test]
    fn zero_item_allocation_is_complete() {
        let alloc = Allocation::unassigned(0);
        assert!(alloc.is_complete());
        assert_eq!(alloc.bundles(2).unwrap(), vec![Vec::<usize>::new(); 2]);
    }
}
