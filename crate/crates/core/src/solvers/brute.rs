//! Exact brute-force oracles over all complete allocations.
//!
//! These enumerate every owner vector in lexicographic order (item 0 most
//! significant) and return the first allocation passing the requested check,
//! so results are deterministic and canonical. They exist as ground truth
//! for the polynomial solvers and for small hardness-gadget experiments;
//! the enumeration size `n^m` is capped up front.

use crate::allocation::Allocation;
use crate::error::{Error, Result};
use crate::fairness::{is_aef, is_aef1};
use crate::instance::Instance;
use crate::quota::{satisfies_quota, Quota};

/// Budget for brute-force search: `n^m` must not exceed `max_allocations`,
/// otherwise the solver refuses to start.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceConfig {
    pub max_allocations: u64,
}

impl Default for BruteForceConfig {
    fn default() -> Self {
        BruteForceConfig {
            max_allocations: 10_000_000,
        }
    }
}

/// First allocation (lexicographic by owner vector) that is exactly average
/// envy-free and satisfies the quota, if one is given.
pub fn brute_force_aef(
    inst: &Instance,
    quota: Option<&Quota>,
    cfg: &BruteForceConfig,
) -> Result<Option<Allocation>> {
    search(inst, quota, cfg, |inst, alloc| {
        Ok(is_aef(inst, alloc)?.holds())
    })
}

/// First allocation (lexicographic by owner vector) that passes the
/// one-removal fairness check and satisfies the quota, if one is given.
pub fn brute_force_aef1(
    inst: &Instance,
    quota: Option<&Quota>,
    cfg: &BruteForceConfig,
) -> Result<Option<Allocation>> {
    search(inst, quota, cfg, |inst, alloc| {
        Ok(is_aef1(inst, alloc)?.holds())
    })
}

fn search(
    inst: &Instance,
    quota: Option<&Quota>,
    cfg: &BruteForceConfig,
    accepts: impl Fn(&Instance, &Allocation) -> Result<bool>,
) -> Result<Option<Allocation>> {
    let n = inst.agents();
    let m = inst.items();
    if let Some(q) = quota {
        if q.agents() != n {
            return Err(Error::QuotaAgents {
                expected: n,
                got: q.agents(),
            });
        }
    }
    ensure_enumerable(n, m, cfg.max_allocations)?;
    let mut owners = vec![0usize; m];
    loop {
        let alloc = Allocation::from_owners(owners.clone());
        let quota_ok = match quota {
            Some(q) => satisfies_quota(&alloc, q)?.is_satisfied(),
            None => true,
        };
        if quota_ok && accepts(inst, &alloc)? {
            return Ok(Some(alloc));
        }
        if !increment(&mut owners, n) {
            return Ok(None);
        }
    }
}

/// Advances the owner vector to its lexicographic successor (last item is
/// the least significant digit); false when the enumeration is exhausted.
fn increment(owners: &mut [usize], base: usize) -> bool {
    for slot in owners.iter_mut().rev() {
        *slot += 1;
        if *slot < base {
            return true;
        }
        *slot = 0;
    }
    false
}

fn ensure_enumerable(n: usize, m: usize, cap: u64) -> Result<()> {
    let mut total: u64 = 1;
    for _ in 0..m {
        total = match total.checked_mul(n as u64) {
            Some(t) if t <= cap => t,
            _ => {
                return Err(Error::ResourceCap {
                    what: "enumerated allocations",
                    limit: cap,
                })
            }
        };
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quota::Quota;
    use crate::rational::integer;

    fn identical_ones(m: usize) -> Instance {
        Instance::new(vec![vec![integer(1); m]; 2]).unwrap()
    }

    #[test]
    fn single_agent_gets_everything() {
        let inst = Instance::new(vec![vec![integer(2), integer(3), integer(1)]]).unwrap();
        let found = brute_force_aef(&inst, None, &BruteForceConfig::default())
            .unwrap()
            .unwrap();
        assert_eq!(found.owners().unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn forced_empty_bundle_defeats_one_removal_fairness() {
        // Both items must go to agent 0; agent 1 compares an empty bundle
        // against {g}, average 0 vs 1, after every possible removal.
        let inst = identical_ones(2);
        let quota = Quota::exact(vec![2, 0]);
        assert_eq!(
            brute_force_aef1(&inst, Some(&quota), &BruteForceConfig::default()).unwrap(),
            None
        );
        assert_eq!(
            brute_force_aef(&inst, Some(&quota), &BruteForceConfig::default()).unwrap(),
            None
        );
    }

    #[test]
    fn without_quota_a_one_removal_fair_allocation_always_exists() {
        let inst = identical_ones(3);
        let found = brute_force_aef1(&inst, None, &BruteForceConfig::default())
            .unwrap()
            .unwrap();
        assert!(crate::fairness::is_aef1(&inst, &found).unwrap().holds());
    }

    #[test]
    fn returns_the_lexicographically_first_hit() {
        // All-zero values: every allocation is fair, so the all-to-agent-0
        // vector (lexicographically first) must be returned.
        let inst = Instance::new(vec![vec![integer(0); 2]; 2]).unwrap();
        let found = brute_force_aef(&inst, None, &BruteForceConfig::default())
            .unwrap()
            .unwrap();
        assert_eq!(found.owners().unwrap(), vec![0, 0]);
    }

    #[test]
    fn refuses_oversized_enumerations() {
        let inst = identical_ones(2);
        let tiny = BruteForceConfig { max_allocations: 3 };
        assert_eq!(
            brute_force_aef(&inst, None, &tiny),
            Err(Error::ResourceCap {
                what: "enumerated allocations",
                limit: 3
            })
        );
    }
}
