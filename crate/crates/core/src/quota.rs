//! Cardinality quotas: per-agent bounds on bundle sizes.

use crate::allocation::Allocation;
use crate::error::{Error, Result};

/// Per-agent bounds `lower[i] <= |A_i| <= upper[i]` on bundle sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quota {
    lower: Vec<usize>,
    upper: Vec<usize>,
}

impl Quota {
    /// Builds a quota from per-agent lower and upper bounds. The lists must
    /// have equal length and satisfy `lower[i] <= upper[i]`.
    pub fn new(lower: Vec<usize>, upper: Vec<usize>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::QuotaLength {
                lower: lower.len(),
                upper: upper.len(),
            });
        }
        for (i, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            if lo > hi {
                return Err(Error::QuotaBounds {
                    agent: i,
                    lower: lo,
                    upper: hi,
                });
            }
        }
        Ok(Quota { lower, upper })
    }

    /// Exact sizes: every agent must receive exactly `sizes[i]` items.
    pub fn exact(sizes: Vec<usize>) -> Self {
        Quota {
            lower: sizes.clone(),
            upper: sizes,
        }
    }

    /// No constraint: each of `agents` agents may hold 0..=`items` items.
    pub fn unconstrained(agents: usize, items: usize) -> Self {
        Quota {
            lower: vec![0; agents],
            upper: vec![items; agents],
        }
    }

    /// Number of agents the quota covers.
    pub fn agents(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self, agent: usize) -> usize {
        self.lower[agent]
    }

    pub fn upper(&self, agent: usize) -> usize {
        self.upper[agent]
    }

    pub fn lower_bounds(&self) -> &[usize] {
        &self.lower
    }

    pub fn upper_bounds(&self) -> &[usize] {
        &self.upper
    }

    /// True when every agent's bounds coincide.
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    /// True when some complete allocation of `items` items can satisfy the
    /// quota: `sum(lower) <= items <= sum(upper)`.
    pub fn feasible_for(&self, items: usize) -> bool {
        let min: usize = self.lower.iter().sum();
        let max: usize = self.upper.iter().sum();
        min <= items && items <= max
    }

    /// True when the given bundle sizes satisfy every bound.
    pub fn admits_sizes(&self, sizes: &[usize]) -> bool {
        sizes.len() == self.agents()
            && sizes
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&s, (&lo, &hi))| lo <= s && s <= hi)
    }
}

/// Outcome of a quota check: satisfied, or the first agent (in index order)
/// whose bundle size violates its bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotaVerdict {
    Satisfied,
    Violated { agent: usize, size: usize },
}

impl QuotaVerdict {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, QuotaVerdict::Satisfied)
    }
}

/// Checks a complete allocation against a quota. Errors if the allocation is
/// incomplete or assigns an item to an agent the quota does not cover.
pub fn satisfies_quota(alloc: &Allocation, quota: &Quota) -> Result<QuotaVerdict> {
    let sizes = alloc.bundle_sizes(quota.agents())?;
    for (i, &size) in sizes.iter().enumerate() {
        if size < quota.lower(i) || size > quota.upper(i) {
            return Ok(QuotaVerdict::Violated { agent: i, size });
        }
    }
    Ok(QuotaVerdict::Satisfied)
}
