//! Fair-division instances: agents, items, and additive valuations.

use crate::error::{Error, Result};
use crate::rational::{integer, Rational};
use num::{One, Zero};

/// A fair-division instance: `n >= 1` agents, `m >= 0` indivisible items,
/// and a non-negative rational value `v[i][g]` for every agent `i` and item
/// `g`. Valuations are additive over bundles.
///
/// Instances are immutable once built; all checkers and solvers take them by
/// shared reference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    values: Vec<Vec<Rational>>,
    item_labels: Option<Vec<String>>,
}

impl Instance {
    /// Builds an instance from an `n x m` value matrix (rows are agents).
    /// Rejects empty agent lists, ragged rows, and negative values.
    pub fn new(values: Vec<Vec<Rational>>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::NoAgents);
        }
        let m = values[0].len();
        for (i, row) in values.iter().enumerate() {
            if row.len() != m {
                return Err(Error::RaggedValues {
                    row: i,
                    expected: m,
                    got: row.len(),
                });
            }
            for (g, v) in row.iter().enumerate() {
                if v < &Rational::zero() {
                    return Err(Error::NegativeValue { agent: i, item: g });
                }
            }
        }
        Ok(Instance {
            values,
            item_labels: None,
        })
    }

    /// As [`Instance::new`], with one display label per item.
    pub fn with_labels(values: Vec<Vec<Rational>>, labels: Vec<String>) -> Result<Self> {
        let mut inst = Instance::new(values)?;
        if labels.len() != inst.items() {
            return Err(Error::LabelCount {
                expected: inst.items(),
                got: labels.len(),
            });
        }
        inst.item_labels = Some(labels);
        Ok(inst)
    }

    /// Number of agents `n`.
    pub fn agents(&self) -> usize {
        self.values.len()
    }

    /// Number of items `m`.
    pub fn items(&self) -> usize {
        self.values[0].len()
    }

    /// Agent `i`'s value for item `g`.
    pub fn value(&self, agent: usize, item: usize) -> &Rational {
        &self.values[agent][item]
    }

    /// The full value matrix, rows are agents.
    pub fn values(&self) -> &[Vec<Rational>] {
        &self.values
    }

    /// Display labels, if any were attached.
    pub fn item_labels(&self) -> Option<&[String]> {
        self.item_labels.as_deref()
    }

    /// True when every value is 0 or 1.
    pub fn is_binary(&self) -> bool {
        self.values
            .iter()
            .flatten()
            .all(|v| v.is_zero() || v.is_one())
    }

    /// Returns the first non-binary entry, if one exists.
    pub fn first_non_binary(&self) -> Option<(usize, usize)> {
        for (i, row) in self.values.iter().enumerate() {
            for (g, v) in row.iter().enumerate() {
                if !v.is_zero() && !v.is_one() {
                    return Some((i, g));
                }
            }
        }
        None
    }

    fn check_indices(&self, agent: usize, items: &[usize]) -> Result<()> {
        if agent >= self.agents() {
            return Err(Error::AgentIndex {
                agent,
                count: self.agents(),
            });
        }
        for &g in items {
            if g >= self.items() {
                return Err(Error::ItemIndex {
                    item: g,
                    count: self.items(),
                });
            }
        }
        Ok(())
    }

    /// Total value `v_i(S)` of a bundle for agent `i`. Items must be distinct
    /// indices into this instance; the empty bundle is worth exactly zero.
    pub fn bundle_value(&self, agent: usize, items: &[usize]) -> Result<Rational> {
        self.check_indices(agent, items)?;
        Ok(items.iter().map(|&g| &self.values[agent][g]).sum())
    }

    /// Average value `u_i(S) = v_i(S) / |S|`, with `u_i(empty) = 0` exactly.
    /// This is the quantity every fairness notion here is defined over.
    pub fn average_value(&self, agent: usize, items: &[usize]) -> Result<Rational> {
        let total = self.bundle_value(agent, items)?;
        if items.is_empty() {
            return Ok(Rational::zero());
        }
        Ok(total / integer(items.len() as i64))
    }
}
