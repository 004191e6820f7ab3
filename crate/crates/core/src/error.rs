//! Error type shared by the model, checkers, solvers, and generators.

use crate::rational::Rational;

/// Everything that can go wrong when constructing model objects or running
/// a decision procedure. Solvers report blown resource budgets through
/// [`Error::ResourceCap`] rather than running unbounded.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("agent index {agent} out of range for {count} agents")]
    AgentIndex { agent: usize, count: usize },

    #[error("item index {item} out of range for {count} items")]
    ItemIndex { item: usize, count: usize },

    #[error("instance needs at least one agent")]
    NoAgents,

    #[error("valuation row {row} has {got} entries, expected {expected}")]
    RaggedValues {
        row: usize,
        expected: usize,
        got: usize,
    },

    #[error("negative value for agent {agent}, item {item}")]
    NegativeValue { agent: usize, item: usize },

    #[error("{got} item labels supplied for {expected} items")]
    LabelCount { expected: usize, got: usize },

    #[error("allocation covers {got} items, instance has {expected}")]
    AllocationLength { expected: usize, got: usize },

    #[error("item {item} is assigned to agent {owner}, but only {agents} agents exist")]
    OwnerRange {
        item: usize,
        owner: usize,
        agents: usize,
    },

    #[error("allocation is incomplete: item {item} is unassigned")]
    Unassigned { item: usize },

    #[error("quota bound lists have different lengths ({lower} lower, {upper} upper)")]
    QuotaLength { lower: usize, upper: usize },

    #[error("quota for agent {agent} has lower bound {lower} above upper bound {upper}")]
    QuotaBounds {
        agent: usize,
        lower: usize,
        upper: usize,
    },

    #[error("quota covers {got} agents, instance has {expected}")]
    QuotaAgents { expected: usize, got: usize },

    #[error("epsilon must be non-negative, got {0}")]
    NegativeEpsilon(Rational),

    #[error("alpha must lie in (0, 1], got {0}")]
    AlphaRange(Rational),

    #[error("cannot normalize: every value in the instance is zero")]
    AllZero,

    #[error("valuations are not binary: agent {agent} values item {item} at {value}")]
    NotBinary {
        agent: usize,
        item: usize,
        value: Rational,
    },

    #[error("removing matrix is invalid: {reason}")]
    InvalidRemovingMatrix { reason: String },

    #[error("invalid value model: {0}")]
    ModelParams(String),

    #[error("partition input must not be empty")]
    EmptyPartition,

    #[error("partition element {index} is zero; elements must be positive")]
    ZeroPartitionElement { index: usize },

    #[error("equal-cardinality gadget needs an even number of elements, got {len}")]
    OddPartition { len: usize },

    #[error("gadget needs at least {needed} agents, got {got}")]
    TooFewAgents { needed: usize, got: usize },

    #[error("state describes a prefix of {got} items, expected all {expected}")]
    PrefixLength { expected: usize, got: usize },

    #[error("resource cap exceeded: more than {limit} {what}")]
    ResourceCap { what: &'static str, limit: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
