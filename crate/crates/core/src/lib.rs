//! Exact toolkit for *average envy-freeness* in fair division of
//! indivisible items.
//!
//! Agents value bundles by their **average** item value rather than their
//! sum, which changes the fairness landscape: exact fairness can fail to
//! exist, and deciding existence is hard even for two agents. This crate
//! provides:
//!
//! - an exact-rational data model ([`Instance`], [`Allocation`], [`Quota`]) —
//!   no floating point anywhere;
//! - decision procedures for average envy-freeness, its one-removal
//!   relaxation, and additive/multiplicative approximations ([`fairness`]);
//! - solvers: a linear-time picking scheme that always produces a
//!   one-removal-fair allocation, brute-force oracles, an exact
//!   dynamic program for binary valuations under cardinality quotas, and an
//!   approximate dynamic program for general valuations ([`solvers`]);
//! - instance generators that realize the hardness constructions behind
//!   those solvers, plus seeded random instances ([`reductions`]).
//!
//! Everything is deterministic: fixed enumeration orders, seeded RNGs, and
//! exact arithmetic, so identical inputs always produce identical outputs.

pub mod allocation;
pub mod error;
pub mod fairness;
pub mod instance;
pub mod quota;
pub mod rational;
pub mod reductions;
pub mod solvers;

pub use allocation::{validate_allocation, Allocation, AllocationViolation};
pub use error::{Error, Result};
pub use fairness::{
    is_aef, is_aef1, is_alpha_aef1, is_eps_aef1, max_alpha, normalize, Aef1Verdict, AefVerdict,
    EnvyWitness, MaxAlpha, RemovalCertificate,
};
pub use instance::Instance;
pub use quota::{satisfies_quota, Quota, QuotaVerdict};
pub use rational::{format_rational, integer, parse_rational, ratio, Rational};
pub use reductions::{
    eqcard_witness_allocation, gen_ef_embedding, gen_from_eqcard_partition, gen_from_partition,
    gen_random, partition_witness_allocation, EfEmbedding, EqcardGadget, PartitionGadget,
    PartitionInput, ValueModel,
};
pub use solvers::{
    alpha_guarantee, brute_force_aef, brute_force_aef1, check_state_aef1_binary, dp_approx_quota,
    dp_binary_quota, dp_binary_quota_trace, enumerate_removing_matrices, round_up_to_step,
    round_valuations, solve_aef1_picking, ApproxConfig, ApproxOutcome, ApproxSolution,
    BinaryDpTrace, BruteForceConfig, DpConfig, DpState, RemovingMatrix, RoundedProfile,
};
