//! Allocation solvers.
//!
//! Four families, trading generality against guarantees:
//!
//! - [`picking::solve_aef1_picking`] — linear-time picking scheme; always
//!   outputs a one-removal-fair allocation, ignores quotas.
//! - [`brute::brute_force_aef`] / [`brute::brute_force_aef1`] — exact
//!   exponential oracles over all `n^m` owner vectors, with a hard
//!   enumeration cap.
//! - [`dp_binary::dp_binary_quota`] — exact dynamic program for *binary*
//!   valuations under cardinality quotas; polynomial for fixed `n`.
//! - [`dp_approx::dp_approx_quota`] — approximate dynamic program for
//!   general valuations under quotas, built on removing matrices
//!   ([`removing`]) and value rounding ([`rounding`]); a NO answer is exact,
//!   a YES answer carries a multiplicative fairness guarantee.
//!
//! Every solver is deterministic: fixed enumeration orders, no randomness.

pub mod brute;
mod dp;
pub mod dp_approx;
pub mod dp_binary;
pub mod picking;
pub mod removing;
pub mod rounding;

pub use brute::{brute_force_aef, brute_force_aef1, BruteForceConfig};
pub use dp_approx::{
    alpha_guarantee, dp_approx_quota, ApproxConfig, ApproxOutcome, ApproxSolution,
};
pub use dp_binary::{
    check_state_aef1_binary, dp_binary_quota, dp_binary_quota_trace, BinaryDpTrace, DpConfig,
    DpState,
};
pub use picking::solve_aef1_picking;
pub use removing::{enumerate_removing_matrices, RemovingMatrix};
pub use rounding::{round_up_to_step, round_valuations, RoundedProfile};
