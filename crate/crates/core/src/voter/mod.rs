//! Voter synthesis for k-modular redundancy.
//!
//! A probabilistic voter weighs each output symbol by how likely it is to be
//! wrong for the replicated function. With `N0` zero-rows and `N1` one-rows
//! out of `2^n`, an observed 1 is an error with probability `E1 = N0/2^n`
//! and an observed 0 with probability `E0 = N1/2^n`. Each symbol's cost is
//! its error probability divided by the number of replicas voting for it,
//! and the voter outputs the cheaper symbol (1 on a tie).
//!
//! Every voter built here is a popcount threshold function: the decision
//! depends only on how many replicas output 1.

mod cost;
mod profile;
mod render;
mod sop;
mod table;

pub use cost::{cost, decide, decide_tally, Cost, CostPair, VoteTally};
pub use profile::{error_profile, ErrorProfile};
pub use render::{render_cost_table, render_decision_table, render_generic_table};
pub use sop::{default_names, emit_minterm_sop, emit_threshold_sop, SopMetrics};
pub use table::{
    synthesize_majority, synthesize_probabilistic, threshold_of, TiePolicy, VoterTable,
};

use thiserror::Error;

/// Largest supported replica count.
pub const MAX_REPLICAS: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VoterError {
    #[error("replica count {0} outside 1..={MAX_REPLICAS}")]
    ReplicaCount(u32),
    #[error("majority voting over an even number of replicas ({0}) needs a tie policy")]
    EvenMajority(u32),
    #[error("decision table has {found} entries, expected {expected}")]
    TableLength { expected: usize, found: usize },
    #[error("patterns {0:#b} and {1:#b} share a popcount but decide differently")]
    NotSymmetric(u32, u32),
    #[error("decision falls from 1 to 0 between popcount {0} and {1}")]
    NotMonotone(u32, u32),
    #[error("unanimous replicas are not passed through")]
    NotUnanimous,
    #[error("symbol counts {n0} + {n1} do not sum to 2^{arity}")]
    BadCounts { arity: u32, n0: u64, n1: u64 },
    #[error("tally must have at least one replica")]
    EmptyTally,
    #[error("expected {expected} distinct variable names, got {found:?}")]
    BadNames { expected: usize, found: Vec<String> },
}
