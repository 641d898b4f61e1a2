//! Function-aware probabilistic voters for k-modular redundancy.
//!
//! - [`logic`]: truth tables, the expression grammar and `.tt` files.
//! - [`voter`]: error profiles, symbol costs, voter synthesis and SOP output.
//! - [`analytic`]: exact availability under independent output-wire flips.
//! - [`sim`]: seeded Monte Carlo fault injection over a flip-probability grid.

pub mod analytic;
pub mod exact;
pub mod logic;
pub mod rng;
pub mod sim;
pub mod voter;
