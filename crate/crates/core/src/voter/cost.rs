use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;

use super::{ErrorProfile, VoterError};

/// Replica vote counts `(V0, V1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VoteTally {
    v0: u32,
    v1: u32,
}

impl VoteTally {
    pub fn new(v0: u32, v1: u32) -> Result<Self, VoterError> {
        if v0 + v1 == 0 {
            return Err(VoterError::EmptyTally);
        }
        Ok(Self { v0, v1 })
    }

    /// Tally of a `k`-bit replica pattern.
    pub fn of_pattern(pattern: u32, k: u32) -> Self {
        debug_assert!(k >= 1 && k <= 32);
        let v1 = pattern.count_ones();
        Self { v0: k - v1, v1 }
    }

    pub fn v0(&self) -> u32 {
        self.v0
    }

    pub fn v1(&self) -> u32 {
        self.v1
    }

    pub fn replicas(&self) -> u32 {
        self.v0 + self.v1
    }
}

/// A symbol cost: an exact rational, or infinity when no replica voted
/// for the symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cost {
    Finite(Ratio<u64>),
    Infinite,
}

impl Ord for Cost {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Cost::Finite(a), Cost::Finite(b)) => a.cmp(b),
            (Cost::Finite(_), Cost::Infinite) => Ordering::Less,
            (Cost::Infinite, Cost::Finite(_)) => Ordering::Greater,
            (Cost::Infinite, Cost::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Cost {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Finite(r) => write!(f, "{r}"),
            Cost::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CostPair {
    pub c0: Cost,
    pub c1: Cost,
}

fn symbol_cost(error: Ratio<u64>, votes: u32) -> Cost {
    if votes == 0 {
        Cost::Infinite
    } else {
        Cost::Finite(error / u64::from(votes))
    }
}

/// `C0 = E0/V0`, `C1 = E1/V1`.
pub fn cost(profile: &ErrorProfile, tally: VoteTally) -> CostPair {
    CostPair {
        c0: symbol_cost(profile.e0(), tally.v0),
        c1: symbol_cost(profile.e1(), tally.v1),
    }
}

/// Outputs 1 iff `C1 <= C0`.
pub fn decide(costs: &CostPair) -> bool {
    debug_assert!(
        !(costs.c0 == Cost::Infinite && costs.c1 == Cost::Infinite),
        "both costs infinite"
    );
    costs.c1 <= costs.c0
}

/// Same decision as `decide(&cost(profile, tally))`, by integer
/// cross-multiplication: `C1 <= C0` iff `N0 * V0 <= N1 * V1`.
pub fn decide_tally(profile: &ErrorProfile, tally: VoteTally) -> bool {
    match (tally.v0, tally.v1) {
        (_, 0) => false,
        (0, _) => true,
        (v0, v1) => profile.n0() * u64::from(v0) <= profile.n1() * u64::from(v1),
    }
}
