use num_rational::Ratio;

use super::VoterError;
use crate::logic::TruthTable;

/// Symbol statistics of a function under uniformly distributed inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ErrorProfile {
    arity: u32,
    n0: u64,
    n1: u64,
}

impl ErrorProfile {
    pub fn from_counts(arity: u32, n0: u64, n1: u64) -> Result<Self, VoterError> {
        let ok = arity <= 63 && n0.checked_add(n1) == Some(1u64 << arity);
        if !ok {
            return Err(VoterError::BadCounts { arity, n0, n1 });
        }
        Ok(Self { arity, n0, n1 })
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    /// Number of rows producing 0.
    pub fn n0(&self) -> u64 {
        self.n0
    }

    /// Number of rows producing 1.
    pub fn n1(&self) -> u64 {
        self.n1
    }

    /// `2^n`, the common denominator of both error probabilities.
    pub fn rows(&self) -> u64 {
        1 << self.arity
    }

    /// Probability that an observed 0 is an error, `N1 / 2^n`.
    pub fn e0(&self) -> Ratio<u64> {
        Ratio::new(self.n1, self.rows())
    }

    /// Probability that an observed 1 is an error, `N0 / 2^n`.
    pub fn e1(&self) -> Ratio<u64> {
        Ratio::new(self.n0, self.rows())
    }

    /// `E0` written over `2^n` without reduction, e.g. `2/16`.
    pub fn e0_display(&self) -> String {
        format!("{}/{}", self.n1, self.rows())
    }

    /// `E1` written over `2^n` without reduction, e.g. `14/16`.
    pub fn e1_display(&self) -> String {
        format!("{}/{}", self.n0, self.rows())
    }
}

pub fn error_profile(tt: &TruthTable) -> ErrorProfile {
    let (n0, n1) = tt.symbol_counts();
    ErrorProfile {
        arity: tt.arity() as u32,
        n0,
        n1,
    }
}
