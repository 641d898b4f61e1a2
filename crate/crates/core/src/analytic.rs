//! Closed-form availability under independent output-wire flips.
//!
//! Every replica's output wire flips with probability `p`, independently.
//! With inputs uniform over `2^n` rows, the correct output is 0 with weight
//! `w0 = N0/2^n` and 1 with weight `w1 = N1/2^n`. A `t`-of-`k` voter is
//! correct on a 0 iff fewer than `t` replicas flipped, and correct on a 1 iff
//! at most `k - t` flipped:
//!
//! ```text
//! A(p) = w0 * P[Bin(k, p) <= t - 1] + w1 * P[Bin(k, p) <= k - t]
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::voter::{
    synthesize_majority, synthesize_probabilistic, ErrorProfile, TiePolicy, VoterError, VoterTable,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalyticError {
    #[error("probability grid is empty")]
    EmptyGrid,
    #[error("probability grid must be ascending with values in [0, 1]")]
    BadGrid,
    #[error(transparent)]
    Voter(#[from] VoterError),
}

/// A replicated function, its voter and the per-wire flip probability.
#[derive(Debug, Clone)]
pub struct SystemModel<'a> {
    pub profile: &'a ErrorProfile,
    pub voter: &'a VoterTable,
    pub p: BigRational,
}

fn ratio(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Symbol weights `(w0, w1)` under uniform inputs.
pub fn symbol_weights(profile: &ErrorProfile) -> (BigRational, BigRational) {
    (
        ratio(profile.n0(), profile.rows()),
        ratio(profile.n1(), profile.rows()),
    )
}

/// Availability of a single unprotected module, `1 - p`.
pub fn module_availability(p: &BigRational) -> BigRational {
    BigRational::one() - p
}

/// `P[Bin(k, p) <= upto]`, exactly. Negative `upto` gives 0.
pub fn binomial_cdf(k: u32, p: &BigRational, upto: i64) -> BigRational {
    if upto < 0 {
        return BigRational::zero();
    }
    let q = BigRational::one() - p;
    let mut sum = BigRational::zero();
    let mut choose = BigInt::one();
    for j in 0..=k.min(upto as u32) {
        if j > 0 {
            choose = choose * BigInt::from(k - j + 1) / BigInt::from(j);
        }
        let term = BigRational::from_integer(choose.clone())
            * num_traits::pow(p.clone(), j as usize)
            * num_traits::pow(q.clone(), (k - j) as usize);
        sum += term;
    }
    sum
}

pub fn system_availability(model: &SystemModel<'_>) -> BigRational {
    let k = model.voter.replicas();
    let t = i64::from(model.voter.threshold());
    let (w0, w1) = symbol_weights(model.profile);
    w0 * binomial_cdf(k, &model.p, t - 1) + w1 * binomial_cdf(k, &model.p, i64::from(k) - t)
}

/// Expected number of wrong system outputs over `trials` trials.
pub fn expected_errors(model: &SystemModel<'_>, trials: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(trials))
        * (BigRational::one() - system_availability(model))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonPoint {
    pub p: BigRational,
    pub module: BigRational,
    pub probabilistic: BigRational,
    pub majority: BigRational,
}

impl ComparisonPoint {
    /// Sign of `probabilistic - majority`.
    pub fn advantage_sign(&self) -> i8 {
        let d = &self.probabilistic - &self.majority;
        if d.is_positive() {
            1
        } else if d.is_negative() {
            -1
        } else {
            0
        }
    }
}

/// Grid interval `(lo, hi)` across which the better voter changes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossover {
    pub lo: BigRational,
    pub hi: BigRational,
    /// Sign of `probabilistic - majority` just above the interval.
    pub sign_after: i8,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub probabilistic: VoterTable,
    pub majority: VoterTable,
    pub points: Vec<ComparisonPoint>,
    pub crossovers: Vec<Crossover>,
}

/// Exact probabilistic vs. majority curves over `grid` and every interval
/// where the sign of their difference changes. Grid points where the curves
/// tie are skipped when looking for sign changes.
pub fn compare_and_crossover(
    profile: &ErrorProfile,
    replicas: u32,
    grid: &[BigRational],
    tie: Option<TiePolicy>,
) -> Result<Comparison, AnalyticError> {
    if grid.is_empty() {
        return Err(AnalyticError::EmptyGrid);
    }
    let in_range = grid
        .iter()
        .all(|p| !p.is_negative() && *p <= BigRational::one());
    let ascending = grid.windows(2).all(|w| w[0] <= w[1]);
    if !in_range || !ascending {
        return Err(AnalyticError::BadGrid);
    }

    let probabilistic = synthesize_probabilistic(profile, replicas)?;
    let majority = synthesize_majority(replicas, tie)?;

    let points: Vec<ComparisonPoint> = grid
        .iter()
        .map(|p| {
            let at = |voter: &VoterTable| {
                system_availability(&SystemModel {
                    profile,
                    voter,
                    p: p.clone(),
                })
            };
            ComparisonPoint {
                p: p.clone(),
                module: module_availability(p),
                probabilistic: at(&probabilistic),
                majority: at(&majority),
            }
        })
        .collect();

    let mut crossovers = Vec::new();
    let mut last: Option<(&BigRational, i8)> = None;
    for pt in &points {
        let sign = pt.advantage_sign();
        if sign == 0 {
            continue;
        }
        if let Some((lo, prev)) = last {
            if prev != sign {
                crossovers.push(Crossover {
                    lo: lo.clone(),
                    hi: pt.p.clone(),
                    sign_after: sign,
                });
            }
        }
        last = Some((&pt.p, sign));
    }

    Ok(Comparison {
        probabilistic,
        majority,
        points,
        crossovers,
    })
}
