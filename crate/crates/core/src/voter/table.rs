use super::{decide_tally, ErrorProfile, VoteTally, VoterError, MAX_REPLICAS};

/// How an even-`k` majority voter resolves a `k/2`–`k/2` split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TiePolicy {
    Zero,
    One,
}

/// Decision table of a `k`-replica voter.
///
/// Pattern bit `k-1` (the MSB) is replica `y1`, bit 0 is `yk`. Every table
/// held by this type is a popcount threshold function with threshold `t`
/// in `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VoterTable {
    replicas: u32,
    decisions: Vec<bool>,
    threshold: u32,
}

impl VoterTable {
    /// Wraps a hand-built decision table, rejecting anything that is not a
    /// threshold function passing unanimous votes through.
    pub fn from_decisions(replicas: u32, decisions: Vec<bool>) -> Result<Self, VoterError> {
        check_replicas(replicas)?;
        let threshold = threshold_of(replicas, &decisions)?;
        Ok(Self {
            replicas,
            decisions,
            threshold,
        })
    }

    /// The `t`-of-`k` voter.
    pub fn threshold_voter(replicas: u32, threshold: u32) -> Result<Self, VoterError> {
        check_replicas(replicas)?;
        if threshold == 0 || threshold > replicas {
            return Err(VoterError::NotUnanimous);
        }
        let decisions = (0..1u32 << replicas)
            .map(|p| p.count_ones() >= threshold)
            .collect();
        Ok(Self {
            replicas,
            decisions,
            threshold,
        })
    }

    pub fn replicas(&self) -> u32 {
        self.replicas
    }

    pub fn threshold(&self) -> u32 {
        self.threshold
    }

    pub fn decisions(&self) -> &[bool] {
        &self.decisions
    }

    /// Decision for a packed replica pattern (`y1` in the MSB).
    pub fn decide_pattern(&self, pattern: u32) -> bool {
        self.decisions[pattern as usize]
    }

    /// Voter output for replica outputs `y1..yk`.
    ///
    /// Panics if `replica_outputs.len() != k`.
    pub fn apply(&self, replica_outputs: &[bool]) -> bool {
        assert_eq!(
            replica_outputs.len(),
            self.replicas as usize,
            "replica vector width does not match voter"
        );
        let pattern = replica_outputs
            .iter()
            .fold(0u32, |acc, &b| (acc << 1) | u32::from(b));
        self.decide_pattern(pattern)
    }

    /// Same layout as a `.tt` file over `y1..yk`.
    pub fn to_tt_string(&self) -> String {
        let mut s = super::default_names(self.replicas).join(" ");
        s.push('\n');
        s.extend(self.decisions.iter().map(|&b| if b { '1' } else { '0' }));
        s.push('\n');
        s
    }
}

fn check_replicas(replicas: u32) -> Result<(), VoterError> {
    if replicas == 0 || replicas > MAX_REPLICAS {
        return Err(VoterError::ReplicaCount(replicas));
    }
    Ok(())
}

/// Finds `t` such that `decisions[p] == (popcount(p) >= t)`.
pub fn threshold_of(replicas: u32, decisions: &[bool]) -> Result<u32, VoterError> {
    check_replicas(replicas)?;
    let expected = 1usize << replicas;
    if decisions.len() != expected {
        return Err(VoterError::TableLength {
            expected,
            found: decisions.len(),
        });
    }

    // Representative pattern and decision per popcount level.
    let mut level: Vec<Option<(u32, bool)>> = vec![None; replicas as usize + 1];
    for (pattern, &d) in decisions.iter().enumerate() {
        let pattern = pattern as u32;
        let slot = &mut level[pattern.count_ones() as usize];
        match *slot {
            None => *slot = Some((pattern, d)),
            Some((rep, rd)) if rd != d => return Err(VoterError::NotSymmetric(rep, pattern)),
            Some(_) => {}
        }
    }
    let level: Vec<bool> = level.into_iter().map(|l| l.unwrap().1).collect();

    if level[0] || !level[replicas as usize] {
        return Err(VoterError::NotUnanimous);
    }
    for c in 1..=replicas {
        if level[c as usize - 1] && !level[c as usize] {
            return Err(VoterError::NotMonotone(c - 1, c));
        }
    }
    Ok(level.iter().position(|&d| d).unwrap() as u32)
}

/// Probabilistic voter for `replicas` copies of a function with `profile`.
pub fn synthesize_probabilistic(
    profile: &ErrorProfile,
    replicas: u32,
) -> Result<VoterTable, VoterError> {
    check_replicas(replicas)?;
    let decisions = (0..1u32 << replicas)
        .map(|p| decide_tally(profile, VoteTally::of_pattern(p, replicas)))
        .collect();
    VoterTable::from_decisions(replicas, decisions)
}

/// Conventional bit-by-bit majority voter. Even `replicas` needs a tie policy.
pub fn synthesize_majority(
    replicas: u32,
    tie: Option<TiePolicy>,
) -> Result<VoterTable, VoterError> {
    check_replicas(replicas)?;
    let threshold = if replicas % 2 == 1 {
        (replicas + 1) / 2
    } else {
        match tie {
            Some(TiePolicy::One) => replicas / 2,
            Some(TiePolicy::Zero) => replicas / 2 + 1,
            None => return Err(VoterError::EvenMajority(replicas)),
        }
    };
    VoterTable::threshold_voter(replicas, threshold)
}
