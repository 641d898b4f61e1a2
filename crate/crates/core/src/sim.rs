//! Monte Carlo fault injection.
//!
//! Each trial draws a uniform input row, computes the golden output, and
//! passes it through `k` replica output wires that each flip independently
//! with probability `pe`. All voters see the same replica pattern, and the
//! unprotected module is represented by replica 1.
//!
//! Draw order per trial is fixed: one 64-bit draw for the input, then one
//! draw per replica in index order.

use rayon::prelude::*;
use thiserror::Error;

use crate::logic::TruthTable;
use crate::rng::{rng_next, SplitMix64, GOLDEN_GAMMA};
use crate::voter::VoterTable;

pub const DEFAULT_TRIALS: u64 = 5000;

/// Default flip-probability grid, spanning 0.001 to 0.5.
pub const DEFAULT_PE_GRID: [&str; 15] = [
    "0.001", "0.002", "0.005", "0.01", "0.02", "0.05", "0.1", "0.15", "0.2", "0.25", "0.3", "0.35",
    "0.4", "0.45", "0.5",
];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("flip probability {0} outside [0, 1]")]
    BadProbability(f64),
    #[error("duplicate voter label `{0}`")]
    DuplicateLabel(String),
    #[error("voter `{label}` has {found} replicas, expected {expected}")]
    ReplicaMismatch {
        label: String,
        expected: u32,
        found: u32,
    },
}

/// Flips `bit` iff a fresh uniform draw is below `pe`. Always consumes
/// exactly one draw.
pub fn inject(bit: bool, pe: f64, rng: &mut SplitMix64) -> bool {
    bit ^ (rng.next_f64() < pe)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialOutcome {
    pub module_correct: bool,
    pub voters_correct: Vec<bool>,
}

/// Runs one trial, writing each voter's correctness into `voters_correct`.
/// Returns the module (replica 1) correctness.
fn trial_into(
    function: &TruthTable,
    replicas: u32,
    voters: &[&VoterTable],
    pe: f64,
    rng: &mut SplitMix64,
    voters_correct: &mut [bool],
) -> bool {
    let mask = (1u64 << function.arity()) - 1;
    let row = (rng.next_u64() & mask) as usize;
    let golden = function.output(row);
    let mut pattern = 0u32;
    for _ in 0..replicas {
        pattern = (pattern << 1) | u32::from(inject(golden, pe, rng));
    }
    for (slot, voter) in voters_correct.iter_mut().zip(voters) {
        *slot = voter.decide_pattern(pattern) == golden;
    }
    let first = (pattern >> (replicas - 1)) & 1 == 1;
    first == golden
}

/// One trial with every voter applied to the same replica pattern.
///
/// All voters must share the same replica count.
pub fn run_trial(
    function: &TruthTable,
    voters: &[&VoterTable],
    pe: f64,
    rng: &mut SplitMix64,
) -> TrialOutcome {
    let replicas = voters.first().map_or(1, |v| v.replicas());
    assert!(
        voters.iter().all(|v| v.replicas() == replicas),
        "voters disagree on replica count"
    );
    let mut voters_correct = vec![false; voters.len()];
    let module_correct = trial_into(function, replicas, voters, pe, rng, &mut voters_correct);
    TrialOutcome {
        module_correct,
        voters_correct,
    }
}

#[derive(Debug, Clone)]
pub struct SimConfig {
    function: TruthTable,
    replicas: u32,
    voters: Vec<(String, VoterTable)>,
    pe_values: Vec<f64>,
    trials: u64,
    master_seed: u64,
}

impl SimConfig {
    pub fn new(
        function: TruthTable,
        replicas: u32,
        voters: Vec<(String, VoterTable)>,
        pe_values: Vec<f64>,
        trials: u64,
        master_seed: u64,
    ) -> Result<Self, SimError> {
        if trials == 0 {
            return Err(SimError::NoTrials);
        }
        if let Some(&pe) = pe_values.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(SimError::BadProbability(pe));
        }
        for (i, (label, voter)) in voters.iter().enumerate() {
            if voters[..i].iter().any(|(l, _)| l == label) {
                return Err(SimError::DuplicateLabel(label.clone()));
            }
            if voter.replicas() != replicas {
                return Err(SimError::ReplicaMismatch {
                    label: label.clone(),
                    expected: replicas,
                    found: voter.replicas(),
                });
            }
        }
        Ok(Self {
            function,
            replicas,
            voters,
            pe_values,
            trials,
            master_seed,
        })
    }

    pub fn function(&self) -> &TruthTable {
        &self.function
    }

    pub fn replicas(&self) -> u32 {
        self.replicas
    }

    pub fn voters(&self) -> &[(String, VoterTable)] {
        &self.voters
    }

    pub fn pe_values(&self) -> &[f64] {
        &self.pe_values
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }
}

/// Correct-output count of one system over a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SystemCount {
    pub correct: u64,
    pub total: u64,
}

impl SystemCount {
    pub fn availability(&self) -> f64 {
        self.correct as f64 / self.total as f64
    }

    pub fn errors(&self) -> u64 {
        self.total - self.correct
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AvailabilityRecord {
    pub pe: f64,
    pub module: SystemCount,
    pub voters: Vec<(String, SystemCount)>,
}

impl AvailabilityRecord {
    pub fn voter(&self, label: &str) -> Option<&SystemCount> {
        self.voters.iter().find(|(l, _)| l == label).map(|(_, c)| c)
    }
}

/// Seed of the independent stream used for the `index`-th grid point.
pub fn cell_seed(master_seed: u64, index: usize) -> u64 {
    let mixed = master_seed ^ (index as u64 + 1).wrapping_mul(GOLDEN_GAMMA);
    rng_next(mixed).1
}

/// Runs `trials` trials at one flip probability on a given stream.
pub fn run_cell(config: &SimConfig, pe: f64, seed: u64) -> AvailabilityRecord {
    let voters: Vec<&VoterTable> = config.voters.iter().map(|(_, v)| v).collect();
    let mut rng = SplitMix64::new(seed);
    let mut flags = vec![false; voters.len()];
    let mut module = 0u64;
    let mut correct = vec![0u64; voters.len()];
    for _ in 0..config.trials {
        if trial_into(
            &config.function,
            config.replicas,
            &voters,
            pe,
            &mut rng,
            &mut flags,
        ) {
            module += 1;
        }
        for (c, &f) in correct.iter_mut().zip(&flags) {
            *c += u64::from(f);
        }
    }
    let count = |correct| SystemCount {
        correct,
        total: config.trials,
    };
    AvailabilityRecord {
        pe,
        module: count(module),
        voters: config
            .voters
            .iter()
            .zip(correct)
            .map(|((label, _), c)| (label.clone(), count(c)))
            .collect(),
    }
}

/// Runs every grid point, in parallel, returning records in grid order.
pub fn run_sweep(config: &SimConfig) -> Vec<AvailabilityRecord> {
    config
        .pe_values
        .par_iter()
        .enumerate()
        .map(|(i, &pe)| run_cell(config, pe, cell_seed(config.master_seed, i)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::voter::{error_profile, synthesize_majority, synthesize_probabilistic};

    fn tmr_fixture() -> TruthTable {
        TruthTable::from_minterms(&["a", "b", "c", "d"], &[12, 14]).unwrap()
    }

    fn config(pe: Vec<f64>, trials: u64, seed: u64) -> SimConfig {
        let f = tmr_fixture();
        let prob = synthesize_probabilistic(&error_profile(&f), 3).unwrap();
        let maj = synthesize_majority(3, None).unwrap();
        SimConfig::new(
            f,
            3,
            vec![("majority".into(), maj), ("prob".into(), prob)],
            pe,
            trials,
            seed,
        )
        .unwrap()
    }

    #[test]
    fn inject_extremes() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..1000 {
            assert!(inject(true, 0.0, &mut rng));
            assert!(!inject(false, 0.0, &mut rng));
            assert!(!inject(true, 1.0, &mut rng));
            assert!(inject(false, 1.0, &mut rng));
        }
    }

    #[test]
    fn inject_consumes_one_draw() {
        let mut a = SplitMix64::new(3);
        let mut b = SplitMix64::new(3);
        inject(true, 0.0, &mut a);
        b.next_u64();
        assert_eq!(a, b);
        inject(false, 1.0, &mut a);
        b.next_u64();
        assert_eq!(a, b);
    }

    #[test]
    fn inject_flip_rate_at_half() {
        let mut rng = SplitMix64::new(0xC0FFEE);
        let n = 100_000;
        let flips = (0..n).filter(|_| inject(false, 0.5, &mut rng)).count();
        let rate = flips as f64 / n as f64;
        assert!((rate - 0.5).abs() <= 3.0 * (0.25f64 / n as f64).sqrt());
    }

    #[test]
    fn trial_draw_order() {
        let cfg = config(vec![0.3], 1, 0);
        let voters: Vec<&VoterTable> = cfg.voters().iter().map(|(_, v)| v).collect();
        let mut rng = SplitMix64::new(42);
        let outcome = run_trial(cfg.function(), &voters, 0.3, &mut rng);

        // replay by hand
        let mut r = SplitMix64::new(42);
        let row = (r.next_u64() & 15) as usize;
        let golden = cfg.function().output(row);
        let ys: Vec<bool> = (0..3).map(|_| golden ^ (r.next_f64() < 0.3)).collect();
        assert_eq!(rng, r);
        assert_eq!(outcome.module_correct, ys[0] == golden);
        assert_eq!(
            outcome.voters_correct,
            voters
                .iter()
                .map(|v| v.apply(&ys) == golden)
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn zero_flip_probability_is_perfect() {
        let recs = run_sweep(&config(vec![0.0], 500, 1));
        assert_eq!(recs[0].module.correct, 500);
        assert!(recs[0].voters.iter().all(|(_, c)| c.correct == 500));
    }

    #[test]
    fn certain_flip_defeats_voters() {
        let recs = run_sweep(&config(vec![1.0], 500, 1));
        assert_eq!(recs[0].module.correct, 0);
        assert!(recs[0].voters.iter().all(|(_, c)| c.correct == 0));
    }

    #[test]
    fn sweep_is_deterministic_and_ordered() {
        let pes = vec![0.5, 0.01, 0.2, 0.0];
        let a = run_sweep(&config(pes.clone(), 2000, 99));
        let b = run_sweep(&config(pes.clone(), 2000, 99));
        assert_eq!(a, b);
        assert_eq!(a.iter().map(|r| r.pe).collect::<Vec<_>>(), pes);
        let c = run_sweep(&config(pes, 2000, 100));
        assert_ne!(a, c);
    }

    #[test]
    fn cell_matches_sweep_stream() {
        let cfg = config(vec![0.1, 0.3], 300, 5);
        let sweep = run_sweep(&cfg);
        assert_eq!(sweep[1], run_cell(&cfg, 0.3, cell_seed(5, 1)));
    }

    #[test]
    fn config_validation() {
        let f = tmr_fixture();
        let maj = synthesize_majority(3, None).unwrap();
        let m5 = synthesize_majority(5, None).unwrap();
        assert_eq!(
            SimConfig::new(f.clone(), 3, vec![], vec![0.1], 0, 0).unwrap_err(),
            SimError::NoTrials
        );
        assert_eq!(
            SimConfig::new(f.clone(), 3, vec![], vec![1.5], 1, 0).unwrap_err(),
            SimError::BadProbability(1.5)
        );
        assert!(matches!(
            SimConfig::new(
                f.clone(),
                3,
                vec![("m".into(), maj.clone()), ("m".into(), maj.clone())],
                vec![0.1],
                1,
                0
            ),
            Err(SimError::DuplicateLabel(_))
        ));
        assert!(matches!(
            SimConfig::new(f, 3, vec![("m".into(), m5)], vec![0.1], 1, 0),
            Err(SimError::ReplicaMismatch { .. })
        ));
    }

    #[test]
    fn bookkeeping() {
        for rec in run_sweep(&config(vec![0.05, 0.25, 0.45], 1000, 3)) {
            for (_, c) in &rec.voters {
                assert_eq!(c.correct + c.errors(), c.total);
                assert_eq!(c.availability(), c.correct as f64 / 1000.0);
            }
        }
    }
}
