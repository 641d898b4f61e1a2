use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use pvote_core::analytic::{system_availability, SystemModel};
use pvote_core::logic::{parse_expression, parse_table_file, TruthTable};
use pvote_core::sim::{run_sweep, SimConfig};
use pvote_core::voter::{
    cost, decide, default_names, emit_minterm_sop, emit_threshold_sop, error_profile,
    synthesize_majority, synthesize_probabilistic, ErrorProfile, VoteTally, VoterTable,
};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

// ---------------------------------------------------------------------------
// Naive expression model
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
enum Ast {
    Lit(bool),
    Var(usize),
    Not(Box<Ast>),
    And(Box<Ast>, Box<Ast>),
    Or(Box<Ast>, Box<Ast>),
}

fn naive_eval(ast: &Ast, x: &[bool]) -> bool {
    match ast {
        Ast::Lit(b) => *b,
        Ast::Var(i) => x[*i],
        Ast::Not(a) => !naive_eval(a, x),
        Ast::And(a, b) => naive_eval(a, x) && naive_eval(b, x),
        Ast::Or(a, b) => naive_eval(a, x) || naive_eval(b, x),
    }
}

/// Fully parenthesized rendering; `style` picks operator spellings.
fn render(ast: &Ast, names: &[String], style: usize) -> String {
    let and = ["&", "*", "."][style % 3];
    let or = ["+", "|"][style % 2];
    let not = ["!", "~"][style % 2];
    match ast {
        Ast::Lit(b) => if *b { "1" } else { "0" }.to_owned(),
        Ast::Var(i) => names[*i].clone(),
        Ast::Not(a) => format!("{not}{}", render(a, names, style + 1)),
        Ast::And(a, b) => format!(
            "({} {and} {})",
            render(a, names, style + 1),
            render(b, names, style + 2)
        ),
        Ast::Or(a, b) => format!(
            "({}{or}{})",
            render(a, names, style + 2),
            render(b, names, style + 1)
        ),
    }
}

fn ast_strategy(vars: usize) -> impl Strategy<Value = Ast> {
    let leaf = prop_oneof![
        1 => any::<bool>().prop_map(Ast::Lit),
        4 => (0..vars).prop_map(Ast::Var),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Ast::Not(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ast::And(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Ast::Or(Box::new(a), Box::new(b))),
        ]
    })
}

fn table_strategy() -> impl Strategy<Value = TruthTable> {
    (1usize..=6).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), 1 << n).prop_map(move |outputs| {
            let names = (0..n).map(|i| format!("x{i}")).collect();
            TruthTable::new(names, outputs).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn parser_agrees_with_naive_evaluator(ast in ast_strategy(5), style in 0usize..6) {
        let names: Vec<String> = ["a", "b", "c", "d", "e"].iter().map(|s| s.to_string()).collect();
        let text = render(&ast, &names, style);
        let tt = parse_expression(&text, Some(&names)).unwrap();
        for row in 0..32usize {
            let x: Vec<bool> = (0..5).map(|j| (row >> (4 - j)) & 1 == 1).collect();
            prop_assert_eq!(tt.eval(&x), naive_eval(&ast, &x), "{} at row {}", text, row);
        }
    }

    #[test]
    fn tt_serialization_round_trips(tt in table_strategy()) {
        let text = tt.to_tt_string();
        prop_assert_eq!(parse_table_file(text.as_bytes()).unwrap(), tt.clone());
        let crlf = text.replace('\n', "\r\n");
        prop_assert_eq!(parse_table_file(crlf.as_bytes()).unwrap(), tt);
    }

    #[test]
    fn symbol_counts_cover_all_rows(tt in table_strategy()) {
        let (n0, n1) = tt.symbol_counts();
        prop_assert_eq!(n0 + n1, 1u64 << tt.arity());
        let p = error_profile(&tt);
        prop_assert_eq!(p.e0() + p.e1(), num_rational::Ratio::from_integer(1));
    }

    #[test]
    fn voters_are_symmetric_monotone_and_unanimous(tt in table_strategy(), k in 1u32..=7) {
        let v = synthesize_probabilistic(&error_profile(&tt), k).unwrap();
        let d = v.decisions();
        for p in 0..1u32 << k {
            for q in 0..1u32 << k {
                if p.count_ones() == q.count_ones() {
                    prop_assert_eq!(d[p as usize], d[q as usize]);
                }
                if p & q == p {
                    prop_assert!(d[p as usize] <= d[q as usize]);
                }
            }
        }
        prop_assert!(!v.apply(&vec![false; k as usize]));
        prop_assert!(v.apply(&vec![true; k as usize]));
    }

    #[test]
    fn sop_forms_round_trip(tt in table_strategy(), k in 1u32..=7) {
        let v = synthesize_probabilistic(&error_profile(&tt), k).unwrap();
        let names = default_names(k);
        let minterm = parse_expression(&emit_minterm_sop(&v, &names).unwrap(), Some(&names)).unwrap();
        let (text, metrics) = emit_threshold_sop(&v, &names).unwrap();
        let threshold = parse_expression(&text, Some(&names)).unwrap();
        prop_assert_eq!(minterm.outputs(), v.decisions());
        prop_assert_eq!(threshold.outputs(), v.decisions());
        prop_assert_eq!(metrics.literals, metrics.terms * v.threshold() as usize);
    }

    #[test]
    fn availability_is_a_probability(
        n1 in 0u64..=16, k in 1u32..=9, num in 0i64..=100,
    ) {
        let profile = ErrorProfile::from_counts(4, 16 - n1, n1).unwrap();
        let voter = synthesize_probabilistic(&profile, k).unwrap();
        let a = system_availability(&SystemModel { profile: &profile, voter: &voter, p: q(num, 100) });
        prop_assert!(a >= BigRational::zero() && a <= BigRational::one());
    }
}

// ---------------------------------------------------------------------------
// Exhaustive voter properties
// ---------------------------------------------------------------------------

fn all_profiles(max_arity: u32) -> impl Iterator<Item = ErrorProfile> {
    (0..=max_arity).flat_map(|n| {
        let rows = 1u64 << n;
        (0..=rows).map(move |n1| ErrorProfile::from_counts(n, rows - n1, n1).unwrap())
    })
}

#[test]
fn rational_decisions_form_threshold_functions() {
    // decisions recomputed through exact costs, independent of synthesis
    for profile in all_profiles(4) {
        for k in 1..=7u32 {
            let level: Vec<bool> = (0..=k)
                .map(|v1| decide(&cost(&profile, VoteTally::new(k - v1, v1).unwrap())))
                .collect();
            let t = level.iter().position(|&d| d).expect("all-ones decides 1");
            assert!(level[..t].iter().all(|&d| !d));
            assert!(level[t..].iter().all(|&d| d));
            let v = synthesize_probabilistic(&profile, k).unwrap();
            assert_eq!(v.threshold() as usize, t, "{profile:?} k={k}");
        }
    }
}

#[test]
fn balanced_profiles_reduce_to_majority() {
    for n in 1..=6u32 {
        let half = 1u64 << (n - 1);
        let profile = ErrorProfile::from_counts(n, half, half).unwrap();
        for k in (1..=15).step_by(2) {
            assert_eq!(
                synthesize_probabilistic(&profile, k).unwrap(),
                synthesize_majority(k, None).unwrap()
            );
        }
    }
}

#[test]
fn degenerate_profiles() {
    for n in 1..=4u32 {
        let rows = 1u64 << n;
        let never_one = ErrorProfile::from_counts(n, rows, 0).unwrap();
        let always_one = ErrorProfile::from_counts(n, 0, rows).unwrap();
        for k in 1..=16 {
            assert_eq!(
                synthesize_probabilistic(&never_one, k).unwrap().threshold(),
                k
            );
            assert_eq!(
                synthesize_probabilistic(&always_one, k)
                    .unwrap()
                    .threshold(),
                1
            );
        }
    }
}

// ---------------------------------------------------------------------------
// Availability oracle
// ---------------------------------------------------------------------------

/// Sums over every flip mask and both correct symbols, reading the voter's
/// decision table directly.
fn enumerate_availability(
    profile: &ErrorProfile,
    voter: &VoterTable,
    p: &BigRational,
) -> BigRational {
    let k = voter.replicas();
    let all = (1u32 << k) - 1;
    let rows = BigRational::from_integer(BigInt::from(profile.rows()));
    // probability of one specific mask with j flipped wires
    let mask_prob: Vec<BigRational> = (0..=k)
        .map(|j| {
            let mut prob = BigRational::one();
            for b in 0..k {
                prob *= if b < j {
                    p.clone()
                } else {
                    BigRational::one() - p
                };
            }
            prob
        })
        .collect();
    let mut total = BigRational::zero();
    for (symbol, count) in [(false, profile.n0()), (true, profile.n1())] {
        let weight = BigRational::from_integer(BigInt::from(count)) / &rows;
        for mask in 0..=all {
            let prob = &mask_prob[mask.count_ones() as usize];
            let pattern = if symbol { all ^ mask } else { mask };
            if voter.decide_pattern(pattern) == symbol {
                total += &weight * prob;
            }
        }
    }
    total
}

#[test]
fn closed_form_matches_enumeration() {
    let ps = [
        q(0, 1),
        q(1, 8),
        q(1, 4),
        q(3, 10),
        q(1, 2),
        q(7, 10),
        q(1, 1),
    ];
    for profile in all_profiles(3) {
        for k in 1..=7u32 {
            let mut voters = vec![synthesize_probabilistic(&profile, k).unwrap()];
            voters.extend((1..=k).map(|t| VoterTable::threshold_voter(k, t).unwrap()));
            for voter in &voters {
                for p in &ps {
                    let model = SystemModel {
                        profile: &profile,
                        voter,
                        p: p.clone(),
                    };
                    assert_eq!(
                        system_availability(&model),
                        enumerate_availability(&profile, voter, p),
                        "{profile:?} k={k} t={} p={p}",
                        voter.threshold()
                    );
                }
            }
        }
    }
}

#[test]
fn total_inversion_defeats_every_voter() {
    for profile in all_profiles(4) {
        for k in 1..=9 {
            let voter = synthesize_probabilistic(&profile, k).unwrap();
            let model = SystemModel {
                profile: &profile,
                voter: &voter,
                p: q(1, 1),
            };
            assert!(system_availability(&model).is_zero());
            let model = SystemModel {
                profile: &profile,
                voter: &voter,
                p: q(0, 1),
            };
            assert!(system_availability(&model).is_one());
        }
    }
}

#[test]
fn majority_strictly_decreasing_up_to_half() {
    let profile = ErrorProfile::from_counts(4, 14, 2).unwrap();
    for k in (1..=9).step_by(2) {
        let voter = synthesize_majority(k, None).unwrap();
        let curve: Vec<BigRational> = (0..=50)
            .map(|i| {
                system_availability(&SystemModel {
                    profile: &profile,
                    voter: &voter,
                    p: q(i, 100),
                })
            })
            .collect();
        assert!(curve.windows(2).all(|w| w[0] > w[1]), "k={k}");
    }
}

#[test]
fn majority_is_weight_independent() {
    let grid: Vec<BigRational> = (0..=20).map(|i| q(i, 20)).collect();
    for k in (1..=9).step_by(2) {
        let voter = synthesize_majority(k, None).unwrap();
        for p in &grid {
            let reference = {
                let profile = ErrorProfile::from_counts(3, 4, 4).unwrap();
                system_availability(&SystemModel {
                    profile: &profile,
                    voter: &voter,
                    p: p.clone(),
                })
            };
            for n1 in 0..=8 {
                let profile = ErrorProfile::from_counts(3, 8 - n1, n1).unwrap();
                let a = system_availability(&SystemModel {
                    profile: &profile,
                    voter: &voter,
                    p: p.clone(),
                });
                assert_eq!(a, reference);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Simulation
// ---------------------------------------------------------------------------

#[test]
fn voters_see_identical_patterns() {
    // two copies of one voter under different labels must agree on every cell
    let f = TruthTable::from_minterms(&["a", "b", "c", "d"], &[12, 14]).unwrap();
    let v = synthesize_probabilistic(&error_profile(&f), 3).unwrap();
    let cfg = SimConfig::new(
        f,
        3,
        vec![("first".into(), v.clone()), ("second".into(), v)],
        vec![0.05, 0.2, 0.45],
        3000,
        11,
    )
    .unwrap();
    for rec in run_sweep(&cfg) {
        assert_eq!(rec.voters[0].1, rec.voters[1].1);
    }
}

#[test]
fn adding_a_voter_does_not_perturb_others() {
    let f = TruthTable::from_minterms(&["a", "b", "c", "d"], &[12, 14]).unwrap();
    let prob = synthesize_probabilistic(&error_profile(&f), 3).unwrap();
    let maj = synthesize_majority(3, None).unwrap();
    let pes = vec![0.1, 0.3];
    let one = SimConfig::new(
        f.clone(),
        3,
        vec![("prob".into(), prob.clone())],
        pes.clone(),
        2000,
        8,
    )
    .unwrap();
    let two = SimConfig::new(
        f,
        3,
        vec![("maj".into(), maj), ("prob".into(), prob)],
        pes,
        2000,
        8,
    )
    .unwrap();
    for (a, b) in run_sweep(&one).iter().zip(run_sweep(&two)) {
        assert_eq!(a.module, b.module);
        assert_eq!(a.voter("prob"), b.voter("prob"));
    }
}
