//! Human-readable views over the tally enumeration. Documentation output
//! only; nothing here feeds back into synthesis.

use std::fmt::Write;

use super::{ErrorProfile, VoteTally, VoterTable};

/// Pattern bits, each padded to the width of its `yi` column header.
fn pattern_bits(pattern: u32, k: u32) -> String {
    (1..=k)
        .map(|i| {
            let bit = (pattern >> (k - i)) & 1;
            let width = i.to_string().len() + 1;
            format!("{bit:<width$}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn header(k: u32, c0: &str, c1: &str) -> String {
    let mut s = (1..=k)
        .map(|i| format!("y{i}"))
        .collect::<Vec<_>>()
        .join(" ");
    let _ = write!(s, " | {c0:<10} {c1:<10} | y");
    s
}

fn symbolic(symbol: &str, votes: u32) -> String {
    match votes {
        0 => "inf".to_owned(),
        1 => symbol.to_owned(),
        v => format!("{symbol}/{v}"),
    }
}

/// The generic table for `k` replicas: symbolic costs `E0/V0`, `E1/V1`
/// and `X` wherever the decision depends on the function.
pub fn render_generic_table(replicas: u32) -> String {
    let mut out = header(replicas, "C0", "C1");
    out.push('\n');
    for p in 0..1u32 << replicas {
        let t = VoteTally::of_pattern(p, replicas);
        let y = match (t.v0(), t.v1()) {
            (_, 0) => "0",
            (0, _) => "1",
            _ => "X",
        };
        let _ = writeln!(
            out,
            "{} | {:<10} {:<10} | {y}",
            pattern_bits(p, replicas),
            symbolic("E0", t.v0()),
            symbolic("E1", t.v1()),
        );
    }
    out
}

fn concrete(count: u64, rows: u64, votes: u32) -> String {
    if votes == 0 {
        "inf".to_owned()
    } else {
        format!("{count}/{}", rows * u64::from(votes))
    }
}

/// Costs and decisions of a synthesized voter, with costs written over
/// `2^n * V` unreduced (`2/48`, `14/32`, ...).
pub fn render_cost_table(profile: &ErrorProfile, voter: &VoterTable) -> String {
    let k = voter.replicas();
    let rows = profile.rows();
    let mut out = header(k, "C0", "C1");
    out.push('\n');
    for p in 0..1u32 << k {
        let t = VoteTally::of_pattern(p, k);
        let _ = writeln!(
            out,
            "{} | {:<10} {:<10} | {}",
            pattern_bits(p, k),
            concrete(profile.n1(), rows, t.v0()),
            concrete(profile.n0(), rows, t.v1()),
            u8::from(voter.decide_pattern(p)),
        );
    }
    out
}

/// Plain decision table, one row per replica pattern.
pub fn render_decision_table(voter: &VoterTable) -> String {
    let k = voter.replicas();
    let mut out = (1..=k)
        .map(|i| format!("y{i}"))
        .collect::<Vec<_>>()
        .join(" ");
    out.push_str(" | y\n");
    for p in 0..1u32 << k {
        let _ = writeln!(
            out,
            "{} | {}",
            pattern_bits(p, k),
            u8::from(voter.decide_pattern(p))
        );
    }
    out
}
