//! Sum-of-products emission for voter tables, in the expression grammar
//! accepted by [`crate::logic::parse_expression`].

use super::{VoterError, VoterTable};

/// Size of a two-level AND/OR form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SopMetrics {
    pub terms: usize,
    pub literals: usize,
}

/// `y1, y2, ..., yk`.
pub fn default_names(replicas: u32) -> Vec<String> {
    (1..=replicas).map(|i| format!("y{i}")).collect()
}

fn check_names<S: AsRef<str>>(voter: &VoterTable, names: &[S]) -> Result<(), VoterError> {
    let k = voter.replicas() as usize;
    let distinct = names
        .iter()
        .enumerate()
        .all(|(i, n)| names[..i].iter().all(|m| m.as_ref() != n.as_ref()));
    let valid = names
        .iter()
        .all(|n| crate::logic::is_valid_name(n.as_ref()));
    if names.len() != k || !distinct || !valid {
        return Err(VoterError::BadNames {
            expected: k,
            found: names.iter().map(|n| n.as_ref().to_owned()).collect(),
        });
    }
    Ok(())
}

fn join_terms(terms: Vec<String>) -> String {
    if terms.is_empty() {
        "0".to_owned()
    } else {
        terms.join(" + ")
    }
}

/// OR of the full minterms of every pattern deciding 1, in ascending
/// pattern order.
pub fn emit_minterm_sop<S: AsRef<str>>(
    voter: &VoterTable,
    names: &[S],
) -> Result<String, VoterError> {
    check_names(voter, names)?;
    let k = voter.replicas();
    let terms = (0..1u32 << k)
        .filter(|&p| voter.decide_pattern(p))
        .map(|p| {
            names
                .iter()
                .enumerate()
                .map(|(i, name)| {
                    let bit = (p >> (k - 1 - i as u32)) & 1 == 1;
                    if bit {
                        name.as_ref().to_owned()
                    } else {
                        format!("!{}", name.as_ref())
                    }
                })
                .collect::<Vec<_>>()
                .join("&")
        })
        .collect();
    Ok(join_terms(terms))
}

/// Minimal SOP of a `t`-of-`k` threshold voter: one positive `t`-literal
/// product per `t`-subset of replicas, subsets in lexicographic order.
pub fn emit_threshold_sop<S: AsRef<str>>(
    voter: &VoterTable,
    names: &[S],
) -> Result<(String, SopMetrics), VoterError> {
    check_names(voter, names)?;
    let k = voter.replicas() as usize;
    let t = voter.threshold() as usize;

    let mut terms = Vec::new();
    let mut subset: Vec<usize> = (0..t).collect();
    loop {
        terms.push(
            subset
                .iter()
                .map(|&i| names[i].as_ref())
                .collect::<Vec<_>>()
                .join("&"),
        );
        // advance to the next t-combination of 0..k
        let Some(i) = (0..t).rev().find(|&i| subset[i] < k - t + i) else {
            break;
        };
        subset[i] += 1;
        for j in i + 1..t {
            subset[j] = subset[j - 1] + 1;
        }
    }
    let metrics = SopMetrics {
        terms: terms.len(),
        literals: terms.len() * t,
    };
    Ok((join_terms(terms), metrics))
}
