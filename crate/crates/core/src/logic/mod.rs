//! Combinational logic functions as explicit truth tables.
//!
//! A [`TruthTable`] over `n` variables stores `2^n` output bits. Row `i`
//! encodes the assignment whose first variable is the most significant bit
//! of `i`, so `a b c d = 1 1 0 0` lives at index 12.

mod expr;
mod ttfile;

pub use expr::{parse_expression, Expr};
pub use ttfile::parse_table_file;

use thiserror::Error;

/// Largest supported input arity.
pub const MAX_ARITY: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("function has {0} variables, at most {MAX_ARITY} are supported")]
    TooManyVariables(usize),
    #[error("function must have at least one variable")]
    NoVariables,
    #[error("invalid variable name `{0}`")]
    InvalidName(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("output string has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("invalid output character {ch:?} at column {column}")]
    InvalidCharacter { ch: char, column: usize },
}

pub(crate) fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn check_variables(variables: &[String]) -> Result<(), LogicError> {
    if variables.is_empty() {
        return Err(LogicError::NoVariables);
    }
    if variables.len() > MAX_ARITY {
        return Err(LogicError::TooManyVariables(variables.len()));
    }
    for (i, name) in variables.iter().enumerate() {
        if !is_valid_name(name) {
            return Err(LogicError::InvalidName(name.clone()));
        }
        if variables[..i].contains(name) {
            return Err(LogicError::DuplicateVariable(name.clone()));
        }
    }
    Ok(())
}

/// A single-output boolean function of `n` named inputs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    variables: Vec<String>,
    outputs: Vec<bool>,
}

impl TruthTable {
    pub fn new(variables: Vec<String>, outputs: Vec<bool>) -> Result<Self, LogicError> {
        check_variables(&variables)?;
        let expected = 1usize << variables.len();
        if outputs.len() != expected {
            return Err(LogicError::LengthMismatch {
                expected,
                found: outputs.len(),
            });
        }
        Ok(Self { variables, outputs })
    }

    /// Builds a table from the indices of its 1-rows.
    pub fn from_minterms<S: AsRef<str>>(
        variables: &[S],
        minterms: &[usize],
    ) -> Result<Self, LogicError> {
        let variables: Vec<String> = variables.iter().map(|s| s.as_ref().to_owned()).collect();
        check_variables(&variables)?;
        let mut outputs = vec![false; 1 << variables.len()];
        for &m in minterms {
            if m >= outputs.len() {
                return Err(LogicError::LengthMismatch {
                    expected: outputs.len(),
                    found: m + 1,
                });
            }
            outputs[m] = true;
        }
        Ok(Self { variables, outputs })
    }

    pub fn constant<S: AsRef<str>>(variables: &[S], value: bool) -> Result<Self, LogicError> {
        let variables: Vec<String> = variables.iter().map(|s| s.as_ref().to_owned()).collect();
        check_variables(&variables)?;
        let outputs = vec![value; 1 << variables.len()];
        Ok(Self { variables, outputs })
    }

    pub fn arity(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn outputs(&self) -> &[bool] {
        &self.outputs
    }

    /// Output at row `index`.
    ///
    /// Panics if `index >= 2^n`.
    pub fn output(&self, index: usize) -> bool {
        self.outputs[index]
    }

    /// Evaluates the function at an assignment given in variable order.
    ///
    /// Panics if `input.len() != n`.
    pub fn eval(&self, input: &[bool]) -> bool {
        assert_eq!(
            input.len(),
            self.arity(),
            "input width does not match function arity"
        );
        let index = input
            .iter()
            .fold(0usize, |acc, &bit| (acc << 1) | usize::from(bit));
        self.outputs[index]
    }

    /// `(N0, N1)`: how many rows output 0 and how many output 1.
    pub fn symbol_counts(&self) -> (u64, u64) {
        let ones = self.outputs.iter().filter(|&&b| b).count() as u64;
        (self.outputs.len() as u64 - ones, ones)
    }

    pub fn minterms(&self) -> impl Iterator<Item = usize> + '_ {
        self.outputs
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }

    /// Serializes to the `.tt` format: a header line of names, then the
    /// output bit string, each terminated by LF.
    pub fn to_tt_string(&self) -> String {
        let mut s = self.variables.join(" ");
        s.push('\n');
        s.extend(self.outputs.iter().map(|&b| if b { '1' } else { '0' }));
        s.push('\n');
        s
    }
}
