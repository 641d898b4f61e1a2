use super::{LogicError, TruthTable, MAX_ARITY};

/// Parses a `.tt` file.
///
/// Leading lines starting with `#` are comments. The first remaining line
/// lists the variable names, the second is the `2^n`-character output
/// string. LF and CRLF line endings are both accepted.
pub fn parse_table_file(bytes: &[u8]) -> Result<TruthTable, LogicError> {
    let text = std::str::from_utf8(bytes)
        .map_err(|e| LogicError::MalformedHeader(format!("not valid UTF-8: {e}")))?;
    let mut lines = text
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .skip_while(|l| l.starts_with('#'));

    let header = lines
        .next()
        .ok_or_else(|| LogicError::MalformedHeader("missing variable line".into()))?;
    let variables: Vec<String> = header.split_whitespace().map(str::to_owned).collect();
    if variables.is_empty() {
        return Err(LogicError::MalformedHeader("no variable names".into()));
    }
    if variables.len() > MAX_ARITY {
        return Err(LogicError::TooManyVariables(variables.len()));
    }

    let body = lines
        .next()
        .ok_or_else(|| LogicError::MalformedHeader("missing output line".into()))?
        .trim_end();
    if lines.any(|l| !l.trim().is_empty()) {
        return Err(LogicError::MalformedHeader(
            "unexpected content after output line".into(),
        ));
    }

    let expected = 1usize << variables.len();
    let outputs = body
        .chars()
        .enumerate()
        .map(|(column, ch)| match ch {
            '0' => Ok(false),
            '1' => Ok(true),
            ch => Err(LogicError::InvalidCharacter { ch, column }),
        })
        .collect::<Result<Vec<_>, _>>()?;
    if outputs.len() != expected {
        return Err(LogicError::LengthMismatch {
            expected,
            found: outputs.len(),
        });
    }
    TruthTable::new(variables, outputs)
}
