use serde::{Deserialize, Serialize};

use pvote_core::logic::{parse_expression, parse_table_file, TruthTable};

use crate::args::SourceArgs;
use crate::CliError;

/// Where a function came from, as recorded in run manifests.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FunctionSource {
    Table {
        path: String,
    },
    Expr {
        text: String,
        vars: Option<Vec<String>>,
    },
}

pub struct Resolved {
    pub source: FunctionSource,
    pub table: TruthTable,
}

pub fn resolve(args: &SourceArgs) -> Result<Resolved, CliError> {
    match (&args.table, &args.expr) {
        (Some(_), Some(_)) => Err(CliError::usage("--table and --expr are mutually exclusive")),
        (None, None) => Err(CliError::usage(
            "a function is required: pass --table or --expr",
        )),
        (Some(path), None) => {
            let bytes = std::fs::read(path)
                .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
            let table = parse_table_file(&bytes)
                .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
            Ok(Resolved {
                source: FunctionSource::Table {
                    path: path.display().to_string(),
                },
                table,
            })
        }
        (None, Some(text)) => {
            let table = parse_expression(text, args.vars.as_deref())
                .map_err(|e| CliError::parse(format!("--expr: {e}")))?;
            Ok(Resolved {
                source: FunctionSource::Expr {
                    text: text.clone(),
                    vars: args.vars.clone(),
                },
                table,
            })
        }
    }
}
