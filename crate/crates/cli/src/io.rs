use std::fs;
use std::path::Path;

use opstar::funcalc::parse_complex;
use opstar::groupalg::GroupTable;
use opstar::{Matrix, OpError, C64};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {message}")]
    Parse { path: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("unknown demo `{name}` (available: {available})")]
    UnknownDemo { name: String, available: String },
    #[error(transparent)]
    Op(#[from] OpError),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "Io",
            CliError::Parse { .. } => "Parse",
            CliError::Usage(_) => "Usage",
            CliError::UnknownDemo { .. } => "UnknownDemo",
            CliError::Op(e) => e.kind(),
        }
    }

    /// 2 for bad input, 3 for mathematical precondition failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Op(e) if !e.is_input_error() => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn parse_file<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse { path: path.display().to_string(), message: e.to_string() })
}

pub fn read_matrix(path: &Path) -> CliResult<Matrix> {
    parse_file(path)
}

pub fn read_matrices(paths: &[impl AsRef<Path>]) -> CliResult<Vec<Matrix>> {
    paths.iter().map(|p| read_matrix(p.as_ref())).collect()
}

/// A JSON array of numbers or `[re, im]` pairs.
pub fn read_values(path: &Path) -> CliResult<Vec<C64>> {
    let value: Value = parse_file(path)?;
    let items = value.as_array().ok_or_else(|| CliError::Parse {
        path: path.display().to_string(),
        message: "expected a JSON array of values".into(),
    })?;
    items
        .iter()
        .map(parse_complex)
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Parse { path: path.display().to_string(), message: e.to_string() })
}

/// Built-in group names, or a path to a JSON multiplication table.
pub fn resolve_group(spec: &str) -> CliResult<GroupTable> {
    if let Some(table) = builtin_group(spec)? {
        return Ok(table);
    }
    parse_file(Path::new(spec))
}

fn builtin_group(spec: &str) -> CliResult<Option<GroupTable>> {
    let lower = spec.to_ascii_lowercase();
    match lower.as_str() {
        "s3" => return Ok(Some(GroupTable::symmetric3())),
        "q8" => return Ok(Some(GroupTable::quaternion())),
        _ => {}
    }
    let factors: Option<Vec<usize>> =
        lower.split('x').map(|part| part.strip_prefix('z').and_then(|d| d.parse().ok())).collect();
    match factors {
        Some(f) if !f.is_empty() => Ok(Some(GroupTable::product_of_cyclics(&f)?)),
        _ => Ok(None),
    }
}

pub fn complex_json(z: C64) -> Value {
    json!([z.re, z.im])
}

pub fn complex_list(values: &[C64]) -> Value {
    Value::Array(values.iter().map(|&z| complex_json(z)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_names() {
        assert_eq!(resolve_group("z3").unwrap().order(), 3);
        assert_eq!(resolve_group("Z2xZ3").unwrap().order(), 6);
        assert!(!resolve_group("s3").unwrap().is_abelian());
        assert_eq!(resolve_group("q8").unwrap().order(), 8);
        assert!(matches!(resolve_group("z0"), Err(CliError::Op(_))));
        assert!(matches!(resolve_group("no-such-file.json"), Err(CliError::Io { .. })));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        assert_eq!(CliError::Op(OpError::NotNormal { defect: 1.0 }).exit_code(), 3);
        assert_eq!(CliError::Op(OpError::DimensionMismatch { expected: 1, actual: 2 }).exit_code(), 2);
    }
}
