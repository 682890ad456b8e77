use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{message}")]
    Parse { line: usize, column: usize, field: Option<String>, message: String },
    #[error("entry {entry}: index {idx:?} outside shape {shape:?}")]
    IndexOutOfRange { entry: usize, idx: Vec<usize>, shape: Vec<usize> },
    #[error("entry {entry}: index {idx:?} appears twice")]
    DuplicateEntry { entry: usize, idx: Vec<usize> },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("the tensor is not a nonzero rank-one tensor")]
    NotRankOne,
    #[error("closed forms apply to table normal forms only; this tensor is in {0} but is not its normal form")]
    NotNormalForm(String),
    #[error(transparent)]
    Domain(#[from] tensorloci::Error),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "ParseError",
            CliError::IndexOutOfRange { .. } => "IndexOutOfRange",
            CliError::DuplicateEntry { .. } => "DuplicateEntry",
            CliError::Io { .. } => "IoError",
            CliError::Usage(_) => "UsageError",
            CliError::NotRankOne => "NotRankOne",
            CliError::NotNormalForm(_) => "NotNormalForm",
            CliError::Domain(e) => e.code(),
        }
    }

    /// 1 for input that could not be read, 2 for well-formed input the
    /// library rejects.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. }
            | CliError::IndexOutOfRange { .. }
            | CliError::DuplicateEntry { .. }
            | CliError::Io { .. }
            | CliError::Usage(_) => 1,
            CliError::NotRankOne | CliError::NotNormalForm(_) | CliError::Domain(_) => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "code": self.code(), "message": self.to_string() });
        match self {
            CliError::Parse { line, column, field, .. } => {
                if let Some(f) = field {
                    v["field"] = json!(f);
                } else {
                    v["line"] = json!(line);
                    v["column"] = json!(column);
                }
            }
            CliError::IndexOutOfRange { entry, idx, .. } | CliError::DuplicateEntry { entry, idx } => {
                v["entry"] = json!(entry);
                v["idx"] = json!(idx);
            }
            _ => {}
        }
        v
    }
}
