use thiserror::Error;

/// Errors raised by the group engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("parse error at `{token}`: {reason}")]
    Parse { token: String, reason: String },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("capacity exceeded: {what} is {actual}, bound {bound}")]
    Capacity {
        what: &'static str,
        bound: u64,
        actual: u64,
    },
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("not normal: {0}")]
    NotNormal(String),
    #[error("not a p-group: {0}")]
    NotPGroup(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown group family `{0}`")]
    UnknownFamily(String),
    #[error("group file error: {0}")]
    File(String),
    #[error("duplicate group name `{0}`")]
    DuplicateName(String),
}

pub type Result<T, E = GroupError> = std::result::Result<T, E>;

impl GroupError {
    pub(crate) fn capacity(what: &'static str, bound: u64, actual: u64) -> Self {
        GroupError::Capacity {
            what,
            bound,
            actual,
        }
    }
}
