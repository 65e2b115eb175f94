use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// The three family hypotheses, checked in this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValidationCode {
    /// `m = 1` violates condition (K).
    ConditionK,
    /// Every `n_i` is zero, so the chain is not reached and there is no ideal.
    NoIdealEdge,
    /// `1 < m < ∞` with an infinite tail, so `Σ n_i` diverges.
    InfiniteSum,
}

impl ValidationCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ValidationCode::ConditionK => "ConditionK",
            ValidationCode::NoIdealEdge => "NoIdealEdge",
            ValidationCode::InfiniteSum => "InfiniteSum",
        }
    }

    fn template(self) -> &'static str {
        match self {
            ValidationCode::ConditionK => "m = 1 violates condition (K)",
            ValidationCode::NoIdealEdge => "at least one n_i must be nonzero",
            ValidationCode::InfiniteSum => {
                "for 1 < m < inf the sum of the n_i must be finite (tail must be zero)"
            }
        }
    }
}

impl fmt::Display for ValidationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationError {
    pub code: ValidationCode,
    pub message: String,
}

impl ValidationError {
    pub fn new(code: ValidationCode) -> Self {
        ValidationError {
            code,
            message: String::from(code.template()),
        }
    }
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

impl core::error::Error for ValidationError {}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid family: {0}")]
    Validation(#[from] ValidationError),
    #[error("tail constant must be at least 1")]
    InvalidTail,
    #[error("{op} requires {requirement}")]
    Regime {
        op: &'static str,
        requirement: &'static str,
    },
    #[error("depth {depth} is shorter than the prefix length {k}")]
    DepthTooShallow { depth: usize, k: usize },
    #[error("element does not belong to the group {group}")]
    ShapeMismatch { group: &'static str },
    #[error("unsupported cone combination: {0}")]
    Unsupported(&'static str),
    #[error("middle cone is not determined by the ideal and quotient in case AF-AF")]
    NotDetermined,
    #[error("truncated torsion did not stabilize by depth {depth}")]
    NoStabilization { depth: usize },
    #[error("internal consistency failure: {0}")]
    OracleDisagreement(String),
}
