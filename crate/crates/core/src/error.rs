use thiserror::Error;

/// Which structural check a character table failed at load time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableViolation {
    Shape,
    ClassSum,
    DegreeSum,
    Orthogonality,
    InverseMap,
    PowerMap,
}

impl std::fmt::Display for TableViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            TableViolation::Shape => "shape",
            TableViolation::ClassSum => "class-sum",
            TableViolation::DegreeSum => "degree-sum",
            TableViolation::Orthogonality => "orthogonality",
            TableViolation::InverseMap => "inverse-map",
            TableViolation::PowerMap => "power-map",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("incompatible elements: {0}")]
    IncompatibleElements(String),

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("group closure exceeded the order cap of {cap}")]
    OrderCapExceeded { cap: usize },

    #[error("element is not a member of the group")]
    NotInGroup,

    #[error("{prime} does not divide the group order {order}")]
    PrimeNotDividing { prime: u64, order: usize },

    #[error("element is not a nontrivial element of prime-power order")]
    NotPElement,

    #[error("subgroups belong to different parent groups")]
    IncompatibleSubgroups,

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("character table invalid ({violation}): {detail}")]
    TableInvalid {
        violation: TableViolation,
        detail: String,
    },

    #[error("character table inconsistent: {0}")]
    TableInconsistent(String),

    #[error("wrong table for group: {0}")]
    WrongTable(String),

    #[error("class index {index} out of range (table has {len} classes)")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("unknown class selector `{0}`")]
    UnknownClass(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn table(violation: TableViolation, detail: impl Into<String>) -> Self {
        Error::TableInvalid {
            violation,
            detail: detail.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
