use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inconsistent caller input.
    #[error("input error: {0}")]
    Input(String),
    /// A 4-regular graph description violates the slot invariants.
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
    /// An enumeration would exceed its configured budget.
    #[error("budget exceeded: {0}")]
    Budget(String),
    /// Two routes that must agree did not.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn budget(msg: impl Into<String>) -> Self {
        Error::Budget(msg.into())
    }
}

/// Slot-level validation failures for 4-regular graph descriptions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} slot {slot} is used by more than one edge")]
    DuplicateSlot { vertex: String, slot: u8 },
    #[error("vertex {vertex} slot {slot} is not used by any edge")]
    UnusedSlot { vertex: String, slot: u8 },
    #[error("edge joins vertex {vertex} slot {slot} to itself")]
    SelfPaired { vertex: String, slot: u8 },
    #[error("slot {slot} out of range at vertex {vertex}")]
    BadSlot { vertex: String, slot: u8 },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("duplicate vertex name {0}")]
    DuplicateVertex(String),
}
