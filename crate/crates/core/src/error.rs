use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("graph is disconnected: vertex {unreachable} is unreachable from {origin}")]
    Disconnected { origin: usize, unreachable: usize },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("vertex {0} is out of bounds")]
    OutOfBounds(String),
    #[error("vertex {0} appears more than once")]
    Duplicate(String),
    #[error("invalid adjacency: {0}")]
    InvalidAdjacency(String),
    #[error("member set is empty")]
    EmptyMembers,
    #[error("pattern not applicable: {0}")]
    InapplicablePattern(String),
    #[error("construction not applicable: {0}")]
    InapplicableCase(String),
    #[error("no table entry for a {0}x{1} grid")]
    NotInTable(usize, usize),
    #[error("instance has {vertices} vertices, above the oracle cap of {cap}; raise the cap (at most {hard_max}) or use a smaller instance")]
    CapExceeded {
        vertices: usize,
        cap: usize,
        hard_max: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
