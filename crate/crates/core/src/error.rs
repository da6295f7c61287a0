use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("unknown link ({0}, {1})")]
    UnknownLink(String, String),
    #[error("invalid network: {0}")]
    InvalidNetwork(String),
    #[error("virtual network {0} is not connected")]
    Disconnected(u64),
    #[error("failed to draw a connected network after {0} attempts")]
    ConnectivityAttempts(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("instance too large for the exact oracle: {vertices} loaded vertices exceed limit {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
