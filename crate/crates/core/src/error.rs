use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element id {id} is outside the ground set of size {n}")]
    InvalidElement { id: usize, n: usize },

    #[error("{what}: size {size} exceeds the enumeration cap {cap}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("function is not monotone: f({set:?} + {element}) < f({set:?})")]
    NotMonotone { set: Vec<usize>, element: usize },

    #[error("result and certificate belong to different instances ({0} vs {1})")]
    InstanceMismatch(String, String),

    #[error("malformed rational {0:?}")]
    BadRational(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
