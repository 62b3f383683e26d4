use crate::exact::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZernikeError {
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

pub type Result<T, E = ZernikeError> = std::result::Result<T, E>;

macro_rules! bail {
    ($kind:ident, $($arg:tt)*) => {
        return Err($crate::error::ZernikeError::$kind(format!($($arg)*)))
    };
}
pub(crate) use bail;
