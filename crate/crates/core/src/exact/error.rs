use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative number")]
    NegativeRadicand,
    #[error("radicand {0} has a cofactor beyond the trial-division bound")]
    RadicandTooLarge(String),
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
}
