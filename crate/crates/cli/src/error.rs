/// Failures with a fixed exit code. Anything else from the core library is a
/// solver error (exit 3).
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("alpha = {alpha} is singular: nearest singular value {nearest}, distance {distance}")]
    Singular { alpha: String, nearest: String, distance: String },
    #[error("{failed} of {total} verification checks failed")]
    VerifyFailed { failed: usize, total: usize },
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_SINGULAR: u8 = 2;
pub const EXIT_SOLVER: u8 = 3;
/// Bad flags or inputs; kept apart from 2 so that code stays unambiguous.
pub const EXIT_USAGE: u8 = 64;

pub fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(e) = err.downcast_ref::<CliError>() {
        return match e {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Singular { .. } => EXIT_SINGULAR,
            CliError::VerifyFailed { .. } => EXIT_VERIFY,
        };
    }
    match err.downcast_ref::<crystal_core::Error>() {
        Some(crystal_core::Error::SingularAlpha { .. }) => EXIT_SINGULAR,
        Some(crystal_core::Error::InvalidNorm(_)) | Some(crystal_core::Error::InvalidArgument(_)) => EXIT_USAGE,
        _ => EXIT_SOLVER,
    }
}
