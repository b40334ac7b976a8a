use std::fmt;
use std::process::ExitCode;

use moment_naming::NamingError;

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_OUTSIDE: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }

    pub fn outside(message: impl Into<String>) -> Self {
        Self { code: EXIT_OUTSIDE, message: message.into() }
    }

    pub fn numerical(message: impl Into<String>) -> Self {
        Self { code: EXIT_NUMERICAL, message: message.into() }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<NamingError> for CliError {
    fn from(e: NamingError) -> Self {
        use NamingError::*;
        let code = match &e {
            OutsideHull(_) | NotInterior => EXIT_OUTSIDE,
            DegenerateNodes
            | ConditioningFailure { .. }
            | NonRealRoots { .. }
            | ReductionStalled { .. }
            | OracleFailure(_)
            | NotInvertible => EXIT_NUMERICAL,
            _ => EXIT_USAGE,
        };
        Self { code, message: e.to_string() }
    }
}
