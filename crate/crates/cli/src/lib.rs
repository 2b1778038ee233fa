//! Library surface of the `qroulette` binary: argument definitions, config
//! loading, output emission, and the verification checks, kept in a lib so
//! integration tests can drive them without spawning processes.

pub mod args;
pub mod checks;
pub mod commands;
pub mod config;
pub mod emit;
pub mod threads;

/// Process exit codes used by the binary.
pub mod exit {
    /// Everything succeeded.
    pub const SUCCESS: i32 = 0;
    /// `verify` ran to completion and at least one check failed.
    pub const VERIFICATION_FAILED: i32 = 1;
    /// Bad usage: unknown flags, unparsable or inconsistent parameters.
    pub const USAGE: i32 = 2;
    /// The work was valid but an input/output operation failed.
    pub const IO: i32 = 3;
}
