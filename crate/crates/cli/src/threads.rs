//! Worker-thread cap via the `QROULETTE_THREADS` environment variable.

use crate::commands::CliError;

pub const THREADS_ENV: &str = "QROULETTE_THREADS";

/// Install the global thread pool according to `QROULETTE_THREADS`.
/// Unset or `0` means automatic sizing. Must run before any parallel work;
/// a pool that someone already installed is left alone.
pub fn configure_from_env() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{THREADS_ENV}={raw:?} is not a thread count")))?;
    if threads == 0 {
        return Ok(());
    }
    // Already-initialized is not an error for us: results do not depend on
    // the worker count, only throughput does.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}
