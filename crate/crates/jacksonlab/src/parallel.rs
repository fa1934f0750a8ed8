use crate::error::{CliError, Result};

pub const THREADS_VAR: &str = "JACKSONLAB_THREADS";

/// Parses `JACKSONLAB_THREADS`; `None` means rayon's default.
pub fn thread_cap() -> Result<Option<usize>> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CliError::usage(format!(
                "{THREADS_VAR} must be a positive integer, got `{v}`"
            ))),
        },
    }
}

/// Runs `f` on a pool capped by `JACKSONLAB_THREADS`.
pub fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_cap()? {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::usage(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}
