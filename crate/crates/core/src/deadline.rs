//! Cooperative per-thread limits: a wall-clock deadline and a cap on
//! generated nodes.
//!
//! The benchmark harness installs limits before running an engine; engines
//! poll them from their inner loops through [`SearchStats`](crate::SearchStats)
//! and bail out with [`SearchError::Timeout`] or [`SearchError::NodeLimit`].

use std::cell::Cell;
use std::time::Instant;

use crate::error::{Result, SearchError};

thread_local! {
    static DEADLINE: Cell<Option<Instant>> = const { Cell::new(None) };
    // (cap, generated since the cap was installed)
    static NODE_CAP: Cell<Option<(u64, u64)>> = const { Cell::new(None) };
}

/// Runs `f` with a deadline installed on the current thread.
pub fn with_deadline<T>(deadline: Option<Instant>, f: impl FnOnce() -> T) -> T {
    let previous = DEADLINE.with(|d| d.replace(deadline));
    let out = f();
    DEADLINE.with(|d| d.set(previous));
    out
}

/// Runs `f`, failing any search on this thread once more than `cap` nodes
/// have been generated in total (across all sub-searches).
pub fn with_node_cap<T>(cap: Option<u64>, f: impl FnOnce() -> T) -> T {
    let previous = NODE_CAP.with(|c| c.replace(cap.map(|c| (c, 0))));
    let out = f();
    NODE_CAP.with(|c| c.set(previous));
    out
}

pub(crate) fn check() -> Result<()> {
    match DEADLINE.with(|d| d.get()) {
        Some(limit) if Instant::now() >= limit => Err(SearchError::Timeout),
        _ => Ok(()),
    }
}

#[inline]
pub(crate) fn count_generation() -> Result<()> {
    NODE_CAP.with(|c| match c.get() {
        None => Ok(()),
        Some((cap, n)) if n >= cap => Err(SearchError::NodeLimit(cap)),
        Some((cap, n)) => {
            c.set(Some((cap, n + 1)));
            Ok(())
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::time::Duration;

    #[test]
    fn expired_deadline_reports_timeout() {
        let past = Instant::now() - Duration::from_millis(1);
        assert_eq!(with_deadline(Some(past), check), Err(SearchError::Timeout));
        assert_eq!(with_deadline(None, check), Ok(()));
        assert_eq!(check(), Ok(()));
    }

    #[test]
    fn node_cap_is_exact() {
        with_node_cap(Some(3), || {
            for _ in 0..3 {
                assert_eq!(count_generation(), Ok(()));
            }
            assert_eq!(count_generation(), Err(SearchError::NodeLimit(3)));
        });
        assert_eq!(count_generation(), Ok(()));
    }
}
