//! Write-once caches for expensive exact series.

use std::sync::{Arc, Mutex};

use crate::exact::{TruncSeries, ZetaPoly};

/// Keeps the largest series built so far; lower orders read from it.
pub(crate) struct SeriesCache(Mutex<Option<Arc<TruncSeries<ZetaPoly>>>>);

impl SeriesCache {
    pub(crate) const fn new() -> Self {
        SeriesCache(Mutex::new(None))
    }

    pub(crate) fn get(
        &self,
        order: u32,
        build: impl FnOnce(u32) -> TruncSeries<ZetaPoly>,
    ) -> Arc<TruncSeries<ZetaPoly>> {
        let mut guard = self.0.lock().unwrap_or_else(|p| p.into_inner());
        if let Some(s) = guard.as_ref() {
            if s.order() >= order {
                return s.clone();
            }
        }
        let s = Arc::new(build(order));
        *guard = Some(s.clone());
        s
    }
}
