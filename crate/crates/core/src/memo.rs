//! Insert-once memo tables shared by the integral providers.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use once_cell::sync::Lazy;
use parking_lot::RwLock;

use crate::key::IntegralKey;
use crate::rational::ExactRational;

/// Concurrent map from [`IntegralKey`] to value.
///
/// Values are never overwritten: if two threads race on the same key, the
/// first insert wins and both computed the same number anyway.
#[derive(Default)]
pub struct Memo {
    map: RwLock<HashMap<IntegralKey, ExactRational>>,
    computed: AtomicU64,
}

impl Memo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, key: &IntegralKey) -> Option<ExactRational> {
        self.map.read().get(key).cloned()
    }

    pub fn insert(&self, key: IntegralKey, value: ExactRational) -> ExactRational {
        self.map.write().entry(key).or_insert(value).clone()
    }

    /// Looks `key` up, running `compute` on a miss. The lock is not held
    /// while computing, so `compute` may recurse into the same table.
    pub fn get_or_compute<E>(
        &self,
        key: &IntegralKey,
        compute: impl FnOnce() -> Result<ExactRational, E>,
    ) -> Result<ExactRational, E> {
        if let Some(v) = self.get(key) {
            return Ok(v);
        }
        let v = compute()?;
        self.computed.fetch_add(1, Ordering::Relaxed);
        Ok(self.insert(key.clone(), v))
    }

    /// Number of values computed (not loaded) since creation or the last reset.
    pub fn computed_count(&self) -> u64 {
        self.computed.load(Ordering::Relaxed)
    }

    pub fn reset_counter(&self) {
        self.computed.store(0, Ordering::Relaxed);
    }

    pub fn len(&self) -> usize {
        self.map.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.read().is_empty()
    }

    pub fn clear(&self) {
        self.map.write().clear();
    }

    /// All entries in key order.
    pub fn snapshot(&self) -> Vec<(IntegralKey, ExactRational)> {
        let mut v: Vec<_> = self.map.read().iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }
}

/// Table behind the primary providers and the on-disk cache.
pub static INTEGRALS: Lazy<Memo> = Lazy::new(Memo::new);
