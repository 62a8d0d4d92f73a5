//! Per-thread memo tables for structure objects (sums, tensors, cofree
//! decompositions). Sweeps revisit a handful of objects many times.

use std::cell::RefCell;
use std::collections::HashMap;
use std::hash::Hash;
use std::rc::Rc;

const LIMIT: usize = 4096;

pub(crate) struct Memo<K, V>(RefCell<HashMap<K, Rc<V>>>);

impl<K: Hash + Eq + Clone, V> Memo<K, V> {
    pub(crate) fn new() -> Self {
        Memo(RefCell::new(HashMap::new()))
    }

    pub(crate) fn get_or(&self, key: &K, build: impl FnOnce() -> V) -> Rc<V> {
        if let Some(v) = self.0.borrow().get(key) {
            return v.clone();
        }
        let v = Rc::new(build());
        let mut m = self.0.borrow_mut();
        if m.len() >= LIMIT {
            m.clear();
        }
        m.insert(key.clone(), v.clone());
        v
    }
}
