//! Cached graph families shared by unit tests.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::graph::{all_graphs_up_to_iso, is_outerplanar, Graph};

/// All graphs with at most `max_n` vertices, up to isomorphism.
pub fn all_small_graphs(max_n: usize) -> &'static [Graph] {
    static CACHE: OnceLock<Mutex<HashMap<usize, &'static [Graph]>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut guard = cache.lock().unwrap();
    guard.entry(max_n).or_insert_with(|| {
        let all: Vec<Graph> = (0..=max_n).flat_map(all_graphs_up_to_iso).collect();
        Box::leak(all.into_boxed_slice())
    })
}

/// Outerplanar graphs on exactly `n` vertices, up to isomorphism.
pub fn outerplanar_graphs(n: usize) -> Vec<Graph> {
    all_graphs_up_to_iso(n)
        .into_iter()
        .filter(is_outerplanar)
        .collect()
}
