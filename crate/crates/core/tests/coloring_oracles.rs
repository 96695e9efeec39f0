//! Colouring results against brute-force enumeration and list-colouring search.

use polyext_core::classifier::{classify, Case, ClassifyOptions};
use polyext_core::coloring::{enumerate_proper_colorings, is_extendable, unique_three_coloring, DEFAULT_UNIVERSE};
use polyext_core::graph::{all_graphs_up_to_iso, is_outerplanar, outerplane_embedding};
use polyext_core::verifier::enumerate_polygon_triangulations;

#[test]
fn unique_coloring_matches_every_coloring() {
    for n in 3..=10 {
        for g in enumerate_polygon_triangulations(n).unwrap() {
            let classes = unique_three_coloring(&g, &outerplane_embedding(&g).unwrap()).unwrap();
            let mut count = 0;
            for c in enumerate_proper_colorings(&g, 3) {
                count += 1;
                for u in 0..n {
                    for v in 0..n {
                        assert_eq!(c[u] == c[v], classes.same(u, v));
                    }
                }
            }
            assert_eq!(count, 6, "a near-triangulation has exactly 3! colourings");
        }
    }
}

#[test]
fn witness_sizes_are_extendable() {
    for n in 2..=6 {
        for g in all_graphs_up_to_iso(n).into_iter().filter(is_outerplanar) {
            for x in 0..n {
                for y in 0..n {
                    if x == y {
                        continue;
                    }
                    let r = classify(&g, x, y, &ClassifyOptions::default()).unwrap();
                    let w = r.witness.as_ref().unwrap();
                    let (i, j) = (w.exponents[x] + 1, w.exponents[y] + 1);
                    let check = is_extendable(&g, x, y, i as usize, j as usize, DEFAULT_UNIVERSE, 50_000_000).unwrap();
                    assert!(check.extendable, "{:?} {x} {y} ({i},{j}): {:?}", g.edges(), check.failing);
                    if r.case == Case::III && g.is_connected() {
                        assert_eq!((i, j), (1, 1));
                    }
                }
            }
        }
    }
}
