//! Outerplanarity by degree-2 reduction with a checked Hamiltonian-cycle
//! certificate per block.

use std::collections::BTreeSet;

use super::{blocks_and_cutvertices, Graph, GraphError, Vertex};

/// Candidate outer cycle of a block given as local graph on `0..k`, or `None`
/// when the reduction gets stuck. The result is not yet verified.
fn reduce_to_cycle(g: &Graph) -> Option<Vec<Vertex>> {
    let k = g.n();
    if k < 3 || g.edge_count() > 2 * k - 3 {
        return None;
    }
    let mut adj: Vec<BTreeSet<Vertex>> = (0..k)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut alive = vec![true; k];
    let mut stack: Vec<Vertex> = (0..k).filter(|&v| adj[v].len() == 2).collect();
    let mut removed: Vec<(Vertex, Vertex, Vertex)> = Vec::new();
    let mut remaining = k;

    while remaining > 3 {
        let v = loop {
            let v = stack.pop()?;
            if alive[v] && adj[v].len() == 2 {
                break v;
            }
        };
        let mut it = adj[v].iter().copied();
        let (u, w) = (it.next()?, it.next()?);
        alive[v] = false;
        remaining -= 1;
        adj[u].remove(&v);
        adj[w].remove(&v);
        adj[u].insert(w);
        adj[w].insert(u);
        for t in [u, w] {
            match adj[t].len() {
                0 | 1 => return None,
                2 => stack.push(t),
                _ => {}
            }
        }
        removed.push((v, u, w));
    }

    let rest: Vec<Vertex> = (0..k).filter(|&v| alive[v]).collect();
    if rest.iter().any(|&v| adj[v].len() != 2) {
        return None;
    }
    let mut next = vec![usize::MAX; k];
    let mut prev = vec![usize::MAX; k];
    for i in 0..3 {
        next[rest[i]] = rest[(i + 1) % 3];
        prev[rest[(i + 1) % 3]] = rest[i];
    }
    while let Some((v, u, w)) = removed.pop() {
        let (a, b) = if next[u] == w {
            (u, w)
        } else if next[w] == u {
            (w, u)
        } else {
            return None;
        };
        next[a] = v;
        prev[v] = a;
        next[v] = b;
        prev[b] = v;
    }
    let mut cycle = Vec::with_capacity(k);
    let mut cur = 0;
    for _ in 0..k {
        cycle.push(cur);
        cur = next[cur];
    }
    (cur == 0).then_some(cycle)
}

/// True when `cycle` is a Hamiltonian cycle of `g` and every other edge is a
/// chord that crosses no other chord.
fn certify(g: &Graph, cycle: &[Vertex]) -> bool {
    let k = g.n();
    if cycle.len() != k {
        return false;
    }
    let mut pos = vec![usize::MAX; k];
    for (i, &v) in cycle.iter().enumerate() {
        if pos[v] != usize::MAX {
            return false;
        }
        pos[v] = i;
    }
    if (0..k).any(|i| !g.has_edge(cycle[i], cycle[(i + 1) % k])) {
        return false;
    }
    let mut chords: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| (pos[u].min(pos[v]), pos[u].max(pos[v])))
        .filter(|&(p, q)| q - p != 1 && !(p == 0 && q == k - 1))
        .collect();
    // Laminar check: sorted by left end, wider intervals first.
    chords.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    let mut open: Vec<(usize, usize)> = Vec::new();
    for (p, q) in chords {
        while open.last().is_some_and(|&(_, r)| r <= p) {
            open.pop();
        }
        if open.last().is_some_and(|&(_, r)| q > r) {
            return false;
        }
        open.push((p, q));
    }
    true
}

/// Canonical rotation: start at the smallest vertex, walk toward its
/// smaller cycle neighbour.
pub(crate) fn canonical_rotation(cycle: &[Vertex]) -> Vec<Vertex> {
    let k = cycle.len();
    if k == 0 {
        return Vec::new();
    }
    let start = (0..k).min_by_key(|&i| cycle[i]).unwrap();
    let fwd = cycle[(start + 1) % k];
    let back = cycle[(start + k - 1) % k];
    if fwd <= back {
        (0..k).map(|i| cycle[(start + i) % k]).collect()
    } else {
        (0..k).map(|i| cycle[(start + k - i) % k]).collect()
    }
}

fn block_cycle(g: &Graph) -> Option<Vec<Vertex>> {
    let cycle = reduce_to_cycle(g)?;
    certify(g, &cycle).then_some(cycle)
}

/// Whether `g` can be drawn in the plane with every vertex on the outer face.
/// Disconnected graphs are checked per component.
pub fn is_outerplanar(g: &Graph) -> bool {
    if g.n() >= 2 && g.edge_count() > 2 * g.n() - 3 {
        return false;
    }
    for comp in g.components() {
        if comp.len() < 4 {
            continue;
        }
        let sub = g.induced(&comp);
        let bc = blocks_and_cutvertices(&sub).expect("component is connected");
        for block in &bc.blocks {
            if block.vertices.len() < 4 {
                continue;
            }
            let (local, _) = block.to_graph();
            if block_cycle(&local).is_none() {
                return false;
            }
        }
    }
    true
}

/// The Hamiltonian outer cycle of a 2-connected outerplanar graph, in
/// canonical rotation.
pub fn outer_cycle(g: &Graph) -> Result<Vec<Vertex>, GraphError> {
    if g.n() < 3 {
        return Err(GraphError::Structure(format!(
            "outer cycle needs at least 3 vertices, got {}",
            g.n()
        )));
    }
    if !g.is_connected() {
        return Err(GraphError::Structure("graph is not connected".into()));
    }
    let bc = blocks_and_cutvertices(g)?;
    if bc.blocks.len() != 1 {
        return Err(GraphError::Structure("graph is not 2-connected".into()));
    }
    block_cycle(g)
        .map(|c| canonical_rotation(&c))
        .ok_or_else(|| GraphError::Structure("graph is not outerplanar".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::canon::all_graphs_up_to_iso;

    fn k23() -> Graph {
        Graph::from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap()
    }

    #[test]
    fn small_cases() {
        assert!(is_outerplanar(&Graph::complete(3)));
        assert!(!is_outerplanar(&Graph::complete(4)));
        assert!(!is_outerplanar(&k23()));
        assert!(is_outerplanar(&Graph::empty(0)));
        assert!(is_outerplanar(&Graph::path(9)));
        assert!(is_outerplanar(&Graph::cycle(9)));
        // K4 hiding behind a subdivided edge
        let sub = Graph::from_edges(5, [(0, 1), (0, 2), (0, 4), (4, 3), (1, 2), (1, 3), (2, 3)])
            .unwrap();
        assert!(!is_outerplanar(&sub));
    }

    #[test]
    fn outer_cycle_of_diamond() {
        let diamond = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(outer_cycle(&diamond).unwrap(), vec![0, 1, 3, 2]);
        assert!(outer_cycle(&Graph::path(3)).is_err());
        assert!(outer_cycle(&Graph::complete(4)).is_err());
    }

    /// Oracle: some cyclic vertex order admits all edges without crossings.
    fn book_oracle(g: &Graph) -> bool {
        fn permutations(items: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
            if k == items.len() {
                return f(items);
            }
            for i in k..items.len() {
                items.swap(k, i);
                if permutations(items, k + 1, f) {
                    return true;
                }
                items.swap(k, i);
            }
            false
        }
        let n = g.n();
        if n <= 3 {
            return true;
        }
        // Fix vertex 0 first to quotient rotations.
        let mut rest: Vec<usize> = (1..n).collect();
        permutations(&mut rest, 0, &mut |order| {
            let mut pos = vec![0; n];
            for (i, &v) in order.iter().enumerate() {
                pos[v] = i + 1;
            }
            let e: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .map(|&(u, v)| (pos[u].min(pos[v]), pos[u].max(pos[v])))
                .collect();
            e.iter().all(|&(a, b)| {
                e.iter().all(|&(c, d)| !(a < c && c < b && b < d))
            })
        })
    }

    /// Oracle: a K4 or K2,3 minor exists iff some sequence of edge
    /// contractions produces one as a subgraph.
    fn minor_oracle(g: &Graph) -> bool {
        fn has_target_subgraph(masks: &[u64]) -> bool {
            let n = masks.len();
            for a in 0..n {
                for b in a + 1..n {
                    let common = masks[a] & masks[b];
                    if common.count_ones() >= 3 {
                        return true;
                    }
                    if masks[a] >> b & 1 == 1 {
                        // K4: a, b adjacent plus an adjacent pair of common neighbours
                        for c in 0..n {
                            if common >> c & 1 == 1 && masks[c] & common != 0 {
                                return true;
                            }
                        }
                    }
                }
            }
            false
        }
        fn contract(masks: &[u64], u: usize, v: usize) -> Vec<u64> {
            let n = masks.len();
            let squeeze = |m: u64| -> u64 {
                let low = m & ((1u64 << v) - 1);
                let high = (m >> (v + 1)) << v;
                low | high
            };
            let mut out = Vec::with_capacity(n - 1);
            for w in 0..n {
                if w == v {
                    continue;
                }
                let mut m = masks[w];
                if m >> v & 1 == 1 {
                    m = (m & !(1 << v)) | (1 << u);
                }
                if w == u {
                    m |= masks[v] & !(1 << u) & !(1 << v);
                }
                m &= !(1 << w);
                out.push(squeeze(m));
            }
            out
        }
        fn search(masks: Vec<u64>, seen: &mut std::collections::HashSet<Vec<u64>>) -> bool {
            if masks.len() < 4 || !seen.insert(masks.clone()) {
                return false;
            }
            if has_target_subgraph(&masks) {
                return true;
            }
            for u in 0..masks.len() {
                for v in u + 1..masks.len() {
                    if masks[u] >> v & 1 == 1 && search(contract(&masks, u, v), seen) {
                        return true;
                    }
                }
            }
            false
        }
        search(g.adjacency_masks(), &mut Default::default())
    }

    #[test]
    fn agrees_with_book_embedding_oracle_up_to_seven() {
        for n in 0..=7 {
            for g in all_graphs_up_to_iso(n) {
                assert_eq!(is_outerplanar(&g), book_oracle(&g), "{g:?}");
            }
        }
    }

    #[test]
    fn agrees_with_minor_oracle_up_to_seven() {
        for n in 0..=7 {
            for g in all_graphs_up_to_iso(n) {
                assert_eq!(is_outerplanar(&g), !minor_oracle(&g), "{g:?}");
            }
        }
    }

    #[test]
    fn cycle_certificate_matches_edges() {
        for n in 3..=7 {
            for g in all_graphs_up_to_iso(n) {
                let two_connected = g.is_connected()
                    && blocks_and_cutvertices(&g).unwrap().blocks.len() == 1;
                if two_connected && is_outerplanar(&g) {
                    let c = outer_cycle(&g).unwrap();
                    assert_eq!(c[0], 0);
                    assert!(c[1] < c[n - 1]);
                    assert!((0..n).all(|i| g.has_edge(c[i], c[(i + 1) % n])));
                }
            }
        }
    }
}
