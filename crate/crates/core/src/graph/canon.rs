//! Canonical labelling by colour refinement plus individualization.
//!
//! Intended for the small graphs the enumerators produce (n ≤ 64).

use std::collections::{BTreeMap, BTreeSet};

use super::{encode_graph6, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    /// The relabelled graph; isomorphic inputs give equal graphs.
    pub graph: Graph,
    /// `labeling[v]` is the canonical index of original vertex `v`.
    pub labeling: Vec<Vertex>,
}

type Partition = Vec<Vec<Vertex>>;

/// Refines an ordered partition until it is equitable. Cells split by the
/// vector of neighbour counts into every cell; sub-cells keep signature order.
fn refine(masks: &[u64], mut cells: Partition) -> Partition {
    loop {
        let cell_masks: Vec<u64> = cells
            .iter()
            .map(|c| c.iter().fold(0u64, |m, &v| m | (1 << v)))
            .collect();
        let mut next: Partition = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, Vertex)> = cell
                .iter()
                .map(|&v| {
                    let sig = cell_masks
                        .iter()
                        .map(|&cm| (masks[v] & cm).count_ones())
                        .collect();
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

/// Adjacency rows of the graph relabelled by a discrete partition.
fn leaf_code(masks: &[u64], cells: &Partition) -> (Vec<u64>, Vec<Vertex>) {
    let n = masks.len();
    let mut label = vec![0; n];
    for (i, c) in cells.iter().enumerate() {
        label[c[0]] = i;
    }
    let mut rows = vec![0u64; n];
    for v in 0..n {
        let mut m = 0u64;
        let mut rest = masks[v];
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            m |= 1 << label[w];
        }
        rows[label[v]] = m;
    }
    (rows, label)
}

fn twins(masks: &[u64], a: Vertex, b: Vertex) -> bool {
    let strip = !((1u64 << a) | (1u64 << b));
    masks[a] & strip == masks[b] & strip
}

fn search(masks: &[u64], cells: Partition, best: &mut Option<(Vec<u64>, Vec<Vertex>)>) {
    let cells = refine(masks, cells);
    let target = cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(i, c)| (c.len(), *i))
        .map(|(i, _)| i);
    let Some(t) = target else {
        let (code, label) = leaf_code(masks, &cells);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, label));
        }
        return;
    };
    let mut tried: Vec<Vertex> = Vec::new();
    for &v in &cells[t] {
        if tried.iter().any(|&u| twins(masks, u, v)) {
            continue;
        }
        tried.push(v);
        let mut split = cells.clone();
        let rest: Vec<Vertex> = cells[t].iter().copied().filter(|&w| w != v).collect();
        split[t] = vec![v];
        split.insert(t + 1, rest);
        search(masks, split, best);
    }
}

/// Canonical form of a vertex-coloured graph: vertices are first grouped by
/// `colors` (ascending), and only colour-preserving relabellings are allowed.
pub fn canonical_form_colored(g: &Graph, colors: &[usize]) -> CanonicalForm {
    let n = g.n();
    assert!(n <= 64, "canonical form supports at most 64 vertices");
    assert_eq!(colors.len(), n);
    if n == 0 {
        return CanonicalForm {
            graph: g.clone(),
            labeling: Vec::new(),
        };
    }
    let masks = g.adjacency_masks();
    let palette: BTreeSet<usize> = colors.iter().copied().collect();
    let cells: Partition = palette
        .iter()
        .map(|&c| (0..n).filter(|&v| colors[v] == c).collect())
        .collect();
    let mut best = None;
    search(&masks, cells, &mut best);
    let (_, labeling) = best.expect("at least one leaf");
    CanonicalForm {
        graph: g.permuted(&labeling),
        labeling,
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_form_colored(g, &vec![0; g.n()])
}

pub fn canonical_graph6(g: &Graph) -> String {
    encode_graph6(&canonical_form(g).graph)
}

/// Every graph on `n` vertices up to isomorphism, as canonical forms sorted by
/// graph6. Built by vertex extension, so only practical for n ≤ 8 or so.
pub fn all_graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let mut level: BTreeMap<String, Graph> = BTreeMap::new();
    let g0 = Graph::empty(0);
    level.insert(encode_graph6(&g0), g0);
    for k in 0..n {
        let mut next = BTreeMap::new();
        for g in level.values() {
            for nb in 0u64..(1 << k) {
                let extra = (0..k).filter(|&v| nb >> v & 1 == 1).map(|v| (v, k));
                let h = g.extended(1, extra).expect("valid extension");
                let c = canonical_form(&h).graph;
                next.insert(encode_graph6(&c), c);
            }
        }
        level = next;
    }
    level.into_values().collect()
}
