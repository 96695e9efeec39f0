//! Fundamental x–y subgraphs, shrinking, 2-connections and face typing.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{
    blocks_and_cutvertices, is_outerplanar, outer_cycle, outerplane_embedding, weak_dual, BcNode,
    Block, Graph, GraphError, OuterplaneEmbedding, Vertex,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("vertex {0} is out of range")]
    OutOfRange(Vertex),
    #[error("x and y must be distinct (both are {0})")]
    SameVertex(Vertex),
    #[error("x and y lie in different components")]
    Disconnected,
    #[error("graph is not outerplanar")]
    NotOuterplanar,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no outerplanarity-preserving attachment exists: {0}")]
    NoAttachment(String),
    #[error("uncovered shape: {0}")]
    Uncovered(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

type Result<T> = std::result::Result<T, StructureError>;

/// A subgraph relabelled to `0..k`, with `vertex_map[i]` the parent vertex of
/// local vertex `i`. The map is increasing, so edge orientations agree with
/// the parent's.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FundamentalSubgraph {
    pub graph: Graph,
    pub vertex_map: Vec<Vertex>,
    pub x: Vertex,
    pub y: Vertex,
}

impl FundamentalSubgraph {
    fn from_parent_edges(g: &Graph, edges: &[(Vertex, Vertex)], x: Vertex, y: Vertex) -> Self {
        let mut verts: Vec<Vertex> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        verts.extend([x, y]);
        verts.sort_unstable();
        verts.dedup();
        let mut index = vec![usize::MAX; g.n()];
        for (i, &v) in verts.iter().enumerate() {
            index[v] = i;
        }
        let graph = Graph::from_edges(verts.len(), edges.iter().map(|&(u, v)| (index[u], index[v])))
            .expect("edges of the parent");
        FundamentalSubgraph {
            graph,
            x: index[x],
            y: index[y],
            vertex_map: verts,
        }
    }

    pub fn is_edge(&self) -> bool {
        self.graph.n() == 2 && self.graph.edge_count() == 1
    }
}

fn check_pair(g: &Graph, x: Vertex, y: Vertex) -> Result<()> {
    for v in [x, y] {
        if v >= g.n() {
            return Err(StructureError::OutOfRange(v));
        }
    }
    if x == y {
        return Err(StructureError::SameVertex(x));
    }
    Ok(())
}

/// Faces on the weak-dual path from the faces at `a` to the faces at `b`.
pub fn dual_path(emb: &OuterplaneEmbedding, a: Vertex, b: Vertex) -> Vec<usize> {
    let dual = weak_dual(emb);
    let k = dual.n();
    let mut parent = vec![usize::MAX; k];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for f in emb.faces_containing(a) {
        parent[f] = f;
        queue.push_back(f);
    }
    while let Some(f) = queue.pop_front() {
        if emb.inner_faces[f].contains(&b) {
            let mut path = vec![f];
            let mut cur = f;
            while parent[cur] != cur {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return path;
        }
        for &h in dual.neighbors(f) {
            if parent[h] == usize::MAX {
                parent[h] = f;
                queue.push_back(h);
            }
        }
    }
    unreachable!("the weak dual of a 2-connected outerplanar graph is connected")
}

/// Edges of the a–b fundamental subgraph of one block, in parent indices.
fn block_fundamental_edges(block: &Block, a: Vertex, b: Vertex) -> Result<Vec<(Vertex, Vertex)>> {
    if block.is_bridge() || block.edges.contains(&(a.min(b), a.max(b))) {
        return Ok(vec![(a.min(b), a.max(b))]);
    }
    let (local, map) = block.to_graph();
    let idx = |v: Vertex| map.binary_search(&v).expect("terminal in block");
    let emb = outerplane_embedding(&local)?;
    let mut keep = vec![false; local.n()];
    for f in dual_path(&emb, idx(a), idx(b)) {
        for &v in &emb.inner_faces[f] {
            keep[v] = true;
        }
    }
    Ok(local
        .edges()
        .iter()
        .filter(|&&(u, v)| keep[u] && keep[v])
        .map(|&(u, v)| (map[u], map[v]))
        .collect())
}

/// The blocks on the block–cutvertex path from `x` to `y` with the terminal
/// pair of each, in order from `x`.
fn block_chain(g: &Graph, x: Vertex, y: Vertex) -> Result<(Vec<Block>, Vec<Vertex>)> {
    let bc = blocks_and_cutvertices(g)?;
    let path = bc.path(bc.node_of(x), bc.node_of(y));
    let mut blocks = Vec::new();
    let mut terminals = vec![x];
    for (i, node) in path.iter().enumerate() {
        if let BcNode::Block(b) = *node {
            blocks.push(bc.blocks[b].clone());
            let exit = match path.get(i + 1) {
                Some(BcNode::Cut(c)) => *c,
                _ => y,
            };
            terminals.push(exit);
        }
    }
    Ok((blocks, terminals))
}

/// The fundamental x–y subgraph.
pub fn fundamental_subgraph(g: &Graph, x: Vertex, y: Vertex) -> Result<FundamentalSubgraph> {
    check_pair(g, x, y)?;
    if !is_outerplanar(g) {
        return Err(StructureError::NotOuterplanar);
    }
    let comp = g
        .components()
        .into_iter()
        .find(|c| c.binary_search(&x).is_ok())
        .expect("x lies in a component");
    if comp.binary_search(&y).is_err() {
        return Err(StructureError::Disconnected);
    }
    if g.has_edge(x, y) {
        return Ok(FundamentalSubgraph::from_parent_edges(g, &[(x.min(y), x.max(y))], x, y));
    }
    let sub = g.induced(&comp);
    let local = |v: Vertex| comp.binary_search(&v).expect("in component");
    let (blocks, terminals) = block_chain(&sub, local(x), local(y))?;
    let mut edges = Vec::new();
    for (i, block) in blocks.iter().enumerate() {
        for (u, v) in block_fundamental_edges(block, terminals[i], terminals[i + 1])? {
            edges.push((comp[u], comp[v]));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(FundamentalSubgraph::from_parent_edges(g, &edges, x, y))
}

fn require_near_triangulation(g: &Graph) -> Result<OuterplaneEmbedding> {
    let emb = outerplane_embedding(g)?;
    if !emb.is_near_triangulation() {
        return Err(StructureError::Precondition(
            "expected a 2-connected outerplane near-triangulation".into(),
        ));
    }
    Ok(emb)
}

/// Cuts off everything a chord separates from both `x` and `y`, one ear at a
/// time, until only `x` and `y` have degree 2 (or only the edge `xy` is left).
pub fn shrink_separating_chords(g: &Graph, x: Vertex, y: Vertex) -> Result<FundamentalSubgraph> {
    check_pair(g, x, y)?;
    require_near_triangulation(g)?;
    if g.has_edge(x, y) {
        return Ok(FundamentalSubgraph::from_parent_edges(g, &[(x.min(y), x.max(y))], x, y));
    }
    let mut alive = vec![true; g.n()];
    let mut degree: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    while let Some(v) = (0..g.n()).find(|&v| alive[v] && v != x && v != y && degree[v] == 2) {
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] {
                degree[w] -= 1;
            }
        }
    }
    let edges: Vec<(Vertex, Vertex)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| alive[u] && alive[v])
        .collect();
    Ok(FundamentalSubgraph::from_parent_edges(g, &edges, x, y))
}

/// How ties among eligible attachment points are broken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum ChoiceRule {
    #[default]
    LexSmallest,
    LexLargest,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum AttachmentKind {
    Cutvertex { vertex: Vertex },
    BridgeChain { chain: Vec<Vertex> },
    PathEnds,
}

/// A length-2 path `ends.0 – middle – ends.1` added by the 2-connection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Attachment {
    #[serde(flatten)]
    pub kind: AttachmentKind,
    pub ends: (Vertex, Vertex),
    pub middle: Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TwoConnection {
    /// The original graph on `0..original_n` plus one middle vertex per attachment.
    pub graph: Graph,
    pub original_n: usize,
    pub attachments: Vec<Attachment>,
}

/// The two outer-cycle neighbours of `v` inside a 2-connected block.
fn cycle_neighbours(block: &Block, v: Vertex) -> Result<[Vertex; 2]> {
    let (local, map) = block.to_graph();
    let cycle = outer_cycle(&local)?;
    let k = cycle.len();
    let i = cycle
        .iter()
        .position(|&u| map[u] == v)
        .expect("vertex on the block cycle");
    Ok([map[cycle[(i + 1) % k]], map[cycle[(i + k - 1) % k]]])
}

/// A 2-connected outerplanar supergraph of a connected xy-fundamental graph,
/// built by adding length-2 paths around cutvertices, bridge chains and path
/// ends. Attachment points never use `x` or `y` when another choice exists.
pub fn two_connection(g: &Graph, x: Vertex, y: Vertex, rule: ChoiceRule) -> Result<TwoConnection> {
    check_pair(g, x, y)?;
    if !g.is_connected() {
        return Err(StructureError::Precondition("graph must be connected".into()));
    }
    if !is_outerplanar(g) {
        return Err(StructureError::NotOuterplanar);
    }
    let n = g.n();
    let unchanged = || TwoConnection {
        graph: g.clone(),
        original_n: n,
        attachments: Vec::new(),
    };
    if g.is_path() && n >= 2 {
        if g.degree(x) > 1 || g.degree(y) > 1 {
            return Err(StructureError::Precondition(
                "a path is only fundamental for its two ends".into(),
            ));
        }
        let graph = g.extended(1, [(x, n), (y, n)])?;
        return Ok(TwoConnection {
            graph,
            original_n: n,
            attachments: vec![Attachment {
                kind: AttachmentKind::PathEnds,
                ends: (x, y),
                middle: n,
            }],
        });
    }
    let bc = blocks_and_cutvertices(g)?;
    if bc.blocks.len() == 1 {
        return Ok(unchanged());
    }
    let (blocks, terminals) = block_chain(g, x, y)?;
    if blocks.len() != bc.blocks.len() {
        return Err(StructureError::Precondition(format!(
            "graph is not {x}{y}-fundamental: some block is off the x–y path"
        )));
    }

    let avoid_marked = |opts: Vec<Vertex>| -> Vec<Vertex> {
        let kept: Vec<Vertex> = opts.iter().copied().filter(|&v| v != x && v != y).collect();
        if kept.is_empty() {
            opts
        } else {
            kept
        }
    };
    let end_options = |block: Option<&Block>, v: Vertex| -> Result<Vec<Vertex>> {
        match block {
            None => Ok(vec![v]),
            Some(b) => Ok(avoid_marked(cycle_neighbours(b, v)?.to_vec())),
        }
    };

    struct Slot {
        kind: AttachmentKind,
        options: Vec<(Vertex, Vertex)>,
    }
    let mut slots: Vec<Slot> = Vec::new();
    let k = blocks.len();
    let mut i = 0;
    while i < k {
        if blocks[i].is_bridge() {
            let start = i;
            while i < k && blocks[i].is_bridge() {
                i += 1;
            }
            let chain: Vec<Vertex> = terminals[start..=i].to_vec();
            let left = end_options(start.checked_sub(1).map(|j| &blocks[j]), chain[0])?;
            let right = end_options(blocks.get(i), chain[chain.len() - 1])?;
            let options = left
                .iter()
                .flat_map(|&u| right.iter().map(move |&w| (u, w)))
                .collect();
            slots.push(Slot {
                kind: AttachmentKind::BridgeChain { chain },
                options,
            });
        } else {
            if i + 1 < k && !blocks[i + 1].is_bridge() {
                let c = terminals[i + 1];
                let left = avoid_marked(cycle_neighbours(&blocks[i], c)?.to_vec());
                let right = avoid_marked(cycle_neighbours(&blocks[i + 1], c)?.to_vec());
                let options = left
                    .iter()
                    .flat_map(|&u| right.iter().map(move |&w| (u, w)))
                    .collect();
                slots.push(Slot {
                    kind: AttachmentKind::Cutvertex { vertex: c },
                    options,
                });
            }
            i += 1;
        }
    }
    for s in &mut slots {
        s.options.sort_unstable();
        s.options.dedup();
        if rule == ChoiceRule::LexLargest {
            s.options.reverse();
        }
    }

    fn search(g: &Graph, slots: &[Slot], chosen: &mut Vec<(Vertex, Vertex)>) -> Option<Graph> {
        let n = g.n() - chosen.len();
        if chosen.len() == slots.len() {
            return blocks_and_cutvertices(g).ok().filter(|bc| bc.blocks.len() == 1).map(|_| g.clone());
        }
        let z = g.n();
        for &(u, w) in &slots[chosen.len()].options {
            let h = g.extended(1, [(u, z), (w, z)]).expect("fresh middle vertex");
            if !is_outerplanar(&h) {
                continue;
            }
            chosen.push((u, w));
            if let Some(done) = search(&h, slots, chosen) {
                return Some(done);
            }
            chosen.pop();
        }
        let _ = n;
        None
    }

    let mut chosen = Vec::new();
    let graph = search(g, &slots, &mut chosen).ok_or_else(|| {
        StructureError::NoAttachment(format!("{} attachment slots for {x}–{y}", slots.len()))
    })?;
    let attachments = slots
        .into_iter()
        .zip(chosen)
        .enumerate()
        .map(|(i, (slot, ends))| Attachment {
            kind: slot.kind,
            ends,
            middle: n + i,
        })
        .collect();
    Ok(TwoConnection {
        graph,
        original_n: n,
        attachments,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FaceKind {
    Type0,
    Type1,
    Type2,
}

/// A non-triangular inner face with its anchor vertices.
///
/// Anchor order: `Type0` is `[marked, a, b]` with `ab` the chord to the
/// neighbouring face; `Type1` is `[apex, b, c]` with `ab` on the `x` side and
/// `ac` on the `y` side; `Type2` is `[a, b, c, d]` with `ab` on the `x` side,
/// `cd` on the `y` side, and `a`, `c` joined along the face boundary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceType {
    pub face: usize,
    pub vertices: Vec<Vertex>,
    pub kind: FaceKind,
    pub anchors: Vec<Vertex>,
}

/// Whether the dual component across `chord` of face `f` holds a face with `v`.
fn beyond_chord(emb: &OuterplaneEmbedding, f: usize, chord: (Vertex, Vertex), v: Vertex) -> bool {
    let edges = emb.dual_edges();
    let start = edges
        .iter()
        .find(|&&(p, q, c)| c == chord && (p == f || q == f))
        .map(|&(p, q, _)| if p == f { q } else { p })
        .expect("chord on face");
    let mut seen = vec![false; emb.inner_faces.len()];
    seen[f] = true;
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(h) = stack.pop() {
        if emb.inner_faces[h].contains(&v) {
            return true;
        }
        for &(p, q, _) in &edges {
            for (a, b) in [(p, q), (q, p)] {
                if a == h && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    false
}

/// Types every non-triangular inner face of a 2-connected xy-fundamental graph.
pub fn classify_faces(emb: &OuterplaneEmbedding, x: Vertex, y: Vertex) -> Result<Vec<FaceType>> {
    let dual = emb.dual_edges();
    let mut out = Vec::new();
    for (f, face) in emb.inner_faces.iter().enumerate() {
        if face.len() == 3 {
            continue;
        }
        let chords: Vec<(Vertex, Vertex)> = dual
            .iter()
            .filter(|&&(p, q, _)| p == f || q == f)
            .map(|&(_, _, c)| c)
            .collect();
        let (has_x, has_y) = (face.contains(&x), face.contains(&y));
        let (kind, anchors) = match (has_x, has_y) {
            (true, true) => {
                return Err(StructureError::Uncovered(format!(
                    "face {face:?} contains both {x} and {y}"
                )))
            }
            (true, false) | (false, true) => {
                let (marked, other) = if has_x { (x, y) } else { (y, x) };
                let toward: Vec<_> = chords
                    .iter()
                    .copied()
                    .filter(|&c| beyond_chord(emb, f, c, other))
                    .collect();
                match (toward.as_slice(), chords.len()) {
                    ([(a, b)], 1) => (FaceKind::Type0, vec![marked, *a, *b]),
                    _ => {
                        return Err(StructureError::Uncovered(format!(
                            "face {face:?} at {marked} has {} neighbouring faces",
                            chords.len()
                        )))
                    }
                }
            }
            (false, false) => {
                let xs: Vec<_> = chords.iter().copied().filter(|&c| beyond_chord(emb, f, c, x)).collect();
                let ys: Vec<_> = chords.iter().copied().filter(|&c| beyond_chord(emb, f, c, y)).collect();
                let (&[cx], &[cy], 2) = (xs.as_slice(), ys.as_slice(), chords.len()) else {
                    return Err(StructureError::Uncovered(format!(
                        "face {face:?} fits no type ({} neighbouring faces)",
                        chords.len()
                    )));
                };
                if cx == cy {
                    return Err(StructureError::Uncovered(format!(
                        "face {face:?} has x and y beyond the same chord"
                    )));
                }
                let shared: Vec<Vertex> = [cx.0, cx.1].into_iter().filter(|&v| v == cy.0 || v == cy.1).collect();
                if let [apex] = shared[..] {
                    let b = if cx.0 == apex { cx.1 } else { cx.0 };
                    let c = if cy.0 == apex { cy.1 } else { cy.0 };
                    (FaceKind::Type1, vec![apex, b, c])
                } else {
                    // a and c are joined along the boundary without passing the other chord ends
                    let k = face.len();
                    let pos = |v: Vertex| face.iter().position(|&u| u == v).unwrap();
                    let next_is = |u: Vertex, v: Vertex| face[(pos(u) + 1) % k] == v;
                    let (u1, u2) = if next_is(cx.0, cx.1) { (cx.0, cx.1) } else { (cx.1, cx.0) };
                    // walking forward from u2 reaches the y chord at its first end
                    let mut i = (pos(u2) + 1) % k;
                    while face[i] != cy.0 && face[i] != cy.1 {
                        i = (i + 1) % k;
                    }
                    let w1 = face[i];
                    let w2 = if w1 == cy.0 { cy.1 } else { cy.0 };
                    let (a, b, c, d) = if u2 <= u1 { (u2, u1, w1, w2) } else { (u1, u2, w2, w1) };
                    (FaceKind::Type2, vec![a, b, c, d])
                }
            }
        };
        out.push(FaceType {
            face: f,
            vertices: face.clone(),
            kind,
            anchors,
        });
    }
    Ok(out)
}
