use serde::Serialize;

use super::{outer_cycle, Graph, GraphError, Vertex};

/// The outerplane embedding of a 2-connected outerplanar graph.
///
/// Inner faces list their vertices in outer-cycle order, which is also their
/// boundary order; faces are sorted by the outer-cycle positions they cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OuterplaneEmbedding {
    pub outer_cycle: Vec<Vertex>,
    pub inner_faces: Vec<Vec<Vertex>>,
    pub chords: Vec<(Vertex, Vertex)>,
}

impl OuterplaneEmbedding {
    /// Position of every vertex on the outer cycle.
    pub fn positions(&self) -> Vec<usize> {
        let n = self.outer_cycle.iter().copied().max().map_or(0, |m| m + 1);
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in self.outer_cycle.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    pub fn is_chord(&self, u: Vertex, v: Vertex) -> bool {
        self.chords.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Indices of the inner faces containing `v`.
    pub fn faces_containing(&self, v: Vertex) -> Vec<usize> {
        (0..self.inner_faces.len())
            .filter(|&f| self.inner_faces[f].contains(&v))
            .collect()
    }

    /// True when `u` and `v` are consecutive on the boundary of face `f`.
    pub fn face_has_edge(&self, f: usize, u: Vertex, v: Vertex) -> bool {
        let face = &self.inner_faces[f];
        let k = face.len();
        (0..k).any(|i| {
            let (a, b) = (face[i], face[(i + 1) % k]);
            (a == u && b == v) || (a == v && b == u)
        })
    }

    /// Chords shared by two faces, as `(face_a, face_b, chord)`.
    pub fn dual_edges(&self) -> Vec<(usize, usize, (Vertex, Vertex))> {
        let mut out = Vec::new();
        for &(u, v) in &self.chords {
            let sides: Vec<usize> = (0..self.inner_faces.len())
                .filter(|&f| self.face_has_edge(f, u, v))
                .collect();
            debug_assert_eq!(sides.len(), 2);
            out.push((sides[0], sides[1], (u, v)));
        }
        out
    }

    pub fn is_near_triangulation(&self) -> bool {
        self.inner_faces.iter().all(|f| f.len() == 3)
    }
}

/// Splits the polygon along every chord. Requires `g` 2-connected and
/// outerplanar; anything else is a structure error.
pub fn outerplane_embedding(g: &Graph) -> Result<OuterplaneEmbedding, GraphError> {
    let cycle = outer_cycle(g)?;
    let k = cycle.len();
    let mut pos = vec![0; g.n()];
    for (i, &v) in cycle.iter().enumerate() {
        pos[v] = i;
    }
    let on_cycle = |u: Vertex, v: Vertex| {
        let d = pos[u].abs_diff(pos[v]);
        d == 1 || d == k - 1
    };
    let chords: Vec<(Vertex, Vertex)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| !on_cycle(u, v))
        .collect();

    // Pieces are lists of cycle positions in increasing order.
    let mut pieces: Vec<Vec<usize>> = vec![(0..k).collect()];
    for &(u, v) in &chords {
        let (p, q) = (pos[u].min(pos[v]), pos[u].max(pos[v]));
        let idx = pieces
            .iter()
            .position(|piece| piece.contains(&p) && piece.contains(&q))
            .ok_or_else(|| GraphError::Structure("chords cross".into()))?;
        let piece = pieces.swap_remove(idx);
        let inner: Vec<usize> = piece.iter().copied().filter(|&i| i >= p && i <= q).collect();
        let outer: Vec<usize> = piece.iter().copied().filter(|&i| i <= p || i >= q).collect();
        pieces.push(inner);
        pieces.push(outer);
    }
    pieces.sort();
    let inner_faces = pieces
        .into_iter()
        .map(|piece| piece.into_iter().map(|i| cycle[i]).collect())
        .collect();
    Ok(OuterplaneEmbedding {
        outer_cycle: cycle,
        inner_faces,
        chords,
    })
}

/// One vertex per inner face, adjacent when the faces share a chord.
pub fn weak_dual(emb: &OuterplaneEmbedding) -> Graph {
    Graph::from_edges(
        emb.inner_faces.len(),
        emb.dual_edges().into_iter().map(|(a, b, _)| (a, b)),
    )
    .expect("faces are distinct")
}
