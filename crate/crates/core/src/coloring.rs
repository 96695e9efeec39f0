//! Proper colourings, forced colour classes, and list colouring.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, OuterplaneEmbedding, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("x and y must be distinct (both are {0})")]
    SameVertex(Vertex),
    #[error("graph has no proper 3-colouring")]
    NotColorable,
    #[error("structure error: {0}")]
    Structure(String),
    #[error("search budget of {limit} nodes exceeded; lower n or the colour universe")]
    Budget { limit: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Streams every proper colouring with colours `0..k`, in lexicographic order.
pub struct ProperColorings<'a> {
    g: &'a Graph,
    k: u8,
    colors: Vec<u8>,
    // next colour to try at each depth
    depth: usize,
    started: bool,
    done: bool,
}

impl<'a> ProperColorings<'a> {
    fn fits(&self, v: Vertex, c: u8) -> bool {
        self.g
            .neighbors(v)
            .iter()
            .all(|&w| w >= v || self.colors[w] != c)
    }

    /// Advances to the next full colouring; `colors[depth]` is the slot to bump.
    fn advance(&mut self) -> bool {
        let n = self.g.n();
        loop {
            let v = self.depth;
            let mut c = self.colors[v].wrapping_add(1);
            while c < self.k && !self.fits(v, c) {
                c += 1;
            }
            if c < self.k {
                self.colors[v] = c;
                if v + 1 == n {
                    return true;
                }
                self.depth += 1;
                self.colors[self.depth] = u8::MAX;
            } else {
                if v == 0 {
                    return false;
                }
                self.depth -= 1;
            }
        }
    }
}

impl Iterator for ProperColorings<'_> {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if self.done {
            return None;
        }
        if self.g.n() == 0 {
            self.done = true;
            return Some(Vec::new());
        }
        if !self.started {
            self.started = true;
            self.colors[0] = u8::MAX;
        }
        if self.advance() {
            Some(self.colors.clone())
        } else {
            self.done = true;
            None
        }
    }
}

pub fn enumerate_proper_colorings(g: &Graph, k: u8) -> ProperColorings<'_> {
    ProperColorings {
        g,
        k,
        colors: vec![0; g.n()],
        depth: 0,
        started: false,
        done: k == 0 && g.n() > 0,
    }
}

pub fn count_proper_colorings(g: &Graph, k: u8) -> u64 {
    enumerate_proper_colorings(g, k).count() as u64
}

/// Some proper `k`-colouring with the given vertices precoloured, found by
/// backtracking in index order.
pub fn find_coloring(g: &Graph, k: u8, fixed: &[(Vertex, u8)]) -> Option<Vec<u8>> {
    let lists: Vec<Vec<u32>> = (0..g.n())
        .map(|v| match fixed.iter().find(|&&(u, _)| u == v) {
            Some(&(_, c)) => vec![u32::from(c)],
            None => (0..u32::from(k)).collect(),
        })
        .collect();
    list_colorable(g, &ListAssignment { lists })
        .map(|c| c.into_iter().map(|x| x as u8).collect())
}

/// Colour class per vertex of a near-triangulation's unique 3-colouring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorClasses {
    pub class_of: Vec<u8>,
}

impl ColorClasses {
    pub fn same(&self, u: Vertex, v: Vertex) -> bool {
        self.class_of[u] == self.class_of[v]
    }
}

/// Colour classes forced inside one edge-connected run of triangles.
/// `class[v]` is `None` for vertices outside the run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleRun {
    pub class: Vec<Option<u8>>,
}

impl TriangleRun {
    /// `Some(equal)` when both vertices lie in the run.
    pub fn same(&self, u: Vertex, v: Vertex) -> Option<bool> {
        Some(self.class[u]? == self.class[v]?)
    }
}

/// Splits the triangles into runs connected through shared edges and
/// propagates classes inside each run. Each run is seeded at its first listed
/// triangle with classes 0, 1, 2.
pub fn triangle_runs(n: usize, triangles: &[[Vertex; 3]]) -> Result<Vec<TriangleRun>, ColoringError> {
    let shares_edge =
        |a: &[Vertex; 3], b: &[Vertex; 3]| a.iter().filter(|v| b.contains(v)).count() == 2;
    let mut done = vec![false; triangles.len()];
    let mut runs = Vec::new();
    for seed in 0..triangles.len() {
        if done[seed] {
            continue;
        }
        let mut class: Vec<Option<u8>> = vec![None; n];
        let mut queue = vec![seed];
        done[seed] = true;
        for (i, &v) in triangles[seed].iter().enumerate() {
            class[v] = Some(i as u8);
        }
        while let Some(t) = queue.pop() {
            for u in 0..triangles.len() {
                if done[u] || !shares_edge(&triangles[t], &triangles[u]) {
                    continue;
                }
                done[u] = true;
                let tri = triangles[u];
                let known: Vec<u8> = tri.iter().filter_map(|&v| class[v]).collect();
                if let [w] = tri.iter().copied().filter(|&v| class[v].is_none()).collect::<Vec<_>>()[..] {
                    class[w] = Some(3 - known[0] - known[1]);
                }
                let c: Vec<u8> = tri.iter().map(|&v| class[v].expect("coloured")).collect();
                if c[0] == c[1] || c[1] == c[2] || c[0] == c[2] {
                    return Err(ColoringError::Structure(format!(
                        "colour propagation conflict on triangle {tri:?}"
                    )));
                }
                queue.push(u);
            }
        }
        runs.push(TriangleRun { class });
    }
    Ok(runs)
}

/// The unique 3-colouring of a 2-connected outerplane near-triangulation.
pub fn unique_three_coloring(
    g: &Graph,
    emb: &OuterplaneEmbedding,
) -> Result<ColorClasses, ColoringError> {
    let mut triangles = Vec::with_capacity(emb.inner_faces.len());
    for f in &emb.inner_faces {
        match f.as_slice() {
            &[a, b, c] => triangles.push([a, b, c]),
            _ => {
                return Err(ColoringError::Structure(format!(
                    "inner face {f:?} is not a triangle"
                )))
            }
        }
    }
    let runs = triangle_runs(g.n(), &triangles)?;
    if runs.len() != 1 {
        return Err(ColoringError::Structure("inner faces do not form one run".into()));
    }
    let class_of = runs[0]
        .class
        .iter()
        .copied()
        .map(|c| c.ok_or_else(|| ColoringError::Structure("vertex on no inner face".into())))
        .collect::<Result<Vec<u8>, _>>()?;
    if g.edges().iter().any(|&(u, v)| class_of[u] == class_of[v]) {
        return Err(ColoringError::Structure("propagated classes are not proper".into()));
    }
    Ok(ColorClasses { class_of })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Verdict {
    ForcedEqual,
    ForcedDifferent,
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ColorRelation {
    pub verdict: Verdict,
    pub witness_equal: Option<Vec<u8>>,
    pub witness_diff: Option<Vec<u8>>,
}

/// How `x` and `y` relate across all proper 3-colourings. Colour symmetry lets
/// `x` take colour 0 and, in the unequal case, `y` colour 1.
pub fn color_relation(g: &Graph, x: Vertex, y: Vertex) -> Result<ColorRelation, ColoringError> {
    if x == y {
        return Err(ColoringError::SameVertex(x));
    }
    if x >= g.n() || y >= g.n() {
        return Err(ColoringError::InvalidArgument(format!(
            "vertex out of range for {} vertices",
            g.n()
        )));
    }
    let witness_equal = find_coloring(g, 3, &[(x, 0), (y, 0)]);
    let witness_diff = find_coloring(g, 3, &[(x, 0), (y, 1)]);
    let verdict = match (&witness_equal, &witness_diff) {
        (Some(_), Some(_)) => Verdict::Free,
        (Some(_), None) => Verdict::ForcedEqual,
        (None, Some(_)) => Verdict::ForcedDifferent,
        (None, None) => return Err(ColoringError::NotColorable),
    };
    Ok(ColorRelation {
        verdict,
        witness_equal,
        witness_diff,
    })
}

/// A colour list per vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ListAssignment {
    pub lists: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListEntry {
    pub vertex: Vertex,
    pub colors: Vec<u32>,
}

impl ListAssignment {
    pub fn to_entries(&self) -> Vec<ListEntry> {
        self.lists
            .iter()
            .enumerate()
            .map(|(vertex, colors)| ListEntry {
                vertex,
                colors: colors.clone(),
            })
            .collect()
    }

    pub fn from_entries(n: usize, entries: &[ListEntry]) -> Result<Self, ColoringError> {
        let mut lists = vec![Vec::new(); n];
        for e in entries {
            if e.vertex >= n {
                return Err(ColoringError::InvalidArgument(format!(
                    "list for vertex {} out of range",
                    e.vertex
                )));
            }
            lists[e.vertex] = e.colors.clone();
        }
        if let Some(v) = lists.iter().position(Vec::is_empty) {
            return Err(ColoringError::InvalidArgument(format!("empty list at vertex {v}")));
        }
        Ok(ListAssignment { lists })
    }
}

impl Serialize for ListAssignment {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_entries().serialize(s)
    }
}

/// A proper colouring drawn from the lists, or `None`. Vertices are tried
/// smallest list first, ties by index.
pub fn list_colorable(g: &Graph, lists: &ListAssignment) -> Option<Vec<u32>> {
    let n = g.n();
    if lists.lists.len() != n {
        return None;
    }
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&v| (lists.lists[v].len(), v));
    let mut color: Vec<Option<u32>> = vec![None; n];
    fn go(
        g: &Graph,
        lists: &ListAssignment,
        order: &[Vertex],
        i: usize,
        color: &mut Vec<Option<u32>>,
    ) -> bool {
        let Some(&v) = order.get(i) else {
            return true;
        };
        for &c in &lists.lists[v] {
            if g.neighbors(v).iter().all(|&w| color[w] != Some(c)) {
                color[v] = Some(c);
                if go(g, lists, order, i + 1, color) {
                    return true;
                }
            }
        }
        color[v] = None;
        false
    }
    go(g, lists, &order, 0, &mut color).then(|| color.into_iter().map(Option::unwrap).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtendabilityCheck {
    pub extendable: bool,
    /// First failing assignment in search order, when not extendable.
    pub failing: Option<ListAssignment>,
    /// Colours `0..universe` were searched.
    pub universe: u32,
    pub nodes: u64,
}

pub const DEFAULT_UNIVERSE: u32 = 6;
pub const DEFAULT_BUDGET: u64 = 20_000_000;

/// Sorted `size`-subsets of the colours, restricted to one representative per
/// colour permutation: colours not used so far may only enter as the next
/// consecutive fresh ones.
fn canonical_lists(size: usize, used: u32, universe: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for fresh in 0..=size {
        let old = size - fresh;
        if old as u32 > used || used + fresh as u32 > universe {
            continue;
        }
        let new: Vec<u32> = (used..used + fresh as u32).collect();
        for subset in subsets(used, old) {
            let mut l = subset;
            l.extend(&new);
            out.push(l);
        }
    }
    out.sort();
    out
}

fn subsets(n: u32, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: u32, n: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..n {
            cur.push(c);
            rec(c + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Whether every assignment of lists of size `i` to `x`, `j` to `y` and 3 to
/// every other vertex, with colours from `0..universe`, admits a colouring.
pub fn is_extendable(
    g: &Graph,
    x: Vertex,
    y: Vertex,
    i: usize,
    j: usize,
    universe: u32,
    budget: u64,
) -> Result<ExtendabilityCheck, ColoringError> {
    let n = g.n();
    if x == y {
        return Err(ColoringError::SameVertex(x));
    }
    if x >= n || y >= n {
        return Err(ColoringError::InvalidArgument("vertex out of range".into()));
    }
    if i == 0 || j == 0 || universe < 3 || i as u32 > universe || j as u32 > universe {
        return Err(ColoringError::InvalidArgument(format!(
            "need list sizes ≥ 1 within a universe of at least 3 (got i = {i}, j = {j}, universe = {universe})"
        )));
    }
    let mut order = vec![x, y];
    order.extend((0..n).filter(|&v| v != x && v != y));
    let size = |v: Vertex| if v == x { i } else if v == y { j } else { 3 };

    // safe[d]: vertices order[d..], all with 3-lists, can be peeled with at
    // most two neighbours among the still-present ones, so any colouring of
    // order[..d] extends.
    let safe: Vec<bool> = (0..=n)
        .map(|d| {
            if d < 2 {
                return false;
            }
            let mut present: Vec<bool> = vec![true; n];
            let mut left: Vec<Vertex> = order[d..].to_vec();
            loop {
                if left.is_empty() {
                    return true;
                }
                let pos = left.iter().position(|&v| {
                    g.neighbors(v).iter().filter(|&&w| present[w]).count() <= 2
                });
                match pos {
                    Some(p) => {
                        present[left[p]] = false;
                        left.swap_remove(p);
                    }
                    None => return false,
                }
            }
        })
        .collect();

    struct Search<'a> {
        g: &'a Graph,
        order: Vec<Vertex>,
        sizes: Vec<usize>,
        universe: u32,
        budget: u64,
        nodes: u64,
        safe: Vec<bool>,
        lists: Vec<Vec<u32>>,
    }

    impl Search<'_> {
        fn prefix_colorable(&self, d: usize) -> bool {
            let verts = &self.order[..d];
            let sub = self.g.induced(verts);
            let lists = ListAssignment {
                lists: verts.iter().map(|&v| self.lists[v].clone()).collect(),
            };
            list_colorable(&sub, &lists).is_some()
        }

        /// Returns the failing assignment under this node, if any.
        fn run(&mut self, d: usize, used: u32) -> Result<Option<Vec<Vec<u32>>>, ColoringError> {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(ColoringError::Budget { limit: self.budget });
            }
            if !self.prefix_colorable(d) {
                let mut full = self.lists.clone();
                let mut used = used;
                for k in d..self.order.len() {
                    let v = self.order[k];
                    let l = canonical_lists(self.sizes[k], used, self.universe)
                        .into_iter()
                        .next()
                        .expect("universe holds a list");
                    used = used.max(l.iter().max().map_or(0, |&m| m + 1));
                    full[v] = l;
                }
                return Ok(Some(full));
            }
            if self.safe[d] {
                return Ok(None);
            }
            let v = self.order[d];
            for l in canonical_lists(self.sizes[d], used, self.universe) {
                let next_used = used.max(l.iter().max().map_or(0, |&m| m + 1));
                self.lists[v] = l;
                if let Some(f) = self.run(d + 1, next_used)? {
                    return Ok(Some(f));
                }
            }
            self.lists[v].clear();
            Ok(None)
        }
    }

    let sizes = order.iter().map(|&v| size(v)).collect();
    let mut s = Search {
        g,
        order,
        sizes,
        universe,
        budget,
        nodes: 0,
        safe,
        lists: vec![Vec::new(); n],
    };
    let failing = s.run(0, 0)?;
    Ok(ExtendabilityCheck {
        extendable: failing.is_none(),
        failing: failing.map(|lists| ListAssignment { lists }),
        universe,
        nodes: s.nodes,
    })
}
