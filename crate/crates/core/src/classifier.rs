//! Extendability classes of `(G, x, y)`, decided structurally and checked
//! against graph-polynomial coefficients.

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{
    color_relation, triangle_runs, unique_three_coloring, ColoringError, TriangleRun, Verdict,
};
use crate::graph::{
    blocks_and_cutvertices, is_outerplanar, outerplane_embedding, Graph, OuterplaneEmbedding,
    Vertex,
};
use crate::polynomial::{graph_polynomial, graph_polynomial_with, EdgeOrder, PolyError, PolyOptions};
use crate::structure::{
    classify_faces, fundamental_subgraph, shrink_separating_chords, two_connection, ChoiceRule,
    FaceKind, FaceType, FundamentalSubgraph, StructureError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("graph is not outerplanar")]
    NotOuterplanar,
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

type Result<T> = std::result::Result<T, ClassifyError>;

/// The three extendability cases: `I` has a witness `x¹y¹`, `II` one with
/// `β + γ = 1`, `III` one with `x⁰y⁰`, all other exponents at most 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Case {
    I,
    II,
    III,
}

impl Case {
    pub fn from_verdict(v: Verdict) -> Case {
        match v {
            Verdict::ForcedEqual => Case::I,
            Verdict::ForcedDifferent => Case::II,
            Verdict::Free => Case::III,
        }
    }

    /// Exponent pairs `(β, γ)` that witness the case, in preference order.
    pub fn patterns(self) -> &'static [(u8, u8)] {
        match self {
            Case::I => &[(1, 1)],
            Case::II => &[(0, 1), (1, 0)],
            Case::III => &[(0, 0)],
        }
    }

    fn from_differing_pairs(k: usize) -> Case {
        match k {
            0 => Case::I,
            1 => Case::II,
            _ => Case::III,
        }
    }
}

impl std::fmt::Display for Case {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Case::I => "I",
            Case::II => "II",
            Case::III => "III",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Method {
    Structural,
    PolynomialOracle,
    #[default]
    Both,
}

/// Which structural rule decided the case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Route {
    Disconnected,
    Edge,
    Path,
    NearTriangulation,
    CutvertexChain,
    FaceType0,
    FaceType1,
    FaceType2,
    GeneralFaces,
    Uncovered,
}

/// Deliberate classifier faults for harness self-tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mutation {
    #[default]
    None,
    /// Near-triangulations: swap cases I and II.
    NegateNearTriangulation,
    /// Cutvertex chains: count one differing pair fewer.
    UndercountCutvertexPairs,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ClassifyOptions {
    pub method: Method,
    pub mutation: Mutation,
    pub rule: ChoiceRule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EtaSignature {
    pub eta1: i64,
    pub eta2: i64,
    pub eta3: i64,
}

impl EtaSignature {
    /// True when the values are `{-1, 0, 1}` as a multiset.
    pub fn is_unit_permutation(&self) -> bool {
        let mut v = [self.eta1, self.eta2, self.eta3];
        v.sort_unstable();
        v == [-1, 0, 1]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub exponents: Vec<u8>,
    pub coefficient: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Discrepancy {
    pub color_relation: Case,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structural: Option<Case>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Case>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExtendabilityReport {
    pub case: Case,
    pub beta: u8,
    pub gamma: u8,
    pub witness: Option<Witness>,
    pub method: Method,
    pub color_relation: Verdict,
    pub route: Route,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discrepancy: Option<Discrepancy>,
}

fn precheck(g: &Graph, x: Vertex, y: Vertex) -> Result<()> {
    for v in [x, y] {
        if v >= g.n() {
            return Err(StructureError::OutOfRange(v).into());
        }
    }
    if x == y {
        return Err(StructureError::SameVertex(x).into());
    }
    if !is_outerplanar(g) {
        return Err(ClassifyError::NotOuterplanar);
    }
    Ok(())
}

fn near_triangulation(g: &Graph) -> Result<OuterplaneEmbedding> {
    let emb = outerplane_embedding(g).map_err(StructureError::from)?;
    if !emb.is_near_triangulation() {
        return Err(StructureError::Precondition("expected a near-triangulation".into()).into());
    }
    Ok(emb)
}

/// Coefficients of `x¹ y^j z^(2-j)` with every other exponent 2, for
/// `j = 0, 1, 2`, in a near-triangulation whose degree-2 vertices are `x, y`.
pub fn eta_signature(g: &Graph, x: Vertex, y: Vertex, z: Vertex) -> Result<EtaSignature> {
    let n = g.n();
    if x >= n || y >= n || z >= n || x == y || z == x || z == y {
        return Err(StructureError::Precondition("x, y, z must be distinct vertices".into()).into());
    }
    near_triangulation(g)?;
    if n > 3 {
        let deg2: Vec<Vertex> = (0..n).filter(|&v| g.degree(v) == 2).collect();
        if deg2 != [x.min(y), x.max(y)] {
            return Err(StructureError::Precondition(format!(
                "degree-2 vertices are {deg2:?}, expected exactly {x} and {y}"
            ))
            .into());
        }
    }
    if !g.has_edge(y, z) {
        return Err(StructureError::Precondition(format!("{z} is not a neighbour of {y}")).into());
    }
    let mut caps = vec![Some(2u8); n];
    caps[x] = Some(1);
    let mut floors = vec![2u8; n];
    floors[x] = 1;
    floors[y] = 0;
    floors[z] = 0;
    let p = graph_polynomial_with(
        g,
        &PolyOptions {
            caps,
            floors: Some(floors),
            order: EdgeOrder::Frontier,
        },
    )?;
    let coef = |j: u8| -> Result<i64> {
        let mut e = vec![2u8; n];
        e[x] = 1;
        e[y] = j;
        e[z] = 2 - j;
        Ok(p.coefficient(&e)?)
    };
    Ok(EtaSignature {
        eta1: coef(0)?,
        eta2: coef(1)?,
        eta3: coef(2)?,
    })
}

/// Smallest `(β, γ)`-pattern witness in `P(g)` over the given patterns, with
/// `x`, `y` at the pattern and every other exponent at most 2.
fn oracle_witness(g: &Graph, x: Vertex, y: Vertex, patterns: &[(u8, u8)]) -> Result<Option<Witness>> {
    let n = g.n();
    let mut caps = vec![Some(2u8); n];
    caps[x] = Some(1);
    caps[y] = Some(1);
    let p = graph_polynomial(g, &caps)?;
    let bounds = vec![2u8; n];
    for &(b, c) in patterns {
        let mut exact = vec![None; n];
        exact[x] = Some(b);
        exact[y] = Some(c);
        if let Some((exponents, coefficient)) = p.find_monomial(&bounds, &exact) {
            return Ok(Some(Witness {
                exponents,
                coefficient,
            }));
        }
    }
    Ok(None)
}

/// The case read off `P(g)` alone: the smallest `β + γ` with a witness.
fn oracle_case_of(g: &Graph, x: Vertex, y: Vertex) -> Result<Option<Case>> {
    for case in [Case::III, Case::II, Case::I] {
        if oracle_witness(g, x, y, case.patterns())?.is_some() {
            return Ok(Some(case));
        }
    }
    Ok(None)
}

/// Extends a monomial of `P(core)` to one of `P(g)`. Every component of the
/// remaining edges meets the core in at most two vertices and contributes its
/// smallest monomial that is 0 on those vertices and at most 2 elsewhere.
/// Total degree then pins the split, so the coefficient is the product.
fn lift(g: &Graph, core: &FundamentalSubgraph, w: &Witness) -> Result<Option<Witness>> {
    let n = g.n();
    let mut in_core = vec![false; n];
    let mut exps = vec![0u8; n];
    for (i, &v) in core.vertex_map.iter().enumerate() {
        in_core[v] = true;
        exps[v] = w.exponents[i];
    }
    let core_edges: Vec<(Vertex, Vertex)> = core
        .graph
        .edges()
        .iter()
        .map(|&(u, v)| (core.vertex_map[u], core.vertex_map[v]))
        .collect();
    let rest = g.without_edges(&core_edges);
    let mut coefficient = w.coefficient;
    for comp in rest.components() {
        if comp.len() < 2 {
            continue;
        }
        let attach: Vec<usize> = (0..comp.len()).filter(|&i| in_core[comp[i]]).collect();
        if attach.len() > 2 {
            return Ok(None);
        }
        let h = rest.induced(&comp);
        let caps: Vec<Option<u8>> = (0..comp.len())
            .map(|i| Some(if attach.contains(&i) { 0 } else { 2 }))
            .collect();
        let p = graph_polynomial(&h, &caps)?;
        let Some((e, c)) = p.find_monomial(&vec![2; comp.len()], &[]) else {
            return Ok(None);
        };
        for (i, &v) in comp.iter().enumerate() {
            exps[v] += e[i];
        }
        coefficient = coefficient.checked_mul(c).ok_or(PolyError::Overflow)?;
    }
    Ok(Some(Witness {
        exponents: exps,
        coefficient,
    }))
}

/// The empty core `{x, y}`, used when `x` and `y` are disconnected.
fn marked_core(x: Vertex, y: Vertex) -> FundamentalSubgraph {
    let (a, b) = (x.min(y), x.max(y));
    FundamentalSubgraph {
        graph: Graph::empty(2),
        vertex_map: vec![a, b],
        x: usize::from(x > y),
        y: usize::from(y > x),
    }
}

/// A witness for `case` in `P(g)`: smallest core witness, lifted; falls back
/// to a direct search of `P(g)` when lifting is not possible.
fn witness_for(g: &Graph, x: Vertex, y: Vertex, case: Case) -> Result<Option<Witness>> {
    let core = match fundamental_subgraph(g, x, y) {
        Ok(f) => f,
        Err(StructureError::Disconnected) => marked_core(x, y),
        Err(e) => return Err(e.into()),
    };
    let local = if core.graph.edge_count() == 0 {
        case.patterns().iter().find(|&&p| p == (0, 0)).map(|_| Witness {
            exponents: vec![0, 0],
            coefficient: 1,
        })
    } else {
        oracle_witness(&core.graph, core.x, core.y, case.patterns())?
    };
    if let Some(w) = local {
        if let Some(lifted) = lift(g, &core, &w)? {
            return Ok(Some(lifted));
        }
    }
    oracle_witness(g, x, y, case.patterns())
}

/// Colour comparisons inside triangle runs, falling back to identity and
/// adjacency.
struct Classes<'a> {
    g: &'a Graph,
    runs: Vec<TriangleRun>,
}

impl<'a> Classes<'a> {
    fn new(g: &'a Graph, emb: &OuterplaneEmbedding) -> Result<Self> {
        let triangles: Vec<[Vertex; 3]> = emb
            .inner_faces
            .iter()
            .filter_map(|f| <[Vertex; 3]>::try_from(f.as_slice()).ok())
            .collect();
        Ok(Classes {
            g,
            runs: triangle_runs(g.n(), &triangles)?,
        })
    }

    fn same(&self, u: Vertex, v: Vertex) -> Result<bool> {
        if u == v {
            return Ok(true);
        }
        if let Some(s) = self.runs.iter().find_map(|r| r.same(u, v)) {
            return Ok(s);
        }
        if self.g.has_edge(u, v) {
            return Ok(false);
        }
        Err(StructureError::Uncovered(format!("no triangle run relates {u} and {v}")).into())
    }

    fn differing_pairs(&self, seq: &[Vertex]) -> Result<usize> {
        let mut k = 0;
        for w in seq.windows(2) {
            if !self.same(w[0], w[1])? {
                k += 1;
            }
        }
        Ok(k)
    }

    fn all_same(&self, seq: &[Vertex]) -> Result<bool> {
        Ok(self.differing_pairs(seq)? == 0)
    }
}

fn near_triangulation_case(f: &FundamentalSubgraph, mutation: Mutation) -> Result<Case> {
    let emb = near_triangulation(&f.graph)?;
    let classes = unique_three_coloring(&f.graph, &emb)?;
    let mut case = if classes.same(f.x, f.y) { Case::I } else { Case::II };
    if mutation == Mutation::NegateNearTriangulation {
        case = if case == Case::I { Case::II } else { Case::I };
    }
    Ok(case)
}

/// Case of a near-triangulation from its unique 3-colouring, with the witness
/// built from the η-signature of the shrunk graph and lifted back.
pub fn classify_near_triangulation(g: &Graph, x: Vertex, y: Vertex) -> Result<ExtendabilityReport> {
    classify_near_triangulation_with(g, x, y, Mutation::None)
}

pub fn classify_near_triangulation_with(
    g: &Graph,
    x: Vertex,
    y: Vertex,
    mutation: Mutation,
) -> Result<ExtendabilityReport> {
    precheck(g, x, y)?;
    near_triangulation(g)?;
    let f = shrink_separating_chords(g, x, y)?;
    let relation = color_relation(g, x, y)?.verdict;
    let (case, local) = if f.is_edge() {
        let sign = if f.x < f.y { 1 } else { -1 };
        let mut e = vec![0u8; 2];
        e[f.y] = 1;
        (Case::II, Witness { exponents: e, coefficient: -sign })
    } else {
        let case = near_triangulation_case(&f, mutation)?;
        let z = *f.graph.neighbors(f.y).iter().find(|&&v| v != f.x).expect("y has two neighbours");
        let eta = eta_signature(&f.graph, f.x, f.y, z)?;
        let mut e = vec![2u8; f.graph.n()];
        e[f.x] = 1;
        let coefficient = if case == Case::II {
            e[f.y] = 0;
            e[z] = 2;
            eta.eta1
        } else {
            e[f.y] = 1;
            e[z] = 1;
            eta.eta2
        };
        (case, Witness { exponents: e, coefficient })
    };
    let lifted = if local.coefficient != 0 { lift(g, &f, &local)? } else { None };
    let witness = match lifted {
        Some(w) => Some(w),
        None => oracle_witness(g, x, y, case.patterns())?,
    };
    Ok(assemble(
        g,
        x,
        y,
        case,
        Method::Structural,
        relation,
        Route::NearTriangulation,
        witness,
        Some(case),
        None,
    ))
}

/// Terminals `x, c1, ..., y` of a chain of 2-connected blocks, with each block.
fn cutvertex_sequence(g: &Graph, x: Vertex, y: Vertex) -> Result<(Vec<Vertex>, Vec<FundamentalSubgraph>)> {
    let bc = blocks_and_cutvertices(g).map_err(StructureError::from)?;
    let mut seq = vec![x];
    let mut blocks = Vec::new();
    let mut cur = x;
    let mut used = vec![false; bc.blocks.len()];
    while cur != y {
        let Some(b) = bc
            .blocks_of(cur)
            .into_iter()
            .find(|&b| !used[b])
        else {
            return Err(StructureError::Precondition("blocks do not form an x–y chain".into()).into());
        };
        used[b] = true;
        let block = &bc.blocks[b];
        let exit = if block.contains(y) {
            y
        } else {
            let exits: Vec<Vertex> = bc.incidence[b].iter().copied().filter(|&c| c != cur).collect();
            match exits[..] {
                [c] => c,
                _ => {
                    return Err(StructureError::Precondition("blocks do not form an x–y chain".into()).into())
                }
            }
        };
        let (local, map) = block.to_graph();
        let idx = |v: Vertex| map.binary_search(&v).unwrap();
        blocks.push(FundamentalSubgraph {
            graph: local,
            x: idx(cur),
            y: idx(exit),
            vertex_map: map,
        });
        seq.push(exit);
        cur = exit;
    }
    if used.iter().any(|&u| !u) {
        return Err(StructureError::Precondition("a block lies off the x–y chain".into()).into());
    }
    Ok((seq, blocks))
}

fn cutvertex_case(g: &Graph, x: Vertex, y: Vertex, mutation: Mutation) -> Result<Case> {
    let (_, blocks) = cutvertex_sequence(g, x, y)?;
    let mut differing = 0usize;
    for b in &blocks {
        let emb = near_triangulation(&b.graph)?;
        if !unique_three_coloring(&b.graph, &emb)?.same(b.x, b.y) {
            differing += 1;
        }
    }
    if mutation == Mutation::UndercountCutvertexPairs {
        differing = differing.saturating_sub(1);
    }
    Ok(Case::from_differing_pairs(differing))
}

/// Chains of 2-connected near-triangulations: counts successive terminals in
/// different colour classes.
pub fn classify_cutvertex_chain(g: &Graph, x: Vertex, y: Vertex) -> Result<ExtendabilityReport> {
    classify_cutvertex_chain_with(g, x, y, Mutation::None)
}

pub fn classify_cutvertex_chain_with(
    g: &Graph,
    x: Vertex,
    y: Vertex,
    mutation: Mutation,
) -> Result<ExtendabilityReport> {
    precheck(g, x, y)?;
    let case = cutvertex_case(g, x, y, mutation)?;
    structural_report(g, x, y, case, Route::CutvertexChain)
}

fn type0_case(g: &Graph, classes: &Classes, x: Vertex, y: Vertex, face: &FaceType) -> Result<Case> {
    let [m, a, b] = face.anchors[..] else {
        return Err(StructureError::Precondition("type 0 face needs anchors m, a, b".into()).into());
    };
    let other = if m == x { y } else { x };
    let hit = |v: Vertex| -> Result<bool> { Ok(g.has_edge(m, v) && classes.same(v, other)?) };
    Ok(if hit(a)? || hit(b)? { Case::II } else { Case::III })
}

fn type1_case(classes: &Classes, x: Vertex, y: Vertex, face: &FaceType) -> Result<Case> {
    let apex = *face
        .anchors
        .first()
        .ok_or_else(|| StructureError::Precondition("type 1 face without apex".into()))?;
    Ok(Case::from_differing_pairs(classes.differing_pairs(&[x, apex, y])?))
}

fn type2_case(g: &Graph, classes: &Classes, x: Vertex, y: Vertex, face: &FaceType) -> Result<Case> {
    let [a, b, c, d] = face.anchors[..] else {
        return Err(StructureError::Precondition("type 2 face needs anchors a, b, c, d".into()).into());
    };
    let side = |p: Vertex, q: Vertex| -> Result<bool> {
        Ok(g.has_edge(p, q) && classes.same(x, p)? && classes.same(y, q)?)
    };
    Ok(if side(a, c)? || side(b, d)? { Case::II } else { Case::III })
}

fn single_face(g: &Graph, x: Vertex, y: Vertex) -> Result<(OuterplaneEmbedding, FaceType)> {
    let emb = outerplane_embedding(g).map_err(StructureError::from)?;
    let mut faces = classify_faces(&emb, x, y)?;
    if faces.len() != 1 {
        return Err(StructureError::Precondition(format!(
            "expected exactly one non-triangular face, found {}",
            faces.len()
        ))
        .into());
    }
    Ok((emb, faces.remove(0)))
}

/// One non-triangular face containing `x` (or `y`): case II iff the marked
/// vertex is adjacent to a chord end coloured like the other marked vertex.
pub fn classify_face_type0(g: &Graph, x: Vertex, y: Vertex) -> Result<ExtendabilityReport> {
    precheck(g, x, y)?;
    let (emb, face) = single_face(g, x, y)?;
    if face.kind != FaceKind::Type0 {
        return Err(StructureError::Precondition(format!("face is {:?}", face.kind)).into());
    }
    let case = type0_case(g, &Classes::new(g, &emb)?, x, y, &face)?;
    structural_report(g, x, y, case, Route::FaceType0)
}

/// One non-triangular face with an apex: the apex acts as a cutvertex.
pub fn classify_face_type1(g: &Graph, x: Vertex, y: Vertex) -> Result<ExtendabilityReport> {
    precheck(g, x, y)?;
    let (emb, face) = single_face(g, x, y)?;
    if face.kind != FaceKind::Type1 {
        return Err(StructureError::Precondition(format!("face is {:?}", face.kind)).into());
    }
    let case = type1_case(&Classes::new(g, &emb)?, x, y, &face)?;
    structural_report(g, x, y, case, Route::FaceType1)
}

/// One non-triangular face met along two disjoint chords `ab`, `cd`.
pub fn classify_face_type2(g: &Graph, x: Vertex, y: Vertex) -> Result<ExtendabilityReport> {
    precheck(g, x, y)?;
    let (emb, face) = single_face(g, x, y)?;
    if face.kind != FaceKind::Type2 {
        return Err(StructureError::Precondition(format!("face is {:?}", face.kind)).into());
    }
    let case = type2_case(g, &Classes::new(g, &emb)?, x, y, &face)?;
    structural_report(g, x, y, case, Route::FaceType2)
}

/// Several non-triangular faces in a 2-connected xy-fundamental graph.
fn general_faces_case(
    g: &Graph,
    emb: &OuterplaneEmbedding,
    x: Vertex,
    y: Vertex,
    faces: &[FaceType],
) -> Result<Case> {
    let classes = Classes::new(g, emb)?;
    let order = crate::structure::dual_path(emb, x, y);
    let mut faces: Vec<&FaceType> = faces.iter().collect();
    let rank = |f: &FaceType| order.iter().position(|&h| h == f.face);
    if faces.iter().any(|f| rank(f).is_none()) {
        return Err(StructureError::Uncovered("non-triangular face off the x–y face path".into()).into());
    }
    faces.sort_by_key(|f| rank(f));
    let special: Vec<usize> = (0..faces.len())
        .filter(|&i| faces[i].kind != FaceKind::Type1)
        .collect();
    let apexes = |range: std::ops::Range<usize>| -> Vec<Vertex> {
        faces[range].iter().map(|f| f.anchors[0]).collect()
    };
    let chain = |first: Vertex, mid: Vec<Vertex>, last: Vertex| -> Vec<Vertex> {
        let mut s = vec![first];
        s.extend(mid);
        s.push(last);
        s
    };
    match special[..] {
        [] => {
            let seq = chain(x, apexes(0..faces.len()), y);
            Ok(Case::from_differing_pairs(classes.differing_pairs(&seq)?))
        }
        [p] => {
            let f = faces[p];
            let before = apexes(0..p);
            let after = apexes(p + 1..faces.len());
            let ok = match f.kind {
                FaceKind::Type0 => {
                    let [m, a, b] = f.anchors[..] else { unreachable!() };
                    let mut hit = false;
                    for v0 in [a, b] {
                        if !g.has_edge(m, v0) {
                            continue;
                        }
                        let seq = if m == x {
                            chain(v0, after.clone(), y)
                        } else {
                            chain(x, before.clone(), v0)
                        };
                        hit |= classes.all_same(&seq)?;
                    }
                    hit
                }
                FaceKind::Type2 => {
                    let [a, b, c, d] = f.anchors[..] else { unreachable!() };
                    let side = |p: Vertex, q: Vertex| -> Result<bool> {
                        Ok(g.has_edge(p, q)
                            && classes.all_same(&chain(x, before.clone(), p))?
                            && classes.all_same(&chain(q, after.clone(), y))?)
                    };
                    side(a, c)? || side(b, d)?
                }
                FaceKind::Type1 => unreachable!(),
            };
            Ok(if ok { Case::II } else { Case::III })
        }
        _ => Ok(Case::III),
    }
}

fn faces_case(g: &Graph, x: Vertex, y: Vertex) -> Result<(Case, Route)> {
    let emb = outerplane_embedding(g).map_err(StructureError::from)?;
    let faces = classify_faces(&emb, x, y)?;
    if let [face] = &faces[..] {
        let classes = Classes::new(g, &emb)?;
        return Ok(match face.kind {
            FaceKind::Type0 => (type0_case(g, &classes, x, y, face)?, Route::FaceType0),
            FaceKind::Type1 => (type1_case(&classes, x, y, face)?, Route::FaceType1),
            FaceKind::Type2 => (type2_case(g, &classes, x, y, face)?, Route::FaceType2),
        });
    }
    Ok((general_faces_case(g, &emb, x, y, &faces)?, Route::GeneralFaces))
}

/// The structural decision: fundamental subgraph, then the rule for its shape.
pub fn structural_case(g: &Graph, x: Vertex, y: Vertex, opts: &ClassifyOptions) -> Result<(Case, Route)> {
    precheck(g, x, y)?;
    let f = match fundamental_subgraph(g, x, y) {
        Ok(f) => f,
        Err(StructureError::Disconnected) => return Ok((Case::III, Route::Disconnected)),
        Err(e) => return Err(e.into()),
    };
    if f.is_edge() {
        return Ok((Case::II, Route::Edge));
    }
    if f.graph.is_path() {
        return Ok((Case::III, Route::Path));
    }
    let bc = blocks_and_cutvertices(&f.graph).map_err(StructureError::from)?;
    if bc.blocks.len() == 1 {
        let emb = outerplane_embedding(&f.graph).map_err(StructureError::from)?;
        if emb.is_near_triangulation() {
            return Ok((near_triangulation_case(&f, opts.mutation)?, Route::NearTriangulation));
        }
        return faces_case(&f.graph, f.x, f.y);
    }
    let all_near_tri = bc.blocks.iter().all(|b| {
        !b.is_bridge()
            && outerplane_embedding(&b.to_graph().0).is_ok_and(|e| e.is_near_triangulation())
    });
    if all_near_tri {
        return Ok((cutvertex_case(&f.graph, f.x, f.y, opts.mutation)?, Route::CutvertexChain));
    }
    let tc = two_connection(&f.graph, f.x, f.y, opts.rule)?;
    faces_case(&tc.graph, f.x, f.y)
}

/// Case according to the capped polynomial of the fundamental subgraph.
pub fn oracle_case(g: &Graph, x: Vertex, y: Vertex) -> Result<Option<Case>> {
    precheck(g, x, y)?;
    match fundamental_subgraph(g, x, y) {
        Ok(f) => oracle_case_of(&f.graph, f.x, f.y),
        Err(StructureError::Disconnected) => oracle_case_of(g, x, y),
        Err(e) => Err(e.into()),
    }
}

fn structural_report(g: &Graph, x: Vertex, y: Vertex, case: Case, route: Route) -> Result<ExtendabilityReport> {
    let relation = color_relation(g, x, y)?.verdict;
    let witness = witness_for(g, x, y, case)?;
    Ok(assemble(g, x, y, case, Method::Structural, relation, route, witness, Some(case), None))
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    _g: &Graph,
    x: Vertex,
    y: Vertex,
    case: Case,
    method: Method,
    relation: Verdict,
    route: Route,
    witness: Option<Witness>,
    structural: Option<Case>,
    oracle: Option<Case>,
) -> ExtendabilityReport {
    let normative = Case::from_verdict(relation);
    let (beta, gamma) = witness
        .as_ref()
        .map(|w| (w.exponents[x], w.exponents[y]))
        .unwrap_or(case.patterns()[0]);
    let mut notes = Vec::new();
    if structural.is_some_and(|c| c != normative) {
        notes.push("structural case differs from the colour relation");
    }
    if oracle.is_some_and(|c| c != normative) {
        notes.push("oracle case differs from the colour relation");
    }
    if oracle.is_some() && oracle.is_none_or(|c| c != case) && method != Method::PolynomialOracle {
        notes.push("oracle case differs from the reported case");
    }
    match &witness {
        None => notes.push("no witness monomial found for the reported case"),
        Some(w) if w.coefficient == 0 => notes.push("witness coefficient vanishes"),
        _ => {}
    }
    notes.dedup();
    let discrepancy = (!notes.is_empty()).then(|| Discrepancy {
        color_relation: normative,
        structural,
        oracle,
        note: notes.join("; "),
    });
    ExtendabilityReport {
        case,
        beta,
        gamma,
        witness,
        method,
        color_relation: relation,
        route,
        discrepancy,
    }
}

/// Full pipeline. The colour relation is the normative answer; structural and
/// oracle routes are cross-checked against it according to `opts.method`.
pub fn classify(g: &Graph, x: Vertex, y: Vertex, opts: &ClassifyOptions) -> Result<ExtendabilityReport> {
    precheck(g, x, y)?;
    let relation = color_relation(g, x, y)?.verdict;
    let normative = Case::from_verdict(relation);
    let (structural, route) = if opts.method == Method::PolynomialOracle {
        (None, Route::Uncovered)
    } else {
        match structural_case(g, x, y, opts) {
            Ok((c, r)) => (Some(c), r),
            Err(ClassifyError::Structure(StructureError::Uncovered(_))) => (None, Route::Uncovered),
            Err(e) => return Err(e),
        }
    };
    let need_oracle = opts.method != Method::Structural || structural.is_none();
    let oracle = if need_oracle { oracle_case(g, x, y)? } else { None };
    let method = if structural.is_none() {
        Method::PolynomialOracle
    } else {
        opts.method
    };
    let case = match method {
        Method::Both => normative,
        Method::Structural => structural.expect("structural route succeeded"),
        Method::PolynomialOracle => oracle.unwrap_or(normative),
    };
    let witness = witness_for(g, x, y, case)?;
    Ok(assemble(g, x, y, case, method, relation, route, witness, structural, oracle))
}
