//! Instance generators and the exhaustive cross-check suites.

use std::collections::{BTreeMap, BTreeSet};
use std::hash::{Hash, Hasher};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::classifier::{
    classify, classify_cutvertex_chain_with, classify_near_triangulation_with, eta_signature,
    structural_case, Case, ClassifyError, ClassifyOptions, Method, Mutation, Route,
};
use crate::coloring::{
    color_relation, find_coloring, is_extendable, list_colorable, ColoringError, ListAssignment,
};
use crate::graph::{
    blocks_and_cutvertices, canonical_form, encode_graph6, is_outerplanar,
    outerplane_embedding, Graph, Vertex,
};
use crate::polynomial::{glue_at_vertex, glued_index, graph_polynomial, uncapped, MultiPoly, PolyError};
use crate::structure::{ChoiceRule, StructureError};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("mode {mode}: max-n {max_n} is out of range ({allowed})")]
    Bound {
        mode: &'static str,
        max_n: usize,
        allowed: String,
    },
    #[error("enumeration of {what} on {n} vertices exceeds the budget of {limit}")]
    Budget {
        what: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("unknown suite mode {0:?}")]
    UnknownMode(String),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("thread pool: {0}")]
    Pool(String),
}

type Result<T> = std::result::Result<T, VerifyError>;

pub const DEFAULT_OUTERPLANAR_BOUND: usize = 9;

fn polygon_graph(n: usize, chords: &[(Vertex, Vertex)]) -> Graph {
    let cycle = (0..n).map(|i| (i, (i + 1) % n));
    Graph::from_edges(n, cycle.chain(chords.iter().copied())).expect("polygon edges are valid")
}

fn triangulate(i: usize, j: usize, out: &mut Vec<Vec<(Vertex, Vertex)>>) {
    if j - i < 2 {
        out.push(Vec::new());
        return;
    }
    for k in i + 1..j {
        let mut left = Vec::new();
        let mut right = Vec::new();
        triangulate(i, k, &mut left);
        triangulate(k, j, &mut right);
        for l in &left {
            for r in &right {
                let mut c = l.clone();
                c.extend(r);
                if k - i > 1 {
                    c.push((i, k));
                }
                if j - k > 1 {
                    c.push((k, j));
                }
                out.push(c);
            }
        }
    }
}

/// All triangulations of the labeled convex polygon with outer cycle `0..n`.
pub fn enumerate_polygon_triangulations(n: usize) -> Result<Vec<Graph>> {
    if n < 3 {
        return Err(VerifyError::TooFewVertices(n));
    }
    let mut chords = Vec::new();
    triangulate(0, n - 1, &mut chords);
    Ok(chords.iter().map(|c| polygon_graph(n, c)).collect())
}

/// Polygon triangulations with exactly two degree-2 vertices.
pub fn enumerate_snakes(n: usize) -> Result<Vec<Graph>> {
    let all = enumerate_polygon_triangulations(n)?;
    if n == 3 {
        return Ok(all);
    }
    Ok(all
        .into_iter()
        .filter(|g| (0..n).filter(|&v| g.degree(v) == 2).count() == 2)
        .collect())
}

pub fn enumerate_outerplanar(n: usize) -> Result<Vec<Graph>> {
    enumerate_outerplanar_bounded(n, DEFAULT_OUTERPLANAR_BOUND)
}

/// Connected outerplanar graphs on `n` vertices up to isomorphism, as
/// canonical forms sorted by graph6: every connected spanning subgraph of a
/// polygon triangulation, reached by deleting edges one at a time.
pub fn enumerate_outerplanar_bounded(n: usize, bound: usize) -> Result<Vec<Graph>> {
    if n > bound {
        return Err(VerifyError::Budget {
            what: "connected outerplanar graphs",
            n,
            limit: bound,
        });
    }
    if n < 3 {
        return Ok(vec![match n {
            0 => Graph::empty(0),
            1 => Graph::empty(1),
            _ => Graph::path(2),
        }]);
    }
    let canon = |g: &Graph| {
        let c = canonical_form(g).graph;
        (encode_graph6(&c), c)
    };
    let mut level: BTreeMap<String, Graph> = enumerate_polygon_triangulations(n)?
        .iter()
        .map(canon)
        .collect();
    let mut all = level.clone();
    while !level.is_empty() {
        let next: BTreeMap<String, Graph> = level
            .par_iter()
            .flat_map_iter(|(_, g)| {
                g.edges()
                    .iter()
                    .filter_map(|&e| {
                        let h = g.without_edges(&[e]);
                        h.is_connected().then(|| canon(&h))
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        level = next.into_iter().filter(|(k, _)| !all.contains_key(k)).collect();
        all.extend(level.iter().map(|(k, g)| (k.clone(), g.clone())));
    }
    Ok(all.into_values().collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteMode {
    Eta,
    NearTri,
    Cutvertex,
    FaceTypes,
    Trichotomy,
    CnSoundness,
    Lemmas,
}

impl SuiteMode {
    pub const ALL: [SuiteMode; 7] = [
        SuiteMode::Eta,
        SuiteMode::NearTri,
        SuiteMode::Cutvertex,
        SuiteMode::FaceTypes,
        SuiteMode::Trichotomy,
        SuiteMode::CnSoundness,
        SuiteMode::Lemmas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteMode::Eta => "eta",
            SuiteMode::NearTri => "near_tri",
            SuiteMode::Cutvertex => "cutvertex",
            SuiteMode::FaceTypes => "face_types",
            SuiteMode::Trichotomy => "trichotomy",
            SuiteMode::CnSoundness => "cn_soundness",
            SuiteMode::Lemmas => "lemmas",
        }
    }

    /// Smallest and largest accepted `max_n`.
    pub fn bounds(self) -> (usize, usize) {
        match self {
            SuiteMode::Eta => (3, 14),
            SuiteMode::NearTri => (3, 12),
            SuiteMode::Cutvertex | SuiteMode::FaceTypes | SuiteMode::Trichotomy => {
                (2, DEFAULT_OUTERPLANAR_BOUND)
            }
            SuiteMode::CnSoundness => (2, 8),
            SuiteMode::Lemmas => (3, 10),
        }
    }

    pub fn default_max_n(self) -> usize {
        match self {
            SuiteMode::Eta => 12,
            SuiteMode::NearTri => 10,
            SuiteMode::Cutvertex | SuiteMode::FaceTypes | SuiteMode::Trichotomy => 8,
            SuiteMode::CnSoundness => 7,
            SuiteMode::Lemmas => 10,
        }
    }
}

impl std::fmt::Display for SuiteMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SuiteMode {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self> {
        SuiteMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| VerifyError::UnknownMode(s.to_string()))
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub max_n: usize,
    /// Worker threads; `None` uses rayon's default.
    pub jobs: Option<usize>,
    pub mutation: Mutation,
    /// Random list assignments per witness in `cn_soundness`.
    pub samples: usize,
    pub seed: u64,
}

impl SuiteOptions {
    pub fn new(max_n: usize) -> Self {
        SuiteOptions {
            max_n,
            jobs: None,
            mutation: Mutation::None,
            samples: 200,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Mismatch {
    pub graph: String,
    pub x: Vertex,
    pub y: Vertex,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<Vertex>,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub mode: SuiteMode,
    pub max_n: usize,
    pub instances: u64,
    pub mismatches: Vec<Mismatch>,
    /// Pairs the structural route could not decide (checked by the oracle).
    pub uncovered: u64,
    pub runtime_seconds: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// The report without its runtime, which is the only nondeterministic field.
    pub fn deterministic_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("object").remove("runtimeSeconds");
        v.to_string()
    }
}

#[derive(Default)]
struct Tally {
    instances: u64,
    uncovered: u64,
    mismatches: Vec<Mismatch>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        self.uncovered += other.uncovered;
        self.mismatches.extend(other.mismatches);
        self
    }

    fn fail(&mut self, g: &Graph, x: Vertex, y: Vertex, expected: impl Into<String>, got: impl Into<String>) {
        self.mismatches.push(Mismatch {
            graph: encode_graph6(g),
            x,
            y,
            z: None,
            expected: expected.into(),
            got: got.into(),
        });
    }
}

fn ordered_pairs(n: usize) -> impl Iterator<Item = (Vertex, Vertex)> {
    (0..n).flat_map(move |x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
}

fn caps2(n: usize) -> Vec<Option<u8>> {
    vec![Some(2); n]
}

/// Case read from `P(g)` capped at 2: the smallest `β + γ` with `β, γ ≤ 1`.
fn pattern_case(p: &MultiPoly, x: Vertex, y: Vertex) -> Option<Case> {
    [Case::III, Case::II, Case::I]
        .into_iter()
        .find(|c| c.patterns().iter().any(|&(b, d)| has_pattern(p, x, y, b, d)))
}

fn has_pattern(p: &MultiPoly, x: Vertex, y: Vertex, b: u8, d: u8) -> bool {
    let n = p.vars();
    let mut exact = vec![None; n];
    exact[x] = Some(b);
    exact[y] = Some(d);
    p.find_monomial(&vec![2; n], &exact).is_some()
}

/// Colour classes from any proper 3-colouring.
fn some_coloring(g: &Graph) -> Option<Vec<u8>> {
    find_coloring(g, 3, &[])
}

fn check_eta(g: &Graph, mutation: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    let n = g.n();
    let c = some_coloring(g).expect("near-triangulations are 3-colourable");
    let ends: Vec<Vertex> = if n == 3 {
        vec![0, 1, 2]
    } else {
        (0..n).filter(|&v| g.degree(v) == 2).collect()
    };
    for &x in &ends {
        for &y in &ends {
            if x == y {
                continue;
            }
            for &z in g.neighbors(y) {
                if z == x {
                    continue;
                }
                t.instances += 1;
                let eta = eta_signature(g, x, y, z)?;
                let mut values = [eta.eta1, eta.eta2, eta.eta3];
                if mutation == Mutation::NegateNearTriangulation {
                    values.swap(0, 1);
                }
                let expected_zero = if c[x] == c[y] {
                    0
                } else if c[z] == c[x] {
                    2
                } else {
                    1
                };
                let mut sorted = values;
                sorted.sort_unstable();
                if sorted != [-1, 0, 1] || values[expected_zero] != 0 {
                    t.mismatches.push(Mismatch {
                        graph: encode_graph6(g),
                        x,
                        y,
                        z: Some(z),
                        expected: format!("{{-1,0,1}} with eta{} = 0", expected_zero + 1),
                        got: format!("{values:?}"),
                    });
                }
            }
        }
    }
    Ok(t)
}

fn check_near_tri(g: &Graph, mutation: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    let n = g.n();
    let c = some_coloring(g).expect("near-triangulations are 3-colourable");
    let p = graph_polynomial(g, &caps2(n))?;
    for (x, y) in ordered_pairs(n) {
        t.instances += 1;
        let differ = c[x] != c[y];
        if has_pattern(&p, x, y, 0, 0) {
            t.fail(g, x, y, "no x^0 y^0 monomial", "x^0 y^0 monomial present");
        }
        if has_pattern(&p, x, y, 1, 0) != differ {
            t.fail(
                g,
                x,
                y,
                format!("x^1 y^0 monomial present = {differ}"),
                format!("present = {}", !differ),
            );
        }
        if ![(0, 1), (1, 0), (1, 1)].iter().any(|&(b, d)| has_pattern(&p, x, y, b, d)) {
            t.fail(g, x, y, "a monomial with beta, gamma <= 1", "none");
        }
        let r = classify_near_triangulation_with(g, x, y, mutation)?;
        let expected = if differ { Case::II } else { Case::I };
        let witness_ok = r.witness.as_ref().is_some_and(|w| {
            w.coefficient != 0 && p.coefficient(&w.exponents).ok() == Some(w.coefficient)
        });
        if r.case != expected || !witness_ok || r.discrepancy.is_some() {
            t.fail(g, x, y, format!("case {expected} with a valid witness"), format!("{r:?}"));
        }
    }
    Ok(t)
}

fn is_cutvertex_chain_graph(g: &Graph) -> bool {
    let Ok(bc) = blocks_and_cutvertices(g) else {
        return false;
    };
    bc.blocks.len() >= 2
        && bc.blocks.iter().all(|b| {
            !b.is_bridge()
                && outerplane_embedding(&b.to_graph().0).is_ok_and(|e| e.is_near_triangulation())
        })
}

fn check_cutvertex(g: &Graph, mutation: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    for (x, y) in ordered_pairs(g.n()) {
        let r = match classify_cutvertex_chain_with(g, x, y, mutation) {
            Ok(r) => r,
            Err(ClassifyError::Structure(StructureError::Precondition(_))) => continue,
            Err(e) => return Err(e.into()),
        };
        t.instances += 1;
        let expected = Case::from_verdict(color_relation(g, x, y)?.verdict);
        if r.case != expected || r.discrepancy.is_some() {
            t.fail(g, x, y, expected.to_string(), format!("{r:?}"));
        }
    }
    Ok(t)
}

fn check_face_types(g: &Graph, mutation: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    for (x, y) in ordered_pairs(g.n()) {
        let opts = |rule| ClassifyOptions {
            method: Method::Structural,
            mutation,
            rule,
        };
        let small = structural_case(g, x, y, &opts(ChoiceRule::LexSmallest));
        let (case, route) = match small {
            Ok(v) => v,
            Err(ClassifyError::Structure(StructureError::Uncovered(_))) => {
                t.uncovered += 1;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        if !matches!(
            route,
            Route::FaceType0 | Route::FaceType1 | Route::FaceType2 | Route::GeneralFaces
        ) {
            continue;
        }
        t.instances += 1;
        let expected = Case::from_verdict(color_relation(g, x, y)?.verdict);
        if case != expected {
            t.fail(g, x, y, expected.to_string(), format!("{case} via {route:?}"));
        }
        let large = structural_case(g, x, y, &opts(ChoiceRule::LexLargest))?;
        if large.0 != case {
            t.fail(
                g,
                x,
                y,
                format!("{case} under both attachment rules"),
                format!("{} under the lex-largest rule", large.0),
            );
        }
    }
    Ok(t)
}

fn check_trichotomy(g: &Graph, mutation: Mutation) -> Result<Tally> {
    let mut t = Tally::default();
    let n = g.n();
    let p = graph_polynomial(g, &caps2(n))?;
    let opts = ClassifyOptions {
        mutation,
        ..Default::default()
    };
    for (x, y) in ordered_pairs(n) {
        t.instances += 1;
        let expected = Case::from_verdict(color_relation(g, x, y)?.verdict);
        let r = classify(g, x, y, &opts)?;
        if r.route == Route::Uncovered {
            t.uncovered += 1;
        }
        if r.case != expected || r.discrepancy.is_some() {
            t.fail(g, x, y, expected.to_string(), format!("{r:?}"));
            continue;
        }
        let pattern = pattern_case(&p, x, y);
        if pattern != Some(expected) {
            t.fail(g, x, y, format!("witness pattern of case {expected}"), format!("{pattern:?}"));
        }
        let valid = r.witness.as_ref().is_some_and(|w| {
            let e = &w.exponents;
            expected.patterns().contains(&(e[x], e[y]))
                && (0..n).all(|v| e[v] <= 2)
                && w.coefficient != 0
                && p.coefficient(e).ok() == Some(w.coefficient)
        });
        if !valid {
            t.fail(g, x, y, "witness monomial of P(G) with the case's pattern", format!("{:?}", r.witness));
        }
    }
    Ok(t)
}

fn instance_seed(seed: u64, g: &Graph, x: Vertex, y: Vertex) -> u64 {
    let mut h = rustc_hash::FxHasher::default();
    (seed, encode_graph6(g), x, y).hash(&mut h);
    h.finish()
}

/// Random lists of the given sizes from colours `0..universe`.
pub fn random_lists(sizes: &[usize], universe: u32, rng: &mut impl Rng) -> ListAssignment {
    let palette: Vec<u32> = (0..universe).collect();
    ListAssignment {
        lists: sizes
            .iter()
            .map(|&s| {
                let mut l: Vec<u32> = palette.choose_multiple(rng, s).copied().collect();
                l.sort_unstable();
                l
            })
            .collect(),
    }
}

fn check_cn(g: &Graph, opts: &SuiteOptions) -> Result<Tally> {
    let mut t = Tally::default();
    let copts = ClassifyOptions {
        mutation: opts.mutation,
        ..Default::default()
    };
    for (x, y) in ordered_pairs(g.n()) {
        t.instances += 1;
        let r = classify(g, x, y, &copts)?;
        let Some(w) = r.witness else {
            t.fail(g, x, y, "a witness monomial", "none");
            continue;
        };
        let sizes: Vec<usize> = w.exponents.iter().map(|&e| e as usize + 1).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(instance_seed(opts.seed, g, x, y));
        for _ in 0..opts.samples {
            let lists = random_lists(&sizes, 6, &mut rng);
            if list_colorable(g, &lists).is_none() {
                t.fail(
                    g,
                    x,
                    y,
                    "every assignment with list sizes exponent + 1 is colourable",
                    serde_json::to_string(&lists).expect("lists serialize"),
                );
                break;
            }
        }
    }
    Ok(t)
}

/// Relabels `b` onto the vertices after `a` so that `b`'s vertex `sb`
/// becomes `a`'s vertex `sa`, matching [`glued_index`].
fn glue_pair(a: &Graph, b: &Graph, sa: Vertex, sb: Vertex) -> (Graph, usize) {
    let map = |v: Vertex| if v == sb { sa } else { glued_index(a.n(), sb, v) };
    let edges: Vec<(Vertex, Vertex)> = b.edges().iter().map(|&(u, v)| (map(u), map(v))).collect();
    let flips = edges.iter().filter(|&&(u, v)| u > v).count();
    (a.extended(b.n() - 1, edges).expect("glued edges are valid"), flips)
}

fn check_vertex_gluing(a: &Graph, b: &Graph) -> Result<Tally> {
    let mut t = Tally::default();
    let pa = graph_polynomial(a, &uncapped(a.n()))?;
    let pb = graph_polynomial(b, &uncapped(b.n()))?;
    for sa in 0..a.n() {
        for sb in 0..b.n() {
            t.instances += 1;
            let (g, flips) = glue_pair(a, b, sa, sb);
            let direct = graph_polynomial(&g, &uncapped(g.n()))?;
            let sign: i64 = if flips % 2 == 0 { 1 } else { -1 };
            let glued = glue_at_vertex(&pa, &pb, (sa, sb))?;
            let d: BTreeMap<Vec<u8>, i64> = direct.terms().into_iter().collect();
            let q: BTreeMap<Vec<u8>, i64> = glued.terms().into_iter().map(|(e, c)| (e, sign * c)).collect();
            if d != q {
                t.fail(&g, sa, sb, "P(G'') equals the glued product up to orientation", "differs");
                continue;
            }
            for (e, &c) in &d {
                // the split of the shared exponent is forced by the edge counts
                let mut ea: Vec<u8> = e[..a.n()].to_vec();
                let rest_a: usize = ea.iter().enumerate().filter(|&(i, _)| i != sa).map(|(_, &x)| x as usize).sum();
                let Some(share_a) = a.edge_count().checked_sub(rest_a) else {
                    t.fail(&g, sa, sb, "split exponent", format!("{e:?}"));
                    continue;
                };
                ea[sa] = share_a as u8;
                let eb: Vec<u8> = (0..b.n())
                    .map(|v| if v == sb { e[sa] - share_a as u8 } else { e[glued_index(a.n(), sb, v)] })
                    .collect();
                let prod = pa.coefficient(&ea)? * pb.coefficient(&eb)?;
                if c != sign * prod {
                    t.fail(&g, sa, sb, format!("coefficient {}", sign * prod), format!("{c} at {e:?}"));
                }
            }
        }
    }
    Ok(t)
}

fn check_path_monomial(n: usize) -> Result<Tally> {
    let mut t = Tally::default();
    let g = Graph::path(n);
    let p = graph_polynomial(&g, &uncapped(n))?;
    for reversed in [false, true] {
        t.instances += 1;
        let mut e = vec![1u8; n];
        e[0] = 0;
        e[n - 1] = 0;
        e[if reversed { n - 2 } else { 1 }] = 2;
        let c = p.coefficient(&e)?;
        if c.abs() != 1 {
            t.fail(&g, 0, n - 1, "coefficient ±1", format!("{c} at {e:?}"));
        }
    }
    Ok(t)
}

fn check_path_attachment(g: &Graph) -> Result<Tally> {
    let mut t = Tally::default();
    let n = g.n();
    let p = graph_polynomial(g, &uncapped(n))?;
    let base: BTreeMap<Vec<u8>, i64> = p.terms().into_iter().collect();
    for a in 0..n {
        for b in a + 1..n {
            let h = g.extended(1, [(a, n), (b, n)]).expect("path edges are valid");
            if !is_outerplanar(&h) {
                continue;
            }
            t.instances += 1;
            let ph = graph_polynomial(&h, &uncapped(n + 1))?;
            let top: BTreeMap<Vec<u8>, i64> = ph
                .terms()
                .into_iter()
                .filter(|(e, _)| e[n] == 2)
                .map(|(mut e, c)| {
                    e.pop();
                    (e, c)
                })
                .collect();
            if top != base {
                t.fail(&h, a, b, "z^2 part of P(G') equals P(G)", "differs");
            }
        }
    }
    Ok(t)
}

type Job = Box<dyn Fn() -> Result<Tally> + Send + Sync>;

fn lemma_jobs(max_n: usize) -> Result<Vec<Job>> {
    let mut jobs: Vec<Job> = Vec::new();
    for n in 3..=max_n {
        jobs.push(Box::new(move || check_path_monomial(n)));
    }
    let parts: Vec<Graph> = (1..=5.min(max_n))
        .map(enumerate_outerplanar)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    for a in &parts {
        for b in &parts {
            if a.n() + b.n() - 1 <= max_n {
                let (a, b) = (a.clone(), b.clone());
                jobs.push(Box::new(move || check_vertex_gluing(&a, &b)));
            }
        }
    }
    for n in 2..=(max_n - 1).min(7) {
        for g in enumerate_outerplanar(n)? {
            jobs.push(Box::new(move || check_path_attachment(&g)));
        }
    }
    Ok(jobs)
}

fn graphs_for(mode: SuiteMode, max_n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    match mode {
        SuiteMode::Eta => {
            for n in 3..=max_n {
                out.extend(enumerate_snakes(n)?);
            }
        }
        SuiteMode::NearTri => {
            for n in 3..=max_n {
                out.extend(enumerate_polygon_triangulations(n)?);
            }
        }
        SuiteMode::Cutvertex => {
            for n in 2..=max_n {
                out.extend(enumerate_outerplanar(n)?.into_iter().filter(is_cutvertex_chain_graph));
            }
        }
        _ => {
            for n in 2..=max_n {
                out.extend(enumerate_outerplanar(n)?);
            }
        }
    }
    Ok(out)
}

/// Runs one exhaustive suite. Instances are checked in parallel; the report
/// lists mismatches in sorted order, so it depends only on the options.
pub fn run_suite(mode: SuiteMode, opts: &SuiteOptions) -> Result<VerificationReport> {
    let (lo, hi) = mode.bounds();
    if opts.max_n < lo || opts.max_n > hi {
        return Err(VerifyError::Bound {
            mode: mode.name(),
            max_n: opts.max_n,
            allowed: format!("{lo}..={hi}"),
        });
    }
    let start = Instant::now();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = opts.jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder.build().map_err(|e| VerifyError::Pool(e.to_string()))?;
    let tally = pool.install(|| -> Result<Tally> {
        let results: Vec<Result<Tally>> = if mode == SuiteMode::Lemmas {
            lemma_jobs(opts.max_n)?.par_iter().map(|job| job()).collect()
        } else {
            let graphs = graphs_for(mode, opts.max_n)?;
            graphs
                .par_iter()
                .map(|g| match mode {
                    SuiteMode::Eta => check_eta(g, opts.mutation),
                    SuiteMode::NearTri => check_near_tri(g, opts.mutation),
                    SuiteMode::Cutvertex => check_cutvertex(g, opts.mutation),
                    SuiteMode::FaceTypes => check_face_types(g, opts.mutation),
                    SuiteMode::Trichotomy => check_trichotomy(g, opts.mutation),
                    SuiteMode::CnSoundness => check_cn(g, opts),
                    SuiteMode::Lemmas => unreachable!(),
                })
                .collect()
        };
        results.into_iter().try_fold(Tally::default(), |acc, r| Ok(acc.merge(r?)))
    })?;
    let mut mismatches = tally.mismatches;
    mismatches.sort();
    Ok(VerificationReport {
        mode,
        max_n: opts.max_n,
        instances: tally.instances,
        mismatches,
        uncovered: tally.uncovered,
        runtime_seconds: start.elapsed().as_secs_f64(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct NonExtendabilitySample {
    pub graph: String,
    pub x: Vertex,
    pub y: Vertex,
    pub extendable: bool,
    pub failing: Option<ListAssignment>,
    /// The failing assignment really admits no colouring.
    pub confirmed: bool,
}

/// Random near-triangulations on `3..=max_n` vertices with a random pair,
/// each checked for (1, 1)-extendability over a 6-colour universe.
pub fn sample_non_extendability(count: usize, max_n: usize, seed: u64) -> Result<Vec<NonExtendabilitySample>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pools: Vec<Vec<Graph>> = (3..=max_n.max(3))
        .map(enumerate_polygon_triangulations)
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(count);
    let mut seen = BTreeSet::new();
    while out.len() < count {
        let pool = pools.choose(&mut rng).expect("nonempty");
        let g = pool.choose(&mut rng).expect("nonempty");
        let n = g.n();
        let perm = {
            let mut p: Vec<Vertex> = (0..n).collect();
            p.shuffle(&mut rng);
            p
        };
        let g = g.permuted(&perm);
        let x = rng.gen_range(0..n);
        let y = (x + rng.gen_range(1..n)) % n;
        if !seen.insert((encode_graph6(&g), x, y)) && seen.len() < 10 * count {
            continue;
        }
        let check = is_extendable(
            &g,
            x,
            y,
            1,
            1,
            crate::coloring::DEFAULT_UNIVERSE,
            crate::coloring::DEFAULT_BUDGET,
        )?;
        let confirmed = check
            .failing
            .as_ref()
            .is_some_and(|l| l.lists[x].len() == 1 && l.lists[y].len() == 1 && list_colorable(&g, l).is_none());
        out.push(NonExtendabilitySample {
            graph: encode_graph6(&g),
            x,
            y,
            extendable: check.extendable,
            failing: check.failing,
            confirmed,
        });
    }
    Ok(out)
}
