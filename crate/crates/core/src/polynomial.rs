//! Edge-binomial products with per-variable exponent caps.
//!
//! A graph polynomial is the product over edges of `(u - v)`, oriented from the
//! smaller index to the larger one. Terms whose exponents leave the caps are
//! dropped as soon as they appear: later factors only raise exponents, so every
//! surviving coefficient is exact.

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// Exponents are packed four bits per variable into a `u128`, variable 0 in the
/// most significant nibble, so integer order is lexicographic order.
pub const MAX_VARS: usize = 32;
const MAX_EXP: u8 = 15;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("cap sequence has length {got}, expected {expected}")]
    CapLength { expected: usize, got: usize },
    #[error("{0} variables exceed the supported maximum of 32")]
    TooManyVariables(usize),
    #[error("vertex {vertex} may reach exponent {degree}, above the packing limit of 15; cap it")]
    ExponentWidth { vertex: Vertex, degree: usize },
    #[error("coefficient overflow in 64-bit arithmetic")]
    Overflow,
    #[error("exponent vector {0:?} lies outside the computed range")]
    OutOfRange(Vec<u8>),
    #[error("cannot evaluate a truncated polynomial")]
    Truncated,
    #[error("{0}")]
    Incompatible(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeOrder {
    /// Edges in sorted order.
    #[default]
    Sorted,
    /// Edges grouped by a maximum-cardinality-search vertex order, so each
    /// vertex finishes as early as possible. Only affects speed.
    Frontier,
}

#[derive(Debug, Clone, Default)]
pub struct PolyOptions {
    /// `None` means uncapped.
    pub caps: Vec<Option<u8>>,
    /// Minimum final exponent per variable. Terms that can no longer reach it
    /// are dropped, so only coefficients at or above the floors are available.
    pub floors: Option<Vec<u8>>,
    pub order: EdgeOrder,
}

impl PolyOptions {
    pub fn capped(caps: Vec<Option<u8>>) -> Self {
        PolyOptions {
            caps,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    n: usize,
    caps: Vec<Option<u8>>,
    floors: Vec<u8>,
    terms: FxHashMap<u128, i64>,
}

#[inline]
fn shift(i: usize) -> u32 {
    4 * (31 - i as u32)
}

#[inline]
fn get(key: u128, i: usize) -> u8 {
    ((key >> shift(i)) & 0xf) as u8
}

fn pack(exps: &[u8]) -> u128 {
    exps.iter()
        .enumerate()
        .fold(0u128, |k, (i, &e)| k | (u128::from(e) << shift(i)))
}

fn unpack(key: u128, n: usize) -> Vec<u8> {
    (0..n).map(|i| get(key, i)).collect()
}

/// Uniform caps: `x` and `y` at `marked`, everything else at `other`.
pub fn marked_caps(n: usize, x: Vertex, y: Vertex, marked: u8, other: u8) -> Vec<Option<u8>> {
    (0..n)
        .map(|v| Some(if v == x || v == y { marked } else { other }))
        .collect()
}

fn frontier_order(n: usize, arcs: &[(Vertex, Vertex)]) -> Vec<(Vertex, Vertex)> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in arcs {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut weight = vec![0usize; n];
    let mut placed = vec![usize::MAX; n];
    for step in 0..n {
        // Highest count of placed neighbours; ties to the smallest index.
        let v = (0..n)
            .filter(|&v| placed[v] == usize::MAX)
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("unplaced vertex");
        placed[v] = step;
        for &w in &adj[v] {
            weight[w] += 1;
        }
    }
    let mut out = arcs.to_vec();
    out.sort_by_key(|&(a, b)| {
        let (p, q) = (placed[a], placed[b]);
        (p.max(q), p.min(q))
    });
    out
}

impl MultiPoly {
    /// Product of `(tail - head)` over the given arcs.
    pub fn from_arcs(
        n: usize,
        arcs: &[(Vertex, Vertex)],
        opts: &PolyOptions,
    ) -> Result<Self, PolyError> {
        if opts.caps.len() != n {
            return Err(PolyError::CapLength {
                expected: n,
                got: opts.caps.len(),
            });
        }
        if n > MAX_VARS {
            return Err(PolyError::TooManyVariables(n));
        }
        let floors = match &opts.floors {
            Some(f) if f.len() != n => {
                return Err(PolyError::CapLength {
                    expected: n,
                    got: f.len(),
                })
            }
            Some(f) => f.clone(),
            None => vec![0; n],
        };
        let mut degree = vec![0usize; n];
        for &(a, b) in arcs {
            if a >= n || b >= n || a == b {
                return Err(PolyError::Incompatible(format!("bad arc ({a}, {b})")));
            }
            degree[a] += 1;
            degree[b] += 1;
        }
        // Effective caps never exceed the degree.
        let mut cap = vec![0u8; n];
        for v in 0..n {
            let limit = match opts.caps[v] {
                Some(c) => usize::from(c).min(degree[v]),
                None => degree[v],
            };
            if limit > usize::from(MAX_EXP) {
                return Err(PolyError::ExponentWidth {
                    vertex: v,
                    degree: degree[v],
                });
            }
            cap[v] = limit as u8;
        }
        let mut poly = MultiPoly {
            n,
            caps: opts.caps.clone(),
            floors: floors.clone(),
            terms: FxHashMap::default(),
        };
        if (0..n).any(|v| usize::from(floors[v]) > usize::from(cap[v])) {
            return Ok(poly);
        }

        let order = match opts.order {
            EdgeOrder::Sorted => {
                let mut a = arcs.to_vec();
                a.sort_by_key(|&(p, q)| (p.min(q), p.max(q)));
                a
            }
            EdgeOrder::Frontier => frontier_order(n, arcs),
        };

        let mut rem = degree.clone();
        let initial_slack: i64 = (0..n)
            .map(|v| i64::from(cap[v]).min(rem[v] as i64))
            .sum::<i64>()
            - order.len() as i64;
        if initial_slack < 0 {
            return Ok(poly);
        }
        // value: (coefficient, slack)
        let mut cur: FxHashMap<u128, (i64, i64)> = FxHashMap::default();
        cur.insert(0, (1, initial_slack));
        for &(a, b) in &order {
            let mut next: FxHashMap<u128, (i64, i64)> =
                FxHashMap::with_capacity_and_hasher(cur.len() * 2, Default::default());
            let (ra, rb) = (rem[a], rem[b]);
            for (&key, &(coef, slack)) in &cur {
                let (ea, eb) = (get(key, a), get(key, b));
                // pick `a` (sign +) or `b` (sign -)
                for (pick, other, e_pick, e_other, r_other, sign) in [
                    (a, b, ea, eb, rb, 1i64),
                    (b, a, eb, ea, ra, -1i64),
                ] {
                    if e_pick >= cap[pick] {
                        continue;
                    }
                    // `other` loses one remaining arc without gaining exponent.
                    if usize::from(e_other) + r_other - 1 < usize::from(floors[other]) {
                        continue;
                    }
                    let lost = i64::from(cap[other] - e_other) >= r_other as i64;
                    let s = slack - i64::from(lost);
                    if s < 0 {
                        continue;
                    }
                    let k = key + (1u128 << shift(pick));
                    let c = coef * sign;
                    match next.entry(k) {
                        std::collections::hash_map::Entry::Occupied(mut o) => {
                            let slot = o.get_mut();
                            slot.0 = slot.0.checked_add(c).ok_or(PolyError::Overflow)?;
                        }
                        std::collections::hash_map::Entry::Vacant(v) => {
                            v.insert((c, s));
                        }
                    }
                }
            }
            next.retain(|_, v| v.0 != 0);
            rem[a] -= 1;
            rem[b] -= 1;
            cur = next;
        }
        poly.terms = cur.into_iter().map(|(k, (c, _))| (k, c)).collect();
        Ok(poly)
    }

    pub fn vars(&self) -> usize {
        self.n
    }

    pub fn caps(&self) -> &[Option<u8>] {
        &self.caps
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_truncated(&self) -> bool {
        self.caps.iter().any(Option::is_some) || self.floors.iter().any(|&f| f > 0)
    }

    fn in_range(&self, exps: &[u8]) -> bool {
        exps.len() == self.n
            && exps.iter().enumerate().all(|(v, &e)| {
                self.caps[v].map_or(e <= MAX_EXP, |c| e <= c) && e >= self.floors[v]
            })
    }

    /// Exact coefficient of the monomial, or an error if the monomial lies
    /// outside the computed range.
    pub fn coefficient(&self, exps: &[u8]) -> Result<i64, PolyError> {
        if !self.in_range(exps) {
            return Err(PolyError::OutOfRange(exps.to_vec()));
        }
        Ok(self.terms.get(&pack(exps)).copied().unwrap_or(0))
    }

    /// The lexicographically smallest stored term with every exponent at most
    /// `bounds` and equal to `exact` wherever that is given.
    pub fn find_monomial(&self, bounds: &[u8], exact: &[Option<u8>]) -> Option<(Vec<u8>, i64)> {
        let mut best: Option<u128> = None;
        for &key in self.terms.keys() {
            if best.is_some_and(|b| key >= b) {
                continue;
            }
            let fits = (0..self.n).all(|v| {
                let e = get(key, v);
                e <= bounds.get(v).copied().unwrap_or(MAX_EXP)
                    && exact.get(v).copied().flatten().is_none_or(|x| x == e)
            });
            if fits {
                best = Some(key);
            }
        }
        best.map(|k| (unpack(k, self.n), self.terms[&k]))
    }

    /// Every stored term passing the same filter as [`Self::find_monomial`],
    /// lexicographically sorted.
    pub fn matching_terms(&self, bounds: &[u8], exact: &[Option<u8>]) -> Vec<(Vec<u8>, i64)> {
        self.terms()
            .into_iter()
            .filter(|(e, _)| {
                e.iter().enumerate().all(|(v, &x)| {
                    x <= bounds.get(v).copied().unwrap_or(MAX_EXP)
                        && exact.get(v).copied().flatten().is_none_or(|want| want == x)
                })
            })
            .collect()
    }

    /// All stored terms, lexicographically sorted by exponent vector.
    pub fn terms(&self) -> Vec<(Vec<u8>, i64)> {
        let mut keys: Vec<u128> = self.terms.keys().copied().collect();
        keys.sort_unstable();
        keys.into_iter()
            .map(|k| (unpack(k, self.n), self.terms[&k]))
            .collect()
    }

    pub fn evaluate(&self, point: &[i64]) -> Result<i128, PolyError> {
        if self.is_truncated() {
            return Err(PolyError::Truncated);
        }
        if point.len() != self.n {
            return Err(PolyError::Incompatible(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.n
            )));
        }
        let mut total: i128 = 0;
        for (&key, &coef) in &self.terms {
            let mut t = i128::from(coef);
            for (v, &x) in point.iter().enumerate() {
                for _ in 0..get(key, v) {
                    t = t.checked_mul(i128::from(x)).ok_or(PolyError::Overflow)?;
                }
            }
            total = total.checked_add(t).ok_or(PolyError::Overflow)?;
        }
        Ok(total)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.n,
            terms: self
                .terms()
                .into_iter()
                .map(|(exps, coef)| TermJson { exps, coef })
                .collect(),
        }
    }
}

/// Wire form of a polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<u8>,
    pub coef: i64,
}

/// Graph polynomial under the canonical orientation.
pub fn graph_polynomial(g: &Graph, caps: &[Option<u8>]) -> Result<MultiPoly, PolyError> {
    graph_polynomial_with(g, &PolyOptions::capped(caps.to_vec()))
}

pub fn graph_polynomial_with(g: &Graph, opts: &PolyOptions) -> Result<MultiPoly, PolyError> {
    MultiPoly::from_arcs(g.n(), g.edges(), opts)
}

pub fn uncapped(n: usize) -> Vec<Option<u8>> {
    vec![None; n]
}

/// Product of polynomials of two graphs glued at one vertex.
///
/// Variables of the result are those of `p` in order, followed by the
/// variables of `q` other than `shared.1`, in order; `q`'s shared variable
/// becomes `shared.0`. Use [`glued_index`] for the map. The shared variable
/// must be uncapped in both factors, since the glued exponent sums the two.
pub fn glue_at_vertex(
    p: &MultiPoly,
    q: &MultiPoly,
    shared: (Vertex, Vertex),
) -> Result<MultiPoly, PolyError> {
    let (sp, sq) = shared;
    if sp >= p.n || sq >= q.n {
        return Err(PolyError::Incompatible(format!(
            "shared vertex ({sp}, {sq}) out of range for {} and {} variables",
            p.n, q.n
        )));
    }
    if p.caps[sp].is_some() || q.caps[sq].is_some() {
        return Err(PolyError::Incompatible(
            "the shared variable must be uncapped in both factors".into(),
        ));
    }
    if p.floors.iter().chain(&q.floors).any(|&f| f > 0) {
        return Err(PolyError::Incompatible("cannot glue floored polynomials".into()));
    }
    let n = p.n + q.n - 1;
    if n > MAX_VARS {
        return Err(PolyError::TooManyVariables(n));
    }
    let map: Vec<usize> = (0..q.n).map(|i| glued_index(p.n, sq, i)).collect();
    let mut caps = p.caps.clone();
    caps.extend((0..q.n).filter(|&i| i != sq).map(|i| q.caps[i]));
    let mut terms: FxHashMap<u128, i64> = FxHashMap::default();
    for (&kp, &cp) in &p.terms {
        for (&kq, &cq) in &q.terms {
            let e = get(kp, sp) + get(kq, sq);
            if e > MAX_EXP {
                return Err(PolyError::ExponentWidth {
                    vertex: sp,
                    degree: usize::from(e),
                });
            }
            let mut key = kp;
            for (i, &target) in map.iter().enumerate() {
                if i != sq {
                    key |= u128::from(get(kq, i)) << shift(target);
                }
            }
            key = (key & !(0xfu128 << shift(sp))) | (u128::from(e) << shift(sp));
            let c = cp.checked_mul(cq).ok_or(PolyError::Overflow)?;
            let slot = terms.entry(key).or_insert(0);
            *slot = slot.checked_add(c).ok_or(PolyError::Overflow)?;
        }
    }
    terms.retain(|_, c| *c != 0);
    Ok(MultiPoly {
        n,
        caps,
        floors: vec![0; n],
        terms,
    })
}

/// Index in the glued polynomial of variable `i` of the second factor.
pub fn glued_index(p_vars: usize, q_shared: Vertex, i: Vertex) -> usize {
    match i.cmp(&q_shared) {
        std::cmp::Ordering::Equal => usize::MAX,
        std::cmp::Ordering::Less => p_vars + i,
        std::cmp::Ordering::Greater => p_vars + i - 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::all_graphs_up_to_iso;
    use proptest::prelude::*;

    /// Full expansion by summing over all 2^m endpoint choices.
    fn brute_expand(n: usize, arcs: &[(usize, usize)]) -> std::collections::BTreeMap<Vec<u8>, i64> {
        let mut out = std::collections::BTreeMap::new();
        for mask in 0u32..(1 << arcs.len()) {
            let mut e = vec![0u8; n];
            let mut sign = 1i64;
            for (i, &(a, b)) in arcs.iter().enumerate() {
                if mask >> i & 1 == 0 {
                    e[a] += 1;
                } else {
                    e[b] += 1;
                    sign = -sign;
                }
            }
            *out.entry(e).or_insert(0) += sign;
        }
        out.retain(|_, c| *c != 0);
        out
    }

    fn triangle() -> Graph {
        Graph::complete(3)
    }

    #[test]
    fn triangle_expansion() {
        let p = graph_polynomial(&triangle(), &uncapped(3)).unwrap();
        // (x - y)(x - z)(y - z)
        let expected = vec![
            (vec![0, 1, 2], -1),
            (vec![0, 2, 1], 1),
            (vec![1, 0, 2], 1),
            (vec![1, 2, 0], -1),
            (vec![2, 0, 1], -1),
            (vec![2, 1, 0], 1),
        ];
        assert_eq!(p.terms(), expected);
        assert_eq!(p.coefficient(&[1, 1, 1]).unwrap(), 0);
        assert_ne!(p.coefficient(&[1, 0, 2]).unwrap(), 0);
    }

    #[test]
    fn edge_and_path() {
        let e = graph_polynomial(&Graph::path(2), &uncapped(2)).unwrap();
        assert_eq!(e.terms(), vec![(vec![0, 1], -1), (vec![1, 0], 1)]);
        assert_eq!(e.coefficient(&[1, 0]).unwrap(), 1);
        // x - v - y with v = 1: (x - v)(v - y) = xv - xy - v^2 + vy
        let p = graph_polynomial(&Graph::path(3), &uncapped(3)).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.coefficient(&[0, 2, 0]).unwrap().abs(), 1);
        assert_eq!(p.coefficient(&[1, 0, 1]).unwrap().abs(), 1);
    }

    #[test]
    fn find_monomial_cases() {
        let tri = graph_polynomial(&triangle(), &uncapped(3)).unwrap();
        assert!(tri.find_monomial(&[2, 2, 2], &[Some(0), Some(0), None]).is_none());
        let empty = graph_polynomial(&Graph::empty(4), &uncapped(4)).unwrap();
        assert_eq!(empty.find_monomial(&[2; 4], &[None; 4]), Some((vec![0; 4], 1)));
        // diamond 0-1-2, 1-2-3 with x = 0, y = 3
        let diamond = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        let p = graph_polynomial(&diamond, &uncapped(4)).unwrap();
        let (e, c) = p
            .find_monomial(&[2; 4], &[Some(1), None, None, Some(1)])
            .unwrap();
        assert_eq!((e[0], e[3]), (1, 1));
        let mut mid = [e[1], e[2]];
        mid.sort();
        assert_eq!(mid, [1, 2]);
        let brute = brute_expand(4, diamond.edges());
        assert_eq!(brute[&e], c);
    }

    #[test]
    fn evaluate_points() {
        let p = graph_polynomial(&triangle(), &uncapped(3)).unwrap();
        // (1 - 2)(1 - 3)(2 - 3)
        assert_eq!(p.evaluate(&[1, 2, 3]).unwrap(), -2);
        assert_eq!(p.evaluate(&[1, 1, 2]).unwrap(), 0);
        let e = graph_polynomial(&Graph::path(2), &uncapped(2)).unwrap();
        assert_eq!(e.evaluate(&[5, 5]).unwrap(), 0);
        let capped = graph_polynomial(&triangle(), &[Some(1); 3]).unwrap();
        assert_eq!(capped.evaluate(&[1, 2, 3]), Err(PolyError::Truncated));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            graph_polynomial(&triangle(), &uncapped(2)),
            Err(PolyError::CapLength { .. })
        ));
        let p = graph_polynomial(&triangle(), &[Some(1); 3]).unwrap();
        assert!(matches!(p.coefficient(&[2, 0, 1]), Err(PolyError::OutOfRange(_))));
        assert!(matches!(
            graph_polynomial(&Graph::empty(33), &uncapped(33)),
            Err(PolyError::TooManyVariables(33))
        ));
    }

    #[test]
    fn homogeneous_exhaustive() {
        for n in 0..=8 {
            for g in crate::testutil::outerplanar_graphs(n) {
                let p = graph_polynomial(&g, &uncapped(n)).unwrap();
                for (e, _) in p.terms() {
                    assert_eq!(e.iter().map(|&x| usize::from(x)).sum::<usize>(), g.edge_count());
                }
            }
        }
    }

    #[test]
    fn matches_brute_force_expansion() {
        for n in 0..=6 {
            for g in all_graphs_up_to_iso(n) {
                if g.edge_count() > 12 {
                    continue;
                }
                let p = graph_polynomial(&g, &uncapped(n)).unwrap();
                let brute: Vec<_> = brute_expand(n, g.edges()).into_iter().collect();
                assert_eq!(p.terms(), brute);
            }
        }
    }

    #[test]
    fn orientation_flip_negates() {
        for n in 2..=6 {
            for g in all_graphs_up_to_iso(n) {
                if g.edge_count() == 0 {
                    continue;
                }
                let p = graph_polynomial(&g, &uncapped(n)).unwrap();
                for flip in 0..g.edge_count() {
                    let arcs: Vec<_> = g
                        .edges()
                        .iter()
                        .enumerate()
                        .map(|(i, &(u, v))| if i == flip { (v, u) } else { (u, v) })
                        .collect();
                    let q = MultiPoly::from_arcs(n, &arcs, &PolyOptions::capped(uncapped(n)))
                        .unwrap();
                    let negated: Vec<_> = p.terms().into_iter().map(|(e, c)| (e, -c)).collect();
                    assert_eq!(q.terms(), negated);
                }
            }
        }
    }

    #[test]
    fn glue_two_edges_is_path() {
        let e = graph_polynomial(&Graph::path(2), &uncapped(2)).unwrap();
        // (x - v) glued with (v' - y)... second edge (0,1) glued at its vertex 0
        let glued = glue_at_vertex(&e, &e, (1, 0)).unwrap();
        let path = graph_polynomial(&Graph::path(3), &uncapped(3)).unwrap();
        assert_eq!(glued.terms(), path.terms());
        let none = graph_polynomial(&Graph::empty(1), &uncapped(1)).unwrap();
        assert_eq!(glue_at_vertex(&e, &none, (0, 0)).unwrap().terms(), e.terms());
    }

    #[test]
    fn glue_bowtie() {
        let tri = graph_polynomial(&triangle(), &uncapped(3)).unwrap();
        // first triangle {x=0, c=1, a=2}, second {c, y, b}: glue at 1 and 0
        let bowtie = glue_at_vertex(&tri, &tri, (1, 0)).unwrap();
        let direct = graph_polynomial(
            &Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (1, 3), (1, 4), (3, 4)]).unwrap(),
            &uncapped(5),
        )
        .unwrap();
        assert_eq!(bowtie.terms(), direct.terms());
        // x^1 a^2 c^0 in the first factor, c^0 y^1 b^2 in the second
        let first = tri.coefficient(&[1, 0, 2]).unwrap();
        let second = tri.coefficient(&[0, 1, 2]).unwrap();
        assert_eq!(bowtie.coefficient(&[1, 0, 2, 1, 2]).unwrap(), first * second);
        let brute = brute_expand(5, direct_edges());
        assert_eq!(brute[&vec![1, 0, 2, 1, 2]], first * second);
    }

    fn direct_edges() -> &'static [(usize, usize)] {
        &[(0, 1), (0, 2), (1, 2), (1, 3), (1, 4), (3, 4)]
    }

    #[test]
    fn floors_and_frontier_agree_with_plain() {
        for n in 3..=7 {
            for g in crate::testutil::outerplanar_graphs(n) {
                let caps = vec![Some(2u8); n];
                let plain = graph_polynomial(&g, &caps).unwrap();
                let floors: Vec<u8> = (0..n).map(|v| (v % 3) as u8).collect();
                let opts = PolyOptions {
                    caps: caps.clone(),
                    floors: Some(floors.clone()),
                    order: EdgeOrder::Frontier,
                };
                let fancy = graph_polynomial_with(&g, &opts).unwrap();
                let expect: Vec<_> = plain
                    .terms()
                    .into_iter()
                    .filter(|(e, _)| e.iter().zip(&floors).all(|(a, b)| a >= b))
                    .collect();
                assert_eq!(fancy.terms(), expect);
            }
        }
    }

    proptest! {
        #[test]
        fn truncation_is_sound(idx in 0usize..2000, caps_seed in any::<u32>()) {
            let graphs = crate::testutil::all_small_graphs(7);
            let g = &graphs[idx % graphs.len()];
            let n = g.n();
            let caps: Vec<Option<u8>> = (0..n)
                .map(|v| match (caps_seed >> (3 * v)) & 7 {
                    0 => None,
                    c => Some((c - 1) as u8),
                })
                .collect();
            let full = graph_polynomial(g, &uncapped(n)).unwrap();
            let cut = graph_polynomial(g, &caps).unwrap();
            let within = |e: &[u8]| e.iter().zip(&caps).all(|(&x, c)| c.map_or(true, |c| x <= c));
            let expect: Vec<_> = full.terms().into_iter().filter(|(e, _)| within(e)).collect();
            prop_assert_eq!(cut.terms(), expect);
        }

        #[test]
        fn glue_is_multiplicative(a in 0usize..400, b in 0usize..400, sa in 0usize..8, sb in 0usize..8) {
            let graphs = crate::testutil::all_small_graphs(5);
            let (g, h) = (&graphs[a % graphs.len()], &graphs[b % graphs.len()]);
            prop_assume!(g.n() > 0 && h.n() > 0);
            let (sa, sb) = (sa % g.n(), sb % h.n());
            let p = graph_polynomial(g, &uncapped(g.n())).unwrap();
            let q = graph_polynomial(h, &uncapped(h.n())).unwrap();
            let glued = glue_at_vertex(&p, &q, (sa, sb)).unwrap();
            // direct construction of the glued graph
            let map: Vec<usize> = (0..h.n()).map(|i| if i == sb { sa } else { glued_index(g.n(), sb, i) }).collect();
            let gg = g.extended(h.n() - 1, h.edges().iter().map(|&(u, v)| (map[u], map[v]))).unwrap();
            // keep each factor's own orientation
            let arcs: Vec<_> = g.edges().iter().copied()
                .chain(h.edges().iter().map(|&(u, v)| (map[u], map[v])))
                .collect();
            let direct = MultiPoly::from_arcs(gg.n(), &arcs, &PolyOptions::capped(uncapped(gg.n()))).unwrap();
            prop_assert_eq!(glued.terms(), direct.terms());
            // every pair of factor terms lands on its own glued monomial
            for (ep, cp) in p.terms() {
                for (eq, cq) in q.terms() {
                    let mut e = ep.clone();
                    e.resize(gg.n(), 0);
                    for i in 0..h.n() {
                        if i == sb { e[sa] += eq[i]; } else { e[map[i]] = eq[i]; }
                    }
                    prop_assert_eq!(glued.coefficient(&e).unwrap(), cp * cq);
                }
            }
        }
    }
}
