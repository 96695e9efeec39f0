//! Acceptance criteria AC1–AC7, one PASS/FAIL line each.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use polyext_core::classifier::Mutation;
use polyext_core::coloring::find_coloring;
use polyext_core::graph::{all_graphs_up_to_iso, is_outerplanar, Graph};
use polyext_core::polynomial::{graph_polynomial, uncapped, MultiPoly, PolyOptions};
use polyext_core::verifier::{
    enumerate_outerplanar, enumerate_polygon_triangulations, enumerate_snakes, run_suite,
    sample_non_extendability, SuiteMode, SuiteOptions, VerificationReport,
};

type Check = fn() -> Result<usize, String>;
type Criterion = fn() -> Outcome;

struct Outcome {
    pass: bool,
    detail: String,
}

fn suite(mode: SuiteMode, max_n: usize) -> VerificationReport {
    run_suite(mode, &SuiteOptions::new(max_n)).unwrap_or_else(|e| panic!("{mode}: {e}"))
}

fn summarize(r: &VerificationReport, limit_secs: f64) -> Outcome {
    let pass = r.passed() && r.runtime_seconds < limit_secs;
    let mut detail = format!(
        "{} n<={}: {} instances, {} mismatches, {:.1}s",
        r.mode,
        r.max_n,
        r.instances,
        r.mismatches.len(),
        r.runtime_seconds
    );
    if let Some(m) = r.mismatches.first() {
        detail.push_str(&format!("; first: {m:?}"));
    }
    Outcome { pass, detail }
}

fn ac1() -> Outcome {
    summarize(&suite(SuiteMode::Eta, 12), 120.0)
}

fn ac2() -> Outcome {
    summarize(&suite(SuiteMode::NearTri, 10), 300.0)
}

fn ac3() -> Outcome {
    let parts = [
        suite(SuiteMode::Trichotomy, 8),
        suite(SuiteMode::FaceTypes, 8),
        suite(SuiteMode::Cutvertex, 8),
    ];
    let outcomes: Vec<Outcome> = parts.iter().map(|r| summarize(r, 900.0)).collect();
    Outcome {
        pass: outcomes.iter().all(|o| o.pass),
        detail: outcomes.iter().map(|o| o.detail.as_str()).collect::<Vec<_>>().join(" | "),
    }
}

fn ac4() -> Outcome {
    summarize(&suite(SuiteMode::CnSoundness, 7), f64::INFINITY)
}

fn ac5() -> Outcome {
    let samples = sample_non_extendability(20, 7, 2024).expect("sampling succeeds");
    let bad = samples.iter().filter(|s| s.extendable || !s.confirmed).count();
    Outcome {
        pass: samples.len() == 20 && bad == 0,
        detail: format!("{} samples, {} without a confirmed failing assignment", samples.len(), bad),
    }
}

fn ac6() -> Outcome {
    summarize(&suite(SuiteMode::Lemmas, 10), f64::INFINITY)
}

fn terms(p: &MultiPoly) -> BTreeMap<Vec<u8>, i64> {
    p.terms().into_iter().collect()
}

fn orientation_flip() -> Result<usize, String> {
    let mut checked = 0;
    for n in 1..=6 {
        for g in all_graphs_up_to_iso(n) {
            let p = graph_polynomial(&g, &uncapped(n)).map_err(|e| e.to_string())?;
            for flip in 0..g.edge_count() {
                let arcs: Vec<_> = g
                    .edges()
                    .iter()
                    .enumerate()
                    .map(|(i, &(u, v))| if i == flip { (v, u) } else { (u, v) })
                    .collect();
                let q = MultiPoly::from_arcs(n, &arcs, &PolyOptions::capped(uncapped(n)))
                    .map_err(|e| e.to_string())?;
                let negated: BTreeMap<Vec<u8>, i64> = terms(&p).into_iter().map(|(e, c)| (e, -c)).collect();
                if terms(&q) != negated {
                    return Err(format!("flip of edge {flip} in {:?}", g.edges()));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn truncation_soundness() -> Result<usize, String> {
    let mut checked = 0;
    let mut graphs: Vec<Graph> = (1..=6).flat_map(all_graphs_up_to_iso).collect();
    graphs.extend((7..=7).flat_map(|n| enumerate_outerplanar(n).expect("n = 7 is within bounds")));
    for g in graphs {
        let n = g.n();
        let full = terms(&graph_polynomial(&g, &uncapped(n)).map_err(|e| e.to_string())?);
        for cap in [1u8, 2, 3] {
            let caps: Vec<Option<u8>> = (0..n).map(|v| Some(if v < 2 { cap.min(1) } else { cap })).collect();
            let capped = terms(&graph_polynomial(&g, &caps).map_err(|e| e.to_string())?);
            let expected: BTreeMap<Vec<u8>, i64> = full
                .iter()
                .filter(|(e, _)| e.iter().zip(&caps).all(|(&x, c)| c.is_none_or(|c| x <= c)))
                .map(|(e, &c)| (e.clone(), c))
                .collect();
            if capped != expected {
                return Err(format!("caps {caps:?} on {:?}", g.edges()));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

fn evaluation_iff_proper() -> Result<usize, String> {
    let mut checked = 0;
    for n in 1..=6 {
        for g in all_graphs_up_to_iso(n) {
            let p = graph_polynomial(&g, &uncapped(n)).map_err(|e| e.to_string())?;
            for code in 0..3usize.pow(n as u32) {
                let point: Vec<i64> = (0..n).map(|i| (code / 3usize.pow(i as u32) % 3) as i64).collect();
                let proper = g.edges().iter().all(|&(u, v)| point[u] != point[v]);
                let value = p.evaluate(&point).map_err(|e| e.to_string())?;
                if (value != 0) != proper {
                    return Err(format!("{point:?} on {:?}", g.edges()));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn enumerator_counts() -> Result<usize, String> {
    let mut catalan = 1usize;
    for n in 3..=12 {
        let k = n - 2;
        if k > 1 {
            catalan = catalan * 2 * (2 * k - 1) / (k + 1);
        }
        let got = enumerate_polygon_triangulations(n).map_err(|e| e.to_string())?.len();
        if got != catalan {
            return Err(format!("triangulations n = {n}: {got} != {catalan}"));
        }
        let snakes = enumerate_snakes(n).map_err(|e| e.to_string())?;
        let expected = if n == 3 { 1 } else { n << (n - 4) >> 1 };
        if snakes.len() != expected {
            return Err(format!("snakes n = {n}: {} != {expected}", snakes.len()));
        }
    }
    for n in 1..=7 {
        let brute = all_graphs_up_to_iso(n)
            .into_iter()
            .filter(|g| g.is_connected() && is_outerplanar(g))
            .count();
        let got = enumerate_outerplanar(n).map_err(|e| e.to_string())?.len();
        if got != brute {
            return Err(format!("outerplanar n = {n}: {got} != {brute}"));
        }
    }
    Ok(10 + 7)
}

fn mutation_detected() -> Result<usize, String> {
    let mut caught = 0;
    for (mode, mutation) in [
        (SuiteMode::NearTri, Mutation::NegateNearTriangulation),
        (SuiteMode::Eta, Mutation::NegateNearTriangulation),
        (SuiteMode::Trichotomy, Mutation::NegateNearTriangulation),
        (SuiteMode::Cutvertex, Mutation::UndercountCutvertexPairs),
    ] {
        let mut opts = SuiteOptions::new(7);
        opts.mutation = mutation;
        let r = run_suite(mode, &opts).map_err(|e| e.to_string())?;
        if r.passed() {
            return Err(format!("{mode} missed {mutation:?}"));
        }
        caught += 1;
    }
    Ok(caught)
}

fn ac7() -> Outcome {
    let checks: [(&str, Check); 5] = [
        ("orientation flip", orientation_flip),
        ("truncation", truncation_soundness),
        ("evaluation", evaluation_iff_proper),
        ("enumerators", enumerator_counts),
        ("mutation", mutation_detected),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, f) in checks {
        match f() {
            Ok(k) => parts.push(format!("{name} ok ({k})")),
            Err(e) => {
                pass = false;
                parts.push(format!("{name} FAILED: {e}"));
            }
        }
    }
    // a colouring oracle sanity check on the smallest non-3-colourable graph
    if find_coloring(&Graph::complete(4), 3, &[]).is_some() {
        pass = false;
        parts.push("K4 reported 3-colourable".into());
    }
    Outcome {
        pass,
        detail: parts.join(", "),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 7] = [
        ("AC1", ac1),
        ("AC2", ac2),
        ("AC3", ac3),
        ("AC4", ac4),
        ("AC5", ac5),
        ("AC6", ac6),
        ("AC7", ac7),
    ];
    let mut all = true;
    for (name, f) in criteria {
        let start = Instant::now();
        let o = f();
        all &= o.pass;
        println!(
            "{name} {} [{:.1}s] {}",
            if o.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            o.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
